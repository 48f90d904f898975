//! Backtracking search for line bijections carrying one combinatorics onto
//! another. Shared by isomorphism testing and automorphism enumeration.

use crate::combinatorics::Combinatorics;

type Signature = Vec<(usize, Vec<Vec<usize>>)>;

/// Per-line invariant: for each point through the line, its size together with
/// the multiplicity signatures of the other lines on it.
fn signatures(c: &Combinatorics) -> Vec<Signature> {
    let level1: Vec<Vec<usize>> = (0..c.line_count()).map(|i| c.multiplicity_signature(i)).collect();
    (0..c.line_count())
        .map(|i| {
            let mut sig: Signature = c
                .points_on_line(i)
                .into_iter()
                .map(|p| {
                    let pt = &c.points()[p];
                    let mut others: Vec<Vec<usize>> =
                        pt.iter().filter(|&&j| j != i).map(|&j| level1[j].clone()).collect();
                    others.sort();
                    (pt.len(), others)
                })
                .collect();
            sig.sort();
            sig
        })
        .collect()
}

struct State<'a> {
    src: &'a Combinatorics,
    dst: &'a Combinatorics,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    line_map: Vec<Option<usize>>,
    used: Vec<bool>,
    point_map: Vec<Option<usize>>,
    point_used: Vec<bool>,
    limit: Option<usize>,
    found: Vec<Vec<usize>>,
}

impl State<'_> {
    fn full(&self) -> bool {
        self.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn recurse(&mut self, depth: usize) {
        if self.full() {
            return;
        }
        if depth == self.order.len() {
            self.found.push(self.line_map.iter().map(|m| m.expect("complete")).collect());
            return;
        }
        let x = self.order[depth];
        for ci in 0..self.candidates[x].len() {
            let y = self.candidates[x][ci];
            if self.used[y] {
                continue;
            }
            if let Some(trail) = self.try_assign(x, y, depth) {
                self.line_map[x] = Some(y);
                self.used[y] = true;
                self.recurse(depth + 1);
                self.used[y] = false;
                self.line_map[x] = None;
                for p in trail {
                    if let Some(q) = self.point_map[p].take() {
                        self.point_used[q] = false;
                    }
                }
                if self.full() {
                    return;
                }
            }
        }
    }

    /// Extends the point map for `x ↦ y` against every already placed line.
    /// Returns the newly mapped source points, or `None` (with no changes
    /// left behind) on a conflict.
    fn try_assign(&mut self, x: usize, y: usize, depth: usize) -> Option<Vec<usize>> {
        let mut trail = Vec::new();
        for &w in &self.order[..depth] {
            let w_img = self.line_map[w].expect("placed");
            let p = self.src.point_index_through(x, w).expect("valid combinatorics");
            let q = self.dst.point_index_through(y, w_img).expect("valid combinatorics");
            let ok = match self.point_map[p] {
                Some(existing) => existing == q,
                None => {
                    if self.point_used[q] || self.src.points()[p].len() != self.dst.points()[q].len() {
                        false
                    } else {
                        self.point_map[p] = Some(q);
                        self.point_used[q] = true;
                        trail.push(p);
                        true
                    }
                }
            };
            if !ok {
                for p in trail {
                    if let Some(q) = self.point_map[p].take() {
                        self.point_used[q] = false;
                    }
                }
                return None;
            }
        }
        Some(trail)
    }
}

/// All (up to `limit`) permutations `perm` with `src.permuted(perm) == dst`
/// as ordered combinatorics. Both inputs must be valid.
pub(crate) fn isomorphisms(src: &Combinatorics, dst: &Combinatorics, limit: Option<usize>) -> Vec<Vec<usize>> {
    let n = src.line_count();
    if n != dst.line_count() || src.points().len() != dst.points().len() {
        return Vec::new();
    }
    let mut src_sizes: Vec<usize> = src.points().iter().map(Vec::len).collect();
    let mut dst_sizes: Vec<usize> = dst.points().iter().map(Vec::len).collect();
    src_sizes.sort_unstable();
    dst_sizes.sort_unstable();
    if src_sizes != dst_sizes {
        return Vec::new();
    }
    let ss = signatures(src);
    let ds = signatures(dst);
    let candidates: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| ss[i] == ds[j]).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));
    let mut state = State {
        src,
        dst,
        order,
        candidates,
        line_map: vec![None; n],
        used: vec![false; n],
        point_map: vec![None; src.points().len()],
        point_used: vec![false; dst.points().len()],
        limit,
        found: Vec::new(),
    };
    state.recurse(0);
    let mut found = state.found;
    found.sort();
    found
}
