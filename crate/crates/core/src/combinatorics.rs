//! Ordered combinatorics of line arrangements: a finite set of lines and a
//! family of multiple points such that every pair of lines meets in exactly
//! one point.
//!
//! Line indices are 0-based throughout the library; the file formats and the
//! CLI use the 1-based labels `L1, L2, …`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::search;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("line index {index} out of range for {count} lines")]
    LineOutOfRange { index: usize, count: usize },
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
    #[error("a line does not determine a point with itself (index {0})")]
    SameLine(usize),
    #[error("lines {} and {} meet in no point", .0 + 1, .1 + 1)]
    NoPoint(usize, usize),
    #[error("lines {}, {}, {} are concurrent: no triangle", .0 + 1, .1 + 1, .2 + 1)]
    ConcurrentTriangle(usize, usize, usize),
    #[error("invalid combinatorics: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// One failed axiom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    PointTooSmall(Vec<usize>),
    DuplicatePoint(Vec<usize>),
    PairUncovered(usize, usize),
    PairCoveredTwice { pair: (usize, usize), count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = |p: &[usize]| p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        match self {
            Violation::PointTooSmall(p) => write!(f, "point {{{}}} has fewer than two lines", labels(p)),
            Violation::DuplicatePoint(p) => write!(f, "point {{{}}} is listed twice", labels(p)),
            Violation::PairUncovered(i, j) => write!(f, "pair ({},{}) lies on no point", i + 1, j + 1),
            Violation::PairCoveredTwice { pair: (i, j), count } => {
                write!(f, "pair ({},{}) lies on {count} points", i + 1, j + 1)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Combinatorics {
    lines: Vec<String>,
    points: Vec<Vec<usize>>,
    // pair (i, j) -> index of the first point containing both
    pair_table: Vec<Option<usize>>,
}

impl Combinatorics {
    /// Builds the structure without checking the axioms. Points are sorted
    /// internally and the point list is sorted lexicographically.
    pub fn new(lines: Vec<String>, points: Vec<Vec<usize>>) -> Result<Self, CombError> {
        let n = lines.len();
        let mut points: Vec<Vec<usize>> = points
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        for p in &points {
            if let Some(&bad) = p.iter().find(|&&i| i >= n) {
                return Err(CombError::LineOutOfRange { index: bad, count: n });
            }
        }
        points.sort();
        let mut pair_table = vec![None; n * n];
        for (idx, p) in points.iter().enumerate() {
            for (a, &i) in p.iter().enumerate() {
                for &j in &p[a + 1..] {
                    for slot in [i * n + j, j * n + i] {
                        pair_table[slot].get_or_insert(idx);
                    }
                }
            }
        }
        Ok(Combinatorics { lines, points, pair_table })
    }

    /// Like [`Combinatorics::new`], with lines named `L1…Ln`.
    pub fn with_line_count(n: usize, points: Vec<Vec<usize>>) -> Result<Self, CombError> {
        Self::new(default_names("L", n), points)
    }

    /// Builds and validates.
    pub fn validated(lines: Vec<String>, points: Vec<Vec<usize>>) -> Result<Self, CombError> {
        let c = Self::new(lines, points)?;
        let report = c.validate();
        if report.is_empty() {
            Ok(c)
        } else {
            Err(CombError::Invalid(report))
        }
    }

    /// Empty iff both axioms hold.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.line_count();
        let mut report = Vec::new();
        for w in self.points.windows(2) {
            if w[0] == w[1] {
                report.push(Violation::DuplicatePoint(w[0].clone()));
            }
        }
        for p in &self.points {
            if p.len() < 2 {
                report.push(Violation::PointTooSmall(p.clone()));
            }
        }
        let mut counts = vec![0usize; n * n];
        for p in &self.points {
            for (a, &i) in p.iter().enumerate() {
                for &j in &p[a + 1..] {
                    counts[i * n + j] += 1;
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                match counts[i * n + j] {
                    0 => report.push(Violation::PairUncovered(i, j)),
                    1 => {}
                    count => report.push(Violation::PairCoveredTwice { pair: (i, j), count }),
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn line_names(&self) -> &[String] {
        &self.lines
    }

    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> Result<&[usize], CombError> {
        self.points.get(idx).map(Vec::as_slice).ok_or(CombError::PointOutOfRange(idx))
    }

    pub fn find_point(&self, lines: &[usize]) -> Option<usize> {
        let mut key = lines.to_vec();
        key.sort_unstable();
        self.points.binary_search(&key).ok()
    }

    fn check_line(&self, i: usize) -> Result<(), CombError> {
        if i < self.line_count() {
            Ok(())
        } else {
            Err(CombError::LineOutOfRange { index: i, count: self.line_count() })
        }
    }

    /// Index of the point containing lines `i` and `j`.
    pub fn point_index_through(&self, i: usize, j: usize) -> Result<usize, CombError> {
        self.check_line(i)?;
        self.check_line(j)?;
        if i == j {
            return Err(CombError::SameLine(i));
        }
        self.pair_table[i * self.line_count() + j].ok_or(CombError::NoPoint(i, j))
    }

    /// The point containing lines `i` and `j`.
    pub fn point_through(&self, i: usize, j: usize) -> Result<&[usize], CombError> {
        let idx = self.point_index_through(i, j)?;
        Ok(&self.points[idx])
    }

    /// Indices of the points lying on line `i`.
    pub fn points_on_line(&self, i: usize) -> Vec<usize> {
        self.points.iter().enumerate().filter(|(_, p)| p.binary_search(&i).is_ok()).map(|(idx, _)| idx).collect()
    }

    /// Sorted sizes of the points through line `i`.
    pub fn multiplicity_signature(&self, i: usize) -> Vec<usize> {
        let mut sig: Vec<usize> = self.points_on_line(i).iter().map(|&p| self.points[p].len()).collect();
        sig.sort_unstable();
        sig
    }

    /// Same point sets over the same number of lines; names are ignored.
    pub fn ordered_equal(&self, other: &Combinatorics) -> bool {
        self.line_count() == other.line_count() && self.points == other.points
    }

    /// A permutation `perm` of lines with `perm · self = other`, if any.
    pub fn is_isomorphic(&self, other: &Combinatorics) -> Option<Vec<usize>> {
        search::isomorphisms(self, other, Some(1)).into_iter().next()
    }

    /// Relabels line `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Combinatorics, CombError> {
        let n = self.line_count();
        let seen: BTreeSet<usize> = perm.iter().copied().collect();
        if perm.len() != n || seen.len() != n || perm.iter().any(|&i| i >= n) {
            return Err(CombError::InvalidCycle(format!("{perm:?} is not a permutation of {n} lines")));
        }
        let mut names = vec![String::new(); n];
        for (i, &j) in perm.iter().enumerate() {
            names[j] = self.lines[i].clone();
        }
        let points = self.points.iter().map(|p| p.iter().map(|&i| perm[i]).collect()).collect();
        Combinatorics::new(names, points)
    }

    pub fn incidence_graph(&self) -> IncidenceGraph {
        let n = self.line_count();
        let mut adjacency = vec![Vec::new(); n + self.points.len()];
        for (idx, p) in self.points.iter().enumerate() {
            for &i in p {
                adjacency[i].push(n + idx);
                adjacency[n + idx].push(i);
            }
        }
        IncidenceGraph { line_count: n, point_count: self.points.len(), adjacency }
    }

    /// The 6-cycle `L_i → P_ij → L_j → P_jk → L_k → P_ik → L_i`.
    pub fn triangle_cycle(&self, i: usize, j: usize, k: usize) -> Result<Cycle, CombError> {
        for (a, b) in [(i, j), (j, k), (i, k)] {
            if a == b {
                return Err(CombError::SameLine(a));
            }
        }
        let pij = self.point_index_through(i, j)?;
        let pjk = self.point_index_through(j, k)?;
        let pik = self.point_index_through(i, k)?;
        if pij == pjk || pjk == pik || pij == pik {
            return Err(CombError::ConcurrentTriangle(i, j, k));
        }
        Ok(Cycle {
            vertices: vec![
                Vertex::Line(i),
                Vertex::Point(pij),
                Vertex::Line(j),
                Vertex::Point(pjk),
                Vertex::Line(k),
                Vertex::Point(pik),
            ],
        })
    }

    /// True when lines `i, j, k` pass through one common point.
    pub fn concurrent(&self, i: usize, j: usize, k: usize) -> bool {
        matches!(self.triangle_cycle(i, j, k), Err(CombError::ConcurrentTriangle(..)))
    }
}

impl fmt::Debug for Combinatorics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Combinatorics")
            .field("lines", &self.lines)
            .field(
                "points",
                &self.points.iter().map(|p| p.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

pub(crate) fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Line(usize),
    /// Index into [`Combinatorics::points`].
    Point(usize),
}

/// Bipartite incidence graph. Vertex ids: lines are `0..n`, point `p` is `n + p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    line_count: usize,
    point_count: usize,
    adjacency: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn vertex_count(&self) -> usize {
        self.line_count + self.point_count
    }

    pub fn line_count(&self) -> usize {
        self.line_count
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency[..self.line_count].iter().map(Vec::len).sum()
    }

    pub fn id(&self, v: Vertex) -> usize {
        match v {
            Vertex::Line(i) => i,
            Vertex::Point(p) => self.line_count + p,
        }
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        if id < self.line_count {
            Vertex::Line(id)
        } else {
            Vertex::Point(id - self.line_count)
        }
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[self.id(v)].iter().map(|&w| self.vertex(w))
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        self.adjacency[self.id(a)].contains(&self.id(b))
    }

    /// Every edge joins a line-vertex to a point-vertex.
    pub fn is_bipartite(&self) -> bool {
        self.adjacency
            .iter()
            .enumerate()
            .all(|(v, nbrs)| nbrs.iter().all(|&w| (v < self.line_count) != (w < self.line_count)))
    }

    /// Vertices at distance at most one from the cycle, sorted.
    pub fn closed_neighborhood(&self, cycle: &Cycle) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        for &v in cycle.vertices() {
            out.insert(v);
            out.extend(self.neighbors(v));
        }
        out
    }

    /// Breadth-first distance from `v` to the nearest cycle vertex.
    pub fn distance_to(&self, v: Vertex, cycle: &Cycle) -> Option<usize> {
        let targets: BTreeSet<usize> = cycle.vertices().iter().map(|&w| self.id(w)).collect();
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let start = self.id(v);
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            if targets.contains(&u) {
                return Some(dist[u]);
            }
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// An embedded cycle of the incidence graph, as an explicit vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    vertices: Vec<Vertex>,
}

impl Cycle {
    /// Checks adjacency (closing up), no repeated vertex, length at least 6.
    pub fn new(c: &Combinatorics, vertices: Vec<Vertex>) -> Result<Self, CombError> {
        if vertices.len() < 6 || !vertices.len().is_multiple_of(2) {
            return Err(CombError::InvalidCycle(format!("length {} is not an even number ≥ 6", vertices.len())));
        }
        let g = c.incidence_graph();
        for v in &vertices {
            let ok = match *v {
                Vertex::Line(i) => i < c.line_count(),
                Vertex::Point(p) => p < c.points().len(),
            };
            if !ok {
                return Err(CombError::InvalidCycle(format!("unknown vertex {v:?}")));
            }
        }
        let distinct: BTreeSet<Vertex> = vertices.iter().copied().collect();
        if distinct.len() != vertices.len() {
            return Err(CombError::InvalidCycle("repeated vertex".into()));
        }
        for (a, b) in vertices.iter().zip(vertices.iter().cycle().skip(1)) {
            if !g.adjacent(*a, *b) {
                return Err(CombError::InvalidCycle(format!("{a:?} and {b:?} are not adjacent")));
            }
        }
        Ok(Cycle { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Sorted line indices on the cycle.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .vertices
            .iter()
            .filter_map(|v| match v {
                Vertex::Line(i) => Some(*i),
                Vertex::Point(_) => None,
            })
            .collect();
        s.sort_unstable();
        s
    }

    pub fn point_vertices(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter_map(|v| match v {
                Vertex::Point(p) => Some(*p),
                Vertex::Line(_) => None,
            })
            .collect()
    }

    pub fn is_triangular(&self) -> bool {
        self.vertices.len() == 6
    }
}
