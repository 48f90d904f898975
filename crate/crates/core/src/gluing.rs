//! Gluing two arrangements along a shared triangle.
//!
//! A gluing of `A = {L₁…Lₙ}` and `A' = {L'₁…L'ₖ}` is a projective map φ with
//! `φ(L'_i) = L_i` for the first `l ≥ 3` lines. The glued arrangement keeps A
//! and appends the images of the remaining lines of A'.

use thiserror::Error;

use crate::characters::{Character, CharacterError};
use crate::combinatorics::{CombError, Combinatorics};
use crate::cyclotomic::CycloNum;
use crate::realization::{intersect, Arrangement, ProjLine, ProjMap, ProjPoint, RealizationError};

/// Upper bound on diagonal parameter pairs tried by [`find_generic_gluing`].
pub const DEFAULT_MAX_CANDIDATES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingError {
    #[error("{0:?} arrangement has fewer than three lines")]
    TooFewLines(Side),
    #[error("the first three lines of the {0:?} side are concurrent")]
    ConcurrentTriangle(Side),
    #[error("shared line count {shared} is outside 3..={max}")]
    SharedOutOfRange { shared: usize, max: usize },
    #[error("the map does not satisfy the gluing conditions")]
    NotAGluing,
    #[error("no generic gluing among the first {0} parameter pairs")]
    SearchExhausted(usize),
    #[error("the two arrangements live over different cyclotomic fields")]
    OrderMismatch,
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Combinatorics(#[from] CombError),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

#[derive(Debug, Clone)]
pub struct GluingSpec {
    pub left: Arrangement,
    pub right: Arrangement,
    pub map: ProjMap,
    /// Number `l` of identified lines.
    pub shared: usize,
    /// Diagonal parameters `(s, t)` when the map came from [`find_generic_gluing`].
    pub parameters: Option<(i64, i64)>,
}

fn triangle_ok(a: &Arrangement, side: Side) -> Result<(), GluingError> {
    if a.len() < 3 {
        return Err(GluingError::TooFewLines(side));
    }
    let l = a.lines();
    let p = intersect(&l[0], &l[1])?;
    if p.lies_on(&l[2]) {
        return Err(GluingError::ConcurrentTriangle(side));
    }
    Ok(())
}

fn check_sides(spec: &GluingSpec) -> Result<(), GluingError> {
    triangle_ok(&spec.left, Side::Left)?;
    triangle_ok(&spec.right, Side::Right)?;
    if spec.left.order() != spec.right.order() || spec.map.order() != spec.left.order() {
        return Err(GluingError::OrderMismatch);
    }
    Ok(())
}

/// The two conditions of a gluing for the declared `l`.
pub fn check_gluing(spec: &GluingSpec) -> Result<bool, GluingError> {
    check_sides(spec)?;
    let (n, k, l) = (spec.left.len(), spec.right.len(), spec.shared);
    if l < 3 || l > n.min(k) {
        return Ok(false);
    }
    let images = spec.right.lines().iter().map(|x| spec.map.apply_line(x)).collect::<Result<Vec<_>, _>>()?;
    let left = spec.left.lines();
    let shared_ok = (0..l).all(|i| images[i].same_as(&left[i]));
    let rest_ok = images[l..].iter().all(|img| left[l..].iter().all(|x| !img.same_as(x)));
    Ok(shared_ok && rest_ok)
}

/// Itemized genericity conditions; the gluing is generic when all hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    pub is_gluing: bool,
    pub shared_is_three: bool,
    /// No line of A' other than the triangle is sent onto a line of A.
    pub no_line_coincidence: bool,
    /// Each triangle vertex of A' goes to the matching vertex of A.
    pub vertices_match: bool,
    /// No other singular point of A' lands on a singular point of A.
    pub no_singular_collision: bool,
    /// No other singular point of either side lies on a non-shared line of
    /// the other side, so the glued arrangement only gains double points.
    pub no_singular_on_foreign_line: bool,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.is_gluing
            && self.shared_is_three
            && self.no_line_coincidence
            && self.vertices_match
            && self.no_singular_collision
            && self.no_singular_on_foreign_line
    }
}

fn is_vertex(lines: &[usize]) -> bool {
    lines.iter().filter(|&&i| i < 3).count() >= 2
}

fn vertex_key(lines: &[usize]) -> Vec<usize> {
    lines.iter().copied().filter(|&i| i < 3).collect()
}

pub fn genericity_report(spec: &GluingSpec) -> Result<GenericityReport, GluingError> {
    let is_gluing = check_gluing(spec)?;
    let mut report = GenericityReport {
        is_gluing,
        shared_is_three: spec.shared == 3,
        no_line_coincidence: false,
        vertices_match: false,
        no_singular_collision: false,
        no_singular_on_foreign_line: false,
    };
    if !is_gluing {
        return Ok(report);
    }
    let left = spec.left.lines();
    let images: Vec<ProjLine> = spec.right.lines().iter().map(|x| spec.map.apply_line(x)).collect::<Result<_, _>>()?;
    report.no_line_coincidence = images[3..].iter().all(|img| left.iter().all(|x| !img.same_as(x)));

    let left_sing = spec.left.singular_points();
    let right_sing: Vec<(ProjPoint, Vec<usize>)> =
        spec.right.singular_points().into_iter().map(|(p, lines)| (spec.map.apply_point(&p), lines)).collect();

    report.vertices_match = right_sing
        .iter()
        .filter(|(_, s)| is_vertex(s))
        .all(|(p, s)| left_sing.iter().any(|(q, t)| is_vertex(t) && vertex_key(t) == vertex_key(s) && q == p));
    report.no_singular_collision =
        right_sing.iter().filter(|(_, s)| !is_vertex(s)).all(|(p, _)| left_sing.iter().all(|(q, _)| q != p));
    let right_on_left =
        right_sing.iter().filter(|(_, s)| !is_vertex(s)).all(|(p, _)| left[3..].iter().all(|x| !p.lies_on(x)));
    let left_on_right =
        left_sing.iter().filter(|(_, s)| !is_vertex(s)).all(|(p, _)| images[3..].iter().all(|x| !p.lies_on(x)));
    report.no_singular_on_foreign_line = right_on_left && left_on_right;
    Ok(report)
}

pub fn check_generic(spec: &GluingSpec) -> Result<bool, GluingError> {
    Ok(genericity_report(spec)?.is_generic())
}

/// A point off the three triangle lines used to fix the scaling of the frame.
fn reference_point(a: &Arrangement) -> ProjPoint {
    let tri = &a.lines()[..3];
    let avoids = |p: &ProjPoint| tri.iter().all(|l| !p.lies_on(l));
    if a.len() >= 5 {
        if let Ok(p) = intersect(&a.lines()[3], &a.lines()[4]) {
            if avoids(&p) {
                return p;
            }
        }
    }
    let order = a.order();
    // [1:1:1], [1:2:3], [1:3:4], ... ; three lines cannot contain them all
    (1i64..)
        .flat_map(|s| [(s, s + 1), (s, s)])
        .map(|(s, t)| {
            ProjPoint::new([CycloNum::one(order), CycloNum::from_int(order, s), CycloNum::from_int(order, t)])
                .expect("nonzero")
        })
        .find(avoids)
        .expect("a rational point avoids three lines")
}

/// The point map sending the coordinate lines `x=0, y=0, z=0` onto the first
/// three lines of `a`, and `[1:1:1]` onto the reference point.
pub fn triangle_frame(a: &Arrangement) -> Result<ProjMap, GluingError> {
    triangle_ok(a, Side::Left)?;
    let r = reference_point(a);
    let rows = [0, 1, 2].map(|i| {
        let l = a.lines()[i].coeffs();
        let v = (0..3).fold(CycloNum::zero(a.order()), |acc, j| &acc + &(&l[j] * &r.coords()[j]));
        let scale = v.inv().expect("reference point avoids the triangle");
        l.clone().map(|c| &c * &scale)
    });
    // rows of the inverse frame are the scaled triangle lines
    Ok(ProjMap::new(rows)?.inverse())
}

fn primes(count: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2i64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= n).all(|&p| n % p != 0) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Distinct prime pairs `(p, q)`, `p < q`, ordered by `q` then `p`:
/// (2,3), (2,5), (3,5), (2,7), (3,7), (5,7), ...
pub fn parameter_sequence(len: usize) -> Vec<(i64, i64)> {
    let ps = primes(len + 2);
    let mut out = Vec::with_capacity(len);
    'outer: for qi in 1..ps.len() {
        for pi in 0..qi {
            if out.len() == len {
                break 'outer;
            }
            out.push((ps[pi], ps[qi]));
        }
    }
    out
}

/// First map `M_A ∘ diag(1, s, t) ∘ M_{A'}⁻¹` along the parameter sequence
/// that passes [`check_generic`].
pub fn find_generic_gluing(
    left: &Arrangement,
    right: &Arrangement,
    max_candidates: usize,
) -> Result<GluingSpec, GluingError> {
    triangle_ok(left, Side::Left)?;
    triangle_ok(right, Side::Right)?;
    if left.order() != right.order() {
        return Err(GluingError::OrderMismatch);
    }
    let order = left.order();
    let frame_left = triangle_frame(left)?;
    let frame_right_inv = match triangle_frame(right) {
        Ok(m) => m.inverse(),
        Err(GluingError::ConcurrentTriangle(_)) => return Err(GluingError::ConcurrentTriangle(Side::Right)),
        Err(e) => return Err(e),
    };
    for (s, t) in parameter_sequence(max_candidates) {
        let d = ProjMap::diagonal(
            order,
            [CycloNum::one(order), CycloNum::from_int(order, s), CycloNum::from_int(order, t)],
        )?;
        let map = frame_left.compose(&d).compose(&frame_right_inv);
        let spec = GluingSpec { left: left.clone(), right: right.clone(), map, shared: 3, parameters: Some((s, t)) };
        if check_generic(&spec)? {
            return Ok(spec);
        }
    }
    Err(GluingError::SearchExhausted(max_candidates))
}

/// `{L₁…Lₙ, φ(L'_{l+1})…φ(L'_k)}` with lines renamed `D1…Dd`.
pub fn glue_arrangements(spec: &GluingSpec) -> Result<Arrangement, GluingError> {
    if !check_gluing(spec)? {
        return Err(GluingError::NotAGluing);
    }
    let mut lines: Vec<ProjLine> = spec.left.lines().to_vec();
    for l in &spec.right.lines()[spec.shared..] {
        lines.push(spec.map.apply_line(l)?);
    }
    Ok(Arrangement::new(spec.left.order(), lines)?.renamed("D"))
}

/// Combinatorics of a generic gluing along the first three lines: the points
/// of `c`, the points of `c2` (shifted, triangle vertices merged with those
/// of `c`), and a double point for every pair of non-shared lines from
/// opposite sides that do not already meet at a vertex.
pub fn glue_combinatorics(c: &Combinatorics, c2: &Combinatorics) -> Result<Combinatorics, GluingError> {
    for (comb, side) in [(c, Side::Left), (c2, Side::Right)] {
        if comb.line_count() < 3 {
            return Err(GluingError::TooFewLines(side));
        }
        if comb.concurrent(0, 1, 2) {
            return Err(GluingError::ConcurrentTriangle(side));
        }
    }
    let (n, k) = (c.line_count(), c2.line_count());
    let shift = |i: usize| if i < 3 { i } else { i + n - 3 };
    let mut points: Vec<Vec<usize>> = c.points().to_vec();
    for p in c2.points() {
        let mapped: Vec<usize> = p.iter().map(|&i| shift(i)).collect();
        if is_vertex(p) {
            let key = vertex_key(p);
            let target = points.iter_mut().find(|q| vertex_key(q) == key).expect("vertex exists on the left");
            target.extend(mapped.into_iter().filter(|&i| i >= 3));
        } else {
            points.push(mapped);
        }
    }
    // cross pairs through a merged vertex are already covered
    let merged: Vec<(usize, usize)> = points
        .iter()
        .filter(|p| p.iter().any(|&i| (3..n).contains(&i)) && p.iter().any(|&i| i >= n))
        .flat_map(|p| p.iter().flat_map(move |&i| p.iter().map(move |&j| (i, j))))
        .collect();
    for i in 3..n {
        for j in 3..k {
            if !merged.contains(&(i, shift(j))) {
                points.push(vec![i, shift(j)]);
            }
        }
    }
    let names = crate::combinatorics::default_names("D", n + k - 3);
    Ok(Combinatorics::new(names, points)?)
}

/// The glued character: products on the `l` shared lines, then the left
/// values, then the remaining right values. Moduli are reconciled by lcm.
pub fn glue_characters(x: &Character, x2: &Character, shared: usize) -> Result<Character, GluingError> {
    let (n, k) = (x.line_count(), x2.line_count());
    if shared > n.min(k) {
        return Err(GluingError::SharedOutOfRange { shared, max: n.min(k) });
    }
    let m = x.lcm_modulus(x2);
    let a = x.lifted(m).expect("lcm is a multiple");
    let b = x2.lifted(m).expect("lcm is a multiple");
    let mut e: Vec<i64> = Vec::with_capacity(n + k - shared);
    e.extend((0..shared).map(|i| a.exponents()[i] as i64 + b.exponents()[i] as i64));
    e.extend(a.exponents()[shared..].iter().map(|&v| v as i64));
    e.extend(b.exponents()[shared..].iter().map(|&v| v as i64));
    Ok(Character::from_exponents(m, &e)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, Sign};

    fn coord_triangle(order: u32) -> Arrangement {
        let l = |v: [i64; 3], name: &str| ProjLine::new(name, v.map(|x| CycloNum::from_int(order, x))).unwrap();
        Arrangement::new(order, vec![l([1, 0, 0], "x"), l([0, 1, 0], "y"), l([1, 1, 1], "w")]).unwrap()
    }

    #[test]
    fn parameter_sequence_prefix() {
        assert_eq!(&parameter_sequence(6)[..], &[(2, 3), (2, 5), (3, 5), (2, 7), (3, 7), (5, 7)]);
        assert_eq!(parameter_sequence(DEFAULT_MAX_CANDIDATES).len(), DEFAULT_MAX_CANDIDATES);
    }

    #[test]
    fn frame_sends_coordinate_lines_onto_triangle() {
        let plus = catalog::extended_maclane_realization(Sign::Plus);
        let frame = triangle_frame(&plus).unwrap();
        let coords = Arrangement::new(
            3,
            (0..3)
                .map(|i| {
                    let mut v = [0, 0, 0].map(|x| CycloNum::from_int(3, x));
                    v[i] = CycloNum::one(3);
                    ProjLine::new(format!("e{i}"), v).unwrap()
                })
                .collect(),
        )
        .unwrap();
        let img = coords.apply_map(&frame).unwrap();
        for i in 0..3 {
            assert!(img.lines()[i].same_as(&plus.lines()[i]));
        }
    }

    #[test]
    fn identity_self_gluing() {
        let plus = catalog::extended_maclane_realization(Sign::Plus);
        let n = plus.len();
        let spec = GluingSpec {
            left: plus.clone(),
            right: plus.clone(),
            map: ProjMap::identity(3),
            shared: n,
            parameters: None,
        };
        assert!(check_gluing(&spec).unwrap());
        assert!(!check_generic(&spec).unwrap());
        assert_eq!(glue_arrangements(&spec).unwrap(), plus.renamed("D"));

        let three = GluingSpec { shared: 3, ..spec };
        // φ(L'_4) = L_4: second gluing condition fails
        assert!(!check_gluing(&three).unwrap());
        assert_eq!(glue_arrangements(&three).unwrap_err(), GluingError::NotAGluing);
    }

    #[test]
    fn line_sent_onto_a_later_line() {
        let plus = catalog::extended_maclane_realization(Sign::Plus);
        let mut swapped = plus.lines().to_vec();
        swapped.swap(3, 4);
        let right = Arrangement::new(3, swapped).unwrap();
        let spec = GluingSpec { left: plus, right, map: ProjMap::identity(3), shared: 3, parameters: None };
        assert!(!check_gluing(&spec).unwrap());
    }

    #[test]
    fn wrong_vertex_matching_is_not_generic() {
        let plus = catalog::extended_maclane_realization(Sign::Plus);
        // swapping L2 and L3 on the right sends L'1∩L'2 to L1∩L3
        let mut swapped = plus.lines().to_vec();
        swapped.swap(1, 2);
        let right = Arrangement::new(3, swapped).unwrap();
        let spec = GluingSpec { left: plus.clone(), right, map: ProjMap::identity(3), shared: 3, parameters: None };
        assert!(!check_generic(&spec).unwrap());
    }

    #[test]
    fn concurrent_triangle_is_an_error() {
        let l = |v: [i64; 3], name: &str| ProjLine::new(name, v.map(|x| CycloNum::from_int(3, x))).unwrap();
        let pencil = Arrangement::new(3, vec![l([1, 0, 0], "a"), l([0, 1, 0], "b"), l([1, 1, 0], "c")]).unwrap();
        let tri = coord_triangle(3);
        assert_eq!(find_generic_gluing(&tri, &pencil, 10).unwrap_err(), GluingError::ConcurrentTriangle(Side::Right));
        let spec =
            GluingSpec { left: pencil.clone(), right: tri, map: ProjMap::identity(3), shared: 3, parameters: None };
        assert_eq!(check_gluing(&spec).unwrap_err(), GluingError::ConcurrentTriangle(Side::Left));
    }

    #[test]
    fn triangles_glue_immediately() {
        let tri = coord_triangle(3);
        let spec = find_generic_gluing(&tri, &tri, DEFAULT_MAX_CANDIDATES).unwrap();
        assert_eq!(spec.parameters, Some((2, 3)));
        let glued = glue_arrangements(&spec).unwrap();
        assert_eq!(glued.len(), 3);
        let c = tri.derive_combinatorics();
        let gc = glue_combinatorics(&c, &c).unwrap();
        assert_eq!(gc.points().len(), 3);
        assert!(glued.derive_combinatorics().ordered_equal(&gc));
    }

    #[test]
    fn maclane_gluings_give_rybnikov() {
        let plus = catalog::extended_maclane_realization(Sign::Plus);
        let minus = catalog::extended_maclane_realization(Sign::Minus);
        let cr = catalog::rybnikov_explicit();
        for right in [&plus, &minus] {
            let spec = find_generic_gluing(&plus, right, DEFAULT_MAX_CANDIDATES).unwrap();
            assert!(check_gluing(&spec).unwrap());
            assert!(check_generic(&spec).unwrap());
            let glued = glue_arrangements(&spec).unwrap();
            assert_eq!(glued.len(), 15);
            assert!(glued.derive_combinatorics().ordered_equal(&cr));
        }
    }

    #[test]
    fn combinatorial_gluing_of_maclane() {
        let cm = catalog::extended_maclane_explicit();
        let glued = glue_combinatorics(&cm, &cm).unwrap();
        assert!(glued.is_valid());
        assert_eq!(glued.points().len(), 14 + (14 - 3) + 6 * 6);
        assert!(glued.ordered_equal(&catalog::rybnikov_explicit()));
    }

    #[test]
    fn glued_characters() {
        let xi = catalog::maclane_character();
        let glued = glue_characters(&xi, &xi, 3).unwrap();
        assert_eq!(glued.exponents(), &[0, 0, 0, 1, 1, 1, 2, 2, 2, 1, 1, 1, 2, 2, 2]);
        assert_eq!(glued, catalog::rybnikov_character());

        assert!(glue_characters(&Character::trivial(5), &Character::trivial(4), 3).unwrap().is_trivial());

        let a = Character::from_exponents(2, &[1, 0, 0, 1]).unwrap();
        let b = Character::from_exponents(3, &[1, 1, 0, 1]).unwrap();
        let g = glue_characters(&a, &b, 3).unwrap();
        assert_eq!(g.modulus(), 6);
        assert_eq!(g.line_count(), 5);
        // shared lines carry products, the rest carry the lifted originals
        assert_eq!(g.value(0), &a.value(0).lift(6).unwrap() * &b.value(0).lift(6).unwrap());
        assert_eq!(g.value(3), a.value(3).lift(6).unwrap());
        assert_eq!(g.value(4), b.value(3).lift(6).unwrap());
        assert_eq!(glue_characters(&a, &b, 5).unwrap_err(), GluingError::SharedOutOfRange { shared: 5, max: 4 });
    }
}
