//! Exact projective line arrangements over Q(ζₙ).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::combinatorics::Combinatorics;
use crate::cyclotomic::{CycloError, CycloNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("all three coordinates are zero")]
    ZeroVector,
    #[error("lines {0} and {1} coincide")]
    SameLine(String, String),
    #[error("the two points coincide")]
    SamePoint,
    #[error("singular matrix")]
    Singular,
    #[error("coefficient lives in Q(ζ_{found}), arrangement uses Q(ζ_{expected})")]
    OrderMismatch { expected: u32, found: u32 },
    #[error("point {0} is not a singular point of the arrangement")]
    NotSingular(ProjPoint),
    #[error("the line through the two points is already line {0}")]
    LineExists(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

type Vec3 = [CycloNum; 3];

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [&(&a[1] * &b[2]) - &(&a[2] * &b[1]), &(&a[2] * &b[0]) - &(&a[0] * &b[2]), &(&a[0] * &b[1]) - &(&a[1] * &b[0])]
}

fn dot(a: &Vec3, b: &Vec3) -> CycloNum {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

/// Scales so that the first nonzero entry is 1.
fn normalize(v: Vec3) -> Result<Vec3, RealizationError> {
    let pivot = v.iter().find(|c| !c.is_zero()).ok_or(RealizationError::ZeroVector)?;
    let inv = pivot.inv()?;
    Ok(v.map(|c| &c * &inv))
}

fn check_orders(v: &Vec3) -> Result<u32, RealizationError> {
    let order = v[0].order();
    for c in &v[1..] {
        if c.order() != order {
            return Err(RealizationError::OrderMismatch { expected: order, found: c.order() });
        }
    }
    Ok(order)
}

/// A point of P², canonically normalized.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec3,
}

impl ProjPoint {
    pub fn new(coords: [CycloNum; 3]) -> Result<Self, RealizationError> {
        check_orders(&coords)?;
        Ok(ProjPoint { coords: normalize(coords)? })
    }

    pub fn coords(&self) -> &[CycloNum; 3] {
        &self.coords
    }

    pub fn lies_on(&self, line: &ProjLine) -> bool {
        dot(&self.coords, &line.coeffs).is_zero()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The line `a·x + b·y + c·z = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjLine {
    name: String,
    coeffs: Vec3,
}

impl ProjLine {
    pub fn new(name: impl Into<String>, coeffs: [CycloNum; 3]) -> Result<Self, RealizationError> {
        check_orders(&coeffs)?;
        Ok(ProjLine { name: name.into(), coeffs: normalize(coeffs)? })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coeffs(&self) -> &[CycloNum; 3] {
        &self.coeffs
    }

    pub fn order(&self) -> u32 {
        self.coeffs[0].order()
    }

    /// Same projective line, names aside.
    pub fn same_as(&self, other: &ProjLine) -> bool {
        self.coeffs == other.coeffs
    }

    pub fn renamed(&self, name: impl Into<String>) -> ProjLine {
        ProjLine { name: name.into(), coeffs: self.coeffs.clone() }
    }

    pub fn conj(&self) -> ProjLine {
        ProjLine { name: self.name.clone(), coeffs: self.coeffs.clone().map(|c| c.conj()) }
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({})x + ({})y + ({})z", self.name, self.coeffs[0], self.coeffs[1], self.coeffs[2])
    }
}

/// The common point of two distinct lines.
pub fn intersect(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint, RealizationError> {
    let p = cross(&l1.coeffs, &l2.coeffs);
    if p.iter().all(CycloNum::is_zero) {
        return Err(RealizationError::SameLine(l1.name.clone(), l2.name.clone()));
    }
    Ok(ProjPoint { coords: normalize(p)? })
}

/// The line through two distinct points.
pub fn join(name: impl Into<String>, p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, RealizationError> {
    let l = cross(&p.coords, &q.coords);
    if l.iter().all(CycloNum::is_zero) {
        return Err(RealizationError::SamePoint);
    }
    Ok(ProjLine { name: name.into(), coeffs: normalize(l)? })
}

/// An ordered arrangement of pairwise distinct lines over Q(ζ_order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    order: u32,
    lines: Vec<ProjLine>,
}

impl Arrangement {
    pub fn new(order: u32, lines: Vec<ProjLine>) -> Result<Self, RealizationError> {
        for l in &lines {
            if l.order() != order {
                return Err(RealizationError::OrderMismatch { expected: order, found: l.order() });
            }
        }
        for (i, a) in lines.iter().enumerate() {
            if let Some(b) = lines[i + 1..].iter().find(|b| a.same_as(b)) {
                return Err(RealizationError::SameLine(a.name.clone(), b.name.clone()));
            }
        }
        Ok(Arrangement { order, lines })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Every multiple point with the (sorted) indices of the lines through it,
    /// ordered by line sets.
    pub fn singular_points(&self) -> Vec<(ProjPoint, Vec<usize>)> {
        let mut groups: BTreeMap<ProjPoint, BTreeSet<usize>> = BTreeMap::new();
        for i in 0..self.lines.len() {
            for j in i + 1..self.lines.len() {
                let p = intersect(&self.lines[i], &self.lines[j]).expect("lines are pairwise distinct");
                let set = groups.entry(p).or_default();
                set.insert(i);
                set.insert(j);
            }
        }
        let mut out: Vec<(ProjPoint, Vec<usize>)> =
            groups.into_iter().map(|(p, s)| (p, s.into_iter().collect())).collect();
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }

    /// The combinatorics realized by this arrangement.
    pub fn derive_combinatorics(&self) -> Combinatorics {
        let names = self.lines.iter().map(|l| l.name.clone()).collect();
        let points = self.singular_points().into_iter().map(|(_, s)| s).collect();
        Combinatorics::new(names, points).expect("indices come from the arrangement")
    }

    pub fn conjugate(&self) -> Arrangement {
        Arrangement { order: self.order, lines: self.lines.iter().map(ProjLine::conj).collect() }
    }

    /// Image of every line under the point map `m`.
    pub fn apply_map(&self, m: &ProjMap) -> Result<Arrangement, RealizationError> {
        if m.order() != self.order {
            return Err(RealizationError::OrderMismatch { expected: self.order, found: m.order() });
        }
        let lines = self.lines.iter().map(|l| m.apply_line(l)).collect::<Result<Vec<_>, _>>()?;
        Arrangement::new(self.order, lines)
    }

    pub fn renamed(&self, prefix: &str) -> Arrangement {
        let lines = self.lines.iter().enumerate().map(|(i, l)| l.renamed(format!("{prefix}{}", i + 1))).collect();
        Arrangement { order: self.order, lines }
    }

    /// Appends the line through the singular points `p` and `q`.
    pub fn rigidify(&self, p: &ProjPoint, q: &ProjPoint) -> Result<Rigidified, RealizationError> {
        if p == q {
            return Err(RealizationError::SamePoint);
        }
        let singular = self.singular_points();
        for x in [p, q] {
            if !singular.iter().any(|(s, _)| s == x) {
                return Err(RealizationError::NotSingular(x.clone()));
            }
        }
        let line = join(format!("L{}", self.lines.len() + 1), p, q)?;
        if let Some(existing) = self.lines.iter().find(|l| l.same_as(&line)) {
            return Err(RealizationError::LineExists(existing.name.clone()));
        }
        let hits = singular.into_iter().filter(|(s, _)| s.lies_on(&line)).map(|(_, lines)| lines).collect();
        let mut lines = self.lines.clone();
        lines.push(line);
        Ok(Rigidified { arrangement: Arrangement::new(self.order, lines)?, singular_points_hit: hits })
    }
}

/// Result of [`Arrangement::rigidify`].
#[derive(Debug, Clone)]
pub struct Rigidified {
    pub arrangement: Arrangement,
    /// Line sets of the existing singular points that the new line passes through.
    pub singular_points_hit: Vec<Vec<usize>>,
}

/// An invertible 3×3 matrix acting on points by `p ↦ M p`.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjMap {
    m: [Vec3; 3],
}

impl ProjMap {
    pub fn new(rows: [[CycloNum; 3]; 3]) -> Result<Self, RealizationError> {
        let order = rows[0][0].order();
        for r in &rows {
            for c in r {
                if c.order() != order {
                    return Err(RealizationError::OrderMismatch { expected: order, found: c.order() });
                }
            }
        }
        let map = ProjMap { m: rows };
        if map.det().is_zero() {
            return Err(RealizationError::Singular);
        }
        Ok(map)
    }

    pub fn identity(order: u32) -> Self {
        Self::diagonal(order, [CycloNum::one(order), CycloNum::one(order), CycloNum::one(order)])
            .expect("identity is invertible")
    }

    pub fn diagonal(order: u32, d: [CycloNum; 3]) -> Result<Self, RealizationError> {
        let z = CycloNum::zero(order);
        let [a, b, c] = d;
        Self::new([[a, z.clone(), z.clone()], [z.clone(), b, z.clone()], [z.clone(), z, c]])
    }

    /// The map whose columns are the given vectors.
    pub fn from_columns(cols: [[CycloNum; 3]; 3]) -> Result<Self, RealizationError> {
        let rows = [0, 1, 2].map(|i| [0, 1, 2].map(|j| cols[j][i].clone()));
        Self::new(rows)
    }

    pub fn rows(&self) -> &[[CycloNum; 3]; 3] {
        &self.m
    }

    pub fn order(&self) -> u32 {
        self.m[0][0].order()
    }

    pub fn det(&self) -> CycloNum {
        let m = &self.m;
        let cof0 = &(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]);
        let cof1 = &(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]);
        let cof2 = &(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]);
        &(&(&m[0][0] * &cof0) - &(&m[0][1] * &cof1)) + &(&m[0][2] * &cof2)
    }

    pub fn inverse(&self) -> ProjMap {
        let det_inv = self.det().inv().expect("invertible by construction");
        let m = &self.m;
        // adjugate: inverse[i][j] = cofactor(j, i) / det
        let cof = |r: usize, c: usize| {
            let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
            let minor = &(&m[rs[0]][cs[0]] * &m[rs[1]][cs[1]]) - &(&m[rs[0]][cs[1]] * &m[rs[1]][cs[0]]);
            if (r + c).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        let rows = [0, 1, 2].map(|i| [0, 1, 2].map(|j| &cof(j, i) * &det_inv));
        ProjMap { m: rows }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjMap) -> ProjMap {
        let rows = [0, 1, 2].map(|i| {
            [0, 1, 2]
                .map(|j| (0..3).fold(CycloNum::zero(self.order()), |acc, k| &acc + &(&self.m[i][k] * &other.m[k][j])))
        });
        ProjMap { m: rows }
    }

    fn mul_vec(&self, v: &Vec3) -> Vec3 {
        [0, 1, 2].map(|i| dot(&self.m[i], v))
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint { coords: normalize(self.mul_vec(&p.coords)).expect("invertible map") }
    }

    /// Line coefficients transform by the inverse transpose.
    pub fn apply_line(&self, l: &ProjLine) -> Result<ProjLine, RealizationError> {
        let inv = self.inverse();
        let v = [0, 1, 2]
            .map(|j| (0..3).fold(CycloNum::zero(self.order()), |acc, i| &acc + &(&l.coeffs[i] * &inv.m[i][j])));
        Ok(ProjLine { name: l.name.clone(), coeffs: normalize(v)? })
    }

    /// Same map up to a nonzero scalar.
    pub fn projectively_equal(&self, other: &ProjMap) -> bool {
        let flat = |m: &ProjMap| -> Vec<CycloNum> { m.m.iter().flatten().cloned().collect() };
        let (a, b) = (flat(self), flat(other));
        let Some(k) = a.iter().position(|c| !c.is_zero()) else { return false };
        if b[k].is_zero() {
            return false;
        }
        let s = b[k].checked_div(&a[k]).expect("nonzero");
        a.iter().zip(&b).all(|(x, y)| &(x * &s) == y)
    }
}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.m.iter().map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2])).collect();
        write!(f, "ProjMap{rows:?}")
    }
}
