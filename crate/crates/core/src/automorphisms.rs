//! Automorphism groups of combinatorics, their statistics, and the matrix
//! model of aut(C_M) by lower-triangular matrices over F₃.
//!
//! A permutation is a vector `p` sending line `i` to line `p[i]`. Products
//! follow the right-action convention: `σ·τ` applies σ first, then τ.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::catalog::{figure_label, line_of_label};
use crate::combinatorics::Combinatorics;
use crate::search;

pub type Perm = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("permutation has {got} entries, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("no lower-triangular matrix over F3 realizes the permutation")]
    NoMatrix,
}

/// `σ·τ`: first σ, then τ.
pub fn mul(sigma: &[usize], tau: &[usize]) -> Perm {
    sigma.iter().map(|&i| tau[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &j)| i == j)
}

pub fn element_order(p: &[usize]) -> usize {
    let mut q = p.to_vec();
    let mut k = 1;
    while !is_identity(&q) {
        q = mul(&q, p);
        k += 1;
    }
    k
}

/// Cycle notation with 1-based lines, fixed points omitted; `()` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{}", i + 1);
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    base: Combinatorics,
    elements: Vec<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStats {
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub order_histogram: BTreeMap<usize, usize>,
}

/// The full automorphism group of `c`, by backtracking search.
pub fn enumerate_automorphisms(c: &Combinatorics) -> AutGroup {
    AutGroup { base: c.clone(), elements: search::isomorphisms(c, c, None) }
}

impl AutGroup {
    pub fn trivial(base: &Combinatorics) -> Self {
        AutGroup { base: base.clone(), elements: vec![identity(base.line_count())] }
    }

    pub fn base(&self) -> &Combinatorics {
        &self.base
    }

    /// Sorted lexicographically; the identity comes first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(p)).is_ok()
    }

    /// Identity, closure, inverses, and that every element is an
    /// automorphism of the base, all by direct check.
    pub fn verify_group_axioms(&self) -> bool {
        let n = self.base.line_count();
        self.contains(&identity(n))
            && self.elements.iter().all(|s| self.base.permuted(s).is_ok_and(|c| c.ordered_equal(&self.base)))
            && self.elements.iter().all(|s| self.contains(&inverse(s)))
            && self.elements.iter().all(|s| self.elements.iter().all(|t| self.contains(&mul(s, t))))
    }

    pub fn stats(&self) -> GroupStats {
        let commutes = |s: &Perm, t: &Perm| mul(s, t) == mul(t, s);
        let center_order = self.elements.iter().filter(|s| self.elements.iter().all(|t| commutes(s, t))).count();
        let mut order_histogram = BTreeMap::new();
        for s in &self.elements {
            *order_histogram.entry(element_order(s)).or_insert(0) += 1;
        }
        GroupStats { order: self.order(), abelian: center_order == self.order(), center_order, order_histogram }
    }

    /// Elements mapping each of the given line sets onto itself.
    pub fn copy_preserving_subgroup(&self, parts: &[&[usize]]) -> AutGroup {
        let elements = self
            .elements
            .iter()
            .filter(|s| parts.iter().all(|part| part.iter().all(|i| part.contains(&s[*i]))))
            .cloned()
            .collect();
        AutGroup { base: self.base.clone(), elements }
    }
}

pub fn group_stats(g: &AutGroup) -> GroupStats {
    g.stats()
}

/// A 2×2 matrix over F₃, entries in 0..3, acting on row vectors `v ↦ v·M`.
pub type F3Matrix = [[u8; 2]; 2];

pub fn f3_mul(x: &F3Matrix, y: &F3Matrix) -> F3Matrix {
    let mut out = [[0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (x[i][0] * y[0][j] + x[i][1] * y[1][j]) % 3;
        }
    }
    out
}

pub fn f3_det(m: &F3Matrix) -> u8 {
    (m[0][0] * m[1][1] + 2 * (m[0][1] * m[1][0]) % 3) % 3
}

/// The twelve matrices `(a 0; b c)` with `a, c ≠ 0`.
pub fn lower_triangular_gl2_f3() -> Vec<F3Matrix> {
    let mut out = Vec::with_capacity(12);
    for a in 1..3 {
        for b in 0..3 {
            for c in 1..3 {
                out.push([[a, 0], [b, c]]);
            }
        }
    }
    out
}

/// The permutation of L₁…L₉ induced by `m` on the affine labels; L₁ is fixed.
pub fn maclane_permutation(m: &F3Matrix) -> Perm {
    let mut p = vec![0];
    for i in 1..9 {
        let (x, y) = figure_label(i).expect("L2..L9 are labeled");
        let image = ((x * m[0][0] + y * m[1][0]) % 3, (x * m[0][1] + y * m[1][1]) % 3);
        p.push(line_of_label(image).expect("a linear map fixes only the origin"));
    }
    p
}

/// The lower-triangular matrix whose action on the labels reproduces `sigma`.
pub fn matrix_of_maclane_automorphism(sigma: &[usize]) -> Result<F3Matrix, AutError> {
    if sigma.len() != 9 {
        return Err(AutError::WrongLength { expected: 9, got: sigma.len() });
    }
    lower_triangular_gl2_f3().into_iter().find(|m| maclane_permutation(m) == sigma).ok_or(AutError::NoMatrix)
}

/// +1 when L₂ and L₃ are fixed, −1 when they are exchanged.
pub fn maclane_sign(sigma: &[usize]) -> Result<i8, AutError> {
    matrix_of_maclane_automorphism(sigma)?;
    Ok(if sigma[1] == 1 && sigma[2] == 2 { 1 } else { -1 })
}

/// The determinant of the matrix of `sigma`, read in {±1}.
pub fn maclane_det(sigma: &[usize]) -> Result<i8, AutError> {
    let m = matrix_of_maclane_automorphism(sigma)?;
    Ok(if f3_det(&m) == 1 { 1 } else { -1 })
}
