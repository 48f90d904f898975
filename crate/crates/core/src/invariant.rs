//! Ledger of I-invariant values and the rules that derive new values from
//! old ones: multiplicativity under triangle gluing, and conjugation.
//!
//! Values are never computed from topology here. They enter as published
//! data and everything else is derived by the two rules.

use std::fmt;

use thiserror::Error;

use crate::characters::Character;
use crate::combinatorics::{CombError, Combinatorics, Cycle};
use crate::cyclotomic::CycloNum;
use crate::gluing::{self, GluingError, GluingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("ledger already has an entry {0:?}")]
    DuplicateId(String),
    #[error("no ledger entry {0:?}")]
    UnknownId(String),
    #[error("entry {0:?}: the character is not inner-cyclic for its cycle")]
    NotInnerCyclic(String),
    #[error("entry {0:?}: value {1} is not a root of unity")]
    NotRootOfUnity(String, String),
    #[error("entry {0:?}: character has {1} lines, combinatorics has {2}")]
    LineCountMismatch(String, usize, usize),
    #[error("entry {0:?}: cycle is not supported on the first three lines")]
    NonTriangular(String),
    #[error("entry {0:?}: invalid combinatorics or cycle: {1}")]
    Combinatorics(String, CombError),
    #[error("the gluing's arrangements do not realize the entries' combinatorics")]
    GluingMismatch,
    #[error(transparent)]
    Gluing(#[from] GluingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Published(String),
    Multiplicativity { left: String, right: String },
    Conjugation { of: String },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Published(cite) => write!(f, "published: {cite}"),
            Provenance::Multiplicativity { left, right } => write!(f, "multiplicativity: {left} * {right}"),
            Provenance::Conjugation { of } => write!(f, "conjugation: {of}"),
        }
    }
}

impl Provenance {
    /// Inverse of the `Display` form.
    pub fn parse(s: &str) -> Option<Provenance> {
        let (kind, rest) = s.split_once(':')?;
        let rest = rest.trim();
        match kind.trim() {
            "published" => Some(Provenance::Published(rest.to_string())),
            "multiplicativity" => {
                let (l, r) = rest.split_once(" * ")?;
                Some(Provenance::Multiplicativity { left: l.into(), right: r.into() })
            }
            "conjugation" => Some(Provenance::Conjugation { of: rest.to_string() }),
            _ => None,
        }
    }
}

/// One value `I(A, ξ, γ)` with its triangular cycle given by three line indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub id: String,
    pub combinatorics: Combinatorics,
    pub character: Character,
    pub triangle: [usize; 3],
    pub value: CycloNum,
    pub provenance: Provenance,
}

impl LedgerEntry {
    pub fn cycle(&self) -> Result<Cycle, CombError> {
        let [i, j, k] = self.triangle;
        self.combinatorics.triangle_cycle(i, j, k)
    }

    /// All entry invariants: valid combinatorics, matching line count,
    /// inner-cyclic character on the triangle, root-of-unity value.
    pub fn check(&self) -> Result<(), LedgerError> {
        let id = || self.id.clone();
        let report = self.combinatorics.validate();
        if !report.is_empty() {
            return Err(LedgerError::Combinatorics(id(), CombError::Invalid(report)));
        }
        if self.character.line_count() != self.combinatorics.line_count() {
            return Err(LedgerError::LineCountMismatch(
                id(),
                self.character.line_count(),
                self.combinatorics.line_count(),
            ));
        }
        let cycle = self.cycle().map_err(|e| LedgerError::Combinatorics(id(), e))?;
        if !self.character.is_inner_cyclic_def(&self.combinatorics, &cycle) {
            return Err(LedgerError::NotInnerCyclic(id()));
        }
        if !is_root_of_unity(&self.value) {
            return Err(LedgerError::NotRootOfUnity(id(), self.value.to_string()));
        }
        Ok(())
    }

    fn is_first_triangle(&self) -> bool {
        self.triangle == [0, 1, 2]
    }
}

/// The roots of unity in Q(ζₙ) are the powers of ζ_lcm(n,2).
fn is_root_of_unity(v: &CycloNum) -> bool {
    let n = if v.order().is_multiple_of(2) { v.order() } else { 2 * v.order() };
    v.lift(n).is_ok_and(|w| w.as_root_of_unity().is_some())
}

/// Append-only store of entries, keyed by id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ledger {
    entries: Vec<LedgerEntry>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, entry: LedgerEntry) -> Result<(), LedgerError> {
        if self.get(&entry.id).is_some() {
            return Err(LedgerError::DuplicateId(entry.id));
        }
        entry.check()?;
        self.entries.push(entry);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn entry(&self, id: &str) -> Result<&LedgerEntry, LedgerError> {
        self.get(id).ok_or_else(|| LedgerError::UnknownId(id.to_string()))
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }
}

/// How the two sides are glued when deriving a product value.
#[derive(Debug, Clone, Copy)]
pub enum GluingSource<'a> {
    /// A generic gluing along the first three lines, known only combinatorially.
    Generic,
    /// An explicit gluing map between realizations of the two entries.
    Spec(&'a GluingSpec),
}

fn product(a: &CycloNum, b: &CycloNum) -> CycloNum {
    let (x, y) = CycloNum::unify(a, b);
    &x * &y
}

/// The entry for the glued triple: glued character, cycle on D₁D₂D₃, and
/// value equal to the product of the two values.
pub fn invariant_of_glued(
    id: impl Into<String>,
    left: &LedgerEntry,
    right: &LedgerEntry,
    source: GluingSource<'_>,
) -> Result<LedgerEntry, LedgerError> {
    for e in [left, right] {
        if !e.is_first_triangle() {
            return Err(LedgerError::NonTriangular(e.id.clone()));
        }
    }
    let (combinatorics, shared) = match source {
        GluingSource::Generic => (gluing::glue_combinatorics(&left.combinatorics, &right.combinatorics)?, 3),
        GluingSource::Spec(spec) => {
            if !spec.left.derive_combinatorics().ordered_equal(&left.combinatorics)
                || !spec.right.derive_combinatorics().ordered_equal(&right.combinatorics)
            {
                return Err(LedgerError::GluingMismatch);
            }
            (gluing::glue_arrangements(spec)?.derive_combinatorics(), spec.shared)
        }
    };
    let character = gluing::glue_characters(&left.character, &right.character, shared)?;
    let entry = LedgerEntry {
        id: id.into(),
        combinatorics,
        character,
        triangle: [0, 1, 2],
        value: product(&left.value, &right.value),
        provenance: Provenance::Multiplicativity { left: left.id.clone(), right: right.id.clone() },
    };
    // the glued triple is inner-cyclic in theory; re-verified here
    entry.check()?;
    Ok(entry)
}

/// The entry for the complex-conjugate arrangement.
pub fn invariant_of_conjugate(e: &LedgerEntry) -> LedgerEntry {
    LedgerEntry {
        id: format!("conj({})", e.id),
        combinatorics: e.combinatorics.clone(),
        character: e.character.clone(),
        triangle: e.triangle,
        value: e.value.conj(),
        provenance: Provenance::Conjugation { of: e.id.clone() },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    /// The value is real; the construction distinguishes nothing.
    Inconclusive,
    /// No order-preserving homeomorphism between the two glued arrangements.
    OrderedZariskiPair,
    /// No homeomorphism at all (trivial automorphism group).
    ZariskiPair,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Inconclusive => "inconclusive",
            VerdictKind::OrderedZariskiPair => "ordered Zariski pair",
            VerdictKind::ZariskiPair => "Zariski pair",
        })
    }
}

/// Certificate produced by [`detect_zariski`]. It carries the entries it was
/// derived from so that [`Verdict::verify`] can re-check the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub source: LedgerEntry,
    pub aut_trivial: bool,
    /// `A ⋈ A` and its value `v·v`.
    pub plus: Option<LedgerEntry>,
    /// `A ⋈ Ā` and its value `v·v̄ = 1`.
    pub minus: Option<LedgerEntry>,
    pub reasoning: Vec<String>,
}

impl Verdict {
    pub fn values(&self) -> Option<(CycloNum, CycloNum)> {
        Some((self.plus.as_ref()?.value.clone(), self.minus.as_ref()?.value.clone()))
    }

    /// Re-derives every algebraic claim of the certificate.
    pub fn verify(&self) -> bool {
        let v = &self.source.value;
        if self.source.check().is_err() {
            return false;
        }
        match self.kind {
            VerdictKind::Inconclusive => v.is_real() && self.plus.is_none() && self.minus.is_none(),
            kind => {
                let (Some(plus), Some(minus)) = (&self.plus, &self.minus) else { return false };
                let conj = invariant_of_conjugate(&self.source);
                let Ok(p) = invariant_of_glued(plus.id.clone(), &self.source, &self.source, GluingSource::Generic)
                else {
                    return false;
                };
                let Ok(m) = invariant_of_glued(minus.id.clone(), &self.source, &conj, GluingSource::Generic) else {
                    return false;
                };
                !v.is_real()
                    && p == *plus
                    && m == *minus
                    && plus.combinatorics.ordered_equal(&minus.combinatorics)
                    && plus.character == minus.character
                    && minus.value.is_one()
                    && plus.value != minus.value
                    && (kind == VerdictKind::OrderedZariskiPair) != self.aut_trivial
            }
        }
    }
}

/// Applies the construction to `e`: glue two copies of A, and A with its
/// conjugate, and compare the resulting values.
pub fn detect_zariski(e: &LedgerEntry, aut_trivial: bool) -> Result<Verdict, LedgerError> {
    e.check()?;
    if !e.is_first_triangle() {
        return Err(LedgerError::NonTriangular(e.id.clone()));
    }
    let v = &e.value;
    if v.is_real() {
        return Ok(Verdict {
            kind: VerdictKind::Inconclusive,
            source: e.clone(),
            aut_trivial,
            plus: None,
            minus: None,
            reasoning: vec![format!("I({}) = {v} is real: the gluing construction distinguishes nothing", e.id)],
        });
    }
    let conj = invariant_of_conjugate(e);
    let plus = invariant_of_glued(format!("{0}*{0}", e.id), e, e, GluingSource::Generic)?;
    let minus = invariant_of_glued(format!("{}*{}", e.id, conj.id), e, &conj, GluingSource::Generic)?;
    let mut reasoning = vec![
        format!("({}, ξ, γ) is triangular inner-cyclic with I = {v}, which is not real", e.id),
        format!(
            "they have the same ordered combinatorics ({} lines, {} points) and the same glued character",
            plus.combinatorics.line_count(),
            plus.combinatorics.points().len()
        ),
        format!("multiplicativity under generic triangle gluing: I({}) = ({v})·({v}) = {}", plus.id, plus.value),
        format!("conjugation: I({}) = {}", conj.id, conj.value),
        format!("multiplicativity: I({}) = ({v})·({}) = {}", minus.id, conj.value, minus.value),
        format!(
            "{} ≠ {}: I is an invariant of the oriented ordered topology, so no homeomorphism preserving order and orientation exists",
            plus.value, minus.value
        ),
        format!(
            "I of the conjugate of {} is {} ≠ 1 as well, so the orientation hypothesis drops: no order-preserving homeomorphism",
            plus.id,
            plus.value.conj()
        ),
    ];
    let kind = if aut_trivial {
        reasoning
            .push("the combinatorics of A has trivial automorphism group, so the order hypothesis drops too".into());
        VerdictKind::ZariskiPair
    } else {
        VerdictKind::OrderedZariskiPair
    };
    Ok(Verdict { kind, source: e.clone(), aut_trivial, plus: Some(plus), minus: Some(minus), reasoning })
}
