//! JSON file formats. Line and point indices are 1-based in files and
//! cyclotomic numbers are strings in the `z` grammar.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{Character, CharacterError};
use crate::combinatorics::{CombError, Combinatorics};
use crate::cyclotomic::{CycloError, CycloNum};
use crate::gluing::{GenericityReport, GluingSpec};
use crate::invariant::{Ledger, LedgerEntry, LedgerError, Provenance, Verdict, VerdictKind};
use crate::realization::{Arrangement, ProjLine, RealizationError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON")]
    Json(#[from] serde_json::Error),
    #[error("index 0 used; indices are 1-based")]
    ZeroIndex,
    #[error("unknown provenance {0:?}")]
    Provenance(String),
    #[error("unknown verdict kind {0:?}")]
    VerdictKind(String),
    #[error(transparent)]
    Combinatorics(#[from] CombError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}

fn zero_based(v: &[usize]) -> Result<Vec<usize>, IoError> {
    v.iter().map(|&i| i.checked_sub(1).ok_or(IoError::ZeroIndex)).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombFile {
    pub lines: Vec<String>,
    pub points: Vec<Vec<usize>>,
}

impl CombFile {
    pub fn from_combinatorics(c: &Combinatorics) -> Self {
        CombFile { lines: c.line_names().to_vec(), points: c.points().iter().map(|p| one_based(p)).collect() }
    }

    /// Builds and validates.
    pub fn to_combinatorics(&self) -> Result<Combinatorics, IoError> {
        let points = self.points.iter().map(|p| zero_based(p)).collect::<Result<_, _>>()?;
        Ok(Combinatorics::validated(self.lines.clone(), points)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharFile {
    pub modulus: u32,
    pub exponents: Vec<i64>,
}

impl CharFile {
    pub fn from_character(x: &Character) -> Self {
        CharFile { modulus: x.modulus(), exponents: x.exponents().iter().map(|&e| e as i64).collect() }
    }

    pub fn to_character(&self) -> Result<Character, IoError> {
        Ok(Character::from_exponents(self.modulus, &self.exponents)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineFile {
    pub name: String,
    pub coeffs: [String; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub cyclotomic_order: u32,
    pub lines: Vec<LineFile>,
}

fn parse3(order: u32, s: &[String; 3]) -> Result<[CycloNum; 3], IoError> {
    Ok([CycloNum::parse(order, &s[0])?, CycloNum::parse(order, &s[1])?, CycloNum::parse(order, &s[2])?])
}

impl ArrangementFile {
    pub fn from_arrangement(a: &Arrangement) -> Self {
        let lines = a
            .lines()
            .iter()
            .map(|l| LineFile { name: l.name().to_string(), coeffs: l.coeffs().clone().map(|c| c.to_string()) })
            .collect();
        ArrangementFile { cyclotomic_order: a.order(), lines }
    }

    pub fn to_arrangement(&self) -> Result<Arrangement, IoError> {
        let order = self.cyclotomic_order;
        let lines = self
            .lines
            .iter()
            .map(|l| Ok(ProjLine::new(l.name.clone(), parse3(order, &l.coeffs)?)?))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(Arrangement::new(order, lines)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub id: String,
    pub modulus: u32,
    pub exponents: Vec<i64>,
    pub cycle: [usize; 3],
    pub value: String,
    pub value_order: u32,
    pub provenance: String,
    pub combinatorics: CombFile,
}

impl EntryFile {
    pub fn from_entry(e: &LedgerEntry) -> Self {
        let [i, j, k] = e.triangle;
        EntryFile {
            id: e.id.clone(),
            modulus: e.character.modulus(),
            exponents: e.character.exponents().iter().map(|&x| x as i64).collect(),
            cycle: [i + 1, j + 1, k + 1],
            value: e.value.to_string(),
            value_order: e.value.order(),
            provenance: e.provenance.to_string(),
            combinatorics: CombFile::from_combinatorics(&e.combinatorics),
        }
    }

    /// Parses without checking the entry invariants; see [`LedgerEntry::check`].
    pub fn to_entry(&self) -> Result<LedgerEntry, IoError> {
        let t = zero_based(&self.cycle)?;
        Ok(LedgerEntry {
            id: self.id.clone(),
            combinatorics: self.combinatorics.to_combinatorics()?,
            character: Character::from_exponents(self.modulus, &self.exponents)?,
            triangle: [t[0], t[1], t[2]],
            value: CycloNum::parse(self.value_order, &self.value)?,
            provenance: Provenance::parse(&self.provenance)
                .ok_or_else(|| IoError::Provenance(self.provenance.clone()))?,
        })
    }
}

pub fn ledger_to_json(l: &Ledger) -> String {
    to_json(&l.entries().iter().map(EntryFile::from_entry).collect::<Vec<_>>())
}

/// Parses a ledger file, registering (and so checking) every entry in order.
pub fn ledger_from_json(text: &str) -> Result<Ledger, IoError> {
    let files: Vec<EntryFile> = from_json(text)?;
    let mut ledger = Ledger::new();
    for f in files {
        ledger.register(f.to_entry()?)?;
    }
    Ok(ledger)
}

pub fn comb_to_json(c: &Combinatorics) -> String {
    to_json(&CombFile::from_combinatorics(c))
}

pub fn comb_from_json(text: &str) -> Result<Combinatorics, IoError> {
    from_json::<CombFile>(text)?.to_combinatorics()
}

pub fn char_to_json(x: &Character) -> String {
    to_json(&CharFile::from_character(x))
}

pub fn char_from_json(text: &str) -> Result<Character, IoError> {
    from_json::<CharFile>(text)?.to_character()
}

pub fn arrangement_to_json(a: &Arrangement) -> String {
    to_json(&ArrangementFile::from_arrangement(a))
}

pub fn arrangement_from_json(text: &str) -> Result<Arrangement, IoError> {
    from_json::<ArrangementFile>(text)?.to_arrangement()
}

/// Sidecar report for a found gluing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlueReportFile {
    pub cyclotomic_order: u32,
    pub shared: usize,
    pub parameters: Option<(i64, i64)>,
    /// Rows of φ.
    pub map: [[String; 3]; 3],
    pub checklist: GenericityFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenericityFile {
    pub is_gluing: bool,
    pub shared_is_three: bool,
    pub no_line_coincidence: bool,
    pub vertices_match: bool,
    pub no_singular_collision: bool,
    pub no_singular_on_foreign_line: bool,
    pub generic: bool,
}

impl From<&GenericityReport> for GenericityFile {
    fn from(r: &GenericityReport) -> Self {
        GenericityFile {
            is_gluing: r.is_gluing,
            shared_is_three: r.shared_is_three,
            no_line_coincidence: r.no_line_coincidence,
            vertices_match: r.vertices_match,
            no_singular_collision: r.no_singular_collision,
            no_singular_on_foreign_line: r.no_singular_on_foreign_line,
            generic: r.is_generic(),
        }
    }
}

impl GlueReportFile {
    pub fn new(spec: &GluingSpec, report: &GenericityReport) -> Self {
        GlueReportFile {
            cyclotomic_order: spec.map.order(),
            shared: spec.shared,
            parameters: spec.parameters,
            map: spec.map.rows().clone().map(|r| r.map(|c| c.to_string())),
            checklist: report.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictFile {
    pub verdict: String,
    pub entry: String,
    pub aut_trivial: bool,
    /// `[I(A ⋈ A), I(A ⋈ Ā)]` when the verdict is positive.
    pub values: Option<[String; 2]>,
    pub reasoning: Vec<String>,
    pub source: EntryFile,
    pub plus: Option<EntryFile>,
    pub minus: Option<EntryFile>,
}

impl VerdictFile {
    pub fn from_verdict(v: &Verdict) -> Self {
        VerdictFile {
            verdict: v.kind.to_string(),
            entry: v.source.id.clone(),
            aut_trivial: v.aut_trivial,
            values: v.values().map(|(a, b)| [a.to_string(), b.to_string()]),
            reasoning: v.reasoning.clone(),
            source: EntryFile::from_entry(&v.source),
            plus: v.plus.as_ref().map(EntryFile::from_entry),
            minus: v.minus.as_ref().map(EntryFile::from_entry),
        }
    }

    pub fn to_verdict(&self) -> Result<Verdict, IoError> {
        let kind = [VerdictKind::Inconclusive, VerdictKind::OrderedZariskiPair, VerdictKind::ZariskiPair]
            .into_iter()
            .find(|k| k.to_string() == self.verdict)
            .ok_or_else(|| IoError::VerdictKind(self.verdict.clone()))?;
        Ok(Verdict {
            kind,
            source: self.source.to_entry()?,
            aut_trivial: self.aut_trivial,
            plus: self.plus.as_ref().map(EntryFile::to_entry).transpose()?,
            minus: self.minus.as_ref().map(EntryFile::to_entry).transpose()?,
            reasoning: self.reasoning.clone(),
        })
    }
}
