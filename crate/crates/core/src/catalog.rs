//! Built-in constructions: the extended MacLane combinatorics from PF₃², the
//! explicit lists, the realizations M⁺ and M⁻, the characters ξ_M and 𝔛, the
//! seed ledger and the extended Rybnikov pipeline.

use std::collections::BTreeSet;

use crate::characters::Character;
use crate::combinatorics::{default_names, Combinatorics, Cycle};
use crate::cyclotomic::CycloNum;
use crate::gluing::{self, GluingError, GluingSpec, DEFAULT_MAX_CANDIDATES};
use crate::invariant::{self, GluingSource, Ledger, LedgerEntry, LedgerError, Provenance};
use crate::realization::{Arrangement, ProjLine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A point of PF₃², first nonzero coordinate equal to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pf3Point([u8; 3]);

impl Pf3Point {
    pub fn new(coords: [u8; 3]) -> Option<Self> {
        let c = coords.map(|x| x % 3);
        let lead = *c.iter().find(|&&x| x != 0)?;
        // 2 is its own inverse mod 3
        Some(Pf3Point(c.map(|x| x * lead % 3)))
    }

    pub fn coords(self) -> [u8; 3] {
        self.0
    }

    /// Incidence with the line whose coefficient vector is `line`.
    pub fn lies_on(self, line: Pf3Point) -> bool {
        self.0.iter().zip(line.0).map(|(&a, b)| (a * b) as u32).sum::<u32>() % 3 == 0
    }

    /// All 13 points, in lexicographic order of their normal forms.
    pub fn all() -> Vec<Pf3Point> {
        let mut pts = BTreeSet::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    pts.extend(Pf3Point::new([x, y, z]));
                }
            }
        }
        pts.into_iter().collect()
    }
}

/// Affine coordinates of L₂…L₉ as drawn in the labeled picture of PF₃².
const AFFINE_LABELS: [(u8, u8); 8] = [(2, 0), (1, 0), (2, 1), (0, 1), (1, 1), (0, 2), (1, 2), (2, 2)];

/// Affine label `(x, y)` of line `i` (0-based); L₁ has none.
pub fn figure_label(line: usize) -> Option<(u8, u8)> {
    line.checked_sub(1).and_then(|k| AFFINE_LABELS.get(k)).copied()
}

/// Inverse of [`figure_label`].
pub fn line_of_label(label: (u8, u8)) -> Option<usize> {
    AFFINE_LABELS.iter().position(|&l| l == label).map(|k| k + 1)
}

fn from_one_based(n: usize, points: &[&[usize]]) -> Combinatorics {
    let points = points.iter().map(|p| p.iter().map(|i| i - 1).collect()).collect();
    Combinatorics::validated(default_names("L", n), points).expect("catalog data is valid")
}

/// Adds a double point for every pair of lines not yet on a common point.
fn complete_with_doubles(n: usize, mut points: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut covered = vec![vec![false; n]; n];
    for p in &points {
        for &i in p {
            for &j in p {
                covered[i][j] = true;
            }
        }
    }
    let missing: Vec<Vec<usize>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !covered[i][j])
        .map(|(i, j)| vec![i, j])
        .collect();
    points.extend(missing);
    points
}

/// L_M = PF₃² ∖ {[0:0:1], I} ∪ {Q} with Q = [1:0:0] playing the role of L₁.
/// The points of size at least 3 are the PF₃² lines avoiding [0:0:1].
pub fn extended_maclane_from_pf3() -> Combinatorics {
    let q = Pf3Point::new([1, 0, 0]).expect("nonzero");
    let mut elements = vec![q];
    for &(x, y) in &AFFINE_LABELS {
        elements.push(Pf3Point::new([x, y, 1]).expect("affine"));
    }
    let origin = Pf3Point::new([0, 0, 1]).expect("nonzero");
    let mut points: Vec<Vec<usize>> = Pf3Point::all()
        .into_iter()
        .filter(|line| !origin.lies_on(*line))
        .map(|line| (0..elements.len()).filter(|&i| elements[i].lies_on(line)).collect::<Vec<_>>())
        .filter(|p| p.len() >= 3)
        .collect();
    points = complete_with_doubles(elements.len(), points);
    Combinatorics::validated(default_names("L", elements.len()), points).expect("PF3 construction is valid")
}

/// C_M as an explicit list.
pub fn extended_maclane_explicit() -> Combinatorics {
    from_one_based(
        9,
        &[
            &[1, 2],
            &[1, 3],
            &[1, 4, 5, 6],
            &[1, 7, 8, 9],
            &[2, 3],
            &[2, 4, 9],
            &[2, 5, 8],
            &[2, 6, 7],
            &[3, 4, 7],
            &[3, 5, 9],
            &[3, 6, 8],
            &[4, 8],
            &[5, 7],
            &[6, 9],
        ],
    )
}

/// C_M with L₁ removed: the MacLane combinatorics on L₂…L₉.
pub fn maclane_combinatorics() -> Combinatorics {
    let c = extended_maclane_explicit();
    let points = c
        .points()
        .iter()
        .map(|p| p.iter().filter(|&&i| i != 0).map(|i| i - 1).collect::<Vec<_>>())
        .filter(|p| p.len() >= 2)
        .collect();
    let points = complete_with_doubles(8, points);
    let names = c.line_names()[1..].to_vec();
    Combinatorics::validated(names, points).expect("MacLane combinatorics is valid")
}

/// C_R on D₁…D₁₅: the first copy of C_M, the second copy on D₁, D₂, D₃,
/// D₁₀…D₁₅ without the shared vertices, and the 36 double points between
/// the copies.
pub fn rybnikov_explicit() -> Combinatorics {
    let second: [&[usize]; 11] = [
        &[1, 10, 11, 12],
        &[1, 13, 14, 15],
        &[2, 10, 15],
        &[2, 12, 13],
        &[3, 10, 13],
        &[2, 11, 14],
        &[3, 11, 15],
        &[3, 12, 14],
        &[10, 14],
        &[13, 11],
        &[12, 15],
    ];
    let first: [&[usize]; 14] = [
        &[1, 2],
        &[1, 3],
        &[1, 4, 5, 6],
        &[1, 7, 8, 9],
        &[2, 3],
        &[2, 4, 9],
        &[2, 5, 8],
        &[2, 6, 7],
        &[3, 4, 7],
        &[3, 5, 9],
        &[3, 6, 8],
        &[4, 8],
        &[7, 5],
        &[6, 9],
    ];
    let mut points: Vec<Vec<usize>> = first.iter().chain(second.iter()).map(|p| p.to_vec()).collect();
    for i in 4..=9 {
        for j in 10..=15 {
            points.push(vec![i, j]);
        }
    }
    let refs: Vec<&[usize]> = points.iter().map(Vec::as_slice).collect();
    let mut c = from_one_based(15, &refs);
    c = Combinatorics::new(default_names("D", 15), c.points().to_vec()).expect("same points");
    c
}

/// M⁺ (a = ζ) or M⁻ (a = ζ²) over Q(ζ₃).
pub fn extended_maclane_realization(sign: Sign) -> Arrangement {
    let a = match sign {
        Sign::Plus => CycloNum::root_power(3, 1),
        Sign::Minus => CycloNum::root_power(3, 2),
    };
    let ab = a.conj();
    let n = |k: i64| CycloNum::from_int(3, k);
    let coeffs: [[CycloNum; 3]; 9] = [
        [n(0), n(0), n(1)],
        [n(1), -&ab, n(0)],
        [n(1), -&a, n(0)],
        [n(0), n(1), -&ab],
        [n(0), n(1), n(-1)],
        [n(0), n(1), -&a],
        [n(1), n(0), n(-1)],
        [n(1), n(0), -&ab],
        [n(1), n(0), -&a],
    ];
    let lines = coeffs
        .into_iter()
        .enumerate()
        .map(|(i, c)| ProjLine::new(format!("L{}", i + 1), c).expect("nonzero coefficients"))
        .collect();
    Arrangement::new(3, lines).expect("distinct lines")
}

/// ξ_M: exponents (0,0,0,1,1,1,2,2,2) mod 3.
pub fn maclane_character() -> Character {
    Character::from_exponents(3, &[0, 0, 0, 1, 1, 1, 2, 2, 2]).expect("sum is 9")
}

/// 𝔛: exponents (0,0,0,1,1,1,2,2,2,1,1,1,2,2,2) mod 3.
pub fn rybnikov_character() -> Character {
    Character::from_exponents(3, &[0, 0, 0, 1, 1, 1, 2, 2, 2, 1, 1, 1, 2, 2, 2]).expect("sum is 18")
}

const SEED_CITATION: &str = "imported value for the extended MacLane arrangement";

/// Ledger holding the published values I(M⁺) = ζ² and I(M⁻) = ζ.
pub fn ledger_seed() -> Ledger {
    let mut ledger = Ledger::new();
    for (id, k) in [("M+", 2), ("M-", 1)] {
        ledger
            .register(LedgerEntry {
                id: id.to_string(),
                combinatorics: extended_maclane_explicit(),
                character: maclane_character(),
                triangle: [0, 1, 2],
                value: CycloNum::root_power(3, k),
                provenance: Provenance::Published(SEED_CITATION.to_string()),
            })
            .expect("seed entries are valid");
    }
    ledger
}

/// Everything produced by [`build_extended_rybnikov`].
#[derive(Debug, Clone)]
pub struct RybnikovBundle {
    pub arrangement: Arrangement,
    pub gluing: GluingSpec,
    pub character: Character,
    pub cycle: Cycle,
    pub entry: LedgerEntry,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error(transparent)]
    Gluing(#[from] GluingError),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
    #[error(transparent)]
    Combinatorics(#[from] crate::combinatorics::CombError),
}

/// R⁺ = M⁺ ⋈ M⁺ or R⁻ = M⁺ ⋈ M⁻, with its character, the cycle μ on
/// D₁D₂D₃ and the ledger entry derived from the seed values.
pub fn build_extended_rybnikov(sign: Sign) -> Result<RybnikovBundle, CatalogError> {
    let left = extended_maclane_realization(Sign::Plus);
    let right = extended_maclane_realization(sign);
    let spec = gluing::find_generic_gluing(&left, &right, DEFAULT_MAX_CANDIDATES)?;
    let arrangement = gluing::glue_arrangements(&spec)?;
    let character = gluing::glue_characters(&maclane_character(), &maclane_character(), spec.shared)?;
    let combinatorics = arrangement.derive_combinatorics();
    let cycle = combinatorics.triangle_cycle(0, 1, 2)?;
    let seed = ledger_seed();
    let right_id = match sign {
        Sign::Plus => "M+",
        Sign::Minus => "M-",
    };
    let id = format!("R{}", sign.symbol());
    let entry = invariant::invariant_of_glued(id, seed.entry("M+")?, seed.entry(right_id)?, GluingSource::Spec(&spec))?;
    Ok(RybnikovBundle { arrangement, gluing: spec, character, cycle, entry })
}
