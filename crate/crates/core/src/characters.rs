//! Torsion characters on a combinatorics and the inner-cyclic tests.
//!
//! A character sends line `i` to `ζ_m^{e_i}`; the product-one condition is
//! `Σ e_i ≡ 0 (mod m)`.

use num_integer::Integer;
use thiserror::Error;

use crate::combinatorics::{Combinatorics, Cycle, Vertex};
use crate::cyclotomic::CycloNum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{got} exponents given for {expected} lines")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exponents sum to {sum} mod {modulus}: the product of the values is not 1")]
    ProductNotOne { sum: u32, modulus: u32 },
    #[error("point index {0} is not a point of the combinatorics")]
    UnknownPoint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    modulus: u32,
    exponents: Vec<u32>,
}

impl Character {
    /// A character on `c`; exponents may be any integers and are reduced mod `modulus`.
    pub fn new(c: &Combinatorics, modulus: u32, exponents: &[i64]) -> Result<Self, CharacterError> {
        if exponents.len() != c.line_count() {
            return Err(CharacterError::LengthMismatch { expected: c.line_count(), got: exponents.len() });
        }
        Self::from_exponents(modulus, exponents)
    }

    /// A character on any combinatorics with `exponents.len()` lines.
    pub fn from_exponents(modulus: u32, exponents: &[i64]) -> Result<Self, CharacterError> {
        if modulus == 0 {
            return Err(CharacterError::ZeroModulus);
        }
        let m = modulus as i64;
        let exponents: Vec<u32> = exponents.iter().map(|e| e.rem_euclid(m) as u32).collect();
        let sum = (exponents.iter().map(|&e| e as u64).sum::<u64>() % modulus as u64) as u32;
        if sum != 0 {
            return Err(CharacterError::ProductNotOne { sum, modulus });
        }
        Ok(Character { modulus, exponents })
    }

    pub fn trivial(line_count: usize) -> Self {
        Character { modulus: 1, exponents: vec![0; line_count] }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn line_count(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// ξ(L_i) as an element of Q(ζ_m).
    pub fn value(&self, line: usize) -> CycloNum {
        CycloNum::root_power(self.modulus, self.exponents[line] as i64)
    }

    /// The same character with modulus `target`, a multiple of the current one.
    pub fn lifted(&self, target: u32) -> Option<Character> {
        if target == 0 || !target.is_multiple_of(self.modulus) {
            return None;
        }
        let k = target / self.modulus;
        Some(Character { modulus: target, exponents: self.exponents.iter().map(|e| e * k).collect() })
    }

    pub fn lcm_modulus(&self, other: &Character) -> u32 {
        self.modulus.lcm(&other.modulus)
    }

    /// Exponent of `ξ_*` at a point: the sum over its lines, mod m.
    pub fn point_exponent(&self, c: &Combinatorics, point: usize) -> Result<u32, CharacterError> {
        let p = c.point(point).map_err(|_| CharacterError::UnknownPoint(point))?;
        Ok(self.sum_mod(p))
    }

    fn sum_mod(&self, lines: &[usize]) -> u32 {
        (lines.iter().map(|&i| self.exponents[i] as u64).sum::<u64>() % self.modulus as u64) as u32
    }

    /// `ξ_*(v_P)`, the product of ξ over the lines through P.
    pub fn extend_star(&self, c: &Combinatorics, point: usize) -> Result<CycloNum, CharacterError> {
        let p = c.point(point).map_err(|_| CharacterError::UnknownPoint(point))?;
        Ok(p.iter().fold(CycloNum::one(self.modulus), |acc, &i| &acc * &self.value(i)))
    }

    fn star_at(&self, c: &Combinatorics, v: Vertex) -> CycloNum {
        match v {
            Vertex::Line(i) => self.value(i),
            Vertex::Point(p) => self.extend_star(c, p).expect("vertex of the incidence graph"),
        }
    }

    /// Every vertex within distance one of the cycle has `ξ_*` equal to 1.
    pub fn is_inner_cyclic_def(&self, c: &Combinatorics, cycle: &Cycle) -> bool {
        if self.line_count() != c.line_count() {
            return false;
        }
        c.incidence_graph().closed_neighborhood(cycle).into_iter().all(|v| self.star_at(c, v).is_one())
    }

    /// The three-condition form: support lines, lines through the cycle's
    /// points, and points on the support lines. Each condition is checked on
    /// its own.
    pub fn is_inner_cyclic_remark(&self, c: &Combinatorics, cycle: &Cycle) -> bool {
        if self.line_count() != c.line_count() {
            return false;
        }
        self.remark_conditions(c, cycle) == [true; 3]
    }

    /// Outcome of each condition separately.
    pub fn remark_conditions(&self, c: &Combinatorics, cycle: &Cycle) -> [bool; 3] {
        let support = cycle.support();
        let on_support = support.iter().all(|&i| self.exponents[i] == 0);
        let through_cycle_points =
            cycle.point_vertices().iter().all(|&p| c.points()[p].iter().all(|&i| self.exponents[i] == 0));
        let points_on_support = c
            .points()
            .iter()
            .filter(|p| p.iter().any(|i| support.binary_search(i).is_ok()))
            .all(|p| self.sum_mod(p) == 0);
        [on_support, through_cycle_points, points_on_support]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn construction() {
        let c = catalog::extended_maclane_explicit();
        let xi = Character::new(&c, 3, &[0, 0, 0, 1, 1, 1, 2, 2, 2]).unwrap();
        assert_eq!(xi.exponents(), &[0, 0, 0, 1, 1, 1, 2, 2, 2]);
        assert!(Character::new(&c, 3, &[0; 9]).unwrap().is_trivial());
        assert_eq!(
            Character::new(&c, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 0]),
            Err(CharacterError::ProductNotOne { sum: 1, modulus: 3 })
        );
        assert_eq!(Character::new(&c, 3, &[0; 4]), Err(CharacterError::LengthMismatch { expected: 9, got: 4 }));
        assert_eq!(Character::from_exponents(0, &[]), Err(CharacterError::ZeroModulus));
        assert_eq!(Character::new(&c, 3, &[-1, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap().exponents()[0], 2);
    }

    #[test]
    fn extend_star_examples() {
        let c = catalog::extended_maclane_explicit();
        let xi = catalog::maclane_character();
        let p1456 = c.find_point(&[0, 3, 4, 5]).unwrap();
        let p249 = c.find_point(&[1, 3, 8]).unwrap();
        assert!(xi.extend_star(&c, p1456).unwrap().is_one());
        assert!(xi.extend_star(&c, p249).unwrap().is_one());
        let p48 = c.find_point(&[3, 7]).unwrap();
        // ζ·ζ² = 1 as well; {L1,L2} gives 1 trivially; {L5,L7} gives ζ·ζ² = 1
        assert!(xi.extend_star(&c, p48).unwrap().is_one());
        let trivial = Character::trivial(9);
        assert!((0..c.points().len()).all(|p| trivial.extend_star(&c, p).unwrap().is_one()));
        assert_eq!(xi.extend_star(&c, 99), Err(CharacterError::UnknownPoint(99)));
    }

    #[test]
    fn inner_cyclic_examples() {
        let c = catalog::extended_maclane_explicit();
        let gamma = c.triangle_cycle(0, 1, 2).unwrap();
        let xi = catalog::maclane_character();
        assert!(xi.is_inner_cyclic_def(&c, &gamma));
        assert!(xi.is_inner_cyclic_remark(&c, &gamma));

        let bad = Character::new(&c, 3, &[0, 1, 2, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(!bad.is_inner_cyclic_def(&c, &gamma));
        assert!(!bad.is_inner_cyclic_remark(&c, &gamma));
        assert!(!bad.remark_conditions(&c, &gamma)[0]);

        let trivial = Character::trivial(9);
        assert!(trivial.is_inner_cyclic_def(&c, &gamma));
        assert!(trivial.is_inner_cyclic_remark(&c, &gamma));
    }

    #[test]
    fn rybnikov_remark_examples() {
        let c = catalog::rybnikov_explicit();
        let mu = c.triangle_cycle(0, 1, 2).unwrap();
        let x = catalog::rybnikov_character();
        assert!(x.is_inner_cyclic_remark(&c, &mu));
        assert!(x.is_inner_cyclic_def(&c, &mu));

        let mut e: Vec<i64> = x.exponents().iter().map(|&v| v as i64).collect();
        e[3] = 2;
        e[4] = 0;
        let changed = Character::new(&c, 3, &e).unwrap();
        // {D1,D4,D5,D6} still sums to 2 + 0 + 1 ≡ 0, {D2,D4,D9} gives 2 + 2 ≡ 1
        assert_eq!(changed.point_exponent(&c, c.find_point(&[0, 3, 4, 5]).unwrap()), Ok(0));
        assert_eq!(changed.point_exponent(&c, c.find_point(&[1, 3, 8]).unwrap()), Ok(1));
        let conds = changed.remark_conditions(&c, &mu);
        assert_eq!(conds, [true, true, false]);
        assert!(!changed.is_inner_cyclic_def(&c, &mu));
    }

    #[test]
    fn lifting_preserves_values() {
        let x = Character::from_exponents(2, &[1, 1]).unwrap();
        let y = x.lifted(6).unwrap();
        assert_eq!(y.exponents(), &[3, 3]);
        assert_eq!(x.value(0).lift(6).unwrap(), y.value(0));
        assert_eq!(x.lifted(5), None);
    }
}
