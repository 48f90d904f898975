//! Exact arithmetic in cyclotomic fields Q(ζₙ).
//!
//! A [`CycloNum`] stores its value in the power basis `1, ζ, …, ζ^{φ(n)-1}`
//! reduced modulo the n-th cyclotomic polynomial, so equality is structural.
//! Nothing in here touches floating point.

mod parse;
pub(crate) mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use poly::Poly;

pub use parse::parse_poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("cyclotomic order must be positive")]
    NonPositiveOrder,
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("zero has no inverse")]
    DivisionByZero,
    #[error("order {target} is not a multiple of {order}")]
    NotAMultiple { order: u32, target: u32 },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// An element of Q(ζₙ) in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloNum {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    /// Reduces `poly` (coefficients of 1, ζ, ζ², …) modulo Φ_order.
    pub fn from_poly(order: u32, poly: &[BigRational]) -> Result<Self, CycloError> {
        if order == 0 {
            return Err(CycloError::NonPositiveOrder);
        }
        Ok(Self::reduce(order, poly.to_vec()))
    }

    fn reduce(order: u32, p: Poly) -> Self {
        let phi = poly::cyclotomic_poly(order);
        let (_, mut rem) = poly::div_rem(&p, &phi);
        let len = poly::degree(&phi).unwrap_or(0);
        rem.resize(len, BigRational::zero());
        CycloNum { order, coeffs: rem }
    }

    pub fn from_rational(order: u32, value: BigRational) -> Result<Self, CycloError> {
        Self::from_poly(order, &[value])
    }

    pub fn from_int(order: u32, value: i64) -> Self {
        Self::reduce(order.max(1), vec![BigRational::from_integer(BigInt::from(value))])
    }

    pub fn zero(order: u32) -> Self {
        Self::from_int(order, 0)
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    /// ζₙ^k, with k taken modulo n (negative exponents allowed).
    pub fn root_power(order: u32, k: i64) -> Self {
        let order = order.max(1);
        let k = k.rem_euclid(order as i64) as usize;
        let mut p = vec![BigRational::zero(); k + 1];
        p[k] = BigRational::one();
        Self::reduce(order, p)
    }

    /// Parses the coefficient grammar (`"1/2*z - 3"`, `"z^2"`, …) in Q(ζ_order).
    pub fn parse(order: u32, text: &str) -> Result<Self, CycloError> {
        parse_poly(order, text)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.order)
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Zero::zero))
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), CycloError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(CycloError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_order(other)?;
        Ok(Self::reduce(self.order, poly::add(&self.coeffs, &other.coeffs)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_order(other)?;
        Ok(Self::reduce(self.order, poly::sub(&self.coeffs, &other.coeffs)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_order(other)?;
        Ok(Self::reduce(self.order, poly::mul(&self.coeffs, &other.coeffs)))
    }

    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let phi = poly::cyclotomic_poly(self.order);
        let (g, s) = poly::ext_gcd_inverse_part(&self.coeffs, &phi);
        // Φₙ is irreducible, so a nonzero reduced element is coprime to it
        debug_assert_eq!(g, vec![BigRational::one()]);
        Ok(Self::reduce(self.order, s))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        self.checked_mul(&other.inv()?)
    }

    /// Integer power; negative exponents go through [`CycloNum::inv`].
    pub fn pow(&self, exp: i64) -> Result<Self, CycloError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Complex conjugation, the automorphism ζ ↦ ζ^{n-1}.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut p = vec![BigRational::zero(); n.max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            p[(n - k) % n] += c;
        }
        Self::reduce(self.order, p)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Re-expresses the element in Q(ζ_target) via ζ_order = ζ_target^{target/order}.
    pub fn lift(&self, target: u32) -> Result<Self, CycloError> {
        if target == 0 {
            return Err(CycloError::NonPositiveOrder);
        }
        if !target.is_multiple_of(self.order) {
            return Err(CycloError::NotAMultiple { order: self.order, target });
        }
        let step = (target / self.order) as usize;
        let mut p = vec![BigRational::zero(); step * self.coeffs.len().max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            p[k * step] = c.clone();
        }
        Ok(Self::reduce(target, p))
    }

    /// The k in 0..n with `self = ζₙ^k`, if there is one.
    pub fn as_root_of_unity(&self) -> Option<u32> {
        (0..self.order).find(|&k| Self::root_power(self.order, k as i64) == *self)
    }

    /// Lifts both operands to Q(ζ_lcm).
    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.order.lcm(&b.order);
        (a.lift(l).expect("lcm is a multiple"), b.lift(l).expect("lcm is a multiple"))
    }

    /// Approximate complex embedding with ζ = e^{2πi/n}; for display only.
    pub fn approx(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let n = self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * k as f64 / n;
            (re + v * t.cos(), im + v * t.sin())
        })
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            /// Panics when the orders differ; use the `checked_` variant otherwise.
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text in the coefficient grammar, highest power first.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let monomial = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&monomial)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), monomial)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.order, self)
    }
}
