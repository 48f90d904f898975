//! Dense univariate polynomials over Q, lowest degree first.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Zero::zero);
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let neg: Poly = b.iter().map(|c| -c).collect();
    add(a, &neg)
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] / &lead;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            rem[shift + i] -= &factor * c;
        }
        quot[shift] = factor;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(a, m)` made monic.
pub(crate) fn ext_gcd_inverse_part(a: &[BigRational], m: &[BigRational]) -> (Poly, Poly) {
    let mut r0: Poly = m.to_vec();
    let mut r1: Poly = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Poly = Vec::new();
    let mut s1: Poly = vec![BigRational::one()];
    while degree(&r1).is_some() {
        let (q, r) = div_rem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if let Some(d) = degree(&r0) {
        let lead = r0[d].clone();
        for c in r0.iter_mut() {
            *c /= &lead;
        }
        for c in s0.iter_mut() {
            *c /= &lead;
        }
    }
    (r0, s0)
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn compute_cyclotomic(n: u32) -> Poly {
    // x^n - 1 divided by every Φ_d with d | n, d < n
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in divisors(n) {
        if d < n {
            let (q, r) = div_rem(&num, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

/// The n-th cyclotomic polynomial, memoized process-wide.
pub(crate) fn cyclotomic_poly(n: u32) -> Arc<Poly> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Poly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // computed outside the lock; the recursion re-enters the cache
    let p = Arc::new(compute_cyclotomic(n));
    cache.lock().unwrap().entry(n).or_insert_with(|| Arc::clone(&p)).clone()
}

#[cfg(test)]
pub(crate) fn euler_phi(n: u32) -> usize {
    degree(&cyclotomic_poly(n)).unwrap_or(0)
}
