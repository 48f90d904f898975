//! Random generators and independent oracles shared by the integration suites.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use zariski_core::catalog::{self, Sign};
use zariski_core::characters::Character;
use zariski_core::combinatorics::{Combinatorics, Cycle};
use zariski_core::cyclotomic::CycloNum;
use zariski_core::realization::ProjMap;

/// A random linear space on `n` lines: pairs are visited in random order and
/// each uncovered pair starts a point that greedily absorbs compatible lines.
pub fn random_combinatorics<R: Rng>(rng: &mut R, n: usize) -> Combinatorics {
    let mut covered = vec![vec![false; n]; n];
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.shuffle(rng);
    let mut points = Vec::new();
    for (i, j) in pairs {
        if covered[i][j] {
            continue;
        }
        let mut p = vec![i, j];
        let mut others: Vec<usize> = (0..n).filter(|k| !p.contains(k)).collect();
        others.shuffle(rng);
        for k in others {
            if rng.gen_bool(0.35) && p.iter().all(|&q| !covered[q][k]) {
                p.push(k);
            }
        }
        for &a in &p {
            for &b in &p {
                covered[a][b] = true;
            }
        }
        p.sort_unstable();
        points.push(p);
    }
    Combinatorics::with_line_count(n, points).expect("indices in range")
}

/// Brute-force Σ_P C(|P|, 2) = C(n, 2) and the per-pair count.
pub fn pair_counts_ok(c: &Combinatorics) -> bool {
    let n = c.line_count();
    let total: usize = c.points().iter().map(|p| p.len() * (p.len() - 1) / 2).sum();
    if total != n * (n - 1) / 2 {
        return false;
    }
    (0..n).all(|i| (i + 1..n).all(|j| c.points().iter().filter(|p| p.contains(&i) && p.contains(&j)).count() == 1))
}

/// A random combinatorics whose first three lines form a non-concurrent triangle.
pub fn random_triangular<R: Rng>(rng: &mut R, n: usize) -> Combinatorics {
    loop {
        let c = random_combinatorics(rng, n);
        if !c.concurrent(0, 1, 2) {
            return c;
        }
    }
}

/// Every non-concurrent triple of lines.
pub fn triangles(c: &Combinatorics) -> Vec<[usize; 3]> {
    let n = c.line_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !c.concurrent(i, j, k) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Either a random triangular structure or C_M with its non-triangle lines
/// shuffled, paired with a prime for which inner-cyclic characters exist.
pub fn random_gluing_side<R: Rng>(rng: &mut R) -> (Combinatorics, u64) {
    if rng.gen_bool(0.5) {
        let mut rest: Vec<usize> = (3..9).collect();
        rest.shuffle(rng);
        let perm: Vec<usize> = (0..3).chain(rest).collect();
        (catalog::extended_maclane_explicit().permuted(&perm).expect("permutation"), 3)
    } else {
        let n = rng.gen_range(4..=8);
        (random_triangular(rng, n), [2, 3, 5][rng.gen_range(0..3)])
    }
}

pub fn catalog_combinatorics() -> Vec<Combinatorics> {
    vec![catalog::extended_maclane_explicit(), catalog::maclane_combinatorics(), catalog::rybnikov_explicit()]
}

/// Nullspace basis mod the prime `p` of the rows of `a` (each row has `n` entries).
fn nullspace_mod(a: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let inv = |x: u64| (1..p).find(|y| x * y % p == 1).expect("prime modulus");
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, r);
        let f = inv(m[row][col]);
        for x in m[row].iter_mut() {
            *x = *x * f % p;
        }
        let pivot_row = m[row].clone();
        for (r, target) in m.iter_mut().enumerate() {
            if r != row && target[col] != 0 {
                let f = target[col];
                for (x, &y) in target.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

/// A uniformly random character mod `p` that is inner-cyclic for the
/// triangle `t`, built from the linear conditions directly.
pub fn random_inner_cyclic<R: Rng>(rng: &mut R, c: &Combinatorics, t: [usize; 3], p: u64) -> Character {
    let n = c.line_count();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let unit = |i: usize| {
        let mut r = vec![0; n];
        r[i] = 1;
        r
    };
    for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
        for &i in c.point_through(a, b).expect("valid") {
            rows.push(unit(i));
        }
    }
    for pt in c.points() {
        if pt.iter().any(|i| t.contains(i)) {
            let mut r = vec![0; n];
            for &i in pt {
                r[i] = 1;
            }
            rows.push(r);
        }
    }
    rows.push(vec![1; n]);
    let basis = nullspace_mod(&rows, n, p);
    let mut e = vec![0u64; n];
    for b in &basis {
        let k = rng.gen_range(0..p);
        for i in 0..n {
            e[i] = (e[i] + k * b[i]) % p;
        }
    }
    let e: Vec<i64> = e.into_iter().map(|x| x as i64).collect();
    Character::new(c, p as u32, &e).expect("sum condition is one of the rows")
}

/// A random character mod `m`, zero on each line with probability `zero_bias`.
pub fn random_character<R: Rng>(rng: &mut R, n: usize, m: u32, zero_bias: f64) -> Character {
    let mut e: Vec<i64> =
        (0..n).map(|_| if rng.gen_bool(zero_bias) { 0 } else { rng.gen_range(0..m) as i64 }).collect();
    let s: i64 = e.iter().sum();
    let fix = (0..n).rev().find(|&i| e[i] != 0).unwrap_or(n - 1);
    e[fix] -= s;
    Character::from_exponents(m, &e).expect("sum adjusted to zero")
}

pub fn cycle_of(c: &Combinatorics, t: [usize; 3]) -> Cycle {
    c.triangle_cycle(t[0], t[1], t[2]).expect("non-concurrent")
}

/// Σ a_k ζ^k with small random integer (or halved) coefficients.
pub fn random_cyclo<R: Rng>(rng: &mut R, order: u32) -> CycloNum {
    let mut x = CycloNum::zero(order);
    let half = CycloNum::from_int(order, 2).inv().expect("2 ≠ 0");
    for k in 0..order.min(6) {
        let mut c = CycloNum::from_int(order, rng.gen_range(-4..=4));
        if rng.gen_bool(0.3) {
            c = &c * &half;
        }
        x = &x + &(&c * &CycloNum::root_power(order, k as i64));
    }
    x
}

/// A random invertible 3×3 matrix over Q(ζ₃).
pub fn random_map<R: Rng>(rng: &mut R) -> ProjMap {
    loop {
        let entry = |rng: &mut R| {
            let a = CycloNum::from_int(3, rng.gen_range(-3..=3));
            let b = CycloNum::from_int(3, rng.gen_range(-2..=2));
            &a + &(&b * &CycloNum::root_power(3, 1))
        };
        let rows = [
            [entry(rng), entry(rng), entry(rng)],
            [entry(rng), entry(rng), entry(rng)],
            [entry(rng), entry(rng), entry(rng)],
        ];
        if let Ok(m) = ProjMap::new(rows) {
            return m;
        }
    }
}

pub fn maclane(sign: Sign) -> zariski_core::Arrangement {
    catalog::extended_maclane_realization(sign)
}
