//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zariski_core::automorphisms::{self, f3_mul, lower_triangular_gl2_f3, matrix_of_maclane_automorphism};
use zariski_core::catalog::{self, Sign};
use zariski_core::characters::Character;
use zariski_core::cyclotomic::CycloNum;
use zariski_core::gluing::{self, DEFAULT_MAX_CANDIDATES};
use zariski_core::invariant::{self, GluingSource, LedgerEntry, VerdictKind};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < budget, format!("took {t:?}, budget {budget:?}"))
}

fn z(k: i64) -> CycloNum {
    CycloNum::root_power(3, k)
}

fn pf3_construction() -> Check {
    let start = Instant::now();
    let built = catalog::extended_maclane_from_pf3();
    ensure(built.ordered_equal(&catalog::extended_maclane_explicit()), "differs from the explicit list")?;
    ensure(built.line_count() == 9, "line count")?;
    let mut sizes: Vec<usize> = built.points().iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ensure(sizes == [4, 4, 3, 3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2], format!("census {sizes:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("14 points, census {sizes:?}"))
}

fn realization_check() -> Check {
    let start = Instant::now();
    let cm = catalog::extended_maclane_explicit();
    let plus = catalog::extended_maclane_realization(Sign::Plus);
    let minus = catalog::extended_maclane_realization(Sign::Minus);
    ensure(plus.derive_combinatorics().ordered_equal(&cm), "M+ does not realize C_M")?;
    ensure(minus.derive_combinatorics().ordered_equal(&cm), "M- does not realize C_M")?;
    ensure(plus.conjugate() == minus, "conj(M+) != M-")?;
    within(start, Duration::from_secs(1))?;
    Ok("M+ and M- realize C_M, conj(M+) = M-".into())
}

fn inner_cyclic() -> Check {
    let cm = catalog::extended_maclane_explicit();
    let gamma = cm.triangle_cycle(0, 1, 2).map_err(|e| e.to_string())?;
    let xi = catalog::maclane_character();
    ensure(xi.is_inner_cyclic_def(&cm, &gamma), "definition test fails on xi_M")?;
    ensure(xi.is_inner_cyclic_remark(&cm, &gamma), "three-condition test fails on xi_M")?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x1c);
    let combs = common::catalog_combinatorics();
    let (mut total, mut positive) = (0, 0);
    for round in 0..1200 {
        let c = &combs[round % combs.len()];
        let tris = common::triangles(c);
        let t = tris[rng.gen_range(0..tris.len())];
        let cycle = common::cycle_of(c, t);
        let m = [2, 3, 4, 5, 6][rng.gen_range(0..5)];
        let x = match round % 3 {
            0 => common::random_character(&mut rng, c.line_count(), m, 0.5),
            1 => common::random_character(&mut rng, c.line_count(), m, 0.9),
            _ => {
                let p = [2, 3, 5][rng.gen_range(0..3)];
                common::random_inner_cyclic(&mut rng, c, t, p)
            }
        };
        let d = x.is_inner_cyclic_def(c, &cycle);
        let r = x.is_inner_cyclic_remark(c, &cycle);
        ensure(d == r, format!("tests disagree on {:?} with cycle {t:?}", x.exponents()))?;
        total += 1;
        positive += d as usize;
    }
    ensure(positive > 0 && positive < total, "random sample is one-sided")?;
    Ok(format!("xi_M passes both; {total} random characters agree ({positive} inner-cyclic)"))
}

fn automorphism_groups() -> Check {
    let start = Instant::now();
    let g = automorphisms::enumerate_automorphisms(&catalog::extended_maclane_explicit());
    ensure(g.verify_group_axioms(), "aut(C_M) fails the group axioms")?;
    let s = g.stats();
    ensure(s.order == 12, format!("|aut(C_M)| = {}", s.order))?;
    let expected = BTreeMap::from([(1, 1), (2, 7), (3, 2), (6, 2)]);
    ensure(s.order_histogram == expected, format!("histogram {:?}", s.order_histogram))?;

    let mut images = Vec::new();
    for sigma in g.elements() {
        images.push(matrix_of_maclane_automorphism(sigma).map_err(|e| e.to_string())?);
    }
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let mut all = lower_triangular_gl2_f3();
    all.sort();
    ensure(sorted == all, "matrix map is not a bijection onto the lower-triangular matrices")?;
    for (i, s1) in g.elements().iter().enumerate() {
        for (j, s2) in g.elements().iter().enumerate() {
            let prod = matrix_of_maclane_automorphism(&automorphisms::mul(s1, s2)).map_err(|e| e.to_string())?;
            ensure(prod == f3_mul(&images[i], &images[j]), "matrix map is not a homomorphism")?;
        }
    }

    let gr = automorphisms::enumerate_automorphisms(&catalog::rybnikov_explicit());
    ensure(gr.order() == 144, format!("|aut(C_R)| = {}", gr.order()))?;
    ensure(gr.verify_group_axioms(), "aut(C_R) fails the group axioms")?;
    let first: Vec<usize> = (3..9).collect();
    let second: Vec<usize> = (9..15).collect();
    let sub = gr.copy_preserving_subgroup(&[&first, &second]);
    ensure(sub.order() == 72, format!("copy-preserving subgroup has order {}", sub.order()))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("|aut(C_M)| = 12 {expected:?}, 12 matrices, |aut(C_R)| = 144, subgroup 72, {:?}", start.elapsed()))
}

fn gluing_check() -> Check {
    let start = Instant::now();
    let plus = catalog::extended_maclane_realization(Sign::Plus);
    let cr = catalog::rybnikov_explicit();
    let cm = catalog::extended_maclane_explicit();
    let mut used = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let right = catalog::extended_maclane_realization(sign);
        let spec = gluing::find_generic_gluing(&plus, &right, DEFAULT_MAX_CANDIDATES).map_err(|e| e.to_string())?;
        ensure(gluing::check_generic(&spec).map_err(|e| e.to_string())?, "check_generic fails")?;
        let glued = gluing::glue_arrangements(&spec).map_err(|e| e.to_string())?.derive_combinatorics();
        ensure(glued.ordered_equal(&cr), format!("M+ glued with M{} differs from C_R", sign.symbol()))?;
        ensure(glued.points().len() == 61, "point count")?;
        used.push(spec.parameters);
    }
    let identity = cm.points().len() + cm.points().len() - 3 + (cm.line_count() - 3) * (cm.line_count() - 3);
    ensure(identity == 61 && identity == cr.points().len(), format!("14+14-3+36 gave {identity}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("parameters {used:?}, 61 points, 14+14-3+36 = {identity}"))
}

fn glued_character() -> Check {
    let x = catalog::maclane_character();
    let glued = gluing::glue_characters(&x, &x, 3).map_err(|e| e.to_string())?;
    ensure(glued.exponents() == [0, 0, 0, 1, 1, 1, 2, 2, 2, 1, 1, 1, 2, 2, 2], format!("{:?}", glued.exponents()))?;
    let cr = catalog::rybnikov_explicit();
    let mu = cr.triangle_cycle(0, 1, 2).map_err(|e| e.to_string())?;
    ensure(glued.is_inner_cyclic_def(&cr, &mu), "definition test fails on C_R")?;
    ensure(glued.is_inner_cyclic_remark(&cr, &mu), "three-condition test fails on C_R")?;
    Ok(format!("exponents {:?}, both tests pass", glued.exponents()))
}

fn multiplicativity() -> Check {
    let seed = catalog::ledger_seed();
    let mp = seed.entry("M+").map_err(|e| e.to_string())?;
    let mm = seed.entry("M-").map_err(|e| e.to_string())?;
    ensure(mp.value == z(2) && mm.value == z(1), "seed values")?;
    let rp = invariant::invariant_of_glued("R+", mp, mp, GluingSource::Generic).map_err(|e| e.to_string())?;
    let rm = invariant::invariant_of_glued("R-", mp, mm, GluingSource::Generic).map_err(|e| e.to_string())?;
    ensure(rp.value == z(1), format!("I(R+) = {}", rp.value))?;
    ensure(rm.value.is_one(), format!("I(R-) = {}", rm.value))?;
    let bp = catalog::build_extended_rybnikov(Sign::Plus).map_err(|e| e.to_string())?;
    let bm = catalog::build_extended_rybnikov(Sign::Minus).map_err(|e| e.to_string())?;
    ensure(bp.entry.value == rp.value && bm.entry.value == rm.value, "realized pipeline disagrees")?;
    Ok(format!("I(R+) = {}, I(R-) = {}", rp.value, rm.value))
}

fn zariski_verdicts() -> Check {
    let seed = catalog::ledger_seed();
    let mp = seed.entry("M+").map_err(|e| e.to_string())?.clone();
    let v = invariant::detect_zariski(&mp, false).map_err(|e| e.to_string())?;
    ensure(v.kind == VerdictKind::OrderedZariskiPair, format!("M+ verdict {}", v.kind))?;
    ensure(v.values() == Some((z(1), CycloNum::one(3))), "M+ values")?;
    ensure(v.verify(), "M+ certificate does not verify")?;

    let minus_one = LedgerEntry { value: CycloNum::from_int(3, -1), ..mp.clone() };
    let inc = invariant::detect_zariski(&minus_one, false).map_err(|e| e.to_string())?;
    ensure(inc.kind == VerdictKind::Inconclusive, format!("value -1 verdict {}", inc.kind))?;

    let i = LedgerEntry { value: CycloNum::root_power(4, 1), ..mp.clone() };
    let vi = invariant::detect_zariski(&i, false).map_err(|e| e.to_string())?;
    ensure(vi.kind == VerdictKind::OrderedZariskiPair, "value i verdict")?;
    ensure(vi.values() == Some((CycloNum::from_int(4, -1), CycloNum::one(4))), "value i pair")?;

    let up = invariant::detect_zariski(&mp, true).map_err(|e| e.to_string())?;
    ensure(up.kind == VerdictKind::ZariskiPair && up.verify(), "aut_trivial does not upgrade")?;
    Ok("M+ -> ordered pair (z, 1); -1 inconclusive; i -> (-1, 1); upgrade with trivial aut".into())
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=9);
        let c = common::random_combinatorics(&mut rng, n);
        ensure(c.is_valid(), format!("generated structure invalid: {c:?}"))?;
        ensure(common::pair_counts_ok(&c), "pair-counting identity fails")?;
    }

    let plus = common::maclane(Sign::Plus);
    let cm = plus.derive_combinatorics();
    for _ in 0..100 {
        let m = common::random_map(&mut rng);
        let moved = plus.apply_map(&m).map_err(|e| e.to_string())?;
        ensure(moved.derive_combinatorics().ordered_equal(&cm), "derive_combinatorics not projectively invariant")?;
    }

    for _ in 0..30 {
        let (a, b) = (rng.gen_range(3..=7), rng.gen_range(3..=7));
        let c1 = common::random_triangular(&mut rng, a);
        let c2 = common::random_triangular(&mut rng, b);
        let g12 = gluing::glue_combinatorics(&c1, &c2).map_err(|e| e.to_string())?;
        let g21 = gluing::glue_combinatorics(&c2, &c1).map_err(|e| e.to_string())?;
        ensure(g12.is_valid() && g21.is_valid(), "glued combinatorics invalid")?;
        ensure(g12.is_isomorphic(&g21).is_some(), "gluing is not commutative up to isomorphism")?;
    }

    for _ in 0..200 {
        let n = [1, 2, 3, 4, 5, 6, 8, 12][rng.gen_range(0..8)];
        let (x, y, w) =
            (common::random_cyclo(&mut rng, n), common::random_cyclo(&mut rng, n), common::random_cyclo(&mut rng, n));
        ensure(&(&x * &y) * &w == &x * &(&y * &w), "associativity")?;
        ensure(&x * &(&y + &w) == &(&x * &y) + &(&x * &w), "distributivity")?;
        ensure((&x * &y).conj() == &x.conj() * &y.conj(), "conjugation is multiplicative")?;
        ensure(x.conj().conj() == x, "conjugation is an involution")?;
        ensure((&x * &x.conj()).is_real(), "x times its conjugate is real")?;
        if !x.is_zero() {
            ensure((&x * &x.inv().map_err(|e| e.to_string())?).is_one(), "inverse")?;
        }
    }

    let mut nontrivial = 0;
    for _ in 0..200 {
        let (c1, p1) = common::random_gluing_side(&mut rng);
        let (c2, p2) = common::random_gluing_side(&mut rng);
        let x1 = common::random_inner_cyclic(&mut rng, &c1, [0, 1, 2], p1);
        let x2 = common::random_inner_cyclic(&mut rng, &c2, [0, 1, 2], p2);
        let glued = gluing::glue_combinatorics(&c1, &c2).map_err(|e| e.to_string())?;
        let gx: Character = gluing::glue_characters(&x1, &x2, 3).map_err(|e| e.to_string())?;
        nontrivial += !gx.is_trivial() as usize;
        let mu = common::cycle_of(&glued, [0, 1, 2]);
        ensure(gx.is_inner_cyclic_def(&glued, &mu), "glued character not inner-cyclic (definition)")?;
        ensure(gx.is_inner_cyclic_remark(&glued, &mu), "glued character not inner-cyclic (three conditions)")?;
    }
    ensure(nontrivial > 0, "only trivial glued characters were generated")?;
    Ok(format!(
        "1000 structures, 100 maps, 30 gluing pairs, 200 field samples, 200 glued characters ({nontrivial} nontrivial)"
    ))
}

fn rigidify_smoke() -> Check {
    let plus = catalog::extended_maclane_realization(Sign::Plus);
    let singular = plus.singular_points();
    let find = |lines: &[usize]| {
        singular.iter().find(|(_, s)| s == lines).map(|(p, _)| p.clone()).ok_or(format!("no point {lines:?}"))
    };
    let double = find(&[3, 7])?;
    let triple = find(&[2, 4, 8])?;
    let r = plus.rigidify(&triple, &double).map_err(|e| e.to_string())?;
    let before = automorphisms::enumerate_automorphisms(&plus.derive_combinatorics()).order();
    let after = automorphisms::enumerate_automorphisms(&r.arrangement.derive_combinatorics()).order();
    ensure(after < before, format!("order {before} -> {after}"))?;
    Ok(format!("line through {{L3,L5,L9}} and {{L4,L8}}: |aut| {before} -> {after}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("PF3 construction", pf3_construction),
        ("realization check", realization_check),
        ("inner-cyclic", inner_cyclic),
        ("automorphisms", automorphism_groups),
        ("gluing", gluing_check),
        ("glued character", glued_character),
        ("multiplicativity ledger", multiplicativity),
        ("Zariski verdicts", zariski_verdicts),
        ("property suites", property_suites),
        ("rigidify smoke test", rigidify_smoke),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
