//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every comparison is exact (rational or integer equality); there are no
//! floating-point tolerances anywhere in the engine. A criterion listed in
//! `EXPECTED_FAIL` is one whose reference data is internally inconsistent;
//! it still runs in full and prints FAIL, and the test only breaks if any
//! criterion's outcome changes.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use toric_seshadri::cli::report::restrict_body;
use toric_seshadri::klyachko::{adapted_decomposition, restrict_to_curve};
use toric_seshadri::oracle::{
    check_fan, oracle_decompositions, oracle_restriction, oracle_splitting_deg, random_filtration,
    random_surface_bundle, OracleConfig,
};
use toric_seshadri::positivity::is_nef;
use toric_seshadri::seshadri::{
    seshadri, seshadri_projective, seshadri_x3, Certificate, Point, ProjectivePoint, SeshadriValue, TowerPoint,
};
use toric_seshadri::{
    builtin, BottNumbers, Builtin, DivisorClass, Fan, Int, Rational, RestrictionProfile, SplittingType,
};

/// Outcome of one criterion: `Ok(summary)` or `Err(first failure)`.
type Outcome = Result<String, String>;

/// The printed classes of `l_4` and `l_11` contradict the printed
/// `D . l_j` list for every choice of Bott numbers; see `criterion_4`.
const EXPECTED_FAIL: &[usize] = &[4];

fn q(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

fn qf(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

fn tower(n: usize, cs: &[i64]) -> Arc<Fan> {
    Arc::new(Fan::bott_tower(BottNumbers::from_rows(n, cs).unwrap()).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut points = 0;
    for n in 2..=4usize {
        let fan = Arc::new(Fan::projective_space(n).unwrap());
        let t = builtin(fan.clone(), &Builtin::Tangent).map_err(|e| e.to_string())?;
        let p = t.profile().map_err(|e| e.to_string())?;
        let mut expected = vec![1; n - 1];
        expected.push(2);
        let expected = SplittingType::from_i64(&expected);
        for r in &p.rows {
            ensure(r.splitting == expected, || format!("P^{n} {}: {} != {expected}", r.label, r.splitting))?;
        }
        let coords: [Vec<Rational>; 5] = [
            (0..=n as i64).map(|i| q(i + 1)).collect(),
            (0..=n).map(|i| q(i64::from(i == 0))).collect(),
            (0..=n as i64).map(|i| qf(1, i + 2)).collect(),
            (0..=n as i64).map(|i| q(if i % 2 == 0 { -3 } else { 7 })).collect(),
            (0..=n as i64).map(|i| qf(2 * i + 1, 5)).collect(),
        ];
        let cert = Certificate::Builtin("tangent".into());
        for c in coords {
            let x = Point::Projective(ProjectivePoint::new(c).unwrap());
            let r = seshadri(&fan, p, &x, Some(&cert)).map_err(|e| format!("P^{n} at {x}: {e}"))?;
            ensure(r.value == SeshadriValue::Exact(q(1)), || format!("P^{n} at {x}: {}", r.value))?;
            points += 1;
        }
    }
    Ok(format!("P^2..P^4 tangent split as {{1,..,1,2}} on every line; eps = 1 at {points} points"))
}

fn criterion_2() -> Outcome {
    for c in 1..=3i64 {
        let fan = tower(2, &[c]);
        let p = builtin(fan, &Builtin::Tangent).unwrap().profile().map_err(|e| e.to_string())?.clone();
        let expected = [("D'_1", [0, 2]), ("D'_2", [-c, 2]), ("D_1", [0, 2]), ("D_2", [c, 2])];
        ensure(p.rows.len() == 4, || format!("c={c}: {} rows", p.rows.len()))?;
        for (row, (label, degs)) in p.rows.iter().zip(expected) {
            ensure(row.label == label && row.splitting == SplittingType::from_i64(&degs), || {
                format!("c={c}: row {} = {}, expected {label} = {:?}", row.label, row.splitting, degs)
            })?;
        }
        let v = is_nef(&p);
        let w = v.witness.as_ref();
        ensure(!v.holds && w.is_some_and(|w| w.curve == "D'_2" && w.degree == Int::from(-c)), || {
            format!("c={c}: nef verdict {v:?}")
        })?;
    }
    Ok("X_2 tangent rows {0,2},{-c,2},{0,2},{c,2} for c = 1,2,3; not nef, witness D'_2".into())
}

fn criterion_3() -> Outcome {
    let mut cells = 0;
    for c in 1..=3i64 {
        let fan = tower(2, &[c]);
        let t = builtin(fan.clone(), &Builtin::Tangent).unwrap();
        for a1 in c..=c + 3 {
            for a2 in 0..=3i64 {
                let b = t.twisted(&DivisorClass::from_i64(&[a1, a2])).unwrap();
                let p = b.profile().map_err(|e| e.to_string())?;
                ensure(is_nef(p).holds, || format!("c={c} a=({a1},{a2}) not nef"))?;
                let cases = [([1, 1, 0, 1], (a1 - c).min(a2)), ([3, 2, 0, 1], (a1 - c).min(a2)), ([1, 1, 1, 1], a2), ([0, 1, 5, 2], a2)];
                for (flat, want) in cases {
                    let x = Point::Tower(TowerPoint::from_i64(&flat).unwrap());
                    let r = seshadri(&fan, p, &x, None).map_err(|e| format!("c={c} a=({a1},{a2}) at {x}: {e}"))?;
                    ensure(r.value == SeshadriValue::Exact(q(want)), || {
                        format!("c={c} a=({a1},{a2}) at {x}: {} != {want}", r.value)
                    })?;
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} grid cells nef with exact eps at 4 points each"))
}

/// Classes as printed, in Gamma coordinates.
fn printed_class(j: usize, c12: i64, c13: i64, c23: i64) -> [i64; 3] {
    match j {
        1 | 3 | 6 | 10 => [0, 0, 1],
        2 | 8 => [0, 1, 0],
        4 | 11 => [0, c23, 0],
        5 => [1, 0, 0],
        7 => [1, 0, c13],
        9 => [1, c12, 0],
        12 => [1, c12, c13 + c12 * c23],
        _ => unreachable!(),
    }
}

/// `D . l_j` as printed, for `D = a_1 D_1 + a_2 D_2 + a_3 D_3`.
fn printed_product(j: usize, a: [i64; 3], c12: i64, c13: i64, c23: i64) -> i64 {
    let [a1, a2, a3] = a;
    match j {
        1 | 3 | 6 | 10 => a3,
        2 | 8 => a2,
        4 | 11 => a2 + c23 * a3,
        5 => a1,
        7 => a1 + c13 * a3,
        9 => a1 + c12 * a2,
        12 => a1 + c12 * a2 + (c13 + c12 * c23) * a3,
        _ => unreachable!(),
    }
}

fn criterion_4() -> Outcome {
    let mut class_mismatch: BTreeSet<usize> = BTreeSet::new();
    let mut products = 0;
    for cs in (0..8).map(|m| [1 + (m & 1), 1 + ((m >> 1) & 1), 1 + ((m >> 2) & 1)]) {
        let [c12, c13, c23] = cs;
        let fan = tower(3, &cs);
        for j in 1..=12 {
            let w = fan.wall_by_label(&format!("l{j}")).ok_or(format!("no wall l{j}"))?;
            let got: Vec<Int> = fan.curve_class(w).gamma_coords;
            let want: Vec<Int> = printed_class(j, c12, c13, c23).iter().map(|&x| Int::from(x)).collect();
            if got != want {
                class_mismatch.insert(j);
            }
            for a1 in 0..3 {
                for a2 in 0..3 {
                    for a3 in 0..3 {
                        let d = DivisorClass::from_i64(&[a1, a2, a3]);
                        let got = fan.intersection_number(&d, w).map_err(|e| e.to_string())?;
                        let want = printed_product(j, [a1, a2, a3], c12, c13, c23);
                        ensure(got == Int::from(want), || {
                            format!("c={cs:?} a=({a1},{a2},{a3}) D.l{j}: {got} != {want}")
                        })?;
                        products += 1;
                    }
                }
            }
        }
    }
    ensure(class_mismatch.is_empty(), || {
        format!(
            "printed classes of {} are (0,c23,0), but the printed products D.l = a2 + c23 a3 \
             (matched in all {products} grid checks) force (0,1,c23)",
            class_mismatch.iter().map(|j| format!("l{j}")).collect::<Vec<_>>().join(", ")
        )
    })?;
    Ok(format!("12 classes and {products} products match for all 8 Bott tuples"))
}

fn criterion_5() -> Outcome {
    let mut tuples = 0;
    for cs in (0..8).map(|m| [1 + (m & 1), 1 + ((m >> 1) & 1), 1 + ((m >> 2) & 1)]) {
        let c12 = cs[0];
        let fan = tower(3, &cs);
        let e = builtin(fan.clone(), &Builtin::x3_default()).unwrap();
        for a1 in c12..c12 + 3 {
            for a2 in 0..3i64 {
                for a3 in a2..a2 + 3 {
                    let b = e.twisted(&DivisorClass::from_i64(&[a1, a2, a3])).unwrap();
                    let p = b.profile().map_err(|e| e.to_string())?;
                    let cases = [
                        ([1, 1, 0, 1, 0, 1], (a1 - c12).min(a2)),
                        ([2, 1, 0, 3, 0, 1], (a1 - c12).min(a2)),
                        ([1, 1, 1, 1, 0, 1], a2),
                        ([0, 1, 4, 1, 0, 2], a2),
                        ([1, 1, 1, 1, 1, 1], a3),
                        ([0, 1, 0, 1, 2, 1], a3),
                    ];
                    for (flat, want) in cases {
                        let x = TowerPoint::from_i64(&flat).unwrap();
                        let tag = || format!("c={cs:?} a=({a1},{a2},{a3}) at {x}");
                        let r = seshadri_x3(&fan, p, &x).map_err(|e| format!("{}: {e}", tag()))?;
                        ensure(r.report.all_gating_pass(), || format!("{}: hypotheses fail", tag()))?;
                        ensure(r.value == SeshadriValue::Exact(q(want)), || format!("{}: {} != {want}", tag(), r.value))?;
                        let sc = r.slice_check.as_ref().ok_or_else(|| format!("{}: no slice check", tag()))?;
                        ensure(sc.recursive == SeshadriValue::Exact(q(want)), || {
                            format!("{}: recursive {} != {want}", tag(), sc.recursive)
                        })?;
                    }
                    tuples += 1;
                }
            }
        }
    }
    Ok(format!("{tuples} tuples all-pass; eps and the recursive value agree at 6 points each"))
}

fn criterion_6() -> Outcome {
    let cfg = OracleConfig::default();
    // (a) random rank 2/3 families on surfaces, wall by wall.
    let mut rng = common::rng(17);
    let mut walls = 0;
    let mut engine_time = std::time::Duration::ZERO;
    for k in 0..200 {
        let fan = common::random_surface(&mut rng);
        let rank = rng.gen_range(2..=3);
        let b = random_surface_bundle(fan.clone(), rank, &mut rng).map_err(|e| e.to_string())?;
        for (w, curve) in fan.walls().iter().enumerate() {
            let start = Instant::now();
            let engine = restrict_to_curve(&b, curve).map_err(|e| e.to_string())?;
            engine_time += start.elapsed();
            let oracle = oracle_restriction(&b, w, &cfg).map_err(|e| e.to_string())?;
            ensure(engine == oracle, || format!("family {k}, wall {}: {engine} != {oracle}", curve.label))?;
            walls += 1;
        }
    }
    let mut rng = common::rng(5);
    for k in 0..200 {
        let rank = rng.gen_range(2..=3);
        let family = [random_filtration(rank, &mut rng), random_filtration(rank, &mut rng)];
        let start = Instant::now();
        let engine = adapted_decomposition(&family).ok_or(format!("pair {k}: engine found nothing"))?;
        engine_time += start.elapsed();
        let oracle = oracle_decompositions(&family, &cfg).map_err(|e| e.to_string())?;
        let sorted = |mut v: Vec<Vec<Int>>| {
            v.sort();
            v
        };
        let types: BTreeSet<Vec<Vec<Int>>> =
            oracle.iter().map(|d| sorted(d.iter().map(|(_, j)| j.clone()).collect())).collect();
        let mine = sorted(engine.into_iter().map(|l| l.jumps).collect());
        ensure(types.len() == 1 && types.contains(&mine), || format!("pair {k}: {mine:?} vs {types:?}"))?;
    }

    // (b) intersection matrices on random towers.
    let mut rng = common::rng(99);
    for _ in 0..20 {
        let fan = common::random_tower(&mut rng);
        let checks = check_fan(&fan);
        ensure(checks.iter().all(|c| c.passed), || format!("{}: {checks:?}", fan.family_name()))?;
    }

    // (c) degree sums on every fixture wall.
    let bundles = common::fixture_bundles();
    let mut fixture_walls = 0;
    for (name, b) in &bundles {
        for (w, curve) in b.fan().walls().iter().enumerate() {
            let d = oracle_splitting_deg(b, w).map_err(|e| e.to_string())?;
            if let Ok(s) = restrict_to_curve(b, curve) {
                ensure(s.deg() == d, || format!("{name} on {}: {} != {d}", curve.label, s.deg()))?;
            }
            fixture_walls += 1;
        }
    }
    Ok(format!(
        "(a) {walls} walls + 200 pairs (engine {engine_time:.2?}); (b) 20 towers; (c) {fixture_walls} walls on {} fixtures",
        bundles.len()
    ))
}

fn criterion_7() -> Outcome {
    for c in 1..=3i64 {
        let fan = tower(2, &[c]);
        let b = builtin(fan, &Builtin::hirz_default()).unwrap();
        let p = b.profile().map_err(|e| e.to_string())?;
        let row = p.get("D_2").ok_or("no D_2 row")?;
        ensure(row.splitting == SplittingType::from_i64(&[1, 1]) && row.deg() == Int::from(2), || {
            format!("c={c}: D_2 = {}", row.splitting)
        })?;
        ensure(row.reference == Some(SplittingType::from_i64(&[0, 2])), || format!("c={c}: reference {:?}", row.reference))?;
        let body = restrict_body(p);
        let note = "D_2: computed {1,1} (deg 2), literature states {0,2} (deg 2)";
        ensure(body.notes.iter().any(|n| n == note), || format!("c={c}: notes {:?}", body.notes))?;
        ensure(body.rows.iter().any(|r| r.curve == "D_2" && r.discrepancy), || format!("c={c}: D_2 not flagged"))?;
    }
    Ok("D_2 reports {1,1} (deg 2) alongside the stated {0,2} for c = 1,2,3".into())
}

/// Deterministic samples of the invariants in `tests/properties.rs`.
fn criterion_8() -> Outcome {
    let mut rng = common::rng(8);
    let split = |p: &RestrictionProfile| p.rows.iter().map(|r| r.splitting.clone()).collect::<Vec<_>>();
    for k in 0..40 {
        let fan = common::random_surface(&mut rng);
        let b = random_surface_bundle(fan.clone(), rng.gen_range(1..=3), &mut rng).unwrap();
        let tw: Vec<i64> = (0..fan.picard_rank()).map(|_| rng.gen_range(-2..=3)).collect();
        let d = DivisorClass::from_i64(&tw);
        let t = b.twisted(&d).unwrap();
        let p = t.profile().map_err(|e| e.to_string())?;
        let nonneg = p.rows.iter().all(|r| r.splitting.degrees().iter().all(|x| *x >= Int::from(0)));
        ensure(is_nef(p).holds == nonneg, || format!("sample {k}: nef verdict disagrees with degrees"))?;
        let shifted = b.profile().unwrap().twist(&fan, &d).map_err(|e| e.to_string())?;
        ensure(split(p) == split(&shifted), || format!("sample {k}: twist is not additive"))?;
    }
    for c in 1..=3i64 {
        let fan = tower(2, &[c]);
        let t = builtin(fan.clone(), &Builtin::Tangent).unwrap();
        for (a1, a2) in [(c, 0), (c + 2, 1), (c + 1, 3)] {
            let p = t.twisted(&DivisorClass::from_i64(&[a1, a2])).unwrap().profile().unwrap().clone();
            if p.mu("D_2") >= p.mu("D_1") {
                let x = Point::Tower(TowerPoint::from_i64(&[1, 1, 0, 1]).unwrap());
                let r = seshadri(&fan, &p, &x, None).map_err(|e| e.to_string())?;
                ensure(r.value.exact().is_some(), || format!("c={c}: interval did not collapse"))?;
            }
        }
    }
    let fan = tower(3, &[1, 1, 1]);
    let p = builtin(fan.clone(), &Builtin::x3_default()).unwrap().twisted(&DivisorClass::from_i64(&[3, 1, 2])).unwrap();
    let p = p.profile().unwrap();
    let eps: Vec<Rational> = [[1, 1, 0, 1, 0, 1], [1, 1, 1, 1, 0, 1], [1, 1, 1, 1, 1, 1]]
        .iter()
        .map(|f| seshadri_x3(&fan, p, &TowerPoint::from_i64(f).unwrap()).map(|r| r.value.lower().clone()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(eps.windows(2).all(|w| w[0] <= w[1]), || format!("X_3 levels not monotone: {eps:?}"))?;
    for n in 2..=4 {
        let fan = Arc::new(Fan::projective_space(n).unwrap());
        let t = builtin(fan.clone(), &Builtin::Tangent).unwrap();
        let r = seshadri_projective(&fan, t.profile().unwrap(), None, None).map_err(|e| e.to_string())?;
        ensure(r.value.lower() == &q(1) && r.value.upper().is_none(), || format!("P^{n}: {}", r.value))?;
    }
    Ok("nef, twist, collapse, level and lower-bound samples hold; full suite: cargo test --test properties".into())
}

#[test]
fn acceptance() {
    let criteria: [(usize, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut surprises = Vec::new();
    for (n, run) in criteria {
        let outcome = run();
        match &outcome {
            Ok(msg) => println!("PASS criterion {n}: {msg}"),
            Err(msg) => println!("FAIL criterion {n}: {msg}"),
        }
        if outcome.is_ok() == EXPECTED_FAIL.contains(&n) {
            surprises.push(n);
        }
    }
    assert!(surprises.is_empty(), "criteria with unexpected outcomes: {surprises:?}");
}
