//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Every comparison is exact; the only tolerances are the wall-clock
//! budgets, pinned per criterion below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use quiverdeg::linalg::{frac, rat};
use quiverdeg::{
    classify, codim, decompose_nilpotent, degenerates, dim_vectors, enumerate_nilpotent, hasse, hom_dim, hom_profile,
    inverse, model_variety_membership, quotient_by_socle, realize, reconstruct_from_socle_quotient, scan, socle,
    window_hom_dim, DimVector, ModelVariety, RatMatrix, Rational, Representation, SingularityType, Step, TestSet,
    Window, WindowMultiset,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ms(n: usize, pairs: &[(i64, i64)]) -> WindowMultiset {
    WindowMultiset::from_pairs(n, pairs).unwrap()
}

fn c1_first_example() -> Check {
    let m = ms(2, &[(1, 4)]);
    let nn = ms(2, &[(1, 2), (2, 3)]);
    let c = codim(&m, &nn).map_err(|e| e.to_string())?;
    ensure(c == 2, || format!("codim(M,N) = {c}, expected 2"))?;
    let (t, trace) = classify(&m, &nn).map_err(|e| e.to_string())?;
    let first = trace.steps.first().ok_or("empty trace")?;
    ensure(matches!(first.step, Step::SocleReduce { .. }), || {
        format!("first step is {:?}", first.step)
    })?;
    ensure(
        first.m == ms(2, &[(2, 4)]) && first.nn == ms(2, &[(2, 2), (2, 3)]),
        || format!("first step gave ({}, {})", first.m, first.nn),
    )?;
    ensure(first.codim == 1, || format!("first step codim {}", first.codim))?;
    ensure(t == SingularityType::Reg, || format!("type {t}"))?;
    Ok("codim 2 -> socle step to ((2,4), (2,2)+(2,3)) at codim 1 -> Reg".into())
}

fn c2_second_example() -> Check {
    let (t, trace) = classify(&ms(2, &[(1, 1), (2, 8)]), &ms(2, &[(1, 3), (2, 6)])).map_err(|e| e.to_string())?;
    ensure(t == SingularityType::A(1), || format!("type {t}"))?;
    let expected = [
        (ms(2, &[(3, 8)]), ms(2, &[(2, 3), (3, 6)])),
        (ms(2, &[(4, 8)]), ms(2, &[(2, 3), (4, 6)])),
        (ms(2, &[(4, 7)]), ms(2, &[(2, 3), (4, 5)])),
    ];
    for (m, nn) in &expected {
        ensure(trace.pairs().any(|(a, b)| a == m && b == nn), || {
            format!("trace lacks ({m}, {nn})")
        })?;
    }
    Ok("A1 with all three printed intermediate pairs".into())
}

fn c3_loop_laws() -> Check {
    for f in 1..=12 {
        for g in 1..=12 {
            let h = window_hom_dim(&Window::jordan(f), &Window::jordan(g)).map_err(|e| e.to_string())?;
            ensure(h == f.min(g), || format!("[U_{f},U_{g}] = {h}"))?;
        }
    }
    for b in 1..=6 {
        for c in b..=6 {
            let got = codim(&WindowMultiset::jordan(&[b + c]), &WindowMultiset::jordan(&[b, c]))
                .map_err(|e| e.to_string())?;
            ensure(got == 2 * b, || format!("codim(U_{}, U_{b}+U_{c}) = {got}", b + c))?;
        }
    }
    for r in 1..=10 {
        let (t, _) =
            classify(&WindowMultiset::jordan(&[r + 1]), &WindowMultiset::jordan(&[1, r])).map_err(|e| e.to_string())?;
        ensure(t == SingularityType::A(r as u32), || format!("r={r}: {t}"))?;
    }
    Ok("144 hom values, 21 codims, A1..A10".into())
}

fn c4_window_hom_oracle() -> Check {
    let mut pairs = 0;
    for n in 1..=4usize {
        let windows: Vec<Window> = (1..=n as i64)
            .flat_map(|i| (1..=10).map(move |len| Window::new(n, i, i + len - 1).unwrap()))
            .collect();
        let reps: Vec<Representation> = windows
            .iter()
            .map(|w| realize(&WindowMultiset::new(n, [*w]).unwrap()))
            .collect();
        for (a, ra) in windows.iter().zip(&reps) {
            for (b, rb) in windows.iter().zip(&reps) {
                let fast = window_hom_dim(a, b).map_err(|e| e.to_string())?;
                let slow = hom_dim(ra, rb).map_err(|e| e.to_string())?;
                ensure(fast == slow, || format!("n={n} [{a},{b}]: {fast} vs {slow}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs agree"))
}

/// Conjugates every vertex space of `v` by a seeded random invertible matrix.
fn scramble(v: &Representation, rng: &mut ChaCha8Rng) -> Representation {
    let bases: Vec<(RatMatrix, RatMatrix)> = v
        .dims()
        .as_slice()
        .iter()
        .map(|&d| loop {
            let entries: Vec<Rational> = (0..d * d).map(|_| rat(rng.random_range(-3..=3))).collect();
            let p = RatMatrix::new(d, d, entries).unwrap();
            if let Some(q) = inverse(&p) {
                break (p, q);
            }
        })
        .collect();
    let mats = v
        .quiver()
        .arrows()
        .iter()
        .zip(v.matrices())
        .map(|(a, m)| bases[a.target - 1].0.mul(m).mul(&bases[a.source - 1].1))
        .collect();
    Representation::new(v.quiver().clone(), v.dims().clone(), mats).unwrap()
}

fn c5_round_trips() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut count = 0;
    for n in 1..=3 {
        for total in 0..=6 {
            for d in dim_vectors(n, total) {
                for class in enumerate_nilpotent(n, &d) {
                    let v = realize(&class);
                    let back = decompose_nilpotent(&v).map_err(|e| e.to_string())?;
                    ensure(back == class, || format!("decompose(realize({class})) = {back}"))?;
                    let mixed = decompose_nilpotent(&scramble(&v, &mut rng)).map_err(|e| e.to_string())?;
                    ensure(mixed == class, || {
                        format!("decompose after change of basis: {mixed} vs {class}")
                    })?;

                    let u = socle(&class);
                    let t = quotient_by_socle(&class, &u.support()).map_err(|e| e.to_string())?;
                    let rebuilt = reconstruct_from_socle_quotient(&u, &t).map_err(|e| e.to_string())?;
                    ensure(rebuilt == class, || format!("reconstruction of {class} gave {rebuilt}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!(
        "{count} classes: decompose, conjugated decompose, socle reconstruction"
    ))
}

fn partition(class: &WindowMultiset) -> Vec<usize> {
    let mut p: Vec<usize> = class.windows().iter().map(Window::length).collect();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

/// `lambda` dominates `mu`: every partial sum of `lambda` is at least that
/// of `mu`.
fn dominates(lambda: &[usize], mu: &[usize]) -> bool {
    let (mut a, mut b) = (0, 0);
    for k in 0..lambda.len().max(mu.len()) {
        a += lambda.get(k).copied().unwrap_or(0);
        b += mu.get(k).copied().unwrap_or(0);
        if a < b {
            return false;
        }
    }
    true
}

fn c6_dominance() -> Check {
    let mut pairs = 0;
    for d in 1..=7 {
        let classes = enumerate_nilpotent(1, &DimVector(vec![d]));
        for m in &classes {
            for nn in &classes {
                let got = degenerates(m, nn).map_err(|e| e.to_string())?;
                let want = dominates(&partition(m), &partition(nn));
                ensure(got == want, || format!("{m} -> {nn}: {got}, dominance says {want}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs match dominance"))
}

fn c7_scan() -> Check {
    let report = scan(3, 7).map_err(|e| e.to_string())?;
    let stuck: Vec<String> = report.unresolved().map(|s| format!("({}, {})", s.m, s.nn)).collect();
    ensure(stuck.is_empty(), || format!("unresolved: {}", stuck.join(", ")))?;
    ensure(report.cone_count() == 0, || {
        format!("{} C_r results", report.cone_count())
    })?;
    let total = report.total_codim2();
    let reg: usize = report.rows.iter().map(|r| r.reg).sum();
    let a: usize = report.rows.iter().flat_map(|r| r.a.values()).sum();
    ensure(reg + a == total, || format!("{reg} Reg + {a} A_r != {total}"))?;
    Ok(format!("{total} codim-2 pairs: {reg} Reg, {a} A_r, 0 C, 0 unresolved"))
}

fn c8_poset_sanity() -> Check {
    let mut posets = 0;
    let mut edges = 0;
    for n in 1..=3usize {
        for total in 1..=7 {
            for d in dim_vectors(n, total) {
                let nodes = enumerate_nilpotent(n, &d);
                let k = nodes.len();
                let base = TestSet::new(n, total);
                let wide = TestSet::new(n, total + n);
                let prof = |ts: &TestSet| -> Result<Vec<_>, String> {
                    nodes
                        .iter()
                        .map(|m| hom_profile(m, ts).map_err(|e| e.to_string()))
                        .collect()
                };
                let (p, q) = (prof(&base)?, prof(&wide)?);
                let rel: Vec<Vec<bool>> = (0..k).map(|a| (0..k).map(|b| p[a].le(&p[b])).collect()).collect();
                let endo: Vec<i64> = nodes
                    .iter()
                    .map(|m| quiverdeg::multiset_hom_dim(m, m).map(|x| x as i64))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                for a in 0..k {
                    for b in 0..k {
                        ensure(rel[a][b] == q[a].le(&q[b]), || {
                            format!(
                                "verdict for {} -> {} changes with a longer test set",
                                nodes[a], nodes[b]
                            )
                        })?;
                        if a != b && rel[a][b] {
                            ensure(!rel[b][a], || {
                                format!("{} and {} degenerate both ways", nodes[a], nodes[b])
                            })?;
                            ensure(endo[b] > endo[a], || {
                                format!("proper degeneration {} -> {} with codim <= 0", nodes[a], nodes[b])
                            })?;
                        }
                        if !rel[a][b] {
                            continue;
                        }
                        for c in 0..k {
                            if rel[b][c] {
                                ensure(rel[a][c], || {
                                    format!("{} -> {} -> {} not transitive", nodes[a], nodes[b], nodes[c])
                                })?;
                                let whole = codim(&nodes[a], &nodes[c]).map_err(|e| e.to_string())?;
                                let parts = codim(&nodes[a], &nodes[b]).map_err(|e| e.to_string())?
                                    + codim(&nodes[b], &nodes[c]).map_err(|e| e.to_string())?;
                                ensure(whole == parts, || {
                                    format!(
                                        "codim does not telescope on {} -> {} -> {}",
                                        nodes[a], nodes[b], nodes[c]
                                    )
                                })?;
                            }
                        }
                    }
                }

                // covers, computed naively, against the diagram's edges
                let mut covers = BTreeSet::new();
                for a in 0..k {
                    for b in 0..k {
                        if a != b && rel[a][b] && !(0..k).any(|c| c != a && c != b && rel[a][c] && rel[c][b]) {
                            covers.insert((a, b));
                        }
                    }
                }
                let h = hasse(n, &d, false).map_err(|e| e.to_string())?;
                ensure(h.nodes == nodes, || "diagram nodes differ from the enumeration".into())?;
                let got: BTreeSet<(usize, usize)> = h.edges.iter().map(|e| (e.upper, e.lower)).collect();
                ensure(got == covers, || {
                    format!("Hasse edges differ from covers for d={:?}", d.0)
                })?;
                for e in &h.edges {
                    ensure(e.codim >= 1, || format!("edge with codim {}", e.codim))?;
                }
                edges += h.edges.len();
                posets += 1;
            }
        }
    }
    Ok(format!("{posets} posets, {edges} Hasse edges"))
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let x = frac(rng.random_range(-9..=9), rng.random_range(1..=5));
        if !x.is_zero() {
            return x;
        }
    }
}

fn c9_model_varieties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut kinds: Vec<ModelVariety> = (1..=5).map(ModelVariety::A).collect();
    kinds.extend((1..=5).map(ModelVariety::C));
    let mut on = 0;
    let mut off = 0;
    for _ in 0..100 {
        let (u, v) = (nonzero(&mut rng), nonzero(&mut rng));
        let delta = nonzero(&mut rng);
        for &kind in &kinds {
            let mut point = kind.parametrize(&u, &v);
            let inside = model_variety_membership(kind, &point).map_err(|e| e.to_string())?;
            ensure(inside, || format!("{kind:?} misses its own point at u={u}, v={v}"))?;
            on += 1;
            // C_1 is all of k^2, so there is nothing to leave
            if kind == ModelVariety::C(1) {
                continue;
            }
            // y (resp. x_0) moved off the surface; z and x_2 are nonzero
            let slot = match kind {
                ModelVariety::A(_) => 1,
                ModelVariety::C(_) => 0,
            };
            point[slot] += &delta;
            let inside = model_variety_membership(kind, &point).map_err(|e| e.to_string())?;
            ensure(!inside, || format!("{kind:?} contains perturbed point {point:?}"))?;
            off += 1;
        }
    }
    Ok(format!(
        "{on} parametrized points inside, {off} perturbed points outside"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("C1 first worked example", c1_first_example, Duration::from_secs(1)),
        ("C2 second worked example", c2_second_example, Duration::from_secs(1)),
        ("C3 loop-quiver laws", c3_loop_laws, Duration::from_secs(5)),
        ("C4 window hom oracle", c4_window_hom_oracle, Duration::from_secs(120)),
        ("C5 round trips", c5_round_trips, Duration::from_secs(120)),
        ("C6 dominance oracle", c6_dominance, Duration::from_secs(60)),
        ("C7 codim-2 scan", c7_scan, Duration::from_secs(600)),
        ("C8 poset sanity", c8_poset_sanity, Duration::from_secs(600)),
        ("C9 model varieties", c9_model_varieties, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let verdict = match result {
            Ok(_) if took > budget => Err(format!("over budget ({:.2?} > {budget:.0?})", took)),
            other => other,
        };
        match verdict {
            Ok(detail) => println!("PASS {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{took:.2?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
