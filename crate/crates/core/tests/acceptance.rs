//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p misx-core --test acceptance`.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{rng, Dense};
use misx::invariants::{covering_number, matching_number};
use misx::mis::{alpha, count_by_enumeration};
use misx::verifier::{
    is_triangles_plus_isolated, labeled_catalog, sweep, Analysis, Engine, Recurrence, SweepOptions,
    SweepReport, TheoremTag,
};
use misx::{
    classify_structure, count_mis, cw_example, enumerate_labeled_graphs, enumerate_mis,
    full_bundle, is_cw_bipartite, is_cw_definitional, parse_graph6, to_graph6, Family, Graph,
    MisConfig, VertexSet,
};
use num_bigint::BigUint;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cfg() -> MisConfig {
    MisConfig::default()
}

fn m(g: &Graph) -> BigUint {
    count_mis(g, &cfg()).expect("within budget").count
}

fn catalog(n: usize) -> impl Iterator<Item = Graph> {
    enumerate_labeled_graphs(n, 6).expect("n ≤ 6")
}

fn catalog_upto(n: usize) -> impl Iterator<Item = Graph> {
    (0..=n).flat_map(catalog)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g6(g: &Graph) -> String {
    to_graph6(g).unwrap_or_default()
}

fn bound_tags() -> Vec<TheoremTag> {
    vec![
        TheoremTag::CoverBound,
        TheoremTag::MatchingBound,
        TheoremTag::InducedLower,
        TheoremTag::KeCorollary,
    ]
}

fn timed_sweep(n: usize, jobs: usize) -> (SweepReport, Duration) {
    let start = Instant::now();
    let report = sweep(
        &format!("labeled:n={n}"),
        labeled_catalog(n, 6).expect("n ≤ 6"),
        &SweepOptions {
            tags: bound_tags(),
            jobs,
            ..SweepOptions::default()
        },
    );
    (report, start.elapsed())
}

fn c1_example() -> Outcome {
    let start = Instant::now();
    let g = cw_example();
    let mut sets: Vec<Vec<usize>> = enumerate_mis(&g, &cfg())
        .map_err(|e| e.to_string())?
        .iter()
        .map(VertexSet::to_vec)
        .collect();
    sets.sort();
    let mut expected = vec![
        vec![0, 1, 4, 5, 6, 7],
        vec![2, 3],
        vec![2, 4, 5],
        vec![3, 6, 7],
    ];
    expected.sort();
    ensure(sets == expected, || format!("sets {sets:?}"))?;
    let b = full_bundle(&g, &cfg()).map_err(|e| e.to_string())?;
    ensure((b.nu, b.nu0, b.beta) == (2, 2, 2), || {
        format!("ν={} ν₀={} β={}", b.nu, b.nu0, b.beta)
    })?;
    ensure(
        b.m == BigUint::from(4u8) && b.m == BigUint::from(1u8) << b.beta,
        || format!("m={}", b.m),
    )?;
    let verdict = is_cw_bipartite(&g).map_err(|f| format!("{f:?}"))?;
    ensure(verdict.is_cw_bipartite, || "not CW bipartite".into())?;
    ensure(classify_structure(&g).is_cw_bipartite(), || {
        "structural reject".into()
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("{elapsed:?}"))?;
    Ok(format!("m=4, ν=ν₀=β=2, CW bipartite, {elapsed:.2?}"))
}

fn c2_sweep() -> Outcome {
    let (r5, t5) = timed_sweep(5, 1);
    ensure(r5.is_clean() && r5.processed == 1024, || {
        format!("n=5: {:?}", r5.counterexamples)
    })?;
    ensure(t5 < Duration::from_secs(5), || format!("n=5 took {t5:?}"))?;
    let (r6, t6) = timed_sweep(6, 1);
    ensure(r6.processed == 32768 && r6.skipped.is_empty(), || {
        format!(
            "n=6 processed {} skipped {}",
            r6.processed,
            r6.skipped.len()
        )
    })?;
    let violations: u64 = r6.tallies.iter().map(|t| t.checked - t.held).sum();
    ensure(violations == 0 && r6.is_clean(), || {
        format!("{:?}", r6.counterexamples)
    })?;
    ensure(t6 < Duration::from_secs(600), || format!("n=6 took {t6:?}"))?;
    Ok(format!(
        "32768 graphs, 0 violations; n=5 {t5:.2?}, n=6 {t6:.2?} (1 job)"
    ))
}

fn c3_cover_extremal() -> Outcome {
    let (mut extremal, mut accepted, mut diff) = (0, 0, Vec::new());
    for g in catalog(6) {
        let b = full_bundle(&g, &cfg()).map_err(|e| e.to_string())?;
        let ext = b.m == BigUint::from(1u8) << b.beta;
        let cw = is_cw_bipartite(&g)
            .map_err(|f| format!("{} {f:?}", g6(&g)))?
            .is_cw_bipartite;
        extremal += ext as u32;
        accepted += cw as u32;
        if ext != cw {
            diff.push(g6(&g));
        }
    }
    ensure(diff.is_empty(), || format!("symmetric difference {diff:?}"))?;
    // Labeled count from the brute-force oracle.
    ensure(extremal == 1462, || {
        format!("{extremal} extremal graphs, expected 1462")
    })?;
    Ok(format!(
        "|m=2^β| = |CW bipartite| = {accepted}, symmetric difference 0"
    ))
}

fn c4_matching_extremal() -> Outcome {
    let (mut extremal, mut diff) = (0, Vec::new());
    for g in catalog(6) {
        let (nu, _) = matching_number(&g);
        let ext = m(&g) == BigUint::from(3u8).pow(nu as u32);
        extremal += ext as u32;
        if ext != is_triangles_plus_isolated(&g) {
            diff.push(g6(&g));
        }
    }
    ensure(diff.is_empty(), || format!("symmetric difference {diff:?}"))?;
    ensure(extremal == 31, || {
        format!("{extremal} extremal graphs, expected 31")
    })?;
    Ok(format!(
        "|m=3^ν| = |sK₃ ∪ tK₁| = {extremal}, symmetric difference 0"
    ))
}

fn agree(g: &Graph) -> Result<bool, String> {
    let structural = classify_structure(g);
    structural
        .validate(g)
        .map_err(|e| format!("{}: {e}", g6(g)))?;
    let definitional = is_cw_definitional(g);
    ensure(structural.is_cw() == definitional.is_cw, || {
        format!(
            "{}: structural {} definitional {}",
            g6(g),
            structural.is_cw(),
            definitional.is_cw
        )
    })?;
    Ok(definitional.is_cw)
}

fn c5_classification() -> Outcome {
    let mut cw = 0;
    let mut total = 0;
    for g in catalog_upto(6) {
        cw += agree(&g)? as u32;
        total += 1;
    }
    let mut r = rng(5);
    for n in 7..=9 {
        for i in 0..1000 {
            let p = [0.15, 0.3, 0.5][i % 3];
            let g = common::random_graph(n, p, &mut r);
            cw += agree(&g)? as u32;
            total += 1;
        }
    }
    Ok(format!("{total} graphs agree ({cw} Cameron-Walker)"))
}

fn c6_oracle() -> Outcome {
    let check = |g: &Graph| -> Result<(), String> {
        let reduced = count_mis(g, &cfg()).map_err(|e| e.to_string())?.count;
        let enumerated = count_by_enumeration(g, &cfg()).map_err(|e| e.to_string())?;
        ensure(reduced == enumerated, || {
            format!("{}: {reduced} vs {enumerated}", g6(g))
        })
    };
    let mut total = 0;
    for g in catalog_upto(6) {
        check(&g)?;
        total += 1;
    }
    let mut r = rng(6);
    for i in 0..1000 {
        let n = r.gen_range(0..=10);
        let p = [0.2, 0.5, 0.8][i % 3];
        check(&common::random_graph(n, p, &mut r))?;
        total += 1;
    }
    Ok(format!("{total} graphs, reductions = enumeration"))
}

fn c7_recurrences() -> Outcome {
    let (mut branch, mut leaf) = (0u64, 0u64);
    for g in catalog_upto(6) {
        let n = g.n();
        let a = Analysis::compute(&g, &cfg(), Engine::Reductions).map_err(|e| e.to_string())?;
        for r in a.recurrences(&g).map_err(|e| e.to_string())? {
            match r.recurrence {
                Recurrence::Branch { .. } if n > 5 => continue,
                Recurrence::Branch { .. } => branch += 1,
                Recurrence::Leaf { .. } => leaf += 1,
                Recurrence::Product { .. } => {}
            }
            ensure(r.holds, || format!("{}: {r:?}", g6(&g)))?;
        }
    }
    let mut rnd = rng(7);
    for _ in 0..1000 {
        let parts: Vec<Graph> = (0..rnd.gen_range(2..=3))
            .map(|_| {
                let n = rnd.gen_range(1..=5);
                let p = rnd.gen_range(0.1..0.9);
                common::random_graph(n, p, &mut rnd)
            })
            .collect();
        let union = parts
            .iter()
            .skip(1)
            .fold(parts[0].clone(), |u, p| u.disjoint_union(p));
        let lhs = count_by_enumeration(&union, &cfg()).map_err(|e| e.to_string())?;
        let rhs: BigUint = parts.iter().map(m).product();
        ensure(lhs == rhs, || format!("{}: {lhs} vs {rhs}", g6(&union)))?;
        let a = Analysis::compute(&union, &cfg(), Engine::Reductions).map_err(|e| e.to_string())?;
        let recs = a.recurrences(&union).map_err(|e| e.to_string())?;
        ensure(recs.iter().all(|r| r.holds), || g6(&union))?;
    }
    Ok(format!("{branch} branch, {leaf} leaf, 1000 product checks"))
}

fn c8_covers() -> Outcome {
    let mut r = rng(8);
    let (mut induced, mut removed, mut gallai, mut koenig) = (0u64, 0u64, 0u64, 0u64);
    for g in catalog_upto(6) {
        let n = g.n();
        let d = Dense::of(&g);
        let (beta, cover) = covering_number(&g);
        ensure(beta == d.beta(), || {
            format!("{}: β {beta} vs oracle {}", g6(&g), d.beta())
        })?;
        ensure(alpha(&g) + d.beta() == n, || format!("{}: Gallai", g6(&g)))?;
        gallai += 1;
        if g.is_bipartite() {
            ensure(beta == matching_number(&g).0, || {
                format!("{}: König", g6(&g))
            })?;
            koenig += 1;
        }
        // Two random induced subgraphs per graph.
        for _ in 0..2 {
            let s: VertexSet = (0..n).filter(|_| r.gen_bool(0.5)).collect();
            let (h, _) = g.induced_subgraph(&s).map_err(|e| e.to_string())?;
            ensure(covering_number(&h).0 <= beta, || {
                format!("{}: β(H) on {s}", g6(&g))
            })?;
            induced += 1;
        }
        // Every subset of the minimum cover.
        let c = cover.to_vec();
        for mask in 0u32..(1 << c.len()) {
            let u: VertexSet = (0..c.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| c[i])
                .collect();
            let (h, _) = g.remove_vertices(&u).map_err(|e| e.to_string())?;
            ensure(covering_number(&h).0 + u.len() <= beta, || {
                format!("{}: β(G\\{u})", g6(&g))
            })?;
            removed += 1;
        }
    }
    Ok(format!(
        "{induced} induced, {removed} cover-subset removals, {gallai} Gallai, {koenig} König"
    ))
}

fn c9_families() -> Outcome {
    let count = |spec: String| -> Result<BigUint, String> {
        let g = spec
            .parse::<Family>()
            .map_err(|e| e.to_string())?
            .generate()
            .map_err(|e| e.to_string())?;
        Ok(m(&g))
    };
    let mut checked = 0;
    for s in 0..=6u32 {
        for t in 0..=3 {
            let got = count(format!("triangles:s={s},t={t}"))?;
            ensure(got == BigUint::from(3u8).pow(s), || {
                format!("s={s} t={t}: {got}")
            })?;
            checked += 1;
        }
    }
    for k in 1..=10 {
        let got = count(format!("star:m={k}"))?;
        ensure(got == BigUint::from(2u8), || format!("star m={k}: {got}"))?;
        checked += 1;
    }
    for k in 1..=8u32 {
        let got = count(format!("star-triangle:k={k}"))?;
        ensure(got == BigUint::from(2u8).pow(k) + 1u8, || {
            format!("star-triangle k={k}: {got}")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} family members"))
}

fn c10_determinism() -> Outcome {
    let json = |mut r: SweepReport| {
        r.wall_time_ms = None;
        serde_json::to_string_pretty(&r).expect("report serializes")
    };
    for n in [5, 6] {
        let one = json(timed_sweep(n, 1).0);
        let eight = json(timed_sweep(n, 8).0);
        ensure(one == eight, || format!("n={n}: reports differ"))?;
    }
    let mut records = 0;
    for g in catalog_upto(6) {
        let text = to_graph6(&g).map_err(|e| e.to_string())?;
        let back = parse_graph6(text.as_bytes()).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == g, || format!("{text} does not round-trip"))?;
        records += 1;
    }
    Ok(format!(
        "jobs 1 = jobs 8 byte-for-byte; {records} graph6 round-trips"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("example reproduction", c1_example),
        ("exhaustive theorem sweep", c2_sweep),
        ("m = 2^β extremal set", c3_cover_extremal),
        ("m = 3^ν extremal set", c4_matching_extremal),
        ("classification equivalence", c5_classification),
        ("oracle equivalence", c6_oracle),
        ("recurrence suite", c7_recurrences),
        ("cover inequalities", c8_covers),
        ("family counts", c9_families),
        ("determinism", c10_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name}: {detail} [{elapsed:.2?}]",
                    i + 1
                );
            }
        }
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
