//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Extended criteria (hours of CPU) are skipped unless the program is run
//! with `--ignored`/`--include-ignored` or with `LEXTRI_EXTENDED=1`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use common::{from_facets, naive_census, Raw};
use lextri_core::enumerate::{count, enumerate, for_each, render_trace, trace};
use lextri_core::equivelar::{admissible_pairs, admissible_triples, for_each_equivelar, AdmissiblePairs};
use lextri_core::io::serialize;
use lextri_core::topology::*;
use lextri_core::{apply_relabeling, canonical_form, EnumerationConfig, Relabeling, Triangulation};

type Check = Result<String, String>;
type TripleRow = (i64, &'static [(u64, u64, u64)]);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

/// One surface or 3-manifold run, checked as it streams.
struct Run {
    total: u64,
    census: BTreeMap<(bool, String), u64>,
    f_failures: u64,
    elapsed: Duration,
    set: Option<BTreeSet<Raw>>,
}

fn run(cfg: &EnumerationConfig, keep: bool) -> Result<Run, String> {
    let start = Instant::now();
    let mut census = BTreeMap::new();
    let mut f_failures = 0;
    let mut set = keep.then(BTreeSet::new);
    let mut failure = None;
    let stats = for_each(cfg, &mut |t: &Triangulation| {
        if !f_vector_identities_hold(t) {
            f_failures += 1;
        }
        match census_key(t) {
            Ok(k) => *census.entry(k).or_insert(0) += 1,
            Err(e) => {
                failure = Some(e.to_string());
                return ControlFlow::Break(());
            }
        }
        if let Some(s) = &mut set {
            s.insert(from_facets(t.facets()));
        }
        ControlFlow::Continue(())
    })
    .map_err(|e| e.to_string())?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Run { total: stats.emitted, census, f_failures, elapsed: start.elapsed(), set })
}

fn split(r: &Run, orientable: bool) -> Vec<u64> {
    r.census.iter().filter(|((o, _), _)| *o == orientable).map(|(_, &c)| c).collect()
}

fn criterion_1(surfaces: &[Run]) -> Check {
    let expected = [1u64, 1, 3, 9, 43, 655, 42426];
    let got: Vec<u64> = surfaces.iter().map(|r| r.total).collect();
    ensure(got == expected, || format!("totals {got:?}, expected {expected:?}"))?;
    let slowest = surfaces.iter().map(|r| r.elapsed).max().unwrap_or_default();
    ensure(slowest <= Duration::from_secs(300), || format!("slowest run took {}", secs(slowest)))?;
    for (i, r) in surfaces.iter().enumerate().take(5) {
        let n = i as u8 + 4;
        let naive = naive_census(2, n);
        ensure(r.set.as_ref() == Some(&naive), || format!("n = {n} differs from the naive census"))?;
    }
    Ok(format!("totals {got:?}; n <= 8 equal the naive census as sets; slowest run {}", secs(slowest)))
}

fn criterion_2() -> Check {
    let golden = include_str!("golden/steps_n6.txt");
    let rendered = render_trace(&trace(&EnumerationConfig::surfaces(6)).map_err(|e| e.to_string())?);
    if rendered == golden {
        return Ok(format!("{} rows match the golden file", golden.lines().count()));
    }
    let row = rendered.lines().zip(golden.lines()).position(|(a, b)| a != b);
    Err(format!("trace differs from the golden file at row {:?}", row.map(|r| r + 1)))
}

fn criterion_3() -> Check {
    let r = run(&EnumerationConfig::surfaces(11), false)?;
    ensure(r.total == 11_590_894, || format!("total {}", r.total))?;
    let orientable = split(&r, true);
    let non = split(&r, false);
    ensure(orientable == [1249, 37867, 113506, 65878, 821], || format!("orientable {orientable:?}"))?;
    let expected = [11719, 86968, 530278, 1628504, 3355250, 3623421, 1834160, 295291, 5982];
    ensure(non == expected, || format!("non-orientable {non:?}"))?;
    Ok(format!("total 11590894 with the published genus split in {}", secs(r.elapsed)))
}

fn criterion_4(manifolds: &[Run], extended: bool) -> Check {
    let got: Vec<u64> = manifolds.iter().map(|r| r.total).collect();
    ensure(got == [1, 2, 5, 39, 1297], || format!("totals {got:?}"))?;
    let slowest = manifolds.iter().map(|r| r.elapsed).max().unwrap_or_default();
    ensure(slowest <= Duration::from_secs(600), || format!("slowest run took {}", secs(slowest)))?;
    let n9 = &manifolds[4].census;
    let expected: BTreeMap<(bool, String), u64> =
        [((true, "S3".to_string()), 1296), ((false, "S2twistS1".to_string()), 1)].into();
    ensure(*n9 == expected, || format!("n = 9 classification {n9:?}"))?;
    let mut msg = format!("totals {got:?}; n = 9 is 1296 S3 + 1 S2twistS1; slowest run {}", secs(slowest));
    if extended {
        let r = run(&EnumerationConfig::manifolds(10), false)?;
        let expected: BTreeMap<(bool, String), u64> = [
            ((true, "S3".to_string()), 247882),
            ((true, "S2xS1".to_string()), 615),
            ((false, "S2twistS1".to_string()), 518),
        ]
        .into();
        ensure(r.census == expected, || format!("n = 10 classification {:?}", r.census))?;
        msg.push_str(&format!("; n = 10 is 247882/615/518 in {}", secs(r.elapsed)));
    }
    Ok(msg)
}

fn criterion_5(surfaces: &[Run], manifolds: &[Run]) -> Check {
    use common::*;
    let h = |t: &Triangulation| homology(t).iter().map(|g| g.to_string()).collect::<Vec<_>>();
    ensure(h(&tetrahedron_boundary()) == ["Z", "0", "Z"], || "S2 homology".into())?;
    let rp2 = rp2_6();
    ensure(h(&rp2) == ["Z", "Z/2", "0"] && !is_orientable(&rp2), || "RP2 profile".into())?;
    let torus = torus_7();
    ensure(genus(&torus) == Ok(1) && is_orientable(&torus), || "torus profile".into())?;
    let s3 = classify_3manifold(&boundary_4simplex()).map_err(|e| e.to_string())?;
    ensure(s3.name == Some(ManifoldName::S3), || "boundary of the 4-simplex is not S3".into())?;
    let checked: u64 = surfaces.iter().chain(manifolds).map(|r| r.total).sum();
    let failed: u64 = surfaces.iter().chain(manifolds).map(|r| r.f_failures).sum();
    ensure(failed == 0, || format!("{failed} of {checked} triangulations violate the f-vector identities"))?;
    Ok(format!("fixtures match; f-vector identities hold on all {checked} emitted triangulations"))
}

fn criterion_6() -> Check {
    let table: [(i64, &[(u64, u64)]); 12] = [
        (2, &[(4, 3), (6, 4), (12, 5)]),
        (1, &[(6, 5)]),
        (-1, &[]),
        (-2, &[(12, 7)]),
        (-3, &[(9, 8), (18, 7)]),
        (-4, &[(12, 8), (24, 7)]),
        (-5, &[(10, 9), (15, 8), (30, 7)]),
        (-6, &[(12, 9), (18, 8), (36, 7)]),
        (-7, &[(14, 9), (21, 8), (42, 7)]),
        (-8, &[(12, 10), (16, 9), (24, 8), (48, 7)]),
        (-9, &[(18, 9), (27, 8), (54, 7)]),
        (-10, &[(12, 11), (15, 10), (20, 9), (30, 8), (60, 7)]),
    ];
    for (chi, rows) in table {
        let got = admissible_pairs(chi).map_err(|e| e.to_string())?;
        ensure(got == AdmissiblePairs::Finite(rows.to_vec()), || format!("chi = {chi}: {got:?}"))?;
    }
    ensure(admissible_pairs(0) == Ok(AdmissiblePairs::TorusFamily), || "chi = 0".into())?;
    let triples: [TripleRow; 4] = [
        (-1, &[]),
        (-2, &[(3, 7, 12), (7, 3, 28)]),
        (-3, &[(3, 8, 9), (8, 3, 24), (3, 7, 18), (7, 3, 42), (4, 5, 12), (5, 4, 15)]),
        (-4, &[(3, 8, 12), (8, 3, 32), (3, 7, 24), (7, 3, 56), (4, 5, 16), (5, 4, 20)]),
    ];
    for (chi, rows) in triples {
        let got: BTreeSet<(u64, u64, u64)> =
            admissible_triples(chi).map_err(|e| e.to_string())?.iter().map(|s| (s.p, s.q, s.n)).collect();
        let want: BTreeSet<(u64, u64, u64)> = rows.iter().copied().collect();
        ensure(got == want, || format!("chi = {chi}: triples {got:?}"))?;
    }
    Ok("pair table for chi in 2..=-10 and triple lists for chi in -1..=-4 match".into())
}

/// `(orientable count, non-orientable count)` of equivelar runs.
fn equivelar_split(n: u64, q: u64) -> Result<(u64, u64), String> {
    let (mut o, mut no) = (0, 0);
    for_each_equivelar(n, q, |_, ty| {
        if ty.orientable {
            o += 1
        } else {
            no += 1
        }
        ControlFlow::Continue(())
    })
    .map_err(|e| e.to_string())?;
    Ok((o, no))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let torus = [1u64, 1, 2, 1, 1, 4, 2, 2, 4, 5, 2, 5, 3, 6, 6, 4, 3, 11, 5, 5, 7, 9, 4, 11];
    let klein = [0u64, 0, 1, 1, 0, 3, 0, 1, 3, 2, 0, 4, 0, 4, 3, 1, 0, 7, 2, 1, 3, 4, 0, 8];
    for (i, n) in (7..=30u64).enumerate() {
        let got = equivelar_split(n, 6)?;
        ensure(got == (torus[i], klein[i]), || {
            format!("n = {n}: {} tori and {} Klein bottles, expected {} and {}", got.0, got.1, torus[i], klein[i])
        })?;
    }
    let mut small = 0;
    for n in 4..=11u64 {
        for q in 3..n {
            if (n * q.abs_diff(6)) % 6 == 0 && lextri_core::equivelar::triangulation_chi(n, q) <= 2 {
                let (o, no) = equivelar_split(n, q)?;
                small += o + no;
            }
        }
    }
    ensure(small == 27, || format!("{small} equivelar triangulations with n <= 11"))?;
    let mut types = BTreeMap::new();
    for_each_equivelar(12, 7, |_, ty| {
        *types.entry((ty.orientable, ty.genus)).or_insert(0u64) += 1;
        ControlFlow::Continue(())
    })
    .map_err(|e| e.to_string())?;
    let want = BTreeMap::from([((true, Some(2)), 6u64), ((false, Some(4)), 28)]);
    ensure(types == want, || format!("(12,7) types {types:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(600), || format!("took {}", secs(elapsed)))?;
    Ok(format!(
        "torus and Klein counts for n <= 30 match (torus n = 17 is 2); 27 with n <= 11; (12,7) is 6 + 28; {}",
        secs(elapsed)
    ))
}

fn criterion_7_extended() -> Check {
    let start = Instant::now();
    for n in 31..=40u64 {
        let (_, klein) = equivelar_split(n, 6)?;
        let composite = (2..n).any(|d| n % d == 0);
        ensure((klein > 0) == composite, || format!("n = {n}: {klein} Klein bottles"))?;
    }
    let mut total = 0;
    for q in 5..=11u64 {
        let (o, no) = equivelar_split(12, q)?;
        total += o + no;
    }
    ensure(total == 240914, || format!("n = 12 equivelar total {total}"))?;
    Ok(format!("Klein bottles exist exactly for composite n in 31..=40; n = 12 total 240914; {}", secs(start.elapsed())))
}

fn criterion_8() -> Check {
    let mut census = Vec::new();
    for n in 4..=8 {
        census.extend(enumerate(&EnumerationConfig::surfaces(n)).map_err(|e| e.to_string())?);
    }
    for n in 5..=8 {
        census.extend(enumerate(&EnumerationConfig::manifolds(n)).map_err(|e| e.to_string())?);
    }
    for t in &census {
        let c = canonical_form(t.dim(), t.facets()).map_err(|e| e.to_string())?;
        ensure(c == t.facets(), || format!("{} is not a fixed point", serialize(t)))?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let t = census.choose(&mut rng).unwrap();
        let mut map: Vec<u8> = (1..=t.n() as u8).collect();
        map.shuffle(&mut rng);
        map.insert(0, 0);
        let scrambled = apply_relabeling(t.facets(), &Relabeling::new(map).unwrap()).unwrap();
        let c = canonical_form(t.dim(), &scrambled).map_err(|e| e.to_string())?;
        ensure(c == t.facets(), || format!("relabeling of {} not recovered", serialize(t)))?;
    }
    for n in 4..=7 {
        for cfg in [EnumerationConfig::surfaces(n), EnumerationConfig::manifolds(n.max(5))] {
            let mut lazy = cfg.clone();
            lazy.relabel_interval = 0;
            let (a, b) = (enumerate(&cfg).unwrap(), enumerate(&lazy).unwrap());
            ensure(a == b, || format!("dim {} n = {}: output changes without the prune", cfg.dim, cfg.n))?;
            if n == 7 {
                let (x, y) = (count(&cfg).unwrap().nodes, count(&lazy).unwrap().nodes);
                ensure(x != y, || format!("dim {} n = 7: node count unchanged ({x})", cfg.dim))?;
            }
        }
    }
    Ok(format!(
        "{} outputs are fixed points; 1000 random relabelings recovered; prune-free runs agree for n <= 7",
        census.len()
    ))
}

fn criterion_9() -> Check {
    for cfg in [EnumerationConfig::surfaces(8), EnumerationConfig::manifolds(8)] {
        let full: Vec<String> = enumerate(&cfg).map_err(|e| e.to_string())?.iter().map(serialize).collect();
        let full_bytes = full.join("\n") + "\n";
        for m in [2, 4, 8] {
            let mut seen = BTreeSet::new();
            for i in 0..m {
                for t in enumerate(&cfg.clone().with_partition(i, m)).map_err(|e| e.to_string())? {
                    let line = serialize(&t);
                    ensure(seen.insert((t.facets().to_vec(), line)), || format!("slices of {m} overlap"))?;
                }
            }
            let merged = seen.into_iter().map(|(_, l)| l).collect::<Vec<_>>().join("\n") + "\n";
            ensure(merged == full_bytes, || format!("dim {} m = {m}: merged slices differ", cfg.dim))?;
        }
    }
    Ok("n = 8, dims 2 and 3, m in {2, 4, 8}: disjoint slices merge to the full output".into())
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let extended = args.iter().any(|a| a == "--ignored" || a == "--include-ignored")
        || std::env::var("LEXTRI_EXTENDED").is_ok_and(|v| v == "1");

    let mut results: Vec<(u32, &str, Option<Check>)> = Vec::new();
    std::thread::scope(|s| {
        let surfaces = s.spawn(|| (4..=10).map(|n| run(&EnumerationConfig::surfaces(n), n <= 8)).collect::<Result<Vec<_>, _>>());
        let manifolds = s.spawn(|| (5..=9).map(|n| run(&EnumerationConfig::manifolds(n), false)).collect::<Result<Vec<_>, _>>());
        let c7 = s.spawn(criterion_7);
        let c8 = s.spawn(criterion_8);
        let c9 = s.spawn(criterion_9);
        let c3 = extended.then(|| s.spawn(criterion_3));
        let c7x = extended.then(|| s.spawn(criterion_7_extended));

        let surfaces = surfaces.join().expect("surface runs panicked");
        let manifolds = manifolds.join().expect("3-manifold runs panicked");
        let c4 = match &manifolds {
            Ok(m) => Some(criterion_4(m, extended)),
            Err(e) => Some(Err(e.clone())),
        };
        results.push((1, "surface census n = 4..10", Some(surfaces.as_ref().map_err(Clone::clone).and_then(|r| criterion_1(r)))));
        results.push((2, "golden step log, surfaces n = 6", Some(criterion_2())));
        results.push((3, "surface census n = 11 (extended)", c3.map(|h| h.join().expect("panicked"))));
        results.push((4, "3-manifold census n = 5..9", c4));
        let c5 = match (&surfaces, &manifolds) {
            (Ok(s), Ok(m)) => criterion_5(s, m),
            _ => Err("census runs failed".into()),
        };
        results.push((5, "topology fixtures and f-vector identities", Some(c5)));
        results.push((6, "equivelar arithmetic", Some(criterion_6())));
        let mut c7r = c7.join().expect("panicked");
        if let (Ok(msg), Some(h)) = (&c7r, c7x) {
            c7r = h.join().expect("panicked").map(|x| format!("{msg}; {x}"));
        }
        results.push((7, "equivelar enumeration", Some(c7r)));
        results.push((8, "canonicality properties", Some(c8.join().expect("panicked"))));
        results.push((9, "partition soundness", Some(c9.join().expect("panicked"))));
    });

    let mut failed = 0;
    for (id, name, r) in &results {
        match r {
            Some(Ok(detail)) => println!("criterion {id} PASS {name}: {detail}"),
            Some(Err(why)) => {
                failed += 1;
                println!("criterion {id} FAIL {name}: {why}");
            }
            None => println!("criterion {id} SKIP {name}: run with --ignored or LEXTRI_EXTENDED=1"),
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
