//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria 2 to 4 need a real AS-relationship snapshot, read from the path
//! in `CROUTE_ASREL` or from `data/as-rel.txt` at the workspace root. When
//! no snapshot is present they are reported as FAIL with the reason, and the
//! run still succeeds unless `CROUTE_ACCEPTANCE_STRICT=1`.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::oracle::Oracle;
use common::{corpus, floyd_warshall, random_tree, star};
use croute::eval::{self, measure_stretch, neighbor_reinsertion, table_stats, SweepConfig};
use croute::graph::{stats, PairMode};
use croute::hierarchical::{build_hier, partition_bfs};
use croute::schemes::{build_cowen, build_landmark_scheme, build_trivial, build_tz, ceil_sqrt, LandmarkSet};
use croute::topology::{asrel_to_graph, generate, parse_asrel_reader, GenConfig};
use croute::{bfs, Graph, SchemeKind, SchemeParams};

const SAMPLED_PAIRS: u64 = 100_000;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Required input is not available in this environment.
    Unavailable(String),
}

type Check = Result<String, Outcome>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Outcome> {
    if cond {
        Ok(())
    } else {
        Err(Outcome::Fail(msg()))
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), Outcome> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn snapshot_graph() -> Result<(PathBuf, Graph), Outcome> {
    let path = std::env::var_os("CROUTE_ASREL")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/as-rel.txt"));
    let file = std::fs::File::open(&path).map_err(|e| {
        Outcome::Unavailable(format!(
            "no AS-relationship snapshot at {} ({e}); set CROUTE_ASREL",
            path.display()
        ))
    })?;
    let records = parse_asrel_reader(std::io::BufReader::new(file)).map_err(|e| Outcome::Fail(e.to_string()))?;
    let g = asrel_to_graph(&records).map_err(|e| Outcome::Fail(e.to_string()))?;
    Ok((path, g))
}

fn fail(e: croute::Error) -> Outcome {
    Outcome::Fail(e.to_string())
}

fn stretch3_bound() -> Check {
    let start = Instant::now();
    let mut graphs = 0;
    for (name, g) in corpus() {
        let n = g.node_count();
        let arts = [
            build_cowen(&g, 1.0 / 3.0, 0).map_err(fail)?,
            build_tz(&g, ceil_sqrt(n), 4.0, 1).map_err(fail)?,
            build_tz(&g, 1, 4.0, 2).map_err(fail)?,
        ];
        for art in &arts {
            let o = Oracle::new(&g, art).stretch();
            ensure(o.over_three == 0, || format!("{name} {}: {} pairs above 3", art.kind, o.over_three))?;
            measure_stretch(art, &g, u64::MAX, 0).map_err(fail)?;
        }
        graphs += 1;
    }
    let mut large = Vec::new();
    for n in [1_000, 10_000] {
        for cfg in [GenConfig::preferential(n, 2, 11), GenConfig::powerlaw(n, 2.1, 12)] {
            let g = generate(&cfg).map_err(fail)?;
            for art in [
                build_cowen(&g, 1.0 / 3.0, 0).map_err(fail)?,
                build_tz(&g, ceil_sqrt(g.node_count()), 4.0, 13).map_err(fail)?,
            ] {
                // measurement aborts with an error on any pair above stretch 3
                let r = measure_stretch(&art, &g, SAMPLED_PAIRS, 14).map_err(fail)?;
                ensure(r.pair_count == SAMPLED_PAIRS && r.max_stretch <= 3.0, || format!("{r:?}"))?;
                large.push(format!("{}/{}/n={}: max {}", cfg.model.name(), art.kind, g.node_count(), r.max_stretch));
            }
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "zero violations on {graphs} small graphs (exhaustive) and 8 large runs of {SAMPLED_PAIRS} sampled pairs [{}] in {:.1?}",
        large.join("; "),
        start.elapsed()
    ))
}

fn headline_reproduction() -> Check {
    let start = Instant::now();
    let (path, g) = snapshot_graph()?;
    let art = build_tz(&g, ceil_sqrt(g.node_count()), 4.0, 2004).map_err(fail)?;
    let r = measure_stretch(&art, &g, SAMPLED_PAIRS, 2005).map_err(fail)?;
    let t = table_stats(&art);
    let summary = format!(
        "snapshot {} ({}): avg_stretch {:.4} (reference 1.1), avg_table {:.1} (reference 50), max_table {}",
        path.display(),
        g.fingerprint(),
        r.avg_stretch,
        t.avg_entries,
        t.max_entries
    );
    ensure((1.02..=1.25).contains(&r.avg_stretch), || format!("avg_stretch out of [1.02, 1.25]: {summary}"))?;
    ensure((15.0..=200.0).contains(&t.avg_entries), || format!("avg_table out of [15, 200]: {summary}"))?;
    within(start, Duration::from_secs(600))?;
    Ok(summary)
}

fn small_world() -> Check {
    let start = Instant::now();
    let (path, g) = snapshot_graph()?;
    let s = stats(&g, SAMPLED_PAIRS, 4).map_err(fail)?;
    let summary = format!(
        "snapshot {}: avg_distance {:.3}, pairs at 2-4 hops {:.1}% ({} pairs, {})",
        path.display(),
        s.avg_distance,
        100.0 * s.pct_2_to_4,
        s.pair_count,
        s.pair_mode.label()
    );
    ensure((3.0..=3.9).contains(&s.avg_distance), || format!("avg distance out of [3.0, 3.9]: {summary}"))?;
    ensure(s.pct_2_to_4 >= 0.75, || format!("below 75%: {summary}"))?;
    within(start, Duration::from_secs(120))?;
    Ok(summary)
}

fn table_envelope() -> Check {
    let (path, g) = snapshot_graph()?;
    let n = g.node_count();
    let s = ceil_sqrt(n);
    let art = build_tz(&g, s, 4.0, 2004).map_err(fail)?;
    let t = table_stats(&art);
    let a = art.landmarks().unwrap().len();
    let bound = a as f64 + 4.0 * n as f64 / s as f64;
    ensure(t.max_entries as f64 <= bound, || format!("max table {} above |A| + 4n/s = {bound}", t.max_entries))?;
    if n <= 20_000 {
        ensure(t.max_entries <= 2200, || format!("max table {} above 2200 at n = {n}", t.max_entries))?;
    }
    Ok(format!(
        "snapshot {}: max table {} <= |A| + 4n/s = {bound:.0} (|A| = {a}, n = {n}){}",
        path.display(),
        t.max_entries,
        if n <= 20_000 { ", <= 2200" } else { "" }
    ))
}

fn oracle_equivalence() -> Check {
    let mut reports = 0;
    for (name, g) in corpus() {
        let d = floyd_warshall(&g);
        for s in g.nodes() {
            ensure(bfs(&g, s).distances() == d[s as usize].as_slice(), || format!("{name}: bfs from {s}"))?;
        }
        let n = g.node_count();
        let p = partition_bfs(&g, ceil_sqrt(n), 3).map_err(fail)?;
        let arts = [
            build_trivial(&g).map_err(fail)?,
            build_cowen(&g, 1.0 / 3.0, 0).map_err(fail)?,
            build_tz(&g, ceil_sqrt(n), 4.0, 5).map_err(fail)?,
            build_hier(&g, &p).map_err(fail)?,
        ];
        for art in &arts {
            let r = measure_stretch(art, &g, u64::MAX, 0).map_err(fail)?;
            ensure(r.mode == PairMode::Exact, || format!("{name}: not exact"))?;
            let o = Oracle::new(&g, art);
            o.check_artifacts().map_err(|e| Outcome::Fail(format!("{name} {}: {e}", art.kind)))?;
            o.stretch()
                .matches(&r)
                .map_err(|e| Outcome::Fail(format!("{name} {}: {e}", art.kind)))?;
            reports += 1;
        }
    }
    Ok(format!("{reports} exact reports and all BFS rows identical to brute force"))
}

fn stars_trees_complete() -> Check {
    let mut cases = Vec::new();
    for leaves in [4, 49, 999] {
        cases.push((format!("star{}", leaves + 1), star(leaves)));
    }
    for (i, n) in [10, 100, 1000].into_iter().enumerate() {
        cases.push((format!("tree{n}"), random_tree(n, 40 + i as u64)));
    }
    for (name, g) in &cases {
        let n = g.node_count();
        for art in [
            build_cowen(g, 1.0 / 3.0, 0).map_err(fail)?,
            build_tz(g, ceil_sqrt(n), 4.0, 6).map_err(fail)?,
        ] {
            let r = measure_stretch(&art, g, u64::MAX, 0).map_err(fail)?;
            ensure(r.avg_stretch == 1.0 && r.max_stretch == 1.0, || {
                format!("{name} {}: avg {} max {}", art.kind, r.avg_stretch, r.max_stretch)
            })?;
            let v = neighbor_reinsertion(&art, g).map_err(fail)?.violating_adjacencies;
            ensure(v == 0, || format!("{name} {}: {v} violations", art.kind))?;
        }
    }
    let k4 = common::complete(4);
    let single = LandmarkSet::new(&k4, [0]).map_err(fail)?;
    let mut k4_lines = Vec::new();
    for art in [
        build_landmark_scheme(&k4, &single, SchemeKind::Tz).map_err(fail)?,
        build_cowen(&k4, 1.0 / 3.0, 0).map_err(fail)?,
    ] {
        ensure(art.landmarks().unwrap().len() == 1, || "K4 needs one landmark".into())?;
        let r = measure_stretch(&art, &k4, u64::MAX, 0).map_err(fail)?;
        let v = neighbor_reinsertion(&art, &k4).map_err(fail)?.violating_adjacencies;
        ensure(r.avg_stretch == 1.5, || format!("K4 avg {}", r.avg_stretch))?;
        ensure(v > 0, || "K4 reinsertion count is zero".into())?;
        k4_lines.push(format!("{} avg {} reinsertions {v}", art.kind, r.avg_stretch));
    }
    Ok(format!(
        "stretch exactly 1 and no reinsertions on {} stars/trees up to n = 1000; K4 single landmark: {}",
        cases.len(),
        k4_lines.join(", ")
    ))
}

fn scaling_sweep() -> Check {
    let start = Instant::now();
    let cfg = SweepConfig {
        template: GenConfig::preferential(0, 2, 0),
        sizes: vec![1_000, 3_000, 10_000, 30_000],
        schemes: vec![SchemeKind::Trivial, SchemeKind::Tz],
        params: SchemeParams::default(),
        pair_budget: SAMPLED_PAIRS,
        seed: 7,
    };
    let rep = eval::sweep(&cfg).map_err(fail)?;
    let exp = |k: SchemeKind| rep.fitted_exponents.iter().find(|e| e.scheme == k).unwrap().max_table_exponent;
    let (triv, tz) = (exp(SchemeKind::Trivial), exp(SchemeKind::Tz));
    let series: Vec<String> = rep
        .points
        .iter()
        .filter(|p| p.scheme == SchemeKind::Tz)
        .map(|p| format!("n={}: {:.4}", p.n, p.avg_stretch_len1))
        .collect();
    ensure((triv - 1.0).abs() <= 0.05, || format!("trivial exponent {triv}"))?;
    ensure((0.4..=0.7).contains(&tz), || format!("tz exponent {tz}"))?;
    within(start, Duration::from_secs(1200))?;
    Ok(format!(
        "max-table exponents trivial {triv:.4}, tz {tz:.4}; tz avg_stretch_len1 [{}] in {:.1?}",
        series.join(", "),
        start.elapsed()
    ))
}

fn hierarchy_pathology() -> Check {
    let mut rows = Vec::new();
    for trial in 0..5u64 {
        let g = generate(&GenConfig::preferential(10_000, 2, 100 + trial)).map_err(fail)?;
        let n = g.node_count();
        let tz = build_tz(&g, ceil_sqrt(n), 4.0, 200 + trial).map_err(fail)?;
        let p = partition_bfs(&g, ceil_sqrt(n), 300 + trial).map_err(fail)?;
        let hier = build_hier(&g, &p).map_err(fail)?;
        let a = measure_stretch(&tz, &g, SAMPLED_PAIRS, 400 + trial).map_err(fail)?.avg_stretch;
        let b = measure_stretch(&hier, &g, SAMPLED_PAIRS, 400 + trial).map_err(fail)?.avg_stretch;
        ensure(b > a, || format!("trial {trial}: hierarchical {b} <= tz {a}"))?;
        rows.push(format!("{b:.3} > {a:.3}"));
    }
    Ok(format!("hierarchical vs tz avg stretch in 5 trials: {}", rows.join(", ")))
}

fn determinism() -> Check {
    use std::process::Command;
    let dir = tempfile::TempDir::new().map_err(|e| Outcome::Fail(e.to_string()))?;
    std::fs::write(dir.path().join("toy.txt"), "1|2|-1\n2|3|0\n3|4|-1\n4|1|0\n2|4|-1\n5|1|-1\n").unwrap();
    let runs: [&[&str]; 6] = [
        &["gen", "--n", "2000"],
        &["ingest", "toy.txt"],
        &["eval", "g1/graph.edges", "--scheme", "tz", "--artifacts"],
        &["eval", "g1/graph.edges", "--scheme", "hierarchical"],
        &["compare", "g1/graph.edges"],
        &["sweep", "--sizes", "300,600,1200", "--schemes", "trivial,cowen,tz,hierarchical"],
    ];
    let mut files = 0;
    for (i, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            let out = format!("r{i}_{threads}");
            let status = Command::new(env!("CARGO_BIN_EXE_croute"))
                .current_dir(dir.path())
                .args(["--quiet", "--seed", "9", "--pair-budget", "20000", "--threads", threads, "--out", &out])
                .args(*args)
                .status()
                .unwrap();
            ensure(status.success(), || format!("{args:?} failed"))?;
            if i == 0 && threads == "1" {
                std::fs::create_dir_all(dir.path().join("g1")).unwrap();
                std::fs::copy(dir.path().join(&out).join("graph.edges"), dir.path().join("g1/graph.edges")).unwrap();
            }
            outputs.push(out);
        }
        let mut names: Vec<_> = std::fs::read_dir(dir.path().join(&outputs[0]))
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .filter(|f| f != "run.conf")
            .collect();
        names.sort();
        for f in names {
            let a = std::fs::read(dir.path().join(&outputs[0]).join(&f)).unwrap();
            let b = std::fs::read(dir.path().join(&outputs[1]).join(&f)).unwrap();
            ensure(a == b, || format!("{args:?}: {f:?} differs between 1 and 4 threads"))?;
            files += 1;
        }
    }
    Ok(format!("{files} report files byte-identical across reruns with 1 and 4 worker threads"))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Check); 9] = [
        (1, "stretch-3 hard bound", stretch3_bound),
        (2, "headline reproduction on AS snapshot", headline_reproduction),
        (3, "small-world statistics on AS snapshot", small_world),
        (4, "TZ table-size envelope on AS snapshot", table_envelope),
        (5, "oracle equivalence", oracle_equivalence),
        (6, "stars, trees and K4", stars_trees_complete),
        (7, "scaling sweep exponents", scaling_sweep),
        (8, "hierarchy stretches more than TZ", hierarchy_pathology),
        (9, "determinism", determinism),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let strict = std::env::var("CROUTE_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let mut failed = 0;
    let mut unavailable = 0;
    for (id, name, run) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let outcome = match panic::catch_unwind(AssertUnwindSafe(run)) {
            Ok(Ok(msg)) => Outcome::Pass(msg),
            Ok(Err(o)) => o,
            Err(p) => Outcome::Fail(
                p.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into()),
            ),
        };
        match outcome {
            Outcome::Pass(msg) => println!("PASS criterion {id} ({name}): {msg}"),
            Outcome::Fail(msg) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}): {msg}");
            }
            Outcome::Unavailable(msg) => {
                unavailable += 1;
                println!("FAIL criterion {id} ({name}): not evaluated, {msg}");
            }
        }
    }
    println!("acceptance: {failed} failed, {unavailable} not evaluated for missing input");
    if failed > 0 || (strict && unavailable > 0) {
        std::process::exit(1);
    }
}
