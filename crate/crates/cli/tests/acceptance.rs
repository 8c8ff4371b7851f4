//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use exact_elbow::kmeans::lloyd_run;
use exact_elbow::report::Status;
use exact_elbow::{
    exhaustive_optimal_sse, is_valid_corner, lloyd_fit, read_report, select_elbow, tangent,
    Dataset, Error, RunConfig, SseCurve,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLE_CSV: &str = "1,1\n1.5,1.8\n5,8\n8,8\n10,0.6\n9,11\n0,1\n3,4\n";

/// Elbow and its tangent for the sample points on the exact (exhaustive) curve.
const GOLDEN_ORACLE_ELBOW: usize = 6;
const GOLDEN_ORACLE_TANGENT: f64 = -0.5434400756654506;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 sample replication", sample_replication),
        ("2 formula exactness", formula_exactness),
        ("3 validity rule", validity_rule),
        ("4 translation invariance", translation_invariance),
        ("5 sentinel equivalence", sentinel_equivalence),
        ("6 k-means correctness", kmeans_correctness),
        ("7 determinism", determinism),
        ("8 degenerate handling", degenerate_handling),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($fmt)+));
        }
    };
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_exact-elbow"))
}

fn write_csv(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run_cli(input: &Path, out: &Path, extra: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let output = binary()
        .arg("--input")
        .arg(input)
        .arg("--report")
        .arg(out.join("report.json"))
        .arg("--plot-dir")
        .arg(out.join("plots"))
        .arg("--quiet")
        .args(extra)
        .output()
        .expect("binary runs");
    (output, start.elapsed())
}

fn tangent_by_formula(v: &[f64], k: usize) -> f64 {
    let (prev, cur, next) = (v[k - 2], v[k - 1], v[k]);
    (-next + 2.0 * cur - prev) / (1.0 + (cur - prev) * (next - cur))
}

/// 1000 strictly decreasing curves of length 5..=30 with SSE-like magnitudes.
fn curve_corpus(seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..1000)
        .map(|_| {
            let len = rng.random_range(5..=30);
            let mut v = vec![rng.random_range(1e2..1e5)];
            for _ in 1..len {
                let last = *v.last().unwrap();
                let drop = last * rng.random_range(0.01..0.9);
                v.push(last - drop);
            }
            v
        })
        .collect()
}

fn sample_replication() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "sample.csv", SAMPLE_CSV);
    let mut hits = 0;
    let mut slowest = Duration::ZERO;
    let mut picks = Vec::new();
    for seed in 0..20u64 {
        let out = dir.path().join(format!("seed{seed}"));
        let seed_arg = seed.to_string();
        let (output, took) = run_cli(
            &input,
            &out,
            &["--restarts", "10", "--max-iter", "300", "--seed", &seed_arg],
        );
        ensure!(output.status.success(), "seed {seed} failed: {output:?}");
        slowest = slowest.max(took);
        let report = read_report(out.join("report.json")).map_err(|e| e.to_string())?;
        let k = report.elbow_k.unwrap();
        picks.push(k);
        if k == 6 {
            hits += 1;
        }
    }
    ensure!(hits >= 18, "only {hits}/20 seeds chose k = 6: {picks:?}");

    let mut oracle_picks = Vec::new();
    for seed in [0u64, 1, 2] {
        let out = dir.path().join(format!("oracle{seed}"));
        let seed_arg = seed.to_string();
        let (output, took) = run_cli(&input, &out, &["--oracle", "--seed", &seed_arg]);
        ensure!(output.status.success(), "oracle run failed: {output:?}");
        slowest = slowest.max(took);
        let report = read_report(out.join("report.json")).map_err(|e| e.to_string())?;
        oracle_picks.push((report.elbow_k.unwrap(), report.elbow_tangent.unwrap()));
    }
    for &(k, t) in &oracle_picks {
        ensure!(
            k == GOLDEN_ORACLE_ELBOW && (t - GOLDEN_ORACLE_TANGENT).abs() <= 1e-12,
            "oracle picked {k} (tan {t}), golden is {GOLDEN_ORACLE_ELBOW} ({GOLDEN_ORACLE_TANGENT})"
        );
    }
    ensure!(
        slowest < Duration::from_secs(5),
        "slowest run took {slowest:?}"
    );
    Ok(format!(
        "{hits}/20 seeds chose k = 6; oracle k = {GOLDEN_ORACLE_ELBOW}; slowest run {slowest:.2?}"
    ))
}

fn formula_exactness() -> Check {
    let cases: [(&[f64], usize, f64); 3] = [
        (&[100.0, 50.0, 48.0, 47.0], 2, -48.0 / 101.0),
        (&[100.0, 50.0, 48.0, 47.0], 3, -1.0 / 3.0),
        (&[100.0, 90.0, 80.0, 20.0, 10.0], 4, -50.0 / 601.0),
    ];
    let mut worst: f64 = 0.0;
    for (values, k, expected) in cases {
        let curve = SseCurve::new(values.to_vec()).unwrap();
        let t = tangent(&curve, k).map_err(|e| e.to_string())?;
        let brute = tangent_by_formula(values, k);
        let err = (t - brute).abs().max((t - expected).abs());
        worst = worst.max(err);
        ensure!(err <= 1e-12, "{values:?} k={k}: {t} vs formula {brute}");
    }
    Ok(format!("max deviation {worst:.1e} (tolerance 1e-12)"))
}

fn validity_rule() -> Check {
    let mut corners = 0;
    let mut valid = 0;
    for v in curve_corpus(3) {
        let curve = SseCurve::new(v.clone()).unwrap();
        for k in 2..v.len() {
            corners += 1;
            let bigger_drop_follows = v[k - 1] - v[k] >= v[k - 2] - v[k - 1];
            let ok = is_valid_corner(&curve, k).unwrap();
            ensure!(ok == !bigger_drop_follows, "disagreement at k={k} on {v:?}");
            if ok {
                valid += 1;
                let t = tangent(&curve, k).unwrap();
                ensure!(t < 0.0, "valid corner with tan {t} at k={k} on {v:?}");
            }
        }
    }
    Ok(format!("{corners} corners agree, {valid} valid corners all negative"))
}

/// Rounds to a multiple of 2^-20. Curve values and shifts on this grid stay
/// below 2^21 in magnitude, so every `v + c` is exact in f64.
fn on_grid(x: f64) -> f64 {
    const SCALE: f64 = (1u64 << 20) as f64;
    (x * SCALE).round() / SCALE
}

fn translation_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    let mut worst_unrounded: f64 = 0.0;
    for v in curve_corpus(4) {
        let c_real = rng.random_range(-1e6..=1e6);
        let c = on_grid(c_real);
        let curve = SseCurve::new(v.iter().copied().map(on_grid).collect()).unwrap();
        let shifted = curve.shifted(c).unwrap();
        for k in 2..curve.k_max() {
            let a = tangent(&curve, k).unwrap();
            let b = tangent(&shifted, k).unwrap();
            let rel = (a - b).abs() / a.abs().max(f64::MIN_POSITIVE);
            worst = worst.max(rel);
            ensure!(rel <= 1e-9, "tan changed by {rel:.2e} at k={k}, c={c}");
        }
        let ka = select_elbow(&curve).map(|r| r.elbow_k).ok();
        let kb = select_elbow(&shifted).map(|r| r.elbow_k).ok();
        ensure!(ka == kb, "elbow moved from {ka:?} to {kb:?} under c={c}");

        // informational: off-grid shifts lose low bits of small SSE values in `v + c`
        let raw = SseCurve::new(v).unwrap();
        let raw_shifted = raw.shifted(c_real).unwrap();
        for k in 2..raw.k_max() {
            let a = tangent(&raw, k).unwrap();
            let b = tangent(&raw_shifted, k).unwrap();
            worst_unrounded = worst_unrounded.max((a - b).abs() / a.abs().max(f64::MIN_POSITIVE));
        }
    }
    Ok(format!(
        "1000 curves, max relative tangent change {worst:.1e}; \
         (off-grid shifts, input rounding only: {worst_unrounded:.1e})"
    ))
}

fn sentinel_equivalence() -> Check {
    let mut compared = 0;
    for v in curve_corpus(3) {
        let curve = SseCurve::new(v.clone()).unwrap();
        let Ok(report) = select_elbow(&curve) else {
            continue;
        };
        let mut sentinel = vec![0.0];
        for k in 2..v.len() {
            let s1 = v[k - 1] - v[k - 2];
            let s2 = v[k] - v[k - 1];
            sentinel.push(if s2 <= s1 {
                0.0
            } else {
                (s1 - s2) / (1.0 + s2 * s1)
            });
        }
        sentinel.push(0.0);
        let min = sentinel.iter().copied().fold(f64::INFINITY, f64::min);
        let k = sentinel.iter().position(|&t| t == min).unwrap() + 1;
        ensure!(k == report.elbow_k, "sentinel {k} vs mask {} on {v:?}", report.elbow_k);
        compared += 1;
    }
    Ok(format!("{compared} curves with a valid corner agree"))
}

fn random_dataset(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Dataset {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..p).map(|_| rng.random_range(-100.0..100.0)).collect())
        .collect();
    Dataset::from_rows(&rows).unwrap()
}

fn kmeans_correctness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut runs = 0;
    for _ in 0..100 {
        let n = rng.random_range(1..=200);
        let p = rng.random_range(1..=5);
        let ds = random_dataset(&mut rng, n, p);
        let k = rng.random_range(1..=ds.distinct_count().min(12));
        let cfg = RunConfig {
            seed: rng.random(),
            ..RunConfig::default()
        };
        for r in 0..cfg.restarts {
            let run = lloyd_run(&ds, k, &cfg, r).map_err(|e| e.to_string())?;
            for w in run.sse_history.windows(2) {
                ensure!(
                    w[1] <= w[0] * (1.0 + 1e-9),
                    "SSE rose {} -> {} (n={n}, p={p}, k={k})",
                    w[0],
                    w[1]
                );
            }
            runs += 1;
        }
    }

    let cfg = RunConfig {
        restarts: 50,
        ..RunConfig::default()
    };
    let mut datasets = vec![exact_elbow::sample::sample_dataset()];
    for _ in 0..30 {
        let n = rng.random_range(1..=8);
        let p = rng.random_range(1..=3);
        datasets.push(random_dataset(&mut rng, n, p));
    }
    let mut compared = 0;
    for ds in &datasets {
        let floor = 1e-12 * ds.total_sum_of_squares();
        for k in 1..=ds.distinct_count() {
            let fit = lloyd_fit(ds, k, &cfg).map_err(|e| e.to_string())?.sse;
            let opt = exhaustive_optimal_sse(ds, k).map_err(|e| e.to_string())?;
            ensure!(
                (fit - opt).abs() <= 1e-6 * opt + floor,
                "n={} k={k}: Lloyd {fit} vs optimum {opt}",
                ds.len()
            );
            compared += 1;
        }
    }
    Ok(format!(
        "{runs} Lloyd runs monotone; {compared} (dataset, k) pairs match the exhaustive optimum"
    ))
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let input = write_csv(dir.path(), "sample.csv", SAMPLE_CSV);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let s = dir.path().join("seq");
    for (out, extra) in [(&a, &[][..]), (&b, &[][..]), (&s, &["--sequential"][..])] {
        let (output, _) = run_cli(&input, out, extra);
        ensure!(output.status.success(), "run failed: {output:?}");
    }
    let files = ["report.json", "plots/sse_raw.svg", "plots/sse_equal_axis.svg"];
    for f in files {
        let first = std::fs::read(a.join(f)).unwrap();
        ensure!(first == std::fs::read(b.join(f)).unwrap(), "{f} differs between runs");
        ensure!(
            first == std::fs::read(s.join(f)).unwrap(),
            "{f} differs between parallel and sequential sweeps"
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ds = random_dataset(&mut rng, 150, 3);
    let mut cfg = exact_elbow::PipelineConfig::new("unused");
    cfg.k_max = Some(20);
    cfg.parallel = true;
    let par = exact_elbow::build_sse_curve(&ds, &cfg).map_err(|e| e.to_string())?;
    cfg.parallel = false;
    let seq = exact_elbow::build_sse_curve(&ds, &cfg).map_err(|e| e.to_string())?;
    let same_bits = par
        .values()
        .iter()
        .zip(seq.values())
        .all(|(x, y)| x.to_bits() == y.to_bits());
    ensure!(same_bits, "parallel and sequential curves differ");
    Ok("reports and SVGs byte-identical; parallel sweep bit-identical to sequential".into())
}

fn degenerate_handling() -> Check {
    let dir = tempfile::tempdir().unwrap();

    let same = write_csv(dir.path(), "same.csv", &"2.5,-1\n".repeat(6));
    let (output, _) = run_cli(&same, &dir.path().join("same"), &[]);
    let stderr = String::from_utf8_lossy(&output.stderr);
    ensure!(
        output.status.code() == Some(3),
        "identical points exited with {:?}",
        output.status.code()
    );
    ensure!(stderr.contains("degenerate"), "message was {stderr:?}");

    // Three weighted sites whose pairwise merge costs are all equal: SSE = 300, 150, 0.
    let linear = write_csv(
        dir.path(),
        "linear.csv",
        "0,0\n0,0\n0,0\n10,0\n10,0\n10,0\n5,10\n5,10\n",
    );
    let out = dir.path().join("linear");
    let (output, _) = run_cli(&linear, &out, &[]);
    ensure!(
        output.status.code() == Some(4),
        "linear curve exited with {:?}: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    let report = read_report(out.join("report.json")).map_err(|e| e.to_string())?;
    ensure!(report.status == Status::NoValidElbow, "status {:?}", report.status);
    ensure!(
        report.curve.raw == vec![300.0, 150.0, 0.0],
        "curve {:?}",
        report.curve.raw
    );
    ensure!(report.tangents.valid == vec![false], "mask {:?}", report.tangents.valid);

    // the library reports the same condition as a typed error
    let curve = SseCurve::new(report.curve.raw.clone()).unwrap();
    ensure!(
        matches!(select_elbow(&curve), Err(Error::NoValidElbow { .. })),
        "library did not raise NoValidElbow"
    );
    Ok("identical points -> exit 3; linear curve -> exit 4 with diagnostic report".into())
}
