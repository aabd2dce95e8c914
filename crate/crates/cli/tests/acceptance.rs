//! Acceptance suite: every criterion at its stated parameters and tolerance,
//! one PASS/FAIL line each. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nalgebra::Matrix2;
use rand::Rng;
use stpetersburg::fracdim::{box_dimension_estimate, dyadic_radii, graph_points, range_points, sojourn_bound_experiment, PointSet};
use stpetersburg::game::{semi_selfsimilarity_samples, y_path_approx, CoinParams, GainPath};
use stpetersburg::ifs::{
    affinity_dimension, chaos_game, hausdorff_lower_bound_dim, invariance_residual, singular_values_closed_form,
    PowerSign,
};
use stpetersburg::rng::replica_rng;
use stpetersburg::spatial::hausdorff_distance;
use stpetersburg::stats::{ks_critical_value, ks_two_sample, median};
use stpetersburg::steinhaus::{dyadic_grid, f_value, gamma_of, xi, xi_left_limit};
use stpetersburg::{Dyadic, Gamma};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

type Criterion = fn() -> Outcome;

const SEED: u64 = 20_240_601;

fn c1_identity() -> Outcome {
    // s(n) by direct accumulation of x_n = 2 * (largest power of two dividing n).
    let mut s: u64 = 0;
    let mut worst = (0.0f64, 0u64);
    for n in 1..=1u64 << 16 {
        s += 2 * (n & n.wrapping_neg());
        let nf = n as f64;
        let lhs = s as f64 / nf - nf.log2();
        let r = (lhs - xi(gamma_of(n).unwrap()).unwrap()).abs();
        if r > worst.0 {
            worst = (r, n);
        }
    }
    outcome(worst.0 <= 1e-9, format!("max residual {:.3e} at n = {} (limit 1e-9)", worst.0, worst.1))
}

fn c2_endpoints() -> Outcome {
    let half = xi(Dyadic::HALF).unwrap();
    let one = xi(Dyadic::ONE).unwrap();
    let left = xi_left_limit(Dyadic::ONE).unwrap();
    outcome(
        half == 2.0 && one == 2.0 && left.abs() <= 1e-12,
        format!("xi(1/2) = {half}, xi(1) = {one}, xi(1-) = {left:e}"),
    )
}

fn lemma_residual(g: Gamma, upper: Gamma, lower: Gamma) -> f64 {
    let h = (1.0 - g.value() + f_value(g).unwrap()) / 2.0;
    (f_value(upper).unwrap() - h).abs().max((f_value(lower).unwrap() - h).abs())
}

fn c3_self_affinity() -> Outcome {
    let mut rng = replica_rng(SEED, 3);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        // 52 fraction bits keep both image points exactly representable.
        let g = ((1u64 << 51) + rng.random_range(0..1u64 << 51)) as f64 * 2f64.powi(-52);
        let r = lemma_residual(Gamma::Approx(g), Gamma::Approx(g / 2.0 + 0.5), Gamma::Approx(g / 2.0 + 0.25));
        worst = worst.max(r);
    }
    let mut count = 0;
    for depth in 1..=12 {
        for g in dyadic_grid(depth).unwrap().into_iter().filter(|g| *g < Dyadic::ONE) {
            let half = g.half().unwrap();
            let upper = half.checked_add(Dyadic::HALF).unwrap();
            let lower = half.checked_add(Dyadic::QUARTER).unwrap();
            worst = worst.max(lemma_residual(g.into(), upper.into(), lower.into()));
            count += 1;
        }
    }
    outcome(
        worst <= 1e-12,
        format!("max residual {worst:.3e} over 10000 random and {count} dyadic arguments (limit 1e-12)"),
    )
}

fn c4_singular_values() -> Outcome {
    let l = Matrix2::new(0.5, 0.0, -0.5, 0.5);
    let mut power = Matrix2::<f64>::identity();
    let (mut dev, mut product) = (0.0f64, 0.0f64);
    for r in 1..=30 {
        power *= l;
        let mut sv: Vec<f64> = power.svd(false, false).singular_values.iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        let closed = singular_values_closed_form(r, PowerSign::Positive);
        dev = dev
            .max(((closed.alpha1 - sv[0]) / sv[0]).abs())
            .max(((closed.alpha2 - sv[1]) / sv[1]).abs());
        let target = 4f64.powi(-(r as i32));
        product = product.max(((closed.alpha1 * closed.alpha2 - target) / target).abs());
    }
    outcome(
        dev <= 1e-12 && product <= 1e-13,
        format!("closed form vs SVD {dev:.3e} (limit 1e-12), product {product:.3e} (limit 1e-13)"),
    )
}

fn c5_thresholds() -> Outcome {
    let upper = affinity_dimension(60, 1e-3).unwrap().value;
    let lower = hausdorff_lower_bound_dim(60, 1e-3).unwrap().value;
    outcome(
        (upper - 1.0).abs() <= 0.01 && (lower - 1.0).abs() <= 0.01,
        format!("affinity {upper:.5}, lower bound {lower:.5} (expected 1 +- 0.01)"),
    )
}

fn c6_attractor_dimension() -> Outcome {
    let cloud = chaos_game(1_000_000, SEED);
    let report = box_dimension_estimate(&PointSet::Plane(cloud.points().to_vec()), 4, 10).unwrap();
    outcome(
        (0.90..=1.10).contains(&report.slope) && report.r_squared >= 0.99,
        format!(
            "slope {:.4} (accepted [0.90, 1.10]), R^2 {:.5}, counts {:?}",
            report.slope, report.r_squared, report.counts
        ),
    )
}

fn c7_attractor_consistency() -> Outcome {
    let cloud = chaos_game(1_000_000, SEED);
    let analytic: Vec<[f64; 2]> = dyadic_grid(16)
        .unwrap()
        .into_iter()
        .filter(|g| *g < Dyadic::ONE)
        .map(|g| [g.to_f64(), f_value(g).unwrap()])
        .collect();
    let distance = hausdorff_distance(cloud.points(), &analytic).unwrap();
    let separation = invariance_residual(&cloud).unwrap().separation;
    outcome(
        distance <= 2f64.powi(-10) && separation > 0.0,
        format!("Hausdorff distance {distance:.3e} (limit 2^-10), separation {separation:.4}"),
    )
}

fn path_slopes(range: bool) -> Vec<f64> {
    (0..8)
        .map(|r| {
            let gains = GainPath::simulate_replica(1 << 20, CoinParams::fair(), SEED + 8, r).unwrap();
            let path = y_path_approx(&gains, 20).unwrap();
            let points = if range { range_points(&path) } else { graph_points(&path) };
            box_dimension_estimate(&points, 4, 10).unwrap().slope
        })
        .collect()
}

fn c8_graph_dimension() -> Outcome {
    let slope = median(&path_slopes(false));
    outcome((0.80..=1.20).contains(&slope), format!("median slope {slope:.4} (accepted [0.80, 1.20])"))
}

fn c9_range_dimension() -> Outcome {
    let slope = median(&path_slopes(true));
    outcome((0.80..=1.15).contains(&slope), format!("median slope {slope:.4} (accepted [0.80, 1.15])"))
}

fn c10_sojourn() -> Outcome {
    let estimates = sojourn_bound_experiment(14, 500, &dyadic_radii(6), SEED).unwrap();
    let ratios: Vec<f64> = estimates.iter().map(|e| e.mean_time / e.a).collect();
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(0.0, f64::max);
    outcome(
        min > 0.05 && max / min < 10.0,
        format!("min ratio {min:.4} (limit 0.05), spread {:.3} (limit 10)", max / min),
    )
}

fn c11_self_similarity() -> Outcome {
    let (a, b) = semi_selfsimilarity_samples(14, 2000, SEED).unwrap();
    let threshold = ks_critical_value(0.01, a.len(), b.len());
    let statistic = ks_two_sample(&a, &b);
    let shifted: Vec<f64> = b.iter().map(|x| x + 1.0).collect();
    let control = ks_two_sample(&a, &shifted);
    outcome(
        statistic < threshold && control > threshold,
        format!("KS {statistic:.4}, shifted control {control:.4}, threshold {threshold:.4}"),
    )
}

fn csv_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect()
}

fn c12_determinism() -> Outcome {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        // The exit status reflects the other criteria; only the files matter here.
        let status = Command::new(env!("CARGO_BIN_EXE_stpetersburg"))
            .args(["check", "--seed", &SEED.to_string(), "--out"])
            .arg(dir.path())
            .output()
            .unwrap()
            .status;
        if status.code() == Some(2) || status.code().is_none() {
            return outcome(false, format!("check did not run: {status}"));
        }
    }
    let (a, b) = (csv_files(dirs[0].path()), csv_files(dirs[1].path()));
    outcome(
        !a.is_empty() && a == b,
        format!("{} CSV files, identical: {}", a.len(), a == b),
    )
}

const CRITERIA: [(&str, Criterion, u64); 12] = [
    ("C1 steinhaus identity", c1_identity, 5),
    ("C2 endpoint values", c2_endpoints, 1),
    ("C3 self-affinity of f", c3_self_affinity, 2),
    ("C4 singular values", c4_singular_values, 1),
    ("C5 series thresholds", c5_thresholds, 1),
    ("C6 attractor box dimension", c6_attractor_dimension, 30),
    ("C7 attractor consistency", c7_attractor_consistency, 60),
    ("C8 Y-graph dimension", c8_graph_dimension, 60),
    ("C9 Y-range dimension", c9_range_dimension, 60),
    ("C10 sojourn bound", c10_sojourn, 120),
    ("C11 semi-selfsimilarity", c11_self_similarity, 60),
    ("C12 determinism", c12_determinism, 360),
];

fn main() -> ExitCode {
    let suite = Instant::now();
    let mut failed = Vec::new();
    for (name, criterion, budget) in CRITERIA {
        let start = Instant::now();
        let result = criterion();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let passed = result.passed && in_time;
        let tag = if passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {name}: {} [{:.2} s, budget {budget} s]",
            result.detail,
            elapsed.as_secs_f64()
        );
        if !passed {
            failed.push(name);
        }
    }
    println!("acceptance suite: {:.1} s", suite.elapsed().as_secs_f64());
    if failed.is_empty() {
        println!("all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("failed: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
