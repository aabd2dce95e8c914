//! Every acceptance check at its fixed parameters. Output tables contain
//! results only (no timings), so reruns with the same seed are byte-identical.

use std::io::Write;
use std::time::Instant;

use anyhow::Result;
use clap::Args;
use rand::Rng;
use stpetersburg::fracdim::{box_dimension_estimate, dyadic_radii, sojourn_bound_experiment, PointSet};
use stpetersburg::game::{semi_selfsimilarity_samples, KS_ALPHA};
use stpetersburg::ifs::{
    affinity_dimension, chaos_game, hausdorff_lower_bound_dim, invariance_residual, l_power, singular_values,
    singular_values_closed_form, PowerSign, SHEAR,
};
use stpetersburg::output::csv::{self, num};
use stpetersburg::rng::replica_rng;
use stpetersburg::spatial::hausdorff_distance;
use stpetersburg::stats::{ks_critical_value, ks_two_sample, median};
use stpetersburg::steinhaus::{dyadic_grid, f_value, max_identity_residual, xi, xi_left_limit};
use stpetersburg::{Dyadic, Gamma};

use super::boxdim::{path_reports, Target};
use crate::report::{Check, OutputArgs};

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

type Criterion = fn(&OutputArgs, u64) -> Result<Check>;

const CRITERIA: [(&str, Criterion); 11] = [
    ("C1 steinhaus identity", identity),
    ("C2 endpoint values", endpoints),
    ("C3 self-affinity of f", self_affinity),
    ("C4 singular values", singular_pairs),
    ("C5 series thresholds", thresholds),
    ("C6 attractor box dimension", attractor_dimension),
    ("C7 attractor consistency", attractor_consistency),
    ("C8 Y-graph dimension", graph_dimension),
    ("C9 Y-range dimension", range_dimension),
    ("C10 sojourn bound", sojourn),
    ("C11 semi-selfsimilarity", self_similarity),
];

pub fn run(args: &CheckArgs) -> Result<Vec<Check>> {
    let mut checks = Vec::with_capacity(CRITERIA.len());
    for (k, (name, criterion)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let mut check = criterion(&args.output, args.seed.wrapping_add(k as u64))?;
        check.name = name.to_string();
        log::info!("{name}: {:.2?}", start.elapsed());
        checks.push(check);
    }
    Ok(checks)
}

fn identity(out: &OutputArgs, _: u64) -> Result<Check> {
    let n_max = 1 << 16;
    let (residual, argmax) = max_identity_residual(n_max)?;
    out.write("c01_identity.csv", |w| {
        writeln!(w, "n_max,max_residual,argmax")?;
        writeln!(w, "{n_max},{},{argmax}", num(residual))
    })?;
    Ok(Check::new("", residual <= 1e-9, format!("max residual {residual:.3e} (limit 1e-9)")))
}

fn endpoints(out: &OutputArgs, _: u64) -> Result<Check> {
    let at_half = xi(Dyadic::HALF)?;
    let at_one = xi(Dyadic::ONE)?;
    let left_of_one = xi_left_limit(Dyadic::ONE)?;
    out.write("c02_endpoints.csv", |w| {
        writeln!(w, "gamma,xi,xi_left")?;
        writeln!(w, "{},{},", num(0.5), num(at_half))?;
        writeln!(w, "{},{},{}", num(1.0), num(at_one), num(left_of_one))
    })?;
    Ok(Check::new(
        "",
        at_half == 2.0 && at_one == 2.0 && left_of_one.abs() <= 1e-12,
        format!("xi(1/2) = {at_half}, xi(1) = {at_one}, xi(1-) = {left_of_one:.3e}"),
    ))
}

/// `|f(g/2 + 1/2) - h|` and `|f(g/2 + 1/4) - h|` with `h = (1 - g + f(g))/2`.
pub fn self_affinity_residuals(g: Gamma) -> stpetersburg::Result<(f64, f64)> {
    let (upper, lower) = match g {
        Gamma::Exact(d) => {
            let half = d.half()?;
            (
                Gamma::Exact(half.checked_add(Dyadic::HALF)?),
                Gamma::Exact(half.checked_add(Dyadic::QUARTER)?),
            )
        }
        Gamma::Approx(x) => (Gamma::Approx(x / 2.0 + 0.5), Gamma::Approx(x / 2.0 + 0.25)),
    };
    let h = (1.0 - g.value() + f_value(g)?) / 2.0;
    Ok(((f_value(upper)? - h).abs(), (f_value(lower)? - h).abs()))
}

fn self_affinity(out: &OutputArgs, seed: u64) -> Result<Check> {
    let mut rng = replica_rng(seed, 0);
    // 52 fraction bits, so that g/2 + 1/2 and g/2 + 1/4 are exact doubles.
    let random: Vec<Gamma> = (0..10_000)
        .map(|_| Gamma::Approx(((1u64 << 51) + rng.random_range(0..1u64 << 51)) as f64 * 2f64.powi(-52)))
        .collect();
    let mut dyadic = Vec::new();
    for depth in 1..=12 {
        dyadic.extend(dyadic_grid(depth)?.into_iter().filter(|g| *g < Dyadic::ONE).map(Gamma::Exact));
    }
    let worst = |set: &[Gamma]| -> stpetersburg::Result<(f64, f64)> {
        set.iter().try_fold((0.0f64, 0.0f64), |(a, b), &g| {
            let (u, l) = self_affinity_residuals(g)?;
            Ok((a.max(u), b.max(l)))
        })
    };
    let (ru, rl) = worst(&random)?;
    let (du, dl) = worst(&dyadic)?;
    out.write("c03_self_affinity.csv", |w| {
        writeln!(w, "set,count,max_residual_upper,max_residual_lower")?;
        writeln!(w, "random,{},{},{}", random.len(), num(ru), num(rl))?;
        writeln!(w, "dyadic,{},{},{}", dyadic.len(), num(du), num(dl))
    })?;
    let worst_all = ru.max(rl).max(du).max(dl);
    Ok(Check::new("", worst_all <= 1e-12, format!("max residual {worst_all:.3e} (limit 1e-12)")))
}

fn singular_pairs(out: &OutputArgs, _: u64) -> Result<Check> {
    let mut rows = Vec::new();
    for r in 1..=30u32 {
        let closed = singular_values_closed_form(r, PowerSign::Positive);
        let numeric = singular_values(&SHEAR.iterated_power(r))?;
        let beta = singular_values_closed_form(r, PowerSign::Negative);
        let beta_numeric = singular_values(&l_power(r, PowerSign::Negative))?;
        let dev = [
            (closed.alpha1 - numeric.alpha1) / numeric.alpha1,
            (closed.alpha2 - numeric.alpha2) / numeric.alpha2,
            (beta.alpha1 - beta_numeric.alpha1) / beta_numeric.alpha1,
            (beta.alpha2 - beta_numeric.alpha2) / beta_numeric.alpha2,
        ]
        .iter()
        .fold(0.0f64, |m, d| m.max(d.abs()));
        let four_r = 4f64.powi(-(r as i32));
        let product = ((closed.product() - four_r) / four_r).abs();
        rows.push((r, closed, dev, product));
    }
    out.write("c04_singular_values.csv", |w| {
        writeln!(w, "r,alpha1,alpha2,max_rel_dev,product_rel_dev")?;
        for (r, p, dev, product) in &rows {
            writeln!(w, "{r},{},{},{},{}", num(p.alpha1), num(p.alpha2), num(*dev), num(*product))?;
        }
        Ok(())
    })?;
    let dev = rows.iter().fold(0.0f64, |m, r| m.max(r.2));
    let product = rows.iter().fold(0.0f64, |m, r| m.max(r.3));
    Ok(Check::new(
        "",
        dev <= 1e-12 && product <= 1e-13,
        format!("closed form vs eigensolve {dev:.3e} (limit 1e-12), product {product:.3e} (limit 1e-13)"),
    ))
}

fn thresholds(out: &OutputArgs, _: u64) -> Result<Check> {
    let upper = affinity_dimension(60, 1e-3)?;
    let lower = hausdorff_lower_bound_dim(60, 1e-3)?;
    out.write("c05_dimensions.csv", |w| {
        writeln!(w, "series,truncation,value")?;
        writeln!(w, "affinity,60,{}", num(upper.value))?;
        writeln!(w, "lower_bound,60,{}", num(lower.value))
    })?;
    let ok = (upper.value - 1.0).abs() <= 0.01 && (lower.value - 1.0).abs() <= 0.01;
    Ok(Check::new(
        "",
        ok,
        format!("affinity {:.5}, lower bound {:.5} (expected 1 +- 0.01)", upper.value, lower.value),
    ))
}

fn attractor_dimension(out: &OutputArgs, seed: u64) -> Result<Check> {
    let cloud = chaos_game(1_000_000, seed);
    let report = box_dimension_estimate(&PointSet::Plane(cloud.points().to_vec()), 4, 10)?;
    out.write("c06_attractor_boxcount.csv", |w| csv::write_box_counts(w, &report))?;
    Ok(Check::new(
        "",
        (0.90..=1.10).contains(&report.slope) && report.r_squared >= 0.99,
        format!(
            "slope {:.4} (accepted [0.90, 1.10]), R^2 {:.5} (required >= 0.99)",
            report.slope, report.r_squared
        ),
    ))
}

fn attractor_consistency(out: &OutputArgs, seed: u64) -> Result<Check> {
    let cloud = chaos_game(1_000_000, seed);
    let analytic = dyadic_grid(16)?
        .into_iter()
        .filter(|g| *g < Dyadic::ONE)
        .map(|g| Ok([g.to_f64(), f_value(g)?]))
        .collect::<stpetersburg::Result<Vec<_>>>()?;
    let distance = hausdorff_distance(cloud.points(), &analytic)?;
    let invariance = invariance_residual(&cloud)?;
    out.write("c07_attractor_consistency.csv", |w| {
        writeln!(w, "hausdorff,separation,invariance_residual")?;
        writeln!(w, "{},{},{}", num(distance), num(invariance.separation), num(invariance.residual))
    })?;
    Ok(Check::new(
        "",
        distance <= 2f64.powi(-10) && invariance.separation > 0.0,
        format!(
            "Hausdorff distance {distance:.3e} (limit 2^-10), separation {:.4}",
            invariance.separation
        ),
    ))
}

fn path_dimension(out: &OutputArgs, seed: u64, target: Target, file: &str, range: (f64, f64)) -> Result<Check> {
    let reports = path_reports(target, 20, 8, seed, (4, 10))?;
    out.write(file, |w| {
        writeln!(w, "replica,slope,r_squared")?;
        for (i, r) in reports.iter().enumerate() {
            writeln!(w, "{i},{},{}", num(r.slope), num(r.r_squared))?;
        }
        Ok(())
    })?;
    let slope = median(&reports.iter().map(|r| r.slope).collect::<Vec<_>>());
    Ok(Check::new(
        "",
        (range.0..=range.1).contains(&slope),
        format!("median slope {slope:.4} (accepted [{}, {}])", range.0, range.1),
    ))
}

fn graph_dimension(out: &OutputArgs, seed: u64) -> Result<Check> {
    path_dimension(out, seed, Target::YGraph, "c08_graph_slopes.csv", (0.80, 1.20))
}

fn range_dimension(out: &OutputArgs, seed: u64) -> Result<Check> {
    path_dimension(out, seed, Target::YRange, "c09_range_slopes.csv", (0.80, 1.15))
}

fn sojourn(out: &OutputArgs, seed: u64) -> Result<Check> {
    let estimates = sojourn_bound_experiment(14, 500, &dyadic_radii(6), seed)?;
    out.write("c10_sojourn.csv", |w| csv::write_sojourn(w, &estimates))?;
    let ratios: Vec<f64> = estimates.iter().map(|e| e.ratio()).collect();
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(0.0, f64::max);
    Ok(Check::new(
        "",
        min > 0.05 && max / min < 10.0,
        format!("min ratio {min:.4} (limit 0.05), spread {:.3} (limit 10)", max / min),
    ))
}

fn self_similarity(out: &OutputArgs, seed: u64) -> Result<Check> {
    let replicas = 2000;
    let (a, b) = semi_selfsimilarity_samples(14, replicas, seed)?;
    let statistic = ks_two_sample(&a, &b);
    let shifted: Vec<f64> = b.iter().map(|x| x + 1.0).collect();
    let control = ks_two_sample(&a, &shifted);
    let threshold = ks_critical_value(KS_ALPHA, replicas, replicas);
    out.write("c11_self_similarity.csv", |w| {
        writeln!(w, "statistic,control_statistic,threshold")?;
        writeln!(w, "{},{},{}", num(statistic), num(control), num(threshold))
    })?;
    Ok(Check::new(
        "",
        statistic < threshold && control > threshold,
        format!("KS {statistic:.4}, shifted control {control:.4}, threshold {threshold:.4}"),
    ))
}
