use std::io::Write;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use stpetersburg::fracdim::{box_dimension_estimate, graph_points, range_points, BoxCountReport, PointSet};
use stpetersburg::game::{y_path_approx, Block, CoinParams, GainPath};
use stpetersburg::ifs::chaos_game;
use stpetersburg::output::{csv, svg};
use stpetersburg::stats::median;

use crate::report::{Check, OutputArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Chaos-game cloud of the IFS attractor.
    Attractor,
    /// Graph {(t, Y(t))} of simulated block paths.
    YGraph,
    /// Range {Y(t)} of simulated block paths.
    YRange,
}

#[derive(Debug, Args)]
pub struct BoxdimArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Target::Attractor)]
    pub target: Target,
    /// Chaos-game points (attractor target).
    #[arg(long, default_value_t = 1_000_000)]
    pub points: usize,
    /// Block level (path targets).
    #[arg(long, default_value_t = 20)]
    pub m: u32,
    /// Independent paths (path targets).
    #[arg(long, default_value_t = 8)]
    pub replicas: usize,
    /// Coarsest scale 2^-jmin.
    #[arg(long, default_value_t = 4)]
    pub jmin: u32,
    /// Finest scale 2^-jmax.
    #[arg(long, default_value_t = 10)]
    pub jmax: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Slope window for each target.
pub fn accepted_range(target: Target) -> (f64, f64) {
    match target {
        Target::Attractor => (0.90, 1.10),
        Target::YGraph => (0.80, 1.20),
        Target::YRange => (0.80, 1.15),
    }
}

/// Box-count reports of `replicas` simulated fair Y-paths at level `m`.
pub fn path_reports(target: Target, m: u32, replicas: usize, seed: u64, window: (u32, u32)) -> Result<Vec<BoxCountReport>> {
    let block = Block::new(CoinParams::fair(), m)?;
    let reports = (0..replicas as u64)
        .into_par_iter()
        .map(|r| {
            let gains = GainPath::simulate_replica(block.last, CoinParams::fair(), seed, r)?;
            let path = y_path_approx(&gains, m)?;
            let points = match target {
                Target::YRange => range_points(&path),
                _ => graph_points(&path),
            };
            box_dimension_estimate(&points, window.0, window.1)
        })
        .collect::<stpetersburg::Result<Vec<_>>>()?;
    Ok(reports)
}

pub fn run(args: &BoxdimArgs) -> Result<Vec<Check>> {
    if args.replicas == 0 {
        bail!("at least one replica is needed");
    }
    let out = &args.output;
    let (lo, hi) = accepted_range(args.target);
    let window = (args.jmin, args.jmax);
    let reports = match args.target {
        Target::Attractor => {
            let cloud = chaos_game(args.points, args.seed);
            vec![box_dimension_estimate(&PointSet::Plane(cloud.points().to_vec()), window.0, window.1)?]
        }
        target => path_reports(target, args.m, args.replicas, args.seed, window)?,
    };
    for (i, r) in reports.iter().enumerate() {
        out.write(&format!("boxcount_{i}.csv"), |w| csv::write_box_counts(w, r))?;
    }
    out.write("slopes.csv", |w| {
        writeln!(w, "replica,slope,intercept,r_squared,slope_std_error")?;
        for (i, r) in reports.iter().enumerate() {
            writeln!(
                w,
                "{i},{},{},{},{}",
                csv::num(r.slope),
                csv::num(r.intercept),
                csv::num(r.r_squared),
                csv::num(r.slope_std_error)
            )?;
        }
        Ok(())
    })?;
    if out.figures() {
        let curves: Vec<Vec<(f64, f64)>> = reports
            .iter()
            .map(|r| r.js.iter().zip(&r.counts).map(|(&j, &n)| (j as f64, (n as f64).log2())).collect())
            .collect();
        let refs: Vec<&[(f64, f64)]> = curves.iter().map(|c| c.as_slice()).collect();
        out.write_text("boxcount.svg", &svg::paths_figure(&refs, "log2 N against j"))?;
    }

    let slopes: Vec<f64> = reports.iter().map(|r| r.slope).collect();
    let slope = median(&slopes);
    println!("box-counting slope: {slope:.4}");
    let mut checks = vec![Check::new(
        "slope",
        (lo..=hi).contains(&slope),
        format!("median slope {slope:.4}, accepted [{lo}, {hi}]"),
    )];
    if args.target == Target::Attractor {
        let r2 = reports[0].r_squared;
        checks.push(Check::new("r-squared", r2 >= 0.99, format!("{r2:.5}, required >= 0.99")));
    }
    Ok(checks)
}
