use anyhow::Result;
use clap::Args;
use stpetersburg::fracdim::{dyadic_radii, sojourn_bound_experiment};
use stpetersburg::output::{csv, svg};

use crate::report::{Check, OutputArgs};

#[derive(Debug, Args)]
pub struct SojournArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 14)]
    pub m: u32,
    #[arg(long, default_value_t = 500)]
    pub replicas: usize,
    /// Radii 2^-1, ..., 2^-radii.
    #[arg(long, default_value_t = 6)]
    pub radii: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: &SojournArgs) -> Result<Vec<Check>> {
    let estimates = sojourn_bound_experiment(args.m, args.replicas, &dyadic_radii(args.radii), args.seed)?;
    let out = &args.output;
    out.write("sojourn.csv", |w| csv::write_sojourn(w, &estimates))?;
    if out.figures() {
        let ratios: Vec<(f64, f64)> = estimates.iter().rev().map(|e| (e.a.log2(), e.ratio())).collect();
        out.write_text("sojourn.svg", &svg::paths_figure(&[&ratios], "E[T(a, 1)] / a against log2 a"))?;
    }
    let ratios: Vec<f64> = estimates.iter().map(|e| e.ratio()).collect();
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(0.0, f64::max);
    println!("min ratio: {min:.4}");
    println!("max ratio: {max:.4}");
    let monotone = estimates.windows(2).all(|w| w[0].mean_time >= w[1].mean_time);
    let bounded = estimates.iter().all(|e| e.mean_time <= e.s);
    Ok(vec![
        Check::new("ratio-positive", min > 0.0, format!("min E[T(a,1)]/a = {min:.4}")),
        Check::new("monotone-in-a", monotone, "mean sojourn time grows with the radius"),
        Check::new("within-horizon", bounded, "mean sojourn time at most 1"),
    ])
}
