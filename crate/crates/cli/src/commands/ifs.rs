use std::io::Write;

use anyhow::Result;
use clap::Args;
use stpetersburg::ifs::{
    affinity_dimension, attractor_rectangles, chaos_game, hausdorff_lower_bound_dim, invariance_residual,
    SelfAffineSystem, SeriesKind,
};
use stpetersburg::output::{csv, svg};

use crate::report::{Check, OutputArgs};

#[derive(Debug, Args)]
pub struct IfsArgs {
    #[arg(long)]
    pub seed: u64,
    /// Chaos-game points.
    #[arg(long, default_value_t = 1_000_000)]
    pub points: usize,
    /// Series truncation R.
    #[arg(long, default_value_t = 60)]
    pub truncation: u32,
    /// Bisection tolerance for the series thresholds.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    /// Exponent s at which the series terms are audited.
    #[arg(long = "audit-s", default_value_t = 1.0)]
    pub audit_s: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: &IfsArgs) -> Result<Vec<Check>> {
    let out = &args.output;
    let affinity = affinity_dimension(args.truncation, args.tol)?;
    let lower = hausdorff_lower_bound_dim(args.truncation, args.tol)?;
    println!("affinity dimension: {:.6}", affinity.value);
    println!("lower-bound dimension: {:.6}", lower.value);

    let system = SelfAffineSystem::shear_pair();
    let upper_rows = system.audit(SeriesKind::Affinity, args.audit_s, args.truncation)?;
    let lower_rows = system.audit(SeriesKind::LowerBound, args.audit_s, args.truncation)?;
    out.write("series_affinity.csv", |w| csv::write_series(w, &upper_rows))?;
    out.write("series_lower_bound.csv", |w| csv::write_series(w, &lower_rows))?;
    out.write("dimensions.csv", |w| {
        writeln!(w, "series,truncation,value,bracket_lo,bracket_hi")?;
        for (name, t) in [("affinity", affinity), ("lower_bound", lower)] {
            writeln!(
                w,
                "{name},{},{},{},{}",
                t.truncation,
                csv::num(t.value),
                csv::num(t.bracket.0),
                csv::num(t.bracket.1)
            )?;
        }
        Ok(())
    })?;

    let cloud = chaos_game(args.points, args.seed);
    out.write("chaos_cloud.csv", |w| csv::write_points(w, cloud.points()))?;
    let invariance = invariance_residual(&cloud)?;
    println!("invariance residual: {:.3e}", invariance.residual);
    println!("image separation: {:.6}", invariance.separation);

    let generations = vec![attractor_rectangles(1)?, attractor_rectangles(2)?];
    if out.figures() {
        out.write_text(
            "rectangles.svg",
            &svg::parallelograms_figure(&generations, "seed rectangle, first and second iterates"),
        )?;
        out.write_text("chaos_cloud.svg", &svg::cloud_figure(cloud.points(), "chaos game"))?;
    }

    let inside = cloud
        .points()
        .iter()
        .all(|p| (0.5..=1.0).contains(&p[0]) && (0.0..=0.5).contains(&p[1]));
    Ok(vec![
        Check::new(
            "affinity-dimension",
            (affinity.value - 1.0).abs() <= 0.01,
            format!("{:.6}, expected 1 within 0.01", affinity.value),
        ),
        Check::new(
            "lower-bound-dimension",
            (lower.value - 1.0).abs() <= 0.01,
            format!("{:.6}, expected 1 within 0.01", lower.value),
        ),
        Check::new("cloud-in-seed-rectangle", inside, format!("{} points", cloud.len())),
        Check::new(
            "invariance",
            invariance.residual <= 2f64.powi(-9) && invariance.separation > 0.0,
            format!(
                "residual {:.3e} (limit 2^-9), separation {:.4}",
                invariance.residual, invariance.separation
            ),
        ),
    ])
}
