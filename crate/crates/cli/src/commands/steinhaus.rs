use anyhow::{bail, Result};
use clap::Args;
use stpetersburg::output::{csv, svg};
use stpetersburg::steinhaus::{dyadic_grid, f_value, max_identity_residual, xi_point, XiPoint};
use stpetersburg::Dyadic;

use crate::report::{Check, OutputArgs};

/// Deepest grid the command will evaluate.
pub const MAX_DEPTH: u32 = 24;

#[derive(Debug, Args)]
pub struct SteinhausArgs {
    /// Grid of all j 2^-depth in [1/2, 1].
    #[arg(long, default_value_t = 14)]
    pub depth: u32,
    /// Sweep the identity for n = 1..=N.
    #[arg(long = "residual-n", default_value_t = 1 << 16)]
    pub residual_n: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: &SteinhausArgs) -> Result<Vec<Check>> {
    if args.depth > MAX_DEPTH {
        bail!("grid depth {} exceeds the cap of {MAX_DEPTH}", args.depth);
    }
    let grid = dyadic_grid(args.depth)?;
    let points = grid.iter().map(|&g| xi_point(g)).collect::<stpetersburg::Result<Vec<XiPoint>>>()?;
    let image = grid
        .iter()
        .filter(|g| **g < Dyadic::ONE)
        .map(|&g| Ok([g.to_f64(), f_value(g)?]))
        .collect::<stpetersburg::Result<Vec<[f64; 2]>>>()?;
    let (residual, argmax) = max_identity_residual(args.residual_n)?;

    let out = &args.output;
    out.write("xi.csv", |w| csv::write_xi_points(w, &points))?;
    out.write("f_image.csv", |w| csv::write_points(w, &image))?;
    out.write("identity_residual.csv", |w| {
        use std::io::Write;
        writeln!(w, "n_max,max_residual,argmax")?;
        writeln!(w, "{},{},{}", args.residual_n, csv::num(residual), argmax)
    })?;
    if out.figures() {
        let steps: Vec<(f64, f64)> = points
            .iter()
            .flat_map(|p| {
                let g = p.gamma.value();
                p.left_value.map(|l| (g, l)).into_iter().chain([(g, p.value)])
            })
            .collect();
        let title = format!("xi on the depth-{} dyadic grid", args.depth);
        out.write_text("xi.svg", &svg::paths_figure(&[&steps], &title))?;
        out.write_text("f_image.svg", &svg::cloud_figure(&image, "graph of f = image of the graph of xi"))?;
    }

    let ends = [points.first(), points.last()].map(|p| p.map(|p| p.value));
    let upward = points.iter().all(|p| p.left_value.is_none_or(|l| p.value > l));
    Ok(vec![
        Check::new(
            "identity-residual",
            residual <= 1e-9,
            format!("max over n <= {} is {residual:.3e} at n = {argmax}", args.residual_n),
        ),
        Check::new(
            "endpoints",
            ends == [Some(2.0), Some(2.0)],
            format!("xi(1/2) = {:?}, xi(1) = {:?}", ends[0], ends[1]),
        ),
        Check::new("upward-jumps", upward, "xi(g) > xi(g-) at every grid point".to_string()),
    ])
}
