use anyhow::Result;
use clap::Args;
use stpetersburg::game::{simulate_replicas, x_path_approx, y_path_approx, Block, CoinParams};
use stpetersburg::output::{csv, svg};

use crate::report::{Check, OutputArgs};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub seed: u64,
    /// Block level: paths use games k in (b^(m-1), b^m] with b = 1/q.
    #[arg(long, default_value_t = 16)]
    pub m: u32,
    #[arg(long, default_value_t = 4)]
    pub replicas: usize,
    /// Probability of heads.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Also write the partial sums S_k.
    #[arg(long)]
    pub sums: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: &SimulateArgs) -> Result<Vec<Check>> {
    let params = CoinParams::new(args.p)?;
    let block = Block::new(params, args.m)?;
    let paths = simulate_replicas(block.last, params, args.seed, args.replicas)?;
    let out = &args.output;

    let mut ys = Vec::with_capacity(paths.len());
    let mut worst_identity = 0.0f64;
    let mut exact_ok = true;
    for (i, gains) in paths.iter().enumerate() {
        let y = y_path_approx(gains, args.m)?;
        let x = x_path_approx(gains, args.m, false)?;
        for (&(t, yv), &(_, xv)) in y.points().iter().zip(x.points()) {
            let diff = (t * (yv + params.log_base(t)) - xv).abs();
            worst_identity = worst_identity.max(diff / xv.abs().max(1.0));
        }
        exact_ok &= gains.cross_check();
        out.write(&format!("y_path_{i}.csv"), |w| csv::write_sampled_path(w, &y))?;
        out.write(&format!("x_path_{i}.csv"), |w| csv::write_sampled_path(w, &x))?;
        if args.sums {
            out.write(&format!("sums_{i}.csv"), |w| csv::write_gain_path(w, gains))?;
        }
        ys.push(y);
    }
    if out.figures() {
        let series: Vec<&[(f64, f64)]> = ys.iter().map(|p| p.points()).collect();
        let title = format!("Y paths, m = {}, p = {}", args.m, args.p);
        out.write_text("y_paths.svg", &svg::paths_figure(&series, &title))?;
    }
    Ok(vec![
        Check::new(
            "y-x-consistency",
            worst_identity <= 1e-12,
            format!("max relative |t(y + log_b t) - x| = {worst_identity:.3e}"),
        ),
        Check::new(
            "exact-sums",
            exact_ok,
            "integer and floating partial sums agree".to_string(),
        ),
    ])
}
