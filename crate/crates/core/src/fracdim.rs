//! Box counting on dyadic grids and the sojourn-time experiment.
//!
//! A point `x` falls in cell `floor(x 2^j)` at scale `δ = 2^-j`, so points on
//! a shared boundary belong to the upper cell. Scaling by a power of two is
//! exact, which makes the counts reproducible bit for bit.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{x_path_approx, CoinParams, GainPath};
use crate::path::SampledPath;
use crate::stats::{fit_line, mean_and_std_error, LineFit};

/// Finest supported scale exponent.
pub const MAX_SCALE_EXPONENT: u32 = 40;

/// Points on the line or in the plane.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSet {
    Line(Vec<f64>),
    Plane(Vec<[f64; 2]>),
}

impl PointSet {
    pub fn ambient_dimension(&self) -> u32 {
        match self {
            PointSet::Line(_) => 1,
            PointSet::Plane(_) => 2,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            PointSet::Line(v) => v.len(),
            PointSet::Plane(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn cell_index(x: f64, scale: f64) -> i64 {
    (x * scale).floor() as i64
}

/// Number of grid cells of side `2^-j` that contain at least one point.
pub fn box_count(points: &PointSet, j: u32) -> Result<u64> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    if j > MAX_SCALE_EXPONENT {
        return Err(Error::InvalidArgument(format!("scale exponent {j} above {MAX_SCALE_EXPONENT}")));
    }
    let scale = 2f64.powi(j as i32);
    let count = match points {
        PointSet::Line(xs) => {
            let mut cells: Vec<i64> = xs.iter().map(|&x| cell_index(x, scale)).collect();
            cells.sort_unstable();
            cells.dedup();
            cells.len()
        }
        PointSet::Plane(ps) => {
            let mut cells: Vec<(i64, i64)> = ps
                .iter()
                .map(|p| (cell_index(p[0], scale), cell_index(p[1], scale)))
                .collect();
            cells.sort_unstable();
            cells.dedup();
            cells.len()
        }
    };
    Ok(count as u64)
}

/// Counts over a range of scales and the fitted slope of `log2 N` against `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxCountReport {
    pub js: Vec<u32>,
    pub deltas: Vec<f64>,
    pub counts: Vec<u64>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub slope_std_error: f64,
}

impl BoxCountReport {
    /// Refit over the scales with `j_lo <= j <= j_hi`.
    pub fn fit_window(&self, j_lo: u32, j_hi: u32) -> Result<LineFit> {
        let (xs, ys): (Vec<f64>, Vec<f64>) = self
            .js
            .iter()
            .zip(&self.counts)
            .filter(|(&j, _)| j >= j_lo && j <= j_hi)
            .map(|(&j, &n)| (j as f64, (n as f64).log2()))
            .unzip();
        fit_counts(&xs, &ys)
    }
}

fn fit_counts(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if ys.windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::DegenerateFit);
    }
    fit_line(xs, ys).ok_or(Error::DegenerateFit)
}

/// Least-squares box dimension over `j ∈ [j_min, j_max]`.
pub fn box_dimension_estimate(points: &PointSet, j_min: u32, j_max: u32) -> Result<BoxCountReport> {
    if j_min >= j_max {
        return Err(Error::InvalidArgument(format!("scale window [{j_min}, {j_max}] is empty")));
    }
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let d = points.ambient_dimension();
    if ((points.len() as f64).log2()) < (d * j_max) as f64 {
        log::warn!(
            "{} points is sparse for scale 2^-{j_max} in dimension {d}; the finest counts may saturate",
            points.len()
        );
    }
    let js: Vec<u32> = (j_min..=j_max).collect();
    let counts = js
        .par_iter()
        .map(|&j| box_count(points, j))
        .collect::<Result<Vec<u64>>>()?;
    let xs: Vec<f64> = js.iter().map(|&j| j as f64).collect();
    let ys: Vec<f64> = counts.iter().map(|&n| (n as f64).log2()).collect();
    let fit = fit_counts(&xs, &ys)?;
    Ok(BoxCountReport {
        deltas: js.iter().map(|&j| 2f64.powi(-(j as i32))).collect(),
        js,
        counts,
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        slope_std_error: fit.slope_std_error,
    })
}

/// The values of a path.
pub fn range_points(path: &SampledPath) -> PointSet {
    PointSet::Line(path.values().collect())
}

/// The `(t, v)` pairs of a path.
pub fn graph_points(path: &SampledPath) -> PointSet {
    PointSet::Plane(path.points().iter().map(|&(t, v)| [t, v]).collect())
}

/// `Δt · #{k : |(t_k, v_k)| <= a}` for a path sampled at uniform spacing `Δt`.
pub fn sojourn_time(path: &SampledPath, a: f64) -> Result<f64> {
    let pts = path.points();
    if pts.len() < 2 {
        return Err(Error::NonUniformSpacing);
    }
    let dt = pts[1].0 - pts[0].0;
    let uniform = pts
        .windows(2)
        .all(|w| ((w[1].0 - w[0].0) - dt).abs() <= 1e-9 * dt);
    if !uniform {
        return Err(Error::NonUniformSpacing);
    }
    let a2 = a * a;
    let inside = pts.iter().filter(|&&(t, v)| t * t + v * v <= a2).count();
    Ok(dt * inside as f64)
}

/// Monte-Carlo estimate of the expected sojourn time in the radius-`a` ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SojournEstimate {
    pub a: f64,
    /// Horizon `s`.
    pub s: f64,
    pub mean_time: f64,
    pub replicas: usize,
    pub std_error: f64,
}

impl SojournEstimate {
    pub fn ratio(&self) -> f64 {
        self.mean_time / self.a
    }
}

/// Mean sojourn time of the level-`m` `X` path on `(0, 1]` for each radius.
pub fn sojourn_bound_experiment(m: u32, replicas: usize, a_grid: &[f64], seed: u64) -> Result<Vec<SojournEstimate>> {
    if replicas == 0 {
        return Err(Error::ZeroCount);
    }
    if let Some(&a) = a_grid.iter().find(|&&a| !(a > 0.0 && a <= 1.0)) {
        return Err(Error::Domain {
            value: a,
            domain: "(0, 1]",
        });
    }
    if m == 0 || m > 30 {
        return Err(Error::InvalidArgument(format!("level {m} outside 1..=30")));
    }
    let n = 1usize << m;
    let per_replica = (0..replicas as u64)
        .into_par_iter()
        .map(|r| {
            let gains = GainPath::simulate_replica(n, CoinParams::fair(), seed, r)?;
            let path = x_path_approx(&gains, m, true)?;
            a_grid.iter().map(|&a| sojourn_time(&path, a)).collect()
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(a_grid
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let times: Vec<f64> = per_replica.iter().map(|row| row[i]).collect();
            let (mean_time, std_error) = mean_and_std_error(&times);
            SojournEstimate {
                a,
                s: 1.0,
                mean_time,
                replicas,
                std_error,
            }
        })
        .collect())
}

/// `{2^-1, ..., 2^-k}`.
pub fn dyadic_radii(k: u32) -> Vec<f64> {
    (1..=k as i32).map(|i| 2f64.powi(-i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn segment(n: usize) -> PointSet {
        PointSet::Line((0..=n).map(|k| k as f64 / n as f64).collect())
    }

    #[test]
    fn single_point() {
        for j in 0..20 {
            assert_eq!(box_count(&PointSet::Plane(vec![[0.3, 0.7]]), j).unwrap(), 1);
        }
    }

    #[test]
    fn dyadic_points_on_the_line() {
        // k / 2^10 at δ = 2^-4: sixteen cells in [0, 1) plus the cell of 1.
        assert_eq!(box_count(&segment(1 << 10), 4).unwrap(), 17);
        assert_eq!(box_count(&segment(1 << 10), 10).unwrap(), 1025);
    }

    #[test]
    fn diagonal_graph() {
        let n = 1 << 16;
        let pts = PointSet::Plane((0..n).map(|k| k as f64 / (n - 1) as f64).map(|t| [t, t]).collect());
        let c = box_count(&pts, 6).unwrap();
        assert!((64..=129).contains(&c), "{c}");
    }

    #[test]
    fn segment_and_square_dimensions() {
        let line = box_dimension_estimate(&segment(1 << 16), 2, 10).unwrap();
        assert!((line.slope - 1.0).abs() <= 0.05, "{line:?}");
        let side = 1 << 10;
        let square = PointSet::Plane(
            (0..side * side)
                .map(|i| [(i % side) as f64 / side as f64, (i / side) as f64 / side as f64])
                .collect(),
        );
        let sq = box_dimension_estimate(&square, 2, 8).unwrap();
        assert!((sq.slope - 2.0).abs() <= 0.05, "{sq:?}");
    }

    #[test]
    fn fit_errors() {
        let p = PointSet::Line(vec![0.25]);
        assert_eq!(box_dimension_estimate(&p, 2, 8), Err(Error::DegenerateFit));
        assert!(box_dimension_estimate(&p, 8, 8).is_err());
        assert_eq!(box_count(&PointSet::Line(vec![]), 3), Err(Error::EmptySet));
    }

    #[test]
    fn path_point_sets() {
        let path = SampledPath::new(vec![(0.5, 1.0), (0.75, 1.0), (1.0, 1.0)], (0.5, 1.0)).unwrap();
        assert_eq!(box_count(&range_points(&path), 12).unwrap(), 1);
        assert_eq!(graph_points(&path).len(), path.len());
    }

    fn flat_path(n: usize) -> SampledPath {
        SampledPath::new((1..=n).map(|k| (k as f64 / n as f64, 0.0)).collect(), (0.0, 1.0)).unwrap()
    }

    #[test]
    fn sojourn_examples() {
        let path = flat_path(1 << 12);
        let dt = 2f64.powi(-12);
        assert!((sojourn_time(&path, 0.5).unwrap() - 0.5).abs() <= dt);
        assert_eq!(sojourn_time(&path, 2f64.sqrt()).unwrap(), 1.0);
        assert_eq!(sojourn_time(&path, 0.0).unwrap(), 0.0);
        let uneven = SampledPath::new(vec![(0.1, 0.0), (0.2, 0.0), (0.5, 0.0)], (0.0, 1.0)).unwrap();
        assert_eq!(sojourn_time(&uneven, 0.3), Err(Error::NonUniformSpacing));
    }

    #[test]
    fn sojourn_experiment_shape() {
        let grid = dyadic_radii(4);
        let est = sojourn_bound_experiment(8, 40, &grid, 3).unwrap();
        assert_eq!(est.len(), 4);
        for e in &est {
            assert!(e.mean_time >= 0.0 && e.mean_time <= e.s);
            assert_eq!(e.replicas, 40);
        }
        assert!(est.windows(2).all(|w| w[0].mean_time >= w[1].mean_time));
        assert!(sojourn_bound_experiment(8, 4, &[1.5], 3).is_err());
    }
}
