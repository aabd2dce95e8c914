//! Small statistics toolkit: two-sample Kolmogorov–Smirnov, least squares,
//! sample moments.

use std::cmp::Ordering;

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_a - F_b|`.
///
/// Ties across the samples are handled by advancing past every copy of the
/// current value in both samples before comparing the empirical CDFs.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable_by(f64::total_cmp);
    b.sort_unstable_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = match a[i].total_cmp(&b[j]) {
            Ordering::Greater => b[j],
            _ => a[i],
        };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic rejection threshold of the two-sample KS test at level `alpha`:
/// `c(alpha) * sqrt((n + m) / (n m))` with `c(alpha) = sqrt(-ln(alpha / 2) / 2)`.
pub fn ks_critical_value(alpha: f64, n: usize, m: usize) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    let (n, m) = (n as f64, m as f64);
    c * ((n + m) / (n * m)).sqrt()
}

/// Ordinary least-squares line fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Standard error of the slope; zero when fewer than three points.
    pub slope_std_error: f64,
}

/// Fits `y = slope * x + intercept`. Returns `None` for fewer than two points
/// or when all `x` coincide.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    let slope_std_error = if n > 2 {
        (sse / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Some(LineFit {
        slope,
        intercept,
        r_squared,
        slope_std_error,
    })
}

/// Sample mean and standard error of the mean.
pub fn mean_and_std_error(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let nf = n as f64;
    let mean = xs.iter().sum::<f64>() / nf;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    (mean, (var / nf).sqrt())
}

/// Median; the mean of the two central values for even lengths.
pub fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ks_identical_samples_is_zero() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [4.0, 3.0, 2.0, 1.0];
        assert_eq!(ks_two_sample(&a, &b), 0.0);
    }

    #[test]
    fn ks_with_ties() {
        let a = [1.0, 1.0, 4.0, 4.0];
        let b = [1.0, 1.0, 1.0, 4.0];
        assert_relative_eq!(ks_two_sample(&a, &b), 0.25);
    }

    #[test]
    fn ks_hand_computed() {
        let a = [0.42, 0.24, 0.86, 0.85, 0.82, 0.82, 0.25, 0.78, 0.13, 0.27];
        let b = [0.24, 0.27, 0.87, 0.29, 0.57, 0.44, 0.5, 0.00, 0.56, 0.03];
        assert_relative_eq!(ks_two_sample(&a, &b), 0.4, epsilon = 1e-12);
    }

    #[test]
    fn ks_disjoint_supports_is_one() {
        assert_eq!(ks_two_sample(&[0.0, 1.0], &[2.0, 3.0, 5.0]), 1.0);
    }

    #[test]
    fn ks_threshold_one_percent() {
        // c(0.01) = sqrt(ln(200) / 2) = 1.6276
        let t = ks_critical_value(0.01, 2000, 2000);
        assert_relative_eq!(t, 1.627_624_1 * (2.0f64 / 2000.0).sqrt(), max_relative = 1e-6);
    }

    #[test]
    fn exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        let f = fit_line(&xs, &ys).unwrap();
        assert_relative_eq!(f.slope, 2.0);
        assert_relative_eq!(f.intercept, 1.0);
        assert_relative_eq!(f.r_squared, 1.0);
        assert!(f.slope_std_error < 1e-12);
        assert!(fit_line(&[1.0, 1.0], &[0.0, 1.0]).is_none());
    }

    #[test]
    fn moments() {
        let (m, se) = mean_and_std_error(&[1.0, 2.0, 3.0, 4.0]);
        assert_relative_eq!(m, 2.5);
        assert_relative_eq!(se, (5.0f64 / 3.0 / 4.0).sqrt());
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
