//! Singular value function and the two series thresholds of the IFS.
//!
//! For `r` maps-per-level words the upper (affinity) series is
//! `Σ N^r φ^s(A^r)` and the lower-bound series is `Σ N^r φ^s(A^-r)^-1`, where
//! `N` is the number of maps and `A` their common linear part. Both terms
//! behave like `N^r 2^(-r s)` times a power of `r` for the shear, so the
//! threshold is where the geometric growth rate of the terms crosses one.
//!
//! The growth rate is read off the ratios `a_{r+1}/a_r` over the second half
//! of the truncation window. Those ratios approach their limit only like
//! `1 + c/r`, so the limit is extrapolated by a least-squares fit of
//! `ln(a_{r+1}/a_r)` against `1, 1/r, 1/r²`.

use super::matrix::{singular_values, singular_values_closed_form, Mat2, PowerSign, SingularPair, SHEAR};
use crate::error::{Error, Result};

/// Smallest accepted truncation.
pub const MIN_TRUNCATION: u32 = 40;
/// Smallest accepted bisection tolerance.
pub const MIN_TOLERANCE: f64 = 1e-4;
pub const BISECTION_BRACKET: (f64, f64) = (0.01, 2.0);
pub const MAX_BISECTION_STEPS: u32 = 60;

/// Singular values of `A^r` and `A^-r` for the common linear part `A`.
pub trait SingularValueSource: Sync {
    fn forward(&self, r: u32) -> SingularPair;
    fn inverse(&self, r: u32) -> SingularPair;
}

/// The shear `L`, through the closed forms.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedFormShear;

impl SingularValueSource for ClosedFormShear {
    fn forward(&self, r: u32) -> SingularPair {
        singular_values_closed_form(r, PowerSign::Positive)
    }

    fn inverse(&self, r: u32) -> SingularPair {
        singular_values_closed_form(r, PowerSign::Negative)
    }
}

/// Any nonsingular matrix, through numerical powers and the 2×2 solver.
#[derive(Debug, Clone, Copy)]
pub struct NumericLinear {
    matrix: Mat2,
    inverse: Mat2,
}

impl NumericLinear {
    pub fn new(matrix: Mat2) -> Result<Self> {
        Ok(NumericLinear {
            matrix,
            inverse: matrix.inverse()?,
        })
    }
}

impl SingularValueSource for NumericLinear {
    fn forward(&self, r: u32) -> SingularPair {
        let mut p = singular_values(&self.matrix.iterated_power(r)).expect("nonsingular power");
        p.r = r;
        p
    }

    fn inverse(&self, r: u32) -> SingularPair {
        let mut p = singular_values(&self.inverse.iterated_power(r)).expect("nonsingular power");
        p.r = r;
        p
    }
}

/// `N` affine maps sharing one linear part.
#[derive(Debug, Clone, Copy)]
pub struct SelfAffineSystem<S> {
    pub maps: u32,
    pub source: S,
}

impl SelfAffineSystem<ClosedFormShear> {
    /// `T_0, T_1` with linear part `L`.
    pub fn shear_pair() -> Self {
        SelfAffineSystem {
            maps: 2,
            source: ClosedFormShear,
        }
    }
}

/// `φ^s`: `α1^s` for `0 < s <= 1`, `α1 α2^(s-1)` for `1 < s <= 2`.
pub fn singular_value_function(s: f64, pair: &SingularPair) -> Result<f64> {
    Ok(ln_singular_value_function(s, pair)?.exp())
}

fn ln_singular_value_function(s: f64, pair: &SingularPair) -> Result<f64> {
    if !(s > 0.0 && s <= 2.0) {
        return Err(Error::Domain {
            value: s,
            domain: "(0, 2]",
        });
    }
    Ok(if s <= 1.0 {
        s * pair.alpha1.ln()
    } else {
        pair.alpha1.ln() + (s - 1.0) * pair.alpha2.ln()
    })
}

/// `φ^s(L^r)` for the shear.
pub fn shear_singular_value_function(s: f64, r: u32) -> Result<f64> {
    singular_value_function(s, &singular_values_closed_form(r, PowerSign::Positive))
}

/// Which of the two series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `Σ N^r φ^s(A^r)`; its threshold is the affinity dimension.
    Affinity,
    /// `Σ N^r φ^s(A^-r)^-1`; its threshold bounds the Hausdorff dimension below.
    LowerBound,
}

impl<S: SingularValueSource> SelfAffineSystem<S> {
    fn pair(&self, kind: SeriesKind, r: u32) -> SingularPair {
        match kind {
            SeriesKind::Affinity => self.source.forward(r),
            SeriesKind::LowerBound => self.source.inverse(r),
        }
    }

    /// Natural log of the `r`-th term.
    pub fn ln_term(&self, kind: SeriesKind, s: f64, r: u32) -> Result<f64> {
        let ln_phi = ln_singular_value_function(s, &self.pair(kind, r))?;
        let ln_count = r as f64 * (self.maps as f64).ln();
        Ok(match kind {
            SeriesKind::Affinity => ln_count + ln_phi,
            SeriesKind::LowerBound => ln_count - ln_phi,
        })
    }

    pub fn term(&self, kind: SeriesKind, s: f64, r: u32) -> Result<f64> {
        Ok(self.ln_term(kind, s, r)?.exp())
    }

    /// Extrapolated `lim a_{r+1}/a_r` from the ratios with `r` in the last
    /// half of `1..=truncation`.
    pub fn limiting_ratio(&self, kind: SeriesKind, s: f64, truncation: u32) -> Result<f64> {
        let start = (truncation / 2).max(1);
        let mut rows = Vec::with_capacity((truncation - start) as usize);
        let mut prev = self.ln_term(kind, s, start)?;
        for r in start..truncation {
            let next = self.ln_term(kind, s, r + 1)?;
            rows.push((r as f64, next - prev));
            prev = next;
        }
        Ok(extrapolate_in_inverse_r(&rows).exp())
    }

    /// Whether the series converges at `s`, judged by the extrapolated ratio.
    pub fn converges(&self, kind: SeriesKind, s: f64, truncation: u32) -> Result<bool> {
        Ok(self.limiting_ratio(kind, s, truncation)? < 1.0)
    }

    /// Bisection for `inf { s : series converges }` on [`BISECTION_BRACKET`].
    pub fn threshold(&self, kind: SeriesKind, truncation: u32, tol: f64) -> Result<SeriesThreshold> {
        if truncation < MIN_TRUNCATION {
            return Err(Error::InvalidArgument(format!(
                "truncation {truncation} below {MIN_TRUNCATION}"
            )));
        }
        if !(tol >= MIN_TOLERANCE) {
            return Err(Error::InvalidArgument(format!("tolerance {tol} below {MIN_TOLERANCE}")));
        }
        let (mut lo, mut hi) = BISECTION_BRACKET;
        if self.converges(kind, lo, truncation)? {
            return Err(Error::NonBracketing(format!("series converges already at s = {lo}")));
        }
        if !self.converges(kind, hi, truncation)? {
            return Err(Error::NonBracketing(format!("series diverges at s = {hi}")));
        }
        let mut steps = 0;
        while hi - lo > tol && steps < MAX_BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if self.converges(kind, mid, truncation)? {
                hi = mid;
            } else {
                lo = mid;
            }
            steps += 1;
        }
        Ok(SeriesThreshold {
            kind,
            value: 0.5 * (lo + hi),
            bracket: (lo, hi),
            steps,
            truncation,
        })
    }

    /// Terms and partial sums at `s` for `r = 1..=truncation`.
    pub fn audit(&self, kind: SeriesKind, s: f64, truncation: u32) -> Result<Vec<SeriesRow>> {
        let mut partial = 0.0;
        (1..=truncation)
            .map(|r| {
                let pair = self.pair(kind, r);
                let term = self.term(kind, s, r)?;
                partial += term;
                Ok(SeriesRow {
                    r,
                    alpha1: pair.alpha1,
                    alpha2: pair.alpha2,
                    term,
                    partial_sum: partial,
                })
            })
            .collect()
    }
}

/// Least-squares intercept of `y ≈ c0 + c1/r + c2/r²`.
fn extrapolate_in_inverse_r(rows: &[(f64, f64)]) -> f64 {
    if rows.len() < 3 {
        return rows.last().map_or(0.0, |r| r.1);
    }
    // Normal equations for the basis (1, 1/r, 1/r²).
    let mut a = [[0.0f64; 3]; 3];
    let mut b = [0.0f64; 3];
    for &(r, y) in rows {
        let basis = [1.0, 1.0 / r, 1.0 / (r * r)];
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] += basis[i] * basis[j];
            }
            b[i] += basis[i] * y;
        }
    }
    solve3(a, b)[0]
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let tail: f64 = (i + 1..3).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - tail) / a[i][i];
    }
    x
}

/// Result of a threshold search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesThreshold {
    pub kind: SeriesKind,
    pub value: f64,
    /// Final bracket: diverges at `.0`, converges at `.1`.
    pub bracket: (f64, f64),
    pub steps: u32,
    pub truncation: u32,
}

/// One row of a series audit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRow {
    pub r: u32,
    pub alpha1: f64,
    pub alpha2: f64,
    pub term: f64,
    pub partial_sum: f64,
}

/// Affinity dimension of the attractor of `T_0, T_1`.
pub fn affinity_dimension(truncation: u32, tol: f64) -> Result<SeriesThreshold> {
    SelfAffineSystem::shear_pair().threshold(SeriesKind::Affinity, truncation, tol)
}

/// Threshold of the lower-bound series built from the singular values of `L^-r`.
pub fn hausdorff_lower_bound_dim(truncation: u32, tol: f64) -> Result<SeriesThreshold> {
    SelfAffineSystem::shear_pair().threshold(SeriesKind::LowerBound, truncation, tol)
}

/// The shear as a [`NumericLinear`] source.
pub fn numeric_shear() -> NumericLinear {
    NumericLinear::new(SHEAR).expect("shear is invertible")
}
