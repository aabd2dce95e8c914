//! The Steinhaus sequence and its limit function.
//!
//! `x_n` is twice the largest power of two dividing `n`; its partial sums
//! `s(n)` satisfy `(s(n) - n log2 n) / n = ξ(γ_n)` with
//! `γ_n = n 2^-⌈log2 n⌉ ∈ (1/2, 1]` and
//!
//! ```text
//!     ξ(γ) = 2 - log2 γ - γ^-1 Σ_{k≥1} k ε_k 2^-k,     γ = Σ_{k≥0} ε_k 2^-k,
//! ```
//!
//! the expansion taken with infinitely many zero digits. `ξ` is càdlàg with
//! upward jumps at every dyadic rational of `(1/2, 1]`; `f(γ) = γ(ξ(γ) + log2 γ)`
//! is its image under the shear `T^-1(t, x) = (t, t(x + log2 t))`.
//!
//! Dyadic arguments are evaluated exactly (one final rounding); arbitrary
//! reals are expanded to [`TRUNCATION_DEPTH`] digits.

use rayon::prelude::*;

use crate::dyadic::{Dyadic, Gamma};
use crate::error::{Error, Result};

/// Digits used for non-dyadic arguments; the neglected tail of
/// `Σ k ε_k 2^-k` is at most `2 (D + 2) 2^-D`.
pub const TRUNCATION_DEPTH: u32 = 64;

/// Bound on the neglected tail of the weighted digit sum after `depth` digits.
pub fn truncation_error_bound(depth: u32) -> f64 {
    2.0 * (depth as f64 + 2.0) * 2f64.powi(-(depth as i32))
}

/// `x_n = 2 * 2^v2(n)`.
pub fn steinhaus_term(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    let v = n.trailing_zeros();
    if v >= 63 {
        return Err(Error::Overflow(n));
    }
    Ok(2 << v)
}

/// `s(n) = x_1 + ... + x_n` via `Σ_{k≥1} 2^k ⌊(n + 2^(k-1)) / 2^k⌋`.
pub fn steinhaus_partial_sum(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    let n128 = n as u128;
    let mut total: u128 = 0;
    for k in 1..=65u32 {
        let pow = 1u128 << k;
        let count = (n128 + (pow >> 1)) / pow;
        if count == 0 {
            break;
        }
        total += pow * count;
    }
    u64::try_from(total).map_err(|_| Error::Overflow(n))
}

/// `⌈log2 n⌉` by bit operations, `n >= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    debug_assert!(n > 0);
    if n.is_power_of_two() {
        n.trailing_zeros()
    } else {
        64 - n.leading_zeros()
    }
}

/// `γ_n = n 2^-⌈log2 n⌉`, exact.
pub fn gamma_of(n: u64) -> Result<Dyadic> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    Dyadic::new(n, ceil_log2(n))
}

/// First digits of `γ ∈ [1/2, 1]` under the terminating convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicExpansion {
    leading: u8,
    digits: Vec<u8>,
    exact: bool,
}

impl DyadicExpansion {
    /// `ε_0`; one only for `γ = 1`.
    pub fn leading(&self) -> u8 {
        self.leading
    }

    /// `ε_1, ε_2, ...` up to the requested depth.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// `ε_k` for `k >= 0`; zero beyond the stored depth of an exact expansion.
    pub fn digit(&self, k: usize) -> Option<u8> {
        match k {
            0 => Some(self.leading),
            k if k <= self.digits.len() => Some(self.digits[k - 1]),
            _ if self.exact => Some(0),
            _ => None,
        }
    }

    /// Whether the argument was an exact dyadic rational.
    pub fn is_exact(&self) -> bool {
        self.exact
    }
}

fn check_closed_domain(g: f64) -> Result<()> {
    if (0.5..=1.0).contains(&g) {
        Ok(())
    } else {
        Err(Error::Domain {
            value: g,
            domain: "[1/2, 1]",
        })
    }
}

pub fn dyadic_digits(gamma: impl Into<Gamma>, depth: usize) -> Result<DyadicExpansion> {
    let gamma = gamma.into();
    check_closed_domain(gamma.value())?;
    let (leading, digits) = match gamma {
        Gamma::Exact(d) if d == Dyadic::ONE => (1, vec![0; depth]),
        Gamma::Exact(d) => {
            let (num, e) = (d.numerator(), d.exponent() as usize);
            let digits = (1..=depth)
                .map(|k| if k <= e { ((num >> (e - k)) & 1) as u8 } else { 0 })
                .collect();
            (0, digits)
        }
        Gamma::Approx(1.0) => (1, vec![0; depth]),
        Gamma::Approx(g) => {
            let mut rest = g;
            let digits = (0..depth)
                .map(|_| {
                    rest *= 2.0;
                    if rest >= 1.0 {
                        rest -= 1.0;
                        1
                    } else {
                        0
                    }
                })
                .collect();
            (0, digits)
        }
    };
    Ok(DyadicExpansion {
        leading,
        digits,
        exact: gamma.is_exact(),
    })
}

/// `2^e Σ k ε_k 2^-k` for `γ = num / 2^e` (zero for `γ = 1`).
fn weighted_digit_sum_scaled(d: Dyadic) -> u128 {
    let (num, e) = (d.numerator(), d.exponent());
    (1..=e)
        .filter(|&k| (num >> (e - k)) & 1 == 1)
        .map(|k| (k as u128) << (e - k))
        .sum()
}

/// `Σ_{k=1}^{D} k ε_k 2^-k` from the digits of a double, `D = TRUNCATION_DEPTH`.
fn weighted_digit_sum_truncated(g: f64) -> f64 {
    if g == 1.0 {
        return 0.0;
    }
    let mut rest = g;
    let mut sum = 0.0;
    let mut weight = 1.0;
    for k in 1..=TRUNCATION_DEPTH {
        rest *= 2.0;
        weight *= 0.5;
        if rest >= 1.0 {
            rest -= 1.0;
            sum += k as f64 * weight;
        }
        if rest == 0.0 {
            break;
        }
    }
    sum
}

fn log2_dyadic(d: Dyadic) -> f64 {
    (d.numerator() as f64).log2() - d.exponent() as f64
}

/// `ξ(γ)` on `[1/2, 1]`.
pub fn xi(gamma: impl Into<Gamma>) -> Result<f64> {
    match gamma.into() {
        Gamma::Exact(d) => {
            check_closed_domain(d.to_f64())?;
            let w = weighted_digit_sum_scaled(d);
            Ok(2.0 - log2_dyadic(d) - w as f64 / d.numerator() as f64)
        }
        Gamma::Approx(g) => {
            check_closed_domain(g)?;
            Ok(2.0 - g.log2() - weighted_digit_sum_truncated(g) / g)
        }
    }
}

/// `ξ(γ-)` at a dyadic `γ ∈ (1/2, 1]`.
///
/// The left limit uses the non-terminating expansion: the last one digit, at
/// position `K`, becomes zero and every later digit one, whose weighted tail
/// is `Σ_{k≥K+1} k 2^-k = (K + 2) 2^-K`.
pub fn xi_left_limit(gamma: impl Into<Gamma>) -> Result<f64> {
    let d = match gamma.into() {
        Gamma::Exact(d) => d,
        Gamma::Approx(g) => return Err(Error::NotDyadic(g)),
    };
    if !(d > Dyadic::HALF && d <= Dyadic::ONE) {
        return Err(Error::Domain {
            value: d.to_f64(),
            domain: "(1/2, 1]",
        });
    }
    let last = d.exponent() as u128;
    // Scaled by 2^K: the removed digit contributes K, the tail K + 2.
    let prefix = weighted_digit_sum_scaled(d) - last;
    let tail = last + 2;
    Ok(2.0 - log2_dyadic(d) - (prefix + tail) as f64 / d.numerator() as f64)
}

/// `f(γ) = 2γ - Σ k ε_k 2^-k` on `[1/2, 1)`.
pub fn f_value(gamma: impl Into<Gamma>) -> Result<f64> {
    let gamma = gamma.into();
    let g = gamma.value();
    if !(0.5..1.0).contains(&g) {
        return Err(Error::Domain {
            value: g,
            domain: "[1/2, 1)",
        });
    }
    match gamma {
        Gamma::Exact(d) => {
            let scaled = 2 * d.numerator() as i128 - weighted_digit_sum_scaled(d) as i128;
            Ok(scaled as f64 * 2f64.powi(-(d.exponent() as i32)))
        }
        Gamma::Approx(g) => Ok(2.0 * g - weighted_digit_sum_truncated(g)),
    }
}

/// Left limit `f(γ-) = γ (ξ(γ-) + log2 γ)` at a dyadic `γ ∈ (1/2, 1]`.
pub fn f_left_limit(gamma: Dyadic) -> Result<f64> {
    let left = xi_left_limit(gamma)?;
    Ok(t_inverse_transform(gamma.to_f64(), left)?.1)
}

fn check_time(t: f64) -> Result<()> {
    if (0.5..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain {
            value: t,
            domain: "[1/2, 1]",
        })
    }
}

/// `T(t, x) = (t, x/t - log2 t)`.
pub fn t_transform(t: f64, x: f64) -> Result<(f64, f64)> {
    check_time(t)?;
    Ok((t, x / t - t.log2()))
}

/// `T^-1(t, x) = (t, t (x + log2 t))`.
pub fn t_inverse_transform(t: f64, x: f64) -> Result<(f64, f64)> {
    check_time(t)?;
    Ok((t, t * (x + t.log2())))
}

/// `|(s(n) - n log2 n)/n - ξ(γ_n)|`.
pub fn steinhaus_identity_residual(n: u64) -> Result<f64> {
    let s = steinhaus_partial_sum(n)?;
    let nf = n as f64;
    let lhs = s as f64 / nf - nf.log2();
    Ok((lhs - xi(gamma_of(n)?)?).abs())
}

/// Largest identity residual over `1..=n_max` and the `n` attaining it.
pub fn max_identity_residual(n_max: u64) -> Result<(f64, u64)> {
    if n_max == 0 {
        return Err(Error::ZeroCount);
    }
    let residuals: Vec<(f64, u64)> = (1..=n_max)
        .into_par_iter()
        .map(|n| steinhaus_identity_residual(n).map(|r| (r, n)))
        .collect::<Result<_>>()?;
    Ok(residuals
        .into_iter()
        .fold((0.0, 1), |best, cur| if cur.0 > best.0 { cur } else { best }))
}

/// `ξ` at one argument, with the left limit where it is a jump point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiPoint {
    pub gamma: Gamma,
    pub value: f64,
    pub left_value: Option<f64>,
}

pub fn xi_point(gamma: impl Into<Gamma>) -> Result<XiPoint> {
    let gamma = gamma.into();
    let value = xi(gamma)?;
    let left_value = match gamma {
        Gamma::Exact(d) if d > Dyadic::HALF => Some(xi_left_limit(d)?),
        _ => None,
    };
    Ok(XiPoint {
        gamma,
        value,
        left_value,
    })
}

/// Largest grid depth accepted by [`dyadic_grid`].
pub const MAX_GRID_DEPTH: u32 = 40;

/// `{ j 2^-depth : 2^(depth-1) <= j <= 2^depth }`, i.e. `2^(depth-1) + 1`
/// points spanning `[1/2, 1]`.
pub fn dyadic_grid(depth: u32) -> Result<Vec<Dyadic>> {
    if depth == 0 {
        return Err(Error::InvalidArgument("grid depth must be at least 1".into()));
    }
    if depth > MAX_GRID_DEPTH {
        return Err(Error::DepthCap {
            depth,
            cap: MAX_GRID_DEPTH,
        });
    }
    ((1u64 << (depth - 1))..=(1u64 << depth))
        .map(|j| Dyadic::new(j, depth))
        .collect()
}
