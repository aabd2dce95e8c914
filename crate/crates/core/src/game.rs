//! Repeated (generalized) St. Petersburg games and the normalized block paths
//! that approximate the limit processes `X` and `Y`.
//!
//! A single game tosses a coin showing heads with probability `p` until the
//! first head at toss `T`; the player receives `p^-1 q^(1-T)`, which is `2^T`
//! for the fair coin. `S_k` is the total gain after `k` games.
//!
//! Along a block `k ∈ (b^(m-1), b^m]` with `b = 1/q` the quantities
//!
//! ```text
//!     Y-path:  t_k = k q^m,   v_k = (S_k - k log_b k) / k
//!     X-path:  t_k = k q^m,   v_k = q^m (S_k - k m)
//! ```
//!
//! are the pre-limit versions of `Y(t)` and `X(t) = t (Y(t) + log_b t)`.

use log::{info, warn};
use rand::{Rng, RngCore};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::path::SampledPath;
use crate::rng::{replica_rng, SimRng};
use crate::stats::{ks_critical_value, ks_two_sample};

/// Largest stopping time produced by the samplers. At `p = 1/2` truncation
/// happens with probability below `2^-63`.
pub const MAX_STOPPING_TIME: u32 = 64;

/// Games beyond this count are accumulated in floating point only.
pub const EXACT_TRACK_LIMIT: usize = 1 << 24;

/// Coin with head probability `p` and tail probability `q = 1 - p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParams {
    p: f64,
    q: f64,
}

impl CoinParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidCoin(p));
        }
        Ok(CoinParams { p, q: 1.0 - p })
    }

    pub fn fair() -> Self {
        CoinParams { p: 0.5, q: 0.5 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn is_fair(&self) -> bool {
        self.p == 0.5
    }

    /// Growth factor `1/q` of the blocks; 2 for the fair game.
    pub fn base(&self) -> f64 {
        if self.is_fair() {
            2.0
        } else {
            1.0 / self.q
        }
    }

    pub fn log_base(&self, x: f64) -> f64 {
        if self.is_fair() {
            x.log2()
        } else {
            x.ln() / self.base().ln()
        }
    }
}

impl Default for CoinParams {
    fn default() -> Self {
        CoinParams::fair()
    }
}

/// Index of the first head in a toss sequence (`true` = heads), counting
/// from 1. `None` if the sequence has no head.
pub fn stopping_time_from_tosses<I: IntoIterator<Item = bool>>(tosses: I) -> Option<u32> {
    tosses
        .into_iter()
        .position(|heads| heads)
        .map(|i| i as u32 + 1)
}

/// Draws `T` with `P(T = k) = p q^(k-1)` by inverse transform, capped at
/// [`MAX_STOPPING_TIME`].
pub fn sample_stopping_time<R: RngCore + ?Sized>(rng: &mut R, params: CoinParams) -> u32 {
    if params.is_fair() {
        // Each bit of a uniform word is an independent fair toss.
        let w = rng.next_u64();
        return if w == 0 {
            MAX_STOPPING_TIME
        } else {
            w.trailing_zeros() + 1
        };
    }
    let u = 1.0 - rng.random::<f64>(); // (0, 1]
    let t = 1.0 + (u.ln() / params.q.ln()).floor();
    if t >= MAX_STOPPING_TIME as f64 {
        MAX_STOPPING_TIME
    } else {
        t as u32
    }
}

/// Literal coin-flip sampler, kept as an auditable reference for
/// [`sample_stopping_time`].
pub fn sample_stopping_time_by_tosses<R: RngCore + ?Sized>(rng: &mut R, params: CoinParams) -> u32 {
    let toss = std::iter::repeat_with(|| rng.random::<f64>() < params.p);
    stopping_time_from_tosses(toss.take(MAX_STOPPING_TIME as usize)).unwrap_or(MAX_STOPPING_TIME)
}

/// Gain `p^-1 q^(1-T)` for a game stopped at toss `t`; exactly `2^t` when fair.
pub fn gain(t: u32, params: CoinParams) -> f64 {
    if params.is_fair() {
        2f64.powi(t as i32)
    } else {
        params.q.powi(1 - t as i32) / params.p
    }
}

pub fn sample_gain<R: RngCore + ?Sized>(rng: &mut R, params: CoinParams) -> f64 {
    gain(sample_stopping_time(rng, params), params)
}

/// Cumulative gains `S_1, ..., S_n` of `n` independent games.
///
/// For the fair game with `n <= 2^24` an exact `u64` track is kept alongside
/// the floating sums. It is dropped, with a notice, if it ever overflows.
#[derive(Debug, Clone)]
pub struct GainPath {
    sums: Vec<f64>,
    exact: Option<Vec<u64>>,
    params: CoinParams,
    seed: u64,
    replica: u64,
}

impl GainPath {
    /// Simulates `n` games on stream 0 of `seed`.
    pub fn simulate(n: usize, params: CoinParams, seed: u64) -> Result<Self> {
        Self::simulate_replica(n, params, seed, 0)
    }

    pub fn simulate_replica(n: usize, params: CoinParams, seed: u64, replica: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroCount);
        }
        let mut rng = replica_rng(seed, replica);
        let mut exact = (params.is_fair() && n <= EXACT_TRACK_LIMIT).then(|| Vec::with_capacity(n));
        let mut sums = Vec::with_capacity(n);
        let (mut acc, mut acc_exact) = (0.0f64, 0u64);
        for k in 0..n {
            let t = sample_stopping_time(&mut rng, params);
            acc += gain(t, params);
            sums.push(acc);
            if let Some(track) = exact.as_mut() {
                match 1u64
                    .checked_shl(t)
                    .and_then(|g| acc_exact.checked_add(g))
                {
                    Some(next) => {
                        acc_exact = next;
                        track.push(next);
                    }
                    None => {
                        info!("exact gain track overflowed at game {}; using floating sums only", k + 1);
                        exact = None;
                    }
                }
            }
        }
        let path = GainPath {
            sums,
            exact,
            params,
            seed,
            replica,
        };
        if !path.cross_check() {
            warn!("floating and exact gain sums disagree (seed {seed}, replica {replica})");
        }
        Ok(path)
    }

    /// Builds a path from given gains; used to force deterministic inputs.
    pub fn from_gains(gains: &[f64], params: CoinParams) -> Result<Self> {
        if gains.is_empty() {
            return Err(Error::ZeroCount);
        }
        if let Some(&g) = gains.iter().find(|g| !(g.is_finite() && **g > 0.0)) {
            return Err(Error::InvalidGain(g));
        }
        let sums = gains
            .iter()
            .scan(0.0, |acc, g| {
                *acc += g;
                Some(*acc)
            })
            .collect();
        Ok(GainPath {
            sums,
            exact: None,
            params,
            seed: 0,
            replica: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// `S_1..S_n`; index `k - 1` holds `S_k`.
    pub fn sums(&self) -> &[f64] {
        &self.sums
    }

    pub fn exact_sums(&self) -> Option<&[u64]> {
        self.exact.as_deref()
    }

    pub fn params(&self) -> CoinParams {
        self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn replica(&self) -> u64 {
        self.replica
    }

    /// `S_k` for `1 <= k <= n`.
    pub fn sum(&self, k: usize) -> f64 {
        self.sums[k - 1]
    }

    /// True when the floating sums agree with the exact track: bitwise below
    /// `2^53`, to relative `1e-12` above it. Vacuously true without a track.
    pub fn cross_check(&self) -> bool {
        let Some(exact) = &self.exact else {
            return true;
        };
        const EXACT_F64: u64 = 1 << 53;
        self.sums.iter().zip(exact).all(|(&s, &e)| {
            if e < EXACT_F64 {
                s == e as f64
            } else {
                ((s - e as f64) / e as f64).abs() <= 1e-12
            }
        })
    }
}

/// `S_1..S_n` of `n` games on stream 0 of `seed`.
pub fn simulate_partial_sums(n: usize, params: CoinParams, seed: u64) -> Result<GainPath> {
    GainPath::simulate(n, params, seed)
}

/// Independent replicas `0..replicas` simulated in parallel; the result is
/// ordered by replica index.
pub fn simulate_replicas(n: usize, params: CoinParams, seed: u64, replicas: usize) -> Result<Vec<GainPath>> {
    (0..replicas as u64)
        .into_par_iter()
        .map(|r| GainPath::simulate_replica(n, params, seed, r))
        .collect()
}

/// Index range and time scale of level-`m` block `k ∈ (b^(m-1), b^m]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block {
    pub first: usize,
    pub last: usize,
    /// `q^m`, so that `t_k = k * scale`.
    pub scale: f64,
    pub level: u32,
}

impl Block {
    pub fn new(params: CoinParams, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroLevel);
        }
        if params.is_fair() {
            if m > 40 {
                return Err(Error::InvalidArgument(format!("level {m} too large")));
            }
            return Ok(Block {
                first: (1usize << (m - 1)) + 1,
                last: 1usize << m,
                scale: 2f64.powi(-(m as i32)),
                level: m,
            });
        }
        let b = params.base();
        let hi = b.powi(m as i32);
        if hi > (1u64 << 40) as f64 {
            return Err(Error::InvalidArgument(format!("level {m} too large")));
        }
        let first = b.powi(m as i32 - 1).floor() as usize + 1;
        let last = hi.floor() as usize;
        if last < first {
            return Err(Error::InvalidArgument(format!("level {m} block is empty")));
        }
        Ok(Block {
            first,
            last,
            scale: params.q.powi(m as i32),
            level: m,
        })
    }

    fn time(&self, k: usize) -> f64 {
        (k as f64 * self.scale).min(1.0)
    }

    fn require(&self, path: &GainPath) -> Result<()> {
        if path.len() < self.last {
            return Err(Error::PathTooShort {
                have: path.len(),
                need: self.last,
                level: self.level,
            });
        }
        Ok(())
    }
}

/// Level-`m` block path of `Y`: `t_k = k q^m ∈ (q, 1]`, `v_k = (S_k - k log_b k)/k`.
pub fn y_path_approx(path: &GainPath, m: u32) -> Result<SampledPath> {
    let params = path.params();
    let block = Block::new(params, m)?;
    block.require(path)?;
    let points = (block.first..=block.last)
        .map(|k| {
            let kf = k as f64;
            (block.time(k), (path.sum(k) - kf * params.log_base(kf)) / kf)
        })
        .collect();
    SampledPath::new(points, (params.q(), 1.0))
}

/// Level-`m` block path of `X`: `t_k = k q^m`, `v_k = q^m (S_k - k m)`.
///
/// With `full` set, `k` runs over `[1, b^m]` and the path covers `(0, 1]`;
/// the sojourn experiment needs times near zero.
pub fn x_path_approx(path: &GainPath, m: u32, full: bool) -> Result<SampledPath> {
    let params = path.params();
    let block = Block::new(params, m)?;
    block.require(path)?;
    let first = if full { 1 } else { block.first };
    let mf = m as f64;
    let points = (first..=block.last)
        .map(|k| (block.time(k), block.scale * (path.sum(k) - k as f64 * mf)))
        .collect();
    let lo = if full { 0.0 } else { params.q() };
    SampledPath::new(points, (lo, 1.0))
}

/// Sum of `n` fair-or-not gains drawn from `rng`, without storing the path.
fn total_gain(rng: &mut SimRng, params: CoinParams, n: usize) -> f64 {
    (0..n).map(|_| sample_gain(rng, params)).sum()
}

/// Samples for the semi-selfsimilarity relation `X(2t) = 2(X(t) + t)` at
/// `t = 1/2`: `A_i = X_m(1)` and `B_i = 2(X_m(1/2) + 1/2)`, every draw from
/// its own replica stream.
pub fn semi_selfsimilarity_samples(m: u32, replicas: usize, seed: u64) -> Result<(Vec<f64>, Vec<f64>)> {
    if m == 0 {
        return Err(Error::ZeroLevel);
    }
    if m > 30 {
        return Err(Error::InvalidArgument(format!("level {m} too large")));
    }
    let params = CoinParams::fair();
    let full = 1usize << m;
    let half = full >> 1;
    let mf = m as f64;
    let scale = 2f64.powi(-(m as i32));
    let pairs: Vec<(f64, f64)> = (0..replicas as u64)
        .into_par_iter()
        .map(|i| {
            let s_full = total_gain(&mut replica_rng(seed, 2 * i), params, full);
            let s_half = total_gain(&mut replica_rng(seed, 2 * i + 1), params, half);
            let x_one = scale * (s_full - full as f64 * mf);
            let x_half = scale * (s_half - half as f64 * mf);
            (x_one, 2.0 * (x_half + 0.5))
        })
        .collect();
    Ok(pairs.into_iter().unzip())
}

/// Outcome of the two-sample KS comparison of `X(1)` against `2(X(1/2) + 1/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfSimilarityReport {
    pub level: u32,
    pub replicas: usize,
    pub statistic: f64,
    /// 1% rejection threshold for the sample sizes used.
    pub threshold: f64,
}

impl SelfSimilarityReport {
    pub fn passes(&self) -> bool {
        self.statistic < self.threshold
    }
}

pub const KS_ALPHA: f64 = 0.01;

/// KS statistic between the two sides of the semi-selfsimilarity relation.
pub fn semi_selfsimilarity_check(m: u32, replicas: usize, seed: u64) -> Result<SelfSimilarityReport> {
    if replicas < 100 {
        return Err(Error::InvalidArgument(format!(
            "semi-selfsimilarity check needs at least 100 replicas, got {replicas}"
        )));
    }
    let (a, b) = semi_selfsimilarity_samples(m, replicas, seed)?;
    Ok(SelfSimilarityReport {
        level: m,
        replicas,
        statistic: ks_two_sample(&a, &b),
        threshold: ks_critical_value(KS_ALPHA, a.len(), b.len()),
    })
}
