use statrs::distribution::{ChiSquared, ContinuousCDF};
use stpetersburg::game::{
    gain, sample_stopping_time, sample_stopping_time_by_tosses, semi_selfsimilarity_samples, x_path_approx,
    y_path_approx, CoinParams, GainPath,
};
use stpetersburg::rng::replica_rng;
use stpetersburg::stats::{ks_critical_value, ks_two_sample, median};

fn stopping_time_counts(params: CoinParams, draws: usize, by_tosses: bool) -> Vec<u64> {
    let mut rng = replica_rng(99, u64::from(by_tosses));
    let mut counts = vec![0u64; 65];
    for _ in 0..draws {
        let t = if by_tosses {
            sample_stopping_time_by_tosses(&mut rng, params)
        } else {
            sample_stopping_time(&mut rng, params)
        };
        counts[t as usize] += 1;
    }
    counts
}

/// Pearson statistic against the geometric law, tail pooled from `cells` on.
fn chi_square_geometric(counts: &[u64], params: CoinParams, cells: usize) -> (f64, f64) {
    let n: u64 = counts.iter().sum();
    let mut stat = 0.0;
    let mut tail_prob = 1.0;
    for (t, &count) in counts.iter().enumerate().take(cells).skip(1) {
        let prob = params.p() * params.q().powi(t as i32 - 1);
        tail_prob -= prob;
        let expected = n as f64 * prob;
        stat += (count as f64 - expected).powi(2) / expected;
    }
    let observed_tail: u64 = counts[cells..].iter().sum();
    let expected_tail = n as f64 * tail_prob;
    stat += (observed_tail as f64 - expected_tail).powi(2) / expected_tail;
    let critical = ChiSquared::new((cells - 1) as f64).unwrap().inverse_cdf(0.99);
    (stat, critical)
}

#[test]
fn three_tosses_has_probability_one_eighth() {
    let counts = stopping_time_counts(CoinParams::fair(), 1_000_000, false);
    let freq = counts[3] as f64 / 1e6;
    assert!((freq - 0.125).abs() <= 0.002, "{freq}");
}

#[test]
fn fair_gain_frequencies_pass_chi_square() {
    for by_tosses in [false, true] {
        let counts = stopping_time_counts(CoinParams::fair(), 200_000, by_tosses);
        let (stat, critical) = chi_square_geometric(&counts, CoinParams::fair(), 12);
        assert!(stat < critical, "by_tosses={by_tosses}: {stat} >= {critical}");
    }
}

#[test]
fn biased_gain_frequencies_pass_chi_square() {
    let params = CoinParams::new(1.0 / 3.0).unwrap();
    for by_tosses in [false, true] {
        let counts = stopping_time_counts(params, 200_000, by_tosses);
        let (stat, critical) = chi_square_geometric(&counts, params, 15);
        assert!(stat < critical, "by_tosses={by_tosses}: {stat} >= {critical}");
    }
}

#[test]
fn generalized_gain_formula() {
    let params = CoinParams::new(1.0 / 3.0).unwrap();
    assert!((gain(2, params) - 4.5).abs() < 1e-12);
    assert!((gain(1, params) - 3.0).abs() < 1e-12);
}

#[test]
fn feller_normalization_median() {
    let n = 1usize << 16;
    let ratios: Vec<f64> = (0..200)
        .map(|seed| GainPath::simulate(n, CoinParams::fair(), seed).unwrap().sum(n) / (n as f64 * 16.0))
        .collect();
    let m = median(&ratios);
    assert!((0.9..=1.3).contains(&m), "{m}");
}

#[test]
fn y_path_downward_steps_are_bounded() {
    let gains = GainPath::simulate(1 << 16, CoinParams::fair(), 8).unwrap();
    let path = y_path_approx(&gains, 16).unwrap();
    let first = (1usize << 15) + 1;
    for (i, w) in path.points().windows(2).enumerate() {
        let k = (first + i) as f64;
        let bound = -(gains.sum(first + i) / k + 2.0) / k;
        assert!(w[1].1 - w[0].1 >= bound, "k = {k}");
    }
    // A step is large only when a large gain lands.
    let biggest = path
        .points()
        .windows(2)
        .map(|w| w[1].1 - w[0].1)
        .fold(f64::NEG_INFINITY, f64::max);
    assert!(biggest > 0.0);
}

#[test]
fn y_and_x_paths_are_consistent() {
    for p in [0.5, 1.0 / 3.0] {
        let params = CoinParams::new(p).unwrap();
        let m = 12;
        let n = params.base().powi(m as i32).floor() as usize;
        let gains = GainPath::simulate(n, params, 17).unwrap();
        let y = y_path_approx(&gains, m).unwrap();
        let x = x_path_approx(&gains, m, false).unwrap();
        assert_eq!(y.len(), x.len());
        for (&(t, yv), &(tx, xv)) in y.points().iter().zip(x.points()) {
            assert_eq!(t, tx);
            let lhs = t * (yv + params.log_base(t));
            assert!((lhs - xv).abs() <= 1e-12 * xv.abs().max(1.0), "p = {p}, t = {t}");
        }
    }
}

#[test]
fn semi_selfsimilarity_sides_agree_and_control_rejects() {
    let (a, b) = semi_selfsimilarity_samples(12, 1000, 5).unwrap();
    let threshold = ks_critical_value(0.01, a.len(), b.len());
    assert!(ks_two_sample(&a, &b) < threshold);
    let shifted: Vec<f64> = b.iter().map(|x| x + 1.0).collect();
    assert!(ks_two_sample(&a, &shifted) > threshold);
}

#[test]
fn replicas_are_independent_of_scheduling() {
    let a = GainPath::simulate_replica(4096, CoinParams::fair(), 3, 2).unwrap();
    let b = stpetersburg::game::simulate_replicas(4096, CoinParams::fair(), 3, 4).unwrap();
    assert_eq!(a.sums(), b[2].sums());
}
