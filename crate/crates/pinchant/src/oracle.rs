//! Monte-Carlo simulation of the composite LoS/NLoS channel and brute-force
//! grid optimizers. Everything here is an independent reference for the
//! closed-form model and the bisection solvers.
//!
//! Samples are drawn in batches. Batch `i` uses a ChaCha8 generator seeded
//! with the configured seed on stream `i`, so results do not depend on how
//! batches are scheduled across threads; batch statistics are merged in
//! batch order.

use pinchant_core::model::los_phase;
use pinchant_core::{
    ccdf_inst_snr, ChannelParams, Interval, OutageSpec, Scenario, Solution,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    /// Samples per independently seeded block.
    pub batch: u64,
}

impl McConfig {
    pub const DEFAULT_BATCH: u64 = 1 << 16;

    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            batch: Self::DEFAULT_BATCH,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.samples == 0 {
            return Err("samples must be at least 1".into());
        }
        if self.batch == 0 {
            return Err("batch must be at least 1".into());
        }
        Ok(())
    }

    fn batches(&self) -> impl IndexedParallelIterator<Item = (u64, u64)> + '_ {
        let n = self.samples.div_ceil(self.batch) as usize;
        (0..n).into_par_iter().map(move |i| {
            let i = i as u64;
            let start = i * self.batch;
            (i, (self.samples - start).min(self.batch))
        })
    }

    fn rng(&self, batch: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(batch);
        rng
    }
}

/// A Monte-Carlo mean (or probability) with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl McEstimate {
    /// `|value - mean|` in units of the standard error.
    pub fn z_score(&self, value: f64) -> f64 {
        (value - self.mean).abs() / self.std_error
    }

    pub fn agrees_with(&self, value: f64, sigmas: f64) -> bool {
        (value - self.mean).abs() <= sigmas * self.std_error
    }

    /// Distance from a hypothesized probability `p0`, in units of the larger
    /// of the estimator's standard error and the binomial standard error at
    /// `p0`. The second term keeps rare events with few or no hits from
    /// looking precise.
    pub fn probability_z(&self, p0: f64) -> f64 {
        let se0 = (p0 * (1.0 - p0) / self.samples as f64).sqrt();
        (p0 - self.mean).abs() / se0.max(self.std_error)
    }
}

/// One draw of `|h|²` for a link at squared distance `r_sq` with the antenna
/// at `x_pin`: Bernoulli LoS gate, deterministic LoS term of power `η / r²`,
/// and circularly symmetric Gaussian NLoS with power `μ² / r²`.
pub fn sample_channel_power<R: Rng + ?Sized>(
    params: &ChannelParams,
    r_sq: f64,
    x_pin: f64,
    rng: &mut R,
) -> f64 {
    let los = rng.random::<f64>() < (-params.beta * r_sq).exp();
    let sigma = (params.mu_sq / (2.0 * r_sq)).sqrt();
    let mut re = sigma * rng.sample::<f64, _>(StandardNormal);
    let mut im = sigma * rng.sample::<f64, _>(StandardNormal);
    if los {
        let amplitude = (params.eta / r_sq).sqrt();
        let phase = los_phase(params, r_sq, x_pin);
        re += amplitude * phase.cos();
        im -= amplitude * phase.sin();
    }
    re * re + im * im
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0.0 {
            return other;
        }
        if other.n == 0.0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * other.n / n,
            m2: self.m2 + other.m2 + d * d * self.n * other.n / n,
        }
    }

    fn variance(&self) -> f64 {
        if self.n > 1.0 {
            self.m2 / (self.n - 1.0)
        } else {
            0.0
        }
    }
}

/// Mean and unbiased variance of `|h|²` (not scaled by ρ).
pub fn channel_power_moments(params: &ChannelParams, r_sq: f64, x_pin: f64, cfg: &McConfig) -> (McEstimate, f64) {
    let m = cfg
        .batches()
        .map(|(b, len)| {
            let mut rng = cfg.rng(b);
            let mut acc = Moments::default();
            for _ in 0..len {
                acc.push(sample_channel_power(params, r_sq, x_pin, &mut rng));
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Moments::default(), Moments::merge);
    let var = m.variance();
    (
        McEstimate {
            mean: m.mean,
            std_error: (var / m.n).sqrt(),
            samples: cfg.samples,
        },
        var,
    )
}

/// Sample mean of the instantaneous SNR `ρ|h|²`.
pub fn estimate_avg_snr(params: &ChannelParams, r_sq: f64, x_pin: f64, cfg: &McConfig) -> McEstimate {
    let (power, _) = channel_power_moments(params, r_sq, x_pin, cfg);
    McEstimate {
        mean: params.rho * power.mean,
        std_error: params.rho * power.std_error,
        samples: power.samples,
    }
}

/// Empirical `Pr(ρ|h|² >= t)`.
pub fn estimate_ccdf(params: &ChannelParams, r_sq: f64, x_pin: f64, t: f64, cfg: &McConfig) -> McEstimate {
    estimate_ccdf_many(params, r_sq, x_pin, &[t], cfg)[0]
}

/// Empirical CCDF at several thresholds from one set of samples.
///
/// The standard error is binomial, evaluated at `(k + 1/2) / (n + 1)` so it
/// never vanishes at 0 or 1.
pub fn estimate_ccdf_many(
    params: &ChannelParams,
    r_sq: f64,
    x_pin: f64,
    thresholds: &[f64],
    cfg: &McConfig,
) -> Vec<McEstimate> {
    let counts = cfg
        .batches()
        .map(|(b, len)| {
            let mut rng = cfg.rng(b);
            let mut hits = vec![0u64; thresholds.len()];
            for _ in 0..len {
                let snr = params.rho * sample_channel_power(params, r_sq, x_pin, &mut rng);
                for (hit, &t) in hits.iter_mut().zip(thresholds) {
                    *hit += u64::from(snr >= t);
                }
            }
            hits
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(vec![0u64; thresholds.len()], |mut acc, hits| {
            acc.iter_mut().zip(hits).for_each(|(a, h)| *a += h);
            acc
        });
    let n = cfg.samples as f64;
    counts
        .into_iter()
        .map(|k| {
            let p_hat = k as f64 / n;
            let p_floor = (k as f64 + 0.5) / (n + 1.0);
            McEstimate {
                mean: p_hat,
                std_error: (p_floor * (1.0 - p_floor) / n).sqrt(),
                samples: cfg.samples,
            }
        })
        .collect()
}

/// Uniform grid of `points` positions on `[0, dx]`.
pub fn position_grid(dx: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = dx / (points.max(2) - 1) as f64;
    (0..points).map(move |i| (i as f64 * step).min(dx))
}

/// `points` thresholds spaced geometrically on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln() / (points.max(2) - 1) as f64;
    let mut v: Vec<f64> = (0..points).map(|i| lo * (ratio * i as f64).exp()).collect();
    if points > 1 {
        v[points - 1] = hi;
    }
    v
}

/// Exhaustive search of the max–min average SNR over a uniform grid.
///
/// `feasible` spans the neighbouring grid cells around the best point.
pub fn grid_search_maxmin(scenario: &Scenario, grid_points: usize) -> Solution {
    let dx = scenario.dx();
    let step = dx / (grid_points.max(2) - 1) as f64;
    let (best_i, best_t) = position_grid(dx, grid_points)
        .enumerate()
        .map(|(i, x)| (i, scenario.min_avg_snr(x)))
        .fold((0, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
    let x_star = (best_i as f64 * step).min(dx);
    Solution {
        t_star: best_t,
        x_star,
        feasible: Interval::new((x_star - step).max(0.0), (x_star + step).min(dx)),
        outer_iterations: 0,
        per_user_bounds: (0..scenario.len()).map(|m| scenario.distance_sq(m, x_star)).collect(),
    }
}

/// Exhaustive outage search: for every grid position, the largest entry of
/// the ascending `t_grid` at which every user's analytic CCDF meets its
/// target. Returns `t_star = 0` when no grid threshold is feasible anywhere.
pub fn grid_search_outage(
    scenario: &Scenario,
    spec: &OutageSpec,
    grid_points: usize,
    t_grid: &[f64],
) -> Solution {
    let dx = scenario.dx();
    let targets: Vec<f64> = spec.epsilons().iter().map(|e| 1.0 - e).collect();
    let meets = |x: f64, t: f64| {
        (0..scenario.len()).all(|m| {
            let r = scenario.distance_sq(m, x);
            ccdf_inst_snr(&scenario.channels()[m], r, t).unwrap_or(0.0) >= targets[m]
        })
    };
    let xs: Vec<f64> = position_grid(dx, grid_points).collect();
    // Largest feasible index at each x, galloping from the previous answer.
    let best_index = |x: f64, hint: Option<usize>| -> Option<usize> {
        let n = t_grid.len();
        let (mut lo, mut hi) = match hint {
            // lo: known feasible (or -1 as None), hi: known infeasible (or n)
            Some(h) if meets(x, t_grid[h]) => {
                let mut lo = h;
                let mut step = 1;
                loop {
                    let probe = lo + step;
                    if probe >= n {
                        break (Some(lo), n);
                    }
                    if meets(x, t_grid[probe]) {
                        lo = probe;
                        step *= 2;
                    } else {
                        break (Some(lo), probe);
                    }
                }
            }
            Some(h) => (None, h),
            None => (None, n),
        };
        // binary search on (lo, hi)
        loop {
            let start = lo.map_or(0, |l| l + 1);
            if start >= hi {
                return lo;
            }
            let mid = start + (hi - start) / 2;
            if meets(x, t_grid[mid]) {
                lo = Some(mid);
            } else {
                hi = mid;
            }
        }
    };
    let chunk = 512;
    let best = xs
        .par_chunks(chunk)
        .enumerate()
        .map(|(c, block)| {
            let mut hint = None;
            let mut best: Option<(usize, usize)> = None;
            for (i, &x) in block.iter().enumerate() {
                let found = best_index(x, hint);
                hint = found;
                if let Some(j) = found {
                    if best.is_none_or(|(_, bj)| j > bj) {
                        best = Some((c * chunk + i, j));
                    }
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .fold(None, |acc: Option<(usize, usize)>, cur| match acc {
            Some(a) if a.1 >= cur.1 => Some(a),
            _ => Some(cur),
        });
    let (x_star, t_star) = match best {
        Some((i, j)) => (xs[i], t_grid[j]),
        None => (0.5 * dx, 0.0),
    };
    Solution {
        t_star,
        x_star,
        feasible: Interval::point(x_star),
        outer_iterations: 0,
        per_user_bounds: (0..scenario.len()).map(|m| scenario.distance_sq(m, x_star)).collect(),
    }
}

/// Largest `t` with `Pr(SNR >= t) >= 1 - epsilon` for one link, found by
/// bisection in `ln t` to a relative accuracy of about 1e-12.
pub fn user_outage_threshold(params: &ChannelParams, r_sq: f64, epsilon: f64) -> f64 {
    let target = 1.0 - epsilon;
    let meets = |t: f64| ccdf_inst_snr(params, r_sq, t).unwrap_or(0.0) >= target;
    let mut hi = 2.0 * params.rho * (params.eta + params.mu_sq) / r_sq;
    while meets(hi) {
        hi *= 2.0;
    }
    let mut lo = hi * 1e-3;
    while !meets(lo) {
        if lo < f64::MIN_POSITIVE {
            return 0.0;
        }
        hi = lo;
        lo *= 1e-3;
    }
    while hi / lo - 1.0 > 1e-12 {
        let mid = (lo * hi).sqrt();
        if meets(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Thresholds bracketing the outage optimum without running the solver.
/// The antenna at `D_x / 2` is one admissible placement, so the worst
/// user's threshold there is a lower bound; no placement beats any user's
/// threshold at its own closest point, so the smallest of those is an upper
/// bound. Both ends are widened by 0.1%.
pub fn outage_threshold_bracket(s: &Scenario, spec: &OutageSpec) -> (f64, f64) {
    let centre = 0.5 * s.dx();
    let threshold = |m: usize, r_sq: f64| {
        user_outage_threshold(&s.channels()[m], r_sq, spec.epsilons()[m])
    };
    let lo = (0..s.len())
        .map(|m| threshold(m, s.distance_sq(m, centre)))
        .fold(f64::INFINITY, f64::min);
    let hi = (0..s.len())
        .map(|m| threshold(m, s.offset_sq(m)))
        .fold(f64::INFINITY, f64::min);
    (0.999 * lo, 1.001 * hi)
}

/// Relative tolerance for comparing the outage solver with
/// [`grid_search_outage`]: t-grid ratio, twice the bisection tolerance, and
/// the change of the binding users' thresholds over one x-grid step around
/// `x_star`.
pub fn outage_grid_slack(
    scenario: &Scenario,
    spec: &OutageSpec,
    x_star: f64,
    x_step: f64,
    t_ratio: f64,
    eps_t: f64,
) -> f64 {
    let ln_t = |m: usize, x: f64| {
        let x = x.clamp(0.0, scenario.dx());
        let r = scenario.distance_sq(m, x);
        user_outage_threshold(&scenario.channels()[m], r, spec.epsilons()[m]).ln()
    };
    let slope = (0..scenario.len())
        .map(|m| {
            let left = (ln_t(m, x_star) - ln_t(m, x_star - x_step)).abs();
            let right = (ln_t(m, x_star + x_step) - ln_t(m, x_star)).abs();
            left.max(right)
        })
        .fold(0.0, f64::max);
    (t_ratio - 1.0) + 2.0 * eps_t + slope
}

#[cfg(test)]
mod tests {
    use super::*;
    use pinchant_core::{avg_snr, UserPosition};

    fn table2(beta: f64) -> ChannelParams {
        ChannelParams::from_link_budget(28e9, 40.0, -90.0, 1e-9, beta).unwrap()
    }

    #[test]
    fn pure_los_is_deterministic() {
        let p = ChannelParams {
            mu_sq: 1e-30,
            ..table2(0.0)
        };
        let est = estimate_avg_snr(&p, 150.0, 3.0, &McConfig::new(1000, 1));
        let want = p.rho * p.eta / 150.0;
        assert!((est.mean / want - 1.0).abs() < 1e-9);
        assert!(est.std_error < 1e-9 * want);
    }

    #[test]
    fn seed_determinism() {
        let p = table2(0.004);
        let mut cfg = McConfig::new(50_000, 99);
        cfg.batch = 4096;
        let a = estimate_avg_snr(&p, 180.0, 7.0, &cfg);
        let b = estimate_avg_snr(&p, 180.0, 7.0, &cfg);
        assert_eq!(a, b);
        let c = estimate_avg_snr(&p, 180.0, 7.0, &McConfig { seed: 100, ..cfg });
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn ccdf_at_zero_is_one() {
        let est = estimate_ccdf(&table2(0.01), 150.0, 5.0, 0.0, &McConfig::new(10_000, 3));
        assert_eq!(est.mean, 1.0);
        assert!(est.std_error > 0.0);
    }

    #[test]
    fn std_error_scales_with_samples() {
        let p = table2(0.004);
        let a = estimate_avg_snr(&p, 180.0, 7.0, &McConfig::new(200_000, 5));
        let b = estimate_avg_snr(&p, 180.0, 7.0, &McConfig::new(400_000, 5));
        let ratio = a.std_error / b.std_error;
        assert!((ratio - 2f64.sqrt()).abs() < 0.05, "{ratio}");
        assert!(a.agrees_with(avg_snr(&p, 180.0), 4.0));
    }

    #[test]
    fn grids() {
        let xs: Vec<f64> = position_grid(10.0, 11).collect();
        assert_eq!(xs.len(), 11);
        assert_eq!(xs[0], 0.0);
        assert_eq!(xs[10], 10.0);
        let ts = log_grid(1.0, 1e3, 4);
        assert!((ts[1] - 10.0).abs() < 1e-12 && (ts[3] - 1e3).abs() < 1e-9);
    }

    #[test]
    fn grid_maxmin_single_user() {
        let s = Scenario::with_shared_channel(
            10.0,
            10.0,
            10.0,
            vec![UserPosition::new(3.33, 1.0)],
            table2(0.005),
        )
        .unwrap();
        let g = grid_search_maxmin(&s, 101);
        assert!((g.x_star - 3.3).abs() < 1e-12);
        let coarse = grid_search_maxmin(&s, 11).t_star;
        assert!(g.t_star >= coarse);
    }

    #[test]
    fn grid_outage_single_user() {
        let s = Scenario::with_shared_channel(
            10.0,
            10.0,
            10.0,
            vec![UserPosition::new(6.0, 1.0)],
            table2(0.005),
        )
        .unwrap();
        let spec = OutageSpec::uniform(0.1, 1).unwrap();
        let ts = log_grid(1.0, 1e6, 200);
        let g = grid_search_outage(&s, &spec, 51, &ts);
        let best = user_outage_threshold(&s.channels()[0], s.distance_sq(0, 6.0), 0.1);
        let expected = ts.iter().copied().filter(|&t| t <= best).last().unwrap();
        assert_eq!(g.t_star, expected);
        assert!(g.t_star > 1.0);
        // vacuous targets reach the top of the t-grid
        let loose = OutageSpec::uniform(1.0 - 1e-15, 1).unwrap();
        let ts = log_grid(1.0, 1e3, 50);
        assert_eq!(grid_search_outage(&s, &loose, 51, &ts).t_star, ts[49]);
    }
}
