//! Max–min average-SNR placement.
//!
//! For a target level `t` each user's constraint `avg_snr >= t` becomes
//! `r² <= α(t)` because the average SNR is strictly decreasing in the squared
//! distance. That is an interval of antenna positions; the intervals shrink
//! as `t` grows, so the largest `t` with a nonempty intersection is found by
//! bisection.

use alloc::vec::Vec;

use crate::bisect::bisect_boundary;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::{avg_snr, squared_distance_range, ChannelParams, Scenario, SquaredDistanceRange};

/// Accuracy controls shared by both solvers. The three `eps_*` values are
/// relative and must lie in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverTolerances {
    /// Relative accuracy of the outer bisection on the threshold `t`.
    pub eps_t: f64,
    /// Accuracy of the inner inversion of the average SNR, relative to the
    /// user's largest squared distance `y_max`.
    pub eps_y: f64,
    /// Same as `eps_y` for the inversion of the SNR CCDF.
    pub eps_u: f64,
    pub max_iter: usize,
}

impl Default for SolverTolerances {
    fn default() -> Self {
        Self {
            eps_t: 1e-3,
            eps_y: 1e-9,
            eps_u: 1e-9,
            max_iter: 200,
        }
    }
}

impl SolverTolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("eps_t", self.eps_t),
            ("eps_y", self.eps_y),
            ("eps_u", self.eps_u),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter {
                name: "max_iter",
                value: 0.0,
            });
        }
        Ok(())
    }
}

/// Result of a placement solver.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Guaranteed SNR level (a feasible lower bracket of the optimum).
    pub t_star: f64,
    /// Antenna position, the midpoint of `feasible`.
    pub x_star: f64,
    /// Feasible position set at `t_star`.
    pub feasible: Interval,
    pub outer_iterations: usize,
    /// Per-user squared-distance bounds at `t_star`, in m².
    pub per_user_bounds: Vec<f64>,
}

/// Upper bound on a user's squared distance implied by an SNR target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceBound {
    /// The target is not reachable anywhere on the waveguide.
    Infeasible,
    /// The target holds on the whole waveguide; carries `y_max`.
    Vacuous(f64),
    /// The target holds exactly for squared distances up to this value.
    Root(f64),
}

impl DistanceBound {
    pub fn value(&self) -> Option<f64> {
        match *self {
            DistanceBound::Infeasible => None,
            DistanceBound::Vacuous(y) | DistanceBound::Root(y) => Some(y),
        }
    }
}

/// Solves `f(α) = t` for the squared-distance threshold `α` on
/// `[y_min, y_max]` to absolute accuracy `eps_y` (m²).
///
/// The returned root is the lower end of the final bracket, so `f(α) >= t`.
pub fn invert_f(
    params: &ChannelParams,
    t: f64,
    range: SquaredDistanceRange,
    eps_y: f64,
) -> DistanceBound {
    let best = avg_snr(params, range.y_min);
    if t > best {
        return DistanceBound::Infeasible;
    }
    if t == best {
        return DistanceBound::Root(range.y_min);
    }
    if t <= avg_snr(params, range.y_max) {
        return DistanceBound::Vacuous(range.y_max);
    }
    let (alpha, _, _) = bisect_boundary(range.y_min, range.y_max, eps_y, 10_000, |y| {
        avg_snr(params, y) >= t
    });
    DistanceBound::Root(alpha)
}

/// Positions whose squared distance to user `m` stays within `bound`.
pub(crate) fn interval_from_bound(scenario: &Scenario, m: usize, bound: DistanceBound) -> Interval {
    match bound {
        DistanceBound::Infeasible => Interval::Empty,
        DistanceBound::Vacuous(_) => Interval::new(0.0, scenario.dx()),
        DistanceBound::Root(y) => {
            let radius = libm::sqrt((y - scenario.offset_sq(m)).max(0.0));
            Interval::ball_in_range(scenario.users()[m].x, radius, scenario.dx())
        }
    }
}

fn avg_bound(scenario: &Scenario, m: usize, range: SquaredDistanceRange, t: f64, tol: &SolverTolerances) -> DistanceBound {
    if t <= 0.0 {
        return DistanceBound::Vacuous(range.y_max);
    }
    invert_f(&scenario.channels()[m], t, range, tol.eps_y * range.y_max)
}

/// Positions in `[0, D_x]` where user `m`'s average SNR is at least `t`.
pub fn user_interval_avg(
    scenario: &Scenario,
    user_index: usize,
    t: f64,
    tol: &SolverTolerances,
) -> Result<Interval> {
    let range = squared_distance_range(scenario, user_index)?;
    let bound = avg_bound(scenario, user_index, range, t, tol);
    Ok(interval_from_bound(scenario, user_index, bound))
}

/// Positions where every user's average SNR is at least `t`.
pub fn feasibility_avg(scenario: &Scenario, t: f64, tol: &SolverTolerances) -> Interval {
    let ranges = user_ranges(scenario);
    feasible_set_avg(scenario, &ranges, t, tol)
}

fn user_ranges(scenario: &Scenario) -> Vec<SquaredDistanceRange> {
    (0..scenario.len())
        .map(|m| squared_distance_range(scenario, m).expect("index in range"))
        .collect()
}

fn feasible_set_avg(
    scenario: &Scenario,
    ranges: &[SquaredDistanceRange],
    t: f64,
    tol: &SolverTolerances,
) -> Interval {
    // A user whose best-case SNR is below t makes the level infeasible
    // without any inversion.
    let unreachable = ranges
        .iter()
        .zip(scenario.channels())
        .any(|(r, p)| t > avg_snr(p, r.y_min));
    if unreachable {
        return Interval::Empty;
    }
    let mut set = Interval::new(0.0, scenario.dx());
    for (m, range) in ranges.iter().enumerate() {
        let bound = avg_bound(scenario, m, *range, t, tol);
        set = set.intersect(&interval_from_bound(scenario, m, bound));
        if set.is_empty() {
            break;
        }
    }
    set
}

/// Outer bisection on `t` over `[0, t_hi]`, where `t_hi` must be infeasible.
///
/// Stops once the bracket is within `eps_t` of its upper end. Returns the
/// feasible lower end and the iteration count, or `NoConvergence` if
/// `max_iter` runs out first.
pub(crate) fn bisect_level(
    t_hi: f64,
    tol: &SolverTolerances,
    mut feasible: impl FnMut(f64) -> bool,
) -> Result<(f64, usize)> {
    let (mut lo, mut hi) = (0.0_f64, t_hi);
    let mut iterations = 0;
    while hi - lo > tol.eps_t * hi && iterations < tol.max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    if hi - lo > tol.eps_t * hi {
        return Err(Error::NoConvergence { iterations });
    }
    Ok((lo, iterations))
}

/// Globally optimal antenna position for the max–min average SNR.
pub fn solve_maxmin(scenario: &Scenario, tol: &SolverTolerances) -> Result<Solution> {
    tol.validate()?;
    let ranges = user_ranges(scenario);
    let best_level = ranges
        .iter()
        .zip(scenario.channels())
        .map(|(r, p)| avg_snr(p, r.y_min))
        .fold(0.0, f64::max);
    let (t_star, outer_iterations) = bisect_level(2.0 * best_level, tol, |t| {
        !feasible_set_avg(scenario, &ranges, t, tol).is_empty()
    })?;
    let feasible = feasible_set_avg(scenario, &ranges, t_star, tol);
    let x_star = feasible
        .midpoint()
        .ok_or(Error::Anomaly("empty feasible set at the bisection lower end"))?;
    let per_user_bounds = ranges
        .iter()
        .enumerate()
        .map(|(m, r)| avg_bound(scenario, m, *r, t_star, tol).value().unwrap_or(f64::NAN))
        .collect();
    Ok(Solution {
        t_star,
        x_star,
        feasible,
        outer_iterations,
        per_user_bounds,
    })
}

/// Closed-form optimum for two users with identical channel statistics.
///
/// With users sorted by `x`, `Δ = x2 - x1`, and offsets `C1, C2`:
/// if `Δ <= √(Cmax - Cmin)` the antenna sits at the user with the larger
/// offset and `α* = Cmax`; otherwise it sits at the biased midpoint
/// `(x1 + x2)/2 + (C2 - C1)/(2Δ)` with
/// `α* = Δ²/4 + (C1 + C2)/2 + (C1 - C2)²/(4Δ²)`. Then `t* = f(α*)`.
pub fn two_user_closed_form(scenario: &Scenario) -> Result<Solution> {
    if scenario.len() != 2 {
        return Err(Error::InvalidScenario(
            "the closed form requires exactly two users",
        ));
    }
    let (p1, p2) = (&scenario.channels()[0], &scenario.channels()[1]);
    if p1.rho != p2.rho || p1.mu_sq != p2.mu_sq {
        return Err(Error::UnsupportedAssumption(
            "both users must share the transmit SNR and NLoS power",
        ));
    }
    if p1.eta != p2.eta || p1.beta != p2.beta {
        return Err(Error::UnsupportedAssumption(
            "both users must share the LoS constant and blockage coefficient",
        ));
    }
    let (i1, i2) = if scenario.users()[0].x <= scenario.users()[1].x {
        (0, 1)
    } else {
        (1, 0)
    };
    let (x1, x2) = (scenario.users()[i1].x, scenario.users()[i2].x);
    let (c1, c2) = (scenario.offset_sq(i1), scenario.offset_sq(i2));
    let delta = x2 - x1;
    let (c_max, c_min) = (c1.max(c2), c1.min(c2));

    let (alpha, x_star) = if delta <= libm::sqrt(c_max - c_min) {
        (c_max, if c2 >= c1 { x2 } else { x1 })
    } else {
        let alpha = delta * delta / 4.0
            + (c1 + c2) / 2.0
            + (c1 - c2) * (c1 - c2) / (4.0 * delta * delta);
        (alpha, 0.5 * (x1 + x2) + (c2 - c1) / (2.0 * delta))
    };
    if !(0.0..=scenario.dx()).contains(&x_star) {
        return Err(Error::BoundaryRegime { x: x_star });
    }
    Ok(Solution {
        t_star: avg_snr(p1, alpha),
        x_star,
        feasible: Interval::point(x_star),
        outer_iterations: 0,
        per_user_bounds: alloc::vec![alpha; 2],
    })
}

/// Conventional antenna fixed at the centre of the waveguide, `D_x / 2`.
pub fn fixed_antenna_baseline(scenario: &Scenario) -> Solution {
    let x = 0.5 * scenario.dx();
    Solution {
        t_star: scenario.min_avg_snr(x),
        x_star: x,
        feasible: Interval::point(x),
        outer_iterations: 0,
        per_user_bounds: (0..scenario.len())
            .map(|m| scenario.distance_sq(m, x))
            .collect(),
    }
}
