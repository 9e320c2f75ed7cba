//! Outage-constrained placement: maximize `t` subject to
//! `Pr(SNR_m >= t) >= 1 - ε_m` for every user.
//!
//! The SNR CCDF is strictly decreasing in the squared distance, so each
//! constraint is again an upper bound `r² <= U_m(t)` found by bisection, and
//! `U_m(t)` is nonincreasing in `t`.

use alloc::vec::Vec;

use crate::bisect::bisect_boundary;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::maxmin::{bisect_level, interval_from_bound, DistanceBound, Solution, SolverTolerances};
use crate::model::{squared_distance_range, ChannelParams, Scenario, SquaredDistanceRange};
use crate::special::ccdf_unchecked;

/// Per-user outage probabilities `ε_m`, each in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutageSpec {
    epsilons: Vec<f64>,
}

impl OutageSpec {
    pub fn new(epsilons: Vec<f64>) -> Result<Self> {
        if epsilons.is_empty() {
            return Err(Error::InvalidScenario("outage spec lists no users"));
        }
        for &e in &epsilons {
            check_epsilon(e)?;
        }
        Ok(Self { epsilons })
    }

    /// The same `ε` for `users` users.
    pub fn uniform(epsilon: f64, users: usize) -> Result<Self> {
        Self::new(alloc::vec![epsilon; users])
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    fn check_against(&self, scenario: &Scenario) -> Result<()> {
        if self.epsilons.len() != scenario.len() {
            return Err(Error::InvalidScenario(
                "outage spec length differs from the user count",
            ));
        }
        Ok(())
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
        })
    }
}

/// Largest squared distance `U(t)` at which `Pr(SNR >= t) >= 1 - ε`,
/// bracketed to `eps_u` (m²) on `[y_min, y_max]`.
pub fn invert_ccdf(
    params: &ChannelParams,
    t: f64,
    epsilon: f64,
    range: SquaredDistanceRange,
    eps_u: f64,
) -> Result<DistanceBound> {
    check_epsilon(epsilon)?;
    Ok(ccdf_bound(params, t, 1.0 - epsilon, range, eps_u))
}

fn ccdf_bound(
    params: &ChannelParams,
    t: f64,
    target: f64,
    range: SquaredDistanceRange,
    eps_u: f64,
) -> DistanceBound {
    if t <= 0.0 {
        return DistanceBound::Vacuous(range.y_max);
    }
    if ccdf_unchecked(params, range.y_min, t) < target {
        return DistanceBound::Infeasible;
    }
    if ccdf_unchecked(params, range.y_max, t) >= target {
        return DistanceBound::Vacuous(range.y_max);
    }
    let (u, _, _) = bisect_boundary(range.y_min, range.y_max, eps_u, 10_000, |y| {
        ccdf_unchecked(params, y, t) >= target
    });
    DistanceBound::Root(u)
}

/// Positions in `[0, D_x]` where user `m` meets its outage target at `t`.
pub fn user_interval_outage(
    scenario: &Scenario,
    user_index: usize,
    t: f64,
    epsilon: f64,
    tol: &SolverTolerances,
) -> Result<Interval> {
    let range = squared_distance_range(scenario, user_index)?;
    let bound = invert_ccdf(
        &scenario.channels()[user_index],
        t,
        epsilon,
        range,
        tol.eps_u * range.y_max,
    )?;
    Ok(interval_from_bound(scenario, user_index, bound))
}

struct OutageProblem<'a> {
    scenario: &'a Scenario,
    targets: Vec<f64>,
    ranges: Vec<SquaredDistanceRange>,
    tol: &'a SolverTolerances,
}

impl<'a> OutageProblem<'a> {
    fn new(scenario: &'a Scenario, spec: &OutageSpec, tol: &'a SolverTolerances) -> Result<Self> {
        tol.validate()?;
        spec.check_against(scenario)?;
        let ranges = (0..scenario.len())
            .map(|m| squared_distance_range(scenario, m))
            .collect::<Result<_>>()?;
        Ok(Self {
            scenario,
            targets: spec.epsilons.iter().map(|e| 1.0 - e).collect(),
            ranges,
            tol,
        })
    }

    fn bound(&self, m: usize, t: f64) -> DistanceBound {
        let range = self.ranges[m];
        ccdf_bound(
            &self.scenario.channels()[m],
            t,
            self.targets[m],
            range,
            self.tol.eps_u * range.y_max,
        )
    }

    fn feasible_set(&self, t: f64) -> Interval {
        let mut set = Interval::new(0.0, self.scenario.dx());
        for m in 0..self.scenario.len() {
            set = set.intersect(&interval_from_bound(self.scenario, m, self.bound(m, t)));
            if set.is_empty() {
                break;
            }
        }
        set
    }

    /// Starting upper bracket: twice the best LoS-limited SNR, `2 ρ η / y_min`.
    fn initial_ceiling(&self) -> f64 {
        self.ranges
            .iter()
            .zip(self.scenario.channels())
            .map(|(r, p)| 2.0 * p.rho * p.eta / r.y_min)
            .fold(0.0, f64::max)
    }
}

/// Doubles `t` until `infeasible(t)` holds.
fn expand_ceiling(mut t: f64, mut feasible: impl FnMut(f64) -> bool) -> f64 {
    for _ in 0..2048 {
        if !feasible(t) {
            break;
        }
        t *= 2.0;
    }
    t
}

/// Positions where every user meets its outage target at `t`.
pub fn feasibility_outage(
    scenario: &Scenario,
    spec: &OutageSpec,
    t: f64,
    tol: &SolverTolerances,
) -> Result<Interval> {
    Ok(OutageProblem::new(scenario, spec, tol)?.feasible_set(t))
}

/// Globally optimal position and threshold under per-user outage targets.
pub fn solve_outage(
    scenario: &Scenario,
    spec: &OutageSpec,
    tol: &SolverTolerances,
) -> Result<Solution> {
    let problem = OutageProblem::new(scenario, spec, tol)?;
    let feasible = |t: f64| !problem.feasible_set(t).is_empty();
    let ceiling = expand_ceiling(problem.initial_ceiling(), feasible);
    let (t_star, outer_iterations) = bisect_level(ceiling, tol, feasible)?;
    let set = problem.feasible_set(t_star);
    let x_star = set
        .midpoint()
        .ok_or(Error::Anomaly("empty feasible set at the bisection lower end"))?;
    let per_user_bounds = (0..scenario.len())
        .map(|m| problem.bound(m, t_star).value().unwrap_or(f64::NAN))
        .collect();
    Ok(Solution {
        t_star,
        x_star,
        feasible: set,
        outer_iterations,
        per_user_bounds,
    })
}

/// Largest `t` meeting every outage target with the antenna fixed at `D_x / 2`.
pub fn fixed_antenna_outage_baseline(
    scenario: &Scenario,
    spec: &OutageSpec,
    tol: &SolverTolerances,
) -> Result<Solution> {
    let problem = OutageProblem::new(scenario, spec, tol)?;
    let x = 0.5 * scenario.dx();
    let r_sq: Vec<f64> = (0..scenario.len()).map(|m| scenario.distance_sq(m, x)).collect();
    let meets_all = |t: f64| {
        r_sq.iter()
            .zip(scenario.channels())
            .zip(&problem.targets)
            .all(|((&r, p), &target)| ccdf_unchecked(p, r, t) >= target)
    };
    let ceiling = expand_ceiling(problem.initial_ceiling(), meets_all);
    let (t_star, outer_iterations) = bisect_level(ceiling, tol, meets_all)?;
    Ok(Solution {
        t_star,
        x_star: x,
        feasible: Interval::point(x),
        outer_iterations,
        per_user_bounds: r_sq,
    })
}
