//! Pinching-antenna placement along a single waveguide.
//!
//! The crate is `no_std` (it needs `alloc` for per-user vectors) and contains
//! the channel model, the special functions behind the instantaneous-SNR
//! distribution, and two globally optimal placement solvers:
//!
//! * [`maxmin::solve_maxmin`] maximizes the worst user's average SNR,
//! * [`outage::solve_outage`] maximizes a common SNR threshold subject to
//!   per-user outage probabilities.
//!
//! Both solvers bisect on the threshold `t`; for a fixed `t` every user's
//! constraint reduces to an upper bound on the squared user-to-antenna
//! distance, i.e. a closed interval of antenna positions.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod bisect;
mod error;
pub mod interval;
pub mod maxmin;
pub mod model;
pub mod outage;
pub mod special;

pub use error::{Error, Result};
pub use interval::Interval;
pub use maxmin::{
    feasibility_avg, fixed_antenna_baseline, invert_f, solve_maxmin, two_user_closed_form,
    user_interval_avg, DistanceBound, Solution, SolverTolerances,
};
pub use model::{
    avg_snr, dbm_to_linear, distance_squared, eta_from_carrier, f_scalar, los_probability,
    squared_distance_range, ChannelParams, Scenario, SquaredDistanceRange, UserPosition,
    SPEED_OF_LIGHT,
};
pub use outage::{
    feasibility_outage, fixed_antenna_outage_baseline, invert_ccdf, solve_outage,
    user_interval_outage, OutageSpec,
};
pub use special::{bessel_i0_scaled, ccdf_inst_snr, marcum_q1, MarcumArgs};
