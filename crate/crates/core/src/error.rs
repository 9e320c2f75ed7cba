use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A physical parameter is outside its admissible range.
    InvalidParameter { name: &'static str, value: f64 },
    /// A function was evaluated outside its mathematical domain.
    Domain { name: &'static str, value: f64 },
    /// The scenario violates a structural invariant.
    InvalidScenario(&'static str),
    /// A user (`index`) lies outside the service region.
    UserOutsideRegion { index: usize },
    IndexOutOfRange { index: usize, len: usize },
    /// The two-user closed form needs identical per-user channel statistics.
    UnsupportedAssumption(&'static str),
    /// The closed-form optimum falls outside `[0, D_x]`.
    BoundaryRegime { x: f64 },
    /// Bisection hit `max_iter` before the bracket reached `eps_t`.
    NoConvergence { iterations: usize },
    /// A solver invariant failed, e.g. an empty set at a feasible level.
    Anomaly(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Error::Domain { name, value } => write!(f, "{name} = {value} is outside the domain"),
            Error::InvalidScenario(why) => write!(f, "invalid scenario: {why}"),
            Error::UserOutsideRegion { index } => {
                write!(f, "user {index} lies outside the service region")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "user index {index} out of range for {len} users")
            }
            Error::UnsupportedAssumption(why) => write!(f, "unsupported assumption: {why}"),
            Error::BoundaryRegime { x } => write!(
                f,
                "closed-form position {x} lies outside the deployment range; use the bisection solver"
            ),
            Error::NoConvergence { iterations } => {
                write!(f, "bisection did not converge in {iterations} iterations")
            }
            Error::Anomaly(why) => write!(f, "solver anomaly: {why}"),
        }
    }
}

impl core::error::Error for Error {}
