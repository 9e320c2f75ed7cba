//! Geometry, unit conversions and the closed-form average-SNR model.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Default ratio between free-space and guided wavelength (effective index).
pub const DEFAULT_EFFECTIVE_INDEX: f64 = 1.4;

/// Ground position of a user: `x` along the waveguide axis, `y` lateral offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserPosition {
    pub x: f64,
    pub y: f64,
}

impl UserPosition {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Per-user link statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Blockage coefficient β in 1/m²; LoS probability is `exp(-β r²)`.
    pub beta: f64,
    /// Free-space LoS power constant η = c² / (4π f_c)².
    pub eta: f64,
    /// Aggregate NLoS power μ² (sum over scattering clusters).
    pub mu_sq: f64,
    /// Transmit SNR factor ρ = P / σ².
    pub rho: f64,
    pub guided_wavelength: f64,
    pub carrier_wavelength: f64,
}

impl ChannelParams {
    pub fn new(
        beta: f64,
        eta: f64,
        mu_sq: f64,
        rho: f64,
        guided_wavelength: f64,
        carrier_wavelength: f64,
    ) -> Result<Self> {
        let params = Self {
            beta,
            eta,
            mu_sq,
            rho,
            guided_wavelength,
            carrier_wavelength,
        };
        params.validate()?;
        Ok(params)
    }

    /// Builds the parameters from a link budget: carrier frequency in Hz,
    /// transmit and noise powers in dBm, linear μ² and β.
    ///
    /// The guided wavelength defaults to `λ / 1.4`.
    pub fn from_link_budget(
        carrier_hz: f64,
        tx_power_dbm: f64,
        noise_dbm: f64,
        mu_sq: f64,
        beta: f64,
    ) -> Result<Self> {
        let eta = eta_from_carrier(carrier_hz)?;
        let rho = dbm_to_linear(tx_power_dbm) / dbm_to_linear(noise_dbm);
        let lambda = SPEED_OF_LIGHT / carrier_hz;
        Self::new(
            beta,
            eta,
            mu_sq,
            rho,
            lambda / DEFAULT_EFFECTIVE_INDEX,
            lambda,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let checks: [(&'static str, f64, bool); 6] = [
            ("beta", self.beta, self.beta >= 0.0),
            ("eta", self.eta, self.eta > 0.0),
            ("mu_sq", self.mu_sq, self.mu_sq > 0.0),
            ("rho", self.rho, self.rho > 0.0),
            (
                "guided_wavelength",
                self.guided_wavelength,
                self.guided_wavelength > 0.0,
            ),
            (
                "carrier_wavelength",
                self.carrier_wavelength,
                self.carrier_wavelength > 0.0,
            ),
        ];
        for (name, value, ok) in checks {
            if !ok || !value.is_finite() {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(())
    }

    /// Same statistics with a different blockage coefficient.
    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        self.beta = beta;
        self.validate()?;
        Ok(self)
    }
}

/// Deployment: a `dx × dy` region served by a waveguide at height `dv`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    dx: f64,
    dy: f64,
    dv: f64,
    users: Vec<UserPosition>,
    channels: Vec<ChannelParams>,
}

impl Scenario {
    pub fn new(
        dx: f64,
        dy: f64,
        dv: f64,
        users: Vec<UserPosition>,
        channels: Vec<ChannelParams>,
    ) -> Result<Self> {
        for (name, value) in [("dx", dx), ("dy", dy), ("dv", dv)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        if users.is_empty() {
            return Err(Error::InvalidScenario("at least one user is required"));
        }
        if users.len() != channels.len() {
            return Err(Error::InvalidScenario(
                "user and channel lists differ in length",
            ));
        }
        for (index, user) in users.iter().enumerate() {
            let inside = (0.0..=dx).contains(&user.x) && user.y.abs() <= dy / 2.0;
            if !inside {
                return Err(Error::UserOutsideRegion { index });
            }
        }
        for channel in &channels {
            channel.validate()?;
        }
        Ok(Self {
            dx,
            dy,
            dv,
            users,
            channels,
        })
    }

    /// Every user gets the same channel statistics.
    pub fn with_shared_channel(
        dx: f64,
        dy: f64,
        dv: f64,
        users: Vec<UserPosition>,
        channel: ChannelParams,
    ) -> Result<Self> {
        let channels = alloc::vec![channel; users.len()];
        Self::new(dx, dy, dv, users, channels)
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn dv(&self) -> f64 {
        self.dv
    }

    pub fn users(&self) -> &[UserPosition] {
        &self.users
    }

    pub fn channels(&self) -> &[ChannelParams] {
        &self.channels
    }

    pub fn len(&self) -> usize {
        self.users.len()
    }

    pub fn is_empty(&self) -> bool {
        self.users.is_empty()
    }

    /// Squared offset `y_m² + d_v²` of user `m` from the waveguide.
    pub fn offset_sq(&self, m: usize) -> f64 {
        let y = self.users[m].y;
        y * y + self.dv * self.dv
    }

    /// Squared distance from user `m` to an antenna at `x_pin`.
    pub fn distance_sq(&self, m: usize, x_pin: f64) -> f64 {
        distance_squared(self.users[m], self.dv, x_pin)
    }

    /// Average SNR of user `m` with the antenna at `x_pin`.
    pub fn user_avg_snr(&self, m: usize, x_pin: f64) -> f64 {
        avg_snr(&self.channels[m], self.distance_sq(m, x_pin))
    }

    /// Worst user's average SNR with the antenna at `x_pin`.
    pub fn min_avg_snr(&self, x_pin: f64) -> f64 {
        (0..self.len())
            .map(|m| self.user_avg_snr(m, x_pin))
            .fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }
}

/// Extremes of a user's squared distance over antenna positions in `[0, D_x]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquaredDistanceRange {
    pub y_min: f64,
    pub y_max: f64,
}

/// η = c² / (4π f_c)².
pub fn eta_from_carrier(carrier_hz: f64) -> Result<f64> {
    if !(carrier_hz > 0.0 && carrier_hz.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "carrier_frequency",
            value: carrier_hz,
        });
    }
    let k = SPEED_OF_LIGHT / (4.0 * PI * carrier_hz);
    Ok(k * k)
}

/// `10^(v/10)`, i.e. a dB-scale value in linear units of its reference.
pub fn dbm_to_linear(value: f64) -> f64 {
    libm::pow(10.0, value / 10.0)
}

pub fn distance_squared(user: UserPosition, dv: f64, x_pin: f64) -> f64 {
    let dx = user.x - x_pin;
    dx * dx + user.y * user.y + dv * dv
}

pub fn los_probability(params: &ChannelParams, r_sq: f64) -> f64 {
    libm::exp(-params.beta * r_sq)
}

#[inline]
fn snr_of_squared_distance(params: &ChannelParams, y: f64) -> f64 {
    params.rho * (params.eta * libm::exp(-params.beta * y) + params.mu_sq) / y
}

/// Average received SNR `ρ (η e^{-β r²} + μ²) / r²`; `r_sq` must be positive.
pub fn avg_snr(params: &ChannelParams, r_sq: f64) -> f64 {
    snr_of_squared_distance(params, r_sq)
}

/// The average SNR as a function of the squared distance `y > 0`.
///
/// Strictly decreasing and continuous on `(0, ∞)`.
pub fn f_scalar(params: &ChannelParams, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain { name: "y", value: y });
    }
    Ok(snr_of_squared_distance(params, y))
}

pub fn squared_distance_range(scenario: &Scenario, user_index: usize) -> Result<SquaredDistanceRange> {
    scenario.check_index(user_index)?;
    let x = scenario.users[user_index].x;
    let c = scenario.offset_sq(user_index);
    let to_lo = x * x;
    let to_hi = (x - scenario.dx) * (x - scenario.dx);
    let nearest = if (0.0..=scenario.dx).contains(&x) {
        0.0
    } else {
        to_lo.min(to_hi)
    };
    Ok(SquaredDistanceRange {
        y_min: c + nearest,
        y_max: c + to_lo.max(to_hi),
    })
}

/// Phase of the LoS component: free-space propagation plus in-guide travel.
pub fn los_phase(params: &ChannelParams, r_sq: f64, x_pin: f64) -> f64 {
    2.0 * PI * libm::sqrt(r_sq) / params.carrier_wavelength
        + 2.0 * PI * x_pin / params.guided_wavelength
}
