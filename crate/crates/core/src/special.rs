//! Modified Bessel function I0, the first-order Marcum Q function and the
//! CCDF of the instantaneous SNR under random LoS blockage.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::ChannelParams;

/// Poisson probabilities below this are treated as zero mass.
const PMF_FLOOR: f64 = 1e-20;

/// Crossover between the power series and the asymptotic expansion of I0.
const I0_SERIES_LIMIT: f64 = 15.0;

/// `e^{-x} I0(x)` for `x >= 0`.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain { name: "x", value: x });
    }
    if x <= I0_SERIES_LIMIT {
        // I0(x) = Σ (x²/4)^k / (k!)²
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        while term > 1e-17 * sum {
            term *= q / (k * k);
            sum += term;
            k += 1.0;
        }
        Ok(sum * libm::exp(-x))
    } else {
        // e^{-x} I0(x) ~ (2πx)^{-1/2} Σ ((2k-1)!!)² / (k! (8x)^k)
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        loop {
            let next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
            if next >= term || next < 1e-17 * sum {
                break;
            }
            term = next;
            sum += term;
            k += 1.0;
        }
        Ok(sum / libm::sqrt(2.0 * PI * x))
    }
}

/// Arguments of the first-order Marcum Q function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarcumArgs {
    a: f64,
    b: f64,
}

impl MarcumArgs {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::Domain { name: "a", value: a });
        }
        if !(b >= 0.0) {
            return Err(Error::Domain { name: "b", value: b });
        }
        Ok(Self { a, b })
    }

    /// Noncentrality `a = √2 √η / μ` of the LoS-conditioned envelope.
    pub fn noncentrality(params: &ChannelParams) -> f64 {
        libm::sqrt(2.0 * params.eta / params.mu_sq)
    }

    /// Arguments for a link at squared distance `r_sq` and threshold `t`.
    pub fn for_link(params: &ChannelParams, r_sq: f64, t: f64) -> Result<Self> {
        let b = libm::sqrt(2.0 * r_sq * t / (params.rho * params.mu_sq));
        Self::new(Self::noncentrality(params), b)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// `Q1(a, b) = ∫_b^∞ x exp(-(x² + a²)/2) I0(a x) dx`.
///
/// Evaluated through the Poisson mixture `Q1 = P(Y <= X)` with
/// `X ~ Poisson(a²/2)` and `Y ~ Poisson(b²/2)`. When `a > b` the complement
/// `P(Y > X)` is summed instead, so both tails keep relative accuracy. All
/// terms are nonnegative; mass below `1e-20` per term is dropped.
pub fn marcum_q1(args: MarcumArgs) -> f64 {
    q1_halves(0.5 * args.a * args.a, 0.5 * args.b * args.b)
}

/// Q1 in terms of `lam = a²/2` and `nu = b²/2`.
pub(crate) fn q1_halves(lam: f64, nu: f64) -> f64 {
    if nu <= 0.0 {
        return 1.0;
    }
    if lam <= 0.0 {
        return libm::exp(-nu);
    }
    if nu.is_infinite() {
        return 0.0;
    }
    if lam > nu {
        (1.0 - poisson_race(nu, lam, 1)).clamp(0.0, 1.0)
    } else {
        poisson_race(lam, nu, 0)
    }
}

/// `Σ_k P(O = k) P(I <= k - shift)` for `O ~ Poisson(outer)` and
/// `I ~ Poisson(inner)`.
fn poisson_race(outer: f64, inner: f64, shift: u64) -> f64 {
    let (k0, k1) = poisson_support(outer);
    let k0 = k0.max(shift);
    if k0 > k1 {
        return 0.0;
    }
    let mode_in = libm::floor(inner);
    let cdf = |m: u64| {
        if (m as f64) < mode_in {
            poisson_cdf_below_mode(m, inner)
        } else {
            1.0 - poisson_sf_above_mode(m, inner)
        }
    };

    // Skip leading k where P(I <= k - shift) is still negligible.
    let g0 = cdf(k0 - shift);
    let k_start = if g0 >= PMF_FLOOR {
        k0
    } else {
        let hi = ((k1 - shift) as f64).min(mode_in) as u64;
        if lower_tail_bound(hi, inner) < PMF_FLOOR {
            return 0.0;
        }
        // first m in (k0 - shift, hi] whose lower-tail bound reaches the floor
        let (mut lo, mut hi) = (k0 - shift, hi);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if lower_tail_bound(mid, inner) < PMF_FLOOR {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi + shift
    };

    let mut g = if k_start == k0 { g0 } else { cdf(k_start - shift) };
    let mut po = poisson_pmf(k_start, outer);
    let mut pi = poisson_pmf(k_start - shift, inner);
    let mut q = po * g;
    for k in (k_start + 1)..=k1 {
        po *= outer / k as f64;
        pi *= inner / (k - shift) as f64;
        g = (g + pi).min(1.0);
        q += po * g;
    }
    q.clamp(0.0, 1.0)
}

/// Range `[k0, k1]` outside of which `Poisson(lam)` probabilities fall
/// below [`PMF_FLOOR`].
fn poisson_support(lam: f64) -> (u64, u64) {
    let mode = libm::floor(lam) as u64;
    let p_mode = poisson_pmf(mode, lam);
    let mut p = p_mode;
    let mut k0 = mode;
    while k0 > 0 && p >= PMF_FLOOR {
        p *= k0 as f64 / lam;
        k0 -= 1;
    }
    let mut p = p_mode;
    let mut k1 = mode;
    while p >= PMF_FLOOR {
        k1 += 1;
        p *= lam / k1 as f64;
    }
    (k0, k1)
}

/// Upper bound on `P(Y <= k)` for `k` below the mode of `Poisson(nu)`.
fn lower_tail_bound(k: u64, nu: f64) -> f64 {
    let r = k as f64 / nu;
    if r >= 1.0 {
        return 1.0;
    }
    poisson_pmf(k, nu) / (1.0 - r)
}

/// `P(Y <= k)` for `k` at or below the mode, summed downward.
fn poisson_cdf_below_mode(k: u64, nu: f64) -> f64 {
    let mut term = poisson_pmf(k, nu);
    let mut sum = term;
    let mut j = k;
    while j > 0 && term > 1e-22 * sum {
        term *= j as f64 / nu;
        sum += term;
        j -= 1;
    }
    sum
}

/// `P(Y > k)` for `k` at or above the mode, summed upward.
fn poisson_sf_above_mode(k: u64, nu: f64) -> f64 {
    let mut j = k + 1;
    let mut term = poisson_pmf(j, nu);
    let mut sum = term;
    while term > 1e-22 * sum && term > 0.0 {
        j += 1;
        term *= nu / j as f64;
        sum += term;
    }
    sum
}

/// Poisson probability mass via the saddle-point form
/// `exp(-stirlerr(k) - bd0(k, lam)) / sqrt(2πk)`.
pub(crate) fn poisson_pmf(k: u64, lam: f64) -> f64 {
    if k == 0 {
        return libm::exp(-lam);
    }
    let kf = k as f64;
    libm::exp(-stirling_error(kf) - deviance_term(kf, lam)) / libm::sqrt(2.0 * PI * kf)
}

/// `ln k! - (k + 1/2) ln k + k - ln √(2π)`.
fn stirling_error(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n <= 15.0 {
        return libm::lgamma(n + 1.0) - (n + 0.5) * libm::log(n) + n
            - 0.5 * libm::log(2.0 * PI);
    }
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// `x ln(x/m) + m - x`, evaluated without cancellation when `x ≈ m`.
fn deviance_term(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let v2 = v * v;
        let mut ej = 2.0 * x * v;
        let mut j = 1.0;
        loop {
            ej *= v2;
            let next = s + ej / (2.0 * j + 1.0);
            if next == s {
                return next;
            }
            s = next;
            j += 1.0;
        }
    }
    x * libm::log(x / m) + m - x
}

/// `Pr(ρ|h|² >= t)` for a link at squared distance `r_sq`:
///
/// `e^{-β r²} Q1(a, b) + (1 - e^{-β r²}) exp(-t r² / (ρ μ²))`
///
/// with `a = √2 √η / μ` and `b = √2 r √(t/ρ) / μ`.
pub fn ccdf_inst_snr(params: &ChannelParams, r_sq: f64, t: f64) -> Result<f64> {
    if !(r_sq > 0.0) {
        return Err(Error::Domain {
            name: "r_sq",
            value: r_sq,
        });
    }
    if !(t >= 0.0) {
        return Err(Error::Domain { name: "t", value: t });
    }
    Ok(ccdf_unchecked(params, r_sq, t))
}

pub(crate) fn ccdf_unchecked(params: &ChannelParams, r_sq: f64, t: f64) -> f64 {
    let p_los = libm::exp(-params.beta * r_sq);
    // b²/2 and a²/2
    let nu = r_sq * t / (params.rho * params.mu_sq);
    let lam = params.eta / params.mu_sq;
    let los = q1_halves(lam, nu);
    let nlos = libm::exp(-nu);
    (p_los * los + (1.0 - p_los) * nlos).clamp(0.0, 1.0)
}
