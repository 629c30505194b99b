//! Harmonic-oscillator working medium.
//!
//! On the hot isotherm the oscillator sits in a squeezed thermal state with
//! energy `ω(n + 1/2) cosh 2r = ω(N + 1/2)`; heats follow from the bosonic
//! entropy `g(N)` of the effective occupancy `N`. The cold bath is thermal.
//! The squeeze phase never enters.

use crate::error::{positive, Result};
use crate::reservoir::{squeezed_occupancy, Reservoir};
use crate::special::{bosonic_entropy, cosh, coth, log_sinh, xlogx};
use crate::tls::Isochore;

/// `U = (ω/2) cosh(2r) coth(ω/2T)`.
pub fn internal_energy(omega: f64, reservoir: &Reservoir) -> Result<f64> {
    positive("omega", omega)?;
    let x = omega / (2.0 * reservoir.temperature());
    Ok(0.5 * omega * cosh(2.0 * reservoir.squeeze_r()) * coth(x))
}

/// `F(ω) = [1 + S_r^{-1} coth(ω/2T)] / 2`, which equals `N + 1`.
pub fn coefficient_f(omega: f64, temperature: f64, r: f64) -> Result<f64> {
    positive("omega", omega)?;
    positive("temperature", temperature)?;
    Ok(0.5 * (1.0 + cosh(2.0 * r) * coth(omega / (2.0 * temperature))))
}

/// `F log F - (F-1) log(F-1)`, the summand of the hot-isotherm heat.
///
/// Equal to `g(F - 1)`; kept literal for cross-checks.
pub fn entropy_summand(f: f64) -> f64 {
    xlogx(f) - xlogx(f - 1.0)
}

fn hot_entropy(omega: f64, hot: &Reservoir) -> Result<f64> {
    Ok(bosonic_entropy(squeezed_occupancy(omega, hot)?.big_n))
}

/// `Q_AB = T_h Σ_i (-1)^{i+1} [F_i log F_i - (F_i - 1) log(F_i - 1)]`.
///
/// The summands are evaluated as `g(N_i)` from the occupancy directly rather
/// than through `F_i - 1`, which cancels when `N` is tiny.
pub fn heat_isothermal_hot(omega1: f64, omega2: f64, hot: &Reservoir) -> Result<f64> {
    positive("omega1", omega1)?;
    positive("omega2", omega2)?;
    Ok(hot.temperature() * (hot_entropy(omega1, hot)? - hot_entropy(omega2, hot)?))
}

/// `W_AB = Q_AB + U(A) - U(B)`.
pub fn work_isothermal_hot(omega1: f64, omega2: f64, hot: &Reservoir) -> Result<f64> {
    let q = heat_isothermal_hot(omega1, omega2, hot)?;
    Ok(q + internal_energy(omega2, hot)? - internal_energy(omega1, hot)?)
}

/// `Q_BC = (ω1/2)[coth(ω1/2T_c) - S_r^{-1} coth(ω1/2T_h)]` or
/// `Q_DA = (ω2/2)[S_r^{-1} coth(ω2/2T_h) - coth(ω2/2T_c)]`.
pub fn heat_isochoric(
    omega: f64,
    hot: &Reservoir,
    cold: &Reservoir,
    direction: Isochore,
) -> Result<f64> {
    cold.ensure_thermal()?;
    positive("omega", omega)?;
    let inv_s = cosh(2.0 * hot.squeeze_r());
    let hot_c = coth(omega / (2.0 * hot.temperature()));
    let cold_c = coth(omega / (2.0 * cold.temperature()));
    Ok(match direction {
        Isochore::Cooling => 0.5 * omega * (cold_c - inv_s * hot_c),
        Isochore::Heating => 0.5 * omega * (inv_s * hot_c - cold_c),
    })
}

fn cold_args(omega1: f64, omega2: f64, cold: &Reservoir) -> Result<(f64, f64)> {
    cold.ensure_thermal()?;
    positive("omega1", omega1)?;
    positive("omega2", omega2)?;
    let tc = cold.temperature();
    Ok((omega1 / (2.0 * tc), omega2 / (2.0 * tc)))
}

/// `Q_CD = T_c log[sinh(ω1/2T_c)/sinh(ω2/2T_c)] + (ω2/2) coth(ω2/2T_c) - (ω1/2) coth(ω1/2T_c)`.
pub fn heat_isothermal_cold(omega1: f64, omega2: f64, cold: &Reservoir) -> Result<f64> {
    let (x1, x2) = cold_args(omega1, omega2, cold)?;
    Ok(
        cold.temperature() * (log_sinh(x1) - log_sinh(x2)) + 0.5 * omega2 * coth(x2)
            - 0.5 * omega1 * coth(x1),
    )
}

/// `W_CD = Q_CD - (U(D) - U(C)) = T_c log[sinh(ω1/2T_c)/sinh(ω2/2T_c)]`.
pub fn work_isothermal_cold(omega1: f64, omega2: f64, cold: &Reservoir) -> Result<f64> {
    let (x1, x2) = cold_args(omega1, omega2, cold)?;
    Ok(cold.temperature() * (log_sinh(x1) - log_sinh(x2)))
}

/// Net work per cycle, `W_AB + W_CD`; equals the sum of the four heats.
pub fn total_work(omega1: f64, omega2: f64, hot: &Reservoir, cold: &Reservoir) -> Result<f64> {
    Ok(work_isothermal_hot(omega1, omega2, hot)? + work_isothermal_cold(omega1, omega2, cold)?)
}

/// `Q_AB + T_c log[sinh/sinh]`: the total-work display without the
/// `U(A) - U(B)` term of the hot isotherm. It agrees with [`total_work`] only
/// when `ω/T_h → 0`; kept for comparison, never used by the cycle.
pub fn total_work_without_hot_energy_change(
    omega1: f64,
    omega2: f64,
    hot: &Reservoir,
    cold: &Reservoir,
) -> Result<f64> {
    Ok(heat_isothermal_hot(omega1, omega2, hot)? + work_isothermal_cold(omega1, omega2, cold)?)
}

/// Thermal oscillator entropy from the partition function,
/// `x coth x - log(2 sinh x)` with `x = ω/2T`.
#[cfg(test)]
pub(crate) fn thermal_entropy(omega: f64, temperature: f64) -> f64 {
    let x = omega / (2.0 * temperature);
    x * coth(x) - core::f64::consts::LN_2 - log_sinh(x)
}
