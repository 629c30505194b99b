//! Two-level working medium, `H = (ω/2) σ_z`, excited level at `+ω/2`.
//!
//! In contact with a squeezed bath at `(T, r)` the medium relaxes to the
//! diagonal state `diag(N, N + 1)/(2N + 1)`. Every stroke quantity below is a
//! closed form of that state; the cold bath must be thermal.
//!
//! Stroke labels follow the cycle
//! `A(ω2, hot) → B(ω1, hot) → C(ω1, cold) → D(ω2, cold) → A`.

use crate::error::{positive, Result};
use crate::reservoir::{squeezed_occupancy, thermal_occupation, Reservoir, SqueezeFactors};
use crate::special::{
    binary_entropy, cosh, exp, ln, ln_1p, log1p_scaled_sinh2, log_add_exp, log_cosh, sinh, tanh,
};

/// Which isochoric stroke: `B → C` cools at `ω1`, `D → A` heats at `ω2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isochore {
    Cooling,
    Heating,
}

/// Stationary populations `(p_excited, p_ground)`.
pub fn steady_state(omega: f64, reservoir: &Reservoir) -> Result<(f64, f64)> {
    let big_n = squeezed_occupancy(omega, reservoir)?.big_n;
    let z = 2.0 * big_n + 1.0;
    Ok((big_n / z, (big_n + 1.0) / z))
}

/// `U = -(ω/2) sech(2r) tanh(ω/2T)`, equal to `-ω / (2(2N + 1))`.
pub fn internal_energy(omega: f64, reservoir: &Reservoir) -> Result<f64> {
    positive("omega", omega)?;
    let x = omega / (2.0 * reservoir.temperature());
    Ok(-0.5 * omega * reservoir.factors().s_r * tanh(x))
}

/// Von Neumann entropy of the stationary state, as the binary entropy of the
/// excited population `N/(2N+1)`.
pub fn entropy(omega: f64, reservoir: &Reservoir) -> Result<f64> {
    let (p_e, _) = steady_state(omega, reservoir)?;
    Ok(binary_entropy(p_e))
}

/// The same entropy written in terms of `n` and `r` directly:
///
/// `S = -[(cosh²r + n c) log((2n+1+1/c)/(4n+2)) + (n c + sinh²r) log((n + sinh²r/c)/(2n+1))] / ((2n+1) c)`
/// with `c = cosh 2r`.
///
/// The second logarithm carries `sinh²r / cosh 2r`; a `cosh² 2r` there would
/// not reproduce the excited population.
pub fn entropy_closed_form(omega: f64, reservoir: &Reservoir) -> Result<f64> {
    let n = thermal_occupation(omega, reservoir.temperature())?;
    let r = reservoir.squeeze_r();
    let c = cosh(2.0 * r);
    let (ch2, sh2) = (cosh(r) * cosh(r), sinh(r) * sinh(r));
    let two_n1 = 2.0 * n + 1.0;
    let ground_weight = ch2 + n * c;
    let excited_weight = n * c + sh2;
    let ground = weighted_log(ground_weight, (two_n1 + 1.0 / c) / (4.0 * n + 2.0));
    let excited = weighted_log(excited_weight, (n + sh2 / c) / two_n1);
    Ok(-(ground + excited) / (two_n1 * c))
}

fn weighted_log(weight: f64, arg: f64) -> f64 {
    if weight == 0.0 {
        0.0
    } else {
        weight * ln(arg)
    }
}

/// The bracketed logarithm shared by `F` and `G`:
/// `log[(1+S+e^{-y}(1-S)) / (1+S+e^{y}(1-S))]` with `y = ω/T`.
///
/// The denominator is factored as `e^y ((1-S) + e^{-y}(1+S))` and summed in
/// log space, so neither `e^y` nor `1-S` is formed naively.
fn fg_log_ratio(y: f64, r: f64) -> f64 {
    let s = SqueezeFactors::new(r).s_r;
    let one_minus_s = SqueezeFactors::one_minus_s_r(r);
    let e = exp(-y);
    let num = ln_1p(s + e * one_minus_s);
    let den = y + log_add_exp(ln(one_minus_s), ln_1p(s) - y);
    num - den
}

/// `F(ω) = S_r {1 + (T/ω) log[(1+S_r+e^{-ω/T}(1-S_r)) / (1+S_r+e^{ω/T}(1-S_r))]}`.
///
/// Exactly 1 at `r = 0`; tends to 0 as `ω/T → ∞` for `r > 0`.
pub fn coefficient_f(omega: f64, temperature: f64, r: f64) -> Result<f64> {
    Ok(SqueezeFactors::new(r).s_r + coefficient_g(omega, temperature, r)?)
}

/// `G(ω) = S_r (T/ω) log[...]`, so that `F = S_r + G`.
pub fn coefficient_g(omega: f64, temperature: f64, r: f64) -> Result<f64> {
    positive("omega", omega)?;
    positive("temperature", temperature)?;
    let y = omega / temperature;
    Ok(SqueezeFactors::new(r).s_r * fg_log_ratio(y, r) / y)
}

struct HotStroke {
    log_cosh_term: f64,
    sinh_term: f64,
    x1: f64,
    x2: f64,
}

fn hot_stroke(omega1: f64, omega2: f64, hot: &Reservoir) -> Result<HotStroke> {
    positive("omega1", omega1)?;
    positive("omega2", omega2)?;
    let th = hot.temperature();
    let (x1, x2) = (omega1 / (2.0 * th), omega2 / (2.0 * th));
    let k = SqueezeFactors::one_minus_s_r_sq(hot.squeeze_r());
    Ok(HotStroke {
        log_cosh_term: th * (log_cosh(x1) - log_cosh(x2)),
        sinh_term: 0.5 * th * (log1p_scaled_sinh2(k, x2) - log1p_scaled_sinh2(k, x1)),
        x1,
        x2,
    })
}

/// `Q_AB`, heat exchanged with the squeezed bath while the gap goes `ω2 → ω1`.
pub fn heat_isothermal_hot(omega1: f64, omega2: f64, hot: &Reservoir) -> Result<f64> {
    let s = hot_stroke(omega1, omega2, hot)?;
    let (th, r) = (hot.temperature(), hot.squeeze_r());
    let f1 = coefficient_f(omega1, th, r)?;
    let f2 = coefficient_f(omega2, th, r)?;
    Ok(
        s.log_cosh_term + f2 * 0.5 * omega2 * tanh(s.x2) - f1 * 0.5 * omega1 * tanh(s.x1)
            + s.sinh_term,
    )
}

/// `Q_AB` for a purely thermal bath at `temperature`:
/// `T log[cosh(ω1/2T)/cosh(ω2/2T)] + (ω2/2) tanh(ω2/2T) - (ω1/2) tanh(ω1/2T)`.
///
/// Written independently of [`heat_isothermal_hot`] so the two can be
/// compared at `r = 0`.
pub fn heat_isothermal_thermal(omega1: f64, omega2: f64, temperature: f64) -> Result<f64> {
    positive("omega1", omega1)?;
    positive("omega2", omega2)?;
    positive("temperature", temperature)?;
    let t = temperature;
    let (x1, x2) = (omega1 / (2.0 * t), omega2 / (2.0 * t));
    Ok(t * (log_cosh(x1) - log_cosh(x2)) + 0.5 * omega2 * tanh(x2) - 0.5 * omega1 * tanh(x1))
}

/// `W_AB = Q_AB - (U_B - U_A)`.
///
/// Evaluated as `T_h log[cosh/cosh] + (T_h/2) log[...] + G(ω2)(ω2/2) tanh x2 - G(ω1)(ω1/2) tanh x1`.
pub fn work_isothermal_hot(omega1: f64, omega2: f64, hot: &Reservoir) -> Result<f64> {
    let s = hot_stroke(omega1, omega2, hot)?;
    let (th, r) = (hot.temperature(), hot.squeeze_r());
    let g1 = coefficient_g(omega1, th, r)?;
    let g2 = coefficient_g(omega2, th, r)?;
    Ok(
        s.log_cosh_term + s.sinh_term + g2 * 0.5 * omega2 * tanh(s.x2)
            - g1 * 0.5 * omega1 * tanh(s.x1),
    )
}

/// `Q_CD`, heat exchanged with the thermal cold bath while the gap goes `ω1 → ω2`.
pub fn heat_isothermal_cold(omega1: f64, omega2: f64, cold: &Reservoir) -> Result<f64> {
    cold.ensure_thermal()?;
    let (x1, x2) = cold_args(omega1, omega2, cold)?;
    let tc = cold.temperature();
    Ok(tc * (log_cosh(x2) - log_cosh(x1)) + 0.5 * omega1 * tanh(x1) - 0.5 * omega2 * tanh(x2))
}

/// `W_CD = T_c log[cosh(ω2/2T_c) / cosh(ω1/2T_c)]`.
pub fn work_isothermal_cold(omega1: f64, omega2: f64, cold: &Reservoir) -> Result<f64> {
    cold.ensure_thermal()?;
    let (x1, x2) = cold_args(omega1, omega2, cold)?;
    Ok(cold.temperature() * (log_cosh(x2) - log_cosh(x1)))
}

fn cold_args(omega1: f64, omega2: f64, cold: &Reservoir) -> Result<(f64, f64)> {
    positive("omega1", omega1)?;
    positive("omega2", omega2)?;
    let tc = cold.temperature();
    Ok((omega1 / (2.0 * tc), omega2 / (2.0 * tc)))
}

/// Isochoric heat at fixed `omega`: `Q_BC = U(C) - U(B)` or `Q_DA = U(A) - U(D)`.
pub fn heat_isochoric(
    omega: f64,
    hot: &Reservoir,
    cold: &Reservoir,
    direction: Isochore,
) -> Result<f64> {
    cold.ensure_thermal()?;
    positive("omega", omega)?;
    let s = hot.factors().s_r;
    let hot_t = tanh(omega / (2.0 * hot.temperature()));
    let cold_t = tanh(omega / (2.0 * cold.temperature()));
    Ok(match direction {
        Isochore::Cooling => 0.5 * omega * (s * hot_t - cold_t),
        Isochore::Heating => 0.5 * omega * (cold_t - s * hot_t),
    })
}

/// Temperature of the thermal bath that produces the same populations as a
/// squeezed bath at `(temperature, r)`:
/// `T_eff = ω / (2 artanh[tanh(ω/2T) / cosh 2r])`.
pub fn effective_temperature(omega: f64, temperature: f64, r: f64) -> Result<f64> {
    positive("omega", omega)?;
    positive("temperature", temperature)?;
    crate::error::non_negative("squeeze_r", r)?;
    let x = omega / (2.0 * temperature);
    let c = cosh(2.0 * r);
    if !c.is_finite() {
        return Ok(f64::INFINITY);
    }
    let t = tanh(x);
    // artanh(t/c) = ½[log(c + t) - log(c - t)], with
    // c - t = 2 sinh²r + 2e^{-2x}/(1 + e^{-2x})
    let sh = sinh(r);
    let e = exp(-2.0 * x);
    let log_gap = log_add_exp(
        ln(2.0 * sh * sh),
        core::f64::consts::LN_2 - 2.0 * x - ln_1p(e),
    );
    let artanh = 0.5 * (ln(c + t) - log_gap);
    Ok(omega / (2.0 * artanh))
}

/// Mean energy of the excited-population `p` state; used by tests.
#[cfg(test)]
pub(crate) fn energy_from_population(omega: f64, p_excited: f64) -> f64 {
    0.5 * omega * (2.0 * p_excited - 1.0)
}
