//! High- and low-temperature expansions of the total work, the max-work
//! frequencies and efficiencies that go with them, and a numeric maximizer
//! on the exact work used as ground truth.
//!
//! "High temperature" means `ω/T_h → 0`. "Low temperature" means
//! `ω/T_c → ∞` with `ω/T_h` still small, which is the regime the
//! second-order terms expand in.
//!
//! The `*_max_*` functions transcribe the closed-form optima as given.
//! Several of them are not stationary points of the expansion they belong
//! to; the `*_stationary_*` companions solve `∂W/∂ω2 = 0` for the same
//! expansion and are what a numeric maximizer of that expansion returns.

use core::fmt;
use core::str::FromStr;

use crate::cycle::{carnot, run_cycle, CycleConfig, CycleParams, Medium};
use crate::error::{positive, Error, Result};
use crate::optimize::{maximize, Maximum};
use crate::reservoir::{Reservoir, SqueezeFactors};
use crate::special::{ln, sqrt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    HighT,
    LowT,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::HighT => "high",
            Regime::LowT => "low",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "high" => Ok(Regime::HighT),
            "low" => Ok(Regime::LowT),
            _ => Err(Error::InvalidConfig("regime must be `high` or `low`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    First,
    Second,
}

impl Order {
    pub fn as_str(self) -> &'static str {
        match self {
            Order::First => "first",
            Order::Second => "second",
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Order::First),
            "second" => Ok(Order::Second),
            _ => Err(Error::InvalidConfig("order must be `first` or `second`")),
        }
    }
}

fn s_r(r: f64) -> f64 {
    SqueezeFactors::new(r).s_r
}

fn s_2r(r: f64) -> f64 {
    SqueezeFactors::new(r).s_2r
}

/// `W_ht = (ω2² - ω1²)/8 · [S_r(S_r - 2)/T_h + 1/T_c]`.
pub fn tls_work_high_t(omega1: f64, omega2: f64, t_hot: f64, t_cold: f64, r: f64) -> f64 {
    let s = s_r(r);
    (omega2 * omega2 - omega1 * omega1) / 8.0 * (s * (s - 2.0) / t_hot + 1.0 / t_cold)
}

/// `W_lt = (ω2 - ω1)/2 + (ω2² - ω1²)/(8 T_h) · S_r(S_r - 2)`; the first
/// order keeps only the linear term.
pub fn tls_work_low_t(omega1: f64, omega2: f64, t_hot: f64, r: f64, order: Order) -> f64 {
    let first = 0.5 * (omega2 - omega1);
    match order {
        Order::First => first,
        Order::Second => {
            let s = s_r(r);
            first + (omega2 * omega2 - omega1 * omega1) / (8.0 * t_hot) * s * (s - 2.0)
        }
    }
}

/// Analytic low-temperature optimum `ω2* = 2T_h/(4 - 3S_r²)`.
pub fn tls_omega2_max_low_t(t_hot: f64, r: f64) -> f64 {
    let s = s_r(r);
    2.0 * t_hot / (4.0 - 3.0 * s * s)
}

/// Stationary point of [`tls_work_low_t`], `ω2 = 2T_h/(S_r(2 - S_r))`.
pub fn tls_omega2_stationary_low_t(t_hot: f64, r: f64) -> f64 {
    let s = s_r(r);
    2.0 * t_hot / (s * (2.0 - s))
}

/// Low-temperature efficiency at maximum work.
///
/// First order: `1 - ω1/ω2`. Second order:
/// `1 - ρ (4T_h/ω1 - 2S_r) / (4T_h/ω2 - S_r[2 - S_r(1 - ρ)])`, `ρ = ω1²/ω2²`.
pub fn tls_eta_mw_low_t(omega1: f64, omega2: f64, t_hot: f64, r: f64, order: Order) -> f64 {
    match order {
        Order::First => 1.0 - omega1 / omega2,
        Order::Second => {
            let s = s_r(r);
            let rho = omega1 * omega1 / (omega2 * omega2);
            let num = 4.0 * t_hot / omega1 - 2.0 * s;
            let den = 4.0 * t_hot / omega2 - s * (2.0 - s * (1.0 - rho));
            1.0 - rho * num / den
        }
    }
}

/// High-temperature efficiency at maximum work, read as
/// `1 + [2ρS_r(1-η_C) - 1 - (1-ρ)] / (2 - (1-η_C)S_r[2 - S_r(1-η_C)(1-ρ)])`
/// with `ρ = ω1²/ω2²`.
pub fn tls_eta_mw_high_t(omega1: f64, omega2: f64, eta_carnot: f64, r: f64) -> f64 {
    let s = s_r(r);
    let rho = omega1 * omega1 / (omega2 * omega2);
    let k = 1.0 - eta_carnot;
    let num = 2.0 * rho * s * k - 1.0 - (1.0 - rho);
    let den = 2.0 - k * s * (2.0 - s * k * (1.0 - rho));
    1.0 + num / den
}

/// `W_ht = (T_h - T_c) log(ω2/ω1) + (ω2² - ω1²)/(12 T_h S_r)`
/// `+ (ω1² - ω2²)/24 · [S_r/(T_h S_2r) + 1/T_c]`; the first order keeps only
/// the logarithm.
pub fn ho_work_high_t(
    omega1: f64,
    omega2: f64,
    t_hot: f64,
    t_cold: f64,
    r: f64,
    order: Order,
) -> f64 {
    let first = (t_hot - t_cold) * ln(omega2 / omega1);
    match order {
        Order::First => first,
        Order::Second => {
            let (s, s2) = (s_r(r), s_2r(r));
            let d = omega2 * omega2 - omega1 * omega1;
            first + d / (12.0 * t_hot * s) - d / 24.0 * (s / (t_hot * s2) + 1.0 / t_cold)
        }
    }
}

/// `W_lt = T_h log(ω2/ω1) + (ω1 - ω2)/2 + (ω1² - ω2²)/12 · [1/S_r - S_r/(2 S_2r T_h)]`;
/// the first order keeps the first two terms.
pub fn ho_work_low_t(omega1: f64, omega2: f64, t_hot: f64, r: f64, order: Order) -> f64 {
    let first = t_hot * ln(omega2 / omega1) + 0.5 * (omega1 - omega2);
    match order {
        Order::First => first,
        Order::Second => {
            first + (omega1 * omega1 - omega2 * omega2) * ho_low_t_curvature(t_hot, r) / 2.0
        }
    }
}

/// `a = (1/6)[1/S_r - S_r/(2 S_2r T_h)]`, so the quadratic part of the
/// low-temperature work is `-a(ω2² - ω1²)/2`.
fn ho_low_t_curvature(t_hot: f64, r: f64) -> f64 {
    let (s, s2) = (s_r(r), s_2r(r));
    (1.0 / s - s / (2.0 * s2 * t_hot)) / 6.0
}

/// Analytic high-temperature optimum
/// `ω2* = 2√(3 T_c η_C) / √(1 + S_2r⁻¹ S_r² (1 - η_C))`.
pub fn ho_omega2_max_high_t(t_cold: f64, eta_carnot: f64, r: f64) -> f64 {
    let (s, s2) = (s_r(r), s_2r(r));
    2.0 * sqrt(3.0 * t_cold * eta_carnot) / sqrt(1.0 + s * s / s2 * (1.0 - eta_carnot))
}

/// Stationary point of the second-order [`ho_work_high_t`]:
/// `ω2² = 12 T_h T_c η_C / (1 - S_r(1 - η_C))`, using `S_r/S_2r = 2/S_r - S_r`.
pub fn ho_omega2_stationary_high_t(t_hot: f64, t_cold: f64, r: f64) -> f64 {
    let eta_c = carnot(t_hot, t_cold);
    let s = s_r(r);
    sqrt(12.0 * t_hot * t_cold * eta_c / (1.0 - s * (1.0 - eta_c)))
}

/// Analytic low-temperature optimum
/// `ω2* = (1 + S_2r)/2 · T_h · [-3 + √(3(11 - 4S_r²))]`.
pub fn ho_omega2_max_low_t(t_hot: f64, r: f64) -> f64 {
    let (s, s2) = (s_r(r), s_2r(r));
    0.5 * (1.0 + s2) * t_hot * (-3.0 + sqrt(3.0 * (11.0 - 4.0 * s * s)))
}

/// Stationary point of the second-order [`ho_work_low_t`]: the positive
/// root of `a ω² + ω/2 - T_h = 0`. `None` when `a ≤ 0` (no interior maximum).
pub fn ho_omega2_stationary_low_t(t_hot: f64, r: f64) -> Option<f64> {
    let a = ho_low_t_curvature(t_hot, r);
    if a <= 0.0 {
        return None;
    }
    Some((-0.5 + sqrt(0.25 + 4.0 * a * t_hot)) / (2.0 * a))
}

/// `η^ht = η_C L / (η_C - 1 + S_r⁻¹ + L)` with `L = log(ω2/ω1)`.
pub fn ho_eta_mw_high_t(omega1: f64, omega2: f64, eta_carnot: f64, r: f64) -> f64 {
    let l = ln(omega2 / omega1);
    eta_carnot * l / (eta_carnot - 1.0 + 1.0 / s_r(r) + l)
}

/// `η^lt = 1 + (ω1 - 2T_h S_r⁻¹) / (-ω2 + 2T_h[S_r⁻¹ + log(ω2/ω1)])`.
pub fn ho_eta_mw_low_t(omega1: f64, omega2: f64, t_hot: f64, r: f64) -> f64 {
    let inv_s = 1.0 / s_r(r);
    1.0 + (omega1 - 2.0 * t_hot * inv_s) / (-omega2 + 2.0 * t_hot * (inv_s + ln(omega2 / omega1)))
}

/// Exact total work of a cycle from the ledger.
pub fn exact_work(params: &CycleParams) -> Result<f64> {
    Ok(run_cycle(&params.config()?)?.1.w_total)
}

/// Expansion of the total work for `params` in the given regime.
pub fn approximate_work(params: &CycleParams, regime: Regime, order: Order) -> f64 {
    let p = params;
    match (p.medium, regime) {
        (Medium::TwoLevel, Regime::HighT) => {
            tls_work_high_t(p.omega1, p.omega2, p.t_hot, p.t_cold, p.squeeze_r)
        }
        (Medium::TwoLevel, Regime::LowT) => {
            tls_work_low_t(p.omega1, p.omega2, p.t_hot, p.squeeze_r, order)
        }
        (Medium::Oscillator, Regime::HighT) => {
            ho_work_high_t(p.omega1, p.omega2, p.t_hot, p.t_cold, p.squeeze_r, order)
        }
        (Medium::Oscillator, Regime::LowT) => {
            ho_work_low_t(p.omega1, p.omega2, p.t_hot, p.squeeze_r, order)
        }
    }
}

/// Analytic max-work frequency for the regime, if one exists. The
/// two-level high-temperature work has no interior maximum.
pub fn analytic_omega2_star(params: &CycleParams, regime: Regime) -> Option<f64> {
    let p = params;
    match (p.medium, regime) {
        (Medium::TwoLevel, Regime::HighT) => None,
        (Medium::TwoLevel, Regime::LowT) => Some(tls_omega2_max_low_t(p.t_hot, p.squeeze_r)),
        (Medium::Oscillator, Regime::HighT) => Some(ho_omega2_max_high_t(
            p.t_cold,
            carnot(p.t_hot, p.t_cold),
            p.squeeze_r,
        )),
        (Medium::Oscillator, Regime::LowT) => Some(ho_omega2_max_low_t(p.t_hot, p.squeeze_r)),
    }
}

/// Stationary point of the second-order expansion in `ω2`, if one exists.
pub fn stationary_omega2_star(params: &CycleParams, regime: Regime) -> Option<f64> {
    let p = params;
    match (p.medium, regime) {
        (Medium::TwoLevel, Regime::HighT) => None,
        (Medium::TwoLevel, Regime::LowT) => Some(tls_omega2_stationary_low_t(p.t_hot, p.squeeze_r)),
        (Medium::Oscillator, Regime::HighT) => {
            Some(ho_omega2_stationary_high_t(p.t_hot, p.t_cold, p.squeeze_r))
        }
        (Medium::Oscillator, Regime::LowT) => ho_omega2_stationary_low_t(p.t_hot, p.squeeze_r),
    }
}

/// Analytic efficiency at maximum work evaluated at `params.omega2`.
pub fn analytic_eta_mw(params: &CycleParams, regime: Regime, order: Order) -> f64 {
    let p = params;
    let eta_c = carnot(p.t_hot, p.t_cold);
    match (p.medium, regime) {
        (Medium::TwoLevel, Regime::HighT) => {
            tls_eta_mw_high_t(p.omega1, p.omega2, eta_c, p.squeeze_r)
        }
        (Medium::TwoLevel, Regime::LowT) => {
            tls_eta_mw_low_t(p.omega1, p.omega2, p.t_hot, p.squeeze_r, order)
        }
        (Medium::Oscillator, Regime::HighT) => {
            ho_eta_mw_high_t(p.omega1, p.omega2, eta_c, p.squeeze_r)
        }
        (Medium::Oscillator, Regime::LowT) => {
            ho_eta_mw_low_t(p.omega1, p.omega2, p.t_hot, p.squeeze_r)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub regime: Regime,
    pub order: Order,
    pub w_exact: f64,
    pub w_approx: f64,
    /// Analytic optimum, if the regime has one.
    pub omega2_star: Option<f64>,
    /// Stationary point of `w_approx` in `ω2`.
    pub omega2_stationary: Option<f64>,
    /// Analytic efficiency at maximum work, at `ω2*` when one exists and at
    /// the configured `ω2` otherwise.
    pub eta_mw: f64,
    /// Exact ledger efficiency at the configured `ω2`.
    pub eta_exact: Option<f64>,
}

impl RegimeReport {
    pub fn relative_error(&self) -> f64 {
        ((self.w_approx - self.w_exact) / self.w_exact).abs()
    }
}

pub fn regime_report(params: &CycleParams, regime: Regime, order: Order) -> Result<RegimeReport> {
    let perf = run_cycle(&params.config()?)?.1;
    let omega2_star = analytic_omega2_star(params, regime);
    let at_star = CycleParams {
        omega2: omega2_star.unwrap_or(params.omega2),
        ..*params
    };
    Ok(RegimeReport {
        regime,
        order,
        w_exact: perf.w_total,
        w_approx: approximate_work(params, regime, order),
        omega2_star,
        omega2_stationary: stationary_omega2_star(params, regime),
        eta_mw: analytic_eta_mw(&at_star, regime, order),
        eta_exact: perf.eta,
    })
}

/// Scales `base` into the regime at strength `k`:
///
/// * high temperature: `T_h = ω2/k`, `T_c` keeps the base ratio `T_h/T_c`;
/// * low temperature: `T_c = ω1/k`, `T_h = k ω1`.
///
/// Frequencies are left alone, so `k → 0` (high) or `k → ∞` (low) walks
/// deeper into the regime.
pub fn regime_point(base: &CycleParams, regime: Regime, k: f64) -> Result<CycleParams> {
    positive("regime parameter", k)?;
    let mut p = *base;
    match regime {
        Regime::HighT => {
            let ratio = base.t_hot / base.t_cold;
            p.t_hot = base.omega2 / k;
            p.t_cold = p.t_hot / ratio;
        }
        Regime::LowT => {
            p.t_cold = base.omega1 / k;
            p.t_hot = base.omega1 * k;
        }
    }
    Ok(p)
}

/// Maximizes the exact total work over `ω2 ∈ [lo, hi]` with everything else
/// taken from `params`.
pub fn numeric_max_work(params: &CycleParams, lo: f64, hi: f64) -> Result<Maximum> {
    positive("lower bound", lo)?;
    if lo < params.omega1 {
        return Err(Error::InvalidRange(
            "omega2 bounds must not go below omega1",
        ));
    }
    let hot = Reservoir::squeezed(params.t_hot, params.squeeze_r, params.squeeze_phi)?;
    let cold = Reservoir::thermal(params.t_cold)?;
    let medium = params.medium;
    let omega1 = params.omega1;
    let mut failure = None;
    let m = maximize(
        |w2| match CycleConfig::new(medium, omega1, w2, hot, cold).and_then(|c| run_cycle(&c)) {
            Ok((_, perf)) => perf.w_total,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
        64,
        1e-10,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

/// Maximizes an arbitrary `W(ω2)` over `[lo, hi]` with the same settings as
/// [`numeric_max_work`].
pub fn numeric_max_of<F: FnMut(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Maximum> {
    maximize(f, lo, hi, 64, 1e-10)
}
