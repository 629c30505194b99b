//! The four-stroke cycle, its energy ledger and efficiency, plus parameter
//! sweeps over the dimensionless axes used for figure data.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{non_negative, positive, Error, Result};
use crate::reservoir::Reservoir;
use crate::special::sqrt;
use crate::tls::Isochore;
use crate::{ho, tls};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Medium {
    TwoLevel,
    Oscillator,
}

impl Medium {
    pub fn as_str(self) -> &'static str {
        match self {
            Medium::TwoLevel => "tls",
            Medium::Oscillator => "ho",
        }
    }
}

impl fmt::Display for Medium {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Medium {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tls" => Ok(Medium::TwoLevel),
            "ho" => Ok(Medium::Oscillator),
            _ => Err(Error::InvalidConfig("medium must be `tls` or `ho`")),
        }
    }
}

/// A validated cycle: `ω2 ≥ ω1 > 0`, `T_h > T_c > 0`, thermal cold bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleConfig {
    medium: Medium,
    omega1: f64,
    omega2: f64,
    hot: Reservoir,
    cold: Reservoir,
}

impl CycleConfig {
    pub fn new(
        medium: Medium,
        omega1: f64,
        omega2: f64,
        hot: Reservoir,
        cold: Reservoir,
    ) -> Result<Self> {
        positive("omega1", omega1)?;
        positive("omega2", omega2)?;
        if omega2 < omega1 {
            return Err(Error::InvalidConfig("omega2 must be at least omega1"));
        }
        if hot.temperature() <= cold.temperature() {
            return Err(Error::InvalidConfig(
                "hot temperature must exceed cold temperature",
            ));
        }
        cold.ensure_thermal()?;
        Ok(Self {
            medium,
            omega1,
            omega2,
            hot,
            cold,
        })
    }

    pub fn medium(&self) -> Medium {
        self.medium
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    pub fn hot(&self) -> &Reservoir {
        &self.hot
    }

    pub fn cold(&self) -> &Reservoir {
        &self.cold
    }

    pub fn is_degenerate(&self) -> bool {
        self.omega1 == self.omega2
    }
}

/// Signed energy flows of one cycle. Heats are positive when absorbed by
/// the medium, works positive when delivered by it.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StrokeLedger {
    pub q_ab: f64,
    pub w_ab: f64,
    pub q_bc: f64,
    pub q_cd: f64,
    pub w_cd: f64,
    pub q_da: f64,
}

impl StrokeLedger {
    pub fn total_heat(&self) -> f64 {
        self.q_ab + self.q_bc + self.q_cd + self.q_da
    }

    pub fn total_work(&self) -> f64 {
        self.w_ab + self.w_cd
    }

    /// `Q_H = Q_AB + Q_DA`.
    pub fn heat_in(&self) -> f64 {
        self.q_ab + self.q_da
    }

    pub(crate) fn assemble(config: &CycleConfig) -> Result<Self> {
        let (w1, w2) = (config.omega1, config.omega2);
        let (hot, cold) = (&config.hot, &config.cold);
        Ok(match config.medium {
            Medium::TwoLevel => Self {
                q_ab: tls::heat_isothermal_hot(w1, w2, hot)?,
                w_ab: tls::work_isothermal_hot(w1, w2, hot)?,
                q_bc: tls::heat_isochoric(w1, hot, cold, Isochore::Cooling)?,
                q_cd: tls::heat_isothermal_cold(w1, w2, cold)?,
                w_cd: tls::work_isothermal_cold(w1, w2, cold)?,
                q_da: tls::heat_isochoric(w2, hot, cold, Isochore::Heating)?,
            },
            Medium::Oscillator => Self {
                q_ab: ho::heat_isothermal_hot(w1, w2, hot)?,
                w_ab: ho::work_isothermal_hot(w1, w2, hot)?,
                q_bc: ho::heat_isochoric(w1, hot, cold, Isochore::Cooling)?,
                q_cd: ho::heat_isothermal_cold(w1, w2, cold)?,
                w_cd: ho::work_isothermal_cold(w1, w2, cold)?,
                q_da: ho::heat_isochoric(w2, hot, cold, Isochore::Heating)?,
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `Q_H > 0`: an efficiency is reported.
    Engine,
    /// `Q_H ≤ 0`: no efficiency.
    NotAnEngine,
    /// `ω1 = ω2`: no frequency modulation, zero ledger.
    Degenerate,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Engine => "engine",
            Regime::NotAnEngine => "not-an-engine",
            Regime::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyclePerformance {
    pub w_total: f64,
    pub q_h: f64,
    /// `W / Q_H`, present only in the engine regime.
    pub eta: Option<f64>,
    /// `1 + (Q_BC + Q_CD)/(Q_AB + Q_DA)`, the same efficiency from the
    /// rejected heat.
    pub eta_from_rejected_heat: Option<f64>,
    pub eta_carnot: f64,
    pub eta_curzon_ahlborn: f64,
    pub regime: Regime,
    /// Two-level effective hot temperature at `(ω1, ω2)`.
    pub effective_temperature: Option<(f64, f64)>,
}

impl CyclePerformance {
    pub fn surpasses_carnot(&self) -> bool {
        self.eta.is_some_and(|eta| eta > self.eta_carnot)
    }
}

pub fn carnot(t_hot: f64, t_cold: f64) -> f64 {
    1.0 - t_cold / t_hot
}

pub fn curzon_ahlborn(t_hot: f64, t_cold: f64) -> f64 {
    1.0 - sqrt(t_cold / t_hot)
}

pub fn run_cycle(config: &CycleConfig) -> Result<(StrokeLedger, CyclePerformance)> {
    let (th, tc) = (config.hot.temperature(), config.cold.temperature());
    let ledger = if config.is_degenerate() {
        StrokeLedger::default()
    } else {
        StrokeLedger::assemble(config)?
    };
    let effective_temperature = match config.medium {
        Medium::TwoLevel => Some((
            tls::effective_temperature(config.omega1, th, config.hot.squeeze_r())?,
            tls::effective_temperature(config.omega2, th, config.hot.squeeze_r())?,
        )),
        Medium::Oscillator => None,
    };
    let w_total = ledger.total_work();
    let q_h = ledger.heat_in();
    let regime = if config.is_degenerate() {
        Regime::Degenerate
    } else if q_h > 0.0 {
        Regime::Engine
    } else {
        Regime::NotAnEngine
    };
    let (eta, eta_from_rejected_heat) = match regime {
        Regime::Engine => (
            Some(w_total / q_h),
            Some(1.0 + (ledger.q_bc + ledger.q_cd) / q_h),
        ),
        _ => (None, None),
    };
    Ok((
        ledger,
        CyclePerformance {
            w_total,
            q_h,
            eta,
            eta_from_rejected_heat,
            eta_carnot: carnot(th, tc),
            eta_curzon_ahlborn: curzon_ahlborn(th, tc),
            regime,
            effective_temperature,
        },
    ))
}

/// Unvalidated cycle parameters; the sweep axes act on these.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleParams {
    pub medium: Medium,
    pub omega1: f64,
    pub omega2: f64,
    pub t_hot: f64,
    pub t_cold: f64,
    pub squeeze_r: f64,
    pub squeeze_phi: f64,
}

impl CycleParams {
    pub fn config(&self) -> Result<CycleConfig> {
        CycleConfig::new(
            self.medium,
            self.omega1,
            self.omega2,
            Reservoir::squeezed(self.t_hot, self.squeeze_r, self.squeeze_phi)?,
            Reservoir::thermal(self.t_cold)?,
        )
    }

    pub fn with_axis(mut self, axis: SweepAxis, value: f64) -> Self {
        match axis {
            SweepAxis::OmegaRatio => self.omega2 = value * self.omega1,
            SweepAxis::TempRatio => self.t_hot = value * self.t_cold,
            SweepAxis::Squeeze => self.squeeze_r = value,
        }
        self
    }

    pub fn axis_value(&self, axis: SweepAxis) -> f64 {
        match axis {
            SweepAxis::OmegaRatio => self.omega2 / self.omega1,
            SweepAxis::TempRatio => self.t_hot / self.t_cold,
            SweepAxis::Squeeze => self.squeeze_r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    /// `ω2/ω1`, scaling `ω2`.
    OmegaRatio,
    /// `T_h/T_c`, scaling `T_h`.
    TempRatio,
    /// `r` of the hot bath.
    Squeeze,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::OmegaRatio => "omega_ratio",
            SweepAxis::TempRatio => "temp_ratio",
            SweepAxis::Squeeze => "squeeze",
        }
    }

    /// Column heading used in tables.
    pub fn label(self) -> &'static str {
        match self {
            SweepAxis::OmegaRatio => "omega2/omega1",
            SweepAxis::TempRatio => "Th/Tc",
            SweepAxis::Squeeze => "r",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega_ratio" => Ok(SweepAxis::OmegaRatio),
            "temp_ratio" => Ok(SweepAxis::TempRatio),
            "squeeze" => Ok(SweepAxis::Squeeze),
            _ => Err(Error::InvalidRange(
                "axis must be omega_ratio, temp_ratio or squeeze",
            )),
        }
    }
}

/// Inclusive, evenly spaced range. A single step requires `start == end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    start: f64,
    end: f64,
    steps: usize,
}

impl SweepRange {
    pub fn new(start: f64, end: f64, steps: usize) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidRange("bounds must be finite"));
        }
        match steps {
            0 => Err(Error::InvalidRange("at least one step is required")),
            1 if start != end => Err(Error::InvalidRange("a single step needs start == end")),
            _ if end < start => Err(Error::InvalidRange("end must not precede start")),
            _ if steps > 1 && start == end => {
                Err(Error::InvalidRange("start == end allows only one step"))
            }
            _ => Ok(Self { start, end, steps }),
        }
    }

    pub fn single(value: f64) -> Result<Self> {
        Self::new(value, value, 1)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            return self.start;
        }
        if i + 1 == self.steps {
            return self.end;
        }
        self.start + (self.end - self.start) * i as f64 / (self.steps - 1) as f64
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(move |i| self.value(i))
    }
}

/// One evaluated point, in units where `T_c` is the energy scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub params: CycleParams,
    pub ledger: StrokeLedger,
    pub performance: CyclePerformance,
}

impl SweepRow {
    pub fn evaluate(params: CycleParams) -> Result<Self> {
        let (ledger, performance) = run_cycle(&params.config()?)?;
        Ok(Self {
            params,
            ledger,
            performance,
        })
    }

    pub fn work_over_tc(&self) -> f64 {
        self.performance.w_total / self.params.t_cold
    }
}

/// Points of a one-dimensional sweep, in axis order.
pub fn sweep_points(
    base: CycleParams,
    axis: SweepAxis,
    range: &SweepRange,
) -> Result<Vec<CycleParams>> {
    validate_axis(axis, range)?;
    Ok(range.values().map(|v| base.with_axis(axis, v)).collect())
}

/// Points of a surface, row-major: the first axis varies slowest.
pub fn surface_points(
    base: CycleParams,
    first: (SweepAxis, &SweepRange),
    second: (SweepAxis, &SweepRange),
) -> Result<Vec<CycleParams>> {
    if first.0 == second.0 {
        return Err(Error::InvalidRange("surface axes must differ"));
    }
    validate_axis(first.0, first.1)?;
    validate_axis(second.0, second.1)?;
    let mut points = Vec::with_capacity(first.1.steps() * second.1.steps());
    for a in first.1.values() {
        let row = base.with_axis(first.0, a);
        points.extend(second.1.values().map(|b| row.with_axis(second.0, b)));
    }
    Ok(points)
}

fn validate_axis(axis: SweepAxis, range: &SweepRange) -> Result<()> {
    match axis {
        SweepAxis::OmegaRatio if range.start() < 1.0 => {
            Err(Error::InvalidRange("omega ratio must be at least 1"))
        }
        SweepAxis::TempRatio if range.start() <= 1.0 => {
            Err(Error::InvalidRange("temperature ratio must exceed 1"))
        }
        SweepAxis::Squeeze => non_negative("squeeze_r", range.start()).map(|_| ()),
        _ => Ok(()),
    }
}

/// Sequential sweep.
pub fn sweep(base: CycleParams, axis: SweepAxis, range: &SweepRange) -> Result<Vec<SweepRow>> {
    sweep_points(base, axis, range)?
        .into_iter()
        .map(SweepRow::evaluate)
        .collect()
}

/// Sequential surface.
pub fn surface(
    base: CycleParams,
    first: (SweepAxis, &SweepRange),
    second: (SweepAxis, &SweepRange),
) -> Result<Vec<SweepRow>> {
    surface_points(base, first, second)?
        .into_iter()
        .map(SweepRow::evaluate)
        .collect()
}
