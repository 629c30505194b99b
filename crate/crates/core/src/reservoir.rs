//! Baths and the occupancy numbers they imprint on a mode of frequency `ω`.

use core::f64::consts::TAU;

use crate::error::{non_negative, positive, Error, Result};
use crate::special::{cosh, exp_m1, sech, sinh};

/// A heat bath: temperature plus squeezing `(r, φ)`. A thermal bath has `r = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reservoir {
    temperature: f64,
    squeeze_r: f64,
    squeeze_phi: f64,
}

impl Reservoir {
    pub fn thermal(temperature: f64) -> Result<Self> {
        Self::squeezed(temperature, 0.0, 0.0)
    }

    /// `phi` is wrapped into `[0, 2π)`.
    pub fn squeezed(temperature: f64, squeeze_r: f64, squeeze_phi: f64) -> Result<Self> {
        positive("temperature", temperature)?;
        non_negative("squeeze_r", squeeze_r)?;
        if !squeeze_phi.is_finite() {
            return Err(Error::Domain {
                name: "squeeze_phi",
                requirement: "finite",
                value: squeeze_phi,
            });
        }
        Ok(Self {
            temperature,
            squeeze_r,
            squeeze_phi: wrap_phase(squeeze_phi),
        })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn squeeze_r(&self) -> f64 {
        self.squeeze_r
    }

    pub fn squeeze_phi(&self) -> f64 {
        self.squeeze_phi
    }

    pub fn is_thermal(&self) -> bool {
        self.squeeze_r == 0.0
    }

    pub fn factors(&self) -> SqueezeFactors {
        SqueezeFactors::new(self.squeeze_r)
    }

    pub(crate) fn ensure_thermal(&self) -> Result<()> {
        if self.is_thermal() {
            Ok(())
        } else {
            Err(Error::SqueezedColdBath(self.squeeze_r))
        }
    }
}

fn wrap_phase(phi: f64) -> f64 {
    let w = libm::fmod(phi, TAU);
    if w < 0.0 {
        w + TAU
    } else {
        w
    }
}

/// `S_r = sech(2r)` and `S_2r = sech(4r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeFactors {
    pub s_r: f64,
    pub s_2r: f64,
}

impl SqueezeFactors {
    pub fn new(r: f64) -> Self {
        Self {
            s_r: sech(2.0 * r),
            s_2r: sech(4.0 * r),
        }
    }

    /// `1 - S_r^2 = tanh^2(2r)`, computed without cancellation at small `r`.
    pub(crate) fn one_minus_s_r_sq(r: f64) -> f64 {
        let t = crate::special::tanh(2.0 * r);
        t * t
    }

    /// `1 - S_r = 2 sinh^2(r) / cosh(2r)`.
    pub(crate) fn one_minus_s_r(r: f64) -> f64 {
        let s = sinh(r);
        2.0 * s * s / cosh(2.0 * r)
    }
}

/// Occupancies of a mode in contact with a squeezed thermal bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Occupancy {
    /// Thermal mean number of quanta `n`.
    pub n: f64,
    /// Effective occupancy `N = n cosh(2r) + sinh^2 r`.
    pub big_n: f64,
    /// `|M| = cosh r sinh r (2n + 1)`.
    pub m_mag: f64,
}

/// Bose–Einstein occupation `n = 1/(e^{ω/T} - 1)`.
pub fn thermal_occupation(omega: f64, temperature: f64) -> Result<f64> {
    positive("omega", omega)?;
    positive("temperature", temperature)?;
    Ok(1.0 / exp_m1(omega / temperature))
}

/// Occupancies imprinted by `reservoir` on a mode at `omega`. The phase does
/// not enter: the stationary populations are phase independent.
pub fn squeezed_occupancy(omega: f64, reservoir: &Reservoir) -> Result<Occupancy> {
    let n = thermal_occupation(omega, reservoir.temperature)?;
    let r = reservoir.squeeze_r;
    let sh = sinh(r);
    Ok(Occupancy {
        n,
        big_n: n * cosh(2.0 * r) + sh * sh,
        m_mag: cosh(r) * sh * (2.0 * n + 1.0),
    })
}
