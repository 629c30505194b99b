//! Two-level master equation with a squeezed thermal bath:
//!
//! ```text
//! dρ/dτ = Γ(N+1)(σ₋ρσ₊ - ½{σ₊σ₋, ρ}) + ΓN(σ₊ρσ₋ - ½{σ₋σ₊, ρ})
//!         - ΓM σ₊ρσ₊ - ΓM* σ₋ρσ₋
//! ```
//!
//! with `M = -cosh r sinh r e^{iφ}(2n + 1)`, `σ₊ = |e⟩⟨g|` and the excited
//! level at index 0. There is no Hamiltonian term; in the frame rotating at
//! `ω` it only adds phases to the coherences, which decay anyway.

use alloc::format;

use super::matrix::{CMatrix, C64};
use super::{bose_occupation, DensityMatrix, Tolerances, TOLERANCES};
use crate::error::{positive, Error, Result};
use crate::reservoir::Reservoir;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LindbladParams {
    gamma: f64,
    omega: f64,
    reservoir: Reservoir,
}

impl LindbladParams {
    pub fn new(gamma: f64, omega: f64, reservoir: Reservoir) -> Result<Self> {
        positive("gamma", gamma)?;
        positive("omega", omega)?;
        Ok(Self {
            gamma,
            omega,
            reservoir,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `(N, M)` of the bath at this frequency.
    fn coefficients(&self) -> (f64, C64) {
        let n = bose_occupation(self.omega, self.reservoir.temperature());
        let r = self.reservoir.squeeze_r();
        let (ch, sh) = (libm::cosh(r), libm::sinh(r));
        let big_n = n * libm::cosh(2.0 * r) + sh * sh;
        let phi = self.reservoir.squeeze_phi();
        let m = C64::new(libm::cos(phi), libm::sin(phi)) * (-ch * sh * (2.0 * n + 1.0));
        (big_n, m)
    }
}

/// Row-major `[ρ_ee, ρ_eg, ρ_ge, ρ_gg]`.
type State = [C64; 4];

struct Generator {
    gamma: f64,
    big_n: f64,
    m: C64,
}

impl Generator {
    fn new(params: &LindbladParams) -> Self {
        let (big_n, m) = params.coefficients();
        Self {
            gamma: params.gamma,
            big_n,
            m,
        }
    }

    fn apply(&self, rho: &State) -> State {
        let [ee, eg, ge, gg] = *rho;
        let (g, n, m) = (self.gamma, self.big_n, self.m);
        // σ₋ρσ₊ = ρ_ee |g⟩⟨g|, σ₊σ₋ = |e⟩⟨e|
        // σ₊ρσ₋ = ρ_gg |e⟩⟨e|, σ₋σ₊ = |g⟩⟨g|
        // σ₊ρσ₊ = ρ_ge |e⟩⟨g|, σ₋ρσ₋ = ρ_eg |g⟩⟨e|
        let down = g * (n + 1.0);
        let up = g * n;
        let d_ee = -down * ee + up * gg;
        let d_gg = down * ee - up * gg;
        let decay = 0.5 * (down + up);
        let d_eg = -decay * eg - m * ge * g;
        let d_ge = -decay * ge - m.conj() * eg * g;
        [d_ee, d_eg, d_ge, d_gg]
    }

    /// The 4×4 matrix of [`Generator::apply`] on the row-major basis.
    fn matrix(&self) -> CMatrix {
        let mut out = CMatrix::zeros(4);
        for j in 0..4 {
            let mut e = [C64::new(0.0, 0.0); 4];
            e[j] = C64::new(1.0, 0.0);
            let col = self.apply(&e);
            for i in 0..4 {
                out[(i, j)] = col[i];
            }
        }
        out
    }
}

fn to_matrix(s: &State) -> CMatrix {
    CMatrix::from_fn(2, |i, j| s[2 * i + j])
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for &(c, k) in terms {
        for i in 0..4 {
            out[i] += k[i] * (h * c);
        }
    }
    out
}

/// Smallest eigenvalue of the Hermitian part of a 2×2 state.
fn min_eigenvalue(s: &State) -> f64 {
    let (a, d) = (s[0].re, s[3].re);
    let b = (s[1] + s[2].conj()) * 0.5;
    0.5 * (a + d) - libm::sqrt(0.25 * (a - d) * (a - d) + b.norm_sqr())
}

/// `‖ρ - σ‖₁` for 2×2 Hermitian matrices.
fn trace_norm_diff(a: &State, b: &State) -> f64 {
    let d: State = core::array::from_fn(|i| a[i] - b[i]);
    let (p, q) = (d[0].re, d[3].re);
    let off = (d[1] + d[2].conj()) * 0.5;
    let mid = 0.5 * (p + q);
    let rad = libm::sqrt(0.25 * (p - q) * (p - q) + off.norm_sqr());
    (mid + rad).abs() + (mid - rad).abs()
}

/// Outcome of integrating to stationarity.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub state: DensityMatrix,
    /// Total integration time.
    pub time: f64,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    /// Smallest eigenvalue seen at any accepted step.
    pub min_eigenvalue: f64,
    /// Trace-norm change over the final window.
    pub last_change: f64,
}

/// The generic starting state of every integration.
pub fn initial_state() -> CMatrix {
    CMatrix::from_rows(
        2,
        &[
            C64::new(0.3, 0.0),
            C64::new(0.2, 0.1),
            C64::new(0.2, -0.1),
            C64::new(0.7, 0.0),
        ],
    )
    .expect("2x2")
}

const MAX_STEPS: usize = 2_000_000;

/// Integrates from [`initial_state`] with an adaptive Dormand–Prince 5(4)
/// scheme over windows of doubling length, until two successive window ends
/// differ by less than the stationarity tolerance in trace norm.
pub fn lindblad_steady_state_tls(params: &LindbladParams) -> Result<SteadyState> {
    integrate_to_stationarity(params, &TOLERANCES)
}

pub fn integrate_to_stationarity(params: &LindbladParams, tol: &Tolerances) -> Result<SteadyState> {
    let gen = Generator::new(params);
    let init = initial_state();
    let mut y: State = core::array::from_fn(|i| init.as_slice()[i]);
    let (atol, rtol) = (1e-15, 1e-13);
    let mut h = 0.01 / params.gamma;
    let mut t = 0.0;
    let mut window = 1.0 / params.gamma;
    let mut accepted = 0;
    let mut rejected = 0;
    let mut min_eig = min_eigenvalue(&y);
    let mut previous = y;
    loop {
        let end = t + window;
        while t < end {
            let step = h.min(end - t);
            let (next, err) = dormand_prince(&gen, &y, step);
            let scale = (0..4)
                .map(|i| {
                    let s = atol + rtol * y[i].norm().max(next[i].norm());
                    (err[i].norm() / s) * (err[i].norm() / s)
                })
                .sum::<f64>();
            let e = libm::sqrt(scale / 4.0);
            if e <= 1.0 {
                t += step;
                y = next;
                accepted += 1;
                let low = min_eigenvalue(&y);
                min_eig = min_eig.min(low);
                if low < tol.integration_positivity {
                    return Err(Error::NotConverged(format!(
                        "positivity lost at t = {t:e}: eigenvalue {low:e}"
                    )));
                }
            } else {
                rejected += 1;
            }
            let factor = if e == 0.0 {
                5.0
            } else {
                (0.9 * libm::pow(e, -0.2)).clamp(0.2, 5.0)
            };
            h = step * factor;
            if accepted + rejected > MAX_STEPS {
                return Err(Error::NotConverged(format!(
                    "step budget exhausted at t = {t:e}"
                )));
            }
        }
        let change = trace_norm_diff(&y, &previous);
        if change < tol.stationarity {
            let state = DensityMatrix::with_tolerances(to_matrix(&y), tol)?;
            return Ok(SteadyState {
                state,
                time: t,
                accepted_steps: accepted,
                rejected_steps: rejected,
                min_eigenvalue: min_eig,
                last_change: change,
            });
        }
        previous = y;
        window *= 2.0;
        if window > 1e8 / params.gamma {
            return Err(Error::NotConverged(format!(
                "window change still {change:e} at t = {t:e}"
            )));
        }
    }
}

fn dormand_prince(gen: &Generator, y: &State, h: f64) -> (State, State) {
    const A21: f64 = 1.0 / 5.0;
    const A31: f64 = 3.0 / 40.0;
    const A32: f64 = 9.0 / 40.0;
    const A41: f64 = 44.0 / 45.0;
    const A42: f64 = -56.0 / 15.0;
    const A43: f64 = 32.0 / 9.0;
    const A51: f64 = 19372.0 / 6561.0;
    const A52: f64 = -25360.0 / 2187.0;
    const A53: f64 = 64448.0 / 6561.0;
    const A54: f64 = -212.0 / 729.0;
    const A61: f64 = 9017.0 / 3168.0;
    const A62: f64 = -355.0 / 33.0;
    const A63: f64 = 46732.0 / 5247.0;
    const A64: f64 = 49.0 / 176.0;
    const A65: f64 = -5103.0 / 18656.0;
    const B1: f64 = 35.0 / 384.0;
    const B3: f64 = 500.0 / 1113.0;
    const B4: f64 = 125.0 / 192.0;
    const B5: f64 = -2187.0 / 6784.0;
    const B6: f64 = 11.0 / 84.0;
    const E1: f64 = 71.0 / 57600.0;
    const E3: f64 = -71.0 / 16695.0;
    const E4: f64 = 71.0 / 1920.0;
    const E5: f64 = -17253.0 / 339200.0;
    const E6: f64 = 22.0 / 525.0;
    const E7: f64 = -1.0 / 40.0;

    let k1 = gen.apply(y);
    let k2 = gen.apply(&axpy(y, h, &[(A21, &k1)]));
    let k3 = gen.apply(&axpy(y, h, &[(A31, &k1), (A32, &k2)]));
    let k4 = gen.apply(&axpy(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
    let k5 = gen.apply(&axpy(
        y,
        h,
        &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
    ));
    let k6 = gen.apply(&axpy(
        y,
        h,
        &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
    ));
    let next = axpy(
        y,
        h,
        &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
    );
    let k7 = gen.apply(&next);
    let zero = [C64::new(0.0, 0.0); 4];
    let err = axpy(
        &zero,
        h,
        &[
            (E1, &k1),
            (E3, &k3),
            (E4, &k4),
            (E5, &k5),
            (E6, &k6),
            (E7, &k7),
        ],
    );
    (next, err)
}

/// Stationary state from the null space of the vectorized generator, with
/// the redundant excited-population equation replaced by `Tr ρ = 1`.
pub fn stationary_solve_tls(params: &LindbladParams) -> Result<DensityMatrix> {
    let mut l = Generator::new(params).matrix();
    for (j, v) in [1.0, 0.0, 0.0, 1.0].into_iter().enumerate() {
        l[(0, j)] = C64::new(v, 0.0);
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let x = super::matrix::solve_vector(&l, &[one, zero, zero, zero])?;
    DensityMatrix::new(CMatrix::from_fn(2, |i, j| x[2 * i + j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn params(gamma: f64, t: f64, r: f64, phi: f64) -> LindbladParams {
        LindbladParams::new(gamma, 1.0, Reservoir::squeezed(t, r, phi).unwrap()).unwrap()
    }

    #[test]
    fn generator_preserves_trace_and_hermiticity() {
        let gen = Generator::new(&params(0.7, 1.0, 0.8, 0.4));
        let init = initial_state();
        let y: State = core::array::from_fn(|i| init.as_slice()[i]);
        let d = gen.apply(&y);
        assert!((d[0] + d[3]).norm() < 1e-15);
        assert!((d[1] - d[2].conj()).norm() < 1e-15);
    }

    #[test]
    fn zero_temperature_decays_to_ground() {
        let s = lindblad_steady_state_tls(&params(1.0, 1e-3, 0.0, 0.0)).unwrap();
        assert!(s.state.population(0).abs() < 1e-12);
        assert!((s.state.population(1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn thermal_detailed_balance() {
        let s = lindblad_steady_state_tls(&params(1.0, 2.0, 0.0, 0.0)).unwrap();
        let n = bose_occupation(1.0, 2.0);
        assert!((s.state.population(0) - n / (2.0 * n + 1.0)).abs() < 1e-11);
    }

    #[test]
    fn integration_matches_direct_solve_and_ignores_phase() {
        let a = lindblad_steady_state_tls(&params(1.0, 1.0, 0.8, 0.0)).unwrap();
        let b = lindblad_steady_state_tls(&params(1.0, 1.0, 0.8, PI / 2.0)).unwrap();
        let direct = stationary_solve_tls(&params(1.0, 1.0, 0.8, 0.0)).unwrap();
        assert!(a.state.trace_distance(&b.state).unwrap() < 1e-10);
        assert!(a.state.trace_distance(&direct).unwrap() < 1e-10);
        assert!(a.min_eigenvalue > -1e-12);
        assert!(a.last_change < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(LindbladParams::new(0.0, 1.0, Reservoir::thermal(1.0).unwrap()).is_err());
        assert!(LindbladParams::new(1.0, -1.0, Reservoir::thermal(1.0).unwrap()).is_err());
    }
}
