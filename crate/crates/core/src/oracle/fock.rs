//! Squeezed thermal oscillator states in a truncated Fock space,
//! `ρ = S(ξ) ρ_G S(ξ)†` with `S(ξ) = exp[(ξ* a² - ξ a†²)/2]`, `ξ = r e^{iθ}`.
//!
//! The generator only couples levels two apart, so the even and odd
//! sublattices are exponentiated separately.

use alloc::vec::Vec;

use super::eigen::hermitian_eigenvalues;
use super::expm::expm;
use super::matrix::{CMatrix, C64};
use super::{bose_occupation, Tolerances, TOLERANCES};
use crate::error::{positive, Error, Result};

/// A parity-blocked oscillator state.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    omega: f64,
    cutoff: usize,
    /// `[even, odd]`; entry `(i, j)` of block `p` is `⟨2i+p|ρ|2j+p⟩`.
    blocks: [CMatrix; 2],
    /// Population in the top eighth of the levels.
    pub edge_population: f64,
    /// Gibbs population beyond the cutoff before squeezing.
    pub gibbs_tail: f64,
    /// Largest `|U U† - 1|` entry over both blocks.
    pub unitarity_defect: f64,
}

impl FockState {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn population(&self, k: usize) -> f64 {
        self.blocks[k % 2][(k / 2, k / 2)].re
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.cutoff).map(|k| self.population(k)).collect()
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.trace().re).sum()
    }

    /// `Tr(ρ ω(a†a + 1/2))`, failing on an imaginary residue.
    pub fn mean_energy(&self) -> Result<f64> {
        let mut tr = C64::new(0.0, 0.0);
        for k in 0..self.cutoff {
            tr += self.blocks[k % 2][(k / 2, k / 2)] * (self.omega * (k as f64 + 0.5));
        }
        if tr.im.abs() > TOLERANCES.imaginary_residue * tr.re.abs().max(1.0) {
            return Err(Error::NonRealExpectation(tr.im));
        }
        Ok(tr.re)
    }

    /// `⟨a²⟩`, which carries the squeeze phase.
    pub fn anomalous_moment(&self) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for k in 2..self.cutoff {
            // ⟨a²⟩ = Σ_k √(k(k-1)) ρ_{k,k-2}
            let b = &self.blocks[k % 2];
            acc += b[(k / 2, k / 2 - 1)] * libm::sqrt((k * (k - 1)) as f64);
        }
        acc
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut all = hermitian_eigenvalues(&self.blocks[0])?;
        all.extend(hermitian_eigenvalues(&self.blocks[1])?);
        all.sort_by(f64::total_cmp);
        Ok(all)
    }

    /// Von Neumann entropy from the block eigenvalues.
    pub fn von_neumann_entropy(&self) -> Result<f64> {
        let values = self.eigenvalues()?;
        if let Some(&low) = values.first() {
            if low < TOLERANCES.eigenvalue_floor {
                return Err(Error::InvalidDensityMatrix(alloc::format!(
                    "negative eigenvalue {low:e}"
                )));
            }
        }
        Ok(values
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| -l * libm::log(l))
            .sum())
    }

    /// The full `cutoff × cutoff` matrix.
    pub fn to_matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.cutoff);
        for i in 0..self.cutoff {
            for j in (i % 2..self.cutoff).step_by(2) {
                m[(i, j)] = self.blocks[i % 2][(i / 2, j / 2)];
            }
        }
        m
    }
}

fn squeeze_block(parity: usize, size: usize, r: f64, theta: f64) -> CMatrix {
    let xi = C64::new(r * libm::cos(theta), r * libm::sin(theta));
    let mut k = CMatrix::zeros(size);
    for m in 1..size {
        let level = (2 * m + parity) as f64;
        let amp = 0.5 * libm::sqrt(level * (level - 1.0));
        // ⟨k-2| ξ* a² |k⟩ / 2 and ⟨k| -ξ a†² |k-2⟩ / 2
        k[(m - 1, m)] = xi.conj() * amp;
        k[(m, m - 1)] = -xi * amp;
    }
    k
}

/// Builds the squeezed thermal state at a fixed `cutoff`.
pub fn squeezed_thermal_state_ho(
    omega: f64,
    temperature: f64,
    r: f64,
    theta: f64,
    cutoff: usize,
) -> Result<FockState> {
    build(omega, temperature, r, theta, cutoff, &TOLERANCES)
}

pub fn build(
    omega: f64,
    temperature: f64,
    r: f64,
    theta: f64,
    cutoff: usize,
    tol: &Tolerances,
) -> Result<FockState> {
    positive("omega", omega)?;
    positive("temperature", temperature)?;
    crate::error::non_negative("squeeze_r", r)?;
    if cutoff < 8 {
        return Err(Error::CutoffTooSmall {
            cutoff,
            tail: 1.0,
            limit: tol.gibbs_tail,
        });
    }
    let n = bose_occupation(omega, temperature);
    let q = n / (n + 1.0);
    let gibbs_tail = libm::pow(q, cutoff as f64);
    if gibbs_tail >= tol.gibbs_tail {
        return Err(Error::CutoffTooSmall {
            cutoff,
            tail: gibbs_tail,
            limit: tol.gibbs_tail,
        });
    }
    let gibbs = |k: usize| libm::pow(q, k as f64) / ((n + 1.0) * (1.0 - gibbs_tail));

    let mut unitarity_defect: f64 = 0.0;
    let blocks: [CMatrix; 2] = core::array::from_fn(|parity| {
        let size = (cutoff + 1 - parity) / 2;
        let p: Vec<f64> = (0..size).map(|m| gibbs(2 * m + parity)).collect();
        let generator = squeeze_block(parity, size, r, theta);
        match expm(&generator) {
            Ok(u) => {
                let uu = u
                    .matmul(&u.adjoint())
                    .and_then(|x| x.sub(&CMatrix::identity(size)));
                if let Ok(d) = uu {
                    unitarity_defect = unitarity_defect.max(d.max_abs());
                }
                let diag = CMatrix::diagonal(&p);
                u.matmul(&diag)
                    .and_then(|x| x.matmul(&u.adjoint()))
                    .unwrap_or_else(|_| CMatrix::zeros(size))
            }
            Err(_) => {
                unitarity_defect = f64::INFINITY;
                CMatrix::zeros(size)
            }
        }
    });
    if unitarity_defect.is_nan() || unitarity_defect > tol.unitarity {
        return Err(Error::NotConverged(alloc::format!(
            "truncated squeeze operator not unitary: defect {unitarity_defect:e}"
        )));
    }
    let mut state = FockState {
        omega,
        cutoff,
        blocks,
        edge_population: 0.0,
        gibbs_tail,
        unitarity_defect,
    };
    let total = state.trace();
    for b in state.blocks.iter_mut() {
        *b = b.scale_real(1.0 / total);
    }
    state.edge_population = (cutoff - cutoff / 8..cutoff)
        .map(|k| state.population(k))
        .sum();
    if state.edge_population > tol.squeezed_tail_limit {
        return Err(Error::CutoffTooSmall {
            cutoff,
            tail: state.edge_population,
            limit: tol.squeezed_tail_limit,
        });
    }
    Ok(state)
}

/// Smallest cutoff, growing by a quarter at a time from an estimate, whose
/// edge population is below the target. At the tolerance record's maximum
/// cutoff the state is returned if its edge population is within the limit.
pub fn squeezed_thermal_state_auto(
    omega: f64,
    temperature: f64,
    r: f64,
    theta: f64,
) -> Result<FockState> {
    auto_with(omega, temperature, r, theta, &TOLERANCES)
}

pub fn auto_with(
    omega: f64,
    temperature: f64,
    r: f64,
    theta: f64,
    tol: &Tolerances,
) -> Result<FockState> {
    positive("omega", omega)?;
    positive("temperature", temperature)?;
    let n = bose_occupation(omega, temperature);
    let q = n / (n + 1.0);
    let gibbs_levels = if q > 0.0 {
        libm::ceil(libm::log(tol.gibbs_tail) / libm::log(q)) as usize + 1
    } else {
        1
    };
    let spread = n * libm::cosh(2.0 * r) + libm::sinh(r) * libm::sinh(r);
    let mut cutoff = gibbs_levels.max(libm::ceil(8.0 * spread) as usize + 32);
    loop {
        cutoff = cutoff.min(tol.max_cutoff);
        match build(omega, temperature, r, theta, cutoff, tol) {
            Ok(s) if s.edge_population < tol.squeezed_tail_target => return Ok(s),
            Ok(_) | Err(Error::CutoffTooSmall { .. }) if cutoff < tol.max_cutoff => {
                cutoff = libm::ceil(cutoff as f64 * 1.25) as usize;
            }
            // at the cap the acceptance limit, already enforced by `build`, is enough
            Ok(s) => return Ok(s),
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_squeezing_gives_gibbs_energy() {
        let s = squeezed_thermal_state_ho(1.0, 1.0, 0.0, 0.0, 60).unwrap();
        let expected = 0.5 / libm::tanh(0.5);
        assert!((s.mean_energy().unwrap() - expected).abs() < 1e-13);
        let n = bose_occupation(1.0, 1.0);
        assert!((s.population(1) - n / (n + 1.0) / (n + 1.0)).abs() < 1e-14);
    }

    #[test]
    fn squeezed_vacuum_energy() {
        let s = squeezed_thermal_state_auto(1.0, 1e-3, 0.7, 0.3).unwrap();
        assert!((s.mean_energy().unwrap() - 0.5 * libm::cosh(1.4)).abs() < 1e-10);
        // odd levels stay empty
        assert!(s.population(1).abs() < 1e-15);
        // ⟨a²⟩ = -e^{iθ} sinh r cosh r for a squeezed vacuum
        let a2 = s.anomalous_moment();
        let expected =
            -C64::new(libm::cos(0.3), libm::sin(0.3)) * (libm::sinh(0.7) * libm::cosh(0.7));
        assert!((a2 - expected).norm() < 1e-9);
    }

    #[test]
    fn small_cutoff_is_rejected() {
        assert!(matches!(
            squeezed_thermal_state_ho(1.0, 1.0, 1.5, 0.0, 40),
            Err(Error::CutoffTooSmall { .. })
        ));
        assert!(matches!(
            squeezed_thermal_state_ho(1.0, 10.0, 0.0, 0.0, 20),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn blocks_match_full_matrix_layout() {
        let s = squeezed_thermal_state_ho(1.0, 1.0, 0.3, 1.0, 48).unwrap();
        let m = s.to_matrix();
        assert!(m.hermitian_defect() < 1e-14);
        assert!((m.trace().re - 1.0).abs() < 1e-14);
        assert_eq!(m[(0, 1)], C64::new(0.0, 0.0));
        assert!(m[(0, 2)].norm() > 1e-3);
    }

    #[test]
    fn entropy_is_unchanged_by_unitary_squeezing() {
        let a = squeezed_thermal_state_ho(1.0, 1.0, 0.0, 0.0, 80).unwrap();
        let b = squeezed_thermal_state_ho(1.0, 1.0, 0.5, 0.0, 80).unwrap();
        let (sa, sb) = (
            a.von_neumann_entropy().unwrap(),
            b.von_neumann_entropy().unwrap(),
        );
        assert!((sa - sb).abs() < 1e-10);
    }
}
