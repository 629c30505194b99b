//! Matrix-level reference computations.
//!
//! Nothing here calls the closed forms of [`crate::tls`] or [`crate::ho`];
//! occupations are recomputed from `exp` directly, steady states come from
//! integrating the master equation, and oscillator states are built by
//! exponentiating the squeeze generator in a truncated Fock space.

pub mod eigen;
pub mod expm;
pub mod fock;
pub mod lindblad;
pub mod matrix;
pub mod tolerances;

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
pub use eigen::hermitian_eigenvalues;
pub use fock::{squeezed_thermal_state_auto, squeezed_thermal_state_ho, FockState};
pub use lindblad::{lindblad_steady_state_tls, stationary_solve_tls, LindbladParams, SteadyState};
pub use matrix::{CMatrix, C64};
pub use tolerances::{Tolerances, TOLERANCES};

/// A validated density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, &TOLERANCES)
    }

    pub fn with_tolerances(matrix: CMatrix, tol: &Tolerances) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > tol.hermitian {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian, defect {defect:e}"
            )));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tol.trace {
            return Err(Error::InvalidDensityMatrix(format!("trace is {tr}")));
        }
        let eigenvalues = hermitian_eigenvalues(&matrix)?;
        if let Some(&low) = eigenvalues.first() {
            if low < tol.eigenvalue_floor {
                return Err(Error::InvalidDensityMatrix(format!(
                    "negative eigenvalue {low:e}"
                )));
            }
        }
        Ok(Self {
            matrix,
            eigenvalues,
        })
    }

    /// Diagonal state with the given populations.
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        Self::new(CMatrix::diagonal(populations))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn population(&self, i: usize) -> f64 {
        self.matrix[(i, i)].re
    }

    /// `½ ‖ρ - σ‖₁`.
    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        let diff = self.matrix.sub(&other.matrix)?;
        Ok(0.5
            * hermitian_eigenvalues(&diff)?
                .iter()
                .map(|x| x.abs())
                .sum::<f64>())
    }
}

/// `-Σ λ log λ` over the eigenvalues, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * libm::log(l))
        .sum()
}

/// Hamiltonians the oracle knows how to trace against.
#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianSpec {
    /// `diag(+ω/2, -ω/2)`, excited level first.
    TwoLevel {
        omega: f64,
    },
    /// `ω(a†a + 1/2)` on the state's Fock space.
    Oscillator {
        omega: f64,
    },
    Diagonal(Vec<f64>),
}

impl HamiltonianSpec {
    fn diagonal_entries(&self, dim: usize) -> Result<Vec<f64>> {
        let entries: Vec<f64> = match self {
            HamiltonianSpec::TwoLevel { omega } => alloc::vec![0.5 * omega, -0.5 * omega],
            HamiltonianSpec::Oscillator { omega } => {
                (0..dim).map(|k| omega * (k as f64 + 0.5)).collect()
            }
            HamiltonianSpec::Diagonal(d) => d.clone(),
        };
        if entries.len() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: entries.len(),
            });
        }
        Ok(entries)
    }
}

/// `Tr(ρH)`; fails if the trace has an imaginary part above tolerance.
pub fn energy_expectation(rho: &DensityMatrix, h: &HamiltonianSpec) -> Result<f64> {
    let diag = h.diagonal_entries(rho.dim())?;
    let tr: C64 = diag
        .iter()
        .enumerate()
        .map(|(i, &e)| rho.matrix[(i, i)] * e)
        .sum();
    let scale = diag.iter().fold(0.0f64, |m, e| m.max(e.abs())).max(1.0);
    if tr.im.abs() > TOLERANCES.imaginary_residue * scale {
        return Err(Error::NonRealExpectation(tr.im));
    }
    Ok(tr.re)
}

/// Mean occupation `1/(e^{ω/T} - 1)`.
pub fn bose_occupation(omega: f64, temperature: f64) -> f64 {
    1.0 / (libm::exp(omega / temperature) - 1.0)
}

/// `(N + 1) log(N + 1) - N log N`, evaluated literally.
pub fn bosonic_entropy_from_n(n: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    (n + 1.0) * libm::log(n + 1.0) - n * libm::log(n)
}

/// Diagonal state `p_k = N^k / (N + 1)^{k+1}` on `cutoff` levels,
/// renormalized.
pub fn thermal_form_state(n: f64, cutoff: usize) -> Result<DensityMatrix> {
    let q = n / (n + 1.0);
    let mut p: Vec<f64> = (0..cutoff)
        .map(|k| libm::pow(q, k as f64) / (n + 1.0))
        .collect();
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    DensityMatrix::diagonal(&p)
}

/// The stationary two-level state written from `(n, r)`:
/// `diag(n cosh 2r + sinh² r, n cosh 2r + cosh² r) / ((2n + 1) cosh 2r)`,
/// excited level first.
pub fn tls_stationary_state(omega: f64, temperature: f64, r: f64) -> Result<DensityMatrix> {
    let n = bose_occupation(omega, temperature);
    let c = libm::cosh(2.0 * r);
    let z = (2.0 * n + 1.0) * c;
    let e = (n * c + libm::sinh(r) * libm::sinh(r)) / z;
    let g = (n * c + libm::cosh(r) * libm::cosh(r)) / z;
    DensityMatrix::diagonal(&[e, g])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DensityMatrix::diagonal(&[0.5, 0.6]).is_err());
        assert!(DensityMatrix::diagonal(&[1.2, -0.2]).is_err());
        let m = CMatrix::from_rows(
            2,
            &[
                C64::new(0.5, 0.0),
                C64::new(0.1, 0.1),
                C64::new(0.1, 0.1),
                C64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        assert!(DensityMatrix::new(m).is_err());
    }

    #[test]
    fn entropy_and_energy_examples() {
        let pure = DensityMatrix::diagonal(&[0.0, 1.0]).unwrap();
        assert_eq!(von_neumann_entropy(&pure), 0.0);
        assert_eq!(
            energy_expectation(&pure, &HamiltonianSpec::TwoLevel { omega: 2.0 }).unwrap(),
            -1.0
        );
        let mixed = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        assert!((von_neumann_entropy(&mixed) - core::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(
            energy_expectation(&mixed, &HamiltonianSpec::TwoLevel { omega: 2.0 }).unwrap(),
            0.0
        );
        assert!(energy_expectation(&mixed, &HamiltonianSpec::Diagonal(alloc::vec![1.0])).is_err());
    }

    #[test]
    fn entropy_is_basis_independent() {
        // rotate diag(0.2, 0.8) by a unitary: eigenvalues and entropy unchanged
        let (c, s) = (0.6, 0.8);
        let u = CMatrix::from_rows(
            2,
            &[
                C64::new(c, 0.0),
                C64::new(0.0, -s),
                C64::new(0.0, -s),
                C64::new(c, 0.0),
            ],
        )
        .unwrap();
        let d = CMatrix::diagonal(&[0.2, 0.8]);
        let rotated = u.matmul(&d).unwrap().matmul(&u.adjoint()).unwrap();
        let a = DensityMatrix::new(d).unwrap();
        let b = DensityMatrix::new(rotated).unwrap();
        assert!((von_neumann_entropy(&a) - von_neumann_entropy(&b)).abs() < 1e-15);
        assert!(a.trace_distance(&b).unwrap() > 0.1);
    }

    #[test]
    fn bosonic_entropy_literal() {
        assert_eq!(bosonic_entropy_from_n(0.0), 0.0);
        assert!((bosonic_entropy_from_n(1.0) - 2.0 * core::f64::consts::LN_2).abs() < 1e-15);
        let rho = thermal_form_state(0.8, 200).unwrap();
        assert!((von_neumann_entropy(&rho) - bosonic_entropy_from_n(0.8)).abs() < 1e-12);
    }
}
