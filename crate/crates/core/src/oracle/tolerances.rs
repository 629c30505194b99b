//! Every threshold the oracle applies, in one place.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest `|ρ_ij - ρ_ji*|` accepted for a density matrix.
    pub hermitian: f64,
    /// Largest `|Tr ρ - 1|`.
    pub trace: f64,
    /// Most negative eigenvalue accepted.
    pub eigenvalue_floor: f64,
    /// Largest imaginary part of an energy expectation.
    pub imaginary_residue: f64,
    /// Trace-norm change between successive integration windows that counts
    /// as stationary.
    pub stationarity: f64,
    /// Most negative eigenvalue during integration.
    pub integration_positivity: f64,
    /// Gibbs population beyond the cutoff before squeezing.
    pub gibbs_tail: f64,
    /// Population in the top eighth of the Fock space after squeezing that
    /// the automatic cutoff aims for.
    pub squeezed_tail_target: f64,
    /// Above this edge population a fixed cutoff is rejected.
    pub squeezed_tail_limit: f64,
    /// Largest `|U U† - 1|` entry of the truncated squeeze operator.
    pub unitarity: f64,
    /// Largest cutoff the automatic search may reach.
    pub max_cutoff: usize,
}

pub const TOLERANCES: Tolerances = Tolerances {
    hermitian: 1e-12,
    trace: 1e-12,
    eigenvalue_floor: -1e-12,
    imaginary_residue: 1e-12,
    stationarity: 1e-12,
    integration_positivity: -1e-10,
    gibbs_tail: 1e-14,
    squeezed_tail_target: 1e-12,
    squeezed_tail_limit: 1e-9,
    unitarity: 1e-9,
    max_cutoff: 1024,
};

impl Default for Tolerances {
    fn default() -> Self {
        TOLERANCES
    }
}

impl Tolerances {
    /// Loosens (`k > 1`) or tightens every acceptance threshold by `k`; the
    /// stationarity target and cutoff cap are left alone.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            hermitian: self.hermitian * k,
            trace: self.trace * k,
            eigenvalue_floor: self.eigenvalue_floor * k,
            imaginary_residue: self.imaginary_residue * k,
            integration_positivity: self.integration_positivity * k,
            squeezed_tail_limit: self.squeezed_tail_limit * k,
            unitarity: self.unitarity * k,
            ..*self
        }
    }
}
