//! Thermodynamics of a quantum Stirling heat engine whose hot reservoir is a
//! squeezed thermal bath.
//!
//! Two working media are supported: a two-level system ([`tls`]) and a
//! harmonic oscillator ([`ho`]). Both expose closed-form stroke heats and
//! works; [`cycle`] assembles them into a ledger and efficiency, and
//! [`asymptotics`] carries the high/low temperature expansions together with
//! a numeric maximizer used as ground truth. [`oracle`] is an independent
//! matrix-level verification layer (Lindblad steady states, Fock-space
//! squeezed states, von Neumann entropies) that never calls the closed forms.
//!
//! All quantities use natural units, `k_B = ħ = 1`.
//!
//! The crate is `no_std` and only needs `alloc` (the oracle and sweep tables
//! allocate).
#![cfg_attr(not(test), no_std)]
#![deny(rust_2018_idioms)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod asymptotics;
pub mod cycle;
mod error;
pub mod figures;
pub mod ho;
pub mod optimize;
pub mod oracle;
pub mod reservoir;
pub mod special;
pub mod tls;
pub mod verify;

pub use cycle::{run_cycle, CycleConfig, CyclePerformance, Medium, Regime, StrokeLedger};
pub use error::{Error, Result};
pub use reservoir::{Occupancy, Reservoir, SqueezeFactors};
