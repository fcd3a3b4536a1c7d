//! Finite-state models of photon emission from an atom whose center of mass
//! hops between a few discrete sites, one or two of which form an
//! interaction zone.
//!
//! Three models are provided (see [`models::ModelId`]). Each is a
//! time-independent Hamiltonian on photon ⊗ atom ⊗ position, evolved from
//! `|0⟩⊗(α|+,X₁⟩ + βe^{iφ}|+,X₂⟩)`. The emission probability depends on the
//! relative phase φ even though all light comes from a single site: the two
//! wave-packet peaks reach the zone at different times and still interfere.
//!
//! Modules, bottom up:
//!
//! * [`hilbert`]: dense complex kets/operators, Kronecker products, basis labels.
//! * [`models`]: Hamiltonians and initial states.
//! * [`dynamics`]: Jacobi eigensolver, spectral propagator, RK4 oracle,
//!   σₓ-block diagonalization.
//! * [`analysis`]: emission probabilities and the `A, B, C, S` decomposition.
//! * [`reference`]: closed-form solutions used as independent checks.
//! * [`validation`]: the full numerical-vs-closed-form check table.
//! * [`cli`]: config parsing and CSV output behind the `timeslit` binary.

pub mod analysis;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod hilbert;
pub mod models;
pub mod reference;
pub mod validation;

pub use error::{Error, Result};
pub use hilbert::{Complex, Ket, Operator, SpaceShape};
pub use models::{ModelId, ModelParams};
