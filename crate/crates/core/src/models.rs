//! The three position-controlled emission models.
//!
//! All three share the interaction `ω₁ σₓ⊗σₓ⊗P_zone`, a two-qubit NOT gate
//! on (photon, atom) controlled by the atom sitting inside the interaction
//! zone. They differ in the free hopping generator on the position factor:
//!
//! * [`ModelId::A`]: three sites, `iω₀(|1⟩⟨2| + |2⟩⟨3| + |3⟩⟨1|) + h.c.`,
//!   a rotation about (1,1,1); zone = {X₃}.
//! * [`ModelId::B`]: three sites, the same cycle without the `i`; zone = {X₃}.
//! * [`ModelId::C`]: four-site ring with symmetric hopping; zone = {X₃, X₄}.
//!
//! The atomic level splitting is zero, and no rotating-wave approximation is
//! made.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    basis_index, kron3, pauli, projector, BasisLabel, Complex, Ket, Level, Operator, Pauli,
    SpaceShape, I, ONE, ZERO,
};

/// Normalization tolerance for `α² + β²`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelId {
    A,
    B,
    C,
}

impl ModelId {
    pub const ALL: [ModelId; 3] = [ModelId::A, ModelId::B, ModelId::C];

    /// Number of position sites.
    pub fn sites(self) -> usize {
        match self {
            ModelId::A | ModelId::B => 3,
            ModelId::C => 4,
        }
    }

    pub fn shape(self) -> SpaceShape {
        SpaceShape::model(self.sites())
    }

    /// 1-based sites where the interaction acts.
    pub fn interaction_sites(self) -> &'static [usize] {
        match self {
            ModelId::A | ModelId::B => &[3],
            ModelId::C => &[3, 4],
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModelId::A => "A",
            ModelId::B => "B",
            ModelId::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(ModelId::A),
            "B" | "b" => Ok(ModelId::B),
            "C" | "c" => Ok(ModelId::C),
            other => Err(Error::input(format!(
                "unknown model {other:?}, expected A, B or C"
            ))),
        }
    }
}

/// Model identity plus the physical parameters of one run.
///
/// Construction via [`ModelParams::new`] enforces `ω₀ > 0`, `ω₁ ≥ 0` and
/// `α² + β² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub model: ModelId,
    pub omega0: f64,
    pub omega1: f64,
    pub alpha: f64,
    pub beta: f64,
    pub phi: f64,
}

impl ModelParams {
    pub fn new(
        model: ModelId,
        omega0: f64,
        omega1: f64,
        alpha: f64,
        beta: f64,
        phi: f64,
    ) -> Result<Self> {
        let params = Self {
            model,
            omega0,
            omega1,
            alpha,
            beta,
            phi,
        };
        params.validate()?;
        Ok(params)
    }

    /// Equal-weight superposition of the two starting sites:
    /// `α = β = 1/√2`, `φ = 0`, with the given frequencies.
    pub fn equal_weight(model: ModelId, omega0: f64, omega1: f64) -> Result<Self> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(model, omega0, omega1, r, r, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.omega0, self.omega1, self.alpha, self.beta, self.phi];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::input("parameters must be finite"));
        }
        if self.omega0 <= 0.0 {
            return Err(Error::input(format!(
                "omega0 must be > 0, got {}",
                self.omega0
            )));
        }
        if self.omega1 < 0.0 {
            return Err(Error::input(format!(
                "omega1 must be >= 0, got {}",
                self.omega1
            )));
        }
        let norm = self.alpha * self.alpha + self.beta * self.beta;
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::input(format!(
                "(alpha, beta) not normalized: alpha^2 + beta^2 = {norm}, must equal 1"
            )));
        }
        Ok(())
    }

    pub fn with_phi(self, phi: f64) -> Self {
        Self { phi, ..self }
    }

    pub fn with_amplitudes(self, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(self.model, self.omega0, self.omega1, alpha, beta, self.phi)
    }
}

/// Position-space hopping block of the free Hamiltonian.
pub fn free_position_block(model: ModelId, omega0: f64) -> Operator {
    let sites = model.sites();
    // |X_j⟩⟨X_{j+1}| around the ring
    let mut raising = Operator::zeros(sites);
    for j in 0..sites {
        raising[(j, (j + 1) % sites)] = ONE;
    }
    let coupling = match model {
        ModelId::A => I * omega0,
        ModelId::B | ModelId::C => Complex::new(omega0, 0.0),
    };
    let half = raising.scale(coupling);
    &half + &half.dagger()
}

/// Free Hamiltonian `I₂ ⊗ I₂ ⊗ (hopping)`; precondition `ω₀ > 0` is the
/// caller's (see [`ModelParams`]).
pub fn free_hamiltonian(model: ModelId, omega0: f64) -> Operator {
    let id = pauli(Pauli::Id);
    kron3(&id, &id, &free_position_block(model, omega0))
}

/// Projector onto the interaction zone in position space.
pub fn interaction_zone(model: ModelId) -> Operator {
    let sites = model.sites();
    model
        .interaction_sites()
        .iter()
        .map(|&j| projector(j, sites).expect("zone sites are in range"))
        .fold(Operator::zeros(sites), |acc, p| &acc + &p)
}

/// `ω₁ σₓ ⊗ σₓ ⊗ P_zone`
pub fn interaction_hamiltonian(model: ModelId, omega1: f64) -> Operator {
    let sx = pauli(Pauli::X);
    kron3(&sx, &sx, &interaction_zone(model)).scale_real(omega1)
}

/// Free plus interaction part for raw frequencies.
pub fn hamiltonian(model: ModelId, omega0: f64, omega1: f64) -> Operator {
    &free_hamiltonian(model, omega0) + &interaction_hamiltonian(model, omega1)
}

pub fn total_hamiltonian(params: &ModelParams) -> Operator {
    hamiltonian(params.model, params.omega0, params.omega1)
}

/// `σ_z ⊗ σ_z ⊗ I_L`; commutes with every model Hamiltonian.
pub fn excitation_parity(model: ModelId) -> Operator {
    let sz = pauli(Pauli::Z);
    kron3(&sz, &sz, &Operator::identity(model.sites()))
}

/// `|0⟩ ⊗ (α|+, X₁⟩ + β e^{iφ}|+, X₂⟩)`
pub fn initial_state(params: &ModelParams) -> Result<Ket> {
    params.validate()?;
    let shape = params.model.shape();
    let mut amps = vec![ZERO; shape.total_dim()];
    amps[basis_index(&shape, BasisLabel::new(0, Level::Plus, 1))?] =
        Complex::new(params.alpha, 0.0);
    amps[basis_index(&shape, BasisLabel::new(0, Level::Plus, 2))?] =
        Complex::from_polar(params.beta, params.phi);
    Ket::from_amplitudes(shape, amps)
}

/// Period of the free motion: `2π/(√3 ω₀)` for A, `2π/(3ω₀)` for B.
pub fn free_period(model: ModelId, omega0: f64) -> Result<f64> {
    if omega0.is_nan() || omega0 <= 0.0 {
        return Err(Error::input(format!("omega0 must be > 0, got {omega0}")));
    }
    match model {
        ModelId::A => Ok(2.0 * PI / (3f64.sqrt() * omega0)),
        ModelId::B => Ok(2.0 * PI / (3.0 * omega0)),
        ModelId::C => Err(Error::unsupported("model C has no single free cycle")),
    }
}
