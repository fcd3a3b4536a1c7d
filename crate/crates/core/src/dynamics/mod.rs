//! Time evolution under a time-independent Hamiltonian.
//!
//! The production path is spectral: diagonalize once, then
//! `U(t) = Σ_k e^{−iλ_k t}|k⟩⟨k|`. [`evolve_rk4`] integrates the same
//! equation step by step and serves as an independent oracle.

mod eigen;
mod rk4;

use std::f64::consts::FRAC_1_SQRT_2;

pub use eigen::{
    eigendecompose_hermitian, EigenSystem, DEGENERACY_GAP, HERMITIAN_INPUT_TOL, MAX_SWEEPS,
    OFF_DIAGONAL_THRESHOLD,
};
pub use rk4::{evolve_rk4, DriftWarning, DEFAULT_DT, DRIFT_WARNING_THRESHOLD};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{kron3, Complex, Ket, Operator, SpaceShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Spectral,
    Rk4,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Method::Spectral),
            "rk4" => Ok(Method::Rk4),
            other => Err(Error::input(format!(
                "unknown method {other:?}, expected spectral or rk4"
            ))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Spectral => "spectral",
            Method::Rk4 => "rk4",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Ket>,
    pub method: Method,
    /// `max_k |‖ψ(t_k)‖ − ‖ψ(0)‖|`
    pub max_norm_drift: f64,
    /// Set by the RK4 path when the drift exceeds its threshold.
    pub warning: Option<DriftWarning>,
}

impl Trajectory {
    /// Largest componentwise deviation between two trajectories on the same grid.
    pub fn max_deviation(&self, other: &Trajectory) -> f64 {
        assert_eq!(self.times.len(), other.times.len(), "grids differ");
        self.states
            .iter()
            .zip(&other.states)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn check_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::input("time grid is empty"));
    }
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::input("time grid must be finite and non-negative"));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::input("time grid must be ascending"));
    }
    Ok(())
}

/// `e^{−iHt}` for a Hermitian `h`.
pub fn propagator(h: &Operator, t: f64) -> Result<Operator> {
    let es = eigendecompose_hermitian(h)?;
    Ok(propagator_from(&es, t))
}

pub fn propagator_from(es: &EigenSystem, t: f64) -> Operator {
    if t == 0.0 {
        return Operator::identity(es.dim());
    }
    es.spectral_map(|l| Complex::from_polar(1.0, -l * t))
}

/// `e^{−iHt} ψ` using a precomputed eigensystem.
pub fn evolve_ket(es: &EigenSystem, psi0: &Ket, t: f64) -> Ket {
    if t == 0.0 {
        return psi0.clone();
    }
    let amps = es.apply_spectral(|l| Complex::from_polar(1.0, -l * t), psi0.amplitudes());
    Ket::from_amplitudes(psi0.shape().clone(), amps).expect("dimension preserved")
}

/// Spectral evolution of `psi0` sampled on `times`.
pub fn evolve(h: &Operator, psi0: &Ket, times: &[f64]) -> Result<Trajectory> {
    if psi0.dim() != h.dim() {
        return Err(Error::input(format!(
            "ket dimension {} does not match operator dimension {}",
            psi0.dim(),
            h.dim()
        )));
    }
    check_grid(times)?;
    let es = eigendecompose_hermitian(h)?;
    let initial_norm = psi0.norm();
    let states: Vec<Ket> = times.iter().map(|&t| evolve_ket(&es, psi0, t)).collect();
    let max_norm_drift = states
        .iter()
        .map(|s| (s.norm() - initial_norm).abs())
        .fold(0.0, f64::max);
    Ok(Trajectory {
        times: times.to_vec(),
        states,
        method: Method::Spectral,
        max_norm_drift,
        warning: None,
    })
}

/// Off-block mass above this means the input is not of the σₓ⊗σₓ form.
pub const BLOCK_RESIDUAL_TOL: f64 = 1e-10;

/// `V = (1/√2)[[1, 1], [1, −1]]`, with `V σₓ V† = σ_z`.
pub fn hadamard() -> Operator {
    Operator::from_real_rows(&[
        vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        vec![FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    ])
    .expect("2×2 literal")
}

/// Change of basis `W = V⊗V⊗I_L` and the four diagonal blocks of `W Ω W†`.
///
/// Because `V⊗V` maps `σₓ⊗σₓ` to `σ_z⊗σ_z = diag(1, −1, −1, 1)`, the blocks
/// come out in the order (Ω₊, Ω₋, Ω₋, Ω₊).
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub w: Operator,
    pub blocks: [Operator; 4],
    /// Largest entry of `W Ω W†` outside the diagonal blocks.
    pub off_block_residual: f64,
}

impl BlockDecomposition {
    pub fn plus(&self) -> &Operator {
        &self.blocks[0]
    }

    pub fn minus(&self) -> &Operator {
        &self.blocks[1]
    }

    /// `W† · diag(e^{−iΩ₊t}, e^{−iΩ₋t}, e^{−iΩ₋t}, e^{−iΩ₊t}) · W`
    pub fn propagator(&self, t: f64) -> Result<Operator> {
        let exps = self
            .blocks
            .iter()
            .map(|b| propagator(b, t))
            .collect::<Result<Vec<_>>>()?;
        let middle = Operator::block_diagonal(&exps);
        Ok(self.w.dagger().matmul(&middle).matmul(&self.w))
    }
}

pub fn block_diagonalize(omega: &Operator, shape: &SpaceShape) -> Result<BlockDecomposition> {
    let sites = shape
        .sites()
        .ok_or_else(|| Error::input(format!("shape {shape} is not photon⊗atom⊗position")))?;
    if omega.dim() != shape.total_dim() {
        return Err(Error::input(format!(
            "operator dimension {} does not match shape {shape}",
            omega.dim()
        )));
    }
    let v = hadamard();
    let w = kron3(&v, &v, &Operator::identity(sites));
    let rotated = w.matmul(omega).matmul(&w.dagger());

    let mut residual: f64 = 0.0;
    for i in 0..rotated.dim() {
        for j in 0..rotated.dim() {
            if i / sites != j / sites {
                residual = residual.max(rotated[(i, j)].norm());
            }
        }
    }
    if residual > BLOCK_RESIDUAL_TOL {
        return Err(Error::Structural(format!(
            "off-block residual {residual:e} exceeds {BLOCK_RESIDUAL_TOL:e}"
        )));
    }
    let blocks = [0, 1, 2, 3].map(|b| rotated.diagonal_block(b * sites, sites));
    Ok(BlockDecomposition {
        w,
        blocks,
        off_block_residual: residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{pauli, Pauli, ONE};
    use crate::models::{
        free_hamiltonian, free_period, free_position_block, hamiltonian, initial_state,
        total_hamiltonian, ModelId, ModelParams,
    };

    #[test]
    fn propagator_at_zero_is_identity() {
        for m in ModelId::ALL {
            let u = propagator(&hamiltonian(m, 1.0, 1.0), 0.0).unwrap();
            assert!(u.max_abs_diff(&Operator::identity(u.dim())) < 1e-14);
        }
    }

    #[test]
    fn model_a_free_third_cycle_permutes_sites() {
        let t = free_period(ModelId::A, 1.0).unwrap() / 3.0;
        let u = propagator(&free_position_block(ModelId::A, 1.0), t).unwrap();
        // X1 → X3, X2 → X1, X3 → X2
        let want = Operator::from_real_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        assert!(u.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn grid_of_single_zero_returns_initial() {
        let p = ModelParams::equal_weight(ModelId::A, 1.0, 1.0).unwrap();
        let psi0 = initial_state(&p).unwrap();
        let traj = evolve(&total_hamiltonian(&p), &psi0, &[0.0]).unwrap();
        assert!(traj.states[0].max_abs_diff(&psi0) < 1e-15);
        assert_eq!(traj.method, Method::Spectral);
    }

    #[test]
    fn evolve_rejects_dimension_mismatch() {
        let p = ModelParams::equal_weight(ModelId::A, 1.0, 1.0).unwrap();
        let psi0 = initial_state(&p).unwrap();
        assert!(evolve(&hamiltonian(ModelId::C, 1.0, 1.0), &psi0, &[0.0]).is_err());
        assert!(evolve(&total_hamiltonian(&p), &psi0, &[]).is_err());
    }

    #[test]
    fn block_decomposition_model_a() {
        let h = hamiltonian(ModelId::A, 1.0, 1.0);
        let bd = block_diagonalize(&h, &ModelId::A.shape()).unwrap();
        assert!(bd.w.is_unitary(1e-14));
        let free = free_position_block(ModelId::A, 1.0);
        for (k, sign) in [1.0, -1.0, -1.0, 1.0].iter().enumerate() {
            let mut want = free.clone();
            want[(2, 2)] = ONE * *sign;
            assert!(bd.blocks[k].max_abs_diff(&want) < 1e-12, "block {k}");
        }
        assert!(bd.off_block_residual <= 1e-12);
    }

    #[test]
    fn zero_coupling_blocks_are_identical() {
        let h = free_hamiltonian(ModelId::B, 1.0);
        let bd = block_diagonalize(&h, &ModelId::B.shape()).unwrap();
        let free = free_position_block(ModelId::B, 1.0);
        for b in &bd.blocks {
            assert!(b.max_abs_diff(&free) < 1e-14);
        }
    }

    #[test]
    fn block_propagator_agrees() {
        for m in ModelId::ALL {
            let h = hamiltonian(m, 1.0, 1.0);
            let bd = block_diagonalize(&h, &m.shape()).unwrap();
            for t in [0.3, 4.0, 17.5] {
                let direct = propagator(&h, t).unwrap();
                assert!(direct.max_abs_diff(&bd.propagator(t).unwrap()) < 1e-10);
            }
        }
    }

    #[test]
    fn block_diagonalize_rejects_wrong_form() {
        // σ_z on the photon factor does not commute with V⊗V
        let sz = pauli(Pauli::Z);
        let h = kron3(&sz, &pauli(Pauli::Id), &Operator::identity(3));
        assert!(matches!(
            block_diagonalize(&h, &SpaceShape::model(3)),
            Err(Error::Structural(_))
        ));
        assert!(block_diagonalize(&Operator::zeros(4), &SpaceShape::flat(4)).is_err());
    }

    #[test]
    fn hadamard_maps_sigma_x_to_sigma_z() {
        let v = hadamard();
        assert!(v.is_unitary(1e-15));
        let z = v.matmul(&pauli(Pauli::X)).matmul(&v.dagger());
        assert!(z.max_abs_diff(&pauli(Pauli::Z)) < 1e-15);
        assert!(v.matmul(&v).max_abs_diff(&Operator::identity(2)) < 1e-15);
    }
}
