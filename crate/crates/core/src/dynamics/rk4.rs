//! Classical fourth-order Runge–Kutta for `ψ̇ = −iHψ`.
//!
//! Used only as an oracle for the spectral propagator, so the state is never
//! renormalized: the drift of `‖ψ‖` is itself a diagnostic.

use super::{Method, Trajectory};
use crate::error::{Error, Result};
use crate::hilbert::{Complex, Ket, Operator, I, ZERO};

/// Default step in units where the couplings are O(1).
pub const DEFAULT_DT: f64 = 1e-3;
/// Norm drift above this is reported back as a [`DriftWarning`].
pub const DRIFT_WARNING_THRESHOLD: f64 = 1e-6;

/// The integration drifted in norm more than [`DRIFT_WARNING_THRESHOLD`];
/// the step is probably too large.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriftWarning {
    pub max_drift: f64,
    pub dt: f64,
}

struct Stepper<'a> {
    h: &'a Operator,
    k: [Vec<Complex>; 4],
    tmp: Vec<Complex>,
    hx: Vec<Complex>,
}

impl<'a> Stepper<'a> {
    fn new(h: &'a Operator) -> Self {
        let n = h.dim();
        Self {
            h,
            k: [vec![ZERO; n], vec![ZERO; n], vec![ZERO; n], vec![ZERO; n]],
            tmp: vec![ZERO; n],
            hx: vec![ZERO; n],
        }
    }

    // out = −i H x
    fn rhs(h: &Operator, x: &[Complex], hx: &mut [Complex], out: &mut [Complex]) {
        h.apply_into(x, hx);
        for (o, v) in out.iter_mut().zip(hx.iter()) {
            *o = -I * v;
        }
    }

    fn step(&mut self, psi: &mut [Complex], dt: f64) {
        let half = 0.5 * dt;
        Self::rhs(self.h, psi, &mut self.hx, &mut self.k[0]);
        for (i, t) in self.tmp.iter_mut().enumerate() {
            *t = psi[i] + self.k[0][i] * half;
        }
        Self::rhs(self.h, &self.tmp, &mut self.hx, &mut self.k[1]);
        for (i, t) in self.tmp.iter_mut().enumerate() {
            *t = psi[i] + self.k[1][i] * half;
        }
        Self::rhs(self.h, &self.tmp, &mut self.hx, &mut self.k[2]);
        for (i, t) in self.tmp.iter_mut().enumerate() {
            *t = psi[i] + self.k[2][i] * dt;
        }
        Self::rhs(self.h, &self.tmp, &mut self.hx, &mut self.k[3]);
        let w = dt / 6.0;
        for (i, p) in psi.iter_mut().enumerate() {
            *p += (self.k[0][i] + self.k[1][i] * 2.0 + self.k[2][i] * 2.0 + self.k[3][i]) * w;
        }
    }
}

/// Integrates from `times[0] = 0`… through each grid point.
///
/// Between consecutive grid points the integrator takes whole steps of `dt`
/// and one shorter final step for the remainder, so every grid time is hit
/// exactly.
pub fn evolve_rk4(h: &Operator, psi0: &Ket, times: &[f64], dt: f64) -> Result<Trajectory> {
    if psi0.dim() != h.dim() {
        return Err(Error::input(format!(
            "ket dimension {} does not match operator dimension {}",
            psi0.dim(),
            h.dim()
        )));
    }
    if dt.is_nan() || dt <= 0.0 || !dt.is_finite() {
        return Err(Error::input(format!("dt must be positive, got {dt}")));
    }
    super::check_grid(times)?;

    let initial_norm = psi0.norm();
    let mut psi: Vec<Complex> = psi0.amplitudes().to_vec();
    let mut stepper = Stepper::new(h);
    let mut now = 0.0;
    let mut states = Vec::with_capacity(times.len());
    let mut max_drift: f64 = 0.0;

    for &target in times {
        let span = target - now;
        // guard against a spurious extra step from round-off in span / dt
        let full_steps = ((span / dt) * (1.0 + 1e-12)).floor() as u64;
        for _ in 0..full_steps {
            stepper.step(&mut psi, dt);
        }
        let remainder = span - full_steps as f64 * dt;
        if remainder > 1e-15 * target.abs().max(1.0) {
            stepper.step(&mut psi, remainder);
        }
        now = target;
        let ket = Ket::from_amplitudes(psi0.shape().clone(), psi.clone())?;
        max_drift = max_drift.max((ket.norm() - initial_norm).abs());
        states.push(ket);
    }

    let warning = (max_drift > DRIFT_WARNING_THRESHOLD).then_some(DriftWarning { max_drift, dt });
    Ok(Trajectory {
        times: times.to_vec(),
        states,
        method: Method::Rk4,
        max_norm_drift: max_drift,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::evolve;
    use crate::models::{initial_state, total_hamiltonian, ModelId, ModelParams};

    #[test]
    fn zero_hamiltonian_is_constant() {
        let p = ModelParams::equal_weight(ModelId::A, 1.0, 1.0).unwrap();
        let psi0 = initial_state(&p).unwrap();
        let traj = evolve_rk4(&Operator::zeros(12), &psi0, &[0.0, 0.5, 3.0], 0.1).unwrap();
        for s in &traj.states {
            assert_eq!(s, &psi0);
        }
        assert!(traj.warning.is_none());
    }

    #[test]
    fn hits_grid_points_not_multiple_of_dt() {
        let p = ModelParams::equal_weight(ModelId::B, 1.0, 1.0).unwrap();
        let h = total_hamiltonian(&p);
        let psi0 = initial_state(&p).unwrap();
        let grid = [0.0, 0.12345, 1.0 / 3.0, 2.0];
        let rk = evolve_rk4(&h, &psi0, &grid, 1e-3).unwrap();
        let sp = evolve(&h, &psi0, &grid).unwrap();
        for (a, b) in rk.states.iter().zip(&sp.states) {
            assert!(a.max_abs_diff(b) < 1e-11);
        }
    }

    #[test]
    fn large_step_surfaces_warning() {
        let p = ModelParams::equal_weight(ModelId::C, 2.0, 3.0).unwrap();
        let h = total_hamiltonian(&p);
        let psi0 = initial_state(&p).unwrap();
        let traj = evolve_rk4(&h, &psi0, &[0.0, 20.0], 0.1).unwrap();
        let w = traj.warning.expect("dt = 0.1 with |λ| = 6 must drift");
        assert!(w.max_drift > DRIFT_WARNING_THRESHOLD);
    }

    #[test]
    fn rejects_bad_inputs() {
        let psi0 = Ket::zeros(crate::hilbert::SpaceShape::model(3));
        let h = Operator::zeros(12);
        assert!(evolve_rk4(&h, &psi0, &[0.0], 0.0).is_err());
        assert!(evolve_rk4(&h, &psi0, &[1.0, 0.5], 0.1).is_err());
        assert!(evolve_rk4(&Operator::zeros(16), &psi0, &[0.0], 0.1).is_err());
    }
}
