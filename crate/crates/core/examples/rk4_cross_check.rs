//! Spectral propagation against an unnormalized RK4 integration, for every
//! model and a few step sizes.

use std::f64::consts::FRAC_1_SQRT_2;

use timeslit::dynamics::{evolve, evolve_rk4};
use timeslit::models::{initial_state, total_hamiltonian};
use timeslit::{ModelId, ModelParams};

fn main() -> timeslit::Result<()> {
    let times: Vec<f64> = (0..=20).map(f64::from).collect();
    for (model, w0, w1) in [
        (ModelId::A, 1.0, 1.0),
        (ModelId::B, 1.0, 1.0),
        (ModelId::C, 2.0, 3.0),
    ] {
        let params = ModelParams::new(model, w0, w1, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0)?;
        let h = total_hamiltonian(&params);
        let psi0 = initial_state(&params)?;
        let spectral = evolve(&h, &psi0, &times)?;
        for dt in [1e-1, 1e-2, 1e-3] {
            let rk4 = evolve_rk4(&h, &psi0, &times, dt)?;
            println!(
                "model {model} dt = {dt:<6} max deviation {:.2e}  norm drift {:.2e}{}",
                spectral.max_deviation(&rk4),
                rk4.max_norm_drift,
                if rk4.warning.is_some() {
                    "  (drift warning)"
                } else {
                    ""
                }
            );
        }
    }
    Ok(())
}
