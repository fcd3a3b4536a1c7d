//! Model B: two indistinguishable paths that interfere destructively. With
//! α = β = 1/√2 and φ = π no photon is ever emitted; with φ = 0 the emission
//! probability is twice the single-path value f(t).

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use timeslit::analysis::emission_probability;
use timeslit::dynamics::evolve;
use timeslit::models::{initial_state, total_hamiltonian};
use timeslit::reference::model_b_f;
use timeslit::{ModelId, ModelParams};

fn main() -> timeslit::Result<()> {
    let times: Vec<f64> = (0..=10).map(|k| 2.0 * k as f64).collect();
    println!(
        "{:>5} {:>12} {:>12} {:>12}",
        "t", "p(φ=0)", "2f(t)", "p(φ=π)"
    );
    let run = |phi: f64| -> timeslit::Result<Vec<f64>> {
        let params = ModelParams::new(ModelId::B, 1.0, 1.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, phi)?;
        let traj = evolve(
            &total_hamiltonian(&params),
            &initial_state(&params)?,
            &times,
        )?;
        Ok(traj.states.iter().map(emission_probability).collect())
    };
    let open = run(0.0)?;
    let blocked = run(PI)?;
    for (k, &t) in times.iter().enumerate() {
        println!(
            "{t:>5.1} {:>12.6} {:>12.6} {:>12.2e}",
            open[k],
            2.0 * model_b_f(t),
            blocked[k]
        );
    }
    Ok(())
}
