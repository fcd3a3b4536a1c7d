//! Model C: the total emission probability ignores φ, but the probability of
//! finding the photon emitted with the atom at site 3 does not. The phase
//! survives in the site-resolved record.

use std::f64::consts::PI;

use timeslit::analysis::{conditional_emission_probability, emission_probability};
use timeslit::dynamics::{eigendecompose_hermitian, evolve_ket};
use timeslit::models::{hamiltonian, initial_state};
use timeslit::{ModelId, ModelParams};

fn main() -> timeslit::Result<()> {
    let t = 0.4;
    let es = eigendecompose_hermitian(&hamiltonian(ModelId::C, 2.0, 3.0))?;
    println!("t = {t}");
    println!("{:>8} {:>10} {:>10} {:>10}", "φ/π", "p", "site 3", "site 4");
    for k in 0..8 {
        let phi = k as f64 * PI / 4.0;
        let params = ModelParams::equal_weight(ModelId::C, 2.0, 3.0)?.with_phi(phi);
        let psi = evolve_ket(&es, &initial_state(&params)?, t);
        println!(
            "{:>8.2} {:>10.6} {:>10.6} {:>10.6}",
            phi / PI,
            emission_probability(&psi),
            conditional_emission_probability(&psi, 3)?,
            conditional_emission_probability(&psi, 4)?
        );
    }
    Ok(())
}
