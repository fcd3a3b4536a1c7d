//! Free propagation in model A moves the photon-atom pair one site per third
//! of a period: X₁ → X₃ → X₂ → X₁.

use timeslit::dynamics::propagator;
use timeslit::hilbert::{basis_index, BasisLabel, Ket, Level};
use timeslit::models::{free_period, hamiltonian};
use timeslit::{Complex, ModelId};

fn main() -> timeslit::Result<()> {
    let omega0 = 1.0;
    let shape = ModelId::A.shape();
    let h0 = hamiltonian(ModelId::A, omega0, 0.0);
    let period = free_period(ModelId::A, omega0)?;
    println!("period T = 2π/(√3 ω₀) = {period:.6}");

    let mut amps = vec![Complex::new(0.0, 0.0); shape.total_dim()];
    amps[basis_index(&shape, BasisLabel::new(0, Level::Plus, 1))?] = Complex::new(1.0, 0.0);
    let start = Ket::from_amplitudes(shape.clone(), amps)?;

    for k in 0..=3 {
        let t = period * k as f64 / 3.0;
        let psi = propagator(&h0, t)?.apply(&start)?;
        let occupation: Vec<String> = (1..=3)
            .map(|j| {
                let a = psi.amplitude(BasisLabel::new(0, Level::Plus, j)).unwrap();
                format!("X{j}: {:.3}", a.norm_sqr())
            })
            .collect();
        println!("t = {k}T/3   {}", occupation.join("  "));
    }
    Ok(())
}
