//! Closed-form λ₁, λ₂, λ₃ against the numerical spectrum of Ω₊(ω₀), and the
//! doubly degenerate model C spectrum.

use timeslit::dynamics::eigendecompose_hermitian;
use timeslit::models::hamiltonian;
use timeslit::reference::{lambda_eigenvalues, model_c_eigenvalues, omega_plus};
use timeslit::ModelId;

fn main() -> timeslit::Result<()> {
    println!(
        "{:>5} {:>36} {:>10}",
        "ω₀", "closed form (sorted)", "max err"
    );
    for w0 in [0.1, 0.5, 1.0, 2.0, 3.0] {
        let closed = lambda_eigenvalues(w0).sorted();
        let numerical = eigendecompose_hermitian(&omega_plus(w0))?;
        let err = closed
            .iter()
            .zip(numerical.eigenvalues())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!(
            "{w0:>5.1} {:>11.6} {:>11.6} {:>11.6} {err:>10.1e}",
            closed[0], closed[1], closed[2]
        );
    }

    let numerical = eigendecompose_hermitian(&hamiltonian(ModelId::C, 2.0, 3.0))?;
    println!("\nmodel C (ω₀=2, ω₁=3)");
    println!("  closed form: {:?}", model_c_eigenvalues(2.0, 3.0));
    let rounded: Vec<f64> = numerical
        .eigenvalues()
        .iter()
        .map(|x| (x * 1e9).round() / 1e9)
        .collect();
    println!("  numerical:   {rounded:?}");
    Ok(())
}
