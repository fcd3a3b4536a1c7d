//! Recover A(t), B(t), C(t), S(t) for model A on a coarse grid. S stays at
//! round-off level and C is the self-interference signal.

use timeslit::analysis::{InterferenceDecomposer, FIT_VIOLATION_TOL};
use timeslit::ModelId;

fn main() -> timeslit::Result<()> {
    let dec = InterferenceDecomposer::new(ModelId::A, 1.0, 1.0)?;
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "t", "A", "B", "C", "S", "residual"
    );
    for k in 0..=20 {
        let t = 10.0 * k as f64;
        let fit = dec.fit(t).check(FIT_VIOLATION_TOL)?;
        println!(
            "{t:>6.1} {:>10.5} {:>10.5} {:>10.5} {:>10.1e} {:>10.1e}",
            fit.a, fit.b, fit.c, fit.s, fit.residual
        );
    }
    Ok(())
}
