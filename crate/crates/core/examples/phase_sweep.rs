//! Sweep the relative phase φ at a fixed time and print p(φ) for each model.
//! Models A and B oscillate with φ; model C does not.

use timeslit::analysis::{phase_grid, phase_sweep};
use timeslit::{ModelId, ModelParams};

fn main() -> timeslit::Result<()> {
    let t = 3.0;
    let phis = phase_grid(8);
    for (model, w0, w1) in [
        (ModelId::A, 1.0, 1.0),
        (ModelId::B, 1.0, 1.0),
        (ModelId::C, 2.0, 3.0),
    ] {
        let base = ModelParams::equal_weight(model, w0, w1)?;
        let rows = phase_sweep(&base, &[t], &phis)?;
        let ps: Vec<String> = rows.iter().map(|r| format!("{:.4}", r.p)).collect();
        println!("model {model}, t = {t}: p(φ) = [{}]", ps.join(", "));
    }
    Ok(())
}
