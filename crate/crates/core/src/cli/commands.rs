//! The four subcommands as pure functions returning their CSV text.

use std::fmt::Write as _;

use super::config::{DecomposeConfig, EigenConfig, RunConfig};
use crate::analysis::{
    phase_sweep, EmissionRecord, InterferenceDecomposer, InterferenceFit, FIT_VIOLATION_TOL,
};
use crate::dynamics::{
    block_diagonalize, eigendecompose_hermitian, evolve_rk4, DriftWarning, Method,
};
use crate::error::Result;
use crate::models::{hamiltonian, initial_state, total_hamiltonian, ModelId};
use crate::reference::{model_c_eigenvalues, omega_minus_spectrum, omega_plus_spectrum};
use crate::validation::{run_validation, ValidationOptions, ValidationReport};

/// Shortest round-trip decimal; `-0.0` prints as `0.0` so goldens do not
/// flip on the sign of an exact zero.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0.0".to_string()
    } else {
        format!("{x:?}")
    }
}

fn push_row(out: &mut String, fields: impl IntoIterator<Item = String>) {
    let row: Vec<String> = fields.into_iter().collect();
    out.push_str(&row.join(","));
    out.push('\n');
}

pub struct SimulateOutput {
    pub csv: String,
    pub records: Vec<EmissionRecord>,
    pub warnings: Vec<DriftWarning>,
}

pub fn simulate_header(model: ModelId) -> String {
    let mut cols: Vec<String> = [
        "model", "omega0", "omega1", "alpha", "beta", "phi", "t", "p",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    cols.extend((1..=model.sites()).map(|j| format!("p_cond_{j}")));
    cols.push("norm".into());
    cols.join(",")
}

/// One row per `(t, φ)` cell, t-major.
pub fn cmd_simulate(config: &RunConfig) -> Result<SimulateOutput> {
    let params = config.params;
    let times = config.grid.points();
    let phis = config.phis();
    let mut warnings = Vec::new();

    let records = match config.method {
        Method::Spectral => phase_sweep(&params, &times, &phis)?,
        Method::Rk4 => {
            let h = total_hamiltonian(&params);
            let mut per_phi = Vec::with_capacity(phis.len());
            for &phi in &phis {
                let psi0 = initial_state(&params.with_phi(phi))?;
                let traj = evolve_rk4(&h, &psi0, &times, config.dt)?;
                warnings.extend(traj.warning);
                per_phi.push(traj);
            }
            let mut records = Vec::with_capacity(times.len() * phis.len());
            for (k, &t) in times.iter().enumerate() {
                for (traj, &phi) in per_phi.iter().zip(&phis) {
                    records.push(EmissionRecord::from_state(t, phi, &traj.states[k]));
                }
            }
            records
        }
    };

    let mut csv = simulate_header(params.model);
    csv.push('\n');
    let prefix = [
        params.model.to_string(),
        fmt_f64(params.omega0),
        fmt_f64(params.omega1),
        fmt_f64(params.alpha),
        fmt_f64(params.beta),
    ];
    for r in &records {
        let mut fields: Vec<String> = prefix.to_vec();
        fields.extend([fmt_f64(r.phi), fmt_f64(r.t), fmt_f64(r.p)]);
        fields.extend(r.p_cond.iter().copied().map(fmt_f64));
        fields.push(fmt_f64(r.norm));
        push_row(&mut csv, fields);
    }
    Ok(SimulateOutput {
        csv,
        records,
        warnings,
    })
}

pub const DECOMPOSE_HEADER: &str = "model,omega0,omega1,t,A,B,C,S,residual";

pub struct DecomposeOutput {
    pub csv: String,
    pub fits: Vec<InterferenceFit>,
}

impl DecomposeOutput {
    /// First fit whose residual breaks the ansatz tolerance.
    pub fn violation(&self) -> Option<&InterferenceFit> {
        self.fits
            .iter()
            .find(|f| f.residual.is_nan() || f.residual > FIT_VIOLATION_TOL)
    }
}

/// Rows are produced for every time even when the fit is violated; the
/// caller decides what a violation means.
pub fn cmd_decompose(config: &DecomposeConfig) -> Result<DecomposeOutput> {
    let dec = InterferenceDecomposer::new(config.model, config.omega0, config.omega1)?;
    let fits: Vec<InterferenceFit> = config
        .grid
        .points()
        .into_iter()
        .map(|t| dec.fit(t))
        .collect();
    let mut csv = String::from(DECOMPOSE_HEADER);
    csv.push('\n');
    for f in &fits {
        push_row(
            &mut csv,
            [
                config.model.to_string(),
                fmt_f64(config.omega0),
                fmt_f64(config.omega1),
                fmt_f64(f.t),
                fmt_f64(f.a),
                fmt_f64(f.b),
                fmt_f64(f.c),
                fmt_f64(f.s),
                fmt_f64(f.residual),
            ],
        );
    }
    Ok(DecomposeOutput { csv, fits })
}

pub const EIGEN_HEADER: &str = "model,omega0,omega1,block,index,numerical,closed_form";

#[derive(Clone, Debug, PartialEq)]
pub struct EigenRow {
    pub block: &'static str,
    pub index: usize,
    pub numerical: f64,
    pub closed_form: Option<f64>,
}

/// Sorted spectra of the Ω₊/Ω₋ blocks (two-level photon models) and of the
/// full Hamiltonian, with closed forms where they exist.
pub fn eigen_rows(config: &EigenConfig) -> Result<Vec<EigenRow>> {
    let (model, w0, w1) = (config.model, config.omega0, config.omega1);
    let h = hamiltonian(model, w0, w1);
    let mut rows = Vec::new();
    let mut push = |block: &'static str, numerical: &[f64], closed: Option<Vec<f64>>| {
        for (index, &x) in numerical.iter().enumerate() {
            rows.push(EigenRow {
                block,
                index,
                numerical: x,
                closed_form: closed.as_ref().map(|c| c[index]),
            });
        }
    };

    if matches!(model, ModelId::A | ModelId::B) {
        let bd = block_diagonalize(&h, &model.shape())?;
        let plus = eigendecompose_hermitian(bd.plus())?;
        let minus = eigendecompose_hermitian(bd.minus())?;
        let (closed_plus, closed_minus) = match model {
            ModelId::A => (
                omega_plus_spectrum(w0, w1).map(|s| s.to_vec()),
                omega_minus_spectrum(w0, w1).map(|s| s.to_vec()),
            ),
            _ => (None, None),
        };
        push("plus", plus.eigenvalues(), closed_plus.clone());
        push("minus", minus.eigenvalues(), closed_minus.clone());
        let full = eigendecompose_hermitian(&h)?;
        let closed_full = closed_plus.zip(closed_minus).map(|(p, m)| {
            let mut all: Vec<f64> = p.iter().chain(&p).chain(&m).chain(&m).copied().collect();
            all.sort_by(f64::total_cmp);
            all
        });
        push("full", full.eigenvalues(), closed_full);
    } else {
        let full = eigendecompose_hermitian(&h)?;
        push(
            "full",
            full.eigenvalues(),
            Some(model_c_eigenvalues(w0, w1)),
        );
    }
    Ok(rows)
}

pub fn cmd_eigen(config: &EigenConfig) -> Result<String> {
    let mut csv = String::from(EIGEN_HEADER);
    csv.push('\n');
    for r in eigen_rows(config)? {
        push_row(
            &mut csv,
            [
                config.model.to_string(),
                fmt_f64(config.omega0),
                fmt_f64(config.omega1),
                r.block.to_string(),
                r.index.to_string(),
                fmt_f64(r.numerical),
                r.closed_form.map(fmt_f64).unwrap_or_default(),
            ],
        );
    }
    Ok(csv)
}

pub fn cmd_validate(options: &ValidationOptions) -> Result<(ValidationReport, String)> {
    let report = run_validation(options)?;
    let mut text = String::new();
    writeln!(text, "{report}").expect("write to String");
    Ok((report, text))
}
