//! Closed-form results for the three models, used as oracles against the
//! numerical engine.
//!
//! The explicit state vectors are only valid at the parameter points they
//! were derived for (`ω₀ = ω₁ = 1` for model B, `ω₀ = 2, ω₁ = 3` for model
//! C); asking for anything else is an [`Error::Unsupported`].

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hilbert::{Complex, Ket, Operator, SpaceShape, I, ZERO};
use crate::models::{ModelId, ModelParams};

fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// The three eigenvalues of Ω₊ in units `ω₁ = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormEigenvalues {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
}

impl ClosedFormEigenvalues {
    pub fn as_array(&self) -> [f64; 3] {
        [self.lambda1, self.lambda2, self.lambda3]
    }

    pub fn sorted(&self) -> [f64; 3] {
        let mut v = self.as_array();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn sum(&self) -> f64 {
        self.lambda1 + self.lambda2 + self.lambda3
    }
}

/// Trigonometric (Cardano) roots of the Ω₊ characteristic polynomial.
///
/// With `q = 9ω₀² + 1` and `θ = arg(2 + √(4 − 4q³))` (principal branches):
///
/// ```text
/// λ₁ = 1/3 + (2/3)√q cos(θ/3)
/// λ₂ = 1/3 − (1/3)√q cos(θ/3) − √q sin(θ/3)/√3
/// λ₃ = 1/3 − (1/3)√q cos(θ/3) + √q sin(θ/3)/√3
/// ```
///
/// For `ω₀ > 0` the radicand is negative, so the square root is purely
/// imaginary and `2 + √(…)` has real part 2: θ stays in `[0, π/2)`.
pub fn lambda_eigenvalues(omega0: f64) -> ClosedFormEigenvalues {
    let q = 9.0 * omega0 * omega0 + 1.0;
    let radicand = re(4.0 - 4.0 * q * q * q);
    let theta = (radicand.sqrt() + 2.0).arg();
    let sq = q.sqrt();
    let (sin3, cos3) = (theta / 3.0).sin_cos();
    ClosedFormEigenvalues {
        lambda1: 1.0 / 3.0 + 2.0 / 3.0 * sq * cos3,
        lambda2: 1.0 / 3.0 - sq * cos3 / 3.0 - sin3 * sq / 3f64.sqrt(),
        lambda3: 1.0 / 3.0 - sq * cos3 / 3.0 + sin3 * sq / 3f64.sqrt(),
    }
}

/// Spectrum of Ω₊(ω₀, ω₁) for general `ω₁ > 0` by rescaling to `ω₁ = 1`.
pub fn omega_plus_spectrum(omega0: f64, omega1: f64) -> Option<[f64; 3]> {
    (omega1 > 0.0).then(|| {
        lambda_eigenvalues(omega0 / omega1)
            .sorted()
            .map(|l| l * omega1)
    })
}

/// Spectrum of Ω₋(ω₀, ω₁) = −Ω₊(−ω₀, ω₁).
pub fn omega_minus_spectrum(omega0: f64, omega1: f64) -> Option<[f64; 3]> {
    omega_plus_spectrum(-omega0, omega1).map(|s| {
        let mut m = s.map(|l| -l);
        m.sort_by(f64::total_cmp);
        m
    })
}

/// Normalized eigenvector of Ω₊(ω₀) (units `ω₁ = 1`) for eigenvalue `λ`:
/// `(−ω₀² − iλω₀, iλω₀ − ω₀², λ² − ω₀²) / √(λ⁴ + 3ω₀⁴)`.
pub fn lambda_eigenvector(lambda: f64, omega0: f64) -> Result<Ket> {
    if omega0 == 0.0 {
        return Err(Error::input(
            "eigenvector formula degenerates at omega0 = 0",
        ));
    }
    let w2 = omega0 * omega0;
    let norm = (lambda.powi(4) + 3.0 * w2 * w2).sqrt();
    let amps = vec![
        Complex::new(-w2, -lambda * omega0) / norm,
        Complex::new(-w2, lambda * omega0) / norm,
        re(lambda * lambda - w2) / norm,
    ];
    Ket::from_amplitudes(SpaceShape::flat(3), amps)
}

/// Ω₊(ω₀) at `ω₁ = 1`: the model A hopping block with `+1` at the X₃ corner.
pub fn omega_plus(omega0: f64) -> Operator {
    let a = I * omega0;
    Operator::from_rows(&[vec![ZERO, a, -a], vec![-a, ZERO, a], vec![a, -a, re(1.0)]])
        .expect("3×3 literal")
}

/// Ω₋(ω₀) = −Ω₊(−ω₀); the X₃ corner entry becomes `−1`.
pub fn omega_minus(omega0: f64) -> Operator {
    -&omega_plus(-omega0)
}

/// Free propagator on the three-site position factor, models A and B.
pub fn u0_closed_form(model: ModelId, omega0: f64, t: f64) -> Result<Operator> {
    let rows = match model {
        ModelId::A => {
            // 2πt/T with T = 2π/(√3 ω₀)
            let x = 3f64.sqrt() * omega0 * t;
            let (s, c) = x.sin_cos();
            let r3 = 3f64.sqrt();
            let d = re(-2.0 * c - 1.0);
            let lo = re(c - r3 * s - 1.0);
            let hi = re(c + r3 * s - 1.0);
            vec![vec![d, lo, hi], vec![hi, d, lo], vec![lo, hi, d]]
        }
        ModelId::B => {
            let x = omega0 * t;
            let d = Complex::from_polar(-2.0, x) - Complex::from_polar(1.0, -2.0 * x);
            let o = Complex::from_polar(1.0, -2.0 * x) * (Complex::from_polar(1.0, 3.0 * x) - 1.0);
            vec![vec![d, o, o], vec![o, d, o], vec![o, o, d]]
        }
        ModelId::C => return Err(Error::unsupported("no closed-form U0 for model C")),
    };
    Ok(Operator::from_rows(&rows)?.scale_real(-1.0 / 3.0))
}

fn require_point(params: &ModelParams, model: ModelId, omega0: f64, omega1: f64) -> Result<()> {
    if params.model != model || params.omega0 != omega0 || params.omega1 != omega1 {
        return Err(Error::unsupported(format!(
            "closed form for model {model} exists only at omega0 = {omega0}, omega1 = {omega1}; got model {} at ({}, {})",
            params.model, params.omega0, params.omega1
        )));
    }
    params.validate()
}

/// Single-photon amplitudes (Ψ₁₋₁, Ψ₁₋₂, Ψ₁₋₃) of model B before the common
/// factor `(α + βe^{iφ})/12`, together with the upper-level part.
struct ModelBTerms {
    upper_12: Complex,
    upper_3: Complex,
    lower_12: Complex,
    lower_3: Complex,
}

fn model_b_terms(t: f64) -> ModelBTerms {
    let (r2, r3) = (2f64.sqrt(), 3f64.sqrt());
    let e = Complex::from_polar(1.0, -t);
    let (s2, c2) = (r2 * t).sin_cos();
    let (s3, c3) = (r3 * t).sin_cos();
    ModelBTerms {
        upper_12: e * (3.0 * c2) + re(3.0 * c3) - I * (r3 * s3),
        upper_3: -I * (e * (3.0 * r2 * s2) + re(2.0 * r3 * s3)),
        lower_12: e * (3.0 * c2) - re(3.0 * c3) + I * (r3 * s3),
        lower_3: -I * (e * (3.0 * r2 * s2) - re(2.0 * r3 * s3)),
    }
}

/// Explicit model B solution at `ω₀ = ω₁ = 1`:
///
/// ```text
/// ½e^{it}(α − e^{iφ}β)(e₄ − e₅) + (1/12)(α + e^{iφ}β)·v(t)
/// ```
///
/// (`e_k` 1-based unit vectors, `v` the trigonometric pattern vector).
pub fn psi_closed_form_b(params: &ModelParams, t: f64) -> Result<Ket> {
    require_point(params, ModelId::B, 1.0, 1.0)?;
    let phase = Complex::from_polar(params.beta, params.phi);
    let antisym = Complex::from_polar(0.5, t) * (params.alpha - phase);
    let sym = (phase + params.alpha) / 12.0;
    let terms = model_b_terms(t);

    let mut amps = vec![ZERO; 12];
    amps[3] = antisym + sym * terms.upper_12;
    amps[4] = -antisym + sym * terms.upper_12;
    amps[5] = sym * terms.upper_3;
    amps[6] = sym * terms.lower_12;
    amps[7] = sym * terms.lower_12;
    amps[8] = sym * terms.lower_3;
    Ket::from_amplitudes(ModelId::B.shape(), amps)
}

/// `f(t)` in `p(t) = |α + βe^{iφ}|² f(t)` for model B at `ω₀ = ω₁ = 1`.
pub fn model_b_f(t: f64) -> f64 {
    let terms = model_b_terms(t);
    (2.0 * terms.lower_12.norm_sqr() + terms.lower_3.norm_sqr()) / 144.0
}

/// Time-dependent factors of the model C solution at `ω₀ = 2, ω₁ = 3`.
///
/// `O` multiplies the no-photon upper-level amplitudes and `I` the
/// single-photon lower-level ones; `12` refers to sites X₁/X₂, `34` to the
/// interaction zone.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelCFactors {
    pub o12: Complex,
    pub o34: Complex,
    pub i12: Complex,
    pub i34: Complex,
}

pub fn model_c_factors(t: f64) -> ModelCFactors {
    let h = t / 2.0;
    let s_half = h.sin();
    ModelCFactors {
        o12: re((4.0 * t.cos() + (4.0 * t).cos()) / 5.0),
        o34: I * (-0.4 * (t.sin() + (4.0 * t).sin())),
        i12: I * (1.6 * (6.0 * h.cos() + 3.0 * (3.0 * h).cos() + (5.0 * h).cos()) * s_half.powi(3)),
        i34: re(-0.8
            * (6.0 * t.cos() + 4.0 * (2.0 * t).cos() + 2.0 * (3.0 * t).cos() + 3.0)
            * s_half.powi(2)),
    }
}

/// The two amplitude combinations that weight the model C solution:
/// `(α cos 2t − i e^{iφ} β sin 2t, e^{iφ} β cos 2t − i α sin 2t)`.
pub fn model_c_weights(alpha: f64, beta: f64, phi: f64, t: f64) -> (Complex, Complex) {
    let e = Complex::from_polar(beta, phi);
    let (s, c) = (2.0 * t).sin_cos();
    let first = re(alpha * c) - I * e * s;
    let second = e * c - I * (alpha * s);
    (first, second)
}

/// Explicit model C solution at `ω₀ = 2, ω₁ = 3`.
pub fn psi_closed_form_c(params: &ModelParams, t: f64) -> Result<Ket> {
    require_point(params, ModelId::C, 2.0, 3.0)?;
    let f = model_c_factors(t);
    let (first, second) = model_c_weights(params.alpha, params.beta, params.phi, t);
    let mut amps = vec![ZERO; 16];
    amps[4] = first * f.o12; // Ψ0+1
    amps[5] = second * f.o12; // Ψ0+2
    amps[6] = second * f.o34; // Ψ0+3
    amps[7] = first * f.o34; // Ψ0+4
    amps[8] = first * f.i12; // Ψ1-1
    amps[9] = second * f.i12; // Ψ1-2
    amps[10] = second * f.i34; // Ψ1-3
    amps[11] = first * f.i34; // Ψ1-4
    Ket::from_amplitudes(ModelId::C.shape(), amps)
}

/// All sign combinations of `½(±2ω₀ ± ω₁ ± √(4ω₀² + ω₁²))`, each twice,
/// sorted ascending (16 values).
pub fn model_c_eigenvalues(omega0: f64, omega1: f64) -> Vec<f64> {
    let root = (4.0 * omega0 * omega0 + omega1 * omega1).sqrt();
    let mut out = Vec::with_capacity(16);
    for a in [1.0, -1.0] {
        for b in [1.0, -1.0] {
            for c in [1.0, -1.0] {
                let v = 0.5 * (a * 2.0 * omega0 + b * omega1 + c * root);
                out.push(v);
                out.push(v);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Both sides of
///
/// ```text
/// |α cos 2t − i e^{iφ} β sin 2t|² = α² cos² 2t + β² sin² 2t + αβ sin 4t sin φ
/// |e^{iφ} β cos 2t − i α sin 2t|² = α² sin² 2t + β² cos² 2t − αβ sin 4t sin φ
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModulusIdentities {
    pub lhs1: f64,
    pub rhs1: f64,
    pub lhs2: f64,
    pub rhs2: f64,
}

pub fn modulus_identities(alpha: f64, beta: f64, phi: f64, t: f64) -> ModulusIdentities {
    let (first, second) = model_c_weights(alpha, beta, phi, t);
    let (s, c) = (2.0 * t).sin_cos();
    let cross = alpha * beta * (4.0 * t).sin() * phi.sin();
    ModulusIdentities {
        lhs1: first.norm_sqr(),
        rhs1: alpha * alpha * c * c + beta * beta * s * s + cross,
        lhs2: second.norm_sqr(),
        rhs2: alpha * alpha * s * s + beta * beta * c * c - cross,
    }
}

/// Model A free period divided by three, the time for one site-to-site hop.
pub fn model_a_third_period(omega0: f64) -> f64 {
    2.0 * PI / (3f64.sqrt() * omega0) / 3.0
}
