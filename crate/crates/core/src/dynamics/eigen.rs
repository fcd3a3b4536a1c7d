//! Cyclic Jacobi diagonalization of small dense Hermitian matrices.
//!
//! Each rotation acts on a pivot pair `(p, q)`. The complex off-diagonal
//! entry `h_pq = |h_pq| e^{iθ}` is first made real by the phase
//! `D = diag(1, e^{-iθ})`, after which an ordinary real Jacobi rotation
//! `R = [[c, s], [−s, c]]` annihilates it. The combined unitary
//!
//! ```text
//! J = D·R = [[ c,          s          ],
//!            [ −s e^{-iθ},  c e^{-iθ}  ]]
//! ```
//!
//! is applied as `H ← J† H J` and accumulated into the eigenvector matrix.
//! Sweeps visit pairs in row-major order, so the output is deterministic.

use crate::error::{Error, Result};
use crate::hilbert::{Complex, Ket, Operator, SpaceShape, ZERO};

/// Stop once the off-diagonal Frobenius norm falls below this (relative to
/// `max(1, ‖H‖_F)`).
pub const OFF_DIAGONAL_THRESHOLD: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this are treated as one degenerate cluster.
pub const DEGENERACY_GAP: f64 = 1e-9;
/// Input Hermiticity tolerance.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-12;

/// Real spectrum and unitary eigenvector matrix of a Hermitian operator.
///
/// Column `k` of `eigenvectors` belongs to `eigenvalues[k]`; eigenvalues are
/// ascending.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    eigenvalues: Vec<f64>,
    eigenvectors: Operator,
}

impl EigenSystem {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Operator {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Column `k` as a flat ket.
    pub fn eigenvector(&self, k: usize) -> Ket {
        let n = self.dim();
        let amps = (0..n).map(|i| self.eigenvectors[(i, k)]).collect();
        Ket::from_amplitudes(SpaceShape::flat(n), amps).expect("column has dimension n")
    }

    /// `U · diag(f(λ)) · U†`
    pub fn spectral_map(&self, f: impl Fn(f64) -> Complex) -> Operator {
        let n = self.dim();
        let u = &self.eigenvectors;
        let weights: Vec<Complex> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for (k, w) in weights.iter().enumerate() {
                    acc += u[(i, k)] * w * u[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// `U · diag(λ) · U†`
    pub fn reconstruct(&self) -> Operator {
        self.spectral_map(|l| Complex::new(l, 0.0))
    }

    /// `U · diag(f(λ)) · U† · ψ` without forming the full matrix.
    pub fn apply_spectral(&self, f: impl Fn(f64) -> Complex, psi: &[Complex]) -> Vec<Complex> {
        let n = self.dim();
        let u = &self.eigenvectors;
        let coeffs: Vec<Complex> = (0..n)
            .map(|k| {
                let overlap: Complex = (0..n).map(|i| u[(i, k)].conj() * psi[i]).sum();
                overlap * f(self.eigenvalues[k])
            })
            .collect();
        (0..n)
            .map(|i| coeffs.iter().enumerate().map(|(k, c)| u[(i, k)] * c).sum())
            .collect()
    }
}

/// Diagonalizes a Hermitian matrix by cyclic complex Jacobi sweeps.
pub fn eigendecompose_hermitian(h: &Operator) -> Result<EigenSystem> {
    if !h.is_finite() {
        return Err(Error::numeric("matrix has non-finite entries"));
    }
    if !h.is_hermitian(HERMITIAN_INPUT_TOL) {
        return Err(Error::input("matrix is not Hermitian"));
    }
    let n = h.dim();
    // symmetrize so that round-off in the input cannot bias the sweep
    let mut a = (h + &h.dagger()).scale_real(0.5);
    let mut v = Operator::identity(n);
    let threshold = OFF_DIAGONAL_THRESHOLD * h.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::numeric(format!(
            "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = Operator::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, new_col)] = v[(row, old_col)];
        }
    }
    orthonormalize_clusters(&eigenvalues, &mut eigenvectors);

    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &Operator) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut Operator, v: &mut Operator, p: usize, q: usize) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude < f64::MIN_POSITIVE.sqrt() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / magnitude; // e^{iθ}

    let theta = (aqq - app) / (2.0 * magnitude);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let e = phase.conj();
    let j_pp = Complex::new(c, 0.0);
    let j_pq = Complex::new(s, 0.0);
    let j_qp = e * (-s);
    let j_qq = e * c;

    let n = a.dim();
    // A ← A J (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    // A ← J† A (rows p, q)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex::new(a[(q, q)].re, 0.0);
    // V ← V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

/// Modified Gram–Schmidt within each cluster of (near-)degenerate
/// eigenvalues, in column order.
fn orthonormalize_clusters(eigenvalues: &[f64], vectors: &mut Operator) {
    let n = eigenvalues.len();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues[end] - eigenvalues[end - 1] < DEGENERACY_GAP {
            end += 1;
        }
        if end - start > 1 {
            for k in start..end {
                for prev in start..k {
                    let overlap: Complex = (0..n)
                        .map(|i| vectors[(i, prev)].conj() * vectors[(i, k)])
                        .sum();
                    for i in 0..n {
                        let sub = overlap * vectors[(i, prev)];
                        vectors[(i, k)] -= sub;
                    }
                }
                let norm: f64 = (0..n)
                    .map(|i| vectors[(i, k)].norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                for i in 0..n {
                    vectors[(i, k)] /= norm;
                }
            }
        }
        start = end;
    }
}
