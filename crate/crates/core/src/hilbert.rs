//! Dense complex linear algebra over the composite photon ⊗ atom ⊗ position
//! space.
//!
//! Everything here is dense and row-major. The largest space used by the
//! models is 16-dimensional, so there is no sparse path.
//!
//! Basis ordering is fixed as (photon `n`, atomic level `s`, position `j`),
//! with the first factor varying slowest:
//!
//! ```text
//! flat = n·(2L) + s·L + (j − 1),   s: − → 0, + → 1
//! ```
//!
//! For `L = 3` this lists components as Ψ₀₋₁, Ψ₀₋₂, Ψ₀₋₃, Ψ₀₊₁, …, Ψ₁₊₃.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex amplitude type used throughout the crate.
pub type Complex = Complex64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);
pub(crate) const I: Complex = Complex::new(0.0, 1.0);

/// Tolerance for structural predicates (Hermiticity, unitarity of exact builds).
pub const STRUCTURAL_TOL: f64 = 1e-14;
/// Tolerance for spectral reconstructions.
pub const SPECTRAL_TOL: f64 = 1e-11;

/// Ordered tensor factor dimensions of a Hilbert space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceShape {
    factor_dims: Vec<usize>,
}

impl SpaceShape {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() || factor_dims.contains(&0) {
            return Err(Error::input(format!(
                "factor dimensions must be positive and nonempty, got {factor_dims:?}"
            )));
        }
        if factor_dims.len() > 3 {
            return Err(Error::input("at most three tensor factors are supported"));
        }
        Ok(Self { factor_dims })
    }

    /// The photon ⊗ atom ⊗ position space with `sites` positions.
    pub fn model(sites: usize) -> Self {
        assert!(sites > 0, "a model space needs at least one site");
        Self {
            factor_dims: vec![2, 2, sites],
        }
    }

    /// A single unstructured factor of dimension `dim`.
    pub fn flat(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self {
            factor_dims: vec![dim],
        }
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn total_dim(&self) -> usize {
        self.factor_dims.iter().product()
    }

    /// Number of position sites when this is a photon ⊗ atom ⊗ position space.
    pub fn sites(&self) -> Option<usize> {
        match self.factor_dims.as_slice() {
            [2, 2, l] => Some(*l),
            _ => None,
        }
    }
}

impl fmt::Display for SpaceShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factor_dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("×"))
    }
}

/// Internal two-level atomic state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Minus,
    Plus,
}

impl Level {
    fn code(self) -> usize {
        match self {
            Level::Minus => 0,
            Level::Plus => 1,
        }
    }
}

/// A basis label `|n, s, X_j⟩` with 1-based position index `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub n: u8,
    pub s: Level,
    pub j: usize,
}

impl BasisLabel {
    pub const fn new(n: u8, s: Level, j: usize) -> Self {
        Self { n, s, j }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.s {
            Level::Minus => '-',
            Level::Plus => '+',
        };
        write!(f, "Ψ{}{}{}", self.n, s, self.j)
    }
}

/// Flat index of `label` in a photon ⊗ atom ⊗ position space.
pub fn basis_index(shape: &SpaceShape, label: BasisLabel) -> Result<usize> {
    let sites = shape
        .sites()
        .ok_or_else(|| Error::input(format!("shape {shape} is not photon⊗atom⊗position")))?;
    if label.n > 1 {
        return Err(Error::input(format!(
            "photon number {} out of range",
            label.n
        )));
    }
    if label.j == 0 || label.j > sites {
        return Err(Error::input(format!(
            "position index {} out of range 1..={sites}",
            label.j
        )));
    }
    Ok(label.n as usize * 2 * sites + label.s.code() * sites + (label.j - 1))
}

/// Inverse of [`basis_index`].
pub fn basis_label(shape: &SpaceShape, index: usize) -> Result<BasisLabel> {
    let sites = shape
        .sites()
        .ok_or_else(|| Error::input(format!("shape {shape} is not photon⊗atom⊗position")))?;
    if index >= shape.total_dim() {
        return Err(Error::input(format!(
            "index {index} out of range for {shape}"
        )));
    }
    let n = (index / (2 * sites)) as u8;
    let s = if (index / sites) % 2 == 0 {
        Level::Minus
    } else {
        Level::Plus
    };
    Ok(BasisLabel::new(n, s, index % sites + 1))
}

/// State vector over a composite space.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    shape: SpaceShape,
    amplitudes: Vec<Complex>,
}

impl Ket {
    pub fn zeros(shape: SpaceShape) -> Self {
        let amplitudes = vec![ZERO; shape.total_dim()];
        Self { shape, amplitudes }
    }

    pub fn from_amplitudes(shape: SpaceShape, amplitudes: Vec<Complex>) -> Result<Self> {
        if amplitudes.len() != shape.total_dim() {
            return Err(Error::input(format!(
                "{} amplitudes given for a {}-dimensional space",
                amplitudes.len(),
                shape.total_dim()
            )));
        }
        if amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(Error::numeric("non-finite amplitude"));
        }
        Ok(Self { shape, amplitudes })
    }

    pub fn shape(&self) -> &SpaceShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: BasisLabel) -> Result<Complex> {
        Ok(self.amplitudes[basis_index(&self.shape, label)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &Ket) -> Complex {
        debug_assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest componentwise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Ket) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex] {
        &mut self.amplitudes
    }
}

impl Index<usize> for Ket {
    type Output = Complex;

    fn index(&self, i: usize) -> &Complex {
        &self.amplitudes[i]
    }
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex>,
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let diag: Vec<Complex> = diag.iter().map(|&d| Complex::new(d, 0.0)).collect();
        Self::from_diagonal(&diag)
    }

    /// Builds a matrix from its rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::input(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { dim, entries })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Operator) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, ket: &Ket) -> Result<Ket> {
        if ket.dim() != self.dim {
            return Err(Error::input(format!(
                "operator of dimension {} applied to a ket of dimension {}",
                self.dim,
                ket.dim()
            )));
        }
        let mut out = Ket::zeros(ket.shape().clone());
        self.apply_into(ket.amplitudes(), out.amplitudes_mut());
        Ok(out)
    }

    pub(crate) fn apply_into(&self, x: &[Complex], y: &mut [Complex]) {
        let n = self.dim;
        for (i, yi) in y.iter_mut().enumerate() {
            let row = &self.entries[i * n..(i + 1) * n];
            *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex::new(factor, 0.0))
    }

    /// Max-entry norm `max |a_ij|`.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `max |a_ij − b_ij|`
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|i| (i..n).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.dagger()
            .matmul(self)
            .max_abs_diff(&Operator::identity(self.dim))
            <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|e| e.is_finite())
    }

    /// Square sub-block starting at `(offset, offset)`.
    pub fn diagonal_block(&self, offset: usize, size: usize) -> Self {
        assert!(offset + size <= self.dim, "block out of range");
        let mut out = Self::zeros(size);
        for i in 0..size {
            for j in 0..size {
                out[(i, j)] = self[(offset + i, offset + j)];
            }
        }
        out
    }

    /// Block-diagonal matrix with `blocks` along the diagonal.
    pub fn block_diagonal(blocks: &[Operator]) -> Self {
        let n = blocks.iter().map(|b| b.dim).sum();
        let mut out = Self::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    out[(offset + i, offset + j)] = b[(i, j)];
                }
            }
            offset += b.dim;
        }
        out
    }

    /// `self·other − other·self`
    pub fn commutator(&self, other: &Operator) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }
}

impl Index<(usize, usize)> for Operator {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Operator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.entries[i * self.dim + j]
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Operator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Operator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        self.scale_real(-1.0)
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        self.matmul(rhs)
    }
}

/// Kronecker product; the first factor varies slowest.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut out = Operator::zeros(n);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `a ⊗ b ⊗ c`
pub fn kron3(a: &Operator, b: &Operator, c: &Operator) -> Operator {
    kron(&kron(a, b), c)
}

/// `|X_j⟩⟨X_j|` on `sites` positions, `j` 1-based.
pub fn projector(j: usize, sites: usize) -> Result<Operator> {
    if j == 0 || j > sites {
        return Err(Error::input(format!(
            "position index {j} out of range 1..={sites}"
        )));
    }
    let mut p = Operator::zeros(sites);
    p[(j - 1, j - 1)] = ONE;
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    Id,
    X,
    Z,
}

pub fn pauli(kind: Pauli) -> Operator {
    let (a, b, c, d) = match kind {
        Pauli::Id => (1.0, 0.0, 0.0, 1.0),
        Pauli::X => (0.0, 1.0, 1.0, 0.0),
        Pauli::Z => (1.0, 0.0, 0.0, -1.0),
    };
    Operator::from_real_rows(&[vec![a, b], vec![c, d]]).expect("2×2 literal")
}
