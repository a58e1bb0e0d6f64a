//! Dense complex linear algebra: Hermitian eigenproblems, PSD square roots,
//! Kronecker products and the two random generators (Haar unitaries and
//! flat points on the probability simplex) the state sampler is built from.
//!
//! Matrices are small (N ≤ a few dozen) and dense; the heavy lifting is
//! delegated to `nalgebra`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};

/// Eigenvalues in `[-PSD_CLAMP, 0)` are round-off and clamp to zero; anything
/// more negative is a genuine PSD violation.
pub const PSD_CLAMP: f64 = 1e-10;

const EIGEN_MAX_ITERATIONS: usize = 10_000;

/// Square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn new(inner: DMatrix<Complex64>) -> Result<Self> {
        if !inner.is_square() {
            return Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                inner.nrows(),
                inner.ncols()
            )));
        }
        if inner.is_empty() {
            return Err(Error::Dimension("matrix has no entries".into()));
        }
        if inner.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Dimension("matrix has non-finite entries".into()));
        }
        Ok(Self(inner))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self(DMatrix::from_fn(dim, dim, f))
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_slice(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "{} entries cannot form a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Real row-major entries, convenient for tests and oracles.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let entries: Vec<Complex64> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::from_row_slice(dim, &entries)
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Rank-one projector |v⟩⟨v| (no normalization applied).
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    /// Pauli σ_y.
    pub fn pauli_y() -> Self {
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        Self(DMatrix::from_row_slice(2, 2, &[z, -i, i, z]))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn as_inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> Self {
        Self(self.0.conjugate())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// max_ij |self_ij − other_ij|; infinite when the dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// (m + m†)/2.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0))
    }

    /// ‖U†U − I‖_max.
    pub fn unitarity_error(&self) -> f64 {
        let gram = Self(self.0.adjoint() * &self.0);
        gram.max_abs_diff(&Self::identity(self.dim()))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "matrix product dimension mismatch");
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "matrix sum dimension mismatch");
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.dim(),
            rhs.dim(),
            "matrix difference dimension mismatch"
        );
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Real eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts `values` descending. Non-finite values are rejected.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Dimension("empty spectrum".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("spectrum has non-finite values".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    /// Like [`Spectrum::new`] but additionally requires a probability vector:
    /// entries in `[-PSD_CLAMP, 1 + PSD_CLAMP]` summing to one within 1e−10.
    pub fn probability(values: Vec<f64>) -> Result<Self> {
        let s = Self::new(values)?;
        if !s.is_probability() {
            return Err(Error::InvalidState(format!(
                "not a probability spectrum (sum {}, min {})",
                s.sum(),
                s.min()
            )));
        }
        Ok(s)
    }

    pub(crate) fn from_sorted(values: Vec<f64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn is_probability(&self) -> bool {
        (self.sum() - 1.0).abs() <= 1e-10
            && self.min() >= -PSD_CLAMP
            && self.max() <= 1.0 + PSD_CLAMP
    }

    /// Replaces negative entries in `[-PSD_CLAMP, 0)` by zero.
    pub fn clamp_round_off(mut self) -> Result<Self> {
        if self.min() < -PSD_CLAMP {
            return Err(Error::NotPsd {
                min_eigenvalue: self.min(),
            });
        }
        for v in &mut self.values {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Ok(self)
    }
}

fn eigen_decompose(m: &ComplexMatrix) -> Result<SymmetricEigen<Complex64, nalgebra::Dyn>> {
    let sym = m.hermitian_part();
    SymmetricEigen::try_new(sym.0, f64::EPSILON, EIGEN_MAX_ITERATIONS).ok_or(Error::Numerical {
        iterations: EIGEN_MAX_ITERATIONS,
    })
}

/// Eigen-decomposition of the Hermitian part of `m`: descending eigenvalues and
/// the matching unitary matrix of column eigenvectors.
pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<(Spectrum, ComplexMatrix)> {
    let eig = eigen_decompose(m)?;
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((Spectrum::from_sorted(values), ComplexMatrix(vectors)))
}

/// Eigenvalues only of the Hermitian part of `m`, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum> {
    let n = m.dim();
    match n {
        1 => Ok(Spectrum::from_sorted(vec![m.get(0, 0).re])),
        2 => Ok(hermitian_eigenvalues_2x2(m)),
        _ => {
            let mut values: Vec<f64> = eigen_decompose(m)?.eigenvalues.iter().copied().collect();
            values.sort_by(|a, b| b.total_cmp(a));
            Ok(Spectrum::from_sorted(values))
        }
    }
}

fn hermitian_eigenvalues_2x2(m: &ComplexMatrix) -> Spectrum {
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let b = (m.get(0, 1) + m.get(1, 0).conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    Spectrum::from_sorted(vec![mean + radius, mean - radius])
}

/// Hermitian PSD square root. Eigenvalues in `[-PSD_CLAMP, 0)` are treated as
/// zero; more negative ones fail with [`Error::NotPsd`].
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (spectrum, vectors) = hermitian_eigensystem(m)?;
    let spectrum = spectrum.clamp_round_off()?;
    let n = m.dim();
    let roots: Vec<f64> = spectrum.values().iter().map(|v| v.sqrt()).collect();
    let scaled = DMatrix::from_fn(n, n, |i, j| vectors.0[(i, j)] * roots[j]);
    Ok(ComplexMatrix(scaled * vectors.0.adjoint()))
}

/// Kronecker product with `(a ⊗ b)[i·n_b + k, j·n_b + l] = a[i,j]·b[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix(a.0.kronecker(&b.0))
}

/// Standard complex Gaussian: E|z|² = 1.
fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed `n×n` unitary.
///
/// QR of a complex Ginibre matrix, with the columns of Q rephased by
/// `r_jj/|r_jj|`. Without the rephasing the distribution is not Haar.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    assert!(n >= 1, "unitary dimension must be positive");
    let ginibre = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = ginibre.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        let phase = if norm > 0.0 {
            d / norm
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix(q)
}

/// A Haar-random unit vector in `C^n` (first column of a Haar unitary).
pub fn haar_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    assert!(n >= 1, "vector dimension must be positive");
    let raw: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    raw.into_iter().map(|z| z / norm).collect()
}

/// Flat-Dirichlet draw in coordinate order (i.i.d. unit exponentials over
/// their sum): uniform Lebesgue measure on the probability simplex.
pub fn sample_simplex_unsorted<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    assert!(n >= 1, "simplex dimension must be positive");
    let mut draws: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = draws.iter().sum();
    for v in &mut draws {
        *v /= total;
    }
    draws
}

/// Uniform point on the probability simplex, returned descending.
pub fn sample_simplex<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Spectrum {
    let mut values = sample_simplex_unsorted(n, rng);
    values.sort_by(|a, b| b.total_cmp(a));
    Spectrum::from_sorted(values)
}
