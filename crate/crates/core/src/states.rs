//! Density matrices of bipartite systems and the random-state sampler.
//!
//! Composite basis index convention: `i = a·n_b + b`, subsystem A major and
//! subsystem B minor. Partial traces, partial transposes and the spin-flip
//! operator all rely on this single convention.

use std::sync::OnceLock;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, Spectrum};

/// Tolerance on Hermiticity and unit trace for [`DensityMatrix::new`].
pub const STATE_TOL: f64 = 1e-10;

/// Subsystem dimensions `(N₁, N₂)` of a bipartite Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteDims {
    n_a: usize,
    n_b: usize,
}

impl BipartiteDims {
    pub fn new(n_a: usize, n_b: usize) -> Result<Self> {
        if n_a < 2 || n_b < 2 {
            return Err(Error::Parameter(format!(
                "both subsystem dimensions must be at least 2, got {n_a}x{n_b}"
            )));
        }
        Ok(Self { n_a, n_b })
    }

    pub fn two_qubits() -> Self {
        Self { n_a: 2, n_b: 2 }
    }

    pub fn qubit_qutrit() -> Self {
        Self { n_a: 2, n_b: 3 }
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn total(&self) -> usize {
        self.n_a * self.n_b
    }

    pub fn of(&self, which: Subsystem) -> usize {
        match which {
            Subsystem::A => self.n_a,
            Subsystem::B => self.n_b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix, optionally tagged
/// with its bipartite structure. Immutable once built.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Option<BipartiteDims>,
    spectrum: OnceLock<Spectrum>,
}

impl DensityMatrix {
    /// Validates Hermiticity and trace (within [`STATE_TOL`]) and positivity
    /// (eigenvalues ≥ −[`linalg::PSD_CLAMP`]). The matrix is replaced by its exact
    /// Hermitian part.
    pub fn new(matrix: ComplexMatrix, dims: Option<BipartiteDims>) -> Result<Self> {
        if let Some(d) = dims {
            if d.total() != matrix.dim() {
                return Err(Error::Dimension(format!(
                    "dims {}x{} do not match a {}-dimensional matrix",
                    d.n_a,
                    d.n_b,
                    matrix.dim()
                )));
            }
        }
        let herm_err = matrix.hermiticity_error();
        if herm_err > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {herm_err:e})"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace is {trace}, not 1")));
        }
        let matrix = matrix.hermitian_part();
        let spectrum = linalg::hermitian_eigenvalues(&matrix)?.clamp_round_off()?;
        Ok(Self {
            matrix,
            dims,
            spectrum: OnceLock::from(spectrum),
        })
    }

    /// Trusted constructor for matrices valid by construction.
    pub(crate) fn from_parts(
        matrix: ComplexMatrix,
        dims: Option<BipartiteDims>,
        spectrum: Option<Spectrum>,
    ) -> Self {
        let cell = OnceLock::new();
        if let Some(s) = spectrum {
            let _ = cell.set(s);
        }
        Self {
            matrix,
            dims,
            spectrum: cell,
        }
    }

    /// Pure state |ψ⟩⟨ψ|; `psi` is normalized here.
    pub fn pure(psi: &[Complex64], dims: Option<BipartiteDims>) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("state vector has zero norm".into()));
        }
        let normalized: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&normalized), dims)
    }

    pub fn maximally_mixed(dims: BipartiteDims) -> Self {
        let n = dims.total();
        let matrix = ComplexMatrix::identity(n).scale(1.0 / n as f64);
        let spectrum = Spectrum::from_sorted(vec![1.0 / n as f64; n]);
        Self::from_parts(matrix, Some(dims), Some(spectrum))
    }

    /// ρ_A ⊗ ρ_B, tagged with the matching bipartite dims.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        let dims = BipartiteDims::new(a.dim(), b.dim())?;
        Self::new(linalg::kron(&a.matrix, &b.matrix), Some(dims))
    }

    /// Singlet |ψ⁻⟩ = (|01⟩ − |10⟩)/√2.
    pub fn singlet() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let psi = [z, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), z];
        Self::pure(&psi, Some(BipartiteDims::two_qubits())).expect("singlet is a valid state")
    }

    /// Werner state `p·|ψ⁻⟩⟨ψ⁻| + (1 − p)·I/4` for `p ∈ [0, 1]`.
    pub fn werner(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Parameter(format!(
                "Werner weight {p} outside [0, 1]"
            )));
        }
        let singlet = Self::singlet();
        let noise = ComplexMatrix::identity(4).scale((1.0 - p) / 4.0);
        let matrix = &singlet.matrix.scale(p) + &noise;
        Self::new(matrix, Some(BipartiteDims::two_qubits()))
    }

    pub fn with_dims(self, dims: BipartiteDims) -> Result<Self> {
        if dims.total() != self.dim() {
            return Err(Error::Dimension(format!(
                "dims {}x{} do not match a {}-dimensional matrix",
                dims.n_a,
                dims.n_b,
                self.dim()
            )));
        }
        Ok(Self {
            dims: Some(dims),
            ..self
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> Option<BipartiteDims> {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub(crate) fn require_dims(&self) -> Result<BipartiteDims> {
        self.dims
            .ok_or_else(|| Error::Structure("density matrix carries no bipartite dims".into()))
    }

    /// Eigenvalues, descending, with round-off negatives clamped to zero.
    /// Computed once and cached.
    pub fn spectrum(&self) -> Result<&Spectrum> {
        if let Some(s) = self.spectrum.get() {
            return Ok(s);
        }
        let s = linalg::hermitian_eigenvalues(&self.matrix)?.clamp_round_off()?;
        Ok(self.spectrum.get_or_init(|| s))
    }

    /// tr ρ², computed entrywise without an eigendecomposition.
    pub fn purity(&self) -> f64 {
        self.matrix.as_inner().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Random mixed state `U·diag(λ)·U†` with `U` Haar and `λ` uniform on the
/// simplex. The sampled spectrum is cached on the result.
pub fn sample_mixed_state<R: Rng + ?Sized>(dims: BipartiteDims, rng: &mut R) -> DensityMatrix {
    let n = dims.total();
    let u = linalg::haar_unitary(n, rng);
    let lambda = linalg::sample_simplex(n, rng);
    DensityMatrix::from_parts(similarity(&u, lambda.values()), Some(dims), Some(lambda))
}

/// Hermitian part of `U·diag(d)·U†`.
pub(crate) fn similarity(u: &ComplexMatrix, diag: &[f64]) -> ComplexMatrix {
    let n = u.dim();
    let inner = u.as_inner();
    ComplexMatrix::from_fn(n, |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &d) in diag.iter().enumerate() {
            acc += inner[(i, k)] * inner[(j, k)].conj() * d;
        }
        acc
    })
    .hermitian_part()
}

/// Random pure state `|ψ⟩⟨ψ|` with `|ψ⟩` Haar-distributed.
pub fn sample_pure_state<R: Rng + ?Sized>(dims: BipartiteDims, rng: &mut R) -> DensityMatrix {
    let n = dims.total();
    let psi = linalg::haar_vector(n, rng);
    let mut spectrum = vec![0.0; n];
    spectrum[0] = 1.0;
    DensityMatrix::from_parts(
        ComplexMatrix::outer(&psi),
        Some(dims),
        Some(Spectrum::from_sorted(spectrum)),
    )
}

/// Reduced state of the `keep` subsystem.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    let dims = rho.require_dims()?;
    Ok(DensityMatrix::from_parts(
        reduce(rho.matrix(), dims, keep),
        None,
        None,
    ))
}

pub(crate) fn reduce(m: &ComplexMatrix, dims: BipartiteDims, keep: Subsystem) -> ComplexMatrix {
    let (n_a, n_b) = (dims.n_a, dims.n_b);
    let inner = m.as_inner();
    match keep {
        Subsystem::A => ComplexMatrix::from_fn(n_a, |a, a2| {
            (0..n_b).map(|b| inner[(a * n_b + b, a2 * n_b + b)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(n_b, |b, b2| {
            (0..n_a).map(|a| inner[(a * n_b + b, a * n_b + b2)]).sum()
        }),
    }
}

/// Partial transpose on subsystem `on`. Returned as a plain matrix: a
/// negative eigenvalue is exactly the entanglement signal.
pub fn partial_transpose(rho: &DensityMatrix, on: Subsystem) -> Result<ComplexMatrix> {
    let dims = rho.require_dims()?;
    Ok(transpose_block(rho.matrix(), dims, on))
}

pub(crate) fn transpose_block(
    m: &ComplexMatrix,
    dims: BipartiteDims,
    on: Subsystem,
) -> ComplexMatrix {
    let n_b = dims.n_b;
    let inner = m.as_inner();
    ComplexMatrix::from_fn(dims.total(), |row, col| {
        let (a, b) = (row / n_b, row % n_b);
        let (a2, b2) = (col / n_b, col % n_b);
        match on {
            Subsystem::B => inner[(a * n_b + b2, a2 * n_b + b)],
            Subsystem::A => inner[(a2 * n_b + b, a * n_b + b2)],
        }
    })
}

/// R = 1/tr ρ², between 1 (pure) and N (maximally mixed).
pub fn participation_ratio(rho: &DensityMatrix) -> f64 {
    1.0 / rho.purity()
}

/// Largest eigenvalue λ_m, between 1/N and 1.
pub fn lambda_max(rho: &DensityMatrix) -> Result<f64> {
    Ok(rho.spectrum()?.max())
}
