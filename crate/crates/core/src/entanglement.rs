//! Two-qubit concurrence and entanglement of formation (Wootters).

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::states::{BipartiteDims, DensityMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceResult {
    pub concurrence: f64,
    /// Square roots of the eigenvalues of ρρ̃, descending.
    pub sqrt_eigenvalues: [f64; 4],
    /// Entanglement of formation in bits.
    pub eof: f64,
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    match rho.dims() {
        Some(d) if d == BipartiteDims::two_qubits() => Ok(()),
        Some(d) => Err(Error::Dimension(format!(
            "concurrence needs a 2x2 system, got {}x{}",
            d.n_a(),
            d.n_b()
        ))),
        None if rho.dim() == 4 => Err(Error::Structure("4x4 state without bipartite dims".into())),
        None => Err(Error::Dimension(format!(
            "concurrence needs a 4x4 state, got {}x{}",
            rho.dim(),
            rho.dim()
        ))),
    }
}

fn sigma_yy() -> ComplexMatrix {
    let y = ComplexMatrix::pauli_y();
    linalg::kron(&y, &y)
}

/// ρ̃ = (σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y) in the product basis.
pub fn spin_flip(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    require_two_qubits(rho)?;
    let yy = sigma_yy();
    Ok(&(&yy * &rho.matrix().conjugate()) * &yy)
}

/// Binary entropy in bits, h(0) = h(1) = 0.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// Concurrence from the Hermitian form √ρ ρ̃ √ρ, which shares its spectrum
/// with ρρ̃.
pub fn concurrence(rho: &DensityMatrix) -> Result<ConcurrenceResult> {
    let flipped = spin_flip(rho)?;
    let root = linalg::matrix_sqrt_psd(rho.matrix())?;
    let form = &(&root * &flipped) * &root;
    let spectrum = linalg::hermitian_eigenvalues(&form)?.clamp_round_off()?;
    let mut sqrt_eigenvalues = [0.0; 4];
    for (dst, &v) in sqrt_eigenvalues.iter_mut().zip(spectrum.values()) {
        *dst = v.sqrt();
    }
    let [l1, l2, l3, l4] = sqrt_eigenvalues;
    let concurrence = (l1 - l2 - l3 - l4).clamp(0.0, 1.0);
    let eof = if concurrence > 0.0 {
        binary_entropy((1.0 + (1.0 - concurrence * concurrence).sqrt()) / 2.0)
    } else {
        0.0
    };
    Ok(ConcurrenceResult {
        concurrence,
        sqrt_eigenvalues,
        eof,
    })
}
