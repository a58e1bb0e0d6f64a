//! Separability classifiers: the partial-transpose (Peres) test, the
//! classical q-entropic inequalities, and whether the two agree.
//!
//! PPT is necessary and sufficient for separability only in 2×2 and 2×3.
//! In larger systems the PPT flag is reported as-is and never read as
//! "separable".

use crate::entropy::{EntropicParameter, MarginalSpectra};
use crate::error::Result;
use crate::linalg;
use crate::states::{self, DensityMatrix, Subsystem};

/// Default tolerance on the smallest eigenvalue of ρ^{T_B}; matches the PSD
/// clamp used everywhere else.
pub const PPT_TOL: f64 = 1e-10;

/// Smallest eigenvalue of the partial transpose on B.
pub fn min_partial_transpose_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    let pt = states::partial_transpose(rho, Subsystem::B)?;
    Ok(linalg::hermitian_eigenvalues(&pt)?.min())
}

pub fn is_ppt(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    Ok(min_partial_transpose_eigenvalue(rho)? >= -tol)
}

/// True iff both conditional q-entropies are non-negative (dead zone
/// [`crate::entropy::SIGN_DEAD_ZONE`]).
pub fn entropic_positive(rho: &DensityMatrix, p: EntropicParameter) -> Result<bool> {
    Ok(MarginalSpectra::of(rho)?.sign_report(p).both_nonnegative)
}

/// Outcome of the two tests on one state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub ppt: bool,
    pub entropic_positive: bool,
    pub coincident: bool,
}

impl Classification {
    pub fn new(ppt: bool, entropic_positive: bool) -> Self {
        Self {
            ppt,
            entropic_positive,
            coincident: ppt == entropic_positive,
        }
    }
}

pub fn classify(rho: &DensityMatrix, p: EntropicParameter) -> Result<Classification> {
    Ok(Classification::new(
        is_ppt(rho, PPT_TOL)?,
        entropic_positive(rho, p)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::states::BipartiteDims;

    const ALL_Q: [EntropicParameter; 5] = [
        EntropicParameter::Finite(0.5),
        EntropicParameter::VonNeumann,
        EntropicParameter::Finite(2.0),
        EntropicParameter::Finite(5.0),
        EntropicParameter::Infinity,
    ];

    fn product() -> DensityMatrix {
        let a = DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.8, 0.2]), None).unwrap();
        let b = DensityMatrix::new(
            ComplexMatrix::from_real_rows(&[&[0.6, 0.2], &[0.2, 0.4]]).unwrap(),
            None,
        )
        .unwrap();
        DensityMatrix::product(&a, &b).unwrap()
    }

    #[test]
    fn product_state_is_ppt_and_coincident() {
        let rho = product();
        assert!(is_ppt(&rho, PPT_TOL).unwrap());
        for p in ALL_Q {
            assert_eq!(
                classify(&rho, p).unwrap(),
                Classification {
                    ppt: true,
                    entropic_positive: true,
                    coincident: true
                }
            );
        }
    }

    #[test]
    fn singlet_is_caught_by_both() {
        let rho = DensityMatrix::singlet();
        assert!((min_partial_transpose_eigenvalue(&rho).unwrap() + 0.5).abs() < 1e-14);
        assert_eq!(
            classify(&rho, EntropicParameter::Infinity).unwrap(),
            Classification::new(false, false)
        );
        assert!(
            classify(&rho, EntropicParameter::Infinity)
                .unwrap()
                .coincident
        );
    }

    #[test]
    fn werner_ppt_threshold() {
        for (p, expected) in [(0.0, true), (0.33, true), (0.334, false), (0.9, false)] {
            let rho = DensityMatrix::werner(p).unwrap();
            assert_eq!(is_ppt(&rho, PPT_TOL).unwrap(), expected, "p={p}");
        }
    }

    #[test]
    fn maximally_mixed_is_entropic_positive() {
        for dims in [
            BipartiteDims::two_qubits(),
            BipartiteDims::new(3, 4).unwrap(),
        ] {
            let rho = DensityMatrix::maximally_mixed(dims);
            for p in ALL_Q {
                assert!(entropic_positive(&rho, p).unwrap());
            }
        }
    }

    #[test]
    fn werner_q2_verdicts_around_inverse_sqrt3() {
        // ω₂(AB) = (1 + 3p²)/4 against ω₂(B) = 1/2.
        let half = DensityMatrix::werner(0.5).unwrap();
        assert!(entropic_positive(&half, EntropicParameter::Finite(2.0)).unwrap());
        assert!(!entropic_positive(&half, EntropicParameter::Infinity).unwrap());
        let past = DensityMatrix::werner(0.6).unwrap();
        assert!(!entropic_positive(&past, EntropicParameter::Finite(2.0)).unwrap());
    }

    #[test]
    fn werner_between_thresholds_is_not_coincident_at_q2() {
        let rho = DensityMatrix::werner(0.45).unwrap();
        assert_eq!(
            classify(&rho, EntropicParameter::Finite(2.0)).unwrap(),
            Classification {
                ppt: false,
                entropic_positive: true,
                coincident: false
            }
        );
    }

    #[test]
    fn werner_non_coincidence_window_at_q2() {
        let upper = 1.0 / 3f64.sqrt();
        for k in 0..=200 {
            let p = k as f64 / 200.0;
            let c = classify(
                &DensityMatrix::werner(p).unwrap(),
                EntropicParameter::Finite(2.0),
            )
            .unwrap();
            let inside = p > 1.0 / 3.0 && p <= upper;
            assert_eq!(!c.coincident, inside, "p={p}");
            let c_inf = classify(
                &DensityMatrix::werner(p).unwrap(),
                EntropicParameter::Infinity,
            )
            .unwrap();
            assert!(c_inf.coincident, "p={p}");
        }
    }

    #[test]
    fn missing_dims_errors() {
        let rho = DensityMatrix::new(ComplexMatrix::identity(4).scale(0.25), None).unwrap();
        assert!(is_ppt(&rho, PPT_TOL).is_err());
        assert!(entropic_positive(&rho, EntropicParameter::Infinity).is_err());
        assert!(classify(&rho, EntropicParameter::VonNeumann).is_err());
    }
}
