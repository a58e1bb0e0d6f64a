//! Analytic oracle suite on Werner and singlet states.
//!
//! Werner state `p·|ψ⁻⟩⟨ψ⁻| + (1−p)·I/4` has closed forms for everything the
//! classifiers look at: spectrum `(1+3p)/4, (1−p)/4 ×3`, partial-transpose
//! minimum `(1−3p)/4`, ω₂ = `(1+3p²)/4`, marginals I/2, and concurrence
//! `max(0, (3p−1)/2)`. The thresholds below are located by bisection through
//! the library classifiers and compared with those closed forms.

use crate::entanglement;
use crate::entropy::{self, EntropicParameter};
use crate::error::Result;
use crate::separability::{self, PPT_TOL};
use crate::states::{self, DensityMatrix, Subsystem};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        (self.observed - self.expected).abs() <= self.tolerance
    }
}

/// Boundary of `holds` on `[lo, hi]`, assuming `holds(lo) != holds(hi)` and a
/// single sign change. Stops once the bracket is narrower than `tol`.
pub fn bisect<F>(mut lo: f64, mut hi: f64, tol: f64, mut holds: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    let at_lo = holds(lo)?;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn werner_threshold<F>(mut holds: F) -> Result<f64>
where
    F: FnMut(&DensityMatrix) -> Result<bool>,
{
    bisect(0.0, 1.0, 1e-13, |p| holds(&DensityMatrix::werner(p)?))
}

pub fn werner_entropic_threshold(p: EntropicParameter) -> Result<f64> {
    werner_threshold(|rho| separability::entropic_positive(rho, p))
}

pub fn werner_ppt_threshold() -> Result<f64> {
    werner_threshold(|rho| separability::is_ppt(rho, PPT_TOL))
}

pub fn run() -> Result<Vec<Check>> {
    let singlet = DensityMatrix::singlet();
    let werner_half = DensityMatrix::werner(0.5)?;
    let third = 1.0 / 3.0;
    Ok(vec![
        Check {
            name: "werner PPT threshold",
            expected: third,
            observed: werner_ppt_threshold()?,
            tolerance: 1e-9,
        },
        Check {
            name: "werner q=inf entropic threshold",
            expected: third,
            observed: werner_entropic_threshold(EntropicParameter::Infinity)?,
            tolerance: 1e-9,
        },
        Check {
            name: "werner q=2 entropic threshold",
            expected: 1.0 / 3f64.sqrt(),
            observed: werner_entropic_threshold(EntropicParameter::Finite(2.0))?,
            tolerance: 1e-9,
        },
        Check {
            name: "werner p=1/2 concurrence",
            expected: 0.25,
            observed: entanglement::concurrence(&werner_half)?.concurrence,
            tolerance: 1e-12,
        },
        Check {
            name: "werner p=1/2 largest eigenvalue",
            expected: 0.625,
            observed: states::lambda_max(&werner_half)?,
            tolerance: 1e-12,
        },
        Check {
            name: "werner p=1/4 q=inf conditional entropy",
            expected: (8.0f64 / 7.0).ln(),
            observed: entropy::conditional_sign_report(
                &DensityMatrix::werner(0.25)?,
                EntropicParameter::Infinity,
            )?
            .delta_ab,
            tolerance: 1e-12,
        },
        Check {
            name: "singlet partial-transpose minimum",
            expected: -0.5,
            observed: separability::min_partial_transpose_eigenvalue(&singlet)?,
            tolerance: 1e-12,
        },
        Check {
            name: "singlet q=2 conditional Tsallis entropy",
            expected: -1.0,
            observed: entropy::conditional_tsallis(&singlet, Subsystem::B, 2.0)?,
            tolerance: 1e-12,
        },
        Check {
            name: "singlet concurrence",
            expected: 1.0,
            observed: entanglement::concurrence(&singlet)?.concurrence,
            tolerance: 1e-7,
        },
    ])
}
