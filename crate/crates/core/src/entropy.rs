//! The q-entropy family built on the spectral moment ω_q = Σ p_i^q: Rényi,
//! Tsallis, von Neumann and the q → ∞ limit, plus the conditional
//! ("relative") q-entropies of a bipartite state and their signs.
//!
//! All entropies are in nats.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Spectrum};
use crate::states::{self, DensityMatrix, Subsystem};

/// Differences with `|Δ| ≤ SIGN_DEAD_ZONE` count as non-negative.
pub const SIGN_DEAD_ZONE: f64 = 1e-12;

const UNIT_Q_TOL: f64 = 1e-12;

/// The entropic index q: a finite positive value other than 1, or one of the
/// two limits handled in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropicParameter {
    /// Finite `q > 0`, `q ≠ 1`. Build through [`EntropicParameter::finite`].
    Finite(f64),
    /// The q → 1 limit (von Neumann / Shannon).
    VonNeumann,
    /// The q → ∞ limit, which only depends on the largest eigenvalue.
    Infinity,
}

impl EntropicParameter {
    /// Strictly finite, positive and away from 1.
    pub fn finite(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(Error::Parameter(format!(
                "q must be finite and positive, got {q}"
            )));
        }
        if (q - 1.0).abs() <= UNIT_Q_TOL {
            return Err(Error::Parameter(
                "q = 1 is the von Neumann limit, not a finite parameter".into(),
            ));
        }
        Ok(Self::Finite(q))
    }

    /// Maps `1` to [`VonNeumann`](Self::VonNeumann) and `+∞` to
    /// [`Infinity`](Self::Infinity).
    pub fn from_q(q: f64) -> Result<Self> {
        if q == f64::INFINITY {
            Ok(Self::Infinity)
        } else if q == 1.0 {
            Ok(Self::VonNeumann)
        } else {
            Self::finite(q)
        }
    }

    pub fn q(&self) -> f64 {
        match *self {
            Self::Finite(q) => q,
            Self::VonNeumann => 1.0,
            Self::Infinity => f64::INFINITY,
        }
    }

    /// 1/q, with 1/∞ = 0.
    pub fn inverse_q(&self) -> f64 {
        match *self {
            Self::Finite(q) => 1.0 / q,
            Self::VonNeumann => 1.0,
            Self::Infinity => 0.0,
        }
    }
}

impl fmt::Display for EntropicParameter {
    /// `1`, `inf`, or the shortest decimal that round-trips.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(q) => write!(f, "{q}"),
            Self::VonNeumann => f.write_str("1"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

fn check_q(q: f64) -> Result<()> {
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::Parameter(format!(
            "q must be finite and positive, got {q}"
        )));
    }
    Ok(())
}

fn check_not_unit(q: f64) -> Result<()> {
    check_q(q)?;
    if (q - 1.0).abs() <= UNIT_Q_TOL {
        return Err(Error::Parameter(
            "Tsallis entropy at q = 1 is the von Neumann limit".into(),
        ));
    }
    Ok(())
}

/// ω_q = Σ p_i^q with 0^q ≡ 0.
pub fn omega_q(s: &Spectrum, q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(s.values()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p.powf(q))
        .sum())
}

/// ln ω_q evaluated as `q·ln λ_m + ln Σ (p_i/λ_m)^q`, which stays finite for
/// large q.
fn ln_omega(s: &Spectrum, q: f64) -> f64 {
    let top = s.max();
    let scaled: f64 = s
        .values()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| (p / top).powf(q))
        .sum();
    q * top.ln() + scaled.ln()
}

/// Rényi entropy ln(ω_q)/(1 − q); von Neumann −Σ p ln p at q = 1 and
/// −ln λ_m at q = ∞.
pub fn renyi(s: &Spectrum, p: EntropicParameter) -> f64 {
    match p {
        EntropicParameter::Finite(q) => ln_omega(s, q) / (1.0 - q),
        EntropicParameter::VonNeumann => -s
            .values()
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| x * x.ln())
            .sum::<f64>(),
        EntropicParameter::Infinity => -s.max().ln(),
    }
}

/// Tsallis entropy (1 − ω_q)/(q − 1).
pub fn tsallis(s: &Spectrum, q: f64) -> Result<f64> {
    check_not_unit(q)?;
    Ok((1.0 - omega_q(s, q)?) / (q - 1.0))
}

/// F(x) = (e^{(1−q)x} − 1)/(1 − q): maps a Rényi entropy to the Tsallis
/// entropy of the same spectrum. Strictly increasing in x.
pub fn tsallis_from_renyi(x: f64, q: f64) -> Result<f64> {
    check_not_unit(q)?;
    let k = 1.0 - q;
    Ok((k * x).exp_m1() / k)
}

/// Spectra of ρ_AB and both marginals; one eigendecomposition each, reused
/// for every q.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalSpectra {
    pub joint: Spectrum,
    pub a: Spectrum,
    pub b: Spectrum,
}

impl MarginalSpectra {
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        let dims = rho.require_dims()?;
        let joint = rho.spectrum()?.clone();
        let a = linalg::hermitian_eigenvalues(&states::reduce(rho.matrix(), dims, Subsystem::A))?
            .clamp_round_off()?;
        let b = linalg::hermitian_eigenvalues(&states::reduce(rho.matrix(), dims, Subsystem::B))?
            .clamp_round_off()?;
        Ok(Self { joint, a, b })
    }

    pub fn marginal(&self, which: Subsystem) -> &Spectrum {
        match which {
            Subsystem::A => &self.a,
            Subsystem::B => &self.b,
        }
    }

    pub fn sign_report(&self, p: EntropicParameter) -> ConditionalSignReport {
        let joint = renyi(&self.joint, p);
        ConditionalSignReport::new(joint - renyi(&self.b, p), joint - renyi(&self.a, p))
    }
}

/// Rényi conditional entropies S(A|B) = S(ρ_AB) − S(ρ_B) and
/// S(B|A) = S(ρ_AB) − S(ρ_A). Both are non-negative for separable states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalSignReport {
    pub delta_ab: f64,
    pub delta_ba: f64,
    pub both_nonnegative: bool,
}

impl ConditionalSignReport {
    pub fn new(delta_ab: f64, delta_ba: f64) -> Self {
        Self {
            delta_ab,
            delta_ba,
            both_nonnegative: delta_ab.min(delta_ba) >= -SIGN_DEAD_ZONE,
        }
    }
}

/// Tsallis conditional entropy
/// `[S(ρ_AB) − S(ρ_X)] / [1 + (1 − q)·S(ρ_X)]` where X is `conditioned_on`.
/// The denominator equals ω_q(ρ_X) > 0, so the sign matches the Rényi
/// difference.
pub fn conditional_tsallis(rho: &DensityMatrix, conditioned_on: Subsystem, q: f64) -> Result<f64> {
    check_not_unit(q)?;
    let spectra = MarginalSpectra::of(rho)?;
    let joint = tsallis(&spectra.joint, q)?;
    let marginal = tsallis(spectra.marginal(conditioned_on), q)?;
    Ok((joint - marginal) / (1.0 + (1.0 - q) * marginal))
}

pub fn conditional_sign_report(
    rho: &DensityMatrix,
    p: EntropicParameter,
) -> Result<ConditionalSignReport> {
    Ok(MarginalSpectra::of(rho)?.sign_report(p))
}
