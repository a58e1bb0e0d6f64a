use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qentropy::survey::{Axis, DEFAULT_BIN_COUNT, DEFAULT_MAX_TOTAL_DIM};
use qentropy::{BipartiteDims, EntropicParameter};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "qentropy",
    version,
    about = "Conditional q-entropies versus the PPT criterion on random bipartite states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Probability of non-negative conditional q-entropies per mixedness bin, plus the PPT curve.
    VolumeCurve(CurveArgs),
    /// Probability that the entropic and PPT verdicts agree, per mixedness bin.
    CoincidenceCurve(CurveArgs),
    /// Global coincidence probability for each q on one shared sample set.
    GlobalVsQ(GlobalArgs),
    /// q = inf entropic and PPT probabilities over a list of subsystem dimensions.
    DimScan(DimScanArgs),
    /// Squared concurrence of two-qubit states violating S(AB) >= S(A).
    C2Scatter(ScatterArgs),
    /// Analytic Werner/singlet oracle checks.
    Selftest,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Subsystem dimensions N1 N2.
    #[arg(long, num_args = 2, value_names = ["A", "B"], default_values_t = [2usize, 2])]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Output CSV; the manifest goes next to it as <stem>.manifest.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    pub fn dims(&self) -> Result<BipartiteDims, CliError> {
        BipartiteDims::new(self.dims[0], self.dims[1]).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    #[value(name = "R")]
    R,
    #[value(name = "lmax")]
    Lmax,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::R => Axis::ParticipationRatio,
            AxisArg::Lmax => Axis::LambdaMax,
        }
    }
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Comma-separated q values: positive decimals, 1, inf.
    #[arg(long, default_value = "1,2,5,inf")]
    pub q: String,
    #[arg(long, value_enum, default_value_t = AxisArg::R)]
    pub axis: AxisArg,
    #[arg(long, default_value_t = DEFAULT_BIN_COUNT)]
    pub bins: usize,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Comma-separated q values; defaults to 1,2,2.5,3,4,5,6.67,10,20,inf.
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Debug, Args)]
pub struct DimScanArgs {
    /// Comma-separated N1xN2 pairs.
    #[arg(long, default_value = "2x2,3x3,4x4,2x3,2x4,2x5,3x4,3x5")]
    pub pairs: String,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Largest admissible total dimension N1*N2.
    #[arg(long, default_value_t = DEFAULT_MAX_TOTAL_DIM)]
    pub max_dim: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// A single q value.
    #[arg(long, default_value = "inf")]
    pub q: String,
}

/// `inf` (any case) is the q → ∞ limit, `1` the von Neumann limit, anything
/// else a finite positive decimal.
pub fn parse_q_token(token: &str) -> Result<EntropicParameter, CliError> {
    let t = token.trim();
    if t.eq_ignore_ascii_case("inf") {
        return Ok(EntropicParameter::Infinity);
    }
    let q: f64 = t
        .parse()
        .map_err(|_| CliError::Usage(format!("malformed q token '{t}'")))?;
    if !q.is_finite() {
        return Err(CliError::Usage(format!("malformed q token '{t}'")));
    }
    EntropicParameter::from_q(q).map_err(|e| CliError::Usage(format!("q token '{t}': {e}")))
}

pub fn parse_q_list(list: &str) -> Result<Vec<EntropicParameter>, CliError> {
    let parsed = list
        .split(',')
        .map(parse_q_token)
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Err(CliError::Usage("empty q list".into()));
    }
    Ok(parsed)
}

pub fn parse_pairs(list: &str) -> Result<Vec<BipartiteDims>, CliError> {
    list.split(',')
        .map(|item| {
            let item = item.trim();
            let (a, b) = item
                .split_once(['x', 'X'])
                .ok_or_else(|| CliError::Usage(format!("malformed dimension pair '{item}'")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("malformed dimension pair '{item}'")))
            };
            BipartiteDims::new(parse(a)?, parse(b)?).map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_tokens() {
        assert_eq!(parse_q_token("inf").unwrap(), EntropicParameter::Infinity);
        assert_eq!(parse_q_token("INF").unwrap(), EntropicParameter::Infinity);
        assert_eq!(parse_q_token("1").unwrap(), EntropicParameter::VonNeumann);
        assert_eq!(
            parse_q_token("2.5").unwrap(),
            EntropicParameter::Finite(2.5)
        );
        for bad in ["", "abc", "0", "-2", "nan", "infinity"] {
            assert!(parse_q_token(bad).is_err(), "{bad}");
        }
        assert_eq!(parse_q_list("1,2,inf").unwrap().len(), 3);
        assert!(parse_q_list("1,,2").is_err());
    }

    #[test]
    fn pairs() {
        let p = parse_pairs("2x2, 3X4").unwrap();
        assert_eq!(p[1], BipartiteDims::new(3, 4).unwrap());
        assert!(parse_pairs("2x1").is_err());
        assert!(parse_pairs("22").is_err());
    }
}
