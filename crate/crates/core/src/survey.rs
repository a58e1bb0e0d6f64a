//! Monte Carlo surveys over random bipartite mixed states.
//!
//! Every sampled state is evaluated once: the sampled spectrum gives R and
//! λ_m directly, each marginal is diagonalized once, and the partial
//! transpose once. All q values and both axes reuse those numbers, so the
//! curves for different q within one run come from the same states.

use std::fmt;

use rand::Rng;

use crate::entanglement;
use crate::entropy::{renyi, EntropicParameter, MarginalSpectra, SIGN_DEAD_ZONE};
use crate::error::{Error, Result};
use crate::linalg;
use crate::parallel::{self, Chunk};
use crate::separability::{Classification, PPT_TOL};
use crate::states::{self, BipartiteDims, DensityMatrix, Subsystem};

pub const DEFAULT_BIN_COUNT: usize = 60;
pub const DEFAULT_MAX_TOTAL_DIM: usize = 36;
/// Entropic parameters per run are tracked in a 64-bit mask.
pub const MAX_Q_VALUES: usize = 64;

/// Mixedness measure used as the curve abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// R = 1/tr ρ² on `[1, N]`.
    ParticipationRatio,
    /// λ_m on `[1/N, 1]`.
    LambdaMax,
}

impl Axis {
    pub fn range(&self, dims: BipartiteDims) -> (f64, f64) {
        let n = dims.total() as f64;
        match self {
            Axis::ParticipationRatio => (1.0, n),
            Axis::LambdaMax => (1.0 / n, 1.0),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Axis::ParticipationRatio => "R",
            Axis::LambdaMax => "lmax",
        }
    }

    fn value(&self, record: &StateRecord) -> f64 {
        match self {
            Axis::ParticipationRatio => record.participation_ratio,
            Axis::LambdaMax => record.lambda_max,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyConfig {
    pub dims: BipartiteDims,
    pub samples: u64,
    pub seed: u64,
    pub q_list: Vec<EntropicParameter>,
    pub axis: Axis,
    pub bin_count: usize,
    pub workers: usize,
}

impl SurveyConfig {
    /// Defaults: q ∈ {1, 2, 5, ∞}, R axis, 60 bins, one worker.
    pub fn new(dims: BipartiteDims, samples: u64, seed: u64) -> Self {
        Self {
            dims,
            samples,
            seed,
            q_list: vec![
                EntropicParameter::VonNeumann,
                EntropicParameter::Finite(2.0),
                EntropicParameter::Finite(5.0),
                EntropicParameter::Infinity,
            ],
            axis: Axis::ParticipationRatio,
            bin_count: DEFAULT_BIN_COUNT,
            workers: 1,
        }
    }

    pub fn with_q_list(mut self, q_list: Vec<EntropicParameter>) -> Self {
        self.q_list = q_list;
        self
    }

    pub fn with_axis(mut self, axis: Axis, bin_count: usize) -> Self {
        self.axis = axis;
        self.bin_count = bin_count;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Parameter("sample count must be positive".into()));
        }
        if self.bin_count < 2 {
            return Err(Error::Parameter("at least two bins are required".into()));
        }
        if self.workers == 0 {
            return Err(Error::Parameter("worker count must be positive".into()));
        }
        validate_q_list(&self.q_list)
    }
}

fn validate_q_list(q_list: &[EntropicParameter]) -> Result<()> {
    if q_list.is_empty() {
        return Err(Error::Parameter("q list is empty".into()));
    }
    if q_list.len() > MAX_Q_VALUES {
        return Err(Error::Parameter(format!(
            "at most {MAX_Q_VALUES} q values per run, got {}",
            q_list.len()
        )));
    }
    for p in q_list {
        if let EntropicParameter::Finite(q) = *p {
            EntropicParameter::finite(q)?;
        }
    }
    Ok(())
}

/// Everything the surveys need to know about one sampled state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateRecord {
    pub participation_ratio: f64,
    pub lambda_max: f64,
    pub min_pt_eigenvalue: f64,
    pub ppt: bool,
    /// Bit `i` set iff both conditional entropies at `q_list[i]` are ≥ 0.
    pub positive_mask: u64,
}

impl StateRecord {
    pub fn entropic_positive(&self, q_index: usize) -> bool {
        self.positive_mask & (1 << q_index) != 0
    }

    pub fn classification(&self, q_index: usize) -> Classification {
        Classification::new(self.ppt, self.entropic_positive(q_index))
    }
}

/// R, λ_m, the PPT verdict and the entropic verdict at every q for one state.
pub fn evaluate_state(rho: &DensityMatrix, q_list: &[EntropicParameter]) -> Result<StateRecord> {
    let dims = rho.require_dims()?;
    let spectra = MarginalSpectra::of(rho)?;
    let pt = states::transpose_block(rho.matrix(), dims, Subsystem::B);
    let min_pt_eigenvalue = linalg::hermitian_eigenvalues(&pt)?.min();
    Ok(record_from(&spectra, min_pt_eigenvalue, q_list))
}

fn record_from(
    spectra: &MarginalSpectra,
    min_pt_eigenvalue: f64,
    q_list: &[EntropicParameter],
) -> StateRecord {
    let positive_mask = q_list
        .iter()
        .enumerate()
        .filter(|(_, p)| spectra.sign_report(**p).both_nonnegative)
        .fold(0u64, |mask, (i, _)| mask | (1 << i));
    let purity: f64 = spectra.joint.values().iter().map(|x| x * x).sum();
    StateRecord {
        participation_ratio: 1.0 / purity,
        lambda_max: spectra.joint.max(),
        min_pt_eigenvalue,
        ppt: min_pt_eigenvalue >= -PPT_TOL,
        positive_mask,
    }
}

fn draw_record<R: Rng + ?Sized>(
    dims: BipartiteDims,
    q_list: &[EntropicParameter],
    rng: &mut R,
) -> Result<StateRecord> {
    let rho = states::sample_mixed_state(dims, rng);
    evaluate_state(&rho, q_list)
}

/// Per-state records of a full run, in sample order.
pub fn collect_records(cfg: &SurveyConfig) -> Result<Vec<StateRecord>> {
    cfg.validate()?;
    let parts = parallel::run_chunks(cfg.samples, cfg.seed, cfg.workers, |chunk: Chunk, rng| {
        (0..chunk.len)
            .map(|_| draw_record(cfg.dims, &cfg.q_list, rng))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// Uniform bins on `[lo, hi]`; values outside are clamped into the end bins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Binning {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Binning {
    pub fn new(axis: Axis, dims: BipartiteDims, count: usize) -> Self {
        let (lo, hi) = axis.range(dims);
        Self { lo, hi, count }
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.count as f64
    }

    pub fn index(&self, x: f64) -> usize {
        let k = ((x - self.lo) / self.width()).floor();
        if k <= 0.0 {
            0
        } else {
            (k as usize).min(self.count - 1)
        }
    }

    pub fn center(&self, k: usize) -> f64 {
        self.lo + (k as f64 + 0.5) * self.width()
    }
}

/// Which event a curve counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    /// Both conditional entropies non-negative at this q.
    EntropicPositive(EntropicParameter),
    /// Entropic verdict at this q agrees with the PPT verdict.
    Coincident(EntropicParameter),
    /// Positive partial transpose.
    Ppt,
}

impl CurveKind {
    /// Label for the `q` column: the q value, or `ppt` for the reference.
    pub fn q_label(&self) -> String {
        match self {
            CurveKind::EntropicPositive(p) | CurveKind::Coincident(p) => p.to_string(),
            CurveKind::Ppt => "ppt".into(),
        }
    }

    pub fn parameter(&self) -> Option<EntropicParameter> {
        match self {
            CurveKind::EntropicPositive(p) | CurveKind::Coincident(p) => Some(*p),
            CurveKind::Ppt => None,
        }
    }
}

/// Bernoulli estimate `p = k/n` with standard error `√(p(1−p)/n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub p: f64,
    pub std_err: f64,
}

impl Estimate {
    pub fn from_counts(events: u64, total: u64) -> Option<Self> {
        if total == 0 {
            return None;
        }
        let p = events as f64 / total as f64;
        Some(Self {
            p,
            std_err: (p * (1.0 - p) / total as f64).sqrt(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bin {
    pub center: f64,
    pub n_total: u64,
    pub n_event: u64,
    /// `None` for an empty bin.
    pub estimate: Option<Estimate>,
}

impl Bin {
    pub fn p(&self) -> Option<f64> {
        self.estimate.map(|e| e.p)
    }

    pub fn std_err(&self) -> Option<f64> {
        self.estimate.map(|e| e.std_err)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinCurve {
    pub axis: Axis,
    pub kind: CurveKind,
    pub bins: Vec<Bin>,
}

impl BinCurve {
    pub fn total_samples(&self) -> u64 {
        self.bins.iter().map(|b| b.n_total).sum()
    }

    /// Lowest non-empty bin; ties go to the first.
    pub fn minimum(&self) -> Option<CurveMinimum> {
        self.bins
            .iter()
            .filter_map(|b| b.p().map(|p| (b.center, p)))
            .fold(None, |best: Option<(f64, f64)>, (c, p)| match best {
                Some((_, bp)) if bp <= p => best,
                _ => Some((c, p)),
            })
            .map(|(r_m, p_m)| CurveMinimum { r_m, p_m })
    }
}

/// Location and value of a curve's lowest bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveMinimum {
    pub r_m: f64,
    pub p_m: f64,
}

/// Bin counts for several events over one shared histogram.
#[derive(Debug, Clone)]
struct Histogram {
    totals: Vec<u64>,
    events: Vec<Vec<u64>>,
}

impl Histogram {
    fn new(bins: usize, curves: usize) -> Self {
        Self {
            totals: vec![0; bins],
            events: vec![vec![0; bins]; curves],
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.totals.iter_mut().zip(other.totals) {
            *a += b;
        }
        for (row, other_row) in self.events.iter_mut().zip(other.events) {
            for (a, b) in row.iter_mut().zip(other_row) {
                *a += b;
            }
        }
        self
    }

    fn into_curves(self, axis: Axis, binning: Binning, kinds: &[CurveKind]) -> Vec<BinCurve> {
        kinds
            .iter()
            .zip(self.events)
            .map(|(kind, events)| BinCurve {
                axis,
                kind: *kind,
                bins: (0..binning.count)
                    .map(|k| Bin {
                        center: binning.center(k),
                        n_total: self.totals[k],
                        n_event: events[k],
                        estimate: Estimate::from_counts(events[k], self.totals[k]),
                    })
                    .collect(),
            })
            .collect()
    }
}

fn binned_run(cfg: &SurveyConfig, kinds: &[CurveKind]) -> Result<Vec<BinCurve>> {
    cfg.validate()?;
    let binning = Binning::new(cfg.axis, cfg.dims, cfg.bin_count);
    let q_index = |p: &EntropicParameter| cfg.q_list.iter().position(|x| x == p).unwrap();
    let parts = parallel::run_chunks(cfg.samples, cfg.seed, cfg.workers, |chunk, rng| {
        let mut hist = Histogram::new(binning.count, kinds.len());
        for _ in 0..chunk.len {
            let record = draw_record(cfg.dims, &cfg.q_list, rng)?;
            let bin = binning.index(cfg.axis.value(&record));
            hist.totals[bin] += 1;
            for (row, kind) in hist.events.iter_mut().zip(kinds) {
                let hit = match kind {
                    CurveKind::Ppt => record.ppt,
                    CurveKind::EntropicPositive(p) => record.entropic_positive(q_index(p)),
                    CurveKind::Coincident(p) => record.classification(q_index(p)).coincident,
                };
                if hit {
                    row[bin] += 1;
                }
            }
        }
        Ok(hist)
    })?;
    let hist = parts
        .into_iter()
        .fold(Histogram::new(binning.count, kinds.len()), Histogram::merge);
    Ok(hist.into_curves(cfg.axis, binning, kinds))
}

/// Probability of non-negative conditional q-entropies per mixedness bin, one
/// curve per q, followed by the PPT reference curve.
pub fn run_positive_volume_curve(cfg: &SurveyConfig) -> Result<Vec<BinCurve>> {
    let mut kinds: Vec<CurveKind> = cfg
        .q_list
        .iter()
        .map(|p| CurveKind::EntropicPositive(*p))
        .collect();
    kinds.push(CurveKind::Ppt);
    binned_run(cfg, &kinds)
}

/// Probability that the entropic and PPT verdicts agree, per mixedness bin,
/// with the minimum of each curve.
pub fn run_coincidence_curve(cfg: &SurveyConfig) -> Result<(Vec<BinCurve>, Vec<CurveMinimum>)> {
    let kinds: Vec<CurveKind> = cfg
        .q_list
        .iter()
        .map(|p| CurveKind::Coincident(*p))
        .collect();
    let curves = binned_run(cfg, &kinds)?;
    let minima = curves
        .iter()
        .map(|c| {
            c.minimum()
                .ok_or_else(|| Error::Parameter("every bin of the curve is empty".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((curves, minima))
}

/// q ∈ {1, 2, 2.5, 3, 4, 5, 6.67, 10, 20, ∞}.
pub fn default_q_grid() -> Vec<EntropicParameter> {
    let mut grid = vec![EntropicParameter::VonNeumann];
    grid.extend(
        [2.0, 2.5, 3.0, 4.0, 5.0, 6.67, 10.0, 20.0]
            .into_iter()
            .map(EntropicParameter::Finite),
    );
    grid.push(EntropicParameter::Infinity);
    grid
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalRow {
    pub q: EntropicParameter,
    pub p: f64,
    pub std_err: f64,
    pub n: u64,
}

/// Global coincidence probability for each q, all q sharing one sample set.
/// `cfg.q_list` and the binning are ignored.
pub fn run_global_coincidence_vs_q(
    cfg: &SurveyConfig,
    q_grid: &[EntropicParameter],
) -> Result<Vec<GlobalRow>> {
    let cfg = SurveyConfig {
        q_list: q_grid.to_vec(),
        ..cfg.clone()
    };
    cfg.validate()?;
    let parts = parallel::run_chunks(cfg.samples, cfg.seed, cfg.workers, |chunk, rng| {
        let mut hits = vec![0u64; q_grid.len()];
        for _ in 0..chunk.len {
            let record = draw_record(cfg.dims, q_grid, rng)?;
            for (i, h) in hits.iter_mut().enumerate() {
                if record.classification(i).coincident {
                    *h += 1;
                }
            }
        }
        Ok(hits)
    })?;
    let hits = parts
        .into_iter()
        .fold(vec![0u64; q_grid.len()], |mut acc, h| {
            for (a, b) in acc.iter_mut().zip(h) {
                *a += b;
            }
            acc
        });
    Ok(q_grid
        .iter()
        .zip(hits)
        .map(|(q, h)| {
            let e = Estimate::from_counts(h, cfg.samples).expect("samples > 0");
            GlobalRow {
                q: *q,
                p: e.p,
                std_err: e.std_err,
                n: cfg.samples,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimScanConfig {
    pub pairs: Vec<BipartiteDims>,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    /// Largest admissible N = N₁·N₂.
    pub max_total_dim: usize,
}

impl DimScanConfig {
    pub fn new(pairs: Vec<BipartiteDims>, samples: u64, seed: u64) -> Self {
        Self {
            pairs,
            samples,
            seed,
            workers: 1,
            max_total_dim: DEFAULT_MAX_TOTAL_DIM,
        }
    }

    /// N₁ = N₂ ∈ {2, 3, 4}, N₁ = 2 with N₂ ∈ {3, 4, 5}, N₁ = 3 with N₂ ∈ {4, 5}.
    pub fn default_pairs() -> Vec<BipartiteDims> {
        [
            (2, 2),
            (3, 3),
            (4, 4),
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
        ]
        .into_iter()
        .map(|(a, b)| BipartiteDims::new(a, b).expect("valid dims"))
        .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimScanRow {
    pub dims: BipartiteDims,
    pub entropic_inf: Estimate,
    pub ppt: Estimate,
    pub n: u64,
}

/// q = ∞ entropic-positive and PPT probabilities for each dimension pair.
pub fn run_dimension_scan(cfg: &DimScanConfig) -> Result<Vec<DimScanRow>> {
    if cfg.samples == 0 {
        return Err(Error::Parameter("sample count must be positive".into()));
    }
    if let Some(big) = cfg.pairs.iter().find(|d| d.total() > cfg.max_total_dim) {
        return Err(Error::Resource(format!(
            "{}x{} has N = {}, above the budget of {}",
            big.n_a(),
            big.n_b(),
            big.total(),
            cfg.max_total_dim
        )));
    }
    let q = [EntropicParameter::Infinity];
    cfg.pairs
        .iter()
        .map(|&dims| {
            let parts = parallel::run_chunks(cfg.samples, cfg.seed, cfg.workers, |chunk, rng| {
                let (mut positive, mut ppt) = (0u64, 0u64);
                for _ in 0..chunk.len {
                    let record = draw_record(dims, &q, rng)?;
                    positive += u64::from(record.entropic_positive(0));
                    ppt += u64::from(record.ppt);
                }
                Ok((positive, ppt))
            })?;
            let (positive, ppt) = parts
                .into_iter()
                .fold((0, 0), |(a, b), (c, d)| (a + c, b + d));
            Ok(DimScanRow {
                dims,
                entropic_inf: Estimate::from_counts(positive, cfg.samples).expect("samples > 0"),
                ppt: Estimate::from_counts(ppt, cfg.samples).expect("samples > 0"),
                n: cfg.samples,
            })
        })
        .collect()
}

/// A two-qubit state violating `S(ρ_AB) ≥ S(ρ_A)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterPoint {
    /// S(ρ_A) − S(ρ_AB) in nats; positive by construction.
    pub delta: f64,
    pub c_squared: f64,
}

/// Scatter point for `rho` if it violates the inequality on subsystem A.
pub fn scatter_point(rho: &DensityMatrix, p: EntropicParameter) -> Result<Option<ScatterPoint>> {
    let spectra = MarginalSpectra::of(rho)?;
    scatter_from_spectra(rho, &spectra, p)
}

fn scatter_from_spectra(
    rho: &DensityMatrix,
    spectra: &MarginalSpectra,
    p: EntropicParameter,
) -> Result<Option<ScatterPoint>> {
    let delta = renyi(&spectra.a, p) - renyi(&spectra.joint, p);
    if delta <= SIGN_DEAD_ZONE {
        return Ok(None);
    }
    let c = entanglement::concurrence(rho)?.concurrence;
    Ok(Some(ScatterPoint {
        delta,
        c_squared: c * c,
    }))
}

/// Two-qubit states with a negative conditional entropy S(ρ_AB) − S(ρ_A),
/// paired with their squared concurrence. `cfg.q_list` is ignored.
pub fn run_c2_scatter(cfg: &SurveyConfig, p: EntropicParameter) -> Result<Vec<ScatterPoint>> {
    if cfg.dims != BipartiteDims::two_qubits() {
        return Err(Error::Dimension(format!(
            "the concurrence scatter needs 2x2, got {}x{}",
            cfg.dims.n_a(),
            cfg.dims.n_b()
        )));
    }
    let cfg = SurveyConfig {
        q_list: vec![p],
        ..cfg.clone()
    };
    cfg.validate()?;
    let parts = parallel::run_chunks(cfg.samples, cfg.seed, cfg.workers, |chunk, rng| {
        let mut points = Vec::new();
        for _ in 0..chunk.len {
            let rho = states::sample_mixed_state(cfg.dims, rng);
            let spectra = MarginalSpectra::of(&rho)?;
            if let Some(point) = scatter_from_spectra(&rho, &spectra, p)? {
                points.push(point);
            }
        }
        Ok(points)
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// Pearson correlation coefficient; `None` for fewer than two points or a
/// constant coordinate.
pub fn pearson(points: &[ScatterPoint]) -> Option<f64> {
    let n = points.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.delta).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.c_squared).sum::<f64>() / nf;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for p in points {
        let (dx, dy) = (p.delta - mx, p.c_squared - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(dims: BipartiteDims, samples: u64) -> SurveyConfig {
        SurveyConfig::new(dims, samples, 2024)
    }

    #[test]
    fn binning_edges_and_clamping() {
        let b = Binning::new(Axis::ParticipationRatio, BipartiteDims::two_qubits(), 60);
        assert_eq!(b.index(1.0), 0);
        assert_eq!(b.index(4.0), 59);
        assert_eq!(b.index(0.5), 0);
        assert_eq!(b.index(4.5), 59);
        assert!((b.center(0) - 1.025).abs() < 1e-12);
        let l = Binning::new(Axis::LambdaMax, BipartiteDims::two_qubits(), 3);
        assert_eq!((l.lo, l.hi), (0.25, 1.0));
        assert_eq!(l.index(0.26), 0);
        assert_eq!(l.index(0.99), 2);
    }

    #[test]
    fn estimate_matches_bernoulli_formula() {
        let e = Estimate::from_counts(30, 120).unwrap();
        assert_eq!(e.p, 0.25);
        assert!((e.std_err - (0.25f64 * 0.75 / 120.0).sqrt()).abs() < 1e-16);
        assert!(Estimate::from_counts(0, 0).is_none());
    }

    #[test]
    fn config_validation() {
        let d = BipartiteDims::two_qubits();
        assert!(small(d, 0).validate().is_err());
        assert!(small(d, 10)
            .with_axis(Axis::LambdaMax, 1)
            .validate()
            .is_err());
        assert!(small(d, 10).with_workers(0).validate().is_err());
        assert!(small(d, 10).with_q_list(vec![]).validate().is_err());
        assert!(small(d, 10)
            .with_q_list(vec![EntropicParameter::Finite(1.0)])
            .validate()
            .is_err());
        assert!(small(d, 10).validate().is_ok());
    }

    #[test]
    fn counts_are_conserved_and_empty_bins_marked() {
        let cfg = small(BipartiteDims::two_qubits(), 3000);
        let curves = run_positive_volume_curve(&cfg).unwrap();
        assert_eq!(curves.len(), cfg.q_list.len() + 1);
        assert_eq!(curves.last().unwrap().kind, CurveKind::Ppt);
        for c in &curves {
            assert_eq!(c.total_samples(), 3000);
            for b in &c.bins {
                assert!(b.n_event <= b.n_total);
                assert_eq!(b.estimate.is_none(), b.n_total == 0);
            }
        }
        // Pure states are measure zero: the first R bin is nearly empty.
        assert!(curves[0].bins[0].n_total < 10);
    }

    #[test]
    fn curves_share_samples_across_q() {
        let cfg = small(BipartiteDims::two_qubits(), 2000);
        let curves = run_positive_volume_curve(&cfg).unwrap();
        let totals: Vec<u64> = curves[0].bins.iter().map(|b| b.n_total).collect();
        for c in &curves[1..] {
            let t: Vec<u64> = c.bins.iter().map(|b| b.n_total).collect();
            assert_eq!(t, totals);
        }
    }

    #[test]
    fn minimum_picks_lowest_nonempty_bin() {
        let curve = BinCurve {
            axis: Axis::ParticipationRatio,
            kind: CurveKind::Ppt,
            bins: vec![
                Bin {
                    center: 1.0,
                    n_total: 0,
                    n_event: 0,
                    estimate: None,
                },
                Bin {
                    center: 2.0,
                    n_total: 4,
                    n_event: 3,
                    estimate: Estimate::from_counts(3, 4),
                },
                Bin {
                    center: 3.0,
                    n_total: 4,
                    n_event: 1,
                    estimate: Estimate::from_counts(1, 4),
                },
                Bin {
                    center: 4.0,
                    n_total: 4,
                    n_event: 1,
                    estimate: Estimate::from_counts(1, 4),
                },
            ],
        };
        assert_eq!(
            curve.minimum(),
            Some(CurveMinimum {
                r_m: 3.0,
                p_m: 0.25
            })
        );
    }

    #[test]
    fn maximally_mixed_lands_in_last_r_bin_and_coincides() {
        let dims = BipartiteDims::two_qubits();
        let rho = DensityMatrix::maximally_mixed(dims);
        let q = [EntropicParameter::VonNeumann, EntropicParameter::Infinity];
        let record = evaluate_state(&rho, &q).unwrap();
        let b = Binning::new(Axis::ParticipationRatio, dims, 60);
        assert_eq!(b.index(record.participation_ratio), 59);
        for i in 0..q.len() {
            assert!(record.classification(i).coincident);
        }
    }

    #[test]
    fn injected_singlet_scatter_point() {
        let point = scatter_point(&DensityMatrix::singlet(), EntropicParameter::Infinity)
            .unwrap()
            .unwrap();
        assert!((point.delta - 2f64.ln()).abs() < 1e-12);
        assert!((point.c_squared - 1.0).abs() < 1e-7);
        let mixed = DensityMatrix::maximally_mixed(BipartiteDims::two_qubits());
        assert!(scatter_point(&mixed, EntropicParameter::Infinity)
            .unwrap()
            .is_none());
    }

    #[test]
    fn scatter_requires_two_qubits() {
        let cfg = small(BipartiteDims::qubit_qutrit(), 10);
        assert!(matches!(
            run_c2_scatter(&cfg, EntropicParameter::Infinity),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn dimension_scan_budget_is_enforced() {
        let pairs = vec![BipartiteDims::new(6, 7).unwrap()];
        let cfg = DimScanConfig::new(pairs, 10, 1);
        assert!(matches!(run_dimension_scan(&cfg), Err(Error::Resource(_))));
    }

    #[test]
    fn pearson_basics() {
        let pts: Vec<ScatterPoint> = (0..10)
            .map(|i| ScatterPoint {
                delta: i as f64,
                c_squared: 2.0 * i as f64 + 1.0,
            })
            .collect();
        assert!((pearson(&pts).unwrap() - 1.0).abs() < 1e-12);
        assert!(pearson(&pts[..1]).is_none());
    }

    #[test]
    fn global_run_reports_every_q() {
        let cfg = small(BipartiteDims::two_qubits(), 500);
        let rows = run_global_coincidence_vs_q(&cfg, &default_q_grid()).unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[0].q, EntropicParameter::VonNeumann);
        assert_eq!(rows[9].q, EntropicParameter::Infinity);
        assert!(rows
            .iter()
            .all(|r| r.n == 500 && (0.0..=1.0).contains(&r.p)));
    }
}
