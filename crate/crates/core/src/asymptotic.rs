//! The asymptotic family `p = P^n q_n` with multiplicities
//! `n_j = r_j n + s_j(n)`.
//!
//! `P(z) = (z - a) prod_{j in X} (z - z_j)^{r_j}` is the base polynomial and
//! `q_n(z) = prod_{j in Y(n)} (z - z_j)^{s_j(n)}`, where `X = {j : r_j >= 1}`
//! and `Y(n) = {j : s_j(n) >= 1}`. The free critical points of `p` are the
//! roots of the degree-`k` polynomial
//!
//! ```text
//! f_n(z) = prod_i (z - zeta_i) prod_{j in Y\X} (z - z_j)
//!        + (z - a) / (n (1 + sum r_j))
//!          * (sum_j s_j(n) prod_{i in Y\{j}} (z - z_i)) * prod_{j in X\Y} (z - z_j)
//! ```
//!
//! where the `zeta_i` are the free critical points of `P`. As `n` grows,
//! `f_n` tends to `f = prod_i (z - zeta_i) prod_{j in Y\X} (z - z_j)`, so a
//! critical point of `P` within distance 1 of `a` is eventually inherited by
//! `p`. [`find_n0`] locates that threshold empirically.
//!
//! The family is admissible under four conditions, referred to by number:
//! (i) `s_j(n) <= n - 1`, (ii) `r_j + s_j(n) >= 1` and `X` nonempty,
//! (iii) `s_j(n) / n -> 0`, (iv) `P` has a critical point `zeta` with
//! `|zeta| <= 1` and `|a - zeta| < 1`.
//!
//! The usual reduction to `|a - z_j| >= 1` for every `j` is not imposed.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::BOUNDARY_TOL;
use crate::error::{Error, Result};
use crate::poly::{product_of_linears, CoefficientPolynomial, FactoredPolynomial, PrescribedRoot};
use crate::roots::{all_roots, sort_lexicographic, SolverOptions};

/// The offset sequence `s_j(n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Offset {
    /// `value` for every `n`.
    Const { value: u32 },
    /// `(c * n) mod d`.
    Mod { c: u64, d: u64 },
    /// `floor(c * ln n)`.
    Log { c: f64 },
    /// Explicit values, `default` elsewhere.
    Table {
        #[serde(deserialize_with = "table_keys")]
        values: BTreeMap<u32, u32>,
        #[serde(default)]
        default: u32,
    },
}

/// JSON object keys arrive as strings inside the tagged enum.
fn table_keys<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<u32, u32>, D::Error> {
    let raw = BTreeMap::<String, u32>::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse()
                .map(|k| (k, v))
                .map_err(|_| serde::de::Error::custom(format!("table key {k:?} is not a degree")))
        })
        .collect()
}

impl Offset {
    pub fn at(&self, n: u32) -> u32 {
        match self {
            Offset::Const { value } => *value,
            Offset::Mod { c, d } => ((c * u64::from(n)) % d) as u32,
            Offset::Log { c } => (c * f64::from(n).ln()).floor().max(0.0) as u32,
            Offset::Table { values, default } => values.get(&n).copied().unwrap_or(*default),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Offset::Mod { d: 0, .. } => Err(Error::InvalidParameters("mod offset needs d >= 1".into())),
            Offset::Log { c } if !c.is_finite() || *c < 0.0 => {
                Err(Error::InvalidParameters("log offset needs a finite c >= 0".into()))
            }
            _ => Ok(()),
        }
    }
}

impl Default for Offset {
    fn default() -> Self {
        Offset::Const { value: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticEntry {
    pub z: Complex64,
    pub r: u32,
    pub s: Offset,
}

/// Range of `n` over which the eventual behaviour of `s_j(n)` is probed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub from: u32,
    pub to: u32,
}

impl Default for Probe {
    fn default() -> Self {
        Self { from: 1000, to: 2000 }
    }
}

/// Largest `s_j(n) / n` accepted over the probe range.
pub const OFFSET_RATIO_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticConfig {
    a: Complex64,
    entries: Vec<AsymptoticEntry>,
}

impl AsymptoticConfig {
    pub fn new(a: Complex64, entries: Vec<AsymptoticEntry>) -> Result<Self> {
        for e in &entries {
            e.s.validate()?;
        }
        if !entries.iter().any(|e| e.r >= 1) {
            return Err(Error::HypothesisNotMet(
                "(ii) needs r_j >= 1 for some j (X is empty)".into(),
            ));
        }
        // geometry is validated through the base polynomial shape
        FactoredPolynomial::new(a, 1, entries.iter().map(|e| PrescribedRoot::new(e.z, 1)).collect())?;
        Ok(Self { a, entries })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn entries(&self) -> &[AsymptoticEntry] {
        &self.entries
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn x_set(&self) -> Vec<usize> {
        (0..self.k()).filter(|&j| self.entries[j].r >= 1).collect()
    }

    pub fn y_set(&self, n: u32) -> Vec<usize> {
        (0..self.k()).filter(|&j| self.entries[j].s.at(n) >= 1).collect()
    }

    fn r_total(&self) -> u64 {
        self.entries.iter().map(|e| u64::from(e.r)).sum()
    }

    /// Hypotheses (i) and (ii) at a single `n`.
    pub fn check_at(&self, n: u32) -> Result<()> {
        if n < 2 {
            return Err(Error::InvalidParameters("the family starts at n = 2".into()));
        }
        for (j, e) in self.entries.iter().enumerate() {
            let s = e.s.at(n);
            if s > n - 1 {
                return Err(Error::HypothesisNotMet(format!(
                    "(i) needs s_{}({n}) <= n - 1, got {s}",
                    j + 1
                )));
            }
            if e.r == 0 && s == 0 {
                return Err(Error::HypothesisNotMet(format!(
                    "(ii) needs r_{0} + s_{0}({n}) >= 1",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    /// Hypothesis (iii), checked as `s_j(n)/n <= 0.1` over the probe range.
    pub fn check_offset_growth(&self, probe: Probe) -> Result<()> {
        for n in probe.from.max(2)..=probe.to {
            for (j, e) in self.entries.iter().enumerate() {
                let ratio = f64::from(e.s.at(n)) / f64::from(n);
                if ratio > OFFSET_RATIO_LIMIT {
                    return Err(Error::HypothesisNotMet(format!(
                        "(iii) s_{}({n})/n = {ratio} exceeds {OFFSET_RATIO_LIMIT}",
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The eventual index set `Y`, rejecting entries whose membership changes
    /// across the probe range.
    pub fn stable_y(&self, probe: Probe) -> Result<Vec<usize>> {
        let mut y = Vec::new();
        for (j, e) in self.entries.iter().enumerate() {
            let mut present = probe.from.max(2)..=probe.to;
            let first = e.s.at(probe.from.max(2)) >= 1;
            if present.any(|n| (e.s.at(n) >= 1) != first) {
                return Err(Error::HypothesisNotMet(format!(
                    "Y(n) membership of entry {} oscillates over n in [{}, {}]",
                    j + 1,
                    probe.from,
                    probe.to
                )));
            }
            if first {
                y.push(j);
            }
        }
        Ok(y)
    }

    /// The full polynomial `P^n q_n` in factored form.
    pub fn assemble(&self, n: u32) -> Result<FactoredPolynomial> {
        self.check_at(n)?;
        let others = self
            .entries
            .iter()
            .map(|e| PrescribedRoot::new(e.z, e.r * n + e.s.at(n)))
            .collect();
        FactoredPolynomial::new(self.a, n, others)
    }
}

/// `P(z) = (z - a) prod_{j in X} (z - z_j)^{r_j}`.
pub fn build_p(cfg: &AsymptoticConfig) -> Result<FactoredPolynomial> {
    let others: Vec<PrescribedRoot> = cfg
        .entries
        .iter()
        .filter(|e| e.r >= 1)
        .map(|e| PrescribedRoot::new(e.z, e.r))
        .collect();
    if others.is_empty() {
        return Err(Error::HypothesisNotMet(
            "(ii) needs r_j >= 1 for some j (X is empty)".into(),
        ));
    }
    FactoredPolynomial::new(cfg.a, 1, others)
}

/// Where a hypothesis-(iv) witness comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessSource {
    /// A free critical point of `P`.
    FreeCriticalPoint,
    /// A prescribed root with `r_j >= 2`, critical for `P` and every `p`.
    MultipleRoot { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum HypothesisIv {
    Satisfied {
        witness: Complex64,
        margin: f64,
        source: WitnessSource,
    },
    /// No critical point of `P` in the closed unit disk is strictly within
    /// distance 1 of `a`; `nearest` is the best candidate seen, if any.
    Failed { nearest: Option<(Complex64, f64)> },
}

/// Looks for a critical point `zeta` of `P` with `|zeta| <= 1` and
/// `|a - zeta| < 1`, preferring the largest margin `1 - |a - zeta|`.
pub fn check_hypothesis_iv(cfg: &AsymptoticConfig, opts: &SolverOptions) -> Result<HypothesisIv> {
    let p = build_p(cfg)?;
    let free = all_roots(&p.deflated_derivative(), opts)?;
    if !free.converged {
        return Err(Error::NonConvergence {
            iterations: free.iterations,
            max_residual: free.max_residual(),
        });
    }
    let mut candidates: Vec<(Complex64, WitnessSource)> = Vec::new();
    let mut points = free.roots;
    sort_lexicographic(&mut points);
    candidates.extend(points.into_iter().map(|z| (z, WitnessSource::FreeCriticalPoint)));
    for (j, e) in cfg.entries.iter().enumerate() {
        if e.r >= 2 {
            candidates.push((e.z, WitnessSource::MultipleRoot { index: j }));
        }
    }

    let a = cfg.a;
    let mut best: Option<(Complex64, f64, WitnessSource)> = None;
    let mut nearest: Option<(Complex64, f64)> = None;
    for (z, source) in candidates {
        let distance = (a - z).norm();
        if z.norm() > 1.0 + BOUNDARY_TOL {
            continue;
        }
        if nearest.is_none_or(|(_, d)| distance < d) {
            nearest = Some((z, distance));
        }
        if distance >= 1.0 - BOUNDARY_TOL {
            continue;
        }
        let margin = 1.0 - distance;
        let better = match best {
            None => true,
            Some((bz, bm, _)) => {
                margin > bm || (margin == bm && z.re.total_cmp(&bz.re).then(z.im.total_cmp(&bz.im)).is_lt())
            }
        };
        if better {
            best = Some((z, margin, source));
        }
    }
    Ok(match best {
        Some((witness, margin, source)) => HypothesisIv::Satisfied {
            witness,
            margin,
            source,
        },
        None => HypothesisIv::Failed { nearest },
    })
}

fn linear_product<'a>(cfg: &'a AsymptoticConfig, indices: impl IntoIterator<Item = usize> + 'a) -> Vec<Complex64> {
    product_of_linears(indices.into_iter().map(|j| cfg.entries[j].z))
}

fn mul_dense(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Monic `prod_i (z - zeta_i)` over the free critical points of `P`.
fn base_factor(cfg: &AsymptoticConfig) -> Result<Vec<Complex64>> {
    Ok(build_p(cfg)?.deflated_derivative().monic().coeffs().to_vec())
}

fn fn_from_base(cfg: &AsymptoticConfig, base: &[Complex64], n: u32) -> Result<CoefficientPolynomial> {
    cfg.check_at(n)?;
    let x = cfg.x_set();
    let y = cfg.y_set(n);
    let in_x = |j: &usize| cfg.entries[*j].r >= 1;
    let in_y = |j: &usize| y.contains(j);

    let leading = mul_dense(base, &linear_product(cfg, y.iter().copied().filter(|j| !in_x(j))));
    let mut total = leading;

    if !y.is_empty() {
        let mut sum = vec![Complex64::new(0.0, 0.0); y.len()];
        for &j in &y {
            let s = f64::from(cfg.entries[j].s.at(n));
            let term = linear_product(cfg, y.iter().copied().filter(|&i| i != j));
            for (slot, c) in sum.iter_mut().zip(&term) {
                *slot += c * s;
            }
        }
        let mut correction = mul_dense(&sum, &linear_product(cfg, x.iter().copied().filter(|j| !in_y(j))));
        crate::poly::mul_linear_in_place(&mut correction, cfg.a);
        let weight = 1.0 / (f64::from(n) * (1 + cfg.r_total()) as f64);
        for (slot, c) in total.iter_mut().zip(&correction) {
            *slot += c * weight;
        }
    }
    Ok(CoefficientPolynomial::new(total)?.monic())
}

/// The monic degree-`k` polynomial `f_n`, whose roots are the free critical
/// points of `P^n q_n`.
pub fn build_fn(cfg: &AsymptoticConfig, n: u32) -> Result<CoefficientPolynomial> {
    fn_from_base(cfg, &base_factor(cfg)?, n)
}

/// The limit `f = prod_i (z - zeta_i) prod_{j in Y\X} (z - z_j)` with the
/// eventual `Y` from [`AsymptoticConfig::stable_y`].
pub fn build_f(cfg: &AsymptoticConfig, probe: Probe) -> Result<CoefficientPolynomial> {
    let y = cfg.stable_y(probe)?;
    let base = base_factor(cfg)?;
    CoefficientPolynomial::new(mul_dense(
        &base,
        &linear_product(cfg, y.into_iter().filter(|&j| cfg.entries[j].r == 0)),
    ))
}

/// Number of unit-circle samples used by [`uniform_gap`].
pub const GAP_SAMPLES: usize = 64;

/// `max |f_n(z) - f(z)|` over equally spaced points of the unit circle; by
/// the maximum principle this is the sup over the closed unit disk, up to
/// sampling.
pub fn uniform_gap(cfg: &AsymptoticConfig, n: u32, probe: Probe) -> Result<f64> {
    let f = build_f(cfg, probe)?;
    let fn_ = build_fn(cfg, n)?;
    Ok((0..GAP_SAMPLES)
        .map(|i| Complex64::from_polar(1.0, TAU * i as f64 / GAP_SAMPLES as f64))
        .map(|z| (fn_.evaluate(z) - f.evaluate(z)).norm())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdOptions {
    /// Radius of the target disk around the witness; `None` picks half the
    /// margin.
    pub rho: Option<f64>,
    pub n_max: u32,
    /// A hit at `n` counts only if `n, ..., n + window` all hit.
    pub window: u32,
    pub probe: Probe,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self {
            rho: None,
            n_max: 10_000,
            window: 10,
            probe: Probe::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub n: u32,
    /// Critical point of `p` nearest the witness; `None` when the family is
    /// undefined at this `n`.
    pub zeta: Option<Complex64>,
    pub dist_to_zstar: f64,
    pub dist_to_a: f64,
    /// `zeta` lies in the open disk of radius `rho` around the witness.
    pub hit: bool,
    /// `|a - zeta| < 1`, with the boundary tolerance subtracted.
    pub conclusion: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub n0: u32,
    pub rho: f64,
    pub zeta_star: Complex64,
    pub margin: f64,
    pub source: WitnessSource,
    /// One entry per probed `n`, from 2 to `n0 + window`.
    pub trace: Vec<TraceEntry>,
}

/// Block of consecutive `n` evaluated in parallel before scanning.
const SCAN_BLOCK: u32 = 64;

fn trace_entry(
    cfg: &AsymptoticConfig,
    base: &[Complex64],
    n: u32,
    zeta_star: Complex64,
    source: WitnessSource,
    rho: f64,
    opts: &SolverOptions,
) -> Result<TraceEntry> {
    let undefined = TraceEntry {
        n,
        zeta: None,
        dist_to_zstar: f64::INFINITY,
        dist_to_a: f64::INFINITY,
        hit: false,
        conclusion: false,
    };
    if cfg.check_at(n).is_err() {
        return Ok(undefined);
    }
    let zeta = match source {
        WitnessSource::MultipleRoot { .. } => zeta_star,
        WitnessSource::FreeCriticalPoint => {
            let fn_ = fn_from_base(cfg, base, n)?;
            let result = all_roots(&fn_, opts)?;
            if !result.converged {
                return Err(Error::NonConvergence {
                    iterations: result.iterations,
                    max_residual: result.max_residual(),
                });
            }
            let mut roots = result.roots;
            sort_lexicographic(&mut roots);
            let mut best = roots[0];
            for &z in &roots[1..] {
                if (z - zeta_star).norm() < (best - zeta_star).norm() {
                    best = z;
                }
            }
            best
        }
    };
    let dist_to_zstar = (zeta - zeta_star).norm();
    let dist_to_a = (cfg.a - zeta).norm();
    Ok(TraceEntry {
        n,
        zeta: Some(zeta),
        dist_to_zstar,
        dist_to_a,
        hit: dist_to_zstar < rho,
        conclusion: dist_to_a < 1.0 - BOUNDARY_TOL,
    })
}

/// Smallest `n` in `[2, n_max]` such that for every `n'` in
/// `[n, n + window]` some free critical point of `P^{n'} q_{n'}` lies in the
/// open disk of radius `rho` around the hypothesis-(iv) witness.
///
/// Refuses to run when hypothesis (iv) fails, when `s_j(n)/n` does not stay
/// small, or when `Y(n)` does not settle over the probe range. Blocks of `n`
/// are evaluated on the current rayon pool; the result does not depend on
/// the number of threads.
pub fn find_n0(cfg: &AsymptoticConfig, topts: &ThresholdOptions, opts: &SolverOptions) -> Result<ThresholdReport> {
    cfg.check_offset_growth(topts.probe)?;
    cfg.stable_y(topts.probe)?;
    let (zeta_star, margin, source) = match check_hypothesis_iv(cfg, opts)? {
        HypothesisIv::Satisfied {
            witness,
            margin,
            source,
        } => (witness, margin, source),
        HypothesisIv::Failed { nearest } => {
            let detail = match nearest {
                Some((z, d)) => format!("nearest critical point of P is {z} at distance {d}"),
                None => "P has no critical point in the closed unit disk".into(),
            };
            return Err(Error::HypothesisNotMet(format!(
                "(iv) fails, n0 search refused: {detail}"
            )));
        }
    };
    let rho = match topts.rho {
        None => margin / 2.0,
        Some(r) if r > 0.0 && r < margin => r,
        Some(r) => {
            return Err(Error::InvalidParameters(format!(
                "rho must lie in (0, {margin}), got {r}"
            )))
        }
    };

    let base = base_factor(cfg)?;
    let last = topts.n_max.saturating_add(topts.window);
    let mut trace: Vec<TraceEntry> = Vec::new();
    let mut run_start: Option<u32> = None;
    let mut start = 2;
    while start <= last {
        let end = start.saturating_add(SCAN_BLOCK - 1).min(last);
        let block: Vec<TraceEntry> = (start..=end)
            .into_par_iter()
            .map(|n| trace_entry(cfg, &base, n, zeta_star, source, rho, opts))
            .collect::<Result<_>>()?;
        for entry in block {
            let n = entry.n;
            if entry.hit {
                run_start.get_or_insert(n);
            } else {
                run_start = None;
            }
            trace.push(entry);
            if let Some(n0) = run_start {
                if n - n0 >= topts.window {
                    return Ok(ThresholdReport {
                        n0,
                        rho,
                        zeta_star,
                        margin,
                        source,
                        trace,
                    });
                }
            }
        }
        start = end + 1;
    }
    let hits = trace.iter().filter(|e| e.hit).count();
    Err(Error::ThresholdNotLocated {
        n_max: topts.n_max,
        diagnostic: format!(
            "{hits} of {} probed n had a critical point within rho = {rho} of {zeta_star}; no run of {} consecutive hits",
            trace.len(),
            topts.window + 1
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{free_critical_points, greedy_match_distance};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single(s: Offset) -> AsymptoticConfig {
        AsymptoticConfig::new(
            c(1.0, 0.0),
            vec![AsymptoticEntry {
                z: c(-0.8, 0.0),
                r: 1,
                s,
            }],
        )
        .unwrap()
    }

    #[test]
    fn offsets_evaluate() {
        assert_eq!(Offset::Const { value: 3 }.at(10), 3);
        assert_eq!(Offset::Mod { c: 3, d: 5 }.at(4), 2);
        assert_eq!(Offset::Log { c: 2.0 }.at(100), 9);
        let table = Offset::Table {
            values: BTreeMap::from([(2, 1), (3, 2)]),
            default: 1,
        };
        assert_eq!(table.at(3), 2);
        assert_eq!(table.at(50), 1);
    }

    #[test]
    fn build_p_examples() {
        let p = build_p(&single(Offset::Const { value: 1 })).unwrap();
        let coeffs = p.expand().unwrap();
        let expected = [c(-0.8, 0.0), c(-0.2, 0.0), c(1.0, 0.0)];
        for (x, y) in coeffs.coeffs().iter().zip(&expected) {
            assert!((x - y).norm() < 1e-15);
        }

        let cfg = AsymptoticConfig::new(
            c(0.5, 0.0),
            vec![
                AsymptoticEntry {
                    z: c(-0.5, 0.0),
                    r: 2,
                    s: Offset::default(),
                },
                AsymptoticEntry {
                    z: c(0.0, 0.7),
                    r: 3,
                    s: Offset::default(),
                },
            ],
        )
        .unwrap();
        assert_eq!(build_p(&cfg).unwrap().degree(), 6);
        // s = 0 everywhere: p = P^n
        let p = build_p(&cfg).unwrap();
        let full = cfg.assemble(4).unwrap();
        for (r, s) in p.others().iter().zip(full.others()) {
            assert_eq!(s.mult, 4 * r.mult);
        }
    }

    #[test]
    fn empty_x_is_rejected() {
        let err = AsymptoticConfig::new(
            c(1.0, 0.0),
            vec![AsymptoticEntry {
                z: c(-0.8, 0.0),
                r: 0,
                s: Offset::Const { value: 1 },
            }],
        );
        assert!(matches!(err, Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn hypothesis_iv_examples() {
        let opts = SolverOptions::default();
        match check_hypothesis_iv(&single(Offset::Const { value: 1 }), &opts).unwrap() {
            HypothesisIv::Satisfied {
                witness,
                margin,
                source,
            } => {
                assert!((witness - c(0.1, 0.0)).norm() < 1e-14);
                assert!((margin - 0.1).abs() < 1e-14);
                assert_eq!(source, WitnessSource::FreeCriticalPoint);
            }
            other => panic!("unexpected {other:?}"),
        }

        let cfg = AsymptoticConfig::new(
            c(1.0, 0.0),
            vec![AsymptoticEntry {
                z: c(-1.0, 0.0),
                r: 1,
                s: Offset::default(),
            }],
        )
        .unwrap();
        match check_hypothesis_iv(&cfg, &opts).unwrap() {
            HypothesisIv::Failed { nearest: Some((z, d)) } => {
                assert!(z.norm() < 1e-14);
                assert!((d - 1.0).abs() < 1e-14);
            }
            other => panic!("unexpected {other:?}"),
        }

        let cfg = AsymptoticConfig::new(
            c(0.0, 0.0),
            vec![
                AsymptoticEntry {
                    z: c(0.9, 0.1),
                    r: 1,
                    s: Offset::default(),
                },
                AsymptoticEntry {
                    z: c(-0.3, -0.9),
                    r: 2,
                    s: Offset::default(),
                },
            ],
        )
        .unwrap();
        assert!(matches!(
            check_hypothesis_iv(&cfg, &opts).unwrap(),
            HypothesisIv::Satisfied { .. }
        ));
    }

    #[test]
    fn fn_closed_form_for_single_entry() {
        let cfg = single(Offset::Const { value: 1 });
        for n in [2u32, 5, 40] {
            let f = build_fn(&cfg, n).unwrap();
            assert_eq!(f.degree(), 1);
            assert!((f.leading() - c(1.0, 0.0)).norm() < 1e-12);
            let nf = f64::from(n);
            let root = -f.coeffs()[0];
            assert!((root - c((0.2 * nf + 1.0) / (2.0 * nf + 1.0), 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn fn_is_constant_without_offsets() {
        let cfg = AsymptoticConfig::new(
            c(0.6, 0.3),
            vec![
                AsymptoticEntry {
                    z: c(-0.5, 0.2),
                    r: 2,
                    s: Offset::default(),
                },
                AsymptoticEntry {
                    z: c(0.1, -0.9),
                    r: 1,
                    s: Offset::default(),
                },
            ],
        )
        .unwrap();
        let f = build_f(&cfg, Probe::default()).unwrap();
        for n in [2, 7, 300] {
            assert_eq!(build_fn(&cfg, n).unwrap(), f);
        }
    }

    #[test]
    fn limit_for_single_entry() {
        let f = build_f(&single(Offset::Const { value: 1 }), Probe::default()).unwrap();
        assert_eq!(f.degree(), 1);
        assert!((f.coeffs()[0] - c(-0.1, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fn_roots_match_direct_computation() {
        let opts = SolverOptions::default();
        let cfg = AsymptoticConfig::new(
            c(0.7, 0.2),
            vec![
                AsymptoticEntry {
                    z: c(-0.6, 0.1),
                    r: 1,
                    s: Offset::Const { value: 1 },
                },
                AsymptoticEntry {
                    z: c(0.1, 0.9),
                    r: 0,
                    s: Offset::Log { c: 1.0 },
                },
                AsymptoticEntry {
                    z: c(0.2, -0.8),
                    r: 2,
                    s: Offset::default(),
                },
            ],
        )
        .unwrap();
        for n in 3..=12 {
            let direct = free_critical_points(&cfg.assemble(n).unwrap(), &opts).unwrap();
            let family = all_roots(&build_fn(&cfg, n).unwrap(), &opts).unwrap().roots;
            assert!(greedy_match_distance(&direct, &family) < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn n0_examples() {
        let opts = SolverOptions::default();
        let cfg = single(Offset::Const { value: 1 });
        let topts = ThresholdOptions {
            rho: Some(0.09),
            ..ThresholdOptions::default()
        };
        let report = find_n0(&cfg, &topts, &opts).unwrap();
        assert_eq!(report.n0, 5);
        assert_eq!(report.trace.len(), (5 + 10 - 1) as usize);

        let report = find_n0(&cfg, &ThresholdOptions::default(), &opts).unwrap();
        assert!((report.rho - 0.05).abs() < 1e-14);
        assert_eq!(report.n0, 9);

        let report = find_n0(&single(Offset::default()), &ThresholdOptions::default(), &opts).unwrap();
        assert_eq!(report.n0, 2);
    }

    #[test]
    fn n0_refuses_when_iv_fails() {
        let cfg = AsymptoticConfig::new(
            c(1.0, 0.0),
            vec![AsymptoticEntry {
                z: c(-1.0, 0.0),
                r: 1,
                s: Offset::Const { value: 1 },
            }],
        )
        .unwrap();
        let err = find_n0(&cfg, &ThresholdOptions::default(), &SolverOptions::default()).unwrap_err();
        assert!(matches!(err, Error::HypothesisNotMet(ref msg) if msg.contains("(iv)")));
    }

    #[test]
    fn oscillating_y_is_rejected() {
        let cfg = single(Offset::Mod { c: 1, d: 2 });
        assert!(matches!(
            cfg.stable_y(Probe::default()),
            Err(Error::HypothesisNotMet(_))
        ));
        assert!(find_n0(&cfg, &ThresholdOptions::default(), &SolverOptions::default()).is_err());
    }

    #[test]
    fn fast_growing_offsets_are_rejected() {
        let cfg = single(Offset::Table {
            values: BTreeMap::new(),
            default: 500,
        });
        assert!(cfg.check_offset_growth(Probe::default()).is_err());
        assert!(cfg.check_at(100).is_err());
    }

    #[test]
    fn invalid_rho_is_rejected() {
        let topts = ThresholdOptions {
            rho: Some(0.2),
            ..ThresholdOptions::default()
        };
        let err = find_n0(&single(Offset::Const { value: 1 }), &topts, &SolverOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidParameters(_)));
    }
}
