//! Randomized search for configurations with a large Sendov margin.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::sendov_witness;
use crate::error::{Error, Result};
use crate::poly::{FactoredPolynomial, PrescribedRoot};
use crate::roots::SolverOptions;
use crate::sample::uniform_in_disk;

/// Roots closer than this are penalized during search.
pub const SEARCH_SEPARATION: f64 = 1e-3;

/// Weight of the separation penalty.
pub const PENALTY_WEIGHT: f64 = 10.0;

/// Margins above `1 + CONTRADICTION_TOL` under the `|z - 1/2| <= 1/2`
/// hypotheses indicate a bug in the checker pipeline.
pub const CONTRADICTION_TOL: f64 = 1e-6;

const INITIAL_STEP: f64 = 0.1;
const MAX_SAMPLE_TRIES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AMode {
    Fixed(f64),
    /// `a` is searched over `[0, 1]`.
    Free,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub n: u32,
    /// One multiplicity per free root; `k` is the length.
    pub multiplicities: Vec<u32>,
    pub a_mode: AMode,
    pub seed: u64,
}

impl SearchSpace {
    pub fn k(&self) -> usize {
        self.multiplicities.len()
    }

    fn validate(&self) -> Result<()> {
        if self.multiplicities.is_empty() {
            return Err(Error::NoOtherRoots);
        }
        if self.n == 0 || self.multiplicities.contains(&0) {
            return Err(Error::ZeroMultiplicity);
        }
        if let AMode::Fixed(a) = self.a_mode {
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::InvalidParameters(format!("fixed a must lie in [0, 1], got {a}")));
            }
        }
        Ok(())
    }

    /// `a = 1`, `n >= 2` and `sum n_j >= k n`.
    pub fn corollary1_applies(&self) -> bool {
        let total: u64 = self.multiplicities.iter().map(|&m| u64::from(m)).sum();
        self.a_mode == AMode::Fixed(1.0) && self.n >= 2 && total >= self.k() as u64 * u64::from(self.n)
    }

    fn dimension(&self) -> usize {
        2 * self.k() + usize::from(self.a_mode == AMode::Free)
    }

    fn decode(&self, x: &[f64]) -> (Complex64, Vec<Complex64>) {
        let zs = (0..self.k())
            .map(|j| clamp_to_disk(Complex64::new(x[2 * j], x[2 * j + 1])))
            .collect();
        let a = match self.a_mode {
            AMode::Fixed(a) => a,
            AMode::Free => x[2 * self.k()].clamp(0.0, 1.0),
        };
        (Complex64::new(a, 0.0), zs)
    }

    fn configuration(&self, x: &[f64]) -> Result<FactoredPolynomial> {
        let (a, zs) = self.decode(x);
        let others = zs
            .into_iter()
            .zip(&self.multiplicities)
            .map(|(z, &m)| PrescribedRoot::new(z, m))
            .collect();
        FactoredPolynomial::new(a, self.n, others)
    }

    fn separation_violation(&self, x: &[f64]) -> f64 {
        let (a, zs) = self.decode(x);
        let mut points = zs;
        points.push(a);
        let mut violation = 0.0;
        for i in 0..points.len() {
            for j in 0..i {
                violation += (SEARCH_SEPARATION - (points[i] - points[j]).norm()).max(0.0);
            }
        }
        violation
    }
}

/// Radial projection onto the closed unit disk.
fn clamp_to_disk(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r > 1.0 {
        z / r
    } else {
        z
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub restarts: usize,
    /// Nelder–Mead iterations per restart.
    pub iters: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            restarts: 32,
            iters: 400,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub best_config: FactoredPolynomial,
    /// `margin(best_config)`.
    pub best_margin: f64,
    pub best_restart: usize,
    pub evaluations: usize,
    /// `(iteration, penalized margin)` of the best vertex of the winning
    /// restart; iteration 0 is the initial sample.
    pub history: Vec<(usize, f64)>,
    pub corollary1_applies: bool,
    /// Set when the `|z - 1/2| <= 1/2` guarantee is contradicted.
    pub corollary1_contradiction: bool,
}

/// Distance from `a` to the nearest critical point other than `a`.
pub fn margin(fp: &FactoredPolynomial, opts: &SolverOptions) -> Result<f64> {
    sendov_witness(fp, opts).map(|w| w.distance)
}

struct RestartOutcome {
    x: Vec<f64>,
    value: f64,
    evaluations: usize,
    history: Vec<(usize, f64)>,
}

fn objective(space: &SearchSpace, x: &[f64], opts: &SolverOptions) -> f64 {
    let penalty = PENALTY_WEIGHT * space.separation_violation(x);
    match space.configuration(x).and_then(|fp| margin(&fp, opts)) {
        Ok(m) => m - penalty,
        Err(_) => f64::NEG_INFINITY,
    }
}

fn initial_sample(space: &SearchSpace, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut x = vec![0.0; space.dimension()];
    for _ in 0..MAX_SAMPLE_TRIES {
        for j in 0..space.k() {
            let z = uniform_in_disk(rng);
            x[2 * j] = z.re;
            x[2 * j + 1] = z.im;
        }
        if space.a_mode == AMode::Free {
            x[2 * space.k()] = rng.gen::<f64>();
        }
        if space.separation_violation(&x) == 0.0 {
            break;
        }
    }
    x
}

fn run_restart(space: &SearchSpace, restart: usize, iters: usize, opts: &SolverOptions) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(space.seed);
    rng.set_stream(restart as u64);
    let x0 = initial_sample(space, &mut rng);
    let mut evaluations = 0;
    let mut f = |x: &[f64]| {
        evaluations += 1;
        -objective(space, x, opts)
    };
    let (x, value, history) = nelder_mead(&mut f, x0, iters);
    RestartOutcome {
        x,
        value: -value,
        evaluations,
        history: history.into_iter().map(|(i, v)| (i, -v)).collect(),
    }
}

/// Maximizes the margin with Nelder–Mead from `budget.restarts` random
/// starts. Restart `i` draws its start from stream `i` of a ChaCha8 generator
/// seeded with `space.seed`, so the report is a pure function of
/// `(space, budget)`. Restarts run on the current rayon pool; the winner is
/// the largest penalized margin, ties going to the lowest restart index.
pub fn maximize_margin(space: &SearchSpace, budget: &SearchBudget, opts: &SolverOptions) -> Result<SearchReport> {
    space.validate()?;
    if budget.restarts == 0 {
        return Err(Error::InvalidParameters("at least one restart is required".into()));
    }
    let outcomes: Vec<RestartOutcome> = (0..budget.restarts)
        .into_par_iter()
        .map(|r| run_restart(space, r, budget.iters, opts))
        .collect();

    let evaluations = outcomes.iter().map(|o| o.evaluations).sum();
    let mut best = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.value > outcomes[best].value {
            best = i;
        }
    }
    let winner = &outcomes[best];
    let best_config = space
        .configuration(&winner.x)
        .map_err(|e| Error::Degenerate(format!("search produced no admissible configuration: {e}")))?;
    let best_margin = margin(&best_config, opts)?;
    let corollary1_applies = space.corollary1_applies();
    Ok(SearchReport {
        best_config,
        best_margin,
        best_restart: best,
        evaluations,
        history: winner.history.clone(),
        corollary1_applies,
        corollary1_contradiction: corollary1_applies && best_margin > 1.0 + CONTRADICTION_TOL,
    })
}

/// Minimizes `f` from `x0`. Returns the best point, its value and the best
/// value after each iteration (index 0 is `f(x0)`). With `iters == 0` only
/// `x0` is evaluated.
pub fn nelder_mead<F>(f: &mut F, x0: Vec<f64>, iters: usize) -> (Vec<f64>, f64, Vec<(usize, f64)>)
where
    F: FnMut(&[f64]) -> f64,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let f0 = f(&x0);
    let mut history = vec![(0, f0)];
    if iters == 0 || x0.is_empty() {
        return (x0, f0, history);
    }

    let dim = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.clone(), f0));
    for i in 0..dim {
        let mut x = x0.clone();
        x[i] += INITIAL_STEP;
        let v = f(&x);
        simplex.push((x, v));
    }

    let order = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    let affine = |base: &[f64], dir: &[f64], t: f64| -> Vec<f64> {
        base.iter().zip(dir).map(|(b, d)| b + t * (d - b)).collect()
    };

    for iter in 1..=iters {
        order(&mut simplex);
        let worst = simplex[dim].clone();
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }

        let reflected = affine(&centroid, &worst.0, -REFLECT);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = affine(&centroid, &worst.0, -EXPAND);
            let fe = f(&expanded);
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
        } else {
            let (toward, ft) = if fr < worst.1 {
                (reflected.clone(), fr)
            } else {
                (worst.0.clone(), worst.1)
            };
            let contracted = affine(&centroid, &toward, CONTRACT);
            let fc = f(&contracted);
            if fc < ft {
                simplex[dim] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let x = affine(&best, &vertex.0, SHRINK);
                    let v = f(&x);
                    *vertex = (x, v);
                }
            }
        }
        let best = simplex.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
        history.push((iter, best));
    }
    order(&mut simplex);
    let (x, v) = simplex.swap_remove(0);
    (x, v, history)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::lemma_distance;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn margin_examples() {
        let opts = SolverOptions::default();
        let fp = FactoredPolynomial::new(c(1.0, 0.0), 2, vec![PrescribedRoot::new(c(-1.0, 0.0), 1)]).unwrap();
        assert!((margin(&fp, &opts).unwrap() - 4.0 / 3.0).abs() < 1e-14);
        let fp = FactoredPolynomial::new(c(1.0, 0.0), 1, vec![PrescribedRoot::new(c(-1.0, 0.0), 1)]).unwrap();
        assert!((margin(&fp, &opts).unwrap() - 1.0).abs() < 1e-14);
        let fp = FactoredPolynomial::new(
            c(0.4, 0.0),
            3,
            vec![
                PrescribedRoot::new(c(-0.2, 0.3), 2),
                PrescribedRoot::new(c(0.0, -1.0), 1),
            ],
        )
        .unwrap();
        assert!(margin(&fp, &opts).unwrap() <= (c(0.4, 0.0) - c(-0.2, 0.3)).norm());
    }

    #[test]
    fn nelder_mead_minimizes_a_quadratic() {
        let mut f = |x: &[f64]| (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2);
        let (x, v, history) = nelder_mead(&mut f, vec![0.0, 0.0], 200);
        assert!(v < 1e-10);
        assert!((x[0] - 1.0).abs() < 1e-5 && (x[1] + 0.5).abs() < 1e-5);
        assert_eq!(history.len(), 201);
        assert!(history.windows(2).all(|w| w[1].1 <= w[0].1));
    }

    #[test]
    fn zero_budget_returns_initial_sample() {
        let opts = SolverOptions::default();
        let space = SearchSpace {
            n: 2,
            multiplicities: vec![1, 3],
            a_mode: AMode::Fixed(0.8),
            seed: 11,
        };
        let report = maximize_margin(&space, &SearchBudget { restarts: 1, iters: 0 }, &opts).unwrap();
        assert_eq!(report.evaluations, 1);
        assert_eq!(report.history.len(), 1);
        assert!((report.history[0].1 - report.best_margin).abs() < 1e-12);
    }

    #[test]
    fn two_root_extremal_geometry_is_approached() {
        // kL = 3 > rL = 1: the optimum is |a - b| = 2 with margin 1.5
        let opts = SolverOptions::default();
        let space = SearchSpace {
            n: 3,
            multiplicities: vec![1],
            a_mode: AMode::Fixed(1.0),
            seed: 5,
        };
        let report = maximize_margin(
            &space,
            &SearchBudget {
                restarts: 4,
                iters: 200,
            },
            &opts,
        )
        .unwrap();
        let best = lemma_distance(c(1.0, 0.0), c(-1.0, 0.0), 3, 1).unwrap();
        assert!(report.best_margin <= best + 1e-9);
        assert!(report.best_margin > best - 1e-3);
    }

    #[test]
    fn search_is_deterministic_and_sound() {
        let opts = SolverOptions::default();
        let space = SearchSpace {
            n: 2,
            multiplicities: vec![2, 3],
            a_mode: AMode::Free,
            seed: 42,
        };
        let budget = SearchBudget { restarts: 4, iters: 60 };
        let first = maximize_margin(&space, &budget, &opts).unwrap();
        let second = maximize_margin(&space, &budget, &opts).unwrap();
        assert_eq!(first, second);
        let again = margin(&first.best_config, &opts).unwrap();
        assert!((again - first.best_margin).abs() < 1e-9);
    }

    #[test]
    fn half_disk_spaces_never_exceed_one() {
        let opts = SolverOptions::default();
        let space = SearchSpace {
            n: 2,
            multiplicities: vec![2, 3],
            a_mode: AMode::Fixed(1.0),
            seed: 3,
        };
        assert!(space.corollary1_applies());
        let report = maximize_margin(
            &space,
            &SearchBudget {
                restarts: 6,
                iters: 150,
            },
            &opts,
        )
        .unwrap();
        assert!(!report.corollary1_contradiction);
        assert!(report.best_margin <= 1.0 + CONTRADICTION_TOL);
    }

    #[test]
    fn invalid_spaces_are_rejected() {
        let opts = SolverOptions::default();
        let budget = SearchBudget::default();
        let space = SearchSpace {
            n: 1,
            multiplicities: vec![],
            a_mode: AMode::Free,
            seed: 0,
        };
        assert_eq!(maximize_margin(&space, &budget, &opts), Err(Error::NoOtherRoots));
        let space = SearchSpace {
            n: 1,
            multiplicities: vec![1],
            a_mode: AMode::Fixed(1.5),
            seed: 0,
        };
        assert!(matches!(
            maximize_margin(&space, &budget, &opts),
            Err(Error::InvalidParameters(_))
        ));
    }
}
