//! Simultaneous root finding (Aberth–Ehrlich) and the free critical points
//! of a [`FactoredPolynomial`].

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull;
use crate::poly::{CoefficientPolynomial, FactoredPolynomial};

/// Angular offset of the initial guesses, breaks the symmetry of real
/// polynomials.
const INITIAL_ANGLE_OFFSET: f64 = 0.4;

/// Newton steps spent re-polishing a merged cluster.
const CLUSTER_POLISH_STEPS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Stop once the largest update of any root falls below this.
    pub tol: f64,
    /// A root is accepted when `|p(root)| <= residual_tol * scale`.
    pub residual_tol: f64,
    pub max_iter: usize,
    /// Roots closer than this are merged into one cluster.
    pub cluster_radius: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            residual_tol: 1e-9,
            max_iter: 200,
            cluster_radius: 1e-6,
        }
    }
}

/// A root reported together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    /// All roots, repeated according to multiplicity; length is the degree.
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub clusters: Vec<RootCluster>,
    pub iterations: usize,
    pub converged: bool,
}

impl RootResult {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Finds every root of `poly` at once.
///
/// Initial guesses sit on the circle of radius `1 + max|c_i| / |c_deg|`,
/// equally spaced and rotated by 0.4 rad. Iteration stops when the largest
/// update is below `opts.tol` or after `opts.max_iter` sweeps. Roots closer
/// than `opts.cluster_radius` are merged, and each merged cluster of size `s`
/// is re-polished by Newton's method on the `(s-1)`-th derivative, where it
/// is a simple root. `converged` is decided by the residual test alone; a
/// failed solve still returns the best iterate.
pub fn all_roots(poly: &CoefficientPolynomial, opts: &SolverOptions) -> Result<RootResult> {
    let degree = poly.degree();
    if degree == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let coeffs = poly.coeffs();
    let lead = poly.leading().norm();
    let radius = 1.0 + coeffs[..degree].iter().map(|c| c.norm() / lead).fold(0.0, f64::max);

    let mut z: Vec<Complex64> = (0..degree)
        .map(|j| Complex64::from_polar(radius, TAU * j as f64 / degree as f64 + INITIAL_ANGLE_OFFSET))
        .collect();

    let mut iterations = 0;
    for _ in 0..opts.max_iter {
        iterations += 1;
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let (value, slope) = poly.evaluate_with_derivative(z[i]);
            if value == Complex64::new(0.0, 0.0) {
                continue;
            }
            let repulsion: Complex64 = (0..degree).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = (slope / value - repulsion).inv();
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < opts.tol {
            break;
        }
    }

    let clusters = merge_clusters(poly, &z, opts);
    let mut roots = Vec::with_capacity(degree);
    for cluster in &clusters {
        roots.extend(std::iter::repeat_n(cluster.center, cluster.multiplicity));
    }
    let residuals: Vec<f64> = roots.iter().map(|&r| poly.evaluate(r).norm()).collect();
    let limit = opts.residual_tol * poly.scale();
    let converged = residuals.iter().all(|&r| r <= limit);

    Ok(RootResult {
        roots,
        residuals,
        clusters,
        iterations,
        converged,
    })
}

fn merge_clusters(poly: &CoefficientPolynomial, z: &[Complex64], opts: &SolverOptions) -> Vec<RootCluster> {
    // single-linkage grouping
    let mut group: Vec<usize> = (0..z.len()).collect();
    fn find(group: &mut [usize], mut i: usize) -> usize {
        while group[i] != i {
            group[i] = group[group[i]];
            i = group[i];
        }
        i
    }
    for i in 0..z.len() {
        for j in 0..i {
            if (z[i] - z[j]).norm() < opts.cluster_radius {
                let (gi, gj) = (find(&mut group, i), find(&mut group, j));
                if gi != gj {
                    group[gi.max(gj)] = gi.min(gj);
                }
            }
        }
    }

    let mut clusters = Vec::new();
    for i in 0..z.len() {
        if find(&mut group, i) != i {
            continue;
        }
        let members: Vec<Complex64> = (0..z.len())
            .filter(|&j| find(&mut group, j) == i)
            .map(|j| z[j])
            .collect();
        let multiplicity = members.len();
        let mean = members.iter().sum::<Complex64>() / multiplicity as f64;
        let center = if multiplicity == 1 {
            mean
        } else {
            polish_multiple(poly, mean, multiplicity, opts)
        };
        clusters.push(RootCluster { center, multiplicity });
    }
    clusters
}

fn polish_multiple(
    poly: &CoefficientPolynomial,
    start: Complex64,
    multiplicity: usize,
    opts: &SolverOptions,
) -> Complex64 {
    let mut target = poly.clone();
    for _ in 1..multiplicity {
        match target.derivative() {
            Ok(d) => target = d,
            Err(_) => return start,
        }
    }
    let mut x = start;
    for _ in 0..CLUSTER_POLISH_STEPS {
        let (value, slope) = target.evaluate_with_derivative(x);
        let step = value / slope;
        if !step.is_finite() {
            break;
        }
        x -= step;
        if step.norm() < opts.tol {
            break;
        }
    }
    if (x - start).norm() < opts.cluster_radius && poly.evaluate(x).norm() <= poly.evaluate(start).norm() {
        x
    } else {
        start
    }
}

/// Sorts by real part, then imaginary part.
pub fn sort_lexicographic(points: &mut [Complex64]) {
    points.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// The `k` free critical points `w_j` (roots of the deflated derivative),
/// sorted lexicographically.
pub fn free_critical_points(fp: &FactoredPolynomial, opts: &SolverOptions) -> Result<Vec<Complex64>> {
    let q = fp.deflated_derivative();
    let result = all_roots(&q, opts)?;
    if !result.converged {
        return Err(Error::NonConvergence {
            iterations: result.iterations,
            max_residual: result.max_residual(),
        });
    }
    let mut roots = result.roots;
    sort_lexicographic(&mut roots);
    Ok(roots)
}

/// True iff every point is within `tol` of the convex hull of `a` and the
/// `z_j`. An empty `points` slice is vacuously inside.
pub fn gauss_lucas_check(fp: &FactoredPolynomial, points: &[Complex64], tol: f64) -> bool {
    let hull = prescribed_hull(fp);
    points.iter().all(|&p| hull::distance_to_hull(&hull, p) <= tol)
}

/// Convex hull of the prescribed roots.
pub fn prescribed_hull(fp: &FactoredPolynomial) -> Vec<Complex64> {
    let mut vertices: Vec<Complex64> = fp.others().iter().map(|r| r.z).collect();
    vertices.push(fp.a());
    hull::convex_hull(&vertices)
}

/// Greedy minimal-distance matching of two root lists; returns the largest
/// matched distance, or infinity when lengths differ.
pub fn greedy_match_distance(expected: &[Complex64], found: &[Complex64]) -> f64 {
    if expected.len() != found.len() {
        return f64::INFINITY;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(expected.len() * found.len());
    for (i, e) in expected.iter().enumerate() {
        for (j, f) in found.iter().enumerate() {
            pairs.push(((e - f).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut used_e = vec![false; expected.len()];
    let mut used_f = vec![false; found.len()];
    let mut worst: f64 = 0.0;
    for (d, i, j) in pairs {
        if !used_e[i] && !used_f[j] {
            used_e[i] = true;
            used_f[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}
