//! Checkers for the containment results: the two-root closed form, the
//! disk around `(m-n)/(m+(k-1)n)` for `a = 1`, the `|z - 1/2| <= 1/2` disk,
//! the `a0` threshold and its certificate, and the `1/k` comparison.
//!
//! Inputs are expected in canonical position (`a` real and nonnegative, see
//! [`FactoredPolynomial::canonicalize`]); every distance reported here is
//! rotation invariant.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{FactoredPolynomial, DISTINCTNESS_TOL};
use crate::roots::{free_critical_points, SolverOptions};

/// Slack allowed on non-strict inequalities.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// How far from 1 (or from the real axis) an `a` may sit and still count as
/// being in canonical position.
const CANONICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskCertificate {
    pub center: Complex64,
    pub radius: f64,
    pub witness: Complex64,
    /// `radius - |witness - center|`.
    pub slack: f64,
}

impl DiskCertificate {
    pub fn new(center: Complex64, radius: f64, witness: Complex64) -> Self {
        Self {
            center,
            radius,
            witness,
            slack: radius - (witness - center).norm(),
        }
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        self.slack >= -tol
    }
}

/// A critical point other than `root`, with its distance to `root`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SendovWitness {
    pub root: Complex64,
    pub witness: Complex64,
    pub distance: f64,
}

fn lex_less(a: Complex64, b: Complex64) -> bool {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)).is_lt()
}

/// The critical point `zeta != a` closest to `a`, drawn from the multiple
/// prescribed roots (`n_j >= 2`) and the free critical points. Ties go to the
/// lexicographically smallest point.
pub fn sendov_witness(fp: &FactoredPolynomial, opts: &SolverOptions) -> Result<SendovWitness> {
    let a = fp.a();
    let mut candidates: Vec<Complex64> = fp.others().iter().filter(|r| r.mult >= 2).map(|r| r.z).collect();
    candidates.extend(free_critical_points(fp, opts)?);

    let mut best: Option<SendovWitness> = None;
    for z in candidates {
        let distance = (a - z).norm();
        if distance <= DISTINCTNESS_TOL {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) => distance < b.distance || (distance == b.distance && lex_less(z, b.witness)),
        };
        if better {
            best = Some(SendovWitness {
                root: a,
                witness: z,
                distance,
            });
        }
    }
    best.ok_or_else(|| Error::Degenerate("no critical point distinct from a".into()))
}

fn check_lemma_input(a: Complex64, b: Complex64, kl: u32, rl: u32) -> Result<()> {
    if kl == 0 || rl == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    if (a - b).norm() <= DISTINCTNESS_TOL {
        return Err(Error::Degenerate("a and b coincide".into()));
    }
    Ok(())
}

/// The free critical point `(rL a + kL b) / (kL + rL)` of `(z-a)^kL (z-b)^rL`.
pub fn lemma_critical_point(a: Complex64, b: Complex64, kl: u32, rl: u32) -> Result<Complex64> {
    check_lemma_input(a, b, kl, rl)?;
    let (k, r) = (f64::from(kl), f64::from(rl));
    Ok((a * r + b * k) / (k + r))
}

/// `kL |a - b| / (kL + rL)`, the distance from `a` to the free critical point.
pub fn lemma_distance(a: Complex64, b: Complex64, kl: u32, rl: u32) -> Result<f64> {
    check_lemma_input(a, b, kl, rl)?;
    let (k, r) = (f64::from(kl), f64::from(rl));
    Ok(k * (a - b).norm() / (k + r))
}

/// Whether the free critical point lies within distance 1 of `a`, i.e.
/// `kL |a - b| <= kL + rL`, for `|a|, |b| <= 1` and `|a - b| > 1`.
///
/// `kL <= rL` always gives `true`. The converse fails in general: `kL = 3`,
/// `rL = 2`, `|a - b| = 1.1` yields distance 0.66. The distance exceeds 1
/// exactly when `kL (|a - b| - 1) > rL`.
pub fn lemma_predicate(a: Complex64, b: Complex64, kl: u32, rl: u32) -> Result<bool> {
    check_lemma_input(a, b, kl, rl)?;
    if a.norm() > 1.0 || b.norm() > 1.0 || (a - b).norm() <= 1.0 {
        return Err(Error::HypothesisNotMet(
            "two-root predicate requires |a| <= 1, |b| <= 1 and |a - b| > 1".into(),
        ));
    }
    let (k, r) = (f64::from(kl), f64::from(rl));
    Ok(k * (a - b).norm() <= k + r)
}

fn require_a_one(fp: &FactoredPolynomial) -> Result<()> {
    if (fp.a() - Complex64::new(1.0, 0.0)).norm() > CANONICAL_TOL {
        return Err(Error::HypothesisNotMet(format!(
            "certificate requires a = 1, got a = {}",
            fp.a()
        )));
    }
    if fp.others().iter().any(|r| r.z.norm() > 1.0 + CANONICAL_TOL) {
        return Err(Error::HypothesisNotMet("certificate requires |z_j| <= 1".into()));
    }
    Ok(())
}

/// `(center, radius)` of the disk `|zeta - (m-n)/(m+(k-1)n)| <= kn/(m+(k-1)n)`.
pub fn thm1_disk_geometry(k: usize, n: u32, m: u64) -> (f64, f64) {
    let (k, n, m) = (k as f64, f64::from(n), m as f64);
    let denom = m + (k - 1.0) * n;
    ((m - n) / denom, k * n / denom)
}

/// The half-plane threshold `(m + (k-1)n) / (2kn)` for `Re 1/(1 - w)`.
pub fn thm1_threshold(k: usize, n: u32, m: u64) -> f64 {
    let (k, n, m) = (k as f64, f64::from(n), m as f64);
    (m + (k - 1.0) * n) / (2.0 * k * n)
}

/// Index and value of the free critical point maximizing `Re 1/(1 - w)`.
/// Points are in lexicographic order, and ties keep the first index.
fn max_halfplane(points: &[Complex64]) -> (usize, f64) {
    let one = Complex64::new(1.0, 0.0);
    let mut best = (0, f64::NEG_INFINITY);
    for (j, &w) in points.iter().enumerate() {
        let value = (one - w).inv().re;
        if value > best.1 {
            best = (j, value);
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneWitness {
    /// Position of the witness in the lexicographically sorted free points.
    pub index: usize,
    pub point: Complex64,
    /// `Re 1/(1 - w)`.
    pub value: f64,
    pub threshold: f64,
}

impl HalfPlaneWitness {
    pub fn holds(&self, tol: f64) -> bool {
        self.value >= self.threshold - tol
    }
}

/// The disk certificate for `a = 1`: the witness is the free critical point
/// maximizing `Re 1/(1 - w)`.
pub fn thm1_disk(fp: &FactoredPolynomial, opts: &SolverOptions) -> Result<DiskCertificate> {
    require_a_one(fp)?;
    let points = free_critical_points(fp, opts)?;
    let (center, radius) = thm1_disk_geometry(fp.k(), fp.n(), fp.degree());
    let (j, _) = max_halfplane(&points);
    Ok(DiskCertificate::new(Complex64::new(center, 0.0), radius, points[j]))
}

pub fn thm1_halfplane_witness(fp: &FactoredPolynomial, opts: &SolverOptions) -> Result<HalfPlaneWitness> {
    require_a_one(fp)?;
    let points = free_critical_points(fp, opts)?;
    let (index, value) = max_halfplane(&points);
    Ok(HalfPlaneWitness {
        index,
        point: points[index],
        value,
        threshold: thm1_threshold(fp.k(), fp.n(), fp.degree()),
    })
}

/// Both sides of `sum_j 1/(1 - w_j) = (1/n) sum_j (n_j + n)/(1 - z_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

pub fn thm1_identity(fp: &FactoredPolynomial, opts: &SolverOptions) -> Result<IdentityReport> {
    require_a_one(fp)?;
    let one = Complex64::new(1.0, 0.0);
    let points = free_critical_points(fp, opts)?;
    let lhs: Complex64 = points.iter().map(|&w| (one - w).inv()).sum();
    let n = f64::from(fp.n());
    let rhs: Complex64 = fp
        .others()
        .iter()
        .map(|r| (one - r.z).inv() * (f64::from(r.mult) + n))
        .sum::<Complex64>()
        / n;
    Ok(IdentityReport {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
    })
}

pub fn thm1_identity_residual(fp: &FactoredPolynomial, opts: &SolverOptions) -> Result<f64> {
    thm1_identity(fp, opts).map(|r| r.residual)
}

/// The `|zeta - 1/2| <= 1/2` certificate, for `a = 1`, `n >= 2` and
/// `sum n_j >= k n`.
pub fn corollary1_witness(fp: &FactoredPolynomial, opts: &SolverOptions) -> Result<DiskCertificate> {
    require_a_one(fp)?;
    if fp.n() < 2 {
        return Err(Error::HypothesisNotMet("half-disk certificate requires n >= 2".into()));
    }
    if fp.other_multiplicity() < fp.k() as u64 * u64::from(fp.n()) {
        return Err(Error::HypothesisNotMet(format!(
            "half-disk certificate requires sum n_j >= k n ({} < {})",
            fp.other_multiplicity(),
            fp.k() as u64 * u64::from(fp.n())
        )));
    }
    let points = free_critical_points(fp, opts)?;
    let (j, _) = max_halfplane(&points);
    Ok(DiskCertificate::new(Complex64::new(0.5, 0.0), 0.5, points[j]))
}

/// `phi(a) = (1 - a)^k - (a(m - n) + n) / m`.
pub fn phi(a: f64, k: u32, n: u32, m: u64) -> f64 {
    let (n, m) = (f64::from(n), m as f64);
    (1.0 - a).powi(k as i32) - (a * (m - n) + n) / m
}

/// Default bisection width for [`solve_a0`].
pub const A0_TOL: f64 = 1e-12;

/// The unique zero of `phi` in `(0, 1)`, by bisection to width `tol`.
/// `phi` is strictly decreasing with `phi(0) = 1 - n/m > 0` and `phi(1) = -1`.
pub fn solve_a0(k: u32, n: u32, m: u64, tol: f64) -> Result<f64> {
    if k == 0 || n == 0 || m <= u64::from(n) {
        return Err(Error::InvalidParameters(format!(
            "a0 needs k >= 1 and m > n >= 1 (k = {k}, n = {n}, m = {m})"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameters("tolerance must be positive".into()));
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if phi(mid, k, n, m) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateStatus {
    /// Hypotheses hold and the inequalities were verified.
    Certified,
    /// Run outside the guaranteed range; informative only.
    Advisory,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thm2Report {
    pub status: CertificateStatus,
    pub a: f64,
    pub a0: f64,
    /// `((a(m - n) + n) / m)^{1/k}`.
    pub modulus_bound: f64,
    pub witness: SendovWitness,
    /// `a + modulus_bound`.
    pub triangle_bound: f64,
    /// Witness modulus within the bound and distance to `a` at most 1.
    pub valid: bool,
}

/// Certificate for real `a` in `(0, a0]`: some free critical point has
/// `|w| <= ((a(m-n)+n)/m)^{1/k}` and so `|a - w| <= a + |w| <= 1`.
///
/// With `advisory == false`, `a` outside `(0, a0]` is an error. With
/// `advisory == true` the check runs anyway (including `a = 0`) and the
/// report is labeled [`CertificateStatus::Advisory`] unless the hypotheses
/// actually hold.
pub fn thm2_certificate(fp: &FactoredPolynomial, advisory: bool, opts: &SolverOptions) -> Result<Thm2Report> {
    if !fp.unit_disk() {
        return Err(Error::HypothesisNotMet(
            "modulus-bound certificate requires unit-disk mode".into(),
        ));
    }
    let a = fp.a();
    if a.im.abs() > CANONICAL_TOL || a.re < 0.0 {
        return Err(Error::HypothesisNotMet(format!(
            "modulus-bound certificate requires real a >= 0 (canonicalize first), got a = {a}"
        )));
    }
    let a = a.re;
    let k = fp.k() as u32;
    let (n, m) = (fp.n(), fp.degree());
    let a0 = solve_a0(k, n, m, A0_TOL)?;
    // a0 is only known to within the bisection width
    let in_range = a > 0.0 && a <= a0 + A0_TOL;
    if !in_range && !advisory {
        if a > a0 {
            return Err(Error::OutsideRange { a, a0 });
        }
        return Err(Error::HypothesisNotMet(
            "modulus-bound certificate requires a > 0".into(),
        ));
    }

    let modulus_bound = ((a * (m - u64::from(n)) as f64 + f64::from(n)) / m as f64).powf(1.0 / f64::from(k));
    let points = free_critical_points(fp, opts)?;
    // maximal slack: smallest modulus, ties to the first in lexicographic order
    let mut best = points[0];
    for &w in &points[1..] {
        if w.norm() < best.norm() {
            best = w;
        }
    }
    let distance = (Complex64::new(a, 0.0) - best).norm();
    let valid = best.norm() <= modulus_bound + BOUNDARY_TOL && distance <= 1.0 + BOUNDARY_TOL;
    Ok(Thm2Report {
        status: if in_range {
            CertificateStatus::Certified
        } else {
            CertificateStatus::Advisory
        },
        a,
        a0,
        modulus_bound,
        witness: SendovWitness {
            root: Complex64::new(a, 0.0),
            witness: best,
            distance,
        },
        triangle_bound: a + modulus_bound,
        valid,
    })
}

/// `psi(1/k) = (1 - 1/k)^k - 2/(k + 1)`, the lower bound on `phi(1/k)` when
/// `sum n_j >= k n`.
pub fn remark1_value(k: u32) -> f64 {
    let kf = f64::from(k);
    (1.0 - 1.0 / kf).powi(k as i32) - 2.0 / (kf + 1.0)
}

/// Whether `psi(1/k) > 0`, which gives `a0 > 1/k`.
pub fn remark1_check(k: u32) -> bool {
    k >= 1 && remark1_value(k) > 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PrescribedRoot;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fp(a: Complex64, n: u32, others: &[(Complex64, u32)]) -> FactoredPolynomial {
        FactoredPolynomial::new(a, n, others.iter().map(|&(z, m)| PrescribedRoot::new(z, m)).collect()).unwrap()
    }

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    #[test]
    fn sendov_witness_examples() {
        let w = sendov_witness(&fp(c(1.0, 0.0), 2, &[(c(-1.0, 0.0), 1)]), &opts()).unwrap();
        assert!((w.witness - c(-1.0 / 3.0, 0.0)).norm() < 1e-14);
        assert!((w.distance - 4.0 / 3.0).abs() < 1e-14);

        // z_1 = 0.5 is critical (distance 0.5) but the free point 5/6 is closer
        let w = sendov_witness(&fp(c(1.0, 0.0), 1, &[(c(0.5, 0.0), 2)]), &opts()).unwrap();
        assert!((w.witness - c(5.0 / 6.0, 0.0)).norm() < 1e-14);
        assert!((w.distance - 1.0 / 6.0).abs() < 1e-14);

        let w = sendov_witness(&fp(c(1.0, 0.0), 1, &[(c(-1.0, 0.0), 3)]), &opts()).unwrap();
        assert!((w.witness - c(0.5, 0.0)).norm() < 1e-14);
        assert!((w.distance - 0.5).abs() < 1e-14);
    }

    #[test]
    fn two_root_closed_forms() {
        let (a, b) = (c(1.0, 0.0), c(-1.0, 0.0));
        assert_eq!(lemma_critical_point(a, b, 1, 3).unwrap(), c(0.5, 0.0));
        assert_eq!(lemma_critical_point(a, b, 3, 1).unwrap(), c(-0.5, 0.0));
        let (a2, b2) = (c(0.3, 0.1), c(-0.2, 0.6));
        assert!((lemma_critical_point(a2, b2, 5, 5).unwrap() - (a2 + b2) / 2.0).norm() < 1e-15);

        assert_eq!(lemma_distance(a, b, 3, 1).unwrap(), 1.5);
        assert_eq!(lemma_distance(a, b, 1, 3).unwrap(), 0.5);
        assert_eq!(lemma_distance(a, b, 2, 2).unwrap(), 1.0);

        assert!(lemma_predicate(a, b, 1, 3).unwrap());
        assert!(!lemma_predicate(a, b, 3, 1).unwrap());
        assert!(matches!(
            lemma_predicate(a, c(0.05, 0.0), 1, 1),
            Err(Error::HypothesisNotMet(_))
        ));
        assert!(matches!(lemma_critical_point(a, a, 1, 1), Err(Error::Degenerate(_))));
    }

    #[test]
    fn two_root_predicate_outside_the_separation_regime() {
        // kL > rL yet the critical point is within distance 1
        let (a, b) = (c(0.55, 0.0), c(-0.55, 0.0));
        assert!(lemma_predicate(a, b, 3, 2).unwrap());
        assert!((lemma_distance(a, b, 3, 2).unwrap() - 0.66).abs() < 1e-12);
    }

    #[test]
    fn disk_certificate_boundary_instance() {
        let p = fp(c(1.0, 0.0), 2, &[(c(-1.0, 0.0), 1)]);
        let cert = thm1_disk(&p, &opts()).unwrap();
        assert!((cert.center - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((cert.radius - 2.0 / 3.0).abs() < 1e-15);
        assert!((cert.witness - c(-1.0 / 3.0, 0.0)).norm() < 1e-14);
        assert!(cert.slack.abs() < 1e-9);
        assert!(cert.is_valid(BOUNDARY_TOL));

        let hp = thm1_halfplane_witness(&p, &opts()).unwrap();
        assert!((hp.value - 0.75).abs() < 1e-14);
        assert!((hp.threshold - 0.75).abs() < 1e-15);
        assert!(hp.holds(BOUNDARY_TOL));
    }

    #[test]
    fn disk_certificate_midpoint_instance() {
        let z1 = c(-0.3, 0.8);
        let p = fp(c(1.0, 0.0), 1, &[(z1, 1)]);
        let cert = thm1_disk(&p, &opts()).unwrap();
        assert_eq!(cert.center, c(0.5, 0.0));
        assert_eq!(cert.radius, 0.5);
        assert!((cert.witness - (c(1.0, 0.0) + z1) / 2.0).norm() < 1e-14);
        assert!(cert.is_valid(BOUNDARY_TOL));

        let hp = thm1_halfplane_witness(&fp(c(1.0, 0.0), 1, &[(c(0.0, 0.0), 1)]), &opts()).unwrap();
        assert!((hp.value - 2.0).abs() < 1e-14);
        assert!((hp.threshold - 1.0).abs() < 1e-15);
    }

    #[test]
    fn halfplane_threshold_for_single_root() {
        for (n, m) in [(1, 2), (2, 5), (3, 11)] {
            assert!((thm1_threshold(1, n, m) - m as f64 / (2.0 * f64::from(n))).abs() < 1e-15);
        }
    }

    #[test]
    fn disk_certificate_requires_a_one() {
        let p = fp(c(0.5, 0.0), 2, &[(c(-1.0, 0.0), 1)]);
        assert!(matches!(thm1_disk(&p, &opts()), Err(Error::HypothesisNotMet(_))));
        assert!(matches!(
            thm1_identity_residual(&p, &opts()),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn reciprocal_sum_identity_examples() {
        let r = thm1_identity(&fp(c(1.0, 0.0), 2, &[(c(-1.0, 0.0), 1)]), &opts()).unwrap();
        assert!((r.lhs - c(0.75, 0.0)).norm() < 1e-14);
        assert!((r.rhs - c(0.75, 0.0)).norm() < 1e-15);

        let z1 = c(0.2, -0.6);
        let r = thm1_identity(&fp(c(1.0, 0.0), 1, &[(z1, 1)]), &opts()).unwrap();
        assert!((r.rhs - (c(1.0, 0.0) - z1).inv() * 2.0).norm() < 1e-14);
        assert!(r.residual < 1e-13);
    }

    #[test]
    fn half_disk_examples() {
        let cert = corollary1_witness(&fp(c(1.0, 0.0), 2, &[(c(-1.0, 0.0), 2)]), &opts()).unwrap();
        assert!(cert.witness.norm() < 1e-14);
        assert!(cert.slack.abs() < 1e-14);
        assert!(cert.is_valid(BOUNDARY_TOL));

        assert!(matches!(
            corollary1_witness(&fp(c(1.0, 0.0), 2, &[(c(-1.0, 0.0), 1)]), &opts()),
            Err(Error::HypothesisNotMet(_))
        ));

        let cert = corollary1_witness(&fp(c(1.0, 0.0), 2, &[(c(-1.0, 0.0), 2), (c(0.0, 1.0), 2)]), &opts()).unwrap();
        assert!(cert.is_valid(BOUNDARY_TOL));
        let one = c(1.0, 0.0);
        assert!((one - cert.witness).inv().re >= 1.0 - BOUNDARY_TOL);
    }

    #[test]
    fn phi_examples() {
        assert!((phi(0.0, 3, 2, 7) - (1.0 - 2.0 / 7.0)).abs() < 1e-15);
        assert_eq!(phi(1.0, 3, 2, 7), -1.0);
        assert!(phi(0.25, 1, 2, 3).abs() < 1e-15);
    }

    #[test]
    fn a0_examples() {
        assert!((solve_a0(1, 2, 3, A0_TOL).unwrap() - 0.25).abs() < 1e-12);
        let expected = (5.0 - 17f64.sqrt()) / 4.0;
        assert!((solve_a0(2, 1, 2, A0_TOL).unwrap() - expected).abs() < 1e-12);
        let a0 = solve_a0(4, 3, 20, A0_TOL).unwrap();
        assert!(phi(a0 - 10.0 * A0_TOL, 4, 3, 20) > 0.0);
        assert!(phi(a0 + 10.0 * A0_TOL, 4, 3, 20) < 0.0);
        assert!(matches!(solve_a0(1, 3, 3, A0_TOL), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn modulus_bound_examples() {
        let p = fp(c(0.25, 0.0), 2, &[(c(-1.0, 0.0), 1)]);
        let r = thm2_certificate(&p, false, &opts()).unwrap();
        assert_eq!(r.status, CertificateStatus::Certified);
        assert!((r.modulus_bound - 0.75).abs() < 1e-12);
        assert!((r.witness.witness - c(-7.0 / 12.0, 0.0)).norm() < 1e-14);
        assert!((r.witness.distance - 10.0 / 12.0).abs() < 1e-14);
        assert!(r.valid);

        let p = fp(c(0.0, 0.0), 2, &[(c(-1.0, 0.0), 1), (c(0.0, 0.9), 3)]);
        assert!(thm2_certificate(&p, false, &opts()).is_err());
        let r = thm2_certificate(&p, true, &opts()).unwrap();
        assert_eq!(r.status, CertificateStatus::Advisory);
        assert!((r.modulus_bound - (2.0f64 / 6.0).sqrt()).abs() < 1e-15);
        assert!(r.witness.witness.norm() <= r.modulus_bound + BOUNDARY_TOL);

        let p = fp(c(0.9, 0.0), 2, &[(c(-1.0, 0.0), 1)]);
        assert!(matches!(
            thm2_certificate(&p, false, &opts()),
            Err(Error::OutsideRange { .. })
        ));
        let r = thm2_certificate(&p, true, &opts()).unwrap();
        assert_eq!(r.status, CertificateStatus::Advisory);
    }

    #[test]
    fn k_threshold_sign_examples() {
        assert!((remark1_value(7) - ((6.0f64 / 7.0).powi(7) - 0.25)).abs() < 1e-15);
        assert!(remark1_check(7));
        assert!(!remark1_check(2));
        assert!(!remark1_check(1));
        assert!(remark1_check(10_000));
        assert!((remark1_value(1_000_000) - (-1f64).exp()).abs() < 1e-5);
    }
}
