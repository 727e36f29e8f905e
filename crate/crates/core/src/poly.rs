//! Factored and dense polynomial representations.
//!
//! A [`FactoredPolynomial`] is `(z - a)^n * prod_j (z - z_j)^{n_j}` with a
//! distinguished root `a`. Its derivative factors as
//! `(z - a)^{n-1} * prod_j (z - z_j)^{n_j - 1} * q(z)` where the degree-`k`
//! factor `q` (see [`FactoredPolynomial::deflated_derivative`]) carries the
//! free critical points.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prescribed roots closer than this are rejected.
pub const DISTINCTNESS_TOL: f64 = 1e-8;

/// Largest total degree [`FactoredPolynomial::expand`] will produce.
pub const DEFAULT_DEGREE_CAP: u64 = 10_000;

/// Rounding slack on `|z| <= 1`, so that rotated configurations stay valid.
const UNIT_DISK_SLACK: f64 = 1e-12;

/// A prescribed root `z` with multiplicity `mult`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrescribedRoot {
    pub z: Complex64,
    pub mult: u32,
}

impl PrescribedRoot {
    pub fn new(z: Complex64, mult: u32) -> Self {
        Self { z, mult }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactoredPolynomial {
    a: Complex64,
    n: u32,
    others: Vec<PrescribedRoot>,
    unit_disk: bool,
}

impl FactoredPolynomial {
    /// Builds a configuration in unit-disk mode.
    pub fn new(a: Complex64, n: u32, others: Vec<PrescribedRoot>) -> Result<Self> {
        Self::with_unit_disk(a, n, others, true)
    }

    /// Builds a configuration; with `unit_disk == false` roots may leave the
    /// closed unit disk.
    pub fn with_unit_disk(a: Complex64, n: u32, others: Vec<PrescribedRoot>, unit_disk: bool) -> Result<Self> {
        if others.is_empty() {
            return Err(Error::NoOtherRoots);
        }
        if n == 0 || others.iter().any(|r| r.mult == 0) {
            return Err(Error::ZeroMultiplicity);
        }
        if !a.is_finite() {
            return Err(Error::NonFinite("a".into()));
        }
        for (j, r) in others.iter().enumerate() {
            if !r.z.is_finite() {
                return Err(Error::NonFinite(format!("z_{}", j + 1)));
            }
        }
        if unit_disk {
            if a.norm() > 1.0 + UNIT_DISK_SLACK {
                return Err(Error::OutsideUnitDisk {
                    which: "a".into(),
                    modulus: a.norm(),
                });
            }
            for (j, r) in others.iter().enumerate() {
                if r.z.norm() > 1.0 + UNIT_DISK_SLACK {
                    return Err(Error::OutsideUnitDisk {
                        which: format!("z_{}", j + 1),
                        modulus: r.z.norm(),
                    });
                }
            }
        }
        for (j, r) in others.iter().enumerate() {
            let d = (r.z - a).norm();
            if d <= DISTINCTNESS_TOL {
                return Err(Error::RootsTooClose {
                    first: "a".into(),
                    second: format!("z_{}", j + 1),
                    distance: d,
                });
            }
            for (i, s) in others.iter().enumerate().take(j) {
                let d = (r.z - s.z).norm();
                if d <= DISTINCTNESS_TOL {
                    return Err(Error::RootsTooClose {
                        first: format!("z_{}", i + 1),
                        second: format!("z_{}", j + 1),
                        distance: d,
                    });
                }
            }
        }
        Ok(Self {
            a,
            n,
            others,
            unit_disk,
        })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    /// Multiplicity of `a`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn others(&self) -> &[PrescribedRoot] {
        &self.others
    }

    /// Number of prescribed roots other than `a`.
    pub fn k(&self) -> usize {
        self.others.len()
    }

    pub fn unit_disk(&self) -> bool {
        self.unit_disk
    }

    /// Sum of the multiplicities `n_j`.
    pub fn other_multiplicity(&self) -> u64 {
        self.others.iter().map(|r| u64::from(r.mult)).sum()
    }

    /// Total degree `m = n + sum n_j`.
    pub fn degree(&self) -> u64 {
        u64::from(self.n) + self.other_multiplicity()
    }

    /// Evaluates the product of powers directly, without expanding.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.others
            .iter()
            .fold((z - self.a).powu(self.n), |acc, r| acc * (z - r.z).powu(r.mult))
    }

    /// The same configuration with every root multiplied by `u`.
    pub fn rotated(&self, u: Complex64) -> Result<Self> {
        let others = self
            .others
            .iter()
            .map(|r| PrescribedRoot::new(u * r.z, r.mult))
            .collect();
        Self::with_unit_disk(u * self.a, self.n, others, self.unit_disk)
    }

    /// Rotates so that `a` becomes real and nonnegative.
    ///
    /// Returns the rotated configuration and the unit factor `u` applied to
    /// every root. When `a == 0` no rotation is applied.
    pub fn canonicalize(&self) -> (Self, Complex64) {
        let modulus = self.a.norm();
        if modulus == 0.0 {
            return (self.clone(), Complex64::new(1.0, 0.0));
        }
        let u = self.a.conj() / modulus;
        let others = self
            .others
            .iter()
            .map(|r| PrescribedRoot::new(u * r.z, r.mult))
            .collect();
        let rotated = Self {
            a: Complex64::new(modulus, 0.0),
            n: self.n,
            others,
            unit_disk: self.unit_disk,
        };
        (rotated, u)
    }

    /// Monic dense expansion, refusing degrees above [`DEFAULT_DEGREE_CAP`].
    pub fn expand(&self) -> Result<CoefficientPolynomial> {
        self.expand_with_cap(DEFAULT_DEGREE_CAP)
    }

    pub fn expand_with_cap(&self, cap: u64) -> Result<CoefficientPolynomial> {
        let degree = self.degree();
        if degree > cap {
            return Err(Error::DegreeTooLarge { degree, cap });
        }
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        coeffs.push(Complex64::new(1.0, 0.0));
        for _ in 0..self.n {
            mul_linear_in_place(&mut coeffs, self.a);
        }
        for r in &self.others {
            for _ in 0..r.mult {
                mul_linear_in_place(&mut coeffs, r.z);
            }
        }
        Ok(CoefficientPolynomial { coeffs })
    }

    /// Expansion of `(z - a)^{n-1} * prod_j (z - z_j)^{n_j - 1}`, the part of
    /// the derivative carried by the prescribed roots.
    pub fn forced_factor(&self) -> Result<CoefficientPolynomial> {
        let degree = self.degree() - 1 - self.k() as u64;
        if degree > DEFAULT_DEGREE_CAP {
            return Err(Error::DegreeTooLarge {
                degree,
                cap: DEFAULT_DEGREE_CAP,
            });
        }
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for _ in 1..self.n {
            mul_linear_in_place(&mut coeffs, self.a);
        }
        for r in &self.others {
            for _ in 1..r.mult {
                mul_linear_in_place(&mut coeffs, r.z);
            }
        }
        Ok(CoefficientPolynomial { coeffs })
    }

    /// The degree-`k` factor
    /// `q(z) = n prod_j (z - z_j) + (z - a) sum_j n_j prod_{i != j} (z - z_i)`,
    /// whose roots are the free critical points. Its leading coefficient is
    /// exactly `m`.
    pub fn deflated_derivative(&self) -> CoefficientPolynomial {
        let k = self.k();
        let roots: Vec<Complex64> = self.others.iter().map(|r| r.z).collect();
        let mut acc: Vec<Complex64> = product_of_linears(roots.iter().copied())
            .into_iter()
            .map(|c| c * f64::from(self.n))
            .collect();
        for (j, r) in self.others.iter().enumerate() {
            let mut term = product_of_linears(roots.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, z)| *z));
            mul_linear_in_place(&mut term, self.a);
            for (slot, c) in acc.iter_mut().zip(&term) {
                *slot += c * f64::from(r.mult);
            }
        }
        acc[k] = Complex64::new(self.degree() as f64, 0.0);
        CoefficientPolynomial { coeffs: acc }
    }
}

/// Dense polynomial with coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientPolynomial {
    coeffs: Vec<Complex64>,
}

impl CoefficientPolynomial {
    /// Trims trailing zero coefficients; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("coefficient {i}")));
        }
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `leading * prod (z - r)`.
    pub fn from_roots(roots: &[Complex64], leading: Complex64) -> Result<Self> {
        let coeffs = product_of_linears(roots.iter().copied())
            .into_iter()
            .map(|c| c * leading)
            .collect();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn evaluate_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut value = Complex64::new(0.0, 0.0);
        let mut slope = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            slope = slope * z + value;
            value = value * z + c;
        }
        (value, slope)
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as f64)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            for (j, &d) in other.coeffs.iter().enumerate() {
                out[i + j] += c * d;
            }
        }
        Self { coeffs: out }
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        let lead = self.leading();
        Self {
            coeffs: self.coeffs.iter().map(|c| c / lead).collect(),
        }
    }
}

/// Multiplies `coeffs` (ascending) by `(z - root)`.
pub(crate) fn mul_linear_in_place(coeffs: &mut Vec<Complex64>, root: Complex64) {
    coeffs.push(Complex64::new(0.0, 0.0));
    for i in (0..coeffs.len()).rev() {
        let lower = if i > 0 { coeffs[i - 1] } else { Complex64::new(0.0, 0.0) };
        coeffs[i] = lower - root * coeffs[i];
    }
}

/// Monic `prod (z - r)` in ascending coefficients.
pub(crate) fn product_of_linears<I>(roots: I) -> Vec<Complex64>
where
    I: IntoIterator<Item = Complex64>,
{
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        mul_linear_in_place(&mut coeffs, r);
    }
    coeffs
}
