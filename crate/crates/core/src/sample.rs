//! Random configurations for property tests and experiment corpora.

use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rand::Rng;

use crate::poly::{FactoredPolynomial, PrescribedRoot};

/// Uniform point in the closed unit disk.
pub fn uniform_in_disk<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootA {
    Fixed(Complex64),
    /// Uniform in the closed unit disk.
    Disk,
    /// Uniform real value in `[lo, hi)`.
    Real(f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub k: RangeInclusive<usize>,
    pub n: RangeInclusive<u32>,
    pub mult: RangeInclusive<u32>,
    /// Minimum pairwise distance among `a` and the `z_j`.
    pub separation: f64,
    pub a: RootA,
}

impl Default for Corpus {
    fn default() -> Self {
        Self {
            k: 1..=6,
            n: 1..=5,
            mult: 1..=4,
            separation: 0.05,
            a: RootA::Disk,
        }
    }
}

impl Corpus {
    /// Draws a configuration, resampling positions until they are separated.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FactoredPolynomial {
        let k = rng.gen_range(self.k.clone());
        let n = rng.gen_range(self.n.clone());
        let mults: Vec<u32> = (0..k).map(|_| rng.gen_range(self.mult.clone())).collect();
        loop {
            let a = match self.a {
                RootA::Fixed(a) => a,
                RootA::Disk => uniform_in_disk(rng),
                RootA::Real(lo, hi) => Complex64::new(rng.gen_range(lo..hi), 0.0),
            };
            let zs: Vec<Complex64> = (0..k).map(|_| uniform_in_disk(rng)).collect();
            if !separated(a, &zs, self.separation) {
                continue;
            }
            let others = zs
                .iter()
                .zip(&mults)
                .map(|(&z, &m)| PrescribedRoot::new(z, m))
                .collect();
            if let Ok(fp) = FactoredPolynomial::new(a, n, others) {
                return fp;
            }
        }
    }
}

fn separated(a: Complex64, zs: &[Complex64], sep: f64) -> bool {
    zs.iter()
        .enumerate()
        .all(|(i, &z)| (z - a).norm() >= sep && zs[..i].iter().all(|&w| (w - z).norm() >= sep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_respect_the_corpus() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let corpus = Corpus {
            a: RootA::Fixed(Complex64::new(1.0, 0.0)),
            ..Corpus::default()
        };
        for _ in 0..200 {
            let fp = corpus.sample(&mut rng);
            assert!(corpus.k.contains(&fp.k()) && corpus.n.contains(&fp.n()));
            assert_eq!(fp.a(), Complex64::new(1.0, 0.0));
            let zs: Vec<_> = fp.others().iter().map(|r| r.z).collect();
            assert!(separated(fp.a(), &zs, 0.05));
            assert!(fp
                .others()
                .iter()
                .all(|r| r.z.norm() <= 1.0 && corpus.mult.contains(&r.mult)));
        }
    }
}
