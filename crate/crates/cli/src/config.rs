//! Input schemas. Complex numbers are `[re, im]` pairs throughout.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use sendov_core::asymptotic::{AsymptoticConfig, AsymptoticEntry};
use sendov_core::poly::{FactoredPolynomial, PrescribedRoot};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroSpec {
    pub z: [f64; 2],
    pub mult: u32,
}

/// `{"a": [re, im], "n": int, "zeros": [{"z": [re, im], "mult": int}, ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub a: [f64; 2],
    pub n: u32,
    pub zeros: Vec<ZeroSpec>,
    /// Set to `false` to allow roots outside the closed unit disk.
    #[serde(default = "yes")]
    pub unit_disk: bool,
}

impl ConfigFile {
    pub fn from_polynomial(fp: &FactoredPolynomial) -> Self {
        Self {
            a: [fp.a().re, fp.a().im],
            n: fp.n(),
            zeros: fp
                .others()
                .iter()
                .map(|r| ZeroSpec {
                    z: [r.z.re, r.z.im],
                    mult: r.mult,
                })
                .collect(),
            unit_disk: fp.unit_disk(),
        }
    }

    pub fn to_polynomial(&self) -> sendov_core::error::Result<FactoredPolynomial> {
        let others = self
            .zeros
            .iter()
            .map(|z| PrescribedRoot::new(Complex64::new(z.z[0], z.z[1]), z.mult))
            .collect();
        FactoredPolynomial::with_unit_disk(Complex64::new(self.a[0], self.a[1]), self.n, others, self.unit_disk)
    }
}

/// The asymptotic family: `{"a": [re, im], "zeros": [{"z": [re, im], "r": int, "s": {...}}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsymptoticFile {
    pub a: [f64; 2],
    pub zeros: Vec<AsymptoticEntry>,
}

impl AsymptoticFile {
    pub fn from_config(cfg: &AsymptoticConfig) -> Self {
        Self {
            a: [cfg.a().re, cfg.a().im],
            zeros: cfg.entries().to_vec(),
        }
    }

    pub fn to_config(&self) -> sendov_core::error::Result<AsymptoticConfig> {
        AsymptoticConfig::new(Complex64::new(self.a[0], self.a[1]), self.zeros.clone())
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_schema() {
        let cfg: ConfigFile = serde_json::from_str(r#"{"a":[1,0],"n":2,"zeros":[{"z":[-1,0],"mult":1}]}"#).unwrap();
        assert!(cfg.unit_disk);
        let fp = cfg.to_polynomial().unwrap();
        assert_eq!(fp.degree(), 3);
        assert_eq!(ConfigFile::from_polynomial(&fp), cfg);
        assert!(serde_json::from_str::<ConfigFile>(r#"{"a":[1,0],"n":2,"zeros":[],"x":1}"#).is_err());
    }

    #[test]
    fn asymptotic_schema() {
        let text = r#"{"a":[1,0],"zeros":[{"z":[-0.8,0],"r":1,"s":{"kind":"const","value":1}},
            {"z":[0,0.5],"r":0,"s":{"kind":"table","values":{"3":1}}}]}"#;
        let file: AsymptoticFile = serde_json::from_str(text).unwrap();
        let cfg = file.to_config().unwrap();
        assert_eq!(cfg.k(), 2);
        assert_eq!(cfg.entries()[1].s.at(3), 1);
        assert_eq!(cfg.entries()[1].s.at(4), 0);
    }
}
