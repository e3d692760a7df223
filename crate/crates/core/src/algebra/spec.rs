//! JSON description of an algebra, optionally with an involution.
//!
//! Explicit form: `{"p":3,"k":1,"n":3,"basis":[[..row-major entry codes..]],"involution":{"kind":"first","u":[..]}}`.
//! Preset form: `{"preset":"sp","m":2,"p":3,"k":1}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::involution::{Involution, InvolutionKind};
use super::matrix::Mat;
use super::nilpotent::{AlgebraSource, NilpotentAlgebra};
use crate::arith::GaloisField;
use crate::classical::{canonical_preset, ClassicalKind, ClassicalPreset};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionSpec {
    pub kind: InvolutionKind,
    pub u: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub n: usize,
    pub basis: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<InvolutionSpec>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetSpec {
    pub preset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Preset(PresetSpec),
    Explicit(ExplicitSpec),
}

/// A validated algebra with its optional involution.
#[derive(Clone, Debug)]
pub struct Instance {
    pub field: Arc<GaloisField>,
    pub algebra: Arc<NilpotentAlgebra>,
    pub sigma: Option<Arc<Involution>>,
    pub preset: Option<ClassicalPreset>,
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn instantiate(&self) -> Result<Instance> {
        match self {
            AlgebraSpec::Preset(ps) => {
                let kind = ClassicalKind::parse(&ps.preset)?;
                let k = ps.k.unwrap_or(kind.default_k());
                let field = Arc::new(GaloisField::new(ps.p, k)?);
                let size = kind.size_param(ps.m, ps.n)?;
                let (preset, sigma, algebra) = canonical_preset(kind, size, field.clone())?;
                Ok(Instance {
                    field,
                    algebra,
                    sigma,
                    preset: Some(preset),
                })
            }
            AlgebraSpec::Explicit(es) => {
                let field = Arc::new(match &es.modulus {
                    Some(m) => {
                        if m.len() != es.k as usize + 1 {
                            return Err(Error::BadDegree);
                        }
                        GaloisField::with_modulus(es.p, m.clone())?
                    }
                    None => GaloisField::new(es.p, es.k)?,
                });
                let basis = es
                    .basis
                    .iter()
                    .map(|codes| matrix_from_codes(es.n, codes, &field))
                    .collect::<Result<Vec<_>>>()?;
                let algebra = Arc::new(NilpotentAlgebra::build(AlgebraSource::Explicit(basis), field.clone(), es.n)?);
                let sigma = match &es.involution {
                    Some(inv) => {
                        let u = matrix_from_codes(es.n, &inv.u, &field)?;
                        Some(Arc::new(Involution::build(u, inv.kind, algebra.clone())?))
                    }
                    None => None,
                };
                Ok(Instance {
                    field,
                    algebra,
                    sigma,
                    preset: None,
                })
            }
        }
    }
}

fn matrix_from_codes(n: usize, codes: &[u64], field: &GaloisField) -> Result<Mat> {
    if codes.len() != n * n {
        return Err(Error::Dimension(format!("expected {} entries, got {}", n * n, codes.len())));
    }
    Mat::from_codes(n, codes, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_ut3_with_antidiagonal() {
        let text = r#"{"p":3,"k":1,"n":3,
            "basis":[[0,1,0,0,0,0,0,0,0],[0,0,1,0,0,0,0,0,0],[0,0,0,0,0,1,0,0,0]],
            "involution":{"kind":"first","u":[0,0,1,0,1,0,1,0,0]}}"#;
        let inst = AlgebraSpec::parse(text).unwrap().instantiate().unwrap();
        assert_eq!(inst.algebra.dim(), 3);
        assert!(inst.sigma.is_some());
    }

    #[test]
    fn preset_form() {
        let inst = AlgebraSpec::parse(r#"{"preset":"sp","m":2,"p":3}"#)
            .unwrap()
            .instantiate()
            .unwrap();
        assert_eq!(inst.algebra.n(), 4);
        let e = AlgebraSpec::parse(r#"{"preset":"o-","m":2,"p":3}"#)
            .unwrap()
            .instantiate()
            .unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)));
    }
}
