use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::fixed::FixedTheory;
use super::function::GroupTag;
use super::ptheory::PTheory;
use super::report::{CheckResult, SCTReport};
use crate::arith::Cyclo;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    /// P-index of the superclass representative.
    pub rep: u64,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    /// Code of the dual-orbit representative.
    pub rep: u64,
    pub orbit_size: u64,
    pub degree: Cyclo,
    pub multiplier: u64,
    pub values: Vec<Cyclo>,
}

/// Rows are supercharacters and columns superclasses, both ordered by
/// (size, representative).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupercharacterTable {
    pub group: GroupTag,
    pub p: u32,
    pub k: u32,
    pub order: u64,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
}

fn order_by_size(sizes: &[u64], reps: &[u64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..sizes.len()).collect();
    idx.sort_by_key(|&i| (sizes[i], reps[i]));
    idx
}

impl SupercharacterTable {
    /// Table of χ̂_λ on P with multipliers n_λ.
    pub fn from_p(t: &PTheory) -> Self {
        let alg = t.context().algebra();
        let cl = t.superclasses();
        let du = t.dual_orbits();
        let csizes = cl.sizes();
        let creps: Vec<u64> = cl.orbits().iter().map(|o| cl.code(o.rep)).collect();
        let corder = order_by_size(&csizes, &creps);
        let dsizes = du.sizes();
        let dreps: Vec<u64> = du.orbits().iter().map(|o| du.code(o.rep)).collect();
        let rorder = order_by_size(&dsizes, &dreps);
        let columns = corder.iter().map(|&s| Column { rep: creps[s], size: csizes[s] }).collect();
        let rows = rorder
            .iter()
            .map(|&o| {
                let f = t.chi_hat(o);
                Row {
                    rep: dreps[o],
                    orbit_size: dsizes[o],
                    degree: f.degree().clone(),
                    multiplier: dsizes[o] / t.left_size(o),
                    values: corder.iter().map(|&s| f.values[s].clone()).collect(),
                }
            })
            .collect();
        SupercharacterTable {
            group: GroupTag::P,
            p: alg.f().p(),
            k: alg.f().k(),
            order: t.order(),
            columns,
            rows,
        }
    }

    /// Table of ς_λ on C_P(σ); every multiplier is 1.
    pub fn from_fixed(t: &FixedTheory) -> Self {
        let alg = t.context().algebra();
        let cl = t.superclasses();
        let du = t.dual_orbits();
        let csizes = cl.sizes();
        let creps: Vec<u64> = cl.orbits().iter().map(|o| t.group_code(o.rep)).collect();
        let corder = order_by_size(&csizes, &creps);
        let dsizes = du.sizes();
        let dreps: Vec<u64> = du.orbits().iter().map(|o| du.code(o.rep)).collect();
        let rorder = order_by_size(&dsizes, &dreps);
        let columns = corder.iter().map(|&s| Column { rep: creps[s], size: csizes[s] }).collect();
        let rows = rorder
            .iter()
            .map(|&o| {
                let f = t.varsigma(o);
                Row {
                    rep: dreps[o],
                    orbit_size: dsizes[o],
                    degree: f.degree().clone(),
                    multiplier: 1,
                    values: corder.iter().map(|&s| f.values[s].clone()).collect(),
                }
            })
            .collect();
        SupercharacterTable {
            group: GroupTag::Fixed,
            p: alg.f().p(),
            k: alg.f().k(),
            order: t.order(),
            columns,
            rows,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("superclass");
        for c in &self.columns {
            out.push_str(&format!(",{}:{}", c.rep, c.size));
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.rep.to_string());
            for v in &r.values {
                let s = v.to_string();
                if s.contains(',') || s.contains('"') {
                    out.push_str(&format!(",\"{}\"", s.replace('"', "\"\"")));
                } else {
                    out.push(',');
                    out.push_str(&s);
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: SupercharacterTable = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if t.rows.iter().any(|r| r.values.len() != t.columns.len()) {
            return Err(Error::Parse("row length differs from column count".into()));
        }
        Ok(t)
    }

    fn identity_column(&self) -> Option<usize> {
        self.columns.iter().position(|c| c.rep == 0)
    }

    /// Re-checks a table on its own: equal counts, degrees in the identity
    /// column, the regular character and pairwise orthogonality.
    pub fn verify(&self) -> SCTReport {
        let mut checks = Vec::new();
        let (nr, nc) = (self.rows.len(), self.columns.len());
        checks.push(if nr == nc {
            CheckResult::pass("s1_counts", format!("{nr} rows, {nc} columns"))
        } else {
            CheckResult::fail("s1_counts", format!("{nr} rows vs {nc} columns"))
        });
        let id = self.identity_column();
        checks.push(match id {
            Some(i) if self.columns[i].size == 1 => CheckResult::pass("s2_identity", "{1} is a superclass"),
            _ => CheckResult::fail("s2_identity", "no singleton identity column"),
        });
        let total: u64 = self.columns.iter().map(|c| c.size).sum();
        checks.push(if total == self.order {
            CheckResult::pass("class_sizes", format!("sizes sum to {total}"))
        } else {
            CheckResult::fail("class_sizes", format!("sizes sum to {total}, order {}", self.order))
        });
        if let Some(i) = id {
            checks.push(match self.rows.iter().find(|r| r.values[i] != r.degree) {
                None => CheckResult::pass("degrees", "identity column holds the degrees"),
                Some(r) => CheckResult::fail("degrees", format!("row {}", r.rep)),
            });
            let p = self.p;
            let mut reg = Ok(());
            for (j, c) in self.columns.iter().enumerate() {
                let mut s = Cyclo::zero(p);
                for r in &self.rows {
                    s = s.add(&r.values[j].scale(&BigRational::from_integer(BigInt::from(r.multiplier))));
                }
                let want = if j == i { self.order as i64 } else { 0 };
                if s != Cyclo::from_int(p, want) {
                    reg = Err(format!("column {}", c.rep));
                    break;
                }
            }
            checks.push(CheckResult::from_outcome(
                "regular_character",
                reg.map(|_| "weighted row sum is the regular character".to_string()),
            ));
        }
        checks.push(CheckResult::from_outcome("orthogonality", self.orthogonality()));
        SCTReport {
            group: match self.group {
                GroupTag::P => "P".into(),
                GroupTag::Fixed => "C_P".into(),
            },
            order: self.order,
            superclasses: nc,
            supercharacters: nr,
            checks,
            elapsed_ms: None,
        }
    }

    fn orthogonality(&self) -> std::result::Result<String, String> {
        let p = self.p;
        for a in 0..self.rows.len() {
            for b in (a + 1)..self.rows.len() {
                let mut s = Cyclo::zero(p);
                for (j, c) in self.columns.iter().enumerate() {
                    let prod = self.rows[a].values[j].mul(&self.rows[b].values[j].conj());
                    s = s.add(&prod.scale(&BigRational::from_integer(BigInt::from(c.size))));
                }
                if !s.is_zero() {
                    return Err(format!("rows {} and {}", self.rows[a].rep, self.rows[b].rep));
                }
            }
        }
        Ok(format!("{} rows pairwise orthogonal", self.rows.len()))
    }

    /// Degrees as integers when rational.
    pub fn integer_degrees(&self) -> Vec<Option<i64>> {
        self.rows
            .iter()
            .map(|r| {
                r.degree
                    .as_rational()
                    .filter(|q| q.is_integer() && !q.is_zero())
                    .and_then(|q| q.to_integer().to_i64())
            })
            .collect()
    }
}
