use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::preset::{ClassicalKind, ClassicalPreset};
use crate::algebra::{AlgebraElement, Involution, NilpotentAlgebra};
use crate::arith::{Fq, GaloisField};
use crate::dual::LinearCharacter;
use crate::error::{Error, Result};

/// A basic pair (D, φ): positions (i, j), 1 ≤ i < j ≤ n (1-based), at most
/// one per row and column, with nonzero values. Entries are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicPair {
    entries: Vec<(usize, usize, Fq)>,
}

impl Serialize for BasicPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Phi<'a>(&'a [(usize, usize, Fq)]);
        impl Serialize for Phi<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for &(i, j, a) in self.0 {
                    m.serialize_entry(&format!("{i},{j}"), &a.0)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        let d: Vec<[usize; 2]> = self.entries.iter().map(|&(i, j, _)| [i, j]).collect();
        m.serialize_entry("D", &d)?;
        m.serialize_entry("phi", &Phi(&self.entries))?;
        m.end()
    }
}

/// (n − j + 1, n − i + 1).
pub fn mirror(i: usize, j: usize, n: usize) -> (usize, usize) {
    (n + 1 - j, n + 1 - i)
}

impl BasicPair {
    pub fn empty() -> Self {
        BasicPair { entries: Vec::new() }
    }

    pub fn new(mut entries: Vec<(usize, usize, Fq)>, n: usize) -> Result<Self> {
        entries.sort();
        let mut rows = BTreeMap::new();
        let mut cols = BTreeMap::new();
        for &(i, j, a) in &entries {
            if !(1 <= i && i < j && j <= n) || a.is_zero() {
                return Err(Error::Parse(format!("bad basic pair entry ({i},{j})")));
            }
            if rows.insert(i, j).is_some() || cols.insert(j, i).is_some() {
                return Err(Error::Parse(format!("two entries share a row or column at ({i},{j})")));
            }
        }
        Ok(BasicPair { entries })
    }

    pub fn single(i: usize, j: usize, a: Fq, n: usize) -> Result<Self> {
        Self::new(vec![(i, j, a)], n)
    }

    pub fn entries(&self) -> &[(usize, usize, Fq)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn positions(&self) -> Vec<(usize, usize)> {
        self.entries.iter().map(|&(i, j, _)| (i, j)).collect()
    }

    pub fn phi(&self, i: usize, j: usize) -> Option<Fq> {
        self.entries.iter().find(|e| e.0 == i && e.1 == j).map(|e| e.2)
    }

    /// D' = {(i,j) ∈ D : j ≤ n − i + 1}.
    pub fn d_prime(&self, n: usize) -> Vec<(usize, usize, Fq)> {
        self.entries.iter().copied().filter(|&(i, j, _)| j <= n + 1 - i).collect()
    }

    /// D₁ ∪ D₀: entries with i ≤ m and j ≤ n − i + 1.
    pub fn d1_d0(&self, m: usize, n: usize) -> Vec<(usize, usize, Fq)> {
        self.entries.iter().copied().filter(|&(i, j, _)| i <= m && j <= n + 1 - i).collect()
    }

    /// e_D(φ) = Σ φ(i,j) e_{i,j} in UT_n.
    pub fn element(&self, alg: &NilpotentAlgebra) -> AlgebraElement {
        let mut coords = vec![Fq::ZERO; alg.dim()];
        for &(i, j, a) in &self.entries {
            coords[alg.ut_index(i - 1, j - 1).expect("UT_n basis")] = a;
        }
        AlgebraElement { coords }
    }

    pub fn element_code(&self, alg: &NilpotentAlgebra) -> u64 {
        alg.code(&self.element(alg))
    }

    /// λ_D(φ)(a) = Π ϑ(φ(i,j) a_{ij}), as an F_p functional.
    pub fn character(&self, alg: &NilpotentAlgebra) -> LinearCharacter {
        let f = alg.f();
        let k = f.k() as usize;
        let mut t = vec![0u32; alg.fp_dim()];
        for &(i, j, a) in &self.entries {
            let idx = alg.ut_index(i - 1, j - 1).expect("UT_n basis");
            for l in 0..k {
                t[idx * k + l] = f.trace(f.mul(a, Fq(f.p().pow(l as u32))));
            }
        }
        LinearCharacter { functional: t }
    }

    /// The same positions with every value multiplied by c.
    pub fn scaled(&self, c: Fq, f: &GaloisField) -> Self {
        BasicPair {
            entries: self.entries.iter().map(|&(i, j, a)| (i, j, f.mul(a, c))).collect(),
        }
    }
}

/// φ(mirror) required by σ-invariance for an entry (i,j) of D₁ ∪ D₀.
pub fn mirror_value(preset: &ClassicalPreset, sigma: &Involution, i: usize, j: usize, a: Fq) -> Fq {
    let f = sigma.algebra().f();
    let _ = i;
    if preset.kind == ClassicalKind::Sp && j > preset.m {
        a
    } else {
        f.neg(sigma.bar(a))
    }
}

/// The σ-invariance condition on φ entry by entry (D^σ = D and the mirror rule).
pub fn vphi_invariant(pair: &BasicPair, preset: &ClassicalPreset, sigma: &Involution) -> bool {
    let n = preset.n;
    let mut pos: Vec<(usize, usize)> = pair.positions();
    let mut mirrored: Vec<(usize, usize)> = pos.iter().map(|&(i, j)| mirror(i, j, n)).collect();
    pos.sort();
    mirrored.sort();
    if pos != mirrored {
        return false;
    }
    pair.d1_d0(preset.m, n).iter().all(|&(i, j, a)| {
        let (mi, mj) = mirror(i, j, n);
        pair.phi(mi, mj) == Some(mirror_value(preset, sigma, i, j, a))
    })
}

/// Every basic pair of UT_n over the field, ordered by (|D|, entries).
pub fn enumerate_basic_pairs(n: usize, f: &GaloisField) -> Vec<BasicPair> {
    let positions: Vec<(usize, usize)> = (1..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect();
    let nonzero: Vec<Fq> = f.nonzero().collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        at: usize,
        positions: &[(usize, usize)],
        nonzero: &[Fq],
        used_r: &mut Vec<bool>,
        used_c: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize, Fq)>,
        out: &mut Vec<BasicPair>,
    ) {
        if at == positions.len() {
            out.push(BasicPair { entries: cur.clone() });
            return;
        }
        rec(at + 1, positions, nonzero, used_r, used_c, cur, out);
        let (i, j) = positions[at];
        if used_r[i] || used_c[j] {
            return;
        }
        used_r[i] = true;
        used_c[j] = true;
        for &a in nonzero {
            cur.push((i, j, a));
            rec(at + 1, positions, nonzero, used_r, used_c, cur, out);
            cur.pop();
        }
        used_r[i] = false;
        used_c[j] = false;
    }
    rec(0, &positions, &nonzero, &mut vec![false; n + 2], &mut vec![false; n + 2], &mut cur, &mut out);
    out.sort_by(|a, b| (a.len(), &a.entries).cmp(&(b.len(), &b.entries)));
    out
}

/// σ-invariant basic pairs, selected by the mirror rule.
pub fn invariant_pairs(preset: &ClassicalPreset, sigma: &Involution) -> Vec<BasicPair> {
    enumerate_basic_pairs(preset.n, sigma.algebra().f())
        .into_iter()
        .filter(|p| vphi_invariant(p, preset, sigma))
        .collect()
}

/// The elementary σ-invariant pair through (i,j) with φ(i,j) = α, for j ≤ n − i + 1.
pub fn elementary_pair(preset: &ClassicalPreset, sigma: &Involution, i: usize, j: usize, a: Fq) -> Result<BasicPair> {
    let n = preset.n;
    let (mi, mj) = mirror(i, j, n);
    let pair = if (mi, mj) == (i, j) {
        BasicPair::single(i, j, a, n)?
    } else {
        BasicPair::new(vec![(i, j, a), (mi, mj, mirror_value(preset, sigma, i, j, a))], n)?
    };
    if !vphi_invariant(&pair, preset, sigma) {
        return Err(Error::PairNotInvariant);
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_gf3_has_three_pairs() {
        let f = GaloisField::new(3, 1).unwrap();
        let pairs = enumerate_basic_pairs(2, &f);
        assert_eq!(pairs.len(), 3);
        assert!(pairs[0].is_empty());
    }

    #[test]
    fn rook_placements_ut3() {
        // ∅, three singletons, and {(1,2),(2,3)}: 1 + 3·2 + 4 = 11 over GF(3)
        let f = GaloisField::new(3, 1).unwrap();
        assert_eq!(enumerate_basic_pairs(3, &f).len(), 11);
    }

    #[test]
    fn rejects_shared_row() {
        assert!(BasicPair::new(vec![(1, 2, Fq::ONE), (1, 3, Fq::ONE)], 3).is_err());
    }

    #[test]
    fn json_shape() {
        let p = BasicPair::new(vec![(1, 3, Fq(2))], 3).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"D":[[1,3]],"phi":{"1,3":2}}"#);
    }
}
