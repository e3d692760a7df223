use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::matrix::Mat;
use super::nilpotent::NilpotentAlgebra;
use crate::error::{Error, Result};

/// A finite subgroup of P = 1 + J with a precomputed multiplication table.
/// Elements are addressed by local index; `codes[i]` is the code of x_i − 1.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    algebra: Arc<NilpotentAlgebra>,
    codes: Vec<u64>,
    lookup: HashMap<u64, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    generators: Vec<usize>,
}

impl EnumeratedGroup {
    /// Builds the group on the given element codes; fails unless they form a subgroup.
    pub fn from_codes(algebra: Arc<NilpotentAlgebra>, codes: Vec<u64>, cap: u64) -> Result<Self> {
        let order = codes.len() as u64;
        if order > cap {
            return Err(Error::CapExceeded { size: order, cap });
        }
        let lookup: HashMap<u64, u32> = codes.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        if lookup.len() != codes.len() {
            return Err(Error::NotSubgroup("repeated elements".into()));
        }
        let identity = *lookup
            .get(&0)
            .ok_or_else(|| Error::NotSubgroup("identity missing".into()))? as usize;
        let f = algebra.f();
        let mats: Vec<Mat> = codes
            .iter()
            .map(|&c| algebra.group_element_of_code(c).matrix)
            .collect();
        let n = codes.len();
        let mut mul = vec![0u32; n * n];
        let mut inv = vec![u32::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let prod = mats[i].mul(&mats[j], f);
                let code = algebra
                    .group_code(&super::nilpotent::GroupElement { matrix: prod })
                    .expect("P is closed");
                let k = *lookup.get(&code).ok_or_else(|| {
                    Error::NotSubgroup(format!("product of {} and {} leaves the set", codes[i], codes[j]))
                })?;
                mul[i * n + j] = k;
                if k as usize == identity {
                    inv[i] = j as u32;
                }
            }
        }
        let mut g = EnumeratedGroup {
            algebra,
            codes,
            lookup,
            mul,
            inv,
            identity,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// The whole algebra group P.
    pub fn full(algebra: Arc<NilpotentAlgebra>, cap: u64) -> Result<Self> {
        let size = algebra.size(cap)?;
        Self::from_codes(algebra, (0..size).collect(), cap)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        self.subgroup_generators(&vec![true; self.order()])
    }

    /// Greedy generating set of the subgroup with the given membership mask.
    pub fn subgroup_generators(&self, mask: &[bool]) -> Vec<usize> {
        let n = self.order();
        let mut gens: Vec<usize> = Vec::new();
        let mut inside = vec![false; n];
        inside[self.identity] = true;
        for x in 0..n {
            if !mask[x] || inside[x] {
                continue;
            }
            gens.push(x);
            inside = vec![false; n];
            inside[self.identity] = true;
            let mut queue = VecDeque::from([self.identity]);
            while let Some(h) = queue.pop_front() {
                for &g in &gens {
                    let k = self.mul(h, g);
                    if !inside[k] {
                        inside[k] = true;
                        queue.push_back(k);
                    }
                }
            }
        }
        gens
    }

    pub fn algebra(&self) -> &Arc<NilpotentAlgebra> {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn code(&self, i: usize) -> u64 {
        self.codes[i]
    }

    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.lookup.get(&code).map(|&i| i as usize)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.order() + j] as usize
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    /// y g y⁻¹.
    #[inline]
    pub fn conj(&self, y: usize, g: usize) -> usize {
        self.mul(self.mul(y, g), self.inv(y))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn matrix(&self, i: usize) -> Mat {
        self.algebra.group_element_of_code(self.codes[i]).matrix
    }

    /// Local indices of a subset given by a predicate, checked to be a subgroup.
    pub fn subgroup_mask(&self, member: impl Fn(usize) -> bool) -> Result<Vec<bool>> {
        let mask: Vec<bool> = (0..self.order()).map(member).collect();
        if !mask[self.identity] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let members: Vec<usize> = (0..self.order()).filter(|&i| mask[i]).collect();
        for &a in &members {
            for &b in &members {
                if !mask[self.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!(
                        "product of {} and {} leaves the subset",
                        self.codes[a], self.codes[b]
                    )));
                }
            }
        }
        Ok(mask)
    }
}
