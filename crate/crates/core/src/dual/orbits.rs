use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::character::{left_map, right_map, twisted_dual_map, FixedDual};
use crate::algebra::{FixedStructures, GroupElement, Involution, NilpotentAlgebra};
use crate::arith::fp::{decode, encode};
use crate::arith::FpMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Algebra,
    Dual,
    FixedAlgebra,
    FixedDual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    TwoSided,
    Twisted,
    Conjugation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rep: usize,
    pub members: Vec<usize>,
}

/// A partition of one of the four spaces into orbits. Points are addressed by
/// local index; `codes[i]` is the global code of point i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub space: Space,
    pub action: ActionKind,
    codes: Vec<u64>,
    orbits: Vec<Orbit>,
    orbit_of: Vec<u32>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn points(&self) -> usize {
        self.orbit_of.len()
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit(&self, i: usize) -> &Orbit {
        &self.orbits[i]
    }

    pub fn orbit_of(&self, point: usize) -> usize {
        self.orbit_of[point] as usize
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn code(&self, point: usize) -> u64 {
        self.codes[point]
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.orbits.iter().map(|o| o.members.len() as u64).collect()
    }

    /// Whether every orbit of `self` is a union of orbits of `finer` (same space).
    pub fn is_refined_by(&self, finer: &OrbitPartition) -> bool {
        finer.points() == self.points()
            && finer
                .orbits
                .iter()
                .all(|o| o.members.iter().all(|&m| self.orbit_of[m] == self.orbit_of[o.rep]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let orbits: Vec<serde_json::Value> = self
            .orbits
            .iter()
            .map(|o| {
                json!({
                    "rep": self.codes[o.rep],
                    "size": o.members.len(),
                    "members": o.members.iter().map(|&m| self.codes[m]).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "space": self.space, "action": self.action, "orbits": orbits })
    }
}

/// BFS orbits of the group generated by the given permutations; points visited
/// in ascending order so each representative is the least member.
pub fn partition_from_perms(n: usize, perms: &[Vec<u32>]) -> (Vec<Orbit>, Vec<u32>) {
    let mut orbit_of = vec![u32::MAX; n];
    let mut orbits = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        orbit_of[start] = id;
        queue.push_back(start);
        let mut members = vec![start];
        while let Some(x) = queue.pop_front() {
            for perm in perms {
                let y = perm[x] as usize;
                if orbit_of[y] == u32::MAX {
                    orbit_of[y] = id;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        orbits.push(Orbit { rep: start, members });
    }
    (orbits, orbit_of)
}

/// The single orbit through `start`, sorted.
pub fn orbit_through(start: usize, perms: &[Vec<u32>]) -> Vec<usize> {
    let mut seen = std::collections::HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for perm in perms {
            let y = perm[x] as usize;
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<usize> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

/// Shared data for orbit computations: the algebra, an optional involution,
/// and the enumerated fixed spaces.
#[derive(Clone, Debug)]
pub struct OrbitContext {
    alg: Arc<NilpotentAlgebra>,
    sigma: Option<Arc<Involution>>,
    fixed: Option<Arc<FixedStructures>>,
    fixed_dual: Option<Arc<FixedDual>>,
    generators: Vec<GroupElement>,
    cap: u64,
}

/// Which one-sided pieces of the two-sided action to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

impl OrbitContext {
    pub fn new(alg: Arc<NilpotentAlgebra>, cap: u64) -> Result<Self> {
        alg.size(cap)?;
        Ok(OrbitContext {
            generators: alg.generators(),
            alg,
            sigma: None,
            fixed: None,
            fixed_dual: None,
            cap,
        })
    }

    pub fn with_sigma(sigma: Arc<Involution>, cap: u64) -> Result<Self> {
        let alg = sigma.algebra().clone();
        let fixed = Arc::new(FixedStructures::compute(sigma.clone(), cap)?);
        let fixed_dual = Arc::new(FixedDual::compute(&fixed, cap)?);
        let mut ctx = Self::new(alg, cap)?;
        ctx.sigma = Some(sigma);
        ctx.fixed = Some(fixed);
        ctx.fixed_dual = Some(fixed_dual);
        Ok(ctx)
    }

    pub fn algebra(&self) -> &Arc<NilpotentAlgebra> {
        &self.alg
    }

    pub fn sigma(&self) -> Option<&Arc<Involution>> {
        self.sigma.as_ref()
    }

    pub fn fixed(&self) -> Option<&Arc<FixedStructures>> {
        self.fixed.as_ref()
    }

    pub fn fixed_dual(&self) -> Option<&Arc<FixedDual>> {
        self.fixed_dual.as_ref()
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    fn need_sigma(&self) -> Result<&Arc<Involution>> {
        self.sigma
            .as_ref()
            .ok_or_else(|| Error::InvalidAction("this space needs an involution".into()))
    }

    /// Global codes of the points of a space, in local-index order.
    pub fn space_codes(&self, space: Space) -> Result<Vec<u64>> {
        let p = self.alg.f().p() as u64;
        match space {
            Space::Algebra => Ok((0..self.alg.size(self.cap)?).collect()),
            Space::Dual => {
                let size = p
                    .checked_pow(self.alg.fp_dim() as u32)
                    .ok_or(Error::CapExceeded { size: u64::MAX, cap: self.cap })?;
                Ok((0..size).collect())
            }
            Space::FixedAlgebra => {
                self.need_sigma()?;
                Ok(self.fixed.as_ref().unwrap().elements().to_vec())
            }
            Space::FixedDual => {
                self.need_sigma()?;
                Ok(self.fixed_dual.as_ref().unwrap().codes().to_vec())
            }
        }
    }

    fn local_index(&self, space: Space, code: u64) -> Option<usize> {
        match space {
            Space::Algebra | Space::Dual => Some(code as usize),
            Space::FixedAlgebra => self.fixed.as_ref()?.local_index(code),
            Space::FixedDual => self.fixed_dual.as_ref()?.local_index(code),
        }
    }

    /// F_p matrices (acting on coordinate vectors of the space's points) of
    /// the generator images for the given action.
    pub fn action_maps(&self, space: Space, action: ActionKind, side: Side) -> Result<Vec<FpMatrix>> {
        let alg = &*self.alg;
        let f = alg.f();
        let mut maps = Vec::new();
        match (space, action) {
            (Space::Algebra, ActionKind::TwoSided) => {
                for g in &self.generators {
                    if side != Side::Right {
                        maps.push(alg.fp_map(|a| g.matrix.mul(a, f))?);
                    }
                    if side != Side::Left {
                        maps.push(alg.fp_map(|a| a.mul(&g.matrix, f))?);
                    }
                }
            }
            (Space::Dual, ActionKind::TwoSided) => {
                for g in &self.generators {
                    if side != Side::Right {
                        maps.push(left_map(alg, g).transpose());
                    }
                    if side != Side::Left {
                        maps.push(right_map(alg, g).transpose());
                    }
                }
            }
            (Space::Algebra, ActionKind::Conjugation) => {
                for g in &self.generators {
                    let gi = alg.inv(g).matrix;
                    maps.push(alg.fp_map(|a| g.matrix.mul(a, f).mul(&gi, f))?);
                }
            }
            (Space::Dual, ActionKind::Conjugation) => {
                for g in &self.generators {
                    let gi = alg.inv(g).matrix;
                    maps.push(alg.fp_map(|a| gi.mul(a, f).mul(&g.matrix, f))?.transpose());
                }
            }
            (Space::FixedAlgebra, ActionKind::Twisted) => {
                let s = self.need_sigma()?;
                for g in &self.generators {
                    // x·a = x⁻¹ a x^σ with x^σ = σ(x⁻¹)
                    let gi = alg.inv(g).matrix;
                    let gs = s.sigma(&gi);
                    maps.push(alg.fp_map(|a| gi.mul(a, f).mul(&gs, f))?);
                }
            }
            (Space::FixedDual, ActionKind::Twisted) => {
                let s = self.need_sigma()?;
                for g in &self.generators {
                    maps.push(twisted_dual_map(s, g).transpose());
                }
            }
            _ => {
                return Err(Error::InvalidAction(format!(
                    "{action:?} is not defined on {space:?}"
                )))
            }
        }
        Ok(maps)
    }

    /// Permutations of local indices induced by the generator maps.
    pub fn perms(&self, space: Space, action: ActionKind, side: Side) -> Result<Vec<Vec<u32>>> {
        let codes = self.space_codes(space)?;
        if codes.len() as u64 > self.cap {
            return Err(Error::CapExceeded { size: codes.len() as u64, cap: self.cap });
        }
        let maps = self.action_maps(space, action, side)?;
        let p = self.alg.f().p();
        let dk = self.alg.fp_dim();
        let vecs: Vec<Vec<u32>> = codes.iter().map(|&c| decode(c, dk, p)).collect();
        let mut perms = Vec::with_capacity(maps.len());
        for m in &maps {
            let mut perm = Vec::with_capacity(codes.len());
            for v in &vecs {
                let img = encode(&m.apply(v), p);
                let idx = self.local_index(space, img).ok_or_else(|| {
                    Error::violation(format!("{action:?} action leaves {space:?}"), format!("code {img}"))
                })?;
                perm.push(idx as u32);
            }
            perms.push(perm);
        }
        Ok(perms)
    }

    pub fn orbits(&self, space: Space, action: ActionKind) -> Result<OrbitPartition> {
        self.orbits_ordered(space, action, false)
    }

    /// Orbits with the generator list optionally reversed.
    pub fn orbits_ordered(&self, space: Space, action: ActionKind, reverse: bool) -> Result<OrbitPartition> {
        let mut perms = self.perms(space, action, Side::Both)?;
        if reverse {
            perms.reverse();
        }
        let codes = self.space_codes(space)?;
        let (orbits, orbit_of) = partition_from_perms(codes.len(), &perms);
        Ok(OrbitPartition {
            space,
            action,
            codes,
            orbits,
            orbit_of,
        })
    }

    /// Code of a^σ (algebra) or λ^σ (dual).
    pub fn sigma_image(&self, space: Space, code: u64) -> Result<u64> {
        let s = self.need_sigma()?;
        let p = self.alg.f().p();
        let dk = self.alg.fp_dim();
        match space {
            Space::Algebra => Ok(s.act_code(code)),
            Space::Dual => {
                let t = decode(code, dk, p);
                Ok(encode(&s.action_fp().transpose().apply(&t), p))
            }
            _ => Err(Error::InvalidAction("σ filter applies to algebra or dual".into())),
        }
    }
}

pub fn orbits(ctx: &OrbitContext, space: Space, action: ActionKind) -> Result<OrbitPartition> {
    ctx.orbits(space, action)
}

/// A σ-invariant two-sided orbit together with a σ-fixed member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantOrbit {
    pub orbit: usize,
    pub fixed_member: usize,
}

/// Orbits O with O^σ = O; each must contain a σ-fixed point.
pub fn sigma_invariant_filter(ctx: &OrbitContext, partition: &OrbitPartition) -> Result<Vec<InvariantOrbit>> {
    if partition.action != ActionKind::TwoSided {
        return Err(Error::InvalidAction("σ filter expects a two-sided partition".into()));
    }
    let space = partition.space;
    let mut out = Vec::new();
    for (i, o) in partition.orbits().iter().enumerate() {
        let img = ctx.sigma_image(space, partition.code(o.rep))? as usize;
        if partition.orbit_of(img) != i {
            continue;
        }
        let mut fixed = None;
        for &m in &o.members {
            if ctx.sigma_image(space, partition.code(m))? as usize == m {
                fixed = Some(m);
                break;
            }
        }
        let fixed_member = fixed.ok_or_else(|| {
            Error::violation("σ-invariant orbit without σ-fixed member", format!("orbit rep {}", o.rep))
        })?;
        out.push(InvariantOrbit { orbit: i, fixed_member });
    }
    Ok(out)
}
