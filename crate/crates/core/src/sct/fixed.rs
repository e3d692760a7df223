use std::collections::BTreeMap;
use std::sync::Arc;

use super::counts::{self, Counts};
use super::function::{ClassLayout, GroupTag, SuperclassFunction};
use super::ptheory::PTheory;
use super::report::{CheckResult, CheckSelection, SCTReport};
use crate::algebra::{EnumeratedGroup, FixedStructures};
use crate::arith::fp::decode;
use crate::arith::Cyclo;
use crate::dual::{sigma_invariant_filter, ActionKind, FixedDual, OrbitContext, OrbitPartition, Space};
use crate::error::{Error, Result};
use crate::oracle::classes::conjugacy_classes;

/// Superclasses and supercharacters of C_P(σ).
///
/// Superclasses are Φ-images of twisted orbits on C_J(σ); a C_P(σ) element
/// shares its local index with the C_J(σ) element it is the Cayley image of.
/// Supercharacters are ς_Ω = Σ_{μ∈Ω} μ∘Ψ over twisted orbits Ω on C_J(σ)°.
#[derive(Clone, Debug)]
pub struct FixedTheory {
    ctx: Arc<OrbitContext>,
    p: u32,
    dk: usize,
    classes: OrbitPartition,
    dual: OrbitPartition,
    alg_vecs: Vec<u32>,
    dual_vecs: Vec<u32>,
    layout: Arc<ClassLayout>,
    counts: Vec<Vec<Counts>>,
}

impl FixedTheory {
    pub fn build(ctx: Arc<OrbitContext>) -> Result<Self> {
        if ctx.sigma().is_none() {
            return Err(Error::InvalidAction("C_P(σ) needs an involution".into()));
        }
        let alg = ctx.algebra().clone();
        let p = alg.f().p();
        let dk = alg.fp_dim();
        let classes = ctx.orbits(Space::FixedAlgebra, ActionKind::Twisted)?;
        let dual = ctx.orbits(Space::FixedDual, ActionKind::Twisted)?;
        let alg_vecs: Vec<u32> = classes.codes().iter().flat_map(|&c| decode(c, dk, p)).collect();
        let dual_vecs: Vec<u32> = dual.codes().iter().flat_map(|&c| decode(c, dk, p)).collect();
        let layout = Arc::new(ClassLayout {
            group: GroupTag::Fixed,
            order: classes.points() as u64,
            sizes: classes.sizes(),
            identity: classes.orbit_of(0),
        });
        let mut t = FixedTheory {
            ctx,
            p,
            dk,
            classes,
            dual,
            alg_vecs,
            dual_vecs,
            layout,
            counts: Vec::new(),
        };
        t.counts = (0..t.dual.len())
            .map(|o| t.classes.orbits().iter().map(|s| t.sum_at(o, s.rep)).collect())
            .collect();
        Ok(t)
    }

    pub fn context(&self) -> &Arc<OrbitContext> {
        &self.ctx
    }

    pub fn fixed(&self) -> &Arc<FixedStructures> {
        self.ctx.fixed().expect("built with σ")
    }

    pub fn fixed_dual(&self) -> &Arc<FixedDual> {
        self.ctx.fixed_dual().expect("built with σ")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.layout.order
    }

    pub fn superclasses(&self) -> &OrbitPartition {
        &self.classes
    }

    pub fn dual_orbits(&self) -> &OrbitPartition {
        &self.dual
    }

    pub fn layout(&self) -> &Arc<ClassLayout> {
        &self.layout
    }

    /// F_p vector of the C_J(σ) element with the given local index.
    pub fn alg_vec(&self, local: usize) -> &[u32] {
        &self.alg_vecs[local * self.dk..(local + 1) * self.dk]
    }

    pub fn dual_vec(&self, local: usize) -> &[u32] {
        &self.dual_vecs[local * self.dk..(local + 1) * self.dk]
    }

    /// P-index (code of x − 1) of the C_P(σ) element with the given local index.
    pub fn group_code(&self, local: usize) -> u64 {
        self.fixed().group_codes()[local]
    }

    /// Σ_{μ∈Ω_o} ζ^{μ(a)} for the C_J(σ) element a with the given local index.
    pub fn sum_at(&self, o: usize, local: usize) -> Counts {
        counts::orbit_sum(&self.dual.orbit(o).members, &self.dual_vecs, self.dk, self.alg_vec(local), self.p)
    }

    pub fn counts(&self, o: usize, s: usize) -> &Counts {
        &self.counts[o][s]
    }

    /// ς for twisted dual orbit o.
    pub fn varsigma(&self, o: usize) -> SuperclassFunction {
        SuperclassFunction {
            layout: self.layout.clone(),
            values: self.counts[o].iter().map(|c| counts::to_cyclo(c, self.p)).collect(),
        }
    }

    /// ς at every element of C_P(σ), by local index.
    pub fn varsigma_all(&self, o: usize) -> Vec<Cyclo> {
        (0..self.classes.points())
            .map(|l| counts::to_cyclo(&self.sum_at(o, l), self.p))
            .collect()
    }

    /// Enumerated C_P(σ) with local indices matching C_J(σ).
    pub fn group(&self, cap: u64) -> Result<EnumeratedGroup> {
        EnumeratedGroup::from_codes(self.ctx.algebra().clone(), self.fixed().group_codes().to_vec(), cap)
    }

    pub fn verify(&self, pt: &PTheory, sel: &CheckSelection, oracle_cap: u64) -> SCTReport {
        let mut checks = Vec::new();
        let mut run = |name: &str, f: &dyn Fn() -> CheckResult| {
            if sel.wants(name) {
                checks.push(f());
            }
        };
        run("s1_counts", &|| self.check_s1());
        run("s2_identity", &|| self.check_s2());
        run("s3_constant", &|| self.check_s3());
        run("orthogonality", &|| self.check_orthogonality());
        run("regular_character", &|| self.check_regular());
        run("degrees", &|| self.check_degrees());
        run("sigma_counts", &|| wrap("sigma_counts", self.check_sigma_counts(pt)));
        run("superclass_constructions", &|| {
            wrap("superclass_constructions", self.check_constructions(pt))
        });
        run("fixed_members", &|| wrap("fixed_members", self.check_fixed_members(pt)));
        run("restriction", &|| self.check_restriction(pt));
        run("conjugacy_refinement", &|| self.check_conjugacy_refinement(oracle_cap));
        SCTReport {
            group: "C_P".into(),
            order: self.order(),
            superclasses: self.classes.len(),
            supercharacters: self.dual.len(),
            checks,
            elapsed_ms: None,
        }
    }

    fn check_s1(&self) -> CheckResult {
        let (a, b) = (self.classes.len(), self.dual.len());
        if a == b {
            CheckResult::pass("s1_counts", format!("{a} superclasses, {b} supercharacters"))
        } else {
            CheckResult::fail("s1_counts", format!("{a} superclasses vs {b} supercharacters"))
        }
    }

    fn check_s2(&self) -> CheckResult {
        let s = self.classes.orbit(self.layout.identity);
        if s.members == [0] && self.classes.code(0) == 0 {
            CheckResult::pass("s2_identity", "{1} is a superclass")
        } else {
            CheckResult::fail("s2_identity", format!("identity superclass has {} members", s.members.len()))
        }
    }

    fn check_s3(&self) -> CheckResult {
        for o in 0..self.dual.len() {
            for (s, cl) in self.classes.orbits().iter().enumerate() {
                for &m in &cl.members[1..] {
                    if !counts::same(&self.counts[o][s], &self.sum_at(o, m)) {
                        return CheckResult::fail(
                            "s3_constant",
                            format!(
                                "orbit of {} differs on superclass of {} at {}",
                                self.dual.code(self.dual.orbit(o).rep),
                                self.group_code(cl.rep),
                                self.group_code(m)
                            ),
                        );
                    }
                }
            }
        }
        CheckResult::pass("s3_constant", "every ς is constant on every superclass")
    }

    fn raw_inner(&self, o: usize, o2: usize) -> Counts {
        let mut acc = vec![0i64; self.p as usize];
        for (s, &k) in self.layout.sizes.iter().enumerate() {
            let prod = counts::mul_conj(&self.counts[o][s], &self.counts[o2][s]);
            counts::add_assign(&mut acc, &counts::scale(&prod, k as i64));
        }
        acc
    }

    fn check_orthogonality(&self) -> CheckResult {
        let n = self.dual.len();
        for o in 0..n {
            for o2 in (o + 1)..n {
                if !counts::is_zero(&self.raw_inner(o, o2)) {
                    return CheckResult::fail(
                        "orthogonality",
                        format!("orbits of {} and {}", self.dual.code(self.dual.orbit(o).rep), self.dual.code(self.dual.orbit(o2).rep)),
                    );
                }
            }
        }
        CheckResult::pass("orthogonality", format!("{} pairs orthogonal", n * n.saturating_sub(1) / 2))
    }

    fn check_regular(&self) -> CheckResult {
        let id = self.layout.identity;
        for s in 0..self.classes.len() {
            let mut acc = vec![0i64; self.p as usize];
            for o in 0..self.dual.len() {
                counts::add_assign(&mut acc, &self.counts[o][s]);
            }
            let want = if s == id { self.order() as i64 } else { 0 };
            if counts::rational(&acc) != Some(want) {
                return CheckResult::fail("regular_character", format!("superclass of {}", self.group_code(self.classes.orbit(s).rep)));
            }
        }
        CheckResult::pass("regular_character", "Σ ς over orbit representatives equals the regular character")
    }

    fn check_degrees(&self) -> CheckResult {
        let id = self.layout.identity;
        for o in 0..self.dual.len() {
            let size = self.dual.orbit(o).members.len() as i64;
            let deg = counts::rational(&self.counts[o][id]);
            let norm = counts::rational(&self.raw_inner(o, o)).map(|r| counts::ratio(r as u64, self.order()));
            if deg != Some(size) || norm != Some(counts::ratio(size as u64, 1)) {
                return CheckResult::fail("degrees", format!("orbit of {}", self.dual.code(self.dual.orbit(o).rep)));
            }
        }
        CheckResult::pass("degrees", "ς(1) = |Ω| and ⟨ς, ς⟩ = |Ω| for every orbit")
    }

    fn check_sigma_counts(&self, pt: &PTheory) -> Result<std::result::Result<String, String>> {
        let inv_alg = sigma_invariant_filter(&self.ctx, pt.superclasses())?.len();
        let inv_dual = sigma_invariant_filter(&self.ctx, pt.dual_orbits())?.len();
        let (a, b) = (self.classes.len(), self.dual.len());
        Ok(if a == inv_alg && b == inv_dual && a == b {
            Ok(format!("{a} superclasses = {b} supercharacters = {inv_dual} σ-invariant supercharacters of P"))
        } else {
            Err(format!(
                "superclasses {a}, supercharacters {b}, σ-invariant P-superclasses {inv_alg}, σ-invariant P-supercharacters {inv_dual}"
            ))
        })
    }

    /// Twisted orbits versus nonempty intersections with P-superclasses.
    fn check_constructions(&self, pt: &PTheory) -> Result<std::result::Result<String, String>> {
        let pclasses = pt.superclasses();
        let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for local in 0..self.classes.points() {
            by_class.entry(pclasses.orbit_of(self.group_code(local) as usize)).or_default().push(local);
        }
        let invariant: Vec<usize> = sigma_invariant_filter(&self.ctx, pclasses)?.iter().map(|i| i.orbit).collect();
        for (&k, members) in &by_class {
            if !invariant.contains(&k) {
                return Ok(Err(format!("C_P meets the non-invariant superclass of {}", pclasses.orbit(k).rep)));
            }
            let o = self.classes.orbit_of(members[0]);
            if self.classes.orbit(o).members != *members {
                return Ok(Err(format!(
                    "twisted orbit of {} differs from its intersection",
                    self.group_code(members[0])
                )));
            }
        }
        if by_class.len() != invariant.len() {
            return Ok(Err(format!(
                "{} nonempty intersections vs {} σ-invariant superclasses",
                by_class.len(),
                invariant.len()
            )));
        }
        Ok(Ok(format!("{} superclasses agree under both constructions", by_class.len())))
    }

    fn check_fixed_members(&self, pt: &PTheory) -> Result<std::result::Result<String, String>> {
        let a = sigma_invariant_filter(&self.ctx, pt.superclasses())?;
        let d = sigma_invariant_filter(&self.ctx, pt.dual_orbits())?;
        let fd = self.fixed_dual();
        for io in &d {
            if fd.local_index(pt.dual_orbits().code(io.fixed_member)).is_none() {
                return Ok(Err(format!("σ-fixed functional {} outside C_J(σ)°", io.fixed_member)));
            }
        }
        Ok(Ok(format!(
            "{} invariant superclass orbits and {} invariant dual orbits each have a σ-fixed member",
            a.len(),
            d.len()
        )))
    }

    fn check_restriction(&self, pt: &PTheory) -> CheckResult {
        for o in 0..self.dual.len() {
            let code = self.dual.code(self.dual.orbit(o).rep);
            let po = pt.dual_orbit_of(code);
            for cl in self.classes.orbits() {
                let at = |l: usize| {
                    let a = self.classes.code(l);
                    pt.sum_at(po, a)
                };
                let first = at(cl.rep);
                for &m in &cl.members[1..] {
                    if !counts::same(&first, &at(m)) {
                        return CheckResult::fail(
                            "restriction",
                            format!("ξ̂ for λ = {code} differs at {} and {}", self.group_code(cl.rep), self.group_code(m)),
                        );
                    }
                }
            }
        }
        CheckResult::pass("restriction", "ξ̂_λ restricted to C_P(σ) is a superclass function for each σ-invariant λ")
    }

    fn check_conjugacy_refinement(&self, oracle_cap: u64) -> CheckResult {
        let name = "conjugacy_refinement";
        if self.order() > oracle_cap {
            return CheckResult::skipped(name, format!("|C_P| = {} exceeds the group cap {oracle_cap}", self.order()));
        }
        let run = || -> Result<std::result::Result<String, String>> {
            let g = self.group(oracle_cap)?;
            let cc = conjugacy_classes(&g, oracle_cap)?;
            for c in cc.classes() {
                let s = self.classes.orbit_of(c.rep);
                if let Some(&m) = c.members.iter().find(|&&m| self.classes.orbit_of(m) != s) {
                    return Ok(Err(format!("{} and {} are conjugate in different superclasses", g.code(c.rep), g.code(m))));
                }
            }
            Ok(Ok(format!("{} conjugacy classes refine {} superclasses", cc.len(), self.classes.len())))
        };
        wrap(name, run())
    }
}

fn wrap(name: &str, r: Result<std::result::Result<String, String>>) -> CheckResult {
    match r {
        Ok(o) => CheckResult::from_outcome(name, o),
        Err(e) => CheckResult::fail(name, e.to_string()),
    }
}
