use std::collections::HashSet;
use std::sync::Arc;

use num_rational::BigRational;

use super::counts::{self, Counts};
use super::function::{ClassLayout, GroupTag, SuperclassFunction};
use super::report::{CheckResult, CheckSelection, SCTReport};
use crate::algebra::EnumeratedGroup;
use crate::arith::fp::decode;
use crate::arith::{Cyclo, FpMatrix};
use crate::dual::{orbit_through, ActionKind, OrbitContext, OrbitPartition, Side, Space};
use crate::error::{Error, Result};
use crate::oracle::classes::conjugacy_classes;

/// Superclasses and supercharacters of P = 1 + J.
///
/// Superclass s is the set 1 + O_s where O_s is a two-sided orbit on J; a
/// group element x is addressed by its P-index, the code of x − 1.
#[derive(Clone, Debug)]
pub struct PTheory {
    ctx: Arc<OrbitContext>,
    p: u32,
    dk: usize,
    order: u64,
    classes: OrbitPartition,
    dual: OrbitPartition,
    alg_vecs: Vec<u32>,
    dual_vecs: Vec<u32>,
    psi: Vec<u64>,
    left_sizes: Vec<u64>,
    layout: Arc<ClassLayout>,
    /// counts[o][s] = Σ_{μ ∈ O_o} ζ^{μ(a_s)} at the superclass representative a_s.
    counts: Vec<Vec<Counts>>,
}

impl PTheory {
    pub fn build(ctx: Arc<OrbitContext>) -> Result<Self> {
        let alg = ctx.algebra().clone();
        let p = alg.f().p();
        let dk = alg.fp_dim();
        let classes = ctx.orbits(Space::Algebra, ActionKind::TwoSided)?;
        let dual = ctx.orbits(Space::Dual, ActionKind::TwoSided)?;
        let order = classes.points() as u64;
        let mut alg_vecs = Vec::with_capacity(order as usize * dk);
        for c in 0..order {
            alg_vecs.extend(decode(c, dk, p));
        }
        let mut dual_vecs = Vec::with_capacity(dual.points() * dk);
        for c in 0..dual.points() as u64 {
            dual_vecs.extend(decode(c, dk, p));
        }
        let psi: Vec<u64> = (0..order).map(|x| alg.psi_code(x)).collect();
        let left = ctx.perms(Space::Dual, ActionKind::TwoSided, Side::Left)?;
        let left_sizes = dual
            .orbits()
            .iter()
            .map(|o| orbit_through(o.rep, &left).len() as u64)
            .collect();
        let layout = Arc::new(ClassLayout {
            group: GroupTag::P,
            order,
            sizes: classes.sizes(),
            identity: classes.orbit_of(0),
        });
        let mut theory = PTheory {
            ctx,
            p,
            dk,
            order,
            classes,
            dual,
            alg_vecs,
            dual_vecs,
            psi,
            left_sizes,
            layout,
            counts: Vec::new(),
        };
        theory.counts = (0..theory.dual.len())
            .map(|o| {
                theory
                    .classes
                    .orbits()
                    .iter()
                    .map(|s| theory.sum_at(o, s.rep as u64))
                    .collect()
            })
            .collect();
        Ok(theory)
    }

    pub fn context(&self) -> &Arc<OrbitContext> {
        &self.ctx
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.order
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

    pub fn psi_code(&self, x: u64) -> u64 {
        self.psi[x as usize]
    }

    pub fn alg_vec(&self, a: u64) -> &[u32] {
        &self.alg_vecs[a as usize * self.dk..(a as usize + 1) * self.dk]
    }

    pub fn dual_vecs(&self) -> &[u32] {
        &self.dual_vecs
    }

    /// S_O(a) = Σ_{μ ∈ O} ζ^{μ(a)}.
    pub fn sum_at(&self, o: usize, a: u64) -> Counts {
        counts::orbit_sum(&self.dual.orbit(o).members, &self.dual_vecs, self.dk, self.alg_vec(a), self.p)
    }

    pub fn counts(&self, o: usize, s: usize) -> &Counts {
        &self.counts[o][s]
    }

    /// |Pλ| for λ in dual orbit o.
    pub fn left_size(&self, o: usize) -> u64 {
        self.left_sizes[o]
    }

    /// n_λ = |PλP| / |Pλ|.
    pub fn n_lambda(&self, o: usize) -> BigRational {
        counts::ratio(self.dual.orbit(o).members.len() as u64, self.left_sizes[o])
    }

    /// |Pλ| / |PλP|.
    pub fn coef(&self, o: usize) -> BigRational {
        counts::ratio(self.left_sizes[o], self.dual.orbit(o).members.len() as u64)
    }

    pub fn dual_orbit_of(&self, functional_code: u64) -> usize {
        self.dual.orbit_of(functional_code as usize)
    }

    /// χ̂_λ(x) = (|Pλ|/|PλP|) Σ_{μ∈PλP} μ(x − 1).
    pub fn chi_hat(&self, o: usize) -> SuperclassFunction {
        let c = self.coef(o);
        SuperclassFunction {
            layout: self.layout.clone(),
            values: self.counts[o].iter().map(|v| counts::to_cyclo_scaled(v, self.p, &c)).collect(),
        }
    }

    /// ξ̂_λ(x) = (|Pλ|/|PλP|) Σ_{μ∈PλP} μ(Ψ(x)), evaluated at superclass representatives.
    pub fn xi_hat(&self, o: usize) -> SuperclassFunction {
        let c = self.coef(o);
        SuperclassFunction {
            layout: self.layout.clone(),
            values: self
                .classes
                .orbits()
                .iter()
                .map(|s| counts::to_cyclo_scaled(&self.sum_at(o, self.psi_code(s.rep as u64)), self.p, &c))
                .collect(),
        }
    }

    /// ξ̂_λ at every element of P (by P-index).
    pub fn xi_hat_all(&self, o: usize) -> Vec<Cyclo> {
        let c = self.coef(o);
        (0..self.order)
            .map(|x| counts::to_cyclo_scaled(&self.sum_at(o, self.psi_code(x)), self.p, &c))
            .collect()
    }

    /// ℒ(λ) = {a : aJ ⊆ ker λ}, as the matrix whose kernel it is.
    pub fn right_annihilator_conditions(&self, functional: &[u32]) -> Result<FpMatrix> {
        let alg = self.ctx.algebra();
        let f = alg.f();
        let mut rows = Vec::with_capacity(alg.fp_dim());
        for pos in 0..alg.fp_dim() {
            let b = alg.fp_basis_matrix(pos);
            let rb = alg.fp_map(|a| a.mul(&b, f))?;
            rows.push(rb.transpose().apply(functional));
        }
        Ok(FpMatrix::from_rows(self.p, alg.fp_dim(), &rows))
    }

    pub fn verify(&self, sel: &CheckSelection, oracle_cap: u64) -> SCTReport {
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
        run("self_inner", &|| self.check_self_inner());
        run("sch0", &|| self.check_sch0());
        run("lin1", &|| self.check_lin1(oracle_cap));
        run("sig4", &|| self.check_sig4());
        run("scl1", &|| self.check_scl1());
        run("conjugacy_refinement", &|| self.check_conjugacy_refinement());
        SCTReport {
            group: "P".into(),
            order: self.order,
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
        let s = self.classes.orbit(self.classes.orbit_of(0));
        let d = self.dual.orbit(self.dual.orbit_of(0));
        if s.members == [0] && d.members == [0] {
            CheckResult::pass("s2_identity", "{1} is a superclass; the trivial character is alone in its orbit")
        } else {
            CheckResult::fail("s2_identity", format!("identity superclass has {} members", s.members.len()))
        }
    }

    fn check_s3(&self) -> CheckResult {
        for o in 0..self.dual.len() {
            for (s, cl) in self.classes.orbits().iter().enumerate() {
                let at_rep = &self.counts[o][s];
                for &m in &cl.members[1..] {
                    if !counts::same(at_rep, &self.sum_at(o, m as u64)) {
                        return CheckResult::fail(
                            "s3_constant",
                            format!("orbit of {} differs on superclass of {} at {}", self.dual.code(self.dual.orbit(o).rep), cl.rep, m),
                        );
                    }
                }
            }
        }
        CheckResult::pass("s3_constant", "every supercharacter is constant on every superclass")
    }

    /// Σ_s |K_s| S_o(s) conj S_o'(s) as integer exponent counts.
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
        CheckResult::pass("orthogonality", format!("{} pairs orthogonal", n * (n.saturating_sub(1)) / 2))
    }

    fn check_regular(&self) -> CheckResult {
        let id = self.layout.identity;
        for s in 0..self.classes.len() {
            let mut acc = vec![0i64; self.p as usize];
            for o in 0..self.dual.len() {
                counts::add_assign(&mut acc, &self.counts[o][s]);
            }
            let want = if s == id { self.order as i64 } else { 0 };
            if counts::rational(&acc) != Some(want) {
                return CheckResult::fail("regular_character", format!("superclass of {}", self.classes.orbit(s).rep));
            }
        }
        CheckResult::pass("regular_character", "Σ n_λ χ̂_λ equals the regular character")
    }

    fn check_degrees(&self) -> CheckResult {
        let id = self.layout.identity;
        for o in 0..self.dual.len() {
            let deg = self.chi_hat(o).values[id].clone();
            let n = self.n_lambda(o);
            if deg != Cyclo::from_int(self.p, self.left_sizes[o] as i64) || !n.is_integer() {
                return CheckResult::fail("degrees", format!("orbit of {}", self.dual.code(self.dual.orbit(o).rep)));
            }
        }
        CheckResult::pass("degrees", "χ̂_λ(1) = |Pλ| and n_λ is an integer for every orbit")
    }

    fn check_self_inner(&self) -> CheckResult {
        let left = match self.ctx.perms(Space::Dual, ActionKind::TwoSided, Side::Left) {
            Ok(l) => l,
            Err(e) => return CheckResult::fail("self_inner", e.to_string()),
        };
        let right = match self.ctx.perms(Space::Dual, ActionKind::TwoSided, Side::Right) {
            Ok(r) => r,
            Err(e) => return CheckResult::fail("self_inner", e.to_string()),
        };
        for o in 0..self.dual.len() {
            let rep = self.dual.orbit(o).rep;
            let l: HashSet<usize> = orbit_through(rep, &left).into_iter().collect();
            let both = orbit_through(rep, &right).into_iter().filter(|x| l.contains(x)).count() as i64;
            // ⟨χ̂,χ̂⟩ = coef² · raw / |P|
            let Some(raw) = counts::rational(&self.raw_inner(o, o)) else {
                return CheckResult::fail("self_inner", format!("non-rational norm at orbit of {rep}"));
            };
            let c = self.coef(o);
            let val = c.clone() * c * counts::ratio(raw as u64, self.order);
            if val != BigRational::from_integer(both.into()) {
                return CheckResult::fail("self_inner", format!("orbit of {rep}: {val} vs |Pλ∩λP| = {both}"));
            }
        }
        CheckResult::pass("self_inner", "⟨χ̂_λ, χ̂_λ⟩ = |Pλ ∩ λP| for every orbit")
    }

    fn check_sch0(&self) -> CheckResult {
        let p = self.p;
        for o in 0..self.dual.len() {
            let rep = self.dual.orbit(o).rep;
            let sq = self.dual.orbit_of(crate::arith::fp::encode(
                &self.dual_vecs[rep * self.dk..(rep + 1) * self.dk]
                    .iter()
                    .map(|&t| (2 * t) % p)
                    .collect::<Vec<_>>(),
                p,
            ) as usize);
            if self.coef(o) != self.coef(sq) {
                return CheckResult::fail("sch0", format!("orbit sizes differ for {rep}"));
            }
            for x in 0..self.order {
                if !counts::same(&self.sum_at(o, x), &self.sum_at(sq, self.psi_code(x))) {
                    return CheckResult::fail("sch0", format!("λ = {rep}, x = 1 + {x}"));
                }
            }
        }
        CheckResult::pass("sch0", "χ̂_λ = ξ̂_{λ²} at every element for every orbit")
    }

    fn check_lin1(&self, oracle_cap: u64) -> CheckResult {
        if self.order > oracle_cap {
            return CheckResult::skipped("lin1", format!("|P| = {} exceeds the group cap {oracle_cap}", self.order));
        }
        match self.lin1_inner(oracle_cap) {
            Ok(Ok(d)) => CheckResult::pass("lin1", d),
            Ok(Err(w)) => CheckResult::fail("lin1", w),
            Err(e) => CheckResult::fail("lin1", e.to_string()),
        }
    }

    fn lin1_inner(&self, cap: u64) -> Result<std::result::Result<String, String>> {
        let alg = self.ctx.algebra().clone();
        let g = EnumeratedGroup::full(alg.clone(), cap)?;
        let cc = conjugacy_classes(&g, cap)?;
        let p = self.p;
        let dk = self.dk;
        for o in 0..self.dual.len() {
            let rep = self.dual.orbit(o).rep;
            let t = &self.dual_vecs[rep * dk..(rep + 1) * dk];
            let cond = self.right_annihilator_conditions(t)?;
            let in_l = |a: u64| cond.apply(self.alg_vec(a)).iter().all(|&v| v == 0);
            // right ideal: ℒ·J ⊆ ℒ
            let basis = cond.kernel();
            for v in &basis {
                let a = alg.from_fp_vector(v);
                let am = alg.matrix(&a);
                for pos in 0..dk {
                    let prod = am.mul(&alg.fp_basis_matrix(pos), alg.f());
                    let code = alg.code_of_matrix(&prod).expect("J closed");
                    if !in_l(code) {
                        return Ok(Err(format!("ℒ(λ) not a right ideal for λ = {rep}")));
                    }
                }
            }
            let mask = g.subgroup_mask(|x| in_l(g.code(x)))?;
            let l_size = mask.iter().filter(|&&b| b).count() as u64;
            let theta = |x: usize| -> u32 { crate::dual::character::dot(t, self.alg_vec(self.psi_code(g.code(x))), p) };
            // linearity on generators of L
            let gens = g.subgroup_generators(&mask);
            for x in (0..g.order()).filter(|&x| mask[x]) {
                for &y in &gens {
                    if theta(g.mul(x, y)) != (theta(x) + theta(y)) % p {
                        return Ok(Err(format!("ϑ̂_λ not linear for λ = {rep}")));
                    }
                }
            }
            let coef = self.coef(o);
            for c in cc.classes() {
                let x = c.rep;
                let mut acc = vec![0i64; p as usize];
                for y in 0..g.order() {
                    let z = g.conj(y, x);
                    if mask[z] {
                        acc[theta(z) as usize] += 1;
                    }
                }
                let induced = counts::to_cyclo_scaled(&acc, p, &counts::ratio(1, l_size));
                let xi = counts::to_cyclo_scaled(&self.sum_at(o, self.psi_code(g.code(x))), p, &coef);
                if induced != xi {
                    return Ok(Err(format!("λ = {rep}, class of 1 + {}", g.code(x))));
                }
            }
        }
        Ok(Ok(format!("(ϑ̂_λ)^P = ξ̂_λ on all {} classes for every orbit", cc.len())))
    }

    fn check_sig4(&self) -> CheckResult {
        for o in 0..self.dual.len() {
            let xi = self.xi_hat(o);
            let n = self.n_lambda(o);
            for (s, cl) in self.classes.orbits().iter().enumerate() {
                let sig_hat = counts::to_cyclo(&self.sum_at(o, self.psi_code(cl.rep as u64)), self.p);
                if xi.values[s].scale(&n) != sig_hat {
                    return CheckResult::fail("sig4", format!("orbit of {}", self.dual.orbit(o).rep));
                }
            }
        }
        CheckResult::pass("sig4", "n_λ ξ̂_λ = ς̂_λ for every orbit")
    }

    fn check_scl1(&self) -> CheckResult {
        let alg = self.ctx.algebra();
        let p = self.p;
        for cl in self.classes.orbits() {
            let two_a = crate::arith::fp::encode(&self.alg_vec(cl.rep as u64).iter().map(|&v| (2 * v) % p).collect::<Vec<_>>(), p);
            let target = self.classes.orbit_of(two_a as usize);
            if self.classes.orbit(target).members.len() != cl.members.len() {
                return CheckResult::fail("scl1", format!("sizes differ at orbit of {}", cl.rep));
            }
            for &b in &cl.members {
                if self.classes.orbit_of(alg.phi_code(b as u64) as usize) != target {
                    return CheckResult::fail("scl1", format!("Φ({b}) not in 1 + P(2a)P for a = {}", cl.rep));
                }
            }
        }
        CheckResult::pass("scl1", "Φ(PaP) = 1 + P(2a)P for every orbit")
    }

    fn check_conjugacy_refinement(&self) -> CheckResult {
        let run = || -> Result<bool> {
            let conj = self.ctx.orbits(Space::Algebra, ActionKind::Conjugation)?;
            let dconj = self.ctx.orbits(Space::Dual, ActionKind::Conjugation)?;
            Ok(self.classes.is_refined_by(&conj) && self.dual.is_refined_by(&dconj))
        };
        match run() {
            Ok(true) => CheckResult::pass("conjugacy_refinement", "two-sided orbits are unions of conjugation orbits"),
            Ok(false) => CheckResult::fail("conjugacy_refinement", "a conjugation orbit meets two two-sided orbits"),
            Err(e) => CheckResult::fail("conjugacy_refinement", e.to_string()),
        }
    }
}

impl From<Error> for CheckResult {
    fn from(e: Error) -> Self {
        CheckResult::fail("error", e.to_string())
    }
}
