use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::pairs::{elementary_pair, enumerate_basic_pairs, vphi_invariant, BasicPair};
use super::preset::{antidiagonal, ClassicalKind, ClassicalPreset};
use super::subgroups::{check_subgroup, induce_linear, inner_all, literal_factor, q_mask, zero_mask, QSubgroup};
use crate::algebra::spec::Instance;
use crate::algebra::{EnumeratedGroup, Involution, Mat, NilpotentAlgebra};
use crate::arith::{Cyclo, Fq, GaloisField};
use crate::dual::Space;
use crate::error::{Error, Result};
use crate::oracle::classes::{conjugacy_classes, ConjugacyClasses};
use crate::sct::{context, CheckResult, CheckSelection, FixedTheory, PTheory};

/// Names of the checks in a [`ClassicalReport`], in run order.
pub const CLASSICAL_CHECKS: &[&str] = &[
    "census",
    "sigma_invariance",
    "antidiagonal_rule",
    "p_parametrization",
    "fixed_superclasses",
    "fixed_supercharacters",
    "q_subgroups",
    "q_redundancy",
    "elementary_irreducible",
    "hxd",
    "basic2_p",
    "xi_modes",
    "elem1",
    "proportionality",
    "elem2_audit",
    "block_shape",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiMode {
    Induced,
    Product,
}

/// Everything the classical checks need, built once per preset.
pub struct ClassicalData {
    pub preset: ClassicalPreset,
    pub sigma: Arc<Involution>,
    pub alg: Arc<NilpotentAlgebra>,
    pub pt: PTheory,
    pub ft: FixedTheory,
    /// P with its multiplication table.
    pub p_group: EnumeratedGroup,
    /// C_P(σ); local indices match those of C_J(σ).
    pub c_group: EnumeratedGroup,
    pub pairs: Vec<BasicPair>,
    pub invariant: Vec<BasicPair>,
}

fn cyclo_int(c: &Cyclo) -> Option<i64> {
    c.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
}

fn field(alg: &NilpotentAlgebra) -> &GaloisField {
    alg.f()
}

impl ClassicalData {
    /// `cap` bounds the orbit spaces; `group_cap` bounds the enumerated P.
    pub fn build(inst: &Instance, cap: u64, group_cap: u64) -> Result<Self> {
        let preset = inst
            .preset
            .clone()
            .filter(|p| p.kind != ClassicalKind::Ut)
            .ok_or_else(|| Error::Unsupported("classical checks need one of the presets sp, o+, o-odd, u".into()))?;
        let sigma = inst.sigma.clone().ok_or(Error::NotSigmaInvariant)?;
        let ctx = context(inst, cap)?;
        let pt = PTheory::build(ctx.clone())?;
        let ft = FixedTheory::build(ctx)?;
        let alg = inst.algebra.clone();
        let p_group = EnumeratedGroup::full(alg.clone(), group_cap)?;
        let c_group = ft.group(group_cap)?;
        let pairs = enumerate_basic_pairs(preset.n, field(&alg));
        let invariant = pairs.iter().filter(|d| vphi_invariant(d, &preset, &sigma)).cloned().collect();
        Ok(ClassicalData {
            preset,
            sigma,
            alg,
            pt,
            ft,
            p_group,
            c_group,
            pairs,
            invariant,
        })
    }

    fn p(&self) -> u32 {
        self.alg.f().p()
    }

    /// Exponent of λ_D(Ψ(x)) for the element of P with the given P-index.
    fn tau_exponent(&self, functional: &[u32], p_index: u64) -> u32 {
        let a = self.pt.alg_vec(self.pt.psi_code(p_index));
        let p = self.p() as u64;
        (functional.iter().zip(a).map(|(&t, &x)| t as u64 * x as u64).sum::<u64>() % p) as u32
    }

    fn q_of<'a>(&'a self, pair: &BasicPair) -> QSubgroup<'a> {
        QSubgroup::new(&self.preset, &self.sigma, &pair.positions())
    }

    /// ξ̂_D on P, by P-index.
    pub fn xi_hat(&self, pair: &BasicPair) -> Vec<Cyclo> {
        let code = pair.character(&self.alg).code(self.p());
        self.pt.xi_hat_all(self.pt.dual_orbit_of(code))
    }

    /// τ̂_D induced from Q_D to P, at the given local indices of P.
    pub fn tau_hat_induced(&self, pair: &BasicPair, at: &[usize]) -> Result<Vec<Cyclo>> {
        let mask = q_mask(&self.p_group, &self.q_of(pair));
        let t = pair.character(&self.alg).functional;
        induce_linear(&self.p_group, &mask, |x| self.tau_exponent(&t, self.p_group.code(x)), at, self.p())
    }

    /// ξ_D(φ) on C_P(σ), by local index.
    pub fn xi_fixed(&self, pair: &BasicPair, mode: XiMode) -> Result<Vec<Cyclo>> {
        if !vphi_invariant(pair, &self.preset, &self.sigma) {
            return Err(Error::PairNotInvariant);
        }
        match mode {
            XiMode::Induced => {
                let g = &self.c_group;
                let q = self.q_of(pair);
                let mask: Vec<bool> = (0..g.order())
                    .map(|l| q.contains(&self.alg.group_element_of_code(g.code(l))))
                    .collect();
                let t = pair.character(&self.alg).functional;
                let all: Vec<usize> = (0..g.order()).collect();
                induce_linear(g, &mask, |l| self.tau_exponent(&t, g.code(l)), &all, self.p())
            }
            XiMode::Product => {
                let mut acc = vec![Cyclo::one(self.p()); self.c_group.order()];
                for (i, j, a) in pair.d_prime(self.preset.n) {
                    let e = elementary_pair(&self.preset, &self.sigma, i, j, a)?;
                    let xi = self.xi_fixed(&e, XiMode::Induced)?;
                    acc = acc.iter().zip(&xi).map(|(u, v)| u.mul(v)).collect();
                }
                Ok(acc)
            }
        }
    }

    /// ς_D(φ) on C_P(σ), by local index.
    pub fn varsigma(&self, pair: &BasicPair) -> Result<Vec<Cyclo>> {
        let code = pair.character(&self.alg).code(self.p());
        let local = self.ft.fixed_dual().local_index(code).ok_or(Error::PairNotInvariant)?;
        Ok(self.ft.varsigma_all(self.ft.dual_orbits().orbit_of(local)))
    }

    /// n with ς_D(φ) = n ξ_D(φ); an error names the first offending element.
    pub fn proportionality(&self, pair: &BasicPair) -> Result<u64> {
        let xi = self.xi_fixed(pair, XiMode::Induced)?;
        let vs = self.varsigma(pair)?;
        let id = self.c_group.identity();
        let (dx, dv) = (cyclo_int(&xi[id]), cyclo_int(&vs[id]));
        let n = match (dx, dv) {
            (Some(a), Some(b)) if a > 0 && b > 0 && b % a == 0 => (b / a) as u64,
            _ => {
                return Err(Error::violation(
                    "ς_D is not a positive integer multiple of ξ_D",
                    format!("{}: ξ(1) = {}, ς(1) = {}", pair_label(pair), xi[id], vs[id]),
                ))
            }
        };
        let nc = Cyclo::from_int(self.p(), n as i64);
        for l in 0..xi.len() {
            if vs[l] != xi[l].mul(&nc) {
                return Err(Error::violation(
                    "ς_D ≠ n ξ_D",
                    format!("{} at C_P element {}", pair_label(pair), self.c_group.code(l)),
                ));
            }
        }
        Ok(n)
    }
}

pub fn pair_label(pair: &BasicPair) -> String {
    serde_json::to_string(pair).expect("pair serializes")
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub pair: BasicPair,
    /// |P : Q_D|.
    pub q_index: u64,
    pub xi_degree: Option<i64>,
    pub varsigma_degree: Option<i64>,
    /// n_{D,φ} with ς_D(φ) = n_{D,φ} ξ_D(φ).
    pub ratio: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Elem2Entry {
    pub i: usize,
    pub j: usize,
    pub alpha: u32,
    pub degree: Option<i64>,
    pub stated_degree: u64,
    pub degree_matches: bool,
    pub inner: String,
    pub irreducible: bool,
    /// c with ς = c ξ, when ς is an integer multiple of ξ.
    pub varsigma_multiple: Option<u64>,
    pub multiple_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalReport {
    pub preset: ClassicalPreset,
    pub p_order: u64,
    pub fixed_order: u64,
    pub basic_pairs: usize,
    pub invariant_pairs: usize,
    pub pairs: Vec<PairRecord>,
    pub elem2: Vec<Elem2Entry>,
    pub diagnostics: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl ClassicalReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type Outcome = std::result::Result<String, String>;

fn wrap(name: &str, r: Result<Outcome>) -> CheckResult {
    match r {
        Ok(o) => CheckResult::from_outcome(name, o),
        Err(e) => CheckResult::fail(name, e.to_string()),
    }
}

/// Runs the selected classical checks.
pub fn classical_report(inst: &Instance, sel: &CheckSelection, cap: u64, group_cap: u64) -> Result<ClassicalReport> {
    let data = ClassicalData::build(inst, cap, group_cap)?;
    let r = Runner::new(&data, group_cap)?;
    let mut checks = Vec::new();
    let mut diagnostics = Vec::new();
    let mut elem2 = Vec::new();
    for &name in CLASSICAL_CHECKS {
        if !sel.wants(name) {
            continue;
        }
        let res = match name {
            "census" => r.census(),
            "sigma_invariance" => r.sigma_invariance(),
            "antidiagonal_rule" => r.antidiagonal_rule(),
            "p_parametrization" => r.p_parametrization(),
            "fixed_superclasses" => r.fixed_superclasses(),
            "fixed_supercharacters" => r.fixed_supercharacters(),
            "q_subgroups" => r.q_subgroups(&mut diagnostics),
            "q_redundancy" => r.q_redundancy(),
            "elementary_irreducible" => r.elementary_irreducible(),
            "hxd" => r.hxd(),
            "basic2_p" => r.basic2_p(),
            "xi_modes" => r.xi_modes(),
            "elem1" => r.elem1(),
            "proportionality" => r.proportionality_all(),
            "elem2_audit" => r.elem2(&mut elem2),
            "block_shape" => r.block_shape(),
            _ => unreachable!(),
        };
        checks.push(wrap(name, res));
    }
    let pairs = data
        .invariant
        .iter()
        .map(|d| r.record(d))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassicalReport {
        preset: data.preset.clone(),
        p_order: data.pt.order(),
        fixed_order: data.ft.order(),
        basic_pairs: data.pairs.len(),
        invariant_pairs: data.invariant.len(),
        pairs,
        elem2,
        diagnostics,
        checks,
    })
}

struct Runner<'a> {
    d: &'a ClassicalData,
    p_classes: Option<ConjugacyClasses>,
    group_cap: u64,
}

impl<'a> Runner<'a> {
    fn new(d: &'a ClassicalData, group_cap: u64) -> Result<Self> {
        let p_classes = match conjugacy_classes(&d.p_group, group_cap) {
            Ok(c) => Some(c),
            Err(Error::CapExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Runner { d, p_classes, group_cap })
    }

    fn f(&self) -> &GaloisField {
        self.d.alg.f()
    }

    fn record(&self, pair: &BasicPair) -> Result<PairRecord> {
        let d = self.d;
        let mask = q_mask(&d.p_group, &d.q_of(pair));
        let h = mask.iter().filter(|&&b| b).count() as u64;
        let xi = d.xi_fixed(pair, XiMode::Induced)?;
        let vs = d.varsigma(pair)?;
        let id = d.c_group.identity();
        Ok(PairRecord {
            pair: pair.clone(),
            q_index: d.pt.order() / h,
            xi_degree: cyclo_int(&xi[id]),
            varsigma_degree: cyclo_int(&vs[id]),
            ratio: d.proportionality(pair).ok(),
        })
    }

    fn census(&self) -> Result<Outcome> {
        let d = self.d;
        let (inv, all) = (d.invariant.len(), d.pairs.len());
        let (cs, cc) = (d.ft.superclasses().len(), d.ft.dual_orbits().len());
        let (ps, pc) = (d.pt.superclasses().len(), d.pt.dual_orbits().len());
        Ok(if inv == cs && inv == cc && all == ps && all == pc {
            Ok(format!(
                "{inv} σ-invariant basic pairs = {cs} superclasses = {cc} supercharacters of C_P(σ); {all} basic pairs = {ps} superclasses of P"
            ))
        } else {
            Err(format!(
                "σ-invariant pairs {inv}, C_P superclasses {cs}, C_P supercharacters {cc}; pairs {all}, P superclasses {ps}, P supercharacters {pc}"
            ))
        })
    }

    /// The mirror rule, e_D ∈ C_J(σ) and λ_D^σ = λ_D agree on every pair.
    fn sigma_invariance(&self) -> Result<Outcome> {
        let d = self.d;
        let ctx = d.pt.context();
        let fixed = d.ft.fixed();
        let p = self.f().p();
        for pair in &d.pairs {
            let a = vphi_invariant(pair, &d.preset, &d.sigma);
            let b = fixed.contains(pair.element_code(&d.alg));
            let code = pair.character(&d.alg).code(p);
            let c = ctx.sigma_image(Space::Dual, code)? == code;
            if a != b || a != c {
                return Ok(Err(format!(
                    "{}: mirror rule {a}, e_D fixed {b}, λ_D fixed {c}",
                    pair_label(pair)
                )));
            }
        }
        Ok(Ok(format!("three invariance tests agree on all {} pairs", d.pairs.len())))
    }

    fn antidiagonal_rule(&self) -> Result<Outcome> {
        let d = self.d;
        let n = d.preset.n;
        let f = self.f();
        for pair in &d.invariant {
            for &(i, j, a) in pair.entries() {
                if j != n + 1 - i {
                    continue;
                }
                let ok = match d.preset.kind {
                    ClassicalKind::OPlus | ClassicalKind::OOdd => false,
                    ClassicalKind::U => f.add(a, d.sigma.bar(a)).is_zero(),
                    _ => true,
                };
                if !ok {
                    return Ok(Err(format!("{} has anti-diagonal value {}", pair_label(pair), a.0)));
                }
            }
        }
        Ok(Ok("anti-diagonal entries of σ-invariant pairs obey the kind's rule".into()))
    }

    /// Basic pairs index the superclasses (through 2e_D) and supercharacters of P.
    fn p_parametrization(&self) -> Result<Outcome> {
        let d = self.d;
        let f = self.f();
        let two = f.from_int(2);
        let mut cls = BTreeSet::new();
        let mut chs = BTreeSet::new();
        for pair in &d.pairs {
            let c = d.pt.superclasses().orbit_of(pair.scaled(two, f).element_code(&d.alg) as usize);
            let o = d.pt.dual_orbit_of(pair.character(&d.alg).code(f.p()));
            if !cls.insert(c) || !chs.insert(o) {
                return Ok(Err(format!("{} shares a superclass or dual orbit", pair_label(pair))));
            }
        }
        Ok(Ok(format!("{} pairs give distinct superclasses and supercharacters of P", d.pairs.len())))
    }

    /// K_D(φ) = {Φ(x e_D x^{-σ})} equals K̂_D(φ) ∩ C_P(σ).
    fn fixed_superclasses(&self) -> Result<Outcome> {
        let d = self.d;
        let f = self.f();
        let two = f.from_int(2);
        let fixed = d.ft.fixed();
        let pcl = d.pt.superclasses();
        let mut seen = BTreeSet::new();
        for pair in &d.invariant {
            let local = fixed
                .local_index(pair.element_code(&d.alg))
                .ok_or(Error::PairNotInvariant)?;
            let o = d.ft.superclasses().orbit_of(local);
            if !seen.insert(o) {
                return Ok(Err(format!("{} shares a superclass", pair_label(pair))));
            }
            let hat = pcl.orbit_of(d.ft.group_code(local) as usize);
            if hat != pcl.orbit_of(pair.scaled(two, f).element_code(&d.alg) as usize) {
                return Ok(Err(format!("Φ(e_D) and 1 + 2e_D lie in different superclasses for {}", pair_label(pair))));
            }
            let twisted: BTreeSet<usize> = d.ft.superclasses().orbit(o).members.iter().copied().collect();
            let meet: BTreeSet<usize> = (0..d.ft.superclasses().points())
                .filter(|&l| pcl.orbit_of(d.ft.group_code(l) as usize) == hat)
                .collect();
            if twisted != meet {
                return Ok(Err(format!(
                    "{}: twisted orbit of size {} vs intersection of size {}",
                    pair_label(pair),
                    twisted.len(),
                    meet.len()
                )));
            }
        }
        Ok(Ok(format!("{} superclasses K_D(φ) = K̂_D(φ) ∩ C_P(σ), pairwise distinct", seen.len())))
    }

    fn fixed_supercharacters(&self) -> Result<Outcome> {
        let d = self.d;
        let p = self.f().p();
        let mut seen = BTreeSet::new();
        for pair in &d.invariant {
            let code = pair.character(&d.alg).code(p);
            let Some(local) = d.ft.fixed_dual().local_index(code) else {
                return Ok(Err(format!("λ_D outside C_J(σ)° for {}", pair_label(pair))));
            };
            if !seen.insert(d.ft.dual_orbits().orbit_of(local)) {
                return Ok(Err(format!("{} shares a twisted dual orbit", pair_label(pair))));
            }
        }
        Ok(Ok(format!("{} pairs give distinct twisted dual orbits", seen.len())))
    }

    /// Q_D is a subgroup for every basic D, σ-invariant for σ-invariant D.
    fn q_subgroups(&self, diagnostics: &mut Vec<String>) -> Result<Outcome> {
        let d = self.d;
        let g = &d.p_group;
        let (m, n) = (d.preset.m, d.preset.n);
        for i in 1..=m {
            for j in (m + 1)..=n {
                if let Some(lit) = literal_factor(&d.preset, i, j) {
                    if check_subgroup(g, &zero_mask(g, &lit)).is_err() {
                        diagnostics.push(format!(
                            "Q_({i},{j}) with x_(i,k) = x_(k,j) = 0 for i < k ≤ m is not closed; the hook pattern is used"
                        ));
                    }
                }
            }
        }
        let mut by_d: BTreeMap<Vec<(usize, usize)>, bool> = BTreeMap::new();
        for pair in &d.pairs {
            let inv = vphi_invariant(pair, &d.preset, &d.sigma);
            *by_d.entry(pair.positions()).or_default() |= inv;
        }
        for (pos, inv) in &by_d {
            let q = QSubgroup::new(&d.preset, &d.sigma, pos);
            let mask = q_mask(g, &q);
            if let Err(e) = check_subgroup(g, &mask) {
                return Ok(Err(format!("Q_D for D = {pos:?}: {e}")));
            }
            if *inv {
                for x in (0..g.order()).filter(|&x| mask[x]) {
                    let img = d.sigma.act_group(&d.alg.group_element_of_code(g.code(x)));
                    let c = d.alg.group_code(&img).expect("σ preserves P");
                    if !mask[g.index_of(c).expect("full group")] {
                        return Ok(Err(format!("Q_D for D = {pos:?} is not σ-invariant at {}", g.code(x))));
                    }
                }
            }
        }
        Ok(Ok(format!("Q_D is a subgroup for {} basic subsets, σ-invariant when D is", by_d.len())))
    }

    /// For σ-invariant D the factors with m < i add nothing.
    fn q_redundancy(&self) -> Result<Outcome> {
        let d = self.d;
        let g = &d.p_group;
        let mut done = BTreeSet::new();
        for pair in &d.invariant {
            let pos = pair.positions();
            if !done.insert(pos.clone()) {
                continue;
            }
            let lower: Vec<(usize, usize)> = pos.iter().copied().filter(|&(i, _)| i <= d.preset.m).collect();
            let full = q_mask(g, &QSubgroup::new(&d.preset, &d.sigma, &pos));
            let part = q_mask(g, &QSubgroup::new(&d.preset, &d.sigma, &lower));
            if full != part {
                return Ok(Err(format!("D = {pos:?}: factors with i > m cut Q_D further")));
            }
        }
        Ok(Ok(format!("for {} σ-invariant D, Q_D is cut out by the entries with i ≤ m", done.len())))
    }

    fn elementary_irreducible(&self) -> Result<Outcome> {
        let d = self.d;
        let n = d.preset.n;
        let p = self.f().p();
        let mut count = 0;
        for i in 1..=n {
            for j in (i + 1)..=n {
                for a in self.f().nonzero() {
                    let xi = d.xi_hat(&BasicPair::single(i, j, a, n)?);
                    if !inner_all(&xi, &xi, p).is_one() {
                        return Ok(Err(format!("⟨ξ̂, ξ̂⟩ ≠ 1 for ({i},{j}), α = {}", a.0)));
                    }
                    count += 1;
                }
            }
        }
        Ok(Ok(format!("{count} elementary supercharacters of P have norm 1")))
    }

    fn hxd(&self) -> Result<Outcome> {
        let d = self.d;
        let n = d.preset.n;
        let p = self.f().p();
        let mut elem: HashMap<(usize, usize, Fq), Vec<Cyclo>> = HashMap::new();
        for pair in &d.pairs {
            let mut prod = vec![Cyclo::one(p); d.pt.order() as usize];
            for &(i, j, a) in pair.entries() {
                let e = match elem.get(&(i, j, a)) {
                    Some(e) => e,
                    None => {
                        let v = d.xi_hat(&BasicPair::single(i, j, a, n)?);
                        elem.entry((i, j, a)).or_insert(v)
                    }
                };
                prod = prod.iter().zip(e).map(|(u, v)| u.mul(v)).collect();
            }
            let xi = d.xi_hat(pair);
            if let Some(x) = (0..xi.len()).find(|&x| xi[x] != prod[x]) {
                return Ok(Err(format!("{} at P-index {x}", pair_label(pair))));
            }
        }
        Ok(Ok(format!("ξ̂_D = Π ξ̂_(i,j) on all of P for {} pairs", d.pairs.len())))
    }

    fn basic2_p(&self) -> Result<Outcome> {
        let d = self.d;
        let Some(cc) = &self.p_classes else {
            return Ok(Ok(format!("skipped: |P| exceeds the group cap {}", self.group_cap)));
        };
        let reps: Vec<usize> = cc.classes().iter().map(|c| c.rep).collect();
        for pair in &d.pairs {
            let ind = d.tau_hat_induced(pair, &reps)?;
            let xi = d.xi_hat(pair);
            for (k, &x) in reps.iter().enumerate() {
                if ind[k] != xi[d.p_group.code(x) as usize] {
                    return Ok(Err(format!("{} at P-index {}", pair_label(pair), d.p_group.code(x))));
                }
            }
        }
        Ok(Ok(format!(
            "τ̂_D induced from Q_D equals ξ̂_D on {} conjugacy classes for {} pairs",
            reps.len(),
            d.pairs.len()
        )))
    }

    fn xi_modes(&self) -> Result<Outcome> {
        let d = self.d;
        for pair in &d.invariant {
            let a = d.xi_fixed(pair, XiMode::Induced)?;
            let b = d.xi_fixed(pair, XiMode::Product)?;
            if let Some(l) = (0..a.len()).find(|&l| a[l] != b[l]) {
                return Ok(Err(format!("{} at C_P element {}", pair_label(pair), d.c_group.code(l))));
            }
        }
        Ok(Ok(format!("induced and product ξ_D agree for {} σ-invariant pairs", d.invariant.len())))
    }

    fn elem1(&self) -> Result<Outcome> {
        let d = self.d;
        let n = d.preset.n;
        let f = self.f();
        let two = f.from_int(2);
        let mut count = 0;
        for i in 1..=n {
            for j in (i + 1)..(n + 1 - i) {
                for a in f.nonzero() {
                    let e = elementary_pair(&d.preset, &d.sigma, i, j, a)?;
                    let xi = d.xi_fixed(&e, XiMode::Induced)?;
                    let hat = d.xi_hat(&BasicPair::single(i, j, f.mul(two, a), n)?);
                    if let Some(l) = (0..xi.len()).find(|&l| xi[l] != hat[d.c_group.code(l) as usize]) {
                        return Ok(Err(format!("({i},{j}), α = {} at C_P element {}", a.0, d.c_group.code(l))));
                    }
                    count += 1;
                }
            }
        }
        Ok(Ok(format!("ξ_(i,j)(α) = ξ̂_(i,j)(2α) on C_P(σ) for {count} elementary pairs")))
    }

    fn proportionality_all(&self) -> Result<Outcome> {
        let d = self.d;
        let mut ratios = BTreeSet::new();
        for pair in &d.invariant {
            match d.proportionality(pair) {
                Ok(n) => {
                    ratios.insert(n);
                }
                Err(e) => return Ok(Err(e.to_string())),
            }
        }
        Ok(Ok(format!(
            "ς_D = n ξ_D with n a positive integer for {} pairs; ratios {:?}",
            d.invariant.len(),
            ratios
        )))
    }

    /// Degree and norm of ξ_(i,n−i+1)(α) against the stated q^{m−i+1}.
    fn elem2(&self, out: &mut Vec<Elem2Entry>) -> Result<Outcome> {
        let d = self.d;
        let (m, n) = (d.preset.m, d.preset.n);
        let q = d.sigma.fixed_field_order() as u64;
        let p = self.f().p();
        let id = d.c_group.identity();
        for i in 1..=m {
            let j = n + 1 - i;
            for a in self.f().nonzero() {
                let Ok(e) = elementary_pair(&d.preset, &d.sigma, i, j, a) else {
                    continue;
                };
                let xi = d.xi_fixed(&e, XiMode::Induced)?;
                let vs = d.varsigma(&e)?;
                let inner = inner_all(&xi, &xi, p);
                let degree = cyclo_int(&xi[id]);
                let stated = q.pow((m - i + 1) as u32);
                let multiple = match (degree, cyclo_int(&vs[id])) {
                    (Some(x), Some(v)) if x > 0 && v % x == 0 => {
                        let c = Cyclo::from_int(p, v / x);
                        (0..xi.len()).all(|l| vs[l] == xi[l].mul(&c)).then_some((v / x) as u64)
                    }
                    _ => None,
                };
                out.push(Elem2Entry {
                    i,
                    j,
                    alpha: a.0,
                    degree,
                    stated_degree: stated,
                    degree_matches: degree == Some(stated as i64),
                    inner: inner.to_string(),
                    irreducible: inner.is_one(),
                    varsigma_multiple: multiple,
                    multiple_matches: multiple == Some(stated),
                });
            }
        }
        let agree = out.iter().filter(|e| e.degree_matches).count();
        let irr = out.iter().filter(|e| e.irreducible).count();
        Ok(Ok(format!(
            "{} anti-diagonal elementary characters audited: {agree} match the stated degree, {irr} irreducible",
            out.len()
        )))
    }

    fn block_shape(&self) -> Result<Outcome> {
        let d = self.d;
        let shape = BlockShape::new(&d.preset, &d.sigma);
        for l in 0..d.c_group.order() {
            if let Err(w) = shape.check(&d.c_group.matrix(l)) {
                return Ok(Err(format!("C_P element {}: {w}", d.c_group.code(l))));
            }
        }
        match shape.count(1 << 20) {
            Some(c) if c != d.ft.order() => Ok(Err(format!("{c} block solutions vs |C_P(σ)| = {}", d.ft.order()))),
            Some(c) => Ok(Ok(format!("all {c} elements of C_P(σ) have the block form and satisfy the relations"))),
            None => Ok(Ok(format!(
                "all {} elements have the block form; solution count too large to enumerate",
                d.ft.order()
            ))),
        }
    }
}

/// Small dense rectangular matrices for the block-shape check.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dense {
    r: usize,
    c: usize,
    e: Vec<Fq>,
}

impl Dense {
    fn zero(r: usize, c: usize) -> Self {
        Dense { r, c, e: vec![Fq::ZERO; r * c] }
    }

    fn get(&self, i: usize, j: usize) -> Fq {
        self.e[i * self.c + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.e[i * self.c + j] = v;
    }

    fn block(m: &Mat, r0: usize, c0: usize, r: usize, c: usize) -> Self {
        let mut b = Self::zero(r, c);
        for i in 0..r {
            for j in 0..c {
                b.set(i, j, m.get(r0 + i, c0 + j));
            }
        }
        b
    }

    fn from_mat(m: &Mat) -> Self {
        Self::block(m, 0, 0, m.n(), m.n())
    }

    fn to_mat(&self) -> Mat {
        let mut m = Mat::zero(self.r);
        for i in 0..self.r {
            for j in 0..self.c {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    fn mul(&self, o: &Dense, f: &GaloisField) -> Dense {
        let mut out = Self::zero(self.r, o.c);
        for i in 0..self.r {
            for k in 0..self.c {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.c {
                    out.e[i * o.c + j] = f.add(out.e[i * o.c + j], f.mul(a, o.get(k, j)));
                }
            }
        }
        out
    }

    fn t(&self) -> Dense {
        let mut out = Self::zero(self.c, self.r);
        for i in 0..self.r {
            for j in 0..self.c {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    fn map(&self, g: impl Fn(Fq) -> Fq) -> Dense {
        Dense { r: self.r, c: self.c, e: self.e.iter().map(|&x| g(x)).collect() }
    }

    fn add(&self, o: &Dense, f: &GaloisField) -> Dense {
        Dense { r: self.r, c: self.c, e: self.e.iter().zip(&o.e).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    fn is_identity(&self) -> bool {
        (0..self.r).all(|i| (0..self.c).all(|j| self.get(i, j) == if i == j { Fq::ONE } else { Fq::ZERO }))
    }

    fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }
}

/// The block form of C_P(σ) with x ∈ UT_m, u ∈ M_{m×r}, z ∈ M_m and the
/// relation between z and u for each kind.
struct BlockShape<'a> {
    kind: ClassicalKind,
    m: usize,
    r: usize,
    sigma: &'a Involution,
    j: Dense,
}

impl<'a> BlockShape<'a> {
    fn new(preset: &ClassicalPreset, sigma: &'a Involution) -> Self {
        BlockShape {
            kind: preset.kind,
            m: preset.m,
            r: preset.r,
            sigma,
            j: Dense::from_mat(&antidiagonal(preset.m)),
        }
    }

    fn f(&self) -> &GaloisField {
        self.sigma.algebra().f()
    }

    fn bar(&self, a: &Dense) -> Dense {
        a.map(|x| self.sigma.bar(x))
    }

    /// Jz̄ᵗ ± zJ + (u ū ᵗ for the odd orthogonal and unitary kinds) should vanish.
    fn relation(&self, u: &Dense, z: &Dense) -> bool {
        let f = self.f();
        let jz = self.j.mul(&self.bar(z).t(), f);
        let zj = z.mul(&self.j, f);
        let lhs = match self.kind {
            ClassicalKind::Sp => jz.add(&zj.map(|x| f.neg(x)), f),
            _ => jz.add(&zj, f),
        };
        let uu = u.mul(&self.bar(u).t(), f);
        match self.kind {
            ClassicalKind::OOdd | ClassicalKind::U => lhs.add(&uu, f).is_zero(),
            _ => lhs.is_zero(),
        }
    }

    fn check(&self, g: &Mat) -> std::result::Result<(), String> {
        let f = self.f();
        let (m, r) = (self.m, self.r);
        let x = Dense::block(g, 0, 0, m, m);
        let xinv = Dense::from_mat(&x.to_mat().inverse(f).ok_or("x is singular")?);
        let u = xinv.mul(&Dense::block(g, 0, m, m, r), f);
        let z = xinv.mul(&Dense::block(g, 0, m + r, m, m), f);
        if !(0..m).all(|i| (0..i).all(|j| x.get(i, j).is_zero()) && x.get(i, i) == Fq::ONE) {
            return Err("x is not unitriangular".into());
        }
        if !Dense::block(g, m, m, r, r).is_identity() || !Dense::block(g, m, 0, r, m).is_zero() {
            return Err("middle block".into());
        }
        let mid_right = self.bar(&u).t().mul(&self.j, f).map(|v| f.neg(v));
        if Dense::block(g, m, m + r, r, m) != mid_right {
            return Err("middle row differs from -ū^t J".into());
        }
        if !Dense::block(g, m + r, 0, m, m + r).is_zero() {
            return Err("lower-left blocks".into());
        }
        let xbar_inv_t = Dense::from_mat(&self.bar(&x).to_mat().inverse(f).ok_or("x̄ is singular")?).t();
        if Dense::block(g, m + r, m + r, m, m) != self.j.mul(&xbar_inv_t, f).mul(&self.j, f) {
            return Err("lower-right block differs from J x̄^{-t} J".into());
        }
        if !self.relation(&u, &z) {
            return Err("z and u violate the relation".into());
        }
        Ok(())
    }

    /// |UT_m| times the number of (u, z) meeting the relation, if at most `limit` pairs.
    fn count(&self, limit: u64) -> Option<u64> {
        let f = self.f();
        let q = f.q() as u64;
        let cells = (self.m * self.r + self.m * self.m) as u32;
        let total = q.checked_pow(cells).filter(|&t| t <= limit)?;
        let mut solutions = 0u64;
        for c in 0..total {
            let mut v = c;
            let mut u = Dense::zero(self.m, self.r);
            let mut z = Dense::zero(self.m, self.m);
            for k in 0..u.e.len() {
                u.e[k] = Fq((v % q) as u32);
                v /= q;
            }
            for k in 0..z.e.len() {
                z.e[k] = Fq((v % q) as u32);
                v /= q;
            }
            if self.relation(&u, &z) {
                solutions += 1;
            }
        }
        Some(solutions * q.pow((self.m * (self.m.saturating_sub(1)) / 2) as u32))
    }
}
