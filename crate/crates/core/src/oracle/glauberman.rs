use std::collections::BTreeSet;

use num_complex::Complex;
use serde::Serialize;

use super::classes::{conjugacy_classes, ConjugacyClasses};
use super::irr::{cyclo_to_complex, decompose_numeric, irr_numeric, IrreducibleSetF64};
use crate::algebra::EnumeratedGroup;
use crate::error::{Error, Result};
use crate::sct::{CheckResult, FixedTheory, PTheory};

/// Irreducible characters of C_P(σ) together with the enumerated group.
pub struct FixedOracle {
    pub group: EnumeratedGroup,
    pub classes: ConjugacyClasses,
    pub irr: IrreducibleSetF64,
}

impl FixedOracle {
    pub fn new(ft: &FixedTheory, cap: u64, seed: u64) -> Result<Self> {
        let group = ft.group(cap)?;
        let classes = conjugacy_classes(&group, cap)?;
        let irr = irr_numeric(&group, &classes, seed)?;
        Ok(FixedOracle { group, classes, irr })
    }

    /// Multiplicities of ς for each twisted dual orbit.
    pub fn decompose_varsigma(&self, ft: &FixedTheory, o: usize) -> Result<Vec<i64>> {
        let all = ft.varsigma_all(o);
        // local indices of the enumerated group match those of C_J(σ)
        let f: Vec<Complex<f64>> = self.classes.classes().iter().map(|c| cyclo_to_complex(&all[c.rep])).collect();
        decompose_numeric(&f, &self.irr)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Support {
    /// Code of the twisted dual-orbit representative.
    pub rep: u64,
    pub orbit_size: u64,
    /// Indices into the irreducible characters of C_P(σ).
    pub members: Vec<usize>,
    pub multiplicities: Vec<i64>,
}

/// Decomposition of every ς into irreducibles of C_P(σ).
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub order: u64,
    pub seed: u64,
    pub degrees: Vec<u64>,
    pub supports: Vec<Support>,
    pub checks: Vec<CheckResult>,
}

impl DecompositionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }
}

pub fn decompose_fixed(ft: &FixedTheory, cap: u64, seed: u64) -> Result<(FixedOracle, DecompositionReport)> {
    let oracle = FixedOracle::new(ft, cap, seed)?;
    let degrees: Vec<u64> = oracle.irr.chars.iter().map(|c| c.degree).collect();
    let du = ft.dual_orbits();
    let mut supports = Vec::with_capacity(du.len());
    let mut mult_ok: std::result::Result<(), String> = Ok(());
    for o in 0..du.len() {
        let m = oracle.decompose_varsigma(ft, o)?;
        let members: Vec<usize> = (0..m.len()).filter(|&i| m[i] != 0).collect();
        if mult_ok.is_ok() {
            if let Some(&i) = members.iter().find(|&&i| m[i] != degrees[i] as i64) {
                mult_ok = Err(format!(
                    "orbit of {}: multiplicity {} of character {i} vs degree {}",
                    du.code(du.orbit(o).rep),
                    m[i],
                    degrees[i]
                ));
            }
        }
        supports.push(Support {
            rep: du.code(du.orbit(o).rep),
            orbit_size: du.orbit(o).members.len() as u64,
            members,
            multiplicities: m,
        });
    }
    let mut seen = vec![0usize; degrees.len()];
    for s in &supports {
        for &i in &s.members {
            seen[i] += 1;
        }
    }
    let partition = match seen.iter().position(|&c| c != 1) {
        None => Ok(format!("{} supports partition {} irreducibles", supports.len(), degrees.len())),
        Some(i) => Err(format!("irreducible {i} lies in {} supports", seen[i])),
    };
    let checks = vec![
        CheckResult::from_outcome(
            "multiplicities",
            mult_ok.map(|_| "every constituent of ς occurs with multiplicity equal to its degree".into()),
        ),
        CheckResult::from_outcome("supports_partition", partition),
    ];
    let report = DecompositionReport {
        order: ft.order(),
        seed,
        degrees,
        supports,
        checks,
    };
    Ok((oracle, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct Correspondence {
    /// Index into Irr(P).
    pub p_char: usize,
    pub p_degree: u64,
    /// Index into Irr(C_P(σ)).
    pub fixed_char: usize,
    pub fixed_degree: u64,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlaubermanReport {
    pub p_order: u64,
    pub fixed_order: u64,
    pub seed: u64,
    pub irr_p: usize,
    pub irr_sigma: usize,
    pub irr_fixed: usize,
    pub correspondence: Vec<Correspondence>,
    pub decomposition: DecompositionReport,
    pub checks: Vec<CheckResult>,
}

impl GlaubermanReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed()) && self.decomposition.all_passed()
    }
}

/// Computes π_P on σ-invariant irreducibles of P by the odd-multiplicity rule
/// and compares its image on the constituents of each ξ̂_λ with the supports X(λ).
pub fn glauberman(pt: &PTheory, ft: &FixedTheory, cap: u64, seed: u64) -> Result<GlaubermanReport> {
    let (fo, decomposition) = decompose_fixed(ft, cap, seed)?;
    let ctx = pt.context();
    let alg = ctx.algebra().clone();
    let sigma = ctx.sigma().ok_or_else(|| Error::InvalidAction("needs an involution".into()))?.clone();
    let g = EnumeratedGroup::full(alg.clone(), cap)?;
    let gc = conjugacy_classes(&g, cap)?;
    let irr_p = irr_numeric::<f64>(&g, &gc, seed)?;

    // class of x^σ for each class rep x
    let sigma_class: Vec<usize> = gc
        .classes()
        .iter()
        .map(|c| {
            let x = alg.group_element_of_code(g.code(c.rep));
            let code = alg.group_code(&sigma.act_group(&x)).expect("σ preserves P");
            gc.class_of(g.index_of(code).expect("full group"))
        })
        .collect();
    let close = |a: Complex<f64>, b: Complex<f64>| (a - b).norm() < 1e-6;
    let invariant: Vec<usize> = (0..irr_p.len())
        .filter(|&i| {
            let v = &irr_p.chars[i].values;
            (0..v.len()).all(|c| close(v[c], v[sigma_class[c]]))
        })
        .collect();

    // C_P classes mapped to P classes
    let c_to_p: Vec<usize> = fo
        .classes
        .classes()
        .iter()
        .map(|c| gc.class_of(g.index_of(fo.group.code(c.rep)).expect("C_P inside P")))
        .collect();

    let mut correspondence = Vec::new();
    let mut well_defined: std::result::Result<(), String> = Ok(());
    for &i in &invariant {
        let res: Vec<Complex<f64>> = c_to_p.iter().map(|&pc| irr_p.chars[i].values[pc]).collect();
        let m = decompose_numeric(&res, &fo.irr)?;
        let odd: Vec<usize> = (0..m.len()).filter(|&j| m[j] % 2 != 0).collect();
        if odd.len() != 1 {
            if well_defined.is_ok() {
                well_defined = Err(format!("character {i} of P has {} odd-multiplicity constituents", odd.len()));
            }
            continue;
        }
        correspondence.push(Correspondence {
            p_char: i,
            p_degree: irr_p.chars[i].degree,
            fixed_char: odd[0],
            fixed_degree: fo.irr.chars[odd[0]].degree,
            multiplicity: m[odd[0]],
        });
    }
    let images: BTreeSet<usize> = correspondence.iter().map(|c| c.fixed_char).collect();
    let bijective = if well_defined.is_ok() && images.len() == correspondence.len() && images.len() == fo.irr.len() {
        Ok(format!("π is a bijection from {} σ-invariant characters onto Irr(C_P(σ))", invariant.len()))
    } else {
        Err(format!(
            "{} σ-invariant characters, {} distinct images, {} irreducibles of C_P(σ)",
            invariant.len(),
            images.len(),
            fo.irr.len()
        ))
    };

    // X(λ) against the images of the constituents of ξ̂_λ
    let mut support_check: std::result::Result<(), String> = Ok(());
    for s in &decomposition.supports {
        let o = pt.dual_orbit_of(s.rep);
        let xi = pt.xi_hat_all(o);
        let f: Vec<Complex<f64>> = gc.classes().iter().map(|c| cyclo_to_complex(&xi[g.code(c.rep) as usize])).collect();
        let m = decompose_numeric(&f, &irr_p)?;
        let image: BTreeSet<usize> = correspondence
            .iter()
            .filter(|c| m[c.p_char] != 0)
            .map(|c| c.fixed_char)
            .collect();
        let support: BTreeSet<usize> = s.members.iter().copied().collect();
        if image != support {
            support_check = Err(format!("λ = {}: X(λ) = {support:?}, image {image:?}", s.rep));
            break;
        }
    }
    let checks = vec![
        CheckResult::from_outcome(
            "odd_multiplicity",
            well_defined.map(|_| "each σ-invariant character has a unique odd-multiplicity constituent".into()),
        ),
        CheckResult::from_outcome("bijection", bijective),
        CheckResult::from_outcome(
            "supports",
            support_check.map(|_| "X(λ) is the image of the constituents of ξ̂_λ for every orbit".into()),
        ),
    ];
    Ok(GlaubermanReport {
        p_order: g.order() as u64,
        fixed_order: ft.order(),
        seed,
        irr_p: irr_p.len(),
        irr_sigma: invariant.len(),
        irr_fixed: fo.irr.len(),
        correspondence,
        decomposition,
        checks,
    })
}
