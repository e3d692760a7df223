//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::time::{Duration, Instant};

use num_complex::Complex;

use supertab::algebra::spec::{AlgebraSpec, Instance};
use supertab::classical::classical_report;
use supertab::dual::{ActionKind, Space};
use supertab::oracle::{decompose_fixed, glauberman, DEFAULT_SEED, ORACLE_CAP};
use supertab::sct::{build_and_verify, context, CheckSelection, FixedTheory, PTheory, SCTReport};

/// Multiplicities and the super2 reconstruction are compared within this.
const DECOMPOSITION_TOL: f64 = 1e-6;
/// Σ χ(1)² = |G| after rounding.
const DEGREE_SUM_TOL: f64 = 1e-8;

const CAP: u64 = 1 << 20;

const SP4: &str = r#"{"preset":"sp","m":2,"p":3}"#;
const O_ODD3: &str = r#"{"preset":"o-odd","m":1,"p":3}"#;
const O_PLUS4: &str = r#"{"preset":"o+","m":2,"p":3}"#;
const U3_GF9: &str = r#"{"preset":"u","n":3,"p":3,"k":2}"#;

type Outcome = Result<String, String>;

fn instance(json: &str) -> Instance {
    AlgebraSpec::parse(json).unwrap().instantiate().unwrap()
}

fn verify(json: &str) -> SCTReport {
    build_and_verify(&instance(json), &CheckSelection::all(), CAP, ORACLE_CAP).unwrap().1
}

fn theories(json: &str) -> (PTheory, FixedTheory) {
    let ctx = context(&instance(json), CAP).unwrap();
    (PTheory::build(ctx.clone()).unwrap(), FixedTheory::build(ctx).unwrap())
}

fn require(report: &SCTReport, names: &[&str]) -> Outcome {
    for &n in names {
        match report.check(n) {
            Some(c) if c.passed() => {}
            Some(c) => return Err(format!("{n}: {:?}", c.witness)),
            None => return Err(format!("{n} did not run")),
        }
    }
    Ok(String::new())
}

fn within(budget: Duration, start: Instant) -> Outcome {
    let t = start.elapsed();
    if t <= budget {
        Ok(format!("{:.2}s", t.as_secs_f64()))
    } else {
        Err(format!("took {:.2}s, budget {:.0}s", t.as_secs_f64(), budget.as_secs_f64()))
    }
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let (t, r) = build_and_verify(&instance(r#"{"preset":"ut","n":3,"p":3}"#), &CheckSelection::all(), CAP, ORACLE_CAP)
        .map_err(|e| e.to_string())?;
    if (t.order, r.superclasses, r.supercharacters) != (27, 11, 11) {
        return Err(format!("|P| = {}, {} superclasses, {} supercharacters", t.order, r.superclasses, r.supercharacters));
    }
    require(&r, &["degrees", "self_inner", "sch0", "lin1", "orthogonality", "regular_character"])?;
    let time = within(Duration::from_secs(1), start)?;
    Ok(format!("UT3(F3): 11 superclasses, 11 supercharacters, degrees, self-inner, sch0, lin1 exact ({time})"))
}

fn criterion2() -> Outcome {
    let mut notes = Vec::new();
    for (json, order) in [(SP4, Some(81)), (O_ODD3, Some(3)), (O_PLUS4, None), (U3_GF9, Some(27))] {
        let start = Instant::now();
        let r = verify(json);
        if let Some(o) = order {
            if r.order != o {
                return Err(format!("{json}: |C_P(σ)| = {}, expected {o}", r.order));
            }
        }
        if r.superclasses != r.supercharacters {
            return Err(format!("{json}: {} superclasses vs {} supercharacters", r.superclasses, r.supercharacters));
        }
        require(&r, &["s1_counts", "s3_constant", "orthogonality", "regular_character", "degrees"])
            .map_err(|e| format!("{json}: {e}"))?;
        let time = within(Duration::from_secs(60), start).map_err(|e| format!("{json}: {e}"))?;
        notes.push(format!("|C|={} k={} ({time})", r.order, r.superclasses));
    }
    Ok(notes.join("; "))
}

fn criterion3() -> Outcome {
    let mut notes = Vec::new();
    for json in [SP4, U3_GF9] {
        let start = Instant::now();
        let (_, ft) = theories(json);
        let (oracle, report) = decompose_fixed(&ft, ORACLE_CAP, DEFAULT_SEED).map_err(|e| e.to_string())?;
        if !report.all_passed() {
            return Err(format!("{json}: {:?}", report.checks));
        }
        let irr = &oracle.irr;
        let sum: f64 = irr.chars.iter().map(|c| (c.degree as f64).powi(2)).sum();
        if (sum - irr.order as f64).abs() > DEGREE_SUM_TOL {
            return Err(format!("{json}: Σ χ(1)² = {sum}, |G| = {}", irr.order));
        }
        // ς_λ = Σ_{χ ∈ X(λ)} χ(1) χ on every class
        let mut worst = 0f64;
        for (o, s) in report.supports.iter().enumerate() {
            let exact = ft.varsigma_all(o);
            for (c, class) in oracle.classes.classes().iter().enumerate() {
                let rebuilt: Complex<f64> = s.members.iter().map(|&i| irr.chars[i].values[c] * irr.chars[i].degree as f64).sum();
                worst = worst.max((exact[class.rep].to_complex::<f64>() - rebuilt).norm());
            }
        }
        if worst > DECOMPOSITION_TOL {
            return Err(format!("{json}: reconstruction error {worst:e}"));
        }
        let time = within(Duration::from_secs(120), start).map_err(|e| format!("{json}: {e}"))?;
        notes.push(format!("|C|={} {} irreducibles, max error {worst:.1e} ({time})", report.order, irr.len()));
    }
    Ok(notes.join("; "))
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let (pt, ft) = theories(O_ODD3);
    let r = glauberman(&pt, &ft, ORACLE_CAP, DEFAULT_SEED).map_err(|e| e.to_string())?;
    if ft.order() != 3 {
        return Err(format!("|C_P(σ)| = {}", ft.order()));
    }
    if !r.all_passed() {
        return Err(format!("{:?} {:?}", r.checks, r.decomposition.checks));
    }
    let time = within(Duration::from_secs(10), start)?;
    Ok(format!("{} σ-invariant characters of P onto {} of C_P(σ), supports match ({time})", r.irr_sigma, r.irr_fixed))
}

fn criterion5() -> Outcome {
    let start = Instant::now();
    let names = ["census", "fixed_superclasses", "fixed_supercharacters", "hxd", "basic2_p", "xi_modes", "elem1", "proportionality"];
    let sel = CheckSelection::parse_among(&names.join(","), &[&names]).unwrap();
    let r = classical_report(&instance(SP4), &sel, CAP, ORACLE_CAP).map_err(|e| e.to_string())?;
    for c in &r.checks {
        if !c.passed() {
            return Err(format!("{}: {:?}", c.name, c.witness));
        }
    }
    if r.checks.len() != names.len() {
        return Err(format!("{} of {} checks ran", r.checks.len(), names.len()));
    }
    if let Some(p) = r.pairs.iter().find(|p| !p.ratio.is_some_and(|n| n >= 1)) {
        return Err(format!("ratio {:?} for {:?}", p.ratio, p.pair));
    }
    let time = within(Duration::from_secs(120), start)?;
    Ok(format!("{} σ-invariant basic pairs, all theorems exact ({time})", r.invariant_pairs))
}

fn criterion6() -> Outcome {
    let sel = CheckSelection::parse_among("elem2_audit", &[&["elem2_audit"]]).unwrap();
    let r = classical_report(&instance(SP4), &sel, CAP, ORACLE_CAP).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for i in [1, 2] {
        let entries: Vec<_> = r.elem2.iter().filter(|e| e.i == i).collect();
        if entries.is_empty() {
            return Err(format!("no anti-diagonal entry for i = {i}"));
        }
        for e in entries {
            let d = e.degree.ok_or_else(|| format!("degree missing for i = {i}"))?;
            rows.push(format!(
                "i={} α={} ξ(1)={} stated {} ⟨ξ,ξ⟩={}{}",
                e.i,
                e.alpha,
                d,
                e.stated_degree,
                e.inner,
                if e.degree_matches { "" } else { " MISMATCH" }
            ));
        }
    }
    for row in &rows {
        println!("    {row}");
    }
    Ok(format!("audit ran on {} entries", rows.len()))
}

fn criterion7() -> Outcome {
    for json in [SP4, O_ODD3, O_PLUS4, U3_GF9] {
        let a = serde_json::to_string(&verify(json)).unwrap();
        let b = serde_json::to_string(&verify(json)).unwrap();
        if a != b {
            return Err(format!("{json}: reports differ"));
        }
        let ctx = context(&instance(json), CAP).unwrap();
        for (space, action) in [
            (Space::Algebra, ActionKind::TwoSided),
            (Space::Dual, ActionKind::TwoSided),
            (Space::FixedAlgebra, ActionKind::Twisted),
            (Space::FixedDual, ActionKind::Twisted),
        ] {
            let fwd = ctx.orbits_ordered(space, action, false).unwrap();
            let rev = ctx.orbits_ordered(space, action, true).unwrap();
            if fwd != rev {
                return Err(format!("{json}: {space:?} partition depends on generator order"));
            }
        }
    }
    Ok("reports byte-identical, partitions unchanged by reversed generators on all four presets".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("P-level regression", criterion1),
        ("fixed-group axioms", criterion2),
        ("irreducible decomposition", criterion3),
        ("Glauberman correspondence", criterion4),
        ("classical-group theorems", criterion5),
        ("elementary anti-diagonal audit", criterion6),
        ("determinism", criterion7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("PASS {} {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
