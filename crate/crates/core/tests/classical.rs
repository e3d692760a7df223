use supertab::algebra::spec::AlgebraSpec;
use supertab::arith::Fq;
use supertab::classical::{classical_report, BasicPair, ClassicalData, ClassicalReport, XiMode};
use supertab::sct::CheckSelection;

fn instance(json: &str) -> supertab::algebra::spec::Instance {
    AlgebraSpec::parse(json).unwrap().instantiate().unwrap()
}

fn report(json: &str) -> ClassicalReport {
    classical_report(&instance(json), &CheckSelection::all(), 1 << 20, 4096).unwrap()
}

fn assert_clean(r: &ClassicalReport) {
    for c in &r.checks {
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn sp4_theorems() {
    let r = report(r#"{"preset":"sp","m":2,"p":3}"#);
    assert_clean(&r);
    assert_eq!(r.fixed_order, 81);
    assert_eq!(r.invariant_pairs, 17);
    assert!(r.pairs.iter().all(|p| p.ratio.is_some_and(|n| n >= 1)));
    // corner entry: Q_D has index q², matching the hook reading
    let corner = r.pairs.iter().find(|p| p.pair.positions() == vec![(1, 4)]).unwrap();
    assert_eq!(corner.q_index, 9);
}

#[test]
fn sp4_elem2_degrees_fall_short_of_stated() {
    let r = report(r#"{"preset":"sp","m":2,"p":3}"#);
    let got: Vec<(usize, Option<i64>, u64)> = r.elem2.iter().map(|e| (e.i, e.degree, e.stated_degree)).collect();
    assert_eq!(got, vec![(1, Some(3), 9), (1, Some(3), 9), (2, Some(1), 3), (2, Some(1), 3)]);
    assert!(r.elem2.iter().all(|e| e.irreducible));
    assert!(r.elem2.iter().all(|e| e.varsigma_multiple == e.degree.map(|d| d as u64)));
}

#[test]
fn o_odd_and_o_plus() {
    for json in [r#"{"preset":"o-odd","m":1,"p":3}"#, r#"{"preset":"o+","m":2,"p":3}"#] {
        let r = report(json);
        assert_clean(&r);
        assert!(r.elem2.is_empty(), "orthogonal kinds have no anti-diagonal pairs");
    }
}

#[test]
fn unitary_n3() {
    let r = report(r#"{"preset":"u","n":3,"p":3,"k":2}"#);
    assert_eq!(r.fixed_order, 27);
    // the anti-diagonal factor Q_{1,3} = {x12 = 0} is not σ-stable
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
    assert_eq!(failed, vec!["q_subgroups"]);
    // so ξ on C_P is the sum of the two degree-3 characters
    assert_eq!(r.elem2.len(), 2);
    for e in &r.elem2 {
        assert_eq!((e.i, e.j, e.degree, e.stated_degree), (1, 3, Some(9), 3));
        assert!(!e.irreducible);
        assert_eq!(e.varsigma_multiple, Some(1));
    }
}

#[test]
fn o_plus_m1_only_empty_pair() {
    let r = report(r#"{"preset":"o+","m":1,"p":3}"#);
    assert_eq!(r.invariant_pairs, 1);
    assert!(r.pairs[0].pair.is_empty());
    assert_clean(&r);
}

#[test]
fn empty_pair_is_trivial_in_both_modes() {
    let data = ClassicalData::build(&instance(r#"{"preset":"sp","m":1,"p":3}"#), 1 << 20, 4096).unwrap();
    let e = BasicPair::empty();
    for mode in [XiMode::Induced, XiMode::Product] {
        assert!(data.xi_fixed(&e, mode).unwrap().iter().all(|c| c.is_one()));
    }
    assert_eq!(data.proportionality(&e).unwrap(), 1);
}

#[test]
fn non_invariant_pair_rejected() {
    let data = ClassicalData::build(&instance(r#"{"preset":"sp","m":2,"p":3}"#), 1 << 20, 4096).unwrap();
    let d = BasicPair::single(1, 2, Fq(1), 4).unwrap();
    assert!(data.xi_fixed(&d, XiMode::Induced).is_err());
}

#[test]
fn ut_preset_is_not_classical() {
    let inst = instance(r#"{"preset":"ut","n":3,"p":3}"#);
    assert!(classical_report(&inst, &CheckSelection::all(), 1 << 20, 4096).is_err());
}
