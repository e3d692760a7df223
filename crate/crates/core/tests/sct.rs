use supertab::algebra::spec::AlgebraSpec;
use supertab::oracle::ORACLE_CAP;
use supertab::sct::{build_and_verify, CheckSelection, CheckStatus, SupercharacterTable};

fn run(spec: &str) -> (SupercharacterTable, supertab::sct::SCTReport) {
    let inst = AlgebraSpec::parse(spec).unwrap().instantiate().unwrap();
    build_and_verify(&inst, &CheckSelection::all(), 1 << 20, ORACLE_CAP).unwrap()
}

fn assert_all_pass(r: &supertab::sct::SCTReport) {
    for c in &r.checks {
        assert_ne!(c.status, CheckStatus::Fail, "{c:?}");
    }
}

#[test]
fn ut3_table_has_eleven_rows() {
    let (t, r) = run(r#"{"preset":"ut","n":3,"p":3}"#);
    assert_eq!(t.rows.len(), 11);
    assert_eq!(t.columns.iter().map(|c| c.size).sum::<u64>(), 27);
    assert_all_pass(&r);
    assert!(r.checks.iter().all(|c| c.status == CheckStatus::Pass));
}

#[test]
fn sp4_fixed_table() {
    let (t, r) = run(r#"{"preset":"sp","m":2,"p":3}"#);
    assert_eq!(t.order, 81);
    assert_all_pass(&r);
}

#[test]
fn sp2_fixed_group_is_ut2() {
    let (t, r) = run(r#"{"preset":"sp","m":1,"p":3}"#);
    assert_eq!(t.order, 3);
    assert_eq!(t.rows.len(), 3);
    assert_all_pass(&r);
}

#[test]
fn o_odd_and_o_plus_and_unitary() {
    for spec in [
        r#"{"preset":"o-odd","m":1,"p":3}"#,
        r#"{"preset":"o+","m":2,"p":3}"#,
        r#"{"preset":"u","n":3,"p":3}"#,
    ] {
        let (_, r) = run(spec);
        assert_all_pass(&r);
    }
}

#[test]
fn table_json_round_trip_reverifies() {
    let (t, _) = run(r#"{"preset":"sp","m":2,"p":3}"#);
    let back = SupercharacterTable::from_json(&t.to_json()).unwrap();
    assert_eq!(back, t);
    assert!(back.verify().all_passed());
}

#[test]
fn trivial_group() {
    let (t, r) = run(r#"{"preset":"ut","n":1,"p":3}"#);
    assert_eq!(t.rows.len(), 1);
    assert_eq!(t.columns.len(), 1);
    assert_all_pass(&r);
}
