use std::path::Path;
use std::process::{Command, Output};

fn supertab(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_supertab"));
    cmd.args(args).env_remove("SUPERTAB_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("SUPERTAB_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn o_minus_is_unsupported() {
    let o = supertab(&["verify", "--preset", "o-minus", "--m", "1", "--p", "3"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unsupported preset"), "{}", stderr(&o));
}

#[test]
fn bad_flag_is_usage_error() {
    let o = supertab(&["verify", "--bogus"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = supertab(&["verify", "--p", "3"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = supertab(&["verify", "--preset", "sp", "--m", "1", "--p", "3", "--checks", "nonsense"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_sp4_passes() {
    let o = supertab(&["verify", "--preset", "sp", "--m", "2", "--p", "3"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 81);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn o_odd_table_has_one_row_per_invariant_pair() {
    let o = supertab(&["table", "--preset", "o-odd", "--m", "1", "--p", "3", "--format", "csv"], None);
    assert_eq!(o.status.code(), Some(0));
    let rows = stdout(&o).lines().count() - 1;
    let c = supertab(&["classical", "--preset", "o-odd", "--m", "1", "--p", "3"], None);
    assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));
    let v: serde_json::Value = serde_json::from_str(&stdout(&c)).unwrap();
    assert_eq!(rows as u64, v["invariant_pairs"].as_u64().unwrap());
    assert_eq!(rows, 3);
}

#[test]
fn cap_violation_exits_2() {
    let o = supertab(&["verify", "--preset", "sp", "--m", "2", "--p", "3", "--cap", "10"], None);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn failing_check_exits_3() {
    // odd unitary anti-diagonal: Q_D is not σ-stable
    let o = supertab(&["classical", "--preset", "u", "--n", "3", "--p", "3", "--checks", "q_subgroups"], None);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table", "--preset", "sp", "--m", "1", "--p", "3"];
    let a = supertab(&args, Some(dir.path()));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let b = supertab(&args, Some(dir.path()));
    assert_eq!(a.stdout, b.stdout);
    // a different p is a different key
    supertab(&["table", "--preset", "sp", "--m", "1", "--p", "5"], Some(dir.path()));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn corrupt_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--preset", "sp", "--m", "1", "--p", "3", "--cache-dir", dir.path().to_str().unwrap()];
    let a = supertab(&args, None);
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "{ not json").unwrap();
    let b = supertab(&args, None);
    assert_eq!(b.status.code(), Some(0));
    assert!(stderr(&b).contains("warning"));
    assert_eq!(a.stdout, b.stdout);
    let c = supertab(&args, None);
    assert!(!stderr(&c).contains("warning"));
}

#[test]
fn cached_sp4_table_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("sp4.json");
    let cache = dir.path().join("cache");
    let t = table.to_str().unwrap();
    let o = supertab(&["table", "--preset", "sp", "--m", "2", "--p", "3", "--out", t], Some(&cache));
    assert_eq!(o.status.code(), Some(0));
    let o = supertab(&["table", "--preset", "sp", "--m", "2", "--p", "3", "--out", t], Some(&cache));
    assert_eq!(o.status.code(), Some(0));
    let v = supertab(&["verify", "--table", t], None);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["orbits", "--preset", "o-odd", "--m", "1", "--p", "3"][..],
        &["glauberman", "--preset", "o-odd", "--m", "1", "--p", "3"][..],
        &["verify", "--preset", "u", "--n", "3", "--p", "3"][..],
    ] {
        let a = supertab(args, None);
        let b = supertab(args, None);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn reversed_generators_give_same_orbits() {
    let a = supertab(&["orbits", "--preset", "sp", "--m", "2", "--p", "3"], None);
    let b = supertab(&["orbits", "--preset", "sp", "--m", "2", "--p", "3", "--reverse"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
