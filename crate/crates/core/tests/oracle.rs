use std::time::Instant;

use supertab::algebra::spec::AlgebraSpec;
use supertab::oracle::{glauberman, DEFAULT_SEED, ORACLE_CAP};
use supertab::sct::{context, FixedTheory, PTheory};

fn theories(spec: &str) -> (PTheory, FixedTheory) {
    let inst = AlgebraSpec::parse(spec).unwrap().instantiate().unwrap();
    let ctx = context(&inst, 1 << 20).unwrap();
    (PTheory::build(ctx.clone()).unwrap(), FixedTheory::build(ctx).unwrap())
}

#[test]
fn glauberman_reports() {
    for spec in [
        r#"{"preset":"o-odd","m":1,"p":3}"#,
        r#"{"preset":"sp","m":2,"p":3}"#,
        r#"{"preset":"u","n":3,"p":3}"#,
    ] {
        let t = Instant::now();
        let (pt, ft) = theories(spec);
        let r = glauberman(&pt, &ft, ORACLE_CAP, DEFAULT_SEED).unwrap();
        println!("{spec} {:?} irr_p {} sigma {} fixed {}", t.elapsed(), r.irr_p, r.irr_sigma, r.irr_fixed);
        println!("{:?}\n{:?}", r.checks, r.decomposition.checks);
        assert!(r.all_passed());
    }
}
