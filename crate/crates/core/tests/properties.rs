use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use proptest::prelude::*;

use supertab::algebra::spec::{AlgebraSpec, Instance};
use supertab::arith::{rat, Cyclo, Fq, GaloisField};

fn field(p: u32, k: u32) -> Arc<GaloisField> {
    Arc::new(GaloisField::new(p, k).unwrap())
}

fn fields() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![Just((3, 1)), Just((3, 2)), Just((3, 3)), Just((5, 1)), Just((5, 2)), Just((7, 2))]
}

/// Instances are built once per spec and shared across cases.
fn instance(json: &'static str) -> Instance {
    static BUILT: OnceLock<Mutex<HashMap<&'static str, Instance>>> = OnceLock::new();
    let mut m = BUILT.get_or_init(Default::default).lock().unwrap();
    m.entry(json)
        .or_insert_with(|| AlgebraSpec::parse(json).unwrap().instantiate().unwrap())
        .clone()
}

fn cyclo(p: u32) -> impl Strategy<Value = Cyclo> {
    prop::collection::vec((-20i64..20, 1i64..7), (p - 1) as usize)
        .prop_map(move |c| Cyclo::from_coeffs(p, c.into_iter().map(|(n, d)| rat(n, d)).collect()).unwrap())
}

proptest! {
    #[test]
    fn theta_is_additive((p, k) in fields(), x in any::<u64>(), y in any::<u64>()) {
        let f = field(p, k);
        let q = f.q() as u64;
        let (x, y) = (f.element(x % q).unwrap(), f.element(y % q).unwrap());
        prop_assert_eq!(f.theta(f.add(x, y)), f.theta(x).mul(&f.theta(y)));
    }

    #[test]
    fn theta_is_fixed_by_the_half_frobenius(p in prop_oneof![Just(3u32), Just(5), Just(7)], x in any::<u64>()) {
        let f = field(p, 2);
        let x = f.element(x % f.q() as u64).unwrap();
        prop_assert_eq!(f.theta(f.frobenius(x, 1)), f.theta(x));
    }

    #[test]
    fn frobenius_is_a_field_automorphism((p, k) in fields(), x in any::<u64>(), y in any::<u64>(), r in 0u32..4) {
        let f = field(p, k);
        let q = f.q() as u64;
        let (x, y) = (f.element(x % q).unwrap(), f.element(y % q).unwrap());
        prop_assert_eq!(f.frobenius(f.mul(x, y), r), f.mul(f.frobenius(x, r), f.frobenius(y, r)));
        prop_assert_eq!(f.frobenius(f.add(x, y), r), f.add(f.frobenius(x, r), f.frobenius(y, r)));
    }

    #[test]
    fn field_codes_round_trip((p, k) in fields(), x in any::<u64>()) {
        let f = field(p, k);
        let code = x % f.q() as u64;
        let e = f.element(code).unwrap();
        prop_assert_eq!(e.code() as u64, code);
        prop_assert_eq!(f.from_coeffs(&f.coeffs(e)).unwrap(), e);
    }

    #[test]
    fn cyclotomic_arithmetic_is_exact(a in cyclo(5), b in cyclo(5), c in cyclo(5)) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(Cyclo::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn cayley_round_trip(code in any::<u64>()) {
        let inst = instance(r#"{"preset":"ut","n":4,"p":3}"#);
        let alg = &inst.algebra;
        let a = alg.element(code % 3u64.pow(alg.dim() as u32));
        prop_assert_eq!(alg.psi(&alg.phi(&a)), a.clone());
        let x = alg.group_element(&a);
        prop_assert_eq!(alg.phi(&alg.psi(&x)), x);
    }

    #[test]
    fn cayley_commutes_with_sigma(code in any::<u64>(), which in 0usize..3) {
        let json = [
            r#"{"preset":"sp","m":2,"p":3}"#,
            r#"{"preset":"o-odd","m":2,"p":3}"#,
            r#"{"preset":"u","n":3,"p":3}"#,
        ][which];
        let inst = instance(json);
        let (alg, s) = (&inst.algebra, inst.sigma.as_ref().unwrap());
        let q = alg.f().q() as u64;
        let a = alg.element(code % q.pow(alg.dim() as u32));
        prop_assert_eq!(alg.phi(&s.act_algebra(&a)), s.act_group(&alg.phi(&a)));
        // fixed points correspond
        let x = alg.phi(&a);
        prop_assert_eq!(s.act_group(&x) == x, s.act_algebra(&a) == a);
    }

    #[test]
    fn sigma_is_an_involution(code in any::<u64>()) {
        let inst = instance(r#"{"preset":"sp","m":2,"p":5}"#);
        let (alg, s) = (&inst.algebra, inst.sigma.as_ref().unwrap());
        let a = alg.element(code % 5u64.pow(alg.dim() as u32));
        prop_assert_eq!(s.act_algebra(&s.act_algebra(&a)), a);
    }
}

#[test]
fn theta_is_nontrivial() {
    for (p, k) in [(3, 1), (3, 2), (5, 1), (5, 3)] {
        let f = field(p, k);
        assert!(f.elements().any(|x| !f.theta(x).is_one()));
        assert!(f.theta(Fq::ZERO).is_one());
    }
}

#[test]
fn frobenius_multiplicative_exhaustive_gf9() {
    let f = field(3, 2);
    for x in f.elements() {
        for y in f.elements() {
            assert_eq!(f.frobenius(f.mul(x, y), 1), f.mul(f.frobenius(x, 1), f.frobenius(y, 1)));
        }
    }
}
