//! Integer combinations Σ c_e ζ^e (e = 0..p-1) kept unreduced, for the
//! orbit sums that make up every supercharacter value.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::Cyclo;

pub type Counts = Vec<i64>;

/// Σ_{μ ∈ members} ζ^{μ·a}; `vecs` holds functionals with stride `dk`.
pub fn orbit_sum(members: &[usize], vecs: &[u32], dk: usize, a: &[u32], p: u32) -> Counts {
    let mut c = vec![0i64; p as usize];
    for &m in members {
        let t = &vecs[m * dk..(m + 1) * dk];
        let mut s: u64 = 0;
        for (x, y) in t.iter().zip(a) {
            s += *x as u64 * *y as u64;
        }
        c[(s % p as u64) as usize] += 1;
    }
    c
}

/// Representative of the class modulo constant vectors (last entry zero).
pub fn normalize(c: &[i64]) -> Counts {
    let last = *c.last().unwrap_or(&0);
    c.iter().map(|x| x - last).collect()
}

pub fn same(a: &[i64], b: &[i64]) -> bool {
    let d = a[0] - b[0];
    a.iter().zip(b).all(|(x, y)| x - y == d)
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == a[0])
}

/// Rational value when the combination lies in Q.
pub fn rational(a: &[i64]) -> Option<i64> {
    if a.len() == 1 {
        return Some(a[0]);
    }
    let rest = a[1];
    if a[1..].iter().all(|&x| x == rest) {
        Some(a[0] - rest)
    } else {
        None
    }
}

pub fn add_assign(acc: &mut [i64], a: &[i64]) {
    for (x, y) in acc.iter_mut().zip(a) {
        *x += y;
    }
}

pub fn scale(a: &[i64], k: i64) -> Counts {
    a.iter().map(|x| x * k).collect()
}

/// a · conj(b).
pub fn mul_conj(a: &[i64], b: &[i64]) -> Counts {
    let p = a.len();
    let mut out = vec![0i64; p];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[(i + p - j) % p] += x * y;
        }
    }
    out
}

pub fn mul(a: &[i64], b: &[i64]) -> Counts {
    let p = a.len();
    let mut out = vec![0i64; p];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[(i + j) % p] += x * y;
        }
    }
    out
}

pub fn to_cyclo(a: &[i64], p: u32) -> Cyclo {
    Cyclo::from_exponent_counts(p, a)
}

pub fn to_cyclo_scaled(a: &[i64], p: u32, c: &BigRational) -> Cyclo {
    to_cyclo(a, p).scale(c)
}

pub fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
