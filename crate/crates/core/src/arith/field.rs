use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::cyclotomic::Cyclo;
use crate::error::{Error, Result};

/// Largest field order handled by the log/antilog tables.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Conway polynomials, coefficients low to high, leading 1 included.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

/// An element of GF(p^k), stored as the integer Σ c_i p^i of its
/// polynomial-basis coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^k) in a polynomial basis, with table-driven multiplication.
#[derive(Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    frob: Vec<u32>,
    trace: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.k, self.modulus)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m monic
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn digits(mut code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(k as usize);
    for _ in 0..k {
        v.push(code % p);
        code /= p;
    }
    v
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// True when the monic polynomial `m` (low to high) has no monic factor of
/// degree between 1 and deg(m)/2.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    if k == 0 || m[k] != 1 {
        return false;
    }
    for deg in 1..=k / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut f = digits(code as u32, p, deg as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_primitive_root(p: u32) -> u32 {
    (1..p)
        .find(|&g| {
            let mut x = 1u64;
            for e in 1..p {
                x = x * g as u64 % p as u64;
                if x == 1 {
                    return e == p - 1;
                }
            }
            false
        })
        .unwrap_or(1)
}

/// Deterministic modulus for GF(p^k): Conway polynomial when tabulated,
/// otherwise the least monic irreducible by little-endian code.
pub fn default_modulus(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![(p - least_primitive_root(p)) % p, 1];
    }
    if let Some((_, _, m)) = CONWAY.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
        return m.to_vec();
    }
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut m = digits(code as u32, p, k);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl GaloisField {
    /// GF(p^k) with the deterministic default modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::BadCharacteristic(p));
        }
        if k == 0 {
            return Err(Error::BadDegree);
        }
        Self::with_modulus(p, default_modulus(p, k))
    }

    /// GF(p^k) with an explicit monic irreducible modulus (low to high).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::BadCharacteristic(p));
        }
        if modulus.len() < 2 {
            return Err(Error::BadDegree);
        }
        if modulus.iter().any(|&c| c >= p) || !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus);
        }
        let k = (modulus.len() - 1) as u32;
        let q64 = (p as u64).pow(k);
        if q64 > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q64));
        }
        let q = q64 as u32;

        // find a primitive element and build exp/log tables
        let mut exp = vec![0u32; q as usize];
        let mut log = vec![0u32; q as usize];
        let start = if k > 1 { p } else { 1 };
        let mut found = false;
        for g in (start..q).chain(1..start) {
            let gd = digits(g, p, k);
            let mut cur = vec![0u32; k as usize];
            cur[0] = 1;
            let mut seen = vec![false; q as usize];
            let mut ok = true;
            for e in 0..(q - 1) {
                let c = undigits(&cur, p);
                if seen[c as usize] {
                    ok = false;
                    break;
                }
                seen[c as usize] = true;
                exp[e as usize] = c;
                log[c as usize] = e;
                cur = poly_mulmod(&cur, &gd, &modulus, p);
            }
            if ok && undigits(&cur, p) == 1 {
                found = true;
                break;
            }
        }
        assert!(found, "finite field multiplicative group is cyclic");

        let mut field = GaloisField {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            frob: Vec::new(),
            trace: Vec::new(),
        };
        field.frob = (0..q).map(|x| field.pow(Fq(x), p as u64).0).collect();
        field.trace = (0..q)
            .map(|x| {
                let mut acc = Fq::ZERO;
                let mut y = Fq(x);
                for _ in 0..k {
                    acc = field.add(acc, y);
                    y = Fq(field.frob[y.0 as usize]);
                }
                assert!(acc.0 < p, "trace lands in the prime field");
                acc.0
            })
            .collect();
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Field order p^k.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fq> {
        (1..self.q).map(Fq)
    }

    pub fn coeffs(&self, x: Fq) -> Vec<u32> {
        digits(x.0, self.p, self.k)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fq> {
        if c.len() != self.k as usize || c.iter().any(|&v| v >= self.p) {
            return Err(Error::Parse(format!("bad coefficient vector {c:?}")));
        }
        Ok(Fq(undigits(c, self.p)))
    }

    /// Checked conversion of a serialized code.
    pub fn element(&self, code: u64) -> Result<Fq> {
        if code >= self.q as u64 {
            return Err(Error::Parse(format!("{code} is not an element of GF({})", self.q)));
        }
        Ok(Fq(code as u32))
    }

    /// Image of an integer under Z → F_p ⊆ F_q.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u32)
    }

    /// The polynomial variable t (a field generator over F_p when k > 1).
    pub fn t(&self) -> Fq {
        if self.k > 1 {
            Fq(self.p)
        } else {
            Fq(self.exp[1])
        }
    }

    /// A fixed primitive element.
    pub fn primitive(&self) -> Fq {
        Fq(self.exp[1 % self.exp.len()])
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return Fq((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut r, mut pw) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            r += ((x % self.p + y % self.p) % self.p) * pw;
            x /= self.p;
            y /= self.p;
            pw *= self.p;
        }
        Fq(r)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        if self.k == 1 {
            return Fq((self.p - a.0) % self.p);
        }
        let (mut x, mut r, mut pw) = (a.0, 0u32, 1u32);
        while x > 0 {
            r += ((self.p - x % self.p) % self.p) * pw;
            x /= self.p;
            pw *= self.p;
        }
        Fq(r)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        if self.k == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % (self.q - 1);
        Fq(self.exp[e as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let e = (self.q - 1 - self.log[a.0 as usize]) % (self.q - 1);
        Ok(Fq(self.exp[e as usize]))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let l = (self.log[a.0 as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        Fq(self.exp[l as usize])
    }

    /// x^(p^r).
    pub fn frobenius(&self, x: Fq, r: u32) -> Fq {
        let mut y = x;
        for _ in 0..(r % self.k) {
            y = Fq(self.frob[y.0 as usize]);
        }
        y
    }

    /// Absolute trace GF(p^k) → F_p, as a residue in [0, p).
    #[inline]
    pub fn trace(&self, x: Fq) -> u32 {
        self.trace[x.0 as usize]
    }

    /// The additive character ϑ(x) = ζ_p^{Tr(x)}.
    pub fn theta(&self, x: Fq) -> Cyclo {
        Cyclo::zeta_pow(self.p, self.trace(x))
    }

    pub fn same_field(&self, other: &GaloisField) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

/// A field element bundled with its field, for checked arithmetic.
#[derive(Clone, Debug)]
pub struct FqElement {
    field: Arc<GaloisField>,
    value: Fq,
}

impl PartialEq for FqElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.value == other.value
    }
}

impl Eq for FqElement {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqOp {
    Add,
    Mul,
    Neg,
    Inv,
}

impl FqElement {
    pub fn new(field: Arc<GaloisField>, value: Fq) -> Result<Self> {
        field.element(value.0 as u64)?;
        Ok(FqElement { field, value })
    }

    pub fn from_coeffs(field: Arc<GaloisField>, coeffs: &[u32]) -> Result<Self> {
        let value = field.from_coeffs(coeffs)?;
        Ok(FqElement { field, value })
    }

    pub fn value(&self) -> Fq {
        self.value
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    /// Serialized form Σ coeffs[i]·p^i.
    pub fn to_int(&self) -> u64 {
        self.value.0 as u64
    }

    pub fn frobenius(&self, r: u32) -> Self {
        FqElement {
            field: self.field.clone(),
            value: self.field.frobenius(self.value, r),
        }
    }

    pub fn theta(&self) -> Cyclo {
        self.field.theta(self.value)
    }
}

/// Checked field arithmetic; binary operations require `y`.
pub fn fq_op(kind: FqOp, x: &FqElement, y: Option<&FqElement>) -> Result<FqElement> {
    let f = &x.field;
    let other = |y: Option<&FqElement>| -> Result<Fq> {
        let y = y.ok_or_else(|| Error::Parse("binary operation needs two operands".into()))?;
        if !f.same_field(&y.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(y.value)
    };
    let value = match kind {
        FqOp::Add => f.add(x.value, other(y)?),
        FqOp::Mul => f.mul(x.value, other(y)?),
        FqOp::Neg => f.neg(x.value),
        FqOp::Inv => f.inv(x.value)?,
    };
    Ok(FqElement {
        field: f.clone(),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = GaloisField::new(3, 1).unwrap();
        assert_eq!(f.add(Fq(2), Fq(2)), Fq(1));
        assert_eq!(f.inv(Fq(1)).unwrap(), Fq(1));
        assert_eq!(f.inv(Fq(0)), Err(Error::ZeroInverse));
        assert_eq!(f.trace(Fq(1)), 1);
    }

    #[test]
    fn rejects_even_and_composite() {
        assert_eq!(GaloisField::new(2, 1).unwrap_err(), Error::BadCharacteristic(2));
        assert_eq!(GaloisField::new(9, 1).unwrap_err(), Error::BadCharacteristic(9));
        assert_eq!(
            GaloisField::with_modulus(3, vec![2, 0, 1]).unwrap_err(),
            Error::ReducibleModulus
        );
    }

    #[test]
    fn conway_entries_are_primitive() {
        for &(p, k, m) in CONWAY {
            let f = GaloisField::with_modulus(p, m.to_vec()).unwrap();
            // t must have multiplicative order q - 1
            let t = f.t();
            let q = f.q() as u64;
            let mut x = Fq::ONE;
            let mut order = 0;
            for e in 1..q {
                x = f.mul(x, t);
                if x == Fq::ONE {
                    order = e;
                    break;
                }
            }
            assert_eq!(order, q - 1, "GF({p}^{k})");
        }
    }

    #[test]
    fn gf9_with_t2_plus_1() {
        let f = GaloisField::with_modulus(3, vec![1, 0, 1]).unwrap();
        let t = f.t();
        assert_eq!(f.frobenius(t, 1), f.neg(t));
        assert_eq!(f.trace(t), 0);
        assert!(f.theta(t).is_one());
    }

    #[test]
    fn checked_ops_reject_mismatch() {
        let a = Arc::new(GaloisField::new(3, 1).unwrap());
        let b = Arc::new(GaloisField::new(5, 1).unwrap());
        let x = FqElement::new(a, Fq(1)).unwrap();
        let y = FqElement::new(b, Fq(1)).unwrap();
        assert_eq!(fq_op(FqOp::Add, &x, Some(&y)).unwrap_err(), Error::FieldMismatch);
    }
}
