use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FromPrimitive, Num, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient scalars usable in [`Cyclotomic`].
pub trait Coefficient: Clone + PartialEq + Num + Neg<Output = Self> + FromPrimitive {}

impl<T: Clone + PartialEq + Num + Neg<Output = T> + FromPrimitive> Coefficient for T {}

/// Σ c_i ζ_p^i in the reduced power basis {1, ζ, …, ζ^{p−2}}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic<T> {
    p: u32,
    coeffs: Vec<T>,
}

/// Exact cyclotomic numbers with arbitrary-precision rational coefficients.
pub type Cyclo = Cyclotomic<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Mul,
    Conj,
    Scale,
}

/// Right operand of [`cyclo_op`].
pub enum CycloArg<'a, T> {
    Value(&'a Cyclotomic<T>),
    Scalar(&'a T),
    None,
}

impl<T: Coefficient> Cyclotomic<T> {
    pub fn zero(p: u32) -> Self {
        Cyclotomic {
            p,
            coeffs: vec![T::zero(); (p - 1) as usize],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_scalar(p, T::one())
    }

    pub fn from_scalar(p: u32, c: T) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = c;
        z
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_scalar(p, T::from_i64(n).expect("integer fits the coefficient type"))
    }

    /// ζ_p^e.
    pub fn zeta_pow(p: u32, e: u32) -> Self {
        let mut counts = vec![0i64; p as usize];
        counts[(e % p) as usize] = 1;
        Self::from_exponent_counts(p, &counts)
    }

    /// Σ_e counts[e]·ζ^e for e in 0..p.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let last = counts[(p - 1) as usize];
        Cyclotomic {
            p,
            coeffs: counts[..(p - 1) as usize]
                .iter()
                .map(|&c| T::from_i64(c - last).expect("integer fits the coefficient type"))
                .collect(),
        }
    }

    /// Builds from reduced coefficients; `coeffs.len()` must be p−1.
    pub fn from_coeffs(p: u32, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != (p - 1) as usize {
            return Err(Error::Dimension(format!(
                "Q(zeta_{p}) needs {} coefficients, got {}",
                p - 1,
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { p, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the number lies in Q.
    pub fn as_rational(&self) -> Option<T> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "cyclotomic operands over different fields");
    }

    fn from_full(p: u32, mut full: Vec<T>) -> Self {
        let last = full.pop().expect("length p");
        Cyclotomic {
            p,
            coeffs: full.into_iter().map(|c| c - last.clone()).collect(),
        }
    }

    fn full(&self) -> Vec<T> {
        let mut v = self.coeffs.clone();
        v.push(T::zero());
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Cyclotomic {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.p as usize;
        let mut full = vec![T::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let idx = (i + j) % p;
                full[idx] = full[idx].clone() + a.clone() * b.clone();
            }
        }
        Self::from_full(self.p, full)
    }

    pub fn scale(&self, c: &T) -> Self {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Complex conjugation ζ^i ↦ ζ^{p−i}.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let full = self.full();
        let mut out = vec![T::zero(); p];
        for (i, c) in full.into_iter().enumerate() {
            out[(p - i) % p] = c;
        }
        Self::from_full(self.p, out)
    }

    pub fn to_complex<F: Float>(&self) -> num_complex::Complex<F>
    where
        T: ToPrimitive,
    {
        let p = F::from(self.p).unwrap();
        let two_pi = F::from(2.0 * std::f64::consts::PI).unwrap();
        let mut re = F::zero();
        let mut im = F::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = F::from(c.to_f64().unwrap_or(f64::NAN)).unwrap();
            let ang = two_pi * F::from(i).unwrap() / p;
            re = re + c * ang.cos();
            im = im + c * ang.sin();
        }
        num_complex::Complex::new(re, im)
    }
}

/// Exact arithmetic dispatch.
pub fn cyclo_op<T: Coefficient>(
    kind: CycloOp,
    a: &Cyclotomic<T>,
    b: CycloArg<'_, T>,
) -> Result<Cyclotomic<T>> {
    let missing = || Error::Parse(format!("{kind:?} needs a matching second operand"));
    match (kind, b) {
        (CycloOp::Add, CycloArg::Value(b)) => Ok(a.add(b)),
        (CycloOp::Add, CycloArg::Scalar(c)) => Ok(a.add(&Cyclotomic::from_scalar(a.p, c.clone()))),
        (CycloOp::Mul, CycloArg::Value(b)) => Ok(a.mul(b)),
        (CycloOp::Mul, CycloArg::Scalar(c)) | (CycloOp::Scale, CycloArg::Scalar(c)) => {
            Ok(a.scale(c))
        }
        (CycloOp::Conj, _) => Ok(a.conj()),
        _ => Err(missing()),
    }
}

impl<I> fmt::Display for Cyclotomic<Ratio<I>>
where
    I: Clone + Integer + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{}/{}", c.numer(), c.denom())?;
            match i {
                0 => {}
                1 => f.write_str("*z")?,
                _ => write!(f, "*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Cyclo {
    /// Parses the serialized form, taking p from the number of terms.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad cyclotomic literal {s:?}"));
        let mut coeffs = Vec::new();
        for (i, term) in s.split('+').enumerate() {
            let num = match i {
                0 => term,
                1 => term.strip_suffix("*z").ok_or_else(bad)?,
                _ => term.strip_suffix(&format!("*z^{i}")).ok_or_else(bad)?,
            };
            let (n, d) = num.split_once('/').ok_or_else(bad)?;
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            coeffs.push(BigRational::new(n, d));
        }
        let p = coeffs.len() as u32 + 1;
        if p < 3 || !crate::arith::field::is_prime(p) {
            return Err(bad());
        }
        Cyclotomic::from_coeffs(p, coeffs)
    }
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Cyclo::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Exact rational from integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_relation() {
        let s = Cyclo::one(3).add(&Cyclo::zeta_pow(3, 1)).add(&Cyclo::zeta_pow(3, 2));
        assert!(s.is_zero());
        assert!(Cyclo::zeta_pow(3, 1).mul(&Cyclo::zeta_pow(3, 2)).is_one());
    }

    #[test]
    fn formatting_round_trip() {
        let z = Cyclo::zeta_pow(5, 4).scale(&rat(-3, 2));
        let s = z.to_string();
        assert_eq!(s, "3/2+3/2*z+3/2*z^2+3/2*z^3");
        assert_eq!(Cyclo::parse(&s).unwrap(), z);
        assert_eq!(Cyclo::one(3).to_string(), "1/1+0/1*z");
    }

    #[test]
    fn generic_over_machine_rationals() {
        let a: Cyclotomic<num_rational::Rational64> = Cyclotomic::zeta_pow(7, 3);
        assert!(a.mul(&a.conj()).is_one());
    }
}
