use std::collections::HashMap;

use crate::algebra::{AlgebraElement, FixedStructures, GroupElement, Involution, NilpotentAlgebra};
use crate::arith::fp::{decode, encode, span_codes};
use crate::arith::{Cyclo, FpMatrix};
use crate::error::{Error, Result};

/// λ(a) = ζ_p^{T·a} for an F_p-functional T on J (in the F_p coordinates of J).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCharacter {
    pub functional: Vec<u32>,
}

impl LinearCharacter {
    pub fn trivial(alg: &NilpotentAlgebra) -> Self {
        LinearCharacter {
            functional: vec![0; alg.fp_dim()],
        }
    }

    pub fn from_code(alg: &NilpotentAlgebra, code: u64) -> Self {
        LinearCharacter {
            functional: decode(code, alg.fp_dim(), alg.f().p()),
        }
    }

    pub fn code(&self, p: u32) -> u64 {
        encode(&self.functional, p)
    }

    pub fn is_trivial(&self) -> bool {
        self.functional.iter().all(|&t| t == 0)
    }

    /// T·a mod p for an F_p coordinate vector a.
    pub fn exponent(&self, a: &[u32], p: u32) -> u32 {
        dot(&self.functional, a, p)
    }

    pub fn eval(&self, alg: &NilpotentAlgebra, a: &AlgebraElement) -> Cyclo {
        let p = alg.f().p();
        Cyclo::zeta_pow(p, self.exponent(&alg.fp_vector(a), p))
    }

    /// λ^c, i.e. the functional scaled by c.
    pub fn power(&self, c: u32, p: u32) -> Self {
        LinearCharacter {
            functional: self.functional.iter().map(|&t| ((t as u64 * c as u64) % p as u64) as u32).collect(),
        }
    }

    /// T∘M, the functional of a ↦ λ(M a).
    pub fn compose(&self, m: &FpMatrix) -> Self {
        LinearCharacter {
            functional: m.transpose().apply(&self.functional),
        }
    }
}

#[inline]
pub(crate) fn dot(t: &[u32], a: &[u32], p: u32) -> u32 {
    let mut s: u64 = 0;
    for (x, y) in t.iter().zip(a) {
        s += *x as u64 * *y as u64;
    }
    (s % p as u64) as u32
}

pub fn eval_char(alg: &NilpotentAlgebra, lambda: &LinearCharacter, a: &AlgebraElement) -> Cyclo {
    lambda.eval(alg, a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualAction {
    Left,
    Right,
    Sigma,
    Twisted,
}

/// F_p matrix of a ↦ x⁻¹a.
pub fn left_map(alg: &NilpotentAlgebra, x: &GroupElement) -> FpMatrix {
    let xi = alg.inv(x).matrix;
    alg.fp_map(|a| xi.mul(a, alg.f())).expect("P acts on J")
}

/// F_p matrix of a ↦ a x⁻¹.
pub fn right_map(alg: &NilpotentAlgebra, x: &GroupElement) -> FpMatrix {
    let xi = alg.inv(x).matrix;
    alg.fp_map(|a| a.mul(&xi, alg.f())).expect("P acts on J")
}

/// F_p matrix of a ↦ x a σ(x), so that (x⁻¹λx^σ)(a) = λ(x a σ(x)).
pub fn twisted_dual_map(sigma: &Involution, x: &GroupElement) -> FpMatrix {
    let alg = sigma.algebra();
    let f = alg.f();
    let sx = sigma.sigma(&x.matrix);
    alg.fp_map(|a| x.matrix.mul(a, f).mul(&sx, f)).expect("σ-twisted action preserves J")
}

pub fn dual_act(
    kind: DualAction,
    x: Option<&GroupElement>,
    lambda: &LinearCharacter,
    sigma: Option<&Involution>,
    alg: &NilpotentAlgebra,
) -> Result<LinearCharacter> {
    let need_x = || x.ok_or_else(|| Error::InvalidAction("this action needs a group element".into()));
    let need_s = || sigma.ok_or_else(|| Error::InvalidAction("this action needs an involution".into()));
    Ok(match kind {
        DualAction::Left => lambda.compose(&left_map(alg, need_x()?)),
        DualAction::Right => lambda.compose(&right_map(alg, need_x()?)),
        DualAction::Sigma => lambda.compose(need_s()?.action_fp()),
        DualAction::Twisted => lambda.compose(&twisted_dual_map(need_s()?, need_x()?)),
    })
}

/// C_J(σ)° = [J,σ]^⊥ inside J°, enumerated with sorted codes.
#[derive(Clone, Debug)]
pub struct FixedDual {
    basis: Vec<Vec<u32>>,
    codes: Vec<u64>,
    lookup: HashMap<u64, usize>,
}

impl FixedDual {
    pub fn compute(fixed: &FixedStructures, cap: u64) -> Result<Self> {
        let sigma = fixed.sigma();
        let alg = sigma.algebra();
        let p = alg.f().p();
        let dk = alg.fp_dim();
        // T ⟂ [J,σ]  ⇔  T·c = 0 for every complement basis vector c
        let rows: Vec<Vec<u32>> = fixed.complement_basis().to_vec();
        let basis = if rows.is_empty() {
            FpMatrix::identity(p, dk).column_space()
        } else {
            FpMatrix::from_rows(p, dk, &rows).kernel()
        };
        let size = (p as u64).checked_pow(basis.len() as u32).unwrap_or(u64::MAX);
        if size > cap {
            return Err(Error::CapExceeded { size, cap });
        }
        let codes = span_codes(&basis, dk, p);
        // re-check: λ^σ = λ for each element
        let st = sigma.action_fp().transpose();
        for &c in &codes {
            let t = decode(c, dk, p);
            if st.apply(&t) != t {
                return Err(Error::violation("orthogonal of [J,sigma] is not sigma-fixed", format!("functional {c}")));
            }
        }
        let lookup = codes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Ok(FixedDual { basis, codes, lookup })
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn local_index(&self, code: u64) -> Option<usize> {
        self.lookup.get(&code).copied()
    }
}

/// All λ with λ^σ = λ.
pub fn fixed_dual(fixed: &FixedStructures, cap: u64) -> Result<Vec<LinearCharacter>> {
    let alg = fixed.sigma().algebra();
    let fd = FixedDual::compute(fixed, cap)?;
    Ok(fd.codes().iter().map(|&c| LinearCharacter::from_code(alg, c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaloisField;
    use std::sync::Arc;

    #[test]
    fn full_dual_sum_is_regular() {
        let f = Arc::new(GaloisField::new(3, 1).unwrap());
        let j = NilpotentAlgebra::upper_triangular(f, 2).unwrap();
        for a in 0..3u64 {
            let el = j.element(a);
            let mut s = Cyclo::zero(3);
            for c in 0..3u64 {
                s = s.add(&LinearCharacter::from_code(&j, c).eval(&j, &el));
            }
            let expect = if a == 0 { 3 } else { 0 };
            assert_eq!(s, Cyclo::from_int(3, expect));
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let f = Arc::new(GaloisField::new(3, 1).unwrap());
        let j = NilpotentAlgebra::upper_triangular(f, 3).unwrap();
        let lam = LinearCharacter::from_code(&j, 17);
        let one = j.one();
        assert_eq!(dual_act(DualAction::Left, Some(&one), &lam, None, &j).unwrap(), lam);
        assert_eq!(dual_act(DualAction::Right, Some(&one), &lam, None, &j).unwrap(), lam);
        assert!(dual_act(DualAction::Sigma, None, &lam, None, &j).is_err());
    }
}
