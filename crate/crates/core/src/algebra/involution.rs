use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::matrix::Mat;
use super::nilpotent::{AlgebraElement, GroupElement, NilpotentAlgebra};
use crate::arith::fp::{decode, encode};
use crate::arith::{Fq, FpMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvolutionKind {
    First,
    Second,
}

/// σ_u(a) = u⁻¹ a* u on M_n(F_q), validated against an algebra J.
#[derive(Clone, Debug)]
pub struct Involution {
    algebra: Arc<NilpotentAlgebra>,
    u: Mat,
    u_inv: Mat,
    kind: InvolutionKind,
    frob: u32,
    action_fp: FpMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaSpace {
    Algebra,
    Group,
}

impl Involution {
    pub fn build(u: Mat, kind: InvolutionKind, algebra: Arc<NilpotentAlgebra>) -> Result<Self> {
        let f = algebra.f();
        let n = algebra.n();
        if u.n() != n {
            return Err(Error::Dimension(format!("u is {}x{}, J lives in M_{n}", u.n(), u.n())));
        }
        let frob = match kind {
            InvolutionKind::First => 0,
            InvolutionKind::Second => {
                if f.k() % 2 != 0 {
                    return Err(Error::OddDegreeSecondKind(f.k()));
                }
                f.k() / 2
            }
        };
        let u_inv = u.inverse(f).ok_or(Error::SingularMatrix)?;
        let mut inv = Involution {
            algebra: algebra.clone(),
            u,
            u_inv,
            kind,
            frob,
            action_fp: FpMatrix::identity(f.p(), 0),
        };
        let us = inv.star(&inv.u);
        match kind {
            InvolutionKind::First => {
                if us != inv.u && us != inv.u.neg(f) {
                    return Err(Error::SymmetryViolated("u^T != ±u".into()));
                }
            }
            InvolutionKind::Second => {
                if us != inv.u {
                    return Err(Error::SymmetryViolated("u* != u".into()));
                }
            }
        }
        // σ∘σ = id on an F_p-basis of M_n
        let p_pow: Vec<Fq> = (0..f.k()).map(|l| Fq(f.p().pow(l))).collect();
        for i in 0..n {
            for j in 0..n {
                for &c in &p_pow {
                    let m = Mat::unit(n, i, j).scale(c, f);
                    if inv.sigma(&inv.sigma(&m)) != m {
                        return Err(Error::SymmetryViolated("sigma is not an involution".into()));
                    }
                }
            }
        }
        for pos in 0..algebra.fp_dim() {
            let b = algebra.fp_basis_matrix(pos);
            if algebra.coords_of(&inv.sigma(&b)).is_none() {
                return Err(Error::NotInvariant(pos / f.k() as usize));
            }
        }
        inv.action_fp = algebra.fp_map(|a| inv.sigma(a).neg(f))?;
        Ok(inv)
    }

    pub fn algebra(&self) -> &Arc<NilpotentAlgebra> {
        &self.algebra
    }

    pub fn u(&self) -> &Mat {
        &self.u
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    /// |k^σ|: q for the first kind, p^{k/2} for the second.
    pub fn fixed_field_order(&self) -> u32 {
        let f = self.algebra.f();
        match self.kind {
            InvolutionKind::First => f.q(),
            InvolutionKind::Second => f.p().pow(f.k() / 2),
        }
    }

    /// ᾱ: the field automorphism induced by σ.
    pub fn bar(&self, x: Fq) -> Fq {
        self.algebra.f().frobenius(x, self.frob)
    }

    /// a* = aᵀ or Frob_q(a)ᵀ.
    pub fn star(&self, a: &Mat) -> Mat {
        if self.frob == 0 {
            a.transpose()
        } else {
            a.frobenius(self.frob, self.algebra.f()).transpose()
        }
    }

    /// σ(a) = u⁻¹ a* u.
    pub fn sigma(&self, a: &Mat) -> Mat {
        let f = self.algebra.f();
        self.u_inv.mul(&self.star(a), f).mul(&self.u, f)
    }

    /// a^σ = −σ(a).
    pub fn act_algebra(&self, a: &AlgebraElement) -> AlgebraElement {
        let m = self.sigma(&self.algebra.matrix(a)).neg(self.algebra.f());
        self.algebra.coords_of(&m).expect("sigma preserves J")
    }

    /// x^σ = σ(x⁻¹).
    pub fn act_group(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: self.sigma(&self.algebra.inv(x).matrix),
        }
    }

    /// F_p-matrix of a ↦ a^σ on J.
    pub fn action_fp(&self) -> &FpMatrix {
        &self.action_fp
    }

    /// Code of a^σ from the code of a.
    pub fn act_code(&self, code: u64) -> u64 {
        let p = self.algebra.f().p();
        let v = decode(code, self.algebra.fp_dim(), p);
        encode(&self.action_fp.apply(&v), p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaArg {
    Algebra(AlgebraElement),
    Group(GroupElement),
}

pub fn sigma_act(space: SigmaSpace, sigma: &Involution, arg: &SigmaArg) -> Result<SigmaArg> {
    match (space, arg) {
        (SigmaSpace::Algebra, SigmaArg::Algebra(a)) => Ok(SigmaArg::Algebra(sigma.act_algebra(a))),
        (SigmaSpace::Group, SigmaArg::Group(x)) => Ok(SigmaArg::Group(sigma.act_group(x))),
        _ => Err(Error::Parse("argument does not match the requested space".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaloisField;

    fn ut(n: usize) -> Arc<NilpotentAlgebra> {
        let f = Arc::new(GaloisField::new(3, 1).unwrap());
        Arc::new(NilpotentAlgebra::upper_triangular(f, n).unwrap())
    }

    #[test]
    fn antidiagonal_on_ut2() {
        let j = ut(2);
        let mut u = Mat::zero(2);
        u.set(0, 1, Fq::ONE);
        u.set(1, 0, Fq::ONE);
        let s = Involution::build(u, InvolutionKind::First, j.clone()).unwrap();
        assert_eq!(s.sigma(&Mat::unit(2, 0, 1)), Mat::unit(2, 0, 1));
    }

    #[test]
    fn identity_leaves_ut2() {
        let j = ut(2);
        let e = Involution::build(Mat::identity(2), InvolutionKind::First, j).unwrap_err();
        assert_eq!(e, Error::NotInvariant(0));
    }

    #[test]
    fn symplectic_n2() {
        let j = ut(2);
        let f = j.f();
        let mut u = Mat::zero(2);
        u.set(0, 1, Fq::ONE);
        u.set(1, 0, f.neg(Fq::ONE));
        let s = Involution::build(u, InvolutionKind::First, j.clone()).unwrap();
        assert_eq!(s.sigma(&Mat::unit(2, 0, 1)), Mat::unit(2, 0, 1).neg(f));
    }

    #[test]
    fn bad_u() {
        let j = ut(2);
        let e = Involution::build(Mat::zero(2), InvolutionKind::First, j.clone()).unwrap_err();
        assert_eq!(e, Error::SingularMatrix);
        let mut u = Mat::identity(2);
        u.set(0, 1, Fq::ONE);
        let e = Involution::build(u, InvolutionKind::First, j.clone()).unwrap_err();
        assert!(matches!(e, Error::SymmetryViolated(_)));
        let e = Involution::build(Mat::identity(2), InvolutionKind::Second, j).unwrap_err();
        assert_eq!(e, Error::OddDegreeSecondKind(1));
    }
}
