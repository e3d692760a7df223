use super::matrix::Mat;
use super::nilpotent::{AlgebraElement, GroupElement, NilpotentAlgebra};
use crate::arith::{Fq, GaloisField};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CayleyDirection {
    Phi,
    Psi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CayleyArg {
    Algebra(AlgebraElement),
    Group(GroupElement),
}

/// Φ(a) = (1+a)(1−a)⁻¹ for nilpotent a.
pub fn phi_matrix(a: &Mat, f: &GaloisField) -> Mat {
    let inv = Mat::neumann_inverse(a, f);
    a.add_identity(Fq::ONE, f).mul(&inv, f)
}

/// Ψ(x) = (x−1)(x+1)⁻¹ for unipotent x.
pub fn psi_matrix(x: &Mat, f: &GaloisField) -> Mat {
    let b = x.add_identity(f.neg(Fq::ONE), f);
    let half = f.inv(f.from_int(2)).expect("p is odd");
    // (2 + b)⁻¹ = ½·(1 + b/2)⁻¹ = ½·Σ (−b/2)^k
    let series = Mat::neumann_inverse(&b.scale(f.neg(half), f), f);
    b.mul(&series, f).scale(half, f)
}

impl NilpotentAlgebra {
    pub fn phi(&self, a: &AlgebraElement) -> GroupElement {
        GroupElement {
            matrix: phi_matrix(&self.matrix(a), self.f()),
        }
    }

    pub fn psi(&self, x: &GroupElement) -> AlgebraElement {
        self.coords_of(&psi_matrix(&x.matrix, self.f()))
            .expect("Cayley transform maps P into J")
    }

    /// Code of Φ(a) − 1 from the code of a.
    pub fn phi_code(&self, a: u64) -> u64 {
        let x = phi_matrix(&self.matrix_of_code(a), self.f());
        self.group_code(&GroupElement { matrix: x }).expect("Φ maps J into P")
    }

    /// Code of Ψ(x) from the code of x − 1.
    pub fn psi_code(&self, x: u64) -> u64 {
        let g = self.group_element_of_code(x);
        self.code(&self.psi(&g))
    }
}

pub fn cayley(alg: &NilpotentAlgebra, dir: CayleyDirection, arg: &CayleyArg) -> Result<CayleyArg> {
    match (dir, arg) {
        (CayleyDirection::Phi, CayleyArg::Algebra(a)) => Ok(CayleyArg::Group(alg.phi(a))),
        (CayleyDirection::Psi, CayleyArg::Group(x)) => Ok(CayleyArg::Algebra(alg.psi(x))),
        _ => Err(Error::Parse("phi takes an algebra element, psi a group element".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn phi_of_e12() {
        let f = Arc::new(GaloisField::new(3, 1).unwrap());
        let j = NilpotentAlgebra::upper_triangular(f.clone(), 2).unwrap();
        let e12 = AlgebraElement { coords: vec![Fq::ONE] };
        let x = j.phi(&e12);
        let mut expect = Mat::identity(2);
        expect.set(0, 1, Fq(2));
        assert_eq!(x.matrix, expect);
        assert_eq!(j.psi(&x), e12);
        assert_eq!(j.phi(&j.zero()), j.one());
    }
}
