use std::collections::HashMap;
use std::sync::Arc;

use super::involution::Involution;
use crate::arith::fp::{decode, span_codes};
use crate::arith::FpMatrix;
use crate::error::{Error, Result};

/// C_J(σ), the complement [J,σ], and the enumerated fixed group C_P(σ) = Φ(C_J(σ)).
#[derive(Clone, Debug)]
pub struct FixedStructures {
    sigma: Arc<Involution>,
    fixed_basis: Vec<Vec<u32>>,
    complement_basis: Vec<Vec<u32>>,
    elements: Vec<u64>,
    lookup: HashMap<u64, usize>,
    group_codes: Vec<u64>,
}

impl FixedStructures {
    pub fn compute(sigma: Arc<Involution>, cap: u64) -> Result<Self> {
        let alg = sigma.algebra().clone();
        let p = alg.f().p();
        let dk = alg.fp_dim();
        let s = sigma.action_fp();
        let id = FpMatrix::identity(p, dk);
        let fixed_basis = s.sub(&id).kernel();
        let complement_basis = id.sub(s).column_space();

        let mut cols = fixed_basis.clone();
        cols.extend(complement_basis.iter().cloned());
        if fixed_basis.len() + complement_basis.len() != dk
            || FpMatrix::from_columns(p, dk, &cols).rank() != dk
        {
            return Err(Error::violation(
                "J = C_J(sigma) + [J,sigma] is not a direct sum",
                format!("dims {} + {} vs {dk}", fixed_basis.len(), complement_basis.len()),
            ));
        }

        let size = (p as u64)
            .checked_pow(fixed_basis.len() as u32)
            .ok_or(Error::CapExceeded { size: u64::MAX, cap })?;
        if size > cap {
            return Err(Error::CapExceeded { size, cap });
        }
        let elements = span_codes(&fixed_basis, dk, p);
        let lookup: HashMap<u64, usize> = elements.iter().enumerate().map(|(i, &c)| (c, i)).collect();

        let mut group_codes = Vec::with_capacity(elements.len());
        for &a in &elements {
            let x = alg.phi(&alg.element(a));
            if sigma.act_group(&x) != x {
                return Err(Error::violation(
                    "Phi(C_J(sigma)) element is not sigma-fixed",
                    format!("a = {a}"),
                ));
            }
            group_codes.push(alg.group_code(&x).expect("Phi lands in P"));
        }
        Ok(FixedStructures {
            sigma,
            fixed_basis,
            complement_basis,
            elements,
            lookup,
            group_codes,
        })
    }

    pub fn sigma(&self) -> &Arc<Involution> {
        &self.sigma
    }

    /// F_p-basis of C_J(σ) (F_p-coordinate vectors).
    pub fn fixed_basis(&self) -> &[Vec<u32>] {
        &self.fixed_basis
    }

    /// F_p-basis of [J,σ].
    pub fn complement_basis(&self) -> &[Vec<u32>] {
        &self.complement_basis
    }

    pub fn fp_dim(&self) -> usize {
        self.fixed_basis.len()
    }

    /// |C_J(σ)| = |C_P(σ)|.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Sorted codes of C_J(σ); the local index of an element is its position.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn local_index(&self, code: u64) -> Option<usize> {
        self.lookup.get(&code).copied()
    }

    pub fn contains(&self, code: u64) -> bool {
        self.lookup.contains_key(&code)
    }

    /// Group code (of Φ(a) − 1) for each local index.
    pub fn group_codes(&self) -> &[u64] {
        &self.group_codes
    }

    /// F_p vector of the element at a local index.
    pub fn fp_vector(&self, local: usize) -> Vec<u32> {
        let alg = self.sigma.algebra();
        decode(self.elements[local], alg.fp_dim(), alg.f().p())
    }
}
