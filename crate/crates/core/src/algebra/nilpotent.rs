use std::collections::VecDeque;
use std::sync::Arc;

use super::matrix::Mat;
use crate::arith::fp::{decode, encode};
use crate::arith::{Fq, FpMatrix, GaloisField};
use crate::error::{Error, Result};

/// Default enumeration cap (elements).
pub const DEFAULT_CAP: u64 = 1 << 24;

/// Generation by elementary elements is re-checked at construction up to this size.
pub const GENERATION_CHECK_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub enum AlgebraSource {
    Explicit(Vec<Mat>),
    /// Strictly upper-triangular matrices, basis e_ij (i<j) in lexicographic order.
    UpperTriangular,
}

/// Element of J in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    pub coords: Vec<Fq>,
}

/// Element 1 + a of the algebra group P = 1 + J.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub matrix: Mat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Mul,
    Inv,
}

/// A nilpotent subalgebra J of M_n(F_q) with a fixed basis.
#[derive(Clone, Debug)]
pub struct NilpotentAlgebra {
    field: Arc<GaloisField>,
    n: usize,
    basis: Vec<Mat>,
    pivots: Vec<usize>,
    pivot_inv: Vec<Vec<Fq>>,
    structure: Vec<Vec<Vec<Fq>>>,
    nilpotency_class: usize,
    upper_triangular: bool,
    generation_checked: bool,
}

/// Row reduction over GF(q). Returns reduced nonzero rows and their pivot columns.
pub(crate) fn fq_rref(mut rows: Vec<Vec<Fq>>, f: &GaloisField) -> (Vec<Vec<Fq>>, Vec<usize>) {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let s = f.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(s, *x);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let m = rows[i][c];
            for j in 0..cols {
                let v = f.sub(rows[i][j], f.mul(m, rows[r][j]));
                rows[i][j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

impl NilpotentAlgebra {
    pub fn build(source: AlgebraSource, field: Arc<GaloisField>, n: usize) -> Result<Self> {
        let f = &*field;
        let (basis, upper) = match source {
            AlgebraSource::UpperTriangular => {
                let mut b = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        b.push(Mat::unit(n, i, j));
                    }
                }
                (b, true)
            }
            AlgebraSource::Explicit(b) => {
                for m in &b {
                    if m.n() != n {
                        return Err(Error::Dimension(format!(
                            "basis matrix is {}x{}, expected {n}x{n}",
                            m.n(),
                            m.n()
                        )));
                    }
                    if m.entries().iter().any(|x| x.0 >= f.q()) {
                        return Err(Error::Dimension("entry outside the field".into()));
                    }
                }
                (b, false)
            }
        };
        let d = basis.len();

        // independence and pivot positions
        let rows: Vec<Vec<Fq>> = basis.iter().map(|m| m.entries().to_vec()).collect();
        let (_, pivots) = if d == 0 {
            (Vec::new(), Vec::new())
        } else {
            fq_rref(rows, f)
        };
        if pivots.len() < d {
            return Err(Error::LinearlyDependent);
        }
        let mut sq = Mat::zero(d);
        for (i, b) in basis.iter().enumerate() {
            for (t, &pos) in pivots.iter().enumerate() {
                sq.set(i, t, b.entries()[pos]);
            }
        }
        let inv = sq.inverse(f).ok_or(Error::LinearlyDependent)?;
        let pivot_inv = (0..d).map(|i| (0..d).map(|j| inv.get(i, j)).collect()).collect();

        let mut alg = NilpotentAlgebra {
            field: field.clone(),
            n,
            basis,
            pivots,
            pivot_inv,
            structure: Vec::new(),
            nilpotency_class: 1,
            upper_triangular: upper,
            generation_checked: false,
        };

        // each basis element must be nilpotent
        for (i, b) in alg.basis.iter().enumerate() {
            let mut pw = b.clone();
            for _ in 1..n.max(1) {
                pw = pw.mul(b, f);
            }
            if !pw.is_zero() {
                return Err(Error::NotNilpotent(format!("basis element {i} has b^n != 0")));
            }
        }

        // closure
        let mut structure = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let prod = alg.basis[i].mul(&alg.basis[j], f);
                let c = alg.coords_of(&prod).ok_or(Error::NotClosed(i, j))?;
                structure[i][j] = c.coords;
            }
        }
        alg.structure = structure;

        // J^c = 0 by iterated span products
        let mut span: Vec<Mat> = alg.basis.clone();
        let mut c = 1;
        while !span.is_empty() {
            if c > n {
                return Err(Error::NotNilpotent(format!("J^{c} != 0")));
            }
            let prods: Vec<Vec<Fq>> = span
                .iter()
                .flat_map(|s| alg.basis.iter().map(move |b| (s, b)))
                .map(|(s, b)| s.mul(b, f).entries().to_vec())
                .collect();
            let (reduced, _) = if prods.is_empty() {
                (Vec::new(), Vec::new())
            } else {
                fq_rref(prods, f)
            };
            span = reduced
                .into_iter()
                .map(|r| {
                    let mut m = Mat::zero(n);
                    for (idx, v) in r.into_iter().enumerate() {
                        m.set(idx / n, idx % n, v);
                    }
                    m
                })
                .collect();
            c += 1;
        }
        alg.nilpotency_class = c;

        if let Ok(size) = alg.size(GENERATION_CHECK_LIMIT) {
            alg.verify_generation(size)?;
            alg.generation_checked = true;
        }
        Ok(alg)
    }

    /// ut_n(F_q).
    pub fn upper_triangular(field: Arc<GaloisField>, n: usize) -> Result<Self> {
        Self::build(AlgebraSource::UpperTriangular, field, n)
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn f(&self) -> &GaloisField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// dim over F_q.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// dim over F_p.
    pub fn fp_dim(&self) -> usize {
        self.basis.len() * self.field.k() as usize
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// Coordinates of b_i·b_j.
    pub fn structure(&self, i: usize, j: usize) -> &[Fq] {
        &self.structure[i][j]
    }

    /// Smallest c with J^c = 0.
    pub fn nilpotency_class(&self) -> usize {
        self.nilpotency_class
    }

    pub fn is_upper_triangular_preset(&self) -> bool {
        self.upper_triangular
    }

    /// Whether the elementary generating set was checked to generate P.
    pub fn generation_checked(&self) -> bool {
        self.generation_checked
    }

    /// Basis index of e_{i,j} (0-based) when J = ut_n.
    pub fn ut_index(&self, i: usize, j: usize) -> Option<usize> {
        if !self.upper_triangular || i >= j || j >= self.n {
            return None;
        }
        Some(i * self.n - i * (i + 1) / 2 + (j - i - 1))
    }

    /// |J| = q^d, or a cap error.
    pub fn size(&self, cap: u64) -> Result<u64> {
        let q = self.field.q() as u64;
        let mut s: u64 = 1;
        for _ in 0..self.dim() {
            s = s.checked_mul(q).ok_or(Error::CapExceeded { size: u64::MAX, cap })?;
            if s > cap {
                return Err(Error::CapExceeded { size: s, cap });
            }
        }
        Ok(s)
    }

    pub fn matrix(&self, a: &AlgebraElement) -> Mat {
        let f = &*self.field;
        let mut m = Mat::zero(self.n);
        for (c, b) in a.coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            m = m.add(&b.scale(*c, f), f);
        }
        m
    }

    /// Coordinates of a matrix lying in J, or `None`.
    pub fn coords_of(&self, m: &Mat) -> Option<AlgebraElement> {
        let f = &*self.field;
        if self.upper_triangular {
            for i in 0..self.n {
                for j in 0..=i {
                    if !m.get(i, j).is_zero() {
                        return None;
                    }
                }
            }
            let mut coords = Vec::with_capacity(self.dim());
            for i in 0..self.n {
                for j in (i + 1)..self.n {
                    coords.push(m.get(i, j));
                }
            }
            return Some(AlgebraElement { coords });
        }
        let d = self.dim();
        let vals: Vec<Fq> = self.pivots.iter().map(|&p| m.entries()[p]).collect();
        let coords: Vec<Fq> = (0..d)
            .map(|j| {
                (0..d).fold(Fq::ZERO, |acc, t| {
                    f.add(acc, f.mul(vals[t], self.pivot_inv[t][j]))
                })
            })
            .collect();
        let a = AlgebraElement { coords };
        if &self.matrix(&a) == m {
            Some(a)
        } else {
            None
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coords: vec![Fq::ZERO; self.dim()],
        }
    }

    /// Element with the given code Σ coords[i]·q^i.
    pub fn element(&self, code: u64) -> AlgebraElement {
        let q = self.field.q() as u64;
        let mut c = code;
        let coords = (0..self.dim())
            .map(|_| {
                let v = Fq((c % q) as u32);
                c /= q;
                v
            })
            .collect();
        AlgebraElement { coords }
    }

    pub fn code(&self, a: &AlgebraElement) -> u64 {
        let q = self.field.q() as u64;
        a.coords.iter().rev().fold(0u64, |acc, c| acc * q + c.0 as u64)
    }

    /// F_p coordinates: position i·k + l holds the t^l-coefficient of coords[i].
    pub fn fp_vector(&self, a: &AlgebraElement) -> Vec<u32> {
        decode(self.code(a), self.fp_dim(), self.field.p())
    }

    pub fn from_fp_vector(&self, v: &[u32]) -> AlgebraElement {
        self.element(encode(v, self.field.p()))
    }

    pub fn matrix_of_code(&self, code: u64) -> Mat {
        self.matrix(&self.element(code))
    }

    pub fn code_of_matrix(&self, m: &Mat) -> Option<u64> {
        self.coords_of(m).map(|a| self.code(&a))
    }

    /// Matrix of the F_p-basis vector t^l·b_i at position i·k + l.
    pub fn fp_basis_matrix(&self, pos: usize) -> Mat {
        let k = self.field.k() as usize;
        let (i, l) = (pos / k, pos % k);
        let mut coords = vec![Fq::ZERO; self.dim()];
        coords[i] = Fq(self.field.p().pow(l as u32));
        self.matrix(&AlgebraElement { coords })
    }

    /// F_p-matrix of an F_p-linear map J → J given on matrices.
    pub fn fp_map(&self, map: impl Fn(&Mat) -> Mat) -> Result<FpMatrix> {
        let dk = self.fp_dim();
        let mut cols = Vec::with_capacity(dk);
        for pos in 0..dk {
            let img = map(&self.fp_basis_matrix(pos));
            let a = self
                .coords_of(&img)
                .ok_or_else(|| Error::Dimension(format!("image of F_p basis vector {pos} leaves J")))?;
            cols.push(self.fp_vector(&a));
        }
        Ok(FpMatrix::from_columns(self.field.p(), dk, &cols))
    }

    pub fn one(&self) -> GroupElement {
        GroupElement {
            matrix: Mat::identity(self.n),
        }
    }

    /// 1 + a.
    pub fn group_element(&self, a: &AlgebraElement) -> GroupElement {
        GroupElement {
            matrix: self.matrix(a).add_identity(Fq::ONE, &self.field),
        }
    }

    pub fn group_element_of_code(&self, code: u64) -> GroupElement {
        self.group_element(&self.element(code))
    }

    /// Code of x − 1 for x ∈ P.
    pub fn group_code(&self, x: &GroupElement) -> Option<u64> {
        let a = x.matrix.add_identity(self.field.neg(Fq::ONE), &self.field);
        self.code_of_matrix(&a)
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: x.matrix.mul(&y.matrix, &self.field),
        }
    }

    pub fn inv(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: x.matrix.unipotent_inverse(&self.field),
        }
    }

    pub fn group_op(&self, kind: GroupOp, x: &GroupElement, y: Option<&GroupElement>) -> Result<GroupElement> {
        let r = match kind {
            GroupOp::Mul => {
                let y = y.ok_or_else(|| Error::Parse("mul needs two operands".into()))?;
                self.mul(x, y)
            }
            GroupOp::Inv => self.inv(x),
        };
        debug_assert!(self.group_code(&r).is_some(), "result left P");
        Ok(r)
    }

    /// Elementary generators 1 + α·b_i ordered by (i, α).
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        for i in 0..self.dim() {
            for alpha in self.field.nonzero() {
                let mut coords = vec![Fq::ZERO; self.dim()];
                coords[i] = alpha;
                gens.push(self.group_element(&AlgebraElement { coords }));
            }
        }
        gens
    }

    /// BFS closure of the elementary generators must reach all of P.
    fn verify_generation(&self, size: u64) -> Result<()> {
        let p = self.field.p();
        let maps: Vec<(FpMatrix, Vec<u32>)> = self
            .generators()
            .iter()
            .map(|g| {
                let c = g.matrix.add_identity(self.field.neg(Fq::ONE), &self.field);
                let r = self.fp_map(|a| a.mul(&c, &self.field)).expect("J is closed");
                let cv = self.fp_vector(&self.coords_of(&c).expect("generator in P"));
                (r, cv)
            })
            .collect();
        let dk = self.fp_dim();
        let mut seen = vec![false; size as usize];
        seen[0] = true;
        let mut queue = VecDeque::from([0u64]);
        let mut count = 1u64;
        while let Some(code) = queue.pop_front() {
            let a = decode(code, dk, p);
            for (r, c) in &maps {
                let ra = r.apply(&a);
                let next: Vec<u32> = (0..dk).map(|t| (a[t] + ra[t] + c[t]) % p).collect();
                let nc = encode(&next, p);
                if !seen[nc as usize] {
                    seen[nc as usize] = true;
                    count += 1;
                    queue.push_back(nc);
                }
            }
        }
        if count != size {
            return Err(Error::GenerationFailure {
                found: count,
                expected: size,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, k: u32) -> Arc<GaloisField> {
        Arc::new(GaloisField::new(p, k).unwrap())
    }

    #[test]
    fn ut3_basics() {
        let j = NilpotentAlgebra::upper_triangular(gf(3, 1), 3).unwrap();
        assert_eq!(j.dim(), 3);
        assert_eq!(j.basis()[0], Mat::unit(3, 0, 1));
        assert_eq!(j.basis()[1], Mat::unit(3, 0, 2));
        assert_eq!(j.basis()[2], Mat::unit(3, 1, 2));
        assert_eq!(j.ut_index(1, 2), Some(2));
        assert!(j.generation_checked());
    }

    #[test]
    fn ut4_nilpotency_class() {
        let j = NilpotentAlgebra::upper_triangular(gf(3, 1), 4).unwrap();
        assert_eq!(j.dim(), 6);
        assert_eq!(j.nilpotency_class(), 4);
    }

    #[test]
    fn validation_errors_are_distinct() {
        let f = gf(3, 1);
        let mut m = Mat::unit(2, 0, 1);
        m.set(1, 0, Fq::ONE);
        let e = NilpotentAlgebra::build(AlgebraSource::Explicit(vec![m]), f.clone(), 2).unwrap_err();
        assert!(matches!(e, Error::NotNilpotent(_)));

        let e12 = Mat::unit(2, 0, 1);
        let e = NilpotentAlgebra::build(
            AlgebraSource::Explicit(vec![e12.clone(), e12.scale(Fq(2), &f)]),
            f.clone(),
            2,
        )
        .unwrap_err();
        assert_eq!(e, Error::LinearlyDependent);

        // span{e12, e23} misses e13 = e12·e23
        let e = NilpotentAlgebra::build(
            AlgebraSource::Explicit(vec![Mat::unit(3, 0, 1), Mat::unit(3, 1, 2)]),
            f,
            3,
        )
        .unwrap_err();
        assert_eq!(e, Error::NotClosed(0, 1));
    }

    #[test]
    fn explicit_basis_coordinates() {
        let f = gf(5, 1);
        // J spanned by e12 + e13 and e13 inside M_3
        let mut b0 = Mat::unit(3, 0, 1);
        b0.set(0, 2, Fq::ONE);
        let b1 = Mat::unit(3, 0, 2);
        let j = NilpotentAlgebra::build(AlgebraSource::Explicit(vec![b0, b1]), f, 3).unwrap();
        for code in 0..25 {
            let m = j.matrix_of_code(code);
            assert_eq!(j.code_of_matrix(&m), Some(code));
        }
        assert_eq!(j.code_of_matrix(&Mat::unit(3, 1, 2)), None);
    }
}
