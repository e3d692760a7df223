use std::fmt;

use crate::arith::{Fq, GaloisField};
use crate::error::{Error, Result};

/// Square matrix over GF(q); arithmetic takes the field explicitly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    e: Vec<Fq>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Mat {
            n,
            e: vec![Fq::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    /// e_{i,j} with 0-based indices.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, Fq::ONE);
        m
    }

    /// Row-major integer-encoded entries.
    pub fn from_codes(n: usize, codes: &[u64], field: &GaloisField) -> Result<Self> {
        if codes.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                codes.len()
            )));
        }
        let e = codes
            .iter()
            .map(|&c| field.element(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat { n, e })
    }

    pub fn codes(&self) -> Vec<u64> {
        self.e.iter().map(|x| x.0 as u64).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Fq] {
        &self.e
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.e[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.e[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn add(&self, o: &Mat, f: &GaloisField) -> Mat {
        Mat {
            n: self.n,
            e: self.e.iter().zip(&o.e).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, o: &Mat, f: &GaloisField) -> Mat {
        Mat {
            n: self.n,
            e: self.e.iter().zip(&o.e).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn neg(&self, f: &GaloisField) -> Mat {
        Mat {
            n: self.n,
            e: self.e.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: Fq, f: &GaloisField) -> Mat {
        Mat {
            n: self.n,
            e: self.e.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    pub fn add_identity(&self, c: Fq, f: &GaloisField) -> Mat {
        let mut m = self.clone();
        for i in 0..self.n {
            m.set(i, i, f.add(m.get(i, i), c));
        }
        m
    }

    pub fn mul(&self, o: &Mat, f: &GaloisField) -> Mat {
        let n = self.n;
        let mut r = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = f.add(r.get(i, j), f.mul(a, b));
                    r.set(i, j, v);
                }
            }
        }
        r
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise x ↦ x^(p^r).
    pub fn frobenius(&self, r: u32, f: &GaloisField) -> Mat {
        Mat {
            n: self.n,
            e: self.e.iter().map(|&a| f.frobenius(a, r)).collect(),
        }
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self, f: &GaloisField) -> Option<Mat> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for c in 0..n {
            let pr = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if pr != c {
                for j in 0..n {
                    let (x, y) = (a.get(c, j), a.get(pr, j));
                    a.set(c, j, y);
                    a.set(pr, j, x);
                    let (x, y) = (inv.get(c, j), inv.get(pr, j));
                    inv.set(c, j, y);
                    inv.set(pr, j, x);
                }
            }
            let s = f.inv(a.get(c, c)).ok()?;
            for j in 0..n {
                a.set(c, j, f.mul(s, a.get(c, j)));
                inv.set(c, j, f.mul(s, inv.get(c, j)));
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let m = a.get(r, c);
                if m.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(m, a.get(c, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(m, inv.get(c, j))));
                }
            }
        }
        Some(inv)
    }

    /// (1 − a)⁻¹ = Σ a^k for nilpotent a.
    pub fn neumann_inverse(a: &Mat, f: &GaloisField) -> Mat {
        let mut sum = Mat::identity(a.n);
        let mut pw = Mat::identity(a.n);
        for _ in 1..a.n.max(1) {
            pw = pw.mul(a, f);
            if pw.is_zero() {
                break;
            }
            sum = sum.add(&pw, f);
        }
        sum
    }

    /// Inverse of a unipotent matrix 1 + a via the finite geometric series.
    pub fn unipotent_inverse(&self, f: &GaloisField) -> Mat {
        let a = self.add_identity(f.neg(Fq::ONE), f);
        Mat::neumann_inverse(&a.neg(f), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_unipotent_inverse_agree() {
        let f = GaloisField::new(5, 1).unwrap();
        let mut x = Mat::identity(3);
        x.set(0, 1, Fq(2));
        x.set(0, 2, Fq(4));
        x.set(1, 2, Fq(3));
        let a = x.inverse(&f).unwrap();
        assert_eq!(a, x.unipotent_inverse(&f));
        assert!(a.mul(&x, &f).is_identity());
        let s = Mat::zero(2);
        assert!(s.inverse(&f).is_none());
    }
}
