use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Involution, InvolutionKind, Mat, NilpotentAlgebra};
use crate::arith::{Fq, GaloisField};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalKind {
    Sp,
    OPlus,
    OOdd,
    U,
    /// Plain UT_n without an involution.
    Ut,
}

impl ClassicalKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "sp" => Ok(ClassicalKind::Sp),
            "o+" | "o_plus" | "o-plus" => Ok(ClassicalKind::OPlus),
            "o-odd" | "o_odd" => Ok(ClassicalKind::OOdd),
            "u" => Ok(ClassicalKind::U),
            "ut" => Ok(ClassicalKind::Ut),
            "o-" | "o_minus" | "o-minus" => Err(Error::Unsupported(
                "o- (UT_n is not invariant under that involution)".into(),
            )),
            other => Err(Error::Unsupported(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassicalKind::Sp => "sp",
            ClassicalKind::OPlus => "o+",
            ClassicalKind::OOdd => "o-odd",
            ClassicalKind::U => "u",
            ClassicalKind::Ut => "ut",
        }
    }

    pub fn default_k(self) -> u32 {
        if self == ClassicalKind::U {
            2
        } else {
            1
        }
    }

    /// The size parameter: m for sp, o+ and o-odd; n for u and ut.
    pub fn size_param(self, m: Option<usize>, n: Option<usize>) -> Result<usize> {
        match self {
            ClassicalKind::U | ClassicalKind::Ut => n.ok_or_else(|| Error::Parse(format!("preset {} needs n", self.name()))),
            _ => m.ok_or_else(|| Error::Parse(format!("preset {} needs m", self.name()))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalPreset {
    pub kind: ClassicalKind,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub p: u32,
    pub k: u32,
}

impl ClassicalPreset {
    /// |k^σ|.
    pub fn q_sigma(&self) -> u64 {
        let q = (self.p as u64).pow(self.k);
        if self.kind == ClassicalKind::U {
            (self.p as u64).pow(self.k / 2)
        } else {
            q
        }
    }
}

/// Antidiagonal J_m (0-based: ones at (i, m-1-i)).
pub fn antidiagonal(m: usize) -> Mat {
    let mut j = Mat::zero(m);
    for i in 0..m {
        j.set(i, m - 1 - i, Fq::ONE);
    }
    j
}

/// The canonical involution matrix u and its kind.
pub fn involution_matrix(kind: ClassicalKind, n: usize, f: &GaloisField) -> Result<(Mat, InvolutionKind)> {
    match kind {
        ClassicalKind::Sp => {
            let m = n / 2;
            let mut u = Mat::zero(n);
            let minus = f.neg(Fq::ONE);
            for i in 0..m {
                u.set(i, n - 1 - i, Fq::ONE);
                u.set(m + i, m - 1 - i, minus);
            }
            Ok((u, InvolutionKind::First))
        }
        ClassicalKind::OPlus | ClassicalKind::OOdd => Ok((antidiagonal(n), InvolutionKind::First)),
        ClassicalKind::U => Ok((antidiagonal(n), InvolutionKind::Second)),
        ClassicalKind::Ut => Err(Error::Unsupported("ut carries no involution".into())),
    }
}

/// UT_n over the field together with the canonical involution of the given kind.
pub fn canonical_preset(
    kind: ClassicalKind,
    size: usize,
    field: Arc<GaloisField>,
) -> Result<(ClassicalPreset, Option<Arc<Involution>>, Arc<NilpotentAlgebra>)> {
    let (m, n, r) = match kind {
        ClassicalKind::Sp | ClassicalKind::OPlus => (size, 2 * size, 0),
        ClassicalKind::OOdd => (size, 2 * size + 1, 1),
        ClassicalKind::U | ClassicalKind::Ut => (size / 2, size, size % 2),
    };
    if n == 0 {
        return Err(Error::Dimension("matrix size must be positive".into()));
    }
    if kind == ClassicalKind::U && field.k() % 2 != 0 {
        return Err(Error::OddDegreeSecondKind(field.k()));
    }
    let algebra = Arc::new(NilpotentAlgebra::upper_triangular(field.clone(), n)?);
    let preset = ClassicalPreset {
        kind,
        m,
        n,
        r,
        p: field.p(),
        k: field.k(),
    };
    if kind == ClassicalKind::Ut {
        return Ok((preset, None, algebra));
    }
    let (u, ik) = involution_matrix(kind, n, &field)?;
    let sigma = Arc::new(Involution::build(u, ik, algebra.clone())?);
    Ok((preset, Some(sigma), algebra))
}
