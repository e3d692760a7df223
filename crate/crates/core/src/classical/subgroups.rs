use num_bigint::BigInt;
use num_rational::BigRational;

use super::pairs::mirror;
use super::preset::ClassicalPreset;
use crate::algebra::{EnumeratedGroup, GroupElement, Involution, Mat};
use crate::arith::Cyclo;
use crate::error::{Error, Result};
use crate::sct::counts;

/// Positions (1-based) forced to zero in L_{i,j}: (i,k) for i < k < j.
pub fn l_positions(i: usize, j: usize) -> Vec<(usize, usize)> {
    ((i + 1)..j).map(|k| (i, k)).collect()
}

/// Positions forced to zero in L_D.
pub fn l_positions_of(d: &[(usize, usize)]) -> Vec<(usize, usize)> {
    d.iter().flat_map(|&(i, j)| l_positions(i, j)).collect()
}

fn zero_at(x: &Mat, pos: &[(usize, usize)]) -> bool {
    pos.iter().all(|&(a, b)| x.get(a - 1, b - 1).is_zero())
}

/// One factor Q_{i,j}: zero conditions on x itself, or on x^σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QFactor {
    Zero(Vec<(usize, usize)>),
    SigmaZero(Vec<(usize, usize)>),
}

/// Q_{i,j} for the preset.
///
/// In the middle case i ≤ m < j the zero pattern is the hook
/// x_{i,k} = 0 (i < k ≤ m + r) and x_{k,j} = 0 (m + r < k < j), so the middle
/// index (odd n) goes with the row. The reading x_{i,k} = x_{k,j} = 0 for
/// i < k ≤ m need not be closed under products; see `literal_factor`.
/// For odd n an anti-diagonal entry (i, n - i + 1) gets a factor that is not
/// σ-stable, and no zero pattern of the right index is.
pub fn q_factor(preset: &ClassicalPreset, i: usize, j: usize) -> QFactor {
    let (m, r, n) = (preset.m, preset.r, preset.n);
    if j <= m {
        QFactor::Zero(l_positions(i, j))
    } else if i <= m {
        let b = m + r;
        let mut pos: Vec<(usize, usize)> = ((i + 1)..=b.min(j - 1)).map(|k| (i, k)).collect();
        pos.extend(((b + 1).max(i + 1)..j).map(|k| (k, j)));
        QFactor::Zero(pos)
    } else {
        let (a, b) = mirror(i, j, n);
        QFactor::SigmaZero(l_positions(a, b))
    }
}

/// The conditions x_{i,k} = x_{k,j} = 0 for i < k ≤ m, taken literally.
pub fn literal_factor(preset: &ClassicalPreset, i: usize, j: usize) -> Option<Vec<(usize, usize)>> {
    let m = preset.m;
    if !(i <= m && m < j) {
        return None;
    }
    let mut pos = Vec::new();
    for k in (i + 1)..=m {
        pos.push((i, k));
        if k < j {
            pos.push((k, j));
        }
    }
    Some(pos)
}

/// Membership test for Q_D as a predicate on group elements.
pub struct QSubgroup<'a> {
    factors: Vec<QFactor>,
    sigma: &'a Involution,
}

impl<'a> QSubgroup<'a> {
    pub fn new(preset: &ClassicalPreset, sigma: &'a Involution, d: &[(usize, usize)]) -> Self {
        QSubgroup {
            factors: d.iter().map(|&(i, j)| q_factor(preset, i, j)).collect(),
            sigma,
        }
    }

    pub fn factors(&self) -> &[QFactor] {
        &self.factors
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        let mut image: Option<Mat> = None;
        self.factors.iter().all(|f| match f {
            QFactor::Zero(pos) => zero_at(&x.matrix, pos),
            QFactor::SigmaZero(pos) => {
                let s = image.get_or_insert_with(|| self.sigma.act_group(x).matrix);
                zero_at(s, pos)
            }
        })
    }
}

/// Membership mask of the elements of `g` whose matrices have zeros at `pos`.
pub fn zero_mask(g: &EnumeratedGroup, pos: &[(usize, usize)]) -> Vec<bool> {
    (0..g.order()).map(|x| zero_at(&g.matrix(x), pos)).collect()
}

pub fn q_mask(g: &EnumeratedGroup, q: &QSubgroup) -> Vec<bool> {
    let alg = g.algebra();
    (0..g.order())
        .map(|x| q.contains(&alg.group_element_of_code(g.code(x))))
        .collect()
}

/// Checks closure of a membership mask (identity and products).
pub fn check_subgroup(g: &EnumeratedGroup, mask: &[bool]) -> Result<usize> {
    g.subgroup_mask(|x| mask[x]).map(|m| m.iter().filter(|&&b| b).count())
}

/// θ^G at the given points for a linear character θ = ζ^{e(h)} of the
/// subgroup H given by `mask`:
/// θ^G(g) = (1/|H|) Σ_{y∈G} θ°(y g y⁻¹).
pub fn induce_linear(
    g: &EnumeratedGroup,
    mask: &[bool],
    exponent: impl Fn(usize) -> u32,
    at: &[usize],
    p: u32,
) -> Result<Vec<Cyclo>> {
    let h = check_subgroup(g, mask)?;
    if mask.len() != g.order() {
        return Err(Error::GroupMismatch("mask length differs from the group order".into()));
    }
    let mut theta = vec![u32::MAX; g.order()];
    for x in 0..g.order() {
        if mask[x] {
            theta[x] = exponent(x);
        }
    }
    let scale = counts::ratio(1, h as u64);
    Ok(at
        .iter()
        .map(|&x| {
            let mut c = vec![0i64; p as usize];
            for y in 0..g.order() {
                let t = theta[g.conj(y, x)];
                if t != u32::MAX {
                    c[t as usize] += 1;
                }
            }
            counts::to_cyclo_scaled(&c, p, &scale)
        })
        .collect())
}

/// ⟨f, f'⟩ = (1/|G|) Σ f(g) conj(f'(g)) over all elements.
pub fn inner_all(f: &[Cyclo], g: &[Cyclo], p: u32) -> Cyclo {
    let mut s = Cyclo::zero(p);
    for (a, b) in f.iter().zip(g) {
        s = s.add(&a.mul(&b.conj()));
    }
    s.scale(&BigRational::new(BigInt::from(1), BigInt::from(f.len() as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaloisField;
    use crate::classical::preset::{canonical_preset, ClassicalKind};
    use std::sync::Arc;

    fn sp2() -> (ClassicalPreset, Arc<Involution>, EnumeratedGroup) {
        let f = Arc::new(GaloisField::new(3, 1).unwrap());
        let (pr, s, alg) = canonical_preset(ClassicalKind::Sp, 2, f).unwrap();
        let g = EnumeratedGroup::full(alg, 1 << 12).unwrap();
        (pr, s.unwrap(), g)
    }

    #[test]
    fn hook_for_corner_entry() {
        let (pr, s, g) = sp2();
        let q = QSubgroup::new(&pr, &s, &[(1, 4)]);
        assert_eq!(q.factors(), &[QFactor::Zero(vec![(1, 2), (3, 4)])]);
        let mask = q_mask(&g, &q);
        assert_eq!(check_subgroup(&g, &mask).unwrap(), 729 / 9);
    }

    #[test]
    fn literal_reading_not_closed() {
        let (pr, _s, g) = sp2();
        let lit = literal_factor(&pr, 1, 4).unwrap();
        assert_eq!(lit, vec![(1, 2), (2, 4)]);
        assert!(check_subgroup(&g, &zero_mask(&g, &lit)).is_err());
    }

    #[test]
    fn induce_from_whole_group_is_identity() {
        let (_pr, _s, g) = sp2();
        let mask = vec![true; g.order()];
        let at: Vec<usize> = (0..5).collect();
        let v = induce_linear(&g, &mask, |_| 0, &at, 3).unwrap();
        assert!(v.iter().all(|c| c.is_one()));
    }

    #[test]
    fn induce_from_trivial_is_regular() {
        let (_pr, _s, g) = sp2();
        let mask: Vec<bool> = (0..g.order()).map(|x| x == g.identity()).collect();
        let v = induce_linear(&g, &mask, |_| 0, &[g.identity(), 1], 3).unwrap();
        assert_eq!(v[0], Cyclo::from_int(3, 729));
        assert!(v[1].is_zero());
    }
}
