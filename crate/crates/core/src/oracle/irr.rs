use nalgebra::{DMatrix, RealField};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::classes::ConjugacyClasses;
use crate::algebra::EnumeratedGroup;
use crate::arith::Cyclo;
use crate::error::{Error, Result};

/// Default seed for separating eigenspaces.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Orthonormality tolerance.
pub const ORTHO_TOL: f64 = 1e-8;
/// Integrality tolerance for degrees and multiplicities.
pub const INT_TOL: f64 = 1e-6;

const ATTEMPTS: u64 = 8;

fn re<T: RealField + Copy>(x: f64) -> T {
    nalgebra::convert(x)
}

fn to_f64<T: RealField + Copy>(x: T) -> f64 {
    nalgebra::try_convert(x).unwrap_or(f64::NAN)
}

#[derive(Clone, Debug)]
pub struct IrrChar<T> {
    pub degree: u64,
    /// Values on the classes, in class order.
    pub values: Vec<Complex<T>>,
}

/// Irreducible characters of a small group, computed numerically.
#[derive(Clone, Debug)]
pub struct IrreducibleSet<T> {
    pub order: u64,
    pub class_sizes: Vec<u64>,
    pub chars: Vec<IrrChar<T>>,
    pub seed: u64,
    pub tolerance: f64,
}

pub type IrreducibleSetF64 = IrreducibleSet<f64>;

impl<T: RealField + Copy> IrreducibleSet<T> {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// ⟨f, g⟩ for class functions given on classes.
    pub fn inner(&self, f: &[Complex<T>], g: &[Complex<T>]) -> Complex<T> {
        let mut s = Complex::new(T::zero(), T::zero());
        for ((a, b), &k) in f.iter().zip(g).zip(&self.class_sizes) {
            s += *a * b.conj() * re::<T>(k as f64);
        }
        s / re::<T>(self.order as f64)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let fmt = |z: &Complex<T>| {
            let (a, b) = (to_f64(z.re), to_f64(z.im));
            let b_abs = b.abs();
            let sign = if b < 0.0 { '-' } else { '+' };
            format!("{}{}{}i", sig12(a), sign, sig12(b_abs))
        };
        json!({
            "order": self.order,
            "class_sizes": self.class_sizes,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "characters": self.chars.iter().map(|c| json!({
                "degree": c.degree,
                "values": c.values.iter().map(fmt).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn sig12(x: f64) -> String {
    let x = if x.abs() < 1e-12 { 0.0 } else { x };
    let s = format!("{:.11e}", x);
    // normalize through parsing so that e.g. 1.00000000000e0 prints as 1
    let v: f64 = s.parse().unwrap_or(x);
    format!("{}", v)
}

/// Burnside's method: a random Hermitian combination of the normalized
/// class-sum matrices has the irreducible characters as eigenvectors.
pub fn irr_numeric<T: RealField + Copy>(
    g: &EnumeratedGroup,
    classes: &ConjugacyClasses,
    seed: u64,
) -> Result<IrreducibleSet<T>> {
    let r = classes.len();
    let order = g.order() as u64;
    let sizes = classes.sizes();
    let sqrt_k: Vec<f64> = sizes.iter().map(|&k| (k as f64).sqrt()).collect();

    // a[i][j][k] = #{x ∈ K_i : x⁻¹ z_k ∈ K_j}
    let mut a = vec![0u32; r * r * r];
    for i in 0..r {
        for k in 0..r {
            let z = classes.rep(k);
            for &x in &classes.classes()[i].members {
                let y = g.mul(g.inv(x), z);
                a[(i * r + classes.class_of(y)) * r + k] += 1;
            }
        }
    }

    let mut last_gap = 0.0;
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let coeffs: Vec<(f64, f64)> = (0..r).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let mut h = DMatrix::<Complex<T>>::zeros(r, r);
        for (i, &(c, d)) in coeffs.iter().enumerate() {
            for j in 0..r {
                for k in 0..r {
                    let b_jk = a[(i * r + j) * r + k] as f64 * sqrt_k[k] / sqrt_k[j];
                    let b_kj = a[(i * r + k) * r + j] as f64 * sqrt_k[j] / sqrt_k[k];
                    // c(B + Bᵀ) + i·d(B − Bᵀ)
                    h[(j, k)] += Complex::new(re::<T>(c * (b_jk + b_kj)), re::<T>(d * (b_jk - b_kj)));
                }
            }
        }
        let eig = h.symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().map(|&v| to_f64(v)).collect();
        vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let gap = vals.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        last_gap = gap;
        if r > 1 && gap < 1e-7 * scale {
            continue;
        }
        let id = classes.identity_class();
        let mut chars = Vec::with_capacity(r);
        for col in 0..r {
            let u: Vec<Complex<T>> = (0..r).map(|j| eig.eigenvectors[(j, col)]).collect();
            let u0 = u[id];
            let norm = nalgebra::ComplexField::modulus(u0);
            if to_f64(norm) < 1e-12 {
                return Err(Error::Oracle("eigenvector vanishes at the identity".into()));
            }
            let phase = u0 / norm;
            let deg_f = to_f64(norm) * (order as f64).sqrt();
            let degree = deg_f.round();
            if (deg_f - degree).abs() > INT_TOL || degree < 1.0 {
                return Err(Error::Oracle(format!("non-integral degree {deg_f}")));
            }
            let values: Vec<Complex<T>> = (0..r)
                .map(|j| (u[j] / phase) * re::<T>((order as f64 / sizes[j] as f64).sqrt()))
                .collect();
            chars.push(IrrChar {
                degree: degree as u64,
                values,
            });
        }
        // deterministic order: degree, then rounded values
        let key = |c: &IrrChar<T>| {
            let v: Vec<(i64, i64)> = c
                .values
                .iter()
                .map(|z| ((to_f64(z.re) * 1e6).round() as i64, (to_f64(z.im) * 1e6).round() as i64))
                .collect();
            (c.degree, std::cmp::Reverse(v))
        };
        chars.sort_by_key(key);
        let set = IrreducibleSet {
            order,
            class_sizes: sizes.clone(),
            chars,
            seed,
            tolerance: ORTHO_TOL,
        };
        validate(&set, id)?;
        return Ok(set);
    }
    Err(Error::Oracle(format!(
        "eigenvalues not separated after {ATTEMPTS} seeds (min gap {last_gap:e})"
    )))
}

fn validate<T: RealField + Copy>(set: &IrreducibleSet<T>, id: usize) -> Result<()> {
    let r = set.chars.len();
    if r != set.class_sizes.len() {
        return Err(Error::Oracle("#characters != #classes".into()));
    }
    for i in 0..r {
        for j in i..r {
            let ip = set.inner(&set.chars[i].values, &set.chars[j].values);
            let target = if i == j { 1.0 } else { 0.0 };
            let err = (to_f64(ip.re) - target).abs() + to_f64(ip.im).abs();
            if err > ORTHO_TOL {
                return Err(Error::Oracle(format!("characters {i},{j} not orthonormal (error {err:e})")));
            }
        }
        let d = to_f64(set.chars[i].values[id].re);
        if (d - set.chars[i].degree as f64).abs() > INT_TOL {
            return Err(Error::Oracle("degree does not match value at identity".into()));
        }
    }
    let sum: u64 = set.chars.iter().map(|c| c.degree * c.degree).sum();
    if sum != set.order {
        return Err(Error::Oracle(format!("sum of squared degrees {sum} != |G| = {}", set.order)));
    }
    Ok(())
}

pub fn cyclo_to_complex<T: RealField + Copy>(z: &Cyclo) -> Complex<T> {
    let c: Complex<f64> = z.to_complex();
    Complex::new(re::<T>(c.re), re::<T>(c.im))
}

/// Multiplicities ⟨f, χ_i⟩ of an exact class function (given on classes).
pub fn decompose<T: RealField + Copy>(f: &[Cyclo], irr: &IrreducibleSet<T>) -> Result<Vec<i64>> {
    if f.len() != irr.class_sizes.len() {
        return Err(Error::GroupMismatch("class function has the wrong number of classes".into()));
    }
    let fv: Vec<Complex<T>> = f.iter().map(cyclo_to_complex).collect();
    decompose_numeric(&fv, irr)
}

pub fn decompose_numeric<T: RealField + Copy>(f: &[Complex<T>], irr: &IrreducibleSet<T>) -> Result<Vec<i64>> {
    irr.chars
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let m = irr.inner(f, &c.values);
            let (mr, mi) = (to_f64(m.re), to_f64(m.im));
            let rounded = mr.round();
            if (mr - rounded).abs() > INT_TOL || mi.abs() > INT_TOL {
                return Err(Error::violation(
                    "non-integral multiplicity",
                    format!("character {i}: {mr}+{mi}i"),
                ));
            }
            Ok(rounded as i64)
        })
        .collect()
}
