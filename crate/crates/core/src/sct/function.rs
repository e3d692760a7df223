use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::Cyclo;
use crate::error::{Error, Result};

use super::counts::ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupTag {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "C_P")]
    Fixed,
}

/// Superclass sizes of a group, shared by its superclass functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLayout {
    pub group: GroupTag,
    pub order: u64,
    pub sizes: Vec<u64>,
    pub identity: usize,
}

/// A function constant on superclasses, stored by superclass.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperclassFunction {
    pub layout: Arc<ClassLayout>,
    pub values: Vec<Cyclo>,
}

impl SuperclassFunction {
    pub fn group(&self) -> GroupTag {
        self.layout.group
    }

    pub fn degree(&self) -> &Cyclo {
        &self.values[self.layout.identity]
    }

    pub fn trivial(layout: Arc<ClassLayout>, p: u32) -> Self {
        let values = vec![Cyclo::one(p); layout.sizes.len()];
        SuperclassFunction { layout, values }
    }

    pub fn regular(layout: Arc<ClassLayout>, p: u32) -> Self {
        let mut values = vec![Cyclo::zero(p); layout.sizes.len()];
        values[layout.identity] = Cyclo::from_int(p, layout.order as i64);
        SuperclassFunction { layout, values }
    }
}

/// (1/|G|) Σ_x f(x) conj(g(x)), summed superclass-wise.
pub fn frobenius_inner(f: &SuperclassFunction, g: &SuperclassFunction) -> Result<Cyclo> {
    if f.layout != g.layout {
        return Err(Error::GroupMismatch(format!(
            "{:?} vs {:?}",
            f.layout.group, g.layout.group
        )));
    }
    let p = f.values[0].p();
    let mut s = Cyclo::zero(p);
    for ((a, b), &k) in f.values.iter().zip(&g.values).zip(&f.layout.sizes) {
        s = s.add(&a.mul(&b.conj()).scale(&ratio(k, 1)));
    }
    Ok(s.scale(&ratio(1, f.layout.order)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout() -> Arc<ClassLayout> {
        Arc::new(ClassLayout {
            group: GroupTag::P,
            order: 27,
            sizes: vec![1, 2, 24],
            identity: 0,
        })
    }

    #[test]
    fn trivial_and_regular() {
        let l = layout();
        let t = SuperclassFunction::trivial(l.clone(), 3);
        assert!(frobenius_inner(&t, &t).unwrap().is_one());
        let r = SuperclassFunction::regular(l, 3);
        assert!(frobenius_inner(&r, &t).unwrap().is_one());
    }

    #[test]
    fn mismatch() {
        let a = SuperclassFunction::trivial(layout(), 3);
        let mut l2 = (*layout()).clone();
        l2.group = GroupTag::Fixed;
        let b = SuperclassFunction::trivial(Arc::new(l2), 3);
        assert!(matches!(frobenius_inner(&a, &b), Err(Error::GroupMismatch(_))));
    }
}
