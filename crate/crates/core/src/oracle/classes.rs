use crate::algebra::EnumeratedGroup;
use crate::dual::{partition_from_perms, Orbit};
use crate::error::{Error, Result};

/// Default size limit for the brute-force character theory.
pub const ORACLE_CAP: u64 = 4096;

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    classes: Vec<Orbit>,
    class_of: Vec<u32>,
    identity_class: usize,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Orbit] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn rep(&self, c: usize) -> usize {
        self.classes[c].rep
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].members.len()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.members.len() as u64).collect()
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }
}

/// Conjugacy classes by BFS under conjugation by the group's generators.
pub fn conjugacy_classes(g: &EnumeratedGroup, cap: u64) -> Result<ConjugacyClasses> {
    let n = g.order();
    if n as u64 > cap {
        return Err(Error::CapExceeded { size: n as u64, cap });
    }
    let perms: Vec<Vec<u32>> = g
        .generators()
        .iter()
        .map(|&s| (0..n).map(|x| g.conj(s, x) as u32).collect())
        .collect();
    let (classes, class_of) = partition_from_perms(n, &perms);
    let identity_class = class_of[g.identity()] as usize;
    if classes[identity_class].members.len() != 1 {
        return Err(Error::Oracle("identity class is not a singleton".into()));
    }
    Ok(ConjugacyClasses {
        classes,
        class_of,
        identity_class,
    })
}
