//! Functors out of the commuting tensor against commuting sesquifunctors.

use std::collections::HashMap;

use super::sesqui::{enumerate_sesquifunctors, Hexagon, Sesquifunctor};
use super::tensor::commuting_tensor;
use super::{enumerate_functors, FinCategory};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub commuting_sesquifunctors: usize,
    pub functors: usize,
    pub injective: bool,
    pub surjective: bool,
    /// `(functor, sesquifunctor)`: the restriction of each functor `A⊗B → C`
    /// along the universal commuting sesquifunctor.
    pub matching: Vec<(usize, usize)>,
}

impl Classification {
    pub fn is_bijection(&self) -> bool {
        self.injective && self.surjective && self.functors == self.commuting_sesquifunctors
    }
}

pub fn classify(a: &FinCategory, b: &FinCategory, c: &FinCategory, budget: usize, cap: u128) -> Result<Classification> {
    let hex = Hexagon::new(a, b, c)?;
    let mut commuting: Vec<Sesquifunctor> = Vec::new();
    for s in enumerate_sesquifunctors(a, b, c, cap)? {
        if hex.check(&s)?.is_none() {
            commuting.push(s);
        }
    }
    let index: HashMap<&Sesquifunctor, usize> = commuting.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let tensor = commuting_tensor(a, b, budget)?;
    let functors = enumerate_functors(&tensor.category, c, cap)?;
    let mut matching = Vec::with_capacity(functors.len());
    let mut hit = vec![false; commuting.len()];
    let mut injective = true;
    let mut lands = true;
    for (k, h) in functors.iter().enumerate() {
        let s = Sesquifunctor::restrict(h, &tensor.iota1, &tensor.iota2, a, b);
        match index.get(&s) {
            Some(&i) => {
                injective &= !hit[i];
                hit[i] = true;
                matching.push((k, i));
            }
            None => lands = false,
        }
    }
    Ok(Classification {
        commuting_sesquifunctors: commuting.len(),
        functors: functors.len(),
        injective: injective && lands,
        surjective: hit.iter().all(|&h| h),
        matching,
    })
}
