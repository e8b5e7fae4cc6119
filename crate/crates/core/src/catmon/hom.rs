//! Internal homs: functors `B → C` with unnatural (pointwise) or natural
//! families as morphisms, and the transposition of sesquifunctors.

use std::collections::HashMap;

use super::sesqui::{enumerate_sesquifunctors, is_commuting_direct, Hexagon, Sesquifunctor};
use super::tensor::{commuting_tensor, funny_tensor};
use super::{enumerate_functors, FinCategory, FinFunctor};
use crate::error::{boundary, Result};
use crate::finkit::{check_cap, equalize, product, FinFunction, FinSet};

#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub category: FinCategory,
    pub functors: Vec<FinFunctor>,
    /// Components `α_y` (morphisms of C) of each morphism.
    pub families: Vec<Vec<usize>>,
    pub natural: bool,
    functor_index: HashMap<FinFunctor, usize>,
    family_index: HashMap<(usize, usize, Vec<usize>), usize>,
}

impl FunctorCategory {
    pub fn functor_index(&self, f: &FinFunctor) -> Option<usize> {
        self.functor_index.get(f).copied()
    }

    /// The morphism `F ⇒ G` with the given components, if present.
    pub fn family_index(&self, from: usize, to: usize, family: &[usize]) -> Option<usize> {
        self.family_index.get(&(from, to, family.to_vec())).copied()
    }
}

/// `⟦B, C⟧` with all families `∏_y C(Fy, Gy)`.
pub fn funny_hom(b: &FinCategory, c: &FinCategory, cap: u128) -> Result<FunctorCategory> {
    build(b, c, cap, false)
}

/// The subcategory of natural families, each hom-set computed as the end
/// `∫_y C(Fy, Gy)`: the equaliser of the two maps into `∏_{g:y→y'} C(Fy, Gy')`.
pub fn commuting_hom(b: &FinCategory, c: &FinCategory, cap: u128) -> Result<FunctorCategory> {
    build(b, c, cap, true)
}

fn families(b: &FinCategory, c: &FinCategory, f: &FinFunctor, g: &FinFunctor, natural: bool, cap: u128) -> Result<Vec<Vec<usize>>> {
    let homs: Vec<&[usize]> = (0..b.num_objects()).map(|y| c.hom(f.obj(y), g.obj(y))).collect();
    let all = product(&homs.iter().map(|h| h.len()).collect::<Vec<_>>());
    check_cap(all.total as u128, cap)?;
    let family = |k: usize| -> Vec<usize> { all.decode(k).iter().enumerate().map(|(y, &i)| homs[y][i]).collect() };
    if !natural {
        return Ok((0..all.total).map(family).collect());
    }
    let targets: Vec<&[usize]> = (0..b.num_morphisms()).map(|m| c.hom(f.obj(b.src(m)), g.obj(b.tgt(m)))).collect();
    let cod = product(&targets.iter().map(|h| h.len()).collect::<Vec<_>>());
    let left = (0..all.total)
        .map(|k| {
            let alpha = family(k);
            let coords: Vec<usize> = (0..b.num_morphisms())
                .map(|m| c.local_index(c.comp(alpha[b.tgt(m)], f.mor(m))))
                .collect();
            cod.encode(&coords)
        })
        .collect();
    let right = (0..all.total)
        .map(|k| {
            let alpha = family(k);
            let coords: Vec<usize> = (0..b.num_morphisms())
                .map(|m| c.local_index(c.comp(g.mor(m), alpha[b.src(m)])))
                .collect();
            cod.encode(&coords)
        })
        .collect();
    let left = FinFunction::new(all.total, cod.total, left)?;
    let right = FinFunction::new(all.total, cod.total, right)?;
    let (_, incl) = equalize(&left, &right)?;
    Ok(incl.table.iter().map(|&k| family(k)).collect())
}

fn build(b: &FinCategory, c: &FinCategory, cap: u128, natural: bool) -> Result<FunctorCategory> {
    let functors = enumerate_functors(b, c, cap)?;
    let n = functors.len();
    let mut fams = Vec::new();
    let (mut src, mut tgt) = (Vec::new(), Vec::new());
    let mut family_index = HashMap::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for fam in families(b, c, f, g, natural, cap)? {
                family_index.insert((i, j, fam.clone()), fams.len());
                fams.push(fam);
                src.push(i);
                tgt.push(j);
                check_cap(fams.len() as u128, cap)?;
            }
        }
    }
    let ids: Vec<usize> = functors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let fam: Vec<usize> = (0..b.num_objects()).map(|y| c.id(f.obj(y))).collect();
            family_index[&(i, i, fam)]
        })
        .collect();
    let labels = (0..n).map(|i| format!("F{i}")).collect::<Vec<_>>();
    let objects = FinSet::labelled(labels)?;
    let comp = |h: usize, k: usize| -> usize {
        let fam: Vec<usize> = fams[h].iter().zip(&fams[k]).map(|(&x, &y)| c.comp(x, y)).collect();
        family_index[&(src[k], tgt[h], fam)]
    };
    let category = FinCategory::new(objects, FinSet::new(fams.len()), src.clone(), tgt.clone(), ids, comp)?;
    let functor_index = functors.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    Ok(FunctorCategory { category, functors, families: fams, natural, functor_index, family_index })
}

/// The functor `A → ⟦B, C⟧` sending `x` to `s(x, −)` and `f` to `(s(f, y))_y`.
pub fn transpose(s: &Sesquifunctor, a: &FinCategory, b: &FinCategory, c: &FinCategory, hom: &FunctorCategory) -> Result<FinFunctor> {
    let mut obj = Vec::with_capacity(a.num_objects());
    for x in 0..a.num_objects() {
        let right = s.right(x, b, c)?;
        match hom.functor_index(&right) {
            Some(i) => obj.push(i),
            None => return boundary("sesquifunctor component is not an object of the hom"),
        }
    }
    let mut mor = Vec::with_capacity(a.num_morphisms());
    for f in 0..a.num_morphisms() {
        let fam: Vec<usize> = (0..b.num_objects()).map(|y| s.phi1[y][f]).collect();
        match hom.family_index(obj[a.src(f)], obj[a.tgt(f)], &fam) {
            Some(k) => mor.push(k),
            None => return boundary("transpose of the sesquifunctor leaves the hom"),
        }
    }
    FinFunctor::new(obj, mor, a, &hom.category)
}

pub fn untranspose(h: &FinFunctor, a: &FinCategory, b: &FinCategory, hom: &FunctorCategory) -> Sesquifunctor {
    let nb = b.num_objects();
    let on_obj = (0..a.num_objects() * nb).map(|o| hom.functors[h.obj(o / nb)].obj(o % nb)).collect();
    let phi1 = (0..nb).map(|y| (0..a.num_morphisms()).map(|f| hom.families[h.mor(f)][y]).collect()).collect();
    let phi2 = (0..a.num_objects()).map(|x| hom.functors[h.obj(x)].on_mor.table.clone()).collect();
    Sesquifunctor { on_obj, phi1, phi2 }
}

/// Counts on both sides of the two tensor-hom adjunctions, with the
/// transposition checked to be a bijection that preserves and reflects
/// commutativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closedness {
    /// `|Cat(A□B, C)|`, counted as functors out of the funny tensor when it
    /// closes and as sesquifunctors (models of its presentation) otherwise.
    pub funny_tensor_side: usize,
    pub funny_hom_side: usize,
    pub commuting_tensor_side: usize,
    pub commuting_hom_side: usize,
    pub funny_tensor_closed: bool,
    pub transposition_bijective: bool,
    pub commutativity_reflected: bool,
}

impl Closedness {
    pub fn holds(&self) -> bool {
        self.funny_tensor_side == self.funny_hom_side
            && self.commuting_tensor_side == self.commuting_hom_side
            && self.transposition_bijective
            && self.commutativity_reflected
    }
}

pub fn closedness(a: &FinCategory, b: &FinCategory, c: &FinCategory, budget: usize, cap: u128) -> Result<Closedness> {
    let sesqui = enumerate_sesquifunctors(a, b, c, cap)?;
    let funny = funny_tensor(a, b, budget)?;
    let funny_tensor_side = match funny.category() {
        Some(t) => enumerate_functors(t, c, cap)?.len(),
        None => sesqui.len(),
    };
    let fh = funny_hom(b, c, cap)?;
    let ch = commuting_hom(b, c, cap)?;
    let funny_hom_side = enumerate_functors(a, &fh.category, cap)?.len();
    let commuting_hom_side = enumerate_functors(a, &ch.category, cap)?.len();
    let tensor = commuting_tensor(a, b, budget)?;
    let commuting_tensor_side = enumerate_functors(&tensor.category, c, cap)?.len();

    let hex = Hexagon::new(a, b, c)?;
    let mut seen = std::collections::HashSet::new();
    let mut transposition_bijective = true;
    let mut commutativity_reflected = true;
    for s in &sesqui {
        let t = transpose(s, a, b, c, &fh)?;
        transposition_bijective &= untranspose(&t, a, b, &fh) == *s;
        seen.insert(t);
        let commuting = hex.check(s)?.is_none();
        debug_assert_eq!(commuting, is_commuting_direct(s, a, b, c));
        let lands = transpose(s, a, b, c, &ch).is_ok();
        commutativity_reflected &= commuting == lands;
    }
    transposition_bijective &= seen.len() == sesqui.len() && seen.len() == funny_hom_side;
    Ok(Closedness {
        funny_tensor_side,
        funny_hom_side,
        commuting_tensor_side,
        commuting_hom_side,
        funny_tensor_closed: funny.category().is_some(),
        transposition_bijective,
        commutativity_reflected,
    })
}
