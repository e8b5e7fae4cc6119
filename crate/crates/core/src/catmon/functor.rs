use super::FinCategory;
use crate::error::{boundary, Error, Result};
use crate::finkit::{check_cap, FinFunction, FinSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinFunctor {
    pub on_obj: FinFunction,
    pub on_mor: FinFunction,
}

impl FinFunctor {
    pub fn new(obj: Vec<usize>, mor: Vec<usize>, a: &FinCategory, c: &FinCategory) -> Result<FinFunctor> {
        let f = FinFunctor {
            on_obj: FinFunction::new(a.num_objects(), c.num_objects(), obj)?,
            on_mor: FinFunction::new(a.num_morphisms(), c.num_morphisms(), mor)?,
        };
        f.check(a, c)?;
        Ok(f)
    }

    pub fn identity(a: &FinCategory) -> FinFunctor {
        FinFunctor {
            on_obj: FinFunction::identity(a.num_objects()),
            on_mor: FinFunction::identity(a.num_morphisms()),
        }
    }

    pub fn obj(&self, x: usize) -> usize {
        self.on_obj.apply(x)
    }

    pub fn mor(&self, f: usize) -> usize {
        self.on_mor.apply(f)
    }

    /// The component `hom_A(x, y) → hom_C(Fx, Fy)` in local indices.
    pub fn on_hom(&self, a: &FinCategory, c: &FinCategory, x: usize, y: usize) -> FinFunction {
        let (fx, fy) = (self.obj(x), self.obj(y));
        let table = a.hom(x, y).iter().map(|&f| c.local_index(self.mor(f))).collect();
        FinFunction::new(a.hom(x, y).len(), c.hom(fx, fy).len(), table).unwrap()
    }

    /// Checks that this is a functor `a → c`.
    pub fn check(&self, a: &FinCategory, c: &FinCategory) -> Result<()> {
        if self.on_obj.dom.size != a.num_objects()
            || self.on_obj.cod.size != c.num_objects()
            || self.on_mor.dom.size != a.num_morphisms()
            || self.on_mor.cod.size != c.num_morphisms()
        {
            return boundary("functor tables do not match the categories");
        }
        for f in 0..a.num_morphisms() {
            let g = self.mor(f);
            if c.src(g) != self.obj(a.src(f)) || c.tgt(g) != self.obj(a.tgt(f)) {
                return Err(Error::Axiom(format!("image of morphism {f} has the wrong type")));
            }
        }
        for x in 0..a.num_objects() {
            if self.mor(a.id(x)) != c.id(self.obj(x)) {
                return Err(Error::Axiom(format!("identity of object {x} is not preserved")));
            }
        }
        for f in 0..a.num_morphisms() {
            for &g in a.out_of(a.tgt(f)) {
                if self.mor(a.comp(g, f)) != c.comp(self.mor(g), self.mor(f)) {
                    return Err(Error::Axiom(format!("composite of {g} after {f} is not preserved")));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &FinFunctor) -> Result<FinFunctor> {
        Ok(FinFunctor { on_obj: self.on_obj.after(&other.on_obj)?, on_mor: self.on_mor.after(&other.on_mor)? })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.on_obj.is_bijective() && self.on_mor.is_bijective()
    }

    pub fn inverse(&self) -> Option<FinFunctor> {
        Some(FinFunctor { on_obj: self.on_obj.inverse()?, on_mor: self.on_mor.inverse()? })
    }
}

/// Functors `∇A → C` correspond to functions `A → obj C`.
pub fn discrete_functor(objects: &[usize], a: &FinCategory, c: &FinCategory) -> Result<FinFunctor> {
    let mor = (0..a.num_morphisms()).map(|f| c.id(objects[a.src(f)])).collect();
    FinFunctor::new(objects.to_vec(), mor, a, c)
}

/// All functors `a → c`, ordered by object assignment and then by morphism
/// images. Object assignments are chosen first and discarded as soon as
/// some non-identity morphism has no candidate image.
pub fn enumerate_functors(a: &FinCategory, c: &FinCategory, cap: u128) -> Result<Vec<FinFunctor>> {
    enumerate_functors_where(a, c, cap, |_| true)
}

/// As `enumerate_functors`, restricted to object assignments accepted by `keep`.
pub fn enumerate_functors_where(
    a: &FinCategory,
    c: &FinCategory,
    cap: u128,
    keep: impl Fn(&[usize]) -> bool,
) -> Result<Vec<FinFunctor>> {
    let (na, nc) = (a.num_objects(), c.num_objects());
    let non_ids = a.non_identities();
    // constraints g∘f = h checked once the largest of g, f, h (in assignment order) is set
    let pos: Vec<usize> = {
        let mut p = vec![usize::MAX; a.num_morphisms()];
        for (i, &f) in non_ids.iter().enumerate() {
            p[f] = i;
        }
        p
    };
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); non_ids.len()];
    for &f in &non_ids {
        for &g in a.out_of(a.tgt(f)) {
            if a.is_identity(g) {
                continue;
            }
            let h = a.comp(g, f);
            let last = [pos[f], pos[g], if a.is_identity(h) { 0 } else { pos[h] }].into_iter().max().unwrap();
            checks[last].push((g, f, h));
        }
    }

    let mut out = Vec::new();
    let mut visited: u128 = 0;
    for obj in crate::finkit::Odometer::new(vec![nc; na]) {
        if !keep(&obj) || non_ids.iter().any(|&f| c.hom(obj[a.src(f)], obj[a.tgt(f)]).is_empty()) {
            continue;
        }
        let mut mor = vec![usize::MAX; a.num_morphisms()];
        for x in 0..na {
            mor[a.id(x)] = c.id(obj[x]);
        }
        assign(a, c, &obj, &non_ids, &checks, 0, &mut mor, &mut out, &mut visited, cap)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &FinCategory,
    c: &FinCategory,
    obj: &[usize],
    non_ids: &[usize],
    checks: &[Vec<(usize, usize, usize)>],
    i: usize,
    mor: &mut Vec<usize>,
    out: &mut Vec<FinFunctor>,
    visited: &mut u128,
    cap: u128,
) -> Result<()> {
    if i == non_ids.len() {
        *visited += 1;
        check_cap(*visited, cap)?;
        out.push(FinFunctor {
            on_obj: FinFunction::between(FinSet::new(a.num_objects()), FinSet::new(c.num_objects()), obj.to_vec())?,
            on_mor: FinFunction::new(a.num_morphisms(), c.num_morphisms(), mor.clone())?,
        });
        return Ok(());
    }
    let f = non_ids[i];
    for &cand in c.hom(obj[a.src(f)], obj[a.tgt(f)]) {
        mor[f] = cand;
        if checks[i].iter().all(|&(g, f2, h)| c.comp(mor[g], mor[f2]) == mor[h]) {
            assign(a, c, obj, non_ids, checks, i + 1, mor, out, visited, cap)?;
        }
    }
    mor[f] = usize::MAX;
    Ok(())
}
