use std::collections::HashMap;

use super::free::{free_bimodule, FreeBimodule};
use super::profunctor::{BimoduleMorphism, Profunctor};
use crate::error::{boundary, Error, Result};
use crate::finkit::{coequalize, FinFunction};
use crate::vmatrix::{composite_decode, mat_compose, Mat};

/// `q • p`: pairs `(s, t)` with `s ∈ q[z;y]`, `t ∈ p[y;x]`, modulo
/// `(s·g, t) ~ (s, g·t)`. Classes are numbered by least representative in
/// the entrywise order of `q∘p`, so the numbering follows entries.
#[derive(Debug, Clone)]
pub struct Composite {
    pub profunctor: Profunctor,
    /// Least representative `(s, t)` of each class.
    pub reps: Vec<(usize, usize)>,
    class: HashMap<(usize, usize), usize>,
    members: Vec<Vec<(usize, usize)>>,
}

impl Composite {
    /// Class of `[s, t]`.
    pub fn class(&self, s: usize, t: usize) -> usize {
        self.class[&(s, t)]
    }

    pub fn members(&self, c: usize) -> &[(usize, usize)] {
        &self.members[c]
    }

    /// Number of pairs before the quotient.
    pub fn num_pairs(&self) -> usize {
        self.class.len()
    }
}

pub fn bimodule_compose(q: &Profunctor, p: &Profunctor) -> Result<Composite> {
    if q.src != p.tgt {
        return boundary("composite needs a shared middle category");
    }
    let b = &p.tgt;
    // pairs, in the order of the composite matrix entries
    let qp = mat_compose(q.mat(), p.mat())?;
    let mut pairs = Vec::with_capacity(qp.total());
    for z in 0..qp.tgt.size {
        for x in 0..qp.src.size {
            for e in 0..qp.entry(z, x) {
                let (y, i, j) = composite_decode(q.mat(), p.mat(), z, x, e);
                pairs.push((q.element(z, y, i), p.element(y, x, j)));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &st)| (st, k)).collect();
    // triples (s, g, t) with g : y → y'
    let (mut via_q, mut via_p) = (Vec::new(), Vec::new());
    for s in 0..q.num_elements() {
        let (_, y2, _) = q.locate(s);
        for &g in b.into_obj(y2) {
            for x in 0..p.src.num_objects() {
                for t in p.entry(b.src(g), x) {
                    via_q.push(index[&(q.right(s, g), t)]);
                    via_p.push(index[&(s, p.left(g, t))]);
                }
            }
        }
    }
    let n = pairs.len();
    let f1 = FinFunction::new(via_q.len(), n, via_q)?;
    let f2 = FinFunction::new(via_p.len(), n, via_p)?;
    let (classes, proj) = coequalize(&f1, &f2)?;
    let mut reps = vec![(usize::MAX, usize::MAX); classes.size];
    let mut members = vec![Vec::new(); classes.size];
    for (k, &st) in pairs.iter().enumerate() {
        let c = proj.apply(k);
        if members[c].is_empty() {
            reps[c] = st;
        }
        members[c].push(st);
    }
    let class: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &st)| (st, proj.apply(k))).collect();
    let mat = Mat::new(p.src.num_objects(), q.tgt.num_objects(), |z, x| {
        reps.iter().filter(|&&(s, t)| q.locate(s).0 == z && p.locate(t).1 == x).count()
    });
    // induced actions, checked to be independent of the representative
    let mut left = HashMap::new();
    let mut right = HashMap::new();
    for (c, ms) in members.iter().enumerate() {
        for &(s, t) in ms {
            let (z, _, _) = q.locate(s);
            for &h in q.tgt.out_of(z) {
                let v = class[&(q.left(h, s), t)];
                if *left.entry((h, c)).or_insert(v) != v {
                    return Err(Error::Axiom("left action on the composite is not well defined".into()));
                }
            }
            let (_, x, _) = p.locate(t);
            for &f in p.src.into_obj(x) {
                let v = class[&(s, p.right(t, f))];
                if *right.entry((c, f)).or_insert(v) != v {
                    return Err(Error::Axiom("right action on the composite is not well defined".into()));
                }
            }
        }
    }
    let profunctor = Profunctor::new(p.src.clone(), q.tgt.clone(), mat, |h, c| left[&(h, c)], |c, f| right[&(c, f)])?;
    Ok(Composite { profunctor, reps, class, members })
}

/// A map out of a composite, defined on pairs and checked to respect the
/// quotient.
pub fn induced(comp: &Composite, target: &Profunctor, f: impl Fn(usize, usize) -> usize) -> Result<BimoduleMorphism> {
    let mut table = Vec::with_capacity(comp.reps.len());
    for ms in &comp.members {
        let v = f(ms[0].0, ms[0].1);
        if ms.iter().any(|&(s, t)| f(s, t) != v) {
            return Err(Error::Axiom("map out of the composite is not well defined".into()));
        }
        table.push(v);
    }
    BimoduleMorphism::globular(&comp.profunctor, target, table)
}

/// `q • id ≅ q`, `[s, g] ↦ s·g`.
pub fn right_unitor(q: &Profunctor) -> Result<(Composite, BimoduleMorphism)> {
    let id = Profunctor::identity(&q.src);
    let comp = bimodule_compose(q, &id)?;
    let morph = identity_morphisms(&q.src);
    let m = induced(&comp, q, |s, g| q.right(s, morph[g]))?;
    Ok((comp, m))
}

/// `id • q ≅ q`, `[h, s] ↦ h·s`.
pub fn left_unitor(q: &Profunctor) -> Result<(Composite, BimoduleMorphism)> {
    let id = Profunctor::identity(&q.tgt);
    let comp = bimodule_compose(&id, q)?;
    let morph = identity_morphisms(&q.tgt);
    let m = induced(&comp, q, |h, s| q.left(morph[h], s))?;
    Ok((comp, m))
}

/// Morphism of the category at each element of its hom profunctor.
fn identity_morphisms(a: &crate::catmon::FinCategory) -> Vec<usize> {
    let id = Profunctor::identity(a);
    let mut m = vec![0; a.num_morphisms()];
    for f in 0..a.num_morphisms() {
        m[id.element(a.tgt(f), a.src(f), a.local_index(f))] = f;
    }
    m
}

/// `(r • q) • p ≅ r • (q • p)`, `[[u, s], t] ↦ [u, [s, t]]`, checked over all
/// representatives of both levels.
pub fn associator(r: &Profunctor, q: &Profunctor, p: &Profunctor) -> Result<BimoduleMorphism> {
    let rq = bimodule_compose(r, q)?;
    let qp = bimodule_compose(q, p)?;
    let left = bimodule_compose(&rq.profunctor, p)?;
    let right = bimodule_compose(r, &qp.profunctor)?;
    let mut table = Vec::with_capacity(left.reps.len());
    for ms in &left.members {
        let mut value = None;
        for &(c, t) in ms {
            for &(u, s) in rq.members(c) {
                let v = right.class(u, qp.class(s, t));
                if *value.get_or_insert(v) != v {
                    return Err(Error::Axiom("associator is not well defined".into()));
                }
            }
        }
        table.push(value.expect("classes are nonempty"));
    }
    BimoduleMorphism::globular(&left.profunctor, &right.profunctor, table)
}

/// The canonical `F(y∘b∘x) ⇒ F(y) • F(x)`,
/// `(h, (e', k, e), f) ↦ [(h, e', k), (id, e, f)]`.
pub struct FreeComposite {
    pub fx: FreeBimodule,
    pub fy: FreeBimodule,
    pub composite: Composite,
    pub fybx: FreeBimodule,
    pub iso: BimoduleMorphism,
}

pub fn free_composite(y: &Mat, x: &Mat, a: &crate::catmon::FinCategory, b: &crate::catmon::FinCategory, c: &crate::catmon::FinCategory) -> Result<FreeComposite> {
    let fx = free_bimodule(x, a, b)?;
    let fy = free_bimodule(y, b, c)?;
    let composite = bimodule_compose(&fy.profunctor, &fx.profunctor)?;
    let bm = b.hom_mat();
    let bx = mat_compose(&bm, x)?;
    let ybx = mat_compose(y, &bx)?;
    let fybx = free_bimodule(&ybx, a, c)?;
    let mut table = Vec::with_capacity(fybx.profunctor.num_elements());
    for t in 0..fybx.profunctor.num_elements() {
        let (h, (z, xx, i), f) = fybx.decode(t);
        let (y1, e1, rest) = composite_decode(y, &bx, z, xx, i);
        let (y0, k, e0) = composite_decode(&bm, x, y1, xx, rest);
        let s = fy.encode(h, (z, y1, e1), b.hom(y0, y1)[k]);
        let u = fx.encode(b.id(y0), (y0, xx, e0), f);
        table.push(composite.class(s, u));
    }
    let iso = BimoduleMorphism::globular(&fybx.profunctor, &composite.profunctor, table)?;
    Ok(FreeComposite { fx, fy, composite, fybx, iso })
}

/// `θ • ψ : q • p ⇒ q' • p'` for globular `θ : q ⇒ q'`, `ψ : p ⇒ p'`.
pub fn compose_morphisms(
    theta: &BimoduleMorphism,
    psi: &BimoduleMorphism,
    from: &Composite,
    to: &Composite,
) -> Result<BimoduleMorphism> {
    induced(from, &to.profunctor, |s, t| to.class(theta.apply(s), psi.apply(t)))
}
