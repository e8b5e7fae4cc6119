use std::collections::HashMap;

use super::compose::{bimodule_compose, Composite};
use super::free::{free_bimodule, FreeBimodule};
use super::profunctor::{BimoduleMorphism, Profunctor};
use crate::catmon::{commuting_tensor, FinCategory, FinFunctor};
use crate::error::{Error, Result};
use crate::finkit::{coequalize, FinFunction};
use crate::vmatrix::{mat_tensor, Mat};

/// `A1 ⊗ A2` together with its identification with pairs of morphisms.
#[derive(Debug, Clone)]
pub struct TensorCategory {
    pub category: FinCategory,
    to_product: FinFunctor,
    from_product: FinFunctor,
    n2: usize,
    m2: usize,
}

impl TensorCategory {
    pub fn new(a1: &FinCategory, a2: &FinCategory, budget: usize) -> Result<TensorCategory> {
        let t = commuting_tensor(a1, a2, budget)?;
        Ok(TensorCategory {
            category: t.category,
            to_product: t.to_product,
            from_product: t.from_product,
            n2: a2.num_objects(),
            m2: a2.num_morphisms(),
        })
    }

    pub fn object(&self, x1: usize, x2: usize) -> usize {
        x1 * self.n2 + x2
    }

    pub fn split_object(&self, x: usize) -> (usize, usize) {
        (x / self.n2, x % self.n2)
    }

    pub fn pair(&self, f1: usize, f2: usize) -> usize {
        self.from_product.mor(f1 * self.m2 + f2)
    }

    pub fn split(&self, h: usize) -> (usize, usize) {
        let p = self.to_product.mor(h);
        (p / self.m2, p % self.m2)
    }
}

/// A quotient of a profunctor by a relation on elements that respects the
/// actions: classes numbered by least element, actions read off members.
pub(crate) struct Quotient {
    pub profunctor: Profunctor,
    pub proj: FinFunction,
    pub members: Vec<Vec<usize>>,
}

pub(crate) fn quotient_profunctor(p: &Profunctor, f: &FinFunction, g: &FinFunction) -> Result<Quotient> {
    let (classes, proj) = coequalize(f, g)?;
    let mut members = vec![Vec::new(); classes.size];
    for t in 0..p.num_elements() {
        members[proj.apply(t)].push(t);
    }
    let mat = Mat::new(p.src.num_objects(), p.tgt.num_objects(), |y, x| {
        members.iter().filter(|m| {
            let (yy, xx, _) = p.locate(m[0]);
            yy == y && xx == x
        })
        .count()
    });
    let mut left = HashMap::new();
    let mut right = HashMap::new();
    for (c, ms) in members.iter().enumerate() {
        for &t in ms {
            let (y, x, _) = p.locate(t);
            if p.locate(ms[0]).0 != y || p.locate(ms[0]).1 != x {
                return Err(Error::Axiom("quotient identifies elements of different entries".into()));
            }
            for &h in p.tgt.out_of(y) {
                let v = proj.apply(p.left(h, t));
                if *left.entry((h, c)).or_insert(v) != v {
                    return Err(Error::Axiom("left action does not descend to the quotient".into()));
                }
            }
            for &k in p.src.into_obj(x) {
                let v = proj.apply(p.right(t, k));
                if *right.entry((c, k)).or_insert(v) != v {
                    return Err(Error::Axiom("right action does not descend to the quotient".into()));
                }
            }
        }
    }
    let profunctor = Profunctor::new(p.src.clone(), p.tgt.clone(), mat, |h, c| left[&(h, c)], |c, k| right[&(c, k)])?;
    Ok(Quotient { profunctor, proj, members })
}

/// `p1 ⊗ p2 : A1⊗A2 ⇸ B1⊗B2`, the coequaliser of `F(u)` and `v̄` out of
/// `F(F p1 ⊠ F p2)` into `F(p1 ⊠ p2)`.
pub struct ProfunctorTensor {
    pub profunctor: Profunctor,
    pub src: TensorCategory,
    pub tgt: TensorCategory,
    /// `F(p1 ⊠ p2)` and its projection onto the tensor.
    pub free: FreeBimodule,
    pub proj: FinFunction,
    pub members: Vec<Vec<usize>>,
    /// The universal bimorphism `(t1, t2) ↦ [id, (t1, t2), id]`, indexed `t1·|p2| + t2`.
    pub universal: Vec<usize>,
    n2: usize,
    p2_entries: Mat,
}

impl ProfunctorTensor {
    pub fn bimorphism(&self, t1: usize, t2: usize) -> usize {
        self.universal[t1 * self.n2 + t2]
    }

    fn cell(&self, p1: &Profunctor, p2: &Profunctor, t1: usize, t2: usize) -> (usize, usize, usize) {
        let (y1, x1, i1) = p1.locate(t1);
        let (y2, x2, i2) = p2.locate(t2);
        (self.tgt.object(y1, y2), self.src.object(x1, x2), i1 * self.p2_entries.entry(y2, x2) + i2)
    }
}

pub fn profunctor_tensor(p1: &Profunctor, p2: &Profunctor, budget: usize) -> Result<ProfunctorTensor> {
    let src = TensorCategory::new(&p1.src, &p2.src, budget)?;
    let tgt = TensorCategory::new(&p1.tgt, &p2.tgt, budget)?;
    let (a, b) = (&src.category, &tgt.category);
    let x = mat_tensor(p1.mat(), p2.mat());
    let fx = free_bimodule(&x, a, b)?;
    let fp1 = free_bimodule(p1.mat(), &p1.src, &p1.tgt)?;
    let fp2 = free_bimodule(p2.mat(), &p2.src, &p2.tgt)?;
    let y = mat_tensor(fp1.profunctor.mat(), fp2.profunctor.mat());
    let fy = free_bimodule(&y, a, b)?;
    let eps1 = super::free::counit(&fp1, p1)?;
    let eps2 = super::free::counit(&fp2, p2)?;

    let n = fy.profunctor.num_elements();
    let (mut fu, mut vbar) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for t in 0..n {
        let (h, (yy, xx, i), k) = fy.decode(t);
        let ((y1, y2), (x1, x2)) = (tgt.split_object(yy), src.split_object(xx));
        let w = fp2.profunctor.mat().entry(y2, x2);
        let w1 = fp1.profunctor.element(y1, x1, i / w);
        let w2 = fp2.profunctor.element(y2, x2, i % w);
        // F(u): apply the counits inside
        let (_, _, j1) = p1.locate(eps1.apply(w1));
        let (_, _, j2) = p2.locate(eps2.apply(w2));
        fu.push(fx.encode(h, (yy, xx, j1 * p2.mat().entry(y2, x2) + j2), k));
        // v̄: move the outer morphisms of both triples out to the tensor
        let (g1, (z1, u1, e1), f1) = fp1.decode(w1);
        let (g2, (z2, u2, e2), f2) = fp2.decode(w2);
        let cell = (tgt.object(z1, z2), src.object(u1, u2), e1 * p2.mat().entry(z2, u2) + e2);
        vbar.push(fx.encode(b.comp(h, tgt.pair(g1, g2)), cell, a.comp(src.pair(f1, f2), k)));
    }
    let m = fx.profunctor.num_elements();
    let fu = FinFunction::new(n, m, fu)?;
    let vbar = FinFunction::new(n, m, vbar)?;
    // both legs are bimodule maps
    BimoduleMorphism::globular(&fy.profunctor, &fx.profunctor, fu.table.clone())?;
    BimoduleMorphism::globular(&fy.profunctor, &fx.profunctor, vbar.table.clone())?;
    let q = quotient_profunctor(&fx.profunctor, &fu, &vbar)?;

    let mut out = ProfunctorTensor {
        profunctor: q.profunctor,
        src,
        tgt,
        free: fx,
        proj: q.proj,
        members: q.members,
        universal: Vec::new(),
        n2: p2.num_elements(),
        p2_entries: p2.mat().clone(),
    };
    let mut universal = Vec::with_capacity(p1.num_elements() * p2.num_elements());
    for t1 in 0..p1.num_elements() {
        for t2 in 0..p2.num_elements() {
            let cell = out.cell(p1, p2, t1, t2);
            universal.push(out.proj.apply(out.free.unit(cell)));
        }
    }
    out.universal = universal;
    Ok(out)
}

/// The pointwise product `p1[y1;x1] × p2[y2;x2]` with componentwise
/// actions, built directly.
pub fn pointwise_product(p1: &Profunctor, p2: &Profunctor, src: &TensorCategory, tgt: &TensorCategory) -> Result<Profunctor> {
    let x = mat_tensor(p1.mat(), p2.mat());
    let layout = super::profunctor::Layout::new(&x);
    let split = |t: usize| {
        let (yy, xx, i) = layout.locate(t);
        let ((y1, y2), (x1, x2)) = (tgt.split_object(yy), src.split_object(xx));
        let w = p2.mat().entry(y2, x2);
        (p1.element(y1, x1, i / w), p2.element(y2, x2, i % w))
    };
    let join = |t1: usize, t2: usize| {
        let (y1, x1, i1) = p1.locate(t1);
        let (y2, x2, i2) = p2.locate(t2);
        layout.element(tgt.object(y1, y2), src.object(x1, x2), i1 * p2.mat().entry(y2, x2) + i2)
    };
    Profunctor::new(
        src.category.clone(),
        tgt.category.clone(),
        x.clone(),
        |h, t| {
            let (h1, h2) = tgt.split(h);
            let (t1, t2) = split(t);
            join(p1.left(h1, t1), p2.left(h2, t2))
        },
        |t, k| {
            let (k1, k2) = src.split(k);
            let (t1, t2) = split(t);
            join(p1.right(t1, k1), p2.right(t2, k2))
        },
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorReport {
    /// The comparison with the pointwise product is a well-defined bijective bimodule map.
    pub matches_pointwise: bool,
    /// The universal bimorphism is equivariant in each variable separately.
    pub bimorphism_equivariant: bool,
    pub elements: usize,
}

/// Checks a tensor against the pointwise-product oracle.
pub fn verify_tensor(t: &ProfunctorTensor, p1: &Profunctor, p2: &Profunctor) -> Result<TensorReport> {
    let oracle = pointwise_product(p1, p2, &t.src, &t.tgt)?;
    let mut table = Vec::with_capacity(t.members.len());
    let mut well_defined = true;
    for ms in &t.members {
        let mut value = None;
        for &e in ms {
            let (h, (yy, xx, i), k) = t.free.decode(e);
            let v = oracle.right(oracle.left(h, oracle.element(yy, xx, i)), k);
            well_defined &= *value.get_or_insert(v) == v;
        }
        table.push(value.unwrap());
    }
    let matches_pointwise = well_defined
        && BimoduleMorphism::globular(&t.profunctor, &oracle, table).map(|m| m.map.is_bijective()).unwrap_or(false);

    let (tc, sc) = (&t.tgt, &t.src);
    let mut ok = true;
    for t1 in 0..p1.num_elements() {
        let (y1, x1, _) = p1.locate(t1);
        for t2 in 0..p2.num_elements() {
            let (y2, x2, _) = p2.locate(t2);
            let beta = t.bimorphism(t1, t2);
            for &g in p1.tgt.out_of(y1) {
                ok &= t.bimorphism(p1.left(g, t1), t2) == t.profunctor.left(tc.pair(g, p2.tgt.id(y2)), beta);
            }
            for &g in p2.tgt.out_of(y2) {
                ok &= t.bimorphism(t1, p2.left(g, t2)) == t.profunctor.left(tc.pair(p1.tgt.id(y1), g), beta);
            }
            for &f in p1.src.into_obj(x1) {
                ok &= t.bimorphism(p1.right(t1, f), t2) == t.profunctor.right(beta, sc.pair(f, p2.src.id(x2)));
            }
            for &f in p2.src.into_obj(x2) {
                ok &= t.bimorphism(t1, p2.right(t2, f)) == t.profunctor.right(beta, sc.pair(p1.src.id(x1), f));
            }
        }
    }
    Ok(TensorReport { matches_pointwise, bimorphism_equivariant: ok, elements: t.profunctor.num_elements() })
}

/// `ξ̃ : (q1•p1) ⊗ (q2•p2) ⇒ (q1⊗q2) • (p1⊗p2)`, computed by lifting each
/// element to the free bimodule on `(q1•p1) ⊠ (q2•p2)`, then to pairs of
/// representatives, applying the free-case map there and projecting down.
/// Every choice of lift is checked to give the same value.
pub struct Interchange {
    pub source: ProfunctorTensor,
    pub target: Composite,
    pub map: BimoduleMorphism,
}

pub fn interchange(q1: &Profunctor, p1: &Profunctor, q2: &Profunctor, p2: &Profunctor, budget: usize) -> Result<Interchange> {
    let c1 = bimodule_compose(q1, p1)?;
    let c2 = bimodule_compose(q2, p2)?;
    let source = profunctor_tensor(&c1.profunctor, &c2.profunctor, budget)?;
    let qt = profunctor_tensor(q1, q2, budget)?;
    let pt = profunctor_tensor(p1, p2, budget)?;
    let target = bimodule_compose(&qt.profunctor, &pt.profunctor)?;
    let r = &target.profunctor;
    let w2 = c2.profunctor.mat().clone();
    let mut table = Vec::with_capacity(source.members.len());
    for ms in &source.members {
        let mut value = None;
        for &e in ms {
            let (h, (yy, xx, i), k) = source.free.decode(e);
            let ((z1, z2), (x1, x2)) = (source.tgt.split_object(yy), source.src.split_object(xx));
            let w = w2.entry(z2, x2);
            let k1 = c1.profunctor.element(z1, x1, i / w);
            let k2 = c2.profunctor.element(z2, x2, i % w);
            for &(s1, t1) in c1.members(k1) {
                for &(s2, t2) in c2.members(k2) {
                    let inner = target.class(qt.bimorphism(s1, s2), pt.bimorphism(t1, t2));
                    let v = r.right(r.left(h, inner), k);
                    if *value.get_or_insert(v) != v {
                        return Err(Error::Axiom("interchange is not well defined".into()));
                    }
                }
            }
        }
        table.push(value.expect("classes are nonempty"));
    }
    let map = BimoduleMorphism::globular(&source.profunctor, r, table)?;
    Ok(Interchange { source, target, map })
}
