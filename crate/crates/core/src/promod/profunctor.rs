use crate::audit;
use crate::catmon::{FinCategory, FinFunctor};
use crate::error::{boundary, shape, Error, Result};
use crate::finkit::{check_cap, FinFunction, Odometer};
use crate::vmatrix::Mat;

const NONE: usize = usize::MAX;

/// A profunctor `p : A ⇸ B`: a set `p[y;x]` for each `x` in A and `y` in
/// B, with B acting on the left and A on the right. Elements are numbered
/// entry by entry in matrix order (`y` major, `x` minor), then by local index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profunctor {
    pub src: FinCategory,
    pub tgt: FinCategory,
    mat: Mat,
    offsets: Vec<usize>,
    loc: Vec<(usize, usize, usize)>,
    /// `lact[g * n + t] = g·t`.
    lact: Vec<usize>,
    /// `ract[t * |mor A| + f] = t·f`.
    ract: Vec<usize>,
}

/// Global numbering of the elements of a matrix, entry by entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    width: usize,
    offsets: Vec<usize>,
    loc: Vec<(usize, usize, usize)>,
}

impl Layout {
    pub fn new(mat: &Mat) -> Layout {
        let (offsets, loc) = offsets_of(mat);
        Layout { width: mat.src.size, offsets, loc }
    }

    pub fn element(&self, y: usize, x: usize, i: usize) -> usize {
        self.offsets[y * self.width + x] + i
    }

    pub fn locate(&self, t: usize) -> (usize, usize, usize) {
        self.loc[t]
    }

    pub fn len(&self) -> usize {
        self.loc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loc.is_empty()
    }
}

fn offsets_of(mat: &Mat) -> (Vec<usize>, Vec<(usize, usize, usize)>) {
    let mut offsets = Vec::with_capacity(mat.entries().len());
    let mut loc = Vec::with_capacity(mat.total());
    for y in 0..mat.tgt.size {
        for x in 0..mat.src.size {
            offsets.push(loc.len());
            for i in 0..mat.entry(y, x) {
                loc.push((y, x, i));
            }
        }
    }
    (offsets, loc)
}

impl Profunctor {
    /// Builds and axiom-checks a profunctor. `left(g, t)` and `right(t, f)`
    /// are only called on composable pairs.
    pub fn new(
        src: FinCategory,
        tgt: FinCategory,
        mat: Mat,
        left: impl Fn(usize, usize) -> usize,
        right: impl Fn(usize, usize) -> usize,
    ) -> Result<Profunctor> {
        if mat.src.size != src.num_objects() || mat.tgt.size != tgt.num_objects() {
            return shape("profunctor matrix does not match its categories");
        }
        let (offsets, loc) = offsets_of(&mat);
        let n = loc.len();
        let (ma, mb) = (src.num_morphisms(), tgt.num_morphisms());
        let mut lact = vec![NONE; mb * n];
        for g in 0..mb {
            for t in 0..n {
                if tgt.src(g) == loc[t].0 {
                    lact[g * n + t] = left(g, t);
                }
            }
        }
        let mut ract = vec![NONE; n * ma];
        for t in 0..n {
            for f in 0..ma {
                if src.tgt(f) == loc[t].1 {
                    ract[t * ma + f] = right(t, f);
                }
            }
        }
        let p = Profunctor { src, tgt, mat, offsets, loc, lact, ract };
        let verdict = p.check_axioms();
        audit::record(audit::Kind::Profunctor, verdict.is_ok());
        verdict.map(|_| p)
    }

    /// The hom profunctor `A ⇸ A`, the identity bimodule.
    pub fn identity(a: &FinCategory) -> Profunctor {
        let mat = a.hom_mat();
        let (offsets, _) = offsets_of(&mat);
        let n = a.num_objects();
        let index = |f: usize| offsets[a.tgt(f) * n + a.src(f)] + a.local_index(f);
        let morph: Vec<usize> = {
            let mut m = vec![0; a.num_morphisms()];
            for f in 0..a.num_morphisms() {
                m[index(f)] = f;
            }
            m
        };
        Profunctor::new(a.clone(), a.clone(), mat, |g, t| index(a.comp(g, morph[t])), |t, f| index(a.comp(morph[t], f)))
            .expect("hom profunctor")
    }

    /// The representable `B(F−, =)` of a functor `F : A → B`.
    pub fn companion(f: &FinFunctor, a: &FinCategory, b: &FinCategory) -> Result<Profunctor> {
        let mat = Mat::new(a.num_objects(), b.num_objects(), |y, x| b.hom(f.obj(x), y).len());
        let (offsets, loc) = offsets_of(&mat);
        let na = a.num_objects();
        let mor = |t: usize| {
            let (y, x, i) = loc[t];
            b.hom(f.obj(x), y)[i]
        };
        let index = |y: usize, x: usize, h: usize| offsets[y * na + x] + b.local_index(h);
        Profunctor::new(
            a.clone(),
            b.clone(),
            mat.clone(),
            |g, t| index(b.tgt(g), loc[t].1, b.comp(g, mor(t))),
            |t, h| index(loc[t].0, a.src(h), b.comp(mor(t), f.mor(h))),
        )
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn num_elements(&self) -> usize {
        self.loc.len()
    }

    pub fn element(&self, y: usize, x: usize, i: usize) -> usize {
        debug_assert!(i < self.mat.entry(y, x));
        self.offsets[y * self.src.num_objects() + x] + i
    }

    /// `(y, x, local index)` of an element.
    pub fn locate(&self, t: usize) -> (usize, usize, usize) {
        self.loc[t]
    }

    /// Elements of `p[y;x]`.
    pub fn entry(&self, y: usize, x: usize) -> std::ops::Range<usize> {
        let o = self.offsets[y * self.src.num_objects() + x];
        o..o + self.mat.entry(y, x)
    }

    /// `g·t`; panics when not composable.
    pub fn left(&self, g: usize, t: usize) -> usize {
        let r = self.lact[g * self.loc.len() + t];
        assert!(r != NONE, "left action of {g} on {t} is undefined");
        r
    }

    /// `t·f`; panics when not composable.
    pub fn right(&self, t: usize, f: usize) -> usize {
        let r = self.ract[t * self.src.num_morphisms() + f];
        assert!(r != NONE, "right action of {f} on {t} is undefined");
        r
    }

    pub fn check_axioms(&self) -> Result<()> {
        let (a, b) = (&self.src, &self.tgt);
        let n = self.loc.len();
        for t in 0..n {
            let (y, x, _) = self.loc[t];
            for &g in b.out_of(y) {
                let gt = self.lact[g * n + t];
                if gt >= n || self.loc[gt].0 != b.tgt(g) || self.loc[gt].1 != x {
                    return Err(Error::Axiom(format!("left action of {g} on {t} is ill-typed")));
                }
            }
            for &f in a.into_obj(x) {
                let tf = self.ract[t * a.num_morphisms() + f];
                if tf >= n || self.loc[tf].0 != y || self.loc[tf].1 != a.src(f) {
                    return Err(Error::Axiom(format!("right action of {f} on {t} is ill-typed")));
                }
            }
        }
        for t in 0..n {
            let (y, x, _) = self.loc[t];
            if self.left(b.id(y), t) != t || self.right(t, a.id(x)) != t {
                return Err(Error::Axiom(format!("unit law fails at element {t}")));
            }
            for &g in b.out_of(y) {
                for &g2 in b.out_of(b.tgt(g)) {
                    if self.left(g2, self.left(g, t)) != self.left(b.comp(g2, g), t) {
                        return Err(Error::Axiom(format!("left action is not associative at {t}")));
                    }
                }
                for &f in a.into_obj(x) {
                    if self.right(self.left(g, t), f) != self.left(g, self.right(t, f)) {
                        return Err(Error::Axiom(format!("actions are not compatible at {t}")));
                    }
                }
            }
            for &f in a.into_obj(x) {
                for &f2 in a.into_obj(a.src(f)) {
                    if self.right(self.right(t, f), f2) != self.right(t, a.comp(f, f2)) {
                        return Err(Error::Axiom(format!("right action is not associative at {t}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A map of profunctors `p ⇒ p'` lying over functors on both boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleMorphism {
    pub on_src: FinFunctor,
    pub on_tgt: FinFunctor,
    pub map: FinFunction,
}

impl BimoduleMorphism {
    /// A morphism with identity boundary functors, checked.
    pub fn globular(p: &Profunctor, p2: &Profunctor, table: Vec<usize>) -> Result<BimoduleMorphism> {
        if p.src != p2.src || p.tgt != p2.tgt {
            return boundary("globular morphism needs equal boundaries");
        }
        let m = BimoduleMorphism {
            on_src: FinFunctor::identity(&p.src),
            on_tgt: FinFunctor::identity(&p.tgt),
            map: FinFunction::new(p.num_elements(), p2.num_elements(), table)?,
        };
        m.check(p, p2)?;
        Ok(m)
    }

    pub fn apply(&self, t: usize) -> usize {
        self.map.apply(t)
    }

    pub fn check(&self, p: &Profunctor, p2: &Profunctor) -> Result<()> {
        self.on_src.check(&p.src, &p2.src)?;
        self.on_tgt.check(&p.tgt, &p2.tgt)?;
        if self.map.dom.size != p.num_elements() || self.map.cod.size != p2.num_elements() {
            return boundary("morphism table does not match the profunctors");
        }
        for t in 0..p.num_elements() {
            let (y, x, _) = p.locate(t);
            let (y2, x2, _) = p2.locate(self.apply(t));
            if y2 != self.on_tgt.obj(y) || x2 != self.on_src.obj(x) {
                return Err(Error::Axiom(format!("element {t} is sent to the wrong entry")));
            }
            for &g in p.tgt.out_of(y) {
                if self.apply(p.left(g, t)) != p2.left(self.on_tgt.mor(g), self.apply(t)) {
                    return Err(Error::Axiom(format!("left action not preserved at ({g}, {t})")));
                }
            }
            for &f in p.src.into_obj(x) {
                if self.apply(p.right(t, f)) != p2.right(self.apply(t), self.on_src.mor(f)) {
                    return Err(Error::Axiom(format!("right action not preserved at ({t}, {f})")));
                }
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.map.is_bijective() && self.on_src.is_isomorphism() && self.on_tgt.is_isomorphism()
    }

    /// `self · other`.
    pub fn after(&self, other: &BimoduleMorphism) -> Result<BimoduleMorphism> {
        Ok(BimoduleMorphism {
            on_src: self.on_src.after(&other.on_src)?,
            on_tgt: self.on_tgt.after(&other.on_tgt)?,
            map: self.map.after(&other.map)?,
        })
    }
}

/// All globular morphisms `p ⇒ r`: entrywise functions filtered by equivariance.
pub fn enumerate_morphisms(p: &Profunctor, r: &Profunctor, cap: u128) -> Result<Vec<BimoduleMorphism>> {
    if p.src != r.src || p.tgt != r.tgt {
        return boundary("morphisms need equal boundaries");
    }
    let radices: Vec<usize> = (0..p.num_elements())
        .map(|t| {
            let (y, x, _) = p.locate(t);
            r.mat().entry(y, x)
        })
        .collect();
    let total = radices.iter().try_fold(1u128, |acc, &k| acc.checked_mul(k as u128)).unwrap_or(u128::MAX);
    check_cap(total, cap)?;
    let mut out = Vec::new();
    for choice in Odometer::new(radices) {
        let table: Vec<usize> = choice
            .iter()
            .enumerate()
            .map(|(t, &i)| {
                let (y, x, _) = p.locate(t);
                r.element(y, x, i)
            })
            .collect();
        if let Ok(m) = BimoduleMorphism::globular(p, r, table) {
            out.push(m);
        }
    }
    Ok(out)
}
