//! Functors of several variables. A sesquifunctor `A, B → C` is a functor
//! in each variable separately; it is commuting when the two ways of
//! moving along `(f, g)` agree, which is checked through the σ/τ squares of
//! the hom matrices.

use super::{FinCategory, FinFunctor};
use crate::error::{boundary, shape, Result};
use crate::finkit::{product, FinFunction, Product};
use crate::perm::{permute_list, Perm};
use crate::vmatrix::{mat_compose, mat_tensor, sigma_tau, Mat, MatTwoMorphism};

/// Binary multimorphism. Objects `(a, b)` are indexed `a·|B| + b`;
/// `phi1[b]` is the morphism map of `(−, b)`, `phi2[a]` of `(a, −)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sesquifunctor {
    pub on_obj: Vec<usize>,
    pub phi1: Vec<Vec<usize>>,
    pub phi2: Vec<Vec<usize>>,
}

impl Sesquifunctor {
    /// The sesquifunctor of a functor out of `A × B` (objects `a·|B| + b`,
    /// morphisms `f·|mor B| + g`).
    pub fn from_product(h: &FinFunctor, a: &FinCategory, b: &FinCategory) -> Sesquifunctor {
        let mb = b.num_morphisms();
        let on_obj = (0..a.num_objects() * b.num_objects()).map(|o| h.obj(o)).collect();
        let phi1 = (0..b.num_objects())
            .map(|y| (0..a.num_morphisms()).map(|f| h.mor(f * mb + b.id(y))).collect())
            .collect();
        let phi2 = (0..a.num_objects())
            .map(|x| (0..mb).map(|g| h.mor(a.id(x) * mb + g)).collect())
            .collect();
        Sesquifunctor { on_obj, phi1, phi2 }
    }

    /// Restriction of a functor `H` along whiskering functors `iota1[y] : A → T`, `iota2[x] : B → T`.
    pub fn restrict(h: &FinFunctor, iota1: &[FinFunctor], iota2: &[FinFunctor], a: &FinCategory, b: &FinCategory) -> Sesquifunctor {
        let nb = b.num_objects();
        let on_obj = (0..a.num_objects() * nb).map(|o| h.obj(o)).collect();
        let phi1 = iota1.iter().map(|j| (0..a.num_morphisms()).map(|f| h.mor(j.mor(f))).collect()).collect();
        let phi2 = iota2.iter().map(|j| (0..b.num_morphisms()).map(|g| h.mor(j.mor(g))).collect()).collect();
        Sesquifunctor { on_obj, phi1, phi2 }
    }

    pub fn obj(&self, x: usize, y: usize) -> usize {
        self.on_obj[x * self.phi1.len() + y]
    }

    /// The functor `(−, y) : A → C`.
    pub fn left(&self, y: usize, a: &FinCategory, c: &FinCategory) -> Result<FinFunctor> {
        let obj = (0..a.num_objects()).map(|x| self.obj(x, y)).collect();
        FinFunctor::new(obj, self.phi1[y].clone(), a, c)
    }

    /// The functor `(x, −) : B → C`.
    pub fn right(&self, x: usize, b: &FinCategory, c: &FinCategory) -> Result<FinFunctor> {
        let obj = (0..b.num_objects()).map(|y| self.obj(x, y)).collect();
        FinFunctor::new(obj, self.phi2[x].clone(), b, c)
    }

    /// Swap the two variables.
    pub fn swap(&self, na: usize) -> Sesquifunctor {
        let nb = self.phi1.len();
        let on_obj = (0..nb * na).map(|o| self.obj(o % na, o / na)).collect();
        Sesquifunctor { on_obj, phi1: self.phi2.clone(), phi2: self.phi1.clone() }
    }
}

/// True iff both families are functors agreeing on objects. Shape errors
/// are reported as errors, failed functor laws as `false`.
pub fn sesqui_check(s: &Sesquifunctor, a: &FinCategory, b: &FinCategory, c: &FinCategory) -> Result<bool> {
    let (na, nb) = (a.num_objects(), b.num_objects());
    if s.on_obj.len() != na * nb || s.phi1.len() != nb || s.phi2.len() != na {
        return shape("sesquifunctor tables do not match the categories");
    }
    if s.on_obj.iter().any(|&o| o >= c.num_objects())
        || s.phi1.iter().any(|m| m.len() != a.num_morphisms() || m.iter().any(|&h| h >= c.num_morphisms()))
        || s.phi2.iter().any(|m| m.len() != b.num_morphisms() || m.iter().any(|&h| h >= c.num_morphisms()))
    {
        return shape("sesquifunctor entry out of range");
    }
    Ok((0..nb).all(|y| s.left(y, a, c).is_ok()) && (0..na).all(|x| s.right(x, b, c).is_ok()))
}

/// A pair `(f, g)` on which the hexagon fails: `(f, y')∘(x, g)` and
/// `(x', g)∘(f, y)` are the two distinct composites in C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexagonFailure {
    pub f: usize,
    pub g: usize,
    pub via_sigma: usize,
    pub via_tau: usize,
}

/// The data of the hexagon that depends only on `A`, `B`, `C`.
pub struct Hexagon<'a> {
    a: &'a FinCategory,
    b: &'a FinCategory,
    c: &'a FinCategory,
    left_mat: Mat,
    right_mat: Mat,
    sigma: MatTwoMorphism,
    tau: MatTwoMorphism,
    mu: MatTwoMorphism,
}

/// Composition of `C` as a square `c∘c ⇒ c`.
pub fn composition_square(c: &FinCategory) -> MatTwoMorphism {
    let h = c.hom_mat();
    let cc = mat_compose(&h, &h).unwrap();
    let n = c.num_objects();
    MatTwoMorphism::new(cc.clone(), h.clone(), FinFunction::identity(n), FinFunction::identity(n), |z, x, e| {
        let (y, s, t) = crate::vmatrix::composite_decode(&h, &h, z, x, e);
        c.local_index(c.comp(c.hom(y, z)[s], c.hom(x, y)[t]))
    })
    .unwrap()
}

impl<'a> Hexagon<'a> {
    pub fn new(a: &'a FinCategory, b: &'a FinCategory, c: &'a FinCategory) -> Result<Hexagon<'a>> {
        let (ha, hb) = (a.hom_mat(), b.hom_mat());
        let (sigma, tau) = sigma_tau(&ha, &hb)?;
        let left_mat = mat_tensor(&ha, &Mat::identity(b.num_objects()));
        let right_mat = mat_tensor(&Mat::identity(a.num_objects()), &hb);
        Ok(Hexagon { a, b, c, left_mat, right_mat, sigma, tau, mu: composition_square(c) })
    }

    /// `Φ1 : a⊠id ⇒ c` and `Φ2 : id⊠b ⇒ c` over the object map of `s`.
    fn components(&self, s: &Sesquifunctor) -> Result<(MatTwoMorphism, MatTwoMorphism)> {
        let (a, b, c) = (self.a, self.b, self.c);
        let nb = b.num_objects();
        let objs = FinFunction::new(a.num_objects() * nb, c.num_objects(), s.on_obj.clone())?;
        let hc = c.hom_mat();
        let phi1 = MatTwoMorphism::new(self.left_mat.clone(), hc.clone(), objs.clone(), objs.clone(), |t, src, e| {
            let f = a.hom(src / nb, t / nb)[e];
            c.local_index(s.phi1[src % nb][f])
        })?;
        let phi2 = MatTwoMorphism::new(self.right_mat.clone(), hc, objs.clone(), objs, |t, src, e| {
            let g = b.hom(src % nb, t % nb)[e];
            c.local_index(s.phi2[src / nb][g])
        })?;
        Ok((phi1, phi2))
    }

    /// Compares `μ·(Φ1∘Φ2)·σ` with `μ·(Φ2∘Φ1)·τ` elementwise.
    pub fn check(&self, s: &Sesquifunctor) -> Result<Option<HexagonFailure>> {
        let (a, b, c) = (self.a, self.b, self.c);
        let (phi1, phi2) = self.components(s)?;
        let lhs = self.mu.vcomp(&phi1.hcomp(&phi2)?)?.vcomp(&self.sigma)?;
        let rhs = self.mu.vcomp(&phi2.hcomp(&phi1)?)?.vcomp(&self.tau)?;
        let nb = b.num_objects();
        for t in 0..a.num_objects() * nb {
            for src in 0..a.num_objects() * nb {
                let (l, r) = (lhs.component(t, src), rhs.component(t, src));
                if l == r {
                    continue;
                }
                let (x, y, x2, y2) = (src / nb, src % nb, t / nb, t % nb);
                let w = b.hom(y, y2).len();
                let e = (0..l.dom.size).find(|&e| l.apply(e) != r.apply(e)).unwrap();
                let hom = c.hom(s.obj(x, y), s.obj(x2, y2));
                return Ok(Some(HexagonFailure {
                    f: a.hom(x, x2)[e / w],
                    g: b.hom(y, y2)[e % w],
                    via_sigma: hom[l.apply(e)],
                    via_tau: hom[r.apply(e)],
                }));
            }
        }
        Ok(None)
    }
}

/// Whether the hexagon commutes; on failure returns the offending pair.
pub fn is_commuting(s: &Sesquifunctor, a: &FinCategory, b: &FinCategory, c: &FinCategory) -> Result<std::result::Result<(), HexagonFailure>> {
    if !sesqui_check(s, a, b, c)? {
        return boundary("hexagon test needs a sesquifunctor");
    }
    Ok(match Hexagon::new(a, b, c)?.check(s)? {
        None => Ok(()),
        Some(fail) => Err(fail),
    })
}

/// The same condition written out on morphisms, without going through squares.
pub fn is_commuting_direct(s: &Sesquifunctor, a: &FinCategory, b: &FinCategory, c: &FinCategory) -> bool {
    for f in 0..a.num_morphisms() {
        for g in 0..b.num_morphisms() {
            let (x, x2, y, y2) = (a.src(f), a.tgt(f), b.src(g), b.tgt(g));
            let via_sigma = c.comp(s.phi1[y2][f], s.phi2[x][g]);
            let via_tau = c.comp(s.phi2[x2][g], s.phi1[y][f]);
            if via_sigma != via_tau {
                return false;
            }
        }
    }
    true
}

/// All sesquifunctors `A, B → C`, by independent choice of the functors
/// `(−, y)` and `(x, −)` over each object assignment.
pub fn enumerate_sesquifunctors(a: &FinCategory, b: &FinCategory, c: &FinCategory, cap: u128) -> Result<Vec<Sesquifunctor>> {
    use super::enumerate_functors_where;
    let (na, nb) = (a.num_objects(), b.num_objects());
    let mut out = Vec::new();
    for obj in crate::finkit::Odometer::new(vec![c.num_objects(); na * nb]) {
        let mut lefts = Vec::with_capacity(nb);
        for y in 0..nb {
            let want: Vec<usize> = (0..na).map(|x| obj[x * nb + y]).collect();
            lefts.push(enumerate_functors_where(a, c, cap, |o| o == want.as_slice())?);
        }
        let mut rights = Vec::with_capacity(na);
        for x in 0..na {
            let want = &obj[x * nb..(x + 1) * nb];
            rights.push(enumerate_functors_where(b, c, cap, |o| o == want)?);
        }
        let radices: Vec<usize> = lefts.iter().chain(&rights).map(Vec::len).collect();
        for choice in crate::finkit::Odometer::new(radices) {
            crate::finkit::check_cap(out.len() as u128 + 1, cap)?;
            let phi1 = (0..nb).map(|y| lefts[y][choice[y]].on_mor.table.clone()).collect();
            let phi2 = (0..na).map(|x| rights[x][choice[nb + x]].on_mor.table.clone()).collect();
            out.push(Sesquifunctor { on_obj: obj.clone(), phi1, phi2 });
        }
    }
    Ok(out)
}

/// A multimorphism `(A_1, …, A_n) → C`. Objects are tuples in product
/// order; `comps[i][ctx]` is the morphism map of the i-th variable with the
/// other coordinates fixed to the tuple `ctx` (product order, i omitted).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multimorphism {
    pub objects: Vec<usize>,
    pub on_obj: Vec<usize>,
    pub comps: Vec<Vec<Vec<usize>>>,
}

fn without(v: &[usize], i: usize) -> Vec<usize> {
    v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect()
}

fn with(v: &[usize], i: usize, x: usize) -> Vec<usize> {
    let mut w = v.to_vec();
    w.insert(i, x);
    w
}

impl Multimorphism {
    fn tuples(&self) -> Product {
        product(&self.objects)
    }

    fn context(&self, i: usize) -> Product {
        product(&without(&self.objects, i))
    }

    pub fn arity(&self) -> usize {
        self.objects.len()
    }

    pub fn obj(&self, tuple: &[usize]) -> usize {
        self.on_obj[self.tuples().encode(tuple)]
    }

    /// Image of `f` in variable `i`, other variables fixed at `ctx`.
    pub fn mor(&self, i: usize, ctx: &[usize], f: usize) -> usize {
        self.comps[i][self.context(i).encode(ctx)][f]
    }

    pub fn identity(a: &FinCategory) -> Multimorphism {
        Multimorphism {
            objects: vec![a.num_objects()],
            on_obj: (0..a.num_objects()).collect(),
            comps: vec![vec![(0..a.num_morphisms()).collect()]],
        }
    }

    pub fn from_functor(f: &FinFunctor) -> Multimorphism {
        Multimorphism { objects: vec![f.on_obj.dom.size], on_obj: f.on_obj.table.clone(), comps: vec![vec![f.on_mor.table.clone()]] }
    }

    pub fn from_sesquifunctor(s: &Sesquifunctor) -> Multimorphism {
        Multimorphism {
            objects: vec![s.phi2.len(), s.phi1.len()],
            on_obj: s.on_obj.clone(),
            comps: vec![s.phi1.clone(), s.phi2.clone()],
        }
    }

    /// Every variable-wise component is a functor.
    pub fn check(&self, sources: &[&FinCategory], target: &FinCategory) -> Result<()> {
        if sources.len() != self.arity() || sources.iter().zip(&self.objects).any(|(s, &n)| s.num_objects() != n) {
            return boundary("multimorphism sources do not match");
        }
        for (i, src) in sources.iter().enumerate() {
            let ctxs = self.context(i);
            for k in 0..ctxs.total {
                let ctx = ctxs.decode(k);
                let obj = (0..src.num_objects()).map(|x| self.obj(&with(&ctx, i, x))).collect();
                FinFunctor::new(obj, self.comps[i][k].clone(), src, target)?;
            }
        }
        Ok(())
    }

    /// The binary sesquifunctor in variables `i < j` with the rest fixed at `ctx`.
    pub fn binary(&self, i: usize, j: usize, ctx: &[usize]) -> Sesquifunctor {
        assert!(i < j);
        let full = |x: usize, y: usize| with(&with(ctx, i, x), j, y);
        let (ni, nj) = (self.objects[i], self.objects[j]);
        let on_obj = (0..ni * nj).map(|o| self.obj(&full(o / nj, o % nj))).collect();
        let phi1 = (0..nj).map(|y| self.comps[i][self.context(i).encode(&without(&full(0, y), i))].clone()).collect();
        let phi2 = (0..ni).map(|x| self.comps[j][self.context(j).encode(&without(&full(x, 0), j))].clone()).collect();
        Sesquifunctor { on_obj, phi1, phi2 }
    }

    /// `(i, j)`-commuting for every pair and every context.
    pub fn is_commuting(&self, sources: &[&FinCategory], target: &FinCategory) -> Result<bool> {
        for i in 0..self.arity() {
            for j in i + 1..self.arity() {
                let hex = Hexagon::new(sources[i], sources[j], target)?;
                let rest = product(&without(&without(&self.objects, j), i));
                for k in 0..rest.total {
                    if hex.check(&self.binary(i, j, &rest.decode(k)))?.is_some() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `self ∘_i f`: substitute `f` into variable `i`.
    pub fn compose_at(&self, i: usize, f: &Multimorphism, mid: &FinCategory) -> Result<Multimorphism> {
        if i >= self.arity() || self.objects[i] != mid.num_objects() {
            return boundary("composite needs the codomain to match the chosen variable");
        }
        let n = f.arity();
        let mut objects = self.objects[..i].to_vec();
        objects.extend(&f.objects);
        objects.extend(&self.objects[i + 1..]);
        let split = |t: &[usize]| -> (Vec<usize>, Vec<usize>) {
            let inner = t[i..i + n].to_vec();
            let mut outer = t[..i].to_vec();
            outer.extend(&t[i + n..]);
            (outer, inner)
        };
        let tuples = product(&objects);
        let on_obj = (0..tuples.total)
            .map(|k| {
                let (outer, inner) = split(&tuples.decode(k));
                self.obj(&with(&outer, i, f.obj(&inner)))
            })
            .collect();
        let mut comps = Vec::with_capacity(objects.len());
        for v in 0..objects.len() {
            let ctxs = product(&without(&objects, v));
            let mut per_ctx = Vec::with_capacity(ctxs.total);
            for k in 0..ctxs.total {
                let ctx = ctxs.decode(k);
                // any placeholder for the moving variable; it is removed again below
                let (outer, inner) = split(&with(&ctx, v, 0));
                let map: Vec<usize> = if v >= i && v < i + n {
                    let j = v - i;
                    let g_ctx = without(&with(&outer, i, 0), i);
                    let inner_ctx = without(&inner, j);
                    let fm = &f.comps[j][f.context(j).encode(&inner_ctx)];
                    let gm = &self.comps[i][self.context(i).encode(&g_ctx)];
                    fm.iter().map(|&h| gm[h]).collect()
                } else {
                    let u = if v < i { v } else { v - n + 1 };
                    let full = with(&outer, i, f.obj(&inner));
                    self.comps[u][self.context(u).encode(&without(&full, u))].clone()
                };
                per_ctx.push(map);
            }
            comps.push(per_ctx);
        }
        Ok(Multimorphism { objects, on_obj, comps })
    }

    /// Right action of `σ`: the new variable `i` is the old variable `σ(i)`.
    pub fn act(&self, sigma: &Perm) -> Multimorphism {
        let objects = permute_list(&self.objects, sigma);
        let tuples = product(&objects);
        let old = |t: &[usize]| {
            let mut y = vec![0; t.len()];
            for (i, &x) in t.iter().enumerate() {
                y[sigma.apply(i)] = x;
            }
            y
        };
        let on_obj = (0..tuples.total).map(|k| self.obj(&old(&tuples.decode(k)))).collect();
        let comps = (0..objects.len())
            .map(|i| {
                let ctxs = product(&without(&objects, i));
                let u = sigma.apply(i);
                (0..ctxs.total)
                    .map(|k| {
                        let full = old(&with(&ctxs.decode(k), i, 0));
                        self.comps[u][self.context(u).encode(&without(&full, u))].clone()
                    })
                    .collect()
            })
            .collect();
        Multimorphism { objects, on_obj, comps }
    }
}
