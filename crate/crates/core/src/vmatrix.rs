//! Matrices of finite sets and the squares between them.
//!
//! A matrix `x : A ⇸ B` assigns a finite set `x[b;a]` to every pair; its
//! elements are the canonical indices `0..size`. Composites are materialised
//! with a fixed tagged-tuple encoding so every "up to iso" statement can be
//! witnessed by an explicit bijection.

use crate::error::{boundary, shape, Result};
use crate::finkit::{check_cap, count_functions, product, FinFunction, FinSet, Odometer};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub src: FinSet,
    pub tgt: FinSet,
    entries: Vec<usize>,
}

impl Mat {
    pub fn new(src: usize, tgt: usize, entry: impl Fn(usize, usize) -> usize) -> Mat {
        let mut entries = Vec::with_capacity(src * tgt);
        for b in 0..tgt {
            for a in 0..src {
                entries.push(entry(b, a));
            }
        }
        Mat { src: FinSet::new(src), tgt: FinSet::new(tgt), entries }
    }

    /// Entries listed row by row, `entries[b * src + a] = |x[b;a]|`.
    pub fn from_entries(src: usize, tgt: usize, entries: Vec<usize>) -> Result<Mat> {
        if entries.len() != src * tgt {
            return shape(format!("{} entries for a {tgt}x{src} matrix", entries.len()));
        }
        Ok(Mat { src: FinSet::new(src), tgt: FinSet::new(tgt), entries })
    }

    pub fn identity(n: usize) -> Mat {
        Mat::new(n, n, |b, a| usize::from(a == b))
    }

    pub fn entry(&self, b: usize, a: usize) -> usize {
        self.entries[b * self.src.size + a]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn same_shape(&self, other: &Mat) -> bool {
        self.src.size == other.src.size && self.tgt.size == other.tgt.size
    }
}

/// Encoding of `(y∘x)[c;a] = Σ_b y[c;b] × x[b;a]`: the summand for `b`
/// starts at `offset(b)`, and `(s, t)` sits at `offset(b) + s·|x[b;a]| + t`.
pub fn composite_offsets(y: &Mat, x: &Mat, c: usize, a: usize) -> Vec<usize> {
    let mut offs = Vec::with_capacity(x.tgt.size + 1);
    let mut acc = 0;
    for b in 0..x.tgt.size {
        offs.push(acc);
        acc += y.entry(c, b) * x.entry(b, a);
    }
    offs.push(acc);
    offs
}

pub fn composite_encode(y: &Mat, x: &Mat, c: usize, a: usize, b: usize, s: usize, t: usize) -> usize {
    composite_offsets(y, x, c, a)[b] + s * x.entry(b, a) + t
}

/// Inverse of `composite_encode`: returns `(b, s, t)`.
pub fn composite_decode(y: &Mat, x: &Mat, c: usize, a: usize, e: usize) -> (usize, usize, usize) {
    let offs = composite_offsets(y, x, c, a);
    let b = (0..x.tgt.size).rfind(|&b| offs[b] <= e && e < offs[b + 1]).expect("element out of range");
    let w = x.entry(b, a);
    let r = e - offs[b];
    (b, r / w, r % w)
}

pub fn mat_compose(y: &Mat, x: &Mat) -> Result<Mat> {
    if x.tgt.size != y.src.size {
        return boundary(format!("composite needs x.tgt = y.src, got {} and {}", x.tgt.size, y.src.size));
    }
    Ok(Mat::new(x.src.size, y.tgt.size, |c, a| {
        (0..x.tgt.size).map(|b| y.entry(c, b) * x.entry(b, a)).sum()
    }))
}

/// Pairs `(a, b)` of a product of objects are indexed `a·|B| + b`; entry
/// elements `(s, t)` of a tensor are indexed `s·|y[b';b]| + t`.
pub fn mat_tensor(x: &Mat, y: &Mat) -> Mat {
    let (na, nb) = (x.src.size, y.src.size);
    let (na2, nb2) = (x.tgt.size, y.tgt.size);
    Mat::new(na * nb, na2 * nb2, |t, s| x.entry(t / nb2, s / nb) * y.entry(t % nb2, s % nb))
}

/// A square `x ⇒ y` with vertical maps `f` on sources and `g` on targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatTwoMorphism {
    pub source: Mat,
    pub target: Mat,
    pub f: FinFunction,
    pub g: FinFunction,
    /// `comp[b * |A| + a] : x[b;a] → y[g b; f a]`.
    pub comp: Vec<FinFunction>,
}

impl MatTwoMorphism {
    pub fn new(
        source: Mat,
        target: Mat,
        f: FinFunction,
        g: FinFunction,
        comp: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<MatTwoMorphism> {
        if f.dom.size != source.src.size || f.cod.size != target.src.size {
            return boundary("source map does not match the matrices");
        }
        if g.dom.size != source.tgt.size || g.cod.size != target.tgt.size {
            return boundary("target map does not match the matrices");
        }
        let mut comps = Vec::with_capacity(source.entries.len());
        for b in 0..source.tgt.size {
            for a in 0..source.src.size {
                let n = source.entry(b, a);
                let m = target.entry(g.apply(b), f.apply(a));
                let table = (0..n).map(|e| comp(b, a, e)).collect();
                comps.push(FinFunction::new(n, m, table)?);
            }
        }
        Ok(MatTwoMorphism { source, target, f, g, comp: comps })
    }

    pub fn identity(x: &Mat) -> MatTwoMorphism {
        let (f, g) = (FinFunction::identity(x.src.size), FinFunction::identity(x.tgt.size));
        MatTwoMorphism::new(x.clone(), x.clone(), f, g, |_, _, e| e).unwrap()
    }

    pub fn component(&self, b: usize, a: usize) -> &FinFunction {
        &self.comp[b * self.source.src.size + a]
    }

    pub fn apply(&self, b: usize, a: usize, e: usize) -> usize {
        self.component(b, a).apply(e)
    }

    pub fn is_globular(&self) -> bool {
        self.f == FinFunction::identity(self.f.dom.size) && self.g == FinFunction::identity(self.g.dom.size)
    }

    pub fn is_componentwise_bijective(&self) -> bool {
        self.comp.iter().all(FinFunction::is_bijective)
    }

    /// Vertical composite `self · alpha` (apply `alpha` first).
    pub fn vcomp(&self, alpha: &MatTwoMorphism) -> Result<MatTwoMorphism> {
        if alpha.target != self.source {
            return boundary("vertical composite needs matching middle matrix");
        }
        let f = self.f.after(&alpha.f)?;
        let g = self.g.after(&alpha.g)?;
        MatTwoMorphism::new(alpha.source.clone(), self.target.clone(), f, g, |b, a, e| {
            let e1 = alpha.apply(b, a, e);
            self.apply(alpha.g.apply(b), alpha.f.apply(a), e1)
        })
    }

    /// Horizontal composite `self ∘ alpha`, where `alpha : x ⇒ x'` and
    /// `self : y ⇒ y'` share the middle vertical map.
    pub fn hcomp(&self, alpha: &MatTwoMorphism) -> Result<MatTwoMorphism> {
        if alpha.g != self.f {
            return boundary("horizontal composite needs a shared middle vertical map");
        }
        let (x, y) = (&alpha.source, &self.source);
        let (x2, y2) = (&alpha.target, &self.target);
        let src = mat_compose(y, x)?;
        let tgt = mat_compose(y2, x2)?;
        MatTwoMorphism::new(src, tgt, alpha.f.clone(), self.g.clone(), |c, a, e| {
            let (b, s, t) = composite_decode(y, x, c, a, e);
            let (gb, fa, hc) = (alpha.g.apply(b), alpha.f.apply(a), self.g.apply(c));
            composite_encode(y2, x2, hc, fa, gb, self.apply(c, b, s), alpha.apply(b, a, t))
        })
    }

    /// Componentwise tensor of two squares.
    pub fn tensor(&self, other: &MatTwoMorphism) -> Result<MatTwoMorphism> {
        let src = mat_tensor(&self.source, &other.source);
        let tgt = mat_tensor(&self.target, &other.target);
        let f = pair_map(&self.f, &other.f);
        let g = pair_map(&self.g, &other.g);
        let nb = other.source.src.size;
        let nb2 = other.source.tgt.size;
        MatTwoMorphism::new(src, tgt, f, g, |t, s, e| {
            let (a, b, a2, b2) = (s / nb, s % nb, t / nb2, t % nb2);
            let w = other.source.entry(b2, b);
            let (e1, e2) = (e / w, e % w);
            let w2 = other.target.entry(other.g.apply(b2), other.f.apply(b));
            self.apply(a2, a, e1) * w2 + other.apply(b2, b, e2)
        })
    }

    /// Inverse of a componentwise bijective globular square.
    pub fn inverse(&self) -> Option<MatTwoMorphism> {
        if !self.is_globular() || !self.is_componentwise_bijective() {
            return None;
        }
        let invs: Vec<FinFunction> = self.comp.iter().map(|c| c.inverse().unwrap()).collect();
        let na = self.source.src.size;
        MatTwoMorphism::new(self.target.clone(), self.source.clone(), self.f.clone(), self.g.clone(), |b, a, e| {
            invs[b * na + a].apply(e)
        })
        .ok()
    }
}

/// `f × g` on pair-indexed objects.
pub fn pair_map(f: &FinFunction, g: &FinFunction) -> FinFunction {
    let (n1, n2, m2) = (f.dom.size, g.dom.size, g.cod.size);
    let table = (0..n1 * n2).map(|i| f.apply(i / n2) * m2 + g.apply(i % n2)).collect();
    FinFunction::new(n1 * n2, f.cod.size * m2, table).unwrap()
}

/// A globular square whose components are all bijections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobularIso(MatTwoMorphism);

impl GlobularIso {
    pub fn new(m: MatTwoMorphism) -> Result<GlobularIso> {
        if !m.is_globular() {
            return shape("square is not globular");
        }
        if !m.is_componentwise_bijective() {
            return shape("square has a non-bijective component");
        }
        Ok(GlobularIso(m))
    }

    pub fn square(&self) -> &MatTwoMorphism {
        &self.0
    }

    pub fn into_square(self) -> MatTwoMorphism {
        self.0
    }

    pub fn inverse(&self) -> GlobularIso {
        GlobularIso(self.0.inverse().unwrap())
    }
}

/// `id_B ∘ x ≅ x`.
pub fn left_unitor(x: &Mat) -> GlobularIso {
    let id = Mat::identity(x.tgt.size);
    let src = mat_compose(&id, x).unwrap();
    let m = MatTwoMorphism::new(
        src,
        x.clone(),
        FinFunction::identity(x.src.size),
        FinFunction::identity(x.tgt.size),
        |b, a, e| composite_decode(&id, x, b, a, e).2,
    )
    .unwrap();
    GlobularIso::new(m).unwrap()
}

/// `x ∘ id_A ≅ x`.
pub fn right_unitor(x: &Mat) -> GlobularIso {
    let id = Mat::identity(x.src.size);
    let src = mat_compose(x, &id).unwrap();
    let m = MatTwoMorphism::new(
        src,
        x.clone(),
        FinFunction::identity(x.src.size),
        FinFunction::identity(x.tgt.size),
        |b, a, e| composite_decode(x, &id, b, a, e).1,
    )
    .unwrap();
    GlobularIso::new(m).unwrap()
}

/// `(z∘y)∘x ≅ z∘(y∘x)`.
pub fn associator(z: &Mat, y: &Mat, x: &Mat) -> Result<GlobularIso> {
    let zy = mat_compose(z, y)?;
    let yx = mat_compose(y, x)?;
    let src = mat_compose(&zy, x)?;
    let tgt = mat_compose(z, &yx)?;
    let m = MatTwoMorphism::new(
        src,
        tgt,
        FinFunction::identity(x.src.size),
        FinFunction::identity(z.tgt.size),
        |d, a, e| {
            let (b, st, u) = composite_decode(&zy, x, d, a, e);
            let (c, s, t) = composite_decode(z, y, d, b, st);
            let inner = composite_encode(y, x, c, a, b, t, u);
            composite_encode(z, &yx, d, a, c, s, inner)
        },
    )?;
    GlobularIso::new(m)
}

/// Swap `x ⊠ y ≅ y ⊠ x`, lying over the swaps of the object pairs.
pub fn tensor_swap(x: &Mat, y: &Mat) -> MatTwoMorphism {
    let src = mat_tensor(x, y);
    let tgt = mat_tensor(y, x);
    let f = swap_map(x.src.size, y.src.size);
    let g = swap_map(x.tgt.size, y.tgt.size);
    let (nb, nb2) = (y.src.size, y.tgt.size);
    MatTwoMorphism::new(src, tgt, f, g, |t, s, e| {
        let (a, b, a2, b2) = (s / nb, s % nb, t / nb2, t % nb2);
        let w = y.entry(b2, b);
        let (e1, e2) = (e / w, e % w);
        e2 * x.entry(a2, a) + e1
    })
    .unwrap()
}

/// `(a, b) ↦ (b, a)` on pair indices.
pub fn swap_map(na: usize, nb: usize) -> FinFunction {
    let table = (0..na * nb).map(|i| (i % nb) * na + i / nb).collect();
    FinFunction::new(na * nb, na * nb, table).unwrap()
}

/// Interchanger `(y1∘x1) ⊠ (y2∘x2) ⇒ (y1⊠y2) ∘ (x1⊠x2)`. Invertible for
/// matrices of sets, but kept as an ordinary square.
pub fn interchanger(y1: &Mat, x1: &Mat, y2: &Mat, x2: &Mat) -> Result<MatTwoMorphism> {
    let c1 = mat_compose(y1, x1)?;
    let c2 = mat_compose(y2, x2)?;
    let src = mat_tensor(&c1, &c2);
    let yy = mat_tensor(y1, y2);
    let xx = mat_tensor(x1, x2);
    let tgt = mat_compose(&yy, &xx)?;
    let (n_a2, n_c2, n_b2) = (x2.src.size, y2.tgt.size, x2.tgt.size);
    MatTwoMorphism::new(
        src,
        tgt,
        FinFunction::identity(x1.src.size * n_a2),
        FinFunction::identity(y1.tgt.size * n_c2),
        |c, a, e| {
            let (ci, cj, ai, aj) = (c / n_c2, c % n_c2, a / n_a2, a % n_a2);
            let w = c2.entry(cj, aj);
            let (e1, e2) = (e / w, e % w);
            let (b1, s1, t1) = composite_decode(y1, x1, ci, ai, e1);
            let (b2, s2, t2) = composite_decode(y2, x2, cj, aj, e2);
            let b = b1 * n_b2 + b2;
            let s = s1 * y2.entry(cj, b2) + s2;
            let t = t1 * x2.entry(b2, aj) + t2;
            composite_encode(&yy, &xx, c, a, b, s, t)
        },
    )
}

/// `σ : a1⊠a2 ⇒ (a1⊠id)∘(id⊠a2)` and `τ : a1⊠a2 ⇒ (id⊠a2)∘(a1⊠id)`,
/// each an inverse unitor pair followed by the interchanger.
pub fn sigma_tau(a1: &Mat, a2: &Mat) -> Result<(MatTwoMorphism, MatTwoMorphism)> {
    let id1 = Mat::identity(a1.src.size);
    let id1t = Mat::identity(a1.tgt.size);
    let id2 = Mat::identity(a2.src.size);
    let id2t = Mat::identity(a2.tgt.size);

    // a1 ≅ a1 ∘ id, a2 ≅ id ∘ a2, then ξ
    let unit_s = right_unitor(a1).inverse().into_square().tensor(left_unitor(a2).inverse().square())?;
    let sigma = interchanger(a1, &id1, &id2t, a2)?.vcomp(&unit_s)?;

    let unit_t = left_unitor(a1).inverse().into_square().tensor(right_unitor(a2).inverse().square())?;
    let tau = interchanger(&id1t, a1, a2, &id2)?.vcomp(&unit_t)?;
    Ok((sigma, tau))
}

/// The comparison `(id⊠a2)∘(a1⊠id) ≅ (a1⊠id)∘(id⊠a2)` that moves the
/// middle object from `(a1', a2)` to `(a1, a2')`.
pub fn sigma_tau_comparison(a1: &Mat, a2: &Mat) -> Result<MatTwoMorphism> {
    let id1 = Mat::identity(a1.src.size);
    let id1t = Mat::identity(a1.tgt.size);
    let id2 = Mat::identity(a2.src.size);
    let id2t = Mat::identity(a2.tgt.size);
    let l_top = mat_tensor(&id1t, a2);
    let l_bot = mat_tensor(a1, &id2);
    let r_top = mat_tensor(a1, &id2t);
    let r_bot = mat_tensor(&id1, a2);
    let src = mat_compose(&l_top, &l_bot)?;
    let tgt = mat_compose(&r_top, &r_bot)?;
    let (n2, n2t) = (a2.src.size, a2.tgt.size);
    MatTwoMorphism::new(
        src,
        tgt,
        FinFunction::identity(a1.src.size * n2),
        FinFunction::identity(a1.tgt.size * n2t),
        |c, a, e| {
            // s = (δ, s2) and t = (t1, δ); the singleton factors contribute nothing to the index
            let (_, s2, t1) = composite_decode(&l_top, &l_bot, c, a, e);
            let mid = (a / n2) * n2t + c % n2t;
            composite_encode(&r_top, &r_bot, c, a, mid, t1, s2)
        },
    )
}

/// Functions `B → C`, indexed lexicographically by their tables.
pub fn function_space(nb: usize, nc: usize) -> crate::finkit::Product {
    product(&vec![nc; nb])
}

/// Internal hom `⟦y,z⟧ : ⟦B,C⟧ ⇸ ⟦B',C'⟧` for `y : B ⇸ B'`, `z : C ⇸ C'`.
///
/// An element of entry `(g', g)` is a tuple, over pairs `(b, b')` in
/// lexicographic order, of functions `y[b';b] → z[g'(b'); g(b)]`.
pub fn mat_hom(y: &Mat, z: &Mat, cap: u128) -> Result<Mat> {
    let (nb, nb2, nc, nc2) = (y.src.size, y.tgt.size, z.src.size, z.tgt.size);
    let src = function_space(nb, nc);
    let tgt = function_space(nb2, nc2);
    check_cap(src.total as u128 * tgt.total as u128, cap)?;
    let mut entries = Vec::with_capacity(src.total * tgt.total);
    for gi2 in 0..tgt.total {
        let g2 = tgt.decode(gi2);
        for gi in 0..src.total {
            let g = src.decode(gi);
            let mut n: u128 = 1;
            for b in 0..nb {
                for b2 in 0..nb2 {
                    n = n.saturating_mul(count_functions(y.entry(b2, b), z.entry(g2[b2], g[b])));
                }
            }
            check_cap(n, cap)?;
            entries.push(n as usize);
        }
    }
    Mat::from_entries(src.total, tgt.total, entries)
}

/// Radices of the tuple encoding an element of `⟦y,z⟧[g'; g]`.
fn hom_entry_radices(y: &Mat, z: &Mat, g: &[usize], g2: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 0..y.src.size {
        for b2 in 0..y.tgt.size {
            out.push((y.entry(b2, b), z.entry(g2[b2], g[b])));
        }
    }
    out
}

fn encode_fn(table: &[usize], cod: usize) -> usize {
    table.iter().fold(0, |acc, &v| acc * cod + v)
}

fn decode_fn(mut code: usize, dom: usize, cod: usize) -> Vec<usize> {
    let mut t = vec![0; dom];
    for k in (0..dom).rev() {
        t[k] = code % cod;
        code /= cod;
    }
    t
}

/// Transposes a square `φ : x ⊠ y ⇒ z` (over `f : A×B → C`, `f' : A'×B' → C'`)
/// into `ψ : x ⇒ ⟦y,z⟧` (over the curried maps).
pub fn transpose_to_hom(phi: &MatTwoMorphism, x: &Mat, y: &Mat, z: &Mat, cap: u128) -> Result<MatTwoMorphism> {
    let (na, nb, na2, nb2) = (x.src.size, y.src.size, x.tgt.size, y.tgt.size);
    let (nc, nc2) = (z.src.size, z.tgt.size);
    if phi.source != mat_tensor(x, y) || phi.target != *z {
        return boundary("square does not go from x ⊠ y to z");
    }
    let hom = mat_hom(y, z, cap)?;
    let sp = function_space(nb, nc);
    let tp = function_space(nb2, nc2);
    let curry = |f: &FinFunction, n_a: usize, n_b: usize, space: &crate::finkit::Product| {
        let table = (0..n_a).map(|a| space.encode(&(0..n_b).map(|b| f.apply(a * n_b + b)).collect::<Vec<_>>())).collect();
        FinFunction::new(n_a, space.total, table).unwrap()
    };
    let lf = curry(&phi.f, na, nb, &sp);
    let lg = curry(&phi.g, na2, nb2, &tp);
    MatTwoMorphism::new(x.clone(), hom, lf.clone(), lg.clone(), |a2, a, s| {
        let g = sp.decode(lf.apply(a));
        let g2 = tp.decode(lg.apply(a2));
        let radices = hom_entry_radices(y, z, &g, &g2);
        let mut code = 0;
        let mut k = 0;
        for b in 0..nb {
            for b2 in 0..nb2 {
                let (dom, cod) = radices[k];
                let table: Vec<usize> = (0..dom)
                    .map(|t| phi.apply(a2 * nb2 + b2, a * nb + b, s * y.entry(b2, b) + t))
                    .collect();
                code = code * count_functions(dom, cod) as usize + encode_fn(&table, cod);
                k += 1;
            }
        }
        code
    })
}

/// Inverse of `transpose_to_hom`.
pub fn transpose_from_hom(psi: &MatTwoMorphism, x: &Mat, y: &Mat, z: &Mat) -> Result<MatTwoMorphism> {
    let (na, nb, na2, nb2) = (x.src.size, y.src.size, x.tgt.size, y.tgt.size);
    let (nc, nc2) = (z.src.size, z.tgt.size);
    let sp = function_space(nb, nc);
    let tp = function_space(nb2, nc2);
    if psi.source != *x || psi.f.cod.size != sp.total || psi.g.cod.size != tp.total {
        return boundary("square does not go from x to the hom matrix");
    }
    let uncurry = |f: &FinFunction, n_a: usize, n_b: usize, n_c: usize, space: &crate::finkit::Product| {
        let table = (0..n_a * n_b).map(|i| space.decode(f.apply(i / n_b))[i % n_b]).collect();
        FinFunction::new(n_a * n_b, n_c, table).unwrap()
    };
    let f = uncurry(&psi.f, na, nb, nc, &sp);
    let g = uncurry(&psi.g, na2, nb2, nc2, &tp);
    MatTwoMorphism::new(mat_tensor(x, y), z.clone(), f, g, |t2, t1, e| {
        let (a2, b2, a, b) = (t2 / nb2, t2 % nb2, t1 / nb, t1 % nb);
        let w = y.entry(b2, b);
        let (s, t) = (e / w, e % w);
        let g_ = sp.decode(psi.f.apply(a));
        let g2_ = tp.decode(psi.g.apply(a2));
        let radices = hom_entry_radices(y, z, &g_, &g2_);
        let mut code = psi.apply(a2, a, s);
        let target = b * nb2 + b2;
        let mut digit = 0;
        for k in (0..radices.len()).rev() {
            let r = count_functions(radices[k].0, radices[k].1) as usize;
            if k == target {
                digit = code % r;
            }
            code /= r;
        }
        decode_fn(digit, radices[target].0, radices[target].1)[t]
    })
}

/// All squares `x ⇒ y` over all pairs of vertical maps.
pub fn enumerate_two_morphisms(x: &Mat, y: &Mat, cap: u128) -> Result<Vec<MatTwoMorphism>> {
    let (na, nb, na2, nb2) = (x.src.size, x.tgt.size, y.src.size, y.tgt.size);
    let mut out = Vec::new();
    let mut visited: u128 = 0;
    for f in Odometer::new(vec![na2; na]) {
        for g in Odometer::new(vec![nb2; nb]) {
            let mut radices = Vec::new();
            for b in 0..nb {
                for a in 0..na {
                    let n = count_functions(x.entry(b, a), y.entry(g[b], f[a]));
                    check_cap(n, cap)?;
                    radices.push(n as usize);
                }
            }
            for choice in Odometer::new(radices) {
                visited += 1;
                check_cap(visited, cap)?;
                let ff = FinFunction::new(na, na2, f.clone())?;
                let gg = FinFunction::new(nb, nb2, g.clone())?;
                out.push(MatTwoMorphism::new(x.clone(), y.clone(), ff, gg, |b, a, e| {
                    let dom = x.entry(b, a);
                    let cod = y.entry(g[b], f[a]);
                    decode_fn(choice[b * na + a], dom, cod)[e]
                })?);
            }
        }
    }
    Ok(out)
}

/// Companion `f_*[b;a] = δ_{b, f a}` and conjoint `f^*[a;b] = δ_{f a, b}`.
pub fn companion_conjoint(f: &FinFunction) -> (Mat, Mat) {
    let (na, nb) = (f.dom.size, f.cod.size);
    let comp = Mat::new(na, nb, |b, a| usize::from(f.apply(a) == b));
    let conj = Mat::new(nb, na, |a, b| usize::from(f.apply(a) == b));
    (comp, conj)
}

/// The four cells relating a function to its companion and conjoint:
/// `p1 : f_* ⇒ id_B` over `(f, 1)`, `q1 : id_A ⇒ f_*` over `(1, f)`,
/// `p2 : f^* ⇒ id_B` over `(1, f)`, `q2 : id_A ⇒ f^*` over `(f, 1)`.
pub struct CompanionCells {
    pub p1: MatTwoMorphism,
    pub q1: MatTwoMorphism,
    pub p2: MatTwoMorphism,
    pub q2: MatTwoMorphism,
}

pub fn companion_cells(f: &FinFunction) -> CompanionCells {
    let (na, nb) = (f.dom.size, f.cod.size);
    let (comp, conj) = companion_conjoint(f);
    let (ida, idb) = (FinFunction::identity(na), FinFunction::identity(nb));
    let (ma, mb) = (Mat::identity(na), Mat::identity(nb));
    CompanionCells {
        p1: MatTwoMorphism::new(comp.clone(), mb.clone(), f.clone(), idb.clone(), |_, _, e| e).unwrap(),
        q1: MatTwoMorphism::new(ma.clone(), comp, ida.clone(), f.clone(), |_, _, e| e).unwrap(),
        p2: MatTwoMorphism::new(conj.clone(), mb, idb, f.clone(), |_, _, e| e).unwrap(),
        q2: MatTwoMorphism::new(ma, conj, f.clone(), ida, |_, _, e| e).unwrap(),
    }
}

/// The vertical identity square on `f`: `id_A ⇒ id_B` over `(f, f)`.
pub fn vertical_identity(f: &FinFunction) -> MatTwoMorphism {
    let (na, nb) = (f.dom.size, f.cod.size);
    MatTwoMorphism::new(Mat::identity(na), Mat::identity(nb), f.clone(), f.clone(), |_, _, e| e).unwrap()
}

/// `Tx = {(a, b, t)}` ordered lexicographically, with its two projections and
/// the universal square `id_{Tx} ⇒ x` over them.
pub struct Tabulator {
    pub apex: FinSet,
    pub elements: Vec<(usize, usize, usize)>,
    pub pi_s: FinFunction,
    pub pi_t: FinFunction,
    pub pi: MatTwoMorphism,
}

pub fn tabulator(x: &Mat) -> Tabulator {
    let mut elements = Vec::new();
    for a in 0..x.src.size {
        for b in 0..x.tgt.size {
            for t in 0..x.entry(b, a) {
                elements.push((a, b, t));
            }
        }
    }
    let n = elements.len();
    let pi_s = FinFunction::new(n, x.src.size, elements.iter().map(|e| e.0).collect()).unwrap();
    let pi_t = FinFunction::new(n, x.tgt.size, elements.iter().map(|e| e.1).collect()).unwrap();
    let pi = MatTwoMorphism::new(Mat::identity(n), x.clone(), pi_s.clone(), pi_t.clone(), |_, i, _| elements[i].2).unwrap();
    Tabulator { apex: FinSet::new(n), elements, pi_s, pi_t, pi }
}

impl Tabulator {
    /// The unique `h : X → Tx` through which a square `θ : id_X ⇒ x` factors.
    pub fn factor(&self, theta: &MatTwoMorphism) -> Result<FinFunction> {
        let n = theta.source.src.size;
        if theta.source != Mat::identity(n) {
            return shape("cell must start at a horizontal identity");
        }
        let table = (0..n)
            .map(|i| {
                let key = (theta.f.apply(i), theta.g.apply(i), theta.apply(i, i, 0));
                self.elements.binary_search(&key).unwrap()
            })
            .collect();
        FinFunction::new(n, self.apex.size, table)
    }
}
