use super::profunctor::{enumerate_morphisms, BimoduleMorphism, Layout, Profunctor};
use crate::catmon::FinCategory;
use crate::error::{boundary, Result};
use crate::finkit::{check_cap, coequalize, FinFunction, Odometer};
use crate::vmatrix::{composite_decode, composite_encode, mat_compose, Mat};

/// The free bimodule `b∘x∘a` on a matrix `x : A ⇸ B`. Its elements are
/// triples `(g, e, f)` with `f : x' → x` in A, `e ∈ x[y;x]`, `g : y → y'` in B.
#[derive(Debug, Clone)]
pub struct FreeBimodule {
    pub generators: Mat,
    pub profunctor: Profunctor,
    layout: Layout,
    am: Mat,
    bm: Mat,
    xa: Mat,
}

/// An element `e` of a matrix entry `x[y;x]`, as `(y, x, local index)`.
pub type Cell = (usize, usize, usize);

struct Triples<'a> {
    a: &'a FinCategory,
    b: &'a FinCategory,
    x: &'a Mat,
    am: &'a Mat,
    bm: &'a Mat,
    xa: &'a Mat,
    layout: &'a Layout,
}

impl Triples<'_> {
    fn encode(&self, g: usize, e: Cell, f: usize) -> usize {
        let (a, b) = (self.a, self.b);
        let (y, x, i) = e;
        debug_assert!(b.src(g) == y && a.tgt(f) == x);
        let x2 = a.src(f);
        let inner = composite_encode(self.x, self.am, y, x2, x, i, a.local_index(f));
        let outer = composite_encode(self.bm, self.xa, b.tgt(g), x2, y, b.local_index(g), inner);
        self.layout.element(b.tgt(g), x2, outer)
    }

    fn decode(&self, t: usize) -> (usize, Cell, usize) {
        let (a, b) = (self.a, self.b);
        let (y2, x2, i) = self.layout.locate(t);
        let (y, s, inner) = composite_decode(self.bm, self.xa, y2, x2, i);
        let (x, e, r) = composite_decode(self.x, self.am, y, x2, inner);
        (b.hom(y, y2)[s], (y, x, e), a.hom(x2, x)[r])
    }
}

impl FreeBimodule {
    fn triples(&self) -> Triples<'_> {
        Triples {
            a: &self.profunctor.src,
            b: &self.profunctor.tgt,
            x: &self.generators,
            am: &self.am,
            bm: &self.bm,
            xa: &self.xa,
            layout: &self.layout,
        }
    }

    pub fn encode(&self, g: usize, e: Cell, f: usize) -> usize {
        self.triples().encode(g, e, f)
    }

    pub fn decode(&self, t: usize) -> (usize, Cell, usize) {
        self.triples().decode(t)
    }

    /// The generator `(id, e, id)`.
    pub fn unit(&self, e: Cell) -> usize {
        let (y, x, _) = e;
        self.encode(self.profunctor.tgt.id(y), e, self.profunctor.src.id(x))
    }
}

pub fn free_bimodule(x: &Mat, a: &FinCategory, b: &FinCategory) -> Result<FreeBimodule> {
    if x.src.size != a.num_objects() || x.tgt.size != b.num_objects() {
        return boundary("matrix does not match the categories");
    }
    let (am, bm) = (a.hom_mat(), b.hom_mat());
    let xa = mat_compose(x, &am)?;
    let mat = mat_compose(&bm, &xa)?;
    let layout = Layout::new(&mat);
    let tr = Triples { a, b, x, am: &am, bm: &bm, xa: &xa, layout: &layout };
    let decoded: Vec<(usize, Cell, usize)> = (0..mat.total()).map(|t| tr.decode(t)).collect();
    let profunctor = Profunctor::new(
        a.clone(),
        b.clone(),
        mat,
        |g2, t| {
            let (g, e, f) = decoded[t];
            tr.encode(b.comp(g2, g), e, f)
        },
        |t, f2| {
            let (g, e, f) = decoded[t];
            tr.encode(g, e, a.comp(f, f2))
        },
    )?;
    Ok(FreeBimodule { generators: x.clone(), profunctor, layout, am, bm, xa })
}

/// `ε : F(p) ⇒ p`, `(g, t, f) ↦ g·t·f`.
pub fn counit(fp: &FreeBimodule, p: &Profunctor) -> Result<BimoduleMorphism> {
    let table = (0..fp.profunctor.num_elements())
        .map(|t| {
            let (g, (y, x, i), f) = fp.decode(t);
            p.right(p.left(g, p.element(y, x, i)), f)
        })
        .collect();
    BimoduleMorphism::globular(&fp.profunctor, p, table)
}

/// The free resolution `F(F p) ⇉ F p → p`: multiplication and `F(ε)`,
/// followed by the counit.
pub struct Resolution {
    pub fp: FreeBimodule,
    pub ffp: FreeBimodule,
    pub multiply: BimoduleMorphism,
    pub free_counit: BimoduleMorphism,
    pub counit: BimoduleMorphism,
}

pub fn resolution(p: &Profunctor) -> Result<Resolution> {
    let (a, b) = (&p.src, &p.tgt);
    let fp = free_bimodule(p.mat(), a, b)?;
    let ffp = free_bimodule(fp.profunctor.mat(), a, b)?;
    let counit = counit(&fp, p)?;
    let n = ffp.profunctor.num_elements();
    let mut mult = Vec::with_capacity(n);
    let mut feps = Vec::with_capacity(n);
    for t in 0..n {
        let (g2, (y, x, i), f2) = ffp.decode(t);
        let inner = fp.profunctor.element(y, x, i);
        let (g1, e, f1) = fp.decode(inner);
        mult.push(fp.encode(b.comp(g2, g1), e, a.comp(f1, f2)));
        let (y1, x1, j) = p.locate(counit.apply(inner));
        feps.push(fp.encode(g2, (y1, x1, j), f2));
    }
    let multiply = BimoduleMorphism::globular(&ffp.profunctor, &fp.profunctor, mult)?;
    let free_counit = BimoduleMorphism::globular(&ffp.profunctor, &fp.profunctor, feps)?;
    Ok(Resolution { fp, ffp, multiply, free_counit, counit })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionReport {
    pub coequalises: bool,
    /// The set-level coequaliser is entrywise bijective to `p` through `ε`.
    pub quotient_matches: bool,
    pub cocones: usize,
    pub all_factor_uniquely: bool,
}

impl ResolutionReport {
    pub fn holds(&self) -> bool {
        self.coequalises && self.quotient_matches && self.all_factor_uniquely
    }
}

/// Checks that `p` is the coequaliser of its free resolution, testing
/// couniversality against every cocone into each of `targets`.
pub fn verify_resolution(p: &Profunctor, targets: &[&Profunctor], cap: u128) -> Result<ResolutionReport> {
    let res = resolution(p)?;
    let eps = &res.counit;
    let coequalises = eps.map.after(&res.multiply.map)? == eps.map.after(&res.free_counit.map)?;
    let (q, proj) = coequalize(&res.multiply.map, &res.free_counit.map)?;
    // ε factors through the quotient by a bijection
    let mut induced = vec![usize::MAX; q.size];
    let mut well_defined = true;
    for t in 0..res.fp.profunctor.num_elements() {
        let c = proj.apply(t);
        if induced[c] == usize::MAX {
            induced[c] = eps.apply(t);
        } else {
            well_defined &= induced[c] == eps.apply(t);
        }
    }
    let quotient_matches = well_defined
        && FinFunction::new(q.size, p.num_elements(), induced).map(|f| f.is_bijective()).unwrap_or(false);

    let mut cocones = 0;
    let mut all_factor_uniquely = true;
    for r in targets {
        let factorisations = enumerate_morphisms(p, r, cap)?;
        // every matrix map p → r extends freely to a bimodule map F(p) → r
        let radices: Vec<usize> = (0..p.num_elements())
            .map(|t| {
                let (y, x, _) = p.locate(t);
                r.mat().entry(y, x)
            })
            .collect();
        let total = radices.iter().try_fold(1u128, |acc, &k| acc.checked_mul(k as u128)).unwrap_or(u128::MAX);
        check_cap(total, cap)?;
        let mut found = 0;
        for choice in Odometer::new(radices) {
            let phi: Vec<usize> = (0..res.fp.profunctor.num_elements())
                .map(|t| {
                    let (g, (y, x, i), f) = res.fp.decode(t);
                    r.right(r.left(g, r.element(y, x, choice[p.element(y, x, i)])), f)
                })
                .collect();
            let phi = BimoduleMorphism::globular(&res.fp.profunctor, r, phi)?;
            if phi.map.after(&res.multiply.map)? != phi.map.after(&res.free_counit.map)? {
                continue;
            }
            cocones += 1;
            found += 1;
            // the factorisation is forced on generators, since ε is surjective
            let psi: Vec<usize> = (0..p.num_elements())
                .map(|t| {
                    let (y, x, i) = p.locate(t);
                    phi.apply(res.fp.unit((y, x, i)))
                })
                .collect();
            match BimoduleMorphism::globular(p, r, psi) {
                Ok(psi) => all_factor_uniquely &= psi.map.after(&eps.map)? == phi.map,
                Err(_) => all_factor_uniquely = false,
            }
        }
        all_factor_uniquely &= found == factorisations.len();
    }
    Ok(ResolutionReport { coequalises, quotient_matches, cocones, all_factor_uniquely })
}

/// `|Bim(F x, r)| = |Mat(x, r)|`, both sides counted by enumeration.
pub fn free_adjunction_counts(x: &Mat, r: &Profunctor, cap: u128) -> Result<(usize, u128)> {
    let fx = free_bimodule(x, &r.src, &r.tgt)?;
    let bim = enumerate_morphisms(&fx.profunctor, r, cap)?.len();
    let mut mat: u128 = 1;
    for y in 0..x.tgt.size {
        for xx in 0..x.src.size {
            mat *= (r.mat().entry(y, xx) as u128).pow(x.entry(y, xx) as u32);
        }
    }
    Ok((bim, mat))
}
