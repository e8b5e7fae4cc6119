//! Symmetric sequences over finite colour sets: elements with a list of
//! input colours and an output colour, acted on by permutations of the
//! inputs, stored up to a truncation arity.

use std::collections::HashMap;

use crate::error::{boundary, shape, Error, Result};
use crate::finkit::{check_cap, UnionFind};
use crate::perm::{permute_list, Perm};

/// An element's type: input colours and output colour.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    pub inputs: Vec<usize>,
    pub output: usize,
}

impl Profile {
    pub fn new(inputs: Vec<usize>, output: usize) -> Profile {
        Profile { inputs, output }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn act(&self, sigma: &Perm) -> Profile {
        Profile { inputs: permute_list(&self.inputs, sigma), output: self.output }
    }
}

/// `Σ_n` for each `n` up to a bound, in lexicographic order (`rank` order).
#[derive(Debug, Clone)]
pub struct Perms {
    by_arity: Vec<Vec<Perm>>,
}

impl Perms {
    pub fn new(max: usize) -> Perms {
        Perms { by_arity: (0..=max).map(Perm::all).collect() }
    }

    pub fn all(&self, n: usize) -> &[Perm] {
        &self.by_arity[n]
    }

    pub fn max(&self) -> usize {
        self.by_arity.len() - 1
    }
}

/// A symmetric sequence `x : A ⇸ B`, entries `x[b⃗; a]` with inputs from B
/// and output in A, for arities up to `trunc`. `exact[n]` records whether
/// arity `n` is known to be complete; `bounded` that nothing lives above `trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymSeq {
    pub out_colours: usize,
    pub in_colours: usize,
    pub profiles: Vec<Profile>,
    /// `act[e][rank σ] = e·σ`.
    act: Vec<Vec<usize>>,
    pub trunc: usize,
    pub exact: Vec<bool>,
    pub bounded: bool,
}

impl SymSeq {
    /// Builds and checks a sequence; `act(e, σ)` gives `e·σ`.
    pub fn new(
        out_colours: usize,
        in_colours: usize,
        profiles: Vec<Profile>,
        trunc: usize,
        exact: Vec<bool>,
        bounded: bool,
        act: impl Fn(usize, &Perm) -> usize,
    ) -> Result<SymSeq> {
        if exact.len() != trunc + 1 {
            return shape("one exactness flag per arity is required");
        }
        for p in &profiles {
            if p.arity() > trunc || p.output >= out_colours || p.inputs.iter().any(|&c| c >= in_colours) {
                return shape("element profile out of range");
            }
        }
        let perms = Perms::new(profiles.iter().map(Profile::arity).max().unwrap_or(0));
        let table = profiles
            .iter()
            .enumerate()
            .map(|(e, p)| perms.all(p.arity()).iter().map(|s| act(e, s)).collect())
            .collect();
        let s = SymSeq { out_colours, in_colours, profiles, act: table, trunc, exact, bounded };
        s.check_action()?;
        Ok(s)
    }

    /// Elements with trivial action, one per profile.
    pub fn from_points(out_colours: usize, in_colours: usize, profiles: Vec<Profile>, trunc: usize) -> Result<SymSeq> {
        let index: HashMap<Profile, usize> = profiles.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        if index.len() != profiles.len() {
            return shape("point profiles must be distinct");
        }
        for p in &profiles {
            for s in Perm::all(p.arity()) {
                if !index.contains_key(&p.act(&s)) {
                    return shape("point profiles must be closed under permutation");
                }
            }
        }
        let ps = profiles.clone();
        SymSeq::new(out_colours, in_colours, profiles, trunc, vec![true; trunc + 1], true, |e, s| index[&ps[e].act(s)])
    }

    /// Single colour, with `counts[n]` free orbits at arity `n` (each orbit a copy of `Σ_n`).
    pub fn free_single(counts: &[usize], trunc: usize) -> Result<SymSeq> {
        let mut profiles = Vec::new();
        let mut base = Vec::new();
        for (n, &c) in counts.iter().enumerate() {
            for k in 0..c {
                for s in Perm::all(n) {
                    profiles.push(Profile::new(vec![0; n], 0));
                    base.push((n, k, s));
                }
            }
        }
        let index: HashMap<(usize, usize, Perm), usize> = base.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let b2 = base.clone();
        SymSeq::new(1, 1, profiles, trunc, vec![true; trunc + 1], counts.len() <= trunc + 1, move |e, s| {
            let (n, k, p) = &b2[e];
            index[&(*n, *k, p.compose(s))]
        })
    }

    /// The unit: one element at each `(c; c)`.
    pub fn unit(colours: usize, trunc: usize) -> SymSeq {
        let profiles = (0..colours).map(|c| Profile::new(vec![c], c)).collect();
        SymSeq::new(colours, colours, profiles, trunc, vec![true; trunc + 1], true, |e, _| e).unwrap()
    }

    pub fn empty(out_colours: usize, in_colours: usize, trunc: usize) -> SymSeq {
        SymSeq::new(out_colours, in_colours, vec![], trunc, vec![true; trunc + 1], true, |e, _| e).unwrap()
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn arity(&self, e: usize) -> usize {
        self.profiles[e].arity()
    }

    pub fn act(&self, e: usize, sigma: &Perm) -> usize {
        self.act[e][sigma.rank()]
    }

    pub fn of_arity(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&e| self.arity(e) == n)
    }

    /// Elements of a given profile.
    pub fn entry(&self, p: &Profile) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.profiles[e] == *p).collect()
    }

    pub fn has_nullary(&self) -> bool {
        self.profiles.iter().any(|p| p.arity() == 0)
    }

    /// Orbit representatives (least element of each orbit).
    pub fn orbit_representatives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.act[e].iter().all(|&f| f >= e)).collect()
    }

    pub fn stabilizer(&self, e: usize) -> Vec<Perm> {
        Perm::all(self.arity(e)).into_iter().filter(|s| self.act(e, s) == e).collect()
    }

    /// Counts per arity.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.trunc + 1];
        for p in &self.profiles {
            c[p.arity()] += 1;
        }
        c
    }

    /// `e·id = e`, `(e·σ)·τ = e·(σ∘τ)`, and profiles transform by the list action.
    pub fn check_action(&self) -> Result<()> {
        for e in 0..self.len() {
            let n = self.arity(e);
            let perms = Perm::all(n);
            if self.act(e, &Perm::identity(n)) != e {
                return Err(Error::Axiom(format!("identity does not fix element {e}")));
            }
            for s in &perms {
                let es = self.act(e, s);
                if es >= self.len() || self.profiles[es] != self.profiles[e].act(s) {
                    return Err(Error::Axiom(format!("action on element {e} has the wrong profile")));
                }
                for t in &perms {
                    if self.act(es, t) != self.act(e, &s.compose(t)) {
                        return Err(Error::Axiom(format!("action on element {e} is not associative")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Quotient of the free `Σ`-set on a list of base profiles: elements are
/// pairs `(b, σ)` with profile `profile(b)·σ`, and `relate` identifies
/// `(b1, π1∘σ)` with `(b2, π2∘σ)` for every `σ`.
pub struct SigmaQuotient {
    bases: Vec<Profile>,
    offsets: Vec<usize>,
    perms: Perms,
    uf: UnionFind,
}

/// Result of a `SigmaQuotient`: the sequence of classes, the class of each
/// pair, and a least representative per class.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub seq: SymSeq,
    offsets: Vec<usize>,
    class: Vec<usize>,
    pub reps: Vec<(usize, Perm)>,
}

impl Quotient {
    pub fn class(&self, b: usize, sigma: &Perm) -> usize {
        self.class[self.offsets[b] + sigma.rank()]
    }

    pub fn num_bases(&self) -> usize {
        self.offsets.len()
    }
}

impl SigmaQuotient {
    pub fn new(bases: Vec<Profile>, cap: u128) -> Result<SigmaQuotient> {
        let max = bases.iter().map(Profile::arity).max().unwrap_or(0);
        let perms = Perms::new(max);
        let mut offsets = Vec::with_capacity(bases.len());
        let mut total = 0usize;
        for b in &bases {
            offsets.push(total);
            total += perms.all(b.arity()).len();
        }
        check_cap(total as u128, cap)?;
        Ok(SigmaQuotient { bases, offsets, perms, uf: UnionFind::new(total) })
    }

    pub fn profile(&self, b: usize) -> &Profile {
        &self.bases[b]
    }

    pub fn relate(&mut self, b1: usize, pi1: &Perm, b2: usize, pi2: &Perm) -> Result<()> {
        if self.bases[b1].act(pi1) != self.bases[b2].act(pi2) {
            return boundary("related elements must have the same profile");
        }
        let n = pi1.len();
        for k in 0..self.perms.all(n).len() {
            let s = &self.perms.all(n)[k];
            let i = self.offsets[b1] + pi1.compose(s).rank();
            let j = self.offsets[b2] + pi2.compose(s).rank();
            self.uf.union(i, j);
        }
        Ok(())
    }

    pub fn finish(self, out_colours: usize, in_colours: usize, trunc: usize, exact: Vec<bool>, bounded: bool) -> Result<Quotient> {
        let part = self.uf.into_partition();
        let (_, proj) = part.quotient();
        let mut reps: Vec<(usize, Perm)> = Vec::new();
        let mut b = 0;
        for k in 0..proj.dom.size {
            while b + 1 < self.offsets.len() && self.offsets[b + 1] <= k {
                b += 1;
            }
            if proj.apply(k) == reps.len() {
                let n = self.bases[b].arity();
                reps.push((b, Perm::unrank(n, k - self.offsets[b])));
            }
        }
        let profiles = reps.iter().map(|(b, s)| self.bases[*b].act(s)).collect();
        let class = proj.table.clone();
        let offsets = self.offsets.clone();
        let seq = SymSeq::new(out_colours, in_colours, profiles, trunc, exact, bounded, |c, t| {
            let (b, s) = &reps[c];
            class[offsets[*b] + s.compose(t).rank()]
        })?;
        Ok(Quotient { seq, offsets: self.offsets, class: proj.table, reps })
    }
}

/// `y ∘ x` for `x : A ⇸ B`, `y : B ⇸ C`: an element of `x` at the root with
/// an element of `y` on each input, modulo the coend relations.
#[derive(Debug, Clone)]
pub struct Composite {
    pub quotient: Quotient,
    pub bases: Vec<(usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl Composite {
    pub fn seq(&self) -> &SymSeq {
        &self.quotient.seq
    }

    /// Class of `(root, tops)` with leaves permuted by `σ`.
    pub fn class(&self, root: usize, tops: &[usize], sigma: &Perm) -> Option<usize> {
        let b = *self.index.get(&(root, tops.to_vec()))?;
        Some(self.quotient.class(b, sigma))
    }

    /// A representative `(root, tops, σ)`.
    pub fn rep(&self, c: usize) -> (usize, &[usize], &Perm) {
        let (b, s) = &self.quotient.reps[c];
        let (r, t) = &self.bases[*b];
        (*r, t, s)
    }
}

/// Sizes of consecutive blocks.
pub fn arities(seq: &SymSeq, elems: &[usize]) -> Vec<usize> {
    elems.iter().map(|&e| seq.arity(e)).collect()
}

pub fn symseq_compose(y: &SymSeq, x: &SymSeq, trunc: usize, cap: u128) -> Result<Composite> {
    if x.in_colours != y.out_colours {
        return boundary("composite needs matching middle colours");
    }
    let mut bases = Vec::new();
    let mut profiles = Vec::new();
    for r in 0..x.len() {
        let rin = &x.profiles[r].inputs;
        let mut tops = Vec::with_capacity(rin.len());
        fill_tops(y, rin, trunc, 0, &mut tops, &mut |tops: &[usize]| {
            let inputs: Vec<usize> = tops.iter().flat_map(|&f| y.profiles[f].inputs.iter().copied()).collect();
            profiles.push(Profile::new(inputs, x.profiles[r].output));
            bases.push((r, tops.to_vec()));
        });
    }
    let index: HashMap<(usize, Vec<usize>), usize> = bases.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let mut q = SigmaQuotient::new(profiles, cap)?;
    for (b, (r, tops)) in bases.iter().enumerate() {
        let k = tops.len();
        let sizes = arities(y, tops);
        // the root's action moves whole blocks
        for alpha in Perm::all(k) {
            let moved: Vec<usize> = (0..k).map(|i| tops[alpha.apply(i)]).collect();
            let b2 = index[&(x.act(*r, &alpha), moved)];
            let n: usize = sizes.iter().sum();
            q.relate(b2, &Perm::identity(n), b, &alpha.permute_blocks(&sizes))?;
        }
        // each top's action is a block sum
        for i in 0..k {
            for beta in Perm::all(sizes[i]) {
                let mut t2 = tops.clone();
                t2[i] = y.act(tops[i], &beta);
                let b2 = index[&(*r, t2)];
                let parts: Vec<Perm> = (0..k).map(|j| if j == i { beta.clone() } else { Perm::identity(sizes[j]) }).collect();
                let n: usize = sizes.iter().sum();
                q.relate(b2, &Perm::identity(n), b, &Perm::block_sum_all(&parts))?;
            }
        }
    }
    let nullary_tops = y.has_nullary();
    let exact = (0..=trunc)
        .map(|n| !nullary_tops && n <= x.trunc && n <= y.trunc && x.exact[..=n].iter().all(|&e| e) && y.exact[..=n].iter().all(|&e| e))
        .collect();
    let bounded = x.bounded && y.bounded && !nullary_tops && x.trunc.max(1) * y.trunc.max(1) <= trunc;
    let quotient = q.finish(x.out_colours, y.in_colours, trunc, exact, bounded)?;
    Ok(Composite { quotient, bases, index })
}

/// Enumerates choices of a `y` element on each of the given colours with
/// total arity at most `trunc`.
pub(crate) fn fill_tops(y: &SymSeq, colours: &[usize], trunc: usize, used: usize, tops: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    let i = tops.len();
    if i == colours.len() {
        emit(tops);
        return;
    }
    for f in 0..y.len() {
        let a = y.arity(f);
        if y.profiles[f].output == colours[i] && used + a <= trunc {
            tops.push(f);
            fill_tops(y, colours, trunc, used + a, tops, emit);
            tops.pop();
        }
    }
}

/// The grid list `u⃗ ⊠ v⃗`: position `j·m + i` holds `(u_i, v_j)`, with pair
/// colour `u·|V| + v`.
pub fn grid_list(u: &[usize], v: &[usize], v_colours: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for &vj in v {
        for &ui in u {
            out.push(ui * v_colours + vj);
        }
    }
    out
}

/// The arithmetic product `x ⊠ y`: pairs `(e1, e2)` on the grid of their
/// inputs, modulo `(e1·α, e2·β) ~ (e1, e2)·grid(α, β)`.
#[derive(Debug, Clone)]
pub struct ArithmeticProduct {
    pub quotient: Quotient,
    pub bases: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    arities: (Vec<usize>, Vec<usize>),
}

impl ArithmeticProduct {
    pub fn seq(&self) -> &SymSeq {
        &self.quotient.seq
    }

    pub fn class(&self, e1: usize, e2: usize, sigma: &Perm) -> Option<usize> {
        let b = *self.index.get(&(e1, e2))?;
        Some(self.quotient.class(b, sigma))
    }

    pub fn rep(&self, c: usize) -> (usize, usize, &Perm) {
        let (b, s) = &self.quotient.reps[c];
        let (e1, e2) = self.bases[*b];
        (e1, e2, s)
    }

    /// Every pair `(e1, e2, σ)` with its class.
    pub fn members(&self) -> Vec<(usize, usize, Perm, usize)> {
        let mut out = Vec::new();
        for (b, &(e1, e2)) in self.bases.iter().enumerate() {
            for s in Perm::all(self.arity_of_base(b)) {
                let c = self.quotient.class(b, &s);
                out.push((e1, e2, s, c));
            }
        }
        out
    }

    fn arity_of_base(&self, b: usize) -> usize {
        let (e1, e2) = self.bases[b];
        self.arities.0[e1] * self.arities.1[e2]
    }
}

pub fn arithmetic_product(x: &SymSeq, y: &SymSeq, trunc: usize, cap: u128) -> Result<ArithmeticProduct> {
    let mut bases = Vec::new();
    let mut profiles = Vec::new();
    for e1 in 0..x.len() {
        for e2 in 0..y.len() {
            let (m, n) = (x.arity(e1), y.arity(e2));
            if m * n > trunc {
                continue;
            }
            let px = &x.profiles[e1];
            let py = &y.profiles[e2];
            profiles.push(Profile::new(grid_list(&px.inputs, &py.inputs, y.in_colours), px.output * y.out_colours + py.output));
            bases.push((e1, e2));
        }
    }
    let index: HashMap<(usize, usize), usize> = bases.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let mut q = SigmaQuotient::new(profiles, cap)?;
    for (b, &(e1, e2)) in bases.iter().enumerate() {
        let (m, n) = (x.arity(e1), y.arity(e2));
        for alpha in Perm::all(m) {
            for beta in Perm::all(n) {
                let b2 = index[&(x.act(e1, &alpha), y.act(e2, &beta))];
                q.relate(b2, &Perm::identity(m * n), b, &alpha.grid(&beta))?;
            }
        }
    }
    let exact = (0..=trunc)
        .map(|k| {
            if k == 0 {
                return x.exact[0] && y.exact[0] && !x.has_nullary() && !y.has_nullary();
            }
            (1..=k).filter(|m| k % m == 0).all(|m| {
                let n = k / m;
                let ex = m > x.trunc && x.bounded || m <= x.trunc && x.exact[m];
                let ey = n > y.trunc && y.bounded || n <= y.trunc && y.exact[n];
                ex && ey
            })
        })
        .collect();
    let bounded = x.bounded && y.bounded && x.trunc * y.trunc <= trunc;
    let quotient = q.finish(x.out_colours * y.out_colours, x.in_colours * y.in_colours, trunc, exact, bounded)?;
    let arities = ((0..x.len()).map(|e| x.arity(e)).collect(), (0..y.len()).map(|e| y.arity(e)).collect());
    Ok(ArithmeticProduct { quotient, bases, index, arities })
}

/// The permutations of `Σ_{mn}` that are grids `grid(α, β)`.
pub fn grid_subgroup(m: usize, n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for a in Perm::all(m) {
        for b in Perm::all(n) {
            out.push(a.grid(&b));
        }
    }
    out
}

/// `Hom(x, z)`: colour-preserving equivariant maps, one per choice of image
/// for each orbit representative compatible with its stabiliser. Only
/// arities in `arities` are mapped; other entries are `usize::MAX`.
pub fn enumerate_maps(x: &SymSeq, z: &SymSeq, arities: &[usize], cap: u128) -> Result<Vec<Vec<usize>>> {
    let reps: Vec<usize> = x.orbit_representatives().into_iter().filter(|&r| arities.contains(&x.arity(r))).collect();
    let mut choices = Vec::with_capacity(reps.len());
    for &r in &reps {
        let stab = x.stabilizer(r);
        let cands: Vec<usize> = z.entry(&x.profiles[r]).into_iter().filter(|&v| stab.iter().all(|s| z.act(v, s) == v)).collect();
        choices.push(cands);
    }
    let total = choices.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128)).unwrap_or(u128::MAX);
    check_cap(total, cap)?;
    let mut out = Vec::new();
    for pick in crate::finkit::Odometer::new(choices.iter().map(Vec::len).collect()) {
        let mut map = vec![usize::MAX; x.len()];
        for (k, &r) in reps.iter().enumerate() {
            let v = choices[k][pick[k]];
            for s in Perm::all(x.arity(r)) {
                map[x.act(r, &s)] = z.act(v, &s);
            }
        }
        out.push(map);
    }
    Ok(out)
}

/// Single-colour divided-powers hom: `⟦y, z⟧(m) = ∫_n [y(n), z(mn)]`, one
/// element per natural family. Arity `m` is exact when `y` is bounded and
/// every `m·n` it needs lies within `z`'s exact range.
#[derive(Debug, Clone)]
pub struct DividedPowers {
    pub seq: SymSeq,
    /// For each element, its family: image in `z` of every element of `y`
    /// (`usize::MAX` where the family is not defined).
    pub families: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl DividedPowers {
    pub fn find(&self, family: &[usize]) -> Option<usize> {
        self.index.get(family).copied()
    }
}

pub fn symseq_hom(y: &SymSeq, z: &SymSeq, trunc: usize, cap: u128) -> Result<DividedPowers> {
    if y.in_colours != 1 || y.out_colours != 1 || z.in_colours != 1 || z.out_colours != 1 {
        return shape("divided-powers hom is implemented for single-colour sequences");
    }
    let max_y = y.profiles.iter().map(Profile::arity).max().unwrap_or(0);
    let mut profiles = Vec::new();
    let mut families = Vec::new();
    let mut exact = vec![false; trunc + 1];
    for m in 0..=trunc {
        exact[m] = y.bounded
            && (0..=max_y).all(|n| n <= y.trunc && y.exact[n])
            && y.profiles.iter().all(|p| m * p.arity() <= z.trunc && z.exact[m * p.arity()]);
        if !exact[m] {
            continue;
        }
        // natural families: choose the image of each orbit representative
        let reps = y.orbit_representatives();
        let mut choices = Vec::new();
        for &r in &reps {
            let n = y.arity(r);
            let stab = y.stabilizer(r);
            let cands: Vec<usize> = z
                .of_arity(m * n)
                .filter(|&v| stab.iter().all(|b| z.act(v, &Perm::identity(m).grid(b)) == v))
                .collect();
            choices.push(cands);
        }
        let total = choices.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128)).unwrap_or(u128::MAX);
        check_cap(total, cap)?;
        for pick in crate::finkit::Odometer::new(choices.iter().map(Vec::len).collect()) {
            let mut fam = vec![usize::MAX; y.len()];
            for (k, &r) in reps.iter().enumerate() {
                let v = choices[k][pick[k]];
                for b in Perm::all(y.arity(r)) {
                    fam[y.act(r, &b)] = z.act(v, &Perm::identity(m).grid(&b));
                }
            }
            profiles.push(Profile::new(vec![0; m], 0));
            families.push(fam);
        }
    }
    let index: HashMap<Vec<usize>, usize> = families.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let fams = families.clone();
    let seq = SymSeq::new(1, 1, profiles, trunc, exact, false, |e, a| {
        let fam: Vec<usize> = fams[e]
            .iter()
            .enumerate()
            .map(|(k, &v)| z.act(v, &a.grid(&Perm::identity(y.arity(k)))))
            .collect();
        index[&fam]
    })?;
    let index: HashMap<Vec<usize>, usize> = families.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    Ok(DividedPowers { seq, families, index })
}

/// The transpose `x → ⟦y, z⟧` of an equivariant map `x ⊠ y → z`, defined
/// on the arities of `x` where the hom is exact.
pub fn transpose_map(f: &[usize], x: &SymSeq, y: &SymSeq, prod: &ArithmeticProduct, hom: &DividedPowers) -> Result<Vec<usize>> {
    let mut out = vec![usize::MAX; x.len()];
    for e in 0..x.len() {
        let m = x.arity(e);
        if m > hom.seq.trunc || !hom.seq.exact[m] {
            continue;
        }
        let fam: Vec<usize> = (0..y.len())
            .map(|k| {
                let c = prod.class(e, k, &Perm::identity(m * y.arity(k))).expect("product entry within truncation");
                f[c]
            })
            .collect();
        out[e] = hom.find(&fam).ok_or_else(|| Error::Axiom("transpose is not a natural family".into()))?;
    }
    Ok(out)
}

/// Morphisms `u⃗ → v⃗` of the free symmetric monoidal groupoid on a colour
/// set: permutations `σ` with `v_i = u_σ(i)`.
pub fn s_construction_hom(u: &[usize], v: &[usize]) -> Vec<Perm> {
    if u.len() != v.len() {
        return Vec::new();
    }
    Perm::all(u.len()).into_iter().filter(|s| (0..v.len()).all(|i| v[i] == u[s.apply(i)])).collect()
}
