//! Multiprofunctors between symmetric multicategory tables: free
//! multi-bimodules, composition, the commuting tensor, the comparison
//! `ω` and the interchange `ξ̃`.

use std::collections::HashMap;

use super::bv::{bv_tensor, BvTensor};
use super::multicat::{materialise, PresentedMulticat, SymMulticat};
use super::sym::{arithmetic_product, arities, fill_tops, symseq_compose, ArithmeticProduct, Composite, Profile, SymSeq};
use super::term::{Bounds, Term};
use crate::audit;
use crate::error::{boundary, shape, Error, Result};
use crate::finkit::UnionFind;
use crate::perm::Perm;

/// `p : M ⇸ N`: elements `p[b⃗; a]` with `a` a colour of `M` and `b⃗` of `N`.
/// `M` acts at the root (`ρ`), `N` at the leaves (`λ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiProfunctor {
    pub src: SymMulticat,
    pub tgt: SymMulticat,
    pub seq: SymSeq,
    /// `(e, i, ψ) ↦ e ∘_i ψ`
    lambda: HashMap<(usize, usize, usize), usize>,
    /// `(φ, e⃗) ↦ φ(e⃗)`
    rho: HashMap<(usize, Vec<usize>), usize>,
    /// Every action landing within the truncation is tabulated.
    pub complete: bool,
}

impl MultiProfunctor {
    /// Tabulates both actions on every typed argument within the
    /// truncation and runs the full axiom check.
    pub fn new(
        src: SymMulticat,
        tgt: SymMulticat,
        seq: SymSeq,
        lambda: impl Fn(usize, usize, usize) -> Option<usize>,
        rho: impl Fn(usize, &[usize]) -> Option<usize>,
    ) -> Result<MultiProfunctor> {
        if seq.out_colours != src.colours || seq.in_colours != tgt.colours {
            return boundary("multiprofunctor colours do not match its multicategories");
        }
        let trunc = seq.trunc;
        let mut complete = true;
        let mut lt = HashMap::new();
        for e in 0..seq.len() {
            let pe = &seq.profiles[e];
            for i in 0..pe.arity() {
                for psi in tgt.with_output(pe.inputs[i]) {
                    if pe.arity() + tgt.arity(psi) > trunc + 1 {
                        continue;
                    }
                    match lambda(e, i, psi) {
                        Some(v) => {
                            lt.insert((e, i, psi), v);
                        }
                        None => complete = false,
                    }
                }
            }
        }
        let mut rt = HashMap::new();
        for phi in 0..src.len() {
            let inputs = src.profile(phi).inputs.clone();
            let mut acc = Vec::new();
            fill_tops(&seq, &inputs, trunc, 0, &mut acc, &mut |es: &[usize]| match rho(phi, es) {
                Some(v) => {
                    rt.insert((phi, es.to_vec()), v);
                }
                None => complete = false,
            });
        }
        let p = MultiProfunctor { src, tgt, seq, lambda: lt, rho: rt, complete };
        let verdict = p.check_axioms();
        audit::record(audit::Kind::MultiProfunctor, verdict.is_ok());
        verdict.map(|_| p)
    }

    /// The identity bimodule `M : M ⇸ M`.
    pub fn identity(m: &SymMulticat) -> MultiProfunctor {
        MultiProfunctor::new(m.clone(), m.clone(), m.ops.clone(), |e, i, psi| m.compose(e, i, psi), |phi, es| m.gamma(phi, es))
            .expect("a multicategory acts on itself")
    }

    /// The empty bimodule between two multicategories.
    pub fn empty(src: &SymMulticat, tgt: &SymMulticat, trunc: usize) -> MultiProfunctor {
        let seq = SymSeq::empty(src.colours, tgt.colours, trunc);
        MultiProfunctor::new(src.clone(), tgt.clone(), seq, |_, _, _| None, |_, _| None).expect("nothing to check")
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn act(&self, e: usize, sigma: &Perm) -> usize {
        self.seq.act(e, sigma)
    }

    pub fn lambda(&self, e: usize, i: usize, psi: usize) -> Option<usize> {
        self.lambda.get(&(e, i, psi)).copied()
    }

    pub fn rho(&self, phi: usize, es: &[usize]) -> Option<usize> {
        self.rho.get(&(phi, es.to_vec())).copied()
    }

    /// `λ` at every leaf at once, one `N` operation per input.
    pub fn leaves(&self, e: usize, psis: &[usize]) -> Option<usize> {
        let mut v = e;
        for i in (0..psis.len()).rev() {
            v = self.lambda(v, i, psis[i])?;
        }
        Some(v)
    }

    /// Elements sharing a profile, grouped.
    pub fn entries(&self) -> Vec<(Profile, Vec<usize>)> {
        group_by_profile(&self.seq)
    }

    pub fn check_axioms(&self) -> Result<()> {
        let (m, n, s) = (&self.src, &self.tgt, &self.seq);
        let fail = |msg: String| -> Result<()> { Err(Error::Axiom(msg)) };
        for (&(e, i, psi), &v) in &self.lambda {
            let pe = &s.profiles[e];
            let mut inputs = pe.inputs[..i].to_vec();
            inputs.extend(&n.profile(psi).inputs);
            inputs.extend(&pe.inputs[i + 1..]);
            if v >= s.len() || s.profiles[v] != Profile::new(inputs, pe.output) {
                return fail(format!("left action ({e}, {i}, {psi}) is mistyped"));
            }
        }
        for ((phi, es), &v) in &self.rho {
            let inputs = es.iter().flat_map(|&e| s.profiles[e].inputs.clone()).collect();
            if v >= s.len() || s.profiles[v] != Profile::new(inputs, m.profile(*phi).output) {
                return fail(format!("right action of {phi} is mistyped"));
            }
        }
        // units
        for e in 0..s.len() {
            let pe = &s.profiles[e];
            if self.rho(m.units[pe.output], &[e]).is_some_and(|v| v != e) {
                return fail(format!("root unit moves element {e}"));
            }
            for i in 0..pe.arity() {
                if self.lambda(e, i, n.units[pe.inputs[i]]).is_some_and(|v| v != e) {
                    return fail(format!("leaf unit moves element {e} at {i}"));
                }
            }
        }
        // left action: associativity, commuting slots, equivariance
        for (&(e, i, psi), &v) in &self.lambda {
            let (ae, ap) = (s.arity(e), n.arity(psi));
            for j in 0..ap {
                for k in n.composable(psi, j) {
                    let l = self.lambda(v, i + j, k);
                    let r = n.compose(psi, j, k).and_then(|pk| self.lambda(e, i, pk));
                    if let (Some(l), Some(r)) = (l, r) {
                        if l != r {
                            return fail(format!("left action is not associative at ({e}, {i}, {psi})"));
                        }
                    }
                }
            }
            for j in i + 1..ae {
                for k in n.with_output(s.profiles[e].inputs[j]) {
                    let l = self.lambda(v, j + ap - 1, k);
                    let r = self.lambda(e, j, k).and_then(|ek| self.lambda(ek, i, psi));
                    if let (Some(l), Some(r)) = (l, r) {
                        if l != r {
                            return fail(format!("left actions at {i} and {j} do not commute on {e}"));
                        }
                    }
                }
            }
            for tau in Perm::all(ap) {
                if let Some(l) = self.lambda(e, i, n.act(psi, &tau)) {
                    let parts = [Perm::identity(i), tau.clone(), Perm::identity(ae - i - 1)];
                    if l != s.act(v, &Perm::block_sum_all(&parts)) {
                        return fail(format!("left action is not equivariant in the acting operation at ({e}, {i}, {psi})"));
                    }
                }
            }
        }
        for e in 0..s.len() {
            let ae = s.arity(e);
            for sigma in Perm::all(ae) {
                let es = s.act(e, &sigma);
                for i in 0..ae {
                    for psi in n.with_output(s.profiles[es].inputs[i]) {
                        let (Some(l), Some(r)) = (self.lambda(es, i, psi), self.lambda(e, sigma.apply(i), psi)) else {
                            continue;
                        };
                        let sizes: Vec<usize> = (0..ae).map(|t| if t == sigma.apply(i) { n.arity(psi) } else { 1 }).collect();
                        if l != s.act(r, &sigma.permute_blocks(&sizes)) {
                            return fail(format!("left action is not equivariant in the element {e}"));
                        }
                    }
                }
            }
        }
        // right action: associativity, equivariance, compatibility with the left action
        let mut splits: HashMap<usize, Vec<(usize, usize, usize)>> = HashMap::new();
        for ((f, i, g), h) in m.compositions() {
            splits.entry(h).or_default().push((f, i, g));
        }
        for ((phi, es), &v) in &self.rho {
            let k = es.len();
            for &(f, i, g) in splits.get(phi).map(Vec::as_slice).unwrap_or(&[]) {
                let kg = m.arity(g);
                if let Some(w) = self.rho(g, &es[i..i + kg]) {
                    let mut outer = es[..i].to_vec();
                    outer.push(w);
                    outer.extend(&es[i + kg..]);
                    if self.rho(f, &outer).is_some_and(|r| r != v) {
                        return fail(format!("right action is not associative at {phi}"));
                    }
                }
            }
            let sizes = arities(s, es);
            for alpha in Perm::all(k) {
                let moved: Vec<usize> = (0..k).map(|i| es[alpha.apply(i)]).collect();
                if let Some(l) = self.rho(m.act(*phi, &alpha), &moved) {
                    if l != s.act(v, &alpha.permute_blocks(&sizes)) {
                        return fail(format!("right action is not equivariant in the acting operation {phi}"));
                    }
                }
            }
            for t in 0..k {
                for beta in Perm::all(sizes[t]) {
                    let mut es2 = es.clone();
                    es2[t] = s.act(es[t], &beta);
                    if let Some(l) = self.rho(*phi, &es2) {
                        let parts: Vec<Perm> = (0..k).map(|j| if j == t { beta.clone() } else { Perm::identity(sizes[j]) }).collect();
                        if l != s.act(v, &Perm::block_sum_all(&parts)) {
                            return fail(format!("right action is not equivariant in argument {t} of {phi}"));
                        }
                    }
                }
            }
            let mut pos = 0;
            for t in 0..k {
                for l in 0..sizes[t] {
                    for psi in n.with_output(s.profiles[es[t]].inputs[l]) {
                        let (Some(lhs), Some(inner)) = (self.lambda(v, pos + l, psi), self.lambda(es[t], l, psi)) else {
                            continue;
                        };
                        let mut es2 = es.clone();
                        es2[t] = inner;
                        if self.rho(*phi, &es2).is_some_and(|r| r != lhs) {
                            return fail(format!("left and right actions do not commute at {phi}"));
                        }
                    }
                }
                pos += sizes[t];
            }
        }
        Ok(())
    }
}

fn group_by_profile(seq: &SymSeq) -> Vec<(Profile, Vec<usize>)> {
    let mut groups: Vec<(Profile, Vec<usize>)> = Vec::new();
    let mut index: HashMap<&Profile, usize> = HashMap::new();
    for (e, p) in seq.profiles.iter().enumerate() {
        let g = *index.entry(p).or_insert_with(|| {
            groups.push((p.clone(), Vec::new()));
            groups.len() - 1
        });
        groups[g].1.push(e);
    }
    groups
}

/// Checks that `map` is an equivariant map of sequences commuting with
/// both actions.
pub fn check_module_map(from: &MultiProfunctor, to: &MultiProfunctor, map: &[usize]) -> Result<()> {
    if from.src != to.src || from.tgt != to.tgt {
        return boundary("module map between bimodules over different multicategories");
    }
    if map.len() != from.len() || map.iter().any(|&v| v >= to.len()) {
        return shape("module map table has the wrong size");
    }
    for e in 0..from.len() {
        if from.seq.profiles[e] != to.seq.profiles[map[e]] {
            return Err(Error::Axiom(format!("element {e} changes profile")));
        }
        for sigma in Perm::all(from.seq.arity(e)) {
            if map[from.act(e, &sigma)] != to.act(map[e], &sigma) {
                return Err(Error::Axiom(format!("map is not equivariant at {e}")));
            }
        }
    }
    for (&(e, i, psi), &v) in &from.lambda {
        if to.lambda(map[e], i, psi) != Some(map[v]) {
            return Err(Error::Axiom(format!("map does not commute with the left action at ({e}, {i}, {psi})")));
        }
    }
    for ((phi, es), &v) in &from.rho {
        let images: Vec<usize> = es.iter().map(|&e| map[e]).collect();
        if to.rho(*phi, &images) != Some(map[v]) {
            return Err(Error::Axiom(format!("map does not commute with the right action of {phi}")));
        }
    }
    Ok(())
}

/// All module maps `from → to` among the equivariant maps of sequences.
pub fn enumerate_module_maps(from: &MultiProfunctor, to: &MultiProfunctor, cap: u128) -> Result<Vec<Vec<usize>>> {
    let all: Vec<usize> = (0..=from.seq.trunc).collect();
    let maps = super::sym::enumerate_maps(&from.seq, &to.seq, &all, cap)?;
    Ok(maps.into_iter().filter(|f| check_module_map(from, to, f).is_ok()).collect())
}

/// Labels of a leaf permutation: nested position `q` goes to output `σ⁻¹(q)`.
fn labels_of(sigma: &Perm) -> Vec<usize> {
    sigma.inverse().images().to_vec()
}

fn perm_of(labels: &[usize]) -> Perm {
    Perm::new(labels.to_vec()).expect("leaf labels form a bijection").inverse()
}

fn concat_labels(parts: &[&[usize]]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut off = 0;
    for p in parts {
        out.extend(p.iter().map(|&v| v + off));
        off += p.len();
    }
    out
}

/// Replaces leaf `j` by a graft of arity `k` inside the top that holds it,
/// returning the new labels.
fn graft(
    tops: &mut [usize],
    labels: &[usize],
    arity: &dyn Fn(usize) -> usize,
    j: usize,
    k: usize,
    sub: &dyn Fn(usize, usize) -> Option<usize>,
) -> Option<Vec<usize>> {
    let q = labels.iter().position(|&v| v == j)?;
    let (mut off, mut t) = (0, 0);
    while off + arity(tops[t]) <= q {
        off += arity(tops[t]);
        t += 1;
    }
    tops[t] = sub(tops[t], q - off)?;
    let mut out = Vec::with_capacity(labels.len() + k - 1);
    for (r, &v) in labels.iter().enumerate() {
        if r == q {
            out.extend(j..j + k);
        } else {
            out.push(if v > j { v + k - 1 } else { v });
        }
    }
    Some(out)
}

/// An element of a two-level composite: a root, one top per root input and
/// the output position of every leaf in nested order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree2 {
    pub root: usize,
    pub tops: Vec<usize>,
    pub labels: Vec<usize>,
}

fn decompose2(comp: &Composite, c: usize) -> Tree2 {
    let (root, tops, sigma) = comp.rep(c);
    Tree2 { root, tops: tops.to_vec(), labels: labels_of(sigma) }
}

fn assemble2(comp: &Composite, t: &Tree2) -> Option<usize> {
    comp.class(t.root, &t.tops, &perm_of(&t.labels))
}

/// An element of `N ∘ x ∘ M`: an `M` root, generators in the middle, one
/// `N` operation per middle leaf, and leaf labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree3 {
    pub root: usize,
    pub mids: Vec<usize>,
    pub tops: Vec<usize>,
    pub labels: Vec<usize>,
}

/// The free bimodule `F(x) = N ∘ x ∘ M` on a sequence `x`.
#[derive(Debug, Clone)]
pub struct FreeMultiBimodule {
    pub generators: SymSeq,
    /// `x ∘ M`
    pub inner: Composite,
    /// `N ∘ (x ∘ M)`
    pub outer: Composite,
    pub module: MultiProfunctor,
}

fn decompose3(inner: &Composite, outer: &Composite, n: &SymMulticat, w: usize) -> Tree3 {
    let (c, psis, sigma) = outer.rep(w);
    let outer_labels = labels_of(sigma);
    let (phi, xs, tau) = inner.rep(c);
    let mut off = Vec::with_capacity(psis.len());
    let mut acc = 0;
    for &p in psis {
        off.push(acc);
        acc += n.arity(p);
    }
    let tinv = tau.inverse();
    let mut tops = Vec::with_capacity(psis.len());
    let mut labels = Vec::with_capacity(acc);
    for q in 0..psis.len() {
        let t = tinv.apply(q);
        tops.push(psis[t]);
        labels.extend_from_slice(&outer_labels[off[t]..off[t] + n.arity(psis[t])]);
    }
    Tree3 { root: phi, mids: xs.to_vec(), tops, labels }
}

fn assemble3(inner: &Composite, outer: &Composite, t: &Tree3) -> Option<usize> {
    let c = inner.class(t.root, &t.mids, &Perm::identity(t.tops.len()))?;
    outer.class(c, &t.tops, &perm_of(&t.labels))
}

impl FreeMultiBimodule {
    pub fn decompose(&self, w: usize) -> Tree3 {
        decompose3(&self.inner, &self.outer, &self.module.tgt, w)
    }

    pub fn assemble(&self, t: &Tree3) -> Option<usize> {
        assemble3(&self.inner, &self.outer, t)
    }

    /// `η(e)`: a generator with units above and below.
    pub fn unit(&self, e: usize) -> usize {
        let p = &self.generators.profiles[e];
        let (m, n) = (&self.module.src, &self.module.tgt);
        let t = Tree3 {
            root: m.units[p.output],
            mids: vec![e],
            tops: p.inputs.iter().map(|&b| n.units[b]).collect(),
            labels: (0..p.arity()).collect(),
        };
        self.assemble(&t).expect("generators lie within the truncation")
    }

    /// The module map `F(x) → p` extending `gen : x → p`.
    pub fn extend(&self, target: &MultiProfunctor, gen: &dyn Fn(usize) -> Option<usize>) -> Result<Vec<usize>> {
        (0..self.module.len())
            .map(|w| {
                let t = self.decompose(w);
                let mids: Option<Vec<usize>> = t.mids.iter().map(|&x| gen(x)).collect();
                mids.and_then(|ms| target.rho(t.root, &ms))
                    .and_then(|v| target.leaves(v, &t.tops))
                    .map(|v| target.act(v, &perm_of(&t.labels)))
                    .ok_or_else(|| Error::Truncated(format!("extension leaves the truncation at element {w}")))
            })
            .collect()
    }

    /// The counit `F(p) → p`.
    pub fn counit(&self, p: &MultiProfunctor) -> Result<Vec<usize>> {
        self.extend(p, &|e| Some(e))
    }
}

pub fn free_multibimodule(x: &SymSeq, m: &SymMulticat, n: &SymMulticat, cap: u128) -> Result<FreeMultiBimodule> {
    if x.out_colours != m.colours || x.in_colours != n.colours {
        return boundary("generators do not match the multicategories");
    }
    let trunc = x.trunc;
    let inner = symseq_compose(x, &m.ops, trunc, cap)?;
    let outer = symseq_compose(&n.ops, inner.seq(), trunc, cap)?;
    let lambda = |w: usize, j: usize, psi: usize| {
        let mut t = decompose3(&inner, &outer, n, w);
        let labels = graft(&mut t.tops, &t.labels, &|p| n.arity(p), j, n.arity(psi), &|top, l| n.compose(top, l, psi))?;
        t.labels = labels;
        assemble3(&inner, &outer, &t)
    };
    let rho = |phi: usize, ws: &[usize]| {
        let ts: Vec<Tree3> = ws.iter().map(|&w| decompose3(&inner, &outer, n, w)).collect();
        let roots: Vec<usize> = ts.iter().map(|t| t.root).collect();
        let root = m.gamma(phi, &roots)?;
        let mids = ts.iter().flat_map(|t| t.mids.iter().copied()).collect();
        let tops = ts.iter().flat_map(|t| t.tops.iter().copied()).collect();
        let parts: Vec<&[usize]> = ts.iter().map(|t| t.labels.as_slice()).collect();
        assemble3(&inner, &outer, &Tree3 { root, mids, tops, labels: concat_labels(&parts) })
    };
    let module = MultiProfunctor::new(m.clone(), n.clone(), outer.seq().clone(), lambda, rho)?;
    Ok(FreeMultiBimodule { generators: x.clone(), inner, outer, module })
}

/// A sequence divided by the Σ-closure of a relation.
#[derive(Debug, Clone)]
pub struct SeqQuotient {
    pub seq: SymSeq,
    pub proj: Vec<usize>,
    /// least member of each class
    pub reps: Vec<usize>,
}

fn quotient_seq(seq: &SymSeq, pairs: &[(usize, usize)]) -> Result<SeqQuotient> {
    let mut uf = UnionFind::new(seq.len());
    for &(a, b) in pairs {
        for s in Perm::all(seq.arity(a)) {
            uf.union(seq.act(a, &s), seq.act(b, &s));
        }
    }
    let part = uf.into_partition();
    let (_, proj) = part.quotient();
    let reps = part.representatives();
    let profiles = reps.iter().map(|&r| seq.profiles[r].clone()).collect();
    let proj = proj.table;
    let q = SymSeq::new(seq.out_colours, seq.in_colours, profiles, seq.trunc, seq.exact.clone(), seq.bounded, |c, s| {
        proj[seq.act(reps[c], s)]
    })?;
    Ok(SeqQuotient { seq: q, proj, reps })
}

/// The actions of `base` passed to a quotient, checked to be independent
/// of the chosen members.
fn induced_module(base: &MultiProfunctor, q: &SeqQuotient) -> Result<MultiProfunctor> {
    let lam = |c: usize, j: usize, psi: usize| base.lambda(q.reps[c], j, psi).map(|v| q.proj[v]);
    let rho = |phi: usize, cs: &[usize]| {
        let es: Vec<usize> = cs.iter().map(|&c| q.reps[c]).collect();
        base.rho(phi, &es).map(|v| q.proj[v])
    };
    let m = MultiProfunctor::new(base.src.clone(), base.tgt.clone(), q.seq.clone(), lam, rho)?;
    for (&(e, j, psi), &v) in &base.lambda {
        if m.lambda(q.proj[e], j, psi) != Some(q.proj[v]) {
            return Err(Error::Axiom(format!("left action is not well defined on the class of {e}")));
        }
    }
    for ((phi, es), &v) in &base.rho {
        let cs: Vec<usize> = es.iter().map(|&e| q.proj[e]).collect();
        if m.rho(*phi, &cs) != Some(q.proj[v]) {
            return Err(Error::Axiom(format!("right action of {phi} is not well defined on classes")));
        }
    }
    Ok(m)
}

/// `q • p` for `p : M ⇸ N`, `q : N ⇸ P`: `p` at the root, `q` on top, with
/// the two actions of `N` identified.
#[derive(Debug, Clone)]
pub struct MultiComposite {
    pub raw: Composite,
    /// `q ∘ p` before balancing, an `(M, P)`-bimodule
    pub raw_module: MultiProfunctor,
    pub quotient: SeqQuotient,
    pub profunctor: MultiProfunctor,
}

impl MultiComposite {
    pub fn assemble(&self, t: &Tree2) -> Option<usize> {
        assemble2(&self.raw, t).map(|c| self.quotient.proj[c])
    }

    pub fn decompose(&self, c: usize) -> Tree2 {
        decompose2(&self.raw, self.quotient.reps[c])
    }
}

pub fn multiprof_compose(q: &MultiProfunctor, p: &MultiProfunctor, cap: u128) -> Result<MultiComposite> {
    if p.tgt != q.src {
        return boundary("composite needs a shared middle multicategory");
    }
    let trunc = p.seq.trunc.min(q.seq.trunc);
    let raw = symseq_compose(&q.seq, &p.seq, trunc, cap)?;
    let lambda = |c: usize, j: usize, pi: usize| {
        let mut t = decompose2(&raw, c);
        t.labels = graft(&mut t.tops, &t.labels, &|g| q.seq.arity(g), j, q.tgt.arity(pi), &|g, l| q.lambda(g, l, pi))?;
        assemble2(&raw, &t)
    };
    let rho = |phi: usize, cs: &[usize]| {
        let ts: Vec<Tree2> = cs.iter().map(|&c| decompose2(&raw, c)).collect();
        let roots: Vec<usize> = ts.iter().map(|t| t.root).collect();
        let root = p.rho(phi, &roots)?;
        let tops = ts.iter().flat_map(|t| t.tops.iter().copied()).collect();
        let parts: Vec<&[usize]> = ts.iter().map(|t| t.labels.as_slice()).collect();
        assemble2(&raw, &Tree2 { root, tops, labels: concat_labels(&parts) })
    };
    let raw_module = MultiProfunctor::new(p.src.clone(), q.tgt.clone(), raw.seq().clone(), lambda, rho)?;
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for (b, (r, _)) in raw.bases.iter().enumerate() {
        by_root.entry(*r).or_default().push(b);
    }
    let mut entries: Vec<(&(usize, usize, usize), &usize)> = p.lambda.iter().collect();
    entries.sort();
    let mut pairs = Vec::new();
    for (&(e, i, psi), &r) in entries {
        let k = p.tgt.arity(psi);
        for &b in by_root.get(&r).map(Vec::as_slice).unwrap_or(&[]) {
            let tops = &raw.bases[b].1;
            let Some(g) = q.rho(psi, &tops[i..i + k]) else { continue };
            let mut t2 = tops[..i].to_vec();
            t2.push(g);
            t2.extend(&tops[i + k..]);
            let n: usize = arities(&q.seq, tops).iter().sum();
            let id = Perm::identity(n);
            let a = raw.class(r, tops, &id).expect("base of the composite");
            if let Some(c) = raw.class(e, &t2, &id) {
                pairs.push((a, c));
            }
        }
    }
    let quotient = quotient_seq(raw.seq(), &pairs)?;
    let profunctor = induced_module(&raw_module, &quotient)?;
    Ok(MultiComposite { raw, raw_module, quotient, profunctor })
}

/// The tensor `M1 ⊗ M2` of two tables, materialised from their
/// presentations, with the pairing `φ1 ⊗ φ2` of operations.
#[derive(Debug, Clone)]
pub struct TableTensor {
    pub left: SymMulticat,
    pub right: SymMulticat,
    pub bv: BvTensor,
    pub table: PresentedMulticat,
}

impl TableTensor {
    pub fn new(left: &SymMulticat, right: &SymMulticat, bounds: Bounds, cap: u128) -> Result<TableTensor> {
        let bv = bv_tensor(&left.to_presentation(), &right.to_presentation())?;
        let table = materialise(bv.presentation.clone(), bounds, cap)?;
        Ok(TableTensor { left: left.clone(), right: right.clone(), bv, table })
    }

    pub fn multicat(&self) -> &SymMulticat {
        &self.table.table
    }

    /// `φ1` applied to copies of `φ2`; input `j·k1 + i` is input `i` of
    /// `φ1` and `j` of `φ2`.
    pub fn pair(&self, f1: usize, f2: usize) -> Option<usize> {
        let (p1, p2) = (self.left.profile(f1), self.right.profile(f2));
        let k1 = p1.arity();
        let sig = &self.bv.presentation.sig;
        let gen = |g: usize| Term::generator(g, sig.generators[g].profile.arity());
        let t1 = self.left.term(f1).map_generators(&|g| gen(self.bv.left(g, p2.output)));
        let args: Vec<Term> = (0..k1)
            .map(|i| {
                self.right
                    .term(f2)
                    .map_generators(&|g| gen(self.bv.right(p1.inputs[i], g)))
                    .rename(&|j| j * k1 + i)
            })
            .collect();
        let t = t1.substitute(&args);
        let inputs = super::sym::grid_list(&p1.inputs, &p2.inputs, self.right.colours);
        self.table.op(&t, &Profile::new(inputs, self.bv.colour(p1.output, p2.output)))
    }
}

/// `ω : F x1 ⊠ F x2 → F(x1 ⊠ x2)`, tabulated on the classes of `prod`.
/// Each factor is split into root, generators and leaf operations; the
/// roots and the leaf operations are paired, the generators multiplied.
pub fn omega(
    f1: &FreeMultiBimodule,
    f2: &FreeMultiBimodule,
    prod: &ArithmeticProduct,
    gens: &ArithmeticProduct,
    target: &FreeMultiBimodule,
    m: &TableTensor,
    n: &TableTensor,
) -> Result<Vec<usize>> {
    let value = |w1: usize, w2: usize, pi: &Perm| -> Option<usize> {
        let (t1, t2) = (f1.decompose(w1), f2.decompose(w2));
        let (k1, k2) = (t1.mids.len(), t2.mids.len());
        let n1 = t1.labels.len();
        let root = m.pair(t1.root, t2.root)?;
        // first top index and first leaf of each middle generator
        let layout = |t: &Tree3, f: &FreeMultiBimodule| -> (Vec<usize>, Vec<usize>) {
            let mut top_off = Vec::new();
            let mut acc = 0;
            for &x in &t.mids {
                top_off.push(acc);
                acc += f.generators.arity(x);
            }
            let mut leaf_off = Vec::new();
            let mut l = 0;
            for &p in &t.tops {
                leaf_off.push(l);
                l += f.module.tgt.arity(p);
            }
            (top_off, leaf_off)
        };
        let (top1, leaf1) = layout(&t1, f1);
        let (top2, leaf2) = layout(&t2, f2);
        let pinv = pi.inverse();
        let (mut mids, mut tops, mut labels) = (Vec::new(), Vec::new(), Vec::new());
        for j in 0..k2 {
            for i in 0..k1 {
                let (x1, x2) = (t1.mids[i], t2.mids[j]);
                let (m1, m2) = (f1.generators.arity(x1), f2.generators.arity(x2));
                mids.push(gens.class(x1, x2, &Perm::identity(m1 * m2))?);
                for s2 in 0..m2 {
                    for s1 in 0..m1 {
                        let (a, b) = (top1[i] + s1, top2[j] + s2);
                        let (g1, g2) = (t1.tops[a], t2.tops[b]);
                        tops.push(n.pair(g1, g2)?);
                        let (l1, l2) = (f1.module.tgt.arity(g1), f2.module.tgt.arity(g2));
                        for r2 in 0..l2 {
                            for r1 in 0..l1 {
                                let (p1, p2) = (t1.labels[leaf1[a] + r1], t2.labels[leaf2[b] + r2]);
                                labels.push(pinv.apply(p2 * n1 + p1));
                            }
                        }
                    }
                }
            }
        }
        target.assemble(&Tree3 { root, mids, tops, labels })
    };
    let mut table = vec![usize::MAX; prod.seq().len()];
    for (w1, w2, pi, c) in prod.members() {
        let v = value(w1, w2, &pi).ok_or_else(|| Error::Truncated(format!("ω leaves the truncation on class {c}")))?;
        if table[c] == usize::MAX {
            table[c] = v;
        } else if table[c] != v {
            return Err(Error::Axiom(format!("ω is not well defined on class {c}")));
        }
    }
    Ok(table)
}

/// `f1 ⊠ f2` on arithmetic products, checked on every member.
pub fn product_map(from: &ArithmeticProduct, to: &ArithmeticProduct, f1: &[usize], f2: &[usize]) -> Result<Vec<usize>> {
    let mut table = vec![usize::MAX; from.seq().len()];
    for (e1, e2, sigma, c) in from.members() {
        let v = to
            .class(f1[e1], f2[e2], &sigma)
            .ok_or_else(|| Error::Truncated(format!("product map leaves the truncation on class {c}")))?;
        if table[c] == usize::MAX {
            table[c] = v;
        } else if table[c] != v {
            return Err(Error::Axiom(format!("product map is not well defined on class {c}")));
        }
    }
    Ok(table)
}

fn after(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// `p1 ⊗ p2`: the coequaliser of `F(u), v̄ : F(F p1 ⊠ F p2) ⇉ F(p1 ⊠ p2)`.
#[derive(Debug, Clone)]
pub struct MultiTensor {
    pub src: TableTensor,
    pub tgt: TableTensor,
    /// `p1 ⊠ p2`
    pub product: ArithmeticProduct,
    pub free: FreeMultiBimodule,
    pub free1: FreeMultiBimodule,
    pub free2: FreeMultiBimodule,
    /// `F p1 ⊠ F p2`
    pub resolved: ArithmeticProduct,
    pub free_resolved: FreeMultiBimodule,
    pub fu: Vec<usize>,
    pub vbar: Vec<usize>,
    pub quotient: SeqQuotient,
    pub profunctor: MultiProfunctor,
}

impl MultiTensor {
    /// The universal bimorphism `(e1, e2) ↦ e1 ⊗ e2`.
    pub fn bimorphism(&self, e1: usize, e2: usize) -> Option<usize> {
        let k = self.free1.generators.arity(e1) * self.free2.generators.arity(e2);
        let x = self.product.class(e1, e2, &Perm::identity(k))?;
        Some(self.quotient.proj[self.free.unit(x)])
    }
}

pub fn multiprof_tensor(p1: &MultiProfunctor, p2: &MultiProfunctor, size: usize, cap: u128) -> Result<MultiTensor> {
    let trunc = p1.seq.trunc.min(p2.seq.trunc);
    let bounds = Bounds::new(size, trunc);
    let src = TableTensor::new(&p1.src, &p2.src, bounds, cap)?;
    let tgt = TableTensor::new(&p1.tgt, &p2.tgt, bounds, cap)?;
    let (m, n) = (src.multicat(), tgt.multicat());
    let product = arithmetic_product(&p1.seq, &p2.seq, trunc, cap)?;
    let free = free_multibimodule(product.seq(), m, n, cap)?;
    let free1 = free_multibimodule(&p1.seq, &p1.src, &p1.tgt, cap)?;
    let free2 = free_multibimodule(&p2.seq, &p2.src, &p2.tgt, cap)?;
    let resolved = arithmetic_product(&free1.module.seq, &free2.module.seq, trunc, cap)?;
    let free_resolved = free_multibimodule(resolved.seq(), m, n, cap)?;
    let u = product_map(&resolved, &product, &free1.counit(p1)?, &free2.counit(p2)?)?;
    let fu = free_resolved.extend(&free.module, &|y| Some(free.unit(u[y])))?;
    let v = omega(&free1, &free2, &resolved, &product, &free, &src, &tgt)?;
    let vbar = free_resolved.extend(&free.module, &|y| Some(v[y]))?;
    let pairs: Vec<(usize, usize)> = fu.iter().copied().zip(vbar.iter().copied()).collect();
    let quotient = quotient_seq(&free.module.seq, &pairs)?;
    let profunctor = induced_module(&free.module, &quotient)?;
    Ok(MultiTensor { src, tgt, product, free, free1, free2, resolved, free_resolved, fu, vbar, quotient, profunctor })
}

/// Maps out of the tensor against commuting bimorphisms into one target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorUniversality {
    /// equivariant maps `p1 ⊠ p2 → r` whose extension coequalises
    pub commuting: usize,
    /// module maps `p1 ⊗ p2 → r`
    pub module_maps: usize,
    /// every commuting map descends to a module map
    pub factorise: bool,
}

impl TensorUniversality {
    pub fn holds(&self) -> bool {
        self.factorise && self.commuting == self.module_maps
    }
}

pub fn verify_tensor_universal(t: &MultiTensor, target: &MultiProfunctor, cap: u128) -> Result<TensorUniversality> {
    let x = t.product.seq();
    let all: Vec<usize> = (0..=x.trunc).collect();
    let mut commuting = 0;
    let mut factorise = true;
    for b in super::sym::enumerate_maps(x, &target.seq, &all, cap)? {
        let bar = t.free.extend(target, &|z| Some(b[z]))?;
        if after(&bar, &t.fu) != after(&bar, &t.vbar) {
            continue;
        }
        commuting += 1;
        let q = &t.quotient;
        let induced: Vec<usize> = q.reps.iter().map(|&r| bar[r]).collect();
        let descends = (0..bar.len()).all(|z| bar[z] == induced[q.proj[z]]);
        factorise &= descends && check_module_map(&t.profunctor, target, &induced).is_ok();
    }
    let module_maps = enumerate_module_maps(&t.profunctor, target, cap)?.len();
    Ok(TensorUniversality { commuting, module_maps, factorise })
}

/// `F x1 ⊗ F x2 → F(x1 ⊠ x2)` induced by `ω̄`, with the split coequaliser
/// identities that make it an isomorphism.
#[derive(Debug, Clone)]
pub struct FreeTensorComparison {
    pub tensor: MultiTensor,
    /// `F(x1 ⊠ x2)`
    pub target: FreeMultiBimodule,
    /// `ω̄ : F(F x1 ⊠ F x2) → F(x1 ⊠ x2)`
    pub omega_bar: Vec<usize>,
    /// class of the tensor ↦ element of the target
    pub comparison: Vec<usize>,
    /// `ω̄ F(u) = ω̄ v̄`
    pub coequalises: bool,
    /// `ω̄ s = id` for `s = F(η ⊠ η)`
    pub lower_split: bool,
    /// `F(u) t = id` for `t = F(Fη ⊠ Fη)`
    pub upper_split: bool,
    /// `v̄ t = s ω̄`
    pub square: bool,
    pub bijective: bool,
    pub module_map: bool,
}

impl FreeTensorComparison {
    pub fn holds(&self) -> bool {
        self.coequalises && self.lower_split && self.upper_split && self.square && self.bijective && self.module_map
    }
}

#[allow(clippy::too_many_arguments)]
pub fn free_tensor_comparison(
    x1: &SymSeq,
    m1: &SymMulticat,
    n1: &SymMulticat,
    x2: &SymSeq,
    m2: &SymMulticat,
    n2: &SymMulticat,
    size: usize,
    cap: u128,
) -> Result<FreeTensorComparison> {
    let fx1 = free_multibimodule(x1, m1, n1, cap)?;
    let fx2 = free_multibimodule(x2, m2, n2, cap)?;
    let tensor = multiprof_tensor(&fx1.module, &fx2.module, size, cap)?;
    let trunc = tensor.profunctor.seq.trunc;
    let gens = arithmetic_product(x1, x2, trunc, cap)?;
    let target = free_multibimodule(gens.seq(), tensor.src.multicat(), tensor.tgt.multicat(), cap)?;
    let w = omega(&fx1, &fx2, &tensor.product, &gens, &target, &tensor.src, &tensor.tgt)?;
    let omega_bar = tensor.free.extend(&target.module, &|z| Some(w[z]))?;
    let units1: Vec<usize> = (0..x1.len()).map(|e| fx1.unit(e)).collect();
    let units2: Vec<usize> = (0..x2.len()).map(|e| fx2.unit(e)).collect();
    let eta = product_map(&gens, &tensor.product, &units1, &units2)?;
    let s = target.extend(&tensor.free.module, &|g| Some(tensor.free.unit(eta[g])))?;
    // F(η) on each factor: units applied inside
    let upper1 = fx1.extend(&tensor.free1.module, &|g| Some(tensor.free1.unit(fx1.unit(g))))?;
    let upper2 = fx2.extend(&tensor.free2.module, &|g| Some(tensor.free2.unit(fx2.unit(g))))?;
    let eta_up = product_map(&tensor.product, &tensor.resolved, &upper1, &upper2)?;
    let t = tensor.free.extend(&tensor.free_resolved.module, &|z| Some(tensor.free_resolved.unit(eta_up[z])))?;
    let id_x: Vec<usize> = (0..tensor.free.module.len()).collect();
    let id_g: Vec<usize> = (0..target.module.len()).collect();
    let coequalises = after(&omega_bar, &tensor.fu) == after(&omega_bar, &tensor.vbar);
    let lower_split = after(&omega_bar, &s) == id_g;
    let upper_split = after(&tensor.fu, &t) == id_x;
    let square = after(&tensor.vbar, &t) == after(&s, &omega_bar);
    let q = &tensor.quotient;
    let comparison: Vec<usize> = q.reps.iter().map(|&r| omega_bar[r]).collect();
    let well_defined = (0..omega_bar.len()).all(|z| omega_bar[z] == comparison[q.proj[z]]);
    let mut hit = vec![false; target.module.len()];
    for &v in &comparison {
        hit[v] = true;
    }
    let bijective = well_defined && comparison.len() == target.module.len() && hit.iter().all(|&h| h);
    let module_map = well_defined && check_module_map(&tensor.profunctor, &target.module, &comparison).is_ok();
    Ok(FreeTensorComparison { tensor, target, omega_bar, comparison, coequalises, lower_split, upper_split, square, bijective, module_map })
}

/// Injectivity and surjectivity of a map on one profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub profile: Profile,
    pub source: usize,
    pub target: usize,
    pub injective: bool,
    pub surjective: bool,
    /// both entries are certified complete
    pub exact: bool,
}

fn entry_reports(from: &SymSeq, to: &SymSeq, map: &[usize]) -> Vec<EntryReport> {
    let sources: HashMap<Profile, Vec<usize>> = group_by_profile(from).into_iter().collect();
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (profile, targets) in group_by_profile(to).into_iter().chain(group_by_profile(from).into_iter().map(|(p, _)| (p, Vec::new()))) {
        if !seen.insert(profile.clone()) {
            continue;
        }
        let srcs = sources.get(&profile).cloned().unwrap_or_default();
        let targets: Vec<usize> = if targets.is_empty() { to.entry(&profile) } else { targets };
        let images: std::collections::BTreeSet<usize> = srcs.iter().map(|&e| map[e]).collect();
        let n = profile.arity();
        out.push(EntryReport {
            source: srcs.len(),
            target: targets.len(),
            injective: images.len() == srcs.len(),
            surjective: images.len() == targets.len(),
            exact: from.exact.get(n).copied().unwrap_or(false) && to.exact.get(n).copied().unwrap_or(false),
            profile,
        });
    }
    out.sort_by(|a, b| (a.profile.arity(), &a.profile.inputs, a.profile.output).cmp(&(b.profile.arity(), &b.profile.inputs, b.profile.output)));
    out
}

/// `ξ̃ : (q1 • p1) ⊗ (q2 • p2) → (q1 ⊗ q2) • (p1 ⊗ p2)`, extended from the
/// bimorphism that pairs roots and tops separately.
#[derive(Debug, Clone)]
pub struct MultiInterchange {
    pub left: MultiComposite,
    pub right: MultiComposite,
    pub source: MultiTensor,
    pub tensor_p: MultiTensor,
    pub tensor_q: MultiTensor,
    pub target: MultiComposite,
    pub map: Vec<usize>,
    pub module_map: bool,
}

impl MultiInterchange {
    pub fn entries(&self) -> Vec<EntryReport> {
        entry_reports(&self.source.profunctor.seq, &self.target.profunctor.seq, &self.map)
    }

    pub fn is_invertible(&self) -> bool {
        self.entries().iter().all(|e| e.injective && e.surjective)
    }
}

pub fn multi_interchange(
    q1: &MultiProfunctor,
    p1: &MultiProfunctor,
    q2: &MultiProfunctor,
    p2: &MultiProfunctor,
    size: usize,
    cap: u128,
) -> Result<MultiInterchange> {
    let left = multiprof_compose(q1, p1, cap)?;
    let right = multiprof_compose(q2, p2, cap)?;
    let source = multiprof_tensor(&left.profunctor, &right.profunctor, size, cap)?;
    let tensor_p = multiprof_tensor(p1, p2, size, cap)?;
    let tensor_q = multiprof_tensor(q1, q2, size, cap)?;
    let target = multiprof_compose(&tensor_q.profunctor, &tensor_p.profunctor, cap)?;
    let (p1n, q1n) = (&p1.seq, &q1.seq);
    let (p2n, q2n) = (&p2.seq, &q2.seq);
    let value = |t1: &Tree2, t2: &Tree2, pi: &Perm| -> Option<usize> {
        let root = tensor_p.bimorphism(t1.root, t2.root)?;
        let (k1, k2) = (p1n.arity(t1.root), p2n.arity(t2.root));
        let offsets = |t: &Tree2, q: &SymSeq| -> Vec<usize> {
            let mut off = Vec::new();
            let mut acc = 0;
            for &g in &t.tops {
                off.push(acc);
                acc += q.arity(g);
            }
            off
        };
        let (off1, off2) = (offsets(t1, q1n), offsets(t2, q2n));
        let n1 = t1.labels.len();
        let pinv = pi.inverse();
        let (mut tops, mut labels) = (Vec::new(), Vec::new());
        for j in 0..k2 {
            for i in 0..k1 {
                let (g1, g2) = (t1.tops[i], t2.tops[j]);
                tops.push(tensor_q.bimorphism(g1, g2)?);
                for r2 in 0..q2n.arity(g2) {
                    for r1 in 0..q1n.arity(g1) {
                        let (a, b) = (t1.labels[off1[i] + r1], t2.labels[off2[j] + r2]);
                        labels.push(pinv.apply(b * n1 + a));
                    }
                }
            }
        }
        target.assemble(&Tree2 { root, tops, labels })
    };
    let members = |c: &MultiComposite| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); c.profunctor.len()];
        for (r, &k) in c.quotient.proj.iter().enumerate() {
            out[k].push(r);
        }
        out
    };
    let (mem1, mem2) = (members(&left), members(&right));
    let mut gen = vec![usize::MAX; source.product.seq().len()];
    for (a, b, pi, c) in source.product.members() {
        for &r1 in &mem1[a] {
            for &r2 in &mem2[b] {
                let v = value(&decompose2(&left.raw, r1), &decompose2(&right.raw, r2), &pi)
                    .ok_or_else(|| Error::Truncated(format!("interchange leaves the truncation on class {c}")))?;
                if gen[c] == usize::MAX {
                    gen[c] = v;
                } else if gen[c] != v {
                    return Err(Error::Axiom(format!("interchange is not well defined on class {c}")));
                }
            }
        }
    }
    let on_free = source.free.extend(&target.profunctor, &|x| Some(gen[x]))?;
    let q = &source.quotient;
    let map: Vec<usize> = q.reps.iter().map(|&r| on_free[r]).collect();
    if (0..on_free.len()).any(|z| on_free[z] != map[q.proj[z]]) {
        return Err(Error::Axiom("interchange does not descend to the tensor".into()));
    }
    let module_map = check_module_map(&source.profunctor, &target.profunctor, &map).is_ok();
    Ok(MultiInterchange { left, right, source, tensor_p, tensor_q, target, map, module_map })
}

/// Outcome of the probe on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// bijective on every entry up to the truncation
    Invertible { trunc: usize, exact: bool },
    /// an entry on which the map is not bijective
    Witness { profile: Profile, source: usize, target: usize, injective: bool, surjective: bool },
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub name: String,
    pub entries: Vec<EntryReport>,
    pub module_map: bool,
    pub verdict: Verdict,
}

/// `ξ̃` for `(id, p, q, id)`: one factor of each composite is an identity.
pub fn normality_instance(name: &str, p: &MultiProfunctor, q: &MultiProfunctor, size: usize, cap: u128) -> Result<ProbeReport> {
    let q1 = MultiProfunctor::identity(&p.tgt);
    let p2 = MultiProfunctor::identity(&q.src);
    let xi = multi_interchange(&q1, p, q, &p2, size, cap)?;
    let entries = xi.entries();
    let verdict = match entries.iter().find(|e| !(e.injective && e.surjective)) {
        Some(e) => Verdict::Witness {
            profile: e.profile.clone(),
            source: e.source,
            target: e.target,
            injective: e.injective,
            surjective: e.surjective,
        },
        None => Verdict::Invertible { trunc: xi.source.profunctor.seq.trunc, exact: entries.iter().all(|e| e.exact) },
    };
    Ok(ProbeReport { name: name.to_string(), entries, module_map: xi.module_map, verdict })
}

/// The same probe for profunctors between finite categories.
pub fn profunctor_control(p: &crate::promod::Profunctor, q: &crate::promod::Profunctor, budget: usize) -> Result<bool> {
    let q1 = crate::promod::Profunctor::identity(&p.tgt);
    let p2 = crate::promod::Profunctor::identity(&q.src);
    Ok(crate::promod::interchange(&q1, p, q, &p2, budget)?.map.is_isomorphism())
}
