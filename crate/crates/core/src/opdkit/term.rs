//! Trees over a signature of generating operations, relations between
//! them, and the bounded congruence closure that turns a presentation
//! into a finite table of operations.

use std::collections::HashMap;
use std::fmt;

use super::sym::Profile;
use crate::error::{shape, Error, Result};
use crate::finkit::{check_cap, UnionFind};
use crate::perm::Perm;

/// A planar tree: nodes are generators, leaves are input variables.
/// An operation of arity `n` uses each of `Var(0)..Var(n-1)` once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Op(usize, Vec<Term>),
}

impl Term {
    /// A single generator applied to `Var(0..arity)`.
    pub fn generator(g: usize, arity: usize) -> Term {
        Term::Op(g, (0..arity).map(Term::Var).collect())
    }

    /// Number of generator nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op(_, ch) => 1 + ch.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Variables in planar order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(v) => out.push(*v),
            Term::Op(_, ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn arity(&self) -> usize {
        self.leaves().len()
    }

    pub fn generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut Vec<usize>) {
        if let Term::Op(g, ch) = self {
            out.push(*g);
            ch.iter().for_each(|c| c.collect_generators(out));
        }
    }

    pub fn rename(&self, f: &dyn Fn(usize) -> usize) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(*v)),
            Term::Op(g, ch) => Term::Op(*g, ch.iter().map(|c| c.rename(f)).collect()),
        }
    }

    pub fn map_generators(&self, f: &dyn Fn(usize) -> Term) -> Term {
        match self {
            Term::Var(v) => Term::Var(*v),
            Term::Op(g, ch) => {
                let ch: Vec<Term> = ch.iter().map(|c| c.map_generators(f)).collect();
                f(*g).substitute(&ch)
            }
        }
    }

    /// `self·σ`: new input `j` is old input `σ(j)`.
    pub fn act(&self, sigma: &Perm) -> Term {
        let inv = sigma.inverse();
        self.rename(&|v| inv.apply(v))
    }

    /// Replaces each `Var(i)` by `args[i]`.
    pub fn substitute(&self, args: &[Term]) -> Term {
        match self {
            Term::Var(v) => args[*v].clone(),
            Term::Op(g, ch) => Term::Op(*g, ch.iter().map(|c| c.substitute(args)).collect()),
        }
    }

    /// `self ∘_i g` where `g` has arity `k`.
    pub fn compose_at(&self, i: usize, g: &Term, k: usize) -> Term {
        let args: Vec<Term> = (0..self.arity())
            .map(|v| match v.cmp(&i) {
                std::cmp::Ordering::Less => Term::Var(v),
                std::cmp::Ordering::Equal => g.rename(&|w| w + i),
                std::cmp::Ordering::Greater => Term::Var(v + k - 1),
            })
            .collect();
        self.substitute(&args)
    }

    /// Matches a linear pattern against this tree, binding pattern variables.
    fn matches(&self, pattern: &Term, binding: &mut Vec<Option<Term>>) -> bool {
        match pattern {
            Term::Var(v) => {
                binding[*v] = Some(self.clone());
                true
            }
            Term::Op(g, pch) => match self {
                Term::Op(h, ch) if g == h && ch.len() == pch.len() => {
                    ch.iter().zip(pch).all(|(c, p)| c.matches(p, binding))
                }
                _ => false,
            },
        }
    }

    /// Every tree obtained by rewriting one instance of `from` into `to`.
    pub fn rewrites(&self, from: &Term, to: &Term, arity: usize, out: &mut Vec<Term>) {
        let mut binding = vec![None; arity];
        if matches!(from, Term::Op(..)) && self.matches(from, &mut binding) {
            let args: Vec<Term> = binding.into_iter().map(|b| b.expect("linear pattern")).collect();
            out.push(to.substitute(&args));
        }
        if let Term::Op(g, ch) = self {
            for k in 0..ch.len() {
                let mut sub = Vec::new();
                ch[k].rewrites(from, to, arity, &mut sub);
                for s in sub {
                    let mut ch2 = ch.clone();
                    ch2[k] = s;
                    out.push(Term::Op(*g, ch2));
                }
            }
        }
    }
}

/// Writes `g(x0, h(x1, x2))` using generator names.
pub struct Display<'a> {
    pub term: &'a Term,
    pub names: &'a [String],
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(v) => write!(f, "x{v}"),
            Term::Op(g, ch) => {
                write!(f, "{}(", self.names[*g])?;
                for (k, c) in ch.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", Display { term: c, names: self.names })?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub profile: Profile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub colours: usize,
    pub generators: Vec<Generator>,
}

impl Signature {
    pub fn new(colours: usize, generators: Vec<Generator>) -> Result<Signature> {
        for g in &generators {
            if g.profile.output >= colours || g.profile.inputs.iter().any(|&c| c >= colours) {
                return shape(format!("generator {} uses an unknown colour", g.name));
            }
        }
        Ok(Signature { colours, generators })
    }

    /// Single colour, generators named by arity.
    pub fn single(gens: &[(&str, usize)]) -> Signature {
        let generators = gens
            .iter()
            .map(|&(n, a)| Generator { name: n.to_string(), profile: Profile::new(vec![0; a], 0) })
            .collect();
        Signature { colours: 1, generators }
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Output colour of a tree whose variables have the given colours.
    pub fn output(&self, t: &Term, inputs: &[usize]) -> Option<usize> {
        match t {
            Term::Var(v) => inputs.get(*v).copied(),
            Term::Op(g, ch) => {
                let p = &self.generators.get(*g)?.profile;
                if p.arity() != ch.len() {
                    return None;
                }
                for (c, &want) in ch.iter().zip(&p.inputs) {
                    if self.output(c, inputs)? != want {
                        return None;
                    }
                }
                Some(p.output)
            }
        }
    }

    /// Checks that `t` uses each variable once and is well typed at `profile`.
    pub fn check(&self, t: &Term, profile: &Profile) -> Result<()> {
        let mut leaves = t.leaves();
        leaves.sort_unstable();
        if leaves != (0..profile.arity()).collect::<Vec<_>>() {
            return shape("a tree must use each input variable exactly once");
        }
        if self.output(t, &profile.inputs) != Some(profile.output) {
            return shape("tree is not well typed");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Term,
    pub rhs: Term,
    pub profile: Profile,
}

/// A symmetric multicategory by generators and relations.
///
/// `reducing` records that every relation rewrites towards a finite model
/// in which each tree evaluates (as for a presentation read off a table),
/// so closure inside any size bound already decides equality there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub sig: Signature,
    pub relations: Vec<Relation>,
    pub reducing: bool,
}

impl Presentation {
    pub fn new(sig: Signature, relations: Vec<Relation>) -> Result<Presentation> {
        for r in &relations {
            sig.check(&r.lhs, &r.profile)?;
            sig.check(&r.rhs, &r.profile)?;
        }
        Ok(Presentation { sig, relations, reducing: false })
    }

    pub fn free(sig: Signature) -> Presentation {
        Presentation { sig, relations: vec![], reducing: false }
    }

    pub fn colours(&self) -> usize {
        self.sig.colours
    }

    /// Whether closure inside `bounds` decides equality of bounded trees.
    pub fn closure_is_exact(&self, bounds: &Bounds) -> bool {
        let size_preserving = self.relations.iter().all(|r| r.lhs.size() == r.rhs.size());
        let finite_by_arity = self.sig.generators.iter().all(|g| g.profile.arity() >= 2) && bounds.size + 1 >= bounds.arity;
        size_preserving || finite_by_arity || self.reducing
    }
}

/// Bounds on the trees materialised: node count and arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub size: usize,
    pub arity: usize,
}

impl Bounds {
    pub fn new(size: usize, arity: usize) -> Bounds {
        Bounds { size, arity }
    }
}

/// Planar trees of exactly a given size for each output colour, with
/// leaves numbered left to right and their colours.
fn planar_trees(sig: &Signature, bounds: &Bounds, cap: u128) -> Result<Vec<Vec<Vec<(Term, Vec<usize>)>>>> {
    let mut by: Vec<Vec<Vec<(Term, Vec<usize>)>>> = vec![vec![Vec::new(); bounds.size + 1]; sig.colours];
    for (c, slot) in by.iter_mut().enumerate() {
        if bounds.arity >= 1 {
            slot[0].push((Term::Var(0), vec![c]));
        }
    }
    let mut total: u128 = 0;
    for s in 1..=bounds.size {
        for c in 0..sig.colours {
            let mut found = Vec::new();
            for (g, gen) in sig.generators.iter().enumerate() {
                if gen.profile.output != c {
                    continue;
                }
                let mut children: Vec<(Term, Vec<usize>)> = Vec::new();
                grow(&by, &gen.profile.inputs, s - 1, bounds.arity, &mut children, &mut |ch: &[(Term, Vec<usize>)]| {
                    let mut args = Vec::with_capacity(ch.len());
                    let mut colours = Vec::new();
                    for (t, cs) in ch {
                        let off = colours.len();
                        args.push(t.rename(&|v| v + off));
                        colours.extend_from_slice(cs);
                    }
                    found.push((Term::Op(g, args), colours));
                });
            }
            total += found.len() as u128;
            check_cap(total, cap)?;
            by[c][s] = found;
        }
    }
    Ok(by)
}

fn grow(
    by: &[Vec<Vec<(Term, Vec<usize>)>>],
    slots: &[usize],
    budget: usize,
    arity: usize,
    acc: &mut Vec<(Term, Vec<usize>)>,
    emit: &mut dyn FnMut(&[(Term, Vec<usize>)]),
) {
    let k = acc.len();
    let leaves: usize = acc.iter().map(|(_, cs)| cs.len()).sum();
    if leaves > arity {
        return;
    }
    if k == slots.len() {
        if budget == 0 {
            emit(acc);
        }
        return;
    }
    for s in 0..=budget {
        for (t, cs) in &by[slots[k]][s] {
            acc.push((t.clone(), cs.clone()));
            grow(by, slots, budget - s, arity, acc, emit);
            acc.pop();
        }
    }
}

/// Every labelled tree within the bounds, ordered by arity, then size,
/// then generation order.
pub fn enumerate_trees(sig: &Signature, bounds: &Bounds, cap: u128) -> Result<Vec<(Term, Profile)>> {
    let planar = planar_trees(sig, bounds, cap)?;
    let mut out = Vec::new();
    for n in 0..=bounds.arity {
        let perms = Perm::all(n);
        for s in 0..=bounds.size {
            for slot in &planar {
                for (t, cs) in &slot[s] {
                    if cs.len() != n {
                        continue;
                    }
                    let output = sig.output(t, cs).expect("generated trees are typed");
                    for p in &perms {
                        // planar leaf k gets label p(k)
                        let mut inputs = vec![0; n];
                        for (k, &c) in cs.iter().enumerate() {
                            inputs[p.apply(k)] = c;
                        }
                        out.push((t.rename(&|v| p.apply(v)), Profile::new(inputs, output)));
                    }
                    check_cap(out.len() as u128, cap)?;
                }
            }
        }
    }
    Ok(out)
}

/// The bounded trees of a presentation, partitioned by the congruence
/// generated by relation instances whose rewrites stay within the bounds.
#[derive(Debug, Clone)]
pub struct Closure {
    pub bounds: Bounds,
    pub trees: Vec<(Term, Profile)>,
    index: HashMap<(Term, Profile), usize>,
    /// Class of each tree; classes numbered by least tree.
    pub class: Vec<usize>,
    /// Least tree of each class.
    pub reps: Vec<usize>,
    pub exact: bool,
}

impl Closure {
    pub fn new(pres: &Presentation, bounds: Bounds, cap: u128) -> Result<Closure> {
        let trees = enumerate_trees(&pres.sig, &bounds, cap)?;
        let index: HashMap<(Term, Profile), usize> = trees.iter().enumerate().map(|(i, tp)| (tp.clone(), i)).collect();
        let mut uf = UnionFind::new(trees.len());
        let mut out = Vec::new();
        for (i, (t, p)) in trees.iter().enumerate() {
            for r in &pres.relations {
                let n = r.profile.arity();
                out.clear();
                t.rewrites(&r.lhs, &r.rhs, n, &mut out);
                t.rewrites(&r.rhs, &r.lhs, n, &mut out);
                for t2 in out.drain(..) {
                    if let Some(&j) = index.get(&(t2, p.clone())) {
                        uf.union(i, j);
                    }
                }
            }
        }
        let part = uf.into_partition();
        let (_, proj) = part.quotient();
        let reps = part.representatives();
        let exact = pres.closure_is_exact(&bounds);
        Ok(Closure { bounds, trees, index, class: proj.table, reps, exact })
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    /// Class of a tree of the given profile, if it lies within the bounds.
    pub fn class_of(&self, t: &Term, p: &Profile) -> Option<usize> {
        self.index.get(&(t.clone(), p.clone())).map(|&i| self.class[i])
    }

    pub fn rep(&self, c: usize) -> &(Term, Profile) {
        &self.trees[self.reps[c]]
    }

    pub fn profile(&self, c: usize) -> &Profile {
        &self.rep(c).1
    }

    pub fn same(&self, a: &Term, b: &Term, p: &Profile) -> Result<bool> {
        match (self.class_of(a, p), self.class_of(b, p)) {
            (Some(x), Some(y)) => Ok(x == y),
            _ => Err(Error::Truncated("tree outside the closure bounds".into())),
        }
    }
}
