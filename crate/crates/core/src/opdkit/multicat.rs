//! Symmetric multicategories in table form, and the passage between
//! tables and presentations.

use std::collections::HashMap;

use super::sym::{Profile, SymSeq};
use super::term::{Bounds, Closure, Display, Generator, Presentation, Relation, Signature, Term};
use crate::audit;
use crate::error::{shape, Error, Result};
use crate::perm::Perm;

/// A symmetric multicategory as a table: operations form a symmetric
/// sequence over one colour set, with units and partial substitution
/// `f ∘_i g`, defined whenever the result lies within the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMulticat {
    pub colours: usize,
    pub ops: SymSeq,
    pub units: Vec<usize>,
    comp: HashMap<(usize, usize, usize), usize>,
    pub names: Vec<String>,
    /// The table's classes are known to be the true operations.
    pub certified: bool,
}

impl SymMulticat {
    /// Builds and axiom-checks a table; `comp(f, i, g)` is asked for every
    /// typed triple and may decline.
    pub fn new(
        ops: SymSeq,
        units: Vec<usize>,
        names: Vec<String>,
        certified: bool,
        comp: impl Fn(usize, usize, usize) -> Option<usize>,
    ) -> Result<SymMulticat> {
        if ops.in_colours != ops.out_colours || units.len() != ops.out_colours || names.len() != ops.len() {
            return shape("multicategory table has mismatched colours, units or names");
        }
        let mut table = HashMap::new();
        for f in 0..ops.len() {
            for i in 0..ops.arity(f) {
                let c = ops.profiles[f].inputs[i];
                for g in 0..ops.len() {
                    if ops.profiles[g].output == c {
                        if let Some(h) = comp(f, i, g) {
                            table.insert((f, i, g), h);
                        }
                    }
                }
            }
        }
        let m = SymMulticat { colours: ops.out_colours, ops, units, comp: table, names, certified };
        let verdict = m.check_axioms();
        audit::record(audit::Kind::Multicategory, verdict.is_ok());
        verdict.map(|_| m)
    }

    /// Only the units: the discrete multicategory on a colour set.
    pub fn discrete(colours: usize, trunc: usize) -> SymMulticat {
        let ops = SymSeq::unit(colours, trunc);
        let names = (0..colours).map(|c| format!("id{c}")).collect();
        SymMulticat::new(ops, (0..colours).collect(), names, true, |f, _, g| (f == g).then_some(f)).expect("discrete multicategory")
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn trunc(&self) -> usize {
        self.ops.trunc
    }

    pub fn arity(&self, f: usize) -> usize {
        self.ops.arity(f)
    }

    pub fn profile(&self, f: usize) -> &Profile {
        &self.ops.profiles[f]
    }

    /// Index of `f` among the generators of `to_presentation`.
    pub fn generator_index(&self, f: usize) -> Option<usize> {
        (!self.is_unit(f)).then(|| (0..f).filter(|&g| !self.is_unit(g)).count())
    }

    /// `f` as a tree over the generators of `to_presentation`.
    pub fn term(&self, f: usize) -> Term {
        match self.generator_index(f) {
            Some(g) => Term::generator(g, self.arity(f)),
            None => Term::Var(0),
        }
    }

    pub fn is_unit(&self, f: usize) -> bool {
        self.units[self.profile(f).output] == f
    }

    pub fn act(&self, f: usize, sigma: &Perm) -> usize {
        self.ops.act(f, sigma)
    }

    /// `f ∘_i g`, if within the table.
    pub fn compose(&self, f: usize, i: usize, g: usize) -> Option<usize> {
        self.comp.get(&(f, i, g)).copied()
    }

    /// `γ(f; g_0, …, g_{n-1})`, substituting from the last input back.
    pub fn gamma(&self, f: usize, gs: &[usize]) -> Option<usize> {
        if gs.len() != self.arity(f) {
            return None;
        }
        let mut h = f;
        for i in (0..gs.len()).rev() {
            h = self.compose(h, i, gs[i])?;
        }
        Some(h)
    }

    pub fn num_compositions(&self) -> usize {
        self.comp.len()
    }

    /// Every defined `((f, i, g), f ∘_i g)`.
    pub fn compositions(&self) -> impl Iterator<Item = ((usize, usize, usize), usize)> + '_ {
        self.comp.iter().map(|(&k, &v)| (k, v))
    }

    /// Operations with the given output colour.
    pub fn with_output(&self, c: usize) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.profile(g).output == c).collect()
    }

    /// Typing, units, both associativity laws and both equivariance laws,
    /// wherever the composites involved are defined.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        let fail = |m: String| Err(Error::Axiom(m));
        for (c, &u) in self.units.iter().enumerate() {
            if u >= n || self.profile(u) != &Profile::new(vec![c], c) {
                return fail(format!("unit of colour {c} is ill-typed"));
            }
        }
        for (&(f, i, g), &h) in &self.comp {
            let (pf, pg) = (self.profile(f), self.profile(g));
            let mut inputs = pf.inputs[..i].to_vec();
            inputs.extend_from_slice(&pg.inputs);
            inputs.extend_from_slice(&pf.inputs[i + 1..]);
            if h >= n || *self.profile(h) != Profile::new(inputs, pf.output) {
                return fail(format!("{} ∘_{i} {} is ill-typed", self.names[f], self.names[g]));
            }
        }
        for f in 0..n {
            let pf = self.profile(f).clone();
            if self.compose(self.units[pf.output], 0, f) != Some(f) {
                return fail(format!("left unit law fails at {}", self.names[f]));
            }
            for i in 0..pf.arity() {
                if self.compose(f, i, self.units[pf.inputs[i]]) != Some(f) {
                    return fail(format!("right unit law fails at {}", self.names[f]));
                }
            }
        }
        for (&(f, i, g), &h) in &self.comp {
            let (af, ag) = (self.arity(f), self.arity(g));
            // sequential: (f ∘_i g) ∘_{i+j} k = f ∘_i (g ∘_j k)
            for j in 0..ag {
                for k in self.composable(g, j) {
                    if let (Some(l), Some(r)) = (self.compose(h, i + j, k), self.compose(g, j, k).and_then(|gk| self.compose(f, i, gk))) {
                        if l != r {
                            return fail(format!("sequential associativity fails at {}, {}", self.names[f], self.names[g]));
                        }
                    }
                }
            }
            // parallel: (f ∘_i g) ∘_{j+|g|-1} k = (f ∘_j k) ∘_i g for i < j
            for j in i + 1..af {
                for k in self.composable(f, j) {
                    if let (Some(l), Some(r)) = (self.compose(h, j + ag - 1, k), self.compose(f, j, k).and_then(|fk| self.compose(fk, i, g))) {
                        if l != r {
                            return fail(format!("parallel associativity fails at {}, {}", self.names[f], self.names[g]));
                        }
                    }
                }
            }
            // g·τ: (f ∘_i g)·(id ⊕ τ ⊕ id)
            for tau in Perm::all(ag) {
                let parts = [Perm::identity(i), tau.clone(), Perm::identity(af - i - 1)];
                if let Some(l) = self.compose(f, i, self.act(g, &tau)) {
                    if l != self.act(h, &Perm::block_sum_all(&parts)) {
                        return fail(format!("equivariance in the second argument fails at {}, {}", self.names[f], self.names[g]));
                    }
                }
            }
        }
        // f·σ: (f·σ) ∘_i g = (f ∘_{σ(i)} g)·σ.permute_blocks(sizes)
        for f in 0..n {
            let af = self.arity(f);
            for sigma in Perm::all(af) {
                let fs = self.act(f, &sigma);
                for i in 0..af {
                    for g in self.composable(fs, i) {
                        let (Some(l), Some(r)) = (self.compose(fs, i, g), self.compose(f, sigma.apply(i), g)) else { continue };
                        let sizes: Vec<usize> = (0..af).map(|t| if t == sigma.apply(i) { self.arity(g) } else { 1 }).collect();
                        if l != self.act(r, &sigma.permute_blocks(&sizes)) {
                            return fail(format!("equivariance in the first argument fails at {}", self.names[f]));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Operations whose output matches input `i` of `f`.
    pub fn composable(&self, f: usize, i: usize) -> Vec<usize> {
        self.with_output(self.profile(f).inputs[i])
    }

    /// A presentation with one generator per non-unit operation, related
    /// by the action and substitution tables. Every tree rewrites to a
    /// single generator or a unit, so closure inside any bound is exact.
    pub fn to_presentation(&self) -> Presentation {
        let generators = (0..self.len())
            .filter(|&f| !self.is_unit(f))
            .map(|f| Generator { name: self.names[f].clone(), profile: self.profile(f).clone() })
            .collect();
        let term = |f: usize| self.term(f);
        let mut relations = Vec::new();
        for f in 0..self.len() {
            if self.is_unit(f) {
                continue;
            }
            for sigma in Perm::all(self.arity(f)).into_iter().skip(1) {
                let fs = self.act(f, &sigma);
                relations.push(Relation { lhs: term(fs), rhs: term(f).act(&sigma), profile: self.profile(fs).clone() });
            }
        }
        let mut entries: Vec<(&(usize, usize, usize), &usize)> = self.comp.iter().collect();
        entries.sort();
        for (&(f, i, g), &h) in entries {
            if self.is_unit(f) || self.is_unit(g) {
                continue;
            }
            let lhs = term(f).compose_at(i, &term(g), self.arity(g));
            relations.push(Relation { lhs, rhs: term(h), profile: self.profile(h).clone() });
        }
        let sig = Signature { colours: self.colours, generators };
        Presentation { sig, relations, reducing: true }
    }
}

/// A presentation together with its table below some bounds.
#[derive(Debug, Clone)]
pub struct PresentedMulticat {
    pub presentation: Presentation,
    pub closure: Closure,
    pub table: SymMulticat,
}

impl PresentedMulticat {
    /// Class of a tree of the given profile.
    pub fn op(&self, t: &Term, p: &Profile) -> Option<usize> {
        self.closure.class_of(t, p)
    }

    pub fn term(&self, f: usize) -> &Term {
        &self.closure.rep(f).0
    }
}

/// The table of a presentation: bounded trees modulo the bounded closure,
/// with substitution of representatives.
pub fn materialise(presentation: Presentation, bounds: Bounds, cap: u128) -> Result<PresentedMulticat> {
    let closure = Closure::new(&presentation, bounds, cap)?;
    let nc = closure.num_classes();
    let profiles: Vec<Profile> = (0..nc).map(|c| closure.profile(c).clone()).collect();
    let complete_entries = presentation.sig.generators.iter().all(|g| g.profile.arity() >= 2);
    let exact = (0..=bounds.arity).map(|n| closure.exact && complete_entries && n <= bounds.size + 1).collect();
    let colours = presentation.colours();
    let ops = SymSeq::new(colours, colours, profiles, bounds.arity, exact, false, |c, s| {
        let (t, p) = closure.rep(c);
        closure.class_of(&t.act(s), &p.act(s)).expect("the action preserves size and arity")
    })?;
    let units = (0..colours)
        .map(|c| closure.class_of(&Term::Var(0), &Profile::new(vec![c], c)).ok_or_else(|| Error::Truncated("arity bound excludes units".into())))
        .collect::<Result<Vec<_>>>()?;
    let names = presentation.sig.names();
    let labels = (0..nc).map(|c| Display { term: &closure.rep(c).0, names: &names }.to_string()).collect();
    let table = SymMulticat::new(ops, units, labels, closure.exact, |f, i, g| {
        let (tf, pf) = closure.rep(f);
        let (tg, pg) = closure.rep(g);
        let t = tf.compose_at(i, tg, pg.arity());
        let mut inputs = pf.inputs[..i].to_vec();
        inputs.extend_from_slice(&pg.inputs);
        inputs.extend_from_slice(&pf.inputs[i + 1..]);
        closure.class_of(&t, &Profile::new(inputs, pf.output))
    })?;
    Ok(PresentedMulticat { presentation, closure, table })
}

/// The free multicategory on a signature, materialised below the bounds.
pub fn free_multicat(sig: Signature, bounds: Bounds, cap: u128) -> Result<PresentedMulticat> {
    materialise(Presentation::free(sig), bounds, cap)
}
