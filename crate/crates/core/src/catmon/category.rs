use crate::audit;
use crate::error::{shape, Error, Result};
use crate::finkit::FinSet;
use crate::vmatrix::Mat;

const NONE: usize = usize::MAX;

/// A finite category stored as a total composition table over a global
/// list of morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    pub objects: FinSet,
    pub morphisms: FinSet,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ids: Vec<usize>,
    /// `comp[g * m + f] = g ∘ f`, or `NONE` when not composable.
    comp: Vec<usize>,
    homs: Vec<Vec<usize>>,
    local: Vec<usize>,
    outs: Vec<Vec<usize>>,
    ins: Vec<Vec<usize>>,
}

impl FinCategory {
    /// Builds and axiom-checks a category; `compose(g, f)` is only called on
    /// composable pairs.
    pub fn new(
        objects: FinSet,
        morphisms: FinSet,
        src: Vec<usize>,
        tgt: Vec<usize>,
        ids: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<FinCategory> {
        let m = morphisms.size;
        let n = objects.size;
        if src.len() != m || tgt.len() != m || ids.len() != n {
            return shape("source/target/identity tables have the wrong length");
        }
        if src.iter().chain(&tgt).any(|&x| x >= n) || ids.iter().any(|&i| i >= m) {
            return shape("table entry out of range");
        }
        let mut comp = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if tgt[f] == src[g] {
                    comp[g * m + f] = compose(g, f);
                }
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        let mut local = vec![0; m];
        for f in 0..m {
            let h = &mut homs[src[f] * n + tgt[f]];
            local[f] = h.len();
            h.push(f);
        }
        let mut outs = vec![Vec::new(); n];
        let mut ins = vec![Vec::new(); n];
        for f in 0..m {
            outs[src[f]].push(f);
            ins[tgt[f]].push(f);
        }
        let c = FinCategory { objects, morphisms, src, tgt, ids, comp, homs, local, outs, ins };
        let verdict = c.check_axioms();
        audit::record(audit::Kind::Category, verdict.is_ok());
        verdict.map(|_| c)
    }

    pub fn discrete(objects: FinSet) -> FinCategory {
        let n = objects.size;
        let labels = (0..n).map(|x| format!("id_{}", objects.label(x))).collect::<Vec<_>>();
        let mors = FinSet::labelled(labels).unwrap_or_else(|_| FinSet::new(n));
        FinCategory::new(objects, mors, (0..n).collect(), (0..n).collect(), (0..n).collect(), |g, _| g).unwrap()
    }

    /// One-object category from a monoid multiplication table `mul[g][f] = g·f`
    /// with identity element 0.
    pub fn monoid(mul: &[Vec<usize>]) -> Result<FinCategory> {
        let m = mul.len();
        FinCategory::new(FinSet::new(1), FinSet::new(m), vec![0; m], vec![0; m], vec![0], |g, f| mul[g][f])
    }

    pub fn num_objects(&self) -> usize {
        self.objects.size
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.size
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn id(&self, x: usize) -> usize {
        self.ids[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.ids[self.src[f]] == f
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let h = self.comp[g * self.morphisms.size + f];
        (h != NONE).then_some(h)
    }

    /// `g ∘ f`; panics when not composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).unwrap_or_else(|| panic!("morphisms {g} and {f} are not composable"))
    }

    /// Morphisms `x → y`, ascending.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.objects.size + y]
    }

    /// Position of `f` within its hom-set.
    pub fn local_index(&self, f: usize) -> usize {
        self.local[f]
    }

    pub fn non_identities(&self) -> Vec<usize> {
        (0..self.morphisms.size).filter(|&f| !self.is_identity(f)).collect()
    }

    /// The hom matrix `a[y;x] = hom(x, y)`, with elements numbered by `local_index`.
    pub fn hom_mat(&self) -> Mat {
        let n = self.objects.size;
        Mat::new(n, n, |y, x| self.hom(x, y).len())
    }

    pub fn object_label(&self, x: usize) -> String {
        self.objects.label(x)
    }

    pub fn morphism_label(&self, f: usize) -> String {
        match &self.morphisms.labels {
            Some(_) => self.morphisms.label(f),
            None if self.is_identity(f) => format!("id_{}", self.object_label(self.src[f])),
            None => format!("m{f}"),
        }
    }

    pub fn with_labels(mut self, objects: Option<Vec<String>>, morphisms: Option<Vec<String>>) -> Result<FinCategory> {
        if let Some(o) = objects {
            if o.len() != self.objects.size {
                return shape("wrong number of object labels");
            }
            self.objects = FinSet::labelled(o)?;
        }
        if let Some(m) = morphisms {
            if m.len() != self.morphisms.size {
                return shape("wrong number of morphism labels");
            }
            self.morphisms = FinSet::labelled(m)?;
        }
        Ok(self)
    }

    /// Exhaustive check of typing, unit and associativity laws.
    pub fn check_axioms(&self) -> Result<()> {
        let m = self.morphisms.size;
        for x in 0..self.objects.size {
            let i = self.ids[x];
            if self.src[i] != x || self.tgt[i] != x {
                return Err(Error::Axiom(format!("identity of object {x} has the wrong type")));
            }
        }
        for g in 0..m {
            for f in 0..m {
                let h = self.comp[g * m + f];
                if self.tgt[f] != self.src[g] {
                    continue;
                }
                if h >= m || self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] {
                    return Err(Error::Axiom(format!("composite of {g} after {f} is ill-typed")));
                }
            }
        }
        for f in 0..m {
            if self.comp(self.ids[self.tgt[f]], f) != f || self.comp(f, self.ids[self.src[f]]) != f {
                return Err(Error::Axiom(format!("unit law fails at morphism {f}")));
            }
        }
        for f in 0..m {
            for &g in self.out_of(self.tgt[f]) {
                let gf = self.comp(g, f);
                for &h in self.out_of(self.tgt[g]) {
                    if self.comp(h, gf) != self.comp(self.comp(h, g), f) {
                        return Err(Error::Axiom(format!("associativity fails at ({h}, {g}, {f})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Morphisms with source `x`.
    pub fn out_of(&self, x: usize) -> &[usize] {
        &self.outs[x]
    }

    /// Morphisms with target `x`.
    pub fn into_obj(&self, x: usize) -> &[usize] {
        &self.ins[x]
    }
}
