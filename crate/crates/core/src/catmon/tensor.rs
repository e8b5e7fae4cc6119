use super::presentation::{saturate, Graph, Path, Presentation, Saturation, Truncation};
use super::{FinCategory, FinFunctor};
use crate::error::{shape, Error, Result};
use crate::finkit::{FinFunction, FinSet, UnionFind};

/// Default word-length budget for saturating tensor presentations.
pub const DEFAULT_BUDGET: usize = 12;

fn pair_objects(a: &FinCategory, b: &FinCategory) -> FinSet {
    let mut labels = Vec::new();
    for x in 0..a.num_objects() {
        for y in 0..b.num_objects() {
            labels.push(format!("({},{})", a.object_label(x), b.object_label(y)));
        }
    }
    FinSet::labelled(labels).unwrap_or_else(|_| FinSet::new(a.num_objects() * b.num_objects()))
}

/// The cartesian product category, morphism `(f, g)` indexed `f·|mor B| + g`.
pub fn product_category(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let (nb, mb) = (b.num_objects(), b.num_morphisms());
    let m = a.num_morphisms() * mb;
    let mut labels = Vec::with_capacity(m);
    let (mut src, mut tgt) = (Vec::with_capacity(m), Vec::with_capacity(m));
    for f in 0..a.num_morphisms() {
        for g in 0..mb {
            labels.push(format!("({},{})", a.morphism_label(f), b.morphism_label(g)));
            src.push(a.src(f) * nb + b.src(g));
            tgt.push(a.tgt(f) * nb + b.tgt(g));
        }
    }
    let ids = (0..a.num_objects() * nb).map(|o| a.id(o / nb) * mb + b.id(o % nb)).collect();
    let mors = FinSet::labelled(labels).unwrap_or_else(|_| FinSet::new(m));
    FinCategory::new(pair_objects(a, b), mors, src, tgt, ids, |h, k| {
        a.comp(h / mb, k / mb) * mb + b.comp(h % mb, k % mb)
    })
    .expect("product of categories is a category")
}

/// Generators of the funny tensor: `(f, y)` for non-identity `f` of A and
/// object `y` of B, then `(x, g)` for object `x` of A and non-identity `g` of B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorGenerator {
    Left { f: usize, y: usize },
    Right { x: usize, g: usize },
}

#[derive(Debug, Clone)]
pub struct TensorPresentation {
    pub presentation: Presentation,
    pub generators: Vec<TensorGenerator>,
    left_edge: Vec<Vec<usize>>,
    right_edge: Vec<Vec<usize>>,
}

impl TensorPresentation {
    /// Edge for `(f, y)`, or `None` if `f` is an identity.
    pub fn left(&self, f: usize, y: usize) -> Option<usize> {
        let e = self.left_edge[f][y];
        (e != usize::MAX).then_some(e)
    }

    pub fn right(&self, x: usize, g: usize) -> Option<usize> {
        let e = self.right_edge[x][g];
        (e != usize::MAX).then_some(e)
    }
}

/// Presentation of `A □ B`: the two families of whiskered generators with
/// each factor's composition law as relations.
pub fn funny_presentation(a: &FinCategory, b: &FinCategory, budget: usize) -> Result<TensorPresentation> {
    let nb = b.num_objects();
    let o = |x: usize, y: usize| x * nb + y;
    let mut edges = Vec::new();
    let mut generators = Vec::new();
    let mut left_edge = vec![vec![usize::MAX; nb]; a.num_morphisms()];
    let mut right_edge = vec![vec![usize::MAX; b.num_morphisms()]; a.num_objects()];
    for y in 0..nb {
        for f in a.non_identities() {
            left_edge[f][y] = edges.len();
            edges.push((o(a.src(f), y), o(a.tgt(f), y), format!("({},{})", a.morphism_label(f), b.object_label(y))));
            generators.push(TensorGenerator::Left { f, y });
        }
    }
    for x in 0..a.num_objects() {
        for g in b.non_identities() {
            right_edge[x][g] = edges.len();
            edges.push((o(x, b.src(g)), o(x, b.tgt(g)), format!("({},{})", a.object_label(x), b.morphism_label(g))));
            generators.push(TensorGenerator::Right { x, g });
        }
    }
    let graph = Graph::labelled(pair_objects(a, b), edges);
    let mut relations = Vec::new();
    for y in 0..nb {
        for f in a.non_identities() {
            for &f2 in a.out_of(a.tgt(f)) {
                if a.is_identity(f2) {
                    continue;
                }
                let h = a.comp(f2, f);
                let lhs = Path { start: o(a.src(f), y), edges: vec![left_edge[f][y], left_edge[f2][y]] };
                let rhs = Path {
                    start: o(a.src(f), y),
                    edges: if a.is_identity(h) { vec![] } else { vec![left_edge[h][y]] },
                };
                relations.push((lhs, rhs));
            }
        }
    }
    for x in 0..a.num_objects() {
        for g in b.non_identities() {
            for &g2 in b.out_of(b.tgt(g)) {
                if b.is_identity(g2) {
                    continue;
                }
                let h = b.comp(g2, g);
                let lhs = Path { start: o(x, b.src(g)), edges: vec![right_edge[x][g], right_edge[x][g2]] };
                let rhs = Path {
                    start: o(x, b.src(g)),
                    edges: if b.is_identity(h) { vec![] } else { vec![right_edge[x][h]] },
                };
                relations.push((lhs, rhs));
            }
        }
    }
    let presentation = Presentation::new(graph, relations, budget.max(2))?;
    Ok(TensorPresentation { presentation, generators, left_edge, right_edge })
}

/// The transposed hexagon relations `(x', g)∘(f, y) = (f, y')∘(x, g)`.
pub fn hexagon_relations(tp: &TensorPresentation, a: &FinCategory, b: &FinCategory) -> Vec<(Path, Path)> {
    let nb = b.num_objects();
    let mut rels = Vec::new();
    for f in a.non_identities() {
        for g in b.non_identities() {
            let start = a.src(f) * nb + b.src(g);
            let lhs = Path { start, edges: vec![tp.left(f, b.src(g)).unwrap(), tp.right(a.tgt(f), g).unwrap()] };
            let rhs = Path { start, edges: vec![tp.right(a.src(f), g).unwrap(), tp.left(f, b.tgt(g)).unwrap()] };
            rels.push((lhs, rhs));
        }
    }
    rels
}

/// The two families of whiskering functors into a category presented by
/// (a quotient of) the funny presentation.
fn whiskering(
    tp: &TensorPresentation,
    a: &FinCategory,
    b: &FinCategory,
    t: &FinCategory,
    edge_image: &[usize],
) -> Result<(Vec<FinFunctor>, Vec<FinFunctor>)> {
    let nb = b.num_objects();
    let mut iota1 = Vec::new();
    for y in 0..nb {
        let obj = (0..a.num_objects()).map(|x| x * nb + y).collect();
        let mor = (0..a.num_morphisms())
            .map(|f| tp.left(f, y).map_or_else(|| t.id(a.src(f) * nb + y), |e| edge_image[e]))
            .collect();
        iota1.push(FinFunctor::new(obj, mor, a, t)?);
    }
    let mut iota2 = Vec::new();
    for x in 0..a.num_objects() {
        let obj = (0..nb).map(|y| x * nb + y).collect();
        let mor = (0..b.num_morphisms())
            .map(|g| tp.right(x, g).map_or_else(|| t.id(x * nb + b.src(g)), |e| edge_image[e]))
            .collect();
        iota2.push(FinFunctor::new(obj, mor, b, t)?);
    }
    Ok((iota1, iota2))
}

#[derive(Debug, Clone)]
pub struct FunnyTensor {
    pub presentation: TensorPresentation,
    pub result: FunnyResult,
}

#[derive(Debug, Clone)]
pub enum FunnyResult {
    /// Saturation closed: the category with the universal sesquifunctor,
    /// `iota1[y] : A → A□B` and `iota2[x] : B → A□B`.
    Closed { category: FinCategory, words: Vec<Path>, edge_image: Vec<usize>, iota1: Vec<FinFunctor>, iota2: Vec<FinFunctor> },
    Truncated(Truncation),
}

impl FunnyTensor {
    pub fn category(&self) -> Option<&FinCategory> {
        match &self.result {
            FunnyResult::Closed { category, .. } => Some(category),
            FunnyResult::Truncated(_) => None,
        }
    }

    pub fn truncation(&self) -> Option<&Truncation> {
        match &self.result {
            FunnyResult::Truncated(t) => Some(t),
            FunnyResult::Closed { .. } => None,
        }
    }
}

pub fn funny_tensor(a: &FinCategory, b: &FinCategory, budget: usize) -> Result<FunnyTensor> {
    let tp = funny_presentation(a, b, budget)?;
    let result = match saturate(&tp.presentation)? {
        Saturation::Closed(pc) => {
            let (iota1, iota2) = whiskering(&tp, a, b, &pc.category, &pc.edge_image)?;
            FunnyResult::Closed { category: pc.category, words: pc.words, edge_image: pc.edge_image, iota1, iota2 }
        }
        Saturation::Truncated(t) => FunnyResult::Truncated(t),
    };
    Ok(FunnyTensor { presentation: tp, result })
}

/// Quotient of a category by the congruence generated by parallel pairs.
/// Classes are numbered by least representative.
pub fn quotient_category(c: &FinCategory, pairs: &[(usize, usize)]) -> Result<(FinCategory, FinFunctor)> {
    let m = c.num_morphisms();
    let mut uf = UnionFind::new(m);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for &(x, y) in pairs {
        if c.src(x) != c.src(y) || c.tgt(x) != c.tgt(y) {
            return shape("congruence generated by a non-parallel pair");
        }
        queue.push((x, y));
    }
    while let Some((x, y)) = queue.pop() {
        if !uf.union(x, y) {
            continue;
        }
        for &h in c.out_of(c.tgt(x)) {
            queue.push((c.comp(h, x), c.comp(h, y)));
        }
        for &k in c.into_obj(c.src(x)) {
            queue.push((c.comp(x, k), c.comp(y, k)));
        }
    }
    let part = uf.into_partition();
    let (q, proj) = part.quotient();
    let reps = part.representatives();
    let src = reps.iter().map(|&r| c.src(r)).collect();
    let tgt = reps.iter().map(|&r| c.tgt(r)).collect();
    let ids = (0..c.num_objects()).map(|x| proj.apply(c.id(x))).collect();
    let labels: Vec<String> = reps.iter().map(|&r| c.morphism_label(r)).collect();
    let mors = FinSet::labelled(labels).unwrap_or_else(|_| FinSet::new(q.size));
    let quotient = FinCategory::new(c.objects.clone(), mors, src, tgt, ids, |g, f| proj.apply(c.comp(reps[g], reps[f])))?;
    let functor = FinFunctor { on_obj: FinFunction::identity(c.num_objects()), on_mor: proj };
    functor.check(c, &quotient)?;
    Ok((quotient, functor))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorRoute {
    /// Quotient of the closed funny tensor by the hexagon congruence.
    QuotientOfFunny,
    /// Funny presentation plus hexagon relations, saturated directly
    /// because the funny tensor itself did not close.
    PresentationWithHexagons,
}

#[derive(Debug, Clone)]
pub struct CommutingTensor {
    pub category: FinCategory,
    pub route: TensorRoute,
    /// Present when the funny tensor closed: the quotient functor `A□B → A⊗B`.
    pub quotient: Option<FinFunctor>,
    pub iota1: Vec<FinFunctor>,
    pub iota2: Vec<FinFunctor>,
    /// Witness `A⊗B ≅ A×B` and its inverse.
    pub to_product: FinFunctor,
    pub from_product: FinFunctor,
    pub product: FinCategory,
    /// Present when the funny tensor did not close.
    pub funny_truncation: Option<Truncation>,
}

pub fn commuting_tensor(a: &FinCategory, b: &FinCategory, budget: usize) -> Result<CommutingTensor> {
    let funny = funny_tensor(a, b, budget)?;
    let nb = b.num_objects();
    let (category, route, quotient, iota1, iota2, funny_truncation) = match &funny.result {
        FunnyResult::Closed { category: t, iota1: j1, iota2: j2, .. } => {
            let mut pairs = Vec::new();
            for f in a.non_identities() {
                for g in b.non_identities() {
                    let lhs = t.comp(j2[a.tgt(f)].mor(g), j1[b.src(g)].mor(f));
                    let rhs = t.comp(j1[b.tgt(g)].mor(f), j2[a.src(f)].mor(g));
                    pairs.push((lhs, rhs));
                }
            }
            let (q, proj) = quotient_category(t, &pairs)?;
            let iota1 = j1.iter().map(|j| proj.after(j)).collect::<Result<Vec<_>>>()?;
            let iota2 = j2.iter().map(|j| proj.after(j)).collect::<Result<Vec<_>>>()?;
            (q, TensorRoute::QuotientOfFunny, Some(proj), iota1, iota2, None)
        }
        FunnyResult::Truncated(tr) => {
            let tp = &funny.presentation;
            let mut pres = tp.presentation.clone();
            pres.relations.extend(hexagon_relations(tp, a, b));
            match saturate(&pres)? {
                Saturation::Closed(pc) => {
                    let (iota1, iota2) = whiskering(tp, a, b, &pc.category, &pc.edge_image)?;
                    (pc.category, TensorRoute::PresentationWithHexagons, None, iota1, iota2, Some(tr.clone()))
                }
                Saturation::Truncated(t) => {
                    return Err(Error::Truncated(format!(
                        "commuting tensor did not close within word length {}: {}",
                        t.budget, t.reason
                    )))
                }
            }
        }
    };

    // induced comparison into the product: (f, y) ↦ (f, id_y), (x, g) ↦ (id_x, g)
    let product = product_category(a, b);
    let mb = b.num_morphisms();
    let mut to_obj = Vec::with_capacity(category.num_objects());
    for o in 0..category.num_objects() {
        to_obj.push(o);
    }
    let mut to_mor = vec![usize::MAX; category.num_morphisms()];
    for y in 0..nb {
        for f in 0..a.num_morphisms() {
            to_mor[iota1[y].mor(f)] = f * mb + b.id(y);
        }
    }
    for x in 0..a.num_objects() {
        for g in 0..b.num_morphisms() {
            to_mor[iota2[x].mor(g)] = a.id(x) * mb + g;
        }
    }
    // every other morphism is a composite of generator images
    let generators: Vec<usize> = (0..category.num_morphisms()).filter(|&h| to_mor[h] != usize::MAX).collect();
    let mut frontier = generators.clone();
    while let Some(h) = frontier.pop() {
        for &k in &generators {
            if category.src(k) == category.tgt(h) {
                let kh = category.comp(k, h);
                let val = product.comp(to_mor[k], to_mor[h]);
                if to_mor[kh] == usize::MAX {
                    to_mor[kh] = val;
                    frontier.push(kh);
                } else if to_mor[kh] != val {
                    return Err(Error::Axiom("comparison into the product is not well defined".into()));
                }
            }
        }
    }
    if to_mor.contains(&usize::MAX) {
        return Err(Error::Axiom("tensor is not generated by the whiskered morphisms".into()));
    }
    let to_product = FinFunctor::new(to_obj, to_mor, &category, &product)?;
    let from_product = to_product
        .inverse()
        .ok_or_else(|| Error::Axiom("comparison with the product is not invertible".into()))?;
    from_product.check(&product, &category)?;
    Ok(CommutingTensor { category, route, quotient, iota1, iota2, to_product, from_product, product, funny_truncation })
}
