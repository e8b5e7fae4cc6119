use mt_core::opdkit::*;
use mt_core::perm::Perm;

const CAP: u128 = 1 << 24;

fn point(arity: usize, trunc: usize) -> SymSeq {
    SymSeq::from_points(1, 1, vec![Profile::new(vec![0; arity], 0)], trunc).unwrap()
}

fn nabla(trunc: usize) -> SymMulticat {
    SymMulticat::discrete(1, trunc)
}

fn commutative(trunc: usize) -> SymMulticat {
    let sig = Signature::single(&[("m", 2)]);
    let rel = Relation {
        lhs: Term::generator(0, 2),
        rhs: Term::generator(0, 2).act(&Perm::transposition(2, 0, 1)),
        profile: Profile::new(vec![0, 0], 0),
    };
    let t = materialise(Presentation::new(sig, vec![rel]).unwrap(), Bounds::new(trunc, trunc), CAP).unwrap();
    assert!(t.table.certified);
    t.table
}

/// The group of order two as a one-colour multicategory of unary operations.
fn involution(trunc: usize) -> SymMulticat {
    let ops = SymSeq::free_single(&[0, 2], trunc).unwrap();
    SymMulticat::new(ops, vec![0], vec!["id".into(), "s".into()], true, |f, _, g| Some(f ^ g)).unwrap()
}

fn is_iso(from: &MultiProfunctor, to: &MultiProfunctor, map: &[usize]) -> bool {
    let mut hit = vec![false; to.len()];
    for &v in map {
        hit[v] = true;
    }
    map.len() == to.len() && hit.iter().all(|&h| h) && check_module_map(from, to, map).is_ok()
}

fn id_labels(n: usize) -> Vec<usize> {
    (0..n).collect()
}

#[test]
fn identity_bimodules_are_complete() {
    for m in [nabla(3), commutative(3), involution(2)] {
        let id = MultiProfunctor::identity(&m);
        assert!(id.complete);
        assert_eq!(id.len(), m.len());
    }
}

#[test]
fn free_bimodule_counts() {
    // one fixed generator of arity 1 over (Com, ∇1): a Com operation with
    // the generator on every input, so one element per operation
    let com = commutative(3);
    let f = free_multibimodule(&point(1, 3), &com, &nabla(3), CAP).unwrap();
    assert_eq!(f.module.seq.counts(), com.ops.counts());
    assert!(f.module.complete);
    // a free orbit at arity 2 over ∇1 is unchanged
    let x = SymSeq::free_single(&[0, 0, 1], 3).unwrap();
    let g = free_multibimodule(&x, &nabla(3), &nabla(3), CAP).unwrap();
    assert_eq!(g.module.seq.counts(), x.counts());
    // the counit of a free module on itself splits its unit
    let counit = g.counit(&g.module).unwrap();
    for e in 0..x.len() {
        let w = g.unit(e);
        assert_eq!(counit[w], w);
    }
}

#[test]
fn composite_with_identities() {
    let (com, n) = (commutative(3), nabla(3));
    let q = free_multibimodule(&point(1, 3), &com, &n, CAP).unwrap().module;
    let right = multiprof_compose(&q, &MultiProfunctor::identity(&com), CAP).unwrap();
    let map: Vec<usize> = (0..q.len())
        .map(|e| {
            let p = &q.seq.profiles[e];
            right.assemble(&Tree2 { root: com.units[p.output], tops: vec![e], labels: id_labels(p.arity()) }).unwrap()
        })
        .collect();
    assert!(is_iso(&q, &right.profunctor, &map));
    let left = multiprof_compose(&MultiProfunctor::identity(&n), &q, CAP).unwrap();
    let map: Vec<usize> = (0..q.len())
        .map(|e| {
            let p = &q.seq.profiles[e];
            let tops = p.inputs.iter().map(|&b| n.units[b]).collect();
            left.assemble(&Tree2 { root: e, tops, labels: id_labels(p.arity()) }).unwrap()
        })
        .collect();
    assert!(is_iso(&q, &left.profunctor, &map));
}

#[test]
fn composite_with_empty_is_empty() {
    let com = commutative(2);
    let q = MultiProfunctor::identity(&com);
    let e = MultiProfunctor::empty(&com, &com, 2);
    assert!(multiprof_compose(&q, &e, CAP).unwrap().profunctor.is_empty());
    assert!(multiprof_compose(&e, &q, CAP).unwrap().profunctor.is_empty());
}

/// `F(y) • F(x) ≅ F(y ∘ N ∘ x)`, with the comparison built from units.
fn free_composite_case(x: &SymSeq, y: &SymSeq, m: &SymMulticat, n: &SymMulticat, p: &SymMulticat) {
    let trunc = x.trunc;
    let fx = free_multibimodule(x, m, n, CAP).unwrap();
    let fy = free_multibimodule(y, n, p, CAP).unwrap();
    let comp = multiprof_compose(&fy.module, &fx.module, CAP).unwrap();
    let nx = symseq_compose(&n.ops, x, trunc, CAP).unwrap();
    let ynx = symseq_compose(y, nx.seq(), trunc, CAP).unwrap();
    let free = free_multibimodule(ynx.seq(), m, p, CAP).unwrap();
    assert_eq!(free.module.seq.counts(), comp.profunctor.seq.counts());
    let gen = |g: usize| -> Option<usize> {
        let (z, ys, sigma) = ynx.rep(g);
        let (e, psis, tau) = nx.rep(z);
        let w = fx.assemble(&Tree3 {
            root: m.units[x.profiles[e].output],
            mids: vec![e],
            tops: psis.to_vec(),
            labels: tau.inverse().images().to_vec(),
        })?;
        let tops = ys.iter().map(|&v| fy.unit(v)).collect();
        comp.assemble(&Tree2 { root: w, tops, labels: sigma.inverse().images().to_vec() })
    };
    let map = free.extend(&comp.profunctor, &gen).unwrap();
    assert!(is_iso(&free.module, &comp.profunctor, &map));
}

#[test]
fn composite_of_free_bimodules_is_free() {
    free_composite_case(&point(1, 2), &point(1, 2), &nabla(2), &commutative(2), &nabla(2));
    free_composite_case(&point(2, 2), &point(1, 2), &involution(2), &nabla(2), &involution(2));
    free_composite_case(&SymSeq::free_single(&[0, 1, 1], 3).unwrap(), &point(2, 3), &nabla(3), &involution(3), &nabla(3));
}

#[test]
fn tensor_with_the_unit_bimodule() {
    let x = SymSeq::free_single(&[0, 1, 1], 3).unwrap();
    let p = free_multibimodule(&x, &involution(3), &nabla(3), CAP).unwrap().module;
    let unit = MultiProfunctor::identity(&nabla(3));
    let t = multiprof_tensor(&p, &unit, 3, CAP).unwrap();
    assert_eq!(t.profunctor.seq.counts(), p.seq.counts());
    let map: Vec<usize> = (0..p.len()).map(|e| t.bimorphism(e, 0).unwrap()).collect();
    let mut sorted = map.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), t.profunctor.len());
}

#[test]
fn tensor_with_empty_factor_is_empty() {
    let n = nabla(2);
    let p = MultiProfunctor::identity(&commutative(2));
    let e = MultiProfunctor::empty(&n, &n, 2);
    assert!(multiprof_tensor(&p, &e, 3, CAP).unwrap().profunctor.is_empty());
}

#[test]
fn free_tensor_comparison_on_small_cases() {
    let x = SymSeq::free_single(&[0, 0, 1], 4).unwrap();
    let c = free_tensor_comparison(&x, &nabla(4), &nabla(4), &x, &nabla(4), &nabla(4), 3, CAP).unwrap();
    assert!(c.holds(), "{:?}", (c.coequalises, c.lower_split, c.upper_split, c.square, c.bijective, c.module_map, c.tensor.profunctor.seq.counts(), c.target.module.seq.counts()));
    let c = free_tensor_comparison(&point(1, 2), &involution(2), &nabla(2), &point(2, 2), &nabla(2), &nabla(2), 3, CAP).unwrap();
    assert!(c.holds(), "{:?}", (c.coequalises, c.lower_split, c.upper_split, c.square, c.bijective, c.module_map, c.tensor.profunctor.seq.counts(), c.target.module.seq.counts()));
    let c = free_tensor_comparison(&point(1, 2), &commutative(2), &nabla(2), &point(1, 2), &commutative(2), &nabla(2), 3, CAP).unwrap();
    assert!(c.holds());
}

#[test]
fn omega_against_the_unit_sequence_and_empty_generators() {
    // the unit sequence of ∇1 generates the unit bimodule: ω is a bijection
    let x = SymSeq::free_single(&[0, 1, 1], 3).unwrap();
    let c = free_tensor_comparison(&x, &nabla(3), &nabla(3), &SymSeq::unit(1, 3), &nabla(3), &nabla(3), 3, CAP).unwrap();
    assert!(c.holds());
    assert_eq!(c.target.module.seq.counts(), free_multibimodule(&x, &nabla(3), &nabla(3), CAP).unwrap().module.seq.counts());
    let e = SymSeq::empty(1, 1, 3);
    let c = free_tensor_comparison(&e, &nabla(3), &nabla(3), &e, &nabla(3), &nabla(3), 3, CAP).unwrap();
    assert!(c.omega_bar.is_empty() && c.comparison.is_empty());
}

#[test]
fn divided_powers_hom() {
    let z = SymSeq::free_single(&[0, 1, 2, 1], 3).unwrap();
    let mut y = point(1, 3);
    y.bounded = true;
    let h = symseq_hom(&y, &z, 3, CAP).unwrap();
    assert_eq!(h.seq.counts(), z.counts());
    // |Hom(x ⊠ y, z)| = |Hom(x, ⟦y, z⟧)|
    let x = SymSeq::free_single(&[0, 1, 1], 3).unwrap();
    let prod = arithmetic_product(&x, &y, 3, CAP).unwrap();
    let left = enumerate_maps(prod.seq(), &z, &[0, 1, 2, 3], CAP).unwrap();
    let hom = symseq_hom(&y, &z, 3, CAP).unwrap();
    let right = enumerate_maps(&x, &hom.seq, &[0, 1, 2, 3], CAP).unwrap();
    assert_eq!(left.len(), right.len());
    let mut images: Vec<Vec<usize>> = left.iter().map(|f| transpose_map(f, &x, &y, &prod, &hom).unwrap()).collect();
    images.sort();
    images.dedup();
    assert_eq!(images.len(), right.len());
}

#[test]
fn s_construction_counts() {
    assert_eq!(s_construction_hom(&[0, 1], &[1, 0]).len(), 1);
    assert_eq!(s_construction_hom(&[0, 0, 0], &[0, 0, 0]).len(), 6);
    assert!(s_construction_hom(&[0, 0], &[0, 1]).is_empty());
}

#[test]
fn interchange_of_identities_is_invertible() {
    let n = nabla(2);
    let id = MultiProfunctor::identity(&n);
    let r = normality_instance("identities", &id, &id, 3, CAP).unwrap();
    assert!(matches!(r.verdict, Verdict::Invertible { .. }));
    assert!(r.module_map);
}

#[test]
fn normality_probe_reports_every_instance() {
    let n = nabla(2);
    let com = commutative(2);
    let magma = free_multicat(Signature::single(&[("m", 2)]), Bounds::new(2, 2), CAP).unwrap().table;
    let cases = vec![
        ("commutative root", MultiProfunctor::identity(&com), free_multibimodule(&point(1, 2), &com, &n, CAP).unwrap().module),
        ("involution", free_multibimodule(&point(1, 2), &involution(2), &n, CAP).unwrap().module, MultiProfunctor::identity(&com)),
        ("magma", MultiProfunctor::identity(&magma), free_multibimodule(&point(1, 2), &com, &com, CAP).unwrap().module),
    ];
    for (name, p, q) in cases {
        let r = normality_instance(name, &p, &q, 5, CAP).unwrap();
        assert!(r.module_map);
        assert!(!r.entries.is_empty());
        // the verdict agrees with the entry reports
        let all = r.entries.iter().all(|e| e.injective && e.surjective);
        assert_eq!(all, matches!(r.verdict, Verdict::Invertible { .. }));
    }
}

#[test]
fn tensor_is_universal_for_commuting_bimorphisms() {
    let n = nabla(2);
    let p1 = free_multibimodule(&point(1, 2), &involution(2), &n, CAP).unwrap().module;
    let p2 = free_multibimodule(&point(2, 2), &n, &n, CAP).unwrap().module;
    let t = multiprof_tensor(&p1, &p2, 3, CAP).unwrap();
    let r = verify_tensor_universal(&t, &t.profunctor, CAP).unwrap();
    assert!(r.holds(), "{r:?}");
    assert!(r.commuting > 1);
    // an empty target receives nothing from a nonempty tensor
    let e = MultiProfunctor::empty(&t.profunctor.src, &t.profunctor.tgt, 2);
    let r = verify_tensor_universal(&t, &e, CAP).unwrap();
    assert_eq!((r.commuting, r.module_maps), (0, 0));
}
