use mt_core::catmon::*;
use mt_core::finkit::{FinSet, DEFAULT_CAP};
use mt_core::promod::*;
use mt_core::vmatrix::Mat;

fn free_on(n: usize, edges: Vec<(usize, usize)>) -> FinCategory {
    free_category(Graph::new(FinSet::new(n), edges), 4).unwrap().into_closed().unwrap().category
}

fn arrow() -> FinCategory {
    free_on(2, vec![(0, 1)])
}

fn chain3() -> FinCategory {
    free_on(3, vec![(0, 1), (1, 2)])
}

fn z2() -> FinCategory {
    FinCategory::monoid(&[vec![0, 1], vec![1, 0]]).unwrap()
}

fn discrete(n: usize) -> FinCategory {
    FinCategory::discrete(FinSet::new(n))
}

fn free_prof(x: Vec<usize>, a: &FinCategory, b: &FinCategory) -> Profunctor {
    let m = Mat::from_entries(a.num_objects(), b.num_objects(), x).unwrap();
    free_bimodule(&m, a, b).unwrap().profunctor
}

/// A small stock of profunctors `A ⇸ B` for each pair used below.
fn profunctors(a: &FinCategory, b: &FinCategory) -> Vec<Profunctor> {
    let n = a.num_objects() * b.num_objects();
    let mut out = vec![free_prof(vec![1; n], a, b)];
    let mut single = vec![0; n];
    single[n - 1] = 1;
    out.push(free_prof(single, a, b));
    if a == b {
        out.push(Profunctor::identity(a));
    }
    out
}

#[test]
fn free_on_discrete_is_the_matrix() {
    let (a, b) = (discrete(2), discrete(3));
    let x = Mat::from_entries(2, 3, vec![1, 0, 2, 3, 0, 1]).unwrap();
    let f = free_bimodule(&x, &a, &b).unwrap();
    assert_eq!(f.profunctor.mat(), &x);
}

#[test]
fn free_entry_sizes_follow_the_triple_count() {
    let a = arrow();
    for (y, x) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let mut e = vec![0; 4];
        e[y * 2 + x] = 1;
        let m = Mat::from_entries(2, 2, e).unwrap();
        let f = free_bimodule(&m, &a, &a).unwrap();
        for y2 in 0..2 {
            for x2 in 0..2 {
                let mut want = 0;
                for yy in 0..2 {
                    for xx in 0..2 {
                        want += a.hom(yy, y2).len() * m.entry(yy, xx) * a.hom(x2, xx).len();
                    }
                }
                assert_eq!(f.profunctor.mat().entry(y2, x2), want);
            }
        }
    }
    let empty = free_bimodule(&Mat::new(2, 2, |_, _| 0), &a, &a).unwrap();
    assert_eq!(empty.profunctor.num_elements(), 0);
}

#[test]
fn unit_laws() {
    let cats = [arrow(), chain3(), z2()];
    for a in &cats {
        for b in &cats {
            for q in profunctors(a, b) {
                let (_, r) = right_unitor(&q).unwrap();
                assert!(r.is_isomorphism());
                let (_, l) = left_unitor(&q).unwrap();
                assert!(l.is_isomorphism());
            }
        }
    }
}

#[test]
fn associativity_on_triples() {
    let (a, c, z) = (arrow(), chain3(), z2());
    let triples = [(&a, &a, &a, &a), (&a, &c, &a, &c), (&c, &a, &c, &a), (&z, &a, &z, &a), (&a, &z, &a, &z), (&c, &c, &c, &c)];
    let mut checked = 0;
    for (w, x, y, v) in triples {
        for p in profunctors(w, x) {
            for q in profunctors(x, y) {
                let r = &profunctors(y, v)[0];
                let m = associator(r, &q, &p).unwrap();
                assert!(m.is_isomorphism());
                checked += 1;
            }
        }
    }
    assert!(checked >= 5);
}

#[test]
fn composite_of_free_is_free() {
    let (a, c, z) = (arrow(), chain3(), z2());
    let cases: Vec<(&FinCategory, &FinCategory, &FinCategory)> = vec![(&a, &a, &a), (&a, &c, &a), (&c, &a, &z), (&z, &z, &z), (&z, &a, &c)];
    for (aa, bb, cc) in cases {
        let x = Mat::new(aa.num_objects(), bb.num_objects(), |y, x| (x + y) % 2 + 1);
        let y = Mat::new(bb.num_objects(), cc.num_objects(), |y, x| usize::from(x <= y));
        let fc = free_composite(&y, &x, aa, bb, cc).unwrap();
        assert!(fc.iso.is_isomorphism());
    }
}

#[test]
fn poset_homs_compose_to_reachability() {
    let c = chain3();
    let id = Profunctor::identity(&c);
    let comp = bimodule_compose(&id, &id).unwrap();
    // zig-zag oracle: [g, f] ~ [g', f'] iff g∘f = g'∘f', so classes are composites
    for z in 0..3 {
        for x in 0..3 {
            assert_eq!(comp.profunctor.mat().entry(z, x), usize::from(x <= z));
        }
    }
}

#[test]
fn every_profunctor_is_a_coequaliser_of_frees() {
    let a = arrow();
    for p in profunctors(&a, &a) {
        let targets = profunctors(&a, &a);
        let mut refs: Vec<&Profunctor> = targets.iter().collect();
        refs.push(&p);
        let rep = verify_resolution(&p, &refs, DEFAULT_CAP).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert!(rep.cocones > 0);
    }
}

#[test]
fn free_bimodule_adjunction_counts() {
    let a = arrow();
    let x = Mat::from_entries(2, 2, vec![0, 1, 1, 0]).unwrap();
    for r in profunctors(&a, &a) {
        let (bim, mat) = free_adjunction_counts(&x, &r, DEFAULT_CAP).unwrap();
        assert_eq!(bim as u128, mat);
    }
}

#[test]
fn tensor_matches_pointwise_product() {
    let (a, c, z) = (arrow(), chain3(), z2());
    let pairs = [(&a, &a), (&a, &z), (&z, &z), (&c, &a), (&a, &c)];
    for (x, y) in pairs {
        let p1 = &profunctors(x, x)[0];
        let p2 = profunctors(y, y).pop().unwrap();
        let t = profunctor_tensor(p1, &p2, 12).unwrap();
        let rep = verify_tensor(&t, p1, &p2).unwrap();
        assert!(rep.matches_pointwise && rep.bimorphism_equivariant, "{rep:?}");
        assert_eq!(rep.elements, p1.num_elements() * p2.num_elements());
    }
}

#[test]
fn tensor_with_unit_and_discrete() {
    let one = discrete(1);
    let u = Profunctor::identity(&one);
    let q = &profunctors(&arrow(), &arrow())[0];
    let t = profunctor_tensor(&u, q, 8).unwrap();
    assert_eq!(t.profunctor.mat(), q.mat());
    let d = discrete(2);
    let x = free_prof(vec![1, 2, 0, 1], &d, &d);
    let y = free_prof(vec![2, 1, 1, 1], &d, &d);
    let t = profunctor_tensor(&x, &y, 4).unwrap();
    assert!(verify_tensor(&t, &x, &y).unwrap().matches_pointwise);
}

#[test]
fn interchange_is_invertible() {
    let (a, z) = (arrow(), z2());
    let one = discrete(1);
    let quads: Vec<[Profunctor; 4]> = vec![
        [Profunctor::identity(&a), Profunctor::identity(&a), Profunctor::identity(&a), Profunctor::identity(&a)],
        [profunctors(&a, &a)[0].clone(), profunctors(&a, &a)[1].clone(), Profunctor::identity(&z), profunctors(&z, &z)[0].clone()],
        [profunctors(&a, &a)[1].clone(), profunctors(&a, &a)[1].clone(), profunctors(&a, &a)[0].clone(), Profunctor::identity(&a)],
        [profunctors(&z, &z)[1].clone(), profunctors(&z, &z)[0].clone(), Profunctor::identity(&one), Profunctor::identity(&one)],
        [Profunctor::identity(&a), profunctors(&a, &a)[0].clone(), profunctors(&z, &z)[0].clone(), Profunctor::identity(&z)],
    ];
    for [q1, p1, q2, p2] in &quads {
        let xi = interchange(q1, p1, q2, p2, 12).unwrap();
        assert!(xi.map.map.is_bijective());
    }
}

fn identity_morphism(p: &Profunctor) -> BimoduleMorphism {
    BimoduleMorphism::globular(p, p, (0..p.num_elements()).collect()).unwrap()
}

#[test]
fn composition_preserves_resolution_coequalisers() {
    use mt_core::finkit::coequalize;
    let a = arrow();
    for p in profunctors(&a, &a) {
        for q in profunctors(&a, &a) {
            let res = resolution(&p).unwrap();
            let idq = identity_morphism(&q);
            let q_ffp = bimodule_compose(&q, &res.ffp.profunctor).unwrap();
            let q_fp = bimodule_compose(&q, &res.fp.profunctor).unwrap();
            let q_p = bimodule_compose(&q, &p).unwrap();
            let m1 = compose_morphisms(&idq, &res.multiply, &q_ffp, &q_fp).unwrap();
            let m2 = compose_morphisms(&idq, &res.free_counit, &q_ffp, &q_fp).unwrap();
            let e = compose_morphisms(&idq, &res.counit, &q_fp, &q_p).unwrap();
            let (classes, proj) = coequalize(&m1.map, &m2.map).unwrap();
            assert_eq!(classes.size, q_p.profunctor.num_elements());
            for t in 0..q_fp.profunctor.num_elements() {
                for u in 0..q_fp.profunctor.num_elements() {
                    assert_eq!(proj.apply(t) == proj.apply(u), e.apply(t) == e.apply(u));
                }
            }
        }
    }
}
