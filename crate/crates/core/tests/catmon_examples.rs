use mt_core::catmon::*;
use mt_core::finkit::FinSet;

fn arrow() -> FinCategory {
    free_category(Graph::new(FinSet::new(2), vec![(0, 1)]), 4).unwrap().into_closed().unwrap().category
}

#[test]
fn free_category_of_one_edge() {
    let c = arrow();
    assert_eq!(c.num_morphisms(), 3);
    assert_eq!(c.hom(0, 1).len(), 1);
}

#[test]
fn free_category_on_no_edges_is_discrete() {
    let c = free_category(Graph::new(FinSet::new(3), vec![]), 2).unwrap().into_closed().unwrap().category;
    assert_eq!(c.num_morphisms(), 3);
}

#[test]
fn loop_is_truncated_at_budget() {
    let s = free_category(Graph::new(FinSet::new(1), vec![(0, 0)]), 3).unwrap();
    assert!(s.is_truncated());
    let t = match s {
        Saturation::Truncated(t) => t,
        _ => unreachable!(),
    };
    let words: Vec<String> = t.words.iter().map(|p| p.edges.len().to_string()).collect();
    assert_eq!(words, ["0", "1", "2", "3"]);
}

#[test]
fn funny_square() {
    let a = arrow();
    let f = funny_tensor(&a, &a, 8).unwrap();
    let c = f.category().unwrap();
    assert_eq!(c.num_morphisms(), 10);
    assert_eq!(c.hom(0, 3).len(), 2);
}

#[test]
fn commuting_square() {
    let a = arrow();
    let t = commuting_tensor(&a, &a, 8).unwrap();
    assert_eq!(t.category.num_morphisms(), 9);
    assert!(t.to_product.is_isomorphism());
}

#[test]
fn discrete_funny_tensor() {
    let a = FinCategory::discrete(FinSet::new(2));
    let b = FinCategory::discrete(FinSet::new(3));
    let c = funny_tensor(&a, &b, 4).unwrap();
    assert_eq!(c.category().unwrap().num_morphisms(), 6);
}

#[test]
fn monoid_tensor_is_product_monoid() {
    let z2 = FinCategory::monoid(&[vec![0, 1], vec![1, 0]]).unwrap();
    let z3 = FinCategory::monoid(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
    let t = commuting_tensor(&z2, &z3, 12).unwrap();
    assert_eq!(t.category.num_morphisms(), 6);
    // Z/2 □ Z/3 is infinite, so the hexagon route must have been taken
    assert_eq!(t.route, tensor::TensorRoute::PresentationWithHexagons);
}

use mt_core::catmon::sesqui::is_commuting_direct;
use mt_core::finkit::DEFAULT_CAP;
use mt_core::perm::Perm;

fn z2() -> FinCategory {
    FinCategory::monoid(&[vec![0, 1], vec![1, 0]]).unwrap()
}

fn s3() -> (FinCategory, Vec<Perm>) {
    let all = Perm::all(3);
    let mul: Vec<Vec<usize>> = all
        .iter()
        .map(|g| all.iter().map(|f| all.iter().position(|h| *h == g.compose(f)).unwrap()).collect())
        .collect();
    (FinCategory::monoid(&mul).unwrap(), all)
}

fn terminal() -> FinCategory {
    FinCategory::discrete(FinSet::new(1))
}

#[test]
fn functor_category_of_arrows() {
    let a = arrow();
    let h = funny_hom(&a, &a, DEFAULT_CAP).unwrap();
    assert_eq!(h.functors.len(), 3);
    assert_eq!(h.category.num_morphisms(), 6);
    let n = commuting_hom(&a, &a, DEFAULT_CAP).unwrap();
    assert_eq!(n.category.num_morphisms(), 6);
}

#[test]
fn hom_out_of_terminal_is_target() {
    let a = arrow();
    let h = funny_hom(&terminal(), &a, DEFAULT_CAP).unwrap();
    assert_eq!(h.category.num_objects(), 2);
    assert_eq!(h.category.num_morphisms(), 3);
    let t = commuting_hom(&a, &terminal(), DEFAULT_CAP).unwrap();
    assert_eq!(t.category.num_morphisms(), 1);
}

#[test]
fn parallel_arrows_lose_unnatural_families() {
    let par = free_category(Graph::new(FinSet::new(2), vec![(0, 1), (0, 1)]), 2).unwrap().into_closed().unwrap().category;
    let a = arrow();
    let f = funny_hom(&par, &a, DEFAULT_CAP).unwrap();
    let n = commuting_hom(&par, &a, DEFAULT_CAP).unwrap();
    // a poset target makes every family natural
    assert_eq!(n.category.num_morphisms(), f.category.num_morphisms());
    let free = free_category(Graph::new(FinSet::new(2), vec![(0, 1), (0, 1)]), 2).unwrap().into_closed().unwrap().category;
    let f2 = funny_hom(&par, &free, DEFAULT_CAP).unwrap();
    let n2 = commuting_hom(&par, &free, DEFAULT_CAP).unwrap();
    assert!(n2.category.num_morphisms() < f2.category.num_morphisms());
}

#[test]
fn arrow_closedness_counts() {
    let a = arrow();
    let c = closedness(&a, &a, &a, 8, DEFAULT_CAP).unwrap();
    assert_eq!(c.funny_tensor_side, 6);
    assert_eq!(c.funny_hom_side, 6);
    assert!(c.holds(), "{c:?}");
}

#[test]
fn generators_of_s3_do_not_commute() {
    let (c, all) = s3();
    let a = z2();
    let p12 = all.iter().position(|p| *p == Perm::transposition(3, 0, 1)).unwrap();
    let p13 = all.iter().position(|p| *p == Perm::transposition(3, 0, 2)).unwrap();
    let s = Sesquifunctor { on_obj: vec![0], phi1: vec![vec![0, p12]], phi2: vec![vec![0, p13]] };
    assert!(sesqui_check(&s, &a, &a, &c).unwrap());
    let fail = is_commuting(&s, &a, &a, &c).unwrap().unwrap_err();
    assert_eq!((fail.f, fail.g), (1, 1));
    let (x, y) = (&all[fail.via_sigma], &all[fail.via_tau]);
    assert_ne!(x, y);
    let mut pair = [all[p12].compose(&all[p13]), all[p13].compose(&all[p12])];
    pair.sort_by_key(|p| p.rank());
    let mut got = [x.clone(), y.clone()];
    got.sort_by_key(|p| p.rank());
    assert_eq!(got, pair);
    assert!(!is_commuting_direct(&s, &a, &a, &c));
}

#[test]
fn klein_generators_commute() {
    let a = z2();
    let v = FinCategory::monoid(&[vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]).unwrap();
    let s = Sesquifunctor { on_obj: vec![0], phi1: vec![vec![0, 1]], phi2: vec![vec![0, 2]] };
    assert!(is_commuting(&s, &a, &a, &v).unwrap().is_ok());
}

#[test]
fn broken_component_fails_check() {
    let a = z2();
    let s = Sesquifunctor { on_obj: vec![0], phi1: vec![vec![1, 1]], phi2: vec![vec![0, 1]] };
    assert!(!sesqui_check(&s, &a, &a, &a).unwrap());
}

#[test]
fn classification_small_cases() {
    let a = arrow();
    let one = classify(&a, &a, &terminal(), 8, DEFAULT_CAP).unwrap();
    assert_eq!((one.functors, one.commuting_sesquifunctors), (1, 1));
    let d2 = FinCategory::discrete(FinSet::new(2));
    let r = classify(&d2, &d2, &a, 4, DEFAULT_CAP).unwrap();
    assert_eq!((r.functors, r.commuting_sesquifunctors), (16, 16));
    let sq = classify(&a, &a, &a, 8, DEFAULT_CAP).unwrap();
    assert!(sq.is_bijection());
}

#[test]
fn multimorphism_composition_and_action() {
    let a = arrow();
    let t = commuting_tensor(&a, &a, 8).unwrap();
    let prod = &t.product;
    // the projection-style binary functor A, A → A × A restricted from the identity
    let h = FinFunctor::identity(prod);
    let s = Sesquifunctor::from_product(&h, &a, &a);
    let m = Multimorphism::from_sesquifunctor(&s);
    m.check(&[&a, &a], prod).unwrap();
    let id = Multimorphism::identity(&a);
    assert_eq!(m.compose_at(0, &id, &a).unwrap(), m);
    assert_eq!(m.compose_at(1, &id, &a).unwrap(), m);
    let swap = Perm::transposition(2, 0, 1);
    assert_eq!(m.act(&swap).act(&swap), m);
    assert!(m.is_commuting(&[&a, &a], prod).unwrap());

    // substitute a commuting binary map into a commuting binary map
    let c = closure_of_min(&a);
    let g = Multimorphism::from_sesquifunctor(&c);
    let composite = g.compose_at(0, &g, &a).unwrap();
    composite.check(&[&a, &a, &a], &a).unwrap();
    assert!(composite.is_commuting(&[&a, &a, &a], &a).unwrap());
}

/// Meet on the arrow `0 → 1`, a commuting sesquifunctor `2, 2 → 2`.
fn closure_of_min(a: &FinCategory) -> Sesquifunctor {
    let all = enumerate_sesquifunctors(a, a, a, DEFAULT_CAP).unwrap();
    all.into_iter()
        .find(|s| s.on_obj == vec![0, 0, 0, 1] && is_commuting_direct(s, a, a, a))
        .unwrap()
}
