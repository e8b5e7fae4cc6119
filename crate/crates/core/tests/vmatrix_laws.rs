use mt_core::finkit::{FinFunction, DEFAULT_CAP};
use mt_core::vmatrix::*;
use proptest::prelude::*;

fn small_mat(src: usize, tgt: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(0usize..3, src * tgt).prop_map(move |e| Mat::from_entries(src, tgt, e).unwrap())
}

fn chain() -> impl Strategy<Value = (Mat, Mat, Mat, Mat)> {
    (1usize..3, 1usize..3, 1usize..3, 1usize..3, 1usize..3).prop_flat_map(|(a, b, c, d, e)| {
        (small_mat(a, b), small_mat(b, c), small_mat(c, d), small_mat(d, e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pentagon_closes((x, y, z, w) in chain()) {
        let zy = mat_compose(&z, &y).unwrap();
        let yx = mat_compose(&y, &x).unwrap();
        let wz = mat_compose(&w, &z).unwrap();
        let path1 = associator(&w, &z, &yx).unwrap().into_square()
            .vcomp(associator(&wz, &y, &x).unwrap().square()).unwrap();
        let first = associator(&w, &z, &y).unwrap().into_square()
            .hcomp(&MatTwoMorphism::identity(&x)).unwrap();
        let middle = associator(&w, &zy, &x).unwrap().into_square();
        let last = MatTwoMorphism::identity(&w)
            .hcomp(associator(&z, &y, &x).unwrap().square()).unwrap();
        let path2 = last.vcomp(&middle.vcomp(&first).unwrap()).unwrap();
        prop_assert_eq!(path1, path2);
    }

    #[test]
    fn triangle_closes((x, y, _, _) in chain()) {
        let id = Mat::identity(x.tgt.size);
        let assoc = associator(&y, &id, &x).unwrap().into_square();
        let lhs = right_unitor(&y).into_square().hcomp(&MatTwoMorphism::identity(&x)).unwrap();
        let rhs = MatTwoMorphism::identity(&y).hcomp(left_unitor(&x).square()).unwrap().vcomp(&assoc).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interchanger_is_bijective((x1, y1, _, _) in chain(), (x2, y2, _, _) in chain()) {
        let xi = interchanger(&y1, &x1, &y2, &x2).unwrap();
        prop_assert!(xi.is_globular());
        prop_assert!(xi.is_componentwise_bijective());
    }

    #[test]
    fn sigma_tau_are_bijections_related_by_the_comparison(
        a1 in (1usize..3, 1usize..3).prop_flat_map(|(s, t)| small_mat(s, t)),
        a2 in (1usize..3, 1usize..3).prop_flat_map(|(s, t)| small_mat(s, t)),
    ) {
        let (sigma, tau) = sigma_tau(&a1, &a2).unwrap();
        prop_assert!(sigma.is_componentwise_bijective());
        prop_assert!(tau.is_componentwise_bijective());
        let cmp = sigma_tau_comparison(&a1, &a2).unwrap();
        prop_assert_eq!(cmp.vcomp(&tau).unwrap(), sigma);
    }
}

/// Naturality of ξ against componentwise squares on each of the four factors.
#[test]
fn interchanger_is_natural() {
    let x1 = Mat::from_entries(1, 2, vec![1, 2]).unwrap();
    let y1 = Mat::from_entries(2, 1, vec![1, 1]).unwrap();
    let x2 = Mat::from_entries(1, 1, vec![2]).unwrap();
    let y2 = Mat::from_entries(1, 1, vec![1]).unwrap();
    let x1b = Mat::from_entries(1, 1, vec![2]).unwrap();
    let y1b = Mat::from_entries(1, 1, vec![2]).unwrap();
    let mut checked = 0;
    for a in enumerate_two_morphisms(&x1, &x1b, DEFAULT_CAP).unwrap() {
        for b in enumerate_two_morphisms(&y1, &y1b, DEFAULT_CAP).unwrap() {
            if b.f != a.g {
                continue;
            }
            let idx2 = MatTwoMorphism::identity(&x2);
            let idy2 = MatTwoMorphism::identity(&y2);
            let top = b.hcomp(&a).unwrap().tensor(&idy2.hcomp(&idx2).unwrap()).unwrap();
            let xi_src = interchanger(&y1, &x1, &y2, &x2).unwrap();
            let xi_tgt = interchanger(&y1b, &x1b, &y2, &x2).unwrap();
            let bottom = b.tensor(&idy2).unwrap().hcomp(&a.tensor(&idx2).unwrap()).unwrap();
            assert_eq!(xi_tgt.vcomp(&top).unwrap(), bottom.vcomp(&xi_src).unwrap());
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn companion_identities() {
    for table in [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]] {
        let f = FinFunction::new(2, 2, table).unwrap();
        let cells = companion_cells(&f);
        let uf = vertical_identity(&f);
        assert_eq!(cells.p1.vcomp(&cells.q1).unwrap(), uf);
        assert_eq!(cells.p2.vcomp(&cells.q2).unwrap(), uf);

        let (comp, conj) = companion_conjoint(&f);
        // p1 ∘ q1 horizontally is the unitor comparison f_*∘id ≅ id∘f_*
        let h1 = cells.p1.hcomp(&cells.q1).unwrap();
        let expected = left_unitor(&comp).inverse().into_square().vcomp(right_unitor(&comp).square()).unwrap();
        assert_eq!(h1, expected);
        let h2 = cells.q2.hcomp(&cells.p2).unwrap();
        let expected = right_unitor(&conj).inverse().into_square().vcomp(left_unitor(&conj).square()).unwrap();
        assert_eq!(h2, expected);
    }
}

#[test]
fn tabulator_is_universal() {
    let x = Mat::from_entries(2, 2, vec![1, 0, 2, 1]).unwrap();
    let tab = tabulator(&x);
    assert_eq!(tab.apex.size, 4);
    for n in 0..3 {
        let id = Mat::identity(n);
        let cells = enumerate_two_morphisms(&id, &x, DEFAULT_CAP).unwrap();
        for theta in &cells {
            let h = tab.factor(theta).unwrap();
            assert_eq!(tab.pi_s.after(&h).unwrap(), theta.f);
            assert_eq!(tab.pi_t.after(&h).unwrap(), theta.g);
            let restricted = tab.pi.vcomp(&vertical_identity(&h)).unwrap();
            assert_eq!(&restricted, theta);
        }
        // uniqueness: distinct h give distinct cells
        let hs: std::collections::HashSet<_> = cells.iter().map(|t| tab.factor(t).unwrap()).collect();
        assert_eq!(hs.len(), cells.len());
    }
}

#[test]
fn transposition_is_a_bijection() {
    let x = Mat::from_entries(1, 2, vec![1, 1]).unwrap();
    let y = Mat::from_entries(1, 1, vec![2]).unwrap();
    let z = Mat::from_entries(2, 1, vec![1, 2]).unwrap();
    let hom = mat_hom(&y, &z, DEFAULT_CAP).unwrap();
    let left = enumerate_two_morphisms(&mat_tensor(&x, &y), &z, DEFAULT_CAP).unwrap();
    let right = enumerate_two_morphisms(&x, &hom, DEFAULT_CAP).unwrap();
    assert_eq!(left.len(), right.len());
    assert!(!left.is_empty());
    let mut images = std::collections::HashSet::new();
    for phi in &left {
        let psi = transpose_to_hom(phi, &x, &y, &z, DEFAULT_CAP).unwrap();
        assert_eq!(&transpose_from_hom(&psi, &x, &y, &z).unwrap(), phi);
        images.insert(format!("{psi:?}"));
    }
    assert_eq!(images.len(), right.len());
}
