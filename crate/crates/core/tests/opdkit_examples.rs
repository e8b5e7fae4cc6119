use std::collections::BTreeSet;

use mt_core::opdkit::*;
use mt_core::perm::{permute_list, Perm};

const CAP: u128 = 1 << 24;

fn point(arity: usize, trunc: usize) -> SymSeq {
    SymSeq::from_points(1, 1, vec![Profile::new(vec![0; arity], 0)], trunc).unwrap()
}

/// Right cosets `Hσ` of the grid subgroup in `Σ_4`, enumerated directly.
fn grid_cosets(m: usize, n: usize) -> usize {
    let h: Vec<Vec<usize>> = grid_subgroup(m, n).iter().map(|p| p.images().to_vec()).collect();
    let mut seen = BTreeSet::new();
    for s in Perm::all(m * n) {
        let coset: BTreeSet<Vec<usize>> = h
            .iter()
            .map(|g| (0..m * n).map(|i| g[s.apply(i)]).collect())
            .collect();
        seen.insert(coset);
    }
    seen.len()
}

#[test]
fn grid_permutations_act_on_grid_lists() {
    let a = [0, 1];
    let b = [0, 1, 2];
    for alpha in Perm::all(2) {
        for beta in Perm::all(3) {
            let lhs = permute_list(&grid_list(&a, &b, 3), &alpha.grid(&beta));
            let rhs = grid_list(&permute_list(&a, &alpha), &permute_list(&b, &beta), 3);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn arithmetic_product_of_binary_points() {
    let oracle = grid_cosets(2, 2);
    assert_eq!(oracle, 6);
    let x = point(2, 4);
    let p = arithmetic_product(&x, &x, 4, CAP).unwrap();
    assert_eq!(p.seq().counts()[4], oracle);
    assert!(p.seq().exact[4]);
    // unit and empty factors
    let u = SymSeq::unit(1, 4);
    let y = SymSeq::free_single(&[0, 1, 1], 4).unwrap();
    assert_eq!(arithmetic_product(&u, &y, 4, CAP).unwrap().seq().counts(), y.counts());
    let e = SymSeq::empty(1, 1, 4);
    assert!(arithmetic_product(&e, &y, 4, CAP).unwrap().seq().is_empty());
}

/// Set partitions of an `n`-set into blocks of size 2, by brute force over
/// block labellings.
fn pairings(n: usize) -> usize {
    let mut seen = BTreeSet::new();
    for f in mt_core::finkit::Odometer::new(vec![n / 2; n]) {
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n / 2];
        for (i, &b) in f.iter().enumerate() {
            blocks[b].push(i);
        }
        if blocks.iter().all(|b| b.len() == 2) {
            blocks.sort();
            seen.insert(blocks);
        }
    }
    seen.len()
}

#[test]
fn composite_of_binary_points() {
    let x = point(2, 4);
    let c = symseq_compose(&x, &x, 4, CAP).unwrap();
    assert_eq!(c.seq().counts()[4], pairings(4));
    assert_eq!(pairings(4), 3);
    let u = SymSeq::unit(1, 4);
    let y = SymSeq::free_single(&[0, 2, 1], 4).unwrap();
    assert_eq!(symseq_compose(&u, &y, 4, CAP).unwrap().seq().counts(), y.counts());
    assert_eq!(symseq_compose(&y, &u, 4, CAP).unwrap().seq().counts(), y.counts());
    let e = SymSeq::empty(1, 1, 4);
    assert!(symseq_compose(&y, &e, 4, CAP).unwrap().seq().is_empty());
}

#[test]
fn composite_is_associative_in_counts() {
    let x = SymSeq::free_single(&[0, 1, 1], 4).unwrap();
    let y = point(2, 4);
    let z = SymSeq::free_single(&[0, 1], 4).unwrap();
    let yx = symseq_compose(&y, &x, 4, CAP).unwrap();
    let zy = symseq_compose(&z, &y, 4, CAP).unwrap();
    let l = symseq_compose(&z, yx.seq(), 4, CAP).unwrap();
    let r = symseq_compose(zy.seq(), &x, 4, CAP).unwrap();
    assert_eq!(l.seq().counts(), r.seq().counts());
}

#[test]
fn free_multicategory_counts() {
    let unary = free_multicat(Signature::single(&[("f", 1)]), Bounds::new(3, 1), CAP).unwrap();
    assert_eq!(unary.table.ops.counts()[1], 4);
    let binary = free_multicat(Signature::single(&[("m", 2)]), Bounds::new(2, 3), CAP).unwrap();
    // planar binary trees with two nodes, times leaf labellings
    let catalan = |n: usize| -> usize {
        let mut c = vec![1usize; n + 1];
        for k in 1..=n {
            c[k] = (0..k).map(|i| c[i] * c[k - 1 - i]).sum();
        }
        c[n]
    };
    assert_eq!(binary.table.ops.counts()[3], catalan(2) * 6);
    let empty = free_multicat(Signature::single(&[]), Bounds::new(2, 3), CAP).unwrap();
    assert_eq!(empty.table.len(), 1);
}

fn unary(name: &str) -> Presentation {
    Presentation::free(Signature::single(&[(name, 1)]))
}

/// Normal forms of words in `f, g` of length at most `n` under `gf → fg`.
fn commuting_words(n: usize) -> usize {
    let mut forms = BTreeSet::new();
    for len in 0..=n {
        for w in mt_core::finkit::Odometer::new(vec![2; len]) {
            let mut w: Vec<char> = w.iter().map(|&c| if c == 0 { 'f' } else { 'g' }).collect();
            while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] == 'g' && w[i + 1] == 'f') {
                w.swap(i, i + 1);
            }
            forms.insert(w);
        }
    }
    forms.len()
}

#[test]
fn eckmann_hilton_truncation() {
    let t = bv_tensor(&unary("f"), &unary("g")).unwrap();
    let table = materialise(t.presentation.clone(), Bounds::new(2, 1), CAP).unwrap();
    assert!(table.table.certified);
    assert_eq!(table.table.ops.counts()[1], commuting_words(2));
    assert_eq!(commuting_words(2), 6);
}

#[test]
fn commuting_endomaps_are_algebras_of_the_tensor() {
    // all pairs of endomaps of a 2-set, tested for commutation
    let maps: Vec<[usize; 2]> = (0..4).map(|k| [k / 2, k % 2]).collect();
    let oracle = maps
        .iter()
        .flat_map(|f| maps.iter().map(move |g| (f, g)))
        .filter(|(f, g)| (0..2).all(|x| f[g[x]] == g[f[x]]))
        .count();
    assert_eq!(oracle, 10);
    let t = bv_tensor(&unary("f"), &unary("g")).unwrap();
    assert_eq!(enumerate_algebras(&t.presentation, &[2], CAP).unwrap().len(), oracle);
    assert_eq!(count_algebras_in_algebras(&unary("f"), &unary("g"), &[vec![2]], CAP).unwrap(), 10);
}

fn commutative() -> Presentation {
    let sig = Signature::single(&[("m", 2)]);
    let p = Profile::new(vec![0, 0], 0);
    let rel = Relation { lhs: Term::generator(0, 2), rhs: Term::generator(0, 2).act(&Perm::transposition(2, 0, 1)), profile: p };
    Presentation::new(sig, vec![rel]).unwrap()
}

fn involution() -> Presentation {
    let sig = Signature::single(&[("s", 1)]);
    let rel = Relation { lhs: Term::Op(0, vec![Term::generator(0, 1)]), rhs: Term::Var(0), profile: Profile::new(vec![0], 0) };
    Presentation::new(sig, vec![rel]).unwrap()
}

#[test]
fn algebra_correspondence() {
    let binary = Presentation::free(Signature::single(&[("m", 2)]));
    let cases: Vec<(Presentation, Presentation, usize)> = vec![
        (unary("f"), binary.clone(), 2),
        (involution(), unary("g"), 3),
        (commutative(), unary("g"), 2),
        (binary.clone(), binary, 2),
    ];
    for (m, n, k) in cases {
        let t = bv_tensor(&m, &n).unwrap();
        let direct = enumerate_algebras(&t.presentation, &[k], CAP).unwrap().len() as u128;
        let nested = count_algebras_in_algebras(&m, &n, &[vec![k]], CAP).unwrap();
        assert_eq!(direct, nested);
        assert!(direct > 0);
    }
}

#[test]
fn unit_and_swap_of_the_tensor() {
    let bounds = Bounds::new(3, 3);
    let unit = Presentation::free(Signature::single(&[]));
    for m in [commutative(), involution(), Presentation::free(Signature::single(&[("m", 2), ("f", 1)]))] {
        let t = bv_tensor(&unit, &m).unwrap();
        let tm = materialise(t.presentation.clone(), bounds, CAP).unwrap();
        let mm = materialise(m.clone(), bounds, CAP).unwrap();
        let gen = |g: usize| Term::generator(g, m.sig.generators[g].profile.arity());
        assert!(relabelling_is_isomorphism(&tm, &mm, &|c| c, &gen).unwrap());
    }
    let (m, n) = (commutative(), unary("g"));
    let mn = bv_tensor(&m, &n).unwrap();
    let nm = bv_tensor(&n, &m).unwrap();
    let a = materialise(mn.presentation.clone(), bounds, CAP).unwrap();
    let b = materialise(nm.presentation.clone(), bounds, CAP).unwrap();
    let (colour, gen) = swap_relabelling(&mn, &nm);
    assert!(relabelling_is_isomorphism(&a, &b, &colour, &gen).unwrap());
}
