use mt_core::dsl::{elaborate, parse_spec, serialise, DeclKind};
use mt_core::error::Error;

#[test]
fn empty_document() {
    let doc = parse_spec("").unwrap();
    assert!(doc.decls.is_empty());
    let doc = parse_spec("\n  # only a comment\n\n").unwrap();
    assert!(doc.decls.is_empty());
    assert_eq!(serialise(&doc), "");
}

#[test]
fn one_point_discrete_category() {
    let env = elaborate(&parse_spec("set A = {x}\ncat C = discrete(A)\n").unwrap()).unwrap();
    assert_eq!(env.cats.len(), 1);
    assert_eq!(env.cats["C"].num_objects(), 1);
    assert_eq!(env.cats["C"].num_morphisms(), 1);
}

#[test]
fn walking_arrow() {
    let text = "set O = {a, b}\ngraph G on O : a -> b as f\ncat Arrow = free(G)\n";
    let env = elaborate(&parse_spec(text).unwrap()).unwrap();
    let c = &env.cats["Arrow"];
    assert_eq!((c.num_objects(), c.num_morphisms()), (2, 3));
}

#[test]
fn presented_and_tabulated_categories_agree() {
    // an idempotent e with e.e = e, presented and tabulated
    let text = "
        set O = {o}
        graph G on O : o -> o as e
        cat P = free(G) / { e.e = e }
        cat T = table {
            objects o
            arrow e : o -> o
            e.e = e
        }
    ";
    let env = elaborate(&parse_spec(text).unwrap()).unwrap();
    assert_eq!(env.cats["P"].num_morphisms(), 2);
    assert_eq!(env.cats["T"].num_morphisms(), 2);
}

#[test]
fn profunctor_tables() {
    let text = "
        set O = {a, b}
        graph G on O : a -> b as f
        cat C = free(G)
        cat D = discrete(O)
        prof H : C -> C = hom(C)
        # the representable C(-, b) seen from the discrete side
        prof R : C -> D {
            elem p : b <- a; elem q : b <- b
            right q.f = p
        }
    ";
    let env = elaborate(&parse_spec(text).unwrap()).unwrap();
    assert_eq!(env.profs["H"].num_elements(), 3);
    assert_eq!(env.profs["R"].num_elements(), 2);
}

#[test]
fn missing_action_is_reported() {
    let text = "
        set O = {a, b}
        graph G on O : a -> b as f
        cat C = free(G)
        cat D = discrete(O)
        prof R : C -> D { elem p : b <- a; elem q : b <- b }
    ";
    assert!(elaborate(&parse_spec(text).unwrap()).is_err());
}

#[test]
fn signatures_and_multicategories() {
    let text = "
        trunc 2
        sig S { m : (c, c) -> c }
        mcat Com = free(S) / { m(x0, x1) = m(x1, x0) }
        mcat Mag = free(S)
        mcat Z2 = cyclic(2)
        mprof Q : Com -> Com = free { g : (c) -> c }
        mprof I : Mag -> Mag = identity(Mag)
    ";
    let env = elaborate(&parse_spec(text).unwrap()).unwrap();
    // arities 0, 1, 2: the identity and one binary operation up to symmetry
    assert_eq!(env.mcats["Com"].ops.counts(), vec![0, 1, 1]);
    assert_eq!(env.mcats["Mag"].ops.counts(), vec![0, 1, 2]);
    assert_eq!(env.mcats["Z2"].len(), 2);
    assert!(env.mprofs["Q"].check_axioms().is_ok());
    assert!(env.mprofs["I"].complete);
}

#[test]
fn matrices() {
    let env = elaborate(&parse_spec("set A = {x, y}\nset B = {u}\nmat X : A -> B = { 2, 0 }\n").unwrap()).unwrap();
    assert_eq!(env.mats["X"].entries(), &[2, 0]);
    assert!(elaborate(&parse_spec("set A = {x, y}\nmat X : A -> A = { 1 }\n").unwrap()).is_err());
}

#[test]
fn errors_carry_positions() {
    match parse_spec("set A = {x}\ncat C = discrete(A) junk\n") {
        Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 21)),
        other => panic!("unexpected {other:?}"),
    }
    match parse_spec("set A = {x ! y}") {
        Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 12)),
        other => panic!("unexpected {other:?}"),
    }
    assert!(parse_spec("set A = {x}\nset A = {y}\n").is_err());
}

#[test]
fn unresolved_names_and_boundaries() {
    assert!(elaborate(&parse_spec("cat C = discrete(A)").unwrap()).is_err());
    let text = "set A = {x}\nset B = {y, z}\ncat C = discrete(A)\ncat D = discrete(B)\nprof P : C -> D = hom(C)\n";
    assert!(matches!(elaborate(&parse_spec(text).unwrap()), Err(Error::Boundary(_))));
}

#[test]
fn settings() {
    let doc = parse_spec("budget 9\ntrunc 3\nsize 5\n").unwrap();
    assert!(matches!(doc.decls[0].kind, DeclKind::Budget(9)));
    let env = elaborate(&doc).unwrap();
    assert_eq!((env.budget, env.trunc, env.size), (9, 3, 5));
    let env = elaborate(&parse_spec("").unwrap()).unwrap();
    assert_eq!((env.budget, env.trunc, env.size), (6, 2, 5));
}

#[test]
fn serialising_is_stable() {
    let text = "
        budget 7
        set O = {a, b}
        graph G on O : a -> b as f, b -> b as e
        cat C = free(G) / { e.e = id(b); e.f = f }
        cat T = table { objects a; arrow g : a -> a; g.g = id(a) }
        prof R : C -> C { elem p : a <- a }
        mat X : O -> O = { 1, 0; 0, 1 }
        sig S on O { m : (a, b) -> a }
        mcat M = free(S)
        mprof F : M -> M = free { k : (a, a) -> a fixed; h : (b) -> a }
    ";
    let doc = parse_spec(text).unwrap();
    let once = serialise(&doc);
    let again = parse_spec(&once).unwrap();
    assert_eq!(serialise(&again), once);
    assert_eq!(again.decls.iter().map(|d| &d.kind).collect::<Vec<_>>(), doc.decls.iter().map(|d| &d.kind).collect::<Vec<_>>());
}

#[test]
fn categories_read_back_from_tables() {
    use mt_core::catmon::commuting_tensor;
    use mt_core::dsl::{category_decl, SpecDocument};
    let text = "set O = {a, b}\ngraph G on O : a -> b as f\ncat Arrow = free(G)\n";
    let env = elaborate(&parse_spec(text).unwrap()).unwrap();
    let a = &env.cats["Arrow"];
    let t = commuting_tensor(a, a, 6).unwrap().category;
    let doc = SpecDocument { decls: vec![category_decl("T", &t)] };
    let back = elaborate(&parse_spec(&serialise(&doc)).unwrap()).unwrap();
    let b = &back.cats["T"];
    assert_eq!((b.num_objects(), b.num_morphisms()), (t.num_objects(), t.num_morphisms()));
    assert_eq!(b.hom_mat().entries().iter().sum::<usize>(), 9);
}
