use std::path::PathBuf;

use mt_core::dsl::{elaborate, parse_spec, serialise, Env};
use mt_core::finkit::DEFAULT_CAP;
use mt_core::opdkit::{normality_instance, profunctor_control, Verdict};

fn corpus(dir: &str) -> Vec<(String, Env)> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(dir);
    let mut files: Vec<PathBuf> = std::fs::read_dir(&root).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .into_iter()
        .map(|f| {
            let text = std::fs::read_to_string(&f).unwrap();
            let doc = parse_spec(&text).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
            let again = parse_spec(&serialise(&doc)).unwrap();
            assert_eq!(serialise(&again), serialise(&doc));
            (f.file_stem().unwrap().to_string_lossy().into_owned(), elaborate(&doc).unwrap_or_else(|e| panic!("{}: {e}", f.display())))
        })
        .collect()
}

#[test]
fn category_corpus_sizes() {
    // morphisms counted by hand from each file's description
    let expected = [
        ("arrow", 2, 3),
        ("chain", 3, 6),
        ("idempotent", 1, 2),
        ("iso", 2, 4),
        ("left_zero", 1, 3),
        ("pair", 2, 2),
        ("parallel", 2, 4),
        ("point", 1, 1),
        ("span", 3, 5),
        ("square", 4, 9),
        ("z2", 1, 2),
        ("z3", 1, 3),
    ];
    let cats = corpus("categories");
    assert_eq!(cats.len(), expected.len());
    for ((name, env), (want, objs, mors)) in cats.iter().zip(expected) {
        assert_eq!(name, want);
        let c = &env.cats[env.last("cat").unwrap()];
        assert_eq!((c.num_objects(), c.num_morphisms()), (objs, mors), "{name}");
        assert!(c.num_objects() <= 4 && c.num_morphisms() <= 12);
    }
}

#[test]
fn discrete_corpus() {
    for (name, env) in corpus("discrete") {
        let c = &env.cats[env.last("cat").unwrap()];
        assert_eq!(c.num_objects(), c.num_morphisms(), "{name}");
    }
}

#[test]
fn profunctor_control_is_invertible() {
    for (name, env) in corpus("profunctors") {
        assert!(profunctor_control(&env.profs["p"], &env.profs["q"], env.budget).unwrap(), "{name}");
    }
}

#[test]
fn operadic_probe_completes() {
    for (name, env) in corpus("operads") {
        let r = normality_instance(&name, &env.mprofs["p"], &env.mprofs["q"], env.size, DEFAULT_CAP).unwrap();
        assert!(r.module_map, "{name}");
        let all = r.entries.iter().all(|e| e.injective && e.surjective);
        assert_eq!(all, matches!(r.verdict, Verdict::Invertible { .. }), "{name}");
    }
}
