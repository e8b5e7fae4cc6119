use std::process::{Command, Output};

fn mt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mt"))
        .args(args)
        .env("MT_CORPUS", concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
        .output()
        .expect("mt runs")
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = mt(&all);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), doc)
}

fn check<'a>(doc: &'a serde_json::Value, name: &str) -> &'a serde_json::Value {
    doc["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn commuting_tensor_of_arrows() {
    let (code, doc) = json(&["tensor", "--commuting", "arrow.spec", "arrow.spec"]);
    assert_eq!(code, 0);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(check(&doc, "commuting-tensor")["data"]["morphisms"], 9);
    // the serialised result reads back as a category with 9 morphisms
    let text = doc["result"].as_str().unwrap();
    let env = mt_core::dsl::elaborate(&mt_core::dsl::parse_spec(text).unwrap()).unwrap();
    assert_eq!(env.cats.values().next().unwrap().num_morphisms(), 9);
}

#[test]
fn laws_on_the_discrete_corpus() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/discrete");
    let files: Vec<String> = ["point", "pair", "triple"].iter().map(|f| format!("{dir}/{f}.spec")).collect();
    let mut args = vec!["laws"];
    args.extend(files.iter().map(String::as_str));
    let (code, doc) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "pass");
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.len() >= 3 * 2 + 9);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn probe_control_is_invertible() {
    let (code, doc) = json(&["probe-normality"]);
    assert_eq!(code, 0);
    let checks = doc["checks"].as_array().unwrap();
    let control: Vec<_> = checks.iter().filter(|c| c["name"].as_str().unwrap().starts_with("control/")).collect();
    assert!(control.len() >= 5);
    assert!(control.iter().all(|c| c["data"]["verdict"] == "invertible"));
    let operadic: Vec<_> = checks.iter().filter(|c| c["name"].as_str().unwrap().starts_with("operadic/")).collect();
    assert!(!operadic.is_empty());
    for c in operadic {
        let v = c["data"]["verdict"].as_str().unwrap();
        assert!(v == "invertible" || v == "witness");
    }
}

#[test]
fn reports_are_byte_identical() {
    let a = mt(&["--json", "laws", "--seed", "3"]);
    let b = mt(&["laws", "--json", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(mt(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(mt(&["tensor", "no-such-file", "arrow"]).status.code(), Some(3));
    assert_eq!(mt(&["tensor", "arrow"]).status.code(), Some(3));
    // z2_regular's composite is defined; representable's p and q do not compose
    assert_eq!(mt(&["compose", "z2_regular"]).status.code(), Some(0));
    assert_eq!(mt(&["compose", "representable"]).status.code(), Some(3));
    let (code, doc) = json(&["tensor", "--funny", "square", "square", "--budget", "2"]);
    assert_eq!(code, 2);
    let c = check(&doc, "funny-tensor");
    assert_eq!(c["status"], "truncated");
    assert_eq!(c["budget"], "2");
}

#[test]
fn failures_carry_witnesses() {
    // a cap of one candidate cannot enumerate the sesquifunctors
    let (code, doc) = json(&["classify", "arrow", "arrow", "arrow", "--cap", "1"]);
    assert_eq!(code, 2);
    assert!(check(&doc, "classify")["budget"].is_string());
    for c in doc["checks"].as_array().unwrap() {
        if c["status"] == "fail" {
            assert!(c.get("witness").is_some());
        }
    }
}

#[test]
fn category_commands() {
    let (code, doc) = json(&["hom", "arrow", "arrow", "arrow"]);
    assert_eq!(code, 0);
    let d = &check(&doc, "adjunction-counts")["data"];
    assert_eq!((d["funny_tensor_side"].as_u64(), d["funny_hom_side"].as_u64()), (Some(6), Some(6)));
    let (code, doc) = json(&["classify", "arrow", "z2", "iso"]);
    assert_eq!(code, 0);
    assert_eq!(check(&doc, "classify")["data"]["injective"], true);
    assert_eq!(json(&["hexagon", "span", "arrow", "square"]).0, 0);
    assert_eq!(json(&["funny-tensor", "arrow", "z2"]).0, 0);
}

#[test]
fn module_commands() {
    assert_eq!(json(&["interchange", "representable"]).0, 0);
    let (code, doc) = json(&["bv-tensor", "commuting_unaries"]);
    assert_eq!(code, 0);
    let a = &check(&doc, "algebras")["data"];
    assert_eq!(a["tensor_algebras"], "10");
    assert_eq!(check(&doc, "bv-tensor")["data"]["operations_by_arity"][1], 6);
    // q . id has the elements of q, and the magma file's p and q do not compose
    let (code, doc) = json(&["compose", "corpus/operads/commutative.spec"]);
    assert_eq!(code, 0);
    let (_, laws) = json(&["laws", "corpus/operads/commutative.spec"]);
    assert_eq!(check(&doc, "multiprofunctor-composite")["data"]["elements_by_arity"], check(&laws, "commutative/q/axioms")["data"]["elements_by_arity"]);
    assert_eq!(mt(&["compose", "corpus/operads/magma.spec"]).status.code(), Some(3));
}
