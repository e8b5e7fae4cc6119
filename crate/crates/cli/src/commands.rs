//! One function per command; each returns the checks it ran.

use std::time::Instant;

use mt_core::catmon::{
    classify, closedness, commuting_hom, commuting_tensor, enumerate_sesquifunctors, funny_hom, funny_tensor, is_commuting_direct, FinCategory,
    FunctorCategory, FunnyResult, Hexagon, TensorRoute,
};
use mt_core::dsl::{category_decl, serialise, SpecDocument};
use mt_core::error::Error;
use mt_core::opdkit::{
    bv_tensor, count_algebras_in_algebras, enumerate_algebras, materialise, multi_interchange, multiprof_compose, normality_instance,
    profunctor_control, relabelling_is_isomorphism, Bounds, MultiProfunctor, Presentation, Signature, Term, Verdict,
};
use mt_core::promod::{bimodule_compose, interchange, left_unitor, right_unitor, Profunctor};
use serde_json::{json, Value};

use crate::input::{corpus_files, load, load_path, Loaded, Stop, Usage};
use crate::report::{Check, Report};

pub struct Ctx {
    pub budget: Option<usize>,
    pub cap: u128,
    pub seed: u64,
}

/// Runs one check, turning truncation and cap errors into truncated checks
/// and broken axioms into failures.
fn attempt(name: &str, budget: usize, cap: u128, f: impl FnOnce() -> mt_core::error::Result<Check>) -> Result<Check, Usage> {
    let start = Instant::now();
    let mut c = match f() {
        Ok(c) => c,
        Err(Error::Truncated(reason)) => Check::truncated(name, json!({ "reason": reason }), budget as u128),
        Err(Error::Budget { needed, cap: _ }) => Check::truncated(name, json!({ "reason": "enumeration cap", "needed": needed.to_string() }), cap),
        Err(Error::Axiom(msg)) => Check::fail(name, Value::Null, json!(msg)),
        Err(e) => return Err(Usage(e.to_string())),
    };
    c.elapsed = start.elapsed();
    Ok(c)
}

fn loaded(args: &[String], n: usize, ctx: &Ctx) -> Result<Vec<Loaded>, Stop> {
    if args.len() != n {
        return Err(Stop::Usage(Usage(format!("expected {n} file(s), got {}", args.len()))));
    }
    args.iter().map(|a| load(a, ctx.budget)).collect()
}

fn category<'a>(l: &'a Loaded) -> Result<(String, &'a FinCategory), Usage> {
    let name = l.pick("cat")?;
    Ok((name.clone(), &l.env.cats[&name]))
}

fn shape(c: &FinCategory) -> Value {
    json!({ "objects": c.num_objects(), "morphisms": c.num_morphisms() })
}

fn table(name: &str, c: &FinCategory) -> String {
    serialise(&SpecDocument { decls: vec![category_decl(name, c)] })
}

pub fn tensor(args: &[String], funny: bool, ctx: &Ctx, report: &mut Report) -> Result<(), Stop> {
    let ls = loaded(args, 2, ctx)?;
    let (na, a) = category(&ls[0])?;
    let (nb, b) = category(&ls[1])?;
    let budget = ls[0].env.budget;
    let cap = ctx.cap;
    if funny {
        let mut result = None;
        let c = attempt("funny-tensor", budget, cap, || {
            let t = funny_tensor(a, b, budget)?;
            Ok(match &t.result {
                FunnyResult::Closed { category, .. } => {
                    category.check_axioms()?;
                    result = Some(table(&format!("{na}_box_{nb}"), category));
                    Check::pass("funny-tensor", shape(category))
                }
                FunnyResult::Truncated(tr) => {
                    Check::truncated("funny-tensor", json!({ "classes_found": tr.words.len(), "frontier": tr.frontier.len(), "reason": tr.reason }), tr.budget as u128)
                }
            })
        })?;
        report.checks.push(c);
        report.result = result;
    } else {
        let mut result = None;
        let c = attempt("commuting-tensor", budget, cap, || {
            let t = commuting_tensor(a, b, budget)?;
            t.category.check_axioms()?;
            let iso = t.to_product.is_isomorphism() && t.from_product.after(&t.to_product)?.is_isomorphism();
            let mut data = shape(&t.category);
            data["product_morphisms"] = json!(t.product.num_morphisms());
            data["route"] = json!(match t.route {
                TensorRoute::QuotientOfFunny => "quotient of the funny tensor",
                TensorRoute::PresentationWithHexagons => "presentation with hexagon relations",
            });
            result = Some(table(&format!("{na}_x_{nb}"), &t.category));
            let counts = t.category.num_morphisms() == t.product.num_morphisms() && t.category.num_objects() == t.product.num_objects();
            Ok(Check::verdict("commuting-tensor", iso && counts, data, || json!({ "tensor": shape(&t.category), "product": shape(&t.product) })))
        })?;
        report.checks.push(c);
        report.result = result;
    }
    Ok(())
}

fn functor_category(h: &FunctorCategory) -> Value {
    json!({ "functors": h.functors.len(), "morphisms": h.category.num_morphisms(), "natural": h.natural })
}

pub fn hom(args: &[String], ctx: &Ctx, report: &mut Report) -> Result<(), Stop> {
    if args.len() != 2 && args.len() != 3 {
        return Err(Stop::Usage(Usage("hom takes B C, or A B C to also compare counts".into())));
    }
    let ls = loaded(args, args.len(), ctx)?;
    let cats = ls.iter().map(category).collect::<Result<Vec<_>, _>>()?;
    let (b, c) = (cats[cats.len() - 2].1, cats[cats.len() - 1].1);
    let budget = ls[0].env.budget;
    let mut result = None;
    report.checks.push(attempt("funny-hom", budget, ctx.cap, || {
        let h = funny_hom(b, c, ctx.cap)?;
        h.category.check_axioms()?;
        Ok(Check::pass("funny-hom", functor_category(&h)))
    })?);
    report.checks.push(attempt("commuting-hom", budget, ctx.cap, || {
        let h = commuting_hom(b, c, ctx.cap)?;
        h.category.check_axioms()?;
        result = Some(table("Hom", &h.category));
        Ok(Check::pass("commuting-hom", functor_category(&h)))
    })?);
    if cats.len() == 3 {
        let a = cats[0].1;
        report.checks.push(attempt("adjunction-counts", budget, ctx.cap, || {
            let r = closedness(a, b, c, budget, ctx.cap)?;
            let data = json!({
                "funny_tensor_side": r.funny_tensor_side,
                "funny_hom_side": r.funny_hom_side,
                "commuting_tensor_side": r.commuting_tensor_side,
                "commuting_hom_side": r.commuting_hom_side,
                "transposition_bijective": r.transposition_bijective,
                "commutativity_reflected": r.commutativity_reflected,
            });
            Ok(Check::verdict("adjunction-counts", r.holds(), data.clone(), || data))
        })?);
    }
    report.result = result;
    Ok(())
}

pub fn classify_cmd(args: &[String], ctx: &Ctx, report: &mut Report) -> Result<(), Stop> {
    let ls = loaded(args, 3, ctx)?;
    let cats = ls.iter().map(category).collect::<Result<Vec<_>, _>>()?;
    let budget = ls[0].env.budget;
    report.checks.push(attempt("classify", budget, ctx.cap, || {
        let r = classify(cats[0].1, cats[1].1, cats[2].1, budget, ctx.cap)?;
        let data = json!({
            "commuting_sesquifunctors": r.commuting_sesquifunctors,
            "functors": r.functors,
            "injective": r.injective,
            "surjective": r.surjective,
        });
        Ok(Check::verdict("classify", r.is_bijection(), data.clone(), || data))
    })?);
    Ok(())
}

pub fn hexagon(args: &[String], ctx: &Ctx, report: &mut Report) -> Result<(), Stop> {
    let ls = loaded(args, 3, ctx)?;
    let cats = ls.iter().map(category).collect::<Result<Vec<_>, _>>()?;
    let (a, b, c) = (cats[0].1, cats[1].1, cats[2].1);
    report.checks.push(attempt("hexagon", ls[0].env.budget, ctx.cap, || {
        let hex = Hexagon::new(a, b, c)?;
        let all = enumerate_sesquifunctors(a, b, c, ctx.cap)?;
        let (mut commuting, mut first_failure, mut disagreement) = (0usize, None, None);
        for (i, s) in all.iter().enumerate() {
            let failure = hex.check(s)?;
            if failure.is_none() {
                commuting += 1;
            } else if first_failure.is_none() {
                let f = failure.as_ref().expect("failure");
                first_failure = Some(json!({ "sesquifunctor": i, "f": a.morphism_label(f.f), "g": b.morphism_label(f.g), "via_sigma": f.via_sigma, "via_tau": f.via_tau }));
            }
            if failure.is_none() != is_commuting_direct(s, a, b, c) && disagreement.is_none() {
                disagreement = Some(i);
            }
        }
        let data = json!({ "sesquifunctors": all.len(), "commuting": commuting, "first_non_commuting": first_failure });
        Ok(Check::verdict("hexagon", disagreement.is_none(), data, || json!({ "square and direct checks disagree on sesquifunctor": disagreement })))
    })?);
    Ok(())
}

/// `p` then `q` if both are declared, otherwise the last two of the kind.
fn pair_of(l: &Loaded, kind: &str) -> Result<(String, String), Usage> {
    let names = l.names(kind);
    if names.iter().any(|n| n == "p") && names.iter().any(|n| n == "q") {
        return Ok(("p".into(), "q".into()));
    }
    match names.as_slice() {
        [.., p, q] => Ok((p.clone(), q.clone())),
        _ => Err(Usage(format!("{}: two {kind} declarations are needed", l.stem))),
    }
}

pub fn compose(args: &[String], ctx: &Ctx, report: &mut Report) -> Result<(), Stop> {
    let ls = loaded(args, 1, ctx)?;
    let l = &ls[0];
    let budget = l.env.budget;
    if !l.names("mprof").is_empty() {
        let (pn, qn) = pair_of(l, "mprof")?;
        let (p, q) = (&l.env.mprofs[&pn], &l.env.mprofs[&qn]);
        if p.tgt != q.src {
            return Err(Stop::Usage(Usage(format!("{qn} . {pn}: boundary mismatch"))));
        }
        report.checks.push(attempt("multiprofunctor-composite", budget, ctx.cap, || {
            let c = multiprof_compose(q, p, ctx.cap)?;
            c.profunctor.check_axioms()?;
            let data = json!({
                "composite": format!("{qn} . {pn}"),
                "elements_by_arity": c.profunctor.seq.counts(),
                "raw_elements": c.raw_module.len(),
                "complete": c.profunctor.complete,
            });
            Ok(Check::pass("multiprofunctor-composite", data))
        })?);
        return Ok(());
    }
    let (pn, qn) = pair_of(l, "prof")?;
    let (p, q) = (&l.env.profs[&pn], &l.env.profs[&qn]);
    if p.tgt != q.src {
        return Err(Stop::Usage(Usage(format!("{qn} . {pn}: boundary mismatch"))));
    }
    report.checks.push(attempt("composite", budget, ctx.cap, || {
        let c = bimodule_compose(q, p)?;
        c.profunctor.check_axioms()?;
        let m = c.profunctor.mat();
        let rows: Vec<Vec<usize>> = (0..m.tgt.size).map(|y| (0..m.src.size).map(|x| m.entry(y, x)).collect()).collect();
        Ok(Check::pass("composite", json!({ "composite": format!("{qn} . {pn}"), "entries": rows, "elements": c.profunctor.num_elements() })))
    })?);
    for (label, r) in [("p", p), ("q", q)] {
        report.checks.push(unit_laws(&format!("unit-laws/{label}"), r, budget, ctx.cap)?);
    }
    Ok(())
}

fn unit_laws(name: &str, r: &Profunctor, budget: usize, cap: u128) -> Result<Check, Usage> {
    attempt(name, budget, cap, || {
        let (_, right) = right_unitor(r)?;
        let (_, left) = left_unitor(r)?;
        let (ri, li) = (right.is_isomorphism(), left.is_isomorphism());
        Ok(Check::verdict(name, ri && li, json!({ "elements": r.num_elements() }), || json!({ "right_unitor_invertible": ri, "left_unitor_invertible": li })))
    })
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Invertible { trunc, exact } => json!({ "verdict": "invertible", "truncation": trunc, "exact": exact }),
        Verdict::Witness { profile, source, target, injective, surjective } => json!({
            "verdict": "witness",
            "profile": format!("{:?} -> {}", profile.inputs, profile.output),
            "source_elements": source,
            "target_elements": target,
            "injective": injective,
            "surjective": surjective,
        }),
    }
}

pub fn interchange_cmd(args: &[String], ctx: &Ctx, report: &mut Report) -> Result<(), Stop> {
    let ls = loaded(args, 1, ctx)?;
    let l = &ls[0];
    let budget = l.env.budget;
    let quad = ["q1", "p1", "q2", "p2"];
    if !l.names("mprof").is_empty() {
        let ms = &l.env.mprofs;
        let c = if quad.iter().all(|n| ms.contains_key(*n)) {
            attempt("interchange", budget, ctx.cap, || {
                let xi = multi_interchange(&ms["q1"], &ms["p1"], &ms["q2"], &ms["p2"], l.env.size, ctx.cap)?;
                let bad = xi.entries().into_iter().find(|e| !(e.injective && e.surjective));
                let data = json!({ "entries": xi.entries().len(), "module_map": xi.module_map });
                Ok(Check::verdict("interchange", bad.is_none() && xi.module_map, data, || {
                    json!(bad.map(|e| json!({ "profile": format!("{:?} -> {}", e.profile.inputs, e.profile.output), "source": e.source, "target": e.target })))
                }))
            })?
        } else {
            let (pn, qn) = pair_of(l, "mprof")?;
            attempt("interchange", budget, ctx.cap, || {
                let r = normality_instance(&l.stem, &ms[&pn], &ms[&qn], l.env.size, ctx.cap)?;
                let ok = matches!(r.verdict, Verdict::Invertible { .. }) && r.module_map;
                Ok(Check::verdict("interchange", ok, verdict_json(&r.verdict), || verdict_json(&r.verdict)))
            })?
        };
        report.checks.push(c);
        return Ok(());
    }
    let ps = &l.env.profs;
    let (q1, p1, q2, p2) = if quad.iter().all(|n| ps.contains_key(*n)) {
        (ps["q1"].clone(), ps["p1"].clone(), ps["q2"].clone(), ps["p2"].clone())
    } else {
        let (pn, qn) = pair_of(l, "prof")?;
        let (p, q) = (ps[&pn].clone(), ps[&qn].clone());
        (Profunctor::identity(&p.tgt), p, q.clone(), Profunctor::identity(&q.src))
    };
    report.checks.push(attempt("interchange", budget, ctx.cap, || {
        let xi = interchange(&q1, &p1, &q2, &p2, budget)?;
        let (s, t) = (xi.source.profunctor.num_elements(), xi.target.profunctor.num_elements());
        let data = json!({ "source_elements": s, "target_elements": t });
        Ok(Check::verdict("interchange", xi.map.is_isomorphism(), data.clone(), || data))
    })?);
    Ok(())
}

fn presented(l: &Loaded) -> Vec<String> {
    l.names("mcat").into_iter().filter(|n| l.env.presentations.contains_key(n)).collect()
}

fn unit_law(name: &str, m: &Presentation, bounds: Bounds, cap: u128) -> Result<Check, Usage> {
    attempt(name, bounds.size, cap, || {
        let unit = Presentation::free(Signature::single(&[]));
        let t = bv_tensor(&unit, m)?;
        let tm = materialise(t.presentation.clone(), bounds, cap)?;
        let mm = materialise(m.clone(), bounds, cap)?;
        let gen = |g: usize| Term::generator(g, m.sig.generators[g].profile.arity());
        let iso = relabelling_is_isomorphism(&tm, &mm, &|c| c, &gen)?;
        Ok(Check::verdict(name, iso, json!({ "operations_by_arity": mm.table.ops.counts() }), || json!("relabelling is not an isomorphism")))
    })
}

pub fn bv(args: &[String], ctx: &Ctx, report: &mut Report) -> Result<(), Stop> {
    let ls = loaded(args, 1, ctx)?;
    let l = &ls[0];
    let names = presented(l);
    let (mn, nn) = if names.iter().any(|n| n == "M") && names.iter().any(|n| n == "N") {
        ("M".to_string(), "N".to_string())
    } else {
        match names.as_slice() {
            [.., m, n] => (m.clone(), n.clone()),
            _ => return Err(Stop::Usage(Usage(format!("{}: two presented multicategories are needed", l.stem)))),
        }
    };
    let (m, n) = (&l.env.presentations[&mn], &l.env.presentations[&nn]);
    let bounds = Bounds::new(l.env.size, l.env.trunc);
    let t = match bv_tensor(m, n) {
        Ok(t) => t,
        Err(e) => return Err(Stop::Usage(Usage(e.to_string()))),
    };
    report.checks.push(attempt("bv-tensor", bounds.size, ctx.cap, || {
        let table = materialise(t.presentation.clone(), bounds, ctx.cap)?;
        table.table.check_axioms()?;
        let data = json!({
            "tensor": format!("{mn} (x) {nn}"),
            "generators": t.presentation.sig.generators.len(),
            "relations": t.presentation.relations.len(),
            "operations_by_arity": table.table.ops.counts(),
            "exact_by_arity": table.table.ops.exact,
            "certified": table.table.certified,
        });
        Ok(Check::pass("bv-tensor", data))
    })?);
    report.checks.push(attempt("algebras", bounds.size, ctx.cap, || {
        let carriers = vec![vec![2; n.colours()]; m.colours()];
        let flat: Vec<usize> = carriers.concat();
        let direct = enumerate_algebras(&t.presentation, &flat, ctx.cap)?.len() as u128;
        let nested = count_algebras_in_algebras(m, n, &carriers, ctx.cap)?;
        let data = json!({ "carrier": 2, "tensor_algebras": direct.to_string(), "algebras_in_algebras": nested.to_string() });
        Ok(Check::verdict("algebras", direct == nested, data.clone(), || data))
    })?);
    for x in [&mn, &nn] {
        report.checks.push(unit_law(&format!("unit-law/{x}"), &l.env.presentations[x], bounds, ctx.cap)?);
    }
    Ok(())
}

fn files_or_corpus(args: &[String], subs: &[&str]) -> Result<Vec<std::path::PathBuf>, Usage> {
    if !args.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for s in subs {
        out.extend(corpus_files(s)?);
    }
    Ok(out)
}

fn load_all(args: &[String], subs: &[&str], ctx: &Ctx, report: &mut Report) -> Result<Vec<Loaded>, Stop> {
    let mut out = Vec::new();
    let attempt_load = |r: Result<Loaded, Stop>, report: &mut Report, out: &mut Vec<Loaded>| -> Result<(), Stop> {
        match r {
            Ok(l) => out.push(l),
            Err(Stop::Truncated { file, budget, reason }) => {
                report.checks.push(Check::truncated(format!("load/{file}"), json!({ "reason": reason }), budget as u128));
            }
            Err(e) => return Err(e),
        }
        Ok(())
    };
    for a in args {
        attempt_load(load(a, ctx.budget), report, &mut out)?;
    }
    for p in files_or_corpus(args, subs)? {
        attempt_load(load_path(&p, ctx.budget), report, &mut out)?;
    }
    Ok(out)
}

pub fn probe(args: &[String], ctx: &Ctx, report: &mut Report) -> Result<(), Stop> {
    let ls = load_all(args, &["operads", "profunctors"], ctx, report)?;
    for l in &ls {
        if !l.names("mprof").is_empty() {
            let (pn, qn) = pair_of(l, "mprof")?;
            let name = format!("operadic/{}", l.stem);
            report.checks.push(attempt(&name, l.env.size, ctx.cap, || {
                let r = normality_instance(&l.stem, &l.env.mprofs[&pn], &l.env.mprofs[&qn], l.env.size, ctx.cap)?;
                let mut data = verdict_json(&r.verdict);
                data["entries"] = json!(r.entries.len());
                data["module_map"] = json!(r.module_map);
                // the verdict itself is the outcome; only a broken map is a failure
                Ok(Check::verdict(&name, r.module_map, data, || json!("interchange map is not a module map")))
            })?);
        } else {
            let (pn, qn) = pair_of(l, "prof")?;
            let name = format!("control/{}", l.stem);
            report.checks.push(attempt(&name, l.env.budget, ctx.cap, || {
                let ok = profunctor_control(&l.env.profs[&pn], &l.env.profs[&qn], l.env.budget)?;
                let data = json!({ "verdict": if ok { "invertible" } else { "not invertible" } });
                Ok(Check::verdict(&name, ok, data.clone(), || data))
            })?);
        }
    }
    Ok(())
}

/// Spreads `k` picks over `0..n`, starting at a seed-dependent offset.
fn seeded_sample(n: usize, k: usize, seed: u64) -> Vec<usize> {
    if n <= k {
        return (0..n).collect();
    }
    let offset = (seed % n as u64) as usize;
    let mut picks: Vec<usize> = (0..k).map(|i| (offset + i * n / k) % n).collect();
    picks.sort_unstable();
    picks
}

pub const PAIR_SAMPLE: usize = 64;

pub fn laws(args: &[String], ctx: &Ctx, report: &mut Report) -> Result<(), Stop> {
    let ls = load_all(args, &["categories", "discrete", "profunctors", "operads"], ctx, report)?;
    let mut all_cats: Vec<(String, FinCategory, usize)> = Vec::new();
    for l in &ls {
        let env = &l.env;
        let s = &l.stem;
        for name in l.names("cat") {
            let c = &env.cats[&name];
            report.checks.push(attempt(&format!("{s}/{name}/axioms"), env.budget, ctx.cap, || {
                c.check_axioms()?;
                Ok(Check::pass(format!("{s}/{name}/axioms"), shape(c)))
            })?);
            report.checks.push(unit_laws(&format!("{s}/{name}/hom-unit-laws"), &Profunctor::identity(c), env.budget, ctx.cap)?);
            all_cats.push((format!("{s}/{name}"), c.clone(), env.budget));
        }
        for name in l.names("prof") {
            let p = &env.profs[&name];
            report.checks.push(attempt(&format!("{s}/{name}/axioms"), env.budget, ctx.cap, || {
                p.check_axioms()?;
                Ok(Check::pass(format!("{s}/{name}/axioms"), json!({ "elements": p.num_elements() })))
            })?);
            report.checks.push(unit_laws(&format!("{s}/{name}/unit-laws"), p, env.budget, ctx.cap)?);
        }
        for name in l.names("mcat") {
            let m = &env.mcats[&name];
            report.checks.push(attempt(&format!("{s}/{name}/axioms"), env.size, ctx.cap, || {
                m.check_axioms()?;
                Ok(Check::pass(format!("{s}/{name}/axioms"), json!({ "operations_by_arity": m.ops.counts(), "certified": m.certified })))
            })?);
            let pres = env.presentations.get(&name).cloned().unwrap_or_else(|| m.to_presentation());
            report.checks.push(unit_law(&format!("{s}/{name}/tensor-unit"), &pres, Bounds::new(env.size, env.trunc), ctx.cap)?);
        }
        for name in l.names("mprof") {
            let p: &MultiProfunctor = &env.mprofs[&name];
            report.checks.push(attempt(&format!("{s}/{name}/axioms"), env.size, ctx.cap, || {
                p.check_axioms()?;
                Ok(Check::pass(format!("{s}/{name}/axioms"), json!({ "elements_by_arity": p.seq.counts(), "complete": p.complete })))
            })?);
            let id = MultiProfunctor::identity(&p.tgt);
            report.checks.push(attempt(&format!("{s}/{name}/composite-with-identity"), env.size, ctx.cap, || {
                let c = multiprof_compose(&id, p, ctx.cap)?;
                c.profunctor.check_axioms()?;
                let (a, b) = (c.profunctor.seq.counts(), p.seq.counts());
                Ok(Check::verdict(format!("{s}/{name}/composite-with-identity"), a == b, json!({ "elements_by_arity": a }), || json!({ "composite": a, "original": b })))
            })?);
        }
    }
    // the commuting tensor of every sampled pair against the product
    let n = all_cats.len();
    for k in seeded_sample(n * n, PAIR_SAMPLE, ctx.seed) {
        let ((na, a, budget), (nb, b, _)) = (&all_cats[k / n], &all_cats[k % n]);
        let name = format!("product/{na}/{nb}");
        report.checks.push(attempt(&name, *budget, ctx.cap, || {
            let t = commuting_tensor(a, b, *budget)?;
            let ok = t.to_product.is_isomorphism() && t.category.num_morphisms() == a.num_morphisms() * b.num_morphisms();
            Ok(Check::verdict(&name, ok, shape(&t.category), || json!({ "tensor": shape(&t.category), "product": shape(&t.product) })))
        })?);
    }
    Ok(())
}
