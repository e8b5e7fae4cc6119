//! The Boardman–Vogt tensor of presented multicategories, relabelling
//! isomorphisms between tables, and algebras in finite sets.

use super::multicat::PresentedMulticat;
use super::sym::{grid_list, Profile};
use super::term::{Generator, Presentation, Relation, Signature, Term};
use crate::error::{Error, Result};
use crate::finkit::{check_cap, Odometer};

/// `M ⊗ N`: colours are pairs `a·|B| + b`; generator `φ⊗b` for each
/// generator `φ` of `M` and colour `b` of `N` comes first, then `a⊗ψ`.
#[derive(Debug, Clone)]
pub struct BvTensor {
    pub presentation: Presentation,
    pub left_colours: usize,
    pub right_colours: usize,
    left_gens: usize,
    right_gens: usize,
}

impl BvTensor {
    pub fn colour(&self, a: usize, b: usize) -> usize {
        a * self.right_colours + b
    }

    /// Generator `φ⊗b`.
    pub fn left(&self, phi: usize, b: usize) -> usize {
        phi * self.right_colours + b
    }

    /// Generator `a⊗ψ`.
    pub fn right(&self, a: usize, psi: usize) -> usize {
        self.left_gens * self.right_colours + a * self.right_gens + psi
    }
}

fn lift(t: &Term, gen: &dyn Fn(usize) -> usize) -> Term {
    match t {
        Term::Var(v) => Term::Var(*v),
        Term::Op(g, ch) => Term::Op(gen(*g), ch.iter().map(|c| lift(c, gen)).collect()),
    }
}

pub fn bv_tensor(m: &Presentation, n: &Presentation) -> Result<BvTensor> {
    let (ca, cb) = (m.colours(), n.colours());
    let (gm, gn) = (m.sig.generators.len(), n.sig.generators.len());
    let t = BvTensor {
        presentation: Presentation::free(Signature { colours: 0, generators: vec![] }),
        left_colours: ca,
        right_colours: cb,
        left_gens: gm,
        right_gens: gn,
    };
    let mut generators = Vec::with_capacity(gm * cb + ca * gn);
    for phi in &m.sig.generators {
        for b in 0..cb {
            let p = &phi.profile;
            let inputs = p.inputs.iter().map(|&a| t.colour(a, b)).collect();
            generators.push(Generator { name: format!("{}*{b}", phi.name), profile: Profile::new(inputs, t.colour(p.output, b)) });
        }
    }
    for a in 0..ca {
        for psi in &n.sig.generators {
            let p = &psi.profile;
            let inputs = p.inputs.iter().map(|&b| t.colour(a, b)).collect();
            generators.push(Generator { name: format!("{a}*{}", psi.name), profile: Profile::new(inputs, t.colour(a, p.output)) });
        }
    }
    let mut relations = Vec::new();
    for b in 0..cb {
        for r in &m.relations {
            let g = |phi: usize| t.left(phi, b);
            let inputs = r.profile.inputs.iter().map(|&a| t.colour(a, b)).collect();
            relations.push(Relation { lhs: lift(&r.lhs, &g), rhs: lift(&r.rhs, &g), profile: Profile::new(inputs, t.colour(r.profile.output, b)) });
        }
    }
    for a in 0..ca {
        for r in &n.relations {
            let g = |psi: usize| t.right(a, psi);
            let inputs = r.profile.inputs.iter().map(|&b| t.colour(a, b)).collect();
            relations.push(Relation { lhs: lift(&r.lhs, &g), rhs: lift(&r.rhs, &g), profile: Profile::new(inputs, t.colour(a, r.profile.output)) });
        }
    }
    // interchange: φ after ψ's on each input equals ψ after φ's, leaves on the grid
    for (phi, gphi) in m.sig.generators.iter().enumerate() {
        for (psi, gpsi) in n.sig.generators.iter().enumerate() {
            let (pa, pb) = (&gphi.profile, &gpsi.profile);
            let (k, l) = (pa.arity(), pb.arity());
            let var = |i: usize, j: usize| Term::Var(j * k + i);
            let lhs = Term::Op(
                t.left(phi, pb.output),
                (0..k).map(|i| Term::Op(t.right(pa.inputs[i], psi), (0..l).map(|j| var(i, j)).collect())).collect(),
            );
            let rhs = Term::Op(
                t.right(pa.output, psi),
                (0..l).map(|j| Term::Op(t.left(phi, pb.inputs[j]), (0..k).map(|i| var(i, j)).collect())).collect(),
            );
            let profile = Profile::new(grid_list(&pa.inputs, &pb.inputs, cb), t.colour(pa.output, pb.output));
            relations.push(Relation { lhs, rhs, profile });
        }
    }
    let sig = Signature::new(ca * cb, generators)?;
    let mut presentation = Presentation::new(sig, relations)?;
    presentation.reducing = (m.reducing || gm == 0) && (n.reducing || gn == 0) && (gm == 0 || gn == 0);
    Ok(BvTensor { presentation, ..t })
}

/// Compares two tables through a relabelling of colours and generators:
/// every operation of `from` must land on an operation of `to`, bijectively,
/// preserving the action and every defined substitution. Also checks that
/// each relation of `from` is sent to an equality of `to` when in bounds.
pub fn relabelling_is_isomorphism(
    from: &PresentedMulticat,
    to: &PresentedMulticat,
    colour: &dyn Fn(usize) -> usize,
    gen: &dyn Fn(usize) -> Term,
) -> Result<bool> {
    let tf = &from.table;
    let tt = &to.table;
    if tf.len() != tt.len() || tf.colours != tt.colours {
        return Ok(false);
    }
    let image = |t: &Term, p: &Profile| -> Option<usize> {
        let q = Profile::new(p.inputs.iter().map(|&c| colour(c)).collect(), colour(p.output));
        to.op(&t.map_generators(gen), &q)
    };
    let mut map = Vec::with_capacity(tf.len());
    for f in 0..tf.len() {
        let (t, p) = from.closure.rep(f);
        match image(t, p) {
            Some(g) => map.push(g),
            None => return Ok(false),
        }
    }
    let mut hit = vec![false; tt.len()];
    for &g in &map {
        if std::mem::replace(&mut hit[g], true) {
            return Ok(false);
        }
    }
    for f in 0..tf.len() {
        for s in crate::perm::Perm::all(tf.arity(f)) {
            if map[tf.act(f, &s)] != tt.act(map[f], &s) {
                return Ok(false);
            }
        }
        for i in 0..tf.arity(f) {
            for g in tf.composable(f, i) {
                if let (Some(h), Some(h2)) = (tf.compose(f, i, g), tt.compose(map[f], i, map[g])) {
                    if map[h] != h2 {
                        return Ok(false);
                    }
                }
            }
        }
    }
    for r in &from.presentation.relations {
        if let (Some(a), Some(b)) = (image(&r.lhs, &r.profile), image(&r.rhs, &r.profile)) {
            if a != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The swap `M ⊗ N → N ⊗ M` on colours and generators.
pub fn swap_relabelling<'a>(mn: &'a BvTensor, nm: &'a BvTensor) -> (impl Fn(usize) -> usize + 'a, impl Fn(usize) -> Term + 'a) {
    let cb = mn.right_colours;
    let colour = move |c: usize| nm.colour(c % cb, c / cb);
    let gen = move |g: usize| {
        let split = mn.left_gens * cb;
        let (target, arity) = if g < split {
            let (phi, b) = (g / cb, g % cb);
            (nm.right(b, phi), mn.presentation.sig.generators[g].profile.arity())
        } else {
            let r = g - split;
            let (a, psi) = (r / mn.right_gens, r % mn.right_gens);
            (nm.left(psi, a), mn.presentation.sig.generators[g].profile.arity())
        };
        Term::generator(target, arity)
    };
    (colour, gen)
}

/// An algebra: a finite carrier per colour and a table per generator,
/// indexed by input tuples with the last coordinate fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub carriers: Vec<usize>,
    pub ops: Vec<Vec<usize>>,
}

fn tuple_index(carriers: &[usize], colours: &[usize], values: &[usize]) -> usize {
    colours.iter().zip(values).fold(0, |acc, (&c, &v)| acc * carriers[c] + v)
}

impl Algebra {
    /// Value of a tree on an assignment of its variables.
    pub fn eval(&self, sig: &Signature, t: &Term, values: &[usize]) -> usize {
        match t {
            Term::Var(v) => values[*v],
            Term::Op(g, ch) => {
                let args: Vec<usize> = ch.iter().map(|c| self.eval(sig, c, values)).collect();
                self.ops[*g][tuple_index(&self.carriers, &sig.generators[*g].profile.inputs, &args)]
            }
        }
    }

    pub fn satisfies(&self, sig: &Signature, r: &Relation) -> bool {
        let radices = r.profile.inputs.iter().map(|&c| self.carriers[c]).collect();
        Odometer::new(radices).all(|vals| self.eval(sig, &r.lhs, &vals) == self.eval(sig, &r.rhs, &vals))
    }
}

/// All algebras of a presentation on the given carriers, by backtracking
/// over generators and checking each relation once its generators are set.
pub fn enumerate_algebras(p: &Presentation, carriers: &[usize], cap: u128) -> Result<Vec<Algebra>> {
    if carriers.len() != p.colours() {
        return Err(Error::Shape("one carrier per colour is required".into()));
    }
    let sig = &p.sig;
    let ng = sig.generators.len();
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); ng + 1];
    for (k, r) in p.relations.iter().enumerate() {
        let last = r.lhs.generators().into_iter().chain(r.rhs.generators()).max().map_or(0, |g| g + 1);
        due[last].push(k);
    }
    let shapes: Vec<(usize, usize)> = sig
        .generators
        .iter()
        .map(|g| (g.profile.inputs.iter().map(|&c| carriers[c]).product::<usize>(), carriers[g.profile.output]))
        .collect();
    for &(dom, cod) in &shapes {
        check_cap(crate::finkit::count_functions(dom, cod), cap)?;
    }
    let mut alg = Algebra { carriers: carriers.to_vec(), ops: vec![Vec::new(); ng] };
    if !due[0].iter().all(|&k| alg.satisfies(sig, &p.relations[k])) {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut visited: u128 = 0;
    search(p, &shapes, &due, 0, &mut alg, &mut out, &mut visited, cap)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: &Presentation,
    shapes: &[(usize, usize)],
    due: &[Vec<usize>],
    g: usize,
    alg: &mut Algebra,
    out: &mut Vec<Algebra>,
    visited: &mut u128,
    cap: u128,
) -> Result<()> {
    if g == shapes.len() {
        out.push(alg.clone());
        return Ok(());
    }
    let (dom, cod) = shapes[g];
    for table in Odometer::new(vec![cod; dom]) {
        *visited += 1;
        check_cap(*visited, cap)?;
        alg.ops[g] = table;
        if due[g + 1].iter().all(|&k| alg.satisfies(&p.sig, &p.relations[k])) {
            search(p, shapes, due, g + 1, alg, out, visited, cap)?;
        }
    }
    alg.ops[g].clear();
    Ok(())
}

/// Counts pairs (an `N`-algebra structure on each row `X[a][·]`, an
/// `M`-algebra structure on each column `X[·][b]`) in which every
/// operation of `M` is a homomorphism of `N`-algebras.
pub fn count_algebras_in_algebras(m: &Presentation, n: &Presentation, carriers: &[Vec<usize>], cap: u128) -> Result<u128> {
    let (ca, cb) = (m.colours(), n.colours());
    if carriers.len() != ca || carriers.iter().any(|row| row.len() != cb) {
        return Err(Error::Shape("carriers must form a colours-by-colours grid".into()));
    }
    let rows: Vec<Vec<Algebra>> = (0..ca).map(|a| enumerate_algebras(n, &carriers[a], cap)).collect::<Result<_>>()?;
    let cols: Vec<Vec<Algebra>> = (0..cb)
        .map(|b| enumerate_algebras(m, &(0..ca).map(|a| carriers[a][b]).collect::<Vec<_>>(), cap))
        .collect::<Result<_>>()?;
    let radices: Vec<usize> = rows.iter().chain(cols.iter()).map(Vec::len).collect();
    let total = radices.iter().try_fold(1u128, |acc, &k| acc.checked_mul(k as u128)).unwrap_or(u128::MAX);
    check_cap(total, cap)?;
    let mut count = 0u128;
    for pick in Odometer::new(radices) {
        let row: Vec<&Algebra> = (0..ca).map(|a| &rows[a][pick[a]]).collect();
        let col: Vec<&Algebra> = (0..cb).map(|b| &cols[b][pick[ca + b]]).collect();
        if interchanges(m, n, carriers, &row, &col) {
            count += 1;
        }
    }
    Ok(count)
}

/// `φ_b(ψ_{a_1}(x_{1,·}), …) = ψ_a(φ_{b_1}(x_{·,1}), …)` on every matrix `x`.
fn interchanges(m: &Presentation, n: &Presentation, carriers: &[Vec<usize>], row: &[&Algebra], col: &[&Algebra]) -> bool {
    for (phi, gphi) in m.sig.generators.iter().enumerate() {
        for (psi, gpsi) in n.sig.generators.iter().enumerate() {
            let (pa, pb) = (&gphi.profile, &gpsi.profile);
            let (k, l) = (pa.arity(), pb.arity());
            let radices: Vec<usize> = (0..l).flat_map(|j| (0..k).map(move |i| (i, j))).map(|(i, j)| carriers[pa.inputs[i]][pb.inputs[j]]).collect();
            for x in Odometer::new(radices) {
                let at = |i: usize, j: usize| x[j * k + i];
                // ψ on each row, then φ in column b
                let inner: Vec<usize> = (0..k)
                    .map(|i| {
                        let vals: Vec<usize> = (0..l).map(|j| at(i, j)).collect();
                        row[pa.inputs[i]].ops[psi][tuple_index(&carriers[pa.inputs[i]], &pb.inputs, &vals)]
                    })
                    .collect();
                let colb: Vec<usize> = (0..m.colours()).map(|a| carriers[a][pb.output]).collect();
                let lhs = col[pb.output].ops[phi][tuple_index(&colb, &pa.inputs, &inner)];
                // φ on each column, then ψ in row a
                let inner: Vec<usize> = (0..l)
                    .map(|j| {
                        let vals: Vec<usize> = (0..k).map(|i| at(i, j)).collect();
                        let colj: Vec<usize> = (0..m.colours()).map(|a| carriers[a][pb.inputs[j]]).collect();
                        col[pb.inputs[j]].ops[phi][tuple_index(&colj, &pa.inputs, &vals)]
                    })
                    .collect();
                let rhs = row[pa.output].ops[psi][tuple_index(&carriers[pa.output], &pb.inputs, &inner)];
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}
