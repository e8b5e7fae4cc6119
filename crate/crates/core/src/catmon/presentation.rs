//! Categories presented by a graph and relations, saturated by coset
//! enumeration: from each object we build the right Cayley graph of the
//! morphisms out of it, merging nodes whenever a relation forces two
//! paths to agree. A table that closes with every relation holding at
//! every node is exactly the presented category; otherwise the result is a
//! reported truncation.

use super::FinCategory;
use crate::error::{shape, Result};
use crate::finkit::{FinSet, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub vertices: FinSet,
    pub edges: Vec<(usize, usize)>,
    pub edge_labels: Vec<String>,
}

impl Graph {
    pub fn new(vertices: FinSet, edges: Vec<(usize, usize)>) -> Graph {
        let edge_labels = (0..edges.len()).map(|e| format!("e{e}")).collect();
        Graph { vertices, edges, edge_labels }
    }

    pub fn labelled(vertices: FinSet, edges: Vec<(usize, usize, String)>) -> Graph {
        let edge_labels = edges.iter().map(|e| e.2.clone()).collect();
        Graph { vertices, edges: edges.into_iter().map(|e| (e.0, e.1)).collect(), edge_labels }
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.size;
        let mut indeg = vec![0; n];
        for &(_, t) in &self.edges {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.edges {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == n
    }

    /// Length of the longest path, if the graph is acyclic.
    pub fn longest_path(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        let n = self.vertices.size;
        let mut best = vec![0usize; n];
        for _ in 0..n {
            for &(s, t) in &self.edges {
                best[t] = best[t].max(best[s] + 1);
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }
}

/// A composable sequence of edges starting at `start`, first edge applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn identity(start: usize) -> Path {
        Path { start, edges: Vec::new() }
    }

    pub fn end(&self, g: &Graph) -> usize {
        self.edges.last().map_or(self.start, |&e| g.edges[e].1)
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut at = self.start;
        for &e in &self.edges {
            if e >= g.edges.len() || g.edges[e].0 != at {
                return false;
            }
            at = g.edges[e].1;
        }
        at < g.vertices.size
    }

    pub fn render(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            return format!("id({})", g.vertices.label(self.start));
        }
        // applicative order: last edge first
        self.edges.iter().rev().map(|&e| g.edge_labels[e].as_str()).collect::<Vec<_>>().join(".")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub graph: Graph,
    pub relations: Vec<(Path, Path)>,
    /// Maximum word length explored during saturation.
    pub budget: usize,
}

impl Presentation {
    pub fn new(graph: Graph, relations: Vec<(Path, Path)>, budget: usize) -> Result<Presentation> {
        for (u, v) in &relations {
            if !u.is_valid(&graph) || !v.is_valid(&graph) {
                return shape("relation uses an ill-typed path");
            }
            if u.start != v.start || u.end(&graph) != v.end(&graph) {
                return shape(format!("relation {} = {} is not between parallel paths", u.render(&graph), v.render(&graph)));
            }
            if u.edges.len().max(v.edges.len()) > budget {
                return shape(format!("budget {budget} is shorter than a relation word"));
            }
        }
        Ok(Presentation { graph, relations, budget })
    }

    pub fn free(graph: Graph, budget: usize) -> Presentation {
        Presentation { graph, relations: Vec::new(), budget }
    }
}

/// Hard cap on Cayley-graph nodes, independent of the word-length budget.
pub const MAX_NODES: usize = 200_000;

/// A closed saturation: the presented category, a representative word for
/// each morphism, and the image of each generating edge.
#[derive(Debug, Clone)]
pub struct PresentedCategory {
    pub category: FinCategory,
    pub words: Vec<Path>,
    pub edge_image: Vec<usize>,
}

/// What a saturation that did not close reached before running out of budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub budget: usize,
    /// Representative words of the classes found, all of length ≤ budget.
    pub words: Vec<Path>,
    /// Words at which an extension by a generator was left undefined.
    pub frontier: Vec<Path>,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub enum Saturation {
    Closed(Box<PresentedCategory>),
    Truncated(Truncation),
}

impl Saturation {
    pub fn into_closed(self) -> Option<PresentedCategory> {
        match self {
            Saturation::Closed(p) => Some(*p),
            Saturation::Truncated(_) => None,
        }
    }

    pub fn closed(&self) -> Option<&PresentedCategory> {
        match self {
            Saturation::Closed(p) => Some(p),
            Saturation::Truncated(_) => None,
        }
    }

    pub fn is_truncated(&self) -> bool {
        matches!(self, Saturation::Truncated(_))
    }
}

struct Node {
    start: usize,
    obj: usize,
    word: Vec<usize>,
    next: Vec<Option<usize>>,
}

struct Cayley<'a> {
    pres: &'a Presentation,
    outs: Vec<Vec<usize>>,
    slot: Vec<usize>,
    nodes: Vec<Node>,
    uf: UnionFind,
    refused: bool,
    capped: bool,
    rels_at: Vec<Vec<usize>>,
}

impl<'a> Cayley<'a> {
    fn new(pres: &'a Presentation) -> Self {
        let g = &pres.graph;
        let mut outs = vec![Vec::new(); g.vertices.size];
        let mut slot = vec![0; g.edges.len()];
        for (e, &(s, _)) in g.edges.iter().enumerate() {
            slot[e] = outs[s].len();
            outs[s].push(e);
        }
        let mut rels_at = vec![Vec::new(); g.vertices.size];
        for (i, (u, _)) in pres.relations.iter().enumerate() {
            rels_at[u.start].push(i);
        }
        Cayley { pres, outs, slot, nodes: Vec::new(), uf: UnionFind::new(0), refused: false, capped: false, rels_at }
    }

    fn add_node(&mut self, start: usize, obj: usize, word: Vec<usize>) -> usize {
        let id = self.uf.push();
        self.nodes.push(Node { start, obj, word, next: vec![None; self.outs[obj].len()] });
        id
    }

    fn follow(&mut self, n: usize, e: usize) -> Option<usize> {
        let n = self.uf.find(n);
        let t = self.nodes[n].next[self.slot[e]]?;
        Some(self.uf.find(t))
    }

    fn define(&mut self, n: usize, e: usize) -> Option<usize> {
        let n = self.uf.find(n);
        if let Some(t) = self.follow(n, e) {
            return Some(t);
        }
        if self.nodes[n].word.len() >= self.pres.budget {
            self.refused = true;
            return None;
        }
        if self.nodes.len() >= MAX_NODES {
            self.capped = true;
            return None;
        }
        let mut word = self.nodes[n].word.clone();
        word.push(e);
        let (start, obj) = (self.nodes[n].start, self.pres.graph.edges[e].1);
        let m = self.add_node(start, obj, word);
        self.nodes[n].next[self.slot[e]] = Some(m);
        Some(m)
    }

    fn trace(&mut self, n: usize, path: &[usize], define: bool) -> Option<usize> {
        let mut cur = self.uf.find(n);
        for &e in path {
            cur = if define { self.define(cur, e)? } else { self.follow(cur, e)? };
        }
        Some(cur)
    }

    fn coincidence(&mut self, a: usize, b: usize) -> bool {
        let mut queue = vec![(a, b)];
        let mut merged = false;
        while let Some((x, y)) = queue.pop() {
            let (x, y) = (self.uf.find(x), self.uf.find(y));
            if x == y {
                continue;
            }
            merged = true;
            let (keep, kill) = if x < y { (x, y) } else { (y, x) };
            self.uf.union(keep, kill);
            if self.nodes[kill].word.len() < self.nodes[keep].word.len() {
                self.nodes[keep].word = self.nodes[kill].word.clone();
            }
            let slots = std::mem::take(&mut self.nodes[kill].next);
            for (s, t) in slots.into_iter().enumerate() {
                if let Some(t) = t {
                    match self.nodes[keep].next[s] {
                        Some(t2) => queue.push((t, t2)),
                        None => self.nodes[keep].next[s] = Some(t),
                    }
                }
            }
        }
        merged
    }

    fn alive(&mut self, n: usize) -> bool {
        self.uf.find(n) == n
    }

    fn scan(&mut self, n: usize, define: bool) -> bool {
        let obj = self.nodes[n].obj;
        let mut changed = false;
        for k in 0..self.rels_at[obj].len() {
            let r = self.rels_at[obj][k];
            let pres = self.pres;
            let (u, v) = &pres.relations[r];
            let eu = self.trace(n, &u.edges, define);
            let ev = self.trace(n, &v.edges, define);
            if let (Some(x), Some(y)) = (eu, ev) {
                changed |= self.coincidence(x, y);
            }
            if !self.alive(n) {
                break;
            }
        }
        changed
    }

    fn fill(&mut self, n: usize) -> bool {
        let obj = self.nodes[n].obj;
        let mut changed = false;
        for k in 0..self.outs[obj].len() {
            let e = self.outs[obj][k];
            if !self.alive(n) {
                break;
            }
            if self.follow(n, e).is_none() && self.define(n, e).is_some() {
                changed = true;
            }
        }
        changed
    }

    fn run(&mut self) {
        for x in 0..self.pres.graph.vertices.size {
            self.add_node(x, x, Vec::new());
        }
        let mut i = 0;
        while i < self.nodes.len() && !self.capped {
            if self.alive(i) {
                self.scan(i, true);
                if self.alive(i) {
                    self.fill(i);
                }
            }
            i += 1;
        }
        loop {
            let mut changed = false;
            let mut n = 0;
            while n < self.nodes.len() && !self.capped {
                if self.alive(n) {
                    changed |= self.fill(n);
                    if self.alive(n) {
                        changed |= self.scan(n, true);
                    }
                }
                n += 1;
            }
            if !changed || self.capped {
                break;
            }
        }
    }

    fn is_complete(&mut self) -> bool {
        for n in 0..self.nodes.len() {
            if !self.alive(n) {
                continue;
            }
            if self.nodes[n].next.iter().any(Option::is_none) {
                return false;
            }
            let obj = self.nodes[n].obj;
            for k in 0..self.rels_at[obj].len() {
                let pres = self.pres;
                let (u, v) = &pres.relations[self.rels_at[obj][k]];
                let eu = self.trace(n, &u.edges, false);
                let ev = self.trace(n, &v.edges, false);
                if eu.is_none() || eu != ev {
                    return false;
                }
            }
        }
        true
    }
}

/// Saturates a presentation within its word-length budget.
pub fn saturate(pres: &Presentation) -> Result<Saturation> {
    let mut cg = Cayley::new(pres);
    cg.run();
    let g = &pres.graph;
    let live: Vec<usize> = (0..cg.nodes.len()).filter(|&n| cg.alive(n)).collect();
    // order morphisms by start object, then by discovery
    let mut order = live.clone();
    order.sort_by_key(|&n| (cg.nodes[n].start, n));

    if !cg.is_complete() {
        let words = order.iter().map(|&n| Path { start: cg.nodes[n].start, edges: cg.nodes[n].word.clone() }).collect();
        let mut frontier = Vec::new();
        for &n in &order {
            let obj = cg.nodes[n].obj;
            for k in 0..cg.outs[obj].len() {
                if cg.nodes[n].next[k].is_none() {
                    let mut w = cg.nodes[n].word.clone();
                    w.push(cg.outs[obj][k]);
                    frontier.push(Path { start: cg.nodes[n].start, edges: w });
                }
            }
        }
        let reason = if cg.capped {
            format!("node cap {MAX_NODES} reached")
        } else {
            format!("words of length {} still produce new morphisms", pres.budget)
        };
        return Ok(Saturation::Truncated(Truncation { budget: pres.budget, words, frontier, reason }));
    }

    let mut index = vec![usize::MAX; cg.nodes.len()];
    for (i, &n) in order.iter().enumerate() {
        index[n] = i;
    }
    let m = order.len();
    let src: Vec<usize> = order.iter().map(|&n| cg.nodes[n].start).collect();
    let tgt: Vec<usize> = order.iter().map(|&n| cg.nodes[n].obj).collect();
    let ids: Vec<usize> = (0..g.vertices.size).map(|x| index[cg.uf.find(x)]).collect();
    let words: Vec<Path> = order.iter().map(|&n| Path { start: cg.nodes[n].start, edges: cg.nodes[n].word.clone() }).collect();
    let mut table = vec![usize::MAX; m * m];
    for f in 0..m {
        for g2 in 0..m {
            if src[g2] == tgt[f] {
                let end = cg.trace(order[f], &words[g2].edges, false).expect("complete table");
                table[g2 * m + f] = index[end];
            }
        }
    }
    let labels: Vec<String> = words.iter().map(|w| w.render(g)).collect();
    let mors = FinSet::labelled(labels).unwrap_or_else(|_| FinSet::new(m));
    let category = FinCategory::new(g.vertices.clone(), mors, src, tgt, ids, |g2, f| table[g2 * m + f])?;
    let edge_image = (0..g.edges.len())
        .map(|e| {
            let root = cg.uf.find(g.edges[e].0);
            index[cg.follow(root, e).expect("complete table")]
        })
        .collect();
    Ok(Saturation::Closed(Box::new(PresentedCategory { category, words, edge_image })))
}

/// Free category on a graph: exact when the graph is acyclic, otherwise
/// saturated up to `budget` and reported as truncated.
pub fn free_category(graph: Graph, budget: usize) -> Result<Saturation> {
    let budget = graph.longest_path().map_or(budget, |l| l.max(budget));
    saturate(&Presentation::free(graph, budget))
}

impl PresentedCategory {
    /// Morphism denoted by a path of generators.
    pub fn evaluate(&self, path: &Path) -> usize {
        let c = &self.category;
        path.edges.iter().fold(c.id(path.start), |acc, &e| c.comp(self.edge_image[e], acc))
    }
}
