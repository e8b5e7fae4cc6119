//! Finite sets as canonical index ranges, functions between them, and the
//! limits and colimits everything else is built from.

use crate::error::{shape, Error, Result};

/// Default cap on the number of candidates an exhaustive enumeration may visit.
pub const DEFAULT_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSet {
    pub size: usize,
    pub labels: Option<Vec<String>>,
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size, labels: None }
    }

    pub fn labelled<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return shape(format!("duplicate label {l:?}"));
            }
        }
        Ok(FinSet { size: labels.len(), labels: Some(labels) })
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(ls) => ls.iter().position(|l| l == label),
            None => label.parse().ok().filter(|&i| i < self.size),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinFunction {
    pub dom: FinSet,
    pub cod: FinSet,
    pub table: Vec<usize>,
}

impl FinFunction {
    pub fn new(dom: usize, cod: usize, table: Vec<usize>) -> Result<Self> {
        Self::between(FinSet::new(dom), FinSet::new(cod), table)
    }

    pub fn between(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size {
            return shape(format!("table has {} entries for a domain of size {}", table.len(), dom.size));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= cod.size) {
            return shape(format!("value {bad} outside codomain of size {}", cod.size));
        }
        Ok(FinFunction { dom, cod, table })
    }

    pub fn identity(n: usize) -> Self {
        FinFunction { dom: FinSet::new(n), cod: FinSet::new(n), table: (0..n).collect() }
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Result<Self> {
        Self::new(dom, cod, vec![value; dom])
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinFunction) -> Result<FinFunction> {
        if f.cod.size != self.dom.size {
            return shape(format!("cannot compose: {} -> {} after {} -> {}", self.dom.size, self.cod.size, f.dom.size, f.cod.size));
        }
        Ok(FinFunction {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            table: f.table.iter().map(|&x| self.table[x]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.size];
        self.table.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size == self.cod.size && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFunction> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.dom.size];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Some(FinFunction { dom: self.cod.clone(), cod: self.dom.clone(), table: inv })
    }
}

/// Disjoint-set forest over `0..n`.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn push(&mut self) -> usize {
        let n = self.parent.len();
        self.parent.push(n);
        n
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `x` and `y`, keeping the smaller root.
    /// Returns false if they were already together.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    pub fn into_partition(mut self) -> Partition {
        let class_of = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition { carrier: FinSet::new(self.parent.len()), class_of }
    }
}

/// An equivalence relation on a finite set, each element mapped to the
/// least element of its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub carrier: FinSet,
    pub class_of: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition { carrier: FinSet::new(n), class_of: (0..n).collect() }
    }

    pub fn representatives(&self) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&x| self.class_of[x] == x).collect()
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().enumerate().filter(|&(x, &r)| x == r).count()
    }

    /// Quotient set (classes numbered by increasing representative) and the projection onto it.
    pub fn quotient(&self) -> (FinSet, FinFunction) {
        let mut number = vec![usize::MAX; self.class_of.len()];
        let mut count = 0;
        for x in 0..self.class_of.len() {
            if self.class_of[x] == x {
                number[x] = count;
                count += 1;
            }
        }
        let table = self.class_of.iter().map(|&r| number[r]).collect();
        let q = FinSet::new(count);
        (q.clone(), FinFunction { dom: self.carrier.clone(), cod: q, table })
    }
}

fn check_parallel(f: &FinFunction, g: &FinFunction) -> Result<()> {
    if f.dom.size != g.dom.size || f.cod.size != g.cod.size {
        return shape(format!(
            "not a parallel pair: {} -> {} and {} -> {}",
            f.dom.size, f.cod.size, g.dom.size, g.cod.size
        ));
    }
    Ok(())
}

/// Quotient of the common codomain by the equivalence generated by `f(x) ~ g(x)`.
pub fn coequalize(f: &FinFunction, g: &FinFunction) -> Result<(FinSet, FinFunction)> {
    check_parallel(f, g)?;
    let mut uf = UnionFind::new(f.cod.size);
    for x in 0..f.dom.size {
        uf.union(f.table[x], g.table[x]);
    }
    let (q, mut proj) = uf.into_partition().quotient();
    proj.dom = f.cod.clone();
    Ok((q, proj))
}

/// The subset on which `f` and `g` agree, with its inclusion.
pub fn equalize(f: &FinFunction, g: &FinFunction) -> Result<(FinSet, FinFunction)> {
    check_parallel(f, g)?;
    let table: Vec<usize> = (0..f.dom.size).filter(|&x| f.table[x] == g.table[x]).collect();
    let e = FinSet::new(table.len());
    Ok((e.clone(), FinFunction { dom: e, cod: f.dom.clone(), table }))
}

/// Lexicographic indexing of tuples: the last coordinate varies fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub sizes: Vec<usize>,
    pub total: usize,
}

pub fn product(sizes: &[usize]) -> Product {
    Product { sizes: sizes.to_vec(), total: sizes.iter().product() }
}

impl Product {
    pub fn encode(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.sizes.len());
        coords.iter().zip(&self.sizes).fold(0, |acc, (&c, &s)| {
            debug_assert!(c < s);
            acc * s + c
        })
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.sizes.len()];
        for k in (0..self.sizes.len()).rev() {
            coords[k] = index % self.sizes[k];
            index /= self.sizes[k];
        }
        coords
    }

    pub fn projections(&self) -> Vec<FinFunction> {
        (0..self.sizes.len())
            .map(|k| FinFunction {
                dom: FinSet::new(self.total),
                cod: FinSet::new(self.sizes[k]),
                table: (0..self.total).map(|i| self.decode(i)[k]).collect(),
            })
            .collect()
    }
}

/// Tagged disjoint union; summand `k` occupies `offsets[k]..offsets[k] + sizes[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coproduct {
    pub sizes: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

pub fn coproduct(sizes: &[usize]) -> Coproduct {
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut total = 0;
    for &s in sizes {
        offsets.push(total);
        total += s;
    }
    Coproduct { sizes: sizes.to_vec(), offsets, total }
}

impl Coproduct {
    pub fn inject(&self, k: usize, i: usize) -> usize {
        debug_assert!(i < self.sizes[k]);
        self.offsets[k] + i
    }

    pub fn locate(&self, x: usize) -> (usize, usize) {
        let k = match self.offsets.binary_search(&x) {
            Ok(mut k) => {
                // skip empty summands sharing the offset
                while self.sizes[k] == 0 {
                    k += 1;
                }
                k
            }
            Err(k) => k - 1,
        };
        (k, x - self.offsets[k])
    }

    pub fn injections(&self) -> Vec<FinFunction> {
        (0..self.sizes.len())
            .map(|k| FinFunction {
                dom: FinSet::new(self.sizes[k]),
                cod: FinSet::new(self.total),
                table: (0..self.sizes[k]).map(|i| self.offsets[k] + i).collect(),
            })
            .collect()
    }
}

/// `base^exp`, saturating.
pub fn count_functions(dom: usize, cod: usize) -> u128 {
    let mut n: u128 = 1;
    for _ in 0..dom {
        n = n.saturating_mul(cod as u128);
        if n == 0 {
            break;
        }
    }
    n
}

pub fn check_cap(needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::Budget { needed, cap })
    } else {
        Ok(())
    }
}

/// All functions `dom -> cod` in lexicographic order of their tables.
pub fn enumerate_functions(dom: &FinSet, cod: &FinSet, cap: u128) -> Result<FunctionIter> {
    check_cap(count_functions(dom.size, cod.size), cap)?;
    let next = if dom.size > 0 && cod.size == 0 { None } else { Some(vec![0; dom.size]) };
    Ok(FunctionIter { dom: dom.clone(), cod: cod.clone(), next })
}

pub struct FunctionIter {
    dom: FinSet,
    cod: FinSet,
    next: Option<Vec<usize>>,
}

impl Iterator for FunctionIter {
    type Item = FinFunction;

    fn next(&mut self) -> Option<FinFunction> {
        let table = self.next.take()?;
        let mut succ = table.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.cod.size {
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(FinFunction { dom: self.dom.clone(), cod: self.cod.clone(), table })
    }
}

/// Odometer over a mixed-radix tuple space, last coordinate fastest.
/// Yields nothing when any radix is zero.
pub struct Odometer {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Odometer {
    pub fn new(radices: Vec<usize>) -> Self {
        let next = if radices.iter().any(|&r| r == 0) { None } else { Some(vec![0; radices.len()]) };
        Odometer { radices, next }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut k = succ.len();
        while k > 0 {
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.radices[k] {
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(dom: usize, cod: usize, t: &[usize]) -> FinFunction {
        FinFunction::new(dom, cod, t.to_vec()).unwrap()
    }

    #[test]
    fn coequalize_examples() {
        let id = FinFunction::identity(2);
        let (q, p) = coequalize(&id, &id).unwrap();
        assert_eq!(q.size, 2);
        assert_eq!(p.table, vec![0, 1]);

        let (q, _) = coequalize(&f(1, 2, &[0]), &f(1, 2, &[1])).unwrap();
        assert_eq!(q.size, 1);

        let (q, p) = coequalize(&f(2, 3, &[0, 1]), &f(2, 3, &[1, 2])).unwrap();
        assert_eq!(q.size, 1);
        assert_eq!(p.table, vec![0, 0, 0]);

        assert!(coequalize(&f(1, 2, &[0]), &f(2, 2, &[0, 1])).is_err());
    }

    #[test]
    fn equalize_examples() {
        let id = FinFunction::identity(2);
        assert_eq!(equalize(&id, &id).unwrap().0.size, 2);
        let c = FinFunction::constant(2, 2, 0).unwrap();
        let (e, inc) = equalize(&id, &c).unwrap();
        assert_eq!(e.size, 1);
        assert_eq!(inc.table, vec![0]);
        let (e, _) = equalize(&f(3, 2, &[0, 1, 0]), &f(3, 2, &[0, 0, 0])).unwrap();
        assert_eq!(e.size, 2);
    }

    #[test]
    fn products_and_coproducts() {
        assert_eq!(product(&[]).total, 1);
        let p = product(&[2, 3]);
        assert_eq!(p.total, 6);
        assert_eq!(p.encode(&[1, 2]), 5);
        assert_eq!(p.encode(&[1, 0]), 3);
        let c = coproduct(&[2, 3]);
        assert_eq!(c.total, 5);
        assert_eq!(c.offsets, vec![0, 2]);
        assert_eq!(c.locate(2), (1, 0));
        let c = coproduct(&[0, 2, 0, 1]);
        assert_eq!(c.locate(0), (1, 0));
        assert_eq!(c.locate(2), (3, 0));
    }

    #[test]
    fn function_enumeration_order() {
        let all: Vec<Vec<usize>> = enumerate_functions(&FinSet::new(2), &FinSet::new(2), DEFAULT_CAP)
            .unwrap()
            .map(|f| f.table)
            .collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(enumerate_functions(&FinSet::new(0), &FinSet::new(0), 10).unwrap().count(), 1);
        assert_eq!(enumerate_functions(&FinSet::new(1), &FinSet::new(3), 10).unwrap().count(), 3);
        assert_eq!(enumerate_functions(&FinSet::new(2), &FinSet::new(0), 10).unwrap().count(), 0);
        assert!(matches!(
            enumerate_functions(&FinSet::new(5), &FinSet::new(3), 100),
            Err(Error::Budget { needed: 243, cap: 100 })
        ));
    }

    #[test]
    fn labels_must_be_distinct() {
        assert!(FinSet::labelled(["a", "a"]).is_err());
        let s = FinSet::labelled(["x", "y"]).unwrap();
        assert_eq!(s.index_of("y"), Some(1));
    }
}
