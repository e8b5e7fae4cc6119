//! Permutations of `0..n` and the list actions built on them.

use std::fmt;

/// A permutation stored as its image vector: `p[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    p: Vec<usize>,
}

impl Perm {
    pub fn new(p: Vec<usize>) -> Option<Perm> {
        let mut seen = vec![false; p.len()];
        for &x in &p {
            if x >= p.len() || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Perm { p })
    }

    pub fn identity(n: usize) -> Perm {
        Perm { p: (0..n).collect() }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(i, j);
        Perm { p }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.p.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.p[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.p
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm { p: other.p.iter().map(|&i| self.p[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut q = vec![0; self.p.len()];
        for (i, &x) in self.p.iter().enumerate() {
            q[x] = i;
        }
        Perm { p: q }
    }

    /// All permutations of `0..n` in lexicographic order of image vectors.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { p: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Position of this permutation in `Perm::all(n)`.
    pub fn rank(&self) -> usize {
        let n = self.p.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.p[i + 1..].iter().filter(|&&x| x < self.p[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: usize) -> Perm {
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        Perm { p: digits.into_iter().map(|d| pool.remove(d)).collect() }
    }

    /// Block sum: `self` on the first `self.len()` points, `other` on the rest.
    pub fn block_sum(&self, other: &Perm) -> Perm {
        let k = self.len();
        let mut p = self.p.clone();
        p.extend(other.p.iter().map(|&x| x + k));
        Perm { p }
    }

    pub fn block_sum_all(parts: &[Perm]) -> Perm {
        parts.iter().fold(Perm::identity(0), |acc, p| acc.block_sum(p))
    }

    /// Permutes consecutive blocks of the given sizes: the block in
    /// position `i` of the result is block `self(i)` of the input,
    /// matching the list action `permute_list`.
    pub fn permute_blocks(&self, sizes: &[usize]) -> Perm {
        assert_eq!(self.len(), sizes.len());
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &s in sizes {
            offsets.push(acc);
            acc += s;
        }
        let mut p = Vec::with_capacity(acc);
        for i in 0..self.len() {
            let b = self.p[i];
            p.extend(offsets[b]..offsets[b] + sizes[b]);
        }
        Perm { p }
    }

    /// Permutation of an `m × n` grid stored with the first index fastest
    /// (position `j*m + i` holds `(i, j)`), acting by `self` on the first
    /// index and `other` on the second.
    pub fn grid(&self, other: &Perm) -> Perm {
        let (m, n) = (self.len(), other.len());
        let mut p = vec![0; m * n];
        for j in 0..n {
            for i in 0..m {
                p[j * m + i] = other.p[j] * m + self.p[i];
            }
        }
        Perm { p }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.p.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Right action on lists: the result at position `i` is `list[σ(i)]`.
pub fn permute_list<T: Clone>(list: &[T], sigma: &Perm) -> Vec<T> {
    assert_eq!(list.len(), sigma.len());
    (0..list.len()).map(|i| list[sigma.apply(i)].clone()).collect()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_and_rank_agree() {
        for n in 0..6 {
            let all = Perm::all(n);
            assert_eq!(all.len(), factorial(n));
            for (r, p) in all.iter().enumerate() {
                assert_eq!(p.rank(), r);
                assert_eq!(&Perm::unrank(n, r), p);
            }
        }
    }

    #[test]
    fn list_action_is_a_right_action() {
        let list = vec!['a', 'b', 'c', 'd'];
        for s in Perm::all(4) {
            for t in Perm::all(4) {
                let lhs = permute_list(&permute_list(&list, &s), &t);
                let rhs = permute_list(&list, &s.compose(&t));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn block_permutation_matches_list_action() {
        let sizes = [2, 1, 3];
        let list: Vec<usize> = (0..6).collect();
        let blocks = vec![vec![0, 1], vec![2], vec![3, 4, 5]];
        for s in Perm::all(3) {
            let flat: Vec<usize> = permute_list(&blocks, &s).concat();
            assert_eq!(permute_list(&list, &s.permute_blocks(&sizes)), flat);
        }
    }

    #[test]
    fn grid_is_a_homomorphism() {
        for s1 in Perm::all(2) {
            for t1 in Perm::all(3) {
                for s2 in Perm::all(2) {
                    for t2 in Perm::all(3) {
                        assert_eq!(s1.grid(&t1).compose(&s2.grid(&t2)), s1.compose(&s2).grid(&t1.compose(&t2)));
                    }
                }
            }
        }
    }
}
