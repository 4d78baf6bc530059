//! Equivalence relations on `0..n` in canonical least-representative form.

use std::fmt;

use crate::algebra::{for_each_tuple, FiniteAlgebra};
use crate::error::{Error, Result};

/// A partition of `0..n`; `rep[i]` is the least element of the class of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rep: Vec<usize>,
}

impl Partition {
    pub fn identity(n: usize) -> Self {
        Partition {
            rep: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Partition { rep: vec![0; n] }
    }

    /// Validates `rep[rep[i]] == rep[i]` and `rep[i] <= i`.
    pub fn from_reps(rep: Vec<usize>) -> Result<Self> {
        for (i, &r) in rep.iter().enumerate() {
            if r > i || rep[r] != r {
                return Err(Error::Invalid(format!(
                    "representative array is not canonical at index {i}"
                )));
            }
        }
        Ok(Partition { rep })
    }

    /// Canonicalizes arbitrary class labels.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let rep = (0..labels.len())
            .map(|i| (0..=i).find(|&j| labels[j] == labels[i]).unwrap())
            .collect();
        Partition { rep }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        for b in blocks {
            for w in b.windows(2) {
                if w[0] >= n || w[1] >= n {
                    return Err(Error::Invalid("block element out of range".into()));
                }
                uf.union(w[0], w[1]);
            }
        }
        Ok(uf.to_partition())
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    pub fn reps(&self) -> &[usize] {
        &self.rep
    }

    #[inline]
    pub fn rep(&self, x: usize) -> usize {
        self.rep[x]
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rep[x] == self.rep[y]
    }

    /// Least elements of the classes, ascending.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.rep.len()).filter(|&i| self.rep[i] == i).collect()
    }

    pub fn num_blocks(&self) -> usize {
        (0..self.rep.len()).filter(|&i| self.rep[i] == i).count()
    }

    /// For each element, the index of its class among `representatives()`.
    pub fn class_indices(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.rep.len()];
        let mut next = 0;
        for i in 0..self.rep.len() {
            if self.rep[i] == i {
                index[i] = next;
                next += 1;
            }
        }
        self.rep.iter().map(|&r| index[r]).collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let idx = self.class_indices();
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &c) in idx.iter().enumerate() {
            blocks[c].push(i);
        }
        blocks
    }

    pub fn class_of(&self, x: usize) -> Vec<usize> {
        (0..self.rep.len()).filter(|&y| self.rep[y] == self.rep[x]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rep.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn is_total(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// `self ⊆ other` as relations.
    pub fn le(&self, other: &Partition) -> bool {
        self.rep.len() == other.rep.len()
            && (0..self.rep.len()).all(|i| other.related(i, self.rep[i]))
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let labels: Vec<(usize, usize)> = self.rep.iter().copied().zip(other.rep.iter().copied()).collect();
        Partition::from_labels(&labels)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.rep.len());
        for i in 0..self.rep.len() {
            uf.union(i, self.rep[i]);
            uf.union(i, other.rep[i]);
        }
        uf.to_partition()
    }

    /// Pairs `(x, y)` with `x < y` in the relation.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rep.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if self.related(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// First operation application witnessing that this is not a congruence.
    pub fn compatibility_failure(&self, a: &FiniteAlgebra) -> Option<(usize, Vec<usize>)> {
        let n = a.size();
        for op in 0..a.signature().len() {
            let k = a.signature().arity(op);
            let mut bad = None;
            let mut moved = vec![0; k];
            for_each_tuple(n, k, |args| {
                if bad.is_some() {
                    return;
                }
                for (m, &x) in moved.iter_mut().zip(args) {
                    *m = self.rep[x];
                }
                if !self.related(a.apply(op, args), a.apply(op, &moved)) {
                    bad = Some(args.to_vec());
                }
            });
            if bad.is_some() {
                return bad.map(|args| (op, args));
            }
        }
        None
    }

    pub fn is_congruence_of(&self, a: &FiniteAlgebra) -> bool {
        self.rep.len() == a.size() && self.compatibility_failure(a).is_none()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_partition(self))
    }
}

/// Union-find with path halving; roots are not canonical until
/// [`UnionFind::to_partition`].
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn from_partition(p: &Partition) -> Self {
        UnionFind {
            parent: p.rep.clone(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `x` and `y`; returns whether they were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // keep the smaller index as root
        if rx < ry {
            self.parent[ry] = rx;
        } else {
            self.parent[rx] = ry;
        }
        true
    }

    pub fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    pub fn to_partition(mut self) -> Partition {
        let n = self.parent.len();
        let rep = (0..n).map(|i| self.find(i)).collect();
        // roots are always the least element because union keeps the min
        Partition { rep }
    }
}
