//! Congruence generation and the structure theory built on it:
//! monoliths, congruence classes, maximal separating congruences, subdirect
//! decompositions, syntactic congruences and the division preorder.

use crate::algebra::{for_each_tuple, quotient, FiniteAlgebra, Mapping};
use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};

/// Calls `f(x, y)` for every basic translation step: `x` in position `i` of a
/// symbol whose other arguments are fixed, producing `y`.
fn for_each_translation_image(a: &FiniteAlgebra, x: usize, mut f: impl FnMut(usize)) {
    let n = a.size();
    for op in 0..a.signature().len() {
        let k = a.signature().arity(op);
        if k == 0 {
            continue;
        }
        let mut args = vec![0; k];
        for pos in 0..k {
            for_each_tuple(n, k - 1, |rest| {
                args[..pos].copy_from_slice(&rest[..pos]);
                args[pos] = x;
                args[pos + 1..].copy_from_slice(&rest[pos..]);
                f(a.apply(op, &args));
            });
        }
    }
}

/// Closes `uf` under all basic translations, given that only the pairs in
/// `work` may be unprocessed.
fn close(a: &FiniteAlgebra, uf: &mut UnionFind, mut work: Vec<(usize, usize)>) {
    let n = a.size();
    let sig = a.signature();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    while let Some((x, y)) = work.pop() {
        for op in 0..sig.len() {
            let k = sig.arity(op);
            if k == 0 {
                continue;
            }
            xs.resize(k, 0);
            ys.resize(k, 0);
            for pos in 0..k {
                for_each_tuple(n, k - 1, |rest| {
                    xs[..pos].copy_from_slice(&rest[..pos]);
                    xs[pos] = x;
                    xs[pos + 1..].copy_from_slice(&rest[pos..]);
                    ys.copy_from_slice(&xs);
                    ys[pos] = y;
                    let (u, v) = (a.apply(op, &xs), a.apply(op, &ys));
                    if uf.union(u, v) {
                        work.push((u, v));
                    }
                });
            }
        }
    }
}

/// The least congruence of `a` containing every pair in `pairs`.
pub fn cg(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Partition {
    cg_extend(a, &Partition::identity(a.size()), pairs)
}

/// The least congruence containing the congruence `theta` and `pairs`.
pub fn cg_extend(a: &FiniteAlgebra, theta: &Partition, pairs: &[(usize, usize)]) -> Partition {
    let mut uf = UnionFind::from_partition(theta);
    let mut work = Vec::new();
    for &(x, y) in pairs {
        assert!(x < a.size() && y < a.size(), "pair ({x}, {y}) outside the universe");
        if uf.union(x, y) {
            work.push((x, y));
        }
    }
    close(a, &mut uf, work);
    uf.to_partition()
}

/// The monolith of a subdirectly irreducible algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monolith {
    /// Lexicographically least pair of distinct elements in every nontrivial
    /// congruence.
    pub pair: (usize, usize),
    pub congruence: Partition,
}

/// The monolith, or `None` when `a` is not subdirectly irreducible (including
/// the one-element algebra).
pub fn monolith(a: &FiniteAlgebra) -> Option<Monolith> {
    let n = a.size();
    let mut meet = Partition::total(n);
    for c in 0..n {
        for d in c + 1..n {
            meet = meet.meet(&cg(a, &[(c, d)]));
            if meet.is_identity() {
                return None;
            }
        }
    }
    if n < 2 {
        return None;
    }
    let pair = meet.pairs()[0];
    Some(Monolith {
        pair,
        congruence: cg(a, &[pair]),
    })
}

/// Whether `class` is exactly one class of some congruence; equivalently of
/// `cg(a, class × class)`.
pub fn is_congruence_class(a: &FiniteAlgebra, class: &[usize]) -> Result<bool> {
    let (&first, _) = class
        .split_first()
        .ok_or_else(|| Error::Precondition("congruence class test needs a nonempty set".into()))?;
    if let Some(&bad) = class.iter().find(|&&c| c >= a.size()) {
        return Err(Error::Invalid(format!("element {bad} outside the universe")));
    }
    let pairs: Vec<(usize, usize)> = class.iter().map(|&c| (first, c)).collect();
    let theta = cg(a, &pairs);
    let mut want = class.to_vec();
    want.sort_unstable();
    want.dedup();
    Ok(theta.class_of(first) == want)
}

/// A congruence maximal among those not containing `(x, y)`.
///
/// Greedy over pairs `(c, d)`, `c < d`, in lexicographic order: a pair is
/// added (with its generated closure) whenever that keeps `x` and `y` apart.
pub fn max_separating_congruence(a: &FiniteAlgebra, x: usize, y: usize) -> Result<Partition> {
    if x == y {
        return Err(Error::Precondition("separated elements must differ".into()));
    }
    let n = a.size();
    if x >= n || y >= n {
        return Err(Error::Invalid("element outside the universe".into()));
    }
    let mut theta = Partition::identity(n);
    loop {
        let mut changed = false;
        for c in 0..n {
            for d in c + 1..n {
                if theta.related(c, d) {
                    continue;
                }
                let bigger = cg_extend(a, &theta, &[(c, d)]);
                if !bigger.related(x, y) {
                    theta = bigger;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(theta);
        }
    }
}

/// One subdirectly irreducible factor of a decomposition.
#[derive(Debug, Clone)]
pub struct SiFactor {
    /// First pair (in lexicographic order) whose separating congruence this is.
    pub pair: (usize, usize),
    pub congruence: Partition,
    pub quotient: FiniteAlgebra,
    pub projection: Mapping,
}

/// Subdirect decomposition into subdirectly irreducible quotients, one per
/// distinct maximal separating congruence. Empty for a one-element algebra.
pub fn subdirect_decomposition(a: &FiniteAlgebra) -> Result<Vec<SiFactor>> {
    let n = a.size();
    let mut out: Vec<SiFactor> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let theta = max_separating_congruence(a, x, y)?;
            if out.iter().any(|f| f.congruence == theta) {
                continue;
            }
            let (q, projection) = quotient(a, &theta)?;
            if monolith(&q).is_none() {
                return Err(Error::Internal(format!(
                    "quotient separating ({x}, {y}) is not subdirectly irreducible"
                )));
            }
            out.push(SiFactor {
                pair: (x, y),
                congruence: theta,
                quotient: q,
                projection,
            });
        }
    }
    Ok(out)
}

/// The largest congruence for which `set` is a union of classes.
pub fn syntactic_congruence(a: &FiniteAlgebra, set: &[usize]) -> Partition {
    let n = a.size();
    let mut inside = vec![false; n];
    for &s in set {
        inside[s] = true;
    }
    let mut current = Partition::from_labels(&inside);
    loop {
        // label each element by its class and the classes of all its
        // translation images, in a fixed translation order
        let labels: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut l = vec![current.rep(x)];
                for_each_translation_image(a, x, |y| l.push(current.rep(y)));
                l
            })
            .collect();
        let next = Partition::from_labels(&labels);
        if next == current {
            debug_assert!(current.is_congruence_of(a));
            return current;
        }
        current = next;
    }
}

/// The division preorder: `a ⇝ b` when `b` is reachable from `a` by basic
/// translations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionRelation {
    reach: Vec<Vec<bool>>,
}

impl DivisionRelation {
    pub fn size(&self) -> usize {
        self.reach.len()
    }

    pub fn divides(&self, a: usize, b: usize) -> bool {
        self.reach[a][b]
    }

    /// Antisymmetry of the preorder.
    pub fn is_order(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (a + 1..n).all(|b| !(self.reach[a][b] && self.reach[b][a])))
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.reach
    }
}

pub fn division_preorder(a: &FiniteAlgebra) -> DivisionRelation {
    let n = a.size();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let mut s = Vec::new();
            for_each_translation_image(a, x, |y| s.push(y));
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let reach = (0..n)
        .map(|start| {
            let mut seen = vec![false; n];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &succ[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen
        })
        .collect();
    DivisionRelation { reach }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_product;
    use crate::fixtures;

    #[test]
    fn small_generation() {
        let s = fixtures::semilattice2();
        assert_eq!(cg(&s, &[]), Partition::identity(2));
        assert_eq!(cg(&s, &[(0, 1)]), Partition::total(2));
        let c = fixtures::chain_semilattice(3);
        // collapsing 1 and 2 does not touch 0
        assert_eq!(cg(&c, &[(2, 1)]).reps(), &[0, 1, 1]);
    }

    #[test]
    fn monoliths() {
        let s = fixtures::semilattice2();
        let m = monolith(&s).unwrap();
        assert_eq!(m.pair, (0, 1));
        assert!(m.congruence.is_total());
        let sq = direct_product(&[s.clone(), s.clone()]).unwrap();
        assert!(monolith(&sq).is_none());
        assert!(monolith(&fixtures::trivial(s.signature())).is_none());
    }

    #[test]
    fn classes() {
        let c = fixtures::chain_semilattice(3);
        assert!(is_congruence_class(&c, &[0, 1, 2]).unwrap());
        assert!(is_congruence_class(&c, &[1]).unwrap());
        assert!(is_congruence_class(&c, &[1, 2]).unwrap());
        assert!(!is_congruence_class(&c, &[0, 2]).unwrap());
        assert!(is_congruence_class(&c, &[]).is_err());
    }

    #[test]
    fn separating_in_square() {
        let s = fixtures::semilattice2();
        let sq = direct_product(&[s.clone(), s.clone()]).unwrap();
        assert_eq!(max_separating_congruence(&s, 0, 1).unwrap(), Partition::identity(2));
        let theta = max_separating_congruence(&sq, 0, 3).unwrap();
        // greedy merging keeps only the top apart
        assert_eq!(theta.reps(), &[0, 0, 0, 3]);
        assert!(max_separating_congruence(&sq, 1, 1).is_err());
    }

    #[test]
    fn decompositions() {
        let s = fixtures::semilattice2();
        let sq = direct_product(&[s.clone(), s.clone()]).unwrap();
        let parts = subdirect_decomposition(&sq).unwrap();
        // one factor per pair class, redundant ones included
        assert_eq!(parts.len(), 3);
        for p in &parts {
            assert!(crate::hom::is_isomorphic(&p.quotient, &s).is_some());
        }
        assert_eq!(subdirect_decomposition(&fixtures::chain_semilattice(3)).unwrap().len(), 2);
        assert_eq!(subdirect_decomposition(&s).unwrap().len(), 1);
    }

    #[test]
    fn syntactic() {
        let s = fixtures::semilattice2();
        assert!(syntactic_congruence(&s, &[]).is_total());
        assert!(syntactic_congruence(&s, &[0, 1]).is_total());
        assert!(syntactic_congruence(&s, &[1]).is_identity());
    }

    #[test]
    fn division() {
        let g = fixtures::cyclic_group(2);
        let d = division_preorder(&g);
        assert!(d.divides(0, 1) && d.divides(1, 0) && !d.is_order());
        assert!(division_preorder(&fixtures::monoid2()).is_order());
        assert!(division_preorder(&fixtures::trivial(g.signature())).is_order());
    }
}
