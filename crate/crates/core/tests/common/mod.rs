//! Brute-force reference implementations shared by the integration tests.
//! Each oracle avoids the library's engines and works from definitions.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use ualg::algebra::{for_each_tuple, FiniteAlgebra, RelStructure};

/// Every partition of `0..n` as a canonical label vector (restricted growth
/// strings, so labels are class indices in order of first appearance).
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max {
            cur.push(l);
            go(i + 1, n, if l == max { max + 1 } else { max }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        go(0, n, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Compatibility by definition: related arguments give related values.
pub fn is_congruence(a: &FiniteAlgebra, labels: &[usize]) -> bool {
    let n = a.size();
    for f in 0..a.signature().len() {
        let k = a.signature().arity(f);
        let mut ok = true;
        for_each_tuple(n, k, |xs| {
            if !ok {
                return;
            }
            for_each_tuple(n, k, |ys| {
                if ok && xs.iter().zip(ys).all(|(&x, &y)| labels[x] == labels[y]) && labels[a.apply(f, xs)] != labels[a.apply(f, ys)] {
                    ok = false;
                }
            });
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Compatibility via unary translations only (equivalent for equivalence
/// relations, and much faster).
pub fn is_congruence_fast(a: &FiniteAlgebra, labels: &[usize]) -> bool {
    let n = a.size();
    for f in 0..a.signature().len() {
        let k = a.signature().arity(f);
        let mut ok = true;
        for_each_tuple(n, k, |xs| {
            if !ok {
                return;
            }
            let mut ys = xs.to_vec();
            for i in 0..k {
                for y in 0..n {
                    if labels[y] == labels[xs[i]] {
                        ys[i] = y;
                        if labels[a.apply(f, &ys)] != labels[a.apply(f, xs)] {
                            ok = false;
                        }
                    }
                }
                ys[i] = xs[i];
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

/// The congruence lattice as label vectors.
pub fn congruence_lattice(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
    all_partitions(a.size()).into_iter().filter(|p| is_congruence_fast(a, p)).collect()
}

pub fn related(p: &[usize], x: usize, y: usize) -> bool {
    p[x] == p[y]
}

/// `p ⊆ q` as relations.
pub fn below(p: &[usize], q: &[usize]) -> bool {
    (0..p.len()).all(|x| (0..p.len()).all(|y| p[x] != p[y] || q[x] == q[y]))
}

/// Canonical labels of the intersection of a family (the total relation
/// when the family is empty).
pub fn intersection(n: usize, family: &[&Vec<usize>]) -> Vec<usize> {
    let keys: Vec<Vec<usize>> = (0..n).map(|x| family.iter().map(|p| p[x]).collect()).collect();
    canon(&keys)
}

pub fn canon<T: PartialEq>(keys: &[T]) -> Vec<usize> {
    let mut firsts: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(keys.len());
    for (i, k) in keys.iter().enumerate() {
        match firsts.iter().position(|&j| keys[j] == *k) {
            Some(c) => out.push(c),
            None => {
                out.push(firsts.len());
                firsts.push(i);
            }
        }
    }
    out
}

/// Least congruence containing `pairs`: meet of all containing congruences.
pub fn cg_oracle(lattice: &[Vec<usize>], n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let containing: Vec<&Vec<usize>> = lattice
        .iter()
        .filter(|p| pairs.iter().all(|&(x, y)| p[x] == p[y]))
        .collect();
    intersection(n, &containing)
}

/// Monolith: meet of all nontrivial congruences, if that is nontrivial.
pub fn monolith_oracle(lattice: &[Vec<usize>], n: usize) -> Option<Vec<usize>> {
    let nontrivial: Vec<&Vec<usize>> = lattice
        .iter()
        .filter(|p| (0..n).any(|x| (0..n).any(|y| x != y && p[x] == p[y])))
        .collect();
    if nontrivial.is_empty() {
        return None;
    }
    let m = intersection(n, &nontrivial);
    let trivial = (0..n).all(|x| (0..n).all(|y| x == y || m[x] != m[y]));
    (!trivial).then_some(m)
}

/// Whether `set` is a class of some congruence.
pub fn class_oracle(lattice: &[Vec<usize>], set: &[usize]) -> bool {
    lattice.iter().any(|p| {
        let l = p[set[0]];
        (0..p.len()).all(|x| (p[x] == l) == set.contains(&x))
    })
}

/// The congruences maximal among those separating `x` and `y`.
pub fn maximal_separating(lattice: &[Vec<usize>], x: usize, y: usize) -> Vec<&Vec<usize>> {
    let sep: Vec<&Vec<usize>> = lattice.iter().filter(|p| p[x] != p[y]).collect();
    sep.iter()
        .filter(|p| !sep.iter().any(|q| q != *p && below(p, q)))
        .copied()
        .collect()
}

/// Reachability by transitive closure (Warshall), reflexive.
pub fn reach_matrix(g: &RelStructure) -> Vec<Vec<bool>> {
    let n = g.size();
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for t in g.relation(0) {
        r[t[0]][t[1]] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// Digraph on `n` vertices whose edge set is given by the bits of `mask`
/// (bit `u * n + v` for edge `(u, v)`).
pub fn digraph_from_mask(n: usize, mask: u32) -> RelStructure {
    let edges: Vec<(usize, usize)> = (0..n * n)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b / n, b % n))
        .collect();
    RelStructure::digraph(n, &edges).unwrap()
}

/// Every map `0..n → 0..m` as value vectors.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_tuple(m, n, |t| out.push(t.to_vec()));
    out
}

pub fn is_hom(a: &FiniteAlgebra, b: &FiniteAlgebra, h: &[usize]) -> bool {
    (0..a.signature().len()).all(|f| {
        let mut ok = true;
        for_each_tuple(a.size(), a.signature().arity(f), |xs| {
            let ys: Vec<usize> = xs.iter().map(|&x| h[x]).collect();
            if h[a.apply(f, xs)] != b.apply(f, &ys) {
                ok = false;
            }
        });
        ok
    })
}

/// All homomorphisms `a → b` by enumeration.
pub fn all_homs(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
    all_maps(a.size(), b.size()).into_iter().filter(|h| is_hom(a, b, h)).collect()
}

pub fn is_rel_hom(a: &RelStructure, b: &RelStructure, h: &[usize]) -> bool {
    a.relations()
        .iter()
        .zip(b.relations())
        .all(|(ra, rb)| ra.iter().all(|t| rb.contains(&t.iter().map(|&x| h[x]).collect::<Vec<_>>())))
}

/// Some homomorphism between relational structures, by enumeration.
pub fn rel_hom_exists(a: &RelStructure, b: &RelStructure) -> bool {
    if a.size() == 0 {
        return true;
    }
    all_maps(a.size(), b.size()).iter().any(|h| is_rel_hom(a, b, h))
}

/// The subalgebra of `a × b` generated by `pairs` and the constants, as a
/// plain fixpoint over a set.
pub fn generated_pairs(a: &FiniteAlgebra, b: &FiniteAlgebra, pairs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut set: BTreeSet<(usize, usize)> = pairs.iter().copied().collect();
    let sig = a.signature();
    loop {
        let elems: Vec<(usize, usize)> = set.iter().copied().collect();
        let before = set.len();
        for f in 0..sig.len() {
            for_each_tuple(elems.len(), sig.arity(f), |idx| {
                let xs: Vec<usize> = idx.iter().map(|&i| elems[i].0).collect();
                let ys: Vec<usize> = idx.iter().map(|&i| elems[i].1).collect();
                set.insert((a.apply(f, &xs), b.apply(f, &ys)));
            });
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Whether the generated pair set is the graph of a bijection.
pub fn partial_iso(a: &FiniteAlgebra, b: &FiniteAlgebra, pairs: &[(usize, usize)]) -> bool {
    let g = generated_pairs(a, b, pairs);
    let left: HashSet<usize> = g.iter().map(|p| p.0).collect();
    let right: HashSet<usize> = g.iter().map(|p| p.1).collect();
    left.len() == g.len() && right.len() == g.len()
}

/// Exhaustive `k`-round game from raw move lists, no memo.
pub fn duplicator_wins(a: &FiniteAlgebra, b: &FiniteAlgebra, moves: &mut Vec<(usize, usize)>, k: usize) -> bool {
    if !partial_iso(a, b, moves) {
        return false;
    }
    if k == 0 {
        return true;
    }
    for x in 0..a.size() {
        let answered = (0..b.size()).any(|y| {
            moves.push((x, y));
            let w = duplicator_wins(a, b, moves, k - 1);
            moves.pop();
            w
        });
        if !answered {
            return false;
        }
    }
    for y in 0..b.size() {
        let answered = (0..a.size()).any(|x| {
            moves.push((x, y));
            let w = duplicator_wins(a, b, moves, k - 1);
            moves.pop();
            w
        });
        if !answered {
            return false;
        }
    }
    true
}

/// The set of `k`-ary term functions over `ks`, as value vectors over all
/// assignments, found by saturating the projections under the operations.
pub fn term_function_count(ks: &[FiniteAlgebra], k: usize) -> usize {
    let assignments: Vec<(usize, Vec<usize>)> = ks
        .iter()
        .enumerate()
        .flat_map(|(i, a)| {
            let mut v = Vec::new();
            for_each_tuple(a.size(), k, |t| v.push((i, t.to_vec())));
            v
        })
        .collect();
    let mut funcs: HashSet<Vec<usize>> = (0..k)
        .map(|j| assignments.iter().map(|(_, t)| t[j]).collect())
        .collect();
    let sig = ks[0].signature();
    loop {
        let known: Vec<Vec<usize>> = funcs.iter().cloned().collect();
        let before = funcs.len();
        for f in 0..sig.len() {
            for_each_tuple(known.len(), sig.arity(f), |idx| {
                let v: Vec<usize> = (0..assignments.len())
                    .map(|c| {
                        let args: Vec<usize> = idx.iter().map(|&i| known[i][c]).collect();
                        ks[assignments[c].0].apply(f, &args)
                    })
                    .collect();
                funcs.insert(v);
            });
        }
        if funcs.len() == before {
            return funcs.len();
        }
    }
}

/// Random algebras over `sig` with universe size drawn from `sizes`.
pub fn arb_algebra(
    sig: ualg::algebra::Signature,
    sizes: std::ops::RangeInclusive<usize>,
) -> impl proptest::strategy::Strategy<Value = FiniteAlgebra> {
    use proptest::prelude::*;
    sizes.prop_flat_map(move |n| {
        let sig = sig.clone();
        let tables: Vec<_> = (0..sig.len())
            .map(|f| proptest::collection::vec(0..n, n.pow(sig.arity(f) as u32)))
            .collect();
        tables.prop_map(move |t| FiniteAlgebra::new("rand", sig.clone(), n, t).unwrap())
    })
}

/// Random digraphs on `1..=max_n` vertices.
pub fn arb_digraph(max_n: usize) -> impl proptest::strategy::Strategy<Value = RelStructure> {
    use proptest::prelude::*;
    (1..=max_n).prop_flat_map(|n| (Just(n), 0u32..(1u32 << (n * n)))).prop_map(|(n, m)| digraph_from_mask(n, m))
}
