//! Small named algebras used throughout examples, tests and the CLI.

use crate::algebra::{FiniteAlgebra, Signature};

fn binary(name: &str, symbol: &str, n: usize, op: impl Fn(usize, usize) -> usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(name, Signature::from_pairs(&[(symbol, 2)]), n, |_, a| op(a[0], a[1]))
        .expect("fixture tables are in range")
}

/// The 2-element semilattice `{0 < 1}` with meet `^`.
pub fn semilattice2() -> FiniteAlgebra {
    chain_semilattice(2).with_name("S2")
}

/// The `n`-element chain `0 < 1 < … < n-1` with meet `^`.
pub fn chain_semilattice(n: usize) -> FiniteAlgebra {
    binary(&format!("chain{n}"), "^", n, |x, y| x.min(y))
}

/// Semilattice on `0..n` from a meet table given as a closure.
pub fn semilattice_from(name: &str, n: usize, meet: impl Fn(usize, usize) -> usize) -> FiniteAlgebra {
    binary(name, "^", n, meet)
}

/// `x * y = x`.
pub fn left_zero(n: usize) -> FiniteAlgebra {
    binary(&format!("leftzero{n}"), "*", n, |x, _| x)
}

/// `x * y = y`.
pub fn right_zero(n: usize) -> FiniteAlgebra {
    binary(&format!("rightzero{n}"), "*", n, |_, y| y)
}

/// The cyclic group of order `n` written additively as `*`.
pub fn cyclic_group(n: usize) -> FiniteAlgebra {
    binary(&format!("C{n}"), "*", n, |x, y| (x + y) % n)
}

/// The monoid `{1, a}` with `a² = a`; element 0 is the identity.
pub fn monoid2() -> FiniteAlgebra {
    binary("M2", "*", 2, |x, y| x.max(y))
}

/// The unary algebra `f(x) = x + 1 mod n`.
pub fn unar_cycle(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(
        format!("cycle{n}"),
        Signature::from_pairs(&[("f", 1)]),
        n,
        |_, a| (a[0] + 1) % n,
    )
    .expect("fixture tables are in range")
}

/// One-element algebra of the given signature.
pub fn trivial(signature: &Signature) -> FiniteAlgebra {
    FiniteAlgebra::from_fn("trivial", signature.clone(), 1, |_, _| 0).expect("one element")
}

/// Renames operation symbol `from` to `to`, keeping tables.
pub fn rename_symbol(a: &FiniteAlgebra, from: &str, to: &str) -> FiniteAlgebra {
    let symbols = a
        .signature()
        .symbols()
        .iter()
        .map(|s| {
            let mut s = s.clone();
            if s.name == from {
                s.name = to.to_string();
            }
            s
        })
        .collect();
    let sig = Signature::new(symbols).expect("rename keeps names unique");
    FiniteAlgebra::new(a.name(), sig, a.size(), a.tables().to_vec()).expect("same tables")
}

/// Every meet-semilattice on `0..n` up to isomorphism (n ≤ 4), given as
/// partial orders with all meets.
pub fn small_semilattices(max_n: usize) -> Vec<FiniteAlgebra> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut found: Vec<FiniteAlgebra> = Vec::new();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        // orders contained in the natural order i < j keep enumeration small
        let candidates: Vec<(usize, usize)> = pairs.into_iter().filter(|&(i, j)| i < j).collect();
        for mask in 0u32..(1 << candidates.len()) {
            let mut le = vec![vec![false; n]; n];
            for (i, row) in le.iter_mut().enumerate() {
                row[i] = true;
            }
            for (b, &(i, j)) in candidates.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    le[i][j] = true;
                }
            }
            let transitive = (0..n).all(|i| {
                (0..n).all(|j| (0..n).all(|k| !(le[i][j] && le[j][k]) || le[i][k]))
            });
            if !transitive {
                continue;
            }
            let meet = |x: usize, y: usize| -> Option<usize> {
                let lower: Vec<usize> = (0..n).filter(|&z| le[z][x] && le[z][y]).collect();
                lower.iter().copied().find(|&m| lower.iter().all(|&z| le[z][m]))
            };
            let mut table = Vec::with_capacity(n * n);
            let mut ok = true;
            for x in 0..n {
                for y in 0..n {
                    match meet(x, y) {
                        Some(m) => table.push(m),
                        None => ok = false,
                    }
                }
            }
            if !ok {
                continue;
            }
            let s = FiniteAlgebra::new(
                format!("slat{n}_{}", found.len()),
                Signature::from_pairs(&[("^", 2)]),
                n,
                vec![table],
            )
            .expect("meet table");
            if !found.iter().any(|t| crate::hom::is_isomorphic(t, &s).is_some()) {
                found.push(s);
            }
        }
        out.extend(found);
    }
    out
}

/// Every lattice on at most `max_n` elements up to isomorphism, with
/// operations `meet` and `join`.
pub fn small_lattices(max_n: usize) -> Vec<FiniteAlgebra> {
    let sig = Signature::from_pairs(&[("meet", 2), ("join", 2)]);
    let mut out = Vec::new();
    for s in small_semilattices(max_n) {
        let n = s.size();
        let le = |x: usize, y: usize| s.apply2(0, x, y) == x;
        let Some(_top) = (0..n).find(|&t| (0..n).all(|x| le(x, t))) else {
            continue;
        };
        let join = |x: usize, y: usize| {
            let upper: Vec<usize> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
            upper.iter().copied().find(|&m| upper.iter().all(|&z| le(m, z))).expect("finite meet-semilattice with top")
        };
        let l = FiniteAlgebra::from_fn(format!("lattice{n}_{}", out.len()), sig.clone(), n, |op, a| {
            if op == 0 {
                s.apply2(0, a[0], a[1])
            } else {
                join(a[0], a[1])
            }
        })
        .expect("lattice tables");
        out.push(l);
    }
    out
}

/// Adds a binary `>` acting as the second projection.
pub fn with_projection(a: &FiniteAlgebra) -> FiniteAlgebra {
    let mut symbols = a.signature().symbols().to_vec();
    symbols.push(crate::algebra::Symbol::new(">", 2));
    let sig = Signature::new(symbols).expect("`>` is a new name");
    let k = a.signature().len();
    FiniteAlgebra::from_fn(a.name(), sig, a.size(), |op, args| if op == k { args[1] } else { a.apply(op, args) })
        .expect("projection table")
}

/// Every algebra on `0..n` with a single binary `^` that is a semilattice
/// operation, without identifying isomorphic copies.
pub fn labelled_semilattices(n: usize) -> Vec<FiniteAlgebra> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen = std::collections::BTreeSet::new();
    let bases: Vec<FiniteAlgebra> = small_semilattices(n).into_iter().filter(|s| s.size() == n).collect();
    loop {
        for b in &bases {
            // relabel x as perm[x]
            let mut table = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    table[perm[x] * n + perm[y]] = perm[b.apply2(0, x, y)];
                }
            }
            if seen.insert(table.clone()) {
                out.push(
                    FiniteAlgebra::new(format!("slat{n}#{}", out.len()), b.signature().clone(), n, vec![table])
                        .expect("relabelled table"),
                );
            }
        }
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
