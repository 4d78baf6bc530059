//! Breadth-first generation of subalgebras of finite direct powers.
//!
//! Elements of a product `A_0 × … × A_{m-1}` are value vectors; an operation
//! acts coordinatewise. The same engine drives subalgebra generation, free
//! algebras, the HSP kernel test and the partial-isomorphism check of the EF
//! game.

use std::collections::HashMap;

use crate::algebra::{for_each_tuple, FiniteAlgebra, Signature};
use crate::error::{Error, Result};
use crate::term::Term;

/// How a generated element was first obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Generator(usize),
    Apply(usize, Vec<usize>),
}

/// Result of a generation run: elements in discovery order.
#[derive(Debug, Clone)]
pub struct Generated {
    pub elements: Vec<Vec<usize>>,
    pub origins: Vec<Origin>,
    /// Element index of each generator (duplicates share an index).
    pub generator_elements: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl Generated {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn find(&self, v: &[usize]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Witness term of element `i` over generator variables.
    pub fn witness(&self, i: usize) -> Term {
        match &self.origins[i] {
            Origin::Generator(g) => Term::Var(*g),
            Origin::Apply(f, args) => Term::Op(*f, args.iter().map(|&a| self.witness(a)).collect()),
        }
    }
}

/// Coordinate algebras of a product.
pub struct Product<'a> {
    coords: Vec<&'a FiniteAlgebra>,
    signature: &'a Signature,
}

impl<'a> Product<'a> {
    pub fn new(coords: Vec<&'a FiniteAlgebra>) -> Result<Self> {
        let first = *coords
            .first()
            .ok_or_else(|| Error::Precondition("product with no coordinates".into()))?;
        for c in &coords[1..] {
            first.same_signature(c)?;
        }
        Ok(Product {
            signature: first.signature(),
            coords,
        })
    }

    pub fn width(&self) -> usize {
        self.coords.len()
    }

    /// Applies symbol `f` coordinatewise to the argument vectors.
    pub fn apply(&self, f: usize, args: &[&[usize]], out: &mut Vec<usize>) {
        out.clear();
        match args.len() {
            0 => out.extend(self.coords.iter().map(|a| a.table(f)[0])),
            1 => out.extend(self.coords.iter().zip(args[0]).map(|(a, &x)| a.table(f)[x])),
            2 => out.extend(
                self.coords
                    .iter()
                    .zip(args[0].iter().zip(args[1]))
                    .map(|(a, (&x, &y))| a.apply2(f, x, y)),
            ),
            _ => {
                let mut column = vec![0; args.len()];
                for (c, a) in self.coords.iter().enumerate() {
                    for (slot, v) in column.iter_mut().zip(args) {
                        *slot = v[c];
                    }
                    out.push(a.apply(f, &column));
                }
            }
        }
    }

    /// Generates the subuniverse containing `gens` (and all constants).
    ///
    /// New elements are found in rounds; within a round, symbols are tried in
    /// signature order and argument tuples in lexicographic order over the
    /// elements known at the start of the round, requiring at least one
    /// argument from the previous round.
    pub fn generate(&self, gens: &[Vec<usize>], cap: usize) -> Result<Generated> {
        let mut g = Generated {
            elements: Vec::new(),
            origins: Vec::new(),
            generator_elements: Vec::new(),
            index: HashMap::new(),
        };
        for (i, v) in gens.iter().enumerate() {
            if v.len() != self.width() {
                return Err(Error::Invalid("generator has wrong width".into()));
            }
            let idx = match g.index.get(v) {
                Some(&idx) => idx,
                None => {
                    push(&mut g, v.clone(), Origin::Generator(i), cap)?;
                    g.elements.len() - 1
                }
            };
            g.generator_elements.push(idx);
        }
        let mut prev = 0;
        let mut first_round = true;
        let mut out = Vec::with_capacity(self.width());
        loop {
            let cur = g.elements.len();
            for f in 0..self.signature.len() {
                let k = self.signature.arity(f);
                if k == 0 {
                    if first_round {
                        self.apply(f, &[], &mut out);
                        if !g.index.contains_key(&out) {
                            push(&mut g, out.clone(), Origin::Apply(f, vec![]), cap)?;
                        }
                    }
                    continue;
                }
                let mut failure = None;
                for_each_tuple(cur, k, |idx| {
                    if failure.is_some() || idx.iter().all(|&i| i < prev) {
                        return;
                    }
                    let args: Vec<&[usize]> = idx.iter().map(|&i| g.elements[i].as_slice()).collect();
                    self.apply(f, &args, &mut out);
                    if !g.index.contains_key(&out) {
                        if let Err(e) = push(&mut g, out.clone(), Origin::Apply(f, idx.to_vec()), cap) {
                            failure = Some(e);
                        }
                    }
                });
                if let Some(e) = failure {
                    return Err(e);
                }
            }
            first_round = false;
            if g.elements.len() == cur {
                return Ok(g);
            }
            prev = cur;
        }
    }
}

fn push(g: &mut Generated, v: Vec<usize>, origin: Origin, cap: usize) -> Result<()> {
    if g.elements.len() >= cap {
        return Err(Error::CapExceeded {
            what: "closure size",
            limit: cap,
            progress: format!("{} elements generated before stopping", g.elements.len()),
        });
    }
    g.index.insert(v.clone(), g.elements.len());
    g.elements.push(v);
    g.origins.push(origin);
    Ok(())
}

/// A generated subuniverse with witnessing terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subuniverse {
    /// Elements in breadth-first discovery order.
    pub elements: Vec<usize>,
    /// `witnesses[i]` evaluates to `elements[i]` with variable `j` ↦ `gens[j]`.
    pub witnesses: Vec<Term>,
}

impl Subuniverse {
    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(&x)
    }
}

/// The subuniverse of `a` generated by `gens`, with witness terms.
pub fn subalgebra_generated(a: &FiniteAlgebra, gens: &[usize]) -> Subuniverse {
    if let Some(&bad) = gens.iter().find(|&&g| g >= a.size()) {
        panic!("generator {bad} outside universe of size {}", a.size());
    }
    let product = Product::new(vec![a]).expect("single coordinate");
    let vectors: Vec<Vec<usize>> = gens.iter().map(|&g| vec![g]).collect();
    let g = product
        .generate(&vectors, usize::MAX)
        .expect("no cap on a single algebra");
    Subuniverse {
        elements: g.elements.iter().map(|v| v[0]).collect(),
        witnesses: (0..g.len()).map(|i| g.witness(i)).collect(),
    }
}

/// Membership mask of the subuniverse generated by `gens` (no witnesses).
pub fn closure_mask(a: &FiniteAlgebra, gens: &[usize]) -> Vec<bool> {
    let n = a.size();
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    for &g in gens {
        if !inside[g] {
            inside[g] = true;
            members.push(g);
        }
    }
    for c in a.constants() {
        if !inside[c] {
            inside[c] = true;
            members.push(c);
        }
    }
    let sig = a.signature();
    loop {
        let before = members.len();
        for f in 0..sig.len() {
            let k = sig.arity(f);
            if k == 0 {
                continue;
            }
            let m = members.len();
            let mut args = vec![0; k];
            for_each_tuple(m, k, |idx| {
                for (s, &i) in args.iter_mut().zip(idx) {
                    *s = members[i];
                }
                let v = a.apply(f, &args);
                if !inside[v] {
                    inside[v] = true;
                    members.push(v);
                }
            });
        }
        if members.len() == before {
            return inside;
        }
    }
}

/// Every subuniverse of `a` (including the empty one when there are no
/// constants), found by closing every subset. Only sensible for small `a`.
pub fn all_subuniverses(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = a.size();
    assert!(n < 32, "subset enumeration needs a small universe");
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        let gens: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let inside = closure_mask(a, &gens);
        seen.insert((0..n).filter(|&i| inside[i]).collect::<Vec<_>>());
    }
    seen.into_iter().collect()
}

/// Subuniverses generated by subsets of at most `max_gens` elements.
pub fn subuniverses_up_to(a: &FiniteAlgebra, max_gens: usize) -> Vec<Vec<usize>> {
    let n = a.size();
    let mut seen = std::collections::BTreeSet::new();
    fn rec(
        a: &FiniteAlgebra,
        start: usize,
        left: usize,
        cur: &mut Vec<usize>,
        seen: &mut std::collections::BTreeSet<Vec<usize>>,
    ) {
        let inside = closure_mask(a, cur);
        seen.insert((0..a.size()).filter(|&i| inside[i]).collect());
        if left == 0 {
            return;
        }
        for x in start..a.size() {
            cur.push(x);
            rec(a, x + 1, left - 1, cur, seen);
            cur.pop();
        }
    }
    rec(a, 0, max_gens.min(n), &mut Vec::new(), &mut seen);
    seen.into_iter().collect()
}
