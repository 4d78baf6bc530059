//! Translations between relational CSP templates and pointed
//! semidiscriminator algebras.

use std::collections::BTreeSet;

use crate::algebra::{for_each_tuple, FiniteAlgebra, PartialAlgebra, RelStructure, Signature};
use crate::error::{Error, Result};

use super::flat::{check_psd_axioms, flat_extension, pi_congruence, psd_symbols, PiVariant};

/// `π(S)`: each relation `R` becomes the partial first projection defined
/// exactly on the tuples of `R` (symbol names are kept).
pub fn partial_projection_algebra(s: &RelStructure) -> PartialAlgebra {
    let n = s.size();
    let tables = s
        .signature()
        .symbols()
        .iter()
        .enumerate()
        .map(|(r, sym)| {
            let mut table = Vec::new();
            for_each_tuple(n, sym.arity, |t| {
                table.push(if s.contains(r, t) { t.first().copied() } else { None });
            });
            table
        })
        .collect();
    PartialAlgebra::new(format!("pi_{}", s.name()), s.signature().clone(), n, tables)
        .expect("projection tables are in range")
}

/// `flat(π(S))` with `>` and `zero`.
pub fn csp_to_algebra(s: &RelStructure) -> FiniteAlgebra {
    let flat = flat_extension(&partial_projection_algebra(s), true, true);
    flat.algebra.with_name(format!("flat_pi_{}", s.name()))
}

/// One element `(a, b, c)` of the instance built by
/// [`algebra_to_csp_instances`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct InstanceElement {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// The union instance and its blocks.
#[derive(Debug, Clone)]
pub struct CspInstances {
    pub structure: RelStructure,
    pub elements: Vec<InstanceElement>,
    /// Each pair `(a, b)` with the instance elements of its block.
    pub blocks: Vec<((usize, usize), Vec<usize>)>,
    /// Which reading of `π` defined each block's congruence.
    pub variants: Vec<PiVariant>,
}

impl CspInstances {
    /// The substructure induced on one block.
    pub fn block(&self, i: usize) -> RelStructure {
        self.structure.induced(&self.blocks[i].1)
    }
}

/// The instance `⋃ B_{a,b}` over pairs `a ≠ b` of nonzero elements of `k`.
///
/// Its elements are triples `(a, b, c)` with `c ≠ 0` the least element of its
/// `π_{a,b}` class; an `R`-tuple is a tuple of triples sharing `(a, b)` whose
/// `c`-entries satisfy `π_{a,b}(c_1, f_R(c_1, .., c_n))`.
pub fn algebra_to_csp_instances(k: &FiniteAlgebra, template: &Signature) -> Result<CspInstances> {
    if let Some(fail) = check_psd_axioms(k)? {
        return Err(Error::Precondition(format!(
            "law `{}` fails at {:?}",
            fail.law.name, fail.assignment
        )));
    }
    let syms = psd_symbols(k.signature())?;
    let zero_sym = syms
        .zero
        .ok_or_else(|| Error::Precondition("the algebra needs a distinguished `zero`".into()))?;
    let zero = k.table(zero_sym)[0];
    let mut ops = Vec::new();
    for sym in template.symbols() {
        let f = k
            .signature()
            .index_of(&sym.name)
            .filter(|&f| k.signature().arity(f) == sym.arity && sym.arity > 0)
            .ok_or_else(|| Error::SignatureMismatch(format!("no operation `{}` of arity {}", sym.name, sym.arity)))?;
        // partial-projection law: f(x..) ^ x1 = f(x..)
        let mut bad = None;
        for_each_tuple(k.size(), sym.arity, |t| {
            let v = k.apply(f, t);
            if bad.is_none() && k.apply2(syms.meet, v, t[0]) != v {
                bad = Some(t.to_vec());
            }
        });
        if let Some(t) = bad {
            return Err(Error::Precondition(format!(
                "`{0}(..) ^ x1 = {0}(..)` fails at {t:?}",
                sym.name
            )));
        }
        ops.push(f);
    }
    let mut elements = Vec::new();
    let mut blocks = Vec::new();
    let mut variants = Vec::new();
    let mut relations: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); template.len()];
    for a in (0..k.size()).filter(|&a| a != zero) {
        for b in (0..k.size()).filter(|&b| b != zero && b != a) {
            let pi = pi_congruence(k, a, b)?;
            variants.push(pi.variant);
            let theta = pi.partition;
            let start = elements.len();
            let reps: Vec<usize> = theta.representatives().into_iter().filter(|&c| c != zero).collect();
            let mut local = vec![usize::MAX; k.size()];
            for &c in &reps {
                local[c] = elements.len();
                elements.push(InstanceElement { a, b, c });
            }
            for (r, (&f, sym)) in ops.iter().zip(template.symbols()).enumerate() {
                for_each_tuple(reps.len(), sym.arity, |idx| {
                    let cs: Vec<usize> = idx.iter().map(|&i| reps[i]).collect();
                    if theta.related(cs[0], k.apply(f, &cs)) {
                        relations[r].insert(cs.iter().map(|&c| local[c]).collect());
                    }
                });
            }
            blocks.push(((a, b), (start..elements.len()).collect()));
        }
    }
    let structure = RelStructure::new(
        format!("inst_{}", k.name()),
        template.clone(),
        elements.len(),
        relations,
    )?;
    Ok(CspInstances {
        structure,
        elements,
        blocks,
        variants,
    })
}
