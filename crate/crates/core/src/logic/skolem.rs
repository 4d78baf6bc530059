//! Localised Skolemisation of `∀^n ∃^m` sentences over a free algebra basis.

use crate::error::{Error, Result};
use crate::freealg::BirkhoffBasis;
use crate::term::Term;

use super::formula::Formula;

/// Largest number of disjuncts the transform will produce.
pub const MAX_DISJUNCTS: usize = 1_000_000;

/// Splits `∀x⃗ ∃y⃗ φ` into its prefixes and quantifier-free matrix.
pub fn ae_prefix(phi: &Formula) -> Result<(Vec<usize>, Vec<usize>, &Formula)> {
    let mut universal = Vec::new();
    let mut existential = Vec::new();
    let mut cur = phi;
    while let Formula::Forall(v, p) = cur {
        universal.push(*v);
        cur = p;
    }
    while let Formula::Exists(v, p) = cur {
        existential.push(*v);
        cur = p;
    }
    if !cur.is_quantifier_free() {
        return Err(Error::Precondition("not a prenex ∀*∃* sentence".into()));
    }
    if !phi.is_sentence() || !phi.no_shadowing() {
        return Err(Error::Precondition("needs a sentence without rebound variables".into()));
    }
    Ok((universal, existential, cur))
}

/// `Φ' = ∀x⃗ ⋁_{t⃗} φ(x⃗, t⃗(x⃗))`, where `t⃗` ranges over tuples of the
/// basis' representative terms (generator `i` read as the `i`-th universal
/// variable).
pub fn skolemize_ae(basis: &BirkhoffBasis, phi: &Formula) -> Result<Formula> {
    let (xs, ys, matrix) = ae_prefix(phi)?;
    if ys.is_empty() {
        return Ok(phi.clone());
    }
    if basis.generators() != xs.len() {
        return Err(Error::Precondition(format!(
            "basis has {} generators for {} universal variables",
            basis.generators(),
            xs.len()
        )));
    }
    matrix.check(basis.signature())?;
    let reps: Vec<Term> = basis
        .terms()
        .iter()
        .map(|t| t.rename_vars(&|i| xs[i]))
        .collect();
    let count = u32::try_from(ys.len())
        .ok()
        .and_then(|m| reps.len().checked_pow(m))
        .filter(|&c| c <= MAX_DISJUNCTS)
        .ok_or_else(|| Error::CapExceeded {
            what: "Skolem disjuncts",
            limit: MAX_DISJUNCTS,
            progress: format!("{} representatives, {} existential variables", reps.len(), ys.len()),
        })?;
    let mut disjuncts = Vec::with_capacity(count);
    crate::algebra::for_each_tuple(reps.len(), ys.len(), |choice| {
        let sub = |v: usize| match ys.iter().position(|&y| y == v) {
            Some(j) => reps[choice[j]].clone(),
            None => Term::Var(v),
        };
        disjuncts.push(matrix.map_terms(&|t| t.substitute(&sub)));
    });
    Ok(Formula::forall(xs, Formula::Or(disjuncts)))
}
