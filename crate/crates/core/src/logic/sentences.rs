//! Sentence builders: the universal Horn class sentence for `SP(Ls)` over
//! semilattice-based algebras and the pseudovariety sentence for `flat(L)`.

use crate::algebra::{for_each_tuple, FiniteAlgebra, PartialAlgebra};
use crate::closure::subuniverses_up_to;
use crate::constructions::{flat_extension, pi_formula, psd_laws, psd_symbols, PiVariant, MEET, PROJ};
use crate::error::{Error, Result};
use crate::hom::is_isomorphic;
use crate::term::Term;

use super::formula::Formula;

/// The designated semilattice symbol shared by all of `ls`: `^` when it is a
/// semilattice operation everywhere, else the first such binary symbol.
pub fn semilattice_symbol(ls: &[FiniteAlgebra]) -> Result<usize> {
    let first = ls
        .first()
        .ok_or_else(|| Error::Precondition("needs at least one algebra".into()))?;
    for l in ls {
        first.same_signature(l)?;
    }
    let sig = first.signature();
    let good = |f: usize| sig.arity(f) == 2 && ls.iter().all(|l| l.is_semilattice_op(f));
    sig.index_of(MEET)
        .filter(|&f| good(f))
        .or_else(|| (0..sig.len()).find(|&f| good(f)))
        .ok_or_else(|| Error::Precondition("no binary operation is a semilattice operation on every algebra".into()))
}

/// The nonempty subalgebras of the algebras in `ls`, one per isomorphism type.
pub fn subalgebra_types(ls: &[FiniteAlgebra]) -> Result<Vec<FiniteAlgebra>> {
    let mut out: Vec<FiniteAlgebra> = Vec::new();
    for l in ls {
        for sub in subuniverses_up_to(l, l.size()) {
            if sub.is_empty() {
                continue;
            }
            let (alg, _) = l.restrict(&sub)?;
            if !out.iter().any(|m| is_isomorphic(m, &alg).is_some()) {
                out.push(alg);
            }
        }
    }
    Ok(out)
}

/// Fresh variable supply.
struct Vars {
    next: usize,
}

impl Vars {
    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    fn many(&mut self, k: usize) -> Vec<usize> {
        (0..k).map(|_| self.fresh()).collect()
    }
}

struct UhBuilder {
    meet: usize,
    vars: Vars,
}

impl UhBuilder {
    /// `s ≡ t`: `s` and `t` lie above the same `x_i`.
    fn equiv(&self, s: &Term, t: &Term, xs: &[usize]) -> Formula {
        let above = |u: &Term, x: usize| {
            Formula::eq(Term::binary(self.meet, u.clone(), Term::Var(x)), Term::Var(x))
        };
        Formula::And(xs.iter().map(|&x| Formula::iff(above(s, x), above(t, x))).collect())
    }

    /// Body of `Ξ_L` over the witnesses `xs`: `≡` is a congruence and
    /// `i ↦ [x_i]` is an isomorphism from `L` onto the quotient.
    fn xi_body(&mut self, l: &FiniteAlgebra, xs: &[usize]) -> Formula {
        let sig = l.signature();
        let x = |i: usize| Term::Var(xs[i]);
        let mut onto = Vec::new();
        for f in 0..sig.len() {
            for_each_tuple(l.size(), sig.arity(f), |idx| {
                let lhs = Term::Op(f, idx.iter().map(|&i| x(i)).collect());
                onto.push(self.equiv(&lhs, &x(l.apply(f, idx)), xs));
            });
        }
        let mut distinct = Vec::new();
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                distinct.push(Formula::not(self.equiv(&x(i), &x(j), xs)));
            }
        }
        let a = self.vars.fresh();
        let surjective = Formula::forall(
            [a],
            Formula::Or((0..xs.len()).map(|i| self.equiv(&Term::Var(a), &x(i), xs)).collect()),
        );
        let mut cong = Vec::new();
        for f in 0..sig.len() {
            let k = sig.arity(f);
            if k == 0 {
                continue;
            }
            let us = self.vars.many(k);
            let vs = self.vars.many(k);
            let hyp = Formula::And(
                us.iter()
                    .zip(&vs)
                    .map(|(&u, &v)| self.equiv(&Term::Var(u), &Term::Var(v), xs))
                    .collect(),
            );
            let concl = self.equiv(
                &Term::Op(f, us.iter().map(|&u| Term::Var(u)).collect()),
                &Term::Op(f, vs.iter().map(|&v| Term::Var(v)).collect()),
                xs,
            );
            cong.push(Formula::forall(us.iter().chain(&vs).copied().collect::<Vec<_>>(), Formula::imp(hyp, concl)));
        }
        let mut parts = onto;
        parts.extend(distinct);
        parts.push(surjective);
        parts.extend(cong);
        Formula::And(parts)
    }

    /// `Ξ_L`.
    fn xi(&mut self, l: &FiniteAlgebra) -> Formula {
        let xs = self.vars.many(l.size());
        let body = self.xi_body(l, &xs);
        Formula::exists(xs, body)
    }

    /// `a ≢_L b`: `Ξ_L` with witnesses whose `≡` separates `a` and `b`.
    fn separates(&mut self, l: &FiniteAlgebra, a: usize, b: usize) -> Formula {
        let xs = self.vars.many(l.size());
        let apart = Formula::not(self.equiv(&Term::Var(a), &Term::Var(b), &xs));
        let body = self.xi_body(l, &xs);
        Formula::exists(xs, Formula::And(vec![apart, body]))
    }
}

/// Semilattice axioms for symbol `meet`, over fresh variables.
fn semilattice_axioms(meet: usize, vars: &mut Vars) -> Formula {
    let m = |x: usize, y: usize| Term::binary(meet, Term::Var(x), Term::Var(y));
    let [x, y, z] = [vars.fresh(), vars.fresh(), vars.fresh()];
    let assoc = Formula::forall(
        [x, y, z],
        Formula::eq(
            Term::binary(meet, Term::Var(x), m(y, z)),
            Term::binary(meet, m(x, y), Term::Var(z)),
        ),
    );
    let [p, q] = [vars.fresh(), vars.fresh()];
    let comm = Formula::forall([p, q], Formula::eq(m(p, q), m(q, p)));
    let r = vars.fresh();
    let idem = Formula::forall([r], Formula::eq(m(r, r), Term::Var(r)));
    Formula::And(vec![assoc, comm, idem])
}

/// The universal Horn class sentence for `SP(Ls)` (or `SP⁺(Ls)` with
/// `include_onto`) relative to semilattice-based algebras:
/// semilattice axioms, optionally `⋁ Ξ_{L'}`, and
/// `∀a∀b (a ≉ b → ⋁ a ≢_{L'} b)`, with `L'` ranging over the subalgebras.
pub fn build_uh_sentence(ls: &[FiniteAlgebra], include_onto: bool) -> Result<Formula> {
    build_uh_sentence_from(ls, include_onto, 0)
}

fn build_uh_sentence_from(ls: &[FiniteAlgebra], include_onto: bool, first_var: usize) -> Result<Formula> {
    let meet = semilattice_symbol(ls)?;
    let subs = subalgebra_types(ls)?;
    let mut b = UhBuilder {
        meet,
        vars: Vars { next: first_var },
    };
    let mut parts = vec![semilattice_axioms(meet, &mut b.vars)];
    if include_onto {
        let some = subs.iter().map(|l| b.xi(l)).collect();
        parts.push(Formula::Or(some));
    }
    let (x, y) = (b.vars.fresh(), b.vars.fresh());
    let separated = subs.iter().map(|l| b.separates(l, x, y)).collect();
    parts.push(Formula::forall(
        [x, y],
        Formula::imp(Formula::neq(Term::Var(x), Term::Var(y)), Formula::Or(separated)),
    ));
    Ok(Formula::And(parts))
}

/// Restricts every quantifier to elements other than `zero`.
fn relativize(f: &Formula, zero: &Term) -> Formula {
    let nonzero = |v: usize| Formula::neq(Term::Var(v), zero.clone());
    match f {
        Formula::Eq(..) => f.clone(),
        Formula::Not(p) => Formula::not(relativize(p, zero)),
        Formula::And(ps) => Formula::And(ps.iter().map(|p| relativize(p, zero)).collect()),
        Formula::Or(ps) => Formula::Or(ps.iter().map(|p| relativize(p, zero)).collect()),
        Formula::Imp(p, q) => Formula::imp(relativize(p, zero), relativize(q, zero)),
        Formula::Forall(v, p) => Formula::Forall(*v, Box::new(Formula::imp(nonzero(*v), relativize(p, zero)))),
        Formula::Exists(v, p) => Formula::Exists(*v, Box::new(Formula::And(vec![nonzero(*v), relativize(p, zero)]))),
    }
}

/// A sentence together with the flat algebra whose signature it uses.
#[derive(Debug, Clone)]
pub struct PseudovarietySentence {
    pub sentence: Formula,
    /// `flat(L)` with the constant `zero`; the sentence is over its signature.
    pub flat: FiniteAlgebra,
}

/// The sentence axiomatising the pseudovariety generated by `flat(L)`:
/// the pointed semidiscriminator laws with 0 and
/// `∀a∀b (a ≉ b → Ψ♭(a, b))`, where `Ψ` says "flat, and the nonzero part
/// lies in `SP⁺(L)`" and `Ψ♭` reads every equation through `π_{a,b}`.
///
/// `L` needs a semilattice operation and a binary `>` that is the second
/// projection; flattening turns `>` into the 0-absorbing projection.
pub fn build_pseudovariety_sentence(l: &FiniteAlgebra) -> Result<PseudovarietySentence> {
    let lsig = l.signature();
    let proj = lsig
        .index_of(PROJ)
        .filter(|&p| lsig.arity(p) == 2)
        .ok_or_else(|| Error::Precondition(format!("needs a binary `{PROJ}`")))?;
    let n = l.size();
    if (0..n).any(|x| (0..n).any(|y| l.apply2(proj, x, y) != y)) {
        return Err(Error::Precondition(format!("`{PROJ}` is not the second projection")));
    }
    let flat = flat_extension(&PartialAlgebra::from(l), false, true);
    let fsig = flat.algebra.signature().clone();
    let psd = psd_symbols(&fsig)?;
    let zero = Term::Op(psd.zero.expect("flat extension with zero"), vec![]);

    // variables 0 and 1 are the pair (a, b)
    let mut vars = Vars { next: 2 };
    let mut parts = Vec::new();
    for law in psd_laws(&fsig)? {
        let k = law.lhs.var_count().max(law.rhs.var_count());
        let vs = vars.many(k);
        let shift = |i: usize| vs[i];
        parts.push(Formula::forall(
            vs.clone(),
            Formula::eq(law.lhs.rename_vars(&shift), law.rhs.rename_vars(&shift)),
        ));
    }

    let mut psi = Vec::new();
    let [x, y] = [vars.fresh(), vars.fresh()];
    psi.push(Formula::forall(
        [x, y],
        Formula::Or(vec![
            Formula::eq(Term::Var(x), Term::Var(y)),
            Formula::eq(Term::binary(psd.meet, Term::Var(x), Term::Var(y)), zero.clone()),
        ]),
    ));
    // the original operations come first in the flat signature
    for f in 0..lsig.len() {
        let vs = vars.many(lsig.arity(f));
        let value = Term::Op(f, vs.iter().map(|&v| Term::Var(v)).collect());
        let hyp = Formula::And(vs.iter().map(|&v| Formula::neq(Term::Var(v), zero.clone())).collect());
        psi.push(Formula::forall(vs, Formula::imp(hyp, Formula::neq(value, zero.clone()))));
    }
    let uh = build_uh_sentence_from(std::slice::from_ref(l), true, vars.next)?;
    psi.push(relativize(&uh, &zero));
    let psi = Formula::And(psi);

    let (a, b) = (Term::Var(0), Term::Var(1));
    let flattened = psi.map_atoms(&|u, v| pi_formula(psd, PiVariant::CaseSplit, &a, &b, u, v));
    parts.push(Formula::forall(
        [0, 1],
        Formula::imp(Formula::neq(a.clone(), b.clone()), flattened),
    ));
    Ok(PseudovarietySentence {
        sentence: Formula::And(parts),
        flat: flat.algebra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_product;
    use crate::fixtures;
    use crate::logic::holds;

    #[test]
    fn semilattice_sentence() {
        let s = fixtures::semilattice2();
        let phi = build_uh_sentence(std::slice::from_ref(&s), false).unwrap();
        assert!(phi.is_sentence() && phi.no_shadowing());
        assert!(holds(&fixtures::chain_semilattice(3), &phi).unwrap());
        assert!(holds(&s, &phi).unwrap());
        let fake = fixtures::rename_symbol(&fixtures::left_zero(2), "*", "^");
        assert!(!holds(&fake, &phi).unwrap());
        assert!(build_uh_sentence(&[fake], false).is_err());
    }

    #[test]
    fn onto_clause_with_a_constant() {
        // semilattice with its top as a constant: the bottom-constant
        // 2-element algebra has no homomorphism into it
        let sig = crate::algebra::Signature::from_pairs(&[("^", 2), ("c", 0)]);
        let top = FiniteAlgebra::from_fn("S2top", sig.clone(), 2, |f, a| if f == 0 { a[0].min(a[1]) } else { 1 }).unwrap();
        let bottom = FiniteAlgebra::from_fn("S2bot", sig, 2, |f, a| if f == 0 { a[0].min(a[1]) } else { 0 }).unwrap();
        let phi = build_uh_sentence(std::slice::from_ref(&top), true).unwrap();
        assert!(holds(&top, &phi).unwrap());
        assert!(!holds(&bottom, &phi).unwrap());
    }

    fn lattice_fixture(n: usize) -> FiniteAlgebra {
        let l = fixtures::small_lattices(n).into_iter().find(|l| l.size() == n).unwrap();
        fixtures::with_projection(&l)
    }

    #[test]
    fn pseudovariety_sentence_small() {
        let l1 = lattice_fixture(1);
        let l2 = lattice_fixture(2);
        let p1 = build_pseudovariety_sentence(&l1).unwrap();
        assert!(p1.sentence.is_sentence());
        assert!(holds(&p1.flat, &p1.sentence).unwrap());
        let sq = direct_product(&[p1.flat.clone(), p1.flat.clone()]).unwrap();
        assert!(holds(&sq, &p1.sentence).unwrap());
        let p2 = build_pseudovariety_sentence(&l2).unwrap();
        assert!(holds(&p2.flat, &p2.sentence).unwrap());
        // flat(L2) satisfies meet ≉ join, which flat(L1) rules out
        assert!(!holds(&p2.flat, &p1.sentence).unwrap());
        assert!(build_pseudovariety_sentence(&fixtures::small_lattices(2)[1]).is_err());
    }
}
