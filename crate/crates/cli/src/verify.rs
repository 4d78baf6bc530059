//! Independent re-checks of emitted witnesses, built from core primitives.

use ualg::algebra::{for_each_tuple, FiniteAlgebra};
use ualg::closure::subalgebra_generated;
use ualg::congruence::{cg, max_separating_congruence, monolith, DivisionRelation};
use ualg::efgame::{partial_iso_check, GameConfig, MoveRecord, Side};
use ualg::freealg::{replay, satisfies_equation, BirkhoffBasis, Replacement};
use ualg::hom::{find_homomorphism, find_separating_homomorphism, HomMode};
use ualg::membership::{operator_membership, ClassOperator, HsCaps, IndexedHom, MembershipVerdict, Witness};
use ualg::partition::Partition;
use ualg::quotient;
use ualg::term::Term;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn congruence(a: &FiniteAlgebra, p: &Partition) -> Check {
    match p.compatibility_failure(a) {
        None => Ok(()),
        Some((op, args)) => Err(format!("partition not compatible with operation {op} at {args:?}")),
    }
}

pub fn generated_congruence(a: &FiniteAlgebra, pairs: &[(usize, usize)], theta: &Partition) -> Check {
    congruence(a, theta)?;
    ensure(pairs.iter().all(|&(x, y)| theta.related(x, y)), || "a generating pair is not related".into())?;
    // minimality: every class is connected by one-step translations of the pairs
    let closure = ualg::congruence::cg_extend(a, &Partition::identity(a.size()), pairs);
    ensure(&closure == theta, || "congruence is not the least one".into())
}

pub fn monolith_pair(a: &FiniteAlgebra, pair: (usize, usize), mu: &Partition) -> Check {
    congruence(a, mu)?;
    ensure(!mu.is_identity(), || "monolith is the identity".into())?;
    for c in 0..a.size() {
        for d in c + 1..a.size() {
            ensure(cg(a, &[(c, d)]).related(pair.0, pair.1), || {
                format!("Cg({c},{d}) misses the monolith pair")
            })?;
        }
    }
    Ok(())
}

pub fn not_si(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Check {
    let mut meet = Partition::total(a.size());
    for &(c, d) in pairs {
        ensure(c != d, || "a witness pair is diagonal".into())?;
        meet = meet.meet(&cg(a, &[(c, d)]));
    }
    ensure(meet.is_identity(), || "principal congruences do not intersect to zero".into())
}

pub fn class_verdict(a: &FiniteAlgebra, class: &[usize], theta: &Partition, yes: bool) -> Check {
    let pairs: Vec<(usize, usize)> = class.iter().map(|&x| (class[0], x)).collect();
    generated_congruence(a, &pairs, theta)?;
    let mut sorted = class.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    ensure((theta.class_of(class[0]) == sorted) == yes, || "verdict does not match the generated class".into())
}

pub fn decomposition(a: &FiniteAlgebra, factors: &[(usize, usize, Partition)]) -> Check {
    let mut meet = Partition::total(a.size());
    for (x, y, theta) in factors {
        congruence(a, theta)?;
        ensure(!theta.related(*x, *y), || format!("factor does not separate {x} {y}"))?;
        let (q, _) = quotient(a, theta).map_err(|e| e.to_string())?;
        ensure(monolith(&q).is_some(), || format!("quotient separating {x} {y} is not irreducible"))?;
        meet = meet.meet(theta);
    }
    ensure(meet.is_identity(), || "factor congruences do not intersect to zero".into())
}

pub fn saturates(a: &FiniteAlgebra, set: &[usize], theta: &Partition) -> Check {
    congruence(a, theta)?;
    let inside = |x: usize| set.contains(&x);
    ensure(
        (0..a.size()).all(|x| inside(x) == inside(theta.rep(x))),
        || "the set is not a union of classes".into(),
    )?;
    // maximality: joining any two classes breaks saturation or compatibility
    let reps = theta.representatives();
    for (i, &x) in reps.iter().enumerate() {
        for &y in &reps[i + 1..] {
            let bigger = ualg::congruence::cg_extend(a, theta, &[(x, y)]);
            let saturated = (0..a.size()).all(|z| inside(z) == inside(bigger.rep(z)));
            ensure(!saturated, || format!("merging the classes of {x} and {y} keeps the set saturated"))?;
        }
    }
    Ok(())
}

pub fn division(d: &DivisionRelation, pair: Option<(usize, usize)>) -> Check {
    let n = d.size();
    ensure((0..n).all(|x| d.divides(x, x)), || "division is not reflexive".into())?;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                ensure(!(d.divides(x, y) && d.divides(y, z)) || d.divides(x, z), || "division is not transitive".into())?;
            }
        }
    }
    ensure(pair.is_none() == d.is_order(), || "verdict does not match antisymmetry".into())
}

pub fn basis(ks: &[FiniteAlgebra], basis: &BirkhoffBasis) -> Check {
    for e in basis.equations().map_err(|e| e.to_string())? {
        let lhs = basis.equation_lhs(&e);
        let found = satisfies_equation(ks, &lhs, &basis.terms()[e.result]).map_err(|e| e.to_string())?;
        ensure(found.is_none(), || "a basis equation fails".into())?;
    }
    Ok(())
}

pub fn normal_form(ks: &[FiniteAlgebra], t: &Term, rep: &Term, trace: &[Replacement]) -> Check {
    let replayed = replay(t, trace).map_err(|e| e.to_string())?;
    ensure(&replayed == rep, || "the trace does not end at the normal form".into())?;
    equation_holds(ks, t, rep)
}

pub fn equation_holds(ks: &[FiniteAlgebra], s: &Term, t: &Term) -> Check {
    let k = s.max_var().max(t.max_var()).map_or(0, |v| v + 1);
    for a in ks {
        let mut ok = true;
        for_each_tuple(a.size(), k, |env| ok &= s.eval(a, env) == t.eval(a, env));
        ensure(ok, || format!("the equation fails in {}", a.name()))?;
    }
    Ok(())
}

pub fn equation_fails(a: &FiniteAlgebra, s: &Term, t: &Term, env: &[usize]) -> Check {
    ensure(s.eval(a, env) != t.eval(a, env), || "the counterexample does not falsify the equation".into())
}

fn hom_into(a: &FiniteAlgebra, bs: &[FiniteAlgebra], h: &IndexedHom) -> Check {
    let b = bs.get(h.index).ok_or("homomorphism into a missing algebra")?;
    ensure(h.hom.is_homomorphism(a, b), || format!("mapping into algebra {} is not a homomorphism", h.index))
}

pub fn membership(a: &FiniteAlgebra, bs: &[FiniteAlgebra], op: ClassOperator, v: &MembershipVerdict) -> Check {
    match &v.witness {
        Witness::Embedding(h) => {
            hom_into(a, bs, h)?;
            ensure(h.hom.is_injective(), || "the embedding is not injective".into())
        }
        Witness::Surjection { index, subuniverse, hom } => {
            let b = bs.get(*index).ok_or("surjection from a missing algebra")?;
            let (sub, _) = b.restrict(subuniverse).map_err(|e| e.to_string())?;
            ensure(hom.is_homomorphism(&sub, a) && hom.is_surjective(), || "not a surjective homomorphism".into())
        }
        Witness::Separating(homs) => {
            for h in homs {
                hom_into(a, bs, h)?;
            }
            for x in 0..a.size() {
                for y in x + 1..a.size() {
                    ensure(homs.iter().any(|h| h.hom.get(x) != h.hom.get(y)), || format!("{x} and {y} are not separated"))?;
                }
            }
            ensure(op != ClassOperator::SPPlus || !homs.is_empty() || bs.iter().any(|b| find_homomorphism(a, b, HomMode::Any, &[]).is_some()), || {
                "no homomorphism at all".into()
            })
        }
        Witness::Inseparable(x, y) => ensure(
            bs.iter().all(|b| find_separating_homomorphism(a, b, *x, *y).is_none()),
            || format!("{x} and {y} are separable"),
        ),
        Witness::NoHomomorphism => match op {
            ClassOperator::S => ensure(
                bs.iter().all(|b| find_homomorphism(a, b, HomMode::Injective, &[]).is_none()),
                || "an embedding exists".into(),
            ),
            ClassOperator::H => ensure(
                bs.iter().all(|b| find_homomorphism(b, a, HomMode::Surjective, &[]).is_none()),
                || "a surjection exists".into(),
            ),
            ClassOperator::HS => {
                for b in bs {
                    ensure(b.size() < 20, || "too many subsets to re-check".into())?;
                    for mask in 1u32..(1 << b.size()) {
                        let elems: Vec<usize> = (0..b.size()).filter(|&i| mask >> i & 1 == 1).collect();
                        if let Ok((sub, _)) = b.restrict(&elems) {
                            ensure(find_homomorphism(&sub, a, HomMode::Surjective, &[]).is_none(), || {
                                format!("subuniverse {elems:?} maps onto the algebra")
                            })?;
                        }
                    }
                }
                Ok(())
            }
            _ => ensure(
                bs.iter().all(|b| find_homomorphism(a, b, HomMode::Any, &[]).is_none()),
                || "a homomorphism exists".into(),
            ),
        },
        Witness::Factors(fs) => {
            for f in fs {
                let theta = max_separating_congruence(a, f.pair.0, f.pair.1).map_err(|e| e.to_string())?;
                let (q, _) = quotient(a, &theta).map_err(|e| e.to_string())?;
                hom_into(&q, bs, &f.embedding)?;
                ensure(f.embedding.hom.is_injective(), || "a factor embedding is not injective".into())?;
            }
            Ok(())
        }
        Witness::UnembeddableFactor { pair } => {
            let theta = max_separating_congruence(a, pair.0, pair.1).map_err(|e| e.to_string())?;
            let (q, _) = quotient(a, &theta).map_err(|e| e.to_string())?;
            let s = operator_membership(&q, bs, ClassOperator::S, HsCaps::default()).map_err(|e| e.to_string())?;
            ensure(!s.holds, || "the factor does embed".into())
        }
        Witness::FreeImage { .. } | Witness::FailingEquation { .. } => Err("unexpected witness kind".into()),
    }
}

pub fn hsp(a: &FiniteAlgebra, b: &FiniteAlgebra, v: &MembershipVerdict) -> Check {
    match &v.witness {
        Witness::FreeImage { generators, .. } => {
            let sub = subalgebra_generated(a, generators);
            ensure(sub.elements.len() == a.size(), || "the generators do not generate the algebra".into())
        }
        Witness::FailingEquation { lhs, rhs, assignment } => {
            let holds = satisfies_equation(std::slice::from_ref(b), lhs, rhs).map_err(|e| e.to_string())?;
            ensure(holds.is_none(), || "the equation fails in the generator".into())?;
            equation_fails(a, lhs, rhs, assignment)
        }
        _ => Err("unexpected witness kind".into()),
    }
}

pub fn spoiler_line(a: &FiniteAlgebra, b: &FiniteAlgebra, line: &[MoveRecord]) -> Check {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let iso = |xs: &[usize], ys: &[usize]| {
        partial_iso_check(GameConfig { a, b, moves_a: xs, moves_b: ys }).map_err(|e| e.to_string())
    };
    for m in line {
        match m.reply {
            Some(d) => {
                let (x, y) = match m.side {
                    Side::A => (m.element, d),
                    Side::B => (d, m.element),
                };
                xs.push(x);
                ys.push(y);
            }
            None => {
                let other = match m.side {
                    Side::A => b.size(),
                    Side::B => a.size(),
                };
                for d in 0..other {
                    let (x, y) = match m.side {
                        Side::A => (m.element, d),
                        Side::B => (d, m.element),
                    };
                    let (mut xs2, mut ys2) = (xs.clone(), ys.clone());
                    xs2.push(x);
                    ys2.push(y);
                    ensure(!iso(&xs2, &ys2)?, || format!("reply {d} survives the last move"))?;
                }
                return Ok(());
            }
        }
    }
    ensure(!iso(&xs, &ys)?, || "the final position is still a partial isomorphism".into())
}
