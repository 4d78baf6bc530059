//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when
//! any criterion fails. Brute-force references live in `common`.

mod common;

use std::time::{Duration, Instant};

use common::*;
use ualg::algebra::{direct_product, for_each_tuple, FiniteAlgebra, PartialAlgebra, Signature};
use ualg::congruence::{cg, is_congruence_class, max_separating_congruence, monolith};
use ualg::constructions::{
    algebra_to_csp_instances, claim1_law, cong_class_gadget, csp_to_algebra, flat_extension, graph_algebra,
    mckenzie_algebra, mckenzie_element, pi_relation, rees_over_c2, McKenzieVariant, PiVariant,
};
use ualg::csp::solve;
use ualg::efgame::back_and_forth;
use ualg::fixtures;
use ualg::freealg::{free_algebra, normalize_term, replay, satisfies_equation, FreeCaps};
use ualg::logic::{build_uh_sentence, holds, skolemize_ae, Formula};
use ualg::membership::{idempotent_trivial_subgroups, in_hsp, operator_membership, ClassOperator, HsCaps, Witness};
use ualg::term::Term;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Criterion 1: congruence engines against the congruence lattice of every
/// graph algebra on at most four vertices.
fn congruence_suite() -> Outcome {
    let mut graphs = 0usize;
    let mut checks = 0usize;
    for n in 1..=4usize {
        for mask in 0u32..(1u32 << (n * n)) {
            let g = digraph_from_mask(n, mask);
            let a = graph_algebra(&g).map_err(|e| e.to_string())?;
            let size = a.size();
            let lattice = congruence_lattice(&a);
            graphs += 1;
            for x in 0..size {
                for y in x + 1..size {
                    let got = cg(&a, &[(x, y)]).class_indices();
                    check(got == cg_oracle(&lattice, size, &[(x, y)]), || {
                        format!("Cg({x},{y}) differs on digraph mask {mask} with {n} vertices")
                    })?;
                    let theta = max_separating_congruence(&a, x, y).map_err(|e| e.to_string())?;
                    let labels = theta.class_indices();
                    check(maximal_separating(&lattice, x, y).contains(&&labels), || {
                        format!("separating congruence for ({x},{y}) not maximal, mask {mask}, n {n}")
                    })?;
                    checks += 2;
                }
            }
            // two-pair generation
            let pairs: Vec<(usize, usize)> = (0..size).flat_map(|x| (x + 1..size).map(move |y| (x, y))).collect();
            for i in 0..pairs.len() {
                for j in i + 1..pairs.len() {
                    let ps = [pairs[i], pairs[j]];
                    check(cg(&a, &ps).class_indices() == cg_oracle(&lattice, size, &ps), || {
                        format!("Cg{ps:?} differs, mask {mask}, n {n}")
                    })?;
                    checks += 1;
                }
            }
            let got = monolith(&a).map(|m| m.congruence.class_indices());
            check(got == monolith_oracle(&lattice, size), || format!("monolith differs, mask {mask}, n {n}"))?;
            for set in 1u32..(1 << size) {
                let members: Vec<usize> = (0..size).filter(|&i| set >> i & 1 == 1).collect();
                let got = is_congruence_class(&a, &members).map_err(|e| e.to_string())?;
                check(got == class_oracle(&lattice, &members), || {
                    format!("class verdict for {members:?} differs, mask {mask}, n {n}")
                })?;
                checks += 1;
            }
            checks += 1;
        }
    }
    Ok(format!("{graphs} graph algebras, {checks} comparisons"))
}

/// Criterion 2: the congruence-class gadget decides non-reachability.
fn gadget_suite() -> Outcome {
    let mut cases = 0usize;
    let mut classes = 0usize;
    for n in 1..=4usize {
        for mask in 0u32..(1u32 << (n * n)) {
            let g = digraph_from_mask(n, mask);
            let reach = reach_matrix(&g);
            for u in 0..n {
                for v in 0..n {
                    let gadget = cong_class_gadget(&g, u, v).map_err(|e| e.to_string())?;
                    let (a, b) = gadget.pair;
                    let verdict = is_congruence_class(&gadget.algebra, &[a, b]).map_err(|e| e.to_string())?;
                    check(verdict == !reach[u][v], || {
                        format!("mask {mask}, n {n}, ({u},{v}): class {verdict}, reachable {}", reach[u][v])
                    })?;
                    cases += 1;
                    classes += verdict as usize;
                }
            }
        }
    }
    Ok(format!("{cases} digraph/pair cases, {classes} congruence classes, 0 exceptions"))
}

/// Criterion 3: free semilattices, normal forms with replayable traces, and
/// the basis equations.
fn birkhoff_suite() -> Outcome {
    let s = fixtures::semilattice2();
    let sig = s.signature().clone();
    let ks = vec![s.clone()];
    let mut sizes = Vec::new();
    let mut normalized = 0usize;
    for k in 1..=3usize {
        let basis = free_algebra(&ks, k, FreeCaps::default()).map_err(|e| e.to_string())?;
        let oracle = term_function_count(&ks, k);
        check(basis.size() == oracle, || format!("k={k}: |F| = {} but {oracle} term functions", basis.size()))?;
        sizes.push(basis.size());
        for e in basis.equations().map_err(|e| e.to_string())? {
            let lhs = basis.equation_lhs(&e);
            let cex = satisfies_equation(&ks, &lhs, &basis.terms()[e.result]).map_err(|e| e.to_string())?;
            check(cex.is_none(), || format!("k={k}: basis equation fails"))?;
        }
        let mut verify = |t: &Term| -> Result<(), String> {
            let n = normalize_term(&basis, t).map_err(|e| e.to_string())?;
            let rep = &basis.terms()[n.index];
            let replayed = replay(t, &n.trace).map_err(|e| e.to_string())?;
            check(&replayed == rep, || format!("trace of {} does not replay", t.display(&sig)))?;
            let mut same = true;
            for_each_tuple(2, k, |env| same &= t.eval(&s, env) == rep.eval(&s, env));
            check(same, || format!("{} and its normal form differ", t.display(&sig)))?;
            normalized += 1;
            Ok(())
        };
        // all terms up to height 3, then every height-4 term built on the fly
        let lower = ualg::term::terms_up_to_height(&sig, k, 3, usize::MAX);
        for t in &lower {
            verify(t)?;
        }
        if k <= 2 {
            for l in &lower {
                for r in &lower {
                    if l.height() == 3 || r.height() == 3 {
                        verify(&Term::binary(0, l.clone(), r.clone()))?;
                    }
                }
            }
        }
    }
    check(sizes == [1, 3, 7], || format!("sizes {sizes:?}"))?;
    Ok(format!("|F| = {sizes:?}; {normalized} terms normalized and replayed"))
}

fn semigroup_grid() -> Vec<FiniteAlgebra> {
    let star = |a: FiniteAlgebra| fixtures::rename_symbol(&a, "^", "*");
    let sig = Signature::from_pairs(&[("*", 2)]);
    let make = |name: &str, n: usize, f: &dyn Fn(usize, usize) -> usize| {
        FiniteAlgebra::from_fn(name, sig.clone(), n, |_, a| f(a[0], a[1])).unwrap()
    };
    let mut out = vec![fixtures::trivial(&sig)];
    out.extend([2, 3].map(fixtures::left_zero));
    out.extend([2, 3].map(fixtures::right_zero));
    out.extend(fixtures::small_semilattices(4).into_iter().filter(|s| s.size() > 1).map(star));
    out.extend([2, 3, 4].map(fixtures::cyclic_group));
    out.push(make("klein", 4, &|x, y| x ^ y));
    out.push(make("null2", 2, &|_, _| 0));
    out.push(make("null3", 3, &|_, _| 0));
    out.push(make("z4mul", 4, &|x, y| x * y % 4));
    out.push(make("rect22", 4, &|x, y| (x & 2) | (y & 1)));
    out.push(make("c2zero", 3, &|x, y| if x == 0 || y == 0 { 0 } else { 1 + (x + y) % 2 }));
    out.push(make("lz2one", 3, &|x, y| if x == 2 { y } else { x }));
    out
}

/// Criterion 4: S ⊆ SP ⊆ HSP on a grid of small semigroups, with replaying
/// negative witnesses.
fn membership_suite() -> Outcome {
    let grid = semigroup_grid();
    let mut cases = 0usize;
    let mut counts = [0usize; 3];
    for a in &grid {
        for b in &grid {
            let s = operator_membership(a, std::slice::from_ref(b), ClassOperator::S, HsCaps::default())
                .map_err(|e| e.to_string())?
                .holds;
            let sp = operator_membership(a, std::slice::from_ref(b), ClassOperator::SP, HsCaps::default())
                .map_err(|e| e.to_string())?
                .holds;
            let hsp = in_hsp(a, b, FreeCaps::default()).map_err(|e| format!("{} in HSP({}): {e}", a.name(), b.name()))?;
            check(!s || sp, || format!("{} in S({}) but not SP", a.name(), b.name()))?;
            check(!sp || hsp.holds, || format!("{} in SP({}) but not HSP", a.name(), b.name()))?;
            if !hsp.holds {
                match &hsp.witness {
                    Witness::FailingEquation { lhs, rhs, assignment } => {
                        let in_b = satisfies_equation(std::slice::from_ref(b), lhs, rhs).map_err(|e| e.to_string())?;
                        check(in_b.is_none() && lhs.eval(a, assignment) != rhs.eval(a, assignment), || {
                            format!("witness for {} vs {} does not replay", a.name(), b.name())
                        })?;
                    }
                    other => return Err(format!("unexpected negative witness {other:?}")),
                }
            }
            counts[0] += s as usize;
            counts[1] += sp as usize;
            counts[2] += hsp.holds as usize;
            cases += 1;
        }
    }
    check(cases >= 500, || format!("only {cases} cases"))?;
    let lz = fixtures::left_zero(2);
    let rz = fixtures::right_zero(2);
    check(!in_hsp(&lz, &rz, FreeCaps::default()).map_err(|e| e.to_string())?.holds, || "left-zero in HSP(right-zero)".into())?;
    let sl = fixtures::semilattice2();
    let sq = direct_product(&[sl.clone(), sl.clone()]).map_err(|e| e.to_string())?;
    check(in_hsp(&sq, &sl, FreeCaps::default()).map_err(|e| e.to_string())?.holds, || "S2 x S2 not in HSP(S2)".into())?;
    Ok(format!("{cases} cases; S {} / SP {} / HSP {} positives", counts[0], counts[1], counts[2]))
}

/// Criterion 5: the universal Horn sentence for `{S2}` against SP membership.
fn uh_suite() -> Outcome {
    let s = fixtures::semilattice2();
    let phi = build_uh_sentence(std::slice::from_ref(&s), false).map_err(|e| e.to_string())?;
    let fixtures_list: Vec<FiniteAlgebra> = (1..=4).flat_map(fixtures::labelled_semilattices).collect();
    check(fixtures_list.len() >= 50, || format!("only {} fixtures", fixtures_list.len()))?;
    for k in &fixtures_list {
        let sentence = holds(k, &phi).map_err(|e| e.to_string())?;
        let sp = operator_membership(k, std::slice::from_ref(&s), ClassOperator::SP, HsCaps::default())
            .map_err(|e| e.to_string())?
            .holds;
        check(sentence == sp, || format!("{}: sentence {sentence}, SP {sp}", k.name()))?;
    }
    Ok(format!("{} semilattice-based fixtures, 100% agreement", fixtures_list.len()))
}

/// Criterion 6: the π formula against maximal separating congruences on
/// flat lattices.
fn pi_suite() -> Outcome {
    let mut agree = [0usize; 3];
    let mut total = 0usize;
    let mut first_reject: Vec<String> = Vec::new();
    for l in fixtures::small_lattices(4) {
        let k = flat_extension(&PartialAlgebra::from(&l), true, true).algebra;
        for x in 0..k.size() {
            for y in 0..k.size() {
                if x == y {
                    continue;
                }
                total += 1;
                let expected = max_separating_congruence(&k, x, y).map_err(|e| e.to_string())?;
                for (i, v) in PiVariant::ALL.into_iter().enumerate() {
                    match pi_relation(&k, v, x, y).map_err(|e| e.to_string())? {
                        Ok(p) if p == expected => agree[i] += 1,
                        Ok(_) => {}
                        Err(reason) => {
                            if first_reject.len() < PiVariant::ALL.len() && !first_reject.iter().any(|r| r.starts_with(v.name())) {
                                first_reject.push(format!("{} on {} at ({x},{y}): {reason}", v.name(), l.name()));
                            }
                        }
                    }
                }
            }
        }
    }
    let summary = format!(
        "{total} pairs; verbatim {}/{total}, swapped {}/{total}, case-split {}/{total}",
        agree[0], agree[1], agree[2]
    );
    check(agree[0] == total || agree[1] == total, || summary.clone())?;
    let note = if agree[0] == total {
        String::new()
    } else {
        format!("; verbatim rejected, e.g. {}", first_reject.first().cloned().unwrap_or_default())
    };
    Ok(format!("{summary}{note}"))
}

/// Criterion 7: the law separating `S_n` from `T_n`, and the game engine
/// against the exhaustive game tree.
fn mckenzie_suite() -> Outcome {
    for n in [4usize, 5] {
        let s = mckenzie_algebra(n, McKenzieVariant::S).map_err(|e| e.to_string())?;
        let t = mckenzie_algebra(n, McKenzieVariant::T).map_err(|e| e.to_string())?;
        for i in 1..n - 2 {
            let (lhs, rhs) = claim1_law(n, i).map_err(|e| e.to_string())?;
            let cex = satisfies_equation(std::slice::from_ref(&s), &lhs, &rhs).map_err(|e| e.to_string())?;
            check(cex.is_none(), || format!("S{n} fails the law at i={i}: {cex:?}"))?;
            let mut env: Vec<usize> = (0..n).map(|j| mckenzie_element(n, 'c', j).unwrap()).collect();
            env.push(mckenzie_element(n, 'd', 1).unwrap());
            let (l, r) = (lhs.eval(&t, &env), rhs.eval(&t, &env));
            check(l != r, || format!("T{n} satisfies the law at the c/d assignment, i={i}"))?;
        }
    }
    let mut table = Vec::new();
    for n in 2..=5usize {
        let s = mckenzie_algebra(n, McKenzieVariant::S).map_err(|e| e.to_string())?;
        let t = mckenzie_algebra(n, McKenzieVariant::T).map_err(|e| e.to_string())?;
        for k in 0..=3usize {
            let engine = back_and_forth(&s, &t, k).map_err(|e| e.to_string())?;
            let oracle = duplicator_wins(&s, &t, &mut Vec::new(), k);
            check(engine == oracle, || format!("n={n}, k={k}: engine {engine}, game tree {oracle}"))?;
            table.push(format!("n{n}k{k}={}", if engine { "eq" } else { "ne" }));
        }
    }
    Ok(format!("laws hold in S4,S5 and fail in T4,T5; games agree: {}", table.join(" ")))
}

/// Criterion 8: trivial subgroups in the idempotent-generated part of the
/// Rees matrix semigroups.
fn rees_suite() -> Outcome {
    let three = rees_over_c2(3, true).map_err(|e| e.to_string())?;
    let n = three.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let m = |a, b| three.apply2(0, a, b);
                check(m(m(x, y), z) == m(x, m(y, z)), || format!("A3 not associative at {x},{y},{z}"))?;
            }
        }
    }
    let plain3 = rees_over_c2(3, false).map_err(|e| e.to_string())?;
    check(plain3.is_associative(0), || "B3 not associative".into())?;
    for n in 3..=5 {
        let a = rees_over_c2(n, true).map_err(|e| e.to_string())?;
        let b = rees_over_c2(n, false).map_err(|e| e.to_string())?;
        let ca = idempotent_trivial_subgroups(&a).map_err(|e| e.to_string())?;
        let cb = idempotent_trivial_subgroups(&b).map_err(|e| e.to_string())?;
        check(!ca.holds && cb.holds, || format!("n={n}: A {} B {}", ca.holds, cb.holds))?;
        let (x, word) = ca.offender.ok_or("no offender")?;
        let prod = word[1..].iter().fold(word[0], |acc, &e| a.apply2(0, acc, e));
        let sq = a.apply2(0, x, x);
        check(prod == x && word.iter().all(|&e| a.apply2(0, e, e) == e), || "bad factorization".into())?;
        check(a.apply2(0, sq, x) == x && sq != x, || "offender is not in a nontrivial subgroup".into())?;
    }
    Ok("A_n fails and B_n passes for n = 3, 4, 5; associativity exhaustive at n = 3".into())
}

/// Criterion 9: every block of the reverse translation is hom-equivalent to
/// the original digraph.
fn csp_suite() -> Outcome {
    let mut blocks = 0usize;
    let mut graphs = 0usize;
    for n in 1..=3usize {
        for mask in 0u32..(1u32 << (n * n)) {
            let g = digraph_from_mask(n, mask);
            let k = csp_to_algebra(&g);
            let inst = algebra_to_csp_instances(&k, g.signature()).map_err(|e| e.to_string())?;
            graphs += 1;
            for i in 0..inst.blocks.len() {
                let block = inst.block(i);
                let there = solve(&block, &g).map_err(|e| e.to_string())?;
                let back = solve(&g, &block).map_err(|e| e.to_string())?;
                check(there.is_some() == rel_hom_exists(&block, &g), || "solver disagrees with enumeration".into())?;
                check(back.is_some() == rel_hom_exists(&g, &block), || "solver disagrees with enumeration".into())?;
                check(there.is_some() && back.is_some(), || {
                    format!("mask {mask}, n {n}: block {:?} not hom-equivalent", inst.blocks[i].0)
                })?;
                blocks += 1;
            }
        }
    }
    Ok(format!("{graphs} digraphs, {blocks} blocks, all hom-equivalent"))
}

fn sentence_pool(sig: &Signature, ops: &[&str]) -> Vec<Formula> {
    let v = Term::Var;
    let ops: Vec<usize> = ops.iter().map(|o| sig.index_of(o).unwrap()).collect();
    let mut atoms: Vec<(Formula, usize)> = Vec::new();
    let terms = |k: usize| -> Vec<Term> {
        let mut ts: Vec<Term> = (0..k).map(v).collect();
        for &f in &ops {
            for i in 0..k {
                for j in 0..k {
                    ts.push(Term::binary(f, v(i), v(j)));
                }
            }
        }
        ts
    };
    for k in 1..=3 {
        let ts = terms(k);
        for (i, s) in ts.iter().enumerate() {
            for t in &ts[i + 1..] {
                if s.var_count().max(t.var_count()) == k {
                    atoms.push((Formula::eq(s.clone(), t.clone()), k));
                }
            }
        }
    }
    let mut pool = Vec::new();
    let prefixes: [&[bool]; 8] = [
        &[true], &[false], &[true, false], &[false, true], &[true, true],
        &[true, true, false], &[true, false, true], &[false, true, false],
    ];
    for (n, (atom, k)) in atoms.iter().enumerate() {
        let body = if n % 3 == 1 {
            Formula::not(atom.clone())
        } else if n % 3 == 2 {
            Formula::Or(vec![atom.clone(), Formula::eq(v(0), v(k - 1))])
        } else {
            atom.clone()
        };
        for (m, prefix) in prefixes.iter().enumerate() {
            if prefix.len() != *k || (n + m) % 4 != 0 {
                continue;
            }
            let mut f = body.clone();
            for (i, &all) in prefix.iter().enumerate().rev() {
                f = if all { Formula::Forall(i, Box::new(f)) } else { Formula::Exists(i, Box::new(f)) };
            }
            pool.push(f);
        }
    }
    // a few non-prenex shapes
    let m = ops[0];
    pool.push(Formula::forall(
        [0],
        Formula::And(vec![
            Formula::exists([1], Formula::neq(Term::binary(m, v(0), v(1)), v(0))),
            Formula::exists([2], Formula::eq(Term::binary(m, v(2), v(0)), v(2))),
        ]),
    ));
    pool.push(Formula::exists(
        [0],
        Formula::forall([1], Formula::Or(vec![Formula::eq(v(1), v(0)), Formula::exists([2], Formula::eq(Term::binary(m, v(1), v(2)), v(0)))])),
    ));
    pool
}

/// Criterion 10: ≃_3-equivalent fixtures agree on a pool of rank ≤ 3
/// sentences.
fn ef_suite() -> Outcome {
    let mut families: Vec<(Vec<FiniteAlgebra>, Vec<&str>)> = Vec::new();
    let mut chains: Vec<FiniteAlgebra> = (1..=9).map(fixtures::chain_semilattice).collect();
    chains.extend(fixtures::labelled_semilattices(3));
    chains.extend(fixtures::small_semilattices(4));
    families.push((chains, vec!["^"]));
    let mut mck = Vec::new();
    for n in 2..=7 {
        mck.push(mckenzie_algebra(n, McKenzieVariant::S).map_err(|e| e.to_string())?);
        mck.push(mckenzie_algebra(n, McKenzieVariant::T).map_err(|e| e.to_string())?);
    }
    families.push((mck, vec!["*", "^"]));
    let mut pairs = 0usize;
    let mut non_iso = 0usize;
    let mut evaluations = 0usize;
    let mut pool_sizes = Vec::new();
    for (algebras, ops) in &families {
        let sig = algebras[0].signature().clone();
        let pool = sentence_pool(&sig, ops);
        check(pool.len() >= 30 && pool.iter().all(|f| f.quantifier_rank() <= 3 && f.is_sentence()), || {
            format!("pool has {} sentences", pool.len())
        })?;
        pool_sizes.push(pool.len());
        let values: Vec<Vec<bool>> = algebras
            .iter()
            .map(|a| pool.iter().map(|f| holds(a, f).unwrap()).collect())
            .collect();
        for i in 0..algebras.len() {
            for j in i..algebras.len() {
                if !back_and_forth(&algebras[i], &algebras[j], 3).map_err(|e| e.to_string())? {
                    continue;
                }
                pairs += 1;
                if ualg::hom::is_isomorphic(&algebras[i], &algebras[j]).is_none() {
                    non_iso += 1;
                }
                evaluations += pool.len();
                if let Some(f) = (0..pool.len()).find(|&f| values[i][f] != values[j][f]) {
                    return Err(format!(
                        "{} and {} are 3-equivalent but differ on {}",
                        algebras[i].name(),
                        algebras[j].name(),
                        pool[f].display(&sig)
                    ));
                }
            }
        }
    }
    Ok(format!(
        "pools {pool_sizes:?}; {pairs} equivalent pairs ({non_iso} non-isomorphic), {evaluations} comparisons, no disagreement"
    ))
}

/// Criterion 11: Skolemisation over the free semilattices preserves truth on
/// small semilattices.
fn skolem_suite() -> Outcome {
    let s = fixtures::semilattice2();
    let sig = s.signature().clone();
    let texts = [
        "(all v0 (ex v1 (eq (^ v0 v1) v1)))",
        "(all v0 (ex v1 (and (eq (^ v0 v1) v0) (eq (^ v1 v0) v0))))",
        "(all v0 (all v1 (ex v2 (eq v2 (^ v0 v1)))))",
        "(all v0 (all v1 (ex v2 (and (eq (^ v0 v2) v2) (eq (^ v1 v2) v2)))))",
        "(all v0 (all v1 (ex v2 (and (or (eq (^ v0 v1) v0) (eq (^ v0 v1) v1)) (eq (^ v2 v0) v2)))))",
        "(all v0 (ex v1 (and (not (eq v1 v0)) (eq (^ v0 v1) v1))))",
        "(all v0 (all v1 (ex v2 (imp (not (eq v0 v1)) (and (eq v2 (^ v0 v1)) (or (not (eq v2 v0)) (not (eq v2 v1))))))))",
        "(all v0 (all v1 (all v2 (ex v3 (eq v3 (^ v0 (^ v1 v2)))))))",
        "(all v0 (all v1 (ex v2 (ex v3 (and (eq v2 (^ v0 v1)) (eq v3 (^ v2 v0)))))))",
        "(all v0 (all v1 (ex v2 (imp (eq (^ v0 v1) v1) (eq v2 v0)))))",
        "(all v0 (all v1 (all v2 (ex v3 (or (eq v0 v1) (eq v1 v2) (eq v0 v2))))))",
        "(all v0 (all v1 (ex v2 (imp (not (eq (^ v0 v1) v0)) (and (not (eq v2 v0)) (eq (^ v2 v0) v2))))))",
    ];
    let members: Vec<FiniteAlgebra> = (1..=4).flat_map(fixtures::labelled_semilattices).collect();
    let mut agreements = 0usize;
    let mut truths = 0usize;
    for text in texts {
        let phi = Formula::parse(text, &sig).map_err(|e| e.to_string())?;
        let (xs, _, _) = ualg::logic::ae_prefix(&phi).map_err(|e| e.to_string())?;
        let basis = free_algebra(std::slice::from_ref(&s), xs.len(), FreeCaps::default()).map_err(|e| e.to_string())?;
        let phi2 = skolemize_ae(&basis, &phi).map_err(|e| e.to_string())?;
        check(phi2.is_universal(), || format!("{text}: result not universal"))?;
        for a in &members {
            let (p, q) = (holds(a, &phi).map_err(|e| e.to_string())?, holds(a, &phi2).map_err(|e| e.to_string())?);
            check(p == q, || format!("{text} on {}: original {p}, skolemized {q}", a.name()))?;
            agreements += 1;
            truths += p as usize;
        }
    }
    Ok(format!(
        "{} sentences x {} semilattices, {agreements} agreements ({truths} true)",
        texts.len(),
        members.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("congruence engines vs congruence lattices", congruence_suite),
        ("gadget class verdict vs non-reachability", gadget_suite),
        ("free semilattice basis and normal forms", birkhoff_suite),
        ("membership monotonicity and witnesses", membership_suite),
        ("universal Horn sentence vs SP membership", uh_suite),
        ("pi formula vs maximal separating congruences", pi_suite),
        ("S_n/T_n law and game-tree agreement", mckenzie_suite),
        ("Rees matrix idempotent subgroups", rees_suite),
        ("CSP translation round trip", csp_suite),
        ("EF equivalence vs sentence pool", ef_suite),
        ("Skolemisation agreement", skolem_suite),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    let mut total = Duration::ZERO;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        total += took;
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{:.1}s]", i + 1, took.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{:.1}s]", i + 1, took.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} failed, total {:.1}s", failed, total.as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
