use ualg::algebra::{FiniteAlgebra, RelStructure, Signature};
use ualg::congruence::{self, cg};
use ualg::constructions::{self as cons, McKenzieVariant};
use ualg::efgame::{Game, Side};
use ualg::format::{self, write_algebra, write_mapping, write_partition, write_relstructure};
use ualg::freealg::{self, FreeCaps};
use ualg::logic::{holds, Formula};
use ualg::membership::{self, ClassOperator, HsCaps, MembershipVerdict, Witness};
use ualg::partition::Partition;
use ualg::term::Term;

use crate::report::{CliError, Report};
use crate::verify;
use crate::{Command, Construction, OutputFormat, RunConfig};

type Outcome = Result<Report, CliError>;

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e))
}

fn algebra(path: &str) -> Result<FiniteAlgebra, CliError> {
    Ok(format::load_algebra(&read(path)?)?)
}

fn algebras(paths: &[String]) -> Result<Vec<FiniteAlgebra>, CliError> {
    paths.iter().map(|p| algebra(p)).collect()
}

fn relstructure(path: &str) -> Result<RelStructure, CliError> {
    Ok(format::load_relstructure(&read(path)?)?)
}

fn elements_in(a: &FiniteAlgebra, xs: &[usize]) -> Result<(), CliError> {
    match xs.iter().find(|&&x| x >= a.size()) {
        Some(x) => Err(CliError::Usage(format!("element {x} outside universe of size {}", a.size()))),
        None => Ok(()),
    }
}

fn free_caps(cfg: &RunConfig) -> FreeCaps {
    FreeCaps {
        max_size: cfg.max_free as usize,
        max_vector: cfg.max_vec as usize,
    }
}

fn checked(cfg: &RunConfig, report: &mut Report, check: impl FnOnce() -> Result<(), String>) -> Result<(), CliError> {
    if cfg.verify_witness {
        check().map_err(CliError::Verification)?;
        report.line("witness: verified");
    }
    Ok(())
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn blocks_line(p: &Partition) -> String {
    join(p.blocks().iter().map(|b| format!("{{{}}}", b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))))
}

pub fn dispatch(command: &Command, cfg: &RunConfig) -> Outcome {
    let OutputFormat::Text = cfg.format;
    match command {
        Command::Cg { algebra: path, elements } => cg_cmd(cfg, path, elements),
        Command::Si { algebra: path } => si_cmd(cfg, path),
        Command::Congclass { algebra: path, elements } => congclass_cmd(cfg, path, elements),
        Command::Decompose { algebra: path } => decompose_cmd(cfg, path),
        Command::Syncong { algebra: path, elements } => syncong_cmd(cfg, path, elements),
        Command::Division { algebra: path } => division_cmd(cfg, path),
        Command::Free { k, algebras: paths } => free_cmd(cfg, paths, *k),
        Command::Normalize { k, term, algebras: paths } => normalize_cmd(cfg, paths, *k, term),
        Command::Eq { lhs, rhs, algebras: paths } => eq_cmd(cfg, paths, lhs, rhs),
        Command::Member { operator, algebra: a, class } => member_cmd(cfg, operator, a, class),
        Command::Hsp { algebra: a, generator } => hsp_cmd(cfg, a, generator),
        Command::Ef { a, b, rounds, trace } => ef_cmd(cfg, a, b, *rounds, *trace),
        Command::Construct(c) => construct_cmd(c),
        Command::Csp { instance, template } => csp_cmd(cfg, instance, template),
        Command::FormulaEval { algebra: a, formula } => formula_cmd(a, formula),
    }
}

fn cg_cmd(cfg: &RunConfig, path: &str, elements: &[usize]) -> Outcome {
    let a = algebra(path)?;
    if !elements.len().is_multiple_of(2) {
        return Err(CliError::Usage("cg expects an even number of elements (pairs)".into()));
    }
    elements_in(&a, elements)?;
    let pairs: Vec<(usize, usize)> = elements.chunks(2).map(|p| (p[0], p[1])).collect();
    let theta = cg(&a, &pairs);
    let mut r = Report::success();
    r.line(format!("classes: {}", blocks_line(&theta)));
    r.block(&write_partition(&theta));
    checked(cfg, &mut r, || verify::generated_congruence(&a, &pairs, &theta))?;
    Ok(r)
}

fn si_cmd(cfg: &RunConfig, path: &str) -> Outcome {
    let a = algebra(path)?;
    match congruence::monolith(&a) {
        Some(m) => {
            let mut r = Report::verdict("verdict", true);
            r.line(format!("monolith generated by: {} {}", m.pair.0, m.pair.1));
            r.line(format!("monolith classes: {}", blocks_line(&m.congruence)));
            r.block(&write_partition(&m.congruence));
            checked(cfg, &mut r, || verify::monolith_pair(&a, m.pair, &m.congruence))?;
            Ok(r)
        }
        None => {
            let mut r = Report::verdict("verdict", false);
            if a.size() < 2 {
                r.line("reason: one-element algebra");
                return Ok(r);
            }
            // principal congruences whose intersection is the identity
            let mut meet = Partition::total(a.size());
            let mut pairs = Vec::new();
            'outer: for c in 0..a.size() {
                for d in c + 1..a.size() {
                    let next = meet.meet(&cg(&a, &[(c, d)]));
                    if next != meet {
                        pairs.push((c, d));
                        meet = next;
                    }
                    if meet.is_identity() {
                        break 'outer;
                    }
                }
            }
            r.line(format!(
                "intersecting to zero: {}",
                join(pairs.iter().map(|(c, d)| format!("Cg({c},{d})")))
            ));
            if cfg.witness {
                for &(c, d) in &pairs {
                    r.block(&write_partition(&cg(&a, &[(c, d)])));
                }
            }
            checked(cfg, &mut r, || verify::not_si(&a, &pairs))?;
            Ok(r)
        }
    }
}

fn congclass_cmd(cfg: &RunConfig, path: &str, elements: &[usize]) -> Outcome {
    let a = algebra(path)?;
    elements_in(&a, elements)?;
    let yes = congruence::is_congruence_class(&a, elements)?;
    let pairs: Vec<(usize, usize)> = elements.iter().map(|&x| (elements[0], x)).collect();
    let theta = cg(&a, &pairs);
    let mut r = Report::verdict("verdict", yes);
    r.line(format!("generated class: {}", join(theta.class_of(elements[0]))));
    if cfg.witness {
        r.block(&write_partition(&theta));
    }
    checked(cfg, &mut r, || verify::class_verdict(&a, elements, &theta, yes))?;
    Ok(r)
}

fn decompose_cmd(cfg: &RunConfig, path: &str) -> Outcome {
    let a = algebra(path)?;
    let factors = congruence::subdirect_decomposition(&a)?;
    let mut r = Report::success();
    r.line(format!("factors: {}", factors.len()));
    for (i, f) in factors.iter().enumerate() {
        r.line(format!(
            "factor {i}: separates {} {}, size {}",
            f.pair.0,
            f.pair.1,
            f.quotient.size()
        ));
        r.block(&write_partition(&f.congruence));
        if cfg.witness {
            r.block(&write_algebra(&f.quotient));
            r.block(&write_mapping(&f.projection));
        }
    }
    let congs: Vec<(usize, usize, Partition)> = factors.iter().map(|f| (f.pair.0, f.pair.1, f.congruence.clone())).collect();
    checked(cfg, &mut r, || verify::decomposition(&a, &congs))?;
    Ok(r)
}

fn syncong_cmd(cfg: &RunConfig, path: &str, elements: &[usize]) -> Outcome {
    let a = algebra(path)?;
    elements_in(&a, elements)?;
    let theta = congruence::syntactic_congruence(&a, elements);
    let mut r = Report::success();
    r.line(format!("classes: {}", blocks_line(&theta)));
    r.block(&write_partition(&theta));
    checked(cfg, &mut r, || verify::saturates(&a, elements, &theta))?;
    Ok(r)
}

fn division_cmd(cfg: &RunConfig, path: &str) -> Outcome {
    let a = algebra(path)?;
    let d = congruence::division_preorder(&a);
    let n = a.size();
    let mut r = Report::verdict("verdict", d.is_order());
    for x in 0..n {
        r.line(format!("{x} divides: {}", join((0..n).filter(|&y| d.divides(x, y)))));
    }
    let pair = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| d.divides(x, y) && d.divides(y, x));
    if let Some((x, y)) = pair {
        r.line(format!("mutual divisors: {x} {y}"));
    }
    checked(cfg, &mut r, || verify::division(&d, pair))?;
    Ok(r)
}

fn free_cmd(cfg: &RunConfig, paths: &[String], k: usize) -> Outcome {
    let ks = algebras(paths)?;
    let basis = freealg::free_algebra(&ks, k, free_caps(cfg))?;
    let mut r = Report::success();
    r.block(&freealg::write_basis(&basis)?);
    checked(cfg, &mut r, || verify::basis(&ks, &basis))?;
    Ok(r)
}

fn normalize_cmd(cfg: &RunConfig, paths: &[String], k: usize, text: &str) -> Outcome {
    let ks = algebras(paths)?;
    let sig = ks[0].signature().clone();
    let t = Term::parse(text, &sig)?;
    let basis = freealg::free_algebra(&ks, k, free_caps(cfg))?;
    let n = freealg::normalize_term(&basis, &t)?;
    let rep = &basis.terms()[n.index];
    let mut r = Report::success();
    r.line(format!("normal form: {} (element {})", rep.display(&sig), n.index));
    r.line(format!("trace: {} steps", n.trace.len()));
    for step in &n.trace {
        r.line(format!(
            "rewrite at [{}]: {} -> {}",
            join(&step.path),
            step.before.display(&sig),
            step.after.display(&sig)
        ));
    }
    checked(cfg, &mut r, || verify::normal_form(&ks, &t, rep, &n.trace))?;
    Ok(r)
}

fn eq_cmd(cfg: &RunConfig, paths: &[String], lhs: &str, rhs: &str) -> Outcome {
    let ks = algebras(paths)?;
    let sig = ks[0].signature().clone();
    let (s, t) = (Term::parse(lhs, &sig)?, Term::parse(rhs, &sig)?);
    match freealg::satisfies_equation(&ks, &s, &t)? {
        None => {
            let mut r = Report::verdict("verdict", true);
            checked(cfg, &mut r, || verify::equation_holds(&ks, &s, &t))?;
            Ok(r)
        }
        Some(cex) => {
            let mut r = Report::verdict("verdict", false);
            r.line(format!(
                "counterexample: {} at {}",
                ks[cex.algebra].name(),
                assignment(&cex.assignment)
            ));
            checked(cfg, &mut r, || verify::equation_fails(&ks[cex.algebra], &s, &t, &cex.assignment))?;
            Ok(r)
        }
    }
}

fn assignment(values: &[usize]) -> String {
    join(values.iter().enumerate().map(|(i, v)| format!("v{i}={v}")))
}

fn membership_report(cfg: &RunConfig, label: &str, v: &MembershipVerdict, a: &FiniteAlgebra) -> Report {
    let mut r = if !v.holds && !v.exhaustive {
        Report {
            code: 2,
            text: "verdict: unknown(cap)\n".into(),
        }
    } else {
        Report::verdict("verdict", v.holds)
    };
    r.line(format!("class: {label}"));
    if !v.report.is_empty() {
        r.line(format!("note: {}", v.report));
    }
    let sig = a.signature();
    match &v.witness {
        Witness::Embedding(h) => {
            r.line(format!("embedding into algebra {}", h.index));
            r.block(&write_mapping(&h.hom));
        }
        Witness::Surjection { index, subuniverse, hom } => {
            r.line(format!("surjection from algebra {index} on subuniverse {}", join(subuniverse)));
            r.block(&write_mapping(hom));
        }
        Witness::Separating(homs) => {
            r.line(format!("separating homomorphisms: {}", homs.len()));
            for h in homs {
                if cfg.witness {
                    r.line(format!("into algebra {}", h.index));
                    r.block(&write_mapping(&h.hom));
                }
            }
        }
        Witness::Inseparable(x, y) => r.line(format!("no homomorphism separates {x} {y}")),
        Witness::NoHomomorphism => r.line("no homomorphism exists"),
        Witness::FreeImage { generators, free_size } => {
            r.line(format!("generators: {}", join(generators)));
            r.line(format!("free image of size {free_size}"));
        }
        Witness::FailingEquation { lhs, rhs, assignment: env } => {
            r.line(format!("failing equation: {} = {}", lhs.display(sig), rhs.display(sig)));
            r.line(format!("assignment: {}", assignment(env)));
        }
        Witness::Factors(fs) => {
            r.line(format!("factors embedded: {}", fs.len()));
            for f in fs {
                r.line(format!("factor separating {} {} into algebra {}", f.pair.0, f.pair.1, f.embedding.index));
                if cfg.witness {
                    r.block(&write_mapping(&f.embedding.hom));
                }
            }
        }
        Witness::UnembeddableFactor { pair } => {
            r.line(format!("factor separating {} {} embeds nowhere", pair.0, pair.1))
        }
    }
    r
}

fn member_cmd(cfg: &RunConfig, operator: &str, a_path: &str, class: &[String]) -> Outcome {
    let op = ClassOperator::parse(operator)
        .ok_or_else(|| CliError::Usage(format!("unknown class operator `{operator}` (S, H, HS, SP, SP+)")))?;
    let a = algebra(a_path)?;
    let bs = algebras(class)?;
    let v = membership::operator_membership(&a, &bs, op, HsCaps::default())?;
    let mut r = membership_report(cfg, op.name(), &v, &a);
    if v.exhaustive || v.holds {
        checked(cfg, &mut r, || verify::membership(&a, &bs, op, &v))?;
    }
    Ok(r)
}

fn hsp_cmd(cfg: &RunConfig, a_path: &str, b_path: &str) -> Outcome {
    let a = algebra(a_path)?;
    let b = algebra(b_path)?;
    let v = membership::in_hsp(&a, &b, free_caps(cfg))?;
    let mut r = membership_report(cfg, "HSP", &v, &a);
    checked(cfg, &mut r, || verify::hsp(&a, &b, &v))?;
    Ok(r)
}

fn ef_cmd(cfg: &RunConfig, a_path: &str, b_path: &str, rounds: usize, trace: bool) -> Outcome {
    let a = algebra(a_path)?;
    let b = algebra(b_path)?;
    let mut game = Game::new(&a, &b, cfg.max_memo as usize)?;
    let eq = game.equivalent(rounds)?;
    let mut r = Report::verdict("equivalent", eq);
    if !eq && (trace || cfg.verify_witness) {
        let line = game
            .spoiler_line(rounds)?
            .ok_or_else(|| CliError::Verification("no Spoiler line for a Spoiler win".into()))?;
        if trace {
            r.line(format!("spoiler line: {} moves", line.len()));
            for (i, m) in line.iter().enumerate() {
                let side = match m.side {
                    Side::A => "A",
                    Side::B => "B",
                };
                let reply = m.reply.map_or("none".to_string(), |d| d.to_string());
                r.line(format!("round {}: spoiler {side} {}, duplicator {reply}", i + 1, m.element));
            }
        }
        checked(cfg, &mut r, || verify::spoiler_line(&a, &b, &line))?;
    }
    Ok(r)
}

fn template_signature(k: &FiniteAlgebra) -> Signature {
    let syms = k
        .signature()
        .symbols()
        .iter()
        .filter(|s| s.arity > 0 && s.name != cons::MEET && s.name != cons::PROJ)
        .cloned()
        .collect();
    Signature::new(syms).expect("subset of a valid signature")
}

fn construct_cmd(c: &Construction) -> Outcome {
    let mut r = Report::success();
    match c {
        Construction::Graphalg { graph } => r.block(&write_algebra(&cons::graph_algebra(&relstructure(graph)?)?)),
        Construction::Gadget { graph, u, v } => {
            let g = cons::cong_class_gadget(&relstructure(graph)?, *u, *v)?;
            r.line(format!("# designated pair {} {}", g.pair.0, g.pair.1));
            r.block(&write_algebra(&g.algebra));
        }
        Construction::Flat { algebra: path, proj, zero } => {
            let p = format::load_partial(&read(path)?)?;
            let flat = cons::flat_extension(&p, *proj, *zero);
            for (old, new) in &flat.renamed {
                r.line(format!("# renamed {old} to {new}"));
            }
            r.block(&write_algebra(&flat.algebra));
        }
        Construction::Mckenzie { n, variant } => {
            let v = if variant == "S" { McKenzieVariant::S } else { McKenzieVariant::T };
            r.block(&write_algebra(&cons::mckenzie_algebra(*n, v)?));
        }
        Construction::Rees { n, twisted, .. } => r.block(&write_algebra(&cons::rees_over_c2(*n, *twisted)?)),
        Construction::Csp2alg { structure } => r.block(&write_algebra(&cons::csp_to_algebra(&relstructure(structure)?))),
        Construction::Alg2csp { algebra: path } => {
            let k = algebra(path)?;
            let inst = cons::algebra_to_csp_instances(&k, &template_signature(&k))?;
            r.line(format!("# union of {} blocks", inst.blocks.len()));
            r.block(&write_relstructure(&inst.structure));
            for (i, ((x, y), _)) in inst.blocks.iter().enumerate() {
                r.line(format!("# block {x} {y} ({} reading)", inst.variants[i].name()));
                r.block(&write_relstructure(&inst.block(i)));
            }
        }
    }
    Ok(r)
}

fn csp_cmd(cfg: &RunConfig, instance: &str, template: &str) -> Outcome {
    let i = relstructure(instance)?;
    let t = relstructure(template)?;
    let h = ualg::csp::solve(&i, &t)?;
    let mut r = Report::verdict("hom", h.is_some());
    if let Some(h) = &h {
        r.block(&write_mapping(h));
        checked(cfg, &mut r, || {
            h.is_rel_homomorphism(&i, &t)
                .then_some(())
                .ok_or_else(|| "mapping is not a homomorphism".to_string())
        })?;
    }
    Ok(r)
}

fn formula_cmd(a_path: &str, text: &str) -> Outcome {
    let a = algebra(a_path)?;
    let text = match text.strip_prefix('@') {
        Some(path) => read(path)?,
        None => text.to_string(),
    };
    let f = Formula::parse(text.trim(), a.signature())?;
    if !f.is_sentence() {
        return Err(CliError::Usage("the formula has free variables".into()));
    }
    let mut r = Report::verdict("verdict", holds(&a, &f)?);
    r.line(format!("quantifier rank: {}", f.quantifier_rank()));
    Ok(r)
}
