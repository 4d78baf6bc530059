//! First-order formulas over an operation signature with equality.

use std::collections::BTreeSet;

use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};
use crate::sexpr::{self, SExpr};
use crate::term::Term;

/// A first-order formula. `And(vec![])` is true and `Or(vec![])` is false.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Exists(usize, Box<Formula>),
    Forall(usize, Box<Formula>),
}

impl Formula {
    pub fn eq(s: Term, t: Term) -> Formula {
        Formula::Eq(s, t)
    }

    pub fn neq(s: Term, t: Term) -> Formula {
        Formula::Not(Box::new(Formula::Eq(s, t)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn imp(p: Formula, q: Formula) -> Formula {
        Formula::Imp(Box::new(p), Box::new(q))
    }

    /// `(p → q) ∧ (q → p)`.
    pub fn iff(p: Formula, q: Formula) -> Formula {
        Formula::And(vec![Formula::imp(p.clone(), q.clone()), Formula::imp(q, p)])
    }

    pub fn truth() -> Formula {
        Formula::And(vec![])
    }

    pub fn falsity() -> Formula {
        Formula::Or(vec![])
    }

    /// Quantifies `vars` existentially, outermost first.
    pub fn exists(vars: impl IntoIterator<Item = usize, IntoIter: DoubleEndedIterator>, body: Formula) -> Formula {
        vars.into_iter()
            .rev()
            .fold(body, |acc, v| Formula::Exists(v, Box::new(acc)))
    }

    /// Quantifies `vars` universally, outermost first.
    pub fn forall(vars: impl IntoIterator<Item = usize, IntoIter: DoubleEndedIterator>, body: Formula) -> Formula {
        vars.into_iter()
            .rev()
            .fold(body, |acc, v| Formula::Forall(v, Box::new(acc)))
    }

    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::Eq(..) => 0,
            Formula::Not(p) => p.quantifier_rank(),
            Formula::And(ps) | Formula::Or(ps) => ps.iter().map(Formula::quantifier_rank).max().unwrap_or(0),
            Formula::Imp(p, q) => p.quantifier_rank().max(q.quantifier_rank()),
            Formula::Exists(_, p) | Formula::Forall(_, p) => 1 + p.quantifier_rank(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<usize> {
        fn term_vars(t: &Term, out: &mut BTreeSet<usize>) {
            match t {
                Term::Var(i) => {
                    out.insert(*i);
                }
                Term::Op(_, args) => args.iter().for_each(|a| term_vars(a, out)),
            }
        }
        match self {
            Formula::Eq(s, t) => {
                let mut out = BTreeSet::new();
                term_vars(s, &mut out);
                term_vars(t, &mut out);
                out
            }
            Formula::Not(p) => p.free_vars(),
            Formula::And(ps) | Formula::Or(ps) => ps.iter().flat_map(Formula::free_vars).collect(),
            Formula::Imp(p, q) => {
                let mut out = p.free_vars();
                out.extend(q.free_vars());
                out
            }
            Formula::Exists(v, p) | Formula::Forall(v, p) => {
                let mut out = p.free_vars();
                out.remove(v);
                out
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Largest variable index occurring anywhere, bound or free.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Formula::Eq(s, t) => s.max_var().max(t.max_var()),
            Formula::Not(p) => p.max_var(),
            Formula::And(ps) | Formula::Or(ps) => ps.iter().filter_map(Formula::max_var).max(),
            Formula::Imp(p, q) => p.max_var().max(q.max_var()),
            Formula::Exists(v, p) | Formula::Forall(v, p) => Some((*v).max(p.max_var().unwrap_or(0))),
        }
    }

    /// Whether no quantifier rebinds a variable bound further out.
    pub fn no_shadowing(&self) -> bool {
        fn go(f: &Formula, bound: &mut Vec<usize>) -> bool {
            match f {
                Formula::Eq(..) => true,
                Formula::Not(p) => go(p, bound),
                Formula::And(ps) | Formula::Or(ps) => ps.iter().all(|p| go(p, bound)),
                Formula::Imp(p, q) => go(p, bound) && go(q, bound),
                Formula::Exists(v, p) | Formula::Forall(v, p) => {
                    if bound.contains(v) {
                        return false;
                    }
                    bound.push(*v);
                    let ok = go(p, bound);
                    bound.pop();
                    ok
                }
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Eq(..) => true,
            Formula::Not(p) => p.is_quantifier_free(),
            Formula::And(ps) | Formula::Or(ps) => ps.iter().all(Formula::is_quantifier_free),
            Formula::Imp(p, q) => p.is_quantifier_free() && q.is_quantifier_free(),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    /// Universal prefix followed by a quantifier-free matrix.
    pub fn is_universal(&self) -> bool {
        match self {
            Formula::Forall(_, p) => p.is_universal(),
            other => other.is_quantifier_free(),
        }
    }

    /// Replaces each atom `s ≈ t` by `f(s, t)`.
    pub fn map_atoms(&self, f: &impl Fn(&Term, &Term) -> Formula) -> Formula {
        match self {
            Formula::Eq(s, t) => f(s, t),
            Formula::Not(p) => Formula::not(p.map_atoms(f)),
            Formula::And(ps) => Formula::And(ps.iter().map(|p| p.map_atoms(f)).collect()),
            Formula::Or(ps) => Formula::Or(ps.iter().map(|p| p.map_atoms(f)).collect()),
            Formula::Imp(p, q) => Formula::imp(p.map_atoms(f), q.map_atoms(f)),
            Formula::Exists(v, p) => Formula::Exists(*v, Box::new(p.map_atoms(f))),
            Formula::Forall(v, p) => Formula::Forall(*v, Box::new(p.map_atoms(f))),
        }
    }

    /// Applies `f` to every term of every atom.
    pub fn map_terms(&self, f: &impl Fn(&Term) -> Term) -> Formula {
        self.map_atoms(&|s, t| Formula::Eq(f(s), f(t)))
    }

    /// Renames free and bound variables by `f`.
    pub fn rename_vars(&self, f: &impl Fn(usize) -> usize) -> Formula {
        match self {
            Formula::Eq(s, t) => Formula::Eq(s.rename_vars(f), t.rename_vars(f)),
            Formula::Not(p) => Formula::not(p.rename_vars(f)),
            Formula::And(ps) => Formula::And(ps.iter().map(|p| p.rename_vars(f)).collect()),
            Formula::Or(ps) => Formula::Or(ps.iter().map(|p| p.rename_vars(f)).collect()),
            Formula::Imp(p, q) => Formula::imp(p.rename_vars(f), q.rename_vars(f)),
            Formula::Exists(v, p) => Formula::Exists(f(*v), Box::new(p.rename_vars(f))),
            Formula::Forall(v, p) => Formula::Forall(f(*v), Box::new(p.rename_vars(f))),
        }
    }

    /// Rewrites operation symbol indices, e.g. to move a sentence into a
    /// larger signature.
    pub fn map_symbols(&self, f: &impl Fn(usize) -> usize) -> Formula {
        fn term(t: &Term, f: &impl Fn(usize) -> usize) -> Term {
            match t {
                Term::Var(i) => Term::Var(*i),
                Term::Op(s, args) => Term::Op(f(*s), args.iter().map(|a| term(a, f)).collect()),
            }
        }
        self.map_terms(&|t| term(t, f))
    }

    /// Number of nodes, atoms and connectives alike.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(..) => 1,
            Formula::Not(p) | Formula::Exists(_, p) | Formula::Forall(_, p) => 1 + p.size(),
            Formula::And(ps) | Formula::Or(ps) => 1 + ps.iter().map(Formula::size).sum::<usize>(),
            Formula::Imp(p, q) => 1 + p.size() + q.size(),
        }
    }

    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Formula::Eq(s, t) => {
                s.check(sig)?;
                t.check(sig)
            }
            Formula::Not(p) | Formula::Exists(_, p) | Formula::Forall(_, p) => p.check(sig),
            Formula::And(ps) | Formula::Or(ps) => ps.iter().try_for_each(|p| p.check(sig)),
            Formula::Imp(p, q) => {
                p.check(sig)?;
                q.check(sig)
            }
        }
    }

    /// Prefix s-expression: `(all v0 (ex v1 (eq (^ v0 v1) v1)))`.
    pub fn display(&self, sig: &Signature) -> String {
        let mut out = String::new();
        self.write(sig, &mut out);
        out
    }

    fn write(&self, sig: &Signature, out: &mut String) {
        let list = |out: &mut String, head: &str, items: &[&Formula]| {
            out.push('(');
            out.push_str(head);
            for p in items {
                out.push(' ');
                p.write(sig, out);
            }
            out.push(')');
        };
        match self {
            Formula::Eq(s, t) => {
                out.push_str("(eq ");
                out.push_str(&s.display(sig));
                out.push(' ');
                out.push_str(&t.display(sig));
                out.push(')');
            }
            Formula::Not(p) => list(out, "not", &[p]),
            Formula::And(ps) => list(out, "and", &ps.iter().collect::<Vec<_>>()),
            Formula::Or(ps) => list(out, "or", &ps.iter().collect::<Vec<_>>()),
            Formula::Imp(p, q) => list(out, "imp", &[p, q]),
            Formula::Exists(v, p) => list(out, &format!("ex v{v}"), &[p]),
            Formula::Forall(v, p) => list(out, &format!("all v{v}"), &[p]),
        }
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<Formula> {
        Formula::from_sexpr(&sexpr::parse(text)?, sig)
    }

    fn from_sexpr(e: &SExpr, sig: &Signature) -> Result<Formula> {
        let items = match e {
            SExpr::List(items) if !items.is_empty() => items,
            _ => return Err(Error::parse(1, "formula must be a nonempty list")),
        };
        let head = match &items[0] {
            SExpr::Atom(a) => a.as_str(),
            SExpr::List(_) => return Err(Error::parse(1, "formula head must be a keyword")),
        };
        let args = &items[1..];
        let sub = |i: usize| Formula::from_sexpr(&args[i], sig);
        let arity = |want: usize| {
            if args.len() == want {
                Ok(())
            } else {
                Err(Error::parse(1, format!("`{head}` expects {want} arguments, got {}", args.len())))
            }
        };
        match head {
            "eq" => {
                arity(2)?;
                Ok(Formula::Eq(Term::from_sexpr(&args[0], sig)?, Term::from_sexpr(&args[1], sig)?))
            }
            "not" => {
                arity(1)?;
                Ok(Formula::not(sub(0)?))
            }
            "imp" => {
                arity(2)?;
                Ok(Formula::imp(sub(0)?, sub(1)?))
            }
            "and" | "or" => {
                let ps = (0..args.len()).map(sub).collect::<Result<Vec<_>>>()?;
                Ok(if head == "and" { Formula::And(ps) } else { Formula::Or(ps) })
            }
            "all" | "ex" => {
                arity(2)?;
                let v = match &args[0] {
                    SExpr::Atom(a) => sexpr::variable(a),
                    SExpr::List(_) => None,
                }
                .ok_or_else(|| Error::parse(1, format!("`{head}` must bind a variable `v<i>`")))?;
                let body = Box::new(sub(1)?);
                Ok(if head == "all" { Formula::Forall(v, body) } else { Formula::Exists(v, body) })
            }
            other => Err(Error::parse(1, format!("unknown connective `{other}`"))),
        }
    }
}

/// Default cap on quantifier instantiations during evaluation.
pub const DEFAULT_ASSIGNMENT_CAP: u64 = 2_000_000_000;

/// Tarskian evaluation with an instantiation budget.
pub struct Evaluator<'a> {
    algebra: &'a FiniteAlgebra,
    cap: u64,
    steps: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(algebra: &'a FiniteAlgebra, cap: u64) -> Self {
        Evaluator { algebra, cap, steps: 0 }
    }

    /// Quantifier instantiations performed so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Evaluates `f` with variable `i` ↦ `env[i]` where given.
    pub fn evaluate(&mut self, f: &Formula, env: &[Option<usize>]) -> Result<bool> {
        f.check(self.algebra.signature())?;
        for v in f.free_vars() {
            match env.get(v).copied().flatten() {
                Some(x) if x < self.algebra.size() => {}
                Some(x) => return Err(Error::Invalid(format!("v{v} assigned {x}, outside the universe"))),
                None => return Err(Error::UnassignedVariable(v)),
            }
        }
        let width = f.max_var().map_or(0, |m| m + 1).max(env.len());
        let mut vals: Vec<usize> = (0..width).map(|i| env.get(i).copied().flatten().unwrap_or(0)).collect();
        self.eval(f, &mut vals)
    }

    fn eval(&mut self, f: &Formula, env: &mut Vec<usize>) -> Result<bool> {
        Ok(match f {
            Formula::Eq(s, t) => s.eval(self.algebra, env) == t.eval(self.algebra, env),
            Formula::Not(p) => !self.eval(p, env)?,
            Formula::And(ps) => {
                for p in ps {
                    if !self.eval(p, env)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(ps) => {
                for p in ps {
                    if self.eval(p, env)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Imp(p, q) => !self.eval(p, env)? || self.eval(q, env)?,
            Formula::Exists(v, p) | Formula::Forall(v, p) => {
                let want = matches!(f, Formula::Exists(..));
                let saved = env[*v];
                let mut result = !want;
                for x in 0..self.algebra.size() {
                    self.steps += 1;
                    if self.steps > self.cap {
                        return Err(Error::CapExceeded {
                            what: "assignment",
                            limit: self.cap.min(usize::MAX as u64) as usize,
                            progress: "evaluation aborted".into(),
                        });
                    }
                    env[*v] = x;
                    if self.eval(p, env)? == want {
                        result = want;
                        break;
                    }
                }
                env[*v] = saved;
                result
            }
        })
    }
}

/// Evaluates `f` in `a` under `env` with the default instantiation cap.
pub fn evaluate(a: &FiniteAlgebra, f: &Formula, env: &[Option<usize>]) -> Result<bool> {
    Evaluator::new(a, DEFAULT_ASSIGNMENT_CAP).evaluate(f, env)
}

/// Evaluates a sentence.
pub fn holds(a: &FiniteAlgebra, f: &Formula) -> Result<bool> {
    evaluate(a, f, &[])
}

/// Quantifier rank.
pub fn quantifier_rank(f: &Formula) -> usize {
    f.quantifier_rank()
}
