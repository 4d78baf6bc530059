//! Terms over a signature and their evaluation in finite algebras.

use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};
use crate::sexpr::{self, SExpr};

/// A term: a variable index or an operation symbol (by signature index)
/// applied to subterms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Op(usize, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn op(symbol: usize, args: Vec<Term>) -> Term {
        Term::Op(symbol, args)
    }

    pub fn binary(symbol: usize, x: Term, y: Term) -> Term {
        Term::Op(symbol, vec![x, y])
    }

    /// Variables have height 0; `f(t1..tn)` is one more than the tallest
    /// argument (so nullary symbols have height 1).
    pub fn height(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op(_, args) => 1 + args.iter().map(Term::height).max().unwrap_or(0),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Op(_, args) => 1 + args.iter().map(Term::node_count).sum::<usize>(),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::Op(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    /// Number of variables needed in an environment: max index + 1.
    pub fn var_count(&self) -> usize {
        self.max_var().map_or(0, |m| m + 1)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        match self {
            Term::Var(i) => *i == v,
            Term::Op(_, args) => args.iter().any(|t| t.contains_var(v)),
        }
    }

    /// Checks that every symbol exists in `sig` with the right arity.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::Op(f, args) => {
                if *f >= sig.len() {
                    return Err(Error::UnknownSymbol(format!("#{f}")));
                }
                if sig.arity(*f) != args.len() {
                    return Err(Error::UnknownSymbol(format!(
                        "{} applied to {} arguments",
                        sig.symbol(*f).name,
                        args.len()
                    )));
                }
                args.iter().try_for_each(|t| t.check(sig))
            }
        }
    }

    /// Value of the term in `a` under `env` (variable `i` ↦ `env[i]`).
    pub fn evaluate(&self, a: &FiniteAlgebra, env: &[usize]) -> Result<usize> {
        self.check(a.signature())?;
        if let Some(m) = self.max_var() {
            if m >= env.len() {
                return Err(Error::UnassignedVariable(m));
            }
        }
        Ok(self.eval(a, env))
    }

    /// Evaluation without validation; callers must have checked the term.
    pub fn eval(&self, a: &FiniteAlgebra, env: &[usize]) -> usize {
        match self {
            Term::Var(i) => env[*i],
            Term::Op(f, args) => match args.len() {
                0 => a.table(*f)[0],
                1 => a.table(*f)[args[0].eval(a, env)],
                2 => a.apply2(*f, args[0].eval(a, env), args[1].eval(a, env)),
                _ => {
                    let vals: Vec<usize> = args.iter().map(|t| t.eval(a, env)).collect();
                    a.apply(*f, &vals)
                }
            },
        }
    }

    pub fn substitute(&self, map: &impl Fn(usize) -> Term) -> Term {
        match self {
            Term::Var(i) => map(*i),
            Term::Op(f, args) => Term::Op(*f, args.iter().map(|t| t.substitute(map)).collect()),
        }
    }

    pub fn rename_vars(&self, map: &impl Fn(usize) -> usize) -> Term {
        self.substitute(&|i| Term::Var(map(i)))
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        match (self, path.split_first()) {
            (_, None) => Some(self),
            (Term::Op(_, args), Some((&i, rest))) => args.get(i)?.subterm(rest),
            (Term::Var(_), Some(_)) => None,
        }
    }

    pub fn replace_at(&mut self, path: &[usize], new: Term) -> Result<()> {
        match path.split_first() {
            None => {
                *self = new;
                Ok(())
            }
            Some((&i, rest)) => match self {
                Term::Op(_, args) if i < args.len() => args[i].replace_at(rest, new),
                _ => Err(Error::Invalid(format!("no subterm at path position {i}"))),
            },
        }
    }

    /// Prefix s-expression rendering: `v3`, `(c)`, `(f v0 (g v1))`.
    pub fn display(&self, sig: &Signature) -> String {
        let mut out = String::new();
        self.write(sig, &mut out);
        out
    }

    fn write(&self, sig: &Signature, out: &mut String) {
        match self {
            Term::Var(i) => {
                out.push('v');
                out.push_str(&i.to_string());
            }
            Term::Op(f, args) => {
                out.push('(');
                match sig.symbols().get(*f) {
                    Some(s) => out.push_str(&s.name),
                    None => out.push_str(&format!("#{f}")),
                }
                for a in args {
                    out.push(' ');
                    a.write(sig, out);
                }
                out.push(')');
            }
        }
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<Term> {
        Term::from_sexpr(&sexpr::parse(text)?, sig)
    }

    pub(crate) fn from_sexpr(e: &SExpr, sig: &Signature) -> Result<Term> {
        match e {
            SExpr::Atom(a) => {
                if let Some(i) = sexpr::variable(a) {
                    return Ok(Term::Var(i));
                }
                match sig.index_of(a) {
                    Some(f) if sig.arity(f) == 0 => Ok(Term::Op(f, vec![])),
                    Some(_) => Err(Error::parse(1, format!("`{a}` needs arguments"))),
                    None => Err(Error::UnknownSymbol(a.clone())),
                }
            }
            SExpr::List(items) => {
                let (head, rest) = items
                    .split_first()
                    .ok_or_else(|| Error::parse(1, "empty term"))?;
                let name = match head {
                    SExpr::Atom(a) => a,
                    SExpr::List(_) => return Err(Error::parse(1, "term head must be a symbol")),
                };
                let f = sig
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                if sig.arity(f) != rest.len() {
                    return Err(Error::parse(
                        1,
                        format!("`{name}` expects {} arguments, got {}", sig.arity(f), rest.len()),
                    ));
                }
                let args = rest
                    .iter()
                    .map(|t| Term::from_sexpr(t, sig))
                    .collect::<Result<_>>()?;
                Ok(Term::Op(f, args))
            }
        }
    }

    /// All paths to subterms in post-order (children left to right, then the node).
    pub fn postorder_paths(&self) -> Vec<Vec<usize>> {
        fn go(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if let Term::Op(_, args) = t {
                for (i, a) in args.iter().enumerate() {
                    path.push(i);
                    go(a, path, out);
                    path.pop();
                }
            }
            out.push(path.clone());
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

/// Evaluates `t` in `a` at `env`.
pub fn evaluate_term(a: &FiniteAlgebra, t: &Term, env: &[usize]) -> Result<usize> {
    t.evaluate(a, env)
}

/// Every term of height at most `max_height` in `vars` variables, without
/// duplicates, in order of increasing height.
pub fn terms_up_to_height(sig: &Signature, vars: usize, max_height: usize, limit: usize) -> Vec<Term> {
    let mut by_height: Vec<Vec<Term>> = vec![(0..vars).map(Term::Var).collect()];
    let mut total = vars;
    for h in 1..=max_height {
        let lower: Vec<&Term> = by_height.iter().flatten().collect();
        let top_start = lower.len() - by_height[h - 1].len();
        let mut level = Vec::new();
        for (f, sym) in sig.symbols().iter().enumerate() {
            if sym.arity == 0 {
                if h == 1 {
                    level.push(Term::Op(f, vec![]));
                }
                continue;
            }
            let m = lower.len();
            crate::algebra::for_each_tuple(m, sym.arity, |idx| {
                if total + level.len() >= limit {
                    return;
                }
                // at least one argument must have height exactly h-1
                if idx.iter().any(|&i| i >= top_start) {
                    level.push(Term::Op(f, idx.iter().map(|&i| lower[i].clone()).collect()));
                }
            });
        }
        total += level.len();
        by_height.push(level);
        if total >= limit {
            break;
        }
    }
    by_height.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::graph_algebra;
    use crate::algebra::RelStructure;
    use crate::fixtures;

    #[test]
    fn semilattice_evaluation() {
        let s = fixtures::semilattice2();
        let t = Term::binary(0, Term::var(0), Term::var(1));
        assert_eq!(evaluate_term(&s, &t, &[1, 1]).unwrap(), 1);
        assert_eq!(evaluate_term(&s, &t, &[0, 1]).unwrap(), 0);
    }

    #[test]
    fn graph_algebra_product() {
        // vertices 0,1,2 with edge 1 -> 2; algebra elements are shifted by one
        let g = RelStructure::digraph(3, &[(1, 2)]).unwrap();
        let a = graph_algebra(&g).unwrap();
        let t = Term::binary(0, Term::var(0), Term::var(1));
        assert_eq!(evaluate_term(&a, &t, &[2, 3]).unwrap(), 3);
        assert_eq!(evaluate_term(&a, &t, &[3, 2]).unwrap(), 0);
    }

    #[test]
    fn evaluation_errors() {
        let s = fixtures::semilattice2();
        let bad = Term::Op(7, vec![]);
        assert!(matches!(bad.evaluate(&s, &[]), Err(Error::UnknownSymbol(_))));
        let t = Term::binary(0, Term::var(0), Term::var(3));
        assert!(matches!(t.evaluate(&s, &[0, 1]), Err(Error::UnassignedVariable(3))));
    }

    #[test]
    fn parse_and_display() {
        let sig = Signature::from_pairs(&[("^", 2), ("zero", 0), ("f", 1)]);
        let text = "(^ (f v0) (^ (zero) v12))";
        let t = Term::parse(text, &sig).unwrap();
        assert_eq!(t.display(&sig), text);
        assert_eq!(t.height(), 3);
        assert_eq!(Term::parse("zero", &sig).unwrap(), Term::Op(1, vec![]));
        assert!(Term::parse("(^ v0)", &sig).is_err());
        assert!(Term::parse("(g v0)", &sig).is_err());
    }

    #[test]
    fn replacement_by_path() {
        let sig = Signature::from_pairs(&[("^", 2)]);
        let mut t = Term::parse("(^ (^ v1 v0) v0)", &sig).unwrap();
        assert_eq!(t.subterm(&[0, 1]), Some(&Term::Var(0)));
        t.replace_at(&[0], Term::Var(2)).unwrap();
        assert_eq!(t.display(&sig), "(^ v2 v0)");
        assert!(t.replace_at(&[0, 0], Term::Var(1)).is_err());
    }

    #[test]
    fn enumerates_small_terms() {
        let sig = Signature::from_pairs(&[("^", 2)]);
        let ts = terms_up_to_height(&sig, 2, 1, usize::MAX);
        assert_eq!(ts.len(), 2 + 4);
        let ts = terms_up_to_height(&sig, 1, 2, usize::MAX);
        // v0, (^ v0 v0), then three terms of height 2
        assert_eq!(ts.len(), 5);
    }
}
