//! Finitely generated free algebras of `HSP(K)` realised as algebras of term
//! functions, normal forms by replacement, and equation checking.

use crate::algebra::{for_each_tuple, FiniteAlgebra, Signature};
use crate::closure::{Generated, Origin, Product};
use crate::error::{Error, Result};
use crate::term::Term;

/// Resource limits for [`free_algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeCaps {
    /// Largest admissible number of elements.
    pub max_size: usize,
    /// Largest admissible term-function vector, `Σ_{A∈K} |A|^k`.
    pub max_vector: usize,
}

impl Default for FreeCaps {
    fn default() -> Self {
        FreeCaps {
            max_size: 100_000,
            max_vector: 1_000_000,
        }
    }
}

/// The `k`-generated free algebra of `HSP(K)` with its representative terms.
#[derive(Debug, Clone)]
pub struct BirkhoffBasis {
    k: usize,
    signature: Signature,
    generated: Generated,
    terms: Vec<Term>,
    algebra: Option<FiniteAlgebra>,
    /// Offsets of each member of `K` inside a term-function vector.
    layout: Vec<(usize, usize)>,
}

/// One member of `Σ`: `f(u_{i1}, .., u_{in}) ≈ u_result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisEquation {
    pub symbol: usize,
    pub args: Vec<usize>,
    pub result: usize,
}

const MAX_TABLE_ENTRIES: usize = 20_000_000;

impl BirkhoffBasis {
    pub fn generators(&self) -> usize {
        self.k
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.terms.len()
    }

    /// `|F| = 1`: every term in `k` variables is equivalent to every other;
    /// for `k ≥ 2` this means `K ⊨ x ≈ y`.
    pub fn is_trivial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Representative terms in discovery order; closed under subterms.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Element of `F` named by each generator variable.
    pub fn generator_elements(&self) -> &[usize] {
        &self.generated.generator_elements
    }

    /// The term function of representative `i`, concatenated over `K`.
    pub fn vector(&self, i: usize) -> &[usize] {
        &self.generated.elements[i]
    }

    /// `F` itself, when its tables are small enough to store.
    pub fn algebra(&self) -> Option<&FiniteAlgebra> {
        self.algebra.as_ref()
    }

    /// `(offset, |A|^k)` of each member of `K` in a vector.
    pub fn layout(&self) -> &[(usize, usize)] {
        &self.layout
    }

    /// `Σ`: one equation per symbol and tuple of representatives.
    pub fn equations(&self) -> Result<Vec<BasisEquation>> {
        let f = self.algebra.as_ref().ok_or(Error::CapExceeded {
            what: "free algebra table",
            limit: MAX_TABLE_ENTRIES,
            progress: format!("{} elements found", self.size()),
        })?;
        let mut out = Vec::new();
        for (symbol, sym) in self.signature.symbols().iter().enumerate() {
            for_each_tuple(f.size(), sym.arity, |args| {
                out.push(BasisEquation {
                    symbol,
                    args: args.to_vec(),
                    result: f.apply(symbol, args),
                });
            });
        }
        Ok(out)
    }

    /// Left side of a `Σ` member as a term.
    pub fn equation_lhs(&self, eq: &BasisEquation) -> Term {
        Term::Op(eq.symbol, eq.args.iter().map(|&i| self.terms[i].clone()).collect())
    }

    fn apply(&self, symbol: usize, args: &[usize]) -> usize {
        self.algebra.as_ref().expect("checked by caller").apply(symbol, args)
    }
}

/// Text form: a `basis k=<k> size=<m>` header, one representative term per
/// line, then `eq <term> <index>` for each member of `Σ`.
pub fn write_basis(basis: &BirkhoffBasis) -> Result<String> {
    let sig = &basis.signature;
    let mut out = format!("basis k={} size={}\n", basis.k, basis.size());
    for t in &basis.terms {
        out.push_str(&t.display(sig));
        out.push('\n');
    }
    for e in basis.equations()? {
        out.push_str(&format!("eq {} {}\n", basis.equation_lhs(&e).display(sig), e.result));
    }
    Ok(out)
}

/// A subterm replacement justified by a member of `Σ` (or, for a variable
/// whose generator coincides with an earlier one, by that coincidence).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replacement {
    pub path: Vec<usize>,
    pub before: Term,
    pub after: Term,
}

/// Normal form of a term: its representative index and how it was reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub index: usize,
    pub trace: Vec<Replacement>,
}

/// Replays a trace on `t` by literal substitution.
pub fn replay(t: &Term, trace: &[Replacement]) -> Result<Term> {
    let mut cur = t.clone();
    for r in trace {
        match cur.subterm(&r.path) {
            Some(s) if *s == r.before => cur.replace_at(&r.path, r.after.clone())?,
            _ => return Err(Error::Invalid(format!("trace step at {:?} does not match", r.path))),
        }
    }
    Ok(cur)
}

/// Builds the `k`-generated free algebra of `HSP(K)` as the subalgebra of
/// `∏_{A∈K} A^{A^k}` generated by the projections.
pub fn free_algebra(ks: &[FiniteAlgebra], k: usize, caps: FreeCaps) -> Result<BirkhoffBasis> {
    let first = ks
        .first()
        .ok_or_else(|| Error::Precondition("the generating class must be nonempty".into()))?;
    let mut layout = Vec::new();
    let mut width = 0usize;
    for a in ks {
        first.same_signature(a)?;
        let len = u32::try_from(k)
            .ok()
            .and_then(|k| a.size().checked_pow(k))
            .filter(|&len| width + len <= caps.max_vector)
            .ok_or_else(|| Error::CapExceeded {
                what: "term-function vector length",
                limit: caps.max_vector,
                progress: format!("{} coordinates before `{}`", width, a.name()),
            })?;
        layout.push((width, len));
        width += len;
    }
    let mut coords: Vec<&FiniteAlgebra> = Vec::with_capacity(width);
    let mut gens = vec![Vec::with_capacity(width); k];
    for a in ks {
        for_each_tuple(a.size(), k, |assignment| {
            coords.push(a);
            for (g, &v) in gens.iter_mut().zip(assignment) {
                g.push(v);
            }
        });
    }
    let generated = Product::new(coords)?.generate(&gens, caps.max_size)?;
    let terms: Vec<Term> = (0..generated.len()).map(|i| generated.witness(i)).collect();
    let signature = first.signature().clone();
    let m = generated.len();
    let entries: Option<usize> = signature.symbols().iter().try_fold(0usize, |acc, s| {
        u32::try_from(s.arity).ok().and_then(|a| m.checked_pow(a)).and_then(|e| acc.checked_add(e))
    });
    let algebra = match entries {
        Some(e) if e <= MAX_TABLE_ENTRIES && m > 0 => {
            let coords2: Vec<&FiniteAlgebra> = ks
                .iter()
                .zip(&layout)
                .flat_map(|(a, &(_, len))| std::iter::repeat_n(a, len))
                .collect();
            let product = Product::new(coords2)?;
            let mut out = Vec::new();
            let mut failure = None;
            let f = FiniteAlgebra::from_fn(format!("F{k}"), signature.clone(), m, |op, args| {
                let vs: Vec<&[usize]> = args.iter().map(|&i| generated.elements[i].as_slice()).collect();
                product.apply(op, &vs, &mut out);
                match generated.find(&out) {
                    Some(i) => i,
                    None => {
                        failure = Some(op);
                        0
                    }
                }
            })?;
            if failure.is_some() {
                return Err(Error::Internal("free algebra is not closed".into()));
            }
            Some(f)
        }
        _ => None,
    };
    Ok(BirkhoffBasis {
        k,
        signature,
        generated,
        terms,
        algebra,
        layout,
    })
}

/// Normal form of `t` by innermost-first replacement.
pub fn normalize_term(basis: &BirkhoffBasis, t: &Term) -> Result<Normalization> {
    t.check(&basis.signature)?;
    if let Some(v) = t.max_var() {
        if v >= basis.k {
            return Err(Error::UnassignedVariable(v));
        }
    }
    if basis.algebra.is_none() {
        return Err(Error::CapExceeded {
            what: "free algebra table",
            limit: MAX_TABLE_ENTRIES,
            progress: format!("{} elements found", basis.size()),
        });
    }
    let mut cur = t.clone();
    let mut trace = Vec::new();
    let index = normalize_at(basis, &mut cur, &mut Vec::new(), &mut trace)?;
    Ok(Normalization { index, trace })
}

fn normalize_at(
    basis: &BirkhoffBasis,
    cur: &mut Term,
    path: &mut Vec<usize>,
    trace: &mut Vec<Replacement>,
) -> Result<usize> {
    let node = cur
        .subterm(path)
        .cloned()
        .ok_or_else(|| Error::Internal("path vanished".into()))?;
    let (index, literal) = match &node {
        Term::Var(j) => {
            let r = basis.generated.generator_elements[*j];
            (r, basis.generated.origins[r] == Origin::Generator(*j))
        }
        Term::Op(f, args) => {
            let mut idx = Vec::with_capacity(args.len());
            for i in 0..args.len() {
                path.push(i);
                idx.push(normalize_at(basis, cur, path, trace)?);
                path.pop();
            }
            let r = basis.apply(*f, &idx);
            (r, basis.generated.origins[r] == Origin::Apply(*f, idx))
        }
    };
    if !literal {
        let before = cur.subterm(path).cloned().expect("path exists");
        let after = basis.terms[index].clone();
        cur.replace_at(path, after.clone())?;
        trace.push(Replacement {
            path: path.clone(),
            before,
            after,
        });
    }
    Ok(index)
}

/// A falsifying assignment for an equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Index of the failing member of `K`.
    pub algebra: usize,
    pub assignment: Vec<usize>,
}

/// Checks `s ≈ t` in every member of `ks`; `None` when it holds everywhere.
pub fn satisfies_equation(ks: &[FiniteAlgebra], s: &Term, t: &Term) -> Result<Option<Counterexample>> {
    let vars = s.var_count().max(t.var_count());
    for (i, a) in ks.iter().enumerate() {
        s.check(a.signature())?;
        t.check(a.signature())?;
        if s == t {
            continue;
        }
        let mut bad = None;
        for_each_tuple(a.size(), vars, |env| {
            if bad.is_none() && s.eval(a, env) != t.eval(a, env) {
                bad = Some(env.to_vec());
            }
        });
        if let Some(assignment) = bad {
            return Ok(Some(Counterexample { algebra: i, assignment }));
        }
    }
    Ok(None)
}
