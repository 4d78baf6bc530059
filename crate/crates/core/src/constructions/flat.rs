//! Flat extensions, the pointed semidiscriminator axioms and the definable
//! cmi congruences `π_{a,b}`.

use crate::algebra::{for_each_tuple, FiniteAlgebra, PartialAlgebra, Signature, Symbol};
use crate::error::{Error, Result};
use crate::logic::{evaluate, Formula};
use crate::partition::Partition;
use crate::term::Term;

/// Name of the flat semilattice operation.
pub const MEET: &str = "^";
/// Name of the projection operation `▷`.
pub const PROJ: &str = ">";
/// Name of the distinguished zero constant.
pub const ZERO: &str = "zero";

/// A flat extension and the renamings applied to clashing symbols.
#[derive(Debug, Clone)]
pub struct FlatExtension {
    pub algebra: FiniteAlgebra,
    /// `(old, new)` names of original symbols that were renamed.
    pub renamed: Vec<(String, String)>,
}

/// `flat(A)`: a new absorbing element 0 at index 0 (old elements shift up by
/// one), undefined entries become 0, and a flat meet `^` is added. With
/// `add_projection` a binary `>` acting as `x > y = y` on nonzero arguments
/// (and 0 otherwise) is added; with `distinguish_zero` a constant `zero`.
pub fn flat_extension(a: &PartialAlgebra, add_projection: bool, distinguish_zero: bool) -> FlatExtension {
    let mut reserved = vec![MEET];
    if add_projection {
        reserved.push(PROJ);
    }
    if distinguish_zero {
        reserved.push(ZERO);
    }
    let mut symbols: Vec<Symbol> = Vec::new();
    let mut renamed = Vec::new();
    let taken: Vec<String> = a.signature().symbols().iter().map(|s| s.name.clone()).collect();
    for s in a.signature().symbols() {
        let mut name = s.name.clone();
        if reserved.contains(&name.as_str()) {
            while reserved.contains(&name.as_str()) || taken.contains(&name) || symbols.iter().any(|t| t.name == name) {
                name.push('\'');
            }
            renamed.push((s.name.clone(), name.clone()));
        }
        symbols.push(Symbol::new(name, s.arity));
    }
    let original = symbols.len();
    for name in reserved {
        symbols.push(Symbol::new(name, if name == ZERO { 0 } else { 2 }));
    }
    let sig = Signature::new(symbols).expect("names made unique");
    let n = a.size() + 1;
    let algebra = FiniteAlgebra::from_fn(format!("flat_{}", a.name()), sig.clone(), n, |op, args| {
        if op < original {
            if args.contains(&0) {
                return 0;
            }
            let lowered: Vec<usize> = args.iter().map(|&x| x - 1).collect();
            return a.apply(op, &lowered).map_or(0, |v| v + 1);
        }
        match sig.symbol(op).name.as_str() {
            MEET => {
                if args[0] == args[1] {
                    args[0]
                } else {
                    0
                }
            }
            PROJ
                if args[0] != 0 => {
                    args[1]
                }
            _ => 0,
        }
    })
    .expect("flat tables are in range");
    FlatExtension { algebra, renamed }
}

/// Indices of the pointed semidiscriminator symbols in a signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsdSymbols {
    pub meet: usize,
    pub proj: usize,
    pub zero: Option<usize>,
}

pub fn psd_symbols(sig: &Signature) -> Result<PsdSymbols> {
    let find = |name: &str, arity: usize| {
        sig.index_of(name)
            .filter(|&i| sig.arity(i) == arity)
            .ok_or_else(|| Error::Precondition(format!("needs a symbol `{name}` of arity {arity}")))
    };
    Ok(PsdSymbols {
        meet: find(MEET, 2)?,
        proj: find(PROJ, 2)?,
        zero: find(ZERO, 0).ok(),
    })
}

/// A named equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

/// A law together with an assignment falsifying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawFailure {
    pub law: Law,
    pub assignment: Vec<usize>,
}

/// The equational axioms of pointed semidiscriminator varieties (with 0 when
/// the signature has `zero`), in checking order.
pub fn psd_laws(sig: &Signature) -> Result<Vec<Law>> {
    let s = psd_symbols(sig)?;
    let v = Term::Var;
    let m = |x: Term, y: Term| Term::binary(s.meet, x, y);
    let p = |x: Term, y: Term| Term::binary(s.proj, x, y);
    let (x, y, z) = (v(0), v(1), v(2));
    let law = |name: &str, lhs: Term, rhs: Term| Law {
        name: name.to_string(),
        lhs,
        rhs,
    };
    let mut laws = vec![
        law("x^(y^z) = (x^y)^z", m(x.clone(), m(y.clone(), z.clone())), m(m(x.clone(), y.clone()), z.clone())),
        law("x^y = y^x", m(x.clone(), y.clone()), m(y.clone(), x.clone())),
        law("x^x = x", m(x.clone(), x.clone()), x.clone()),
        law("x>(y>z) = (x>y)>z", p(x.clone(), p(y.clone(), z.clone())), p(p(x.clone(), y.clone()), z.clone())),
        law("x>(y>z) = y>(x>z)", p(x.clone(), p(y.clone(), z.clone())), p(y.clone(), p(x.clone(), z.clone()))),
        law("x>x = x", p(x.clone(), x.clone()), x.clone()),
        law("(x^y)>y = x^y", p(m(x.clone(), y.clone()), y.clone()), m(x.clone(), y.clone())),
        law("(x>y)^z = x>(y^z)", m(p(x.clone(), y.clone()), z.clone()), p(x.clone(), m(y.clone(), z.clone()))),
    ];
    for (f, sym) in sig.symbols().iter().enumerate() {
        for i in 0..sym.arity {
            // x0 > f(x1..xn) = f(x1, .., x0 > xi, .., xn)
            let args: Vec<Term> = (1..=sym.arity).map(v).collect();
            let mut moved = args.clone();
            moved[i] = p(v(0), args[i].clone());
            laws.push(law(
                &format!("x>{}(..) distributes at position {}", sym.name, i + 1),
                p(v(0), Term::Op(f, args)),
                Term::Op(f, moved),
            ));
        }
    }
    if let Some(zero) = s.zero {
        for (f, sym) in sig.symbols().iter().enumerate() {
            for i in 0..sym.arity {
                let mut args: Vec<Term> = (0..sym.arity).map(v).collect();
                args[i] = Term::Op(zero, vec![]);
                laws.push(law(
                    &format!("{} absorbs zero at position {}", sym.name, i + 1),
                    Term::Op(f, args),
                    Term::Op(zero, vec![]),
                ));
            }
        }
    }
    Ok(laws)
}

/// First falsified pointed semidiscriminator law, or `None` when all hold.
pub fn check_psd_axioms(a: &FiniteAlgebra) -> Result<Option<LawFailure>> {
    for law in psd_laws(a.signature())? {
        let vars = law.lhs.var_count().max(law.rhs.var_count());
        let mut bad = None;
        for_each_tuple(a.size(), vars, |env| {
            if bad.is_none() && law.lhs.eval(a, env) != law.rhs.eval(a, env) {
                bad = Some(env.to_vec());
            }
        });
        if let Some(assignment) = bad {
            return Ok(Some(LawFailure { law, assignment }));
        }
    }
    Ok(None)
}

/// Readings of the displayed `π_{x,y}(u,v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PiVariant {
    /// Third disjunct uses `π1(x, y, v, u)` as displayed.
    Verbatim,
    /// Third disjunct uses `π1(y, x, u, v)`.
    Swapped,
    /// `π1(x, ..)` when `x ≉ x∧y`, otherwise `π1(y, ..)`; never both.
    CaseSplit,
}

impl PiVariant {
    pub const ALL: [PiVariant; 3] = [PiVariant::Verbatim, PiVariant::Swapped, PiVariant::CaseSplit];

    pub fn name(self) -> &'static str {
        match self {
            PiVariant::Verbatim => "verbatim",
            PiVariant::Swapped => "swapped",
            PiVariant::CaseSplit => "case-split",
        }
    }
}

/// `π1(x, u, v) = ((u∧v)▷x ≈ x) ∨ (u▷x ≉ x ∧ v▷x ≉ x)`.
fn pi1(s: PsdSymbols, x: &Term, u: &Term, v: &Term) -> Formula {
    let m = |a: &Term, b: &Term| Term::binary(s.meet, a.clone(), b.clone());
    let p = |a: Term, b: &Term| Term::binary(s.proj, a, b.clone());
    Formula::Or(vec![
        Formula::eq(p(m(u, v), x), x.clone()),
        Formula::And(vec![
            Formula::neq(p(u.clone(), x), x.clone()),
            Formula::neq(p(v.clone(), x), x.clone()),
        ]),
    ])
}

/// The formula `π_{x,y}(u,v)` over arbitrary terms.
pub fn pi_formula(s: PsdSymbols, variant: PiVariant, x: &Term, y: &Term, u: &Term, v: &Term) -> Formula {
    let xy = Term::binary(s.meet, x.clone(), y.clone());
    let x_not_below = Formula::neq(x.clone(), xy.clone());
    let y_not_below = Formula::neq(y.clone(), xy.clone());
    match variant {
        PiVariant::Verbatim => Formula::Or(vec![
            Formula::eq(x.clone(), y.clone()),
            Formula::And(vec![x_not_below, pi1(s, x, u, v)]),
            Formula::And(vec![y_not_below, pi1(s, x, v, u)]),
        ]),
        PiVariant::Swapped => Formula::Or(vec![
            Formula::eq(x.clone(), y.clone()),
            Formula::And(vec![x_not_below, pi1(s, x, u, v)]),
            Formula::And(vec![y_not_below, pi1(s, y, u, v)]),
        ]),
        PiVariant::CaseSplit => Formula::Or(vec![
            Formula::eq(x.clone(), y.clone()),
            Formula::And(vec![x_not_below.clone(), pi1(s, x, u, v)]),
            Formula::And(vec![Formula::not(x_not_below), pi1(s, y, u, v)]),
        ]),
    }
}

/// Whether `π_{x,y}(u,v)` holds in `a`.
pub fn pi_holds(a: &FiniteAlgebra, variant: PiVariant, x: usize, y: usize, u: usize, v: usize) -> Result<bool> {
    let s = psd_symbols(a.signature())?;
    let f = pi_formula(s, variant, &Term::Var(0), &Term::Var(1), &Term::Var(2), &Term::Var(3));
    evaluate(a, &f, &[Some(x), Some(y), Some(u), Some(v)])
}

/// Outcome of [`pi_congruence`].
#[derive(Debug, Clone)]
pub struct PiCongruence {
    pub partition: Partition,
    /// The first reading (in [`PiVariant::ALL`] order) that defined a
    /// congruence separating the pair.
    pub variant: PiVariant,
    /// Readings tried before it, with the reason each was rejected.
    pub rejected: Vec<(PiVariant, String)>,
}

/// The relation defined by one reading of `π_{x,y}` at `(x, y)`, validated
/// as an equivalence, a congruence and separating `x` from `y`.
pub fn pi_relation(a: &FiniteAlgebra, variant: PiVariant, x: usize, y: usize) -> Result<std::result::Result<Partition, String>> {
    let n = a.size();
    let s = psd_symbols(a.signature())?;
    let f = pi_formula(s, variant, &Term::Var(0), &Term::Var(1), &Term::Var(2), &Term::Var(3));
    let mut rel = vec![vec![false; n]; n];
    for u in 0..n {
        for v in 0..n {
            rel[u][v] = evaluate(a, &f, &[Some(x), Some(y), Some(u), Some(v)])?;
        }
    }
    if let Some(u) = (0..n).find(|&u| !rel[u][u]) {
        return Ok(Err(format!("not reflexive at {u}")));
    }
    for u in 0..n {
        for v in 0..n {
            if rel[u][v] != rel[v][u] {
                return Ok(Err(format!("not symmetric at ({u}, {v})")));
            }
            if rel[u][v] {
                if let Some(w) = (0..n).find(|&w| rel[v][w] && !rel[u][w]) {
                    return Ok(Err(format!("not transitive at ({u}, {v}, {w})")));
                }
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|u| (0..n).find(|&v| rel[u][v]).expect("reflexive")).collect();
    let p = Partition::from_labels(&labels);
    if p.related(x, y) {
        return Ok(Err(format!("relates the pair ({x}, {y})")));
    }
    if let Some((op, args)) = p.compatibility_failure(a) {
        return Ok(Err(format!(
            "not compatible with `{}` at {:?}",
            a.signature().symbol(op).name,
            args
        )));
    }
    Ok(Ok(p))
}

/// The cmi congruence `π_{x,y}` of a pointed semidiscriminator algebra.
///
/// Readings are tried in the order verbatim, swapped, case-split; the first
/// that yields a congruence separating `x` and `y` is returned along with the
/// reasons earlier readings were rejected.
pub fn pi_congruence(a: &FiniteAlgebra, x: usize, y: usize) -> Result<PiCongruence> {
    if x == y {
        return Err(Error::Precondition("separated elements must differ".into()));
    }
    if x >= a.size() || y >= a.size() {
        return Err(Error::Invalid("element outside the universe".into()));
    }
    if let Some(fail) = check_psd_axioms(a)? {
        return Err(Error::Precondition(format!(
            "law `{}` fails at {:?}",
            fail.law.name, fail.assignment
        )));
    }
    let mut rejected = Vec::new();
    for variant in PiVariant::ALL {
        match pi_relation(a, variant, x, y)? {
            Ok(partition) => {
                return Ok(PiCongruence {
                    partition,
                    variant,
                    rejected,
                })
            }
            Err(why) => rejected.push((variant, why)),
        }
    }
    let summary: Vec<String> = rejected.iter().map(|(v, why)| format!("{}: {why}", v.name())).collect();
    Err(Error::NotACongruence(summary.join("; ")))
}
