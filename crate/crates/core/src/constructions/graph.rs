use crate::algebra::{FiniteAlgebra, RelStructure, Signature};
use crate::error::{Error, Result};

/// The graph algebra of a digraph: element 0 is an absorbing zero, vertex
/// `v` becomes element `v + 1`, and `u * v = v` exactly when `(u, v)` is an
/// edge.
pub fn graph_algebra(g: &RelStructure) -> Result<FiniteAlgebra> {
    if g.signature().len() != 1 || g.signature().arity(0) != 2 {
        return Err(Error::Precondition("graph algebra needs a single binary relation".into()));
    }
    let n = g.size() + 1;
    FiniteAlgebra::from_fn(
        format!("{}_alg", g.name()),
        Signature::from_pairs(&[("*", 2)]),
        n,
        |_, a| {
            let (u, v) = (a[0], a[1]);
            if u > 0 && v > 0 && g.contains(0, &[u - 1, v - 1]) {
                v
            } else {
                0
            }
        },
    )
}

/// Whether `v` is reachable from `u` along directed edges (paths of length
/// zero included).
pub fn reachable(g: &RelStructure, u: usize, v: usize) -> bool {
    let mut seen = vec![false; g.size()];
    seen[u] = true;
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        if x == v {
            return true;
        }
        for t in g.relation(0).range(vec![x]..vec![x + 1]) {
            if !seen[t[1]] {
                seen[t[1]] = true;
                stack.push(t[1]);
            }
        }
    }
    false
}

/// Output of [`cong_class_gadget`].
#[derive(Debug, Clone)]
pub struct Gadget {
    pub algebra: FiniteAlgebra,
    /// The designated pair `{a, b}` as algebra elements.
    pub pair: (usize, usize),
}

/// Graph algebra of `g` extended by fresh vertices `a`, `b` and edges
/// `(a, u)`, `(v, a)`, `(v, b)`. The set `{a, b}` is a congruence class
/// exactly when `v` is not reachable from `u` in `g`.
pub fn cong_class_gadget(g: &RelStructure, u: usize, v: usize) -> Result<Gadget> {
    if u >= g.size() || v >= g.size() {
        return Err(Error::Invalid("gadget vertices outside the digraph".into()));
    }
    if g.signature().len() != 1 || g.signature().arity(0) != 2 {
        return Err(Error::Precondition("gadget needs a single binary relation".into()));
    }
    let a = g.size();
    let b = a + 1;
    let mut edges: Vec<(usize, usize)> = g.relation(0).iter().map(|t| (t[0], t[1])).collect();
    edges.extend([(a, u), (v, a), (v, b)]);
    let extended = RelStructure::digraph(g.size() + 2, &edges)?;
    Ok(Gadget {
        algebra: graph_algebra(&extended)?.with_name(format!("{}_gadget", g.name())),
        pair: (a + 1, b + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::is_congruence_class;

    #[test]
    fn graph_algebra_tables() {
        let one = RelStructure::digraph(1, &[]).unwrap();
        let a = graph_algebra(&one).unwrap();
        assert_eq!(a.size(), 2);
        assert!(a.table(0).iter().all(|&v| v == 0));
        let looped = graph_algebra(&RelStructure::digraph(1, &[(0, 0)]).unwrap()).unwrap();
        assert_eq!(looped.table(0), &[0, 0, 0, 1]);
        let edge = graph_algebra(&RelStructure::digraph(2, &[(0, 1)]).unwrap()).unwrap();
        assert_eq!(edge.apply2(0, 1, 2), 2);
        assert_eq!(edge.table(0).iter().filter(|&&v| v != 0).count(), 1);
    }

    #[test]
    fn gadget_examples() {
        let edge = RelStructure::digraph(2, &[(0, 1)]).unwrap();
        let gad = cong_class_gadget(&edge, 0, 1).unwrap();
        assert!(!is_congruence_class(&gad.algebra, &[gad.pair.0, gad.pair.1]).unwrap());
        let isolated = RelStructure::digraph(2, &[]).unwrap();
        let gad = cong_class_gadget(&isolated, 0, 1).unwrap();
        assert!(is_congruence_class(&gad.algebra, &[gad.pair.0, gad.pair.1]).unwrap());
    }

    #[test]
    fn reachability() {
        let g = RelStructure::digraph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(reachable(&g, 0, 2) && reachable(&g, 1, 1) && !reachable(&g, 2, 0));
    }
}
