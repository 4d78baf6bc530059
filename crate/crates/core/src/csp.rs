//! Fixed-template constraint satisfaction: homomorphism search between
//! relational structures with generalised arc consistency and
//! smallest-domain-first branching.

use std::collections::VecDeque;

use crate::algebra::{Mapping, RelStructure};
use crate::error::{Error, Result};

/// Candidate template elements for each instance element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainTable {
    domains: Vec<Vec<bool>>,
}

impl DomainTable {
    pub fn full(instance: usize, template: usize) -> Self {
        DomainTable {
            domains: vec![vec![true; template]; instance],
        }
    }

    pub fn candidates(&self, x: usize) -> Vec<usize> {
        (0..self.domains[x].len()).filter(|&v| self.domains[x][v]).collect()
    }

    pub fn count(&self, x: usize) -> usize {
        self.domains[x].iter().filter(|&&b| b).count()
    }
}

struct Constraint {
    relation: usize,
    scope: Vec<usize>,
}

struct Solver<'a> {
    template: &'a RelStructure,
    tuples: Vec<Vec<Vec<usize>>>,
    constraints: Vec<Constraint>,
    watching: Vec<Vec<usize>>,
}

impl Solver<'_> {
    /// Prunes unsupported values until a fixpoint; false on a wipe-out.
    fn propagate(&self, dom: &mut DomainTable, mut queue: VecDeque<usize>) -> bool {
        let n = self.template.size();
        let mut queued = vec![false; self.constraints.len()];
        for &c in &queue {
            queued[c] = true;
        }
        while let Some(c) = queue.pop_front() {
            queued[c] = false;
            let con = &self.constraints[c];
            let k = con.scope.len();
            let mut support = vec![vec![false; n]; k];
            for s in &self.tuples[con.relation] {
                let fits = (0..k).all(|j| {
                    dom.domains[con.scope[j]][s[j]] && (0..j).all(|i| con.scope[i] != con.scope[j] || s[i] == s[j])
                });
                if fits {
                    for j in 0..k {
                        support[j][s[j]] = true;
                    }
                }
            }
            for (j, &x) in con.scope.iter().enumerate() {
                let mut changed = false;
                for (v, keep) in support[j].iter().enumerate() {
                    if dom.domains[x][v] && !keep {
                        dom.domains[x][v] = false;
                        changed = true;
                    }
                }
                if changed {
                    if dom.count(x) == 0 {
                        return false;
                    }
                    for &d in &self.watching[x] {
                        if !queued[d] {
                            queued[d] = true;
                            queue.push_back(d);
                        }
                    }
                }
            }
        }
        true
    }

    fn search(&self, dom: DomainTable) -> Option<DomainTable> {
        let branch = (0..dom.domains.len())
            .map(|x| (dom.count(x), x))
            .filter(|&(c, _)| c > 1)
            .min();
        let Some((_, x)) = branch else {
            return Some(dom);
        };
        for v in dom.candidates(x) {
            let mut next = dom.clone();
            next.domains[x].iter_mut().enumerate().for_each(|(u, b)| *b = u == v);
            if self.propagate(&mut next, self.watching[x].iter().copied().collect()) {
                if let Some(sol) = self.search(next) {
                    return Some(sol);
                }
            }
        }
        None
    }
}

/// A homomorphism `instance → template`, or `None`.
pub fn solve(instance: &RelStructure, template: &RelStructure) -> Result<Option<Mapping>> {
    if instance.signature() != template.signature() {
        return Err(Error::SignatureMismatch(format!(
            "`{}` and `{}` have different signatures",
            instance.name(),
            template.name()
        )));
    }
    if instance.size() == 0 {
        return Ok(Some(Mapping::new(template.size(), Vec::new())?));
    }
    if template.size() == 0 {
        return Ok(None);
    }
    let mut constraints = Vec::new();
    let mut watching = vec![Vec::new(); instance.size()];
    for (relation, rel) in instance.relations().iter().enumerate() {
        for t in rel {
            for &x in t {
                if watching[x].last() != Some(&constraints.len()) {
                    watching[x].push(constraints.len());
                }
            }
            constraints.push(Constraint {
                relation,
                scope: t.clone(),
            });
        }
    }
    let solver = Solver {
        template,
        tuples: template.relations().iter().map(|r| r.iter().cloned().collect()).collect(),
        constraints,
        watching,
    };
    let mut dom = DomainTable::full(instance.size(), template.size());
    if !solver.propagate(&mut dom, (0..solver.constraints.len()).collect()) {
        return Ok(None);
    }
    Ok(match solver.search(dom) {
        Some(sol) => {
            let values = (0..instance.size()).map(|x| sol.candidates(x)[0]).collect();
            Some(Mapping::new(template.size(), values)?)
        }
        None => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric(n: usize, edges: &[(usize, usize)]) -> RelStructure {
        let all: Vec<(usize, usize)> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        RelStructure::digraph(n, &all).unwrap()
    }

    #[test]
    fn colourings() {
        let k2 = symmetric(2, &[(0, 1)]);
        let triangle = symmetric(3, &[(0, 1), (1, 2), (2, 0)]);
        let square = symmetric(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(solve(&triangle, &k2).unwrap().is_none());
        let h = solve(&square, &k2).unwrap().unwrap();
        assert!(h.is_rel_homomorphism(&square, &k2));
        let id = solve(&triangle, &triangle).unwrap().unwrap();
        assert!(id.is_rel_homomorphism(&triangle, &triangle));
    }

    #[test]
    fn loops_and_isolated_points() {
        let looped = RelStructure::digraph(1, &[(0, 0)]).unwrap();
        let path = RelStructure::digraph(3, &[(0, 1)]).unwrap();
        let h = solve(&path, &looped).unwrap().unwrap();
        assert_eq!(h.values(), &[0, 0, 0]);
        let self_loop = RelStructure::digraph(2, &[(1, 1)]).unwrap();
        let edge = RelStructure::digraph(2, &[(0, 1)]).unwrap();
        assert!(solve(&self_loop, &edge).unwrap().is_none());
        let empty = RelStructure::digraph(0, &[]).unwrap();
        assert!(solve(&path, &empty).unwrap().is_none());
        assert!(solve(&empty, &path).unwrap().is_some());
    }
}
