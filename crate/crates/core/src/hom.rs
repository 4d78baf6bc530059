//! Backtracking homomorphism search between finite algebras.
//!
//! Source elements are branched on in ascending order; every assignment is
//! propagated through all operation applications whose arguments are already
//! assigned, so elements generated by earlier choices are forced rather than
//! guessed. Candidate targets are tried in ascending order.

use crate::algebra::{for_each_tuple, FiniteAlgebra, Mapping};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomMode {
    Any,
    Injective,
    Surjective,
}

/// Extra constraints for [`HomSearch`].
#[derive(Debug, Clone, Default)]
pub struct HomConstraints {
    /// Partial assignment the result must extend.
    pub anchor: Vec<(usize, usize)>,
    /// Source elements that must get different images.
    pub separate: Option<(usize, usize)>,
    /// `allowed[x][y]`: whether `x` may map to `y`.
    pub allowed: Option<Vec<Vec<bool>>>,
}

/// Search state for homomorphisms `a -> b`.
pub struct HomSearch<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    mode: HomMode,
    cons: HomConstraints,
    image: Vec<Option<usize>>,
    used: Vec<usize>,
    assigned: Vec<usize>,
    unused_targets: usize,
}

impl<'a> HomSearch<'a> {
    pub fn new(a: &'a FiniteAlgebra, b: &'a FiniteAlgebra, mode: HomMode, cons: HomConstraints) -> Self {
        HomSearch {
            a,
            b,
            mode,
            cons,
            image: vec![None; a.size()],
            used: vec![0; b.size()],
            assigned: Vec::new(),
            unused_targets: b.size(),
        }
    }

    /// Runs the search; `None` when no homomorphism meets the constraints.
    pub fn run(mut self) -> Option<Mapping> {
        if self.a.signature() != self.b.signature() {
            return None;
        }
        match self.mode {
            HomMode::Injective if self.a.size() > self.b.size() => return None,
            HomMode::Surjective if self.a.size() < self.b.size() => return None,
            _ => {}
        }
        let mut forced: Vec<(usize, usize)> = self.cons.anchor.clone();
        for (f, sym) in self.a.signature().symbols().iter().enumerate() {
            if sym.arity == 0 {
                forced.push((self.a.table(f)[0], self.b.table(f)[0]));
            }
        }
        for (x, y) in forced {
            if x >= self.a.size() || y >= self.b.size() || !self.assign(x, y) {
                return None;
            }
        }
        if self.search() {
            let values = self.image.iter().map(|v| v.expect("complete")).collect();
            Some(Mapping::new(self.b.size(), values).expect("values in range"))
        } else {
            None
        }
    }

    fn allowed(&self, x: usize, y: usize) -> bool {
        self.cons.allowed.as_ref().is_none_or(|m| m[x][y])
    }

    fn set(&mut self, x: usize, y: usize) -> bool {
        if !self.allowed(x, y) || (self.mode == HomMode::Injective && self.used[y] > 0) {
            return false;
        }
        self.image[x] = Some(y);
        if self.used[y] == 0 {
            self.unused_targets -= 1;
        }
        self.used[y] += 1;
        self.assigned.push(x);
        if let Some((p, q)) = self.cons.separate {
            if let (Some(u), Some(v)) = (self.image[p], self.image[q]) {
                if u == v {
                    return false;
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().expect("nonempty");
            let y = self.image[x].take().expect("assigned");
            self.used[y] -= 1;
            if self.used[y] == 0 {
                self.unused_targets += 1;
            }
        }
    }

    /// Assigns `x ↦ y` and propagates; on failure the state may be partially
    /// extended and the caller must undo.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        match self.image[x] {
            Some(z) => return z == y,
            None => {
                if !self.set(x, y) {
                    return false;
                }
            }
        }
        let mut head = self.assigned.len() - 1;
        let sig = self.a.signature().clone();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        while head < self.assigned.len() {
            let e = self.assigned[head];
            head += 1;
            for f in 0..sig.len() {
                let k = sig.arity(f);
                if k == 0 {
                    continue;
                }
                let members = self.assigned.clone();
                let mut ok = true;
                src.resize(k, 0);
                dst.resize(k, 0);
                for_each_tuple(members.len(), k, |idx| {
                    if !ok || !idx.iter().any(|&i| members[i] == e) {
                        return;
                    }
                    for (p, &i) in idx.iter().enumerate() {
                        src[p] = members[i];
                        dst[p] = self.image[members[i]].expect("assigned");
                    }
                    let r = self.a.apply(f, &src);
                    let v = self.b.apply(f, &dst);
                    match self.image[r] {
                        Some(w) => ok = w == v,
                        None => ok = self.set(r, v),
                    }
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn search(&mut self) -> bool {
        if self.mode == HomMode::Surjective {
            let free = self.image.iter().filter(|v| v.is_none()).count();
            if free < self.unused_targets {
                return false;
            }
        }
        let Some(x) = self.image.iter().position(Option::is_none) else {
            return self.mode != HomMode::Surjective || self.unused_targets == 0;
        };
        for y in 0..self.b.size() {
            let mark = self.assigned.len();
            if self.assign(x, y) && self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// A homomorphism `a -> b` of the requested kind extending `anchor`.
pub fn find_homomorphism(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    mode: HomMode,
    anchor: &[(usize, usize)],
) -> Option<Mapping> {
    let cons = HomConstraints {
        anchor: anchor.to_vec(),
        ..Default::default()
    };
    HomSearch::new(a, b, mode, cons).run()
}

/// A homomorphism `a -> b` sending `x` and `y` to different elements.
pub fn find_separating_homomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, x: usize, y: usize) -> Option<Mapping> {
    let cons = HomConstraints {
        separate: Some((x, y)),
        ..Default::default()
    };
    HomSearch::new(a, b, HomMode::Any, cons).run()
}

/// Isomorphism-invariant fingerprint of an element.
fn element_profile(a: &FiniteAlgebra, x: usize) -> Vec<usize> {
    let n = a.size();
    let mut p = Vec::new();
    for (f, sym) in a.signature().symbols().iter().enumerate() {
        let table = a.table(f);
        p.push(table.iter().filter(|&&v| v == x).count());
        if sym.arity >= 1 {
            let diag = vec![x; sym.arity];
            p.push(usize::from(a.apply(f, &diag) == x));
        }
        if sym.arity == 2 {
            p.push((0..n).filter(|&y| a.apply2(f, x, y) == y).count());
            p.push((0..n).filter(|&y| a.apply2(f, y, x) == y).count());
            p.push((0..n).filter(|&y| a.apply2(f, x, y) == x).count());
        }
    }
    p
}

/// An isomorphism `a -> b`, if one exists.
pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Mapping> {
    if a.size() != b.size() || a.signature() != b.signature() {
        return None;
    }
    let pa: Vec<Vec<usize>> = (0..a.size()).map(|x| element_profile(a, x)).collect();
    let pb: Vec<Vec<usize>> = (0..b.size()).map(|x| element_profile(b, x)).collect();
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let allowed = pa
        .iter()
        .map(|p| pb.iter().map(|q| p == q).collect())
        .collect();
    let cons = HomConstraints {
        allowed: Some(allowed),
        ..Default::default()
    };
    HomSearch::new(a, b, HomMode::Injective, cons).run()
}
