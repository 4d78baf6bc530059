//! Algebraic Ehrenfeucht–Fraïssé games.
//!
//! A position is the subalgebra of `A × B` generated by the pairs chosen so
//! far (plus constants). Duplicator survives a position when both coordinate
//! projections of that subalgebra are injective, i.e. the chosen tuples
//! generate isomorphic substructures. Positions with the same generated graph
//! are interchangeable, so the memo is keyed on the graph.

use std::collections::HashMap;

use crate::algebra::{for_each_tuple, FiniteAlgebra};
use crate::error::{Error, Result};

/// Default cap on memoised positions.
pub const DEFAULT_MEMO_CAP: usize = 5_000_000;

/// Two algebras and equally long move lists.
#[derive(Debug, Clone, Copy)]
pub struct GameConfig<'a> {
    pub a: &'a FiniteAlgebra,
    pub b: &'a FiniteAlgebra,
    pub moves_a: &'a [usize],
    pub moves_b: &'a [usize],
}

/// Whether `moves_a[i] ↦ moves_b[i]` extends to an isomorphism between the
/// generated subalgebras.
pub fn partial_iso_check(cfg: GameConfig<'_>) -> Result<bool> {
    if cfg.moves_a.len() != cfg.moves_b.len() {
        return Err(Error::Invalid("move lists differ in length".into()));
    }
    let game = Game::new(cfg.a, cfg.b, usize::MAX)?;
    let mut pos = match game.start() {
        Some(p) => p,
        None => return Ok(false),
    };
    for (&x, &y) in cfg.moves_a.iter().zip(cfg.moves_b) {
        if x >= cfg.a.size() || y >= cfg.b.size() {
            return Err(Error::Invalid("move outside the universe".into()));
        }
        pos = match game.extend(&pos, x, y) {
            Some(p) => p,
            None => return Ok(false),
        };
    }
    Ok(true)
}

/// Which structure Spoiler picks from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// One round of a Spoiler winning line. `reply` is Duplicator's longest-lasting
/// answer, absent when every answer loses immediately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub side: Side,
    pub element: usize,
    pub reply: Option<usize>,
}

/// Game engine with a memo shared across calls.
pub struct Game<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    memo: HashMap<(Vec<u32>, usize), bool>,
    cap: usize,
}

type Position = Vec<(usize, usize)>;

impl<'a> Game<'a> {
    pub fn new(a: &'a FiniteAlgebra, b: &'a FiniteAlgebra, memo_cap: usize) -> Result<Self> {
        a.same_signature(b)?;
        Ok(Game {
            a,
            b,
            memo: HashMap::new(),
            cap: memo_cap,
        })
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// The position before any move: the constants.
    fn start(&self) -> Option<Position> {
        let sig = self.a.signature();
        let mut pos: Position = Vec::new();
        let mut fa = vec![usize::MAX; self.a.size()];
        let mut fb = vec![usize::MAX; self.b.size()];
        for f in (0..sig.len()).filter(|&f| sig.arity(f) == 0) {
            let p = (self.a.table(f)[0], self.b.table(f)[0]);
            admit(&mut fa, &mut fb, &mut pos, p)?;
        }
        self.close(pos, 0, fa, fb)
    }

    /// The position after additionally pairing `x` with `y`, or `None` when
    /// Duplicator has lost.
    fn extend(&self, pos: &Position, x: usize, y: usize) -> Option<Position> {
        let mut fa = vec![usize::MAX; self.a.size()];
        let mut fb = vec![usize::MAX; self.b.size()];
        for &(p, q) in pos {
            fa[p] = q;
            fb[q] = p;
        }
        let mut next = pos.clone();
        let prev = next.len();
        if !admit(&mut fa, &mut fb, &mut next, (x, y))? {
            return Some(next);
        }
        self.close(next, prev, fa, fb)
    }

    fn close(&self, mut pos: Position, mut prev: usize, mut fa: Vec<usize>, mut fb: Vec<usize>) -> Option<Position> {
        let sig = self.a.signature();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        loop {
            let cur = pos.len();
            if cur == prev {
                break;
            }
            for f in 0..sig.len() {
                let k = sig.arity(f);
                if k == 0 {
                    continue;
                }
                let mut ok = true;
                for_each_tuple(cur, k, |idx| {
                    if !ok || idx.iter().all(|&i| i < prev) {
                        return;
                    }
                    xs.clear();
                    ys.clear();
                    for &i in idx {
                        xs.push(pos[i].0);
                        ys.push(pos[i].1);
                    }
                    let p = (self.a.apply(f, &xs), self.b.apply(f, &ys));
                    if admit(&mut fa, &mut fb, &mut pos, p).is_none() {
                        ok = false;
                    }
                });
                if !ok {
                    return None;
                }
            }
            prev = cur;
        }
        pos.sort_unstable();
        Some(pos)
    }

    fn key(&self, pos: &Position) -> Vec<u32> {
        let nb = self.b.size();
        pos.iter().map(|&(x, y)| (x * nb + y) as u32).collect()
    }

    /// `(A, ∅) ≃_k (B, ∅)`.
    pub fn equivalent(&mut self, k: usize) -> Result<bool> {
        match self.start() {
            Some(p) => self.survives(&p, k),
            None => Ok(false),
        }
    }

    fn survives(&mut self, pos: &Position, rounds: usize) -> Result<bool> {
        if rounds == 0 {
            return Ok(true);
        }
        let key = (self.key(pos), rounds);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let v = self.forth(pos, rounds, Side::A)? && self.forth(pos, rounds, Side::B)?;
        if self.memo.len() >= self.cap {
            return Err(Error::CapExceeded {
                what: "memo entries",
                limit: self.cap,
                progress: format!("{} positions stored", self.memo.len()),
            });
        }
        self.memo.insert(key, v);
        Ok(v)
    }

    /// Whether Duplicator answers every Spoiler move on `side`.
    fn forth(&mut self, pos: &Position, rounds: usize, side: Side) -> Result<bool> {
        let (n, m) = match side {
            Side::A => (self.a.size(), self.b.size()),
            Side::B => (self.b.size(), self.a.size()),
        };
        for s in 0..n {
            if self.answer(pos, rounds, side, s, m)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A winning Duplicator reply to Spoiler playing `s` on `side`.
    fn answer(&mut self, pos: &Position, rounds: usize, side: Side, s: usize, m: usize) -> Result<Option<usize>> {
        for d in 0..m {
            let (x, y) = match side {
                Side::A => (s, d),
                Side::B => (d, s),
            };
            if let Some(next) = self.extend(pos, x, y) {
                if self.survives(&next, rounds - 1)? {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    }

    /// A Spoiler winning line for the `k`-round game, if Spoiler wins.
    pub fn spoiler_line(&mut self, k: usize) -> Result<Option<Vec<MoveRecord>>> {
        let mut pos = match self.start() {
            Some(p) => p,
            None => return Ok(Some(Vec::new())),
        };
        if self.survives(&pos, k)? {
            return Ok(None);
        }
        let mut line = Vec::new();
        for rounds in (1..=k).rev() {
            let mut chosen = None;
            'search: for side in [Side::A, Side::B] {
                let (n, m) = match side {
                    Side::A => (self.a.size(), self.b.size()),
                    Side::B => (self.b.size(), self.a.size()),
                };
                for s in 0..n {
                    if self.answer(&pos, rounds, side, s, m)?.is_none() {
                        chosen = Some((side, s, m));
                        break 'search;
                    }
                }
            }
            let (side, s, m) = chosen.ok_or_else(|| Error::Internal("no Spoiler win found".into()))?;
            // Duplicator's reply that keeps the game going longest
            let mut best: Option<(usize, Position, usize)> = None;
            for d in 0..m {
                let (x, y) = match side {
                    Side::A => (s, d),
                    Side::B => (d, s),
                };
                if let Some(next) = self.extend(&pos, x, y) {
                    let mut lasts = 0;
                    while lasts + 1 < rounds && self.survives(&next, lasts + 1)? {
                        lasts += 1;
                    }
                    if best.as_ref().is_none_or(|b| lasts + 1 > b.2) {
                        best = Some((d, next, lasts + 1));
                    }
                }
            }
            match best {
                None => {
                    line.push(MoveRecord { side, element: s, reply: None });
                    return Ok(Some(line));
                }
                Some((d, next, _)) => {
                    line.push(MoveRecord {
                        side,
                        element: s,
                        reply: Some(d),
                    });
                    pos = next;
                }
            }
        }
        Ok(Some(line))
    }
}

/// Adds a pair to a position unless present; `None` on a conflict with the
/// partial bijection, `Some(false)` when already present.
fn admit(fa: &mut [usize], fb: &mut [usize], pos: &mut Position, (x, y): (usize, usize)) -> Option<bool> {
    match (fa[x], fb[y]) {
        (vx, vy) if vx == y && vy == x => Some(false),
        (usize::MAX, usize::MAX) => {
            fa[x] = y;
            fb[y] = x;
            pos.push((x, y));
            Some(true)
        }
        _ => None,
    }
}

/// `A ≃_k B` from the empty position.
pub fn back_and_forth(a: &FiniteAlgebra, b: &FiniteAlgebra, k: usize) -> Result<bool> {
    Game::new(a, b, DEFAULT_MEMO_CAP)?.equivalent(k)
}

/// Least `k ≤ max_k` at which Spoiler wins.
pub fn distinguishing_depth(a: &FiniteAlgebra, b: &FiniteAlgebra, max_k: usize, memo_cap: usize) -> Result<Option<usize>> {
    let mut game = Game::new(a, b, memo_cap)?;
    for k in 0..=max_k {
        if !game.equivalent(k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn unar_example() {
        let one = fixtures::unar_cycle(1);
        let two = fixtures::unar_cycle(2);
        let cfg = GameConfig {
            a: &one,
            b: &two,
            moves_a: &[0],
            moves_b: &[0],
        };
        assert!(!partial_iso_check(cfg).unwrap());
        assert!(back_and_forth(&one, &two, 0).unwrap());
        assert!(!back_and_forth(&one, &two, 1).unwrap());
        assert_eq!(distinguishing_depth(&one, &two, 3, 1000).unwrap(), Some(1));
        let line = Game::new(&one, &two, 1000).unwrap().spoiler_line(1).unwrap().unwrap();
        assert_eq!(line, vec![MoveRecord { side: Side::A, element: 0, reply: None }]);
    }

    #[test]
    fn isomorphic_pairs_never_separate() {
        let s = fixtures::semilattice2();
        assert_eq!(distinguishing_depth(&s, &s, 3, 1000).unwrap(), None);
        let cfg = GameConfig {
            a: &s,
            b: &s,
            moves_a: &[],
            moves_b: &[],
        };
        assert!(partial_iso_check(cfg).unwrap());
    }

    #[test]
    fn chains_of_different_length() {
        let c2 = fixtures::chain_semilattice(2);
        let c3 = fixtures::chain_semilattice(3);
        assert!(back_and_forth(&c2, &c3, 1).unwrap());
        assert!(!back_and_forth(&c2, &c3, 3).unwrap());
        let mut g = Game::new(&c2, &c3, 1000).unwrap();
        let d = distinguishing_depth(&c2, &c3, 3, 1000).unwrap().unwrap();
        let line = g.spoiler_line(d).unwrap().unwrap();
        assert!(!line.is_empty() && line.len() <= d);
    }

    #[test]
    fn memo_cap() {
        let c3 = fixtures::chain_semilattice(3);
        let c4 = fixtures::chain_semilattice(4);
        assert!(matches!(distinguishing_depth(&c3, &c4, 3, 1), Err(Error::CapExceeded { .. })));
    }
}
