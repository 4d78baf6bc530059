//! Rees matrix semigroups `M0(C2; n, n; P)` over the two-element group.

use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};

/// Entries of a sandwich matrix over `C2 ∪ {0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C2Entry {
    Zero,
    E,
    G,
}

/// The bidiagonal sandwich matrix: row `r` has `e` at columns `r` and
/// `r + 1`, and the last row wraps to column 0 with `g` (twisted) or `e`.
pub fn sandwich_matrix(n: usize, twisted: bool) -> Vec<Vec<C2Entry>> {
    let mut p = vec![vec![C2Entry::Zero; n]; n];
    for r in 0..n {
        p[r][r] = C2Entry::E;
        if r + 1 < n {
            p[r][r + 1] = C2Entry::E;
        }
    }
    p[n - 1][0] = if twisted { C2Entry::G } else { C2Entry::E };
    p
}

/// A nonzero element `(i, h, j)`, `h` false for `e` and true for `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReesElement {
    pub row: usize,
    pub g: bool,
    pub col: usize,
}

/// Element index: `0` is zero, `(i, h, j)` is `1 + 2n·i + n·h + j`.
pub fn rees_element(n: usize, e: ReesElement) -> usize {
    1 + e.row * 2 * n + usize::from(e.g) * n + e.col
}

fn decode(n: usize, x: usize) -> Option<ReesElement> {
    let k = x.checked_sub(1)?;
    Some(ReesElement {
        row: k / (2 * n),
        g: (k / n) % 2 == 1,
        col: k % n,
    })
}

/// `A_n` (twisted) or `B_n` (plain), with the single binary operation `*`.
pub fn rees_over_c2(n: usize, twisted: bool) -> Result<FiniteAlgebra> {
    if n < 3 {
        return Err(Error::Precondition("Rees matrix construction needs n >= 3".into()));
    }
    let p = sandwich_matrix(n, twisted);
    let size = 2 * n * n + 1;
    let name = if twisted { format!("A{n}") } else { format!("B{n}") };
    FiniteAlgebra::from_fn(name, Signature::from_pairs(&[("*", 2)]), size, |_, args| {
        match (decode(n, args[0]), decode(n, args[1])) {
            (Some(x), Some(y)) => match p[x.col][y.row] {
                C2Entry::Zero => 0,
                mid => rees_element(
                    n,
                    ReesElement {
                        row: x.row,
                        g: x.g ^ (mid == C2Entry::G) ^ y.g,
                        col: y.col,
                    },
                ),
            },
            _ => 0,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_associativity() {
        for n in 3..=5 {
            assert_eq!(rees_over_c2(n, true).unwrap().size(), 2 * n * n + 1);
        }
        assert!(rees_over_c2(3, true).unwrap().is_associative(0));
        assert!(rees_over_c2(3, false).unwrap().is_associative(0));
        assert!(rees_over_c2(2, false).is_err());
    }

    #[test]
    fn matrix_corner() {
        assert_eq!(sandwich_matrix(3, true)[2][0], C2Entry::G);
        assert_eq!(sandwich_matrix(3, false)[2][0], C2Entry::E);
        assert_eq!(sandwich_matrix(3, true)[0][2], C2Entry::Zero);
    }
}
