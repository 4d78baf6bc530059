//! McKenzie's algebras `S_n` and their cyclic distortions `T_n`, reduced to
//! the operations `*` and the flat meet `^`.

use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McKenzieVariant {
    S,
    T,
}

/// Element index of a named element: `('a', i)`, `('b', i)`, `('c', i)`,
/// `('d', i)`, or `('0', 0)` for zero.
///
/// Layout: `0`, then `a_0..a_{n-1}`, `b_0..b_n`, then (in `T_n` only)
/// `c_0..c_{n-1}`, `d_0..d_{n-1}`.
pub fn mckenzie_element(n: usize, kind: char, i: usize) -> Option<usize> {
    match kind {
        '0' => Some(0),
        'a' if i < n => Some(1 + i),
        'b' if i <= n => Some(1 + n + i),
        'c' if i < n => Some(2 * n + 2 + i),
        'd' if i < n => Some(3 * n + 2 + i),
        _ => None,
    }
}

/// `S_n` (size `2n + 2`) or `T_n` (size `4n + 2`) with `a_i * b_{i+1} = b_i`,
/// `c_i * d_{i+1 mod n} = d_i`, all other products 0, and flat `^`.
pub fn mckenzie_algebra(n: usize, variant: McKenzieVariant) -> Result<FiniteAlgebra> {
    if n < 2 {
        return Err(Error::Precondition("McKenzie algebras need n >= 2".into()));
    }
    let size = match variant {
        McKenzieVariant::S => 2 * n + 2,
        McKenzieVariant::T => 4 * n + 2,
    };
    let mut product = vec![0; size * size];
    let el = |k, i| mckenzie_element(n, k, i).expect("in range");
    for i in 0..n {
        product[el('a', i) * size + el('b', i + 1)] = el('b', i);
        if variant == McKenzieVariant::T {
            product[el('c', i) * size + el('d', (i + 1) % n)] = el('d', i);
        }
    }
    let meet = (0..size * size)
        .map(|k| if k / size == k % size { k / size } else { 0 })
        .collect();
    let name = match variant {
        McKenzieVariant::S => format!("S{n}"),
        McKenzieVariant::T => format!("T{n}"),
    };
    FiniteAlgebra::new(name, Signature::from_pairs(&[("*", 2), ("^", 2)]), size, vec![product, meet])
}

/// The two sides of the law
/// `x0(x1(..x_i(x_{i+1}(..(x_{n-1}(x0 y))..))..))` with `x_i`, `x_{i+1}`
/// swapped on the right. Variables: `x_j = v_j`, `y = v_n`; `*` is symbol 0.
pub fn claim1_law(n: usize, i: usize) -> Result<(Term, Term)> {
    if n <= 3 || i == 0 || i + 2 >= n {
        return Err(Error::Precondition(format!(
            "law needs n > 3 and 0 < i < n - 2 (got n = {n}, i = {i})"
        )));
    }
    let build = |order: &[usize]| {
        let inner = Term::binary(0, Term::Var(0), Term::Var(n));
        order
            .iter()
            .rev()
            .fold(inner, |acc, &j| Term::binary(0, Term::Var(j), acc))
    };
    let lhs_order: Vec<usize> = (0..n).collect();
    let mut rhs_order = lhs_order.clone();
    rhs_order.swap(i, i + 1);
    Ok((build(&lhs_order), build(&rhs_order)))
}
