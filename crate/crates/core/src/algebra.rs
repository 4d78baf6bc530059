//! Signatures, finite algebras, partial algebras, relational structures and
//! maps between them.
//!
//! Every universe is `0..n`. An operation of arity `k` is stored as a table of
//! `n^k` entries in row-major order with the last argument varying fastest.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// An operation or relation symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
        }
    }
}

/// An ordered list of symbols with unique names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        for (i, s) in symbols.iter().enumerate() {
            if s.name.is_empty() || s.name.chars().any(|c| c.is_whitespace() || c == '(' || c == ')') {
                return Err(Error::Invalid(format!("bad symbol name `{}`", s.name)));
            }
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(Error::Invalid(format!("duplicate symbol `{}`", s.name)));
            }
        }
        Ok(Signature { symbols })
    }

    /// Convenience constructor from `(name, arity)` pairs. Panics on duplicates.
    pub fn from_pairs(pairs: &[(&str, usize)]) -> Self {
        Signature::new(pairs.iter().map(|&(n, a)| Symbol::new(n, a)).collect())
            .expect("valid signature")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> &Symbol {
        &self.symbols[index]
    }

    pub fn arity(&self, index: usize) -> usize {
        self.symbols[index].arity
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn has_nullary(&self) -> bool {
        self.symbols.iter().any(|s| s.arity == 0)
    }
}

/// Calls `f` on every `k`-tuple over `0..n` in lexicographic order.
pub fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut tuple = vec![0usize; k];
    if k > 0 && n == 0 {
        return;
    }
    loop {
        f(&tuple);
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Row-major index of `args` in a table over a universe of size `n`.
#[inline]
pub fn table_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

fn checked_pow(n: usize, k: usize) -> Result<usize> {
    let k32 = u32::try_from(k).map_err(|_| Error::Invalid("arity too large".into()))?;
    n.checked_pow(k32)
        .ok_or_else(|| Error::Invalid(format!("table size {n}^{k} overflows")))
}

/// A finite algebra with total operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        size: usize,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if tables.len() != signature.len() {
            return Err(Error::Invalid(format!(
                "{} tables for {} symbols",
                tables.len(),
                signature.len()
            )));
        }
        for (sym, table) in signature.symbols().iter().zip(&tables) {
            let want = checked_pow(size, sym.arity)?;
            if table.len() != want {
                return Err(Error::Invalid(format!(
                    "table for `{}` has length {}, expected {}",
                    sym.name,
                    table.len(),
                    want
                )));
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::Invalid(format!(
                    "entry out of range: {bad} in table for `{}` (size {size})",
                    sym.name
                )));
            }
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            signature,
            size,
            tables,
        })
    }

    /// Builds an algebra by evaluating closures for each symbol.
    pub fn from_fn(
        name: impl Into<String>,
        signature: Signature,
        size: usize,
        mut op: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(signature.len());
        for (i, sym) in signature.symbols().iter().enumerate() {
            let mut table = Vec::with_capacity(checked_pow(size, sym.arity)?);
            for_each_tuple(size, sym.arity, |args| table.push(op(i, args)));
            tables.push(table);
        }
        FiniteAlgebra::new(name, signature, size, tables)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.signature.index_of(name)
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][table_index(self.size, args)]
    }

    /// Binary operation shorthand.
    #[inline]
    pub fn apply2(&self, op: usize, x: usize, y: usize) -> usize {
        self.tables[op][x * self.size + y]
    }

    pub fn same_signature(&self, other: &FiniteAlgebra) -> Result<()> {
        if self.signature == other.signature {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "`{}` and `{}` have different signatures",
                self.name, other.name
            )))
        }
    }

    /// Values of the nullary operations, in signature order.
    pub fn constants(&self) -> Vec<usize> {
        self.signature
            .symbols()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.arity == 0)
            .map(|(i, _)| self.tables[i][0])
            .collect()
    }

    /// Whether `op` is a binary associative operation.
    pub fn is_associative(&self, op: usize) -> bool {
        if self.signature.arity(op) != 2 {
            return false;
        }
        let n = self.size;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.apply2(op, x, y);
                (0..n).all(|z| {
                    self.apply2(op, xy, z) == self.apply2(op, x, self.apply2(op, y, z))
                })
            })
        })
    }

    /// Whether `op` is a semilattice operation (associative, commutative, idempotent).
    pub fn is_semilattice_op(&self, op: usize) -> bool {
        let n = self.size;
        self.signature.arity(op) == 2
            && (0..n).all(|x| self.apply2(op, x, x) == x)
            && (0..n).all(|x| (0..n).all(|y| self.apply2(op, x, y) == self.apply2(op, y, x)))
            && self.is_associative(op)
    }

    /// Restriction to a subuniverse, renumbered by the order of `elements`.
    pub fn restrict(&self, elements: &[usize]) -> Result<(FiniteAlgebra, Mapping)> {
        let mut index = vec![usize::MAX; self.size];
        for (i, &e) in elements.iter().enumerate() {
            index[e] = i;
        }
        let m = elements.len();
        let mut err = None;
        let sub = FiniteAlgebra::from_fn(
            format!("{}_sub", self.name),
            self.signature.clone(),
            m,
            |op, args| {
                let lifted: Vec<usize> = args.iter().map(|&a| elements[a]).collect();
                let v = index[self.apply(op, &lifted)];
                if v == usize::MAX {
                    err.get_or_insert(op);
                    0
                } else {
                    v
                }
            },
        )?;
        if let Some(op) = err {
            return Err(Error::Invalid(format!(
                "subset is not closed under `{}`",
                self.signature.symbol(op).name
            )));
        }
        let embedding = Mapping::new(self.size, elements.to_vec())?;
        Ok((sub, embedding))
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_algebra(self))
    }
}

/// A finite partial algebra; `None` marks an undefined entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAlgebra {
    name: String,
    signature: Signature,
    size: usize,
    tables: Vec<Vec<Option<usize>>>,
}

impl PartialAlgebra {
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        size: usize,
        tables: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        if tables.len() != signature.len() {
            return Err(Error::Invalid(format!(
                "{} tables for {} symbols",
                tables.len(),
                signature.len()
            )));
        }
        for (sym, table) in signature.symbols().iter().zip(&tables) {
            let want = checked_pow(size, sym.arity)?;
            if table.len() != want {
                return Err(Error::Invalid(format!(
                    "table for `{}` has length {}, expected {}",
                    sym.name,
                    table.len(),
                    want
                )));
            }
            if let Some(bad) = table.iter().flatten().find(|&&v| v >= size) {
                return Err(Error::Invalid(format!(
                    "entry out of range: {bad} in table for `{}` (size {size})",
                    sym.name
                )));
            }
        }
        Ok(PartialAlgebra {
            name: name.into(),
            signature,
            size,
            tables,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, op: usize) -> &[Option<usize>] {
        &self.tables[op]
    }

    pub fn apply(&self, op: usize, args: &[usize]) -> Option<usize> {
        self.tables[op][table_index(self.size, args)]
    }
}

impl From<&FiniteAlgebra> for PartialAlgebra {
    fn from(a: &FiniteAlgebra) -> Self {
        PartialAlgebra {
            name: a.name.clone(),
            signature: a.signature.clone(),
            size: a.size,
            tables: a
                .tables
                .iter()
                .map(|t| t.iter().map(|&v| Some(v)).collect())
                .collect(),
        }
    }
}

/// A finite relational structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelStructure {
    name: String,
    signature: Signature,
    size: usize,
    relations: Vec<BTreeSet<Vec<usize>>>,
}

impl RelStructure {
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        size: usize,
        relations: Vec<BTreeSet<Vec<usize>>>,
    ) -> Result<Self> {
        if relations.len() != signature.len() {
            return Err(Error::Invalid(format!(
                "{} relations for {} symbols",
                relations.len(),
                signature.len()
            )));
        }
        for (sym, rel) in signature.symbols().iter().zip(&relations) {
            for t in rel {
                if t.len() != sym.arity {
                    return Err(Error::Invalid(format!(
                        "tuple {:?} in `{}` has wrong arity (expected {})",
                        t, sym.name, sym.arity
                    )));
                }
                if let Some(&bad) = t.iter().find(|&&v| v >= size) {
                    return Err(Error::Invalid(format!(
                        "entry out of range: {bad} in relation `{}` (size {size})",
                        sym.name
                    )));
                }
            }
        }
        Ok(RelStructure {
            name: name.into(),
            signature,
            size,
            relations,
        })
    }

    /// A digraph with a single binary relation `E`.
    pub fn digraph(size: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let rel = edges.iter().map(|&(u, v)| vec![u, v]).collect();
        RelStructure::new("G", Signature::from_pairs(&[("E", 2)]), size, vec![rel])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relation(&self, index: usize) -> &BTreeSet<Vec<usize>> {
        &self.relations[index]
    }

    pub fn relations(&self) -> &[BTreeSet<Vec<usize>>] {
        &self.relations
    }

    pub fn contains(&self, rel: usize, tuple: &[usize]) -> bool {
        self.relations[rel].contains(tuple)
    }

    /// Substructure induced on `elements`, renumbered in the given order.
    pub fn induced(&self, elements: &[usize]) -> RelStructure {
        let mut index = vec![usize::MAX; self.size];
        for (i, &e) in elements.iter().enumerate() {
            index[e] = i;
        }
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .filter(|t| t.iter().all(|&v| index[v] != usize::MAX))
                    .map(|t| t.iter().map(|&v| index[v]).collect())
                    .collect()
            })
            .collect();
        RelStructure {
            name: format!("{}_induced", self.name),
            signature: self.signature.clone(),
            size: elements.len(),
            relations,
        }
    }
}

impl fmt::Display for RelStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_relstructure(self))
    }
}

/// A total function from `0..values.len()` into `0..target_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mapping {
    target_size: usize,
    values: Vec<usize>,
}

impl Mapping {
    pub fn new(target_size: usize, values: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v >= target_size) {
            return Err(Error::Invalid(format!(
                "mapping value {bad} out of range (target size {target_size})"
            )));
        }
        Ok(Mapping {
            target_size,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        Mapping {
            target_size: n,
            values: (0..n).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        for &v in &self.values {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Mapping) -> Result<Mapping> {
        if other.source_size() != self.target_size {
            return Err(Error::Invalid("mapping composition size mismatch".into()));
        }
        Ok(Mapping {
            target_size: other.target_size,
            values: self.values.iter().map(|&v| other.values[v]).collect(),
        })
    }

    /// The kernel of the map, as a partition of its source.
    pub fn kernel(&self) -> Partition {
        let mut first = vec![usize::MAX; self.target_size];
        let rep = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if first[v] == usize::MAX {
                    first[v] = i;
                }
                first[v]
            })
            .collect();
        Partition::from_reps(rep).expect("kernel reps are canonical")
    }

    /// Whether this map is a homomorphism `a -> b`; returns the first failing
    /// operation application otherwise.
    pub fn homomorphism_failure(
        &self,
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
    ) -> Option<(usize, Vec<usize>)> {
        if self.values.len() != a.size() || self.target_size != b.size() {
            return Some((usize::MAX, vec![]));
        }
        for op in 0..a.signature().len() {
            let mut bad = None;
            let mut image = vec![0; a.signature().arity(op)];
            for_each_tuple(a.size(), a.signature().arity(op), |args| {
                if bad.is_some() {
                    return;
                }
                for (slot, &x) in image.iter_mut().zip(args) {
                    *slot = self.values[x];
                }
                if self.values[a.apply(op, args)] != b.apply(op, &image) {
                    bad = Some(args.to_vec());
                }
            });
            if let Some(args) = bad {
                return Some((op, args));
            }
        }
        None
    }

    pub fn is_homomorphism(&self, a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
        a.signature() == b.signature() && self.homomorphism_failure(a, b).is_none()
    }

    /// Whether every tuple of every relation of `a` maps into `b`.
    pub fn is_rel_homomorphism(&self, a: &RelStructure, b: &RelStructure) -> bool {
        self.values.len() == a.size()
            && self.target_size == b.size()
            && a.signature() == b.signature()
            && a.relations().iter().zip(b.relations()).all(|(ra, rb)| {
                ra.iter().all(|t| {
                    let image: Vec<usize> = t.iter().map(|&x| self.values[x]).collect();
                    rb.contains(&image)
                })
            })
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_mapping(self))
    }
}

/// Mixed-radix element encoding for direct products, first factor most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductEncoding {
    radices: Vec<usize>,
}

impl ProductEncoding {
    pub fn new(radices: Vec<usize>) -> Self {
        ProductEncoding { radices }
    }

    pub fn size(&self) -> usize {
        self.radices.iter().product()
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&c, &r)| acc * r + c)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.radices.len()];
        for (slot, &r) in coords.iter_mut().zip(&self.radices).rev() {
            *slot = index % r;
            index /= r;
        }
        coords
    }
}

/// Direct product of a nonempty list of algebras of a common signature.
pub fn direct_product(factors: &[FiniteAlgebra]) -> Result<FiniteAlgebra> {
    let first = factors
        .first()
        .ok_or_else(|| Error::Precondition("empty product".into()))?;
    for f in &factors[1..] {
        first.same_signature(f)?;
    }
    let enc = ProductEncoding::new(factors.iter().map(|f| f.size()).collect());
    let size = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.size()))
        .ok_or_else(|| Error::Invalid("product too large".into()))?;
    let decoded: Vec<Vec<usize>> = (0..size).map(|i| enc.decode(i)).collect();
    let name = factors
        .iter()
        .map(|f| f.name())
        .collect::<Vec<_>>()
        .join("x");
    let mut column = Vec::new();
    FiniteAlgebra::from_fn(name, first.signature().clone(), size, |op, args| {
        let coords: Vec<usize> = factors
            .iter()
            .enumerate()
            .map(|(i, factor)| {
                column.clear();
                column.extend(args.iter().map(|&a| decoded[a][i]));
                factor.apply(op, &column)
            })
            .collect();
        enc.encode(&coords)
    })
}

/// The `i`-th coordinate projection of `direct_product(factors)`.
pub fn product_projection(factors: &[FiniteAlgebra], i: usize) -> Mapping {
    let enc = ProductEncoding::new(factors.iter().map(|f| f.size()).collect());
    Mapping {
        target_size: factors[i].size(),
        values: (0..enc.size()).map(|x| enc.decode(x)[i]).collect(),
    }
}

/// Quotient of `a` by the congruence `theta`.
///
/// Classes are numbered in order of their least element; the returned
/// mapping sends each element to its class.
pub fn quotient(a: &FiniteAlgebra, theta: &Partition) -> Result<(FiniteAlgebra, Mapping)> {
    if theta.size() != a.size() {
        return Err(Error::Invalid("partition size differs from algebra".into()));
    }
    if let Some((op, args)) = theta.compatibility_failure(a) {
        return Err(Error::NotACongruence(format!(
            "`{}` applied to {:?} is not well defined on classes",
            a.signature().symbol(op).name,
            args
        )));
    }
    let reps = theta.representatives();
    let projection = Mapping::new(reps.len(), theta.class_indices())?;
    let q = FiniteAlgebra::from_fn(
        format!("{}/theta", a.name()),
        a.signature().clone(),
        reps.len(),
        |op, args| {
            let lifted: Vec<usize> = args.iter().map(|&c| reps[c]).collect();
            projection.get(a.apply(op, &lifted))
        },
    )?;
    Ok((q, projection))
}
