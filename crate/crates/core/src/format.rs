//! Plain-text serialization of algebras, relational structures, partitions
//! and mappings.
//!
//! Structure files are whitespace separated with `#` comments:
//!
//! ```text
//! algebra S2
//! size 2
//! op ^ 2
//! 0 0
//! 0 1
//! end
//! ```
//!
//! Relational structures use `relstructure`, `rel <sym> <arity>`, `tuples m`
//! and `m` tuples; partial algebras use `partial` and `-` for undefined
//! entries.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::algebra::{FiniteAlgebra, Mapping, PartialAlgebra, RelStructure, Signature, Symbol};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Any structure that can appear in a structure file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Algebra(FiniteAlgebra),
    Relational(RelStructure),
    Partial(PartialAlgebra),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Algebra(_) => "algebra",
            Structure::Relational(_) => "relstructure",
            Structure::Partial(_) => "partial",
        }
    }
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .flat_map(|(i, line)| {
                let line = line.split('#').next().unwrap_or("");
                line.split_whitespace().map(move |t| (i + 1, t))
            })
            .collect();
        Tokens { items, pos: 0 }
    }

    fn line(&self) -> usize {
        self.items
            .get(self.pos)
            .or_else(|| self.items.last())
            .map_or(1, |&(l, _)| l)
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let t = self
            .items
            .get(self.pos)
            .copied()
            .ok_or_else(|| Error::parse(self.line(), format!("unexpected end of input, expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let (line, t) = self.next(kw)?;
        if t == kw {
            Ok(())
        } else {
            Err(Error::parse(line, format!("expected `{kw}`, found `{t}`")))
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let (line, t) = self.next(what)?;
        t.parse()
            .map_err(|_| Error::parse(line, format!("expected {what}, found `{t}`")))
    }

    fn finished(&self) -> bool {
        self.pos >= self.items.len()
    }
}

fn checked_table_len(n: usize, k: usize, line: usize) -> Result<usize> {
    u32::try_from(k)
        .ok()
        .and_then(|k| n.checked_pow(k))
        .filter(|&len| len <= 100_000_000)
        .ok_or_else(|| Error::parse(line, format!("table of size {n}^{k} is too large")))
}

/// Parses a structure file.
pub fn load_structure(text: &str) -> Result<Structure> {
    let mut tk = Tokens::new(text);
    let (line, kind) = tk.next("structure kind")?;
    if !matches!(kind, "algebra" | "relstructure" | "partial") {
        return Err(Error::parse(
            line,
            format!("expected `algebra`, `relstructure` or `partial`, found `{kind}`"),
        ));
    }
    let (_, name) = tk.next("structure name")?;
    tk.keyword("size")?;
    let size_line = tk.line();
    let n = tk.number("universe size")?;
    if n == 0 {
        return Err(Error::parse(size_line, "universe must be nonempty"));
    }
    let mut symbols = Vec::new();
    let mut tables: Vec<Vec<Option<usize>>> = Vec::new();
    let mut relations: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    loop {
        let (line, t) = tk.next("`end`")?;
        match t {
            "end" => break,
            "op" if kind != "relstructure" => {
                let (_, sym) = tk.next("symbol name")?;
                let k = tk.number("arity")?;
                let len = checked_table_len(n, k, line)?;
                let mut table = Vec::with_capacity(len);
                for _ in 0..len {
                    let (l, v) = tk.next("table entry")?;
                    if v == "-" {
                        if kind != "partial" {
                            return Err(Error::parse(l, "undefined entry `-` in a total algebra"));
                        }
                        table.push(None);
                        continue;
                    }
                    let v: usize = v
                        .parse()
                        .map_err(|_| Error::parse(l, format!("expected table entry, found `{v}`")))?;
                    if v >= n {
                        return Err(Error::parse(l, format!("entry out of range: {v} (size {n})")));
                    }
                    table.push(Some(v));
                }
                symbols.push(Symbol::new(sym, k));
                tables.push(table);
            }
            "rel" if kind == "relstructure" => {
                let (_, sym) = tk.next("symbol name")?;
                let k = tk.number("arity")?;
                tk.keyword("tuples")?;
                let m = tk.number("tuple count")?;
                let mut rel = BTreeSet::new();
                for _ in 0..m {
                    let mut tuple = Vec::with_capacity(k);
                    for _ in 0..k {
                        let l = tk.line();
                        let v = tk.number("tuple entry")?;
                        if v >= n {
                            return Err(Error::parse(l, format!("entry out of range: {v} (size {n})")));
                        }
                        tuple.push(v);
                    }
                    rel.insert(tuple);
                }
                symbols.push(Symbol::new(sym, k));
                relations.push(rel);
            }
            other => {
                return Err(Error::parse(line, format!("unexpected `{other}` in {kind} file")));
            }
        }
    }
    if !tk.finished() {
        return Err(Error::parse(tk.line(), "trailing input after `end`"));
    }
    let sig = Signature::new(symbols).map_err(|e| Error::parse(1, e.to_string()))?;
    Ok(match kind {
        "algebra" => {
            let total = tables
                .into_iter()
                .map(|t| t.into_iter().map(|v| v.expect("total")).collect())
                .collect();
            Structure::Algebra(FiniteAlgebra::new(name, sig, n, total)?)
        }
        "partial" => Structure::Partial(PartialAlgebra::new(name, sig, n, tables)?),
        _ => Structure::Relational(RelStructure::new(name, sig, n, relations)?),
    })
}

fn want<T>(s: Structure, kind: &str, pick: impl FnOnce(Structure) -> Option<T>) -> Result<T> {
    let found = s.kind();
    pick(s).ok_or_else(|| Error::Invalid(format!("expected a {kind} file, found {found}")))
}

pub fn load_algebra(text: &str) -> Result<FiniteAlgebra> {
    want(load_structure(text)?, "algebra", |s| match s {
        Structure::Algebra(a) => Some(a),
        _ => None,
    })
}

pub fn load_relstructure(text: &str) -> Result<RelStructure> {
    want(load_structure(text)?, "relstructure", |s| match s {
        Structure::Relational(r) => Some(r),
        _ => None,
    })
}

/// Loads an algebra or partial algebra as a partial algebra.
pub fn load_partial(text: &str) -> Result<PartialAlgebra> {
    match load_structure(text)? {
        Structure::Algebra(a) => Ok(PartialAlgebra::from(&a)),
        Structure::Partial(p) => Ok(p),
        Structure::Relational(_) => Err(Error::Invalid("expected an algebra or partial file".into())),
    }
}

fn write_rows(out: &mut String, n: usize, entries: impl Iterator<Item = String>) {
    let row = n.max(1);
    let mut col = 0;
    for e in entries {
        if col > 0 {
            out.push(' ');
        }
        out.push_str(&e);
        col += 1;
        if col == row {
            out.push('\n');
            col = 0;
        }
    }
    if col > 0 {
        out.push('\n');
    }
}

pub fn write_algebra(a: &FiniteAlgebra) -> String {
    let mut out = format!("algebra {}\nsize {}\n", a.name(), a.size());
    for (sym, table) in a.signature().symbols().iter().zip(a.tables()) {
        let _ = writeln!(out, "op {} {}", sym.name, sym.arity);
        write_rows(&mut out, a.size(), table.iter().map(|v| v.to_string()));
    }
    out.push_str("end\n");
    out
}

pub fn write_partial(a: &PartialAlgebra) -> String {
    let mut out = format!("partial {}\nsize {}\n", a.name(), a.size());
    for (i, sym) in a.signature().symbols().iter().enumerate() {
        let _ = writeln!(out, "op {} {}", sym.name, sym.arity);
        write_rows(
            &mut out,
            a.size(),
            a.table(i).iter().map(|v| v.map_or("-".to_string(), |v| v.to_string())),
        );
    }
    out.push_str("end\n");
    out
}

pub fn write_relstructure(r: &RelStructure) -> String {
    let mut out = format!("relstructure {}\nsize {}\n", r.name(), r.size());
    for (sym, rel) in r.signature().symbols().iter().zip(r.relations()) {
        let _ = writeln!(out, "rel {} {}\ntuples {}", sym.name, sym.arity, rel.len());
        for t in rel {
            let line: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out.push_str("end\n");
    out
}

pub fn write_partition(p: &Partition) -> String {
    let reps: Vec<String> = p.reps().iter().map(|r| r.to_string()).collect();
    format!("partition {}\n{}\n", p.size(), reps.join(" "))
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut tk = Tokens::new(text);
    tk.keyword("partition")?;
    let n = tk.number("size")?;
    let mut reps = Vec::with_capacity(n);
    for _ in 0..n {
        reps.push(tk.number("representative")?);
    }
    if !tk.finished() {
        return Err(Error::parse(tk.line(), "trailing input after partition"));
    }
    if reps.iter().any(|&r| r >= n) {
        return Err(Error::Invalid("representative out of range".into()));
    }
    Partition::from_reps(reps)
}

pub fn write_mapping(m: &Mapping) -> String {
    let vals: Vec<String> = m.values().iter().map(|v| v.to_string()).collect();
    format!("mapping {} {}\n{}\n", m.source_size(), m.target_size(), vals.join(" "))
}

pub fn parse_mapping(text: &str) -> Result<Mapping> {
    let mut tk = Tokens::new(text);
    tk.keyword("mapping")?;
    let src = tk.number("source size")?;
    let tgt = tk.number("target size")?;
    let mut vals = Vec::with_capacity(src);
    for _ in 0..src {
        vals.push(tk.number("value")?);
    }
    Mapping::new(tgt, vals)
}

/// Reads consecutive blocks starting at a keyword from a multi-block report,
/// e.g. every `mapping` block in CLI output.
pub fn blocks_starting_with<'a>(text: &'a str, keyword: &str) -> Vec<String> {
    let mut out = Vec::new();
    let lines: Vec<&'a str> = text.lines().collect();
    let mut i = 0;
    while i < lines.len() {
        if lines[i].split_whitespace().next() == Some(keyword) {
            let mut block = vec![lines[i]];
            if let Some(next) = lines.get(i + 1) {
                block.push(next);
            }
            out.push(block.join("\n"));
            i += 2;
        } else {
            i += 1;
        }
    }
    out
}
