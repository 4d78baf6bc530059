//! First-order formulas over algebraic signatures, their evaluation, and the
//! sentence constructions built on them.

mod formula;
mod sentences;
mod skolem;

pub use formula::{evaluate, holds, quantifier_rank, Evaluator, Formula, DEFAULT_ASSIGNMENT_CAP};
pub use sentences::{
    build_pseudovariety_sentence, build_uh_sentence, semilattice_symbol, subalgebra_types, PseudovarietySentence,
};
pub use skolem::{ae_prefix, skolemize_ae, MAX_DISJUNCTS};
