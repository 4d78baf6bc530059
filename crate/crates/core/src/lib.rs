//! Finite universal algebra workbench.
//!
//! Algebras have universe `0..n` and operations stored as row-major tables.
//! The crate covers congruence computations, free algebras and equational
//! normal forms, class-operator membership, first-order sentences over
//! algebras, algebraic Ehrenfeucht–Fraïssé games, a family of example
//! constructions, and a small CSP solver.

pub mod algebra;
pub mod closure;
pub mod csp;
pub mod congruence;
pub mod constructions;
pub mod efgame;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod freealg;
pub mod hom;
pub mod logic;
pub mod membership;
pub mod partition;
pub mod sexpr;
pub mod term;

pub use algebra::{
    direct_product, product_projection, quotient, FiniteAlgebra, Mapping, PartialAlgebra, ProductEncoding,
    RelStructure, Signature, Symbol,
};
pub use closure::{subalgebra_generated, Subuniverse};
pub use congruence::{
    cg, division_preorder, is_congruence_class, max_separating_congruence, monolith, subdirect_decomposition,
    syntactic_congruence,
};
pub use csp::solve;
pub use efgame::{back_and_forth, distinguishing_depth, partial_iso_check, GameConfig};
pub use error::{Error, Result};
pub use freealg::{free_algebra, normalize_term, satisfies_equation, BirkhoffBasis, FreeCaps};
pub use format::{load_structure, Structure};
pub use hom::{find_homomorphism, is_isomorphic, HomMode};
pub use logic::{build_pseudovariety_sentence, build_uh_sentence, evaluate, holds, skolemize_ae, Formula};
pub use membership::{
    decompose_and_check, idempotent_trivial_subgroups, in_hsp, operator_membership, ClassOperator, MembershipVerdict,
};
pub use partition::Partition;
pub use term::{evaluate_term, Term};
