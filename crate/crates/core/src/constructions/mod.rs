//! Example factory: graph algebras and the congruence-class gadget, flat
//! extensions with pointed semidiscriminator structure, CSP translations,
//! McKenzie's `S_n`/`T_n` algebras and Rees matrix semigroups over `C2`.

mod csp_bridge;
mod flat;
mod graph;
mod mckenzie;
mod rees;

pub use csp_bridge::{algebra_to_csp_instances, csp_to_algebra, partial_projection_algebra, CspInstances, InstanceElement};
pub use flat::{
    check_psd_axioms, flat_extension, psd_laws, pi_congruence, pi_formula, pi_holds, pi_relation, psd_symbols, FlatExtension, Law, LawFailure,
    PiCongruence, PiVariant, PsdSymbols, MEET, PROJ, ZERO,
};
pub use graph::{cong_class_gadget, graph_algebra, reachable, Gadget};
pub use mckenzie::{claim1_law, mckenzie_algebra, mckenzie_element, McKenzieVariant};
pub use rees::{rees_over_c2, rees_element, sandwich_matrix, C2Entry, ReesElement};
