//! Finite effect algebras, orthoalgebras and cloning bimorphisms.
//!
//! The crate decides structural properties of finite effect algebras given
//! by partial addition tables, searches for cloning bimorphisms, enumerates
//! extreme states, and builds MV-algebra hidden-variable models when a
//! cloning witness exists. A small rational model `[0,1]^N` illustrates the
//! same constructions in a divisible setting.

pub mod algebra;
pub mod catalog;
pub mod cloning;
pub mod divisible;
pub mod hidden;
pub mod iso;
pub mod mv;
pub mod rational;
pub mod states;
pub mod structure;

pub use algebra::{AlgebraError, AlgebraFile, ElementId, FiniteEffectAlgebra, RawAlgebra};
pub use catalog::{CatalogError, CatalogSpec};
pub use cloning::{
    find_cloning_bimorphism, meet_witness, verify_witness, CloneError, CloningWitness, SearchConfig, SearchOutcome,
    SearchStatus,
};
pub use hidden::{hidden_variable_construct, ChainDecomposition, HiddenError, HiddenVariableModel};
pub use states::{enumerate_vertex_states, is_separating, StateError, StatePolytope, StateVector};
pub use structure::{Decomposition, StructureReport, Verdict};
