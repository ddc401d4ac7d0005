//! Group-regular 2-factorizations of the cocktail party graph `K_v - I`.
//!
//! The crate builds three small groups with exact arithmetic (the binary
//! octahedral group `2O`, the dicyclic group `Q24` and `SL(2,3)`), turns
//! base cycles into orbits and difference sets, assembles 2-factors from
//! sub-orbits and certifies whole Hamilton-Waterloo factorizations by
//! brute-force edge accounting. A backtracking searcher looks for new
//! solutions for a given orbit-type signature.
//!
//! Conventions: vertices are group elements, cycles are translated on the
//! right (`C·h`), and the Cayley graph `Cay[G:S]` has edges `{g, s·g}`, so
//! the differences of an edge `{x, y}` are `x·y⁻¹` and `y·x⁻¹`.

pub mod cayley;
pub mod certificate;
mod error;
pub mod factorization;
pub mod group;
pub mod orbit;
pub mod search;
pub mod solutions;

pub use cayley::{cayley_graph, one_factor, CayleyGraph, ConnectionSet, Edge};
pub use certificate::{FactorizationCertificate, Verdict};
pub use error::{Error, Result};
pub use factorization::{
    assemble_factor, factor_orbit, factor_stabilizer, hwp_feasibility, verify_factorization,
    FactorRecipe, HwpParams, RecipePart, TwoFactor,
};
pub use group::{build_group, Elem, ElemSet, FiniteGroup, GroupId, Notation, Subgroup};
pub use orbit::{
    cycle_orbit, partial_differences, stabilizer, translate_cycle, verify_orbit_decomposition,
    verify_partition, CycleOrbit, CycleSeq,
};
pub use search::{search_hwp, SearchOutcome, SearchTarget};
pub use solutions::{list_solutions, load_solution, verify_solution, SolutionSpec};
