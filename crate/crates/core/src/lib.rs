//! Pommaret bases of quasi-stable monomial ideals, the Pommaret-Seiler free
//! resolution with its cellular structure, and its reduction to a minimal
//! free resolution by an algebraic discrete Morse matching.

pub mod basis;
pub mod cellular;
pub mod complex;
pub mod error;
pub mod ideal;
pub mod integer;
pub mod monomial;
pub mod morse;
pub mod pgraph;
pub mod resolution;
pub mod verify;

pub use basis::{p_order, pommaret_basis, DeltaEntry, PommaretBasis};
pub use cellular::{build_cell_complex, chain_vertices, supports_check, Cell, CellComplex};
pub use complex::{
    format_entry, BettiTable, Entry, FreeComplex, GenLabel, Generator, Provenance, SparseMatrix, Symbol,
};
pub use error::{Error, Result};
pub use ideal::{minimal_generators, MonomialIdeal};
pub use integer::Integer;
pub use monomial::{cls, involutively_divides, lcm, multiplicative_vars, Monomial, Ring, VarSet};
pub use pgraph::{build_p_graph, PEdge, PGraph, PathDegree};
pub use resolution::{
    decompose_beg_end, ek_complex, ek_sgn, ps_complex, ps_generators, ps_rank_formula,
    stable_basis, taylor_complex,
};
pub use morse::{
    build_matching_v, is_morse_matching, minimize, morse_reduce, resolution_graph, Matching,
    MatchedPair, ReducedComplex, ResolutionGraph,
};
pub use verify::{
    check_complex, check_exactness, homological_invariants, oracle_betti, random_quasi_stable,
    random_stable, InvariantReport,
};
