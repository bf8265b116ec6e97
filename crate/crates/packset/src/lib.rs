//! Exact-arithmetic toolkit for integer packing sets, packing polyhedra,
//! and aggregation closures.
//!
//! Everything is computed over arbitrary-precision rationals: vertex and
//! halfspace descriptions of polyhedra, linear programs, hyperplane
//! arrangement cells, lattice-set algebra, integer hulls, and the
//! k-aggregation closures of packing polyhedra and of finite unions of
//! them. Results are exact where a certificate applies and explicitly
//! flagged outer approximations elsewhere.

pub mod cells;
pub mod closure;
pub mod dd;
pub mod downset;
pub mod error;
pub mod limits;
mod linalg;
pub mod lp;
pub mod packset;
pub mod poly;
pub mod rat;
pub mod wqo;

pub use cells::{enumerate_cells, Cell, CellEnumeration, Sign, SignVector};
pub use closure::{
    aggregate, closure_inf, closure_k, closure_k_downset, closure_monotonicity, global_box,
    family_closure_hull, lambda_cells, verify_closure, AggregationTuple, Certificate,
    ClosureResult, ClosureSource,
    MonotonicityReport, Representative, RepresentativeFamily, VerifyReport,
};
pub use downset::{
    farkas_decompose, normalize_downset, sup_oracle, BoundedSupport, DownsetModel,
    FarkasDecomposition, PackingPolyhedron, SupValue,
};
pub use error::{DownsetWitness, Error, Result};
pub use limits::Limits;
pub use lp::{lp_max, LpOutcome};
pub use packset::{lattice_box, Block, ExtNat, ExtPoint, KnapsackIneq, PackingSet, SetInclusion};
pub use poly::{
    h_to_v, poly_contains, poly_equal, v_to_h, Halfspace, HPolyhedron, VPolyhedron,
};
pub use rat::{QVector, Rational};
pub use wqo::{higman_leq, tail_index, BasisState, EmbeddingWitness, QuasiOrder};
