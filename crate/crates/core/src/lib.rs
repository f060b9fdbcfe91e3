//! Heights of transformation groups acting on finite topological graphs.
//!
//! The height of a group is the length of the longest chain of nonempty
//! closed invariant sets. For groups coming from combinatorial structure on
//! a graph, the closed invariant sets are unions of orbit closures, so the
//! height reduces to a finite poset computation on automorphism orbits.

pub mod aut;
pub mod closure;
pub mod dynamics;
pub mod graph;
pub mod oracle;
pub mod report;
pub mod scheme;
mod unionfind;

pub use aut::{automorphisms, AutError, AutGroup, Automorphism, Color, ColoredGraph, Decoration};
pub use closure::{
    base_height, closure_family, height_of, ph_set, poset_dot, Atom, CellKind, ClosureCell,
    ClosureFamily, Height, PhSet,
};
pub use graph::{
    make_family, parse_graph, reduce, Edge, FamilyId, GraphError, ReducedGraph, TopoGraph,
};
pub use scheme::{
    apply_scheme, closed_form, lift_to_circle, plan, scheme_height, RotationAngle, Scheme,
    SchemeError,
};
pub use dynamics::{
    fixed_points, infinity_certificate, verify_certificate, CertificateMode, DynamicsError,
    FixedSet, InfinityCertificate, PLHomeo,
};
pub use oracle::{
    chain_height, cross_check, enumerate_automorphisms, multigraph_classes, search_min_height,
    verify_chain,
    ChainCertificate, CrossCheck, OracleError, SearchResult,
};
pub use report::{published_table, PublishedRow, PublishedClaim, Report, RowStatus};
