//! Transit functions, clustering systems, and the axioms that relate them.
//!
//! A [`TransitFunction`] assigns to each pair of elements a set "between"
//! them; a [`SetSystem`] is a family of clusters. Monotone transit functions
//! and T-systems are in bijection via [`canonical_transit_function`] and
//! [`transit_sets`]. The crate decides the transit axioms ([`axioms`]), the
//! set-system predicates ([`predicates`]), recognizes interval hypergraphs
//! ([`pyramid`]), and verifies implications between axioms by exhaustive
//! enumeration over small ground sets ([`enumerate`]).

pub mod axioms;
pub mod cluster;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod ground;
pub mod io;
pub mod predicates;
pub mod pyramid;
pub mod report;
pub mod system;
pub mod transit;
pub mod verdict;

pub use axioms::{
    check, check_attainment, check_intersection_closure, check_k3, check_mm, check_monotone,
    check_o_family, check_u, check_uc, check_w_family, check_wp, check_x_family, classify_all,
    witness_violates, OVariant, TransitAxiom, WVariant, XVariant,
};
pub use cluster::Cluster;
pub use error::{Error, Result};
pub use ground::{GroundSet, MAX_ELEMENTS};
pub use predicates::{
    check_W_prime, check_system, check_weak_hierarchy, nebesky_triple_test, union_closure,
    SystemPredicate,
};
pub use pyramid::{
    brute_force_order, classify_ladder, find_compatible_order, is_pyramidal, is_weakly_pyramidal,
    Ladder, OrderSearchResult,
};
pub use system::{minimal_cluster_containing, minimal_cluster_covering, SetSystem};
pub use transit::{canonical_transit_function, make_transit_function, transit_sets, TransitFunction};
pub use verdict::{CompatibleOrder, Verdict, Witness};
