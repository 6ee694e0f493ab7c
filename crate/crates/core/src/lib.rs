//! Geometric lattices, building sets and Feichtner-Yuzvinsky rings, with an
//! exact Gröbner engine for certifying quadratic Gröbner bases.

pub mod atomset;
pub mod building;
pub mod error;
pub mod fy;
pub mod graph;
pub mod io;
pub mod groebner;
pub mod lattice;
pub mod matroid;
pub mod normal;
pub mod pipeline;
pub mod poly;

pub use atomset::{AtomSet, ATOM_CAP};
pub use building::{BuildingSet, BuiltLattice, FlagReport, InducedBuiltLattice, SupersolvableBuiltWitness};
pub use error::{Error, Result};
pub use graph::{built_lattice_of_graph, Chordality, Graph};
pub use lattice::{boolean_lattice, partition_lattice, FlatId, GeometricLattice, ModularChainWitness};
pub use matroid::{validate_circuits, CircuitAxiom, CircuitViolation, Matroid};
pub use fy::{FYPresentation, Flavor, GeneratorOrder};
pub use groebner::{buchberger, is_groebner, normal_form, GroebnerBasis, PairCertificate};
pub use poly::{Monomial, MonomialOrder, Polynomial, Q};
