//! Synchronization of transformations by permutation groups.
//!
//! A permutation group `G` on `{0..n-1}` *synchronizes* a non-permutation `f`
//! when the semigroup `<G, f>` contains a constant map. This crate decides
//! that question, builds the invariant graph `Gr(S)` whose edges are the pairs
//! no element of `S` can collapse, and provides the exact search machinery
//! (clique number, chromatic number, homomorphism enumeration) used to study
//! endomorphisms of vertex-primitive graphs.
//!
//! Module map:
//!
//! - [`perm`]: permutations, groups by generators, orbits, blocks, primitivity
//! - [`transform`]: transformations, kernels, kernel types
//! - [`graph`]: bitset graphs and the standard constructions
//! - [`search`]: clique, colouring and homomorphism search
//! - [`sync`]: the pair-collapse criterion, `Gr(S)`, derived graphs, rank scans
//! - [`latin`]: Latin squares, superposition homomorphisms, box-power endomorphisms
//! - [`srg`]: strongly regular parameters and endomorphism-rank bounds
//! - [`catalog`]: deterministic constructions of the named groups and graphs
//! - [`io`]: text formats (cycle notation, image lists, adjacency lists, graph6)

pub mod bits;
pub mod catalog;
pub mod error;
pub mod graph;
pub mod io;
pub mod latin;
pub mod perm;
pub mod search;
pub mod srg;
pub mod sync;
pub mod transform;

pub use error::{Error, Result};
pub use graph::Graph;
pub use perm::{PermGroup, Permutation};
pub use search::{Homomorphism, SearchOptions};
pub use transform::{KernelType, Transformation};
