//! Combinatorial cell structures on real moduli spaces of weighted stable
//! curves, and the associated weighted cactus groups.
//!
//! The crate models a-stable trees and their flip equivalence, exact-rational
//! marked curves with the (weighted) distance algorithm, the dual cell
//! complex with its face poset and Euler characteristics, permutahedron face
//! lattices with the star-shaped homeomorphism onto closed top cells, and
//! finitely presented cactus groups with Todd-Coxeter coset enumeration.
//!
//! All arithmetic on curve coordinates is exact rational; no floating point
//! is used anywhere.

pub mod error;
pub mod groups;
pub mod perm;
pub mod todd_coxeter;
pub mod verify;
pub mod permutahedron;
pub mod cells;
pub mod cli;
pub mod curves;
pub mod trees;

pub use error::{Error, Result};
