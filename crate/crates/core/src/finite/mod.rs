//! Exact finite groups as Cayley tables.

pub mod elemset;
pub mod generation;
pub mod group;
pub mod hom;
pub mod io;
pub mod iso;
pub mod library;
pub mod perm;

pub use elemset::ElementSet;
pub use generation::{d_min, d_normal_min, min_generating_set, subgroup_lattice};
pub use group::{FiniteGroup, Subgroup};
pub use hom::{direct_product, fiber_product, quotient, FiberProductData, Homomorphism, ProductCoords};
