//! Post-critical orbits, f-types and factorization of iterated monic
//! quadratics over finite fields of odd characteristic, together with
//! exhaustive census and verification tooling.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod factor;
pub mod ffield;
pub mod poly;
pub mod verify;

pub use dynamics::{orbit_profile, FType, Letter, OrbitProfile};
pub use error::{Error, Result};
pub use factor::{factor, is_irreducible, Factorization};
pub use ffield::{Field, FieldSpec, FqElem, Squareness};
pub use poly::{iterate, MonicQuadratic, Poly, DEFAULT_DEGREE_CAP};

/// Tool name and version, embedded in every report header.
pub const TOOL_VERSION: &str = concat!("iterquad ", env!("CARGO_PKG_VERSION"));
