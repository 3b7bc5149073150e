//! Finite classical polar spaces over small fields, their strongly regular
//! collinearity graphs, and the weighted intriguing-set calculus (weighted
//! m-ovoids and i-tight sets) in exact rational arithmetic.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`] — table-driven arithmetic in GF(p^h)
//! * [`linalg`] — dense vectors/matrices and row reduction over a field
//! * [`ratmat`] — exact-rational matrices for spanning and solving
//! * [`geometry`] — projective points, canonical subspaces, sesquilinear and
//!   quadratic forms, perps, Witt index
//! * [`polar`] — polar space construction: singular points, collinearity,
//!   generator enumeration, quotients
//! * [`embed`] — distinguished subgeometries and section classifiers
//! * [`srg`] — strongly regular graph parameters and exact spectral checks
//! * [`intriguing`] — weight vectors, classification, Delsarte-type bounds,
//!   standard ovoid/tight-set families, group averaging
//! * [`group`] — projective semilinear collineations, stabilizers, orbits
//! * [`search`] — exact-cover ovoid/m-ovoid search with certificates
//! * [`certify`] — end-to-end certificate pipelines and bound calculators

pub mod bitset;
pub mod certify;
pub mod embed;
pub mod error;
pub mod field;
pub mod geometry;
pub mod group;
pub mod intriguing;
pub mod linalg;
pub mod polar;
pub mod ratmat;
pub mod search;
pub mod srg;

pub use error::{Error, Result};
pub use field::{El, Field};
pub use geometry::{FormKind, FormSpec, ProjPoint, QuadType, Subspace};

