//! Plane algebraic curves through point sets of PG(2,q).
//!
//! The crate computes the minimum degree of a homogeneous ternary form over
//! GF(q) vanishing on a given point set, generates the classical point sets
//! that calibrate that solver (maximal arcs, conic pencils, unitals, internal
//! and external points of a conic), evaluates the associated degree bounds,
//! and emits re-checkable curve certificates.
//!
//! Modules:
//! - [`gf`]: exact GF(p^k) arithmetic
//! - [`pg2`]: the projective plane PG(2,q)
//! - [`forms`]: homogeneous ternary forms and conic geometry
//! - [`linalg`]: exact kernel computation over GF(q)
//! - [`pointsets`]: point-set generators, line spectra, arc recognition
//! - [`thas`]: the (456,8)-arc of PG(2,64) built from the Suzuki-Tits ovoid
//! - [`mindeg`]: the minimum-degree solver and its certificates
//! - [`bounds`]: degree-bound calculators and the consistency validator
//! - [`constructions`]: executable conic-pencil constructions

pub mod error;
pub mod forms;
pub mod gf;
pub mod linalg;
pub mod pg2;
pub mod mindeg;
pub mod pointsets;

pub use error::{Error, Result};
