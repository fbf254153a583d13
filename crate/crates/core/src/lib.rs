//! Exact computations with restricted Lie algebras in characteristic `p`:
//! finite and rational function fields, truncated polynomial algebras, Witt
//! algebras, the automorphism group functor of `k[t]/(t^p - w)`, purely
//! inseparable extensions, and surface/singularity numerics.

#![allow(clippy::needless_range_loop)]

pub mod autgroup;
pub mod fields;
pub mod jacobson;
pub mod reslie;
pub mod surfsing;
pub mod ring;
pub mod truncalg;
pub mod witt;

pub use fields::linalg::Matrix;
pub use fields::{FieldDescriptor, FieldElement, FieldError};
pub use ring::{Field, Ring};
