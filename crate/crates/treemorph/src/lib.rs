//! Planar morphs between straight-line grid drawings of ordered trees.
//!
//! The crate provides three morphing algorithms and an exact verifier:
//!
//! * [`upward_linear::morph_upward_linear`] builds a `2n-1` step upward planar
//!   morph between strictly-upward drawings of a rooted ordered tree.
//! * [`threestep::morph_upward_3step`] builds a 3-step upward planar morph for
//!   binary trees; [`threestep::morph_upward_3step_general`] extends it to any
//!   degree at the price of possibly exponential width.
//! * [`general::morph_general`] builds an `O(n)` step planar morph between any
//!   two order-preserving planar grid drawings.
//!
//! Every geometric predicate uses arbitrary-precision integers or rationals,
//! so verdicts are exact. The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod drawing;
pub mod error;
pub mod general;
pub mod geom;
pub mod morph;
pub mod poly;
pub mod resolution;
pub mod threestep;
pub mod tree;
pub mod upward_linear;

pub use drawing::{SquareBox, GridDrawing, Orientation};
pub use error::Error;
pub use geom::Point;
pub use morph::{Morph, MorphReport, StepCertificate};
pub use tree::OrderedTree;
