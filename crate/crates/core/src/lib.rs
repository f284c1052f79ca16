//! Direct and inverse integral transforms on the complex plane.
//!
//! The crate evaluates Laplace transforms, Mellin transforms and Mellin
//! moments of a closed catalog of test functions, and inverts them along
//! two kinds of contour:
//!
//! * the open Bromwich line `Re z = a + δ`, which reproduces the original
//!   function only on its standard domain (`x ≥ 0`, resp. `0 < y ≤ 1`);
//! * a closed counterclockwise rectangle straddling every pole of a rational
//!   transform, which reproduces the function on the extended domain
//!   (all real `x`, resp. all `y > 0`).
//!
//! A closed-form residue sum ([`oracle`]) is the ground truth for every
//! contour computation.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub(crate) mod math;

pub mod contour;
pub mod funcat;
pub mod oracle;
pub mod quad;
pub mod xform;

pub use num_complex::Complex64;

pub use contour::{Contour, InverseKind, Shape, Side};
pub use error::{Error, Result};
pub use funcat::{DomainHint, Function, FunctionKind, FunctionSpec, GrowthBounds, Strip};
pub use oracle::{PoleBox, ResidueSum};
pub use quad::{Estimate, QuadratureSpec};
pub use xform::{Pole, Rational, TransformExpr, TransformKind, Validity};
