//! File formats, verification campaigns and the `bromwich` command line
//! for [`bromwich_core`].
//!
//! * [`parse`]: spec strings, complex literals and grids.
//! * [`formats`]: JSON documents for specs, quadrature settings,
//!   transforms and contours.
//! * [`harness`]: round-trips, delta-kernel checks, invariance sweeps and
//!   Cauchy reproduction over argument grids.
//! * [`output`]: CSV tables and JSON summaries.
//! * [`cli`]: the command-line front end.

pub mod cli;
mod error;
pub mod formats;
pub mod harness;
pub mod output;
pub mod parse;

pub use error::{Error, Result};
pub use parse::{format_spec, parse_spec_string, ParseError};
