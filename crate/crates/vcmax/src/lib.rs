//! Analysis of finite set systems through the lens of maximum VC classes.
//!
//! The crate provides:
//!
//! - ground sets, set families, traces, shattering, VC dimension and exact
//!   Sauer-bound arithmetic ([`family`], [`sauer`]);
//! - maximum-class machinery: d-maximum detection, forbidden labels and
//!   codes, reconstruction from labels, finite characterization by a code,
//!   and witness search for maximum traces ([`maximum`]);
//! - the genus of finite unions of convex subsets of a dense complete order,
//!   pattern sets, and the pattern-avoiding families a code generates
//!   ([`genus`]);
//! - ladder dimension, one-inclusion graphs with the distance law,
//!   symmetric-difference transforms and the stability bounds they obey
//!   ([`stability`]);
//! - generators for the classical example families: interval unions, bounded
//!   cardinality, halfplane and polynomial positivity traces over exact
//!   rational point samples, axis-parallel rectangles ([`generators`]);
//! - text and JSON formats for families, label tables, convex unions and
//!   point samples ([`io`]).
//!
//! Every fast path is paired with a brute-force oracle in the test suites,
//! and all geometric predicates use exact rational arithmetic.

pub mod code;
pub mod error;
pub mod family;
pub mod generators;
pub mod genus;
pub mod ground;
pub mod growth;
pub mod io;
pub mod maximum;
pub mod sauer;
pub mod stability;
pub mod subset;

pub use code::{is_subsequence, Code};
pub use error::{Error, Result};
pub use family::{SetFamily, DEFAULT_ENUM_CAP};
pub use ground::OrderedGround;
pub use sauer::{sauer_bound, sauer_bound_usize, sauer_profile, SauerProfile};
pub use subset::Subset;
