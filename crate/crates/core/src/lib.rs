//! Convertible erasure codes for stripe merges.
//!
//! This crate builds pairs of systematic MDS codes — an initial `[nI, kI]`
//! code and a final `[nF, lambda * kI]` code — designed so that `lambda`
//! initial stripes merge into one final stripe while touching as few blocks
//! as possible. It covers:
//!
//! - finite-field and matrix arithmetic over any GF(p^m) ([`gf`], [`matrix`]),
//! - superregular triangular Hankel arrays ([`hankel`]),
//! - the code-pair constructions and their conversion plans
//!   ([`constructions`]): a theta-power construction for any parameters with
//!   `rF <= min(rI, kI)`, three Hankel-array families with small fields, and
//!   the trivial full-re-encode pairing,
//! - closed-form access-cost lower bounds and optimality verdicts
//!   ([`bounds`]),
//! - stripe encoding, merge execution with access accounting, decoding, and
//!   the re-encode baseline ([`conversion`]),
//! - independent brute-force verification oracles ([`verify`]),
//! - canonical JSON code manifests ([`manifest`]) and on-disk stripe stores
//!   ([`store`]).
//!
//! Everything is sized for exhaustive desk-scale validation: fields are
//! arbitrary-precision, searches are bounded, and all randomness is seeded.

pub mod combin;

pub mod bounds;
pub mod constructions;
pub mod conversion;
pub mod error;
pub mod gf;
pub mod hankel;
pub mod manifest;
pub mod matrix;
pub mod store;
pub mod verify;

pub use bounds::{
    access_lower_bound, is_access_optimal, max_unchanged, read_lower_bound_per_stripe,
};
pub use constructions::{ConversionPlan, ConvertibleCode, MergeParams, PlanSource, Scheme};
pub use conversion::{AccessCostReport, Block, BlockRole, MessageBuffer, Stripe};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use hankel::HankelArray;
pub use matrix::Matrix;
