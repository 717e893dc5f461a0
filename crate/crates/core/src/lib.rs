//! Exact toric intersection theory on simplicial complete fans, structural
//! analysis of conormal restrictions, and an odd-exponent engine for
//! generalized permutohedra.
//!
//! The crate is `no_std` and needs only `alloc`. All arithmetic is exact.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod exactlin;
pub mod fan;
pub mod gammasig;
pub mod istheory;
pub mod polymat;
pub mod structure;

pub use error::{Error, Result};
