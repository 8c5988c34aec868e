//! Finite models for non-commutative Stone duality.
//!
//! Posets with a minimum and their derived relations, filters and
//! ultrafilters, finite spaces with distinguished bases, inverse semigroups,
//! ultrafilter groupoids and basic morphisms, with every correspondence
//! between them checked exhaustively on small carriers.

pub mod bits;
pub mod cli;
pub mod config;
pub mod error;
pub mod filters;
pub mod fixtures;
pub mod groupoid;
pub mod io;
pub mod isg;
pub mod morphisms;
pub mod order;
pub mod relations;
pub mod search;
pub mod topology;

pub use error::{Error, Result};
