//! Desk-scale domain theory over finite posets.
//!
//! Every carrier here is finite (or, for the dyadics, enumerable with a
//! decidable order), so the smallness side conditions of the infinite
//! theory hold structurally and only the order-theoretic clauses are
//! computed. On a finite poset every directed subset contains its own
//! supremum, which makes way-below coincide with the order; the checks
//! still go through the general definitions so that they exercise them.

pub mod bilimit;
pub mod canonex;
pub mod cli;
pub mod corpus;
pub mod dyadics;
pub mod error;
pub mod expo;
pub mod finposet;
pub mod idealcomp;
pub mod indcomp;
pub mod io;
pub mod subset;
pub mod waybelow;

pub use dyadics::{Dyadic, Rational};
pub use error::{Error, Result};
pub use finposet::{validate_ep_pair, EpPair, FinPoset, MonoMap};
pub use idealcomp::AbstractBasis;
pub use indcomp::Family;
pub use subset::Subset;
pub use waybelow::BasisMap;
