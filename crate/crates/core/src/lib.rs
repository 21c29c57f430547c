//! Finite semigroups, right acts and their congruences.
//!
//! The crate builds semigroups (Cayley tables, rectangular bands, Rees
//! matrix semigroups), right acts over them, and decides subdirect
//! irreducibility, irreducibility and uniformity two ways: by a generic
//! congruence engine and by closed-form characterizations for completely
//! 0-simple semigroups and acts over rectangular bands. The [`enumerate`]
//! and [`suites`] modules run the two against each other on exhaustively
//! enumerated small instances.

pub mod act;
pub mod catalog;
pub mod closedform;
pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod io;
pub mod properties;
pub mod random;
pub mod rees;
pub mod semigroup;
pub mod suites;
pub mod unionfind;

pub use act::{ActAnalysis, RightAct};
pub use congruence::{Congruence, CongruenceSummary};
pub use error::{Error, Result};
pub use group::{FiniteGroup, SubgroupSet};
pub use rees::{rees_matrix, ReesElement, ReesMatrixSpec, SandwichEntry};
pub use semigroup::{rectangular_band, FiniteSemigroup};
