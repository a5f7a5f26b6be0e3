//! A cumulative universe-tower kernel.
//!
//! Types are named by [`Code`]s built from `⋆`, `Nat`, `Fin n`, `0`, Π, Σ,
//! identity and quotient formers. Each code has an ordinal rank below ω³
//! ([`rank::rk`]); level `i` of the tower holds the codes whose rank is
//! below the level's budget. Codes decode to explicit finite sets of
//! [`Value`]s, finite limits and colimits are built from the formers, and
//! h-propositions resize down to level 0.
//!
//! The [`oracle`] module enumerates every code up to a size bound and
//! re-derives the kernel's claims by brute force.

pub mod cli;
pub mod code;
pub mod decode;
pub mod error;
pub mod limits;
pub mod oracle;
pub mod ordinal;
pub mod rank;
pub mod resize;
pub mod syntax;
pub mod tower;
pub mod value;

pub use code::{code_eq, Code, Family, RelFamily};
pub use decode::{decode, inhabited, value_eq, Cardinality, Extension};
pub use error::{Error, Result};
pub use ordinal::{sup, RankOrdinal};
pub use rank::{complexity, level_member, rk, Complexity, TowerConfig};
pub use syntax::{parse, print};
pub use value::Value;
