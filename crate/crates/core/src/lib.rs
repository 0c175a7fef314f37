//! Exact computation of the word invariants φ and β of free-group words.
//!
//! φ(w) is read off the expansion of the expected number of fixed points of
//! a random word map on `S_n` in powers of `1/n`; β(w) is the least Euler
//! characteristic of a type-B realizable quotient of the open trail of `w`.
//! Both are computed exactly from the enumeration of realizable quotients,
//! and cross-checked against direct permutation sampling and against the
//! pair-graph description of the type-A quotients of characteristic 2.

pub mod error;
pub mod harness;
pub mod level;
pub mod oracle;
pub mod pairgraph;
pub mod partition;
pub mod quotients;
pub mod series;
pub mod trail;
pub mod word;

pub use error::{Error, Result};
pub use level::Level;
pub use partition::Partition;
pub use quotients::{EnumerationMode, QuotientGraph, QuotientType};
pub use trail::OpenTrail;
pub use word::{Letter, Word};
