//! Local invariants of curve germs on cyclic quotient surface singularities
//! via embedded weighted blow-ups, and genera of curves in weighted
//! projective planes.

pub mod checks;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod invariants;
pub mod poly;
pub mod quotsing;
pub mod resolve;
pub mod wproj;

pub use error::{Error, Result};
