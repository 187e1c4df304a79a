//! Changemaker lattices and the Goeritz forms of alternating diagrams.
//!
//! The crate decides whether the Goeritz lattice of a reduced alternating
//! diagram is isomorphic to a `p/q`-changemaker lattice and, when it is,
//! produces explicit embeddings, marked crossings, fractional tangles and a
//! reduction of the marked crossing to a clasp.

pub mod cmlat;
pub mod error;
pub mod graphlat;
pub mod intlat;
pub mod knotdiag;
pub mod ratcf;
pub mod recognizer;
pub mod surgery;

pub use error::{Error, Result};
