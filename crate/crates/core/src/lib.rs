//! Correlated perfect-matching decoding of CSS surface codes on torus
//! tilings, with a Monte Carlo harness for threshold studies.

pub mod analysis;
pub mod cli;
pub mod decoders;
pub mod error;
pub mod fixture;
pub mod matching;
pub mod noise;
pub mod plot;
pub mod syndrome;
pub mod tiling;

pub use error::{Error, Result};
