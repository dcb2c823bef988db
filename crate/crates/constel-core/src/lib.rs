//! Narrow admissible prime constellations: admissibility and nonconvexity
//! scoring, primorial mixed-radix coordinates, driving-term evolution across
//! sieve stages, exact population products, and exhaustive/best-first
//! instance search with checkpointing.

pub mod constellation;
pub mod error;
pub mod evolution;
pub mod pcoords;
pub mod population;
pub mod primes;
pub mod render;
pub mod search;

pub use error::{Error, Result};
