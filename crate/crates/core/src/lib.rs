//! Exact decision procedures for restricted general probabilistic theories
//! over polytopic state spaces: compatibility of measurements, simplex
//! embeddability, and steering, each with an independently checkable
//! certificate.

pub mod bipartite;
pub mod compatibility;
pub mod contextuality;
pub mod dd;
pub mod error;
pub mod gpt;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod presets;
pub mod random;
pub mod rational;
pub mod steering;

pub use error::{Error, Result};
pub use polytope::{AffineFunctional, Halfspace, Polytope};
pub use rational::{Rational, Vector};
