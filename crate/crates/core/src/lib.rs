//! Simulation and evaluation of the St. Petersburg game's fractal limit
//! objects.
//!
//! * [`game`]: repeated games, the block paths approximating the semistable
//!   processes `X` and `Y`, and the semi-selfsimilarity check.
//! * [`steinhaus`]: the deterministic Steinhaus sequence, its fluctuation
//!   function `ξ` evaluated exactly at dyadic arguments, and the related map `f`.
//! * [`ifs`]: the two affine maps whose attractor is the transformed graph of
//!   `ξ`, their singular values and dimension series.
//! * [`fracdim`]: box counting and the sojourn-time experiment.
//!
//! Every random quantity is a function of an explicit `seed`; replicas use
//! separate streams so parallel runs are reproducible.

pub mod dyadic;
pub mod error;
pub mod fracdim;
pub mod game;
pub mod ifs;
pub mod output;
pub mod path;
pub mod rng;
pub mod spatial;
pub mod stats;
pub mod steinhaus;

pub use dyadic::{Dyadic, Gamma};
pub use error::{Error, Result};
pub use path::SampledPath;
