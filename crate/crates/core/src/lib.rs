//! Over-rotation combinatorics of interval maps and the parameter plane of
//! truncated bimodal horseshoes, computed in exact rational arithmetic.
//!
//! Everything is exact: points, parameters and rotation numbers are
//! [`Rational`]s. The crate is organised bottom-up:
//!
//! - [`combinatorics`]: cyclic patterns, over-rotation pairs, Sharkovsky order.
//! - [`overtwist`]: the bimodal over-twist family and its colour classes.
//! - [`plinear`]: P-linear maps, covering graphs, over-rotation intervals.
//! - [`horseshoe`]: the map `H₂`, its truncations, itineraries, and `ψ`.
//! - [`circlelift`]: degree-one lifts, monotone hulls, rotation intervals.
//! - [`tracts`]: staircases, point classification, sweeps and level sets.

pub mod circlelift;
pub mod combinatorics;
pub mod error;
pub mod horseshoe;
pub mod overtwist;
pub mod piecewise;
pub mod plinear;
pub mod rational;
pub mod tracts;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
