//! Totally geodesic submanifolds of products of rank-one symmetric spaces.
//!
//! - [`catalog`]: rank-one spaces and their totally geodesic submanifolds.
//! - [`tableaux`]: adapted Young tableaux and the classification stream.
//! - [`kahler`]: Kähler angles of diagonal projective spaces.
//! - [`lieverify`]: numerical checks in compact matrix models.
//! - [`cli`]: the `geodiag` command-line front end.

pub mod catalog;
pub mod cli;
pub mod kahler;
pub mod lieverify;
pub mod rational;
pub mod tableaux;

pub use catalog::{Field, RankOneSpace, SpaceKind, TotGeodInclusion};
pub use rational::Rational;
pub use tableaux::{classify, count_classes, diagonal_curvature, ClassifiedSubmanifold, ProductSpace};
