//! Exact computation of Grothendieck polynomials indexed by partitions and
//! fixed-point-free involutions, their degrees, and related regularity data.
//!
//! - [`shapes`]: partitions, shifted and ordinary diagrams
//! - [`tableaux`]: set-valued fillings, validity rules, enumeration
//! - [`polys`]: sparse integer polynomials with divided differences
//! - [`grothendieck`]: the G, GP and GQ polynomials and their degrees
//! - [`transforms`]: degree-monotone tableau rewrites (grow, squish, push)
//! - [`permutations`]: codes, rank matrices, Rothe diagrams, involutions
//! - [`symplectic`]: symplectic Grothendieck polynomials by recursion
//! - [`ideals`]: minor and Pfaffian generators, regularity values

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod grothendieck;
pub mod ideals;
pub mod permutations;
pub mod polys;
pub mod shapes;
pub mod symplectic;
pub mod tableaux;
pub mod transforms;

pub use error::{Error, Result};
pub use shapes::{Cell, DPartition, Diagram, Partition, StrictPartition};
pub use tableaux::{Entry, EntrySet, Flavor, Tableau};
