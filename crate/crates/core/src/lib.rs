//! Balanced arrangements of finite groups and the crossover designs built
//! from them.
//!
//! Quick tour:
//!
//! * [`group`] small finite groups and their automorphisms
//! * [`triangle`] quotient triangles, Roman and pseudoterrace balance
//! * [`design`] crossover designs and their carryover balance
//! * [`constructions`] explicit families of arrangements
//! * [`search`] exhaustive searches, the primitive root sweep and witness checks
//! * [`tables`] reference witnesses bundled with the crate

pub mod arith;
pub mod constructions;
pub mod design;
pub mod error;
pub mod group;
pub mod search;
pub mod tables;
pub mod triangle;

pub use error::{Error, Result};
pub use group::{make_group, Automorphism, Element, FiniteGroup, GroupDescriptor};
pub use triangle::{Arrangement, TupleFamily};
