//! Exact computations for Lagrangian submanifolds of complex space built from
//! convex lattice polytopes.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod exactlinalg;
pub mod families;
pub mod invariants;
pub mod obstruction;
pub mod oracle;
pub mod analysis;
pub mod correspondence;
pub mod polytope;
