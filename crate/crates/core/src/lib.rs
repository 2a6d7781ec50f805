//! Exact arithmetic in the one-dimensional algebraic groups over `Q`
//! (additive, multiplicative and elliptic) together with the finite-set
//! combinatorics built on top of them: sumsets and doubling, algebraic
//! correspondences, degeneracy criteria for polynomials, progression
//! detection, Ruzsa covering, torsion unfolding and brute-force counting of
//! points of varieties on finite grids.
//!
//! Everything is exact. There is no floating point anywhere in this crate and
//! no operation rounds; coefficient growth is the caller's problem, and the
//! few places where work can explode (integer factorization, tuple
//! enumeration) take explicit budgets and fail loudly when they run out.
//!
//! The crate is `no_std` and only needs `alloc`. Parallel drivers, file
//! formats and the command-line harness live in the `sumprod-lab` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
#[macro_use]
extern crate std;

pub mod arith;
pub mod corresp;
pub mod degen;
mod error;
pub mod finsets;
pub mod groups;
pub mod linalg;
pub mod patterns;
pub mod poly;
mod rational;
pub mod structure;

pub use error::{Error, Result};
pub use rational::Rational;

pub use corresp::{Axis, Correspondence, CorrespondenceKind};
pub use finsets::{FiniteSet, SubgroupBasis};
pub use groups::{Curve, GroupDescriptor, GroupElement};
pub use poly::MultiPoly;
