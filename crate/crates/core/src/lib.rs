//! Weak Brill-Noether for Mukai vectors on K3 surfaces of Picard rank one.
//!
//! For a K3 surface `X` with `Pic(X) = ZH` and `H^2 = 2n`, a class
//! `v = (r, dH, a)` satisfies weak Brill-Noether when the generic stable sheaf
//! with Mukai vector `v` has at most one nonzero cohomology group. This crate
//! decides that property with exact integer arithmetic, computes
//! `(h0, h1, h2)` of the generic sheaf, and enumerates all failures up to a
//! rank bound.
//!
//! ```
//! use mukai_bn::{weak_bn, K3Context, MukaiVector};
//!
//! let ctx = K3Context::new(1).unwrap();
//! let verdict = weak_bn(&ctx, MukaiVector::new(5, 3, 2)).unwrap();
//! assert!(!verdict.wbn);
//! assert_eq!(verdict.h, [8, 1, 0]);
//! ```

pub mod classify;
pub mod criteria;
pub mod destabilizers;
pub mod error;
pub mod lattice;
pub mod walls;

pub use classify::{
    enumerate_counterexamples, generic_cohomology, match_family, minimal_a, resolve, weak_bn, Classifier,
    Counterexample, Rule, Verdict,
};
pub use destabilizers::{brute_force_dv, find_dv, find_dv_bn, largest_tss_wall, Destabilizer, SearchBox};
pub use error::{Error, Result};
pub use lattice::{Int, K3Context, MukaiVector};
pub use walls::{Rational, Wall, WallPosition};
