//! Exact enumerative machinery for permutations containing a prescribed
//! number of 3-letter patterns.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations, `reduce`/`reverse`/`complement`, and pattern
//!   occurrences with their `a`/`b`/`c` role labels.
//! * [`paths`]: up/down lattice paths, ballot numbers and closed-form counts
//!   of constrained Dyck path classes.
//! * [`series`]: Chebyshev-type polynomials `q_h`, `p_h`, exact power-series
//!   division, bounded-height path counts and the Catalan triangle.
//! * [`bijections`]: every explicit bijection as a forward/inverse pair that
//!   validates its domain eagerly.
//! * [`formulas`]: closed forms for permutation counts, in ballot numbers and
//!   powers of two.
//! * [`oracle`]: brute-force enumeration used as ground truth.
//! * [`verify`]: named invariant suites that compare all of the above.
//!
//! All counts are exact [`num_bigint::BigInt`] values; no floating point is
//! involved anywhere.

pub mod bijections;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod paths;
pub mod perm;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use paths::{BallotValue, LatticePath, Step};
pub use perm::{Pattern, Permutation};
