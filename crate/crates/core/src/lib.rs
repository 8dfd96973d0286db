//! Exact combinatorics of the Farey graph and the Stern-Brocot tree.
//!
//! Vertices are coprime lattice points `(x, y)` standing for the rational
//! `y / x`, together with the two endpoints `0 = (1,0)` and `∞ = (0,1)`.
//! Finite mother-closed subtrees of the Stern-Brocot tree are the same thing
//! as paths from `0` to `∞` in the Farey graph; this crate works with them as
//! [`FareyPath`] values and builds everything else on top:
//!
//! * [`sb`]: vertices, `SL₂(ℕ)` words, tree navigation and the four orders.
//! * [`path`]: paths, leaves / local minima, friez indices, ★-sets, the
//!   creation / annihilation operators and the operad composition.
//! * [`corona`]: coronas, their Φ-tower, d.n.a. encoding, closed points and
//!   open edges, exhaustive enumeration.
//! * [`norm`]: coronas cut out by norm balls, iterated norms and the closed
//!   form for the d.n.a. of linear-norm coronas.
//! * [`zeck`]: Fibonacci numbers, Zeckendorf and binary expansions.
//! * [`equi`]: potential / height functions and discrepancy statistics.
//! * [`verify`]: seeded verification suites shared by the CLI and the
//!   acceptance tests.
//!
//! All arithmetic is exact (`num-bigint` / `num-rational`).

pub mod corona;
pub mod equi;
mod error;
pub mod norm;
pub mod path;
pub mod sb;
pub mod verify;
pub mod zeck;

pub use corona::{Corona, Dna};
pub use error::{Error, Result};
pub use norm::NormSpec;
pub use path::{FareyPath, FormalSum};
pub use sb::{Sign, Sl2Word, Vertex};

/// Exact rational used for norm values, radii and statistics.
pub type Rational = num_rational::BigRational;
