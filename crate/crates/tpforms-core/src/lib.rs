//! Exact arithmetic in two families of totally real number fields —
//! real biquadratic fields `Q(sqrt(p), sqrt(q))` and the cyclic cubic
//! fields generated by a root of `x^3 - a*x^2 - (a+3)*x - 1` — together
//! with machinery built on top of it:
//!
//! * [`exactnum`]: big rationals, exact sign determination through
//!   rational interval refinement, and small exact linear algebra.
//! * [`biquad`]: biquadratic fields, their four real embeddings, the
//!   Galois action, integral bases, and quadratic subfields.
//! * [`scubic`]: the cubic fields, their Galois action, a distinguished
//!   triangular family of totally positive elements, and the trace form
//!   of the codifferent.
//! * [`qform`]: quadratic forms of rank up to 3 with coefficients in a
//!   field, exact (semi)definiteness tests, and a catalog of forms that
//!   cannot be written as sums of nonzero totally positive semidefinite
//!   forms.
//! * [`oracle`]: exhaustive search routines (with explicit budgets) that
//!   decide additive indecomposability of totally positive integers and
//!   attempt to split quadratic forms into semidefinite summands.
//! * [`verify`]: structured end-to-end checks combining all of the
//!   above; each check returns a machine-readable report.
//!
//! The crate is `no_std` (it requires only `alloc`), so everything here
//! is exact: no floating point enters any decision. Approximate values
//! appear only as rational interval endpoints used to bound searches and
//! to determine signs of provably nonzero quantities.

#![no_std]
#![forbid(unsafe_code)]
// Indexed loops keep row/column bookkeeping aligned with the matrix
// algebra they implement; iterator rewrites would obscure that.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::type_complexity)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod biquad;
pub mod exactnum;
pub mod oracle;
pub mod qform;
pub mod scubic;
pub mod verify;

pub use exactnum::{Int, Rat, Sign};
