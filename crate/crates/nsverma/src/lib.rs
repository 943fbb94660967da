//! Exact computations in highest-weight modules of the Neveu-Schwarz
//! superalgebra.
//!
//! The Neveu-Schwarz algebra is the N=1 super-extension of the Virasoro
//! algebra, with even generators `L_n` (n integer), odd generators `G_r`
//! (r half-odd) and a central element `C`:
//!
//! ```text
//! [L_m, L_n]   = (m - n) L_{m+n} + (C/12)(m^3 - m) delta_{m+n,0}
//! [L_m, G_r]   = (m/2 - r) G_{m+r}
//! [G_r, G_s]_+ = 2 L_{r+s} + (C/3)(r^2 - 1/4) delta_{r+s,0}
//! ```
//!
//! with adjoints `L_n* = L_{-n}`, `G_r* = G_{-r}`.  This crate works in the
//! Verma module `V(c,h)` over exact rational scalars (or bivariate
//! polynomials in the indeterminates `c`, `h`) and provides:
//!
//! - [`exactnum`]: big rationals, half-integers, sparse polynomials in
//!   `c` and `h`;
//! - [`nsalgebra`]: the PBW basis, generator action by bracket rewriting,
//!   the contravariant form and singular-vector tests;
//! - [`gramkac`]: Gram matrices, exact determinant / rank / inertia /
//!   kernel, the vanishing polynomials `phi_pq` and verification of the
//!   Kac determinant factorization;
//! - [`qseries`]: truncated Puiseux and two-variable theta series, the
//!   Jacobi triple product, characters of the discrete series and the
//!   coset decomposition identities;
//! - [`fqs`]: the discrete-series combinatorics (curve intersections,
//!   first intersectors) and an exact unitarity classifier producing
//!   ghost witnesses.
//!
//! Everything is exact: there is no floating point anywhere in the crate.

pub mod exactnum;
pub mod fqs;
pub mod gramkac;
pub mod nsalgebra;
pub mod qseries;

pub use exactnum::{HalfInt, PolyCH, Rat, Scalar};
pub use nsalgebra::{Generator, PbwMonomial, VermaModule, VermaVector};
