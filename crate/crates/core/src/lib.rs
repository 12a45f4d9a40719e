//! Exact harmonic analysis on super-polynomial algebras.
//!
//! The crate works with polynomials in bosonic variables `x0, x1..xn, y1..yn` and
//! fermionic variables `th1..thm, vt1..vtm`, the Laplace-type operator `Delta` and
//! its dual invariant `eta`, and the natural and twisted differential-operator
//! representations of gl(n|m), osp(2n|2m) and osp(2n+1|2m) on them. Everything is
//! exact over the rationals.

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod harmonic;
pub mod diffops;
pub mod linalg;
pub mod report;
pub mod superrep;
