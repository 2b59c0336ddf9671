//! Exact verification kernel for quantum Jordanian twists.
//!
//! The symbolic tier ([`pbw`], [`twist`]) works in PBW bases over truncated
//! power series in `(h, xi)`. The representation tier ([`rep`], [`affine`])
//! works with exact matrices over rational functions in `(p, xi, z)` where
//! `q = p^2`.

#![no_std]

extern crate alloc;

pub mod affine;
pub mod coeff;
pub mod limits;
pub mod pbw;
pub mod rep;
pub mod report;
pub mod twist;
