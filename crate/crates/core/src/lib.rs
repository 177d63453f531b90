//! Compact-group geometry kernels: bitorsors, group-valued moment maps,
//! surface representation varieties, covering-space twisted representations,
//! and discretized loop-group holonomy, with numerical verification suites
//! for every structural identity the constructions are supposed to satisfy.
//!
//! Everything is desk scale: matrix groups su(2), su(3), so(3) and finite
//! groups given by Cayley tables. Verification is sample-based with seeded
//! generators, so every run is reproducible.

pub mod bitorsor;
pub mod covering;
pub mod finite;
pub mod liegroup;
pub mod linalg;
pub mod loopdisc;
pub mod qham;
pub mod report;
pub mod surface;
pub mod tol;

pub use liegroup::{AlgebraElement, Automorphism, GroupElement, GroupKind, InnerProduct};
pub use report::{ReportBundle, VerificationReport};
