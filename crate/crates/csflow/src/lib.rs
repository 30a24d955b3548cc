//! Numerical laboratory for curve shortening flow (CSF) of closed curves in R^3.
//!
//! The library simulates `d/dt gamma = kappa N` on discrete closed space curves
//! to near-singularity, computes the geometric functionals that control blow-up
//! (`sup kappa^2`, `sup kappa * L`, the L^1 norm of torsion, `sup tau/kappa`),
//! verifies the torsion and speed evolution identities along trajectories, and
//! classifies singularities as Type I or Type II from the growth of
//! `Q(t) = sup kappa^2 * (omega - t)`. A small companion module generates
//! Abresch-Langer self-shrinking profiles as reference Type-I limit data.
//!
//! All values are immutable once constructed and safe to share across threads;
//! every operation is a pure function of its inputs.

pub mod curve;
pub mod diag;
pub mod families;
pub mod flow;
pub mod io;
pub mod shrinker;
mod spline;
mod tridiag;

pub use curve::{frenet, total_length, DiscreteCurve, FrenetField};
pub use diag::{classify, rescale_huisken, SampleRecord, SingularityReport, TimeSeries, Verdict};
pub use flow::{estimate_singularity_time, evolve, FlowConfig, Scheme, StopReason, Trajectory};
