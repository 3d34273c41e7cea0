//! Greedy-GQ: two-timescale off-policy control with linear function
//! approximation, together with an exact analytic oracle for desk-scale MDPs.
//!
//! The crate is organized around three layers:
//!
//! * problem construction — finite MDPs ([`mdp`]), linear features
//!   ([`features`]) and the smooth softmax target policy ([`policy`]);
//! * exact measurement — stationary distributions, the MSPBE objective,
//!   its true gradient and the fast-timescale limit ([`oracle`]);
//! * learning and experiments — the vanilla, nested-loop and mini-batch
//!   Greedy-GQ updates ([`algorithms`]) and a seeded, reproducible
//!   experiment harness with CSV/SVG output ([`harness`]).
//!
//! Everything is deterministic under a 64-bit seed; see [`rng`] for the
//! stream-splitting scheme. Multi-seed experiments run on a rayon pool when
//! the `parallel` feature (default) is enabled and fall back to a sequential
//! loop otherwise; outputs are byte-identical either way.

pub mod algorithms;
pub mod error;
pub mod exec;
pub mod features;
pub mod harness;
pub mod mdp;
pub mod oracle;
pub mod policy;
pub mod rng;
pub mod trace;

pub use error::{Error, Result};
