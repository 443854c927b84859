//! Imaging of reflectivity from monostatic (single source/receiver pair per
//! location, SAR-style) time-domain wave data.
//!
//! The pipeline has three stages:
//!
//! 1. [`wave`] — discretize the wave problem on a uniform grid, build band
//!    limited source pulses, propagate snapshots (spectrally or by leapfrog
//!    time stepping) and record transfer data at the receivers.
//! 2. [`rom`] — build per-source mass matrices directly from the transfer
//!    samples, factor them, and produce data-generated internal wavefields
//!    without knowing the medium.
//! 3. [`inversion`] — assemble the time-domain Lippmann-Schwinger system in
//!    Born, LSL (data-generated internal solutions) or cheated (true internal
//!    solutions) mode and solve a regularized least-squares problem for the
//!    reflectivity.
//!
//! [`experiments`] wires the stages into a config-driven runner with metrics
//! and portable file outputs; the `romsar` CLI and the browser demo are thin
//! front ends over it.

pub mod error;
pub mod experiments;
pub mod inversion;
pub mod rom;
pub mod wave;

pub(crate) mod parallel;

pub use error::{Error, Result};
