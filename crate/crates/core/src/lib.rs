//! Environments, scorers and an episode harness for evaluating multimodal
//! agents on planning-heavy tasks.
//!
//! Three environments ship with the crate:
//!
//! * [`sokoban`]: grid pushing puzzles with an optimal solver, deadlock
//!   detection and a best-prefix episode metric.
//! * [`football`]: a lightweight 22-player kinematic football simulation with
//!   a dense shaped reward and frame-skipping auto-render.
//! * [`aes`]: the atomic element similarity scorer used to grade webpage
//!   reproductions from rendered snapshots.
//!
//! [`harness`] drives agents through episodes in global or online mode and
//! [`metrics`] aggregates repeated runs. Batch work goes through [`par`],
//! which uses rayon when the `parallel` feature is enabled.

pub mod aes;
pub mod football;
pub mod harness;
pub mod metrics;
pub mod par;
pub mod raster;
pub mod sokoban;
pub mod webui;
