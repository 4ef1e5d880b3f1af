//! Spiral shifting operators on `N^d` and the submodule count of
//! `F_q[[T]]^d`.
//!
//! * [`config`]: configurations, the operators `g_1, ..., g_d`, the action of
//!   `N^d` and its inverse at the origin.
//! * [`stats`]: size `n(x)`, weight `W(x)` and content `t^n q^W`.
//! * [`partitions`]: partitions in an `n x (d-1)` box and their bijection onto
//!   configurations.
//! * [`series`]: truncated series in `t, q` and the generating functions.
//! * [`fq`]: brute-force enumeration of submodules over small prime fields.
//! * [`verify`]: the machine checks, at a quick or full scale.
//!
//! Data-parallel sweeps go through [`Exec`]; disable the default `parallel`
//! feature for a purely sequential build.

pub mod config;
mod error;
pub mod exec;
pub mod fq;
pub mod partitions;
pub mod series;
pub mod stats;
pub mod verify;

pub use config::{slot_shift, Config, MultiIndex, Slot};
pub use error::{Error, Result};
pub use exec::Exec;
pub use partitions::Partition;
pub use series::{BiPoly, GeneratorSet};
pub use stats::ContentExponents;
