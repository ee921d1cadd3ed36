//! File formats, parameter sweeps, multi-threaded drivers and the `pcg`
//! command line on top of `pcg-core`.

pub mod app;
pub mod parallel;
pub mod statefile;
pub mod sweep;
