//! Temporal connected components in temporal graphs.
//!
//! The crate covers temporal reachability under strict and nonstrict
//! paths, exhaustive search for closed and open temporally connected
//! components, multicolored clique instances together with reductions
//! from them, and the connector gadgets those reductions are built from.

pub mod components;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod mcc;
pub mod reach;
pub mod reductions;
