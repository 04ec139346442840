//! Geometry and simulation kernels for spatial-visualization puzzles.
//!
//! The crate is split along the data it owns:
//! - [`voxel`]: axis-aligned unit-cube stacks (support/connectivity rules,
//!   rotation, projection, count bounds, splitting, settling)
//! - [`patterns`]: 2D pattern grids, the 11 cube nets and hinge folding
//! - [`solids`]: composite solids and planar cross-sections
//! - [`sims`]: replayable simulators (paper folding, arrows, blocks)
//! - [`render`]: deterministic vector documents, digests and a rasterizer

pub mod patterns;
pub mod render;
pub mod rng;
pub mod sims;
pub mod solids;
pub mod voxel;
