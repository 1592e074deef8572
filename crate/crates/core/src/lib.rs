//! Min-max rectangle tiling of binary arrays.
//!
//! Given an `n x m` 0/1 array and a tile budget `p`, the solver partitions
//! the array into at most `p` axis-aligned rectangles while keeping every
//! tile's weight (its count of ones) under an exact rational cap
//! `(3/2 + p^2/w) * ceil(w/p)`, where `w` is the total number of ones. The
//! crate also ships:
//!
//! - [`drtile`]: the dual solver (minimize the tile count under a per-tile
//!   weight cap), by scanning budgets through the min-max solver;
//! - [`exact`]: a branch-and-bound oracle that finds the true optimum on
//!   grids of up to 64 cells, used to validate everything else;
//! - [`instances`]: the diagonal cross family that pins the cap's tightness,
//!   plus seeded random grids;
//! - [`multid`]: the d-dimensional generalization with cap
//!   `((2d-1)/d + p^d/w) * ceil(w/p)`.
//!
//! Everything is deterministic and all weight comparisons are exact integer
//! cross-multiplications; no floating point is involved in any decision.

pub mod boundary;
pub mod drtile;
pub mod exact;
pub mod grid;
pub mod instances;
pub mod multid;
pub mod tiler;

pub use boundary::{
    boundary_type, compute_boundaries, strip_partition, strip_partition_feasible, Axis, Boundary,
    BoundaryError, BoundarySequence, Ratio, Threshold,
};
pub use drtile::{solve_drtile, DrtileError, DrtileReport};
pub use exact::{exact_min_max, ExactError};
pub use grid::{verify_tiling, BinaryGrid, GridError, Rect, Tiling, VerificationReport};
pub use instances::{cross_array, cross_array_odd, random_dgrid, random_grid, InstanceError};
pub use multid::{
    compute_dboundaries, slab_partition_feasible, solve_rtile_d, verify_dtiling, DBox, DGrid,
    DGuarantee, DSolveError, DSolveReport, DTiling, DVerificationReport,
};
pub use tiler::{
    lower_bound, solve_rtile, tile_with_boundaries, BetaMode, SolveConfig, SolveError, SolveReport,
};
