//! Boundary/shadow sequences and the 1-D strip partition test they depend on.
//!
//! A *boundary* is a column (or, on the transposed grid, a row) where a
//! running region first exceeds the weight threshold or stops being
//! partitionable into its allotted number of strips. Each boundary has a
//! *type* (how many strips the region it closes is accounted for) and a
//! *shadow* (the boundary column itself, or its successor when the region up
//! to and including the boundary is itself partitionable). The tiler turns a
//! boundary sequence into a tiling with at most `T + 1` tiles, where `T` is
//! the sum of the boundary types.
//!
//! All weight comparisons are exact rational comparisons via integer
//! cross-multiplication; no floating point is involved anywhere.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::grid::{BinaryGrid, Rect};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("threshold is zero (weight-zero input should be handled by the caller)")]
    ZeroThreshold,
    #[error("bad column range {0}..{1}")]
    BadRange(usize, usize),
    #[error("strip over columns {0}..{1} cannot be partitioned into {2} pieces")]
    Infeasible(usize, usize, usize),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// An exact non-negative rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Ratio {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Ratio {
        Ratio { num: 0, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The exact rational tile-weight cap `alpha * L`, together with the pieces
/// it was assembled from (`L` and `beta`).
///
/// An integer tile weight `w` is within the threshold iff `w * den <= num`;
/// the comparison is exact and never rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    num: u64,
    den: u64,
    lower_bound: u64,
    beta: Ratio,
}

impl Threshold {
    /// `(3/2 + beta) * l`, in lowest terms.
    pub fn for_rtile(l: u64, beta: Ratio) -> Threshold {
        // (3/2 + bn/bd) * l = (3*bd + 2*bn) * l / (2*bd)
        let num = (3 * beta.den as u128 + 2 * beta.num as u128) * l as u128;
        let den = 2 * beta.den as u128;
        Threshold::reduce(num, den, l, beta)
    }

    /// `((2d - 1)/d + beta) * l`, the d-dimensional cap.
    pub fn for_rtile_d(d: u32, l: u64, beta: Ratio) -> Threshold {
        assert!(d >= 1);
        let d = d as u128;
        let num = ((2 * d - 1) * beta.den as u128 + d * beta.num as u128) * l as u128;
        let den = d * beta.den as u128;
        Threshold::reduce(num, den, l, beta)
    }

    /// A bare rational cap, for direct use in tests and the dual solver.
    pub fn from_ratio(num: u64, den: u64) -> Threshold {
        Threshold::reduce(num as u128, den as u128, 0, Ratio::zero())
    }

    fn reduce(num: u128, den: u128, lower_bound: u64, beta: Ratio) -> Threshold {
        assert!(den > 0);
        let mut a = num;
        let mut b = den;
        while b != 0 {
            (a, b) = (b, a % b);
        }
        let g = a.max(1);
        let num = u64::try_from(num / g).expect("threshold numerator overflow");
        let den = u64::try_from(den / g).expect("threshold denominator overflow");
        Threshold {
            num,
            den,
            lower_bound,
            beta,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn lower_bound(&self) -> u64 {
        self.lower_bound
    }

    pub fn beta(&self) -> Ratio {
        self.beta
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `weight <= self`, exactly.
    pub fn allows(&self, weight: u64) -> bool {
        (weight as u128) * (self.den as u128) <= self.num as u128
    }

    /// `weight > self`, exactly.
    pub fn exceeded_by(&self, weight: u64) -> bool {
        !self.allows(weight)
    }

    /// `floor(weight / self)`, exact.
    pub fn floor_div(&self, weight: u64) -> u64 {
        assert!(self.num > 0);
        ((weight as u128 * self.den as u128) / self.num as u128) as u64
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Vertical,
    Horizontal,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Vertical => write!(f, "vertical"),
            Axis::Horizontal => write!(f, "horizontal"),
        }
    }
}

/// One boundary column: its 1-based index, its shadow, and its type.
///
/// Indices here follow the 1-based inclusive convention of the sequence
/// recurrence; conversion to 0-based half-open rectangles happens when tiles
/// are emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Boundary {
    /// 1-based column index of the boundary.
    pub index: usize,
    /// Either `index` (attached) or `index + 1` (detached).
    pub shadow: usize,
    /// `floor(column_weight / threshold) + 1`.
    pub btype: u64,
}

impl Boundary {
    pub fn is_attached(&self) -> bool {
        self.shadow == self.index
    }
}

/// The per-axis boundary sequence with `T = sum of types`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySequence {
    pub axis: Axis,
    pub boundaries: Vec<Boundary>,
    pub type_sum: u64,
}

impl BoundarySequence {
    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    pub fn detached_count(&self) -> usize {
        self.boundaries.iter().filter(|b| !b.is_attached()).count()
    }
}

/// Row-weight accessor for a column strip, O(1) per row via prefix sums.
fn strip_row_weight(grid: &BinaryGrid, cols: &Range<usize>, row: usize) -> u64 {
    grid.rect_weight(Rect::new(row, row + 1, cols.start, cols.end))
}

fn check_range(grid: &BinaryGrid, cols: &Range<usize>) -> Result<(), BoundaryError> {
    if cols.start >= cols.end || cols.end > grid.n_cols() {
        return Err(BoundaryError::BadRange(cols.start, cols.end));
    }
    Ok(())
}

/// Number of pieces a greedy sweep needs to cut the strip's rows into runs of
/// weight at most `threshold`; `None` if some single row already exceeds it.
///
/// The greedy sweep is exact for this 1-D problem: cutting as late as
/// possible never uses more pieces than any other cut placement.
fn greedy_piece_count(
    grid: &BinaryGrid,
    cols: &Range<usize>,
    threshold: &Threshold,
) -> Option<usize> {
    let mut pieces = 1usize;
    let mut acc = 0u64;
    for row in 0..grid.n_rows() {
        let w = strip_row_weight(grid, cols, row);
        if threshold.exceeded_by(w) {
            return None;
        }
        if threshold.allows(acc + w) {
            acc += w;
        } else {
            pieces += 1;
            acc = w;
        }
    }
    Some(pieces)
}

/// True iff the strip (all rows, the given columns) can be cut by horizontal
/// lines into at most `k` pieces, each of weight within the threshold.
pub fn strip_partition_feasible(
    grid: &BinaryGrid,
    cols: Range<usize>,
    k: usize,
    threshold: &Threshold,
) -> Result<bool, BoundaryError> {
    check_range(grid, &cols)?;
    assert!(k >= 1);
    Ok(matches!(greedy_piece_count(grid, &cols, threshold), Some(p) if p <= k))
}

/// Cuts the strip into contiguous row ranges of weight within the threshold.
///
/// Greedy cuts first; if the greedy pass used fewer than `k` pieces, trailing
/// pieces of at least two rows are split further so that exactly `k` ranges
/// come back (capped at one range per row). Every returned range has at least
/// one row.
pub fn strip_partition(
    grid: &BinaryGrid,
    cols: Range<usize>,
    k: usize,
    threshold: &Threshold,
) -> Result<Vec<Range<usize>>, BoundaryError> {
    check_range(grid, &cols)?;
    assert!(k >= 1);
    let mut ranges: Vec<Range<usize>> = Vec::new();
    let mut start = 0usize;
    let mut acc = 0u64;
    for row in 0..grid.n_rows() {
        let w = strip_row_weight(grid, &cols, row);
        if threshold.exceeded_by(w) {
            return Err(BoundaryError::Infeasible(cols.start, cols.end, k));
        }
        if threshold.allows(acc + w) {
            acc += w;
        } else {
            ranges.push(start..row);
            start = row;
            acc = w;
        }
    }
    ranges.push(start..grid.n_rows());
    if ranges.len() > k {
        return Err(BoundaryError::Infeasible(cols.start, cols.end, k));
    }
    // Pad toward exactly k pieces by peeling single rows off the last
    // splittable range; the peeled rows keep weights within the threshold.
    let target = k.min(grid.n_rows());
    while ranges.len() < target {
        let idx = ranges
            .iter()
            .rposition(|r| r.end - r.start >= 2)
            .expect("target is capped at the row count");
        let r = ranges[idx].clone();
        ranges[idx] = r.start..r.end - 1;
        ranges.insert(idx + 1, r.end - 1..r.end);
    }
    Ok(ranges)
}

/// Type of a boundary column: `floor(weight / threshold) + 1`.
pub fn boundary_type(column_weight: u64, threshold: &Threshold) -> Result<u64, BoundaryError> {
    if threshold.is_zero() {
        return Err(BoundaryError::ZeroThreshold);
    }
    Ok(threshold.floor_div(column_weight) + 1)
}

/// Computes the boundary/shadow sequence of the grid along one axis.
///
/// The recurrence walks left to right. A sentinel "0th" boundary at column 0
/// with a detached shadow seeds the walk, so the first boundary needs no
/// special casing: it is the first column where the running prefix weight
/// exceeds the threshold. After an attached boundary the next boundary is
/// found by extending the strip column by column while it stays partitionable
/// into the boundary's type count (infeasibility is monotone in the column
/// range, so the incremental scan is exact); after a detached shadow the next
/// boundary is again found by running prefix weight.
///
/// The horizontal sequence is the vertical sequence of the transposed grid.
pub fn compute_boundaries(
    grid: &BinaryGrid,
    axis: Axis,
    threshold: &Threshold,
) -> Result<BoundarySequence, BoundaryError> {
    match axis {
        Axis::Vertical => compute_vertical(grid, threshold, Axis::Vertical),
        Axis::Horizontal => compute_vertical(&grid.transpose(), threshold, Axis::Horizontal),
    }
}

/// As [`compute_boundaries`], on a grid already oriented so that boundaries
/// are columns. Used by the solver to avoid re-transposing.
pub(crate) fn compute_vertical(
    grid: &BinaryGrid,
    threshold: &Threshold,
    axis: Axis,
) -> Result<BoundarySequence, BoundaryError> {
    if threshold.is_zero() {
        return Err(BoundaryError::ZeroThreshold);
    }
    let n = grid.n_cols();
    let mut boundaries: Vec<Boundary> = Vec::new();

    // Sentinel: boundary index 0 with shadow 1 (detached), so the first real
    // boundary is located by the running-weight rule.
    let mut prev_index = 0usize; // 1-based, 0 = sentinel
    let mut prev_attached = false;
    let mut prev_type = 0u64;

    loop {
        let next = if prev_attached {
            // Extend the strip starting at the previous boundary while it
            // stays partitionable into `prev_type` pieces. The first column
            // whose inclusion breaks feasibility is the next boundary. If
            // even the single boundary column is not partitionable, no
            // column satisfies the recurrence and the sequence ends here;
            // the tiler surfaces the resulting infeasibility loudly.
            let base = prev_index - 1..prev_index;
            if !strip_partition_feasible(grid, base, prev_type as usize, threshold)? {
                None
            } else {
                let mut found = None;
                for c in prev_index + 1..=n {
                    let strip = prev_index - 1..c;
                    if !strip_partition_feasible(grid, strip, prev_type as usize, threshold)? {
                        found = Some(c);
                        break;
                    }
                }
                found
            }
        } else {
            // Running prefix weight from the column after the shadow.
            let start = prev_index; // 0-based column index of (prev_index + 1) in 1-based terms
            let mut found = None;
            for c in start + 1..=n {
                let w = grid.rect_weight(Rect::new(0, grid.n_rows(), start, c));
                if threshold.exceeded_by(w) {
                    found = Some(c);
                    break;
                }
            }
            found
        };

        let Some(index) = next else {
            break;
        };

        let column_weight = grid.column_weight(index - 1);
        let btype = boundary_type(column_weight, threshold)?;
        // Shadow rule: detach iff the subarray from the previous shadow
        // through this boundary is partitionable into `btype` pieces.
        let shadow_start = if prev_attached {
            prev_index
        } else {
            prev_index + 1
        };
        let strip = shadow_start - 1..index;
        let detachable = strip_partition_feasible(grid, strip, btype as usize, threshold)?;
        let shadow = if detachable { index + 1 } else { index };
        boundaries.push(Boundary {
            index,
            shadow,
            btype,
        });

        prev_index = index;
        prev_attached = !detachable;
        prev_type = btype;
        if prev_index >= n && !prev_attached {
            break;
        }
    }

    let type_sum = boundaries.iter().map(|b| b.btype).sum();
    Ok(BoundarySequence {
        axis,
        boundaries,
        type_sum,
    })
}
