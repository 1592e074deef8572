//! Binary grids with 2-D prefix sums, rectangles, tilings, and the tiling verifier.
//!
//! `BinaryGrid` is immutable after construction and stores an
//! `(n_rows+1) x (n_cols+1)` cumulative-sum table, so the weight of any
//! axis-aligned rectangle is a four-term O(1) lookup. All rectangle
//! coordinates in this crate are 0-based half-open ranges; the CLI layer
//! converts to 1-based inclusive coordinates for external formats.

use thiserror::Error;

use crate::boundary::Threshold;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("empty input: no grid rows")]
    EmptyInput,
    #[error("ragged rows: line {line} has length {found}, expected {expected}")]
    RaggedRows {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("bad character {ch:?} at line {line}, column {col} (expected '0' or '1')")]
    BadCharacter { line: usize, col: usize, ch: char },
    #[error("rectangle {rect:?} out of bounds for {rows}x{cols} grid")]
    OutOfBounds { rect: Rect, rows: usize, cols: usize },
}

/// An axis-aligned rectangle of cells: rows `[r0, r1)` x columns `[c0, c1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rect {
    pub r0: usize,
    pub r1: usize,
    pub c0: usize,
    pub c1: usize,
}

impl Rect {
    pub fn new(r0: usize, r1: usize, c0: usize, c1: usize) -> Rect {
        debug_assert!(r0 < r1 && c0 < c1, "degenerate rectangle");
        Rect { r0, r1, c0, c1 }
    }

    pub fn rows(&self) -> usize {
        self.r1 - self.r0
    }

    pub fn cols(&self) -> usize {
        self.c1 - self.c0
    }

    pub fn area(&self) -> usize {
        self.rows() * self.cols()
    }

    /// The same rectangle on the transposed grid.
    pub fn transposed(&self) -> Rect {
        Rect {
            r0: self.c0,
            r1: self.c1,
            c0: self.r0,
            c1: self.r1,
        }
    }

    fn in_bounds(&self, rows: usize, cols: usize) -> bool {
        self.r0 < self.r1 && self.c0 < self.c1 && self.r1 <= rows && self.c1 <= cols
    }
}

/// An immutable 0/1 matrix with a prefix-sum table for O(1) rectangle weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryGrid {
    n_rows: usize,
    n_cols: usize,
    cells: Vec<u8>,
    prefix: Vec<u64>,
}

impl BinaryGrid {
    /// Builds a grid from text lines over `{'0','1'}`, one line per row.
    pub fn from_text<S: AsRef<str>>(lines: &[S]) -> Result<BinaryGrid, GridError> {
        if lines.is_empty() {
            return Err(GridError::EmptyInput);
        }
        let n_cols = lines[0].as_ref().len();
        if n_cols == 0 {
            return Err(GridError::EmptyInput);
        }
        let mut cells = Vec::with_capacity(lines.len() * n_cols);
        for (line_no, line) in lines.iter().enumerate() {
            let line = line.as_ref();
            if line.len() != n_cols {
                return Err(GridError::RaggedRows {
                    line: line_no + 1,
                    found: line.len(),
                    expected: n_cols,
                });
            }
            for (col_no, ch) in line.chars().enumerate() {
                match ch {
                    '0' => cells.push(0),
                    '1' => cells.push(1),
                    other => {
                        return Err(GridError::BadCharacter {
                            line: line_no + 1,
                            col: col_no + 1,
                            ch: other,
                        })
                    }
                }
            }
        }
        Ok(BinaryGrid::from_cells(lines.len(), n_cols, cells))
    }

    /// Builds a grid from a row-major cell buffer (each entry 0 or 1).
    pub fn from_cells(n_rows: usize, n_cols: usize, cells: Vec<u8>) -> BinaryGrid {
        assert!(n_rows > 0 && n_cols > 0, "grid must be non-empty");
        assert_eq!(cells.len(), n_rows * n_cols);
        debug_assert!(cells.iter().all(|&c| c <= 1));
        let mut prefix = vec![0u64; (n_rows + 1) * (n_cols + 1)];
        let stride = n_cols + 1;
        for r in 0..n_rows {
            let mut row_sum = 0u64;
            for c in 0..n_cols {
                row_sum += u64::from(cells[r * n_cols + c]);
                prefix[(r + 1) * stride + c + 1] = prefix[r * stride + c + 1] + row_sum;
            }
        }
        BinaryGrid {
            n_rows,
            n_cols,
            cells,
            prefix,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn cell(&self, r: usize, c: usize) -> u8 {
        self.cells[r * self.n_cols + c]
    }

    /// Total number of ones.
    pub fn weight(&self) -> u64 {
        self.prefix[(self.n_rows + 1) * (self.n_cols + 1) - 1]
    }

    /// Prefix table entry: number of ones in rows `< r`, columns `< c`.
    pub fn prefix_at(&self, r: usize, c: usize) -> u64 {
        self.prefix[r * (self.n_cols + 1) + c]
    }

    /// Weight of a rectangle, in O(1). Panics if the rectangle is out of bounds.
    pub fn rect_weight(&self, rect: Rect) -> u64 {
        assert!(
            rect.in_bounds(self.n_rows, self.n_cols),
            "rectangle {rect:?} out of bounds for {}x{} grid",
            self.n_rows,
            self.n_cols,
        );
        self.prefix_at(rect.r1, rect.c1) + self.prefix_at(rect.r0, rect.c0)
            - self.prefix_at(rect.r0, rect.c1)
            - self.prefix_at(rect.r1, rect.c0)
    }

    /// Bounds-checked variant of [`rect_weight`](Self::rect_weight).
    pub fn checked_rect_weight(&self, rect: Rect) -> Result<u64, GridError> {
        if !rect.in_bounds(self.n_rows, self.n_cols) {
            return Err(GridError::OutOfBounds {
                rect,
                rows: self.n_rows,
                cols: self.n_cols,
            });
        }
        Ok(self.rect_weight(rect))
    }

    /// Weight of a single column slice over all rows.
    pub fn column_weight(&self, c: usize) -> u64 {
        self.rect_weight(Rect::new(0, self.n_rows, c, c + 1))
    }

    pub fn full_rect(&self) -> Rect {
        Rect::new(0, self.n_rows, 0, self.n_cols)
    }

    pub fn transpose(&self) -> BinaryGrid {
        let mut cells = vec![0u8; self.cells.len()];
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                cells[c * self.n_rows + r] = self.cells[r * self.n_cols + c];
            }
        }
        BinaryGrid::from_cells(self.n_cols, self.n_rows, cells)
    }

    /// Serializes back to the text format accepted by [`from_text`](Self::from_text).
    pub fn to_text_lines(&self) -> Vec<String> {
        (0..self.n_rows)
            .map(|r| {
                (0..self.n_cols)
                    .map(|c| if self.cell(r, c) == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

/// A claimed partition of a grid into rectangles, with the cached max tile weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    tiles: Vec<Rect>,
    max_weight: u64,
}

impl Tiling {
    /// Records the tiles and caches the maximum tile weight. The claim that
    /// the tiles actually partition the grid is checked by [`verify_tiling`],
    /// never assumed.
    pub fn new(grid: &BinaryGrid, tiles: Vec<Rect>) -> Tiling {
        assert!(!tiles.is_empty(), "a tiling needs at least one tile");
        let max_weight = tiles.iter().map(|&t| grid.rect_weight(t)).max().unwrap();
        Tiling { tiles, max_weight }
    }

    pub fn tiles(&self) -> &[Rect] {
        &self.tiles
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    /// The same tiling on the transposed grid.
    pub fn transposed(&self) -> Tiling {
        Tiling {
            tiles: self.tiles.iter().map(|t| t.transposed()).collect(),
            max_weight: self.max_weight,
        }
    }
}

/// Outcome of checking a tiling against a grid, a tile budget, and a weight
/// threshold. Failures are report fields, not errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerificationReport {
    /// No cell is covered by two tiles.
    pub disjoint: bool,
    /// No cell is left uncovered.
    pub covering: bool,
    /// At most `p` tiles are used.
    pub count_ok: bool,
    /// Every tile weight is within the threshold (compared exactly as rationals).
    pub weight_ok: bool,
    pub max_weight: u64,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.disjoint && self.covering && self.count_ok && self.weight_ok
    }
}

/// Checks disjointness and coverage with a coverage-count raster over all
/// cells (O(n^2)), not by pairwise intersection alone.
pub fn verify_tiling(
    grid: &BinaryGrid,
    tiling: &Tiling,
    p: usize,
    threshold: &Threshold,
) -> VerificationReport {
    let mut coverage = vec![0u32; grid.n_rows() * grid.n_cols()];
    let mut max_weight = 0u64;
    let mut weight_ok = true;
    for &tile in tiling.tiles() {
        for r in tile.r0..tile.r1 {
            for c in tile.c0..tile.c1 {
                coverage[r * grid.n_cols() + c] += 1;
            }
        }
        let w = grid.rect_weight(tile);
        max_weight = max_weight.max(w);
        if !threshold.allows(w) {
            weight_ok = false;
        }
    }
    VerificationReport {
        disjoint: coverage.iter().all(|&c| c <= 1),
        covering: coverage.iter().all(|&c| c >= 1),
        count_ok: tiling.tile_count() <= p,
        weight_ok,
        max_weight,
    }
}
