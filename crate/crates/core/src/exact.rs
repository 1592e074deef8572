//! Exact small-instance oracle: branch-and-bound over all partitions of the
//! grid into at most `p` rectangles (not only guillotine cuts), minimizing
//! the maximum tile weight.
//!
//! Cell coverage is a `u64` bitmask, so grids are limited to 64 cells.
//! Branching always places a rectangle whose top-left corner is the lowest
//! (row-major) uncovered cell; every partition is therefore enumerated
//! exactly once, in a canonical order, which also makes the returned witness
//! deterministic.

use thiserror::Error;

use crate::grid::{BinaryGrid, Rect, Tiling};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("grid has {0} cells; the exact oracle handles at most 64")]
    TooLarge(usize),
    #[error("tile budget must be at least 1")]
    ZeroTiles,
}

struct Search<'g> {
    grid: &'g BinaryGrid,
    rows: usize,
    cols: usize,
    p: usize,
    full: u64,
    best: u64,
    best_tiles: Vec<Rect>,
    stack: Vec<Rect>,
    stop_at: u64,
}

impl Search<'_> {
    fn rect_mask(&self, rect: Rect) -> u64 {
        let mut mask = 0u64;
        for r in rect.r0..rect.r1 {
            let row_bits = ((1u64 << rect.cols()) - 1) << (r * self.cols + rect.c0);
            mask |= row_bits;
        }
        mask
    }

    fn recurse(&mut self, covered: u64, tiles_used: usize, current_max: u64) {
        if self.best <= self.stop_at {
            return;
        }
        if covered == self.full {
            if current_max < self.best {
                self.best = current_max;
                self.best_tiles = self.stack.clone();
            }
            return;
        }
        if tiles_used == self.p {
            return;
        }
        let first = covered.trailing_ones() as usize;
        let (r0, c0) = (first / self.cols, first % self.cols);
        for r1 in r0 + 1..=self.rows {
            for c1 in c0 + 1..=self.cols {
                let rect = Rect::new(r0, r1, c0, c1);
                let mask = self.rect_mask(rect);
                if mask & covered != 0 {
                    break; // wider rectangles with this corner collide too
                }
                let w = self.grid.rect_weight(rect);
                let new_max = current_max.max(w);
                if new_max >= self.best {
                    continue;
                }
                self.stack.push(rect);
                self.recurse(covered | mask, tiles_used + 1, new_max);
                self.stack.pop();
            }
        }
    }
}

/// Minimum over all partitions of the grid into at most `p` rectangles of
/// the maximum tile weight, together with a witness tiling that attains it.
pub fn exact_min_max(grid: &BinaryGrid, p: usize) -> Result<(u64, Tiling), ExactError> {
    if p == 0 {
        return Err(ExactError::ZeroTiles);
    }
    let cells = grid.n_rows() * grid.n_cols();
    if cells > 64 {
        return Err(ExactError::TooLarge(cells));
    }
    let full = if cells == 64 {
        u64::MAX
    } else {
        (1u64 << cells) - 1
    };
    let mut search = Search {
        grid,
        rows: grid.n_rows(),
        cols: grid.n_cols(),
        p,
        full,
        best: u64::MAX,
        best_tiles: Vec::new(),
        stack: Vec::with_capacity(p),
        // The optimum can never beat ceil(w / p); stop as soon as a tiling
        // attains it.
        stop_at: grid.weight().div_ceil(p as u64),
    };
    search.recurse(0, 0, 0);
    debug_assert!(!search.best_tiles.is_empty());
    let tiling = Tiling::new(grid, search.best_tiles);
    debug_assert_eq!(tiling.max_weight(), search.best);
    Ok((search.best, tiling))
}
