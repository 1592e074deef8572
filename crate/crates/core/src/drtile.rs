//! The dual problem: cover the grid with the minimum number of tiles, each
//! of weight at most a cap `W`, by scanning tile budgets through the min-max
//! solver.
//!
//! For each candidate budget `p` (starting at the counting lower bound
//! `ceil(w/W)`) the solver runs with the cap adjusted so its own threshold
//! never exceeds `W`: `beta_p = max(0, W/L_p - 3/2)`, i.e. threshold
//! `max(3*L_p/2, W)`. The first candidate whose tiling fits both the cap and
//! the budget wins. A recursive balanced-split fallback guarantees
//! termination; it is expected never to fire and a flag records if it did.

use thiserror::Error;

use crate::boundary::Ratio;
use crate::grid::{BinaryGrid, Rect, Tiling};
use crate::tiler::{solve_rtile, SolveConfig};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DrtileError {
    #[error("weight cap must be at least 1")]
    ZeroCap,
}

#[derive(Debug, Clone)]
pub struct DrtileReport {
    pub tiling: Tiling,
    pub cap: u64,
    /// `ceil(w(A) / W)`: no tiling can use fewer tiles.
    pub count_lower_bound: u64,
    pub achieved_count: usize,
    /// `(3/2 + beta) * W / (W + 3/2 + beta)` at the accepted budget's beta;
    /// the analytical approximation factor, reported for comparison.
    pub gamma_bound: Ratio,
    pub p_used: usize,
    /// True if the balanced-split fallback produced the tiling.
    pub fallback_used: bool,
}

/// `beta` such that `(3/2 + beta) * l` equals `max(3l/2, cap)`.
fn beta_for_cap(cap: u64, l: u64) -> Ratio {
    // cap / l - 3/2 = (2*cap - 3*l) / (2*l), clamped at zero.
    if 2 * cap <= 3 * l {
        Ratio::zero()
    } else {
        Ratio::new(2 * cap - 3 * l, 2 * l)
    }
}

/// `(3/2 + beta) * W / (W + 3/2 + beta)` as an exact rational.
fn gamma_bound(cap: u64, beta: Ratio) -> Ratio {
    // alpha = (3*bd + 2*bn) / (2*bd); gamma = alpha*W / (W + alpha).
    let alpha_num = 3 * beta.den() as u128 + 2 * beta.num() as u128;
    let alpha_den = 2 * beta.den() as u128;
    let num = alpha_num * cap as u128;
    let den = alpha_den * cap as u128 + alpha_num;
    let mut a = num;
    let mut b = den;
    while b != 0 {
        (a, b) = (b, a % b);
    }
    let g = a.max(1);
    Ratio::new((num / g) as u64, (den / g) as u64)
}

/// Balanced guillotine splitting: cut any over-cap tile along the axis and
/// position that most evenly divides its weight. Terminates because single
/// cells weigh at most 1 <= W.
fn guillotine_split(grid: &BinaryGrid, rect: Rect, cap: u64, out: &mut Vec<Rect>) {
    if grid.rect_weight(rect) <= cap {
        out.push(rect);
        return;
    }
    let total = grid.rect_weight(rect);
    let mut best: Option<(u64, Rect, Rect)> = None;
    let mut consider = |a: Rect, b: Rect| {
        let wa = grid.rect_weight(a);
        let imbalance = wa.abs_diff(total - wa);
        if best.as_ref().is_none_or(|(d, _, _)| imbalance < *d) {
            best = Some((imbalance, a, b));
        }
    };
    for r in rect.r0 + 1..rect.r1 {
        consider(
            Rect::new(rect.r0, r, rect.c0, rect.c1),
            Rect::new(r, rect.r1, rect.c0, rect.c1),
        );
    }
    for c in rect.c0 + 1..rect.c1 {
        consider(
            Rect::new(rect.r0, rect.r1, rect.c0, c),
            Rect::new(rect.r0, rect.r1, c, rect.c1),
        );
    }
    let (_, a, b) = best.expect("an over-cap rectangle spans more than one cell");
    guillotine_split(grid, a, cap, out);
    guillotine_split(grid, b, cap, out);
}

/// Covers the grid with tiles of weight at most `cap`, minimizing the count
/// through a budget scan.
pub fn solve_drtile(grid: &BinaryGrid, cap: u64) -> Result<DrtileReport, DrtileError> {
    if cap == 0 {
        return Err(DrtileError::ZeroCap);
    }
    let weight = grid.weight();
    let count_lower_bound = weight.div_ceil(cap);
    let p_start = count_lower_bound.max(1) as usize;
    let p_max = grid.n_rows() * grid.n_cols();

    for p in p_start..=p_max {
        let l = weight.div_ceil(p as u64).max(1);
        let beta = beta_for_cap(cap, l);
        let Ok(report) = solve_rtile(grid, SolveConfig::explicit_beta(p, beta)) else {
            continue;
        };
        if report.tiling.max_weight() <= cap {
            return Ok(DrtileReport {
                achieved_count: report.tiling.tile_count(),
                tiling: report.tiling,
                cap,
                count_lower_bound,
                gamma_bound: gamma_bound(cap, beta),
                p_used: p,
                fallback_used: false,
            });
        }
    }

    // Unreachable for cap >= 1 (single-cell tiles always fit), but kept as a
    // hard termination guarantee.
    let mut tiles = Vec::new();
    guillotine_split(grid, grid.full_rect(), cap, &mut tiles);
    let tiling = Tiling::new(grid, tiles);
    Ok(DrtileReport {
        achieved_count: tiling.tile_count(),
        tiling,
        cap,
        count_lower_bound,
        gamma_bound: gamma_bound(cap, beta_for_cap(cap, 1)),
        p_used: p_max,
        fallback_used: true,
    })
}
