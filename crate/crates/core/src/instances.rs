//! Instance generators: the diagonal cross family used to probe how tight
//! the solver's weight cap is, and seeded random grids for regression suites.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::grid::BinaryGrid;
use crate::multid::DGrid;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("cross arm budget must be a positive even integer, got {0}")]
    OddL(u64),
    #[error("need at least one cross")]
    ZeroCrosses,
    #[error("density {0}/{1} is not within [0, 1]")]
    BadDensity(u64, u64),
}

fn check_cross_spec(arm: u64, crosses: usize) -> Result<(), InstanceError> {
    if arm == 0 || arm % 2 != 0 {
        return Err(InstanceError::OddL(arm));
    }
    if crosses == 0 {
        return Err(InstanceError::ZeroCrosses);
    }
    Ok(())
}

/// Paints one cross of `2*arm + 1` ones centered at 1-based `(center, center)`:
/// a full row and a full column through the center of an `(arm+1) x (arm+1)`
/// block, i.e. four arms of `arm/2` ones around the center cell.
fn paint_cross(cells: &mut [u8], side: usize, center: usize, arm: usize) {
    let c = center - 1; // to 0-based
    let half = arm / 2;
    for k in c - half..=c + half {
        cells[c * side + k] = 1;
        cells[k * side + c] = 1;
    }
}

/// A square grid of side `crosses * (arm + 1)` holding `crosses` disjoint
/// crosses of `2*arm + 1` ones each, centered on the diagonal at
/// `(j*(arm+1) - arm/2, j*(arm+1) - arm/2)` for `j = 1..=crosses` (1-based).
pub fn cross_array(arm: u64, crosses: usize) -> Result<BinaryGrid, InstanceError> {
    check_cross_spec(arm, crosses)?;
    let arm = arm as usize;
    let side = crosses * (arm + 1);
    let mut cells = vec![0u8; side * side];
    for j in 1..=crosses {
        let center = j * (arm + 1) - arm / 2;
        paint_cross(&mut cells, side, center, arm);
    }
    Ok(BinaryGrid::from_cells(side, side, cells))
}

/// The odd-budget variant: the `crosses + 1` cross array truncated to side
/// `crosses*(arm+1) + arm/2 + 1`, which keeps the last cross's center plus
/// its upper and left arms (a half-cross of `arm + 1` ones in the corner).
/// Total weight: `crosses*(2*arm + 1) + arm + 1`.
pub fn cross_array_odd(arm: u64, crosses: usize) -> Result<BinaryGrid, InstanceError> {
    check_cross_spec(arm, crosses)?;
    let full = cross_array(arm, crosses + 1)?;
    let side = crosses * (arm as usize + 1) + arm as usize / 2 + 1;
    let mut cells = vec![0u8; side * side];
    for r in 0..side {
        for c in 0..side {
            cells[r * side + c] = full.cell(r, c);
        }
    }
    Ok(BinaryGrid::from_cells(side, side, cells))
}

/// Seeded random grid: each cell is independently one with probability
/// `density_num / density_den`, compared exactly against a 64-bit draw.
///
/// The generator is pinned to ChaCha8 seeded with `seed`, consuming one
/// `u64` per cell in row-major order, so a given `(dims, density, seed)`
/// triple always denotes the same grid.
pub fn random_grid(
    n_rows: usize,
    n_cols: usize,
    density_num: u64,
    density_den: u64,
    seed: u64,
) -> Result<BinaryGrid, InstanceError> {
    if density_den == 0 || density_num > density_den {
        return Err(InstanceError::BadDensity(density_num, density_den));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = (0..n_rows * n_cols)
        .map(|_| {
            let draw = rng.next_u64();
            // draw / 2^64 < num / den  <=>  draw * den < num * 2^64
            let lhs = draw as u128 * density_den as u128;
            let rhs = (density_num as u128) << 64;
            u8::from(lhs < rhs)
        })
        .collect();
    Ok(BinaryGrid::from_cells(n_rows, n_cols, cells))
}

/// Seeded random d-dimensional grid; same ChaCha8 scheme as [`random_grid`],
/// drawing cells in flat order (last axis fastest).
pub fn random_dgrid(
    dims: &[usize],
    density_num: u64,
    density_den: u64,
    seed: u64,
) -> Result<DGrid, InstanceError> {
    if density_den == 0 || density_num > density_den {
        return Err(InstanceError::BadDensity(density_num, density_den));
    }
    let total: usize = dims.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = (0..total)
        .map(|_| {
            let draw = rng.next_u64();
            let lhs = draw as u128 * density_den as u128;
            let rhs = (density_num as u128) << 64;
            u8::from(lhs < rhs)
        })
        .collect();
    Ok(DGrid::from_cells(dims.to_vec(), cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_min_max;

    #[test]
    fn single_cross() {
        let g = cross_array(4, 1).unwrap();
        assert_eq!((g.n_rows(), g.n_cols()), (5, 5));
        assert_eq!(g.weight(), 9);
        // Row 3 and column 3 (1-based) carry the ones.
        for k in 0..5 {
            assert_eq!(g.cell(2, k), 1);
            assert_eq!(g.cell(k, 2), 1);
        }
        assert_eq!(g.cell(0, 0), 0);
    }

    #[test]
    fn two_crosses() {
        let g = cross_array(4, 2).unwrap();
        assert_eq!((g.n_rows(), g.n_cols()), (10, 10));
        assert_eq!(g.weight(), 18);
        // Centers at (3,3) and (8,8), 1-based.
        assert_eq!(g.cell(2, 2), 1);
        assert_eq!(g.cell(7, 7), 1);
        assert_eq!(g.cell(2, 7), 0);
    }

    #[test]
    fn smallest_cross_is_a_plus_sign() {
        let g = cross_array(2, 1).unwrap();
        assert_eq!((g.n_rows(), g.n_cols()), (3, 3));
        assert_eq!(g.weight(), 5);
        assert_eq!(g.cell(1, 1), 1);
        assert_eq!(g.cell(0, 0), 0);
    }

    #[test]
    fn crosses_are_disjoint_by_raster() {
        // Painting marks cells idempotently; counting ones per cross region
        // confirms no overlap: total weight is exactly crosses * (2*arm + 1).
        for crosses in 1..=3 {
            for arm in [2u64, 4, 6] {
                let g = cross_array(arm, crosses).unwrap();
                assert_eq!(g.weight(), crosses as u64 * (2 * arm + 1));
            }
        }
    }

    #[test]
    fn odd_variant_truncates_a_half_cross() {
        let g = cross_array_odd(4, 1).unwrap();
        assert_eq!((g.n_rows(), g.n_cols()), (8, 8));
        assert_eq!(g.weight(), 9 + 5); // one full cross + center and two arms

        let g = cross_array_odd(2, 1).unwrap();
        assert_eq!((g.n_rows(), g.n_cols()), (5, 5));
        assert_eq!(g.weight(), 5 + 3);
    }

    #[test]
    fn odd_variant_keeps_no_full_extra_cross() {
        // The retained corner piece is exactly arm+1 ones: the truncated
        // cross's center sits on the last kept index.
        for (arm, crosses) in [(2u64, 1usize), (2, 2), (4, 1)] {
            let g = cross_array_odd(arm, crosses).unwrap();
            let base = cross_array(arm, crosses).unwrap();
            assert_eq!(g.weight() - base.weight(), arm + 1);
        }
    }

    #[test]
    fn bad_specs_rejected() {
        assert_eq!(cross_array(3, 1).unwrap_err(), InstanceError::OddL(3));
        assert_eq!(cross_array(0, 1).unwrap_err(), InstanceError::OddL(0));
        assert_eq!(cross_array(4, 0).unwrap_err(), InstanceError::ZeroCrosses);
        assert_eq!(
            random_grid(2, 2, 3, 2, 0).unwrap_err(),
            InstanceError::BadDensity(3, 2)
        );
    }

    #[test]
    fn even_budget_tilings_hit_the_cross_bound() {
        // Any tiling into 2k tiles keeps a tile of weight >= 3*arm/2 + 1.
        for (arm, crosses) in [(2u64, 1usize), (2, 2), (4, 1)] {
            let g = cross_array(arm, crosses).unwrap();
            let p = 2 * crosses;
            let (opt, _) = exact_min_max(&g, p).unwrap();
            assert!(
                opt >= 3 * arm / 2 + 1,
                "arm={arm} crosses={crosses}: optimum {opt}"
            );
        }
    }

    #[test]
    fn odd_budget_tilings_hit_the_cross_bound() {
        // The truncated family at p = 2k + 1 still forces a tile of weight
        // at least 3*arm/2.
        for arm in [2u64, 4] {
            let g = cross_array_odd(arm, 1).unwrap();
            let (opt, _) = exact_min_max(&g, 3).unwrap();
            assert!(opt >= 3 * arm / 2, "arm={arm}: optimum {opt}");
        }
    }

    #[test]
    fn random_grid_density_extremes() {
        let zeros = random_grid(5, 7, 0, 1, 123).unwrap();
        assert_eq!(zeros.weight(), 0);
        let ones = random_grid(5, 7, 1, 1, 123).unwrap();
        assert_eq!(ones.weight(), 35);
    }

    #[test]
    fn random_grid_is_reproducible() {
        let a = random_grid(8, 8, 1, 2, 42).unwrap();
        let b = random_grid(8, 8, 1, 2, 42).unwrap();
        assert_eq!(a, b);
        let c = random_grid(8, 8, 1, 2, 43).unwrap();
        assert_ne!(a, c);
        // Pinned snapshot for the documented generator.
        assert_eq!(a.weight(), 37);
    }

    #[test]
    fn random_grid_density_is_calibrated() {
        // 10^4 cells at density 3/10: expect 3000 ones within 3 sigma
        // (sigma = sqrt(n * p * (1-p)) ~ 45.8).
        let g = random_grid(100, 100, 3, 10, 7).unwrap();
        let w = g.weight() as f64;
        assert!((w - 3000.0).abs() < 3.0 * 45.83, "weight {w}");
    }
}
