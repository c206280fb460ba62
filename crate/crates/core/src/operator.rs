//! Radial Dirichlet Laplacian in grid coordinates, and the interior
//! trimming conventions shared by the ground-state solver and the time
//! integrator.
//!
//! In 1D (coord X) the operator is ∂_xx and both endpoint rows/columns are
//! trimmed.  In 2D radial form with s = r² (coord S) the Laplacian
//! ∂_rr + (1/r)∂_r becomes 4s ∂_ss + 4 ∂_s, which is degenerate at s = 0;
//! only the s = 1 boundary row/column (index 0) is trimmed and the centre
//! node stays in the system.

use std::ops::Range;

use nalgebra::DMatrix;

use crate::cheb::{ChebGrid, Coord};

/// Full (N+1)×(N+1) Laplacian in the grid coordinate.
pub fn laplacian(grid: &ChebGrid) -> DMatrix<f64> {
    match grid.coord {
        Coord::X => grid.d2.clone(),
        Coord::S => {
            let m = grid.n + 1;
            let mut l = DMatrix::zeros(m, m);
            for i in 0..m {
                let s = grid.nodes[i];
                for j in 0..m {
                    l[(i, j)] = 4.0 * s * grid.d2[(i, j)] + 4.0 * grid.d1[(i, j)];
                }
            }
            l
        }
    }
}

/// Index range of the untrimmed (interior) nodes.
pub fn interior_range(grid: &ChebGrid) -> Range<usize> {
    match grid.coord {
        Coord::X => 1..grid.n,
        Coord::S => 1..grid.n + 1,
    }
}

/// Laplacian restricted to the interior rows and columns.
pub fn laplacian_interior(grid: &ChebGrid) -> DMatrix<f64> {
    let full = laplacian(grid);
    let r = interior_range(grid);
    full.view((r.start, r.start), (r.len(), r.len())).into_owned()
}

/// Scatter interior values into a full nodal vector with zeros on the
/// trimmed boundary slots.
pub fn embed_interior<T: Copy + Default>(grid: &ChebGrid, interior: &[T]) -> Vec<T> {
    let r = interior_range(grid);
    debug_assert_eq!(interior.len(), r.len());
    let mut full = vec![T::default(); grid.n + 1];
    for (slot, v) in r.zip(interior.iter()) {
        full[slot] = *v;
    }
    full
}

/// Gather the interior values of a full nodal vector.
pub fn extract_interior<T: Copy>(grid: &ChebGrid, full: &[T]) -> Vec<T> {
    let r = interior_range(grid);
    full[r].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::make_grid;

    #[test]
    fn trimming_conventions() {
        let gx = make_grid(8, Coord::X).unwrap();
        assert_eq!(interior_range(&gx), 1..8);
        let gs = make_grid(8, Coord::S).unwrap();
        assert_eq!(interior_range(&gs), 1..9);

        let interior = vec![1.0; 7];
        let full = embed_interior(&gx, &interior);
        assert_eq!(full[0], 0.0);
        assert_eq!(full[8], 0.0);
        assert_eq!(extract_interior(&gx, &full), interior);
    }

    #[test]
    fn radial_laplacian_on_polynomials() {
        // For u = 1 - s (i.e. 1 - r²): Δu = u_rr + u_r/r = -4, and
        // 4s u_ss + 4 u_s = -4 exactly.
        let g = make_grid(16, Coord::S).unwrap();
        let u: Vec<f64> = g.nodes.iter().map(|&s| 1.0 - s).collect();
        let l = laplacian(&g);
        let lu = l * nalgebra::DVector::from_column_slice(&u);
        for v in lu.iter() {
            assert!((v + 4.0).abs() < 1e-11, "{v}");
        }
    }

    #[test]
    fn radial_laplacian_on_quadratic() {
        // sanity on a second polynomial: u = s² has 4s·2 + 4·2s = 16 s.
        let g = make_grid(12, Coord::S).unwrap();
        let u: Vec<f64> = g.nodes.iter().map(|&s| s * s).collect();
        let lu = laplacian(&g) * nalgebra::DVector::from_column_slice(&u);
        for (i, v) in lu.iter().enumerate() {
            assert!((v - 16.0 * g.nodes[i]).abs() < 1e-10);
        }
    }
}
