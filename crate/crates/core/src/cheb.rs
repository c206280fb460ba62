//! Chebyshev collocation primitives.
//!
//! Grids carry the collocation nodes, first/second differentiation matrices
//! and Clenshaw-Curtis quadrature weights for one resolution `N`.  Two
//! coordinates are supported: `X` for x ∈ [-1,1] (the 1D interval) and `S`
//! for s = r² ∈ [0,1] (the 2D radial problem).  Nodes are stored in the
//! standard descending Chebyshev order, so index 0 is the right endpoint
//! (x = 1, s = 1) and index N the left one (x = -1, s = 0).

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Grid coordinate: `X` for x ∈ [-1,1], `S` for s = r² ∈ [0,1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    X,
    S,
}

impl Coord {
    /// Length of the coordinate interval (2 for X, 1 for S).
    pub fn interval_length(self) -> f64 {
        match self {
            Coord::X => 2.0,
            Coord::S => 1.0,
        }
    }
}

impl std::fmt::Display for Coord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coord::X => write!(f, "X"),
            Coord::S => write!(f, "S"),
        }
    }
}

/// Chebyshev collocation grid of degree `n` (`n + 1` nodes).
#[derive(Debug, Clone)]
pub struct ChebGrid {
    pub n: usize,
    pub coord: Coord,
    /// Collocation points, descending: nodes[0] is the right endpoint.
    pub nodes: Vec<f64>,
    /// First differentiation matrix in the grid coordinate.
    pub d1: DMatrix<f64>,
    /// Second differentiation matrix, built as d1 * d1.
    pub d2: DMatrix<f64>,
    /// Clenshaw-Curtis weights in the grid coordinate.
    pub weights: Vec<f64>,
}

/// Build a collocation grid.  For `Coord::S` the X nodes are mapped
/// affinely onto [0,1] and the differentiation matrices and weights are
/// rescaled by the chain rule / Jacobian of s = (x+1)/2.
pub fn make_grid(n: usize, coord: Coord) -> Result<ChebGrid> {
    if n < 4 {
        return Err(Error::GridTooCoarse(n));
    }
    let x: Vec<f64> = (0..=n).map(|k| (k as f64 * PI / n as f64).cos()).collect();
    let d1x = diff_matrix(&x, n);
    let wx = clenshaw_curtis_weights(n);

    let (nodes, d1, weights) = match coord {
        Coord::X => (x, d1x, wx),
        Coord::S => {
            // s = (x + 1) / 2, so d/ds = 2 d/dx and ds = dx / 2.
            let s: Vec<f64> = x.iter().map(|&xi| (1.0 + xi) / 2.0).collect();
            let d1s = d1x.map(|v| 2.0 * v);
            let ws: Vec<f64> = wx.iter().map(|&w| w / 2.0).collect();
            (s, d1s, ws)
        }
    };
    let d2 = &d1 * &d1;
    Ok(ChebGrid {
        n,
        coord,
        nodes,
        d1,
        d2,
        weights,
    })
}

/// Chebyshev differentiation matrix on nodes `x` (descending), with
/// diagonal entries as negative row sums to suppress round-off.
fn diff_matrix(x: &[f64], n: usize) -> DMatrix<f64> {
    let m = n + 1;
    let c = |i: usize| -> f64 {
        if i == 0 || i == n {
            2.0
        } else {
            1.0
        }
    };
    let mut d = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                d[(i, j)] = sign * c(i) / (c(j) * (x[i] - x[j]));
            }
        }
    }
    for i in 0..m {
        let mut row_sum = 0.0;
        for j in 0..m {
            if j != i {
                row_sum += d[(i, j)];
            }
        }
        d[(i, i)] = -row_sum;
    }
    d
}

/// Clenshaw-Curtis weights for ∫_{-1}^{1} f dx on the degree-`n` Chebyshev
/// nodes, via the cosine-sum formula.
pub fn clenshaw_curtis_weights(n: usize) -> Vec<f64> {
    let mut w = vec![0.0; n + 1];
    let endpoint = if n % 2 == 0 {
        1.0 / (n * n - 1) as f64
    } else {
        1.0 / (n * n) as f64
    };
    w[0] = endpoint;
    w[n] = endpoint;
    for i in 1..n {
        let theta = i as f64 * PI / n as f64;
        let mut v = 1.0;
        for k in 1..=(n / 2) {
            let factor = if 2 * k == n { 1.0 } else { 2.0 };
            v -= factor * (2.0 * k as f64 * theta).cos() / (4 * k * k - 1) as f64;
        }
        w[i] = 2.0 * v / n as f64;
    }
    w
}

impl ChebGrid {
    /// Differentiate nodal values with the first differentiation matrix.
    pub fn deriv(&self, values: &[f64]) -> Result<Vec<f64>> {
        self.check_len(values.len())?;
        let v = DVector::from_column_slice(values);
        Ok((&self.d1 * v).as_slice().to_vec())
    }

    pub(crate) fn check_len(&self, got: usize) -> Result<()> {
        if got != self.n + 1 {
            return Err(Error::LengthMismatch {
                expected: self.n + 1,
                got,
            });
        }
        Ok(())
    }
}

/// Process-wide cache of grids keyed on (n, coord).  Grids are immutable,
/// so sharing them across solves and runs is safe; building d2 = d1·d1 is
/// O(N³) and worth amortising at N = 512.
pub fn shared_grid(n: usize, coord: Coord) -> Result<Arc<ChebGrid>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Arc<ChebGrid>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n, matches!(coord, Coord::S));
    if let Some(g) = cache.lock().unwrap().get(&key) {
        return Ok(Arc::clone(g));
    }
    let grid = Arc::new(make_grid(n, coord)?);
    cache
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&grid));
    Ok(grid)
}

/// Interpolate nodal values from one grid onto another of the same
/// coordinate via the Chebyshev spectrum.
pub fn resample(values: &[f64], from: &ChebGrid, to: &ChebGrid) -> Result<Vec<f64>> {
    if from.coord != to.coord {
        return Err(Error::InvalidParameter(
            "resample requires matching grid coordinates".into(),
        ));
    }
    let spectrum = cheb_coeffs(values, from)?;
    Ok(to
        .nodes
        .iter()
        .map(|&c| {
            let t = match to.coord {
                Coord::X => c,
                Coord::S => 2.0 * c - 1.0,
            };
            spectrum.eval(t)
        })
        .collect())
}

/// Chebyshev coefficients a_n of a nodal function, so that values[k] =
/// Σ a_n T_n(x_k) at the collocation points.
#[derive(Debug, Clone)]
pub struct CoeffSpectrum {
    pub coeffs: Vec<f64>,
}

impl CoeffSpectrum {
    /// max(|a_{N-1}|, |a_N|), the resolution indicator.
    pub fn tail_max(&self) -> f64 {
        let n = self.coeffs.len();
        if n < 2 {
            return self.coeffs.first().map_or(0.0, |a| a.abs());
        }
        self.coeffs[n - 2].abs().max(self.coeffs[n - 1].abs())
    }

    /// Evaluate Σ a_n T_n(t) for t in the standard coordinate [-1, 1]
    /// (Clenshaw recurrence).  For an S-coordinate grid use t = 2s - 1.
    pub fn eval(&self, t: f64) -> f64 {
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &a in self.coeffs.iter().skip(1).rev() {
            let b0 = a + 2.0 * t * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + t * b1 - b2
    }
}

/// Chebyshev coefficients via the discrete cosine-sum formula
/// a_n = 2 / (N c_n) Σ_k f(x_k) cos(n k π / N) / c_k, with c_0 = c_N = 2.
pub fn cheb_coeffs(values: &[f64], grid: &ChebGrid) -> Result<CoeffSpectrum> {
    grid.check_len(values.len())?;
    let n = grid.n;
    let c = |i: usize| -> f64 {
        if i == 0 || i == n {
            2.0
        } else {
            1.0
        }
    };
    let mut coeffs = vec![0.0; n + 1];
    for (m, a) in coeffs.iter_mut().enumerate() {
        let mut sum = 0.0;
        for (k, &fk) in values.iter().enumerate() {
            let angle = (m * k) as f64 * PI / n as f64;
            sum += fk * angle.cos() / c(k);
        }
        *a = 2.0 * sum / (n as f64 * c(m));
    }
    Ok(CoeffSpectrum { coeffs })
}

/// True iff the spectrum tail max(|a_{N-1}|, |a_N|) is at most `threshold`.
pub fn resolution_ok(spectrum: &CoeffSpectrum, threshold: f64) -> bool {
    assert!(threshold > 0.0, "resolution threshold must be positive");
    spectrum.tail_max() <= threshold
}

/// Clenshaw-Curtis quadrature of nodal values over the grid coordinate.
pub fn integrate(values: &[f64], grid: &ChebGrid) -> Result<f64> {
    grid.check_len(values.len())?;
    Ok(values
        .iter()
        .zip(grid.weights.iter())
        .map(|(v, w)| v * w)
        .sum())
}
