//! Closed-form and semi-analytic reference objects: criticality
//! classification, the explicit 1D whole-space soliton and its mass,
//! Dirichlet Laplacian eigenpairs on the ball, and Bessel `J0` with its
//! first positive root.  These serve as independent oracles for the solver
//! and experiment modules.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::cheb::{make_grid, Coord};
use crate::error::{Error, Result};

/// Problem class: spatial dimension d ∈ {1, 2} and nonlinearity power α > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemClass {
    pub d: u8,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criticality {
    Subcritical,
    Critical,
    Supercritical,
}

impl ProblemClass {
    pub fn new(d: u8, alpha: f64) -> Result<Self> {
        if d != 1 && d != 2 {
            return Err(Error::InvalidParameter(format!(
                "dimension must be 1 or 2, got {d}"
            )));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "nonlinearity power must be positive, got {alpha}"
            )));
        }
        Ok(ProblemClass { d, alpha })
    }

    /// Criticality index s_c = d/2 - 2/α.
    pub fn criticality_index(&self) -> f64 {
        self.d as f64 / 2.0 - 2.0 / self.alpha
    }

    /// Mass-critical iff α = 4/d.
    pub fn classify(&self) -> Criticality {
        let critical_alpha = 4.0 / self.d as f64;
        if self.alpha == critical_alpha {
            Criticality::Critical
        } else if self.alpha < critical_alpha {
            Criticality::Subcritical
        } else {
            Criticality::Supercritical
        }
    }

    /// First Dirichlet eigenvalue of -Δ on the unit ball: (π/2)² in 1D,
    /// k01² in 2D.
    pub fn lambda1(&self) -> f64 {
        match self.d {
            1 => PI * PI / 4.0,
            _ => {
                let k = first_bessel_root();
                k * k
            }
        }
    }

    /// Surface measure σ(B₁) of the unit ball boundary: 2 points in 1D,
    /// circumference 2π in 2D.
    pub fn boundary_measure(&self) -> f64 {
        match self.d {
            1 => 2.0,
            _ => 2.0 * PI,
        }
    }

    /// Grid coordinate used for this dimension.
    pub fn coord(&self) -> Coord {
        match self.d {
            1 => Coord::X,
            _ => Coord::S,
        }
    }

    /// Default polynomial degree for solves.
    pub fn default_degree(&self) -> usize {
        match self.d {
            1 => 128,
            _ => 160,
        }
    }
}

// ---------------------------------------------------------------------------
// Gamma function
// ---------------------------------------------------------------------------

/// Lanczos approximation with g = 7 and the standard 9-term coefficient
/// set; relative accuracy is ~1e-15 on the range used here.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for x > 0 (reflection handles (0, 0.5)).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}

// ---------------------------------------------------------------------------
// 1D whole-space soliton
// ---------------------------------------------------------------------------

/// The explicit 1D whole-space soliton
/// R_α(x) = ((α+2)/2)^(1/α) sech^(2/α)(α x / 2).
pub fn soliton_1d(alpha: f64, x: f64) -> f64 {
    let amp = ((alpha + 2.0) / 2.0).powf(1.0 / alpha);
    let sech = 1.0 / (alpha * x / 2.0).cosh();
    amp * sech.powf(2.0 / alpha)
}

/// Mass of R_α:
/// M = (2√π/α) ((α+2)/2)^(2/α) Γ(2/α) / Γ(2/α + 1/2).
pub fn soliton_mass_1d(alpha: f64) -> f64 {
    let two_over_alpha = 2.0 / alpha;
    2.0 * PI.sqrt() / alpha
        * ((alpha + 2.0) / 2.0).powf(two_over_alpha)
        * gamma(two_over_alpha)
        / gamma(two_over_alpha + 0.5)
}

// ---------------------------------------------------------------------------
// Bessel J0 and its first root
// ---------------------------------------------------------------------------

/// Branch switch between the power series and the integral rule.
const J0_CROSSOVER: f64 = 12.0;

/// Bessel function J0(x) for x ≥ 0.
///
/// Below the crossover the alternating power series
/// Σ (-1)^m (x/2)^(2m) / (m!)² is summed with compensated accumulation;
/// above it J0 is evaluated from the integral representation
/// (1/π)∫₀^π cos(x sin θ) dθ by the midpoint rule, which converges
/// geometrically for this periodic analytic integrand.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < J0_CROSSOVER {
        j0_series(x)
    } else {
        j0_integral(x)
    }
}

fn j0_series(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0; // Kahan compensation
    let mut m = 0usize;
    loop {
        m += 1;
        term *= -q / (m * m) as f64;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() < 1e-20 * sum.abs().max(1.0) || m > 300 {
            break;
        }
    }
    sum
}

fn j0_integral(x: f64) -> f64 {
    let m = x.ceil() as usize + 24;
    let mut sum = 0.0;
    for j in 0..m {
        let theta = PI * (j as f64 + 0.5) / m as f64;
        sum += (x * theta.sin()).cos();
    }
    sum / m as f64
}

/// First positive root k01 of J0, found by bisection on [2, 3].
pub fn first_bessel_root() -> f64 {
    static ROOT: OnceLock<f64> = OnceLock::new();
    *ROOT.get_or_init(|| {
        let mut lo = 2.0f64;
        let mut hi = 3.0f64;
        debug_assert!(bessel_j0(lo) > 0.0 && bessel_j0(hi) < 0.0);
        while hi - lo > 1e-15 {
            let mid = 0.5 * (lo + hi);
            if bessel_j0(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

// ---------------------------------------------------------------------------
// Laplacian eigenpairs on the ball
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
enum EigenKind {
    /// 1D interval [-1, 1]: χ_k(x) = sin(πk(x-1)/2).
    Interval { k: usize },
    /// 2D disk, first radial mode: χ(r) = J0(k01 r).
    Disk,
}

/// A Dirichlet Laplacian eigenpair on the unit ball.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub lambda: f64,
    /// L² norm over the ball (with the surface measure for d = 2).
    pub norm_l2: f64,
    kind: EigenKind,
}

impl Eigenpair {
    /// Evaluate the eigenfunction at x (1D) or radius r (2D).
    pub fn evaluate(&self, coord: f64) -> f64 {
        match self.kind {
            EigenKind::Interval { k } => (PI * k as f64 / 2.0 * (coord - 1.0)).sin(),
            EigenKind::Disk => bessel_j0(first_bessel_root() * coord),
        }
    }
}

/// k-th 1D eigenpair: λ_k = (πk/2)², χ_k(x) = sin(πk(x-1)/2), ‖χ_k‖ = 1.
pub fn eigenpair_1d(k: usize) -> Eigenpair {
    assert!(k >= 1, "eigenpair index starts at 1");
    let lam = (PI * k as f64 / 2.0).powi(2);
    Eigenpair {
        lambda: lam,
        norm_l2: 1.0,
        kind: EigenKind::Interval { k },
    }
}

/// First radial eigenpair on the disk: λ = k01², χ(r) = J0(k01 r).
/// The L² norm over the disk is computed by quadrature in s = r²:
/// ‖χ‖² = π ∫₀¹ J0(k01 √s)² ds.
pub fn eigenpair_2d_first() -> Eigenpair {
    let k01 = first_bessel_root();
    let grid = make_grid(64, Coord::S).expect("internal grid");
    let sq: f64 = grid
        .nodes
        .iter()
        .zip(grid.weights.iter())
        .map(|(&s, &w)| {
            let v = bessel_j0(k01 * s.sqrt());
            w * v * v
        })
        .sum();
    Eigenpair {
        lambda: k01 * k01,
        norm_l2: (PI * sq).sqrt(),
        kind: EigenKind::Disk,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator;

    #[test]
    fn classification() {
        let critical_1d = ProblemClass::new(1, 4.0).unwrap();
        assert_eq!(critical_1d.classify(), Criticality::Critical);
        let critical_2d = ProblemClass::new(2, 2.0).unwrap();
        assert_eq!(critical_2d.classify(), Criticality::Critical);
        let sub = ProblemClass::new(1, 2.0).unwrap();
        assert_eq!(sub.classify(), Criticality::Subcritical);
        let sup = ProblemClass::new(1, 6.0).unwrap();
        assert_eq!(sup.classify(), Criticality::Supercritical);
        assert!(sub.criticality_index().is_finite());
        assert!(ProblemClass::new(3, 2.0).is_err());
        assert!(ProblemClass::new(1, -1.0).is_err());
    }

    #[test]
    fn soliton_peak_values() {
        assert!((soliton_1d(2.0, 0.0) - 2f64.sqrt()).abs() < 1e-14);
        assert!((soliton_1d(4.0, 0.0) - 3f64.powf(0.25)).abs() < 1e-14);
        // independent evaluation of the closed form at x = 1
        let expect = 2f64.sqrt() * 2.0 / (1f64.exp() + (-1f64).exp());
        assert!((soliton_1d(2.0, 1.0) - expect).abs() < 1e-12);
    }

    #[test]
    fn soliton_satisfies_whole_space_equation() {
        // -R'' + R - R^(α+1) = 0 with R'' from a fourth-order stencil.
        // The profile varies on the 1/α scale, so the stencil follows it.
        for alpha in [1.0, 2.0, 4.0, 6.0] {
            let h = 1e-2 / alpha;
            for i in 0..100 {
                let x = -3.0 + 6.0 * i as f64 / 99.0;
                let f = |y: f64| soliton_1d(alpha, y);
                let rpp = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x)
                    + 16.0 * f(x - h)
                    - f(x - 2.0 * h))
                    / (12.0 * h * h);
                let r = f(x);
                let res = -rpp + r - r.powf(alpha + 1.0);
                assert!(res.abs() < 1e-8, "alpha={alpha} x={x}: {res:.3e}");
            }
        }
    }

    /// Simpson-rule mass oracle: M = 2 ∫₀^L R² dx with L far in the tail.
    fn mass_by_quadrature(alpha: f64) -> f64 {
        let l = 25.0;
        let n = 200_000; // even; fine enough for the 1/α-width peak at α = 50
        let h = l / n as f64;
        let f = |x: f64| soliton_1d(alpha, x).powi(2);
        let mut sum = f(0.0) + f(l);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * f(i as f64 * h);
        }
        2.0 * sum * h / 3.0
    }

    #[test]
    fn soliton_mass_closed_form() {
        assert!((soliton_mass_1d(2.0) - 4.0).abs() < 1e-10);
        let target = 3f64.sqrt() * PI / 2.0;
        assert!((soliton_mass_1d(4.0) - target).abs() < 1e-10);

        // frozen from the Simpson oracle below: M(R_50) = 1.2011608977408086
        let m50 = soliton_mass_1d(50.0);
        assert!((m50 - mass_by_quadrature(50.0)).abs() < 1e-9);
        assert!((m50 - 1.2011608977408086).abs() < 1e-9, "M(R_50) = {m50}");
        // M(R_α) → 1 from above as α grows
        assert!((soliton_mass_1d(500.0) - 1.0).abs() < (m50 - 1.0).abs());
        assert!((m50 - 1.0).abs() < (soliton_mass_1d(5.0) - 1.0).abs());
        // spot-check the quadrature oracle across the range
        for alpha in [1.0, 2.0, 4.0, 8.0] {
            let diff = (soliton_mass_1d(alpha) - mass_by_quadrature(alpha)).abs();
            assert!(diff < 1e-9, "alpha={alpha}: {diff:.3e}");
        }
    }

    #[test]
    fn soliton_mass_monotone_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let alpha = 1.0 + 49.0 * i as f64 / 49.0;
            let m = soliton_mass_1d(alpha);
            assert!(m < prev, "mass not decreasing at alpha={alpha}");
            prev = m;
        }
    }

    #[test]
    fn gamma_reference_values() {
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-12 * PI.sqrt());
        let mut fact = 1.0f64;
        for n in 1..=10usize {
            fact *= n as f64;
            let g = gamma(n as f64 + 1.0);
            assert!((g - fact).abs() < 1e-12 * fact, "n={n}: {g} vs {fact}");
        }
    }

    #[test]
    fn j0_values() {
        assert_eq!(bessel_j0(0.0), 1.0);
        assert!(bessel_j0(2.404825557696086).abs() < 1e-12);
        // independent series summation at x = 1
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for m in 1..40 {
            term *= -(0.25) / (m * m) as f64;
            sum += term;
        }
        assert!((bessel_j0(1.0) - sum).abs() < 1e-14);
        assert!((bessel_j0(1.0) - 0.7651976866).abs() < 1e-9);
    }

    #[test]
    fn j0_branches_agree_at_the_seam() {
        for x in [J0_CROSSOVER - 0.5, J0_CROSSOVER, J0_CROSSOVER + 0.5] {
            let diff = (j0_series(x) - j0_integral(x)).abs();
            assert!(diff < 1e-12, "x={x}: branch mismatch {diff:.3e}");
        }
    }

    #[test]
    fn first_root() {
        let k = first_bessel_root();
        assert!((k - 2.404825557696086).abs() < 1e-12);
        assert!(bessel_j0(k).abs() < 1e-13);
        assert!((k * k - 5.783).abs() < 2e-3);
    }

    #[test]
    fn eigenpair_1d_values() {
        let e1 = eigenpair_1d(1);
        assert!((e1.lambda - PI * PI / 4.0).abs() < 1e-14);
        let e2 = eigenpair_1d(2);
        assert!((e2.lambda - PI * PI).abs() < 1e-13);
        assert_eq!(e1.norm_l2, 1.0);
        // quadrature check of the unit norm
        let grid = make_grid(64, Coord::X).unwrap();
        let sq: f64 = grid
            .nodes
            .iter()
            .zip(grid.weights.iter())
            .map(|(&x, &w)| {
                let v = e1.evaluate(x);
                w * v * v
            })
            .sum();
        assert!((sq - 1.0).abs() < 1e-13);
        assert!(e1.evaluate(1.0).abs() < 1e-12);
        assert!(e1.evaluate(-1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_residual_on_discrete_laplacian() {
        // ‖(-Δ_h - λ)χ‖ / ‖χ‖ < 1e-8 on an N = 64 grid, both dimensions.
        for d in [1u8, 2u8] {
            let pc = ProblemClass::new(d, 2.0).unwrap();
            let grid = make_grid(64, pc.coord()).unwrap();
            let pair = match d {
                1 => eigenpair_1d(1),
                _ => eigenpair_2d_first(),
            };
            let chi: Vec<f64> = grid
                .nodes
                .iter()
                .map(|&c| match d {
                    1 => pair.evaluate(c),
                    _ => pair.evaluate(c.sqrt()),
                })
                .collect();
            let lap = operator::laplacian_interior(&grid);
            let range = operator::interior_range(&grid);
            let chi_in = nalgebra::DVector::from_iterator(
                range.len(),
                range.clone().map(|i| chi[i]),
            );
            let res = &lap * &chi_in + pair.lambda * &chi_in;
            let rel = res.amax() / chi_in.amax();
            assert!(rel < 1e-8, "d={d}: eigen-residual {rel:.3e}");
        }
    }

    #[test]
    fn disk_eigenfunction_vanishes_at_boundary() {
        let e = eigenpair_2d_first();
        assert!(e.evaluate(1.0).abs() < 1e-12);
        assert!((e.lambda - 5.783).abs() < 2e-3);
        assert!(e.norm_l2 > 0.0);
    }
}
