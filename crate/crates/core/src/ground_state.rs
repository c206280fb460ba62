//! Newton solver with continuation in b for the discrete ground-state
//! systems, plus Pokhozhaev-identity validation of every solve.
//!
//! In 1D the interior system is `(D̃² - b) Q̃ + |Q̃|^α Q̃ = 0` on the
//! trimmed Chebyshev grid.  In 2D the radial equation is solved in
//! s = r² form, `4s Q_ss + 4 Q_s - b Q + |Q|^α Q = 0`, with only the s = 1
//! row trimmed (the operator is degenerate at s = 0, no axis condition is
//! imposed).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};

use crate::cheb::{cheb_coeffs, resample, shared_grid, ChebGrid, CoeffSpectrum, Coord};
use crate::error::{Error, Result};
use crate::operator::{embed_interior, extract_interior, interior_range, laplacian_interior};
use crate::reference::{bessel_j0, first_bessel_root, soliton_1d, ProblemClass};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_NEWTON_ITER: usize = 100;
/// Hard cap for the auto-doubled resolution.
pub const MAX_DEGREE: usize = 512;
/// Relative spectral-tail threshold for accepting a solve.
pub const TAIL_REL_THRESHOLD: f64 = 1e-12;

/// Round-off floor of the discrete residual max-norm,
/// ≈ c ε N² max(1, ‖Q‖∞).  The constants are calibrated against measured
/// stagnation levels (c ≲ 0.4 for the X operator, ≲ 1.7 for the heavier
/// S operator) with a safety factor.  Tolerances below the floor are
/// clamped to it; `residual_norm` records what was actually achieved.
pub fn residual_floor(grid: &ChebGrid, linf: f64) -> f64 {
    let c = match grid.coord {
        Coord::X => 1.0,
        Coord::S => 2.5,
    };
    c * f64::EPSILON * (grid.n * grid.n) as f64 * linf.max(1.0)
}

/// |q|^α q, the sign-safe nonlinearity (equals q^(α+1) on positive values).
#[inline]
pub(crate) fn nonlinearity(q: f64, alpha: f64) -> f64 {
    if q == 0.0 {
        0.0
    } else {
        q.abs().powf(alpha) * q
    }
}

/// |q|^α, the Jacobian weight of the nonlinearity (times α+1).
#[inline]
fn abs_pow(q: f64, alpha: f64) -> f64 {
    if q == 0.0 {
        0.0
    } else {
        q.abs().powf(alpha)
    }
}

/// A converged ground-state candidate with its solve diagnostics.
#[derive(Debug, Clone)]
pub struct Profile {
    pub pc: ProblemClass,
    pub b: f64,
    pub grid: Arc<ChebGrid>,
    /// Nodal values including the boundary zeros.
    pub values: Vec<f64>,
    /// Final Newton residual max-norm.
    pub residual_norm: f64,
    /// Newton steps used.
    pub iterations: usize,
    /// max(|a_{N-1}|, |a_N|) of the solution spectrum.
    pub tail_coeff: f64,
    /// Residual max-norm before each Newton step, ending with the final one.
    pub residual_history: Vec<f64>,
}

impl Profile {
    pub fn interior(&self) -> Vec<f64> {
        extract_interior(&self.grid, &self.values)
    }

    pub fn linf(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn spectrum(&self) -> CoeffSpectrum {
        cheb_coeffs(&self.values, &self.grid).expect("profile length matches grid")
    }

    /// Check the structural invariants: boundary zeros, strict interior
    /// positivity and monotone radial decrease (with round-off slack).
    pub fn validate(&self) -> Result<()> {
        self.grid.check_len(self.values.len())?;
        let n = self.grid.n;
        let boundary_ok = match self.grid.coord {
            Coord::X => self.values[0] == 0.0 && self.values[n] == 0.0,
            Coord::S => self.values[0] == 0.0,
        };
        if !boundary_ok {
            return Err(Error::InvalidParameter(
                "profile boundary values must be exactly zero".into(),
            ));
        }
        if interior_range(&self.grid).any(|i| self.values[i] <= 0.0) {
            return Err(Error::SignChange { b: self.b });
        }
        let slack = 1e-10 * self.linf();
        match self.grid.coord {
            Coord::X => {
                // nodes descend from x = 1; values rise towards the centre
                // and fall after it.
                let mid = n / 2;
                for i in 0..n {
                    let (lo, hi) = (self.values[i + 1], self.values[i]);
                    if i < mid && hi > lo + slack {
                        return Err(Error::InvalidParameter(format!(
                            "profile not radially decreasing near node {i}"
                        )));
                    }
                    if i >= mid && lo > hi + slack {
                        return Err(Error::InvalidParameter(format!(
                            "profile not radially decreasing near node {i}"
                        )));
                    }
                }
            }
            Coord::S => {
                // nodes descend in s, so values must not decrease with index.
                for i in 0..n {
                    if self.values[i] > self.values[i + 1] + slack {
                        return Err(Error::InvalidParameter(format!(
                            "profile not radially decreasing near node {i}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Quadrature-based observables of a real nodal function on the ball.
#[derive(Debug, Clone, Copy)]
pub struct BallQuantities {
    pub mass: f64,
    pub energy: f64,
    pub grad_sq: f64,
    /// ∫ |Q|^(α+2)
    pub potential: f64,
    /// ∂_r Q at r = 1 (right endpoint in 1D).
    pub boundary_deriv: f64,
}

/// Mass, energy and boundary derivative of full nodal values.  2D integrals
/// are taken in s-coordinates: ∫_{B₁} f = π ∫₀¹ f ds and
/// ‖∇u‖² = π ∫₀¹ 4s u_s² ds.
pub fn ball_quantities(grid: &ChebGrid, pc: &ProblemClass, values: &[f64]) -> Result<BallQuantities> {
    grid.check_len(values.len())?;
    let deriv = grid.deriv(values)?;
    let alpha = pc.alpha;
    let (measure, mut grad_sq) = match grid.coord {
        Coord::X => (1.0, 0.0),
        Coord::S => (std::f64::consts::PI, 0.0),
    };
    let mut mass = 0.0;
    let mut potential = 0.0;
    for i in 0..values.len() {
        let w = grid.weights[i];
        mass += w * values[i] * values[i];
        potential += w * abs_pow(values[i], alpha + 2.0);
        grad_sq += match grid.coord {
            Coord::X => w * deriv[i] * deriv[i],
            Coord::S => w * 4.0 * grid.nodes[i] * deriv[i] * deriv[i],
        };
    }
    mass *= measure;
    potential *= measure;
    grad_sq *= measure;
    let boundary_deriv = match grid.coord {
        Coord::X => deriv[0],
        Coord::S => 2.0 * deriv[0], // ∂_r = 2r ∂_s at r = 1
    };
    Ok(BallQuantities {
        mass,
        energy: 0.5 * grad_sq - potential / (alpha + 2.0),
        grad_sq,
        potential,
        boundary_deriv,
    })
}

/// Weinstein functional S_b = E + (b/2) M.
pub fn weinstein(b: f64, mass: f64, energy: f64) -> f64 {
    energy + 0.5 * b * mass
}

/// Pokhozhaev-identity residuals of a converged profile.
#[derive(Debug, Clone, Copy)]
pub struct IdentityReport {
    /// Residual of the gradient identity.
    pub e1: f64,
    /// Residual of the energy identity.
    pub e2: f64,
    pub mass: f64,
    pub energy: f64,
    pub boundary_deriv: f64,
    pub grad_sq: f64,
    pub potential: f64,
}

/// Evaluate the gradient and energy identities for the profile's dimension.
/// σ(B₁) is 2π in 2D; in 1D the boundary term sums both endpoint
/// contributions, which by symmetry equals 2 |Q'(1)|².
pub fn pokhozhaev_report(p: &Profile) -> IdentityReport {
    let q = ball_quantities(&p.grid, &p.pc, &p.values).expect("profile is grid-consistent");
    let d = p.pc.d as f64;
    let alpha = p.pc.alpha;
    let sigma = p.pc.boundary_measure();
    let denom = alpha * (2.0 - d) + 4.0;
    let bd2 = q.boundary_deriv * q.boundary_deriv;
    let e1 = q.grad_sq - (d * alpha * p.b * q.mass + (alpha + 2.0) * sigma * bd2) / denom;
    let e2 = q.energy
        - (d * alpha - 4.0) * p.b * q.mass / (2.0 * denom)
        - alpha * sigma * bd2 / (2.0 * denom);
    IdentityReport {
        e1,
        e2,
        mass: q.mass,
        energy: q.energy,
        boundary_deriv: q.boundary_deriv,
        grad_sq: q.grad_sq,
        potential: q.potential,
    }
}

/// Initial Newton iterate: λ sin(π(x+1)/2) in 1D and λ J0(k01 r) in 2D,
/// with amplitude λ = (b + λ₁)^(1/α).  The amplitude vanishes as
/// b ↓ -λ₁ (small-amplitude regime) and scales like b^(1/α) for large b.
pub fn default_seed(pc: &ProblemClass, b: f64, grid: &ChebGrid) -> Result<Vec<f64>> {
    let lambda1 = pc.lambda1();
    let excess = b + lambda1;
    if excess <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "b = {b} must exceed -λ₁ = {:.6}",
            -lambda1
        )));
    }
    let amp = excess.powf(1.0 / pc.alpha);
    let mut values: Vec<f64> = match grid.coord {
        Coord::X => grid
            .nodes
            .iter()
            .map(|&x| amp * (std::f64::consts::PI * (x + 1.0) / 2.0).sin())
            .collect(),
        Coord::S => {
            let k01 = first_bessel_root();
            grid.nodes
                .iter()
                .map(|&s| amp * bessel_j0(k01 * s.sqrt()))
                .collect()
        }
    };
    values[0] = 0.0;
    if grid.coord == Coord::X {
        values[grid.n] = 0.0;
    }
    Ok(values)
}

/// Newton solve of the discrete ground-state system on the seed's grid.
///
/// The returned profile satisfies ‖(L̃ - b) Q̃ + |Q̃|^α Q̃‖_∞ ≤ tol where
/// L̃ is the trimmed Laplacian of the grid coordinate; the Jacobian is
/// L̃ - b I + (α+1) diag(|Q̃|^α).  Steps are damped (halved) only when the
/// residual would grow, so the quadratic tail of Newton is untouched.
/// Tolerances below [`residual_floor`] are clamped to it.
pub fn solve(
    pc: &ProblemClass,
    b: f64,
    seed: &[f64],
    grid: &Arc<ChebGrid>,
    tol: f64,
) -> Result<Profile> {
    if tol <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    grid.check_len(seed.len())?;
    let boundary_ok = match grid.coord {
        Coord::X => seed[0] == 0.0 && seed[grid.n] == 0.0,
        Coord::S => seed[0] == 0.0,
    };
    if !boundary_ok {
        return Err(Error::InvalidParameter(
            "seed must satisfy the Dirichlet boundary zeros".into(),
        ));
    }

    let alpha = pc.alpha;
    let lap = laplacian_interior(grid);
    let m = lap.nrows();
    let base = &lap - DMatrix::identity(m, m) * b;
    let mut q = DVector::from_vec(extract_interior(grid, seed));

    let residual = |q: &DVector<f64>| -> DVector<f64> {
        let mut f = &base * q;
        for i in 0..m {
            f[i] += nonlinearity(q[i], alpha);
        }
        f
    };

    let mut f = residual(&q);
    let mut res = f.amax();
    let initial_res = res;
    let mut history = vec![res];
    let mut iterations = 0;

    let linf_of = |q: &DVector<f64>| q.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    while res > tol.max(residual_floor(grid, linf_of(&q))) {
        if iterations >= MAX_NEWTON_ITER || !res.is_finite() || res > 1e8 * (initial_res + 1.0) {
            return Err(Error::NonConvergence {
                b,
                residual: res,
                iterations,
            });
        }
        let mut jac = base.clone();
        for i in 0..m {
            jac[(i, i)] += (alpha + 1.0) * abs_pow(q[i], alpha);
        }
        let step = jac.lu().solve(&(-&f)).ok_or(Error::NonConvergence {
            b,
            residual: res,
            iterations,
        })?;
        // damped update: halve the step while the residual grows
        let mut scale = 1.0;
        let (q_next, f_next, res_next) = loop {
            let cand = &q + &step * scale;
            let fc = residual(&cand);
            let rc = fc.amax();
            if rc < res || scale < 1.0 / 1024.0 {
                break (cand, fc, rc);
            }
            scale *= 0.5;
        };
        q = q_next;
        f = f_next;
        res = res_next;
        iterations += 1;
        history.push(res);
    }

    if q.iter().any(|&v| v <= 0.0) {
        return Err(Error::SignChange { b });
    }

    let values = embed_interior(grid, q.as_slice());
    let spectrum = cheb_coeffs(&values, grid)?;
    let tail = spectrum.tail_max();
    let linf = values.iter().fold(0.0f64, |mx, v| mx.max(v.abs()));
    let threshold = TAIL_REL_THRESHOLD * linf;
    if tail > threshold {
        return Err(Error::UnderResolved {
            b,
            n: grid.n,
            tail,
            threshold,
        });
    }

    Ok(Profile {
        pc: *pc,
        b,
        grid: Arc::clone(grid),
        values,
        residual_norm: res,
        iterations,
        tail_coeff: tail,
        residual_history: history,
    })
}

/// Solve from a warm-start profile, doubling the grid (up to `MAX_DEGREE`)
/// whenever the solve comes back under-resolved.  The seed is interpolated
/// onto each finer grid through its Chebyshev spectrum.
pub fn solve_warm(pc: &ProblemClass, b: f64, warm: &Profile, tol: f64) -> Result<Profile> {
    let mut n = warm.grid.n;
    loop {
        let grid = shared_grid(n, warm.grid.coord)?;
        let seed = if grid.n == warm.grid.n {
            warm.values.clone()
        } else {
            let mut v = resample(&warm.values, &warm.grid, &grid)?;
            v[0] = 0.0;
            if grid.coord == Coord::X {
                v[grid.n] = 0.0;
            }
            v
        };
        match solve(pc, b, &seed, &grid, tol) {
            Err(Error::UnderResolved { .. }) if n < MAX_DEGREE => n = (2 * n).min(MAX_DEGREE),
            other => return other,
        }
    }
}

/// Cold solve at the default resolution for the dimension, with the same
/// auto-doubling policy.  Large-b targets where the default seed is too
/// far from the sharply peaked solution fall back to geometric
/// continuation from b = 1.
pub fn solve_auto(pc: &ProblemClass, b: f64, tol: f64) -> Result<Profile> {
    let mut n = pc.default_degree();
    loop {
        let grid = shared_grid(n, pc.coord())?;
        let seed = default_seed(pc, b, &grid)?;
        match solve(pc, b, &seed, &grid, tol) {
            Err(Error::UnderResolved { .. }) if n < MAX_DEGREE => n = (2 * n).min(MAX_DEGREE),
            Err(Error::NonConvergence { .. }) if b > 1.0 => break,
            other => return other,
        }
    }
    let mut profile = solve_auto(pc, 1.0, tol)?;
    let mut cur = 1.0;
    while cur < b {
        cur = (cur * 2.0).min(b);
        profile = solve_warm(pc, cur, &profile, tol)?;
    }
    Ok(profile)
}

/// Continuation in b: solve at `b_start` from the default seed, then use
/// each converged profile as the seed for the next b.  On NonConvergence
/// the local step is halved up to 6 times before failing.  Profiles are
/// returned at every accepted b.
pub fn continue_in_b(
    pc: &ProblemClass,
    b_start: f64,
    b_end: f64,
    step: f64,
    tol: f64,
) -> Result<Vec<Profile>> {
    if step <= 0.0 {
        return Err(Error::InvalidParameter("continuation step must be positive".into()));
    }
    let lambda1 = pc.lambda1();
    if b_start <= -lambda1 || b_end <= -lambda1 {
        return Err(Error::InvalidParameter(format!(
            "continuation endpoints must exceed -λ₁ = {:.6}",
            -lambda1
        )));
    }

    let mut profiles = vec![solve_auto(pc, b_start, tol)?];
    if b_start == b_end {
        return Ok(profiles);
    }
    let dir = (b_end - b_start).signum();
    let mut b = b_start;

    while (b_end - b) * dir > 1e-14 * b_end.abs().max(1.0) {
        let mut local = step.min((b_end - b).abs());
        let mut halvings = 0;
        loop {
            let b_try = if (b_end - b).abs() <= local {
                b_end
            } else {
                b + dir * local
            };
            match solve_warm(pc, b_try, profiles.last().unwrap(), tol) {
                Ok(p) => {
                    profiles.push(p);
                    b = b_try;
                    break;
                }
                Err(Error::NonConvergence { .. }) if halvings < 6 => {
                    local /= 2.0;
                    halvings += 1;
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(profiles)
}

// ---------------------------------------------------------------------------
// Whole-space 2D soliton by the expanding-domain limit
// ---------------------------------------------------------------------------

/// Default rescaling parameter B for the 2D whole-space approximation.
pub const WHOLE_SPACE_B: f64 = 400.0;

/// Numerical approximation of the 2D whole-space soliton R, obtained from
/// the ball ground state at a large b = B via Q_B(x) = B^(1/α) R(√B x).
/// Valid for radii y ∈ [0, √B]; zero outside.
#[derive(Debug, Clone)]
pub struct WholeSpaceSoliton2d {
    pub alpha: f64,
    /// The B used for the expanding-domain solve.
    pub domain_b: f64,
    /// Mass of R in the rescaled (whole-plane) measure: B^(1-2/α) M(Q_B).
    pub mass: f64,
    /// Peak value R(0).
    pub peak: f64,
    spectrum: CoeffSpectrum,
}

impl WholeSpaceSoliton2d {
    /// Evaluate R at radius y ≥ 0.
    pub fn eval_radial(&self, y: f64) -> f64 {
        let s = y * y / self.domain_b;
        if s >= 1.0 {
            return 0.0;
        }
        self.spectrum.eval(2.0 * s - 1.0)
    }

    /// Nodal values of b^(1/α) R(√b r) on an S-coordinate ball grid.
    pub fn rescaled_to(&self, b: f64, grid: &ChebGrid) -> Result<Vec<f64>> {
        if grid.coord != Coord::S {
            return Err(Error::InvalidParameter(
                "2D rescaling target requires an S-coordinate grid".into(),
            ));
        }
        let amp = b.powf(1.0 / self.alpha);
        Ok(grid
            .nodes
            .iter()
            .map(|&s| amp * self.eval_radial((b * s).sqrt()))
            .collect())
    }
}

fn compute_whole_space_2d(alpha: f64, domain_b: f64) -> Result<WholeSpaceSoliton2d> {
    let pc = ProblemClass::new(2, alpha)?;
    let grid = shared_grid(MAX_DEGREE, Coord::S)?;
    let tol = 1e-11;
    let seed = default_seed(&pc, 1.0, &grid)?;
    let mut profile = solve(&pc, 1.0, &seed, &grid, tol)?;
    let mut b = 1.0;
    while b < domain_b {
        b = (b * 2.0).min(domain_b);
        profile = solve_warm(&pc, b, &profile, tol)?;
    }
    let factor = domain_b.powf(-1.0 / alpha);
    let r_values: Vec<f64> = profile.values.iter().map(|v| v * factor).collect();
    let spectrum = cheb_coeffs(&r_values, &grid)?;
    let q = ball_quantities(&grid, &pc, &profile.values)?;
    let mass = domain_b.powf(1.0 - 2.0 / alpha) * q.mass;
    let peak = r_values[grid.n];
    Ok(WholeSpaceSoliton2d {
        alpha,
        domain_b,
        mass,
        peak,
        spectrum,
    })
}

/// Whole-space 2D soliton at a caller-chosen domain parameter B,
/// cached on (α, B).
pub fn whole_space_soliton_2d_at(alpha: f64, domain_b: f64) -> Result<Arc<WholeSpaceSoliton2d>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<WholeSpaceSoliton2d>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (alpha.to_bits(), domain_b.to_bits());
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let computed = Arc::new(compute_whole_space_2d(alpha, domain_b)?);
    cache
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&computed));
    Ok(computed)
}

/// Whole-space 2D soliton at the default B = 400.
pub fn whole_space_soliton_2d(alpha: f64) -> Result<Arc<WholeSpaceSoliton2d>> {
    whole_space_soliton_2d_at(alpha, WHOLE_SPACE_B)
}

/// Nodal values of the large-b comparison target b^(1/α) R(√b ·) on the
/// ball grid: the closed-form sech profile in 1D, the stored whole-space
/// profile in 2D.
pub fn rescale_soliton_to_ball(pc: &ProblemClass, b: f64, grid: &ChebGrid) -> Result<Vec<f64>> {
    if b <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "rescaling parameter b must be positive, got {b}"
        )));
    }
    match pc.d {
        1 => {
            if grid.coord != Coord::X {
                return Err(Error::InvalidParameter(
                    "1D rescaling target requires an X-coordinate grid".into(),
                ));
            }
            let amp = b.powf(1.0 / pc.alpha);
            Ok(grid
                .nodes
                .iter()
                .map(|&x| amp * soliton_1d(pc.alpha, b.sqrt() * x))
                .collect())
        }
        _ => whole_space_soliton_2d(pc.alpha)?.rescaled_to(b, grid),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::make_grid;

    #[test]
    fn seed_amplitude_rule() {
        let pc = ProblemClass::new(1, 2.0).unwrap();
        let grid = shared_grid(64, Coord::X).unwrap();
        let seed = default_seed(&pc, 1.0, &grid).unwrap();
        let peak = seed.iter().cloned().fold(0.0f64, f64::max);
        let expect = (1.0 + pc.lambda1()).sqrt();
        assert!((peak - expect).abs() < 1e-12, "{peak} vs {expect}");

        // near -λ₁ the seed amplitude collapses with (b + λ₁)^(1/α)
        let tiny = default_seed(&pc, -pc.lambda1() + 1e-6, &grid).unwrap();
        let tiny_peak = tiny.iter().cloned().fold(0.0f64, f64::max);
        assert!((tiny_peak - 1e-3).abs() < 1e-9, "{tiny_peak}");

        assert!(default_seed(&pc, -pc.lambda1(), &grid).is_err());
    }

    #[test]
    fn seed_2d_vanishes_at_boundary() {
        let pc = ProblemClass::new(2, 2.0).unwrap();
        let grid = shared_grid(32, Coord::S).unwrap();
        let seed = default_seed(&pc, 1.0, &grid).unwrap();
        assert_eq!(seed[0], 0.0);
        assert!(seed[32] > 0.0); // centre value positive
    }

    #[test]
    fn zero_profile_identities_vanish() {
        let pc = ProblemClass::new(1, 2.0).unwrap();
        let grid = Arc::new(make_grid(16, Coord::X).unwrap());
        let p = Profile {
            pc,
            b: 1.0,
            grid: Arc::clone(&grid),
            values: vec![0.0; 17],
            residual_norm: 0.0,
            iterations: 0,
            tail_coeff: 0.0,
            residual_history: vec![0.0],
        };
        let rep = pokhozhaev_report(&p);
        assert_eq!(rep.e1, 0.0);
        assert_eq!(rep.e2, 0.0);
        assert_eq!(rep.mass, 0.0);
        assert_eq!(rep.energy, 0.0);
    }

    #[test]
    fn solve_rejects_bad_seed() {
        let pc = ProblemClass::new(1, 2.0).unwrap();
        let grid = shared_grid(32, Coord::X).unwrap();
        let mut seed = default_seed(&pc, 1.0, &grid).unwrap();
        seed[0] = 0.5;
        assert!(solve(&pc, 1.0, &seed, &grid, 1e-10).is_err());
    }

    #[test]
    fn weinstein_functional() {
        assert_eq!(weinstein(2.0, 3.0, 1.0), 4.0);
    }
}
