//! Scripted experiment battery: mass/energy sweeps with identity checks,
//! branch-point detection in the supercritical case, slope-condition
//! checks, perturbation dynamics classification, and the two ground-state
//! convergence studies.

use crate::cheb::ChebGrid;
use crate::error::{Error, Result};
use crate::evolve::{evolve, observables, EvolveConfig, EvolveTrace, FieldState, Outcome};
use crate::ground_state::{
    ball_quantities, pokhozhaev_report, rescale_soliton_to_ball, solve_auto, solve_warm,
    whole_space_soliton_2d, Profile,
};
use crate::reference::{
    eigenpair_1d, eigenpair_2d_first, soliton_mass_1d, Criticality, ProblemClass,
};

/// Solve tolerance used where finite differences in b are taken; tighter
/// than the default so the stencil signal is not drowned by solver noise.
pub const SWEEP_TOL: f64 = 1e-12;
/// Default time step for the dynamics experiments (restarts refine it).
pub const EVOLVE_H: f64 = 2e-4;
/// Relative L∞ range separating in-place oscillation from two-state
/// oscillation.  Stable-branch perturbations oscillate in the second
/// digit (observed up to ≈ 6% of the mean for 2D quintic at A = 1.01)
/// while genuine two-state oscillations span ≥ 25%; 12% sits between the
/// two clusters.
pub const OSCILLATION_RANGE_THRESHOLD: f64 = 0.12;

/// Centered-difference step for ∂_b: δ = 1e-3 max(1, |b|).
pub fn fd_delta(b: f64) -> f64 {
    1e-3 * b.abs().max(1.0)
}

/// One row of the M(b)/E(b) continuation table.
#[derive(Debug, Clone, Copy)]
pub struct SweepRecord {
    pub b: f64,
    pub mass: f64,
    pub energy: f64,
    /// ∂_r Q_b(1)
    pub boundary_deriv: f64,
    pub e1: f64,
    pub e2: f64,
    /// centered finite difference of M(Q_b)
    pub dmass_db: f64,
    /// |∂_b E + (b/2) ∂_b M|
    pub em_residual: f64,
}

/// Continuation solve along `b_grid` with centered-difference slopes from
/// auxiliary solves at b ± δ.
pub fn sweep(pc: &ProblemClass, b_grid: &[f64]) -> Result<Vec<SweepRecord>> {
    if b_grid.is_empty() {
        return Ok(Vec::new());
    }
    if b_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "sweep grid must be strictly increasing".into(),
        ));
    }
    let lambda1 = pc.lambda1();
    if b_grid[0] <= -lambda1 {
        return Err(Error::InvalidParameter(format!(
            "sweep grid must stay above -λ₁ = {:.6}",
            -lambda1
        )));
    }

    let mut records = Vec::with_capacity(b_grid.len());
    let mut prev: Option<Profile> = None;
    for &b in b_grid {
        let center = match &prev {
            None => solve_auto(pc, b, SWEEP_TOL)?,
            Some(p) => solve_warm(pc, b, p, SWEEP_TOL)?,
        };
        let (dmass_db, dener_db) = b_derivatives(pc, &center, fd_delta(b))?;
        let rep = pokhozhaev_report(&center);
        records.push(SweepRecord {
            b,
            mass: rep.mass,
            energy: rep.energy,
            boundary_deriv: rep.boundary_deriv,
            e1: rep.e1,
            e2: rep.e2,
            dmass_db,
            em_residual: (dener_db + 0.5 * b * dmass_db).abs(),
        });
        prev = Some(center);
    }
    Ok(records)
}

/// Centered finite differences of mass and energy at the profile's b.
fn b_derivatives(pc: &ProblemClass, center: &Profile, delta: f64) -> Result<(f64, f64)> {
    let lambda1 = pc.lambda1();
    // keep the stencil inside the existence range
    let delta = delta.min(0.45 * (center.b + lambda1));
    let plus = solve_warm(pc, center.b + delta, center, SWEEP_TOL)?;
    let minus = solve_warm(pc, center.b - delta, center, SWEEP_TOL)?;
    let qp = ball_quantities(&plus.grid, pc, &plus.values)?;
    let qm = ball_quantities(&minus.grid, pc, &minus.values)?;
    Ok((
        (qp.mass - qm.mass) / (2.0 * delta),
        (qp.energy - qm.energy) / (2.0 * delta),
    ))
}

/// |∂_b E + (b/2) ∂_b M| at one b for a list of stencil widths; used to
/// verify the O(δ²) decrease of the centered stencil.
pub fn em_residual_study(pc: &ProblemClass, b: f64, deltas: &[f64]) -> Result<Vec<f64>> {
    let center = solve_auto(pc, b, SWEEP_TOL)?;
    deltas
        .iter()
        .map(|&d| {
            let (dm, de) = b_derivatives(pc, &center, d)?;
            Ok((de + 0.5 * b * dm).abs())
        })
        .collect()
}

/// Branch point of the supercritical mass curve.
#[derive(Debug, Clone, Copy)]
pub struct BranchReport {
    pub b_star: f64,
    pub mass_at_star: f64,
    /// final golden-section bracket width
    pub refinement_width: f64,
}

struct MassEvaluator<'a> {
    pc: &'a ProblemClass,
    cache: Vec<Profile>,
}

impl<'a> MassEvaluator<'a> {
    fn eval(&mut self, b: f64) -> Result<f64> {
        let warm = self
            .cache
            .iter()
            .min_by(|p, q| {
                (p.b - b)
                    .abs()
                    .partial_cmp(&(q.b - b).abs())
                    .expect("finite b")
            })
            .expect("cache seeded by the scan");
        let profile = solve_warm(self.pc, b, warm, 1e-11)?;
        let mass = ball_quantities(&profile.grid, self.pc, &profile.values)?.mass;
        self.cache.push(profile);
        Ok(mass)
    }
}

/// Locate b* maximising M(Q_b) by a coarse continuation scan followed by
/// golden-section refinement to bracket width 1e-3.  Each evaluation is a
/// warm-started solve seeded from the nearest cached profile.
pub fn find_branch_point(pc: &ProblemClass, b_lo: f64, b_hi: f64) -> Result<BranchReport> {
    if pc.classify() != Criticality::Supercritical {
        return Err(Error::InvalidParameter(
            "branch point exists only in the supercritical case".into(),
        ));
    }
    if !(b_hi > b_lo) {
        return Err(Error::InvalidParameter("need b_lo < b_hi".into()));
    }

    const SCAN: usize = 25;
    let mut masses = Vec::with_capacity(SCAN);
    let mut cache: Vec<Profile> = Vec::with_capacity(SCAN);
    for i in 0..SCAN {
        let b = b_lo + (b_hi - b_lo) * i as f64 / (SCAN - 1) as f64;
        let profile = match cache.last() {
            None => solve_auto(pc, b, 1e-11)?,
            Some(p) => solve_warm(pc, b, p, 1e-11)?,
        };
        masses.push(ball_quantities(&profile.grid, pc, &profile.values)?.mass);
        cache.push(profile);
    }
    let i_max = masses
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite mass"))
        .map(|(i, _)| i)
        .expect("scan non-empty");
    if i_max == 0 || i_max == SCAN - 1 {
        return Err(Error::NoInteriorMax { b_lo, b_hi });
    }

    let mut ev = MassEvaluator { pc, cache };
    let mut a = b_lo + (b_hi - b_lo) * (i_max - 1) as f64 / (SCAN - 1) as f64;
    let mut b = b_lo + (b_hi - b_lo) * (i_max + 1) as f64 / (SCAN - 1) as f64;
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = ev.eval(x1)?;
    let mut f2 = ev.eval(x2)?;
    while b - a > 1e-3 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = ev.eval(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = ev.eval(x1)?;
        }
    }
    Ok(BranchReport {
        b_star: 0.5 * (a + b),
        mass_at_star: f1.max(f2),
        refinement_width: b - a,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeSign {
    Positive,
    Negative,
}

/// Sign of ∂_b M(Q_b) by centered differences, with a Richardson error
/// estimate guarding against reading noise as a sign.
pub fn slope_sign(pc: &ProblemClass, b: f64) -> Result<SlopeSign> {
    let center = solve_auto(pc, b, SWEEP_TOL)?;
    let delta = fd_delta(b);
    let (dm_coarse, _) = b_derivatives(pc, &center, delta)?;
    let (dm_fine, _) = b_derivatives(pc, &center, delta / 2.0)?;
    // centered stencils are O(δ²): the δ/2 estimate has error ≈ |Δ|/3
    let stencil_err = ((dm_coarse - dm_fine) / 3.0).abs().max(SWEEP_TOL / delta);
    if dm_fine.abs() < 10.0 * stencil_err {
        return Err(Error::IndeterminateSlope {
            b,
            slope: dm_fine.abs(),
            noise: stencil_err,
        });
    }
    Ok(if dm_fine > 0.0 {
        SlopeSign::Positive
    } else {
        SlopeSign::Negative
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbationOutcome {
    StableOscillation,
    TwoStateOscillation,
    BlowUp,
}

#[derive(Debug, Clone, Copy)]
pub struct PerturbationVerdict {
    pub b: f64,
    pub amplitude: f64,
    pub outcome: PerturbationOutcome,
    pub linf_min: f64,
    pub linf_max: f64,
    /// mean spacing of successive L∞ maxima, when at least 3 are seen
    pub period_estimate: Option<f64>,
}

/// Evolve u₀ = A Q_b to `t_end` and classify the dynamics: blow-up, small
/// oscillation around the ground state (relative L∞ range below 5%), or
/// two-state oscillation.
pub fn perturb_and_classify(
    pc: &ProblemClass,
    b: f64,
    amplitude: f64,
    t_end: f64,
) -> Result<(PerturbationVerdict, EvolveTrace)> {
    if !(amplitude > 0.0) {
        return Err(Error::InvalidParameter("amplitude must be positive".into()));
    }
    let profile = solve_auto(pc, b, crate::ground_state::DEFAULT_TOL)?;
    let u0 = FieldState::from_profile(&profile, amplitude);
    let mut cfg = EvolveConfig::new(EVOLVE_H, t_end);
    cfg.monitor_stride = 5;
    let trace = evolve(&u0, &cfg)?;
    if let Outcome::InnerDivergence { t } = trace.outcome {
        return Err(Error::InnerDivergence { t });
    }
    let verdict = classify_trace(b, amplitude, &trace);
    Ok((verdict, trace))
}

fn classify_trace(b: f64, amplitude: f64, trace: &EvolveTrace) -> PerturbationVerdict {
    let linf_min = trace.linf.iter().cloned().fold(f64::INFINITY, f64::min);
    let linf_max = trace.linf.iter().cloned().fold(0.0f64, f64::max);
    let mean = trace.linf.iter().sum::<f64>() / trace.linf.len() as f64;
    let outcome = match trace.outcome {
        Outcome::BlowUp { .. } => PerturbationOutcome::BlowUp,
        _ => {
            if (linf_max - linf_min) / mean < OSCILLATION_RANGE_THRESHOLD {
                PerturbationOutcome::StableOscillation
            } else {
                PerturbationOutcome::TwoStateOscillation
            }
        }
    };
    PerturbationVerdict {
        b,
        amplitude,
        outcome,
        linf_min,
        linf_max,
        period_estimate: estimate_period(&trace.times, &trace.linf),
    }
}

/// Mean spacing of successive interior L∞ maxima above the series mean;
/// None when fewer than 3 maxima are seen.
fn estimate_period(times: &[f64], linf: &[f64]) -> Option<f64> {
    if linf.len() < 3 {
        return None;
    }
    let mean = linf.iter().sum::<f64>() / linf.len() as f64;
    let mut peaks = Vec::new();
    for i in 1..linf.len() - 1 {
        if linf[i] > linf[i - 1] && linf[i] >= linf[i + 1] && linf[i] > mean {
            peaks.push(times[i]);
        }
    }
    if peaks.len() < 3 {
        return None;
    }
    let total = peaks.last().unwrap() - peaks.first().unwrap();
    Some(total / (peaks.len() - 1) as f64)
}

/// Initial data for the critical-mass threshold check.
#[derive(Debug, Clone, Copy)]
pub enum CriticalData {
    /// u₀ = A Q_b
    ScaledGroundState { b: f64, amplitude: f64 },
    /// u₀ = √mass · χ̂₁ (first eigenfunction normalised to unit L² norm)
    NormalizedBump { mass: f64 },
}

#[derive(Debug, Clone)]
pub struct CriticalGateReport {
    pub initial_mass: f64,
    /// M(R): the explicit 1D value or the computed 2D whole-space mass.
    pub reference_mass: f64,
    pub outcome: Outcome,
    pub trace: EvolveTrace,
}

/// Evolve the given data in a mass-critical class and report the outcome
/// together with M(u₀) and the whole-space reference mass M(R).
pub fn critical_mass_gate(
    pc: &ProblemClass,
    data: CriticalData,
    t_end: f64,
) -> Result<CriticalGateReport> {
    if pc.classify() != Criticality::Critical {
        return Err(Error::InvalidParameter(
            "critical mass gate requires a mass-critical problem class".into(),
        ));
    }
    let u0 = match data {
        CriticalData::ScaledGroundState { b, amplitude } => {
            let profile = solve_auto(pc, b, crate::ground_state::DEFAULT_TOL)?;
            FieldState::from_profile(&profile, amplitude)
        }
        CriticalData::NormalizedBump { mass } => {
            if !(mass > 0.0) {
                return Err(Error::InvalidParameter("bump mass must be positive".into()));
            }
            let grid = crate::cheb::shared_grid(pc.default_degree(), pc.coord())?;
            let values = normalized_bump(pc, &grid, mass);
            FieldState::from_real_values(pc, &grid, &values)?
        }
    };
    let reference_mass = match pc.d {
        1 => soliton_mass_1d(pc.alpha),
        _ => whole_space_soliton_2d(pc.alpha)?.mass,
    };
    let (initial_mass, _, _) = observables(&u0);
    let mut cfg = EvolveConfig::new(EVOLVE_H, t_end);
    cfg.monitor_stride = 5;
    let trace = evolve(&u0, &cfg)?;
    Ok(CriticalGateReport {
        initial_mass,
        reference_mass,
        outcome: trace.outcome,
        trace,
    })
}

/// √mass · χ̂₁ nodal values on the full grid.
fn normalized_bump(pc: &ProblemClass, grid: &ChebGrid, mass: f64) -> Vec<f64> {
    let (norm, eval): (f64, Box<dyn Fn(f64) -> f64>) = match pc.d {
        1 => {
            let pair = eigenpair_1d(1);
            (pair.norm_l2, Box::new(move |x| pair.evaluate(x)))
        }
        _ => {
            let pair = eigenpair_2d_first();
            (pair.norm_l2, Box::new(move |s: f64| pair.evaluate(s.sqrt())))
        }
    };
    let amp = mass.sqrt() / norm;
    let mut values: Vec<f64> = grid.nodes.iter().map(|&c| amp * eval(c)).collect();
    values[0] = 0.0;
    if grid.coord == crate::cheb::Coord::X {
        values[grid.n] = 0.0;
    }
    values
}

/// Relative sup-norm differences ‖Q_b - b^(1/α) R(√b ·)‖_∞ / ‖target‖_∞
/// for each b, against the explicit (1D) or stored (2D) soliton.
pub fn convergence_large_b(pc: &ProblemClass, b_list: &[f64]) -> Result<Vec<(f64, f64)>> {
    if b_list.iter().any(|&b| b <= 0.0) {
        return Err(Error::InvalidParameter(
            "large-b convergence requires positive b".into(),
        ));
    }
    let mut rows = Vec::with_capacity(b_list.len());
    for &b in b_list {
        let profile = solve_auto(pc, b, 1e-11)?;
        let target = rescale_soliton_to_ball(pc, b, &profile.grid)?;
        let target_sup = target.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let diff = profile
            .values
            .iter()
            .zip(target.iter())
            .map(|(q, t)| (q - t).abs())
            .fold(0.0f64, f64::max);
        rows.push((b, diff / target_sup));
    }
    Ok(rows)
}

/// L² distances ‖Q_b/‖Q_b‖ - χ̂₁‖_{L²(B₁)} for b approaching -λ₁.
pub fn convergence_small_b(pc: &ProblemClass, b_list: &[f64]) -> Result<Vec<(f64, f64)>> {
    let lambda1 = pc.lambda1();
    if b_list
        .iter()
        .any(|&b| b <= -lambda1 || b >= -lambda1 + 1.0)
    {
        return Err(Error::InvalidParameter(format!(
            "small-b convergence requires b ∈ (-λ₁, -λ₁ + 1) with λ₁ = {lambda1:.6}"
        )));
    }
    let mut rows = Vec::with_capacity(b_list.len());
    for &b in b_list {
        let profile = solve_auto(pc, b, 1e-11)?;
        let grid = &profile.grid;
        let chi: Vec<f64> = match pc.d {
            1 => {
                let pair = eigenpair_1d(1);
                grid.nodes.iter().map(|&x| pair.evaluate(x)).collect()
            }
            _ => {
                let pair = eigenpair_2d_first();
                grid.nodes.iter().map(|&s| pair.evaluate(s.sqrt())).collect()
            }
        };
        let chi_norm = ball_l2_norm(grid, pc, &chi)?;
        let q_norm = ball_l2_norm(grid, pc, &profile.values)?;
        // the convergence holds up to phase; for real states that is a
        // sign, so align the eigenfunction with the (positive) profile
        let overlap: f64 = profile
            .values
            .iter()
            .zip(chi.iter())
            .zip(grid.weights.iter())
            .map(|((q, c), w)| w * q * c)
            .sum();
        let sign = if overlap < 0.0 { -1.0 } else { 1.0 };
        let diff: Vec<f64> = profile
            .values
            .iter()
            .zip(chi.iter())
            .map(|(q, c)| q / q_norm - sign * c / chi_norm)
            .collect();
        rows.push((b, ball_l2_norm(grid, pc, &diff)?));
    }
    Ok(rows)
}

fn ball_l2_norm(grid: &ChebGrid, pc: &ProblemClass, values: &[f64]) -> Result<f64> {
    let measure = match pc.d {
        1 => 1.0,
        _ => std::f64::consts::PI,
    };
    let sq = crate::cheb::integrate(
        &values.iter().map(|v| v * v).collect::<Vec<_>>(),
        grid,
    )?;
    Ok((measure * sq).sqrt())
}

/// Evolve u₀ = A Q_b for a small amplitude A and return the trace; the
/// interesting observation is that L∞ stays bounded away from both zero
/// and blow-up (no dispersion, no growth).
pub fn soliton_resolution_demo(
    pc: &ProblemClass,
    b: f64,
    amplitude: f64,
    t_end: f64,
) -> Result<EvolveTrace> {
    if amplitude == 0.0 {
        let grid = crate::cheb::shared_grid(pc.default_degree(), pc.coord())?;
        let zero = FieldState::zero(pc, &grid);
        let mut cfg = EvolveConfig::new(1e-2, t_end);
        cfg.monitor_stride = 5;
        return evolve(&zero, &cfg);
    }
    let profile = solve_auto(pc, b, crate::ground_state::DEFAULT_TOL)?;
    let u0 = FieldState::from_profile(&profile, amplitude);
    let mut cfg = EvolveConfig::new(5e-4, t_end);
    cfg.monitor_stride = 5;
    evolve(&u0, &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fd_delta_scales_with_b() {
        assert_eq!(fd_delta(0.5), 1e-3);
        assert_eq!(fd_delta(-100.0), 0.1);
    }

    #[test]
    fn period_detection_on_synthetic_series() {
        let times: Vec<f64> = (0..200).map(|i| i as f64 * 0.01).collect();
        let linf: Vec<f64> = times
            .iter()
            .map(|t| 1.0 + 0.3 * (2.0 * std::f64::consts::PI * t / 0.5).cos())
            .collect();
        let period = estimate_period(&times, &linf).expect("peaks present");
        assert!((period - 0.5).abs() < 0.02, "period {period}");
        assert!(estimate_period(&times[..3], &linf[..3]).is_none());
    }

    #[test]
    fn sweep_rejects_unsorted_grid() {
        let pc = ProblemClass::new(1, 2.0).unwrap();
        assert!(sweep(&pc, &[1.0, 0.5]).is_err());
        assert!(sweep(&pc, &[-10.0, 1.0]).is_err());
        assert!(sweep(&pc, &[]).unwrap().is_empty());
    }

    #[test]
    fn branch_point_requires_supercritical() {
        let pc = ProblemClass::new(1, 2.0).unwrap();
        assert!(find_branch_point(&pc, 0.0, 10.0).is_err());
    }

    #[test]
    fn critical_gate_requires_critical() {
        let pc = ProblemClass::new(1, 2.0).unwrap();
        assert!(critical_mass_gate(
            &pc,
            CriticalData::ScaledGroundState {
                b: 1.0,
                amplitude: 0.5
            },
            0.1
        )
        .is_err());
    }
}
