//! Ground-state solver behaviour across the continuation and rescaling
//! examples that fall outside the acceptance battery.

use nlsball::cheb::{shared_grid, Coord};
use nlsball::error::Error;
use nlsball::evolve::{observables, FieldState};
use nlsball::experiments::convergence_small_b;
use nlsball::ground_state::{
    ball_quantities, continue_in_b, default_seed, pokhozhaev_report, rescale_soliton_to_ball,
    solve, solve_auto, whole_space_soliton_2d,
};
use nlsball::reference::{soliton_1d, ProblemClass};

#[test]
fn subcritical_branch_mass_grows() {
    let pc = ProblemClass::new(1, 2.0).unwrap();
    let profiles = continue_in_b(&pc, 1.0, 100.0, 1.0, 1e-10).unwrap();
    assert_eq!(profiles.len(), 100);
    let masses: Vec<f64> = profiles
        .iter()
        .map(|p| ball_quantities(&p.grid, &pc, &p.values).unwrap().mass)
        .collect();
    assert!(masses.windows(2).all(|w| w[1] > w[0]), "M(b) not increasing");
}

#[test]
fn supercritical_branch_mass_rises_then_falls() {
    let pc = ProblemClass::new(1, 6.0).unwrap();
    let profiles = continue_in_b(&pc, 0.5, 10.0, 0.1, 1e-10).unwrap();
    let masses: Vec<f64> = profiles
        .iter()
        .map(|p| ball_quantities(&p.grid, &pc, &p.values).unwrap().mass)
        .collect();
    let i_max = masses
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    assert!(i_max > 0 && i_max < masses.len() - 1, "no interior maximum");
    assert!(masses[..=i_max].windows(2).all(|w| w[1] > w[0]));
    assert!(masses[i_max..].windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn degenerate_continuation_equals_single_solve() {
    let pc = ProblemClass::new(1, 2.0).unwrap();
    let profiles = continue_in_b(&pc, 2.0, 2.0, 0.5, 1e-10).unwrap();
    assert_eq!(profiles.len(), 1);
    let direct = solve_auto(&pc, 2.0, 1e-10).unwrap();
    for (a, b) in profiles[0].values.iter().zip(direct.values.iter()) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn small_amplitude_profile_close_to_eigenfunction() {
    let pc = ProblemClass::new(1, 2.0).unwrap();
    let b = -pc.lambda1() + 0.01;
    let rows = convergence_small_b(&pc, &[b]).unwrap();
    assert!(rows[0].1 < 5e-2, "L² distance {} at b = {b}", rows[0].1);
}

#[test]
fn energy_two_ways_agree() {
    // quadrature energy vs the boundary/mass identity form
    let pc = ProblemClass::new(1, 4.0).unwrap();
    let p = solve_auto(&pc, 10.0, 1e-11).unwrap();
    let rep = pokhozhaev_report(&p);
    assert!(
        rep.e2.abs() / rep.energy.abs() <= 1e-8,
        "relative identity defect {:.3e}",
        rep.e2 / rep.energy
    );
}

#[test]
fn critical_energy_uses_the_boundary_measure() {
    // at criticality E = (σ(B₁)/4) |∂_r Q(1)|²: 1/2 |Q'(1)|² in 1D and
    // (π/2) |∂_r Q(1)|² in 2D
    for (d, alpha, b) in [(1u8, 4.0, 10.0), (2u8, 2.0, 1.0)] {
        let pc = ProblemClass::new(d, alpha).unwrap();
        let p = solve_auto(&pc, b, 1e-10).unwrap();
        let rep = pokhozhaev_report(&p);
        let bd2 = rep.boundary_deriv * rep.boundary_deriv;
        let with_sigma = pc.boundary_measure() / 4.0 * bd2;
        let paper_constant = 0.25 * bd2;
        assert!(
            (rep.energy - with_sigma).abs() / rep.energy.abs() < 1e-7,
            "d={d}: E = {} vs σ/4 form {}",
            rep.energy,
            with_sigma
        );
        assert!(
            (rep.energy - paper_constant).abs() / rep.energy.abs() > 0.1,
            "d={d}: the measure-free 1/4 form should not match"
        );
    }
}

#[test]
fn whole_space_soliton_shape() {
    let r = whole_space_soliton_2d(2.0).unwrap();
    assert!(r.peak > 0.0);
    assert!((11.5..=12.0).contains(&r.mass), "mass {}", r.mass);
    // radially decreasing
    let mut prev = r.eval_radial(0.0);
    assert!(prev > 0.0);
    for i in 1..=100 {
        let y = 6.0 * i as f64 / 100.0;
        let v = r.eval_radial(y);
        assert!(v <= prev + 1e-12, "not decreasing at y = {y}");
        prev = v;
    }
}

#[test]
fn rescaled_soliton_values() {
    let pc = ProblemClass::new(1, 2.0).unwrap();
    let grid = shared_grid(64, Coord::X).unwrap();

    let v1 = rescale_soliton_to_ball(&pc, 1.0, &grid).unwrap();
    // x = 0 is node n/2 for even n
    assert!((v1[32] - 2f64.sqrt()).abs() < 1e-12);

    let v100 = rescale_soliton_to_ball(&pc, 100.0, &grid).unwrap();
    assert!((v100[32] - 10.0 * 2f64.sqrt()).abs() < 1e-10);
    assert!((v100[32] - 100f64.powf(0.5) * soliton_1d(2.0, 0.0)).abs() < 1e-10);

    assert!(matches!(
        rescale_soliton_to_ball(&pc, 0.0, &grid),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn rescaling_error_decreases_along_the_branch() {
    // ‖Q_b - b^(1/α) R(√b ·)‖∞ decreasing over b ∈ {10, 25, 50, 100}
    let pc = ProblemClass::new(1, 2.0).unwrap();
    let rows = nlsball::experiments::convergence_large_b(&pc, &[10.0, 25.0, 50.0, 100.0]).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].1 < w[0].1, "error not decreasing: {rows:?}");
    }
}

#[test]
fn critical_mass_stays_below_reference() {
    let pc = ProblemClass::new(1, 4.0).unwrap();
    let reference = nlsball::reference::soliton_mass_1d(4.0);
    for b in [0.0, 1.0, 10.0, 40.0] {
        let p = solve_auto(&pc, b, 1e-10).unwrap();
        let m = ball_quantities(&p.grid, &pc, &p.values).unwrap().mass;
        assert!(m < reference, "M(Q_{b}) = {m} >= M(R) = {reference}");
    }
    let pc2 = ProblemClass::new(2, 2.0).unwrap();
    let reference2 = whole_space_soliton_2d(2.0).unwrap().mass;
    for b in [0.0, 10.0, 50.0] {
        let p = solve_auto(&pc2, b, 1e-10).unwrap();
        let m = ball_quantities(&p.grid, &pc2, &p.values).unwrap().mass;
        assert!(m < reference2, "M(Q_{b}) = {m} >= M(R) = {reference2}");
    }
}

#[test]
fn observables_match_pokhozhaev_energy_2d() {
    let pc = ProblemClass::new(2, 4.0).unwrap();
    let p = solve_auto(&pc, 1.0, 1e-10).unwrap();
    let rep = pokhozhaev_report(&p);
    let state = FieldState::from_profile(&p, 1.0);
    let (mass, energy, linf) = observables(&state);
    assert!((mass - rep.mass).abs() / rep.mass < 1e-12);
    assert!((energy - rep.energy).abs() / rep.energy.abs() < 1e-8);
    assert!((linf - p.linf()).abs() < 1e-12);
}

#[test]
fn solver_rejects_the_zero_solution() {
    // a zero seed converges to the trivial solution, which the positivity
    // gate must refuse
    let pc = ProblemClass::new(1, 2.0).unwrap();
    let grid = shared_grid(32, Coord::X).unwrap();
    let seed = vec![0.0; 33];
    match solve(&pc, 1.0, &seed, &grid, 1e-10) {
        Err(Error::SignChange { .. }) => {}
        other => panic!("expected SignChange, got {other:?}"),
    }
}

#[test]
fn profile_validate_accepts_solver_output() {
    let pc = ProblemClass::new(2, 2.0).unwrap();
    let grid = shared_grid(160, Coord::S).unwrap();
    let seed = default_seed(&pc, 1.0, &grid).unwrap();
    let p = solve(&pc, 1.0, &seed, &grid, 1e-10).unwrap();
    p.validate().unwrap();
    assert!(p.residual_norm <= 1e-10);
    assert!(p.tail_coeff <= 1e-12 * p.linf());
}
