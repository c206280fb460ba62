//! Scratch numerical probe (not part of the deliverable surface).

use nlsball::cheb::shared_grid;
use nlsball::experiments;
use nlsball::ground_state::{
    ball_quantities, default_seed, pokhozhaev_report, solve, solve_auto, whole_space_soliton_2d_at,
};
use nlsball::reference::ProblemClass;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "pokh".into());
    match which.as_str() {
        "pokh" => pokh(),
        "mass1d" => mass1d(),
        "whole" => whole(),
        "em" => em(),
        "branch" => branch(),
        "largeb" => largeb(),
        _ => eprintln!("unknown probe {which}"),
    }
}

fn pokh() {
    for alpha in [2.0, 4.0] {
        let pc = ProblemClass::new(2, alpha).unwrap();
        let grid = shared_grid(160, pc.coord()).unwrap();
        let seed = default_seed(&pc, 1.0, &grid).unwrap();
        let p = solve(&pc, 1.0, &seed, &grid, 1e-9).unwrap();
        let rep = pokhozhaev_report(&p);
        println!(
            "2D alpha={alpha} b=1: e1={:.3e} e2={:.3e} mass={:.8} iters={} res={:.2e} tail={:.2e}",
            rep.e1, rep.e2, rep.mass, p.iterations, p.residual_norm, p.tail_coeff
        );
        // critical-energy forms
        let bd2 = rep.boundary_deriv * rep.boundary_deriv;
        println!(
            "   E={:.10e}  (sigma/4)|dr|^2={:.10e}  (1/4)|dr|^2={:.10e}",
            rep.energy,
            pc.boundary_measure() / 4.0 * bd2,
            0.25 * bd2
        );
    }
}

fn mass1d() {
    let pc = ProblemClass::new(1, 2.0).unwrap();
    let p = solve_auto(&pc, 1.0, 1e-11).unwrap();
    let q = ball_quantities(&p.grid, &pc, &p.values).unwrap();
    println!("1D alpha=2 b=1: mass={:.12} peak={:.8} iters={}", q.mass, p.linf(), p.iterations);
    let rep = pokhozhaev_report(&p);
    println!("  e1={:.3e} e2={:.3e} E={:.10}", rep.e1, rep.e2, rep.energy);
    // critical 1D energy forms
    let pc4 = ProblemClass::new(1, 4.0).unwrap();
    let p4 = solve_auto(&pc4, 10.0, 1e-11).unwrap();
    let rep4 = pokhozhaev_report(&p4);
    let bd2 = rep4.boundary_deriv * rep4.boundary_deriv;
    println!(
        "1D alpha=4 b=10: E={:.10e} (sigma/4)=0.5|dr|^2={:.10e} (1/4)|dr|^2={:.10e} e2={:.2e}",
        rep4.energy, 0.5 * bd2, 0.25 * bd2, rep4.e2
    );
}

fn whole() {
    for big in [400.0, 900.0] {
        let t0 = std::time::Instant::now();
        let r = whole_space_soliton_2d_at(2.0, big).unwrap();
        println!(
            "2D whole-space alpha=2 B={big}: mass={:.8} peak={:.8} ({:.1?})",
            r.mass,
            r.peak,
            t0.elapsed()
        );
    }
}

fn em() {
    for alpha in [2.0, 4.0] {
        let pc = ProblemClass::new(1, alpha).unwrap();
        for b in [0.5, 1.0, 5.0, 20.0, 60.0, 100.0] {
            match experiments::em_residual_study(&pc, b, &[1e-2, 1e-3, 1e-4]) {
                Ok(ems) => println!(
                    "alpha={alpha} b={b}: em(1e-2)={:.3e} em(1e-3)={:.3e} em(1e-4)={:.3e}",
                    ems[0], ems[1], ems[2]
                ),
                Err(e) => println!("alpha={alpha} b={b}: {e}"),
            }
        }
    }
}

fn branch() {
    for (d, alpha, lo, hi) in [(1u8, 6.0, 0.5, 10.0), (1, 8.0, 0.0, 5.0), (2, 4.0, -5.0, 5.0)] {
        let pc = ProblemClass::new(d, alpha).unwrap();
        let t0 = std::time::Instant::now();
        match experiments::find_branch_point(&pc, lo, hi) {
            Ok(r) => println!(
                "d={d} alpha={alpha}: b*={:.5} M*={:.6} width={:.2e} ({:.1?})",
                r.b_star,
                r.mass_at_star,
                r.refinement_width,
                t0.elapsed()
            ),
            Err(e) => println!("d={d} alpha={alpha}: {e}"),
        }
    }
}

fn largeb() {
    for d in [1u8, 2u8] {
        let pc = ProblemClass::new(d, 2.0).unwrap();
        let t0 = std::time::Instant::now();
        match experiments::convergence_large_b(&pc, &[10.0, 25.0, 50.0, 100.0]) {
            Ok(rows) => {
                for (b, err) in rows {
                    println!("d={d} b={b}: rel sup err = {err:.4e}");
                }
                println!("  ({:.1?})", t0.elapsed());
            }
            Err(e) => println!("d={d}: {e}"),
        }
    }
}
