//! Scratch probe of the perturbation dynamics battery.

use nlsball::experiments::{
    critical_mass_gate, perturb_and_classify, soliton_resolution_demo, CriticalData,
};
use nlsball::evolve::Outcome;
use nlsball::reference::ProblemClass;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "septic".into());
    match which.as_str() {
        "septic" => {
            // 1D alpha=6: stable branch b=0, unstable b=5
            for (b, a, t) in [
                (0.0, 0.99, 1.0),
                (0.0, 1.01, 1.0),
                (5.0, 0.99, 1.0),
                (5.0, 1.01, 1.0),
            ] {
                run(1, 6.0, b, a, t);
            }
        }
        "nonic" => run(1, 8.0, 5.0, 0.99, 1.0),
        "quintic2d" => {
            for (b, a, t) in [
                (-2.5, 0.99, 1.0),
                (-2.5, 1.01, 1.0),
                (5.0, 0.99, 1.0),
                (5.0, 1.01, 1.0),
            ] {
                run(2, 4.0, b, a, t);
            }
        }
        "gate" => {
            let pc1 = ProblemClass::new(1, 4.0).unwrap();
            let t0 = std::time::Instant::now();
            let r = critical_mass_gate(
                &pc1,
                CriticalData::NormalizedBump {
                    mass: 1.05f64.powi(2) * nlsball::reference::soliton_mass_1d(4.0),
                },
                2.0,
            );
            report_gate("1D bump above M(R)", r, t0);

            let t0 = std::time::Instant::now();
            let r = critical_mass_gate(
                &pc1,
                CriticalData::ScaledGroundState { b: 1.0, amplitude: 0.5 },
                1.0,
            );
            report_gate("1D 0.5 Q1", r, t0);

            let pc2 = ProblemClass::new(2, 2.0).unwrap();
            let t0 = std::time::Instant::now();
            let r = critical_mass_gate(&pc2, CriticalData::NormalizedBump { mass: 13.0 }, 2.0);
            report_gate("2D bump mass 13", r, t0);
        }
        "resolve" => {
            let pc = ProblemClass::new(1, 4.0).unwrap();
            let t0 = std::time::Instant::now();
            match soliton_resolution_demo(&pc, -2.0, 0.01, 5.0) {
                Ok(trace) => {
                    let l0 = trace.linf[0];
                    let lmin = trace.linf.iter().cloned().fold(f64::INFINITY, f64::min);
                    let lmax = trace.linf.iter().cloned().fold(0.0f64, f64::max);
                    let m0 = trace.mass[0];
                    let mdrift = trace
                        .mass
                        .iter()
                        .map(|m| (m - m0).abs() / m0)
                        .fold(0.0f64, f64::max);
                    println!(
                        "resolve demo: outcome={:?} linf0={l0:.4e} range=[{:.3}, {:.3}]x linf0, mass drift {mdrift:.2e} ({:.1?})",
                        trace.outcome,
                        lmin / l0,
                        lmax / l0,
                        t0.elapsed()
                    );
                }
                Err(e) => println!("resolve demo failed: {e}"),
            }
        }
        _ => eprintln!("unknown probe"),
    }
}

fn run(d: u8, alpha: f64, b: f64, a: f64, t_end: f64) {
    let pc = ProblemClass::new(d, alpha).unwrap();
    let t0 = std::time::Instant::now();
    match perturb_and_classify(&pc, b, a, t_end) {
        Ok((v, trace)) => println!(
            "d={d} alpha={alpha} b={b} A={a}: {:?} linf=[{:.4}, {:.4}] period={:?} outcome_t={:?} ({:.1?})",
            v.outcome,
            v.linf_min,
            v.linf_max,
            v.period_estimate,
            trace.outcome,
            t0.elapsed()
        ),
        Err(e) => println!("d={d} alpha={alpha} b={b} A={a}: ERROR {e}"),
    }
}

fn report_gate(
    label: &str,
    r: nlsball::Result<nlsball::experiments::CriticalGateReport>,
    t0: std::time::Instant,
) {
    match r {
        Ok(rep) => println!(
            "{label}: M(u0)={:.4} M(R)={:.4} outcome={:?} ({:.1?})",
            rep.initial_mass,
            rep.reference_mass,
            rep.outcome,
            t0.elapsed()
        ),
        Err(e) => println!("{label}: ERROR {e}"),
    }
    let _ = Outcome::Completed;
}
