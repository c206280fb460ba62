//! Scratch probe of the Newton residual floor per grid size.

use nlsball::cheb::shared_grid;
use nlsball::ground_state::{default_seed, solve, solve_warm};
use nlsball::reference::ProblemClass;

fn main() {
    for (d, n, b) in [
        (1u8, 128usize, 1.0),
        (1, 256, 1.0),
        (1, 512, 1.0),
        (2, 160, 1.0),
        (2, 320, 1.0),
        (2, 512, 1.0),
        (2, 512, 400.0),
        (1, 512, 100.0),
    ] {
        let pc = ProblemClass::new(d, 2.0).unwrap();
        let grid = shared_grid(n, pc.coord()).unwrap();
        // continue from b=1 at this resolution to the target b
        let seed = default_seed(&pc, 1.0, &grid).unwrap();
        let mut p = match solve(&pc, 1.0, &seed, &grid, 1e-8) {
            Ok(p) => p,
            Err(e) => {
                println!("d={d} N={n}: initial solve failed: {e}");
                continue;
            }
        };
        let mut cur = 1.0f64;
        let mut failed = false;
        while cur < b {
            cur = (cur * 2.0).min(b);
            match solve_warm(&pc, cur, &p, 1e-8) {
                Ok(q) => p = q,
                Err(e) => {
                    println!("d={d} N={n} b={cur}: continuation failed: {e}");
                    failed = true;
                    break;
                }
            }
        }
        if failed {
            continue;
        }
        // now push to the floor: ask for an impossible tolerance and watch
        let floor = match solve_warm(&pc, b, &p, 1e-16) {
            Ok(q) => q.residual_norm,
            Err(nlsball::Error::NonConvergence { residual, .. }) => residual,
            Err(e) => {
                println!("d={d} N={n} b={b}: {e}");
                continue;
            }
        };
        let linf = p.linf();
        let eps = f64::EPSILON;
        let c = floor / (eps * (n * n) as f64 * linf.max(1.0));
        println!(
            "d={d} N={n} b={b}: floor={floor:.3e} linf={linf:.3} c=floor/(eps N^2 max(1,linf))={c:.2}"
        );
    }
}
