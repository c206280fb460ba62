//! Profile persistence and CSV emission.
//!
//! Profiles are stored as a versioned text header followed by one
//! full-precision decimal value per line; 17 significant digits make the
//! write/read round trip bit-exact for f64.  CSV files carry a header row
//! and no timestamps, so identical runs produce byte-identical output; a
//! sidecar `<file>.meta.txt` records the run configuration.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::cheb::{cheb_coeffs, shared_grid, Coord};
use crate::error::{Error, Result};
use crate::evolve::EvolveTrace;
use crate::experiments::SweepRecord;
use crate::ground_state::Profile;
use crate::reference::ProblemClass;

pub const PROFILE_FORMAT_VERSION: &str = "nlsball-profile-v1";

/// 17 significant digits: lossless decimal round trip for f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_err(path: &Path, msg: impl Into<String>) -> Error {
    Error::FileFormat {
        path: path.display().to_string(),
        msg: msg.into(),
    }
}

/// Write a profile in the `nlsball-profile-v1` text format.
pub fn write_profile(p: &Profile, path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str(PROFILE_FORMAT_VERSION);
    out.push('\n');
    let _ = writeln!(out, "d {}", p.pc.d);
    let _ = writeln!(out, "alpha {}", fmt_f64(p.pc.alpha));
    let _ = writeln!(out, "b {}", fmt_f64(p.b));
    let _ = writeln!(out, "n {}", p.grid.n);
    let _ = writeln!(out, "coord {}", p.grid.coord);
    let _ = writeln!(out, "residual_norm {}", fmt_f64(p.residual_norm));
    for v in &p.values {
        out.push_str(&fmt_f64(*v));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

fn header_field<'a>(
    path: &Path,
    line: Option<&'a str>,
    line_no: usize,
    key: &str,
) -> Result<&'a str> {
    let line = line.ok_or_else(|| format_err(path, format!("line {line_no}: missing `{key}`")))?;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| format_err(path, format!("line {line_no}: expected `{key} <value>`")))
}

/// Read a profile back, re-validating the boundary zeros and interior
/// positivity.  The spectral tail is recomputed from the stored values.
pub fn read_profile(path: &Path) -> Result<Profile> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();

    let version = lines
        .next()
        .ok_or_else(|| format_err(path, "empty file"))?;
    if version != PROFILE_FORMAT_VERSION {
        return Err(format_err(
            path,
            format!("unsupported format version `{version}`, expected `{PROFILE_FORMAT_VERSION}`"),
        ));
    }

    let d_str = header_field(path, lines.next(), 2, "d")?;
    let d: u8 = d_str
        .parse()
        .map_err(|_| format_err(path, format!("line 2: bad dimension `{d_str}`")))?;
    let alpha_str = header_field(path, lines.next(), 3, "alpha")?;
    let alpha: f64 = alpha_str
        .parse()
        .map_err(|_| format_err(path, format!("line 3: bad alpha `{alpha_str}`")))?;
    let pc = ProblemClass::new(d, alpha)
        .map_err(|e| format_err(path, format!("unsupported problem class: {e}")))?;

    let b_str = header_field(path, lines.next(), 4, "b")?;
    let b: f64 = b_str
        .parse()
        .map_err(|_| format_err(path, format!("line 4: bad b `{b_str}`")))?;
    let n_str = header_field(path, lines.next(), 5, "n")?;
    let n: usize = n_str
        .parse()
        .map_err(|_| format_err(path, format!("line 5: bad degree `{n_str}`")))?;
    let coord_str = header_field(path, lines.next(), 6, "coord")?;
    let coord = match coord_str {
        "X" => Coord::X,
        "S" => Coord::S,
        other => return Err(format_err(path, format!("line 6: bad coord `{other}`"))),
    };
    if coord != pc.coord() {
        return Err(format_err(
            path,
            format!("coord {coord_str} inconsistent with dimension {d}"),
        ));
    }
    let res_str = header_field(path, lines.next(), 7, "residual_norm")?;
    let residual_norm: f64 = res_str
        .parse()
        .map_err(|_| format_err(path, format!("line 7: bad residual_norm `{res_str}`")))?;

    let expected = n + 1;
    let mut values = Vec::with_capacity(expected);
    for (offset, line) in lines.enumerate() {
        let line_no = 8 + offset;
        if values.len() == expected {
            return Err(format_err(
                path,
                format!("line {line_no}: trailing data after {expected} values"),
            ));
        }
        let v: f64 = line.trim().parse().map_err(|_| {
            format_err(path, format!("line {line_no}: bad value `{}`", line.trim()))
        })?;
        if !v.is_finite() {
            return Err(format_err(path, format!("line {line_no}: non-finite value")));
        }
        values.push(v);
    }
    if values.len() != expected {
        return Err(format_err(
            path,
            format!("expected {expected} values (n + 1), found {}", values.len()),
        ));
    }

    let grid = shared_grid(n, coord)?;
    let tail_coeff = cheb_coeffs(&values, &grid)?.tail_max();
    let profile = Profile {
        pc,
        b,
        grid: Arc::clone(&grid),
        values,
        residual_norm,
        iterations: 0,
        tail_coeff,
        residual_history: Vec::new(),
    };

    // re-validate boundary zeros and positivity
    let boundary_ok = match coord {
        Coord::X => profile.values[0] == 0.0 && profile.values[n] == 0.0,
        Coord::S => profile.values[0] == 0.0,
    };
    if !boundary_ok {
        return Err(format_err(path, "boundary values are not exactly zero"));
    }
    if crate::operator::interior_range(&grid).any(|i| profile.values[i] <= 0.0) {
        return Err(format_err(path, "interior values are not strictly positive"));
    }
    Ok(profile)
}

/// Write a CSV file: header row, then one comma-joined row per record.
/// Floats are rendered by the caller (use [`fmt_f64`]); nothing else is
/// quoted or escaped.
pub fn emit_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Write the sidecar `<data>.meta.txt` recording the run configuration
/// and code version.
pub fn write_sidecar(data_path: &Path, config_text: &str, version: &str) -> Result<()> {
    let mut path = data_path.as_os_str().to_owned();
    path.push(".meta.txt");
    let path = std::path::PathBuf::from(path);
    let body = format!("version {version}\n{config_text}");
    fs::write(&path, body).map_err(|e| Error::io(&path, e))
}

pub const SWEEP_HEADER: [&str; 8] = [
    "b",
    "mass",
    "energy",
    "boundary_deriv",
    "e1",
    "e2",
    "dmass_db",
    "em_residual",
];

pub fn sweep_rows(records: &[SweepRecord]) -> Vec<Vec<String>> {
    records
        .iter()
        .map(|r| {
            vec![
                fmt_f64(r.b),
                fmt_f64(r.mass),
                fmt_f64(r.energy),
                fmt_f64(r.boundary_deriv),
                fmt_f64(r.e1),
                fmt_f64(r.e2),
                fmt_f64(r.dmass_db),
                fmt_f64(r.em_residual),
            ]
        })
        .collect()
}

pub const TRACE_HEADER: [&str; 5] = ["t", "mass", "energy", "linf", "drift"];

pub fn trace_rows(trace: &EvolveTrace) -> Vec<Vec<String>> {
    (0..trace.times.len())
        .map(|i| {
            vec![
                fmt_f64(trace.times[i]),
                fmt_f64(trace.mass[i]),
                fmt_f64(trace.energy[i]),
                fmt_f64(trace.linf[i]),
                fmt_f64(trace.drift[i]),
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::make_grid;
    use crate::evolve::Outcome;

    fn bump_profile(n: usize) -> Profile {
        let grid = Arc::new(make_grid(n, Coord::X).unwrap());
        let values: Vec<f64> = grid
            .nodes
            .iter()
            .map(|&x| {
                if x.abs() >= 1.0 {
                    0.0
                } else {
                    (std::f64::consts::PI * (x + 1.0) / 2.0).sin() * 1.2345678901234567
                }
            })
            .collect();
        Profile {
            pc: ProblemClass::new(1, 2.0).unwrap(),
            b: 1.25,
            grid,
            values,
            residual_norm: 3.5e-12,
            iterations: 7,
            tail_coeff: 0.0,
            residual_history: vec![1.0, 1e-6, 3.5e-12],
        }
    }

    #[test]
    fn profile_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q.profile");
        let p = bump_profile(16);
        write_profile(&p, &path).unwrap();
        let q = read_profile(&path).unwrap();
        assert_eq!(p.values, q.values);
        assert_eq!(p.b, q.b);
        assert_eq!(p.pc, q.pc);
        assert_eq!(p.grid.n, q.grid.n);
        assert_eq!(p.residual_norm, q.residual_norm);
    }

    #[test]
    fn rejects_unsupported_dimension() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.profile");
        let text = format!("{PROFILE_FORMAT_VERSION}\nd 3\nalpha 2.0\nb 1.0\nn 8\ncoord X\nresidual_norm 0.0\n");
        fs::write(&path, text).unwrap();
        let err = read_profile(&path).unwrap_err();
        assert!(err.to_string().contains("problem class"), "{err}");
    }

    #[test]
    fn rejects_version_mismatch_and_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v0.profile");
        fs::write(&path, "nlsball-profile-v0\n").unwrap();
        assert!(read_profile(&path).unwrap_err().to_string().contains("version"));

        let p = bump_profile(16);
        let full_path = dir.path().join("full.profile");
        write_profile(&p, &full_path).unwrap();
        let text = fs::read_to_string(&full_path).unwrap();
        let truncated: Vec<&str> = text.lines().take(12).collect();
        let trunc_path = dir.path().join("trunc.profile");
        fs::write(&trunc_path, truncated.join("\n")).unwrap();
        let err = read_profile(&trunc_path).unwrap_err();
        assert!(err.to_string().contains("expected 17 values"), "{err}");
    }

    #[test]
    fn csv_and_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let trace = EvolveTrace {
            times: vec![0.0, 0.5],
            mass: vec![1.0, 1.0],
            energy: vec![-0.25, -0.25],
            linf: vec![1.4, 1.39],
            drift: vec![0.0, 1e-9],
            outcome: Outcome::Completed,
            snapshots: None,
        };
        emit_csv(&path, &TRACE_HEADER, &trace_rows(&trace)).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("t,mass,energy,linf,drift\n"));
        assert_eq!(text.lines().count(), 3);

        // header-only file for an empty record list
        let empty = dir.path().join("empty.csv");
        emit_csv(&empty, &["a", "b"], &[]).unwrap();
        assert_eq!(fs::read_to_string(&empty).unwrap(), "a,b\n");

        write_sidecar(&path, "command = evolve\n", "0.1.0").unwrap();
        let meta = fs::read_to_string(dir.path().join("out.csv.meta.txt")).unwrap();
        assert!(meta.contains("version 0.1.0"));
        assert!(meta.contains("command = evolve"));

        // determinism: identical emission twice is byte-identical
        let again = dir.path().join("out2.csv");
        emit_csv(&again, &TRACE_HEADER, &trace_rows(&trace)).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), fs::read_to_string(&again).unwrap());
    }
}
