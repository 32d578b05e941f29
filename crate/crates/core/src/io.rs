//! Plain CSV emission for fields, trajectories, event logs and reports.
//!
//! Floats are written in scientific notation with 17 significant digits, so a file read
//! back reproduces every value exactly and two identical runs give identical bytes.

use crate::bath::{CollisionRecord, EnvironmentEstimate};
use crate::bohmian::{DensityMatrix1D, TrajectoryHistory};
use crate::classical::SdePath;
use crate::com::AmplificationRow;
use crate::grw::CollapseEvent;
use crate::numerics::ComplexField1D;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

#[inline]
fn f(v: f64) -> String {
    format!("{v:.16e}")
}

/// `x,re,im,density`, one row per grid point.
pub fn write_field<W: Write>(mut w: W, psi: &ComplexField1D) -> std::io::Result<()> {
    writeln!(w, "x,re,im,density")?;
    for (i, a) in psi.values.iter().enumerate() {
        writeln!(w, "{},{},{},{}", f(psi.grid.x(i)), f(a.re), f(a.im), f(a.norm_sqr()))?;
    }
    Ok(())
}

/// `t,trajectory_id,x`, one row per trajectory per sampled instant.
pub fn write_trajectories<W: Write>(mut w: W, history: &TrajectoryHistory) -> std::io::Result<()> {
    writeln!(w, "t,trajectory_id,x")?;
    for (t, row) in history.times.iter().zip(&history.positions) {
        for (id, x) in row.iter().enumerate() {
            writeln!(w, "{},{id},{}", f(*t), f(*x))?;
        }
    }
    Ok(())
}

/// `t,z,pre_norm`.
pub fn write_events<W: Write>(mut w: W, events: &[CollapseEvent]) -> std::io::Result<()> {
    writeln!(w, "t,z,pre_norm")?;
    for e in events {
        writeln!(w, "{},{},{}", f(e.time), f(e.center), f(e.pre_norm))?;
    }
    Ok(())
}

/// `x,x_prime,re,im`, row-major.
pub fn write_density_matrix<W: Write>(mut w: W, rho: &DensityMatrix1D) -> std::io::Result<()> {
    writeln!(w, "x,x_prime,re,im")?;
    let n = rho.dim();
    for i in 0..n {
        for j in 0..n {
            let v = rho.at(i, j);
            writeln!(w, "{},{},{},{}", f(rho.grid.x(i)), f(rho.grid.x(j)), f(v.re), f(v.im))?;
        }
    }
    Ok(())
}

/// `t,k,Y0,Z`.
pub fn write_collisions<W: Write>(mut w: W, records: &[CollisionRecord]) -> std::io::Result<()> {
    writeln!(w, "t,k,Y0,Z")?;
    for r in records {
        writeln!(w, "{},{},{},{}", f(r.time), r.k, f(r.y0), f(r.z))?;
    }
    Ok(())
}

/// `N,fitted_rate,stderr`.
pub fn write_amplification<W: Write>(mut w: W, rows: &[AmplificationRow]) -> std::io::Result<()> {
    writeln!(w, "N,fitted_rate,stderr")?;
    for r in rows {
        writeln!(w, "{},{},{}", r.n, f(r.fitted_rate), f(r.stderr))?;
    }
    Ok(())
}

/// `t,x_bar,v_bar,W`.
pub fn write_path<W: Write>(mut w: W, path: &SdePath) -> std::io::Result<()> {
    writeln!(w, "t,x_bar,v_bar,W")?;
    for n in 0..path.len() {
        writeln!(w, "{},{},{},{}", f(path.times[n]), f(path.x_bar[n]), f(path.v_bar[n]), f(path.w[n]))?;
    }
    Ok(())
}

/// Named columns of equal length.
pub fn write_columns<W: Write>(mut w: W, columns: &[(&str, &[f64])]) -> std::io::Result<()> {
    let names: Vec<&str> = columns.iter().map(|c| c.0).collect();
    writeln!(w, "{}", names.join(","))?;
    let rows = columns.iter().map(|c| c.1.len()).min().unwrap_or(0);
    for i in 0..rows {
        let line: Vec<String> = columns.iter().map(|c| f(c.1[i])).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_estimates<W: Write>(mut w: W, estimate: &EnvironmentEstimate) -> std::io::Result<()> {
    w.write_all(estimate.render().as_bytes())
}

/// Creates `path` and hands a buffered writer to `body`.
pub fn to_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    body(&mut w)?;
    w.flush()
}
