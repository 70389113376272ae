use num_complex::Complex64;
use serde::Serialize;

use crate::harmonic::{HarmonicMap, LOCAL_ORDER};
use crate::Error;

use super::{evaluate_grid, polar_grid, select, SearchConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeckerReport {
    pub holds: bool,
    pub worst_margin: f64,
    pub witness: Complex64,
}

#[derive(Serialize)]
struct BeckerReportJson {
    holds: bool,
    worst_margin: f64,
    witness: [f64; 2],
}

impl Serialize for BeckerReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BeckerReportJson {
            holds: self.holds,
            worst_margin: self.worst_margin,
            witness: [self.witness.re, self.witness.im],
        }
        .serialize(s)
    }
}

/// `|z·P_f(z)| + |z·ω′(z)|/(1 − |ω(z)|²)`.
pub fn becker_lhs(f: &HarmonicMap, z: Complex64) -> Result<f64, Error> {
    let lj = f.local_jets(z, LOCAL_ORDER)?;
    let pre = lj.pre_h().value() - lj.omega.value().conj() * lj.omega.derivative(1) / lj.d();
    Ok((z * pre).norm() + (z * lj.omega.derivative(1)).norm() / lj.d())
}

/// `1 − becker_lhs(z)·(1 − |z|²)`; nonnegative everywhere means the
/// criterion holds.
pub fn becker_margin(f: &HarmonicMap, z: Complex64) -> Result<f64, Error> {
    let r = z.norm();
    Ok(1.0 - becker_lhs(f, z)? * (1.0 - r) * (1.0 + r))
}

pub fn becker_check(f: &HarmonicMap, cfg: &SearchConfig) -> Result<BeckerReport, Error> {
    cfg.validate()?;
    let pts = polar_grid(cfg);
    let vals = evaluate_grid(&pts, &|z| becker_margin(f, z))?;
    let k = select(&pts, &vals, false);
    Ok(BeckerReport {
        holds: vals[k] >= 0.0,
        worst_margin: vals[k],
        witness: pts[k].z,
    })
}
