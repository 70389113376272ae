//! Hyperbolic sup-norms over the unit disk and the Becker-type check.
//!
//! All searches sample the same polar grid: the origin plus `rays × radial`
//! points at radii `tanh(t_j)` with `t_j` uniform up to `atanh(rmax)`.
//! Doubling either count keeps the old grid as a subset, so grid maxima can
//! only grow. Values are lower bounds of the true supremum.
//!
//! Values within [`TIE_RTOL`] (relative) of the best sample count as ties and
//! go to the point with smaller radius, then smaller angle. The window is
//! set by evaluation noise near the boundary, where `h′` may nearly vanish
//! or blow up and a few digits are lost.

mod becker;
mod simplex;

pub use becker::{becker_check, becker_lhs, becker_margin, BeckerReport};

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::harmonic::{HarmonicMap, LOCAL_ORDER};
use crate::operators::{analytic_part_schwarzian, pre_schwarzian, schwarzian};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub rays: usize,
    pub radial: usize,
    pub rmax: f64,
    pub refine: bool,
    pub refine_iters: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            rays: 256,
            radial: 128,
            rmax: 1.0 - 1e-6,
            refine: true,
            refine_iters: 60,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.rays < 8 {
            return Err(Error::InvalidConfig(format!("rays = {} (need ≥ 8)", self.rays)));
        }
        if self.radial < 8 {
            return Err(Error::InvalidConfig(format!(
                "radial samples = {} (need ≥ 8)",
                self.radial
            )));
        }
        if !(self.rmax > 0.0 && self.rmax < 1.0) {
            return Err(Error::InvalidConfig(format!("rmax = {} is not in (0, 1)", self.rmax)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NormOp {
    P,
    S,
}

impl NormOp {
    pub fn name(self) -> &'static str {
        match self {
            NormOp::P => "P",
            NormOp::S => "S",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport {
    pub value: f64,
    pub argmax: Complex64,
    pub boundary: bool,
    pub samples: usize,
    pub op: NormOp,
}

#[derive(Serialize)]
struct NormReportJson {
    value: f64,
    argmax: [f64; 2],
    boundary: bool,
    samples: usize,
    op: &'static str,
}

impl Serialize for NormReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NormReportJson {
            value: self.value,
            argmax: [self.argmax.re, self.argmax.im],
            boundary: self.boundary,
            samples: self.samples,
            op: self.op.name(),
        }
        .serialize(s)
    }
}

/// Result of a search for the largest value of a real function on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchResult {
    pub value: f64,
    pub argmax: Complex64,
    pub samples: usize,
}

/// A grid point with its polar coordinates, used for tie-breaking.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GridPoint {
    pub r: f64,
    pub theta: f64,
    pub z: Complex64,
}

pub(crate) fn polar_grid(cfg: &SearchConfig) -> Vec<GridPoint> {
    let tmax = cfg.rmax.atanh();
    let mut pts = Vec::with_capacity(1 + cfg.rays * cfg.radial);
    pts.push(GridPoint {
        r: 0.0,
        theta: 0.0,
        z: Complex64::new(0.0, 0.0),
    });
    for j in 0..cfg.radial {
        let r = if j + 1 == cfg.radial {
            cfg.rmax
        } else {
            ((j + 1) as f64 / cfg.radial as f64 * tmax).tanh()
        };
        for i in 0..cfg.rays {
            let theta = 2.0 * PI * i as f64 / cfg.rays as f64;
            pts.push(GridPoint {
                r,
                theta,
                z: Complex64::from_polar(r, theta),
            });
        }
    }
    pts
}

/// Evaluates `f` on every grid point in parallel; the first failure in grid
/// order wins so that errors are reproducible.
pub(crate) fn evaluate_grid<F>(pts: &[GridPoint], f: &F) -> Result<Vec<f64>, Error>
where
    F: Fn(Complex64) -> Result<f64, Error> + Sync,
{
    let vals: Vec<Result<f64, Error>> = pts
        .par_iter()
        .map(|p| {
            let v = f(p.z)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite { at: p.z })
            }
        })
        .collect();
    vals.into_iter().collect()
}

/// Relative width of the tie window.
pub const TIE_RTOL: f64 = 1e-8;

fn tie_tol(v: f64) -> f64 {
    TIE_RTOL * v.abs().max(1.0)
}

/// Index of the largest (or smallest) value, with near-ties resolved by
/// smaller radius, then smaller angle.
pub(crate) fn select(pts: &[GridPoint], vals: &[f64], maximize: bool) -> usize {
    let best = vals.iter().cloned().fold(
        if maximize { f64::NEG_INFINITY } else { f64::INFINITY },
        |a, b| if maximize { a.max(b) } else { a.min(b) },
    );
    let tol = tie_tol(best);
    let mut pick: Option<usize> = None;
    for (k, (p, &v)) in pts.iter().zip(vals).enumerate() {
        let near = if maximize { v >= best - tol } else { v <= best + tol };
        if !near {
            continue;
        }
        pick = match pick {
            None => Some(k),
            Some(q) => {
                let cur = &pts[q];
                if (p.r, p.theta) < (cur.r, cur.theta) {
                    Some(k)
                } else {
                    Some(q)
                }
            }
        };
    }
    pick.expect("grid is nonempty")
}

/// Grid search plus optional simplex refinement of `f`'s supremum.
pub fn search_sup<F>(f: F, cfg: &SearchConfig) -> Result<SearchResult, Error>
where
    F: Fn(Complex64) -> Result<f64, Error> + Sync,
{
    cfg.validate()?;
    let pts = polar_grid(cfg);
    let vals = evaluate_grid(&pts, &f)?;
    let mut samples = pts.len();
    let k = select(&pts, &vals, true);
    let mut best = (pts[k].z, vals[k]);

    if cfg.refine {
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&a, &b| {
            vals[b]
                .total_cmp(&vals[a])
                .then(pts[a].r.total_cmp(&pts[b].r))
                .then(pts[a].theta.total_cmp(&pts[b].theta))
        });
        let dt = cfg.rmax.atanh() / cfg.radial as f64;
        let rmax = cfg.rmax;
        let project = move |z: Complex64| {
            let n = z.norm();
            if n > rmax {
                z * (rmax / n)
            } else {
                z
            }
        };
        let seeds: Vec<usize> = order.into_iter().take(5).collect();
        let refined: Vec<(Complex64, f64, usize)> = seeds
            .par_iter()
            .map(|&s| {
                let p = pts[s];
                let step = (0.5 * (1.0 - p.r) * (1.0 + p.r) * dt).max(1e-9);
                let (z, _, n) = simplex::maximize(
                    |z| f(project(z)).unwrap_or(f64::NEG_INFINITY),
                    p.z,
                    step,
                    cfg.refine_iters,
                );
                let z = project(z);
                (z, f(z).unwrap_or(f64::NEG_INFINITY), n + 1)
            })
            .collect();
        let tol = tie_tol(best.1);
        for (z, v, n) in refined {
            samples += n;
            if v > best.1 + tol {
                best = (z, v);
            }
        }
    }

    // Report the value re-evaluated at the reported point.
    let value = f(best.0)?;
    Ok(SearchResult {
        value,
        argmax: best.0,
        samples,
    })
}

fn weight(z: Complex64) -> f64 {
    let r = z.norm();
    (1.0 - r) * (1.0 + r)
}

/// `|P_f(z)|(1−|z|²)` or `|S_f(z)|(1−|z|²)²`.
pub fn weighted_modulus(f: &HarmonicMap, op: NormOp, z: Complex64) -> Result<f64, Error> {
    let w = weight(z);
    Ok(match op {
        NormOp::P => pre_schwarzian(f, z)?.norm() * w,
        NormOp::S => schwarzian(f, z)?.norm() * w * w,
    })
}

fn report(res: SearchResult, op: NormOp, cfg: &SearchConfig) -> NormReport {
    NormReport {
        value: res.value,
        argmax: res.argmax,
        boundary: res.argmax.norm() > 0.99 * cfg.rmax,
        samples: res.samples,
        op,
    }
}

/// Estimate of `‖P_f‖` or `‖S_f‖`.
pub fn hyperbolic_sup(f: &HarmonicMap, op: NormOp, cfg: &SearchConfig) -> Result<NormReport, Error> {
    let res = search_sup(|z| weighted_modulus(f, op, z), cfg)?;
    Ok(report(res, op, cfg))
}

/// `(‖S_f‖, ‖Sh‖)` estimated on identical grids.
pub fn finite_norm_compare(
    f: &HarmonicMap,
    cfg: &SearchConfig,
) -> Result<(NormReport, NormReport), Error> {
    let sf = hyperbolic_sup(f, NormOp::S, cfg)?;
    let sh = search_sup(
        |z| {
            let w = weight(z);
            Ok(analytic_part_schwarzian(f, z)?.norm() * w * w)
        },
        cfg,
    )?;
    Ok((sf, report(sh, NormOp::S, cfg)))
}

/// `|ω″·ω|(1−|z|²)²/(1−|ω|²)`.
pub fn omega_second_quantity(f: &HarmonicMap, z: Complex64) -> Result<f64, Error> {
    let lj = f.local_jets(z, LOCAL_ORDER)?;
    let w = weight(z);
    Ok((lj.omega.derivative(2) * lj.omega.value()).norm() * w * w / lj.d())
}

/// Largest sampled value of [`omega_second_quantity`] (grid only).
pub fn omega_second_probe(f: &HarmonicMap, cfg: &SearchConfig) -> Result<SearchResult, Error> {
    let cfg = SearchConfig {
        refine: false,
        ..*cfg
    };
    search_sup(|z| omega_second_quantity(f, z), &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::catalog_map;

    fn small() -> SearchConfig {
        SearchConfig {
            rays: 32,
            radial: 16,
            ..Default::default()
        }
    }

    #[test]
    fn grid_is_nested_under_doubling() {
        let a = polar_grid(&small());
        let b = polar_grid(&SearchConfig {
            rays: 64,
            radial: 32,
            ..small()
        });
        for p in &a {
            assert!(b.iter().any(|q| (q.z - p.z).norm() < 1e-15), "{:?}", p.z);
        }
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig { rays: 4, ..small() }.validate().is_err());
        assert!(SearchConfig { radial: 2, ..small() }.validate().is_err());
        assert!(SearchConfig { rmax: 1.0, ..small() }.validate().is_err());
    }

    #[test]
    fn half_plane_schwarzian_norm() {
        let l = catalog_map("L").unwrap();
        let r = hyperbolic_sup(&l, NormOp::S, &small()).unwrap();
        assert!((r.value - 1.5).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn strip_norm_at_origin() {
        let s2 = catalog_map("S2").unwrap();
        let r = hyperbolic_sup(&s2, NormOp::S, &small()).unwrap();
        assert!((r.value - 4.0).abs() < 1e-9);
        assert!(r.argmax.norm() < 1e-12);
    }

    #[test]
    fn half_plane_pre_schwarzian_boundary() {
        let l = catalog_map("L").unwrap();
        let r = hyperbolic_sup(&l, NormOp::P, &small()).unwrap();
        assert!(r.value >= 4.999998, "{}", r.value);
        assert!(r.boundary);
    }

    #[test]
    fn report_json_layout() {
        let r = NormReport {
            value: 1.5,
            argmax: Complex64::new(0.0, 0.0),
            boundary: false,
            samples: 10,
            op: NormOp::S,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"value":1.5,"argmax":[0.0,0.0],"boundary":false,"samples":10,"op":"S"}"#
        );
    }

    #[test]
    fn domain_error_names_the_point() {
        let f = HarmonicMap::from_dilatation(
            crate::analytic::AnalyticFunction::identity(),
            crate::analytic::AnalyticFunction::parse("2*z").unwrap(),
        );
        let err = hyperbolic_sup(&f, NormOp::S, &small()).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
        assert!(err.at().unwrap().norm() >= 0.5);
    }

    #[test]
    fn probe_is_finite() {
        let k2 = catalog_map("K2").unwrap();
        let r = omega_second_probe(&k2, &small()).unwrap();
        assert!(r.value.is_finite());
    }
}
