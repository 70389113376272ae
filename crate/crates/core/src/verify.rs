//! Self-check suites run by `hschw verify`.

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{disk_automorphism, AnalyticFunction};
use crate::harmonic::{affine_compose, catalog_map, precompose, AffineMap, HarmonicMap};
use crate::mobius::{HarmonicMobius, MobiusMap};
use crate::norms::{becker_check, hyperbolic_sup, NormOp, SearchConfig};
use crate::operators::{
    classical_pre_schwarzian, classical_schwarzian, dbar_pre_schwarzian, lemma1_schwarzian,
    mixed_laplacian_schwarzian, pre_schwarzian, schwarzian, schwarzian_via_jacobian_fd,
    tamanoi_schwarzian,
};
use crate::Error;

pub const SUITES: [&str; 5] = ["oracles", "invariance", "norms", "becker", "all"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub details: Vec<Check>,
}

#[derive(Default)]
struct Log {
    checks: Vec<Check>,
}

impl Log {
    fn close(&mut self, name: String, got: Result<f64, Error>, tol: f64) {
        let (passed, message) = match got {
            Ok(err) if err <= tol => (true, format!("error {err:e} <= {tol:e}")),
            Ok(err) => (false, format!("error {err:e} > {tol:e}")),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check { name, passed, message });
    }

    fn flag(&mut self, name: String, got: Result<bool, Error>, what: &str) {
        let (passed, message) = match got {
            Ok(true) => (true, what.to_string()),
            Ok(false) => (false, format!("expected {what}")),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check { name, passed, message });
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const POINTS: [Complex64; 4] = [
    Complex64::new(0.0, 0.0),
    Complex64::new(0.31, -0.17),
    Complex64::new(-0.42, 0.25),
    Complex64::new(0.05, 0.6),
];

const MAPS: [&str; 5] = ["K", "L", "S1", "S2", "K2"];

fn oracles(log: &mut Log) {
    for name in MAPS {
        let f = catalog_map(name).expect("catalog map");
        for z in POINTS {
            let s = match schwarzian(&f, z) {
                Ok(s) => s,
                Err(e) => {
                    log.close(format!("{name} closed form at {z}"), Err(e), 0.0);
                    continue;
                }
            };
            log.close(
                format!("{name} lemma route at {z}"),
                lemma1_schwarzian(&f, z).map(|v| (v - s).norm()),
                1e-10,
            );
            log.close(
                format!("{name} jacobian differences at {z}"),
                schwarzian_via_jacobian_fd(&f, z).map(|v| (v - s).norm()),
                1e-5,
            );
            log.close(
                format!("{name} deviation expansion at {z}"),
                tamanoi_schwarzian(&f, z).map(|v| (v - s).norm()),
                1e-6,
            );
        }
    }
}

fn diff_pair(f: &HarmonicMap, g: &HarmonicMap, z: Complex64) -> Result<f64, Error> {
    let dp = (pre_schwarzian(f, z)? - pre_schwarzian(g, z)?).norm();
    let ds = (schwarzian(f, z)? - schwarzian(g, z)?).norm();
    Ok(dp.max(ds))
}

fn invariance(log: &mut Log) {
    let affines = [
        AffineMap::new(c(2.0, 1.0), c(0.5, -0.3), c(1.0, 1.0)),
        AffineMap::new(c(0.2, 0.0), c(1.0, 0.5), c(0.0, -2.0)),
        AffineMap::new(c(-1.0, 0.3), c(0.0, 0.9), c(0.0, 0.0)),
    ];
    for name in MAPS {
        let f = catalog_map(name).expect("catalog map");
        for (k, a) in affines.iter().enumerate() {
            let g = a.clone().and_then(|a| affine_compose(&a, &f));
            for z in POINTS {
                log.close(
                    format!("{name} affine #{k} at {z}"),
                    g.clone().and_then(|g| diff_pair(&f, &g, z)),
                    1e-10,
                );
            }
        }
        for z in POINTS {
            log.close(
                format!("{name} conjugation at {z}"),
                diff_pair(&f, &f.conjugate(), z),
                1e-12,
            );
        }
        for a in [c(0.2, 0.1), c(-0.3, 0.25)] {
            let phi = disk_automorphism(a);
            let fphi = precompose(&f, &phi);
            for z in POINTS.iter().take(3).copied() {
                let got = fphi.clone().and_then(|fphi| chain_residual(&f, &fphi, &phi, z));
                log.close(format!("{name} chain rule a={a} at {z}"), got, 1e-9);
            }
        }
    }
    let kernel = MobiusMap::new(c(1.0, 0.2), c(0.3, 0.0), c(0.2, -0.1), c(1.0, 0.0))
        .and_then(|t| HarmonicMobius::new(t, c(0.4, 0.2), c(0.0, 0.0)))
        .map(|m| m.to_map());
    for z in POINTS {
        log.close(
            format!("harmonic Möbius kernel at {z}"),
            kernel.clone().and_then(|m| schwarzian(&m, z)).map(|s| s.norm()),
            1e-10,
        );
    }
    let h = AnalyticFunction::parse("z/(1-z)^2").expect("parses");
    let cd = HarmonicMap::from_parts(h.clone(), h.scale(c(0.3, 0.2)));
    for z in POINTS {
        log.close(
            format!("constant dilatation dbar/laplacian at {z}"),
            dbar_pre_schwarzian(&cd, z).and_then(|d| {
                Ok(d.abs().max(mixed_laplacian_schwarzian(&cd, z)?.norm()))
            }),
            1e-10,
        );
    }
}

fn chain_residual(
    f: &HarmonicMap,
    fphi: &HarmonicMap,
    phi: &AnalyticFunction,
    z: Complex64,
) -> Result<f64, Error> {
    let w = phi.value(z)?;
    let d = phi.jet(z, 1)?.derivative(1);
    let p = pre_schwarzian(f, w)? * d + classical_pre_schwarzian(phi, z)?;
    let s = schwarzian(f, w)? * d * d + classical_schwarzian(phi, z)?;
    Ok((pre_schwarzian(fphi, z)? - p)
        .norm()
        .max((schwarzian(fphi, z)? - s).norm()))
}

fn norms(log: &mut Log) {
    let cfg = SearchConfig::default();
    for (name, want) in [("L", 1.5), ("S1", 2.5), ("S2", 4.0), ("K", 9.5)] {
        let f = catalog_map(name).expect("catalog map");
        log.close(
            format!("norm of S_{name} = {want}"),
            hyperbolic_sup(&f, NormOp::S, &cfg).map(|r| (r.value - want).abs()),
            1e-6,
        );
    }
    let k2 = catalog_map("K2").expect("catalog map");
    log.flag(
        "norm of S_K2 approaches 9.5 at the boundary".into(),
        hyperbolic_sup(&k2, NormOp::S, &cfg).map(|r| r.boundary && r.value >= 9.45 && r.value <= 9.5 + 1e-9),
        "value in [9.45, 9.5] with boundary flag",
    );
}

fn becker(log: &mut Log) {
    let cfg = SearchConfig {
        rays: 64,
        radial: 64,
        ..SearchConfig::default()
    };
    let affine = HarmonicMap::from_parts(
        AnalyticFunction::identity(),
        AnalyticFunction::parse("0.5*z").expect("parses"),
    );
    log.flag(
        "affine map holds with margin 1".into(),
        becker_check(&affine, &cfg).map(|r| r.holds && r.worst_margin == 1.0),
        "holds with worst margin 1",
    );
    let k = catalog_map("k").expect("catalog map");
    log.flag(
        "Koebe fails on the positive real axis".into(),
        becker_check(&k, &cfg).map(|r| {
            let x = r.witness.re;
            !r.holds
                && r.witness.im.abs() < 1e-12
                && x > 0.0
                && 2.0 * x * (2.0 + x) > 1.0
                && (r.worst_margin - (1.0 - 2.0 * x * (2.0 + x))).abs() < 1e-9
        }),
        "fails at a real witness with margin 1 - 2r(2+r)",
    );
}

/// Runs one suite by name, or `None` for an unknown name.
pub fn run_suite(suite: &str) -> Option<Summary> {
    let mut log = Log::default();
    match suite {
        "oracles" => oracles(&mut log),
        "invariance" => invariance(&mut log),
        "norms" => norms(&mut log),
        "becker" => becker(&mut log),
        "all" => {
            oracles(&mut log);
            invariance(&mut log);
            norms(&mut log);
            becker(&mut log);
        }
        _ => return None,
    }
    let passed = log.checks.iter().filter(|c| c.passed).count();
    Some(Summary {
        suite: suite.to_string(),
        passed,
        failed: log.checks.len() - passed,
        details: log.checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope").is_none());
    }

    #[test]
    fn becker_suite_passes() {
        let s = run_suite("becker").unwrap();
        assert_eq!(s.failed, 0, "{:#?}", s.details);
        assert_eq!(s.passed, 2);
    }

    #[test]
    fn invariance_suite_passes() {
        let s = run_suite("invariance").unwrap();
        assert_eq!(s.failed, 0, "{:#?}", s.details.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    }

    #[test]
    fn oracle_suite_passes() {
        let s = run_suite("oracles").unwrap();
        assert_eq!(s.failed, 0, "{:#?}", s.details.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    }
}
