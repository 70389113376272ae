use crate::analytic::AnalyticFunction;
use crate::expr::Builtin;
use crate::Error;

use super::HarmonicMap;

pub const CATALOG_NAMES: [&str; 9] = ["k", "l", "s", "q2", "K", "L", "S1", "S2", "K2"];

#[derive(Debug, Clone, PartialEq)]
pub enum CatalogEntry {
    Analytic(AnalyticFunction),
    Harmonic(HarmonicMap),
}

fn parts(label: &str, h: &str, g: &str, omega: &str) -> HarmonicMap {
    let parse = |s: &str| AnalyticFunction::parse(s).expect("catalog expression parses");
    HarmonicMap::from_parts(parse(h), parse(g))
        .with_omega_hint(Some(parse(omega)))
        .with_label(label)
}

/// Named maps: the analytic `k`, `l`, `s`, `q2` and the harmonic `K`
/// (Koebe), `L` (half-plane), `S1` (half-strip), `S2` (strip) and `K2`.
pub fn catalog(name: &str) -> Result<CatalogEntry, Error> {
    if let Some(b) = Builtin::from_name(name) {
        return Ok(CatalogEntry::Analytic(AnalyticFunction::builtin(b)));
    }
    let map = match name {
        "K" => parts(
            "K",
            "(z-0.5*z^2+z^3/6)/(1-z)^3",
            "(0.5*z^2+z^3/6)/(1-z)^3",
            "z",
        ),
        "L" => parts("L", "(2*z-z^2)/(2*(1-z)^2)", "-z^2/(2*(1-z)^2)", "-z"),
        "S1" => parts("S1", "(l(z)+s(z))/2", "(l(z)-s(z))/2", "z"),
        "S2" => parts("S2", "(q2(z)+s(z))/2", "(q2(z)-s(z))/2", "z^2"),
        "K2" => parts("K2", "(1/(1-z)^3-1)/3", "(z^2-z+1/3)/(1-z)^3-1/3", "z^2"),
        other => return Err(Error::UnknownCatalogName(other.to_string())),
    };
    Ok(CatalogEntry::Harmonic(map))
}

/// Like [`catalog`], with analytic entries turned into maps with `g ≡ 0`.
pub fn catalog_map(name: &str) -> Result<HarmonicMap, Error> {
    Ok(match catalog(name)? {
        CatalogEntry::Analytic(f) => HarmonicMap::analytic(f).with_label(name),
        CatalogEntry::Harmonic(m) => m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{QuadConfig, Repr, LOCAL_ORDER};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn omega_at(name: &str, z: Complex64) -> Complex64 {
        catalog_map(name)
            .unwrap()
            .local_jets(z, LOCAL_ORDER)
            .unwrap()
            .omega
            .value()
    }

    #[test]
    fn dilatations() {
        for z in [c(0.0, 0.0), c(0.3, 0.1), c(-0.5, 0.4)] {
            assert!((omega_at("K", z) - z).norm() < 1e-13);
            assert!((omega_at("L", z) + z).norm() < 1e-13);
            assert!((omega_at("S1", z) - z).norm() < 1e-13);
            assert!((omega_at("S2", z) - z * z).norm() < 1e-13);
            assert!((omega_at("K2", z) - z * z).norm() < 1e-13);
        }
    }

    #[test]
    fn closed_form_dilatations_match_quotient() {
        for name in ["K", "L", "S1", "S2", "K2"] {
            let f = catalog_map(name).unwrap();
            let Repr::Parts { h, g } = f.repr() else {
                panic!("{name} is not in parts form")
            };
            let raw = HarmonicMap::from_parts(h.clone(), g.clone());
            for z in [c(0.0, 0.0), c(0.3, 0.1), c(-0.5, 0.4), c(0.1, -0.7)] {
                let a = f.local_jets(z, LOCAL_ORDER).unwrap().omega;
                let b = raw.local_jets(z, LOCAL_ORDER).unwrap().omega;
                for k in 0..=LOCAL_ORDER {
                    assert!((a.coeff(k) - b.coeff(k)).norm() < 1e-9, "{name} {z} {k}");
                }
            }
        }
    }

    #[test]
    fn koebe_normalization() {
        let lj = catalog_map("K").unwrap().local_jets(c(0.0, 0.0), LOCAL_ORDER).unwrap();
        assert!((lj.hp.value() - 1.0).norm() < 1e-15);
        assert!(lj.gp().value().norm() < 1e-15);
        // h″(0) = 5
        assert!((lj.hp.coeff(1) - 5.0).norm() < 1e-13);
    }

    #[test]
    fn half_plane_value() {
        let l = catalog_map("L").unwrap();
        let (h, g) = l.parts_at(c(0.5, 0.0), &QuadConfig::default()).unwrap();
        assert!((h - 1.5).norm() < 1e-14);
        assert!((g + 0.5).norm() < 1e-14);
    }

    #[test]
    fn strip_parts() {
        let s2 = catalog_map("S2").unwrap();
        let z = c(0.2, 0.3);
        let (h, _) = s2.parts_at(z, &QuadConfig::default()).unwrap();
        let q = z / (1.0 - z * z);
        let s = 0.5 * ((1.0 + z) / (1.0 - z)).ln();
        assert!((h - (q + s) / 2.0).norm() < 1e-14);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(catalog("Q"), Err(Error::UnknownCatalogName(_))));
    }

    #[test]
    fn all_names_resolve() {
        for name in CATALOG_NAMES {
            assert!(catalog_map(name).is_ok(), "{name}");
        }
    }
}
