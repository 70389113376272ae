//! JSON interchange form of harmonic maps.
//!
//! ```json
//! {"label": "K", "form": "parts", "h": "...", "g": "...", "sense": "preserving"}
//! {"label": "", "form": "dilatation", "h_prime": "...", "h0": [0, 0], "omega": "...", "sense": "preserving"}
//! ```
//!
//! A dilatation-form map carries either `h` or the pair `h_prime`, `h0`.
//! A parts-form map may also carry `omega`, a closed form of `g′/h′` that is
//! trusted as given and used in place of the quotient.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::AnalyticFunction;
use crate::Error;

use super::{AnalyticPart, HarmonicMap, Repr, Sense};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(default)]
    pub label: String,
    pub form: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_prime: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(default = "preserving")]
    pub sense: String,
}

fn preserving() -> String {
    "preserving".into()
}

fn need<'a>(field: &'a Option<String>, name: &str) -> Result<&'a str, Error> {
    field
        .as_deref()
        .ok_or_else(|| Error::Format(format!("missing field `{name}`")))
}

impl MapSpec {
    pub fn from_map(f: &HarmonicMap) -> MapSpec {
        let mut spec = MapSpec {
            label: f.label.clone(),
            form: String::new(),
            h: None,
            h_prime: None,
            h0: None,
            g: None,
            omega: None,
            sense: f.sense().as_str().to_string(),
        };
        match f.repr() {
            Repr::Parts { h, g } => {
                spec.form = "parts".into();
                spec.h = Some(h.to_string());
                spec.g = Some(g.to_string());
                spec.omega = f.omega_hint().map(|w| w.to_string());
            }
            Repr::Dilatation { analytic, omega } => {
                spec.form = "dilatation".into();
                match analytic {
                    AnalyticPart::Primitive(h) => spec.h = Some(h.to_string()),
                    AnalyticPart::Derivative { hprime, h0 } => {
                        spec.h_prime = Some(hprime.to_string());
                        spec.h0 = Some([h0.re, h0.im]);
                    }
                }
                spec.omega = Some(omega.to_string());
            }
        }
        spec
    }

    pub fn to_map(&self) -> Result<HarmonicMap, Error> {
        let sense = match self.sense.as_str() {
            "preserving" => Sense::Preserving,
            "reversing" => Sense::Reversing,
            other => return Err(Error::Format(format!("unknown sense `{other}`"))),
        };
        let map = match self.form.as_str() {
            "parts" => {
                if self.h_prime.is_some() || self.h0.is_some() {
                    return Err(Error::Format("parts form takes `h`, `g` and optionally `omega`".into()));
                }
                let hint = match &self.omega {
                    Some(w) => Some(AnalyticFunction::parse(w)?),
                    None => None,
                };
                HarmonicMap::from_parts(
                    AnalyticFunction::parse(need(&self.h, "h")?)?,
                    AnalyticFunction::parse(need(&self.g, "g")?)?,
                )
                .with_omega_hint(hint)
            }
            "dilatation" => {
                if self.g.is_some() {
                    return Err(Error::Format("dilatation form takes `omega`, not `g`".into()));
                }
                let omega = AnalyticFunction::parse(need(&self.omega, "omega")?)?;
                match (&self.h, &self.h_prime) {
                    (Some(h), None) => {
                        HarmonicMap::from_dilatation(AnalyticFunction::parse(h)?, omega)
                    }
                    (None, Some(hp)) => {
                        let [re, im] = self
                            .h0
                            .ok_or_else(|| Error::Format("`h_prime` needs `h0`".into()))?;
                        HarmonicMap::from_derivative(
                            AnalyticFunction::parse(hp)?,
                            Complex64::new(re, im),
                            omega,
                        )
                    }
                    _ => {
                        return Err(Error::Format(
                            "dilatation form needs exactly one of `h`, `h_prime`".into(),
                        ))
                    }
                }
            }
            other => return Err(Error::Format(format!("unknown form `{other}`"))),
        };
        Ok(map.with_sense(sense).with_label(self.label.clone()))
    }
}

impl HarmonicMap {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MapSpec::from_map(self)).expect("map spec serializes")
    }

    pub fn from_json(text: &str) -> Result<HarmonicMap, Error> {
        let spec: MapSpec =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        spec.to_map()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{catalog_map, shear, QuadConfig};

    #[test]
    fn parts_round_trip() {
        let k = catalog_map("K").unwrap();
        let text = k.to_json();
        assert!(text.starts_with(r#"{"label":"K","form":"parts","h":"#));
        let back = HarmonicMap::from_json(&text).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn shear_round_trip_by_value() {
        let f = shear(
            &AnalyticFunction::parse("z/(1-z)").unwrap(),
            &AnalyticFunction::parse("-z").unwrap(),
            std::f64::consts::FRAC_PI_2,
        )
        .unwrap();
        let back = HarmonicMap::from_json(&f.to_json()).unwrap();
        let cfg = QuadConfig::default();
        let z = Complex64::new(0.3, -0.4);
        let a = f.evaluate(z, &cfg).unwrap();
        let b = back.evaluate(z, &cfg).unwrap();
        assert!((a - b).norm() < 1e-15);
    }

    #[test]
    fn malformed_inputs() {
        assert!(HarmonicMap::from_json(r#"{"form":"parts","h":"z"}"#).is_err());
        assert!(HarmonicMap::from_json(r#"{"form":"weird","h":"z","g":"0"}"#).is_err());
        assert!(HarmonicMap::from_json(r#"{"form":"parts","h":"z","g":"0","sense":"up"}"#).is_err());
        let err = HarmonicMap::from_json(r#"{"form":"parts","h":"z^(","g":"0"}"#).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        let ok = HarmonicMap::from_json(
            r#"{"form":"dilatation","h":"z","omega":"0.5*z","sense":"reversing"}"#,
        )
        .unwrap();
        assert_eq!(ok.sense(), Sense::Reversing);
    }
}
