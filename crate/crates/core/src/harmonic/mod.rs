//! Harmonic maps `f = h + conj(g)` on the unit disk.
//!
//! A map is stored through a sense-preserving representative together with
//! a [`Sense`] flag; a sense-reversing map is the complex conjugate of its
//! representative. The representative is given either by its two analytic
//! parts or by `h` (or `h′` and `h(0)`) and the dilatation `ω = g′/h′`, with
//! `g(0) = 0`.

mod catalog;
mod construct;
pub mod quadrature;
mod render;
mod serial;

pub use catalog::{catalog, catalog_map, CatalogEntry, CATALOG_NAMES};
pub use construct::{
    affine_compose, best_harmonic_mobius, group_apply, partner_map, precompose, shear,
    AffineMap, GroupElement,
};
pub(crate) use construct::best_for_representative;
pub use quadrature::QuadConfig;
pub use render::{render_grid, RenderPoint};
pub use serial::MapSpec;

use num_complex::Complex64;

use crate::analytic::AnalyticFunction;
use crate::jet::Jet;
use crate::Error;

/// Jet order used for local data: enough for `h⁗` and `ω‴`.
pub const LOCAL_ORDER: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Preserving,
    Reversing,
}

impl Sense {
    pub fn flip(self) -> Sense {
        match self {
            Sense::Preserving => Sense::Reversing,
            Sense::Reversing => Sense::Preserving,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sense::Preserving => "preserving",
            Sense::Reversing => "reversing",
        }
    }
}

/// The analytic part of a dilatation-form map.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticPart {
    Primitive(AnalyticFunction),
    /// `h′` with the value `h(0)`; `h` itself comes from integration.
    Derivative {
        hprime: AnalyticFunction,
        h0: Complex64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Repr {
    Parts {
        h: AnalyticFunction,
        g: AnalyticFunction,
    },
    Dilatation {
        analytic: AnalyticPart,
        omega: AnalyticFunction,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap {
    repr: Repr,
    sense: Sense,
    pub label: String,
    /// `e^{2iθ}` when the map came out of a shear, for singularity reporting.
    shear_rotation: Option<Complex64>,
    /// Closed form of `g′/h′` for a parts-form map, used instead of the
    /// jet quotient, which loses accuracy where `h′` blows up.
    omega_hint: Option<AnalyticFunction>,
}

/// Taylor data of the representative at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalJets {
    pub z: Complex64,
    /// Jet of `h′`.
    pub hp: Jet,
    /// Jet of `ω`.
    pub omega: Jet,
}

impl LocalJets {
    /// Jet of `g′ = ω·h′`.
    pub fn gp(&self) -> Jet {
        self.omega.try_mul(&self.hp).expect("jets share center and order")
    }

    /// `(1 − |ω|)(1 + |ω|)`.
    pub fn d(&self) -> f64 {
        let a = self.omega.value().norm();
        (1.0 - a) * (1.0 + a)
    }

    /// Jet of `h″/h′`, one order below `hp`.
    pub fn pre_h(&self) -> Jet {
        let n = self.hp.order();
        self.hp
            .differentiate()
            .try_div(&self.hp.truncate(n.saturating_sub(1)))
            .expect("h′ checked nonzero")
    }
}

impl HarmonicMap {
    pub fn from_parts(h: AnalyticFunction, g: AnalyticFunction) -> Self {
        HarmonicMap {
            repr: Repr::Parts { h, g },
            sense: Sense::Preserving,
            label: String::new(),
            shear_rotation: None,
            omega_hint: None,
        }
    }

    pub fn from_dilatation(h: AnalyticFunction, omega: AnalyticFunction) -> Self {
        HarmonicMap {
            repr: Repr::Dilatation {
                analytic: AnalyticPart::Primitive(h),
                omega,
            },
            sense: Sense::Preserving,
            label: String::new(),
            shear_rotation: None,
            omega_hint: None,
        }
    }

    pub fn from_derivative(
        hprime: AnalyticFunction,
        h0: Complex64,
        omega: AnalyticFunction,
    ) -> Self {
        HarmonicMap {
            repr: Repr::Dilatation {
                analytic: AnalyticPart::Derivative { hprime, h0 },
                omega,
            },
            sense: Sense::Preserving,
            label: String::new(),
            shear_rotation: None,
            omega_hint: None,
        }
    }

    /// An analytic function viewed as a harmonic map with `g ≡ 0`.
    pub fn analytic(h: AnalyticFunction) -> Self {
        Self::from_parts(h, AnalyticFunction::constant(Complex64::new(0.0, 0.0)))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_sense(mut self, sense: Sense) -> Self {
        self.sense = sense;
        self
    }

    pub(crate) fn with_shear_rotation(mut self, rot: Complex64) -> Self {
        self.shear_rotation = Some(rot);
        self
    }

    /// Records a closed form of `ω` for a parts-form map.
    pub(crate) fn with_omega_hint(mut self, omega: Option<AnalyticFunction>) -> Self {
        if matches!(self.repr, Repr::Parts { .. }) {
            self.omega_hint = omega;
        }
        self
    }

    pub(crate) fn omega_hint(&self) -> Option<&AnalyticFunction> {
        self.omega_hint.as_ref()
    }

    pub(crate) fn with_repr(&self, repr: Repr) -> Self {
        HarmonicMap {
            repr,
            sense: self.sense,
            label: self.label.clone(),
            shear_rotation: None,
            omega_hint: None,
        }
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn is_preserving(&self) -> bool {
        self.sense == Sense::Preserving
    }

    /// The complex conjugate map. The representative is shared; only the
    /// sense flag changes, so conjugating twice gives back the same value.
    pub fn conjugate(&self) -> HarmonicMap {
        HarmonicMap {
            repr: self.repr.clone(),
            sense: self.sense.flip(),
            label: self.label.clone(),
            shear_rotation: self.shear_rotation,
            omega_hint: self.omega_hint.clone(),
        }
    }

    /// The sense-preserving representative.
    pub fn representative(&self) -> HarmonicMap {
        HarmonicMap {
            sense: Sense::Preserving,
            ..self.clone()
        }
    }

    /// `h′` of the representative as an expression.
    pub fn h_prime_function(&self) -> AnalyticFunction {
        match &self.repr {
            Repr::Parts { h, .. } => h.derivative(),
            Repr::Dilatation { analytic, .. } => match analytic {
                AnalyticPart::Primitive(h) => h.derivative(),
                AnalyticPart::Derivative { hprime, .. } => hprime.clone(),
            },
        }
    }

    /// `ω` of the representative as an expression.
    pub fn omega_function(&self) -> AnalyticFunction {
        match &self.repr {
            Repr::Parts { h, g } => match &self.omega_hint {
                Some(w) => w.clone(),
                None => g.derivative().div(&h.derivative()),
            },
            Repr::Dilatation { omega, .. } => omega.clone(),
        }
    }

    /// Jets of `h′` and `ω` of the representative at `z`, after checking
    /// `h′(z) ≠ 0` and `|ω(z)| < 1`.
    pub fn local_jets(&self, z: Complex64, order: usize) -> Result<LocalJets, Error> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite { at: z });
        }
        let (hp, omega) = match &self.repr {
            Repr::Parts { h, g } => {
                let hp = h.jet(z, order + 1)?.differentiate();
                if hp.value().norm() == 0.0 {
                    return Err(Error::domain(z, "h' vanishes"));
                }
                let omega = match &self.omega_hint {
                    Some(w) => w.jet(z, order)?,
                    None => g.jet(z, order + 1)?.differentiate().try_div(&hp)?,
                };
                (hp, omega)
            }
            Repr::Dilatation { analytic, omega } => {
                let omega = omega.jet(z, order)?;
                if let Some(rot) = self.shear_rotation {
                    if (1.0 - rot * omega.value()).norm() <= 1e-14 {
                        return Err(Error::ShearSingularity { at: z });
                    }
                }
                let hp = match analytic {
                    AnalyticPart::Primitive(h) => h.jet(z, order + 1)?.differentiate(),
                    AnalyticPart::Derivative { hprime, .. } => hprime.jet(z, order)?,
                };
                if hp.value().norm() == 0.0 {
                    return Err(Error::domain(z, "h' vanishes"));
                }
                (hp, omega)
            }
        };
        let w = omega.value().norm();
        if !(w < 1.0) {
            return Err(Error::domain(z, format!("|ω| = {w} is not below 1")));
        }
        Ok(LocalJets { z, hp, omega })
    }

    /// `(h(z), g(z))` of the representative.
    pub fn parts_at(&self, z: Complex64, cfg: &QuadConfig) -> Result<(Complex64, Complex64), Error> {
        match &self.repr {
            Repr::Parts { h, g } => Ok((h.value(z)?, g.value(z)?)),
            Repr::Dilatation { analytic, omega } => match analytic {
                AnalyticPart::Primitive(h) => {
                    let hp = h.derivative();
                    let [gi] = quadrature::integrate_segment(
                        |w| Ok([omega.value(w)? * hp.value(w)?]),
                        Complex64::new(0.0, 0.0),
                        z,
                        cfg,
                    )?;
                    Ok((h.value(z)?, gi))
                }
                AnalyticPart::Derivative { hprime, h0 } => {
                    let [hi, gi] = quadrature::integrate_segment(
                        |w| {
                            let d = hprime.value(w)?;
                            Ok([d, omega.value(w)? * d])
                        },
                        Complex64::new(0.0, 0.0),
                        z,
                        cfg,
                    )?;
                    Ok((h0 + hi, gi))
                }
            },
        }
    }

    /// Value of the representative `h + conj(g)`.
    pub fn representative_value(&self, z: Complex64, cfg: &QuadConfig) -> Result<Complex64, Error> {
        let (h, g) = self.parts_at(z, cfg)?;
        Ok(h + g.conj())
    }

    /// `f(z)`, honouring the sense flag.
    pub fn evaluate(&self, z: Complex64, cfg: &QuadConfig) -> Result<Complex64, Error> {
        let v = self.representative_value(z, cfg)?;
        Ok(match self.sense {
            Sense::Preserving => v,
            Sense::Reversing => v.conj(),
        })
    }

    /// `F(z1) − F(z0)` for the representative `F`, integrated along the short
    /// segment when parts are only known through derivatives.
    pub fn representative_increment(
        &self,
        z0: Complex64,
        z1: Complex64,
    ) -> Result<Complex64, Error> {
        let cfg = QuadConfig::tight();
        match &self.repr {
            Repr::Parts { h, g } => {
                let dh = h.value(z1)? - h.value(z0)?;
                let dg = g.value(z1)? - g.value(z0)?;
                Ok(dh + dg.conj())
            }
            Repr::Dilatation { analytic, omega } => {
                let hp = self.h_prime_function();
                let [dh, dg] = quadrature::integrate_segment(
                    |w| {
                        let d = hp.value(w)?;
                        Ok([d, omega.value(w)? * d])
                    },
                    z0,
                    z1,
                    &cfg,
                )?;
                let dh = match analytic {
                    AnalyticPart::Primitive(h) => h.value(z1)? - h.value(z0)?,
                    AnalyticPart::Derivative { .. } => dh,
                };
                Ok(dh + dg.conj())
            }
        }
    }

    /// `h(0)` of the representative.
    pub(crate) fn h_at_zero(&self) -> Result<Complex64, Error> {
        let zero = Complex64::new(0.0, 0.0);
        match &self.repr {
            Repr::Parts { h, .. } => h.value(zero),
            Repr::Dilatation { analytic, .. } => match analytic {
                AnalyticPart::Primitive(h) => h.value(zero),
                AnalyticPart::Derivative { h0, .. } => Ok(*h0),
            },
        }
    }
}
