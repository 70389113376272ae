use num_complex::Complex64;

use crate::analytic::AnalyticFunction;
use crate::mobius::{HarmonicMobius, MobiusMap};
use crate::Error;

use super::{AnalyticPart, HarmonicMap, QuadConfig, Repr, Sense, LOCAL_ORDER};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn finite(x: Complex64, what: &str) -> Result<(), Error> {
    if x.re.is_finite() && x.im.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!("{what} is not finite")))
    }
}

/// `a + b·w` as an expression in the dilatation expression `w`.
fn affine_expr(a: Complex64, b: Complex64, w: &AnalyticFunction) -> AnalyticFunction {
    AnalyticFunction::linear(b, w, ZERO, w, a)
}

/// Shear of `phi` with dilatation `omega` in direction `theta`:
/// `h − e^{2iθ}g = φ`, `g′ = ω·h′`, `g(0) = 0`.
pub fn shear(
    phi: &AnalyticFunction,
    omega: &AnalyticFunction,
    theta: f64,
) -> Result<HarmonicMap, Error> {
    if !theta.is_finite() {
        return Err(Error::ParameterOutOfRange("theta is not finite".into()));
    }
    let rot = Complex64::from_polar(1.0, 2.0 * theta);
    let h0 = phi.value(ZERO)?;
    let den = affine_expr(ONE, -rot, omega);
    let hprime = phi.derivative().div(&den);
    Ok(HarmonicMap::from_derivative(hprime, h0, omega.clone())
        .with_label(format!("shear({phi}, {omega}, {theta})"))
        .with_shear_rotation(rot))
}

/// `A(w) = a·w + b·conj(w) + c` with `|a| ≠ |b|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl AffineMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self, Error> {
        finite(a, "a")?;
        finite(b, "b")?;
        finite(c, "c")?;
        let (na, nb) = (a.norm(), b.norm());
        if (na - nb).abs() <= 1e-14 * na.max(nb) || na.max(nb) == 0.0 {
            return Err(Error::ParameterOutOfRange("affine map needs |a| != |b|".into()));
        }
        Ok(AffineMap { a, b, c })
    }

    pub fn identity() -> Self {
        AffineMap {
            a: ONE,
            b: ZERO,
            c: ZERO,
        }
    }

    pub fn apply(&self, w: Complex64) -> Complex64 {
        self.a * w + self.b * w.conj() + self.c
    }

    pub fn is_preserving(&self) -> bool {
        self.a.norm() > self.b.norm()
    }

    /// The affine map as a harmonic map of `z`.
    pub fn to_map(&self) -> HarmonicMap {
        HarmonicMap::from_parts(
            AnalyticFunction::linear(self.a, &AnalyticFunction::identity(), ZERO, &AnalyticFunction::identity(), self.c),
            AnalyticFunction::identity().scale(self.b.conj()),
        )
        .with_label("affine")
        .with_sense(if self.is_preserving() {
            Sense::Preserving
        } else {
            Sense::Reversing
        })
        .normalized_reversing()
    }
}

impl HarmonicMap {
    /// For a map built as parts `(H, G)` but flagged reversing, swap to the
    /// representative `conj(H + conj(G)) = G + conj(H)`.
    fn normalized_reversing(self) -> HarmonicMap {
        if self.sense == Sense::Preserving {
            return self;
        }
        match self.repr {
            Repr::Parts { h, g } => HarmonicMap {
                repr: Repr::Parts { h: g, g: h },
                ..self
            }
            .with_omega_hint(None),
            _ => self,
        }
    }
}

/// Post-composition `A ∘ f`.
pub fn affine_compose(a_map: &AffineMap, f: &HarmonicMap) -> Result<HarmonicMap, Error> {
    // A ∘ conj(F) = A′ ∘ F with A′ = (b, a, c).
    let (a, b, c) = match f.sense {
        Sense::Preserving => (a_map.a, a_map.b, a_map.c),
        Sense::Reversing => (a_map.b, a_map.a, a_map.c),
    };
    let preserving = a.norm() > b.norm();
    let label = format!("affine({})", f.label);
    let out = match &f.repr {
        Repr::Parts { h, g } => {
            let big_h = AnalyticFunction::linear(a, h, b, g, c);
            let big_g = AnalyticFunction::linear(b.conj(), h, a.conj(), g, ZERO);
            let hint = f.omega_hint().map(|w| {
                let num = affine_expr(b.conj(), a.conj(), w);
                let den = affine_expr(a, b, w);
                if preserving {
                    num.div(&den)
                } else {
                    den.div(&num)
                }
            });
            if preserving {
                HarmonicMap::from_parts(big_h, big_g).with_omega_hint(hint)
            } else {
                HarmonicMap::from_parts(big_g, big_h).with_omega_hint(hint)
            }
        }
        Repr::Dilatation { omega, .. } => {
            let hp = f.h_prime_function();
            let h0 = f.h_at_zero()?;
            // F = H + conj(G) with G(0) = 0 after moving conj(G(0)) into H.
            let f0 = a * h0 + b * h0.conj() + c;
            let num = affine_expr(b.conj(), a.conj(), omega);
            let den = affine_expr(a, b, omega);
            if preserving {
                HarmonicMap::from_derivative(hp.mul(&den), f0, num.div(&den))
            } else {
                HarmonicMap::from_derivative(hp.mul(&num), f0.conj(), den.div(&num))
            }
        }
    };
    let sense = if preserving {
        Sense::Preserving
    } else {
        Sense::Reversing
    };
    Ok(out.with_sense(sense).with_label(label))
}

/// Pre-composition `f ∘ φ` with an analytic `φ`.
pub fn precompose(f: &HarmonicMap, phi: &AnalyticFunction) -> Result<HarmonicMap, Error> {
    let label = format!("{}∘({phi})", f.label);
    let out = match &f.repr {
        Repr::Parts { h, g } => HarmonicMap::from_parts(h.compose(phi), g.compose(phi))
            .with_omega_hint(f.omega_hint().map(|w| w.compose(phi))),
        Repr::Dilatation { omega, .. } => {
            let hp = f.h_prime_function().compose(phi).mul(&phi.derivative());
            let f0 = f.representative_value(phi.value(ZERO)?, &QuadConfig::default())?;
            HarmonicMap::from_derivative(hp, f0, omega.compose(phi))
        }
    };
    Ok(out.with_sense(f.sense).with_label(label))
}

/// Elements of the group acting on sense-preserving maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupElement {
    /// `(h, g) ↦ (λh, λg)`, `λ ≠ 0`.
    Rp(Complex64),
    /// `(h, g) ↦ (h, μg)`, `|μ| = 1`.
    Rq(Complex64),
    /// `f ↦ f + conj(a·f)`, `|a| < 1`.
    I(Complex64),
}

fn check_unit(mu: Complex64) -> Result<(), Error> {
    finite(mu, "mu")?;
    if (mu.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::ParameterOutOfRange(format!("|mu| = {} is not 1", mu.norm())));
    }
    Ok(())
}

fn check_disk(a: Complex64) -> Result<(), Error> {
    finite(a, "a")?;
    if !(a.norm() < 1.0) {
        return Err(Error::ParameterOutOfRange(format!("|a| = {} is not below 1", a.norm())));
    }
    Ok(())
}

fn check_nonzero(lambda: Complex64) -> Result<(), Error> {
    finite(lambda, "lambda")?;
    if lambda.norm() == 0.0 {
        return Err(Error::ParameterOutOfRange("lambda must be nonzero".into()));
    }
    Ok(())
}

pub fn group_apply(f: &HarmonicMap, elem: GroupElement) -> Result<HarmonicMap, Error> {
    match elem {
        GroupElement::Rp(lambda) => {
            check_nonzero(lambda)?;
            let repr = match &f.repr {
                Repr::Parts { h, g } => Repr::Parts {
                    h: h.scale(lambda),
                    g: g.scale(lambda),
                },
                Repr::Dilatation { analytic, omega } => Repr::Dilatation {
                    analytic: match analytic {
                        AnalyticPart::Primitive(h) => AnalyticPart::Primitive(h.scale(lambda)),
                        AnalyticPart::Derivative { hprime, h0 } => AnalyticPart::Derivative {
                            hprime: hprime.scale(lambda),
                            h0: lambda * h0,
                        },
                    },
                    omega: omega.clone(),
                },
            };
            Ok(f.with_repr(repr).with_omega_hint(f.omega_hint().cloned()))
        }
        GroupElement::Rq(mu) => {
            check_unit(mu)?;
            let repr = match &f.repr {
                Repr::Parts { h, g } => Repr::Parts {
                    h: h.clone(),
                    g: g.scale(mu),
                },
                Repr::Dilatation { analytic, omega } => Repr::Dilatation {
                    analytic: analytic.clone(),
                    omega: omega.scale(mu),
                },
            };
            Ok(f.with_repr(repr).with_omega_hint(f.omega_hint().map(|w| w.scale(mu))))
        }
        GroupElement::I(a) => {
            check_disk(a)?;
            affine_compose(&AffineMap::new(ONE, a.conj(), ZERO)?, f)
        }
    }
}

/// The map `F` with `ω_F = μ·φ_a∘ω` and `H′ = λ·h′·(1 + conj(a)ω)/√(1−|a|²)`,
/// whose pre-Schwarzian equals that of `f` and whose Jacobian is `|λ|²·J_f`.
pub fn partner_map(
    f: &HarmonicMap,
    a: Complex64,
    mu: Complex64,
    lambda: Complex64,
) -> Result<HarmonicMap, Error> {
    check_disk(a)?;
    check_unit(mu)?;
    check_nonzero(lambda)?;
    let omega = f.omega_function();
    let den = affine_expr(ONE, a.conj(), &omega);
    let num = affine_expr(a, ONE, &omega);
    let scale = lambda / ((1.0 - a.norm()) * (1.0 + a.norm())).sqrt();
    let hp = f.h_prime_function().mul(&den).scale(scale);
    let omega_f = num.div(&den).scale(mu);
    let h0 = lambda * f.h_at_zero()?;
    Ok(HarmonicMap::from_derivative(hp, h0, omega_f)
        .with_sense(f.sense)
        .with_label(format!("partner({})", f.label)))
}

/// Best harmonic Möbius approximation of a sense-preserving `f` at `z0`.
pub fn best_harmonic_mobius(f: &HarmonicMap, z0: Complex64) -> Result<HarmonicMobius, Error> {
    if f.sense != Sense::Preserving {
        return Err(Error::domain(z0, "best harmonic Möbius needs a sense-preserving map"));
    }
    best_for_representative(f, z0)
}

pub(crate) fn best_for_representative(
    f: &HarmonicMap,
    z0: Complex64,
) -> Result<HarmonicMobius, Error> {
    let lj = f.local_jets(z0, LOCAL_ORDER)?;
    let a1 = lj.hp.value();
    if a1.norm() == 0.0 {
        return Err(Error::DegenerateJet { at: z0 });
    }
    let alpha = lj.omega.value().conj();
    let f0 = f.representative_value(z0, &QuadConfig::default())?;
    let a0 = (f0 - alpha * f0.conj()) / ((1.0 - alpha.norm()) * (1.0 + alpha.norm()));
    let r = lj.hp.coeff(1) / 2.0 / a1;
    let t = MobiusMap::new(a1 - a0 * r, a0, -r, ONE)?;
    HarmonicMobius::new(t, alpha, z0)
}

/// The identity map `f(z) = z`.
#[cfg(test)]
pub(crate) fn identity_map() -> HarmonicMap {
    HarmonicMap::from_parts(AnalyticFunction::identity(), AnalyticFunction::new(crate::expr::Expr::real(0.0)))
}
