use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::AnalyticFunction;
use crate::expr::Expr;
use crate::harmonic::HarmonicMap;
use crate::Error;

/// `w ↦ (a·w + b)/(c·w + d)` with `ad − bc ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, Error> {
        let m = MobiusMap { a, b, c, d };
        let det = m.det();
        if [a, b, c, d]
            .iter()
            .any(|x| !(x.re.is_finite() && x.im.is_finite()))
        {
            return Err(Error::ParameterOutOfRange("non-finite Möbius coefficient".into()));
        }
        let scale = [a, b, c, d].iter().map(|x| x.norm()).fold(0.0, f64::max);
        if det.norm() <= 1e-14 * scale * scale {
            return Err(Error::ParameterOutOfRange("Möbius determinant ad - bc vanishes".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        MobiusMap {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn eval(&self, w: Complex64) -> Result<Complex64, Error> {
        let den = self.c * w + self.d;
        if den.norm() == 0.0 {
            return Err(Error::domain(w, "pole of Möbius map"));
        }
        Ok((self.a * w + self.b) / den)
    }

    pub fn derivative(&self, w: Complex64) -> Result<Complex64, Error> {
        let den = self.c * w + self.d;
        if den.norm() == 0.0 {
            return Err(Error::domain(w, "pole of Möbius map"));
        }
        Ok(self.det() / (den * den))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// The map as an expression in `z`, shifted so that `w = z − shift`.
    pub fn to_function_shifted(&self, shift: Complex64) -> AnalyticFunction {
        let w = if shift == Complex64::new(0.0, 0.0) {
            Expr::Var
        } else {
            Expr::sub(Expr::Var, Expr::Const(shift))
        };
        let num = Expr::add(Expr::mul(Expr::Const(self.a), w.clone()), Expr::Const(self.b));
        let den = Expr::add(Expr::mul(Expr::Const(self.c), w), Expr::Const(self.d));
        AnalyticFunction::new(Expr::div(num, den))
    }

    pub fn to_function(&self) -> AnalyticFunction {
        self.to_function_shifted(Complex64::new(0.0, 0.0))
    }
}

/// `M = T + α·conj(T)` with `|α| < 1`; `T` acts on `t = z − center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarmonicMobius {
    pub t: MobiusMap,
    pub alpha: Complex64,
    pub center: Complex64,
}

impl HarmonicMobius {
    pub fn new(t: MobiusMap, alpha: Complex64, center: Complex64) -> Result<Self, Error> {
        if alpha.norm() >= 1.0 {
            return Err(Error::ParameterOutOfRange(format!(
                "|alpha| = {} is not below 1",
                alpha.norm()
            )));
        }
        Ok(HarmonicMobius { t, alpha, center })
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, Error> {
        let v = self.t.eval(z - self.center)?;
        Ok(v + self.alpha * v.conj())
    }

    /// Inverse of `M` near the center, given the image increment
    /// `Δ = w − M(center)`. Returns `t = z − center`.
    pub fn local_inverse_increment(&self, delta: Complex64) -> Complex64 {
        let alpha = self.alpha;
        let den = (1.0 - alpha.norm()) * (1.0 + alpha.norm());
        let u = (delta - alpha * delta.conj()) / den;
        // T(t) − T(0) = u solved for t directly, without forming T(0) + u.
        let MobiusMap { c, d, .. } = self.t;
        u * d * d / (self.t.det() - u * c * d)
    }

    /// The harmonic map `T(z − center) + α·conj(T(z − center))`.
    pub fn to_map(&self) -> HarmonicMap {
        let h = self.t.to_function_shifted(self.center);
        let g = h.scale(self.alpha.conj());
        HarmonicMap::from_parts(h, g).with_label("harmonic Möbius")
    }
}
