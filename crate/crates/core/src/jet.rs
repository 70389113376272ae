//! Truncated complex Taylor jets.
//!
//! A [`Jet`] of order `n` centred at `c` stores the scaled Taylor
//! coefficients `coeffs[k] = f^(k)(c) / k!` for `k = 0..=n`. All arithmetic
//! is truncated at the shared order, so every derivative up to `n` of a
//! composite expression is exact up to rounding.

use num_complex::Complex64;
use thiserror::Error;

/// Default jet order used by the operators (derivatives through the 4th).
pub const DEFAULT_ORDER: usize = 4;

/// Relative tolerance used when comparing jet centres.
const CENTER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("jet centres differ: {left} vs {right}")]
    CenterMismatch { left: Complex64, right: Complex64 },
    #[error("jet orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("division by a jet whose constant term is zero")]
    DivisionByZeroConstantTerm,
    #[error("branch point at the jet centre (constant term is zero)")]
    BranchPointAtCenter,
    #[error("non-finite jet coefficient")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transcendental {
    Sqrt,
    Log,
    Exp,
    Pow(Complex64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    center: Complex64,
    coeffs: Vec<Complex64>,
}

fn all_finite(c: &[Complex64]) -> bool {
    c.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn same_center(a: Complex64, b: Complex64) -> bool {
    a == b || (a - b).norm() <= CENTER_TOL * (1.0 + a.norm().max(b.norm()))
}

impl Jet {
    /// Builds a jet from raw scaled coefficients. The order is `coeffs.len() - 1`.
    pub fn from_coeffs(center: Complex64, coeffs: Vec<Complex64>) -> Result<Self, JetError> {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        if !all_finite(&coeffs) || !(center.re.is_finite() && center.im.is_finite()) {
            return Err(JetError::NonFinite);
        }
        Ok(Jet { center, coeffs })
    }

    fn finish(center: Complex64, coeffs: Vec<Complex64>) -> Result<Self, JetError> {
        if all_finite(&coeffs) {
            Ok(Jet { center, coeffs })
        } else {
            Err(JetError::NonFinite)
        }
    }

    pub fn constant(center: Complex64, value: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = value;
        Jet { center, coeffs }
    }

    /// The identity map `z ↦ z` expanded at `center`.
    pub fn variable(center: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = center;
        if order >= 1 {
            coeffs[1] = Complex64::new(1.0, 0.0);
        }
        Jet { center, coeffs }
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Scaled coefficient `f^(k)(c) / k!`; zero beyond the order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// The unscaled derivative `f^(k)(c)`.
    pub fn derivative(&self, k: usize) -> Complex64 {
        let fact: f64 = (2..=k).map(|i| i as f64).product();
        self.coeff(k) * fact
    }

    /// Jet of `f′`, one order lower (`k·coeffs[k]` shifted down).
    pub fn differentiate(&self) -> Jet {
        if self.order() == 0 {
            return Jet::constant(self.center, Complex64::new(0.0, 0.0), 0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        Jet {
            center: self.center,
            coeffs,
        }
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Jet {
        let n = (order + 1).min(self.coeffs.len());
        Jet {
            center: self.center,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Jet {
        Jet {
            center: self.center,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn offset(&self, shift: Complex64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += shift;
        out
    }

    pub fn neg(&self) -> Jet {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    /// Pointwise complex conjugate of the coefficients. This is the jet of
    /// `conj(f(conj(z)))` at `conj(c)`, not of `conj(f)`.
    pub fn conj_coeffs(&self) -> Jet {
        Jet {
            center: self.center.conj(),
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Evaluates the truncated Taylor polynomial at `center + t`.
    pub fn eval_poly(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c)
    }

    fn check_pair(&self, other: &Jet) -> Result<(), JetError> {
        if !same_center(self.center, other.center) {
            return Err(JetError::CenterMismatch {
                left: self.center,
                right: other.center,
            });
        }
        if self.order() != other.order() {
            return Err(JetError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_pair(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Jet::finish(self.center, coeffs)
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_pair(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Jet::finish(self.center, coeffs)
    }

    pub fn try_mul(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_pair(other)?;
        Jet::finish(self.center, cauchy(&self.coeffs, &other.coeffs))
    }

    pub fn try_div(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_pair(other)?;
        let b = &other.coeffs;
        if b[0] == Complex64::new(0.0, 0.0) {
            return Err(JetError::DivisionByZeroConstantTerm);
        }
        let n = self.coeffs.len();
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for j in 0..k {
                acc -= c[j] * b[k - j];
            }
            c[k] = acc / b[0];
        }
        Jet::finish(self.center, c)
    }

    pub fn recip(&self) -> Result<Jet, JetError> {
        Jet::constant(self.center, Complex64::new(1.0, 0.0), self.order()).try_div(self)
    }

    /// Integer power by repeated squaring; negative exponents go through [`Jet::recip`].
    pub fn powi(&self, n: i64) -> Result<Jet, JetError> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut result = Jet::constant(self.center, Complex64::new(1.0, 0.0), self.order());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Result<Jet, JetError> {
        let a = &self.coeffs;
        if a[0] == Complex64::new(0.0, 0.0) {
            return Err(JetError::BranchPointAtCenter);
        }
        let n = a.len();
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = a[0].sqrt();
        for k in 1..n {
            let mut acc = a[k];
            for j in 1..k {
                acc -= b[j] * b[k - j];
            }
            b[k] = acc / (b[0] * 2.0);
        }
        Jet::finish(self.center, b)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<Jet, JetError> {
        let a = &self.coeffs;
        if a[0] == Complex64::new(0.0, 0.0) {
            return Err(JetError::BranchPointAtCenter);
        }
        let n = a.len();
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = a[0].ln();
        for k in 1..n {
            let mut acc = a[k] * k as f64;
            for j in 1..k {
                acc -= b[j] * a[k - j] * j as f64;
            }
            b[k] = acc / (a[0] * k as f64);
        }
        Jet::finish(self.center, b)
    }

    pub fn exp(&self) -> Result<Jet, JetError> {
        let a = &self.coeffs;
        let n = a.len();
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = a[0].exp();
        for k in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += a[j] * b[k - j] * j as f64;
            }
            b[k] = acc / k as f64;
        }
        Jet::finish(self.center, b)
    }

    /// Principal power `self^e` for a constant complex exponent.
    pub fn powc(&self, e: Complex64) -> Result<Jet, JetError> {
        let a = &self.coeffs;
        if a[0] == Complex64::new(0.0, 0.0) {
            return Err(JetError::BranchPointAtCenter);
        }
        let n = a.len();
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = a[0].powc(e);
        // (a·b′ = e·a′·b) in coefficient form
        for k in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += a[j] * b[k - j] * ((e + 1.0) * j as f64 - k as f64);
            }
            b[k] = acc / (a[0] * k as f64);
        }
        Jet::finish(self.center, b)
    }

    /// `self^e` for a jet exponent, as `exp(e·log(self))`.
    pub fn powj(&self, e: &Jet) -> Result<Jet, JetError> {
        e.try_mul(&self.ln()?)?.exp()
    }

    pub fn transcend(&self, f: Transcendental) -> Result<Jet, JetError> {
        match f {
            Transcendental::Sqrt => self.sqrt(),
            Transcendental::Log => self.ln(),
            Transcendental::Exp => self.exp(),
            Transcendental::Pow(e) => self.powc(e),
        }
    }

    /// Jet of `outer ∘ inner` at `inner.center()`.
    ///
    /// `outer` must be centred at `inner.value()`.
    pub fn compose(outer: &Jet, inner: &Jet) -> Result<Jet, JetError> {
        if !same_center(outer.center, inner.value()) {
            return Err(JetError::CenterMismatch {
                left: outer.center,
                right: inner.value(),
            });
        }
        if outer.order() != inner.order() {
            return Err(JetError::OrderMismatch {
                left: outer.order(),
                right: inner.order(),
            });
        }
        // Horner in the increment u = inner - inner(c), which has no constant term.
        let mut du = inner.clone();
        du.coeffs[0] = Complex64::new(0.0, 0.0);
        let n = outer.order();
        let mut acc = Jet::constant(inner.center, outer.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.try_mul(&du)?;
            acc.coeffs[0] += outer.coeffs[k];
        }
        Jet::finish(acc.center, acc.coeffs)
    }
}

fn cauchy(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    (0..n)
        .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
        .collect()
}

/// Binary operation dispatcher.
pub fn jet_arith(a: &Jet, b: &Jet, op: ArithOp) -> Result<Jet, JetError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

pub fn jet_transcend(a: &Jet, f: Transcendental) -> Result<Jet, JetError> {
    a.transcend(f)
}

pub fn jet_compose(outer: &Jet, inner: &Jet) -> Result<Jet, JetError> {
    Jet::compose(outer, inner)
}
