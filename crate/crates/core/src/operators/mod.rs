//! Pre-Schwarzian and Schwarzian operators.
//!
//! For `f = h + conj(g)` with dilatation `ω` and `D = 1 − |ω|²`:
//!
//! ```text
//! P_f = h″/h′ − conj(ω)·ω′/D
//! S_f = Sh + conj(ω)/D·(h″/h′·ω′ − ω″) − 3/2·(ω′·conj(ω)/D)²
//! ```
//!
//! Sense-reversing maps are handled through their representative, since
//! `P_conj(f) = P_f` and `S_conj(f) = S_f`.

mod classical;
mod oracles;

pub use classical::{
    classical_pre_schwarzian, classical_schwarzian, pre_from_derivative_jet,
    schwarzian_from_derivative_jet,
};
pub use oracles::{
    lemma1_schwarzian, mixed_laplacian_fd, schwarzian_via_jacobian_fd,
    schwarzian_via_jacobian_fd_with, tamanoi_coefficients, tamanoi_schwarzian,
    tamanoi_schwarzian_with, FD_STEP,
};

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::AnalyticFunction;
use crate::harmonic::{HarmonicMap, LocalJets, Sense, LOCAL_ORDER};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Pre,
    Schw,
    Cdo,
    Jac,
    DbarPre,
    Lap,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Pre => "pre",
            Op::Schw => "schw",
            Op::Cdo => "cdo",
            Op::Jac => "jac",
            Op::DbarPre => "dbarpre",
            Op::Lap => "lap",
        }
    }

    pub fn from_name(s: &str) -> Option<Op> {
        [Op::Pre, Op::Schw, Op::Cdo, Op::Jac, Op::DbarPre, Op::Lap]
            .into_iter()
            .find(|o| o.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorValue {
    pub value: Complex64,
    pub at: Complex64,
    pub op: Op,
}

/// Local quantities shared by the operator formulas.
struct Local {
    w: Complex64,
    w1: Complex64,
    w2: Complex64,
    w3: Complex64,
    ph: Complex64,
    ph1: Complex64,
    d: f64,
}

impl Local {
    fn new(lj: &LocalJets) -> Local {
        let pre = lj.pre_h();
        Local {
            w: lj.omega.value(),
            w1: lj.omega.derivative(1),
            w2: lj.omega.derivative(2),
            w3: lj.omega.derivative(3),
            ph: pre.value(),
            ph1: pre.derivative(1),
            d: lj.d(),
        }
    }

    fn sh(&self) -> Complex64 {
        self.ph1 - 0.5 * self.ph * self.ph
    }

    fn pre(&self) -> Complex64 {
        self.ph - self.w.conj() * self.w1 / self.d
    }

    fn schw(&self) -> Complex64 {
        let t = self.w1 * self.w.conj() / self.d;
        self.sh() + self.w.conj() / self.d * (self.ph * self.w1 - self.w2) - 1.5 * t * t
    }
}

fn local(f: &HarmonicMap, z: Complex64) -> Result<Local, Error> {
    Ok(Local::new(&f.local_jets(z, LOCAL_ORDER)?))
}

fn finite(v: Complex64, z: Complex64) -> Result<Complex64, Error> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: z })
    }
}

/// `P_f(z)`.
pub fn pre_schwarzian(f: &HarmonicMap, z: Complex64) -> Result<Complex64, Error> {
    finite(local(f, z)?.pre(), z)
}

/// `S_f(z)`.
pub fn schwarzian(f: &HarmonicMap, z: Complex64) -> Result<Complex64, Error> {
    finite(local(f, z)?.schw(), z)
}

/// Classical Schwarzian of the analytic part `h` at `z`.
pub fn analytic_part_schwarzian(f: &HarmonicMap, z: Complex64) -> Result<Complex64, Error> {
    finite(local(f, z)?.sh(), z)
}

/// The Schwarzian `𝕊f` built from a square root `q` of the dilatation.
///
/// Without `q`, the principal square root of `ω` is used, which requires
/// `ω(z) ≠ 0`.
pub fn cdo_schwarzian(
    f: &HarmonicMap,
    z: Complex64,
    q: Option<&AnalyticFunction>,
) -> Result<Complex64, Error> {
    let lj = f.local_jets(z, LOCAL_ORDER)?;
    let l = Local::new(&lj);
    let qj = match q {
        Some(q) => {
            let qj = q.jet(z, LOCAL_ORDER)?;
            let sq = qj.try_mul(&qj)?;
            let scale = lj.omega.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
            let ok = (0..=LOCAL_ORDER)
                .all(|k| (sq.coeff(k) - lj.omega.coeff(k)).norm() <= 1e-9 * scale);
            if !ok {
                return Err(Error::QMismatch { at: z });
            }
            qj
        }
        None => {
            if lj.omega.value().norm() == 0.0 {
                return Err(Error::DilatationZeroNeedsQ { at: z });
            }
            lj.omega.sqrt()?
        }
    };
    let q0 = qj.value();
    let q1 = qj.derivative(1);
    let q2 = qj.derivative(2);
    let den = 1.0 + q0.norm_sqr();
    let t = q1 * q0.conj() / den;
    finite(
        l.sh() + 2.0 * q0.conj() / den * (q2 - q1 * l.ph) - 4.0 * t * t,
        z,
    )
}

/// `J_f = |h′|² − |g′|²`, negative for sense-reversing maps.
pub fn jacobian(f: &HarmonicMap, z: Complex64) -> Result<f64, Error> {
    let lj = f.local_jets(z, 1)?;
    let j = lj.hp.value().norm_sqr() * lj.d();
    Ok(match f.sense() {
        Sense::Preserving => j,
        Sense::Reversing => -j,
    })
}

/// `∂P_f/∂z̄ = −|ω′|²/(1 − |ω|²)²`.
pub fn dbar_pre_schwarzian(f: &HarmonicMap, z: Complex64) -> Result<f64, Error> {
    let l = local(f, z)?;
    let v = -l.w1.norm_sqr() / (l.d * l.d);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: z })
    }
}

/// `∂S_f/∂z̄ = conj(ω′)·(φ₁/D² − 3ω′²·conj(ω)/D³)` with `φ₁ = ω′·h″/h′ − ω″`.
pub fn dbar_schwarzian(f: &HarmonicMap, z: Complex64) -> Result<Complex64, Error> {
    let l = local(f, z)?;
    let phi1 = l.w1 * l.ph - l.w2;
    let d = l.d;
    finite(
        l.w1.conj() * (phi1 / (d * d) - 3.0 * l.w1 * l.w1 * l.w.conj() / (d * d * d)),
        z,
    )
}

/// `∂²S_f/∂z̄∂z`; the Laplacian of `S_f` is four times this.
pub fn mixed_laplacian_schwarzian(f: &HarmonicMap, z: Complex64) -> Result<Complex64, Error> {
    let l = local(f, z)?;
    let phi1 = l.w1 * l.ph - l.w2;
    let phi1p = l.w2 * l.ph + l.w1 * l.ph1 - l.w3;
    let phi2 = phi1 * l.w1 - 3.0 * l.w1 * l.w2;
    let (wc, w1c, d) = (l.w.conj(), l.w1.conj(), l.d);
    let d2 = d * d;
    let v = phi2 * 2.0 * wc * w1c / (d2 * d) + phi1p * w1c / d2
        - 9.0 * l.w1 * l.w1 * l.w1 * wc * wc * w1c / (d2 * d2);
    finite(v, z)
}

pub fn evaluate_op(
    f: &HarmonicMap,
    op: Op,
    z: Complex64,
    q: Option<&AnalyticFunction>,
) -> Result<OperatorValue, Error> {
    let value = match op {
        Op::Pre => pre_schwarzian(f, z)?,
        Op::Schw => schwarzian(f, z)?,
        Op::Cdo => cdo_schwarzian(f, z, q)?,
        Op::Jac => Complex64::new(jacobian(f, z)?, 0.0),
        Op::DbarPre => Complex64::new(dbar_pre_schwarzian(f, z)?, 0.0),
        Op::Lap => mixed_laplacian_schwarzian(f, z)?,
    };
    Ok(OperatorValue { value, at: z, op })
}
