use num_complex::Complex64;

use crate::analytic::AnalyticFunction;
use crate::jet::Jet;
use crate::Error;

/// `(Pφ, (Pφ)′)` from the jet of `φ′` (order at least 1).
pub fn pre_from_derivative_jet(dphi: &Jet) -> Result<(Complex64, Complex64), Error> {
    let at = dphi.center();
    if dphi.value().norm() == 0.0 {
        return Err(Error::CriticalPoint { at });
    }
    let n = dphi.order();
    let p = dphi.differentiate().try_div(&dphi.truncate(n.saturating_sub(1)))?;
    Ok((p.value(), p.derivative(1)))
}

/// `Sφ = (Pφ)′ − ½(Pφ)²` from the jet of `φ′` (order at least 2).
pub fn schwarzian_from_derivative_jet(dphi: &Jet) -> Result<Complex64, Error> {
    let (p, p1) = pre_from_derivative_jet(dphi)?;
    Ok(p1 - 0.5 * p * p)
}

pub fn classical_pre_schwarzian(phi: &AnalyticFunction, z: Complex64) -> Result<Complex64, Error> {
    let j = phi.jet(z, 2)?;
    if j.coeff(1).norm() == 0.0 {
        return Err(Error::CriticalPoint { at: z });
    }
    Ok(2.0 * j.coeff(2) / j.coeff(1))
}

pub fn classical_schwarzian(phi: &AnalyticFunction, z: Complex64) -> Result<Complex64, Error> {
    schwarzian_from_derivative_jet(&phi.jet(z, 3)?.differentiate())
}
