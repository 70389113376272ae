//! Independent routes to `S_f`, used to cross-check the closed form.

use num_complex::Complex64;

use crate::bivariate::{bivariate_extract, BivariateCoeffs, BivariateConfig};
use crate::harmonic::best_for_representative;
use crate::harmonic::{HarmonicMap, LOCAL_ORDER};
use crate::Error;

use super::classical::schwarzian_from_derivative_jet;
use super::schwarzian;

pub const FD_STEP: f64 = 1e-3;

const I: Complex64 = Complex64::new(0.0, 1.0);

// Fourth-order central stencils on offsets −2..=2.
const D1: [f64; 5] = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
const D2: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];

fn check_stencil(z: Complex64, step: f64) -> Result<(), Error> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidConfig(format!("finite-difference step {step}")));
    }
    if z.norm() + 2.0 * std::f64::consts::SQRT_2 * step >= 1.0 {
        return Err(Error::StencilOutsideDomain { at: z });
    }
    Ok(())
}

/// Values of `v` on the 5×5 grid `z + h·(i + j·i)`, indexed `[i+2][j+2]`.
fn grid<T: Copy + Default>(
    z: Complex64,
    h: f64,
    v: impl Fn(Complex64) -> Result<T, Error>,
) -> Result<[[T; 5]; 5], Error> {
    let mut out = [[T::default(); 5]; 5];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let p = z + Complex64::new((i as f64 - 2.0) * h, (j as f64 - 2.0) * h);
            *slot = v(p)?;
        }
    }
    Ok(out)
}

/// `δ_zz − ½δ_z²` with `δ = log J_f`, from central differences of `δ`.
pub fn schwarzian_via_jacobian_fd_with(
    f: &HarmonicMap,
    z: Complex64,
    step: f64,
) -> Result<Complex64, Error> {
    check_stencil(z, step)?;
    let rep = f.representative();
    let g = grid(z, step, |p| {
        let lj = rep.local_jets(p, 1)?;
        Ok(lj.hp.value().norm_sqr().ln() + lj.d().ln())
    })?;
    let h = step;
    let (mut dx, mut dy, mut dxx, mut dyy, mut dxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for k in 0..5 {
        dx += D1[k] * g[k][2];
        dy += D1[k] * g[2][k];
        dxx += D2[k] * g[k][2];
        dyy += D2[k] * g[2][k];
        for l in 0..5 {
            dxy += D1[k] * D1[l] * g[k][l];
        }
    }
    let (dx, dy) = (dx / h, dy / h);
    let (dxx, dyy, dxy) = (dxx / (h * h), dyy / (h * h), dxy / (h * h));
    let dz = 0.5 * (dx - I * dy);
    let dzz = 0.25 * (Complex64::new(dxx - dyy, 0.0) - 2.0 * I * dxy);
    Ok(dzz - 0.5 * dz * dz)
}

pub fn schwarzian_via_jacobian_fd(f: &HarmonicMap, z: Complex64) -> Result<Complex64, Error> {
    schwarzian_via_jacobian_fd_with(f, z, FD_STEP)
}

/// `¼ΔS_f` from central differences of the closed-form `S_f`.
pub fn mixed_laplacian_fd(f: &HarmonicMap, z: Complex64, step: f64) -> Result<Complex64, Error> {
    check_stencil(z, step)?;
    let g = grid(z, step, |p| schwarzian(f, p))?;
    let mut lap = Complex64::new(0.0, 0.0);
    for k in 0..5 {
        lap += D2[k] * (g[k][2] + g[2][k]);
    }
    Ok(0.25 * lap / (step * step))
}

/// Classical Schwarzian of `h − conj(ω(z0))·g` at `z0`.
pub fn lemma1_schwarzian(f: &HarmonicMap, z0: Complex64) -> Result<Complex64, Error> {
    let lj = f.local_jets(z0, LOCAL_ORDER)?;
    let c = lj.omega.value().conj();
    let factor = lj.omega.scale(-c).offset(Complex64::new(1.0, 0.0));
    let dphi = lj.hp.try_mul(&factor)?;
    if dphi.value().norm() == 0.0 {
        return Err(Error::domain(z0, "h' - conj(ω(z0))g' vanishes"));
    }
    schwarzian_from_derivative_jet(&dphi)
}

/// Coefficients `c_mn` of the deviation `M_f⁻¹ ∘ f` around `z0`, as a
/// function of `z − z0`.
pub fn tamanoi_coefficients(
    f: &HarmonicMap,
    z0: Complex64,
    cfg: &BivariateConfig,
) -> Result<BivariateCoeffs, Error> {
    let rep = f.representative();
    let r = cfg.radii.iter().cloned().fold(0.0, f64::max);
    if z0.norm() + r >= 1.0 {
        return Err(Error::domain(z0, "sampling circles leave the disk"));
    }
    let m = best_for_representative(&rep, z0)?;
    bivariate_extract(
        |z| Ok(m.local_inverse_increment(rep.representative_increment(z0, z)?)),
        z0,
        cfg,
    )
}

pub fn tamanoi_schwarzian_with(
    f: &HarmonicMap,
    z0: Complex64,
    cfg: &BivariateConfig,
) -> Result<Complex64, Error> {
    let c = tamanoi_coefficients(f, z0, cfg)?;
    let c20 = c.get(2, 0);
    Ok(6.0 * (c.get(3, 0) - c20 * c20))
}

/// `S_f(z0) = 6(c₃₀ − c₂₀²)` from the deviation expansion.
pub fn tamanoi_schwarzian(f: &HarmonicMap, z0: Complex64) -> Result<Complex64, Error> {
    tamanoi_schwarzian_with(f, z0, &BivariateConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::AnalyticFunction;
    use crate::harmonic::catalog_map;
    use crate::operators::{classical_schwarzian, dbar_pre_schwarzian, pre_schwarzian};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const Z0: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn fd_on_analytic_koebe() {
        let k = AnalyticFunction::parse("z/(1-z)^2").unwrap();
        let f = HarmonicMap::analytic(k.clone());
        let z = c(0.2, 0.0);
        let fd = schwarzian_via_jacobian_fd(&f, z).unwrap();
        assert!((fd - classical_schwarzian(&k, z).unwrap()).norm() < 1e-5);
    }

    #[test]
    fn fd_on_harmonic_koebe() {
        let f = catalog_map("K").unwrap();
        let z = c(0.1, 0.1);
        let fd = schwarzian_via_jacobian_fd(&f, z).unwrap();
        assert!((fd - schwarzian(&f, z).unwrap()).norm() < 1e-5);
    }

    #[test]
    fn fd_on_affine_is_zero() {
        let f = HarmonicMap::from_parts(
            AnalyticFunction::parse("2*z+1").unwrap(),
            AnalyticFunction::parse("0.5*z").unwrap(),
        );
        assert!(schwarzian_via_jacobian_fd(&f, c(0.3, 0.3)).unwrap().norm() < 1e-9);
    }

    #[test]
    fn stencil_must_fit() {
        let f = catalog_map("K").unwrap();
        assert!(matches!(
            schwarzian_via_jacobian_fd(&f, c(0.9985, 0.0)),
            Err(Error::StencilOutsideDomain { .. })
        ));
    }

    #[test]
    fn dbar_pre_matches_fd() {
        let f = catalog_map("K").unwrap();
        let z = c(0.3, 0.0);
        let h = 1e-4;
        // ∂/∂z̄ = ½(∂x + i∂y)
        let px = (pre_schwarzian(&f, z + h).unwrap() - pre_schwarzian(&f, z - h).unwrap()) / (2.0 * h);
        let py = (pre_schwarzian(&f, z + I * h).unwrap() - pre_schwarzian(&f, z - I * h).unwrap())
            / (2.0 * h);
        let fd = 0.5 * (px + I * py);
        let v = dbar_pre_schwarzian(&f, z).unwrap();
        assert!((fd - v).norm() < 1e-5, "{fd} vs {v}");
    }

    #[test]
    fn mixed_laplacian_matches_fd_at_koebe_origin() {
        let f = catalog_map("K").unwrap();
        let fd = mixed_laplacian_fd(&f, Z0, FD_STEP).unwrap();
        assert!((fd - 3.0).norm() < 1e-5, "{fd}");
    }

    #[test]
    fn lemma_route() {
        let k = catalog_map("K").unwrap();
        assert!((lemma1_schwarzian(&k, Z0).unwrap() + 9.5).norm() < 1e-12);
        let s1 = catalog_map("S1").unwrap();
        let z = c(0.3, 0.0);
        assert!((lemma1_schwarzian(&s1, z).unwrap() - schwarzian(&s1, z).unwrap()).norm() < 1e-10);
        let phi = AnalyticFunction::parse("exp(z)").unwrap();
        let z = c(0.2, -0.3);
        let a = lemma1_schwarzian(&HarmonicMap::analytic(phi.clone()), z).unwrap();
        assert!((a - classical_schwarzian(&phi, z).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn tamanoi_koebe() {
        let k = catalog_map("K").unwrap();
        let coeffs = tamanoi_coefficients(&k, Z0, &BivariateConfig::default()).unwrap();
        assert!(coeffs.get(2, 0).norm() < 1e-8);
        assert!((coeffs.get(1, 0) - 1.0).norm() < 1e-8);
        assert!(coeffs.get(0, 1).norm() < 1e-8);
        let s = tamanoi_schwarzian(&k, Z0).unwrap();
        assert!((s + 9.5).norm() < 1e-6, "{s}");
    }

    #[test]
    fn tamanoi_analytic() {
        let phi = AnalyticFunction::parse("0.5*log((1+z)/(1-z))").unwrap();
        let f = HarmonicMap::analytic(phi.clone());
        let z = c(0.2, 0.1);
        let coeffs = tamanoi_coefficients(&f, z, &BivariateConfig::default()).unwrap();
        assert!(coeffs.get(2, 0).norm() < 1e-8);
        let s = tamanoi_schwarzian(&f, z).unwrap();
        assert!((s - classical_schwarzian(&phi, z).unwrap()).norm() < 1e-6);
    }

    #[test]
    fn tamanoi_second_coefficient_formula() {
        let k = catalog_map("K2").unwrap();
        let z = c(0.3, -0.2);
        let lj = k.local_jets(z, LOCAL_ORDER).unwrap();
        let w = lj.omega.value();
        let want = -0.5 * w.conj() * lj.omega.derivative(1) / (1.0 - w.norm_sqr());
        let coeffs = tamanoi_coefficients(&k, z, &BivariateConfig::default()).unwrap();
        assert!((coeffs.get(2, 0) - want).norm() < 1e-8);
        let s = tamanoi_schwarzian(&k, z).unwrap();
        assert!((s - schwarzian(&k, z).unwrap()).norm() < 1e-6);
    }
}
