//! Recovery of the coefficients `c_mn` in
//! `F(z) = Σ c_mn (z − c)^m conj(z − c)^n` from samples on small circles.
//!
//! On the circle of radius ρ the `θ`-frequency `k = m − n` collects the terms
//! `c_mn ρ^(m+n)`. A DFT in `θ` separates frequencies, then a least-squares
//! fit across radii separates powers of ρ. The fit carries a few powers above
//! the requested degree so that truncation is absorbed rather than aliased
//! into the reported coefficients.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct BivariateConfig {
    pub radii: Vec<f64>,
    pub angles: usize,
    pub degree: usize,
    pub cond_threshold: f64,
}

impl Default for BivariateConfig {
    fn default() -> Self {
        BivariateConfig {
            radii: vec![0.01, 0.02, 0.03],
            angles: 64,
            degree: 3,
            cond_threshold: 1e8,
        }
    }
}

impl BivariateConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let d = self.degree;
        if self.radii.len() < d.div_ceil(2).max(1) {
            return Err(Error::InvalidConfig(format!(
                "degree {d} needs at least {} radii",
                d.div_ceil(2).max(1)
            )));
        }
        if self.angles < 2 * d + 1 {
            return Err(Error::InvalidConfig(format!(
                "degree {d} needs at least {} angles",
                2 * d + 1
            )));
        }
        if self.radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::InvalidConfig("radii must be positive".into()));
        }
        let mut sorted = self.radii.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig("radii must be distinct".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BivariateCoeffs {
    pub center: Complex64,
    pub degree: usize,
    table: Vec<Vec<Complex64>>,
    /// Largest condition number met in the radial fits.
    pub condition: f64,
}

impl BivariateCoeffs {
    /// `c_mn`; zero outside `m + n ≤ degree`.
    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        if m + n > self.degree {
            return Complex64::new(0.0, 0.0);
        }
        self.table[m][n]
    }

    /// All `(m, n, c_mn)` with `m + n ≤ degree`, ordered by total degree then `m`.
    pub fn entries(&self) -> Vec<(usize, usize, Complex64)> {
        let mut out = Vec::new();
        for total in 0..=self.degree {
            for m in (0..=total).rev() {
                out.push((m, total - m, self.table[m][total - m]));
            }
        }
        out
    }
}

pub fn bivariate_extract<F>(
    f: F,
    center: Complex64,
    cfg: &BivariateConfig,
) -> Result<BivariateCoeffs, Error>
where
    F: Fn(Complex64) -> Result<Complex64, Error>,
{
    cfg.validate()?;
    let d = cfg.degree as i64;
    let n_ang = cfg.angles;
    let radii = &cfg.radii;
    let rho_max = radii.iter().cloned().fold(0.0, f64::max);

    let twiddle: Vec<Complex64> = (0..n_ang)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n_ang as f64))
        .collect();

    // spectra[r][k + d] = (1/N) Σ_j F(center + ρ_r e^{iθ_j}) e^{−ikθ_j}
    let mut spectra = Vec::with_capacity(radii.len());
    for &rho in radii {
        let samples: Vec<Complex64> = twiddle
            .iter()
            .map(|w| {
                let z = center + w * rho;
                let v = f(z)?;
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::NonFinite { at: z });
                }
                Ok(v)
            })
            .collect::<Result<_, Error>>()?;
        let mut row = Vec::with_capacity((2 * d + 1) as usize);
        for k in -d..=d {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, s) in samples.iter().enumerate() {
                let idx = ((-k).rem_euclid(n_ang as i64) as usize * j) % n_ang;
                acc += s * twiddle[idx];
            }
            row.push(acc / n_ang as f64);
        }
        spectra.push(row);
    }

    let deg = cfg.degree;
    let mut table = vec![vec![Complex64::new(0.0, 0.0); deg + 1]; deg + 1];
    let mut worst_cond: f64 = 1.0;
    let n_rad = radii.len();
    for k in -d..=d {
        let ak = k.unsigned_abs() as usize;
        let needed = (deg - ak) / 2 + 1;
        let ncol = n_rad.min(needed + 2);
        let powers: Vec<usize> = (0..ncol).map(|i| ak + 2 * i).collect();
        let a = DMatrix::from_fn(n_rad, ncol, |r, i| (radii[r] / rho_max).powi(powers[i] as i32));
        let b = DMatrix::from_fn(n_rad, 2, |r, col| {
            let v = spectra[r][(k + d) as usize];
            if col == 0 {
                v.re
            } else {
                v.im
            }
        });
        let svd = a.svd(true, true);
        let sv = &svd.singular_values;
        let smax = sv.max();
        let smin = sv.min();
        let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        if !(cond <= cfg.cond_threshold) {
            return Err(Error::IllConditioned { cond });
        }
        worst_cond = worst_cond.max(cond);
        let x = svd
            .solve(&b, 0.0)
            .map_err(|_| Error::IllConditioned { cond })?;
        for (i, &p) in powers.iter().enumerate() {
            if p > deg {
                continue;
            }
            let m = (p as i64 + k) / 2;
            let n = (p as i64 - k) / 2;
            let scale = rho_max.powi(p as i32);
            table[m as usize][n as usize] = Complex64::new(x[(i, 0)], x[(i, 1)]) / scale;
        }
    }

    Ok(BivariateCoeffs {
        center,
        degree: deg,
        table,
        condition: worst_cond,
    })
}
