use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::Error;

use super::{HarmonicMap, QuadConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderPoint {
    pub z: Complex64,
    pub f: Complex64,
}

/// Images of the polar grid `r_j = rmax·(j+1)/circles`, `θ_i = 2πi/rays`,
/// ordered circle by circle.
pub fn render_grid(
    f: &HarmonicMap,
    rays: usize,
    circles: usize,
    rmax: f64,
    cfg: &QuadConfig,
) -> Result<Vec<RenderPoint>, Error> {
    if rays == 0 || circles == 0 {
        return Err(Error::InvalidConfig("rays and circles must be positive".into()));
    }
    if !(rmax > 0.0 && rmax < 1.0) {
        return Err(Error::InvalidConfig(format!("rmax = {rmax} is not in (0, 1)")));
    }
    let points: Vec<Complex64> = (0..circles)
        .flat_map(|j| {
            let r = rmax * (j + 1) as f64 / circles as f64;
            (0..rays).map(move |i| Complex64::from_polar(r, 2.0 * PI * i as f64 / rays as f64))
        })
        .collect();
    let results: Vec<Result<RenderPoint, Error>> = points
        .par_iter()
        .map(|&z| f.evaluate(z, cfg).map(|v| RenderPoint { z, f: v }))
        .collect();
    results.into_iter().collect()
}
