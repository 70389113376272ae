//! Adaptive Gauss–Legendre integration of analytic integrands along segments.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::Error;

const NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Absolute tolerance over the whole segment.
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            tol: 1e-8,
            max_depth: 12,
        }
    }
}

impl QuadConfig {
    /// Settings for short increments where full double precision is wanted.
    pub fn tight() -> Self {
        QuadConfig {
            tol: 1e-15,
            max_depth: 12,
        }
    }
}

/// Nodes and weights on [-1, 1], from Newton iteration on P_16.
fn rule() -> &'static ([f64; NODES], [f64; NODES]) {
    static RULE: OnceLock<([f64; NODES], [f64; NODES])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = NODES;
        let mut x = [0.0; NODES];
        let mut w = [0.0; NODES];
        for i in 0..n {
            let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, t);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
                let dt = p1 / dp;
                t -= dt;
                if dt.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        (x, w)
    })
}

fn estimate<const M: usize, F>(
    f: &F,
    z0: Complex64,
    dz: Complex64,
    a: f64,
    b: f64,
) -> Result<[Complex64; M], Error>
where
    F: Fn(Complex64) -> Result<[Complex64; M], Error>,
{
    let (x, w) = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = [Complex64::new(0.0, 0.0); M];
    for i in 0..NODES {
        let s = mid + half * x[i];
        let v = f(z0 + dz * s)?;
        for (slot, vi) in acc.iter_mut().zip(v.iter()) {
            *slot += vi * w[i];
        }
    }
    for slot in acc.iter_mut() {
        *slot *= dz * half;
    }
    Ok(acc)
}

/// `∫ f` along the segment from `z0` to `z1`, componentwise.
pub fn integrate_segment<const M: usize, F>(
    f: F,
    z0: Complex64,
    z1: Complex64,
    cfg: &QuadConfig,
) -> Result<[Complex64; M], Error>
where
    F: Fn(Complex64) -> Result<[Complex64; M], Error>,
{
    let dz = z1 - z0;
    if dz.norm() == 0.0 {
        return Ok([Complex64::new(0.0, 0.0); M]);
    }
    let whole = estimate(&f, z0, dz, 0.0, 1.0)?;
    adapt(&f, z0, z1, dz, 0.0, 1.0, whole, 0, cfg)
}

#[allow(clippy::too_many_arguments)]
fn adapt<const M: usize, F>(
    f: &F,
    z0: Complex64,
    z1: Complex64,
    dz: Complex64,
    a: f64,
    b: f64,
    whole: [Complex64; M],
    depth: u32,
    cfg: &QuadConfig,
) -> Result<[Complex64; M], Error>
where
    F: Fn(Complex64) -> Result<[Complex64; M], Error>,
{
    let mid = 0.5 * (a + b);
    let left = estimate(f, z0, dz, a, mid)?;
    let right = estimate(f, z0, dz, mid, b)?;
    let mut sum = [Complex64::new(0.0, 0.0); M];
    let mut err: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..M {
        sum[i] = left[i] + right[i];
        err = err.max((sum[i] - whole[i]).norm());
        scale = scale.max(sum[i].norm());
    }
    // Accept at the absolute tolerance, or once rounding dominates.
    if err <= cfg.tol * (b - a) || err <= 1e-15 * scale {
        return Ok(sum);
    }
    if depth >= cfg.max_depth {
        return Err(Error::QuadratureFailure { at: z1 });
    }
    let l = adapt(f, z0, z1, dz, a, mid, left, depth + 1, cfg)?;
    let r = adapt(f, z0, z1, dz, mid, b, right, depth + 1, cfg)?;
    let mut out = [Complex64::new(0.0, 0.0); M];
    for i in 0..M {
        out[i] = l[i] + r[i];
    }
    Ok(out)
}
