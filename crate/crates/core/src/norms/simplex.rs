//! Bounded-iteration downhill simplex on the plane.

use num_complex::Complex64;

/// Maximizes `f` starting from `start` with initial edge `step`. Returns the
/// best point, its value and the number of evaluations. Non-finite values
/// are treated as −∞.
pub fn maximize<F>(f: F, start: Complex64, step: f64, iters: usize) -> (Complex64, f64, usize)
where
    F: Fn(Complex64) -> f64,
{
    let mut evals = 0usize;
    let mut eval = |z: Complex64| {
        evals += 1;
        let v = f(z);
        if v.is_finite() {
            v
        } else {
            f64::NEG_INFINITY
        }
    };
    let mut pts = [
        start,
        start + Complex64::new(step, 0.0),
        start + Complex64::new(0.0, step),
    ];
    let mut vals = [eval(pts[0]), eval(pts[1]), eval(pts[2])];

    for _ in 0..iters {
        // Order best first; ties keep the earlier vertex.
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
        pts = [pts[idx[0]], pts[idx[1]], pts[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];

        let centroid = (pts[0] + pts[1]) * 0.5;
        let worst = pts[2];
        let reflected = centroid + (centroid - worst);
        let vr = eval(reflected);
        if vr > vals[0] {
            let expanded = centroid + (centroid - worst) * 2.0;
            let ve = eval(expanded);
            if ve > vr {
                pts[2] = expanded;
                vals[2] = ve;
            } else {
                pts[2] = reflected;
                vals[2] = vr;
            }
        } else if vr > vals[1] {
            pts[2] = reflected;
            vals[2] = vr;
        } else {
            let (toward, vt) = if vr > vals[2] {
                (reflected, vr)
            } else {
                (worst, vals[2])
            };
            let contracted = centroid + (toward - centroid) * 0.5;
            let vc = eval(contracted);
            if vc > vt {
                pts[2] = contracted;
                vals[2] = vc;
            } else {
                for k in 1..3 {
                    pts[k] = pts[0] + (pts[k] - pts[0]) * 0.5;
                    vals[k] = eval(pts[k]);
                }
            }
        }
    }
    let mut best = 0;
    for k in 1..3 {
        if vals[k] > vals[best] {
            best = k;
        }
    }
    (pts[best], vals[best], evals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_peak() {
        let peak = Complex64::new(0.3, -0.2);
        let (z, v, n) = maximize(|z| 1.0 - (z - peak).norm_sqr(), Complex64::new(0.0, 0.0), 0.1, 80);
        assert!((z - peak).norm() < 1e-4);
        assert!((v - 1.0).abs() < 1e-8);
        assert!(n > 80);
    }

    #[test]
    fn never_worse_than_start() {
        let start = Complex64::new(0.1, 0.1);
        let f = |z: Complex64| -(z.re * 3.0).sin().abs() - z.im.abs();
        let (_, v, _) = maximize(f, start, 0.05, 30);
        assert!(v >= f(start));
    }
}
