//! Acceptance criteria. Runs as a plain binary so that every criterion
//! prints one PASS/FAIL line; exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::Instant;

use harmonic_schwarzian::analytic::{disk_automorphism, AnalyticFunction};
use harmonic_schwarzian::harmonic::{
    affine_compose, catalog_map, partner_map, precompose, render_grid, shear, AffineMap,
    QuadConfig, LOCAL_ORDER,
};
use harmonic_schwarzian::norms::{
    becker_check, becker_lhs, hyperbolic_sup, weighted_modulus, NormOp, SearchConfig,
};
use harmonic_schwarzian::operators::{
    classical_pre_schwarzian, classical_schwarzian, dbar_pre_schwarzian, jacobian,
    lemma1_schwarzian, mixed_laplacian_fd, mixed_laplacian_schwarzian, pre_schwarzian,
    schwarzian, schwarzian_via_jacobian_fd, tamanoi_schwarzian, FD_STEP,
};
use harmonic_schwarzian::{HarmonicMap, HarmonicMobius, MobiusMap, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn disk_point(rng: &mut ChaCha8Rng, rmax: f64) -> C64 {
    let r = rmax * rng.gen::<f64>().sqrt();
    C64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
}

fn complex_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> C64 {
    c(rng.gen_range(lo..hi), rng.gen_range(lo..hi))
}

fn map(name: &str) -> HarmonicMap {
    catalog_map(name).expect("catalog name")
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Largest deviation of `f` from `want` over the points, with the worst point.
fn worst<F>(points: &[C64], mut f: F) -> Result<(f64, C64), String>
where
    F: FnMut(C64) -> Result<f64, String>,
{
    let mut out = (0.0, c(0.0, 0.0));
    for &z in points {
        let e = f(z)?;
        if !(e <= out.0) {
            out = (e, z);
        }
    }
    Ok(out)
}

fn criterion_1() -> Outcome {
    let l = map("L");
    let mut g = rng(1);
    let pts: Vec<C64> = (0..1000).map(|_| disk_point(&mut g, 0.999)).collect();
    let (err, at) = worst(&pts, |z| Ok((ok(weighted_modulus(&l, NormOp::S, z))? - 1.5).abs()))?;
    ensure!(err <= 1e-9, "weighted modulus off by {err:e} at {at}");
    let r = ok(hyperbolic_sup(&l, NormOp::S, &SearchConfig::default()))?;
    ensure!((r.value - 1.5).abs() <= 1e-6, "norm estimate {}", r.value);
    Ok(format!("max pointwise error {err:.1e}, estimate {}", r.value))
}

fn criterion_2() -> Outcome {
    let s1 = map("S1");
    let r = ok(hyperbolic_sup(&s1, NormOp::S, &SearchConfig::default()))?;
    ensure!((r.value - 2.5).abs() <= 1e-6, "norm estimate {}", r.value);
    ensure!(r.argmax.im.abs() <= 1e-9, "argmax {} is off the real axis", r.argmax);
    for x in [0.0, 0.3, -0.3, 0.7, -0.7] {
        let v = ok(weighted_modulus(&s1, NormOp::S, c(x, 0.0)))?;
        ensure!((v - 2.5).abs() <= 1e-9, "weighted modulus {v} at r = {x}");
    }
    Ok(format!("estimate {} at {}", r.value, r.argmax))
}

fn criterion_3() -> Outcome {
    let r = ok(hyperbolic_sup(&map("S2"), NormOp::S, &SearchConfig::default()))?;
    ensure!((r.value - 4.0).abs() <= 1e-6, "norm estimate {}", r.value);
    ensure!(r.argmax.norm() <= 1e-9, "argmax {}", r.argmax);
    Ok(format!("estimate {} at {}", r.value, r.argmax))
}

fn criterion_4() -> Outcome {
    let k = map("K");
    let r = ok(hyperbolic_sup(&k, NormOp::S, &SearchConfig::default()))?;
    ensure!((r.value - 9.5).abs() <= 1e-6, "norm estimate {}", r.value);
    ensure!(r.argmax.norm() <= 1e-9, "argmax {}", r.argmax);
    for x in [0.0, 0.25, -0.4, 0.6, -0.85] {
        let v = ok(weighted_modulus(&k, NormOp::S, c(x, 0.0)))?;
        ensure!((v - 9.5).abs() <= 1e-8, "weighted modulus {v} at r = {x}");
    }
    Ok(format!("estimate {} at {}", r.value, r.argmax))
}

/// `2q(r)/(1+r²)²` with `q = 2r⁴+4r³+7r²+4r+2`.
fn k2_factored(r: f64) -> f64 {
    let q = (((2.0 * r + 4.0) * r + 7.0) * r + 4.0) * r + 2.0;
    2.0 * q / ((1.0 + r * r) * (1.0 + r * r))
}

fn criterion_5() -> Outcome {
    let k2 = map("K2");
    // Factored form against the operator first.
    for r in [0.0, 0.2, 0.5, 0.8, 0.95] {
        let v = ok(weighted_modulus(&k2, NormOp::S, c(r, 0.0)))?;
        ensure!(
            (v - k2_factored(r)).abs() <= 1e-9 * v,
            "factored form {} vs operator {v} at r = {r}",
            k2_factored(r)
        );
    }
    let vals: Vec<f64> = [0.9, 0.99, 0.999]
        .iter()
        .map(|&r| ok(weighted_modulus(&k2, NormOp::S, c(r, 0.0))))
        .collect::<Result<_, _>>()?;
    ensure!(vals[0] < vals[1] && vals[1] < vals[2], "not increasing: {vals:?}");
    ensure!((vals[2] - 9.5).abs() <= 0.095, "value {} at r = 0.999", vals[2]);
    let r = ok(hyperbolic_sup(&k2, NormOp::S, &SearchConfig::default()))?;
    ensure!(r.boundary, "boundary flag not set (argmax {})", r.argmax);
    ensure!(r.value >= 9.45, "norm estimate {}", r.value);
    Ok(format!("values {vals:?}, estimate {} at {}", r.value, r.argmax))
}

fn criterion_6() -> Outcome {
    let k = AnalyticFunction::parse("k(z)").expect("parses");
    let s = AnalyticFunction::parse("s(z)").expect("parses");
    let z0 = c(0.0, 0.0);
    let sk = ok(classical_schwarzian(&k, z0))?;
    let ss = ok(classical_schwarzian(&s, z0))?;
    ensure!((sk + 6.0).norm() <= 1e-12, "Sk(0) = {sk}");
    ensure!((ss - 2.0).norm() <= 1e-12, "Ss(0) = {ss}");
    let cfg = SearchConfig::default();
    let nk = ok(hyperbolic_sup(&map("k"), NormOp::S, &cfg))?;
    let ns = ok(hyperbolic_sup(&map("s"), NormOp::S, &cfg))?;
    ensure!((nk.value - 6.0).abs() <= 1e-6, "norm of Sk {}", nk.value);
    ensure!((ns.value - 2.0).abs() <= 1e-6, "norm of Ss {}", ns.value);
    Ok(format!("norms {} and {}", nk.value, ns.value))
}

fn criterion_7() -> Outcome {
    let l = map("L");
    let p0 = ok(pre_schwarzian(&l, c(0.0, 0.0)))?;
    ensure!((p0 - 3.0).norm() <= 1e-12, "P_L(0) = {p0}");
    let r = ok(hyperbolic_sup(&l, NormOp::P, &SearchConfig::default()))?;
    ensure!(r.value >= 4.999, "norm estimate {}", r.value);
    ensure!(r.boundary, "boundary flag not set (argmax {})", r.argmax);
    Ok(format!("estimate {} at {}", r.value, r.argmax))
}

fn criterion_8() -> Outcome {
    let mut g = rng(8);
    let mut worst_err = [0.0f64; 3];
    for name in ["K", "L", "S1", "S2", "K2"] {
        let f = map(name);
        for _ in 0..10 {
            let z = disk_point(&mut g, 0.7);
            let s = ok(schwarzian(&f, z))?;
            let e = [
                (ok(lemma1_schwarzian(&f, z))? - s).norm(),
                (ok(schwarzian_via_jacobian_fd(&f, z))? - s).norm(),
                (ok(tamanoi_schwarzian(&f, z))? - s).norm(),
            ];
            for (k, (tol, what)) in [(1e-10, "lemma"), (1e-5, "finite differences"), (1e-6, "deviation")]
                .iter()
                .enumerate()
            {
                ensure!(e[k] <= *tol, "{name} at {z}: {what} route off by {:e}", e[k]);
                worst_err[k] = worst_err[k].max(e[k]);
            }
        }
    }
    Ok(format!(
        "worst errors {:.1e} / {:.1e} / {:.1e}",
        worst_err[0], worst_err[1], worst_err[2]
    ))
}

fn pair_error(f: &HarmonicMap, g: &HarmonicMap, z: C64) -> Result<f64, String> {
    let dp = (ok(pre_schwarzian(f, z))? - ok(pre_schwarzian(g, z))?).norm();
    let ds = (ok(schwarzian(f, z))? - ok(schwarzian(g, z))?).norm();
    Ok(dp.max(ds))
}

fn criterion_9() -> Outcome {
    let names = ["K", "L", "S1", "S2", "K2"];
    let mut g = rng(9);
    let mut affine_err = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let a = complex_in(&mut g, -2.0, 2.0);
        let b = complex_in(&mut g, -2.0, 2.0);
        if (a.norm() - b.norm()).abs() < 0.1 {
            continue;
        }
        let cc = complex_in(&mut g, -3.0, 3.0);
        let f = map(names[n % names.len()]);
        let af = ok(AffineMap::new(a, b, cc).and_then(|m| affine_compose(&m, &f)))?;
        for _ in 0..3 {
            let z = disk_point(&mut g, 0.7);
            let e = pair_error(&f, &af, z)?;
            ensure!(e <= 1e-10, "affine ({a}, {b}, {cc}) on {} at {z}: {e:e}", f.label);
            affine_err = affine_err.max(e);
        }
        n += 1;
    }

    let mut chain_err = 0.0f64;
    for k in 0..50 {
        let f = map(names[k % names.len()]);
        let a = disk_point(&mut g, 0.5);
        let rot = C64::from_polar(1.0, g.gen_range(0.0..2.0 * PI));
        let phi = disk_automorphism(a).scale(rot);
        let fphi = ok(precompose(&f, &phi))?;
        let z = disk_point(&mut g, 0.4);
        let w = ok(phi.value(z))?;
        let d = ok(phi.jet(z, 1))?.derivative(1);
        let p = ok(pre_schwarzian(&f, w))? * d + ok(classical_pre_schwarzian(&phi, z))?;
        let s = ok(schwarzian(&f, w))? * d * d + ok(classical_schwarzian(&phi, z))?;
        let e = (ok(pre_schwarzian(&fphi, z))? - p)
            .norm()
            .max((ok(schwarzian(&fphi, z))? - s).norm());
        ensure!(e <= 1e-9, "chain rule on {} with a = {a} at {z}: {e:e}", f.label);
        chain_err = chain_err.max(e);
    }

    let mut conj_err = 0.0f64;
    for name in names {
        let f = map(name);
        let fc = f.conjugate();
        for _ in 0..10 {
            let z = disk_point(&mut g, 0.9);
            let e = pair_error(&f, &fc, z)?;
            ensure!(e <= 1e-12, "conjugation on {name} at {z}: {e:e}");
            conj_err = conj_err.max(e);
        }
    }
    Ok(format!(
        "affine {affine_err:.1e}, chain rule {chain_err:.1e}, conjugation {conj_err:.1e}"
    ))
}

fn criterion_10() -> Outcome {
    let mut g = rng(10);
    let mut kernel_err = 0.0f64;
    let mut made = 0;
    while made < 20 {
        let (a, b, cc) = (
            complex_in(&mut g, -1.0, 1.0),
            complex_in(&mut g, -1.0, 1.0),
            complex_in(&mut g, -0.5, 0.5),
        );
        let d = c(1.0, 0.0);
        // Keep the pole well outside the disk.
        if cc.norm() > 0.6 || (a * d - b * cc).norm() < 0.2 {
            continue;
        }
        let alpha = disk_point(&mut g, 0.9);
        let m = ok(MobiusMap::new(a, b, cc, d)
            .and_then(|t| HarmonicMobius::new(t, alpha, c(0.0, 0.0))))?
        .to_map();
        for _ in 0..5 {
            let z = disk_point(&mut g, 0.8);
            let s = ok(schwarzian(&m, z))?.norm();
            ensure!(s <= 1e-10, "harmonic Möbius {a},{b},{cc}, α = {alpha}: S = {s:e} at {z}");
            kernel_err = kernel_err.max(s);
        }
        made += 1;
    }

    for src in ["k(z)", "s(z)", "l(z)"] {
        let h = AnalyticFunction::parse(src).expect("parses");
        let alpha = disk_point(&mut g, 0.9);
        let f = HarmonicMap::from_parts(h.clone(), h.scale(alpha));
        for _ in 0..5 {
            let z = disk_point(&mut g, 0.8);
            let db = ok(dbar_pre_schwarzian(&f, z))?;
            let mix = ok(mixed_laplacian_schwarzian(&f, z))?;
            ensure!(db.abs() <= 1e-12, "{src}: dbar P = {db:e} at {z}");
            ensure!(mix.norm() <= 1e-12, "{src}: mixed term = {mix} at {z}");
        }
    }

    let k = map("K");
    let z0 = c(0.0, 0.0);
    let mix = ok(mixed_laplacian_schwarzian(&k, z0))?;
    let fd = ok(mixed_laplacian_fd(&k, z0, FD_STEP))?;
    ensure!((mix - 3.0).norm() <= 1e-5, "mixed term for K at 0: {mix}");
    ensure!((fd - 3.0).norm() <= 1e-5, "finite differences for K at 0: {fd}");
    Ok(format!("kernel {kernel_err:.1e}, K mixed term {} / differences {}", mix.re, fd.re))
}

fn criterion_11() -> Outcome {
    let s2 = map("S2");
    let mut g = rng(11);
    let mut pre_err = 0.0f64;
    let mut spread = 0.0f64;
    for _ in 0..10 {
        let a = disk_point(&mut g, 0.9);
        let mu = C64::from_polar(1.0, g.gen_range(0.0..2.0 * PI));
        let lambda = C64::from_polar(g.gen_range(0.2..3.0), g.gen_range(0.0..2.0 * PI));
        let fp = ok(partner_map(&s2, a, mu, lambda))?;
        let mut ratios = Vec::new();
        for _ in 0..8 {
            let z = disk_point(&mut g, 0.8);
            let e = (ok(pre_schwarzian(&fp, z))? - ok(pre_schwarzian(&s2, z))?).norm();
            ensure!(e <= 1e-9, "partner ({a}, {mu}, {lambda}) at {z}: P differs by {e:e}");
            pre_err = pre_err.max(e);
            ratios.push(ok(jacobian(&fp, z))? / ok(jacobian(&s2, z))?);
        }
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let rel = (hi - lo) / lo.abs();
        ensure!(rel <= 1e-7, "partner ({a}, {mu}, {lambda}): Jacobian ratio spread {rel:e}");
        spread = spread.max(rel);
    }
    Ok(format!("P error {pre_err:.1e}, Jacobian ratio spread {spread:.1e}"))
}

fn criterion_12() -> Outcome {
    let cfg = SearchConfig::default();
    let affine = HarmonicMap::from_parts(
        AnalyticFunction::identity(),
        AnalyticFunction::parse("0.5*z").expect("parses"),
    );
    let r = ok(becker_check(&affine, &cfg))?;
    ensure!(r.holds && r.worst_margin == 1.0, "affine: {r:?}");

    let koebe = ok(becker_check(&map("k"), &cfg))?;
    let x = koebe.witness.re;
    ensure!(!koebe.holds, "Koebe passes: {koebe:?}");
    ensure!(koebe.witness.im.abs() <= 1e-9, "witness {} off the real axis", koebe.witness);
    ensure!(2.0 * x * (2.0 + x) > 1.0, "witness {x} has 2r(2+r) <= 1");

    let mut g = rng(12);
    let mut err = 0.0f64;
    for src in ["k(z)", "l(z)", "s(z)", "q2(z)"] {
        let h = AnalyticFunction::parse(src).expect("parses");
        let f = HarmonicMap::from_parts(h.clone(), h.scale(disk_point(&mut g, 0.9)));
        for _ in 0..10 {
            let z = disk_point(&mut g, 0.9);
            let want = (z * ok(classical_pre_schwarzian(&h, z))?).norm();
            let e = (ok(becker_lhs(&f, z))? - want).abs();
            ensure!(e <= 1e-12 * want.max(1.0), "{src} at {z}: LHS off by {e:e}");
            err = err.max(e);
        }
    }
    Ok(format!(
        "Koebe margin {} at {}, reduction error {err:.1e}",
        koebe.worst_margin, koebe.witness
    ))
}

fn criterion_13() -> Outcome {
    let cases = [
        ("k(z)", "z", 0.0, "K"),
        ("l(z)", "-z", FRAC_PI_2, "L"),
    ];
    let mut g = rng(13);
    let cfg = QuadConfig::default();
    let mut jet_err = 0.0f64;
    let mut val_err = 0.0f64;
    for (phi, omega, theta, name) in cases {
        let sh = ok(shear(
            &AnalyticFunction::parse(phi).expect("parses"),
            &AnalyticFunction::parse(omega).expect("parses"),
            theta,
        ))?;
        let cat = map(name);
        for _ in 0..10 {
            let z = disk_point(&mut g, 0.8);
            let a = ok(sh.local_jets(z, LOCAL_ORDER))?;
            let b = ok(cat.local_jets(z, LOCAL_ORDER))?;
            for (x, y) in [(a.hp.clone(), b.hp.clone()), (a.gp(), b.gp())] {
                for k in 0..=LOCAL_ORDER {
                    let e = (x.coeff(k) - y.coeff(k)).norm() / y.coeff(k).norm().max(1.0);
                    ensure!(e <= 1e-10, "{name} at {z}: coefficient {k} off by {e:e}");
                    jet_err = jet_err.max(e);
                }
            }
            let e = (ok(sh.evaluate(z, &cfg))? - ok(cat.evaluate(z, &cfg))?).norm();
            ensure!(e <= 1e-7, "{name} at {z}: values differ by {e:e}");
            val_err = val_err.max(e);
        }
    }
    Ok(format!("jets {jet_err:.1e}, values {val_err:.1e}"))
}

fn criterion_14() -> Outcome {
    let cfg = QuadConfig::default();
    let rmax = 1.0 - 1e-6;
    let l = ok(render_grid(&map("L"), 64, 64, rmax, &cfg))?;
    let min_re = l.iter().map(|p| p.f.re).fold(f64::INFINITY, f64::min);
    ensure!(min_re > -0.5 - 1e-6, "L image reaches re = {min_re}");
    let s2 = ok(render_grid(&map("S2"), 64, 64, rmax, &cfg))?;
    let max_im = s2.iter().map(|p| p.f.im.abs()).fold(0.0, f64::max);
    ensure!(max_im < FRAC_PI_4 + 1e-6, "S2 image reaches |im| = {max_im}");
    Ok(format!("min re(L) = {min_re}, max |im(S2)| = {max_im}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("S_L weighted modulus is constant 3/2", criterion_1),
        ("norm of S_S1 is 5/2 on the real axis", criterion_2),
        ("norm of S_S2 is 4 at the origin", criterion_3),
        ("norm of S_K is 19/2 at the origin", criterion_4),
        ("K2 approaches 19/2 at the boundary", criterion_5),
        ("classical Koebe and strip anchors", criterion_6),
        ("pre-Schwarzian of L", criterion_7),
        ("four routes to S_f agree", criterion_8),
        ("affine, chain rule and conjugation invariance", criterion_9),
        ("kernel and constant-dilatation characterization", criterion_10),
        ("partner maps share P_f", criterion_11),
        ("Becker-type criterion", criterion_12),
        ("shears reproduce K and L", criterion_13),
        ("rendered images stay in range", criterion_14),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
