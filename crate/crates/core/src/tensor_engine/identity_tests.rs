use super::field::*;
use super::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::sync::Arc;

fn s3() -> ChartMetric {
    ChartMetric::round_sphere(3, 1.0).unwrap()
}

fn s2xs2() -> ChartMetric {
    ChartMetric::product(
        ChartMetric::round_sphere(2, 1.0).unwrap(),
        ChartMetric::round_sphere(2, 1.0).unwrap(),
    )
}

fn warped() -> ChartMetric {
    ChartMetric::custom(vec![-1.0, -1.0], vec![1.0, 1.0], |x| {
        let a = 1.0 + 0.3 * x[0] * x[0] + 0.1 * x[1];
        let b = 2.0 + (x[0] * x[1]).sin() * 0.5;
        let c = 0.2 * x[0];
        vec![a, c, c, b]
    })
    .unwrap()
}

/// Every built-in model with the tolerance its curvature mode deserves.
fn models() -> Vec<(&'static str, ChartMetric, f64)> {
    vec![
        ("S^3 stereographic", s3(), 1e-10),
        (
            "S^3 reflected",
            ChartMetric::round_sphere_in(3, 1.0, SphereChart::ReflectedStereographic).unwrap(),
            1e-10,
        ),
        (
            "S^3 polar",
            ChartMetric::round_sphere_in(3, 1.0, SphereChart::Polar).unwrap(),
            1e-10,
        ),
        (
            "S^2(K=4)",
            ChartMetric::round_sphere(2, 4.0).unwrap(),
            1e-10,
        ),
        ("S^2 x S^2", s2xs2(), 1e-10),
        ("T^3", ChartMetric::flat(3), 1e-12),
        (
            "S^3 finite differences",
            s3().with_mode(CurvatureMode::FiniteDifference),
            1e-6,
        ),
        (
            "S^2 x S^2 finite differences",
            s2xs2().with_mode(CurvatureMode::FiniteDifference),
            1e-6,
        ),
    ]
}

fn max_diff(a: &Tensor, b: &Tensor) -> f64 {
    a.sub(b).max_abs()
}

fn rand_poly_field(nvars: usize, degree: u32, seed: u64) -> Polynomial {
    Polynomial::random(nvars, degree, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[test]
fn flat_and_chart_center_christoffels_vanish() {
    let t = ChartMetric::flat(3);
    assert_eq!(t.christoffel(&[0.3, 1.0, 2.0]).unwrap().max_abs(), 0.0);
    let s2 = ChartMetric::round_sphere(2, 1.0).unwrap();
    assert_eq!(s2.christoffel(&[0.0, 0.0]).unwrap().max_abs(), 0.0);
}

#[test]
fn polar_christoffels_match_hand_formula() {
    let m = ChartMetric::round_sphere_in(3, 1.0, SphereChart::Polar).unwrap();
    let fd = m.clone().with_mode(CurvatureMode::FiniteDifference);
    for x in m.sample_points(7, 20) {
        let (chi, th) = (x[0], x[1]);
        let (s1, c1, s2, c2) = (chi.sin(), chi.cos(), th.sin(), th.cos());
        let mut want = Tensor::zeros(3, 3);
        let mut put = |k: usize, i: usize, j: usize, v: f64| {
            want.set(&[k, i, j], v);
            want.set(&[k, j, i], v);
        };
        put(0, 1, 1, -s1 * c1);
        put(0, 2, 2, -s1 * c1 * s2 * s2);
        put(1, 0, 1, c1 / s1);
        put(1, 2, 2, -s2 * c2);
        put(2, 0, 2, c1 / s1);
        put(2, 1, 2, c2 / s2);
        let got = m.christoffel(&x).unwrap();
        assert!(max_diff(&got, &want) < 1e-10, "{x:?}");
        assert!(max_diff(&fd.christoffel(&x).unwrap(), &want) < 1e-6);
    }
}

#[test]
fn christoffels_are_symmetric() {
    for (name, m, tol) in models() {
        for x in m.sample_points(3, 10) {
            let g = m.christoffel(&x).unwrap();
            assert!(g.symmetry_defect() < tol, "{name}");
        }
    }
}

#[test]
fn embeddings_pull_back_the_metric() {
    let charts = [
        s3(),
        ChartMetric::round_sphere_in(3, 2.0, SphereChart::ReflectedStereographic).unwrap(),
        ChartMetric::round_sphere_in(4, 0.5, SphereChart::Polar).unwrap(),
        s2xs2(),
    ];
    for m in charts {
        for x in m.sample_points(11, 10) {
            let p = m.embed(&x).unwrap();
            let j = m.embed_jacobian(&x).unwrap();
            let n = m.dim();
            let g = m.metric(&x).unwrap();
            for a in 0..n {
                for b in 0..n {
                    let s: f64 = j.iter().map(|row| row[a] * row[b]).sum();
                    assert!((s - g[(a, b)]).abs() < 1e-12, "{m:?}");
                }
                let d = fd_partial(|y| Ok(m.embed(y).unwrap()), &x, a, 1e-3).unwrap();
                for (row, dv) in j.iter().zip(&d) {
                    assert!((row[a] - dv).abs() < 1e-9);
                }
            }
            let back = m.chart_of(&p);
            if let Some(back) = back {
                for (u, v) in back.iter().zip(&x) {
                    assert!((u - v).abs() < 1e-12);
                }
            }
        }
    }
}

fn check_curvature_symmetries(name: &str, m: &ChartMetric, x: &[f64], tol: f64) {
    let r = m.riemann(x).unwrap();
    let n = m.dim();
    let scale = 1.0 + r.max_abs();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = r.get(&[i, j, k, l]);
                    assert!(
                        (v + r.get(&[j, i, k, l])).abs() < tol * scale,
                        "{name} antisym 12"
                    );
                    assert!(
                        (v + r.get(&[i, j, l, k])).abs() < tol * scale,
                        "{name} antisym 34"
                    );
                    assert!(
                        (v - r.get(&[k, l, i, j])).abs() < tol * scale,
                        "{name} pair"
                    );
                    let b = v + r.get(&[j, k, i, l]) + r.get(&[k, i, j, l]);
                    assert!(b.abs() < tol * scale, "{name} Bianchi");
                }
            }
        }
    }
}

#[test]
fn curvature_symmetries_and_bianchi() {
    for (name, m, tol) in models() {
        for x in m.sample_points(42, 50) {
            check_curvature_symmetries(name, &m, &x, tol);
        }
    }
    let w = warped();
    for x in w.sample_points(1, 50) {
        check_curvature_symmetries("warped", &w, &x, 1e-6);
    }
}

#[test]
fn sphere_curvature_in_coordinates() {
    for m in [
        s3(),
        ChartMetric::round_sphere_in(3, 1.0, SphereChart::Polar).unwrap(),
    ] {
        let fd = m.clone().with_mode(CurvatureMode::FiniteDifference);
        for x in m.sample_points(5, 20) {
            let g = m.metric(&x).unwrap();
            let r = m.riemann(&x).unwrap();
            let n = 3;
            for idx in r.indices() {
                let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
                let want = g[(i, l)] * g[(j, k)] - g[(i, k)] * g[(j, l)];
                assert!((r.get(&idx) - want).abs() < 1e-12);
            }
            assert!(max_diff(&fd.riemann(&x).unwrap(), &r) < 1e-6);
            // R_ijji in an orthonormal frame of a diagonal metric
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let e = r.get(&[i, j, j, i]) / (g[(i, i)] * g[(j, j)]);
                        assert!((e - 1.0).abs() < 1e-12);
                    }
                }
            }
            assert!(max_diff(&m.ricci(&x).unwrap(), &g.scale(2.0)) < 1e-12);
            assert!((m.scalar(&x).unwrap() - 6.0).abs() < 1e-12);
        }
    }
}

#[test]
fn product_curvature_is_blockwise() {
    let m = s2xs2();
    for x in m.sample_points(9, 20) {
        let r = m.riemann(&x).unwrap();
        for idx in r.indices() {
            let blocks: Vec<bool> = idx.iter().map(|&i| i < 2).collect();
            if blocks.iter().any(|b| *b != blocks[0]) {
                assert_eq!(r.get(&idx), 0.0);
            }
        }
        assert!(max_diff(&m.ricci(&x).unwrap(), &m.metric(&x).unwrap()) < 1e-12);
    }
    assert_eq!(m.einstein_constant(), Some(1.0));
    let mixed = ChartMetric::product(
        ChartMetric::round_sphere(2, 1.0).unwrap(),
        ChartMetric::round_sphere(3, 1.0).unwrap(),
    );
    assert_eq!(mixed.einstein_constant(), None);
}

#[test]
fn metric_compatibility() {
    let g: FieldRef = Arc::new(MetricField);
    for (name, m, _) in models() {
        for x in m.sample_points(13, 10) {
            let d = covariant(&m, &g, &x).unwrap();
            assert!(d.max_abs() < 1e-8, "{name}: {}", d.max_abs());
        }
    }
}

#[test]
fn einstein_residuals() {
    for (name, m, tol) in models() {
        let lambda = m.einstein_constant().unwrap();
        for x in m.sample_points(17, 20) {
            let res = m
                .ricci(&x)
                .unwrap()
                .sub(&m.metric(&x).unwrap().scale(lambda));
            assert!(res.max_abs() < tol * 10.0, "{name}: {}", res.max_abs());
        }
    }
    assert_eq!(warped().einstein_constant(), None);
}

#[test]
fn operators_on_the_metric() {
    let g: FieldRef = Arc::new(MetricField);
    for (name, m, _) in models() {
        for x in m.sample_points(19, 5) {
            let gx = m.metric(&x).unwrap();
            assert!(div(&m, &g, &x).unwrap().max_abs() < 1e-8, "{name}");
            assert!((trace(&m, &gx, &x).unwrap() - m.dim() as f64).abs() < 1e-12);
            let rm = rm_contract(&m, &gx, &x).unwrap();
            assert!(max_diff(&rm, &m.ricci(&x).unwrap()) < 1e-9, "{name}");
            assert!(lichnerowicz(&m, &g, &x).unwrap().max_abs() < 1e-6, "{name}");
        }
    }
}

#[test]
fn rm_on_traceless_tensors_of_constant_curvature() {
    let k = 2.5;
    let m = ChartMetric::round_sphere(3, k).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for x in m.sample_points(23, 20) {
        let g = m.metric(&x).unwrap();
        let mut h = Tensor::zeros(3, 2);
        for i in 0..3 {
            for j in i..3 {
                let v = rand::Rng::gen_range(&mut rng, -1.0..1.0);
                h[(i, j)] = v;
                h[(j, i)] = v;
            }
        }
        let t = trace(&m, &h, &x).unwrap();
        let h0 = h.sub(&g.scale(t / 3.0));
        let rm = rm_contract(&m, &h0, &x).unwrap();
        // R_iklj h^kl = K (g tr h - h)
        assert!(max_diff(&rm, &h0.scale(-k)) < 1e-10);
        let rm_full = rm_contract(&m, &h, &x).unwrap();
        assert!(max_diff(&rm_full, &g.scale(k * t).sub(&h.scale(k))) < 1e-10);
    }
}

#[test]
fn div_star_of_exact_forms_is_minus_hessian() {
    let m = s3();
    let f: FieldRef = Arc::new(AmbientFunction {
        poly: rand_poly_field(4, 3, 8),
    });
    let df: FieldRef = Arc::new(CovariantDerivative::new(f.clone()).unwrap());
    let closed = ambient_hessian(&rand_poly_field(4, 3, 8));
    for x in m.sample_points(29, 10) {
        let ds = div_star(&m, &df, &x).unwrap();
        let hs = hess(&m, &f, &x).unwrap();
        assert!(max_diff(&ds, &hs.scale(-1.0)) < 1e-8);
        assert!(max_diff(&hs, &closed.eval(&m, &x).unwrap()) < 1e-7);
    }
}

#[test]
fn eigenfunctions_satisfy_their_equation() {
    let m = s3();
    for l in 0..4 {
        let f = EigenfunctionSpec::sphere_harmonic(3, 1.0, l, 0, 3);
        let fr: FieldRef = Arc::new(f.clone());
        for x in m.sample_points(31, 10) {
            let lap = rough_laplacian(&m, &fr, &x).unwrap().value();
            let fx = fr.eval(&m, &x).unwrap().value();
            assert!(
                (lap - f.eigenvalue * fx).abs() < 1e-7 * (1.0 + fx.abs()),
                "l={l}"
            );
        }
    }
    let m = ChartMetric::round_sphere(2, 4.0).unwrap();
    let f = EigenfunctionSpec::sphere_harmonic(2, 4.0, 2, 1, 2);
    assert_eq!(f.eigenvalue, -24.0);
    let fr: FieldRef = Arc::new(f.clone());
    for x in m.sample_points(1, 5) {
        let lap = rough_laplacian(&m, &fr, &x).unwrap().value();
        assert!((lap - f.eigenvalue * fr.eval(&m, &x).unwrap().value()).abs() < 1e-6);
    }
}

#[test]
fn commuting_covariant_derivatives() {
    for (name, m) in [("S^3", s3()), ("S^2 x S^2", s2xs2())] {
        let n = m.dim();
        let comps: Vec<Polynomial> = (0..n * n)
            .map(|i| rand_poly_field(n, 3, 100 + i as u64))
            .collect();
        let beta: FieldRef = Arc::new(ChartField::new(2, move |x| {
            comps.iter().map(|p| p.eval(x)).collect()
        }));
        let dd: FieldRef = Arc::new(
            CovariantDerivative::new(Arc::new(CovariantDerivative::new(beta.clone()).unwrap()))
                .unwrap(),
        );
        for x in m.sample_points(37, 10) {
            let d = dd.eval(&m, &x).unwrap();
            let b = beta.eval(&m, &x).unwrap();
            let r = m.riemann(&x).unwrap();
            let ginv = m.inverse_metric(&x).unwrap();
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            let mut v = d.get(&[i, j, k, l]) - d.get(&[j, i, k, l]);
                            for p in 0..n {
                                for q in 0..n {
                                    v += r.get(&[i, j, k, p]) * ginv[(p, q)] * b[(q, l)]
                                        + r.get(&[i, j, l, p]) * ginv[(p, q)] * b[(k, q)];
                                }
                            }
                            worst = worst.max(v.abs());
                        }
                    }
                }
            }
            assert!(worst < 1e-6 * (1.0 + d.max_abs()), "{name}: {worst}");
        }
    }
}

#[test]
fn s_of_u_identities() {
    let m = s3();
    let lambda = 2.0;
    let one: FieldRef = Arc::new(EigenfunctionSpec::constant(4));
    for x in m.sample_points(41, 5) {
        let s = s_of_u(&m, &one, &x).unwrap();
        assert!(max_diff(&s, &m.metric(&x).unwrap().scale(lambda)) < 1e-9);
    }

    let u1 = EigenfunctionSpec::sphere_harmonic(3, 1.0, 1, 2, 0);
    let u1r: FieldRef = Arc::new(u1.clone());
    for x in m.sample_points(43, 10) {
        let s = s_of_u(&m, &u1r, &x).unwrap();
        let uv = u1r.eval(&m, &x).unwrap().value();
        let want = hess(&m, &u1r, &x)
            .unwrap()
            .scale(-1.0)
            .sub(&m.metric(&x).unwrap().scale(uv));
        assert!(max_diff(&s, &want) < 1e-7);
    }

    // closed-form S(u) = (k + λ) u g - Hess u for eigenfunctions
    for l in [2u32, 3] {
        let u = EigenfunctionSpec::sphere_harmonic(3, 1.0, l, 1, 3);
        let k = u.eigenvalue;
        let su: FieldRef = Arc::new(
            LinearCombination::new(vec![
                (
                    k + lambda,
                    Arc::new(MetricMultiple::new(Arc::new(u.clone())).unwrap()) as FieldRef,
                ),
                (-1.0, ambient_hessian(&u.poly)),
            ])
            .unwrap(),
        );
        let ur: FieldRef = Arc::new(u.clone());
        for x in m.sample_points(47, 20) {
            let direct = s_of_u(&m, &ur, &x).unwrap();
            assert!(max_diff(&direct, &su.eval(&m, &x).unwrap()) < 1e-7);
            let d = div(&m, &su, &x).unwrap();
            assert!(d.max_abs() < 1e-6, "div S(u) = {}", d.max_abs());
            // Δ_L S(u) = S(Δu) = k S(u)
            let dl = lichnerowicz(&m, &su, &x).unwrap();
            let s = su.eval(&m, &x).unwrap();
            assert!(max_diff(&dl, &s.scale(k)) < 1e-6 * (1.0 + s.max_abs() * k.abs()));
        }
    }
    assert!(matches!(
        s_of_u(&warped(), &one, &[0.0, 0.0]),
        Err(TensorError::NotEinstein)
    ));
}

fn lie_fields() -> Vec<(&'static str, Vec<Polynomial>)> {
    let v = |i| Polynomial::coordinate(4, i);
    let rotation = vec![
        v(1).scale(-1.0),
        v(0),
        Polynomial::zero(4),
        Polynomial::zero(4),
    ];
    let conformal = vec![
        Polynomial::constant(4, 1.0),
        Polynomial::zero(4),
        Polynomial::zero(4),
        Polynomial::zero(4),
    ];
    let generic: Vec<Polynomial> = (0..4).map(|i| rand_poly_field(4, 3, 900 + i)).collect();
    vec![
        ("rotation", rotation),
        ("conformal", conformal),
        ("generic", generic),
    ]
}

#[test]
fn lie_derivative_closed_form_matches_finite_differences() {
    let m = s3();
    for (name, p) in lie_fields() {
        let closed = LieDerivative::new(p.clone());
        let fd = LieDerivativeFd::new(Arc::new(AmbientOneForm { p })).unwrap();
        for x in m.sample_points(53, 10) {
            let a = closed.eval(&m, &x).unwrap();
            let b = fd.eval(&m, &x).unwrap();
            assert!(max_diff(&a, &b) < 1e-8 * (1.0 + a.max_abs()), "{name}");
            if name == "rotation" {
                assert!(a.max_abs() < 1e-12);
            }
        }
    }
}

#[test]
fn trace_equation_for_lie_derivatives() {
    let m = s3();
    let rule = QuadratureRule::default();
    for (name, p) in lie_fields() {
        let h: FieldRef = Arc::new(LieDerivative::new(p));
        let n = SecondVariation::new(&m, h, Some(Vh::TraceOfH), &rule).unwrap();
        assert!(
            n.mean_trace().abs() < 1e-10,
            "{name}: ∫ tr h = {}",
            n.mean_trace()
        );
        for x in m.sample_points(59, 10) {
            let t = n.terms(&m, &x).unwrap();
            assert!(t.vh_residual.abs() < 1e-6, "{name}: {}", t.vh_residual);
            let scale = 1.0 + t.h.max_abs() + t.nabla_h.max_abs() + t.nabla2_h.max_abs();
            assert!(
                t.total.max_abs() < 1e-6 * scale,
                "{name}: {}",
                t.total.max_abs()
            );
        }
    }
}

#[test]
fn n_of_metric_vanishes() {
    for m in [s3(), s2xs2()] {
        let rule = QuadratureRule {
            polar: 8,
            azimuth: 12,
        };
        let g: FieldRef = Arc::new(MetricField);
        let n = SecondVariation::new(&m, g, Some(Vh::TraceOfH), &rule).unwrap();
        assert!((n.mean_trace() - m.dim() as f64).abs() < 1e-10);
        for x in m.sample_points(61, 5) {
            assert!(n.apply(&m, &x).unwrap().max_abs() < 1e-7);
        }
    }
}

#[test]
fn n_on_the_product_direction() {
    let m = s2xs2();
    let h: FieldRef = Arc::new(BlockMetric {
        a: 0.5,
        b: -0.5,
        split: 2,
    });
    let zero: FieldRef = Arc::new(ZeroField { rank: 0 });
    let rule = QuadratureRule {
        polar: 6,
        azimuth: 8,
    };
    let n = SecondVariation::new(&m, h.clone(), Some(Vh::Explicit(zero)), &rule).unwrap();
    assert!(n.mean_trace().abs() < 1e-12);
    for x in m.sample_points(67, 10) {
        let t = n.terms(&m, &x).unwrap();
        assert!(max_diff(&t.total, &t.h) < 1e-8);
        assert!(t.half_laplacian.max_abs() < 1e-8);
        assert!(t.div_star_div.max_abs() < 1e-8);
        assert!(max_diff(&t.rm, &t.h) < 1e-12);
        assert!(div(&m, &h, &x).unwrap().max_abs() < 1e-10);
        assert!(trace(&m, &t.h, &x).unwrap().abs() < 1e-12);
        // Δ_L h = 0, so (Δ_L + 2λ) h = 2h
        assert!(lichnerowicz(&m, &h, &x).unwrap().max_abs() < 1e-8);
    }
}

#[test]
fn second_variation_errors() {
    let m = s3();
    let g: FieldRef = Arc::new(MetricField);
    let rule = QuadratureRule {
        polar: 4,
        azimuth: 4,
    };
    assert!(matches!(
        SecondVariation::new(&m, g.clone(), None, &rule),
        Err(TensorError::MissingVh)
    ));
    let w = warped();
    assert!(matches!(
        SecondVariation::with_mean_trace(&w, g.clone(), Some(Vh::TraceOfH), 2.0),
        Err(TensorError::NotEinstein)
    ));
    let mut f = EigenfunctionSpec::sphere_harmonic(3, 1.0, 1, 0, 1);
    f.eigenvalue = -2.0;
    assert!(matches!(
        v_for_conformal(&f, 2.0),
        Err(TensorError::Resonance { .. })
    ));
    let shallow: FieldRef = Arc::new(ChartField::new(0, |x| vec![x[0]]).with_depth(1));
    assert!(matches!(
        hess(&m, &shallow, &[0.1, 0.2, 0.3]),
        Err(TensorError::InsufficientDepth {
            needed: 2,
            available: 1
        })
    ));
    assert!(matches!(
        div(&m, &shallow, &[0.1, 0.2, 0.3]),
        Err(TensorError::RankMismatch { .. })
    ));
    assert!(matches!(
        quadrature(&w, &rule, |_, _| Ok(1.0)),
        Err(TensorError::UnsupportedManifold(_))
    ));
    assert!(m.metric(&[0.0, 0.0]).is_err());
    let polar = ChartMetric::round_sphere_in(2, 1.0, SphereChart::Polar).unwrap();
    assert!(matches!(
        polar.inverse_metric(&[0.0, 1.0]),
        Err(TensorError::SingularMetric { .. })
    ));
    assert!(ChartMetric::round_sphere(2, -1.0).is_err());
}

#[test]
fn quadrature_values() {
    let rule = QuadratureRule::default();
    let s2 = ChartMetric::round_sphere(2, 1.0).unwrap();
    assert!((volume(&s2, &rule).unwrap() - 4.0 * PI).abs() < 1e-10);
    let one = quadrature(&s2, &rule, |_, _| Ok(1.0)).unwrap();
    assert!((one - 4.0 * PI).abs() < 1e-10);
    let x0 = AmbientFunction {
        poly: Polynomial::coordinate(3, 0),
    };
    let sq = quadrature(&s2, &rule, |c, x| Ok(x0.eval(c, x)?.value().powi(2))).unwrap();
    assert!((sq - 4.0 * PI / 3.0).abs() < 1e-10);
    for n in 1..=4 {
        let m = ChartMetric::round_sphere(n, 1.0).unwrap();
        let f = EigenfunctionSpec::sphere_harmonic(n, 1.0, 1, 0, 1);
        let v = quadrature(&m, &rule, |c, x| Ok(f.eval(c, x)?.value())).unwrap();
        assert!(v.abs() < 1e-10, "S^{n}: {v}");
    }
    let s3v = volume(&s3(), &rule).unwrap();
    assert!((s3v - 2.0 * PI * PI).abs() < 1e-10);
    let via_nodes = quadrature(&s3(), &rule, |_, _| Ok(1.0)).unwrap();
    assert!((via_nodes - s3v).abs() < 1e-10);
    let r = ChartMetric::round_sphere(2, 0.25).unwrap();
    assert!((volume(&r, &rule).unwrap() - 16.0 * PI).abs() < 1e-8);
    let p = s2xs2();
    let small = QuadratureRule {
        polar: 8,
        azimuth: 12,
    };
    assert!((quadrature(&p, &small, |_, _| Ok(1.0)).unwrap() - 16.0 * PI * PI).abs() < 1e-9);
    assert!((volume(&ChartMetric::flat(2), &rule).unwrap() - 4.0 * PI * PI).abs() < 1e-10);
    // orthogonality of distinct harmonics
    let a = EigenfunctionSpec::sphere_harmonic(3, 1.0, 2, 0, 1);
    let b = EigenfunctionSpec::sphere_harmonic(3, 1.0, 3, 2, 3);
    let ab = quadrature(&s3(), &rule, |c, x| {
        Ok(a.eval(c, x)?.value() * b.eval(c, x)?.value())
    })
    .unwrap();
    assert!(ab.abs() < 1e-10);
}

#[test]
fn gauss_legendre_is_exact_on_polynomials() {
    for n in 1..12 {
        let (t, w) = gauss_legendre(n);
        for d in 0..(2 * n) {
            let s: f64 = t.iter().zip(&w).map(|(t, w)| w * t.powi(d as i32)).sum();
            let exact = if d % 2 == 1 {
                0.0
            } else {
                2.0 / (d as f64 + 1.0)
            };
            assert!((s - exact).abs() < 1e-13, "n={n} d={d}");
        }
    }
}

#[test]
fn gauss_gegenbauer_matches_sine_moments() {
    // Simpson in ψ of sin^p ψ cos^d ψ
    let simpson = |p: i32, d: i32| {
        let n = 20000;
        let h = PI / n as f64;
        (0..=n)
            .map(|i| {
                let x = i as f64 * h;
                let w = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                w * x.sin().powi(p) * x.cos().powi(d)
            })
            .sum::<f64>()
            * h
            / 3.0
    };
    for p in 1..6u32 {
        let (t, w) = gauss_gegenbauer(6, p);
        for d in 0..12 {
            let s: f64 = t.iter().zip(&w).map(|(t, w)| w * t.powi(d)).sum();
            let exact = simpson(p as i32, d);
            assert!((s - exact).abs() < 1e-11, "p={p} d={d}: {s} vs {exact}");
        }
    }
}

#[test]
fn quadrature_is_deterministic() {
    let m = s3();
    let rule = QuadratureRule {
        polar: 10,
        azimuth: 12,
    };
    let f = EigenfunctionSpec::sphere_harmonic(3, 1.0, 3, 0, 2);
    let run = || quadrature(&m, &rule, |c, x| Ok(f.eval(c, x)?.value().powi(2))).unwrap();
    assert_eq!(run().to_bits(), run().to_bits());
}

#[test]
fn adjointness_of_div_and_div_star() {
    let cases: Vec<(ChartMetric, QuadratureRule, usize)> = vec![
        (
            s3(),
            QuadratureRule {
                polar: 8,
                azimuth: 12,
            },
            4,
        ),
        (
            s2xs2(),
            QuadratureRule {
                polar: 6,
                azimuth: 12,
            },
            6,
        ),
    ];
    for (m, rule, ambient) in cases {
        let omega: FieldRef = Arc::new(AmbientOneForm {
            p: (0..ambient)
                .map(|i| rand_poly_field(ambient, 2, 300 + i as u64))
                .collect(),
        });
        let f = rand_poly_field(ambient, 2, 400);
        let h: FieldRef = Arc::new(
            LinearCombination::new(vec![
                (
                    1.0,
                    Arc::new(LieDerivative::new(
                        (0..ambient)
                            .map(|i| rand_poly_field(ambient, 2, 500 + i as u64))
                            .collect(),
                    )) as FieldRef,
                ),
                (
                    0.7,
                    Arc::new(MetricMultiple::new(Arc::new(AmbientFunction { poly: f })).unwrap()),
                ),
            ])
            .unwrap(),
        );
        let lhs = quadrature(&m, &rule, |c, x| {
            inner(c, &div_star(c, &omega, x)?, &h.eval(c, x)?, x)
        })
        .unwrap();
        let rhs = quadrature(&m, &rule, |c, x| {
            inner(c, &omega.eval(c, x)?, &div(c, &h, x)?, x)
        })
        .unwrap();
        assert!(
            (lhs - rhs).abs() < 1e-7 * (1.0 + lhs.abs()),
            "{lhs} vs {rhs}"
        );
        assert!(lhs.abs() > 1e-3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn curvature_symmetries_at_arbitrary_points(
        a in -1.5f64..1.5, b in -1.5f64..1.5, c in -1.5f64..1.5, k in 0.2f64..5.0,
    ) {
        let r = 1.0 / k.sqrt();
        let m = ChartMetric::round_sphere(3, k).unwrap();
        let x = [a * r, b * r, c * r];
        prop_assume!(x.iter().map(|v| v * v).sum::<f64>() < 3.0 * r * r);
        check_curvature_symmetries("S^3", &m, &x, 1e-10);
        let res = m.ricci(&x).unwrap().sub(&m.metric(&x).unwrap().scale(2.0 * k));
        prop_assert!(res.max_abs() < 1e-9 * (1.0 + k));
    }

    #[test]
    fn rm_contraction_is_linear(
        h1 in proptest::collection::vec(-1.0f64..1.0, 9),
        h2 in proptest::collection::vec(-1.0f64..1.0, 9),
        s in -3.0f64..3.0,
        x in proptest::collection::vec(-1.0f64..1.0, 3),
    ) {
        let m = s3();
        let sym = |v: &[f64]| Tensor::from_vec(3, 2, v.to_vec()).add(&Tensor::from_vec(3, 2, v.to_vec()).transpose());
        let (a, b) = (sym(&h1), sym(&h2));
        let lhs = rm_contract(&m, &a.add(&b.scale(s)), &x).unwrap();
        let rhs = rm_contract(&m, &a, &x).unwrap().add(&rm_contract(&m, &b, &x).unwrap().scale(s));
        prop_assert!(lhs.sub(&rhs).max_abs() < 1e-10 * (1.0 + lhs.max_abs()));
        prop_assert!(lhs.symmetry_defect() < 1e-10 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn inner_product_is_symmetric_and_positive(
        v in proptest::collection::vec(-1.0f64..1.0, 16),
        x in proptest::collection::vec(0.3f64..2.8, 4),
    ) {
        let m = ChartMetric::product(
            ChartMetric::round_sphere_in(2, 1.0, SphereChart::Polar).unwrap(),
            ChartMetric::round_sphere(2, 2.0).unwrap(),
        );
        let mut x = x;
        x[2] -= 1.5;
        x[3] -= 1.5;
        let a = Tensor::from_vec(4, 2, v.clone());
        let mut w = v;
        w.reverse();
        let b = Tensor::from_vec(4, 2, w);
        let ab = inner(&m, &a, &b, &x).unwrap();
        let ba = inner(&m, &b, &a, &x).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12 * (1.0 + ab.abs()));
        prop_assume!(a.max_abs() > 1e-6);
        prop_assert!(inner(&m, &a, &a, &x).unwrap() > 0.0);
    }
}
