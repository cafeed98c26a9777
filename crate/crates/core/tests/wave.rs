use sl2harm::adjunction::*;
use sl2harm::fourier::extend_homogeneous;
use sl2harm::models::{KSeries, MuGrid, SpectralFunction};
use sl2harm::{xi_value, GroupElement, QuadratureScheme, Side, C64};

fn series(jmax: usize, coeffs: &[(i32, C64)]) -> KSeries {
    let mut s = KSeries::zeros(jmax);
    for &(j, c) in coeffs {
        s.set(j, c);
    }
    s
}

/// `(1/2pi) int conj a(u) B(g k_u e) du` by brute-force periodic trapezoid.
fn brute(side: Side, mu: f64, a: &KSeries, b: &KSeries, g: &GroupElement, n: usize) -> C64 {
    let big = extend_homogeneous(C64::from(mu), b, side);
    let off = match side {
        Side::Upper => 0.0,
        Side::Lower => std::f64::consts::FRAC_PI_2,
    };
    (0..n)
        .map(|k| {
            let u = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let e = [(u + off).cos(), (u + off).sin()];
            a.eval(u).conj() * big.eval(g.apply(e))
        })
        .sum::<C64>()
        / n as f64
}

#[test]
fn spherical_coefficient_at_zero_is_xi() {
    let e0 = series(2, &[(0, C64::new(1.0, 0.0))]);
    for &t in &[0.0, 0.5, 3.0, 8.0] {
        let g = GroupElement::a(t);
        let m = matrix_coefficient(Side::Upper, 0.0, &e0, &e0, &g);
        let x = xi_value(&g, &QuadratureScheme::default());
        assert!((m - x).norm() < 1e-10 * x, "{t}: {m} vs {x}");
    }
}

#[test]
fn matrix_coefficient_matches_brute_force() {
    let a = series(4, &[(0, C64::new(1.0, 0.2)), (2, C64::new(-0.3, 0.5)), (-3, C64::new(0.2, 0.0))]);
    let b = series(4, &[(0, C64::new(0.7, 0.0)), (-2, C64::new(0.1, -0.4)), (1, C64::new(0.0, 0.6)), (3, C64::new(0.3, 0.1))]);
    let g = GroupElement::rotation(0.4) * GroupElement::a(0.6) * GroupElement::rotation(-1.1);
    for side in [Side::Upper, Side::Lower] {
        for &mu in &[0.0, 1.3, -4.0] {
            let m = matrix_coefficient(side, mu, &a, &b, &g);
            let r = brute(side, mu, &a, &b, &g, 4096);
            assert!((m - r).norm() < 1e-10 * r.norm().max(1.0), "{side:?} {mu}: {m} vs {r}");
        }
    }
}

#[test]
fn rotations_act_diagonally() {
    let a = series(3, &[(1, C64::new(1.0, 0.0)), (-2, C64::new(0.5, 0.5))]);
    let th = 0.9;
    let g = GroupElement::rotation(th);
    for side in [Side::Upper, Side::Lower] {
        let m = matrix_coefficient(side, 2.0, &a, &a, &g);
        // pi(k_th^{-1}) e_j = e^{i j th} e_j
        let want = C64::from_polar(1.0, th) + C64::from_polar(0.5, -2.0 * th);
        assert!((m - want).norm() < 1e-12, "{side:?}: {m} vs {want}");
    }
}

#[test]
fn plancherel_density_values() {
    for (p, mu) in [(Parity::Even, 0.7), (Parity::Odd, 2.3)] {
        assert!((plancherel_density(p, mu) - plancherel_density(p, -mu)).abs() < 1e-14);
    }
    assert_eq!(plancherel_density(Parity::Even, 0.0), 0.0);
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((plancherel_density(Parity::Odd, 0.0) - 1.0 / pi2).abs() < 1e-14);
    // the spherical density is mu tanh(pi mu / 2) / (4 pi) up to the constant
    let ratio = |mu: f64| plancherel_density(Parity::Even, mu) / (mu * (std::f64::consts::PI * mu / 2.0).tanh());
    assert!((ratio(0.4) - ratio(3.0)).abs() < 1e-12 * ratio(3.0));
}

#[test]
fn grid_samples_of_b_at_identity() {
    let grid = MuGrid::new(0.1, 6.0).unwrap();
    let h1 = SpectralFunction::from_fn(Side::Lower, grid, 2, |mu, j| if j == 1 { C64::from((-mu * mu).exp()) } else { C64::new(0.0, 0.0) });
    let h2 = SpectralFunction::from_fn(Side::Upper, grid, 2, |mu, j| if j == 1 { C64::new(mu, 1.0) * (-mu * mu).exp() } else { C64::new(0.0, 0.0) });
    let b = wave_packet_b(&h1, &h2, &GroupElement::IDENTITY).unwrap();
    let mut want = C64::new(0.0, 0.0);
    let n = grid.len();
    for (k, mu) in grid.nodes().enumerate() {
        let w = if k == 0 || k + 1 == n { 0.05 } else { 0.1 };
        let ci = sl2harm::intertwiners::c_function_inverse(Side::Upper, 1, C64::from(mu)).unwrap();
        want += h1.series[k].get(1).conj() * ci * h2.series[k].get(1) * w;
    }
    assert!((b - want).norm() < 1e-12 * want.norm());
}

mod plane_route {
    use super::*;
    use sl2harm::fourier::{fourier_a, FourierConfig};
    use sl2harm::intertwiners::intertwine_i;
    use sl2harm::models::{act_g_left, l2_inner, LogPolarBump, PlaneFunction};

    #[test]
    fn wave_packet_is_a_plane_pairing_from_either_side() {
        let cfg = FourierConfig::default();
        let sch = QuadratureScheme {
            plane_panels_per_unit: 2,
            theta_nodes: 64,
            ..QuadratureScheme::default()
        };
        let h = PlaneFunction::bump(Side::Upper, LogPolarBump::normalized(0.1, 0.5, 0.3, 1.5));
        let k = PlaneFunction::bump(Side::Lower, LogPolarBump::normalized(-0.3, 0.6, 2.0, 1.0));
        let ih = intertwine_i(Side::Upper, &h, &cfg).unwrap().value;
        let ik = intertwine_i(Side::Lower, &k, &cfg).unwrap().value;
        let hs1 = fourier_a(&k, &cfg).unwrap().spectral;
        let hs2 = fourier_a(&h, &cfg).unwrap().spectral;
        for g in [
            GroupElement::IDENTITY,
            GroupElement::rotation(0.5) * GroupElement::a(0.4),
            GroupElement::n_upper(0.3) * GroupElement::a(-0.2) * GroupElement::rotation(0.6),
        ] {
            let gi = g.inverse();
            let lhs = l2_inner(&k, &act_g_left(&gi, &ih).with_decay(k.decay), &sch).unwrap().value;
            let mid = l2_inner(&ik.clone().with_decay(act_g_left(&gi, &h).decay), &act_g_left(&gi, &h), &sch)
                .unwrap()
                .value;
            let b = wave_packet_b(&hs1, &hs2, &g).unwrap();
            assert!(b.norm() > 1e-2, "{b}");
            assert!((lhs - b).norm() < 1e-3, "{g}: {lhs} vs {b}");
            assert!((mid - b).norm() < 1e-3, "{g}: {mid} vs {b}");
        }
    }
}

mod spectral_identities {
    use super::*;
    use sl2harm::intertwiners::{antisymmetric_part, normalized_w, symmetric_part};
    use sl2harm::Error;

    fn profile(side: Side, shift: f64, js: &[(i32, C64)]) -> SpectralFunction {
        let grid = MuGrid::new(0.05, 7.0).unwrap();
        SpectralFunction::from_fn(side, grid, 4, |mu, j| {
            js.iter()
                .find(|p| p.0 == j)
                .map(|p| p.1 * (-(mu - shift) * (mu - shift) / 2.0).exp())
                .unwrap_or(C64::new(0.0, 0.0))
        })
    }

    fn samples() -> Vec<GroupElement> {
        vec![
            GroupElement::a(0.7),
            GroupElement::rotation(0.3) * GroupElement::a(1.5) * GroupElement::rotation(-2.0),
            GroupElement::n_upper(0.8) * GroupElement::n_lower(-0.4),
        ]
    }

    #[test]
    fn symmetric_and_antisymmetric_parts_are_orthogonal() {
        let h1 = profile(Side::Upper, 0.4, &[(0, C64::new(1.0, 0.0)), (2, C64::new(0.3, -0.5)), (-4, C64::new(0.2, 0.1))]);
        let h2 = profile(Side::Upper, -0.7, &[(0, C64::new(0.6, 0.2)), (-2, C64::new(0.0, 1.0)), (4, C64::new(0.4, 0.0))]);
        let (s, a) = (symmetric_part(&h1), antisymmetric_part(&h2));
        let scale = s.norm_sqr().sqrt() * a.norm_sqr().sqrt();
        assert!(scale > 0.1);
        for g in samples() {
            let z = spectral_matrix_pairing(&s, &a, &g).unwrap();
            assert!(z.norm() < 1e-6 * scale, "{g}: {z}");
        }
    }

    #[test]
    fn normalized_w_commutes_with_the_action() {
        let h1 = profile(Side::Upper, 0.4, &[(0, C64::new(1.0, 0.0)), (1, C64::new(0.3, -0.5)), (-3, C64::new(0.2, 0.1))]);
        let h2 = profile(Side::Upper, -0.7, &[(0, C64::new(0.6, 0.2)), (-1, C64::new(0.0, 1.0)), (2, C64::new(0.4, 0.0))]);
        for g in samples() {
            let a = spectral_matrix_pairing(&normalized_w(&h1), &h2, &g).unwrap();
            let b = spectral_matrix_pairing(&h1, &normalized_w(&h2), &g).unwrap();
            assert!(a.norm() > 1e-2);
            assert!((a - b).norm() < 1e-4 * a.norm(), "{g}: {a} vs {b}");
        }
    }

    #[test]
    fn plancherel_weights_cancel_on_the_grid() {
        // the even part vanishes at mu = 0, where alpha_even does
        let mut h2 = profile(Side::Upper, 0.2, &[(0, C64::new(1.0, 0.0)), (1, C64::new(0.5, 0.5)), (-2, C64::new(0.0, 0.3))]);
        h2 = h2.map(|mu, s| s.map_coeffs(|j, c| if j % 2 == 0 { c * mu } else { c }));
        let h1 = profile(Side::Upper, -0.1, &[(0, C64::new(0.4, 0.0)), (1, C64::new(1.0, 0.0)), (2, C64::new(0.2, 0.0))]);
        let g = samples()[1];
        let direct = spectral_matrix_pairing(&h1, &h2, &g).unwrap();
        let weighted = spectral_matrix_pairing(&plancherel_weight(&h1, 1), &plancherel_weight(&h2, -1), &g).unwrap();
        assert!((direct - weighted).norm() < 1e-12 * direct.norm(), "{direct} vs {weighted}");
    }

    fn even(side: Side, power: i32, shift: f64) -> SpectralFunction {
        profile(side, shift, &[(0, C64::new(1.0, 0.0)), (2, C64::new(0.3, 0.1))])
            .map(|mu, s| s.scale(C64::from(mu.powi(power))))
    }

    fn ts() -> Vec<f64> {
        (0..=16).map(|i| 0.5 * i as f64).collect()
    }

    #[test]
    fn wave_packets_of_vanishing_inputs_decay() {
        let sch = QuadratureScheme::default();
        let h = even(Side::Upper, 1, 0.0);
        let r = hc_wave_condition_check(&h, &h, 2.0, &ts(), &sch).unwrap();
        assert_eq!((r.order_first, r.order_second), (1, 1));
        assert!(r.bounded(), "{r:?}");
        let r = hc_wave_condition_check(&even(Side::Upper, 0, 0.3), &even(Side::Upper, 2, 0.0), 2.0, &ts(), &sch).unwrap();
        assert!(r.order_second >= 2);
        assert!(r.bounded(), "{r:?}");
    }

    #[test]
    fn nonvanishing_inputs_violate_the_hypothesis() {
        let h = even(Side::Upper, 0, 0.0);
        let r = hc_wave_condition_check(&h, &h, 2.0, &ts(), &QuadratureScheme::default());
        assert!(matches!(r, Err(Error::Hypothesis(_))));
        let odd = profile(Side::Upper, 0.0, &[(1, C64::new(1.0, 0.0))]);
        assert!(matches!(
            hc_wave_condition_check(&odd, &odd, 2.0, &ts(), &QuadratureScheme::default()),
            Err(Error::Hypothesis(_))
        ));
    }
}
