use proptest::prelude::*;
use sl2harm::fourier::{extend_homogeneous, fourier_a, inverse_fourier_a, parity_split, restrict_to_k, FourierConfig};
use sl2harm::models::{
    act_g_left, act_l_right, l2_inner, l2_norm, KSeries, LogPolarBump, MuGrid, PlaneFunction, SpectralFunction,
};
use sl2harm::{GroupElement, QuadratureScheme, Side, C64};

fn l2_scheme() -> QuadratureScheme {
    QuadratureScheme {
        plane_panels_per_unit: 2,
        theta_nodes: 64,
        ..QuadratureScheme::default()
    }
}

fn bump(side: Side, j: i32) -> PlaneFunction {
    PlaneFunction::bump(side, LogPolarBump::normalized(0.1, 0.5, 0.4, 1.0).with_k_type(j))
}

fn rel_l2(a: &PlaneFunction, b: &PlaneFunction) -> f64 {
    let d = PlaneFunction::linear_combination(&[(C64::from(1.0), a.clone()), (C64::from(-1.0), b.clone())]).unwrap();
    let sch = l2_scheme();
    l2_norm(&d, &sch).unwrap() / l2_norm(b, &sch).unwrap()
}

#[test]
fn zero_transforms_to_zero() {
    let cfg = FourierConfig::default();
    let z = PlaneFunction::from_fn(Side::Upper, |_| C64::new(0.0, 0.0));
    let hs = fourier_a(&z, &cfg).unwrap().spectral;
    assert_eq!(hs.sup(), 0.0);
    let back = inverse_fourier_a(&hs, &cfg).unwrap();
    assert_eq!(back.eval([0.3, 0.7]), C64::new(0.0, 0.0));
}

#[test]
fn windowed_atom_concentrates_at_its_parameter() {
    let cfg = FourierConfig::default();
    let (mu0, j0) = (1.5, 2);
    // r^{-1-i mu0} e^{i j0 theta} times a broad Gaussian in log r
    let h = PlaneFunction::from_log_polar(Side::Upper, move |u, th| {
        C64::from_polar((-u * u / 8.0).exp(), -mu0 * u + j0 as f64 * th)
    });
    let hs = fourier_a(&h, &cfg).unwrap().spectral;
    let (mut best, mut at) = (0.0, 0.0);
    for (k, s) in hs.series.iter().enumerate() {
        if s.get(j0).norm() > best {
            best = s.get(j0).norm();
            at = hs.mu(k);
        }
        for j in s.j_range().filter(|&j| j != j0) {
            assert!(s.get(j).norm() < 1e-10 * best.max(1.0));
        }
    }
    assert!((at - mu0).abs() <= 0.5 * hs.dmu + 1e-12, "peak at {at}");
}

#[test]
fn parseval_holds() {
    let cfg = FourierConfig::default();
    for side in [Side::Upper, Side::Lower] {
        let h = PlaneFunction::linear_combination(&[(C64::from(1.0), bump(side, 0)), (C64::new(0.0, 0.5), bump(side, -3))])
            .unwrap();
        let plane = l2_norm(&h, &l2_scheme()).unwrap().powi(2);
        let spectral = fourier_a(&h, &cfg).unwrap().spectral.norm_sqr();
        assert!((plane - spectral).abs() <= 1e-4 * plane, "{plane} vs {spectral}");
    }
}

#[test]
fn inversion_round_trip() {
    let cfg = FourierConfig::default();
    for side in [Side::Upper, Side::Lower] {
        let h = bump(side, 1);
        let f = fourier_a(&h, &cfg).unwrap();
        assert!(!f.resolution_warning);
        let back = inverse_fourier_a(&f.spectral, &cfg).unwrap().with_decay(h.decay);
        let e = rel_l2(&back, &h);
        assert!(e <= 1e-4, "{e}");
    }
}

#[test]
fn dilation_becomes_a_phase() {
    let cfg = FourierConfig::default();
    let t = 0.3;
    for side in [Side::Upper, Side::Lower] {
        let h = bump(side, 0);
        let a = fourier_a(&h, &cfg).unwrap().spectral;
        let b = fourier_a(&act_l_right(&GroupElement::a(t), &h).unwrap(), &cfg).unwrap().spectral;
        let scale = a.sup();
        for (k, (sa, sb)) in a.series.iter().zip(&b.series).enumerate() {
            let ph = C64::from_polar(1.0, a.mu(k) * t);
            for j in sa.j_range() {
                assert!((sb.get(j) - sa.get(j) * ph).norm() <= 1e-8 * scale);
            }
        }
    }
}

#[test]
fn rotation_becomes_a_phase_per_k_type() {
    let cfg = FourierConfig::default();
    let th = 0.7;
    let h = PlaneFunction::linear_combination(&[
        (C64::from(1.0), bump(Side::Upper, 1)),
        (C64::from(1.0), bump(Side::Upper, -2)),
    ])
    .unwrap();
    let a = fourier_a(&h, &cfg).unwrap().spectral;
    let b = fourier_a(&act_g_left(&GroupElement::rotation(th), &h), &cfg).unwrap().spectral;
    let scale = a.sup();
    for (sa, sb) in a.series.iter().zip(&b.series) {
        for j in sa.j_range() {
            let want = sa.get(j) * C64::from_polar(1.0, -j as f64 * th);
            assert!((sb.get(j) - want).norm() <= 1e-10 * scale);
        }
    }
}

#[test]
fn parity_is_preserved() {
    let cfg = FourierConfig::default();
    let b = bump(Side::Lower, 2);
    let z = GroupElement::new([-1.0, 0.0, 0.0, -1.0]).unwrap();
    let h = PlaneFunction::linear_combination(&[(C64::from(1.0), b.clone()), (C64::from(1.0), act_g_left(&z, &b))]).unwrap();
    let hs = fourier_a(&h, &cfg).unwrap().spectral;
    assert!(hs.odd_part().sup() <= 1e-12 * hs.sup());
    let back = inverse_fourier_a(&hs, &cfg).unwrap();
    // even part is invariant under the antipode
    for x in [[0.7, 0.2], [-0.4, 1.1]] {
        assert!((back.eval(x) - back.eval([-x[0], -x[1]])).norm() < 1e-12);
    }
}

#[test]
fn extension_is_homogeneous() {
    let mut c = KSeries::zeros(3);
    c.set(1, C64::new(0.4, -0.2));
    c.set(-2, C64::new(1.0, 0.3));
    let mu = C64::new(0.8, 0.0);
    for (side, sgn) in [(Side::Upper, -1.0), (Side::Lower, 1.0)] {
        let h = extend_homogeneous(mu, &c, side);
        for (r, th) in [(2.0f64, 0.3f64), (0.4, -1.7)] {
            let at = h.eval([r * th.cos(), r * th.sin()]);
            let unit = h.eval([th.cos(), th.sin()]);
            let factor = (C64::from(r.ln()) * (C64::from(-1.0) + C64::i() * (sgn * mu))).exp();
            assert!((at - unit * factor).norm() < 1e-13);
        }
    }
}

#[test]
fn parity_split_examples() {
    let grid = MuGrid::new(0.25, 2.0).unwrap();
    let pure = |j0: i32| SpectralFunction::from_fn(Side::Upper, grid, 3, move |mu, j| {
        if j == j0 {
            C64::from((-mu * mu).exp())
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let (e, o) = parity_split(&pure(2));
    assert_eq!(e, pure(2));
    assert_eq!(o.sup(), 0.0);
    let (e, o) = parity_split(&pure(1));
    assert_eq!(e.sup(), 0.0);
    assert_eq!(o, pure(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn restriction_inverts_extension(coeffs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 7), mu in -3.0..3.0f64) {
        let mut c = KSeries::zeros(3);
        for (j, (re, im)) in (-3..=3).zip(coeffs) {
            c.set(j, C64::new(re, im));
        }
        for side in [Side::Upper, Side::Lower] {
            let back = restrict_to_k(&extend_homogeneous(C64::from(mu), &c, side), 3);
            for j in -3..=3 {
                prop_assert!((back.get(j) - c.get(j)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn parity_split_is_orthogonal(coeffs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 5 * 9)) {
        let grid = MuGrid::new(0.5, 1.0).unwrap();
        let hs = SpectralFunction::from_fn(Side::Lower, grid, 4, |mu, j| {
            let k = ((mu / 0.5).round() as i32 + 2) as usize * 9 + (j + 4) as usize;
            C64::new(coeffs[k].0, coeffs[k].1)
        });
        let (e, o) = parity_split(&hs);
        prop_assert_eq!(e.add(&o).unwrap(), hs.clone());
        let lhs = hs.norm_sqr();
        let rhs = e.norm_sqr() + o.norm_sqr();
        prop_assert!((lhs - rhs).abs() <= 1e-14 * lhs.max(1.0));
        prop_assert!(e.inner(&o).unwrap().norm() == 0.0);
    }

    #[test]
    fn transform_is_linear(a in -1.0..1.0f64, b in -1.0..1.0f64) {
        let cfg = FourierConfig { mu_grid: MuGrid::new(0.5, 3.0).unwrap(), jmax: 4, ..FourierConfig::default() };
        let (h1, h2) = (bump(Side::Upper, 0), bump(Side::Upper, 1));
        let sum = PlaneFunction::linear_combination(&[(C64::from(a), h1.clone()), (C64::from(b), h2.clone())]).unwrap();
        let f = |h: &PlaneFunction| fourier_a(h, &cfg).unwrap().spectral;
        let want = f(&h1).scale(C64::from(a)).add(&f(&h2).scale(C64::from(b))).unwrap();
        let diff = f(&sum).add(&want.scale(C64::from(-1.0))).unwrap();
        prop_assert!(diff.sup() <= 1e-12 * (1.0 + want.sup()));
    }
}

#[test]
fn inner_products_match_across_the_transform() {
    let cfg = FourierConfig::default();
    let (h1, h2) = (bump(Side::Upper, 1), PlaneFunction::bump(Side::Upper, LogPolarBump::normalized(-0.2, 0.6, 1.5, 0.8).with_k_type(1)));
    let plane = l2_inner(&h1, &h2, &l2_scheme()).unwrap().value;
    let spectral = fourier_a(&h1, &cfg).unwrap().spectral.inner(&fourier_a(&h2, &cfg).unwrap().spectral).unwrap();
    assert!((plane - spectral).norm() <= 1e-4 * plane.norm().max(1e-3), "{plane} vs {spectral}");
}
