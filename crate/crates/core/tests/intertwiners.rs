use sl2harm::fourier::{fourier_a, FourierConfig};
use sl2harm::intertwiners::*;
use sl2harm::models::{l2_inner, HomogeneousAtom, LogPolarBump, MuGrid, PlaneFunction};
use sl2harm::{QuadratureScheme, Side, C64};

fn atom(side: Side, mu: C64, j: i32) -> PlaneFunction {
    PlaneFunction::atom(side, HomogeneousAtom { mu, j })
}

#[test]
fn line_integral_reproduces_c_plus_on_atoms() {
    let scheme = QuadratureScheme::default();
    for &(mu, j) in &[
        (C64::new(1.0, 1.0), 0),
        (C64::new(1.0, 0.5), 1),
        (C64::new(1.0, 0.5), 2),
        (C64::new(2.0, 0.7), -3),
        (C64::new(2.0, 0.7), 4),
    ] {
        let h = atom(Side::Lower, mu, j);
        let c = c_function(Side::Upper, j, mu).unwrap();
        let target = atom(Side::Upper, mu, j);
        for &x in &[[1.0, 0.0], [0.3, -1.7], [-2.0, 0.4]] {
            let got = intertwine_j_numeric(Side::Upper, &h, x, &scheme).unwrap();
            let want = c * target.eval(x);
            assert!(!got.divergent, "mu={mu} j={j}");
            assert!((got.value - want).norm() <= 1e-4 * want.norm(), "mu={mu} j={j} x={x:?}: {} vs {want}", got.value);
        }
    }
}

#[test]
fn line_integral_reproduces_c_minus_on_atoms() {
    let scheme = QuadratureScheme::default();
    for &(mu, j) in &[(C64::new(1.0, -1.0), 0), (C64::new(-0.5, -0.6), 3)] {
        let h = atom(Side::Upper, mu, j);
        let c = c_function(Side::Lower, j, mu).unwrap();
        let target = atom(Side::Lower, mu, j);
        let x = [0.8, 0.9];
        let got = intertwine_j_numeric(Side::Lower, &h, x, &scheme).unwrap();
        let want = c * target.eval(x);
        assert!((got.value - want).norm() <= 1e-4 * want.norm(), "{} vs {want}", got.value);
    }
}

#[test]
fn wrong_half_plane_is_flagged() {
    let h = atom(Side::Lower, C64::new(1.0, -0.5), 0);
    let r = intertwine_j_numeric(Side::Upper, &h, [1.0, 0.0], &QuadratureScheme::default()).unwrap();
    assert!(r.divergent, "tail exponent {}", r.tail_exponent);
}

#[test]
fn base_point_on_line_does_not_matter() {
    let b = PlaneFunction::bump(Side::Lower, LogPolarBump::normalized(0.2, 0.5, 0.3, 1.5));
    let rule = QuadratureScheme::default().line;
    let x = [0.7, -0.4];
    let a = intertwine_j_numeric_with(Side::Upper, &b, x, &rule, 0.0).unwrap().value;
    let c = intertwine_j_numeric_with(Side::Upper, &b, x, &rule, 1.3).unwrap().value;
    assert!((a - c).norm() < 1e-9 * a.norm());
}

fn l2_scheme() -> QuadratureScheme {
    QuadratureScheme {
        plane_panels_per_unit: 2,
        theta_nodes: 64,
        ..QuadratureScheme::default()
    }
}

#[test]
fn j_plus_undoes_i_plus_on_a_bump() {
    let cfg = FourierConfig::default();
    let scheme = QuadratureScheme::default();
    let h = PlaneFunction::bump(Side::Upper, LogPolarBump::normalized(0.1, 0.5, 0.3, 1.5));
    let ih = intertwine_i(Side::Upper, &h, &cfg).unwrap().value;
    let jih = intertwine_j(Side::Upper, &ih, &scheme).unwrap().with_decay(h.decay);
    let diff = PlaneFunction::linear_combination(&[(C64::from(1.0), jih), (C64::from(-1.0), h.clone())]).unwrap();
    let err = l2_inner(&diff, &diff, &l2_scheme()).unwrap().value.re.sqrt();
    assert!(err <= 1e-3, "relative L2 error {err}");
}

#[test]
fn i_plus_and_i_minus_are_adjoint() {
    let cfg = FourierConfig::default();
    let h = PlaneFunction::bump(Side::Upper, LogPolarBump::normalized(0.1, 0.5, 0.3, 1.5));
    let k = PlaneFunction::bump(Side::Lower, LogPolarBump::normalized(-0.3, 0.6, 2.0, 1.0));
    let ih = intertwine_i(Side::Upper, &h, &cfg).unwrap().value.with_decay(k.decay);
    let ik = intertwine_i(Side::Lower, &k, &cfg).unwrap().value.with_decay(h.decay);
    let a = l2_inner(&k, &ih, &l2_scheme()).unwrap().value;
    let b = l2_inner(&ik, &h, &l2_scheme()).unwrap().value;
    assert!((a - b).norm() <= 1e-3, "{a} vs {b}");
    assert!(a.norm() > 1e-3);
}

#[test]
fn spectral_inverse_tables_agree() {
    let grid = MuGrid::new(0.5, 5.0).unwrap();
    let h = PlaneFunction::bump(Side::Upper, LogPolarBump::normalized(0.0, 0.5, 0.0, 1.0));
    let cfg = FourierConfig {
        mu_grid: grid,
        jmax: 4,
        ..FourierConfig::default()
    };
    let f = fourier_a(&h, &cfg).unwrap().spectral;
    let ci = apply_c_inverse(&f, Side::Upper).unwrap();
    let back = apply_c(&ci, Side::Upper).unwrap();
    for (k, (s, b)) in f.series.iter().zip(&back.series).enumerate() {
        for j in s.j_range() {
            if f.mu(k) == 0.0 && j % 2 == 0 {
                assert_eq!(ci.series[k].get(j), C64::new(0.0, 0.0));
                continue;
            }
            assert!((s.get(j) - b.get(j)).norm() <= 1e-12 * s.get(j).norm().max(1e-300));
        }
    }
}
