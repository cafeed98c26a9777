use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2harm::adjunction::{
    plane_star, spot_check_triangle_first, verify_triangle_first, verify_triangle_narrow, verify_triangle_second,
};
use sl2harm::fourier::FourierConfig;
use sl2harm::models::{LeviFunction, LogPolarBump, PlaneFunction};
use sl2harm::quadrature::QuadratureScheme;
use sl2harm::{GroupElement, Side};

fn samples(n: usize, seed: u64) -> Vec<GroupElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            GroupElement::rotation(rng.gen_range(-3.1..3.1))
                * GroupElement::n(Side::Upper, rng.gen_range(-0.5..0.5))
                * GroupElement::a(rng.gen_range(-0.6..0.6))
        })
        .collect()
}

fn upper_bump() -> PlaneFunction {
    PlaneFunction::bump(Side::Upper, LogPolarBump::normalized(0.1, 0.5, 0.3, 1.5))
}

#[test]
fn zero_levi_function_gives_zero_on_both_sides() {
    let (cfg, scheme) = (FourierConfig::default(), QuadratureScheme::default());
    let out = verify_triangle_first(&upper_bump(), &LeviFunction::zero(), &samples(4, 1), &cfg, &scheme, 1e-12).unwrap();
    assert_eq!(out.report.residual_sup, 0.0);
    assert!(out.report.pass);
}

#[test]
fn first_triangle_holds_on_a_generic_pair() {
    let (cfg, scheme) = (FourierConfig::default(), QuadratureScheme::default());
    let f = LeviFunction::bump(0.3, 0.2, 1.0).unwrap();
    let out = verify_triangle_first(&upper_bump(), &f, &samples(20, 7), &cfg, &scheme, 1e-2).unwrap();
    assert!(out.report.pass, "{:?}", out.report);
    assert_eq!(out.report.samples, 20);
}

#[test]
fn narrow_bump_stays_within_its_bound() {
    let (cfg, scheme) = (FourierConfig::default(), QuadratureScheme::default());
    let out = verify_triangle_narrow(&upper_bump(), 0.05, &samples(8, 3), &cfg, &scheme, 1e-3).unwrap();
    assert!(out.report.pass, "{:?}", out.report);
    assert!(out.report.grid_params["bump-bound"] > 0.0);
}

#[test]
fn unreduced_iterated_integral_agrees() {
    let (cfg, scheme) = (FourierConfig::default(), QuadratureScheme::default());
    let f = LeviFunction::bump(-0.2, 0.25, 1.0).unwrap();
    let r = spot_check_triangle_first(&upper_bump(), &f, &samples(3, 11), &cfg, &scheme, 1e-2).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn second_triangle_holds_through_the_star_maps() {
    let (cfg, scheme) = (FourierConfig::default(), QuadratureScheme::default());
    let base = PlaneFunction::bump(Side::Lower, LogPolarBump::normalized(-0.2, 0.5, 1.1, 1.5));
    let k = plane_star(&base);
    let f = LeviFunction::bump(0.2, 0.2, 1.0).unwrap();
    let out = verify_triangle_second(&k, base.decay.u_support, &f, &samples(20, 5), &cfg, &scheme, 1e-2).unwrap();
    assert!(out.report.pass, "{:?}", out.report);
}
