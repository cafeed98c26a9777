//! Named verification suites. Each check returns a residual report against
//! an independent evaluation of the same quantity.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sl2harm::adjunction::{
    bernstein_functional_reference, bernstein_unit, counit_by_restriction, fiber_plane, fiber_row, fiber_row_support,
    frobenius_counit, frobenius_pairing, hc_wave_condition_check, matrix_coefficient, plane_star,
    spectral_matrix_pairing, spot_check_triangle_first, verify_triangle_first, verify_triangle_narrow,
    verify_triangle_second, wave_packet_b, BumpSpec, LineBump, UnitKernel,
};
use sl2harm::haar::{integrate_g, integrate_nln, GroupBump, KnaBox, NlnBox};
use sl2harm::intertwiners::{
    antisymmetric_part, c_function, intertwine_i, intertwine_j, intertwine_j_numeric, symmetric_part,
};
use sl2harm::models::{
    act_l_module, act_sc_g, act_sc_g_row, l2_inner, l2_norm, Decay, GroupFunction, HomogeneousAtom, KSeries,
    LeviFunction, LogPolarBump, MuGrid, PlaneFunction, SpectralFunction,
};
use sl2harm::report::ResidualReport;
use sl2harm::{group_norm, k_average, xi_value, GroupElement, QuadratureScheme, Side, C64};

use crate::config::SuiteConfig;
use crate::CliError;

/// Result of one check before it is placed in a report.
pub struct Outcome {
    pub report: ResidualReport,
    pub warnings: Vec<String>,
}

impl From<ResidualReport> for Outcome {
    fn from(report: ResidualReport) -> Self {
        Self {
            report,
            warnings: Vec::new(),
        }
    }
}

type Run = fn(&SuiteConfig, &mut ChaCha8Rng, f64) -> sl2harm::Result<Outcome>;

/// A named identity with its base tolerance.
pub struct Check {
    pub name: &'static str,
    pub identity: &'static str,
    pub tolerance: f64,
    run: Run,
}

pub const SUITES: &[&str] = &["group-core", "frobenius", "intertwiner", "wave-packet", "second-adjoint"];

/// Checks of a suite; `all` is the union of the others.
pub fn checks(suite: &str) -> Result<Vec<Check>, CliError> {
    let list = match suite {
        "group-core" => group_core(),
        "frobenius" => frobenius(),
        "intertwiner" => intertwiner(),
        "wave-packet" => wave_packet(),
        "second-adjoint" => second_adjoint(),
        "all" => SUITES.iter().flat_map(|s| checks(s).expect("known suite")).collect(),
        _ => return Err(CliError::Usage(format!("unknown suite {suite:?}"))),
    };
    Ok(list)
}

/// FNV-1a, so each check draws from its own stream whatever suite runs it.
fn stream_of(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Runs one check into its report entry. Core errors become failing entries.
pub fn run_check(c: &Check, cfg: &SuiteConfig) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream_of(c.name));
    let tolerance = c.tolerance * cfg.tolerance_scale;
    let mut entry = match (c.run)(cfg, &mut rng, tolerance) {
        Ok(out) => {
            let mut e = serde_json::to_value(&out.report).expect("report serializes");
            e["warnings"] = json!(out.warnings);
            e
        }
        Err(err) => json!({
            "error": err.to_string(),
            "pass": false,
            "test-name": c.name,
            "warnings": [],
        }),
    };
    entry["identity"] = json!(c.identity);
    entry["tolerance"] = json!(tolerance);
    entry
}

/// The suite report from its entries, sorted by check name.
pub fn assemble(suite: &str, cfg: &SuiteConfig, mut entries: Vec<Value>) -> (Value, bool) {
    entries.sort_by(|a, b| a["test-name"].as_str().cmp(&b["test-name"].as_str()));
    let pass = entries.iter().all(|e| e["pass"] == json!(true));
    let report = json!({
        "checks": entries,
        "config": cfg.to_json(),
        "pass": pass,
        "suite": suite,
    });
    (report, pass)
}

/// Pretty JSON with a trailing newline.
pub fn render(report: &Value) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

/// Runs every check of a suite in name order.
pub fn run_suite(suite: &str, cfg: &SuiteConfig) -> Result<(Value, bool), CliError> {
    let mut list = checks(suite)?;
    list.sort_by_key(|c| c.name);
    let entries = list.iter().map(|c| run_check(c, cfg)).collect();
    Ok(assemble(suite, cfg, entries))
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn random_element(rng: &mut ChaCha8Rng, spread: f64) -> GroupElement {
    GroupElement::rotation(rng.gen_range(-PI..PI))
        * GroupElement::a(rng.gen_range(-spread..spread))
        * GroupElement::n_upper(rng.gen_range(-spread..spread))
        * GroupElement::rotation(rng.gen_range(-PI..PI))
}

fn scalar(name: &str, p: BTreeMap<String, f64>, residual: f64, n: usize, tol: f64) -> sl2harm::Result<Outcome> {
    Ok(ResidualReport::scalar(name, p, residual, n, tol).into())
}

// group-core

fn group_core() -> Vec<Check> {
    vec![
        Check {
            name: "decompositions-reconstruct",
            identity: "g = k a n for both Iwasawa factorizations and g = k1 a k2 with a >= 1",
            tolerance: 1e-10,
            run: |_, rng, tol| {
                let mut worst = 0.0f64;
                for _ in 0..64 {
                    let g = random_element(rng, 2.0);
                    for side in [Side::Upper, Side::Lower] {
                        worst = worst.max(g.iwasawa(side).product().frobenius_distance(&g));
                    }
                    let c = g.cartan();
                    worst = worst.max(c.product().frobenius_distance(&g));
                    if c.a.entries()[0] < 1.0 {
                        worst = f64::INFINITY;
                    }
                }
                scalar("decompositions-reconstruct", params(&[]), worst, 64, tol)
            },
        },
        Check {
            name: "norm-submultiplicative",
            identity: "||g h|| <= ||g|| ||h|| for the operator norm",
            tolerance: 1e-12,
            run: |_, rng, tol| {
                let mut worst = 0.0f64;
                for _ in 0..500 {
                    let (g, h) = (random_element(rng, 2.0), random_element(rng, 2.0));
                    worst = worst.max(group_norm(&(g * h)) / (group_norm(&g) * group_norm(&h)) - 1.0);
                }
                scalar("norm-submultiplicative", params(&[]), worst.max(0.0), 500, tol)
            },
        },
        Check {
            name: "xi-at-identity",
            identity: "Xi(e) = 1",
            tolerance: 1e-12,
            run: |cfg, _, tol| {
                let v = xi_value(&GroupElement::IDENTITY, &cfg.scheme);
                scalar("xi-at-identity", params(&[("k-panels", cfg.scheme.k_panels as f64)]), (v - 1.0).abs(), 1, tol)
            },
        },
        Check {
            name: "xi-spherical",
            identity: "int_K Xi(g1 k g2) dk = Xi(g1) Xi(g2)",
            tolerance: 1e-6,
            run: |cfg, rng, tol| {
                let (mut got, mut want) = (Vec::new(), Vec::new());
                for _ in 0..10 {
                    let (g1, g2) = (random_element(rng, 1.0), random_element(rng, 1.0));
                    got.push(C64::from(k_average(|k| xi_value(&(g1 * *k * g2), &cfg.scheme), 128)));
                    want.push(C64::from(xi_value(&g1, &cfg.scheme) * xi_value(&g2, &cfg.scheme)));
                }
                Ok(ResidualReport::compare("xi-spherical", params(&[("k-nodes", 128.0)]), &got, &want, tol).into())
            },
        },
        Check {
            name: "xi-plane-spherical",
            identity: "int_K |g k x|^{-1} dk = Xi(g) / |x| on the plane",
            tolerance: 1e-6,
            run: |cfg, rng, tol| {
                let (mut got, mut want) = (Vec::new(), Vec::new());
                for _ in 0..10 {
                    let g = random_element(rng, 0.8);
                    let r = rng.gen_range(0.3..3.0f64);
                    let th = rng.gen_range(-PI..PI);
                    let x = [r * th.cos(), r * th.sin()];
                    let avg = k_average(
                        |k| {
                            let y = (g * *k).apply(x);
                            1.0 / y[0].hypot(y[1])
                        },
                        4096,
                    );
                    got.push(C64::from(avg));
                    want.push(C64::from(xi_value(&g, &cfg.scheme) / r));
                }
                let p = params(&[("k-nodes", 4096.0)]);
                Ok(ResidualReport::compare("xi-plane-spherical", p, &got, &want, tol).into())
            },
        },
        Check {
            name: "haar-kna-vs-nln",
            identity: "int_G phi dg in KNA coordinates equals the N-bar L N integral with weight alpha^2",
            tolerance: 1e-6,
            run: |cfg, _, tol| {
                let centers = [
                    GroupElement::IDENTITY,
                    GroupElement::a(0.3) * GroupElement::n_upper(-0.4),
                    GroupElement::n_lower(0.5) * GroupElement::a(-0.2),
                    GroupElement::rotation(0.4) * GroupElement::a(0.1),
                    GroupElement::n_upper(0.7) * GroupElement::a(0.2),
                ];
                let pad = |r: (f64, f64)| {
                    let w = 0.1 * (r.1 - r.0);
                    (r.0 - w, r.1 + w)
                };
                let (mut worst, mut warnings) = (0.0f64, Vec::new());
                for (i, c) in centers.iter().enumerate() {
                    let b = GroupBump::new(*c, 0.06 + 0.01 * i as f64)?;
                    let s = b.support_samples();
                    let phi = |g: &GroupElement| C64::from(b.eval(g));
                    let mut kb = KnaBox::enclosing(&s)?;
                    (kb.theta, kb.x, kb.t) = (pad(kb.theta), pad(kb.x), pad(kb.t));
                    let mut nb = NlnBox::enclosing(&s)?;
                    (nb.y, nb.s, nb.x) = (pad(nb.y), pad(nb.s), pad(nb.x));
                    let kna = integrate_g(phi, &kb, &cfg.scheme);
                    let nln = integrate_nln(phi, &nb, &cfg.scheme);
                    if kna.truncation_warning || nln.truncation_warning {
                        warnings.push(format!("truncation on bump {i}"));
                    }
                    worst = worst.max((kna.value - nln.value).norm() / kna.value.norm());
                }
                let p = params(&[("group-nodes", cfg.scheme.group_nodes as f64)]);
                Ok(Outcome {
                    report: ResidualReport::scalar("haar-kna-vs-nln", p, worst, centers.len(), tol),
                    warnings,
                })
            },
        },
    ]
}

// intertwiner

fn plane_bumps(side: Side) -> Vec<PlaneFunction> {
    [(0.1, 0.5, 0.3, 1.5), (-0.4, 0.6, 2.0, 1.0), (0.5, 0.45, -1.2, 2.0)]
        .iter()
        .map(|&(u, s, t, k)| PlaneFunction::bump(side, LogPolarBump::normalized(u, s, t, k)))
        .collect()
}

fn l2_scheme(cfg: &SuiteConfig) -> QuadratureScheme {
    QuadratureScheme {
        plane_panels_per_unit: cfg.scheme.plane_panels_per_unit.min(2),
        theta_nodes: cfg.scheme.theta_nodes.min(64),
        ..cfg.scheme.clone()
    }
}

fn intertwiner() -> Vec<Check> {
    vec![
        Check {
            name: "c-function-odd-at-zero",
            identity: "c+^{(1)}(0) = pi",
            tolerance: 1e-10,
            run: |_, _, tol| {
                let c = c_function(Side::Upper, 1, C64::new(0.0, 0.0))?;
                scalar("c-function-odd-at-zero", params(&[]), (c - PI).norm() / PI, 1, tol)
            },
        },
        Check {
            name: "c-function-even-pole",
            identity: "|mu c+^{(0)}(mu) - 2i| <= 2|mu| near the pole, reported as the ratio",
            tolerance: 1.0,
            run: |_, _, tol| {
                let mut worst = 0.0f64;
                for mu in [0.01, 0.005] {
                    let c = c_function(Side::Upper, 0, C64::from(mu))?;
                    worst = worst.max((c * mu - C64::new(0.0, 2.0)).norm() / (2.0 * mu));
                }
                scalar("c-function-even-pole", params(&[]), worst, 2, tol)
            },
        },
        Check {
            name: "c-function-conjugation",
            identity: "conj(c-^{(j)}(mu)) = c+^{(j)}(mu) for real mu",
            tolerance: 1e-10,
            run: |_, _, tol| {
                let (mut got, mut want) = (Vec::new(), Vec::new());
                for j in -8..=8 {
                    for k in -20..=20 {
                        let mu = C64::from(0.5 * k as f64);
                        if k == 0 && j % 2 == 0 {
                            continue;
                        }
                        got.push(c_function(Side::Lower, j, mu)?.conj());
                        want.push(c_function(Side::Upper, j, mu)?);
                    }
                }
                let p = params(&[("jmax", 8.0), ("mu-max", 10.0), ("dmu", 0.5)]);
                Ok(ResidualReport::compare("c-function-conjugation", p, &got, &want, tol).into())
            },
        },
        Check {
            name: "j-line-integral",
            identity: "J+ on the homogeneous atom of type (mu, j) is multiplication by c+^{(j)}(mu)",
            tolerance: 1e-4,
            run: |cfg, _, tol| {
                let (mut worst, mut warnings, mut n) = (0.0f64, Vec::new(), 0);
                for j in 0..=3 {
                    for mu in [C64::new(1.0, 0.5), C64::new(2.0, 0.7)] {
                        let h = PlaneFunction::atom(Side::Lower, HomogeneousAtom { mu, j });
                        let target = PlaneFunction::atom(Side::Upper, HomogeneousAtom { mu, j });
                        let c = c_function(Side::Upper, j, mu)?;
                        for x in [[1.0, 0.0], [0.3, -1.7], [-2.0, 0.4]] {
                            let got = intertwine_j_numeric(Side::Upper, &h, x, &cfg.scheme)?;
                            if got.divergent {
                                warnings.push(format!("divergent tail at j={j}, mu={mu}"));
                                worst = f64::INFINITY;
                            }
                            let want = c * target.eval(x);
                            worst = worst.max((got.value - want).norm() / want.norm());
                            n += 1;
                        }
                    }
                }
                let p = params(&[("line-step", cfg.scheme.line.step), ("line-t-max", cfg.scheme.line.t_max)]);
                Ok(Outcome {
                    report: ResidualReport::scalar("j-line-integral", p, worst, n, tol),
                    warnings,
                })
            },
        },
        Check {
            name: "j-inverts-i",
            identity: "J I h = h, relative L2 error on bumps in both plane models",
            tolerance: 1e-3,
            run: |cfg, _, tol| {
                let sch = l2_scheme(cfg);
                let (mut worst, mut warnings) = (0.0f64, Vec::new());
                for side in [Side::Upper, Side::Lower] {
                    for h in plane_bumps(side) {
                        let ih = intertwine_i(side, &h, &cfg.fourier)?;
                        if ih.truncation_warning {
                            warnings.push(format!("spectral truncation on the {} side", side.as_str()));
                        }
                        let jih = intertwine_j(side, &ih.value, &cfg.scheme)?.with_decay(h.decay);
                        let diff = PlaneFunction::linear_combination(&[(C64::from(1.0), jih), (C64::from(-1.0), h.clone())])?;
                        worst = worst.max(l2_norm(&diff, &sch)? / l2_norm(&h, &sch)?);
                    }
                }
                let p = params(&[("dmu", cfg.fourier.mu_grid.dmu), ("jmax", cfg.fourier.jmax as f64)]);
                Ok(Outcome {
                    report: ResidualReport::scalar("j-inverts-i", p, worst, 6, tol),
                    warnings,
                })
            },
        },
        Check {
            name: "i-adjoint",
            identity: "<k, I+ h> = <I- k, h>, relative to ||h|| ||k||",
            tolerance: 1e-3,
            run: |cfg, _, tol| {
                let sch = l2_scheme(cfg);
                let mut worst = 0.0f64;
                for (h, k) in plane_bumps(Side::Upper).into_iter().zip(plane_bumps(Side::Lower).into_iter().rev()) {
                    let ih = intertwine_i(Side::Upper, &h, &cfg.fourier)?.value.with_decay(k.decay);
                    let ik = intertwine_i(Side::Lower, &k, &cfg.fourier)?.value.with_decay(h.decay);
                    let a = l2_inner(&k, &ih, &sch)?.value;
                    let b = l2_inner(&ik, &h, &sch)?.value;
                    worst = worst.max((a - b).norm() / (l2_norm(&h, &sch)? * l2_norm(&k, &sch)?));
                }
                scalar("i-adjoint", params(&[("dmu", cfg.fourier.mu_grid.dmu)]), worst, 3, tol)
            },
        },
    ]
}

// frobenius

fn log_polar(side: Side, u0: f64, th: f64) -> PlaneFunction {
    PlaneFunction::bump(side, LogPolarBump::normalized(u0, 0.4, th, 1.2))
}

fn tight(side: Side, u0: f64, th: f64) -> PlaneFunction {
    let sigma = 0.25;
    PlaneFunction::bump(side, LogPolarBump::normalized(u0, sigma, th, 1.0)).with_decay(Decay {
        p: Some(f64::INFINITY),
        u_support: (u0 - 7.0 * sigma, u0 + 7.0 * sigma),
    })
}

/// Group integrals nest inside plane integrals, so both stay small.
fn nested_scheme(cfg: &SuiteConfig) -> QuadratureScheme {
    QuadratureScheme {
        group_nodes: cfg.scheme.group_nodes.min(32),
        plane_panels_per_unit: 1,
        theta_nodes: cfg.scheme.theta_nodes.min(32),
        ..cfg.scheme.clone()
    }
}

fn narrow_phi(sch: &QuadratureScheme) -> sl2harm::Result<GroupFunction> {
    let c = GroupElement::rotation(0.3) * GroupElement::a(0.15) * GroupElement::n_lower(0.1);
    GroupFunction::unit_mass_bump(GroupBump::new(c, 0.12)?, sch)
}

fn frobenius() -> Vec<Check> {
    vec![
        Check {
            name: "pairing-bimodule",
            identity: "<h1 f1, h2 f2> = f1* <h1, h2> f2 as functions on L",
            tolerance: 1e-3,
            run: |cfg, _, tol| {
                let sch = l2_scheme(cfg);
                let (mut got, mut want) = (Vec::new(), Vec::new());
                for side in [Side::Upper, Side::Lower] {
                    let (h1, h2) = (log_polar(side, 0.1, 0.4), log_polar(side, -0.3, 1.1));
                    let f1 = LeviFunction::bump(0.2, 0.15, 1.0)?;
                    let f2 = LeviFunction::bump(-0.1, 0.2, -1.0)?;
                    let lhs = frobenius_pairing(
                        &act_l_module(&h1, &f1, &sch).value,
                        &act_l_module(&h2, &f2, &sch).value,
                        &sch,
                    )?;
                    let p = frobenius_pairing(&h1, &h2, &sch)?.tabulate(0.02)?;
                    let rhs = f1.star().convolve(&p, &sch).convolve(&f2, &sch);
                    for (sg, s) in [(-1.0, 0.0), (-1.0, 0.5), (-1.0, -0.7), (1.0, 0.2)] {
                        got.push(lhs.eval(sg, s));
                        want.push(rhs.eval(sg, s));
                    }
                }
                Ok(ResidualReport::compare("pairing-bimodule", params(&[("tabulation-step", 0.02)]), &got, &want, tol).into())
            },
        },
        Check {
            name: "pairing-g-invariance",
            identity: "<phi h1, h2> = <h1, phi* h2> for phi in the Schwartz algebra",
            tolerance: 1e-3,
            run: |cfg, _, tol| {
                let sch = nested_scheme(cfg);
                let phi = narrow_phi(&sch)?;
                let phi_star = phi.star()?;
                let (h1, h2) = (tight(Side::Upper, 0.1, 0.4), tight(Side::Upper, -0.3, 1.9));
                let lhs = frobenius_pairing(&act_sc_g(&phi, &h1, &sch).value, &h2, &sch)?;
                let rhs = frobenius_pairing(&h1, &act_sc_g(&phi_star, &h2, &sch).value, &sch)?;
                let (a, b) = (lhs.eval_alpha(-1.3), rhs.eval_alpha(-1.3));
                let p = params(&[("group-nodes", sch.group_nodes as f64)]);
                Ok(ResidualReport::compare("pairing-g-invariance", p, &[a], &[b], tol).into())
            },
        },
        Check {
            name: "counit-balanced",
            identity: "eps(h1 phi, h2) = eps(h1, phi-check h2) for the counit pairing rows with planes",
            tolerance: 1e-3,
            run: |cfg, _, tol| {
                let sch = nested_scheme(cfg);
                let phi = narrow_phi(&sch)?;
                let phi_check = phi.check()?;
                let lg = phi.log_norm_bound();
                let side = Side::Lower;
                let b1 = tight(side, 0.2, 2.0);
                let (lo, hi) = b1.decay.u_support;
                let h1 = plane_star(&b1);
                let h2 = tight(side, -0.1, 0.7);
                let h1_phi = act_sc_g_row(&phi, &h1, &sch);
                let lhs = frobenius_counit(&h1_phi, (lo - lg, hi + lg), &h2, &sch)?;
                let rhs = frobenius_counit(&h1, (lo, hi), &act_sc_g(&phi_check, &h2, &sch).value, &sch)?;
                let (a, b) = (lhs.eval_alpha(-0.7), rhs.eval_alpha(-0.7));
                let p = params(&[("group-nodes", sch.group_nodes as f64)]);
                Ok(ResidualReport::compare("counit-balanced", p, &[a], &[b], tol).into())
            },
        },
        Check {
            name: "counit-restriction",
            identity: "the counit on fibres of f1, f2 equals the convolution f1 * f2 restricted to L",
            tolerance: 1e-3,
            run: |cfg, _, tol| {
                let coarse = QuadratureScheme::coarse();
                let (mut got, mut want) = (Vec::new(), Vec::new());
                for side in [Side::Upper, Side::Lower] {
                    let n = |x| GroupElement::n(side, x);
                    let l = |a| GroupElement::levi(a);
                    let f1 = GroupBump::new(l(1.1)? * n(-0.2) * GroupElement::rotation(0.05), 0.1)?;
                    let f2 = GroupBump::new(n(0.3) * l(1.2)?, 0.1)?;
                    let fr = frobenius_counit(&fiber_row(&f1, side), fiber_row_support(&f1, side), &fiber_plane(&f2, side), &cfg.scheme)?;
                    for alpha in [1.32, 1.25, 1.4] {
                        got.push(fr.eval_alpha(alpha));
                        want.push(counit_by_restriction(&f1, &f2, side, alpha, &coarse)?);
                    }
                }
                Ok(ResidualReport::compare("counit-restriction", params(&[]), &got, &want, tol).into())
            },
        },
        Check {
            name: "unit-kernel-reproduces",
            identity: "the unit kernel int_N f(g1 n g2) dn reproduces the action of f on both plane models",
            tolerance: 1e-3,
            run: |cfg, _, tol| {
                let f = GroupBump::new(GroupElement::rotation(0.7) * GroupElement::a(-0.2), 0.1)?;
                let phi = GroupFunction::from_bump(f)?;
                let (mut got, mut want) = (Vec::new(), Vec::new());
                for side in [Side::Upper, Side::Lower] {
                    let h = log_polar(side, 0.2, -0.5);
                    let k = UnitKernel::new(f, side);
                    let direct = act_sc_g(&phi, &h, &cfg.scheme).value;
                    for x in [[1.1, 0.2], [-0.3, 0.9], [0.6, -1.4]] {
                        got.push(k.apply(&h, x, &cfg.scheme)?);
                        want.push(direct.eval(x));
                    }
                }
                Ok(ResidualReport::compare("unit-kernel-reproduces", params(&[]), &got, &want, tol).into())
            },
        },
        Check {
            name: "bernstein-unit-independent",
            identity: "the extension-by-zero unit paired against a function of alpha does not depend on the auxiliary bumps",
            tolerance: 1e-3,
            run: |cfg, _, tol| {
                let sch = &cfg.scheme;
                let f = LeviFunction::bump(0.2, 0.15, -1.0)?;
                let psi = |alpha: f64| {
                    let s = alpha.abs().ln() - 0.1;
                    C64::new((-s * s).exp(), 0.3 * alpha.signum() * s)
                };
                let want = bernstein_functional_reference(&f, psi, sch);
                let specs = [
                    (GroupElement::rotation(0.2), 0.1, (0.1, 0.2), (-0.3, 0.25)),
                    (GroupElement::a(0.4) * GroupElement::n_upper(1.0), 0.12, (-0.5, 0.3), (0.2, 0.15)),
                ];
                let mut got = Vec::new();
                for (c, w, v, vb) in specs {
                    let bumps = BumpSpec::new(c, w, LineBump::new(v.0, v.1)?, LineBump::new(vb.0, vb.1)?, sch)?;
                    got.push(bernstein_unit(&f, &bumps).functional(psi, sch)?);
                }
                let wants = vec![want; got.len()];
                Ok(ResidualReport::compare("bernstein-unit-independent", params(&[]), &got, &wants, tol).into())
            },
        },
    ]
}

// wave-packet

fn profile(side: Side, shift: f64, js: &[(i32, C64)]) -> sl2harm::Result<SpectralFunction> {
    let grid = MuGrid::new(0.05, 7.0)?;
    Ok(SpectralFunction::from_fn(side, grid, 4, |mu, j| {
        js.iter()
            .find(|p| p.0 == j)
            .map(|p| p.1 * (-(mu - shift) * (mu - shift) / 2.0).exp())
            .unwrap_or(C64::new(0.0, 0.0))
    }))
}

fn decay_ts() -> Vec<f64> {
    (0..=16).map(|i| 0.5 * i as f64).collect()
}

/// `sup |B(a_t)| (1+t)^2 / Xi(a_t)` over the later half of `[0, 8]` divided
/// by the same over the earlier half, with `B` from `h1` read on the side
/// opposite to `h2`.
fn decay_ratio(h1: &SpectralFunction, h2: &SpectralFunction, scheme: &QuadratureScheme) -> sl2harm::Result<f64> {
    let mut a = h1.clone();
    a.side = h2.side.opposite();
    let (mut head, mut tail) = (0.0f64, 0.0f64);
    for t in decay_ts() {
        let g = GroupElement::a(t);
        let v = wave_packet_b(&a, h2, &g)?.norm() * (1.0 + t).powi(2) / xi_value(&g, scheme);
        if t <= 4.0 {
            head = head.max(v);
        } else {
            tail = tail.max(v);
        }
    }
    Ok(tail / head)
}

fn even_input(power: i32, shift: f64) -> sl2harm::Result<SpectralFunction> {
    Ok(profile(Side::Upper, shift, &[(0, C64::new(1.0, 0.0)), (2, C64::new(0.3, 0.1))])?
        .map(|mu, s| s.scale(C64::from(mu.powi(power)))))
}

fn wave_packet() -> Vec<Check> {
    vec![
        Check {
            name: "wave-spherical-coefficient",
            identity: "<e0, pi_0(g^{-1}) e0> = Xi(g)",
            tolerance: 1e-10,
            run: |cfg, _, tol| {
                let mut e0 = KSeries::zeros(2);
                e0.set(0, C64::new(1.0, 0.0));
                let (mut got, mut want) = (Vec::new(), Vec::new());
                for t in [0.0, 0.5, 3.0, 8.0] {
                    let g = GroupElement::a(t);
                    got.push(matrix_coefficient(Side::Upper, 0.0, &e0, &e0, &g));
                    want.push(C64::from(xi_value(&g, &cfg.scheme)));
                }
                // relative per sample, since Xi spans several decades on [0, 8]
                let worst = got.iter().zip(&want).map(|(a, b)| (a - b).norm() / b.norm()).fold(0.0, f64::max);
                scalar("wave-spherical-coefficient", params(&[]), worst, 4, tol)
            },
        },
        Check {
            name: "wave-symmetric-antisymmetric",
            identity: "matrix coefficients pair symmetric against antisymmetric parts to zero",
            tolerance: 1e-6,
            run: |_, rng, tol| {
                let h1 = profile(Side::Upper, 0.4, &[(0, C64::new(1.0, 0.0)), (2, C64::new(0.3, -0.5)), (-4, C64::new(0.2, 0.1))])?;
                let h2 = profile(Side::Upper, -0.7, &[(0, C64::new(0.6, 0.2)), (-2, C64::new(0.0, 1.0)), (4, C64::new(0.4, 0.0))])?;
                let (s, a) = (symmetric_part(&h1), antisymmetric_part(&h2));
                let scale = s.norm_sqr().sqrt() * a.norm_sqr().sqrt();
                let mut worst = 0.0f64;
                for _ in 0..3 {
                    let g = random_element(rng, 1.0);
                    worst = worst.max(spectral_matrix_pairing(&s, &a, &g)?.norm() / scale);
                }
                scalar("wave-symmetric-antisymmetric", params(&[("dmu", 0.05)]), worst, 3, tol)
            },
        },
        Check {
            name: "wave-decay-even",
            identity: "|B(a_t)| (1+t)^2 / Xi(a_t) stays bounded on [0, 8] for even inputs vanishing at mu = 0, reported as tail over head",
            tolerance: 1.0,
            run: |cfg, _, tol| {
                let mut worst = 0.0f64;
                let h = even_input(1, 0.0)?;
                for (h1, h2) in [(h.clone(), h), (even_input(0, 0.3)?, even_input(2, 0.0)?)] {
                    // the hypothesis check rejects inadmissible inputs
                    let r = hc_wave_condition_check(&h1, &h2, 2.0, &decay_ts(), &cfg.scheme)?;
                    worst = worst.max(r.tail / r.head);
                }
                scalar("wave-decay-even", params(&[("t-max", 8.0)]), worst, 2 * decay_ts().len(), tol)
            },
        },
        Check {
            name: "wave-decay-odd",
            identity: "|B(a_t)| (1+t)^2 / Xi(a_t) stays bounded on [0, 8] for odd inputs, reported as tail over head",
            tolerance: 1.0,
            run: |cfg, _, tol| {
                let h1 = profile(Side::Upper, 0.2, &[(1, C64::new(1.0, 0.0)), (-3, C64::new(0.4, 0.2))])?;
                let h2 = profile(Side::Upper, -0.1, &[(1, C64::new(0.5, 0.5)), (-1, C64::new(1.0, 0.0))])?;
                let r = decay_ratio(&h1, &h2, &cfg.scheme)?;
                scalar("wave-decay-odd", params(&[("t-max", 8.0)]), r, decay_ts().len(), tol)
            },
        },
    ]
}

// second-adjoint

fn triangle_samples(rng: &mut ChaCha8Rng, n: usize) -> Vec<GroupElement> {
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

fn warned(report: ResidualReport, truncation: bool) -> Outcome {
    Outcome {
        report,
        warnings: if truncation {
            vec!["spectral truncation".into()]
        } else {
            Vec::new()
        },
    }
}

fn second_adjoint() -> Vec<Check> {
    vec![
        Check {
            name: "triangle-first",
            identity: "(J+ I+ h) f = h f for h on G/N+ and f on L",
            tolerance: 1e-2,
            run: |cfg, rng, tol| {
                let f = LeviFunction::bump(0.3, 0.2, 1.0)?;
                let s = triangle_samples(rng, 20);
                let o = verify_triangle_first(&upper_bump(), &f, &s, &cfg.fourier, &cfg.scheme, tol)?;
                Ok(warned(o.report, o.truncation_warning))
            },
        },
        Check {
            name: "triangle-second",
            identity: "f k = ((J- I- k*) f*)* for k on N-\\G and f on L",
            tolerance: 1e-2,
            run: |cfg, rng, tol| {
                let base = PlaneFunction::bump(Side::Lower, LogPolarBump::normalized(-0.2, 0.5, 1.1, 1.5));
                let k = plane_star(&base);
                let f = LeviFunction::bump(0.2, 0.2, 1.0)?;
                let s = triangle_samples(rng, 20);
                let o = verify_triangle_second(&k, base.decay.u_support, &f, &s, &cfg.fourier, &cfg.scheme, tol)?;
                Ok(warned(o.report, o.truncation_warning))
            },
        },
        Check {
            name: "triangle-narrow",
            identity: "(J+ I+ h) f approaches h as f narrows to the identity of L, within the bump-width bound",
            tolerance: 1e-3,
            run: |cfg, rng, tol| {
                let s = triangle_samples(rng, 8);
                let o = verify_triangle_narrow(&upper_bump(), 0.05, &s, &cfg.fourier, &cfg.scheme, tol)?;
                Ok(warned(o.report, o.truncation_warning))
            },
        },
        Check {
            name: "triangle-first-unreduced",
            identity: "(J+ I+ h) f as an iterated integral over L and N+ equals h f",
            tolerance: 1e-2,
            run: |cfg, rng, tol| {
                let f = LeviFunction::bump(-0.2, 0.25, 1.0)?;
                let s = triangle_samples(rng, 3);
                Ok(spot_check_triangle_first(&upper_bump(), &f, &s, &cfg.fourier, &cfg.scheme, tol)?.into())
            },
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_suites_known() {
        let all = checks("all").unwrap();
        let mut names: Vec<_> = all.iter().map(|c| c.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
        assert!(checks("bogus").is_err());
    }

    #[test]
    fn streams_differ_by_name() {
        assert_ne!(stream_of("xi-spherical"), stream_of("xi-plane-spherical"));
    }
}
