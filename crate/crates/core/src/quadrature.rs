//! Quadrature rules: Gauss-Legendre panels, the double-exponential rule for
//! the real line, periodic trapezoid sums and an adaptive Gauss-Kronrod
//! integrator used as an independent reference in tests.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.on(a, b).map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
        &self,
        a: f64,
        b: f64,
        mut f: F,
    ) -> Complex64 {
        self.on(a, b).map(|(x, w)| f(x) * w).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Cached rules for the node counts used throughout the crate.
pub fn gauss_legendre(n: usize) -> &'static GaussLegendre {
    static CACHE: OnceLock<std::sync::Mutex<Vec<(usize, &'static GaussLegendre)>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| std::sync::Mutex::new(Vec::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    if let Some((_, rule)) = guard.iter().find(|(m, _)| *m == n) {
        return rule;
    }
    let rule: &'static GaussLegendre = Box::leak(Box::new(GaussLegendre::new(n)));
    guard.push((n, rule));
    rule
}

/// Composite Gauss-Legendre rule over `[a, b]` with `panels` equal panels.
pub fn composite_gl<F: FnMut(f64) -> Complex64>(
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
    mut f: F,
) -> Complex64 {
    let rule = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        acc += rule.integrate_complex(lo, lo + h, &mut f);
    }
    acc
}

/// Double-exponential (sinh-sinh) rule for integrals over the whole real
/// line: `s = scale * sinh(pi/2 * sinh(t))`, trapezoid in `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SinhSinh {
    /// Step in the `t` variable.
    pub step: f64,
    /// Truncation of the `t` variable.
    pub t_max: f64,
}

impl Default for SinhSinh {
    fn default() -> Self {
        Self {
            step: 1.0 / 64.0,
            t_max: 5.0,
        }
    }
}

impl SinhSinh {
    /// Nodes `(s, weight)` for the substitution with the given length scale.
    pub fn nodes(&self, scale: f64) -> Vec<(f64, f64)> {
        let n = (self.t_max / self.step).round() as i64;
        let mut out = Vec::with_capacity(2 * n as usize + 1);
        for k in -n..=n {
            let t = k as f64 * self.step;
            let inner = 0.5 * PI * t.sinh();
            let s = scale * inner.sinh();
            let w = self.step * scale * 0.5 * PI * t.cosh() * inner.cosh();
            if s.is_finite() && w.is_finite() {
                out.push((s, w));
            }
        }
        out
    }

    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, scale: f64, mut f: F) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, w) in self.nodes(scale) {
            let v = f(s);
            if v.re.is_finite() && v.im.is_finite() {
                acc += v * w;
            }
        }
        acc
    }

    pub fn halved(&self) -> Self {
        Self {
            step: 0.5 * self.step,
            t_max: self.t_max,
        }
    }
}

/// Periodic trapezoid sum over `[0, 2*pi)` with `n` nodes.
pub fn periodic_trapezoid<F: FnMut(f64) -> Complex64>(n: usize, mut f: F) -> Complex64 {
    let h = 2.0 * PI / n as f64;
    (0..n).map(|k| f(k as f64 * h)).sum::<Complex64>() * h
}

// Gauss-Kronrod 7-15 abscissae and weights.
const GK_X: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * GK_WK[7];
    let mut gauss = fc * GK_WG[3];
    for i in 0..7 {
        let x = h * GK_X[i];
        let s = f(c - x) + f(c + x);
        kron += GK_WK[i] * s;
        if i % 2 == 1 {
            gauss += GK_WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Globally adaptive Gauss-Kronrod integration of a real function.
pub fn adaptive_gk<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    let mut intervals = vec![(a, b, gk15(&mut f, a, b))];
    for _ in 0..5000 {
        let total_err: f64 = intervals.iter().map(|(_, _, (_, e))| e).sum();
        if total_err < tol {
            break;
        }
        let (idx, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.total_cmp(&y.1 .2 .1))
            .expect("nonempty");
        let (lo, hi, _) = intervals.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        intervals.push((lo, mid, gk15(&mut f, lo, mid)));
        intervals.push((mid, hi, gk15(&mut f, mid, hi)));
    }
    intervals.iter().map(|(_, _, (v, _))| v).sum()
}

/// Defaults for all group and plane quadratures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureScheme {
    /// Gauss-Legendre order per panel on compact coordinates.
    pub gl_order: usize,
    /// Panels on the sinh-graded K-integral of the Xi function.
    pub k_panels: usize,
    /// Truncation radius for noncompact coordinates.
    pub truncation: f64,
    /// Line-integral rule for the intertwining integrals.
    pub line: SinhSinh,
    /// Nodes per axis for three-dimensional group integrals.
    pub group_nodes: usize,
    /// Relative tolerance for the refinement check on Xi.
    pub xi_tolerance: f64,
    /// 16-point panels per unit of `u = log r` for plane integrals.
    pub plane_panels_per_unit: usize,
    /// Trapezoid nodes on the circle for plane integrals.
    pub theta_nodes: usize,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        Self {
            gl_order: 64,
            k_panels: 24,
            truncation: 12.0,
            line: SinhSinh::default(),
            group_nodes: 64,
            xi_tolerance: 1e-12,
            plane_panels_per_unit: 4,
            theta_nodes: 128,
        }
    }
}

impl QuadratureScheme {
    /// Reduced resolution for quick runs.
    pub fn coarse() -> Self {
        Self {
            gl_order: 32,
            k_panels: 12,
            truncation: 10.0,
            line: SinhSinh {
                step: 1.0 / 32.0,
                t_max: 5.0,
            },
            group_nodes: 32,
            xi_tolerance: 1e-10,
            plane_panels_per_unit: 2,
            theta_nodes: 64,
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.gl_order == 0
            || self.k_panels == 0
            || self.group_nodes == 0
            || self.plane_panels_per_unit == 0
            || self.theta_nodes == 0
        {
            return Err(crate::Error::InvalidGrid("node counts must be positive".into()));
        }
        if !(self.truncation > 0.0) || !(self.line.step > 0.0) || !(self.line.t_max > 0.0) {
            return Err(crate::Error::InvalidGrid(
                "truncation radii and steps must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(10);
        let v = rule.integrate(-1.0, 2.0, |x| x.powi(19) + 3.0 * x * x);
        let exact = (2f64.powi(20) - 1.0) / 20.0 + (8.0 + 1.0);
        assert!((v - exact).abs() < 1e-9 * exact.abs());
        let s: f64 = rule.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        assert!(rule.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn sinh_sinh_handles_algebraic_tails() {
        let rule = SinhSinh::default();
        // integral of (1+s^2)^{-3/4} over R = sqrt(pi) Gamma(1/4)/Gamma(3/4)
        let v = rule.integrate(1.0, |s| Complex64::new((1.0 + s * s).powf(-0.75), 0.0));
        let exact = PI.sqrt() * 3.625_609_908_221_908 / 1.225_416_702_465_178;
        assert!((v.re - exact).abs() < 1e-10 * exact, "{} vs {}", v.re, exact);
    }

    #[test]
    fn adaptive_gk_matches_closed_form() {
        let v = adaptive_gk(|x| (-x * x).exp(), -8.0, 8.0, 1e-14);
        assert!((v - PI.sqrt()).abs() < 1e-12);
    }
}
