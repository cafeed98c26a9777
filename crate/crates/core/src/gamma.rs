//! Complex Gamma function (Lanczos, g = 7) with reflection for `Re z < 1/2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma(z); errors at the poles `z = 0, -1, -2, ...`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::GammaPole(z.re));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        let s = (z * PI).sin();
        Complex64::from(PI) / (s * gamma_unchecked(1.0 - z))
    } else {
        let z = z - 1.0;
        let mut x = Complex64::from(COEF[0]);
        for (i, &c) in COEF.iter().enumerate().skip(1) {
            x += c / (z + i as f64);
        }
        let t = z + G + 0.5;
        (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
    }
}

/// `Gamma(a) / Gamma(b)` computed through log-gamma differences when both
/// arguments are large, which keeps the ratio finite away from poles.
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64> {
    if a.re > 0.5 && b.re > 0.5 {
        Ok((ln_gamma_right(a) - ln_gamma_right(b)).exp())
    } else {
        Ok(gamma(a)? / gamma(b)?)
    }
}

/// log Gamma for `Re z > 1/2` (principal branch of the Lanczos expression).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::from(COEF[0]);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_values() {
        assert!((gamma(c(5.0, 0.0)).unwrap().re - 24.0).abs() < 1e-12);
        assert!((gamma(c(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(c(-0.5, 0.0)).unwrap().re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn imaginary_unit() {
        let v = gamma(c(0.0, 1.0)).unwrap();
        assert!((v - c(-0.154_949_828_301_810_7, -0.498_015_668_118_356)).norm() < 1e-14);
    }

    #[test]
    fn poles_are_rejected() {
        assert!(gamma(c(0.0, 0.0)).is_err());
        assert!(gamma(c(-3.0, 0.0)).is_err());
        assert!(gamma(c(-3.0, 1e-9)).is_ok());
    }

    #[test]
    fn recurrence_and_ratio() {
        let z = c(0.3, 2.7);
        let lhs = gamma(z + 1.0).unwrap();
        assert!((lhs - z * gamma(z).unwrap()).norm() < 1e-13 * lhs.norm());
        let a = c(3.0, 40.0);
        let b = c(3.5, 40.0);
        let r = gamma_ratio(a, b).unwrap();
        let direct = gamma(a).unwrap() / gamma(b).unwrap();
        assert!((r - direct).norm() < 1e-9 * direct.norm());
    }
}
