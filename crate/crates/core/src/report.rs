//! Machine-readable residual reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::C64;

/// One verification result. Fields are declared in key order, so the JSON
/// keys come out sorted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    #[serde(rename = "grid-params")]
    pub grid_params: BTreeMap<String, f64>,
    pub pass: bool,
    /// `(sum |a - b|^2 / sum |b|^2)^{1/2}` over the samples.
    #[serde(rename = "residual-l2")]
    pub residual_l2: f64,
    /// `max |a - b| / max |b|` over the samples.
    #[serde(rename = "residual-sup")]
    pub residual_sup: f64,
    pub samples: usize,
    #[serde(rename = "test-name")]
    pub test_name: String,
}

impl ResidualReport {
    /// Relative residuals of `got` against `want`, passing when the sup
    /// residual is at most `tolerance`.
    pub fn compare(name: &str, grid_params: BTreeMap<String, f64>, got: &[C64], want: &[C64], tolerance: f64) -> Self {
        let (mut dmax, mut wmax, mut d2, mut w2) = (0.0f64, 0.0f64, 0.0, 0.0);
        for (a, b) in got.iter().zip(want) {
            let d = (a - b).norm();
            dmax = dmax.max(d);
            wmax = wmax.max(b.norm());
            d2 += d * d;
            w2 += b.norm_sqr();
        }
        let rel = |d: f64, w: f64| if w > 0.0 { d / w } else { d };
        let residual_sup = rel(dmax, wmax);
        Self {
            test_name: name.to_string(),
            grid_params,
            residual_sup,
            residual_l2: rel(d2.sqrt(), w2.sqrt()),
            samples: got.len().min(want.len()),
            pass: residual_sup.is_finite() && residual_sup <= tolerance,
        }
    }

    /// A report on a single scalar residual that is already relative.
    pub fn scalar(name: &str, grid_params: BTreeMap<String, f64>, residual: f64, samples: usize, tolerance: f64) -> Self {
        Self {
            test_name: name.to_string(),
            grid_params,
            residual_sup: residual,
            residual_l2: residual,
            samples,
            pass: residual.is_finite() && residual <= tolerance,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_renamed() {
        let r = ResidualReport::compare("t", BTreeMap::new(), &[C64::new(1.0, 0.0)], &[C64::new(1.0, 0.0)], 0.0);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"grid-params":{},"pass":true,"residual-l2":0.0,"residual-sup":0.0,"samples":1,"test-name":"t"}"#
        );
    }
}
