//! Flat `key = value` configuration with `[sections]`.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use sl2harm::fourier::FourierConfig;
use sl2harm::models::MuGrid;
use sl2harm::QuadratureScheme;

use crate::CliError;

/// Effective settings of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub scheme: QuadratureScheme,
    pub fourier: FourierConfig,
    pub tolerance_scale: f64,
    pub seed: u64,
    pub coarse: bool,
    pub out: Option<String>,
}

/// Fourier grids matching [`QuadratureScheme::coarse`].
pub fn coarse_fourier() -> FourierConfig {
    FourierConfig {
        mu_grid: MuGrid::new(0.1, 15.0).expect("valid grid"),
        jmax: 12,
        du: 0.1,
        u_max: 10.0,
        inverse_du: 0.05,
        inverse_ntheta: 128,
        ..FourierConfig::default()
    }
}

/// Parsed file contents: `section.key -> value`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub entries: BTreeMap<String, String>,
}

const KEYS: &[&str] = &[
    "fourier.dmu",
    "fourier.du",
    "fourier.inverse-du",
    "fourier.inverse-ntheta",
    "fourier.jmax",
    "fourier.mu-cutoff",
    "fourier.tail-tolerance",
    "fourier.u-max",
    "quadrature.gl-order",
    "quadrature.group-nodes",
    "quadrature.k-panels",
    "quadrature.line-step",
    "quadrature.line-t-max",
    "quadrature.plane-panels-per-unit",
    "quadrature.theta-nodes",
    "quadrature.truncation",
    "quadrature.xi-tolerance",
    "run.coarse",
    "run.out",
    "run.seed",
    "run.tolerance-scale",
];

impl RawConfig {
    /// Parses the file format. Blank lines and `#` comments are skipped;
    /// keys before the first section header belong to `run`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut section = "run".to_string();
        let mut entries = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.trim().to_string();
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", n + 1)))?;
            let key = format!("{section}.{}", k.trim());
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!("line {}: unknown key {key:?}", n + 1)));
            }
            entries.insert(key, v.trim().to_string());
        }
        Ok(Self { entries })
    }

    fn num<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.entries
            .get(key)
            .map(|v| v.parse().map_err(|_| CliError::Config(format!("bad value {v:?} for {key}"))))
            .transpose()
    }
}

/// Command-line overrides, applied after the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub tolerance_scale: Option<f64>,
    pub out: Option<String>,
    pub coarse: bool,
}

impl SuiteConfig {
    /// Presets (default or coarse), then file values, then flags.
    pub fn resolve(raw: &RawConfig, flags: &Overrides) -> Result<Self, CliError> {
        let coarse = flags.coarse || raw.num::<bool>("run.coarse")?.unwrap_or(false);
        let (mut scheme, mut fourier) = if coarse {
            (QuadratureScheme::coarse(), coarse_fourier())
        } else {
            (QuadratureScheme::default(), FourierConfig::default())
        };
        macro_rules! set {
            ($key:literal, $field:expr) => {
                if let Some(v) = raw.num($key)? {
                    $field = v;
                }
            };
        }
        set!("quadrature.gl-order", scheme.gl_order);
        set!("quadrature.group-nodes", scheme.group_nodes);
        set!("quadrature.k-panels", scheme.k_panels);
        set!("quadrature.plane-panels-per-unit", scheme.plane_panels_per_unit);
        set!("quadrature.theta-nodes", scheme.theta_nodes);
        set!("quadrature.truncation", scheme.truncation);
        set!("quadrature.xi-tolerance", scheme.xi_tolerance);
        let mut line = scheme.line;
        set!("quadrature.line-step", line.step);
        set!("quadrature.line-t-max", line.t_max);
        scheme.line = line;
        set!("fourier.jmax", fourier.jmax);
        set!("fourier.du", fourier.du);
        set!("fourier.u-max", fourier.u_max);
        set!("fourier.inverse-du", fourier.inverse_du);
        set!("fourier.inverse-ntheta", fourier.inverse_ntheta);
        set!("fourier.tail-tolerance", fourier.tail_tolerance);
        let dmu = raw.num("fourier.dmu")?.unwrap_or(fourier.mu_grid.dmu);
        let cutoff = raw
            .num("fourier.mu-cutoff")?
            .unwrap_or(fourier.mu_grid.dmu * fourier.mu_grid.half as f64);
        fourier.mu_grid = MuGrid::new(dmu, cutoff).map_err(|e| CliError::Config(e.to_string()))?;
        scheme.validate().map_err(|e| CliError::Config(e.to_string()))?;
        fourier.validate().map_err(|e| CliError::Config(e.to_string()))?;

        let tolerance_scale = flags
            .tolerance_scale
            .or(raw.num("run.tolerance-scale")?)
            .unwrap_or(1.0);
        if !(tolerance_scale > 0.0 && tolerance_scale.is_finite()) {
            return Err(CliError::Config("tolerance scale must be positive".into()));
        }
        Ok(Self {
            scheme,
            fourier,
            tolerance_scale,
            seed: flags.seed.or(raw.num("run.seed")?).unwrap_or(0),
            coarse,
            out: flags.out.clone().or_else(|| raw.entries.get("run.out").cloned()),
        })
    }

    /// Every effective setting, keyed as in the file format. The output
    /// path is left out so reports do not depend on where they are written.
    pub fn to_json(&self) -> Value {
        let (s, f) = (&self.scheme, &self.fourier);
        json!({
            "fourier": {
                "dmu": f.mu_grid.dmu,
                "du": f.du,
                "inverse-du": f.inverse_du,
                "inverse-ntheta": f.inverse_ntheta,
                "jmax": f.jmax,
                "mu-cutoff": f.mu_grid.dmu * f.mu_grid.half as f64,
                "tail-tolerance": f.tail_tolerance,
                "u-max": f.u_max,
            },
            "quadrature": {
                "gl-order": s.gl_order,
                "group-nodes": s.group_nodes,
                "k-panels": s.k_panels,
                "line-step": s.line.step,
                "line-t-max": s.line.t_max,
                "plane-panels-per-unit": s.plane_panels_per_unit,
                "theta-nodes": s.theta_nodes,
                "truncation": s.truncation,
                "xi-tolerance": s.xi_tolerance,
            },
            "run": {
                "coarse": self.coarse,
                "seed": self.seed,
                "tolerance-scale": self.tolerance_scale,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_and_comments() {
        let raw = RawConfig::parse("seed = 3\n# note\n[fourier]\njmax = 8 # fewer\n").unwrap();
        let c = SuiteConfig::resolve(&raw, &Overrides::default()).unwrap();
        assert_eq!((c.seed, c.fourier.jmax), (3, 8));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(RawConfig::parse("[fourier]\njmx = 8\n"), Err(CliError::Config(_))));
        assert!(matches!(RawConfig::parse("[nope]\nseed = 1\n"), Err(CliError::Config(_))));
        assert!(matches!(RawConfig::parse("just text\n"), Err(CliError::Config(_))));
    }

    #[test]
    fn flags_override_the_file() {
        let raw = RawConfig::parse("[run]\nseed = 3\ntolerance-scale = 2\n").unwrap();
        let flags = Overrides {
            seed: Some(9),
            ..Overrides::default()
        };
        let c = SuiteConfig::resolve(&raw, &flags).unwrap();
        assert_eq!((c.seed, c.tolerance_scale), (9, 2.0));
    }

    #[test]
    fn coarse_preset_keeps_file_overrides() {
        let raw = RawConfig::parse("[quadrature]\ngl-order = 20\n").unwrap();
        let flags = Overrides {
            coarse: true,
            ..Overrides::default()
        };
        let c = SuiteConfig::resolve(&raw, &flags).unwrap();
        assert_eq!(c.scheme.gl_order, 20);
        assert_eq!(c.scheme.group_nodes, QuadratureScheme::coarse().group_nodes);
        assert_eq!(c.fourier, coarse_fourier());
    }

    #[test]
    fn bad_values_are_config_errors() {
        let raw = RawConfig::parse("[quadrature]\ntheta-nodes = 0\n").unwrap();
        assert!(SuiteConfig::resolve(&raw, &Overrides::default()).is_err());
        let raw = RawConfig::parse("[fourier]\ndu = fast\n").unwrap();
        assert!(SuiteConfig::resolve(&raw, &Overrides::default()).is_err());
    }
}
