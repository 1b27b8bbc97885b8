//! Run configuration: potential grammar, presets, grids and the config hash.

use std::fmt;
use std::sync::Arc;

use cdkernel::{ExtendedInterval, Potential, Sine};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Environment variable overriding the equilibrium quadrature order.
pub const QUAD_ORDER_ENV: &str = "CDK_QUAD_ORDER";

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn cfg<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// An interval endpoint: a number or `"inf"`, `"-inf"` (also `"−inf"`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Value(f64),
    Named(String),
}

impl Bound {
    fn resolve(&self) -> Result<f64, ConfigError> {
        match self {
            Bound::Value(v) => Ok(*v),
            Bound::Named(s) => match s.trim() {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" | "\u{2212}inf" => Ok(f64::NEG_INFINITY),
                other => cfg(format!("invalid interval endpoint {other:?}")),
            },
        }
    }
}

/// Potential specification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PotentialSpec {
    Preset(String),
    Spec(PotentialBody),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PotentialBody {
    /// `Σ coeffs[k] x^k` on `interval` (default ℝ).
    Poly {
        coeffs: Vec<f64>,
        #[serde(default)]
        interval: Option<[Bound; 2]>,
    },
    /// `base + eps·amplitude·sin(x)`; `base` must live on a compact interval.
    Perturbed {
        base: Box<PotentialSpec>,
        eps: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl PotentialSpec {
    pub fn build(&self) -> Result<Potential, ConfigError> {
        match self {
            PotentialSpec::Preset(name) => preset(name),
            PotentialSpec::Spec(PotentialBody::Poly { coeffs, interval }) => {
                let j = match interval {
                    None => ExtendedInterval::real_line(),
                    Some([lo, hi]) => ExtendedInterval::new(lo.resolve()?, hi.resolve()?).map_err(|e| ConfigError(format!("interval: {e}")))?,
                };
                Potential::polynomial(coeffs, j).map_err(|e| ConfigError(format!("potential: {e}")))
            }
            PotentialSpec::Spec(PotentialBody::Perturbed { base, eps, amplitude }) => {
                let b = base.build()?;
                Potential::perturb(&b, Arc::new(Sine { amplitude: *amplitude }), *eps).map_err(|e| ConfigError(format!("potential: {e}")))
            }
        }
    }
}

pub fn preset(name: &str) -> Result<Potential, ConfigError> {
    match name {
        "gue" => Ok(Potential::gue()),
        "quartic" => Ok(Potential::quartic()),
        other => cfg(format!("unknown preset {other:?} (expected \"gue\" or \"quartic\")")),
    }
}

/// `lo:hi:step`, inclusive of `hi` up to rounding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Grid {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return cfg(format!("grid {text:?} must be lo:hi:step"));
        }
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| ConfigError(format!("grid {text:?}: bad number {s:?}")));
        let g = Grid { lo: num(parts[0])?, hi: num(parts[1])?, step: num(parts[2])? };
        if !(g.step > 0.0) || !(g.hi >= g.lo) || !g.lo.is_finite() || !g.hi.is_finite() {
            return cfg(format!("grid {text:?} needs lo <= hi and step > 0"));
        }
        if g.len() > 1_000_000 {
            return cfg(format!("grid {text:?} has too many points"));
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.lo + k as f64 * self.step).collect()
    }
}

/// Fields that may come from `--config` and are overridden by flags.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub preset: Option<String>,
    pub potential: Option<PotentialSpec>,
    pub n: Option<u32>,
    pub n_max: Option<usize>,
    pub delta: Option<f64>,
    pub grid: Option<String>,
    pub range: Option<String>,
    pub m: Option<usize>,
    pub x: Option<f64>,
    pub quad_order: Option<usize>,
    pub out: Option<String>,
    pub plot: Option<String>,
    pub table: Option<String>,
    pub json: Option<String>,
    pub compare: Option<bool>,
}

/// Fully resolved configuration of one run; hashed into every output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub potential: PotentialSpec,
    pub n: Option<u32>,
    pub n_max: Option<usize>,
    pub delta: Option<f64>,
    pub grid: Option<Grid>,
    pub range: Option<Grid>,
    pub m: Option<usize>,
    pub x: Option<f64>,
    pub quad_order: usize,
    pub compare: bool,
    #[serde(skip)]
    pub out: Option<String>,
    #[serde(skip)]
    pub plot: Option<String>,
    #[serde(skip)]
    pub table: Option<String>,
    #[serde(skip)]
    pub json: Option<String>,
}

impl RunConfig {
    /// Merges flags over the config file over the environment.
    pub fn resolve(command: &str, flags: FileConfig, file: Option<FileConfig>, env_quad: Option<String>) -> Result<Self, ConfigError> {
        let file = file.unwrap_or_default();
        let preset = flags.preset.clone().or(file.preset.clone());
        let spec = flags.potential.clone().or(file.potential.clone());
        let potential = match (preset, spec) {
            (Some(_), Some(_)) => return cfg("give either a preset or a potential, not both"),
            (Some(p), None) => PotentialSpec::Preset(p),
            (None, Some(s)) => s,
            (None, None) => PotentialSpec::Preset("gue".into()),
        };
        potential.build()?;
        let env_quad = match env_quad {
            Some(s) => Some(s.trim().parse::<usize>().map_err(|_| ConfigError(format!("{QUAD_ORDER_ENV}={s:?} is not an integer")))?),
            None => None,
        };
        let quad_order = flags.quad_order.or(env_quad).or(file.quad_order).unwrap_or(cdkernel::equilibrium::DEFAULT_QUAD_ORDER);
        if quad_order < cdkernel::equilibrium::MIN_QUAD_ORDER {
            return cfg(format!("quad order {quad_order} below the minimum {}", cdkernel::equilibrium::MIN_QUAD_ORDER));
        }
        let grid = flags.grid.or(file.grid).map(|g| Grid::parse(&g)).transpose()?;
        let range = flags.range.or(file.range).map(|g| Grid::parse(&g)).transpose()?;
        let n = flags.n.or(file.n);
        if n == Some(0) {
            return cfg("--n must be positive");
        }
        Ok(RunConfig {
            command: command.to_string(),
            potential,
            n,
            n_max: flags.n_max.or(file.n_max),
            delta: flags.delta.or(file.delta),
            grid,
            range,
            m: flags.m.or(file.m),
            x: flags.x.or(file.x),
            quad_order,
            compare: flags.compare.or(file.compare).unwrap_or(false),
            out: flags.out.or(file.out),
            plot: flags.plot.or(file.plot),
            table: flags.table.or(file.table),
            json: flags.json.or(file.json),
        })
    }

    pub fn require_n(&self) -> Result<u32, ConfigError> {
        self.n.ok_or_else(|| ConfigError(format!("{} needs --n", self.command)))
    }

    /// SHA-256 of the canonical JSON form of the configuration.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn build_potential(&self) -> Result<Potential, ConfigError> {
        self.potential.build()
    }
}

pub fn load_file(path: &str) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read config {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| ConfigError(format!("config {path}: {e}")))
}

pub fn parse_potential(text: &str) -> Result<PotentialSpec, ConfigError> {
    serde_json::from_str(text).map_err(|e| ConfigError(format!("potential {text:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let p = parse_potential(r#"{"kind":"poly","coeffs":[0,0,1],"interval":["-inf","inf"]}"#).unwrap();
        let v = p.build().unwrap();
        assert_eq!(v.value(3.0), 9.0);
        let c = parse_potential(r#"{"kind":"poly","coeffs":[0,0,1],"interval":[-3,3]}"#).unwrap().build().unwrap();
        assert!(c.interval().is_compact());
        let q = parse_potential(r#""quartic""#).unwrap().build().unwrap();
        assert_eq!(q.value(2.0), 16.0);
        let pert = parse_potential(r#"{"kind":"perturbed","base":{"kind":"poly","coeffs":[0,0,1],"interval":[-3,3]},"eps":0.01}"#).unwrap();
        assert!((pert.build().unwrap().d1(0.0) - 0.01).abs() < 1e-15);
        assert!(parse_potential(r#"{"kind":"poly","coeffs":[0,1]}"#).unwrap().build().is_err());
        assert!(parse_potential(r#""nope""#).unwrap().build().is_err());
    }

    #[test]
    fn grids() {
        let g = Grid::parse("-1.2:1.2:0.01").unwrap();
        assert_eq!(g.len(), 241);
        assert!((g.points()[240] - 1.2).abs() < 1e-12);
        assert!(Grid::parse("1:0:0.1").is_err());
        assert!(Grid::parse("0:1").is_err());
    }

    #[test]
    fn precedence_and_hash() {
        let flags = FileConfig { n: Some(50), quad_order: Some(128), ..Default::default() };
        let file = FileConfig { n: Some(10), preset: Some("quartic".into()), quad_order: Some(512), ..Default::default() };
        let c = RunConfig::resolve("density", flags.clone(), Some(file.clone()), Some("300".into())).unwrap();
        assert_eq!(c.n, Some(50));
        assert_eq!(c.quad_order, 128);
        assert_eq!(c.potential, PotentialSpec::Preset("quartic".into()));
        let d = RunConfig::resolve("density", FileConfig::default(), Some(file), Some("300".into())).unwrap();
        assert_eq!(d.quad_order, 300);
        let e = RunConfig::resolve("density", flags, None, None).unwrap();
        assert_eq!(e.hash(), e.clone().hash());
        assert_ne!(e.hash(), c.hash());
        assert!(RunConfig::resolve("density", FileConfig { quad_order: Some(8), ..Default::default() }, None, None).is_err());
    }
}
