//! Suite configuration: parameter grids merged from a key=value file and flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use holobreak::term_algebra::DEFAULT_SEED;
use holobreak::Qi;

use crate::CliError;

/// Verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    RcIdentities,
    RcPlancherel,
    #[value(name = "l2-plancherel")]
    L2Plancherel,
    BernsteinSato,
    JuhlPlancherel,
    Kernels,
    OrthoPoly,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::RcIdentities => "rc-identities",
            Suite::RcPlancherel => "rc-plancherel",
            Suite::L2Plancherel => "l2-plancherel",
            Suite::BernsteinSato => "bernstein-sato",
            Suite::JuhlPlancherel => "juhl-plancherel",
            Suite::Kernels => "kernels",
            Suite::OrthoPoly => "ortho-poly",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Arithmetic tier a suite runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Exact,
    Float,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::Exact => "exact",
            Tier::Float => "float",
        }
    }
}

/// A grid value, kept with its original spelling.
#[derive(Clone, Debug, PartialEq)]
pub struct Value {
    pub text: String,
    pub float: f64,
    pub exact: Option<Qi>,
}

impl Value {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let text = text.trim();
        let exact = Qi::parse_rational(text);
        let float = match &exact {
            Some(q) => holobreak::Scalar::to_c64(q).re,
            None => text.parse().map_err(|_| CliError::Config(format!("invalid number '{text}'")))?,
        };
        if !float.is_finite() {
            return Err(CliError::Config(format!("non-finite value '{text}'")));
        }
        Ok(Value { text: text.to_string(), float, exact })
    }

    fn is_fraction(&self) -> bool {
        self.text.contains('/')
    }

    /// The exact value, or an error naming the decimal that blocks exact mode.
    pub fn rational(&self) -> Result<Qi, CliError> {
        self.exact.clone().ok_or_else(|| CliError::Config(format!("'{}' is not rational; exact mode needs p/q values", self.text)))
    }
}

fn parse_list(text: &str) -> Result<Vec<Value>, CliError> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(Value::parse).collect()
}

fn parse_naturals(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| CliError::Config(format!("invalid dimension '{s}'"))))
        .collect()
}

fn parse_bool(key: &str, text: &str) -> Result<bool, CliError> {
    match text.trim() {
        "true" | "1" | "yes" | "" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(CliError::Config(format!("invalid boolean '{other}' for {key}"))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, text: &str) -> Result<T, CliError> {
    text.trim().parse().map_err(|_| CliError::Config(format!("invalid value '{}' for {key}", text.trim())))
}

/// Settings that may come from a file or from flags, before defaults.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub lambda1: Option<String>,
    pub lambda2: Option<String>,
    pub lambda: Option<String>,
    pub n: Option<String>,
    pub ell_max: Option<u32>,
    pub tol: Option<f64>,
    pub exact: Option<bool>,
    pub seed: Option<u64>,
    pub report: Option<PathBuf>,
    pub csv: Option<bool>,
    pub radius: Option<f64>,
    pub order: Option<usize>,
}

impl Overrides {
    /// Reads `key = value` lines; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut o = Overrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim().to_string();
            match key.as_str() {
                "lambda1" => o.lambda1 = Some(value),
                "lambda2" => o.lambda2 = Some(value),
                "lambda" => o.lambda = Some(value),
                "n" => o.n = Some(value),
                "ell-max" => o.ell_max = Some(parse_num(&key, &value)?),
                "tol" => o.tol = Some(parse_num(&key, &value)?),
                "exact" => o.exact = Some(parse_bool(&key, &value)?),
                "seed" => o.seed = Some(parse_num(&key, &value)?),
                "report" => o.report = Some(PathBuf::from(value)),
                "csv" => o.csv = Some(parse_bool(&key, &value)?),
                "radius" => o.radius = Some(parse_num(&key, &value)?),
                "order" => o.order = Some(parse_num(&key, &value)?),
                other => return Err(CliError::Config(format!("line {}: unknown key '{other}'", lineno + 1))),
            }
        }
        Ok(o)
    }

    /// `other` wins wherever it is set.
    pub fn overlay(self, other: Overrides) -> Overrides {
        Overrides {
            lambda1: other.lambda1.or(self.lambda1),
            lambda2: other.lambda2.or(self.lambda2),
            lambda: other.lambda.or(self.lambda),
            n: other.n.or(self.n),
            ell_max: other.ell_max.or(self.ell_max),
            tol: other.tol.or(self.tol),
            exact: other.exact.or(self.exact),
            seed: other.seed.or(self.seed),
            report: other.report.or(self.report),
            csv: other.csv.or(self.csv),
            radius: other.radius.or(self.radius),
            order: other.order.or(self.order),
        }
    }
}

/// Fully resolved configuration for one suite run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub lambda1: Vec<Value>,
    pub lambda2: Vec<Value>,
    pub lambda: Vec<Value>,
    pub n: Vec<usize>,
    pub ell_max: u32,
    pub tol: f64,
    pub tier: Tier,
    pub seed: u64,
    pub report: Option<PathBuf>,
    pub csv: bool,
    pub radius: f64,
    pub order: usize,
}

fn defaults(suite: Suite) -> (&'static str, &'static str, &'static str, &'static str, u32) {
    match suite {
        Suite::OrthoPoly => ("0,0.5,1,2.5", "0,0.5,1,2.5", "0.5,1,2.5", "3", 10),
        Suite::Kernels => ("2", "2", "3.5,4", "3", 2),
        Suite::JuhlPlancherel => ("2", "2", "3.5,4.5", "3,4", 4),
        Suite::BernsteinSato => ("2", "2", "7/2,9/2", "3,4,5", 4),
        _ => ("2,2.5", "2,3", "3.5", "3", 4),
    }
}

impl SuiteConfig {
    pub fn resolve(suite: Suite, o: Overrides) -> Result<Self, CliError> {
        let (d1, d2, dl, dn, dell) = defaults(suite);
        let lambda1 = parse_list(o.lambda1.as_deref().unwrap_or(d1))?;
        let lambda2 = parse_list(o.lambda2.as_deref().unwrap_or(d2))?;
        let lambda = parse_list(o.lambda.as_deref().unwrap_or(dl))?;
        let n = parse_naturals(o.n.as_deref().unwrap_or(dn))?;
        let tol = o.tol.unwrap_or(1e-9);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Config(format!("tolerance must be positive, got {tol}")));
        }
        let fractions = [&lambda1, &lambda2, &lambda].iter().any(|g| g.iter().any(Value::is_fraction));
        let tier = if o.exact.unwrap_or(false) || fractions { Tier::Exact } else { Tier::Float };
        let cfg = SuiteConfig {
            suite,
            lambda1,
            lambda2,
            lambda,
            n,
            ell_max: o.ell_max.unwrap_or(dell),
            tol,
            tier,
            seed: o.seed.unwrap_or(DEFAULT_SEED),
            report: o.report,
            csv: o.csv.unwrap_or(false),
            radius: o.radius.unwrap_or(20.0),
            order: o.order.unwrap_or(24),
        };
        cfg.check_grid()?;
        Ok(cfg)
    }

    fn check_grid(&self) -> Result<(), CliError> {
        let empty = |name: &str| Err(CliError::Config(format!("empty grid: no values for {name}")));
        match self.suite {
            Suite::RcIdentities | Suite::RcPlancherel | Suite::L2Plancherel | Suite::OrthoPoly => {
                if self.lambda1.is_empty() {
                    return empty("lambda1");
                }
                if self.lambda2.is_empty() {
                    return empty("lambda2");
                }
            }
            Suite::BernsteinSato | Suite::JuhlPlancherel | Suite::Kernels => {
                if self.lambda.is_empty() {
                    return empty("lambda");
                }
                if self.n.is_empty() {
                    return empty("n");
                }
            }
        }
        if self.suite == Suite::OrthoPoly && self.lambda.is_empty() {
            return empty("lambda");
        }
        if self.tier == Tier::Exact {
            let used: Vec<&Value> = match self.suite {
                Suite::RcIdentities => self.lambda1.iter().chain(&self.lambda2).collect(),
                Suite::BernsteinSato => self.lambda.iter().collect(),
                _ => Vec::new(),
            };
            for v in used {
                v.rational()?;
            }
        }
        if self.radius <= 0.0 || self.order == 0 {
            return Err(CliError::Config("quadrature radius and order must be positive".into()));
        }
        Ok(())
    }

    /// Parameters echoed into the report summary.
    pub fn describe(&self) -> BTreeMap<String, String> {
        let join = |v: &[Value]| v.iter().map(|x| x.text.clone()).collect::<Vec<_>>().join(",");
        let mut m = BTreeMap::new();
        m.insert("lambda1".into(), join(&self.lambda1));
        m.insert("lambda2".into(), join(&self.lambda2));
        m.insert("lambda".into(), join(&self.lambda));
        m.insert("n".into(), self.n.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        m.insert("ell-max".into(), self.ell_max.to_string());
        m.insert("tol".into(), format!("{:e}", self.tol));
        m.insert("radius".into(), self.radius.to_string());
        m.insert("order".into(), self.order.to_string());
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_switch_to_exact() {
        let o = Overrides { lambda1: Some("5/2".into()), ..Default::default() };
        let c = SuiteConfig::resolve(Suite::RcIdentities, o).unwrap();
        assert_eq!(c.tier, Tier::Exact);
        let c = SuiteConfig::resolve(Suite::RcIdentities, Overrides::default()).unwrap();
        assert_eq!(c.tier, Tier::Float);
    }

    #[test]
    fn flags_override_file() {
        let file = Overrides::from_text("lambda1 = 3\n# comment\nell_max = 2\ntol=1e-6\n").unwrap();
        let flags = Overrides { lambda1: Some("4".into()), ..Default::default() };
        let c = SuiteConfig::resolve(Suite::RcIdentities, file.overlay(flags)).unwrap();
        assert_eq!(c.lambda1[0].text, "4");
        assert_eq!(c.ell_max, 2);
        assert_eq!(c.tol, 1e-6);
    }

    #[test]
    fn bad_configs() {
        let empty = Overrides { lambda1: Some(" ".into()), ..Default::default() };
        assert!(matches!(SuiteConfig::resolve(Suite::RcIdentities, empty), Err(CliError::Config(_))));
        let decimal = Overrides { lambda1: Some("2.5".into()), exact: Some(true), ..Default::default() };
        assert!(SuiteConfig::resolve(Suite::RcIdentities, decimal).is_err());
        let tol = Overrides { tol: Some(-1.0), ..Default::default() };
        assert!(SuiteConfig::resolve(Suite::OrthoPoly, tol).is_err());
        assert!(Overrides::from_text("nonsense").is_err());
        assert!(Overrides::from_text("colour = red").is_err());
        assert!(Value::parse("1/0").is_err());
    }
}
