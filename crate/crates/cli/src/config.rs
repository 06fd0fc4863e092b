//! Flat key-value run configuration.
//!
//! The on-disk form is one `key = value` per line (with `#` comments);
//! emit → parse round-trips to identical values.

use anyhow::{anyhow, bail, Context, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub l: f64,
    pub l_prime: f64,
    pub a: f64,
    /// "phase" or "gamma".
    pub choice: String,
    pub alpha: f64,
    pub kappa: f64,
    pub m_list: Vec<usize>,
    /// Number of rows in n-indexed tables (0 = header-only).
    pub n_count: usize,
    pub z_re: f64,
    pub z_im: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub x_count: usize,
    pub beta_list: Vec<f64>,
    pub truncation: usize,
    /// Check tolerance; commands with a variant-dependent default use it
    /// when the value is positive.
    pub tol: f64,
    /// "csv" or "json".
    pub format: String,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            l: 2.0,
            l_prime: 2.0,
            a: 1.0,
            choice: "phase".into(),
            alpha: 0.0,
            kappa: 1.0,
            m_list: vec![0],
            n_count: 11,
            z_re: 0.5,
            z_im: 0.0,
            x_min: 0.05,
            x_max: 10.0,
            x_count: 100,
            beta_list: vec![0.5, 1.0, 2.0],
            truncation: 400,
            tol: 0.0,
            format: "csv".into(),
            out: None,
        }
    }
}

fn parse_list<T: std::str::FromStr>(field: &str, raw: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    if raw.trim().is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|e| anyhow!("field `{field}`: cannot parse `{tok}`: {e}"))
        })
        .collect()
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected `key = value`", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn std::fmt::Display| {
                anyhow!("line {}: field `{key}`: {e}", lineno + 1)
            };
            match key {
                "l" => cfg.l = value.parse().map_err(|e| bad(&e))?,
                "l_prime" => cfg.l_prime = value.parse().map_err(|e| bad(&e))?,
                "a" => cfg.a = value.parse().map_err(|e| bad(&e))?,
                "choice" => cfg.choice = value.to_string(),
                "alpha" => cfg.alpha = value.parse().map_err(|e| bad(&e))?,
                "kappa" => cfg.kappa = value.parse().map_err(|e| bad(&e))?,
                "m" => cfg.m_list = parse_list(key, value)?,
                "n_count" => cfg.n_count = value.parse().map_err(|e| bad(&e))?,
                "z_re" => cfg.z_re = value.parse().map_err(|e| bad(&e))?,
                "z_im" => cfg.z_im = value.parse().map_err(|e| bad(&e))?,
                "x_min" => cfg.x_min = value.parse().map_err(|e| bad(&e))?,
                "x_max" => cfg.x_max = value.parse().map_err(|e| bad(&e))?,
                "x_count" => cfg.x_count = value.parse().map_err(|e| bad(&e))?,
                "beta" => cfg.beta_list = parse_list(key, value)?,
                "truncation" => cfg.truncation = value.parse().map_err(|e| bad(&e))?,
                "tol" => cfg.tol = value.parse().map_err(|e| bad(&e))?,
                "format" => cfg.format = value.to_string(),
                "out" => {
                    cfg.out = if value.is_empty() {
                        None
                    } else {
                        Some(value.to_string())
                    }
                }
                other => bail!("line {}: unknown field `{other}`", lineno + 1),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn emit(&self) -> String {
        let join_f = |xs: &[f64]| {
            xs.iter()
                .map(|v| format!("{v}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let join_u = |xs: &[usize]| {
            xs.iter()
                .map(|v| format!("{v}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut s = String::new();
        s.push_str(&format!("l = {}\n", self.l));
        s.push_str(&format!("l_prime = {}\n", self.l_prime));
        s.push_str(&format!("a = {}\n", self.a));
        s.push_str(&format!("choice = {}\n", self.choice));
        s.push_str(&format!("alpha = {}\n", self.alpha));
        s.push_str(&format!("kappa = {}\n", self.kappa));
        s.push_str(&format!("m = {}\n", join_u(&self.m_list)));
        s.push_str(&format!("n_count = {}\n", self.n_count));
        s.push_str(&format!("z_re = {}\n", self.z_re));
        s.push_str(&format!("z_im = {}\n", self.z_im));
        s.push_str(&format!("x_min = {}\n", self.x_min));
        s.push_str(&format!("x_max = {}\n", self.x_max));
        s.push_str(&format!("x_count = {}\n", self.x_count));
        s.push_str(&format!("beta = {}\n", join_f(&self.beta_list)));
        s.push_str(&format!("truncation = {}\n", self.truncation));
        s.push_str(&format!("tol = {}\n", self.tol));
        s.push_str(&format!("format = {}\n", self.format));
        s.push_str(&format!("out = {}\n", self.out.as_deref().unwrap_or("")));
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.choice != "phase" && self.choice != "gamma" {
            bail!("field `choice`: expected `phase` or `gamma`, got `{}`", self.choice);
        }
        if self.format != "csv" && self.format != "json" {
            bail!("field `format`: expected `csv` or `json`, got `{}`", self.format);
        }
        if !(self.a > 0.0) {
            bail!("field `a`: must be > 0, got {}", self.a);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emit_parse_round_trip() {
        let mut cfg = RunConfig::default();
        cfg.choice = "gamma".into();
        cfg.m_list = vec![0, 2, 3];
        cfg.beta_list = vec![0.25, 1.5];
        cfg.tol = 1e-6;
        cfg.out = Some("table.csv".into());
        let text = cfg.emit();
        let parsed = RunConfig::parse(&text).unwrap();
        assert_eq!(parsed, cfg);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = RunConfig::parse("l = not-a-number\n").unwrap_err();
        assert!(format!("{err}").contains("`l`"), "{err}");
        let err = RunConfig::parse("nonsense = 3\n").unwrap_err();
        assert!(format!("{err}").contains("nonsense"));
        let err = RunConfig::parse("choice = banana\n").unwrap_err();
        assert!(format!("{err}").contains("choice"));
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let cfg = RunConfig::parse("# comment\n\nl = 3.0\n").unwrap();
        assert_eq!(cfg.l, 3.0);
    }
}
