//! `key=value` defaults for the truncation and quadrature policies.

use std::path::Path;

use spherezeta::kernels::QuadraturePolicy;
use spherezeta::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub tol: Option<f64>,
    pub max_k: Option<usize>,
    pub quad: QuadOverrides,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct QuadOverrides {
    pub split_point: Option<f64>,
    pub nodes_small: Option<usize>,
    pub nodes_large: Option<usize>,
    pub t_cutoff: Option<f64>,
    pub t_floor: Option<f64>,
}

impl QuadOverrides {
    pub fn apply(&self, q: &mut QuadraturePolicy) {
        if let Some(v) = self.split_point {
            q.split_point = v;
        }
        if let Some(v) = self.nodes_small {
            q.nodes_small = v;
        }
        if let Some(v) = self.nodes_large {
            q.nodes_large = v;
        }
        if let Some(v) = self.t_cutoff {
            q.t_cutoff = v;
        }
        if let Some(v) = self.t_floor {
            q.t_floor = v;
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    v.parse()
        .map_err(|e| Error::Usage(format!("config line {line}: bad value for {key}: {e}")))
}

impl ConfigFile {
    /// Blank lines and `#` comments are ignored. Keys may use `-` or `_`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("config line {}: expected key=value", i + 1)))?;
            let key = key.trim().replace('-', "_");
            let v = value.trim();
            let n = i + 1;
            match key.as_str() {
                "tol" => cfg.tol = Some(parse_value(&key, v, n)?),
                "max_k" => cfg.max_k = Some(parse_value(&key, v, n)?),
                "split_point" => cfg.quad.split_point = Some(parse_value(&key, v, n)?),
                "nodes_small" => cfg.quad.nodes_small = Some(parse_value(&key, v, n)?),
                "nodes_large" => cfg.quad.nodes_large = Some(parse_value(&key, v, n)?),
                "t_cutoff" => cfg.quad.t_cutoff = Some(parse_value(&key, v, n)?),
                "t_floor" => cfg.quad.t_floor = Some(parse_value(&key, v, n)?),
                _ => return Err(Error::Usage(format!("config line {n}: unknown key {key:?}"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
