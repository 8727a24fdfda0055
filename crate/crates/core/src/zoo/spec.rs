//! Metric definition files and the builtin corpus.

use std::fs;
use std::path::Path;

use pseudosym_expr::Context;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chart::{Chart, ChartError};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("schema violation at `{path}`: {msg}")]
    Schema { path: String, msg: String },
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
}

/// A metric in coordinates: `metric[i]` holds `g_i0 .. g_ii` as expression strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    pub name: String,
    pub dim: usize,
    pub coords: Vec<String>,
    #[serde(default)]
    pub params: Vec<String>,
    pub metric: Vec<Vec<String>>,
}

pub const BUILTINS: [&str; 8] = ["ex5_1", "ex5_2", "ex5_3", "ex5_4", "ex5_5", "flat3", "flat4", "flat5"];

fn schema(path: impl Into<String>, msg: impl Into<String>) -> SpecError {
    SpecError::Schema {
        path: path.into(),
        msg: msg.into(),
    }
}

impl MetricSpec {
    pub fn from_json(text: &str) -> Result<MetricSpec, SpecError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let spec: MetricSpec = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            schema(path, e.into_inner().to_string())
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<MetricSpec, SpecError> {
        let text = fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        MetricSpec::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn save(&self, path: &Path) -> Result<(), SpecError> {
        fs::write(path, self.to_json() + "\n").map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Shape checks; expression syntax is checked by [`MetricSpec::chart`].
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.dim < 3 {
            return Err(schema("dim", format!("dimension {} is below 3", self.dim)));
        }
        if self.coords.len() != self.dim {
            return Err(schema("coords", format!("expected {} names, got {}", self.dim, self.coords.len())));
        }
        let mut names: Vec<&String> = self.coords.iter().chain(&self.params).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(schema("coords", format!("name `{}` declared twice", w[0])));
        }
        if self.metric.len() != self.dim {
            return Err(schema("metric", format!("expected {} rows, got {}", self.dim, self.metric.len())));
        }
        let lower = self.metric.iter().enumerate().all(|(i, r)| r.len() == i + 1);
        let full = self.metric.iter().all(|r| r.len() == self.dim);
        if !lower && !full {
            let (i, r) = self
                .metric
                .iter()
                .enumerate()
                .find(|(i, r)| r.len() != i + 1)
                .expect("some row is off");
            return Err(schema(format!("metric[{i}]"), format!("expected {} entries, got {}", i + 1, r.len())));
        }
        Ok(())
    }

    pub fn context(&self) -> Context {
        Context::new(&self.coords, &self.params)
    }

    pub fn chart(&self) -> Result<Chart, SpecError> {
        self.validate()?;
        Ok(Chart::from_strings(&self.name, self.context(), &self.metric)?)
    }
}

fn diagonal(name: &str, coords: &[&str], params: &[&str], diag: &[&str]) -> MetricSpec {
    let metric = diag
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut row = vec!["0".to_string(); i];
            row.push(d.to_string());
            row
        })
        .collect();
    MetricSpec {
        name: name.to_string(),
        dim: coords.len(),
        coords: coords.iter().map(|s| s.to_string()).collect(),
        params: params.iter().map(|s| s.to_string()).collect(),
        metric,
    }
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn builtin(name: &str) -> Result<MetricSpec, SpecError> {
    let x4 = numbered(4);
    let x5 = numbered(5);
    let c4: Vec<&str> = x4.iter().map(String::as_str).collect();
    let c5: Vec<&str> = x5.iter().map(String::as_str).collect();
    let spec = match name {
        "ex5_1" => diagonal(
            name,
            &c5,
            &[],
            &["exp(x1)", "exp(x1)*exp(x5)", "exp(x1)", "exp(x1)", "exp(x1)"],
        ),
        "ex5_2" => diagonal(name, &c4, &[], &["x1"; 4]),
        "ex5_3" => {
            let mut s = diagonal(name, &c4, &["a"], &["-a^2", "a^2*exp(2*x1)/2", "-a^2", "a^2"]);
            s.metric[3][1] = "a^2*exp(x1)".to_string();
            s
        }
        "ex5_4" => diagonal(name, &c4, &[], &["exp(x1)+1", "exp(x1)", "exp(x1)", "exp(x1)"]),
        "ex5_5" => MetricSpec {
            name: name.to_string(),
            dim: 5,
            coords: ["x", "y", "z", "u", "v"].map(String::from).to_vec(),
            params: vec!["rho".to_string()],
            metric: vec![
                vec!["1".into()],
                vec!["0".into(), "1".into()],
                vec!["0".into(), "0".into(), "rho^2".into()],
                vec!["0".into(), "0".into(), "rho^2*x".into(), "1+rho^2*x^2".into()],
                vec![
                    "0".into(),
                    "0".into(),
                    "-rho^2*y".into(),
                    "-rho^2*x*y".into(),
                    "1+rho^2*y^2".into(),
                ],
            ],
        },
        "flat3" | "flat4" | "flat5" => {
            let n: usize = name[4..].parse().expect("digit suffix");
            let xs = numbered(n);
            let cs: Vec<&str> = xs.iter().map(String::as_str).collect();
            diagonal(name, &cs, &[], &vec!["1"; n])
        }
        _ => return Err(SpecError::UnknownBuiltin(name.to_string())),
    };
    Ok(spec)
}
