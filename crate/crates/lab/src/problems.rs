//! Problem registry. `f2x` and `fzero` are built in; further problems come
//! from a JSON file of tabulated sources:
//!
//! ```json
//! { "problems": [ { "id": "bump", "values": [0.0, 1.0, 0.0], "kappa": 1.0 } ] }
//! ```
//!
//! `values` are samples of `f` at equally spaced points of `[0, 1]`, both ends
//! included, and `f` is their piecewise-linear interpolant. `kappa` is
//! optional and must be 1 when present.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use convdiff::model::{require_unit_convection, test_problem_f2x, test_problem_zero};
use convdiff::Problem;
use serde::Deserialize;

use crate::error::{usage, LabError, Result};

#[derive(Debug, Clone)]
enum Entry {
    F2x,
    Zero,
    Tabulated(Arc<Vec<f64>>),
}

#[derive(Debug, Clone)]
pub struct ProblemRegistry {
    entries: BTreeMap<String, Entry>,
}

#[derive(Debug, Deserialize)]
struct ProblemFile {
    problems: Vec<TabulatedSource>,
}

#[derive(Debug, Deserialize)]
struct TabulatedSource {
    id: String,
    values: Vec<f64>,
    #[serde(default = "unit")]
    kappa: f64,
}

fn unit() -> f64 {
    1.0
}

impl Default for ProblemRegistry {
    fn default() -> Self {
        Self::new()
    }
}

impl ProblemRegistry {
    /// Registry holding the built-in problems.
    pub fn new() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert("f2x".to_owned(), Entry::F2x);
        entries.insert("fzero".to_owned(), Entry::Zero);
        Self { entries }
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Register the tabulated problems in a JSON string. Ids must be new.
    pub fn load_json(&mut self, text: &str) -> Result<()> {
        let file: ProblemFile = serde_json::from_str(text)?;
        for source in file.problems {
            require_unit_convection(source.kappa)?;
            if source.values.len() < 2 {
                return Err(usage(format!("problem '{}' needs at least two source values", source.id)));
            }
            if source.values.iter().any(|v| !v.is_finite()) {
                return Err(usage(format!("problem '{}' has non-finite source values", source.id)));
            }
            if self.entries.contains_key(&source.id) {
                return Err(usage(format!("problem '{}' is already registered", source.id)));
            }
            self.entries.insert(source.id, Entry::Tabulated(Arc::new(source.values)));
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        self.load_json(&std::fs::read_to_string(path)?)
    }

    /// Instantiate problem `id` at diffusion `epsilon`.
    pub fn problem(&self, id: &str, epsilon: f64) -> Result<Problem> {
        let entry = self.entries.get(id).ok_or_else(|| LabError::UnknownProblem(id.to_owned()))?;
        Ok(match entry {
            Entry::F2x => test_problem_f2x(epsilon)?,
            Entry::Zero => test_problem_zero(epsilon)?,
            Entry::Tabulated(values) => {
                let values = Arc::clone(values);
                Problem::new(epsilon, move |x| interpolate(&values, x))?
            }
        })
    }
}

/// Piecewise-linear interpolation of samples at `k / (len − 1)`, clamped to `[0, 1]`.
fn interpolate(values: &[f64], x: f64) -> f64 {
    let last = values.len() - 1;
    let s = x.clamp(0.0, 1.0) * last as f64;
    let k = (s.floor() as usize).min(last - 1);
    let t = s - k as f64;
    values[k] + t * (values[k + 1] - values[k])
}
