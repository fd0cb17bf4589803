use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use tfcert::funcs::FamilySpec;
use tfcert::oracle::MetaplecticKind;
use tfcert::tfops::{FunctionEvaluator, GridSpec, PointSet};

use crate::output::Format;
use crate::Failure;

pub const SCHEMA: u32 = 1;

/// One JSON document describing a run. Unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "schema_one")]
    pub schema: u32,
    #[serde(default = "dimension_one")]
    pub dimension: usize,
    pub function: Option<FamilySpec>,
    /// Window for STFT-based commands (Gaussian when absent).
    pub window: Option<FamilySpec>,
    /// Rows `[x..., omega...]` of length `2 * dimension`.
    #[serde(default)]
    pub lambda: Vec<Vec<f64>>,
    /// Quadrature grid.
    pub grid: Option<GridSpec>,
    /// Dense sampling grid for heuristic sups and collocation.
    pub sample_grid: Option<GridSpec>,
    /// Evaluation lattice (STFT scans, residual lattices).
    pub lattice: Option<GridSpec>,
    /// Explicit collocation sample points.
    pub samples: Option<Vec<Vec<f64>>>,
    /// Dilation or metaplectic parameter.
    pub r: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[serde(rename = "R")]
    pub radius: Option<f64>,
    pub degree: Option<usize>,
    pub budget: Option<usize>,
    pub seed: Option<u64>,
    pub u: Option<Vec<f64>>,
    pub eta: Option<Vec<f64>>,
    pub x: Option<Vec<f64>>,
    pub omega: Option<Vec<f64>>,
    pub kind: Option<MetaplecticKind>,
    pub quad_tol: Option<f64>,
    /// Pass threshold for residual commands.
    pub tolerance: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

fn schema_one() -> u32 {
    SCHEMA
}

fn dimension_one() -> usize {
    1
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let cfg: RunConfig = serde_json::from_str(text)
            .map_err(|e| Failure::input(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if self.schema != SCHEMA {
            return Err(Failure::input(format!(
                "unsupported schema {}, expected {SCHEMA}",
                self.schema
            )));
        }
        if !(1..=2).contains(&self.dimension) {
            return Err(Failure::input(format!(
                "dimension must be 1 or 2, got {}",
                self.dimension
            )));
        }
        for (i, row) in self.lambda.iter().enumerate() {
            if row.len() != 2 * self.dimension {
                return Err(Failure::input(format!(
                    "lambda row {i} has length {}, expected {}",
                    row.len(),
                    2 * self.dimension
                )));
            }
        }
        for spec in [&self.function, &self.window].into_iter().flatten() {
            spec.validate().map_err(Failure::from)?;
        }
        for g in [&self.grid, &self.sample_grid, &self.lattice]
            .into_iter()
            .flatten()
        {
            g.validate().map_err(Failure::from)?;
        }
        if let Some(out) = &self.output {
            check_output_path(out)?;
        }
        Ok(())
    }

    pub fn function(&self) -> Result<FunctionEvaluator, Failure> {
        let spec = self
            .function
            .as_ref()
            .ok_or_else(|| Failure::input("config needs a 'function'"))?;
        spec.build(self.dimension).map_err(Failure::from)
    }

    pub fn window(&self) -> Result<FunctionEvaluator, Failure> {
        match &self.window {
            Some(spec) => spec.build(self.dimension).map_err(Failure::from),
            None => tfcert::funcs::make_gaussian(self.dimension).map_err(Failure::from),
        }
    }

    pub fn lambda(&self) -> Result<PointSet, Failure> {
        PointSet::from_rows(&self.lambda, self.dimension).map_err(Failure::from)
    }

    pub fn quad_grid(&self) -> GridSpec {
        self.grid
            .unwrap_or_else(|| GridSpec::default_for(self.dimension))
    }

    pub fn require<T: Clone>(&self, value: &Option<T>, key: &str) -> Result<T, Failure> {
        value
            .clone()
            .ok_or_else(|| Failure::input(format!("config needs '{key}'")))
    }
}

/// The parent directory of an output path must exist.
pub fn check_output_path(path: &Path) -> Result<(), Failure> {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() && !p.is_dir() => Err(Failure::input(format!(
            "output directory {} does not exist",
            p.display()
        ))),
        _ => Ok(()),
    }
}
