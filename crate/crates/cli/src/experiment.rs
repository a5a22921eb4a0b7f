//! Sweep manifests and the seed-parallel runner.

use std::time::Instant;

use ordim::causal::{
    catcher_dimension_with, default_stoica_eps, default_triangulation_delta, ml_dimension_proxy,
    standard_diamond_window, stoica_dimension, triangulation_dimension, CatcherOptions, DEFAULT_EPS_KAPPA,
    DEFAULT_MAX_SIZE,
};
use ordim::generators::{
    cone_standard_example, desitter2_sample, grid_product, powerset_order, sprinkle_minkowski_with, warning_cylinder,
    EventCloud, MetricSample, Region, WarningGrid,
};
use ordim::{dm_dimension, CausalSet, DimensionResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::Invalid;

/// Which instance family to draw for each seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// Uniform sprinkling of a Minkowski diamond or box; `inject` points come first.
    Minkowski {
        n_spatial: usize,
        n: usize,
        #[serde(default = "diamond")]
        region: Region,
        #[serde(default)]
        inject: Vec<Vec<f64>>,
    },
    DeSitter {
        n: usize,
    },
    Grid {
        l: usize,
        k: usize,
    },
    Powerset {
        s: usize,
    },
    Cone {
        k: usize,
        #[serde(default = "one")]
        r: f64,
    },
    Warning {
        circumference: f64,
        t_max: f64,
        grid: WarningGrid,
    },
    /// Uniform points of the unit cube `[0, 1]^dim` with the Euclidean metric.
    UnitCube {
        dim: usize,
        n: usize,
    },
}

fn diamond() -> Region {
    Region::Diamond
}

fn one() -> f64 {
    1.0
}

/// The dimension to compute on each instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperationSpec {
    Dm {
        #[serde(default = "default_max_k")]
        max_k: usize,
        #[serde(default = "default_budget")]
        budget: u64,
    },
    Catcher {
        #[serde(default)]
        p: usize,
        /// Trim chains with the standard diamond window; needs coordinates.
        margin: Option<f64>,
        #[serde(default = "default_budget")]
        budget: u64,
    },
    Stoica {
        #[serde(default)]
        p: usize,
        /// Defaults to `kappa * mean nearest-neighbour distance`.
        eps: Option<f64>,
        #[serde(default = "default_kappa")]
        kappa: f64,
        #[serde(default = "default_r")]
        r: f64,
        #[serde(default = "default_max_size")]
        max_size: usize,
    },
    Triang {
        #[serde(default)]
        p: usize,
        /// Defaults to 0.9 times the nearest-neighbour distance of `p`.
        delta: Option<f64>,
        #[serde(default = "default_budget")]
        budget: u64,
    },
    Ml {
        #[serde(default)]
        p: usize,
        #[serde(default = "default_l")]
        l: usize,
        #[serde(default = "default_max_k")]
        max_k: usize,
        #[serde(default = "default_budget")]
        budget: u64,
    },
}

fn default_max_k() -> usize {
    8
}

fn default_budget() -> u64 {
    10_000_000
}

fn default_kappa() -> f64 {
    DEFAULT_EPS_KAPPA
}

fn default_r() -> f64 {
    0.5
}

fn default_max_size() -> usize {
    DEFAULT_MAX_SIZE
}

fn default_l() -> usize {
    3
}

impl OperationSpec {
    pub fn name(&self) -> &'static str {
        match self {
            OperationSpec::Dm { .. } => "dm",
            OperationSpec::Catcher { .. } => "catcher",
            OperationSpec::Stoica { .. } => "stoica",
            OperationSpec::Triang { .. } => "triang",
            OperationSpec::Ml { .. } => "ml",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub path: String,
    #[serde(default)]
    pub format: Format,
}

/// A reproducible sweep: one instance per seed, one row per instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub generator: GeneratorSpec,
    pub operation: OperationSpec,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
    /// Record wall time per row; off by default so outputs are byte-identical.
    #[serde(default)]
    pub timing: bool,
}

/// One result line. Column order is the CSV header.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub seed: u64,
    pub n: usize,
    pub operation: String,
    pub status: String,
    pub value: Option<usize>,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub witness_size: usize,
    pub nodes: u64,
    pub params_hash: String,
    pub params: String,
    pub wall_ms: Option<u64>,
}

/// An instance: the order plus whatever geometry the generator produced.
pub struct Instance {
    pub cs: CausalSet,
    pub cloud: Option<EventCloud>,
    pub metric: Option<MetricSample>,
}

fn invalid(field: &str, reason: impl std::fmt::Display) -> anyhow::Error {
    Invalid(format!("{field}: {reason}")).into()
}

impl ExperimentSpec {
    /// Checks the manifest before any instance is generated; errors name the field.
    pub fn validate(&self) -> anyhow::Result<()> {
        let needs_cloud = matches!(
            self.operation,
            OperationSpec::Stoica { .. } | OperationSpec::Catcher { margin: Some(_), .. }
        );
        let has_cloud = matches!(self.generator, GeneratorSpec::Minkowski { .. } | GeneratorSpec::DeSitter { .. });
        if needs_cloud && !has_cloud {
            return Err(invalid("operation.kind", format!("{} needs a generator with coordinates", self.operation.name())));
        }
        let is_metric = matches!(self.generator, GeneratorSpec::UnitCube { .. });
        if matches!(self.operation, OperationSpec::Triang { .. }) != is_metric {
            return Err(invalid("operation.kind", "triang runs exactly on unit_cube samples"));
        }
        if let OperationSpec::Catcher { margin: Some(m), .. } = self.operation {
            if !(0.0..1.0).contains(&m) {
                return Err(invalid("operation.margin", "must lie in [0, 1)"));
            }
            if !matches!(self.generator, GeneratorSpec::Minkowski { region: Region::Diamond, .. }) {
                return Err(invalid("operation.margin", "needs a Minkowski diamond generator"));
            }
        }
        if let OperationSpec::Stoica { eps: Some(e), .. } = self.operation {
            if !(e >= 0.0 && e.is_finite()) {
                return Err(invalid("operation.eps", "must be finite and non-negative"));
            }
        }
        if let OperationSpec::Triang { delta: Some(d), .. } = self.operation {
            if !(d >= 0.0 && d.is_finite()) {
                return Err(invalid("operation.delta", "must be finite and non-negative"));
            }
        }
        if let GeneratorSpec::UnitCube { dim, n } = self.generator {
            if dim == 0 || n == 0 {
                return Err(invalid("generator", "unit_cube needs dim >= 1 and n >= 1"));
            }
        }
        Ok(())
    }

    /// Stable digest of the generator and operation parameters.
    pub fn params_hash(&self) -> String {
        let canon = serde_json::to_string(&(&self.generator, &self.operation)).expect("manifest serializes");
        let digest = Sha256::digest(canon.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// `n` uniform points of `[0, 1]^dim`.
pub fn unit_cube_points(dim: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect()
}

/// Draws the instance for one seed. Deterministic generators ignore the seed.
pub fn generate(manifest: &GeneratorSpec, seed: u64) -> anyhow::Result<Instance> {
    let plain = |cs: CausalSet| Instance {
        cs,
        cloud: None,
        metric: None,
    };
    Ok(match manifest {
        GeneratorSpec::Minkowski {
            n_spatial,
            n,
            region,
            inject,
        } => {
            let (cloud, cs) = sprinkle_minkowski_with(*n_spatial, *n, region.clone(), seed, inject)?;
            Instance {
                cs,
                cloud: Some(cloud),
                metric: None,
            }
        }
        GeneratorSpec::DeSitter { n } => {
            let (cloud, cs) = desitter2_sample(*n, seed)?;
            Instance {
                cs,
                cloud: Some(cloud),
                metric: None,
            }
        }
        GeneratorSpec::Grid { l, k } => plain(grid_product(*l, *k)?),
        GeneratorSpec::Powerset { s } => plain(powerset_order(*s)?),
        GeneratorSpec::Cone { k, r } => {
            let (cloud, cs) = cone_standard_example(*k, *r)?;
            Instance {
                cs,
                cloud: Some(cloud),
                metric: None,
            }
        }
        GeneratorSpec::Warning {
            circumference,
            t_max,
            grid,
        } => plain(warning_cylinder(*circumference, *t_max, *grid)?.cs),
        GeneratorSpec::UnitCube { dim, n } => {
            let metric = MetricSample::euclidean(&unit_cube_points(*dim, *n, seed))?;
            Instance {
                cs: CausalSet::antichain(*n),
                cloud: None,
                metric: Some(metric),
            }
        }
    })
}

fn check_p(p: usize, n: usize) -> anyhow::Result<()> {
    if p >= n {
        return Err(invalid("operation.p", format!("index {p} out of range for {n} elements")));
    }
    Ok(())
}

/// Runs one operation on one instance.
pub fn run_operation(op: &OperationSpec, inst: &Instance) -> anyhow::Result<DimensionResult> {
    let n = inst.cs.len();
    Ok(match op {
        OperationSpec::Dm { max_k, budget } => dm_dimension(&inst.cs, *max_k, *budget),
        OperationSpec::Catcher { p, margin, budget } => {
            check_p(*p, n)?;
            let window = match (margin, &inst.cloud) {
                (Some(m), Some(cloud)) => Some(standard_diamond_window(cloud, *m)?),
                (Some(_), None) => return Err(invalid("operation.margin", "instance has no coordinates")),
                (None, _) => None,
            };
            let opts = CatcherOptions {
                window,
                candidates: None,
                budget: *budget,
            };
            let r = catcher_dimension_with(&inst.cs, *p, &opts)?;
            match margin {
                Some(m) => r.with_param("margin", *m),
                None => r,
            }
        }
        OperationSpec::Stoica {
            p,
            eps,
            kappa,
            r,
            max_size,
        } => {
            check_p(*p, n)?;
            let cloud = inst
                .cloud
                .as_ref()
                .ok_or_else(|| invalid("operation.kind", "stoica needs coordinates"))?;
            let eps = eps.unwrap_or_else(|| default_stoica_eps(cloud, *kappa, 1.0));
            stoica_dimension(cloud, &inst.cs, *p, eps, *r, *max_size)?
        }
        OperationSpec::Triang { p, delta, budget } => {
            let metric = inst
                .metric
                .as_ref()
                .ok_or_else(|| invalid("operation.kind", "triang needs a metric sample"))?;
            check_p(*p, metric.len())?;
            let delta = delta.unwrap_or_else(|| default_triangulation_delta(metric, *p));
            triangulation_dimension(metric, *p, delta, *budget)?
        }
        OperationSpec::Ml { p, l, max_k, budget } => {
            check_p(*p, n)?;
            ml_dimension_proxy(&inst.cs, *p, *l, *max_k, *budget, None)?
        }
    })
}

fn row_for(manifest: &ExperimentSpec, hash: &str, seed: u64) -> anyhow::Result<SweepRow> {
    let start = Instant::now();
    let inst = generate(&manifest.generator, seed)?;
    let res = run_operation(&manifest.operation, &inst)?;
    let wall_ms = manifest.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(SweepRow {
        seed,
        n: inst.metric.as_ref().map_or(inst.cs.len(), MetricSample::len),
        operation: manifest.operation.name().to_string(),
        status: res.status.as_str().to_string(),
        value: res.value,
        lower: res.lower,
        upper: res.upper,
        witness_size: res.witness.size(),
        nodes: res.nodes_explored,
        params_hash: hash.to_string(),
        params: serde_json::to_string(&res.params)?,
        wall_ms,
    })
}

/// One row per seed, in seed-list order, computed in parallel.
pub fn run_experiment(manifest: &ExperimentSpec) -> anyhow::Result<Vec<SweepRow>> {
    manifest.validate()?;
    let hash = manifest.params_hash();
    manifest.seeds.par_iter().map(|&seed| row_for(manifest, &hash, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest(generator: GeneratorSpec, operation: OperationSpec, seeds: Vec<u64>) -> ExperimentSpec {
        ExperimentSpec {
            generator,
            operation,
            seeds,
            output: None,
            timing: false,
        }
    }

    #[test]
    fn powerset_sweep_gives_dimension_three() {
        let s = manifest(
            GeneratorSpec::Powerset { s: 3 },
            OperationSpec::Dm {
                max_k: 8,
                budget: 1_000_000,
            },
            vec![0],
        );
        let rows = run_experiment(&s).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].value, Some(3));
        assert_eq!(rows[0].status, "exact");
    }

    #[test]
    fn empty_seed_list_gives_no_rows() {
        let s = manifest(GeneratorSpec::Grid { l: 2, k: 2 }, OperationSpec::Dm { max_k: 4, budget: 10 }, vec![]);
        assert!(run_experiment(&s).unwrap().is_empty());
    }

    #[test]
    fn spec_round_trips_through_json() {
        let s = ExperimentSpec {
            generator: GeneratorSpec::Minkowski {
                n_spatial: 1,
                n: 300,
                region: Region::Diamond,
                inject: vec![vec![-0.9, 0.0]],
            },
            operation: OperationSpec::Catcher {
                p: 0,
                margin: Some(0.1),
                budget: 1000,
            },
            seeds: (0..20).collect(),
            output: Some(OutputSpec {
                path: "rows.csv".into(),
                format: Format::Csv,
            }),
            timing: false,
        };
        let json = serde_json::to_string_pretty(&s).unwrap();
        let back: ExperimentSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }

    #[test]
    fn catcher_sweep_has_one_row_per_seed_in_order() {
        let s = manifest(
            GeneratorSpec::Minkowski {
                n_spatial: 1,
                n: 300,
                region: Region::Diamond,
                inject: vec![vec![-0.9, 0.0]],
            },
            OperationSpec::Catcher {
                p: 0,
                margin: Some(0.1),
                budget: 5_000_000,
            },
            (0..20).collect(),
        );
        let rows = run_experiment(&s).unwrap();
        assert_eq!(rows.iter().map(|r| r.seed).collect::<Vec<_>>(), (0..20).collect::<Vec<_>>());
        assert!(rows.iter().all(|r| r.status == "exact"));
        assert_eq!(run_experiment(&s).unwrap(), rows);
    }

    #[test]
    fn mismatched_operation_names_the_field() {
        let s = manifest(
            GeneratorSpec::Grid { l: 2, k: 2 },
            OperationSpec::Stoica {
                p: 0,
                eps: None,
                kappa: 2.0,
                r: 0.5,
                max_size: 3,
            },
            vec![0],
        );
        let err = run_experiment(&s).unwrap_err().to_string();
        assert!(err.contains("operation.kind"), "{err}");
    }

    #[test]
    fn out_of_range_p_names_the_field() {
        let s = manifest(
            GeneratorSpec::Grid { l: 2, k: 2 },
            OperationSpec::Catcher {
                p: 9,
                margin: None,
                budget: 10,
            },
            vec![0],
        );
        assert!(run_experiment(&s).unwrap_err().to_string().contains("operation.p"));
    }
}
