//! The single JSON document describing one experiment run.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sumprod::arith::FactorBudget;
use sumprod::finsets::box_set;
use sumprod::patterns::{gap_enumerate, GapSpec};
use sumprod::{FiniteSet, GroupDescriptor, GroupElement, MultiPoly, Rational, SubgroupBasis};

use crate::error::{LabError, LabResult};
use crate::json::{CorrespondenceSpec, CurveSpec, ElementSpec, GroupSpec, RationalSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Experiment {
    Bremner,
    Expansion,
    Eszabo,
    ElekesRonyai,
    Patterns,
    Degeneracy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    /// `start, start + step, …`, `n` terms.
    Ap,
    /// `start, start·ratio, …`, `n` terms.
    Gp,
    /// `{ratio^i : −n ≤ i ≤ n}`.
    GeometricWindow,
    /// Box of side `n` on `generators`, translated by `base`.
    Box,
    /// GAP on `base`, `steps` with side `lengths`, or `n` on every side.
    Gap,
    /// `elements`; the sweep value is ignored.
    Explicit,
}

/// A set builder parametrized by one sweep value `n`. Elements listed in
/// `extra` are added to every built set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSpec {
    pub kind: SetKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<RationalSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<RationalSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<RationalSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<ElementSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<ElementSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<ElementSpec>,
}

fn required<'a, T>(field: &'a Option<T>, name: &str, kind: SetKind) -> LabResult<&'a T> {
    field
        .as_ref()
        .ok_or_else(|| LabError::Config(format!("set kind {kind:?} needs `{name}`")))
}

impl SetSpec {
    /// Whether the builder ignores the sweep value.
    pub fn is_fixed(&self) -> bool {
        match self.kind {
            SetKind::Explicit => true,
            SetKind::Gap => self.lengths.is_some(),
            _ => false,
        }
    }

    pub fn build(&self, group: &GroupDescriptor, n: i64) -> LabResult<FiniteSet> {
        let cfg = LabError::config;
        let count = || {
            u32::try_from(n).map_err(|_| LabError::Config(format!("sweep value {n} must be a nonnegative size")))
        };
        let elements = |specs: &[ElementSpec]| specs.iter().map(|e| e.to_element(group)).collect::<LabResult<Vec<_>>>();
        let value = |r: &Rational| group.element(r.clone()).map_err(cfg);
        let built: Vec<GroupElement> = match self.kind {
            SetKind::Ap | SetKind::Gp => {
                let start = required(&self.start, "start", self.kind)?.to_rational()?;
                let mut x = start;
                let mut out = Vec::new();
                let (step, ratio) = if self.kind == SetKind::Ap {
                    (Some(required(&self.step, "step", self.kind)?.to_rational()?), None)
                } else {
                    (None, Some(required(&self.ratio, "ratio", self.kind)?.to_rational()?))
                };
                for _ in 0..count()? {
                    out.push(value(&x)?);
                    x = match (&step, &ratio) {
                        (Some(d), _) => &x + d,
                        (_, Some(q)) => &x * q,
                        _ => unreachable!("one of step and ratio is set"),
                    };
                }
                out
            }
            SetKind::GeometricWindow => {
                let ratio = required(&self.ratio, "ratio", self.kind)?.to_rational()?;
                let n = i64::from(count()?);
                (-n..=n)
                    .map(|i| value(&ratio.pow(i).map_err(cfg)?))
                    .collect::<LabResult<_>>()?
            }
            SetKind::Box => {
                let basis = SubgroupBasis::new(group.clone(), elements(&self.generators)?).map_err(cfg)?;
                let base = self.base.as_ref().map(|b| b.to_element(group)).transpose()?;
                box_set(&basis, count()?, base.as_ref()).map_err(cfg)?.elements().to_vec()
            }
            SetKind::Gap => {
                let base = required(&self.base, "base", self.kind)?.to_element(group)?;
                let steps = elements(&self.steps)?;
                let lengths = match &self.lengths {
                    Some(l) => l.clone(),
                    None => vec![count()?; steps.len()],
                };
                let spec = GapSpec::new(group.clone(), base, steps, lengths).map_err(cfg)?;
                gap_enumerate(&spec).map_err(cfg)?.0.elements().to_vec()
            }
            SetKind::Explicit => elements(&self.elements)?,
        };
        let extra = elements(&self.extra)?;
        FiniteSet::new(group.clone(), built.into_iter().chain(extra)).map_err(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyConfig {
    pub equations: Vec<String>,
    pub num_vars: usize,
    pub dim: usize,
}

impl VarietyConfig {
    pub fn equations(&self) -> LabResult<Vec<MultiPoly>> {
        self.equations
            .iter()
            .map(|e| MultiPoly::parse(e, Some(self.num_vars)).map_err(LabError::config))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Budgets {
    /// Largest `|A|^g` enumerated by point counts and image computations.
    pub tuples: u64,
    pub trial_limit: u32,
    pub rho_steps: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        let f = FactorBudget::default();
        Budgets {
            tuples: 100_000_000,
            trial_limit: f.trial_limit,
            rho_steps: f.rho_steps,
        }
    }
}

impl Budgets {
    pub fn factor_budget(&self) -> FactorBudget {
        FactorBudget {
            trial_limit: self.trial_limit,
            rho_steps: self.rho_steps,
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<SetSpec>,
    /// Explicit list of sweep values: `n` for set builders, `L` for boxes.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub correspondences: Vec<CorrespondenceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variety: Option<VarietyConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polynomials: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<ElementSpec>,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_cache: Option<PathBuf>,
    /// When false every `runtime_ms` is 0, making output byte-identical
    /// across runs.
    #[serde(default = "yes")]
    pub timing: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> LabResult<Self> {
        serde_json::from_str(text).map_err(LabError::config)
    }

    pub fn load(path: &Path) -> LabResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| LabError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn group(&self) -> LabResult<GroupDescriptor> {
        match (&self.group, &self.curve) {
            (Some(g), _) => g.to_group(),
            (None, Some(c)) => Ok(GroupDescriptor::Elliptic(c.to_curve()?)),
            (None, None) => Err(LabError::Config("`group` is required".into())),
        }
    }

    pub fn set_spec(&self) -> LabResult<&SetSpec> {
        self.set.as_ref().ok_or_else(|| LabError::Config("`set` is required".into()))
    }

    /// The sweep values, or the single value 0 for a fixed set without a sweep.
    pub fn sweep_values(&self) -> LabResult<Vec<i64>> {
        if !self.sweep.is_empty() {
            return Ok(self.sweep.clone());
        }
        match &self.set {
            Some(s) if s.is_fixed() => Ok(vec![0]),
            _ => Err(LabError::Config("`sweep` must list at least one value".into())),
        }
    }
}
