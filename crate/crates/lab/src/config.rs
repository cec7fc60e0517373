//! Run configuration: a JSON document with a fixed set of keys.
//!
//! Parsing is two-stage. The file is deserialized into [`ConfigFile`], where
//! every key is optional and unknown keys are rejected, and then resolved into
//! a [`RunConfig`] with all defaults filled in. [`emit`] writes the resolved
//! form back, so `parse_config(&emit(&c)) == Ok(c)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use stark_ep_core::effective::StarkLadder;
use stark_ep_core::fgh::ContinuousModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    SpectrumSweep,
    Fidelity,
    EffectiveCouplings,
    ScaleFree,
    Evolve,
    Propagator,
    Spacing,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::SpectrumSweep => "spectrum-sweep",
            Mode::Fidelity => "fidelity",
            Mode::EffectiveCouplings => "effective-couplings",
            Mode::ScaleFree => "scale-free",
            Mode::Evolve => "evolve",
            Mode::Propagator => "propagator",
            Mode::Spacing => "spacing",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepParameter {
    /// Loss gradient of a continuum model.
    Kappa,
    /// Tilt `F` of a ladder, hopping held fixed.
    Tilt,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Sweep {
    /// `steps` equally spaced values from `lo` to `hi` inclusive.
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps.max(2);
        (0..n).map(|k| if k + 1 == n { self.hi } else { self.lo + (self.hi - self.lo) * k as f64 / (n - 1) as f64 }).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// `i∂ψ = h_eff ψ`.
    HEff,
    /// `i∂ψ = −i h_eff ψ`.
    HXi,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Ode,
    Jordan,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Initial {
    /// 1-based site carrying unit amplitude.
    Site(usize),
    /// Explicit amplitudes as `[re, im]` pairs.
    State(Vec<[f64; 2]>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelConfig {
    Continuum { preset: Option<String>, model: ContinuousModel },
    Ladder(LadderConfig),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderConfig {
    pub size: usize,
    #[serde(default = "one")]
    pub hopping: f64,
    pub tilt: f64,
}

fn one() -> f64 {
    1.0
}

impl LadderConfig {
    pub fn ladder(&self) -> StarkLadder {
        StarkLadder::new(self.size, self.hopping, self.tilt)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Fidelity above which two band states count as coalesced.
    pub coalescence_threshold: f64,
    /// Self-pairing below which an eigenvector is flagged.
    pub ep_threshold: f64,
    /// Eigenvalue clustering tolerance of the Jordan decomposition, relative to `‖h‖_F`.
    pub degeneracy: f64,
    /// Relative distance to the initial state accepted as a revival.
    pub revival: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            coalescence_threshold: stark_ep_core::spectral::COALESCENCE_THRESHOLD,
            ep_threshold: stark_ep_core::spectral::EP_THRESHOLD,
            degeneracy: stark_ep_core::dynamics::DEFAULT_DEGENERACY,
            revival: 0.2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScaleFreeConfig {
    pub sizes: Vec<usize>,
    pub ratio_lo: f64,
    pub ratio_hi: f64,
    /// Points of the descending `F/J` grid written to the scan table.
    pub scan_steps: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolveConfig {
    pub t_end: f64,
    pub samples: usize,
    pub initial: Initial,
    pub generator: Generator,
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropagatorConfig {
    pub t_end: f64,
    pub samples: usize,
    /// Tilt coordinate of the source site.
    pub source: i64,
    /// Target sites `source − radius ..= source + radius`.
    pub radius: usize,
}

/// A validated run with every default filled in.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub model: Option<ModelConfig>,
    pub sweep: Option<Sweep>,
    /// Output directory.
    pub output_path: String,
    pub tolerances: Tolerances,
    pub scale_free: Option<ScaleFreeConfig>,
    pub evolve: Option<EvolveConfig>,
    pub propagator: Option<PropagatorConfig>,
    /// Also write the continuum Hamiltonian as a text dump.
    pub dump_hamiltonian: bool,
}

pub const DEFAULT_OUTPUT: &str = "out";

// On-disk schema. Every key is optional here so that resolution can report
// all missing and invalid entries at once.

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<TolerancesFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale_free: Option<ScaleFreeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evolve: Option<EvolveFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub propagator: Option<PropagatorFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dump_hamiltonian: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelFile {
    Continuum(ContinuumFile),
    Ladder(LadderConfig),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuumFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancesFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalescence_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ep_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub revival: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleFreeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio_lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio_hi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan_steps: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Initial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropagatorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConfigError {
    /// Malformed JSON, a wrongly typed value or an unknown key.
    Parse { line: usize, column: usize, message: String },
    /// Every violated constraint of an otherwise well-formed file.
    Invalid(Vec<String>),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse { line, column, message } => {
                write!(f, "config parse error at line {line}, column {column}: {message}")
            }
            ConfigError::Invalid(v) => {
                write!(f, "invalid config ({} problem{}):", v.len(), if v.len() == 1 { "" } else { "s" })?;
                for item in v {
                    write!(f, "\n  - {item}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ConfigError {}

pub fn parse_file(text: &str) -> Result<ConfigFile, ConfigError> {
    serde_json::from_str(text).map_err(|e| {
        // serde_json appends its own " at line L column C".
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(k) => full[..k].to_string(),
            None => full,
        };
        ConfigError::Parse { line: e.line(), column: e.column(), message }
    })
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_file(text)?.resolve()
}

/// Serializes the resolved configuration with every default written out.
pub fn emit(config: &RunConfig) -> String {
    let mut s = serde_json::to_string_pretty(&ConfigFile::from(config)).expect("config serializes");
    s.push('\n');
    s
}

/// Grid size used when a continuum model omits `n_grid`.
pub fn default_n_grid(omega: u32) -> Option<usize> {
    match omega {
        2 | 3 => Some(201),
        7 => Some(401),
        _ => None,
    }
}

fn finite_positive(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

impl ContinuumFile {
    fn resolve(&self, errors: &mut Vec<String>) -> Option<(Option<String>, ContinuousModel)> {
        let base = match &self.preset {
            Some(name) => match ContinuousModel::preset(name) {
                Some(m) => Some(m),
                None => {
                    errors.push(format!("model.continuum.preset: unknown preset `{name}` (known: fig1a, fig1b, fig1c)"));
                    return None;
                }
            },
            None => None,
        };
        let mut missing = |key: &str| errors.push(format!("model.continuum.{key} is required without a preset"));
        let length = self.length.or(base.map(|m| m.length));
        let gamma = self.gamma.or(base.map(|m| m.gamma));
        let omega = self.omega.or(base.map(|m| m.omega));
        let b = self.b.or(base.map(|m| m.b));
        let a = self.a.or(base.map(|m| m.a));
        for (key, present) in [("length", length.is_some()), ("gamma", gamma.is_some()), ("omega", omega.is_some()), ("b", b.is_some()), ("a", a.is_some())] {
            if !present {
                missing(key);
            }
        }
        let n_grid = self.n_grid.or(base.map(|m| m.n_grid)).or_else(|| omega.and_then(default_n_grid));
        if n_grid.is_none() && omega.is_some() {
            errors.push(String::from("model.continuum.n_grid has no default for this omega and must be given"));
        }
        let kappa = self.kappa.or(base.map(|m| m.kappa)).unwrap_or(0.0);
        let model = ContinuousModel::new(length?, n_grid?, gamma?, omega?, b?, a?, kappa);
        let v = model.violations();
        if !v.is_empty() {
            errors.extend(v.into_iter().map(|s| format!("model.continuum: {s}")));
            return None;
        }
        Some((self.preset.clone(), model))
    }
}

fn check_ladder(l: &LadderConfig, errors: &mut Vec<String>) {
    if l.size < 2 {
        errors.push(format!("model.ladder.size must be at least 2, got {}", l.size));
    }
    if !(l.hopping.is_finite() && l.hopping != 0.0) {
        errors.push(format!("model.ladder.hopping must be finite and non-zero, got {}", l.hopping));
    }
    if !l.tilt.is_finite() {
        errors.push(format!("model.ladder.tilt must be finite, got {}", l.tilt));
    }
}

fn check_times(section: &str, t_end: Option<f64>, samples: Option<usize>, errors: &mut Vec<String>) -> Option<(f64, usize)> {
    match t_end {
        None => errors.push(format!("{section}.t_end is required")),
        Some(t) if !finite_positive(t) => errors.push(format!("{section}.t_end must be positive, got {t}")),
        _ => {}
    }
    match samples {
        None => errors.push(format!("{section}.samples is required")),
        Some(s) if s < 2 => errors.push(format!("{section}.samples must be at least 2, got {s}")),
        _ => {}
    }
    Some((t_end.filter(|&t| finite_positive(t))?, samples.filter(|&s| s >= 2)?))
}

impl ConfigFile {
    /// Fills defaults and checks every constraint, collecting all violations.
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let mut errors = Vec::new();
        let mode = self.mode;
        if mode.is_none() {
            errors.push(String::from("mode is required"));
        }

        let model = match &self.model {
            None => None,
            Some(ModelFile::Continuum(c)) => c.resolve(&mut errors).map(|(preset, model)| ModelConfig::Continuum { preset, model }),
            Some(ModelFile::Ladder(l)) => {
                check_ladder(l, &mut errors);
                Some(ModelConfig::Ladder(*l))
            }
        };
        let is_continuum = matches!(self.model, Some(ModelFile::Continuum(_)));
        let is_ladder = matches!(self.model, Some(ModelFile::Ladder(_)));
        let ladder = match &self.model {
            Some(ModelFile::Ladder(l)) => Some(*l),
            _ => None,
        };

        if let Some(m) = mode {
            let name = m.name();
            match m {
                Mode::SpectrumSweep => {
                    if self.model.is_none() {
                        errors.push(format!("mode {name} needs a model"));
                    }
                }
                Mode::Fidelity | Mode::EffectiveCouplings => {
                    if !is_continuum {
                        errors.push(format!("mode {name} needs a continuum model"));
                    }
                }
                Mode::ScaleFree => {
                    if self.scale_free.is_none() {
                        errors.push(format!("mode {name} needs a scale_free section"));
                    }
                    if self.model.is_some() {
                        errors.push(format!("mode {name} takes no model"));
                    }
                }
                Mode::Evolve | Mode::Propagator | Mode::Spacing => {
                    if !is_ladder {
                        errors.push(format!("mode {name} needs a ladder model"));
                    }
                }
            }
            if m == Mode::Evolve && self.evolve.is_none() {
                errors.push(format!("mode {name} needs an evolve section"));
            }
            if m == Mode::Propagator && self.propagator.is_none() {
                errors.push(format!("mode {name} needs a propagator section"));
            }
            if m == Mode::Spacing && ladder.is_some_and(|l| l.size < 3) {
                errors.push(String::from("mode spacing needs at least three sites"));
            }
            if m == Mode::Propagator && ladder.is_some_and(|l| l.tilt == 0.0) {
                errors.push(String::from("mode propagator needs a non-zero tilt"));
            }
            for (section, present, owner) in [
                ("scale_free", self.scale_free.is_some(), Mode::ScaleFree),
                ("evolve", self.evolve.is_some(), Mode::Evolve),
                ("propagator", self.propagator.is_some(), Mode::Propagator),
            ] {
                if present && m != owner {
                    errors.push(format!("section {section} is only used by mode {}", owner.name()));
                }
            }
            if self.sweep.is_some() && matches!(m, Mode::ScaleFree | Mode::Evolve | Mode::Propagator) {
                errors.push(format!("mode {name} does not take a sweep"));
            }
        }

        if let Some(s) = &self.sweep {
            if s.steps < 2 {
                errors.push(format!("sweep.steps must be at least 2, got {}", s.steps));
            }
            if !(s.lo.is_finite() && s.hi.is_finite()) {
                errors.push(String::from("sweep.lo and sweep.hi must be finite"));
            }
            match s.parameter {
                SweepParameter::Kappa => {
                    if !is_continuum {
                        errors.push(String::from("sweep.parameter kappa needs a continuum model"));
                    }
                    if s.lo < 0.0 || s.hi < 0.0 {
                        errors.push(String::from("sweep over kappa must stay non-negative"));
                    }
                }
                SweepParameter::Tilt => {
                    if !is_ladder {
                        errors.push(String::from("sweep.parameter tilt needs a ladder model"));
                    }
                }
            }
        }

        let t = self.tolerances.clone().unwrap_or_default();
        let d = Tolerances::default();
        let tolerances = Tolerances {
            coalescence_threshold: t.coalescence_threshold.unwrap_or(d.coalescence_threshold),
            ep_threshold: t.ep_threshold.unwrap_or(d.ep_threshold),
            degeneracy: t.degeneracy.unwrap_or(d.degeneracy),
            revival: t.revival.unwrap_or(d.revival),
        };
        if !(tolerances.coalescence_threshold > 0.0 && tolerances.coalescence_threshold <= 1.0) {
            errors.push(format!("tolerances.coalescence_threshold must lie in (0, 1], got {}", tolerances.coalescence_threshold));
        }
        for (key, v) in [("ep_threshold", tolerances.ep_threshold), ("degeneracy", tolerances.degeneracy), ("revival", tolerances.revival)] {
            if !finite_positive(v) {
                errors.push(format!("tolerances.{key} must be positive, got {v}"));
            }
        }

        let scale_free = self.scale_free.as_ref().and_then(|s| {
            let sizes = s.sizes.clone().unwrap_or_default();
            if sizes.is_empty() {
                errors.push(String::from("scale_free.sizes must list at least one chain length"));
            }
            if let Some(&n) = sizes.iter().find(|&&n| n < 2) {
                errors.push(format!("scale_free.sizes entries must be at least 2, got {n}"));
            }
            let ratio_lo = s.ratio_lo.unwrap_or(1.0);
            let ratio_hi = s.ratio_hi.unwrap_or(3.0);
            if !(ratio_lo > 0.0 && ratio_hi > ratio_lo && ratio_hi.is_finite()) {
                errors.push(format!("scale_free ratio window must satisfy 0 < ratio_lo < ratio_hi, got [{ratio_lo}, {ratio_hi}]"));
            }
            let scan_steps = s.scan_steps.unwrap_or(101);
            if scan_steps < 2 {
                errors.push(format!("scale_free.scan_steps must be at least 2, got {scan_steps}"));
            }
            Some(ScaleFreeConfig { sizes, ratio_lo, ratio_hi, scan_steps })
        });

        let evolve = self.evolve.as_ref().and_then(|e| {
            let times = check_times("evolve", e.t_end, e.samples, &mut errors);
            let initial = match &e.initial {
                None => {
                    errors.push(String::from("evolve.initial is required"));
                    None
                }
                Some(init) => {
                    if let Some(l) = ladder {
                        match init {
                            Initial::Site(k) if *k == 0 || *k > l.size => {
                                errors.push(format!("evolve.initial.site must lie in 1..={}, got {k}", l.size))
                            }
                            Initial::State(v) if v.len() != l.size => {
                                errors.push(format!("evolve.initial.state has {} entries for {} sites", v.len(), l.size))
                            }
                            Initial::State(v) if v.iter().all(|z| z[0] == 0.0 && z[1] == 0.0) => {
                                errors.push(String::from("evolve.initial.state must be non-zero"))
                            }
                            Initial::State(v) if !v.iter().all(|z| z[0].is_finite() && z[1].is_finite()) => {
                                errors.push(String::from("evolve.initial.state must be finite"))
                            }
                            _ => {}
                        }
                    }
                    Some(init.clone())
                }
            };
            let (t_end, samples) = times?;
            Some(EvolveConfig {
                t_end,
                samples,
                initial: initial?,
                generator: e.generator.unwrap_or(Generator::HXi),
                method: e.method.unwrap_or(Method::Ode),
            })
        });

        let propagator = self.propagator.as_ref().and_then(|p| {
            let (t_end, samples) = check_times("propagator", p.t_end, p.samples, &mut errors)?;
            Some(PropagatorConfig { t_end, samples, source: p.source.unwrap_or(0), radius: p.radius.unwrap_or(10) })
        });

        let dump_hamiltonian = self.dump_hamiltonian.unwrap_or(false);
        if dump_hamiltonian && !is_continuum {
            errors.push(String::from("dump_hamiltonian needs a continuum model"));
        }
        let output_path = self.output_path.clone().unwrap_or_else(|| DEFAULT_OUTPUT.to_string());
        if output_path.is_empty() {
            errors.push(String::from("output_path must not be empty"));
        }

        if !errors.is_empty() {
            return Err(ConfigError::Invalid(errors));
        }
        Ok(RunConfig {
            mode: mode.expect("checked above"),
            model,
            sweep: self.sweep,
            output_path,
            tolerances,
            scale_free,
            evolve,
            propagator,
            dump_hamiltonian,
        })
    }
}

impl From<&RunConfig> for ConfigFile {
    fn from(c: &RunConfig) -> Self {
        let model = c.model.as_ref().map(|m| match m {
            ModelConfig::Continuum { preset, model } => ModelFile::Continuum(ContinuumFile {
                preset: preset.clone(),
                length: Some(model.length),
                n_grid: Some(model.n_grid),
                gamma: Some(model.gamma),
                omega: Some(model.omega),
                b: Some(model.b),
                a: Some(model.a),
                kappa: Some(model.kappa),
            }),
            ModelConfig::Ladder(l) => ModelFile::Ladder(*l),
        });
        let t = c.tolerances;
        ConfigFile {
            mode: Some(c.mode),
            model,
            sweep: c.sweep,
            output_path: Some(c.output_path.clone()),
            tolerances: Some(TolerancesFile {
                coalescence_threshold: Some(t.coalescence_threshold),
                ep_threshold: Some(t.ep_threshold),
                degeneracy: Some(t.degeneracy),
                revival: Some(t.revival),
            }),
            scale_free: c.scale_free.as_ref().map(|s| ScaleFreeFile {
                sizes: Some(s.sizes.clone()),
                ratio_lo: Some(s.ratio_lo),
                ratio_hi: Some(s.ratio_hi),
                scan_steps: Some(s.scan_steps),
            }),
            evolve: c.evolve.as_ref().map(|e| EvolveFile {
                t_end: Some(e.t_end),
                samples: Some(e.samples),
                initial: Some(e.initial.clone()),
                generator: Some(e.generator),
                method: Some(e.method),
            }),
            propagator: c.propagator.map(|p| PropagatorFile {
                t_end: Some(p.t_end),
                samples: Some(p.samples),
                source: Some(p.source),
                radius: Some(p.radius),
            }),
            dump_hamiltonian: Some(c.dump_hamiltonian),
        }
    }
}

impl RunConfig {
    pub fn continuum(&self) -> Option<&ContinuousModel> {
        match &self.model {
            Some(ModelConfig::Continuum { model, .. }) => Some(model),
            _ => None,
        }
    }

    pub fn ladder(&self) -> Option<&LadderConfig> {
        match &self.model {
            Some(ModelConfig::Ladder(l)) => Some(l),
            _ => None,
        }
    }
}
