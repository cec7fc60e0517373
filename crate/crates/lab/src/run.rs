//! Mode pipelines and artifact writing.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use log::{info, warn};
use rayon::prelude::*;
use serde_json::{json, Value};
use stark_ep_core::analytic::{find_scale_free_ep, reduced_scale_free_ep, scale_free_scan};
use stark_ep_core::dynamics::{
    evolve_jordan_series, evolve_ode, jordan_decompose, propagator_element, revival_time, spacing_analysis, Axis, EvolutionResult,
};
use stark_ep_core::effective::{build_stark_ladder, effective_model, wannier_basis};
use stark_ep_core::fgh::{build_hamiltonian, ContinuousModel, GridSpec};
use stark_ep_core::matrix::{ComplexMatrix, C64};
use stark_ep_core::spectral::{biorthonormalize, cmp_im_then_re, detect_coalescence, eig_general, fidelity_matrix, low_lying};

use crate::config::{ConfigError, ConfigFile, Generator, Initial, LadderConfig, Method, Mode, RunConfig};
use crate::format::{matrix_dump, num, Table};

/// Relative gap deviation below which a spectrum counts as equidistant.
pub const EQUIDISTANT_TOL: f64 = 0.05;

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Numerical(stark_ep_core::Error),
    Io(anyhow::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerical(_) => 3,
            RunError::Io(_) => 1,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "{e}"),
            RunError::Numerical(e) => write!(f, "numerical failure: {e}"),
            RunError::Io(e) => write!(f, "{e:#}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<stark_ep_core::Error> for RunError {
    fn from(e: stark_ep_core::Error) -> Self {
        RunError::Numerical(e)
    }
}

impl From<anyhow::Error> for RunError {
    fn from(e: anyhow::Error) -> Self {
        RunError::Io(e)
    }
}

type CoreResult<T> = stark_ep_core::Result<T>;

/// Everything a run produces before anything touches the disk.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub tables: Vec<Table>,
    /// Extra text artifacts `(file name, contents)`.
    pub texts: Vec<(String, String)>,
    pub summary: Value,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub summary: Value,
    pub wall_time: f64,
}

/// Runs the configured pipeline, using `jobs` worker threads when given, and
/// writes its artifacts into `config.output_path`.
pub fn run(config: &RunConfig, jobs: Option<usize>) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let outcome = match jobs {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build().context("building worker pool")?;
            pool.install(|| compute(config))?
        }
        None => compute(config)?,
    };
    let wall_time = start.elapsed().as_secs_f64();
    let files = write_outcome(config, &outcome, wall_time, jobs)?;
    Ok(RunReport { files, summary: outcome.summary, wall_time })
}

pub fn compute(config: &RunConfig) -> CoreResult<Outcome> {
    info!("running mode {}", config.mode.name());
    let mut outcome = match config.mode {
        Mode::SpectrumSweep => spectrum_sweep(config),
        Mode::Fidelity => fidelity(config),
        Mode::EffectiveCouplings => couplings(config),
        Mode::ScaleFree => scale_free(config),
        Mode::Evolve => evolve(config),
        Mode::Propagator => propagator(config),
        Mode::Spacing => spacing(config),
    }?;
    if config.dump_hamiltonian {
        let model = config.continuum().expect("validated");
        let h = build_hamiltonian(model)?;
        outcome.texts.push(("hamiltonian.txt".to_string(), matrix_dump(&h, GridSpec::new(model).dx)));
    }
    Ok(outcome)
}

fn kappa_points(config: &RunConfig) -> Vec<f64> {
    match &config.sweep {
        Some(s) => s.points(),
        None => vec![config.continuum().expect("validated").kappa],
    }
}

fn tilt_points(config: &RunConfig) -> Vec<f64> {
    match &config.sweep {
        Some(s) => s.points(),
        None => vec![config.ladder().expect("validated").tilt],
    }
}

fn ladder_at(c: &LadderConfig, tilt: f64) -> ComplexMatrix {
    build_stark_ladder(&LadderConfig { tilt, ..*c }.ladder())
}

/// Eigenvalues ordered by imaginary part, then real part.
fn sorted_values(h: &ComplexMatrix) -> CoreResult<Vec<C64>> {
    let mut v = eig_general(h)?.values;
    let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
    v.sort_by(|a, b| cmp_im_then_re(*a, *b, 1e-10 * scale));
    Ok(v)
}

fn spectrum_sweep(config: &RunConfig) -> CoreResult<Outcome> {
    let table = if let Some(model) = config.continuum() {
        let points = kappa_points(config);
        let bands: Vec<Vec<C64>> = points
            .par_iter()
            .map(|&k| {
                let m = model.with_kappa(k);
                let sys = eig_general(&build_hamiltonian(&m)?)?;
                Ok(low_lying(&sys, m.n_wells())?.values)
            })
            .collect::<CoreResult<_>>()?;
        spectrum_table("kappa", &points, &bands)
    } else {
        let l = config.ladder().expect("validated");
        let points = tilt_points(config);
        let spectra: Vec<Vec<C64>> = points.par_iter().map(|&f| sorted_values(&ladder_at(l, f))).collect::<CoreResult<_>>()?;
        spectrum_table("tilt", &points, &spectra)
    };
    let summary = json!({ "points": table.rows.len() });
    Ok(Outcome { tables: vec![table], texts: Vec::new(), summary })
}

fn spectrum_table(parameter: &str, points: &[f64], spectra: &[Vec<C64>]) -> Table {
    let mut t = Table::new("spectrum.csv", &[parameter, "level", "re", "im"]);
    for (p, values) in points.iter().zip(spectra) {
        for (k, z) in values.iter().enumerate() {
            t.push(vec![num(*p), k.to_string(), num(z.re), num(z.im)]);
        }
    }
    t
}

fn clusters_text(clusters: &[Vec<usize>]) -> String {
    clusters.iter().map(|c| c.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("|")
}

fn fidelity(config: &RunConfig) -> CoreResult<Outcome> {
    let model = config.continuum().expect("validated");
    let tol = config.tolerances;
    let points = kappa_points(config);
    let results: Vec<_> = points
        .par_iter()
        .map(|&k| {
            let m = model.with_kappa(k);
            let sys = biorthonormalize(eig_general(&build_hamiltonian(&m)?)?, tol.ep_threshold);
            let band = low_lying(&sys, m.n_wells())?;
            if band.gap_warning {
                warn!("kappa = {k}: band gap {:.3e} is below ten times its spread", band.gap);
            }
            let f = fidelity_matrix(&band)?;
            let report = detect_coalescence(&f, tol.coalescence_threshold, k);
            Ok((f, report))
        })
        .collect::<CoreResult<_>>()?;

    let mut matrix = Table::new("fidelity.csv", &["kappa", "q", "q_prime", "value"]);
    let mut reports = Table::new("coalescence.csv", &["kappa", "order_estimate", "max_offdiag_fidelity", "clusters"]);
    let mut summary = Vec::new();
    for (k, (f, rep)) in points.iter().zip(&results) {
        for q in 0..f.rows() {
            for p in 0..f.cols() {
                matrix.push(vec![num(*k), q.to_string(), p.to_string(), num(f[(q, p)])]);
            }
        }
        let order = rep.order_estimate.unwrap_or(0);
        reports.push(vec![num(*k), order.to_string(), num(rep.max_offdiag_fidelity), clusters_text(&rep.clusters)]);
        summary.push(json!({ "kappa": k, "order_estimate": rep.order_estimate, "clusters": rep.clusters }));
    }
    Ok(Outcome { tables: vec![matrix, reports], texts: Vec::new(), summary: json!({ "coalescence": summary }) })
}

fn couplings(config: &RunConfig) -> CoreResult<Outcome> {
    let model = config.continuum().expect("validated");
    let points = kappa_points(config);
    let results: Vec<_> = points
        .par_iter()
        .map(|&k| {
            let m: ContinuousModel = model.with_kappa(k);
            let basis = wannier_basis(&m)?;
            if basis.interpolation_warning {
                warn!("kappa = {k}: grid is coarse for interpolating the Wannier states");
            }
            effective_model(&m, &basis)
        })
        .collect::<CoreResult<_>>()?;
    let mut t = Table::new(
        "couplings.csv",
        &["kappa", "re_j_eff", "im_j_eff", "re_f_eff", "im_f_eff", "ratio", "per_l_spread", "fit_hopping", "fit_tilt", "fit_ratio"],
    );
    for (k, e) in points.iter().zip(&results) {
        let c = &e.couplings;
        t.push(vec![
            num(*k),
            num(c.hopping.re),
            num(c.hopping.im),
            num(c.tilt.re),
            num(c.tilt.im),
            num(c.ratio()),
            num(c.per_l_spread),
            num(e.fit.hopping),
            num(e.fit.tilt),
            num(e.fit.ratio()),
        ]);
    }
    let summary = json!({ "points": points.len() });
    Ok(Outcome { tables: vec![t], texts: Vec::new(), summary })
}

fn scale_free(config: &RunConfig) -> CoreResult<Outcome> {
    let s = config.scale_free.as_ref().expect("validated");
    let grid: Vec<f64> = (0..s.scan_steps)
        .map(|k| if k + 1 == s.scan_steps { s.ratio_lo } else { s.ratio_hi - (s.ratio_hi - s.ratio_lo) * k as f64 / (s.scan_steps - 1) as f64 })
        .collect();
    let results: Vec<_> = s
        .sizes
        .par_iter()
        .map(|&n| Ok((find_scale_free_ep(n, s.ratio_lo, s.ratio_hi)?, scale_free_scan(n, &grid)?)))
        .collect::<CoreResult<_>>()?;

    let mut merges = Table::new("scale_free_ep.csv", &["N", "merge_ratio"]);
    let mut scan = Table::new("scale_free_scan.csv", &["N", "F_over_J", "n_roots", "xi_roots", "merged_flag"]);
    for (&n, (merge, sc)) in s.sizes.iter().zip(&results) {
        merges.push(vec![n.to_string(), num(*merge)]);
        for (k, (r, roots)) in sc.ratio_grid.iter().zip(&sc.roots).enumerate() {
            let xi = roots.iter().map(|x| num(*x)).collect::<Vec<_>>().join(" ");
            let flag = if sc.merged_between(k) { "1" } else { "0" };
            scan.push(vec![n.to_string(), num(*r), roots.len().to_string(), xi, flag.to_string()]);
        }
    }
    // The reduced conditions only hold for J/F well below one.
    let reduced = match reduced_scale_free_ep(s.ratio_lo.max(1.45), s.ratio_hi) {
        Ok((xi, ratio)) => json!({ "xi": xi, "ratio": ratio }),
        Err(e) => {
            warn!("reduced-condition search: {e}");
            Value::Null
        }
    };
    let summary = json!({
        "merge_ratio": s.sizes.iter().zip(&results).map(|(n, r)| json!({ "N": n, "ratio": r.0 })).collect::<Vec<_>>(),
        "reduced": reduced,
    });
    Ok(Outcome { tables: vec![merges, scan], texts: Vec::new(), summary })
}

fn time_grid(t_end: f64, samples: usize) -> Vec<f64> {
    (0..samples).map(|k| if k + 1 == samples { t_end } else { t_end * k as f64 / (samples - 1) as f64 }).collect()
}

fn evolve(config: &RunConfig) -> CoreResult<Outcome> {
    let l = config.ladder().expect("validated");
    let e = config.evolve.as_ref().expect("validated");
    let n = l.size;
    let h = build_stark_ladder(&l.ladder());
    let h = match e.generator {
        Generator::HEff => h,
        Generator::HXi => h.scale(C64::new(0.0, -1.0)),
    };
    let psi0: Vec<C64> = match &e.initial {
        Initial::Site(k) => (0..n).map(|i| if i + 1 == *k { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect(),
        Initial::State(v) => v.iter().map(|z| C64::new(z[0], z[1])).collect(),
    };
    let times = time_grid(e.t_end, e.samples);
    let result: EvolutionResult = match e.method {
        Method::Ode => evolve_ode(&h, &psi0, &times)?,
        Method::Jordan => {
            let dec = jordan_decompose(&h, config.tolerances.degeneracy)?;
            info!("Jordan blocks: {:?}", dec.blocks.iter().map(|b| b.1).collect::<Vec<_>>());
            evolve_jordan_series(&dec, &psi0, &times)?
        }
    };

    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|k| format!("re_psi_{k}")));
    header.extend((1..=n).map(|k| format!("im_psi_{k}")));
    header.push("P".to_string());
    let mut t = Table::with_header("trajectory.csv", header);
    for ((time, state), p) in result.times.iter().zip(&result.states).zip(&result.dirac_p) {
        let mut row = vec![num(*time)];
        row.extend(state.iter().map(|z| num(z.re)));
        row.extend(state.iter().map(|z| num(z.im)));
        row.push(num(*p));
        t.push(row);
    }
    let summary = json!({
        "p_start": result.dirac_p[0],
        "p_end": result.dirac_p[result.len() - 1],
        "revival_time": revival_time(&result, config.tolerances.revival),
    });
    Ok(Outcome { tables: vec![t], texts: Vec::new(), summary })
}

fn propagator(config: &RunConfig) -> CoreResult<Outcome> {
    let l = config.ladder().expect("validated");
    let p = config.propagator.expect("validated");
    let times = time_grid(p.t_end, p.samples);
    let r = p.radius as i64;
    let rows: Vec<Vec<(i64, C64)>> = times
        .par_iter()
        .map(|&t| (p.source - r..=p.source + r).map(|m| Ok((m, propagator_element(l.hopping, l.tilt, t, m, p.source)?))).collect())
        .collect::<CoreResult<_>>()?;
    let mut table = Table::new("propagator.csv", &["t", "n_to", "re", "im", "abs"]);
    for (t, row) in times.iter().zip(&rows) {
        for (m, u) in row {
            table.push(vec![num(*t), m.to_string(), num(u.re), num(u.im), num(u.norm())]);
        }
    }
    let summary = json!({ "period": 2.0 * std::f64::consts::PI / l.tilt.abs() });
    Ok(Outcome { tables: vec![table], texts: Vec::new(), summary })
}

fn spacing(config: &RunConfig) -> CoreResult<Outcome> {
    let l = config.ladder().expect("validated");
    let points = tilt_points(config);
    let results: Vec<_> = points.par_iter().map(|&f| spacing_analysis(&eig_general(&ladder_at(l, f))?.values)).collect::<CoreResult<_>>()?;
    let mut t = Table::new("spacing.csv", &["tilt", "F_over_J", "axis", "mean_gap", "max_gap_dev", "relative_deviation", "equidistant"]);
    for (f, s) in points.iter().zip(&results) {
        let axis = match s.axis {
            Axis::Real => "real",
            Axis::Imaginary => "imaginary",
        };
        let eq = if s.relative_deviation() < EQUIDISTANT_TOL { "1" } else { "0" };
        t.push(vec![num(*f), num(f / l.hopping), axis.to_string(), num(s.mean_gap), num(s.max_gap_dev), num(s.relative_deviation()), eq.to_string()]);
    }
    let summary = json!({ "points": points.len() });
    Ok(Outcome { tables: vec![t], texts: Vec::new(), summary })
}

/// Name of the JSON sidecar for a mode.
pub fn sidecar_name(mode: Mode) -> String {
    format!("{}.json", mode.name())
}

/// Writes every artifact; on any failure the files already written are removed.
pub fn write_outcome(config: &RunConfig, outcome: &Outcome, wall_time: f64, jobs: Option<usize>) -> anyhow::Result<Vec<PathBuf>> {
    let dir = Path::new(&config.output_path);
    let mut written: Vec<PathBuf> = Vec::new();
    let result = (|| -> anyhow::Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut put = |name: &str, bytes: &[u8]| -> anyhow::Result<()> {
            let path = dir.join(name);
            written.push(path.clone());
            fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))
        };
        for t in &outcome.tables {
            put(&t.name, &t.to_csv()?)?;
        }
        for (name, text) in &outcome.texts {
            put(name, text.as_bytes())?;
        }
        let mut files: Vec<&str> = outcome.tables.iter().map(|t| t.name.as_str()).collect();
        files.extend(outcome.texts.iter().map(|t| t.0.as_str()));
        let meta = json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "mode": config.mode.name(),
            "wall_time_s": wall_time,
            "jobs": jobs,
            "files": files,
            "config": serde_json::to_value(ConfigFile::from(config))?,
            "summary": outcome.summary,
        });
        let mut text = serde_json::to_string_pretty(&meta)?;
        text.push('\n');
        put(&sidecar_name(config.mode), text.as_bytes())
    })();
    match result {
        Ok(()) => Ok(written),
        Err(e) => {
            for p in &written {
                let _ = fs::remove_file(p);
            }
            Err(e)
        }
    }
}
