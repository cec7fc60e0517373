//! Ready-made runs for each figure of the study.

use stark_ep_core::analytic::{critical_ratios, ep3_ratio};
use stark_ep_core::fgh::ContinuousModel;

use crate::config::{
    EvolveConfig, Generator, Initial, LadderConfig, Method, Mode, ModelConfig, RunConfig, ScaleFreeConfig, Sweep, SweepParameter,
    Tolerances, DEFAULT_OUTPUT,
};

/// `(name, description)` of every figure preset.
pub const FIGURE_PRESETS: &[(&str, &str)] = &[
    ("fig1a", "lossless five-well band"),
    ("fig1b", "lossless seven-well band"),
    ("fig1c", "lossless fifteen-well band"),
    ("fig2a1", "five-well band against kappa"),
    ("fig2b1", "seven-well band against kappa"),
    ("fig2c1", "fifteen-well band against kappa"),
    ("fig2a2", "5-site ladder spectrum against F/J"),
    ("fig2b2", "7-site ladder spectrum against F/J"),
    ("fig2c2", "15-site ladder spectrum against F/J"),
    ("fig3a", "five-well fidelity at kappa = 0.0062"),
    ("fig3b", "seven-well fidelity at kappa = 0.0252"),
    ("fig3c", "fifteen-well fidelity at kappa = 0.344"),
    ("fig4", "secular roots and the merge ratio for N = 5, 7, 15"),
    ("fig5", "level spacing of the 5-site ladder against F/J"),
    ("fig5c", "Dirac probability at F/J = 0.2"),
    ("fig5d", "Dirac probability at F/J = 0.05"),
    ("fig6a", "Bloch-type oscillation at F/J = 4.3"),
    ("fig6b", "growth at the first critical ratio"),
    ("fig6c", "growth at the second critical ratio"),
    ("fig6d", "growth at the 7-site triple point"),
];

fn base(mode: Mode, model: Option<ModelConfig>) -> RunConfig {
    RunConfig {
        mode,
        model,
        sweep: None,
        output_path: DEFAULT_OUTPUT.to_string(),
        tolerances: Tolerances::default(),
        scale_free: None,
        evolve: None,
        propagator: None,
        dump_hamiltonian: false,
    }
}

fn continuum(name: &str, kappa: f64) -> Option<ModelConfig> {
    Some(ModelConfig::Continuum { preset: Some(name.to_string()), model: ContinuousModel::preset(name)?.with_kappa(kappa) })
}

fn ladder(size: usize, tilt: f64) -> Option<ModelConfig> {
    Some(ModelConfig::Ladder(LadderConfig { size, hopping: 1.0, tilt }))
}

fn sweep(parameter: SweepParameter, lo: f64, hi: f64, steps: usize) -> Option<Sweep> {
    Some(Sweep { parameter, lo, hi, steps })
}

fn evolution(size: usize, tilt: f64, t_end: f64, initial: Initial, generator: Generator) -> RunConfig {
    let mut c = base(Mode::Evolve, ladder(size, tilt));
    c.evolve = Some(EvolveConfig { t_end, samples: (t_end * 100.0) as usize + 1, initial, generator, method: Method::Ode });
    c
}

fn state(v: &[f64]) -> Initial {
    Initial::State(v.iter().map(|&x| [x, 0.0]).collect())
}

pub fn figure_preset(name: &str) -> Option<RunConfig> {
    let (c1, c2) = critical_ratios();
    let c = match name {
        "fig1a" | "fig1b" | "fig1c" => base(Mode::SpectrumSweep, continuum(name, 0.0)),
        "fig2a1" | "fig2b1" | "fig2c1" => {
            let (model, hi) = match name {
                "fig2a1" => ("fig1a", 0.012),
                "fig2b1" => ("fig1b", 0.05),
                _ => ("fig1c", 0.6),
            };
            let mut c = base(Mode::SpectrumSweep, continuum(model, 0.0));
            c.sweep = sweep(SweepParameter::Kappa, 0.0, hi, 25);
            c
        }
        "fig2a2" | "fig2b2" | "fig2c2" => {
            let size = match name {
                "fig2a2" => 5,
                "fig2b2" => 7,
                _ => 15,
            };
            let mut c = base(Mode::SpectrumSweep, ladder(size, 0.0));
            c.sweep = sweep(SweepParameter::Tilt, 0.0, 3.0, 121);
            c
        }
        "fig3a" => base(Mode::Fidelity, continuum("fig1a", 0.0062)),
        "fig3b" => base(Mode::Fidelity, continuum("fig1b", 0.0252)),
        "fig3c" => base(Mode::Fidelity, continuum("fig1c", 0.344)),
        "fig4" => {
            let mut c = base(Mode::ScaleFree, None);
            c.scale_free = Some(ScaleFreeConfig { sizes: vec![5, 7, 15], ratio_lo: 1.0, ratio_hi: 3.0, scan_steps: 101 });
            c
        }
        "fig5" => {
            let mut c = base(Mode::Spacing, ladder(5, 1.0));
            c.sweep = sweep(SweepParameter::Tilt, 0.05, 6.0, 120);
            c
        }
        "fig5c" => evolution(5, 0.2, 50.0, Initial::Site(3), Generator::HEff),
        "fig5d" => evolution(5, 0.05, 50.0, Initial::Site(3), Generator::HEff),
        "fig6a" => evolution(5, 4.3, 6.0, Initial::Site(3), Generator::HXi),
        "fig6b" => evolution(5, c1, 10.0, state(&[-0.606, 0.620, 1.293, -0.606, -0.620]), Generator::HEff),
        "fig6c" => evolution(5, c2, 3.0, Initial::Site(3), Generator::HEff),
        "fig6d" => evolution(7, ep3_ratio(), 3.0, Initial::Site(4), Generator::HEff),
        _ => return None,
    };
    Some(c)
}
