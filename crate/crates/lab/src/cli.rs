//! Command-line front end.

use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::Parser;
use log::{error, info};

use crate::config::{parse_file, ConfigError, ContinuumFile, ModelFile, RunConfig};
use crate::presets::{figure_preset, FIGURE_PRESETS};
use crate::run::{run, RunError};

#[derive(Debug, Parser)]
#[command(name = "stark-ep", version, about = "Exceptional points of lossy Stark ladders and their continuum models")]
pub struct Args {
    /// JSON run configuration.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Figure preset; with --config, one of fig1a, fig1b, fig1c selects the continuum model.
    #[arg(long, value_name = "NAME")]
    pub preset: Option<String>,
    /// Worker threads for sweep points.
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// Output directory, overriding `output_path`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Accepted for compatibility; no run uses random numbers.
    #[arg(long)]
    pub seedless: bool,
    /// Print the resolved configuration and exit.
    #[arg(long)]
    pub emit_config: bool,
    /// List the figure presets and exit.
    #[arg(long)]
    pub list_presets: bool,
}

fn invalid(msg: String) -> RunError {
    RunError::Config(ConfigError::Invalid(vec![msg]))
}

/// Builds the run from `--config` and `--preset`.
pub fn resolve(args: &Args) -> Result<RunConfig, RunError> {
    let mut config = match (&args.config, &args.preset) {
        (Some(path), preset) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let mut file = parse_file(&text)?;
            if let Some(name) = preset {
                if !matches!(name.as_str(), "fig1a" | "fig1b" | "fig1c") {
                    return Err(invalid(format!("--preset {name} cannot be combined with --config; use fig1a, fig1b or fig1c")));
                }
                match &mut file.model {
                    Some(ModelFile::Continuum(c)) => c.preset = Some(name.clone()),
                    None => file.model = Some(ModelFile::Continuum(ContinuumFile { preset: Some(name.clone()), ..Default::default() })),
                    Some(ModelFile::Ladder(_)) => return Err(invalid(format!("--preset {name} needs a continuum model, the config has a ladder"))),
                }
            }
            file.resolve()?
        }
        (None, Some(name)) => figure_preset(name).ok_or_else(|| invalid(format!("unknown preset `{name}`; see --list-presets")))?,
        (None, None) => return Err(invalid(String::from("give --config PATH or --preset NAME"))),
    };
    if let Some(dir) = &args.out {
        config.output_path = dir.to_string_lossy().into_owned();
    }
    Ok(config)
}

/// Runs the command and returns the process exit code.
pub fn main(args: &Args) -> i32 {
    if args.list_presets {
        for (name, what) in FIGURE_PRESETS {
            println!("{name:8} {what}");
        }
        return 0;
    }
    let result = resolve(args).and_then(|config| {
        if args.emit_config {
            print!("{}", crate::config::emit(&config));
            return Ok(());
        }
        let report = run(&config, args.jobs.map(|k| k as usize))?;
        for f in &report.files {
            info!("wrote {}", f.display());
        }
        info!("finished in {:.2} s", report.wall_time);
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            error!("{e}");
            e.exit_code()
        }
    }
}
