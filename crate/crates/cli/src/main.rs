mod commands;
mod config;
mod mesh;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Outcome, VerificationFailed};
use config::{ConfigError, FileConfig};

#[derive(Parser)]
#[command(name = "lbsurf", version, about = "Exact geometry, Laplace-Beltrami images and implicit equations of parametric surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental forms, W, H and K.
    Analyze(Common),
    /// First or third Laplace-Beltrami image of the surface.
    Lb {
        #[command(flatten)]
        common: Common,
        /// Which operator: I or III.
        #[arg(long)]
        which: Option<String>,
    },
    /// Implicit equation of a rational surface.
    Implicitize(Common),
    /// Class: degree of the implicit equation in tangential coordinates.
    Class(Common),
    /// Triangulated OBJ mesh and CSV samples over the parameter grid.
    Mesh(Common),
    /// Checks over the built-in surfaces.
    Verify(Common),
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Flat TOML job configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in name, family name or config file.
    #[arg(long)]
    surface: Option<String>,
    /// Elimination method: groebner or interp.
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    dmax: Option<u32>,
    /// Grid resolution, e.g. 21x21.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    budget_seconds: Option<f64>,
}

impl Common {
    fn file_config(&self) -> anyhow::Result<FileConfig> {
        let mut cfg = match &self.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        if self.method.is_some() {
            cfg.method = self.method.clone();
        }
        if self.dmax.is_some() {
            cfg.dmax = self.dmax;
        }
        if self.grid.is_some() {
            cfg.grid = self.grid.clone();
        }
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        if self.budget_seconds.is_some() {
            cfg.budget_seconds = self.budget_seconds;
        }
        Ok(cfg)
    }
}

fn emit(cfg: &FileConfig, o: &Outcome) -> anyhow::Result<()> {
    let json = serde_json::to_string_pretty(&o.report)? + "\n";
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, json)?;
            println!("{}", o.summary);
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    commands::self_test()?;
    let (common, which) = match &cli.command {
        Command::Lb { common, which } => (common.clone(), which.clone()),
        Command::Analyze(c) | Command::Implicitize(c) | Command::Class(c) | Command::Mesh(c) | Command::Verify(c) => {
            (c.clone(), None)
        }
    };
    let cfg = common.file_config()?;
    let surface = || cfg.resolve_surface(common.surface.as_deref());
    let outcome = match cli.command {
        Command::Analyze(_) => commands::analyze(&surface()?)?,
        Command::Lb { .. } => {
            let w = which.or(cfg.which.clone()).unwrap_or_else(|| "I".into());
            commands::lb(&surface()?, commands::parse_which(&w)?)?
        }
        Command::Implicitize(_) => commands::implicit(&surface()?, &cfg.elimination()?)?,
        Command::Class(_) => commands::class(&surface()?, &cfg.elimination()?)?,
        Command::Mesh(_) => {
            let (nu, nv) = cfg.grid()?;
            let out = cfg.out.clone().unwrap_or_else(|| PathBuf::from("mesh.obj"));
            let report = mesh::write(&surface()?, nu, nv, &out)?;
            let summary = format!("wrote {} and {}", report["obj"].as_str().unwrap_or(""), report["csv"].as_str().unwrap_or(""));
            println!("{summary}");
            return Ok(());
        }
        Command::Verify(_) => {
            let s = if common.surface.is_some() || cfg.surface.is_some() { Some(surface()?) } else { None };
            commands::verify(&cfg, s.as_ref())?
        }
    };
    emit(&cfg, &outcome)?;
    if let Some(what) = outcome.failed {
        return Err(VerificationFailed(what).into());
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<VerificationFailed>().is_some() {
        return 2;
    }
    if e.downcast_ref::<ConfigError>().is_some() {
        return 4;
    }
    match e.downcast_ref::<lbsurf::Error>() {
        Some(lbsurf::Error::BudgetExceeded(_)) => 3,
        Some(lbsurf::Error::Config(_) | lbsurf::Error::Parse { .. } | lbsurf::Error::InvalidSpec(_)) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
