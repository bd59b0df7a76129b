use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twistcoh_cli::config::{parse_grid, parse_pq, parse_scalars};
use twistcoh_cli::{CliError, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "twistcoh", version, about = "Exact twisted cohomology scans over a weight grid")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Morse-Novikov dimensions.
    Mn(Common),
    /// Twisted Dolbeault tables.
    Dolbeault(Common),
    /// Twisted Bott-Chern dimensions and ddc-lemma verdicts.
    Bc(Common),
    /// Frolicher pages, degeneration page and exactness checks.
    Frolicher(Common),
    /// Weights where cohomology jumps.
    Spectrum(Common),
    /// Dolbeault dimensions on a diagonal Hopf manifold.
    Hopf(Common),
    /// Spectrum monoid and resolvent of a jet automorphism.
    Jets(Common),
}

#[derive(Args)]
struct Common {
    /// Fixture name or model file.
    #[arg(long, default_value = "hopf_surface")]
    model: String,
    /// Weights: a list `a,b,c` or an inclusive range `a:b:step`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    jet_degree: u32,
    #[arg(long, default_value_t = 8)]
    monoid_bound: u32,
    /// Restrict to one bidegree, `p,q`.
    #[arg(long)]
    pq: Option<String>,
    /// Restrict the spectrum to one degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Replace the Lee form, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Hopf eigenvalues, comma separated.
    #[arg(long, default_value = "1/2,1/3")]
    beta: String,
    /// Diagonal linear part of the jet automorphism.
    #[arg(long, default_value = "1/2,1/3")]
    diag: String,
    /// Full linear part of the jet automorphism, rows separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    linear: Option<String>,
    /// Resolvent right-hand side, terms `e1,...,en:c` separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
}

fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let (command, c) = match cli.command {
        Cmd::Mn(c) => (Command::Mn, c),
        Cmd::Dolbeault(c) => (Command::Dolbeault, c),
        Cmd::Bc(c) => (Command::Bc, c),
        Cmd::Frolicher(c) => (Command::Frolicher, c),
        Cmd::Spectrum(c) => (Command::Spectrum, c),
        Cmd::Hopf(c) => (Command::Hopf, c),
        Cmd::Jets(c) => (Command::Jets, c),
    };
    let default_alpha = match command {
        Command::Hopf => "1",
        Command::Jets => "1/5",
        _ => "0",
    };
    let alpha_spec = c.alpha.unwrap_or_else(|| default_alpha.to_string());
    let uses_model = command.uses_model();
    Ok(RunConfig {
        command,
        alpha: parse_grid(&alpha_spec)?,
        alpha_spec,
        model: uses_model.then_some(c.model),
        format: c.format,
        out: c.out,
        jet_degree: c.jet_degree,
        monoid_bound: c.monoid_bound,
        pq: c.pq.as_deref().map(parse_pq).transpose()?,
        degree: c.degree,
        theta: c.theta.as_deref().map(parse_scalars).transpose()?,
        beta: parse_scalars(&c.beta)?,
        diag: parse_scalars(&c.diag)?,
        linear: c.linear,
        y: c.y,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = resolve(cli).and_then(|cfg| {
        let bytes = twistcoh_cli::run(&cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => std::io::stdout().write_all(&bytes).map_err(CliError::from),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
