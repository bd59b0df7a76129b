use std::path::PathBuf;

use serde::Serialize;
use twistcoh::model::{builtin, FIXTURES};
use twistcoh::{format, Model, Scalar};

use crate::error::CliError;

/// Grids longer than this are almost certainly a typo in the step.
pub const MAX_GRID: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Mn,
    Dolbeault,
    Bc,
    Frolicher,
    Spectrum,
    Hopf,
    Jets,
}

impl Command {
    pub fn uses_model(self) -> bool {
        !matches!(self, Command::Hopf | Command::Jets)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Everything a run depends on, after defaults are filled in. Serialized
/// verbatim into every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub model: Option<String>,
    /// The grid as typed, and its expansion.
    pub alpha_spec: String,
    pub alpha: Vec<Scalar>,
    pub format: OutputFormat,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub jet_degree: u32,
    pub monoid_bound: u32,
    pub pq: Option<(usize, usize)>,
    pub degree: Option<usize>,
    pub theta: Option<Vec<Scalar>>,
    pub beta: Vec<Scalar>,
    /// Diagonal of the linear jet automorphism.
    pub diag: Vec<Scalar>,
    /// Full linear part, rows separated by `;`. Overrides `diag`.
    pub linear: Option<String>,
    /// Right-hand side of the resolvent equation, `None` for the product of all variables.
    pub y: Option<String>,
}

fn scalar(s: &str) -> Result<Scalar, CliError> {
    s.trim().parse::<Scalar>().map_err(|_| CliError::Parse(format!("invalid scalar {:?}", s.trim())))
}

pub fn parse_scalars(s: &str) -> Result<Vec<Scalar>, CliError> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(scalar).collect()
}

/// `a,b,c` or the inclusive range `a:b:step`. Range ends must be real.
pub fn parse_grid(spec: &str) -> Result<Vec<Scalar>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [_] => parse_scalars(spec)?,
        [a, b, step] => {
            let (a, b, step) = (scalar(a)?, scalar(b)?, scalar(step)?);
            if !(a.is_real() && b.is_real() && step.is_real()) {
                return Err(CliError::Parse(format!("range {spec:?} must have real ends and step")));
            }
            let zero = Scalar::zero();
            if step.re() <= zero.re() {
                return Err(CliError::Parse(format!("range step {step} must be positive")));
            }
            let mut out = Vec::new();
            let mut x = a;
            while x.re() <= b.re() {
                if out.len() == MAX_GRID {
                    return Err(CliError::Parse(format!("range {spec:?} has more than {MAX_GRID} points")));
                }
                let next = &x + &step;
                out.push(x);
                x = next;
            }
            out
        }
        _ => return Err(CliError::Parse(format!("grid {spec:?} is neither a list nor a:b:step"))),
    };
    if grid.is_empty() {
        return Err(CliError::Parse(format!("grid {spec:?} is empty")));
    }
    Ok(grid)
}

pub fn parse_pq(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Parse(format!("expected p,q, got {s:?}"));
    let (p, q) = s.split_once(',').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

/// A fixture name wins over a file of the same name.
pub fn load_model(source: &str) -> Result<Model, CliError> {
    if FIXTURES.contains(&source) {
        return builtin(source).map_err(CliError::from);
    }
    let text = std::fs::read_to_string(source).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            CliError::Parse(format!("{source:?} is neither a fixture ({}) nor a readable file", FIXTURES.join(", ")))
        } else {
            CliError::Io(format!("{source}: {e}"))
        }
    })?;
    format::parse(&text).map_err(CliError::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn list_and_range() {
        assert_eq!(parse_grid("0, 1/2 ,1+i").unwrap(), vec![s("0"), s("1/2"), s("1+i")]);
        assert_eq!(parse_grid("-1:1:2/3").unwrap(), vec![s("-1"), s("-1/3"), s("1/3"), s("1")]);
        assert_eq!(parse_grid("0:1:1/4").unwrap().len(), 5);
    }

    #[test]
    fn bad_grids() {
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1:-1").is_err());
        assert!(parse_grid("0:i:1").is_err());
        assert!(parse_grid("0.5").is_err());
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("").is_err());
        assert!(parse_grid("0:1000000:1/1000").is_err());
    }

    #[test]
    fn pq() {
        assert_eq!(parse_pq("1, 2").unwrap(), (1, 2));
        assert!(parse_pq("1").is_err());
    }

    #[test]
    fn unknown_model_is_parse_error() {
        assert_eq!(load_model("/no/such/file").unwrap_err().exit_code(), 2);
    }
}
