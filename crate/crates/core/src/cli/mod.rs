//! Command-line front end: configuration parsing, the four commands and
//! report rendering.

mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::dynamics::{
    enumerate_irreducibles, ftype, orbit_census, orbit_profile, transition_chain, CensusReport,
    CensusScope, DescendantTree, FType, OrbitProfile, TransitionRecord,
};
use crate::error::Error;
use crate::factor::is_irreducible;
use crate::ffield::{is_prime, Field, FieldSpec};
use crate::poly::{MonicQuadratic, Poly};
use crate::verify::{run, Claim, ClaimSet, RunOutput};
use crate::TOOL_VERSION;

pub use render::{render_census, render_ftype, render_transitions, render_verify};

const POLY_HELP: &str = "\
Polynomials are written as comma-separated coefficients, constant term first:
  \"6,4,1\"    is x^2 + 4x + 6
  \"1,1,0,1\"  is x^3 + x + 1
  \"0,1\"      is x
Over an extension field each coefficient is the integer encoding
sum c_i p^i of its coordinates in the basis 1, t, .., t^(k-1).

Exit codes: 0 ok, 1 failure witness found, 2 invalid configuration or input,
3 g not monic or not irreducible, 4 inconclusive (nothing exercised).";

#[derive(Parser, Debug)]
#[command(
    name = "iterquad",
    version,
    about = "Orbit types, f-types and factorization censuses for iterated monic quadratics",
    after_help = POLY_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orbit-type frequencies of all monic quadratics, per field
    OrbitCensus(CommonArgs),
    /// Orbit profile of f and f-type of g
    Ftype {
        /// The quadratic f, e.g. "6,4,1"
        #[arg(long)]
        f: String,
        /// The monic irreducible g, e.g. "1,1,0,1"
        #[arg(long)]
        g: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check one claim (or all) over every quadratic of the selected fields
    Verify {
        #[arg(value_enum)]
        claim: ClaimArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Transition chains of f from every seed g
    Transitions {
        /// The quadratic f, e.g. "1,0,1"
        #[arg(long)]
        f: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Odd primes: a range "3..61" (inclusive) or a list "3,5,7"
    #[arg(long)]
    pub primes: Option<String>,
    /// Characteristic of a single field (with --k and --modulus for F_{p^k})
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree
    #[arg(long)]
    pub k: Option<u32>,
    /// Monic irreducible modulus over F_p, constant term first
    #[arg(long)]
    pub modulus: Option<String>,
    /// Iteration depth
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest degree of generic seed polynomials g (even)
    #[arg(long, default_value_t = 4)]
    pub g_degree_max: usize,
    /// Compositions above this degree are not expanded
    #[arg(long, default_value_t = crate::poly::DEFAULT_DEGREE_CAP)]
    pub degree_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Csv,
    Summary,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
            Format::Summary => "summary",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimArg {
    Identities,
    #[value(name = "theorem-2n")]
    Theorem2n,
    #[value(name = "theorem-31")]
    Theorem31,
    Pairing,
    MissingTransitions,
    ConjectureEvidence,
    All,
}

impl ClaimArg {
    pub fn claims(self) -> ClaimSet {
        let one = |c: Claim| [c].into_iter().collect();
        match self {
            ClaimArg::Identities => one(Claim::Identities),
            ClaimArg::Theorem2n => one(Claim::Theorem2n),
            ClaimArg::Theorem31 => one(Claim::Theorem31),
            ClaimArg::Pairing => one(Claim::Pairing),
            ClaimArg::MissingTransitions => one(Claim::MissingTransitions),
            ClaimArg::ConjectureEvidence => one(Claim::ConjectureEvidence),
            ClaimArg::All => Claim::ALL.into_iter().collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("rejected: {0}")]
    Rejected(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Input(_) => 2,
            CliError::Rejected(_) => 3,
            CliError::Library(_) | CliError::Io(_) => 1,
        }
    }
}

/// Validated run parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub fields: Vec<FieldSpec>,
    pub scope: CensusScope,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn to_json(&self) -> Value {
        json!({
            "fields": self.fields.iter().map(FieldSpec::to_json).collect::<Vec<_>>(),
            "scope": self.scope.to_json(),
            "format": self.format.as_str(),
        })
    }

    pub fn build_fields(&self) -> Result<Vec<Field>, CliError> {
        self.fields
            .iter()
            .map(|s| Field::new(s.clone()).map_err(|e| CliError::Config(e.to_string())))
            .collect()
    }

    /// The single field for commands that take one.
    pub fn single_field(&self) -> Result<Field, CliError> {
        match self.fields.as_slice() {
            [one] => Field::new(one.clone()).map_err(|e| CliError::Config(e.to_string())),
            _ => Err(CliError::Config(format!(
                "this command needs exactly one field, got {}",
                self.fields.len()
            ))),
        }
    }
}

/// Largest span accepted in a `a..b` primes range.
const MAX_RANGE_SPAN: u64 = 1 << 20;

/// Odd primes from `"3..61"` (inclusive range, composites skipped), a list
/// `"3,5,7"` (every entry must be an odd prime) or an empty string.
pub fn parse_primes(text: &str) -> Result<Vec<u64>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let num = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Config(format!("bad range bound {s:?}")))
        };
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            return Err(CliError::Config(format!("empty range {lo}..{hi}")));
        }
        if hi - lo > MAX_RANGE_SPAN {
            return Err(CliError::Config(format!("range {lo}..{hi} is too wide")));
        }
        return Ok((lo..=hi).filter(|&v| v > 2 && is_prime(v)).collect());
    }
    let mut out = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        let v: u64 = tok
            .parse()
            .map_err(|_| CliError::Config(format!("bad prime {tok:?}")))?;
        if v == 2 || !is_prime(v) {
            return Err(CliError::Config(format!("{v} is not an odd prime")));
        }
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Field description from `--p`, `--k` and `--modulus`.
pub fn parse_field_spec(
    p: u64,
    k: Option<u32>,
    modulus: Option<&str>,
) -> Result<FieldSpec, CliError> {
    let spec = match (k.unwrap_or(1), modulus) {
        (1, None) => FieldSpec::prime(p),
        (_, None) => return Err(CliError::Config("--k above 1 needs --modulus".into())),
        (k, Some(text)) => {
            let mut coeffs = Vec::new();
            for tok in text.split(',') {
                let tok = tok.trim();
                let v: i128 = tok
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad modulus coefficient {tok:?}")))?;
                if p == 0 {
                    return Err(CliError::Config("p must be positive".into()));
                }
                coeffs.push(v.rem_euclid(p as i128) as u64);
            }
            let spec = FieldSpec::extension(p, coeffs);
            if spec.k != k {
                return Err(CliError::Config(format!(
                    "modulus has degree {}, --k is {k}",
                    spec.k
                )));
            }
            spec
        }
    };
    Field::new(spec.clone()).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(spec)
}

impl CommonArgs {
    /// Checks the invariants: odd primes, `depth >= min_depth`, even
    /// `g_degree_max >= 2`, positive degree cap.
    pub fn to_config(&self, min_depth: usize) -> Result<RunConfig, CliError> {
        let mut fields: Vec<FieldSpec> = match &self.primes {
            Some(text) => parse_primes(text)?
                .into_iter()
                .map(FieldSpec::prime)
                .collect(),
            None => Vec::new(),
        };
        if let Some(p) = self.p {
            if p == 2 || !is_prime(p) {
                return Err(CliError::Config(format!("{p} is not an odd prime")));
            }
            let spec = parse_field_spec(p, self.k, self.modulus.as_deref())?;
            if !fields.contains(&spec) {
                fields.push(spec);
            }
        } else if self.k.is_some() || self.modulus.is_some() {
            return Err(CliError::Config("--k and --modulus need --p".into()));
        }
        fields.sort();
        if self.depth < min_depth {
            return Err(CliError::Config(format!(
                "depth must be at least {min_depth}"
            )));
        }
        if self.g_degree_max < 2 || self.g_degree_max % 2 == 1 {
            return Err(CliError::Config(
                "g-degree-max must be even and at least 2".into(),
            ));
        }
        if self.degree_cap < 2 {
            return Err(CliError::Config("degree-cap must be at least 2".into()));
        }
        Ok(RunConfig {
            fields,
            scope: CensusScope {
                depth: self.depth,
                g_degree_max: self.g_degree_max,
                degree_cap: self.degree_cap,
                seed: self.seed,
            },
            format: self.format,
            out: self.out.clone(),
        })
    }
}

/// Orbit-type census over every configured field.
pub fn cmd_orbit_census(config: &RunConfig) -> Result<CensusReport, CliError> {
    let mut report = CensusReport::new(config.scope.clone());
    for field in config.build_fields()? {
        report.merge(orbit_census(&field, config.scope.clone()));
    }
    Ok(report)
}

fn parse_quadratic(field: &Field, text: &str) -> Result<MonicQuadratic, CliError> {
    let poly = Poly::parse(field, text).map_err(|e| CliError::Input(e.to_string()))?;
    MonicQuadratic::from_poly(&poly).map_err(|e| CliError::Input(format!("f: {e}")))
}

/// Orbit profile of `f` and f-type of `g`; `g` must be monic irreducible.
pub fn cmd_ftype(
    config: &RunConfig,
    f_text: &str,
    g_text: &str,
) -> Result<(OrbitProfile, Poly, FType), CliError> {
    let field = config.single_field()?;
    let f = parse_quadratic(&field, f_text)?;
    let g = Poly::parse(&field, g_text).map_err(|e| CliError::Input(e.to_string()))?;
    if g.is_constant() {
        return Err(CliError::Rejected(format!(
            "g = {} is constant",
            g.to_text()
        )));
    }
    if !g.is_monic() {
        return Err(CliError::Rejected(format!(
            "g = {} is not monic",
            g.to_text()
        )));
    }
    if !is_irreducible(&g)? {
        return Err(CliError::Rejected(format!(
            "g = {} is reducible",
            g.to_text()
        )));
    }
    let profile = orbit_profile(&f);
    let t = ftype(&g, &profile)?;
    Ok((profile, g, t))
}

/// Runs the selected claims.
pub fn cmd_verify(config: &RunConfig, claim: ClaimArg) -> Result<RunOutput, CliError> {
    let fields = config.build_fields()?;
    Ok(run(&fields, &config.scope, &claim.claims())?)
}

/// Where a transition seed came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedKind {
    Generic,
    /// Irreducible factor of `f^i`.
    Iterate(usize),
}

/// Chains of `depth` steps from every generic seed (even degree up to
/// `g_degree_max`) and every irreducible factor of `f^i`, `i <= depth`.
pub fn cmd_transitions(
    config: &RunConfig,
    f_text: &str,
) -> Result<Vec<(SeedKind, TransitionRecord)>, CliError> {
    let field = config.single_field()?;
    let f = parse_quadratic(&field, f_text)?;
    let profile = orbit_profile(&f);
    let scope = &config.scope;
    let mut out = Vec::new();
    for d in (2..=scope.g_degree_max).step_by(2) {
        for g in enumerate_irreducibles(&field, d) {
            let rec = transition_chain(&g, &profile, scope.depth, scope.seed, scope.degree_cap)?;
            out.push((SeedKind::Generic, rec));
        }
    }
    if scope.depth >= 1 {
        let mut tree = DescendantTree::of_iterates(&profile, scope.seed, scope.degree_cap)?;
        for r in tree.roots().to_vec() {
            tree.expand_below(r, scope.depth - 1)?;
        }
        let mut order: Vec<usize> = (0..tree.len())
            .filter(|&i| tree.node(i).level < scope.depth)
            .collect();
        order.sort_by_key(|&i| tree.node(i).level);
        for idx in order {
            let level = tree.node(idx).level;
            let rec = tree.chain(idx, scope.depth)?;
            out.push((SeedKind::Iterate(level + 1), rec));
        }
    }
    Ok(out)
}

fn header(command: &str, config: &RunConfig) -> Value {
    json!({
        "record": "header",
        "version": TOOL_VERSION,
        "command": command,
        "config": config.to_json(),
    })
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out` (or `--out`). Diagnostics go to `err`. Returns the
/// process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, path, code)) => {
            let written = match path {
                Some(p) => std::fs::write(&p, text.as_bytes()),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "iterquad: cannot write report: {e}");
                return 1;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "iterquad: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, Option<PathBuf>, i32), CliError> {
    match &cli.command {
        Command::OrbitCensus(common) => {
            let config = common.to_config(1)?;
            let report = cmd_orbit_census(&config)?;
            let text = render_census(&header("orbit-census", &config), &report, config.format)?;
            Ok((text, config.out, 0))
        }
        Command::Ftype { f, g, common } => {
            let config = common.to_config(1)?;
            let (profile, g, t) = cmd_ftype(&config, f, g)?;
            let text = render_ftype(&header("ftype", &config), &profile, &g, &t, config.format)?;
            Ok((text, config.out, 0))
        }
        Command::Verify { claim, common } => {
            let config = common.to_config(1)?;
            let output = cmd_verify(&config, *claim)?;
            let text = render_verify(&header("verify", &config), &output, config.format)?;
            Ok((text, config.out, output.exit_code()))
        }
        Command::Transitions { f, common } => {
            let config = common.to_config(0)?;
            let records = cmd_transitions(&config, f)?;
            let text =
                render_transitions(&header("transitions", &config), &records, config.format)?;
            Ok((text, config.out, 0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> CommonArgs {
        let mut v = vec!["iterquad", "orbit-census"];
        v.extend_from_slice(extra);
        match Cli::try_parse_from(v).unwrap().command {
            Command::OrbitCensus(c) => c,
            _ => unreachable!(),
        }
    }

    #[test]
    fn primes_parsing() {
        assert_eq!(parse_primes("3..13").unwrap(), vec![3, 5, 7, 11, 13]);
        assert_eq!(parse_primes("2..=7").unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_primes("7, 3,5,3").unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_primes("").unwrap(), Vec::<u64>::new());
        assert_eq!(parse_primes("3..61").unwrap().len(), 17);
        for bad in ["2", "9", "3,x", "13..3", "a..5", "3..99999999999"] {
            assert!(parse_primes(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn config_validation() {
        assert!(args(&["--primes", "3..7"]).to_config(1).is_ok());
        for bad in [
            vec!["--depth", "0"],
            vec!["--g-degree-max", "3"],
            vec!["--g-degree-max", "0"],
            vec!["--primes", "4"],
            vec!["--p", "9"],
            vec!["--k", "2"],
            vec!["--p", "3", "--k", "2"],
            vec!["--p", "3", "--k", "2", "--modulus", "1,1"],
            vec!["--p", "3", "--k", "2", "--modulus", "2,0,1"],
        ] {
            let e = args(&bad).to_config(1).unwrap_err();
            assert_eq!(e.exit_code(), 2, "{bad:?}");
        }
        let c = args(&["--p", "3", "--k", "2", "--modulus", "1,0,1"])
            .to_config(1)
            .unwrap();
        assert_eq!(c.fields[0].k, 2);
        assert!(args(&["--depth", "0"]).to_config(0).is_ok());
    }

    #[test]
    fn ftype_worked_example() {
        let c = args(&["--p", "7"]).to_config(1).unwrap();
        let (prof, _, t) = cmd_ftype(&c, "6,4,1", "1,1,0,1").unwrap();
        assert!(t.starts_with("snn"));
        assert_eq!(prof.orbit_type(), (3, 2));
        let c5 = args(&["--p", "5"]).to_config(1).unwrap();
        let (_, _, t) = cmd_ftype(&c5, "2,-2,1", "0,1").unwrap();
        assert_eq!(t.to_string(), "s");
        let e = cmd_ftype(&c, "6,4,1", "6,0,1").unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = cmd_ftype(&c, "6,4,1", "1,2").unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = cmd_ftype(&c, "6,4", "0,1").unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn census_examples() {
        let c = args(&["--primes", "3"]).to_config(1).unwrap();
        let r = cmd_orbit_census(&c).unwrap();
        assert_eq!(r.orbit_types["F_3"].values().sum::<u64>(), 9);
        let empty = cmd_orbit_census(&args(&[]).to_config(1).unwrap()).unwrap();
        assert!(empty.orbit_types.is_empty());
    }

    #[test]
    fn transitions_depth_zero() {
        let mut a = args(&["--p", "7", "--depth", "0", "--g-degree-max", "2"]);
        a.depth = 0;
        let c = a.to_config(0).unwrap();
        let recs = cmd_transitions(&c, "1,0,1").unwrap();
        assert_eq!(recs.len(), 21);
        assert!(recs.iter().all(|(_, r)| r.levels.len() == 1));
    }
}
