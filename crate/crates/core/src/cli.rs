//! The `sfvs` command line: `solve`, `check`, `gen` and `reduce`.
//!
//! Exit codes: 0 success, 1 infeasible (or a failed check), 2 parse or usage
//! error, 3 precondition violation, 4 internal error.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{self, SourceInstance};
use crate::generate::{self, GenParams};
use crate::graph::{self, VertexSet};
use crate::multiway;
use crate::oracle::{self, ProblemInstance, ProblemKind, Solution};
use crate::reductions::{self, ReductionOutput};
use crate::sfvs::{self, Alpha3Options, CandidateBound};

/// Overrides the vertex-count limit of the exhaustive oracle.
pub const ORACLE_LIMIT_ENV: &str = "SFVS_ORACLE_MAX_N";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    #[value(name = "wsfvs-a3")]
    WsfvsA3,
    #[value(name = "sfvs-xp")]
    SfvsXp,
    #[value(name = "nmc-a2")]
    NmcA2,
    #[value(name = "nmcdt-xp")]
    NmcdtXp,
    #[value(name = "wnmcdt-a2")]
    WnmcdtA2,
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::WsfvsA3 => "wsfvs-a3",
            Algorithm::SfvsXp => "sfvs-xp",
            Algorithm::NmcA2 => "nmc-a2",
            Algorithm::NmcdtXp => "nmcdt-xp",
            Algorithm::WnmcdtA2 => "wnmcdt-a2",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <Algorithm as ValueEnum>::from_str(s, false)
    }
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidVertex { .. }
        | Error::SelfLoop(_)
        | Error::DuplicateEdge(..)
        | Error::ZeroWeight(_) => 2,
        Error::IndependenceBound { .. } | Error::NonUnitWeights | Error::TooLarge { .. } | Error::Precondition(_) => 3,
        Error::UnboundedFlow | Error::Internal(_) => 4,
    }
}

/// Oracle size limit, honouring [`ORACLE_LIMIT_ENV`].
pub fn oracle_limit() -> Result<usize> {
    match std::env::var(ORACLE_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("{ORACLE_LIMIT_ENV} must be a vertex count, got '{v}'"))),
        Err(_) => Ok(oracle::DEFAULT_ORACLE_LIMIT),
    }
}

fn unsupported(algo: Algorithm, kind: ProblemKind) -> Error {
    Error::Precondition(format!("{algo} does not solve {kind} instances"))
}

fn independence_number(inst: &ProblemInstance) -> usize {
    graph::max_independent_set(&inst.graph).len().max(1)
}

/// Runs `algo` on `inst`. `d` defaults to the independence number for the
/// XP solvers; the wide candidate bound only affects `wsfvs-a3`.
pub fn solve_instance(algo: Algorithm, inst: &ProblemInstance, d: Option<usize>, wide: bool) -> Result<Solution> {
    use ProblemKind::*;
    let g = &inst.graph;
    let kind = inst.kind;
    let as_kind = |sol: Solution| inst.solution(sol.removed);
    match algo {
        Algorithm::WsfvsA3 if kind.is_cycle_problem() => {
            let opts = Alpha3Options {
                bound: if wide { CandidateBound::Wide } else { CandidateBound::Tight },
            };
            let g = if kind.is_weighted() { g.clone() } else { g.unit_weighted() };
            sfvs::solve_wsfvs_alpha3_with(&g, &inst.special, &opts).map(as_kind)
        }
        Algorithm::SfvsXp if kind.is_cycle_problem() => {
            if kind.is_weighted() && !g.has_unit_weights() {
                return Err(Error::NonUnitWeights);
            }
            let d = d.unwrap_or_else(|| independence_number(inst));
            sfvs::solve_sfvs_xp(&g.unit_weighted(), &inst.special, d).map(as_kind)
        }
        Algorithm::NmcA2 if kind == Nmc => multiway::solve_nmc_alpha2(g, &inst.special),
        Algorithm::NmcdtXp if kind == Nmcdt || kind == Wnmcdt => {
            if kind.is_weighted() && !g.has_unit_weights() {
                return Err(Error::NonUnitWeights);
            }
            let d = d.unwrap_or_else(|| independence_number(inst));
            multiway::solve_nmcdt_xp(g, &inst.special, d).map(as_kind)
        }
        Algorithm::WnmcdtA2 if kind == Nmcdt || kind == Wnmcdt => {
            let g = if kind.is_weighted() { g.clone() } else { g.unit_weighted() };
            multiway::solve_wnmcdt_alpha2(&g, &inst.special).map(as_kind)
        }
        Algorithm::Oracle => oracle::oracle_solve_with_limit(inst, oracle_limit()?),
        _ => Err(unsupported(algo, kind)),
    }
}

/// True when `sol` passes the independent feasibility check, or, for an
/// infeasible verdict, when two terminals are adjacent.
pub fn verify_solution(inst: &ProblemInstance, sol: &Solution) -> bool {
    if sol.feasible {
        inst.is_feasible(&sol.removed) && inst.objective_of(&sol.removed) == sol.objective
    } else {
        inst.kind == ProblemKind::Nmc
            && inst
                .special
                .iter()
                .tuple_combinations()
                .any(|(a, b)| inst.graph.adjacent(a, b))
    }
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub algo: String,
    pub n: usize,
    pub m: usize,
    pub objective: Option<u64>,
    pub removed: VertexSet,
    pub feasible: bool,
    pub verified: bool,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_budget: Option<bool>,
}

#[derive(Parser, Debug)]
#[command(name = "sfvs", version, about = "Exact subset feedback vertex set and node multiway cut solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file.
    Solve {
        #[arg(long, value_enum)]
        algo: Algorithm,
        #[arg(long)]
        input: PathBuf,
        /// Independence bound for the XP solvers (default: computed).
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Reproducible output: wall time is reported as 0.
        #[arg(long)]
        seedless: bool,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        threads: Option<u16>,
        /// Use the 4d candidate bound in wsfvs-a3.
        #[arg(long)]
        wide: bool,
    },
    /// Check a solution file against an instance.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        /// Also require optimality, via the exhaustive oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Generate a random instance with independence number at most `alpha`.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        kind: ProblemKind,
        #[arg(long, default_value_t = 0.5)]
        special_frac: f64,
        #[arg(long, default_value_t = 1)]
        wmax: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a reduced instance from a hardness-reduction source.
    Reduce {
        #[arg(long, value_parser = ["vc3", "mcis"])]
        from: String,
        #[arg(long, value_parser = ["wsfvs4", "nmc3", "fvs"])]
        to: String,
        #[arg(long)]
        input: PathBuf,
        /// Instance file; the role mapping goes to `<output>.map`.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Mapping file path, overriding `<output>.map`.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Solve both sides exhaustively and check the equivalence.
        #[arg(long)]
        verify: bool,
    },
}

/// Runs the command line with `args` (including the program name) and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))
}

fn io(e: std::io::Error) -> Error {
    Error::Internal(format!("cannot write output: {e}"))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Solve {
            algo,
            input,
            d,
            json,
            seedless,
            threads,
            wide,
        } => {
            let inst = format::parse_instance(&read(&input)?)?;
            let started = Instant::now();
            let sol = match threads {
                Some(t) => rayon::ThreadPoolBuilder::new()
                    .num_threads(t.into())
                    .build()
                    .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
                    .install(|| solve_instance(algo, &inst, d, wide))?,
                None => solve_instance(algo, &inst, d, wide)?,
            };
            let millis = if seedless { 0 } else { started.elapsed().as_millis() as u64 };
            let report = SolveReport {
                algo: algo.name().to_string(),
                n: inst.graph.n(),
                m: inst.graph.m(),
                objective: sol.feasible.then_some(sol.objective),
                verified: verify_solution(&inst, &sol),
                within_budget: inst.budget.map(|b| sol.feasible && sol.objective <= b),
                removed: sol.removed,
                feasible: sol.feasible,
                millis,
            };
            print_report(&report, json, out).map_err(io)?;
            Ok(if report.feasible { 0 } else { 1 })
        }
        Command::Check { input, solution, oracle } => {
            let inst = format::parse_instance(&read(&input)?)?;
            let x = format::parse_solution(&read(&solution)?, inst.graph.n())?;
            let feasible = inst.is_feasible(&x);
            let objective = inst.objective_of(&x);
            writeln!(out, "feasible: {feasible}").map_err(io)?;
            writeln!(out, "objective: {objective}").map_err(io)?;
            let mut ok = feasible;
            if oracle {
                let best = oracle::oracle_solve_with_limit(&inst, oracle_limit()?)?;
                let optimal = feasible && best.feasible && objective == best.objective;
                if best.feasible {
                    writeln!(out, "optimal: {optimal} (optimum {})", best.objective).map_err(io)?;
                } else {
                    writeln!(out, "optimal: false (instance is infeasible)").map_err(io)?;
                }
                ok &= optimal;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Gen {
            n,
            alpha,
            p,
            seed,
            kind,
            special_frac,
            wmax,
            output,
        } => {
            let inst = generate::generate(&GenParams {
                n,
                alpha,
                p,
                seed,
                kind,
                special_frac,
                wmax,
            })?;
            let text = format::emit_instance(&inst);
            match output {
                Some(path) => write_file(&path, &text)?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(0)
        }
        Command::Reduce {
            from,
            to,
            input,
            output,
            map,
            verify,
        } => {
            let source = format::parse_source(&read(&input)?)?;
            let (reduced, source_opt) = reduce(&source, &from, &to, verify)?;
            let mut text = format::emit_instance(&reduced.instance);
            let mapping = reduced.mapping_text();
            let map_path = map.or_else(|| output.as_ref().map(|p| sidecar(p)));
            match &map_path {
                Some(path) => write_file(path, &mapping)?,
                None => {
                    for line in mapping.lines() {
                        text.push_str(&format!("# map {line}\n"));
                    }
                }
            }
            match &output {
                Some(path) => write_file(path, &text)?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            match source_opt {
                Some(opt) => {
                    let holds = reductions::verify_reduction(&reduced, opt)?;
                    writeln!(out, "# equivalence: {holds} (source optimum {opt})").map_err(io)?;
                    Ok(if holds { 0 } else { 1 })
                }
                None => Ok(0),
            }
        }
    }
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".map");
    PathBuf::from(s)
}

fn reduce(source: &SourceInstance, from: &str, to: &str, verify: bool) -> Result<(ReductionOutput, Option<u64>)> {
    match (source, from, to) {
        (SourceInstance::Tripartite { tg, budget }, "vc3", "wsfvs4" | "nmc3") => {
            let out = if to == "wsfvs4" {
                reductions::reduce_vc3_to_wsfvs(tg, *budget)?
            } else {
                reductions::reduce_vc3_to_nmc(tg, *budget)?
            };
            let opt = verify.then(|| reductions::vertex_cover_number(&tg.graph)).transpose()?;
            Ok((out, opt))
        }
        (SourceInstance::Multicolored(mi), "mcis", "fvs") => {
            let out = reductions::reduce_mcis_to_fvs(mi)?;
            let opt = verify.then(|| reductions::max_multicolored_independent_set(mi) as u64);
            Ok((out, opt))
        }
        (SourceInstance::Tripartite { .. }, "vc3", _) | (SourceInstance::Multicolored(_), "mcis", _) => {
            Err(Error::Precondition(format!("no reduction from {from} to {to}")))
        }
        _ => Err(Error::Precondition(format!("input file is not a {from} source"))),
    }
}

fn print_report(r: &SolveReport, json: bool, out: &mut dyn Write) -> std::io::Result<()> {
    if json {
        let text = serde_json::to_string(r).expect("report serializes");
        return writeln!(out, "{text}");
    }
    writeln!(out, "algo: {}", r.algo)?;
    writeln!(out, "graph: n = {}, m = {}", r.n, r.m)?;
    match r.objective {
        Some(obj) => {
            writeln!(out, "objective: {obj}")?;
            writeln!(out, "removed: {}", r.removed)?;
        }
        None => writeln!(out, "infeasible: two terminals are adjacent")?,
    }
    writeln!(out, "verified: {}", r.verified)?;
    if let Some(w) = r.within_budget {
        writeln!(out, "within budget: {w}")?;
    }
    writeln!(out, "time: {} ms", r.millis)
}
