//! Command line front end: Grundy tables for poset/family pairs, the
//! reference tables, and the verification suites.

pub mod cache;
pub mod report;

use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use grundylab::closed_forms::{
    asm_ideal_by_projection, asm_ruler_table, subspace_recurrence, subspace_ruler_grundy,
};
use grundylab::game::{solve_elementwise, FamilyKind};
use grundylab::nimber::ruler_phi;
use grundylab::partition::{h_sequence_from, HSequence};
use grundylab::verify::{self, Suite};
use grundylab::zoo::{
    asm_poset, bell_number, chain, divisor_poset, set_partition_poset_capped,
    subspace_lattice_capped, DEFAULT_MAX_ELEMENTS,
};
use grundylab::{Error, FinitePoset};

pub use report::{Format, TableReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub const DEFAULT_MAX_SECONDS: u64 = 3600;
pub const CACHE_ENV: &str = "GRUNDYLAB_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "grundylab",
    version,
    about = "Sprague-Grundy values of coin-turning games on finite posets"
)]
pub struct Cli {
    /// Refuse posets with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS)]
    pub max_elements: usize,
    /// Wall-clock budget for the whole command.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SECONDS)]
    pub max_seconds: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-element Grundy values of a coin-turning game.
    Grundy {
        /// chain:N | divisors:N | subspaces:N:Q | setpartitions:N | asm:N | file:PATH
        poset: PosetSpec,
        /// tt | ideal | ruler
        family: FamilyKind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reference tables.
    Tables {
        #[arg(value_enum)]
        name: TableName,
        /// Largest index (phi: x, gq: d, hn: n).
        #[arg(long)]
        max: Option<u32>,
        /// Poset parameter for the ASM tables.
        #[arg(long)]
        n: Option<usize>,
        /// Field size for gq; both parities are shown when omitted.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        /// nimber | ft | closed-forms | partitions | all
        suite: SuiteArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Phi,
    Gq,
    Hn,
    AsmIdeal,
    AsmRuler,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteArg(pub Suite);

impl FromStr for SuiteArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.parse().map(SuiteArg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetSpec {
    Chain(usize),
    Divisors(u64),
    Subspaces(usize, u32),
    SetPartitions(usize),
    Asm(usize),
    File(PathBuf),
}

impl FromStr for PosetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad poset spec {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        match kind {
            "chain" => Ok(PosetSpec::Chain(num(rest)? as usize)),
            "divisors" => Ok(PosetSpec::Divisors(num(rest)?)),
            "subspaces" => {
                let (n, q) = rest.split_once(':').ok_or_else(bad)?;
                Ok(PosetSpec::Subspaces(num(n)? as usize, num(q)? as u32))
            }
            "setpartitions" => Ok(PosetSpec::SetPartitions(num(rest)? as usize)),
            "asm" => Ok(PosetSpec::Asm(num(rest)? as usize)),
            "file" if !rest.is_empty() => Ok(PosetSpec::File(PathBuf::from(rest))),
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for PosetSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PosetSpec::Chain(n) => write!(f, "chain:{n}"),
            PosetSpec::Divisors(n) => write!(f, "divisors:{n}"),
            PosetSpec::Subspaces(n, q) => write!(f, "subspaces:{n}:{q}"),
            PosetSpec::SetPartitions(n) => write!(f, "setpartitions:{n}"),
            PosetSpec::Asm(n) => write!(f, "asm:{n}"),
            PosetSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// A failed command: message for stderr plus exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } | Error::BudgetExceeded(_) | Error::CapExceeded { .. } => {
                EXIT_RESOURCE
            }
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// What a successful command prints, and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn check_cap(size: u128, cap: usize) -> Result<(), Error> {
    if size > cap as u128 {
        Err(Error::TooLarge {
            size,
            cap: cap as u128,
        })
    } else {
        Ok(())
    }
}

pub fn build_poset(spec: &PosetSpec, max_elements: usize) -> Result<FinitePoset, Error> {
    match spec {
        PosetSpec::Chain(n) => {
            check_cap(*n as u128, max_elements)?;
            chain(*n)
        }
        PosetSpec::Divisors(n) => {
            let d = divisor_poset(*n)?;
            check_cap(d.divisors.len() as u128, max_elements)?;
            Ok(d.poset)
        }
        PosetSpec::Subspaces(n, q) => Ok(subspace_lattice_capped(*n, *q, max_elements)?.poset),
        PosetSpec::SetPartitions(n) => {
            check_cap(bell_number(*n), max_elements)?;
            Ok(set_partition_poset_capped(*n, max_elements)?.poset)
        }
        PosetSpec::Asm(n) => {
            let m = *n as u128;
            check_cap((m + 1) * m * m.saturating_sub(1) / 6, max_elements)?;
            Ok(asm_poset(*n)?.poset)
        }
        PosetSpec::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let p = FinitePoset::from_json(&text)?;
            check_cap(p.len() as u128, max_elements)?;
            Ok(p)
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let deadline = Instant::now() + Duration::from_secs(cli.max_seconds);
    match &cli.command {
        Command::Grundy {
            poset,
            family,
            format,
        } => {
            let report = grundy_report(poset, *family, cli.max_elements)?;
            Ok(Outcome {
                stdout: report.render(*format)?,
                code: EXIT_OK,
            })
        }
        Command::Tables {
            name,
            max,
            n,
            q,
            format,
        } => {
            let report = table_report(*name, *max, *n, *q, cli.max_elements, deadline)?;
            Ok(Outcome {
                stdout: report.render(*format)?,
                code: EXIT_OK,
            })
        }
        Command::Verify { suite } => {
            let report = verify::run(suite.0);
            let mut out = String::new();
            for check in &report.checks {
                out.push_str(&check.to_string());
                out.push('\n');
            }
            let failed = report.failures().count();
            out.push_str(&format!(
                "{} checks, {} failed\n",
                report.checks.len(),
                failed
            ));
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            Ok(Outcome { stdout: out, code })
        }
    }
}

fn base_report(title: &str) -> TableReport {
    let mut r = TableReport::new(title);
    r.meta("tool", &format!("grundylab {}", env!("CARGO_PKG_VERSION")));
    r
}

pub fn grundy_report(
    spec: &PosetSpec,
    family: FamilyKind,
    max_elements: usize,
) -> Result<TableReport, Error> {
    let poset = build_poset(spec, max_elements)?;
    let fam = family.build(&poset);
    let table = solve_elementwise(&poset, &fam);
    let mut r = base_report("grundy");
    r.meta("poset", &spec.to_string());
    r.meta("family", family.name());
    r.meta("elements", &poset.len().to_string());
    r.meta("turning_sets", &fam.len().to_string());
    r.columns(&["element_label", "grundy"]);
    for x in 0..poset.len() {
        r.row(vec![poset.label(x).to_string(), table.get(x).to_string()]);
    }
    Ok(r)
}

pub fn table_report(
    name: TableName,
    max: Option<u32>,
    n: Option<usize>,
    q: Option<u64>,
    max_elements: usize,
    deadline: Instant,
) -> Result<TableReport, Error> {
    match name {
        TableName::Phi => {
            let max = max.unwrap_or(15);
            let mut r = base_report("ruler sequence phi(x) = 2^nu(x)");
            r.meta("max", &max.to_string());
            r.columns(&["x", "phi"]);
            for x in 1..=max as u64 {
                r.row(vec![x.to_string(), ruler_phi(x)?.to_string()]);
            }
            Ok(r)
        }
        TableName::Gq => {
            let max = max.unwrap_or(14) as usize;
            let mut r = base_report("ruler on subspace lattices: g_q(d) by dimension");
            r.meta("max", &max.to_string());
            r.meta("source", "recurrence, checked against the closed form");
            let qs: Vec<u64> = match q {
                Some(q) => vec![q],
                None => vec![2, 3],
            };
            let recs: Vec<_> = qs.iter().map(|&q| subspace_recurrence(q, max)).collect();
            for (rec, &q) in recs.iter().zip(&qs) {
                for d in 0..=max {
                    if rec.g(d) != subspace_ruler_grundy(q, d) {
                        return Err(Error::GrundyMismatch {
                            element: d,
                            left: rec.g(d).get(),
                            right: subspace_ruler_grundy(q, d).get(),
                        });
                    }
                }
            }
            match q {
                Some(q) => {
                    r.meta("q", &q.to_string());
                    r.columns(&["d", "grundy"]);
                }
                None => r.columns(&["d", "q_even", "q_odd"]),
            }
            for d in 0..=max {
                let mut row = vec![d.to_string()];
                row.extend(recs.iter().map(|rec| rec.g(d).to_string()));
                r.row(row);
            }
            Ok(r)
        }
        TableName::Hn => {
            let max = max.unwrap_or(17);
            let seq = cached_h_sequence(max, deadline)?;
            let mut r = base_report("ruler on set-partition lattices: h(n)");
            r.meta("max", &max.to_string());
            r.columns(&["n", "h"]);
            for k in 1..=max {
                r.row(vec![k.to_string(), seq.h(k).expect("computed").to_string()]);
            }
            Ok(r)
        }
        TableName::AsmIdeal => {
            let n = n.unwrap_or(8);
            if n < 2 {
                return Err(Error::NonPositive);
            }
            let mut r = base_report("order-ideal game on A_n by (rank, z)");
            r.meta("n", &n.to_string());
            r.columns(&["s", "t", "grundy"]);
            for s in 0..=n - 2 {
                for t in 0..=s {
                    r.row(vec![
                        s.to_string(),
                        t.to_string(),
                        asm_ideal_by_projection(s, t).to_string(),
                    ]);
                }
            }
            Ok(r)
        }
        TableName::AsmRuler => {
            let n = n.unwrap_or(16);
            if n < 2 {
                return Err(Error::NonPositive);
            }
            let n128 = n as u128;
            check_cap((n128 + 1) * n128 * (n128 - 1) / 6, max_elements)?;
            let table = cached_asm_ruler(n, deadline)?;
            let mut r = base_report("ruler on A_n by (rank, z)");
            r.meta("n", &n.to_string());
            r.meta(
                "values",
                "original computation (no published reference values); one fibre representative per (s,t)",
            );
            r.columns(&["s", "t", "grundy"]);
            for (s, t, g) in table.entries() {
                r.row(vec![s.to_string(), t.to_string(), g.to_string()]);
            }
            Ok(r)
        }
    }
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

fn cached_h_sequence(max: u32, deadline: Instant) -> Result<HSequence, Error> {
    let dir = cache_dir();
    let known = dir.as_deref().and_then(cache::load_hn).unwrap_or_default();
    if known.len() >= max as usize {
        return Ok(HSequence::from_values(known[..max as usize].to_vec()));
    }
    let seq = h_sequence_from(HSequence::from_values(known), max, Some(deadline))?;
    if let Some(dir) = dir {
        // A cache that cannot be written is not an error.
        let _ = cache::store_hn(&dir, seq.values());
    }
    Ok(seq)
}

fn cached_asm_ruler(
    n: usize,
    deadline: Instant,
) -> Result<grundylab::closed_forms::AsmRulerTable, Error> {
    let dir = cache_dir();
    if let Some(table) = dir.as_deref().and_then(|d| cache::load_asm_ruler(d, n)) {
        return Ok(table);
    }
    let table = asm_ruler_table(n, Some(deadline))?;
    if let Some(dir) = dir {
        let _ = cache::store_asm_ruler(&dir, &table);
    }
    Ok(table)
}
