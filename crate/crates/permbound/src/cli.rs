//! Command-line surface.
//!
//! Exit codes: 0 success, 1 usage, IO or parse errors (including degrees above
//! the exhaustive cap), 2 a failed bound check or an infeasible construction.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use permbound_core::bounds::{analyze, AnalysisConfig};
use permbound_core::construct::{
    soluble_transitive_alt, sylow2_alt_tower, two_orbit_pprime, Construction, TwoOrbitOutcome,
};
use permbound_core::enumerate::EnumerateOptions;
use permbound_core::series::DEFAULT_ELEMENT_CAP;

use crate::catalog::{cache_dir_from_env, load_or_enumerate, parse_mode, write_catalog};
use crate::groupfile;
use crate::harness::{write_ftable_csv, Harness};
use crate::report::{render_check, render_text, ConstructionJson, GroupReport, InfeasibilityJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Soluble transitive subgroup of Alt(n).
    SolubleAlt,
    /// Soluble subgroup with at most two orbits of p'-length.
    TwoOrbit,
    /// Sylow 2-subgroup of Alt(n), n a power of two.
    Sylow2,
}

#[derive(Parser, Debug)]
#[command(
    name = "permbound",
    version,
    about = "Permutation-group engine and bound verification harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct Common {
    /// Seed for randomized rank search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Element enumeration cap.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    element_cap: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one group file.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check on every catalog group of the given degrees.
    Verify {
        /// A degree (`6`) or a range (`2..7`).
        #[arg(long)]
        degree: Option<String>,
        /// Largest degree; the range starts at `--degree` or 2.
        #[arg(long)]
        max: Option<usize>,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the transitive groups of one degree.
    Enumerate {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// Allow the multi-hour exhaustive run at degree 8.
        #[arg(long)]
        allow_long: bool,
        /// Directory for the group files and index.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build a witness group.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<u64>,
        /// Require the witness to lie in Alt(n).
        #[arg(long)]
        alt: bool,
        /// Directory for the group file and certificate.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The f(n) table for degrees 2..=max.
    Ftable {
        #[arg(long)]
        max: usize,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Common {
    fn config(&self) -> Result<AnalysisConfig> {
        if self.element_cap == 0 {
            bail!("--element-cap must be positive");
        }
        Ok(AnalysisConfig {
            element_cap: self.element_cap,
            seed: self.seed,
            ..AnalysisConfig::default()
        })
    }
}

/// Parses `6`, `2..7`, `2..=7` or `2-7` (all inclusive).
pub fn parse_degrees(text: &str) -> Result<RangeInclusive<usize>> {
    let t = text.trim();
    let split = t
        .split_once("..=")
        .or_else(|| t.split_once(".."))
        .or_else(|| t.split_once('-'));
    let (lo, hi) = match split {
        Some((a, b)) => (a.trim().parse()?, b.trim().parse()?),
        None => {
            let n = t.parse()?;
            (n, n)
        }
    };
    if lo > hi {
        bail!("empty degree range {text:?}");
    }
    Ok(lo..=hi)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).context("writing output"),
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn reject(format: Format, allowed: &[Format]) -> Result<()> {
    if !allowed.contains(&format) {
        bail!("--format {format:?} not available for this command");
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Analyze {
            file,
            common,
            format,
            out: path,
        } => {
            reject(format, &[Format::Json, Format::Text])?;
            let cfg = common.config()?;
            let group = groupfile::read(&file)?;
            let analysis = analyze(&group, &cfg)?;
            let name = file
                .file_stem()
                .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            let report = GroupReport::new(&name, &group, &analysis, &cfg);
            let text = match format {
                Format::Json => json(&report)?,
                _ => render_text(&report),
            };
            emit(out, path.as_deref(), &text)?;
            Ok(if report.has_violation() {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            })
        }
        Command::Verify {
            degree,
            max,
            mode,
            common,
            format,
            out: path,
        } => {
            reject(format, &[Format::Json, Format::Text])?;
            let range = match (degree.as_deref().map(parse_degrees).transpose()?, max) {
                (Some(r), None) => r,
                (Some(r), Some(m)) => *r.start()..=m,
                (None, Some(m)) => 2..=m,
                (None, None) => bail!("verify needs --degree or --max"),
            };
            let harness = Harness {
                cfg: common.config()?,
                mode: parse_mode(&mode)?,
                jobs: common.jobs,
                cache: cache_dir_from_env(),
            };
            let report = harness.verify(range)?;
            let text = match format {
                Format::Json => json(&report)?,
                _ => {
                    let mut s = String::new();
                    for d in &report.degrees {
                        s += &format!(
                            "degree {}: {} groups, {} checks, {} violations, {} upper-bound, {} inconclusive, {} skipped\n",
                            d.degree, d.groups, d.checks, d.violations, d.upper_bound_checks, d.inconclusive, d.skipped
                        );
                    }
                    s
                }
            };
            emit(out, path.as_deref(), &text)?;
            if report.all_hold() {
                return Ok(EXIT_OK);
            }
            for (g, c) in report.violations() {
                let mut line = format!("violation in {}:\n", g.group);
                render_check(&mut line, c);
                eprint!("{line}");
            }
            Ok(EXIT_VIOLATION)
        }
        Command::Enumerate {
            degree,
            mode,
            allow_long,
            out: dir,
            format,
        } => {
            reject(format, &[Format::Json, Format::Text])?;
            let opts = EnumerateOptions {
                mode: parse_mode(&mode)?,
                allow_degree_8: allow_long,
                ..EnumerateOptions::default()
            };
            let cat = load_or_enumerate(degree, &opts, cache_dir_from_env().as_deref())?;
            if let Some(d) = &dir {
                write_catalog(&cat, d)?;
            }
            let text = match format {
                Format::Json => {
                    let rows: Vec<serde_json::Value> = cat
                        .entries
                        .iter()
                        .map(|e| {
                            serde_json::json!({
                                "id": e.id(),
                                "order": e.order.to_string(),
                                "generators": e.group.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    json(&serde_json::json!({
                        "schema_version": crate::report::SCHEMA_VERSION,
                        "degree": cat.degree,
                        "mode": cat.mode.as_str(),
                        "count": cat.entries.len(),
                        "groups": rows,
                    }))?
                }
                _ => {
                    let mut s = format!(
                        "degree {}: {} transitive groups ({})\n",
                        cat.degree,
                        cat.entries.len(),
                        cat.mode.as_str()
                    );
                    for e in &cat.entries {
                        let gens: Vec<String> = e
                            .group
                            .generators()
                            .iter()
                            .map(ToString::to_string)
                            .collect();
                        s += &format!("{:<6} order {:<6} {}\n", e.id(), e.order, gens.join(", "));
                    }
                    s
                }
            };
            emit(out, None, &text)?;
            Ok(EXIT_OK)
        }
        Command::Construct {
            kind,
            n,
            p,
            alt,
            out: dir,
            format,
        } => {
            reject(format, &[Format::Json, Format::Text])?;
            construct(kind, n, p, alt, dir.as_deref(), format, out)
        }
        Command::Ftable {
            max,
            mode,
            common,
            format,
            out: path,
        } => {
            if max < 2 {
                bail!("--max must be at least 2");
            }
            let harness = Harness {
                cfg: common.config()?,
                mode: parse_mode(&mode)?,
                jobs: common.jobs,
                cache: cache_dir_from_env(),
            };
            let rows = harness.ftable(2..=max)?;
            let text = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_ftable_csv(&rows, &mut buf)?;
                    String::from_utf8(buf)?
                }
                Format::Json => json(&rows)?,
                Format::Text => {
                    let mut s = String::new();
                    for r in &rows {
                        s += &format!(
                            "n={} f={:.6} f/n^2={:.6} witness={} d={} (randomized {}..={}) order={}\n",
                            r.n, r.f, r.f_over_n2, r.witness, r.witness_d_exhaustive,
                            r.witness_d_randomized[0], r.witness_d_randomized[1], r.witness_order
                        );
                    }
                    s
                }
            };
            emit(out, path.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
    }
}

fn construct(
    kind: Kind,
    n: usize,
    p: Option<u64>,
    alt: bool,
    dir: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let (name, stem, built): (&str, String, Construction) = match kind {
        Kind::SolubleAlt => (
            "soluble-alt",
            format!("soluble-alt-{n}"),
            soluble_transitive_alt(n)?,
        ),
        Kind::Sylow2 => {
            if !n.is_power_of_two() || n < 2 {
                bail!("sylow2 needs a power of two n >= 2");
            }
            let g = sylow2_alt_tower(n.trailing_zeros())?;
            let c = Construction {
                group: g,
                strategy: permbound_core::construct::Strategy::Paper,
                uses_two_mod_four_gap: false,
            };
            ("sylow2", format!("sylow2-{n}"), c)
        }
        Kind::TwoOrbit => {
            let p = p.context("two-orbit needs --p")?;
            if !permbound_core::numeric::is_prime(p) {
                bail!("--p {p} is not prime");
            }
            let stem = format!("two-orbit-{n}-p{p}{}", if alt { "-alt" } else { "" });
            match two_orbit_pprime(n, p, alt)? {
                TwoOrbitOutcome::Witness(c) => ("two-orbit", stem, c),
                TwoOrbitOutcome::Infeasible(inf) => {
                    let cert = InfeasibilityJson::from(&inf);
                    let text = json(&cert)?;
                    if let Some(d) = dir {
                        fs::create_dir_all(d)?;
                        fs::write(d.join(format!("{stem}.infeasible.json")), &text)?;
                    }
                    emit(out, None, &text)?;
                    eprintln!("no witness exists for n={n}, p={p}, alt={alt}");
                    return Ok(EXIT_VIOLATION);
                }
            }
        }
    };
    let (p, in_alt) = match kind {
        Kind::TwoOrbit => (p, Some(alt)),
        _ => (None, None),
    };
    let cert = ConstructionJson::new(name, n, p, in_alt, &built);
    let comment = format!("{name} n={n}, strategy {}", cert.strategy);
    if let Some(d) = dir {
        fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
        groupfile::write(&d.join(format!("{stem}.grp")), &built.group, Some(&comment))?;
        fs::write(d.join(format!("{stem}.json")), json(&cert)?)?;
    }
    let text = match format {
        Format::Json => json(&cert)?,
        _ => {
            let mut s = format!("strategy: {}\n", cert.strategy);
            if cert.uses_two_mod_four_gap {
                s += "note: n = 2 mod 4, tower recipe does not apply\n";
            }
            s += &format!(
                "order {}, orbits {:?}, soluble {}, signs {:?}, verified {}\n",
                cert.order, cert.orbit_lengths, cert.soluble, cert.generator_signs, cert.verified
            );
            s + &groupfile::render(&built.group, Some(&comment))
        }
    };
    emit(out, None, &text)?;
    Ok(if cert.verified {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}
