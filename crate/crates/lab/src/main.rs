use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};

use oddaut_core::FieldSpec;
use oddaut_lab::config::{ExperimentConfig, SearchFamily};
use oddaut_lab::experiments::{self, SearchParams};
use oddaut_lab::report::Reporter;

/// Exact experiments on the parity of polynomial automorphisms of F_q^n.
///
/// Records go to stdout as JSONL, commentary to stderr.  Exit status 0
/// means the run finished (no witness), 2 means an odd automorphism with
/// a formally verified inverse was found, 1 means an error.
#[derive(Parser)]
#[command(name = "oddaut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parity, fixed points and cycle structure of one map.
    Parity(ParityArgs),
    /// Formal verification that two maps are mutually inverse.
    VerifyInverse(VerifyArgs),
    /// Order of the group the tame alphabet generates on the points.
    TheoremCheck(TheoremArgs),
    /// Seeded search for an odd automorphism with a verified inverse.
    Search(SearchArgs),
    /// Parity of a variable-fixing map against its slice parities.
    SliceCheck(SliceArgs),
}

#[derive(Args)]
struct Common {
    /// Field designation, e.g. `GF(4)` or `GF(2^3)`.
    #[arg(long)]
    field: Option<String>,
    /// Modulus coefficients `a0,a1,...,am`, constant term first,
    /// overriding the built-in default.
    #[arg(long = "mod", value_name = "COEFFS")]
    modulus: Option<String>,
    /// Number of variables.
    #[arg(long)]
    n: Option<usize>,
    /// JSON config supplying defaults for the other flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Append records to this file as well as stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ParityArgs {
    #[command(flatten)]
    common: Common,
    /// Map text, coordinates separated by `;`.
    #[arg(long)]
    map: Option<String>,
    /// File containing the map text.
    #[arg(long)]
    map_file: Option<PathBuf>,
    /// Claimed inverse, verified formally when present.
    #[arg(long)]
    inverse: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    map_file: Option<PathBuf>,
    /// The claimed inverse.
    #[arg(long)]
    inverse: String,
}

#[derive(Args)]
struct TheoremArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    /// Letters per sampled word.
    #[arg(long)]
    length: Option<usize>,
    /// Degree bound for elementary letters.
    #[arg(long)]
    degree: Option<u32>,
    /// Sampling family: tame, conjugated-nagata or candidates.
    #[arg(long)]
    family: Option<String>,
    /// Candidate file of `map<TAB>inverse` lines for the candidates
    /// family.
    #[arg(long)]
    candidates: Option<PathBuf>,
}

#[derive(Args)]
struct SliceArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    map_file: Option<PathBuf>,
    /// Coordinate to slice on, 1-based; defaults to the last.
    #[arg(long)]
    fix: Option<usize>,
}

struct Resolved {
    field: FieldSpec,
    n: usize,
    out: Option<PathBuf>,
    config: Option<ExperimentConfig>,
}

fn resolve_common(common: &Common, expected: &str) -> Result<Resolved> {
    let config = match &common.config {
        None => None,
        Some(path) => {
            let c = ExperimentConfig::load(path)?;
            if let Some(exp) = &c.experiment {
                ensure!(
                    exp == expected,
                    "config is for experiment `{exp}`, but the subcommand is `{expected}`"
                );
            }
            Some(c)
        }
    };
    let field = match &common.field {
        Some(designation) => {
            let base = FieldSpec::parse_designation(designation)?;
            match &common.modulus {
                None => base,
                Some(csv) => {
                    let coeffs: Vec<u32> = csv
                        .split(',')
                        .map(|c| c.trim().parse())
                        .collect::<std::result::Result<_, _>>()
                        .context("modulus coefficients must be integers")?;
                    FieldSpec::new(base.p(), base.m(), Some(&coeffs))?
                }
            }
        }
        None => {
            ensure!(common.modulus.is_none(), "--mod requires --field");
            match config.as_ref().and_then(|c| c.field.as_ref()) {
                Some(fc) => FieldSpec::new(fc.p, fc.m, fc.modulus.as_deref())?,
                None => bail!("missing --field (or a config that sets one)"),
            }
        }
    };
    let n = common
        .n
        .or(config.as_ref().and_then(|c| c.n))
        .context("missing --n (or a config that sets it)")?;
    let out = common.out.clone().or_else(|| config.as_ref().and_then(|c| c.output.clone()));
    Ok(Resolved { field, n, out, config })
}

fn map_text(inline: &Option<String>, file: &Option<PathBuf>) -> Result<String> {
    match (inline, file) {
        (Some(_), Some(_)) => bail!("give either --map or --map-file, not both"),
        (Some(t), None) => Ok(t.clone()),
        (None, Some(p)) => {
            let raw = std::fs::read_to_string(p)
                .with_context(|| format!("reading map file {}", p.display()))?;
            // a file may wrap the map over several lines
            Ok(raw.split_whitespace().collect::<Vec<_>>().join(" "))
        }
        (None, None) => bail!("missing --map (or --map-file)"),
    }
}

/// Runs one subcommand; `Ok(true)` means a witness was found.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Parity(args) => {
            let r = resolve_common(&args.common, "parity")?;
            let text = map_text(&args.map, &args.map_file)?;
            let out = experiments::run_parity(&r.field, r.n, &text, args.inverse.as_deref())?;
            eprintln!("map over {}, n = {}: {}", r.field.designation(), r.n, out.record.map.as_deref().unwrap_or(""));
            eprintln!(
                "parity {}, {} fixed points, cycles {}",
                out.parity, out.fixed_points, out.cycles
            );
            match out.inverse_verified {
                None => eprintln!(
                    "note: no inverse supplied; bijectivity alone does not make a polynomial map an automorphism"
                ),
                Some(true) => eprintln!("inverse verified formally"),
                Some(false) => eprintln!("note: the claimed inverse FAILED formal verification"),
            }
            if out.witness {
                eprintln!("WITNESS: odd parity with a formally verified inverse");
            }
            Reporter::new(r.out.as_deref())?.emit(&out.record)?;
            Ok(out.witness)
        }
        Command::VerifyInverse(args) => {
            let r = resolve_common(&args.common, "verify-inverse")?;
            let text = map_text(&args.map, &args.map_file)?;
            let out = experiments::run_verify_inverse(&r.field, r.n, &text, &args.inverse)?;
            eprintln!("F o G = {}", out.forward);
            eprintln!("G o F = {}", out.backward);
            eprintln!("formal inverse pair: {}", out.formal);
            if !out.formal && out.functional {
                eprintln!(
                    "note: the compositions fix every point but are not formally the identity"
                );
            }
            Reporter::new(r.out.as_deref())?.emit(&out.record)?;
            Ok(false)
        }
        Command::TheoremCheck(args) => {
            let r = resolve_common(&args.common, "theorem-check")?;
            let out = experiments::run_theorem_check(&r.field, r.n)?;
            eprintln!(
                "alphabet of {} generators over {}, n = {}, {} points; all formally verified",
                out.alphabet_size,
                r.field.designation(),
                r.n,
                out.points
            );
            let odd: Vec<&str> = out
                .generator_signs
                .iter()
                .filter(|(_, s)| !s.is_even())
                .map(|(m, _)| m.as_str())
                .collect();
            eprintln!(
                "generator signs: {} even, {} odd",
                out.generator_signs.len() - odd.len(),
                odd.len()
            );
            for m in &odd {
                eprintln!("  odd generator: {m}");
            }
            eprintln!("group order: {}", out.order);
            eprintln!("Sym({}):     {}", out.points, out.symmetric_order);
            eprintln!("Alt({}):     {}", out.points, out.alternating_order);
            let verdict = if out.matches_symmetric {
                format!("the alphabet generates the full symmetric group on {} points", out.points)
            } else if out.matches_alternating {
                format!("the alphabet generates the alternating group on {} points", out.points)
            } else {
                "the alphabet generates a proper subgroup of unexpected order".to_string()
            };
            eprintln!("verdict: {verdict}");
            Reporter::new(r.out.as_deref())?.emit(&out.record)?;
            Ok(false)
        }
        Command::Search(args) => {
            let r = resolve_common(&args.common, "search")?;
            let cfg = r.config.as_ref();
            let family = match &args.family {
                Some(s) => s.parse::<SearchFamily>()?,
                None => cfg.and_then(|c| c.family).unwrap_or(SearchFamily::Tame),
            };
            let params = SearchParams {
                field: r.field.clone(),
                n: r.n,
                family,
                samples: args.samples.or(cfg.and_then(|c| c.samples)).unwrap_or(100),
                seed: args.seed.or(cfg.and_then(|c| c.seed)).unwrap_or(0),
                word_length: args.length.or(cfg.and_then(|c| c.word_length)).unwrap_or(6),
                degree_bound: args.degree.or(cfg.and_then(|c| c.degree_bound)).unwrap_or(2),
                candidates: args.candidates.clone().or_else(|| cfg.and_then(|c| c.candidates.clone())),
            };
            let mut reporter = Reporter::new(r.out.as_deref())?;
            let outcome = experiments::run_search(&params, |rec| reporter.emit(rec))?;
            match &outcome.witness {
                Some(w) => {
                    eprintln!(
                        "WITNESS after {} samples: {}",
                        outcome.samples_run,
                        w.map.as_deref().unwrap_or("")
                    );
                    Ok(true)
                }
                None => {
                    eprintln!("no witness among {} samples", outcome.samples_run);
                    Ok(false)
                }
            }
        }
        Command::SliceCheck(args) => {
            let r = resolve_common(&args.common, "slice-check")?;
            let text = map_text(&args.map, &args.map_file)?;
            let fix = match args.fix {
                Some(0) => bail!("--fix is 1-based"),
                Some(k) => k - 1,
                None => r.n - 1,
            };
            let out = experiments::run_slice_check(&r.field, r.n, &text, fix)?;
            eprintln!(
                "slicing X{} over {}: total parity {}",
                fix + 1,
                r.field.designation(),
                out.total
            );
            for (value, sign) in &out.slices {
                eprintln!("  slice X{} = {value}: {sign}", fix + 1);
            }
            eprintln!("product of slice parities: {} (total {})", out.product, out.total);
            if r.field.p() == 2 && r.field.q() >= 4 {
                eprintln!(
                    "all slices even: {} (characteristic 2, q >= 4)",
                    out.all_slices_even
                );
            }
            Reporter::new(r.out.as_deref())?.emit(&out.record)?;
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::from(2),
        Ok(false) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
