use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use subgrad::bounds::{presentation_bound, within_presentation_bound};
use subgrad::finite::io::parse_group_json;
use subgrad::finite::library::{generate, lookup, render, LIBRARY_MAX_ORDER};
use subgrad::finite::FiniteGroup;
use subgrad::fp::tietze::{tietze_simplify_with, TietzeOptions};
use subgrad::fp::{coset_enumerate, parse_subgroup_words, reidemeister_schreier, Presentation};
use subgrad::gradient::{run_sequence, summarize, to_csv, to_json_lines, SequenceSpec};
use subgrad::suites::{product_report, run_suite, schur_report};
use subgrad::witt::{build_witt_table, check_ratio_threshold};
use subgrad::{Caps, Error};

#[derive(Parser)]
#[command(name = "subgrad", version, about = "Generator, relator, multiplier and torsion bounds for subgroups of direct products")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Row limit for coset enumeration.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_cosets: usize,
    /// Largest group order for exhaustive generating-set searches.
    #[arg(long, global = true, default_value_t = 512)]
    brute_force_cap: usize,
    /// Largest group order accepted by the multiplier computation.
    #[arg(long, global = true, default_value_t = 16)]
    homology_cap: usize,
    /// Largest order of a Cayley table built by products.
    #[arg(long, global = true, default_value_t = 4096)]
    table_cap: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Witt numbers and lower central dimension counts.
    Witt {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        /// Threshold for the ratio report, as a fraction such as `1/10`.
        #[arg(long, default_value = "1/10")]
        epsilon: String,
    },
    /// Schur multipliers of library groups or JSON group files.
    Schur {
        /// Library name (`D8`), `order#index`, or a JSON group file.
        #[arg(long, required_unless_present = "max_order")]
        group: Vec<String>,
        /// Every library group up to this order.
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Run a subgroup sequence and report gradient estimates.
    Gradient {
        /// Sequence file (TOML).
        spec: PathBuf,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Generator bounds for all subgroups of `A × B`, or the relator bound
    /// for a group order and generating-set size.
    Bounds {
        #[arg(long, requires = "b", conflicts_with_all = ["order", "generators"])]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, requires = "generators")]
        order: Option<u64>,
        #[arg(long)]
        generators: Option<u64>,
        /// Relator count to compare against the relator bound.
        #[arg(long, requires = "order")]
        relators: Option<u64>,
    },
    /// Coset enumeration and subgroup presentations.
    Present {
        /// Presentation file (`gens:` / `rel:` lines).
        presentation: PathBuf,
        /// Subgroup file (`gen:` lines); the trivial subgroup when absent.
        #[arg(long)]
        subgroup: Option<PathBuf>,
        /// Apply Tietze simplification to the subgroup presentation.
        #[arg(long)]
        simplify: bool,
    },
    /// Regenerate the stored small-group library.
    Smallgroups {
        #[arg(long, default_value_t = LIBRARY_MAX_ORDER)]
        max_order: usize,
    },
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Check,
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn caps(rc: &RunConfig) -> Result<Caps, Failure> {
    let caps = Caps {
        brute_force: rc.brute_force_cap,
        table: rc.table_cap,
        homology: rc.homology_cap,
        max_cosets: rc.max_cosets,
    };
    caps.validate()?;
    Ok(caps)
}

fn emit(rc: &RunConfig, text: &str) -> Outcome {
    match &rc.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn group_arg(key: &str, caps: &Caps) -> Result<(String, FiniteGroup), Failure> {
    if let Some(sg) = lookup(key) {
        return Ok((sg.name.clone(), sg.group.clone()));
    }
    let path = Path::new(key);
    if path.exists() {
        let g = parse_group_json(&read(path)?, caps.table).map_err(|e| Failure::Usage(format!("{key}: {e}")))?;
        let name = g.name().map_or_else(|| key.to_string(), str::to_string);
        return Ok((name, g));
    }
    Err(Failure::Usage(format!("unknown group `{key}`")))
}

fn parse_fraction(s: &str) -> Result<BigRational, Failure> {
    let bad = || Failure::Usage(format!("`{s}` is not a fraction"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn run(cli: Cli) -> Outcome {
    let rc = &cli.run;
    let caps = caps(rc)?;
    match cli.command {
        Command::Witt { p, n_max, epsilon } => {
            let table = build_witt_table(p, n_max)?;
            let report = check_ratio_threshold(&table, &parse_fraction(&epsilon)?)?;
            let pair = |x: &Option<(u64, BigRational)>| x.as_ref().map(|(n, r)| format!("{r} at n={n}")).unwrap_or_default();
            let text = match rc.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let witnesses: Vec<String> = report.witnesses.iter().map(u64::to_string).collect();
                    format!(
                        "# subgrad-witt v1 p={p}\n{}# ratio >= 1 - {}: n in [{}]; max growth {}; growth >= 19/10 from n={}\n",
                        table.to_csv(),
                        report.epsilon,
                        witnesses.join(" "),
                        pair(&report.max_growth),
                        report.growth_settles_at.map_or("-".into(), |n| n.to_string()),
                    )
                }
                Format::Json => {
                    let mut out = String::new();
                    for row in &table.rows {
                        let line = serde_json::json!({
                            "n": row.n,
                            "r": row.r.to_string(),
                            "a": row.a.to_string(),
                            "b": row.b.to_string(),
                            "index_exponent": row.index_exponent.as_ref().map(|e| e.to_string()),
                            "ratio": row.ratio().map(|r| r.to_string()),
                        });
                        out.push_str(&format!("{line}\n"));
                    }
                    out.push_str(&format!(
                        "{}\n",
                        serde_json::json!({
                            "epsilon": report.epsilon.to_string(),
                            "witnesses": report.witnesses,
                            "max_ratio": pair(&report.max_ratio),
                            "max_growth": pair(&report.max_growth),
                            "growth_settles_at": report.growth_settles_at,
                        })
                    ));
                    out
                }
            };
            emit(rc, &text)
        }
        Command::Schur { group, max_order } => {
            let mut groups: Vec<(String, FiniteGroup)> = Vec::new();
            if let Some(m) = max_order {
                if m > LIBRARY_MAX_ORDER {
                    return Err(Error::CapExceeded {
                        what: "small-group library order",
                        size: m,
                        cap: LIBRARY_MAX_ORDER,
                    }
                    .into());
                }
                groups.extend(subgrad::finite::library::groups_up_to(m).map(|sg| (sg.name.clone(), sg.group.clone())));
            }
            for key in &group {
                groups.push(group_arg(key, &caps)?);
            }
            let report = schur_report(&groups, &caps)?;
            emit(rc, &report.to_json_lines())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Verify { suite, max_order } => {
            let report = run_suite(&suite, max_order, &caps)?;
            emit(rc, &report.to_json_lines())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Gradient { spec, n_max } => {
            let text = read(&spec)?;
            let mut seq = SequenceSpec::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", spec.display())))?;
            seq.max_cosets = seq.max_cosets.min(caps.max_cosets);
            if let Some(n) = n_max {
                seq.truncate(n);
            }
            let records = run_sequence(&seq)?;
            let summary = summarize(&records)?;
            let out = match rc.format.unwrap_or(Format::Csv) {
                Format::Csv => format!("{}# {summary}\n", to_csv(&records)),
                Format::Json => format!(
                    "{}{}\n",
                    to_json_lines(&records),
                    serde_json::json!({
                        "summary": summary.to_string(),
                        "rank_gradient_estimate": summary.rank_estimate.to_string(),
                        "torsion_gradient_estimate": format!("{:.12}", summary.torsion_estimate),
                        "hypothesis_met": summary.hypothesis_met,
                        "note": "inf and liminf are both replaced by the minimum over the computed range",
                    })
                ),
            };
            emit(rc, &out)?;
            if summary.betti_consistent {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Bounds {
            a,
            b,
            order,
            generators,
            relators,
        } => {
            if let (Some(a), Some(b)) = (a, b) {
                let (an, ag) = group_arg(&a, &caps)?;
                let (bn, bg) = group_arg(&b, &caps)?;
                let report = product_report(&an, &ag, &bn, &bg, &caps)?;
                emit(rc, &report.to_json_lines())?;
                return if report.passed() { Ok(()) } else { Err(Failure::Check) };
            }
            let (Some(k), Some(t)) = (order, generators) else {
                return Err(Failure::Usage("give either --a and --b, or --order and --generators".into()));
            };
            if k == 0 {
                return Err(Failure::Usage("--order must be positive".into()));
            }
            let bound = presentation_bound(k, t);
            let pass = relators.map(|r| within_presentation_bound(r, k, t));
            let line = serde_json::json!({
                "check": "relator-count-bound",
                "order": k,
                "generators": t,
                "bound": bound.to_string(),
                "relators": relators,
                "pass": pass,
            });
            emit(rc, &format!("{line}\n"))?;
            if pass == Some(false) {
                Err(Failure::Check)
            } else {
                Ok(())
            }
        }
        Command::Present {
            presentation,
            subgroup,
            simplify,
        } => {
            let p = Presentation::parse(&read(&presentation)?).map_err(|e| Failure::Usage(format!("{}: {e}", presentation.display())))?;
            let words = match &subgroup {
                Some(path) => parse_subgroup_words(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => Vec::new(),
            };
            let table = coset_enumerate(&p, &words, caps.max_cosets)?;
            let mut sp = reidemeister_schreier(&table)?;
            if simplify {
                sp = tietze_simplify_with(&sp, TietzeOptions::default());
            }
            let out = format!(
                "# subgrad-presentation v1\n# index: {}\n# abelian invariants: {}\n{sp}",
                table.index(),
                sp.abelian_invariants()
            );
            emit(rc, &out)
        }
        Command::Smallgroups { max_order } => {
            if max_order > LIBRARY_MAX_ORDER {
                return Err(Error::CapExceeded {
                    what: "small-group library order",
                    size: max_order,
                    cap: LIBRARY_MAX_ORDER,
                }
                .into());
            }
            emit(rc, &render(&generate(max_order)))
        }
    }
}
