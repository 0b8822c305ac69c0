//! Command-line surface for the Boolean-register instruction-set
//! analysis: classification, bounds, sweeps, rewriting, and the full
//! result-replay suite.
//!
//! Exit codes: 0 success, 1 check or verdict failure, 2 usage error,
//! 3 I/O error. All output is deterministic for a fixed configuration.

use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pgabr_core::{
    canonical_base, equivalence_classes, minimal_method_sets, parse_sequence, rewrite_psi_prime,
    strict_bound, sweep_subsets, theorem3_fixtures, ClassReport, InstructionSeq, MethodSet,
    SweepReport, TranslationMap, Verdict, VerdictReport,
};
use pgabr_core::testgen::DEFAULT_SEED;
use pgabr_core::verify;

#[derive(Parser)]
#[command(name = "pgabr", version, about = "Boolean-register instruction-set analysis")]
struct Cli {
    /// Maximum witness length searched before falling back to
    /// certificates.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=16))]
    kmax: u64,

    /// Worker threads for the sweep (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the 16 effect-equivalence classes of single-focus
    /// instructions.
    Classify,
    /// Print the 256 minimal method sets.
    MinimalSets,
    /// Compute the strict size bound for one method set.
    Bound {
        /// Comma-separated method codes, e.g. ff,tt,ii.
        #[arg(long)]
        methods: String,
    },
    /// Classify every non-empty subset of a base method set.
    Sweep {
        /// "canonical" or comma-separated method codes.
        #[arg(long, default_value = "canonical")]
        base: String,
    },
    /// Translate an instruction sequence through a translation map.
    Rewrite {
        /// Built-in map id (part1 .. part5, optionally part<N>-<i> for
        /// the i-th alternative) or a path to a map JSON file.
        #[arg(long)]
        map: String,
        /// Sequence file; stdin when omitted.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Re-derive every published claim; exit 0 iff all checks pass.
    Verify,
}

enum Failure {
    /// A check or verdict did not come out decided/passing (exit 1).
    Check(String),
    /// Bad arguments or malformed user input (exit 2).
    Usage(String),
    /// Filesystem trouble (exit 3).
    Io(String),
}

impl Failure {
    fn io(context: &str, e: std::io::Error) -> Failure {
        Failure::Io(format!("{context}: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        // Sweep order is fixed by construction, so the pool size only
        // affects speed.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let kmax = cli.kmax as usize;
    match &cli.command {
        Command::Classify => cmd_classify(cli),
        Command::MinimalSets => cmd_minimal_sets(cli),
        Command::Bound { methods } => cmd_bound(cli, methods, kmax),
        Command::Sweep { base } => cmd_sweep(cli, base, kmax),
        Command::Rewrite { map, input } => cmd_rewrite(cli, map, input.as_deref()),
        Command::Verify => cmd_verify(cli, kmax),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::io(&format!("writing {}", path.display()), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_methods(codes: &str) -> Result<MethodSet, Failure> {
    MethodSet::parse_codes(codes).map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_classify(cli: &Cli) -> Result<(), Failure> {
    let classes = equivalence_classes(&pgabr_core::analysis_focus());
    let text = if cli.json {
        let reports: Vec<ClassReport> = classes.iter().map(ClassReport::from).collect();
        pretty(&reports)
    } else {
        classes
            .iter()
            .map(|c| {
                let members: Vec<String> = c.members.iter().map(|m| m.to_string()).collect();
                format!("{}: {}\n", c.representative, members.join(" "))
            })
            .collect()
    };
    emit(cli, &text)
}

fn cmd_minimal_sets(cli: &Cli) -> Result<(), Failure> {
    let sets = minimal_method_sets();
    let text = if cli.json {
        let codes: Vec<Vec<String>> = sets.iter().map(|s| s.codes()).collect();
        pretty(&codes)
    } else {
        sets.iter().map(|s| format!("{s}\n")).collect()
    };
    emit(cli, &text)
}

fn cmd_bound(cli: &Cli, methods: &str, kmax: usize) -> Result<(), Failure> {
    let m = parse_methods(methods)?;
    let verdict = strict_bound(m, kmax);
    let report = VerdictReport::from(&verdict);
    let text = if cli.json {
        pretty(&report)
    } else {
        match &report {
            VerdictReport::Bound { k, witnesses } => {
                let mut s = format!("{m}: strictly {k}-size-bounded functionally complete\n");
                for (target, witness) in witnesses {
                    s.push_str(&format!("  {target}  <=  {witness}\n"));
                }
                s
            }
            VerdictReport::Incomplete { target, certificate } => format!(
                "{m}: not functionally complete; {target} is unrealizable ({})\n",
                serde_json::to_string(certificate).expect("certificate serializes"),
            ),
            VerdictReport::Unknown { kmax, .. } => {
                format!("{m}: undecided up to length {kmax}\n")
            }
        }
    };
    emit(cli, &text)?;
    match verdict {
        Verdict::UnknownBeyond { kmax, .. } => Err(Failure::Check(format!(
            "no bound and no certificate up to length {kmax}"
        ))),
        _ => Ok(()),
    }
}

fn cmd_sweep(cli: &Cli, base: &str, kmax: usize) -> Result<(), Failure> {
    let base = if base == "canonical" { canonical_base() } else { parse_methods(base)? };
    let entries = sweep_subsets(base, kmax);
    let report = SweepReport::new(base, kmax, &entries);
    let csv = cli
        .out
        .as_deref()
        .and_then(Path::extension)
        .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"));
    emit(cli, &if csv { report.to_csv() } else { report.to_json() })?;
    if report.unresolved.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} subsets left unresolved at kmax {kmax}",
            report.unresolved.len()
        )))
    }
}

fn load_map(id: &str) -> Result<TranslationMap, Failure> {
    if let Some(rest) = id.strip_prefix("part") {
        let (part, index) = match rest.split_once('-') {
            Some((p, i)) => (p, Some(i)),
            None => (rest, None),
        };
        let part: u8 = part
            .parse()
            .map_err(|_| Failure::Usage(format!("bad map id {id}")))?;
        let maps = theorem3_fixtures();
        let alternatives = maps
            .get(&part)
            .ok_or_else(|| Failure::Usage(format!("no built-in map for part {part}")))?;
        let index: usize = match index {
            None => 0,
            Some(i) => i
                .parse::<usize>()
                .ok()
                .and_then(|i| i.checked_sub(1))
                .ok_or_else(|| Failure::Usage(format!("bad map index in {id}")))?,
        };
        return alternatives
            .get(index)
            .cloned()
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "part {part} has {} alternatives, index {} requested",
                    alternatives.len(),
                    index + 1
                ))
            });
    }
    let text = std::fs::read_to_string(id).map_err(|e| Failure::io(&format!("reading {id}"), e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad map file {id}: {e}")))
}

fn cmd_rewrite(cli: &Cli, map: &str, input: Option<&Path>) -> Result<(), Failure> {
    let psi = load_map(map)?;
    if !psi.is_identity_on_codomain() {
        return Err(Failure::Usage(format!(
            "map {map} rewrites instructions inside its own images; \
             splicing through it is unsound"
        )));
    }
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::io(&format!("reading {}", path.display()), e))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::io("reading stdin", e))?;
            buf
        }
    };
    let seq: InstructionSeq =
        parse_sequence(text.trim()).map_err(|e| Failure::Usage(e.to_string()))?;
    let rewritten =
        rewrite_psi_prime(&seq, &psi).map_err(|e| Failure::Check(e.to_string()))?;
    emit(cli, &format!("{rewritten}\n"))
}

fn cmd_verify(cli: &Cli, kmax: usize) -> Result<(), Failure> {
    let checks = verify::run_all(cli.seed, kmax);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let text = if cli.json {
        pretty(&checks)
    } else {
        let mut s = String::new();
        for c in &checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            s.push_str(&format!("[{mark}] {}: {}\n", c.id, c.detail));
        }
        s.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
        s
    };
    emit(cli, &text)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failed} checks failed")))
    }
}
