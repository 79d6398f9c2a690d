//! Batch front end: build codes from plain-text configurations or built-in
//! example IDs, analyze written code files, repair erased symbols, and check
//! the built-in examples against their recorded values.
//!
//! Exit codes: 0 success, 1 validation error (bad flags, configs, files),
//! 2 construction or analysis failure (failing helper sets, degenerate
//! parameters, unrecoverable erasures), 3 reproduction mismatch.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lrc::analysis::{
    message_space_size, parity_check, report, ConstructionReport, DistancePolicy, RecoverySweep,
};
use lrc::catalog::{self, RunStatus};
use lrc::config::{
    build_from_config, distance_policy_from, family_catalog, BuildOutcome, Config,
};
use lrc::engine::{read_code_file, recover_coordinate, write_code_file};
use lrc::gf::Fe;
use lrc::LrcError;

#[derive(Parser)]
#[command(
    name = "lrc",
    version,
    about = "Locally recoverable codes from curves and surfaces: build, analyze, repair, reproduce"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code from a configuration file, write it, and print its report
    Build {
        /// Path to a `key = value` configuration
        config: PathBuf,
        /// Where to write the code file (default: config path with `.code`)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the report as JSON instead of text
        #[arg(long)]
        json: bool,
        /// Override a configuration key, e.g. --set t=5 (repeatable)
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Re-analyze a written code file
    Analyze {
        /// Path to a code file produced by `build`
        code: PathBuf,
        /// Sweep the full message space if it has at most this many elements
        #[arg(long, value_name = "N", conflicts_with = "low_weight")]
        exact_budget: Option<u64>,
        /// Search for dependent column sets up to this size
        #[arg(long, value_name = "W")]
        low_weight: Option<usize>,
        /// Print the report as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Fill erased symbols (written as `?`) of a received word
    Recover {
        /// Path to a code file produced by `build`
        code: PathBuf,
        /// Repair only through this helper partition (1 or 2)
        #[arg(long, value_name = "P")]
        partition: Option<usize>,
        /// The word: n field literals or `?`, as arguments or one quoted string
        #[arg(required = true)]
        word: Vec<String>,
    },
    /// Rebuild built-in examples and check them against their recorded values
    Reproduce {
        /// An example id, an id prefix (e.g. `table1`), `all`, or `list`
        id: String,
    },
    /// List the built-in construction families
    Families,
}

fn validation_exit(e: &LrcError) -> u8 {
    match e {
        LrcError::Field(_)
        | LrcError::Literal(_)
        | LrcError::Parse(_)
        | LrcError::Config(_)
        | LrcError::Io(_) => 1,
        _ => 2,
    }
}

fn fail(e: &LrcError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(validation_exit(e))
}

fn fail_with(msg: &str, code: u8) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    // Restore the default SIGPIPE disposition so piping stdout into a
    // consumer that exits early (e.g. `head`) ends the process quietly
    // instead of panicking on the closed pipe.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    match Cli::parse().cmd {
        Cmd::Build {
            config,
            out,
            json,
            set,
        } => cmd_build(&config, out, json, &set),
        Cmd::Analyze {
            code,
            exact_budget,
            low_weight,
            json,
        } => cmd_analyze(&code, exact_budget, low_weight, json),
        Cmd::Recover {
            code,
            partition,
            word,
        } => cmd_recover(&code, partition, &word),
        Cmd::Reproduce { id } => cmd_reproduce(&id),
        Cmd::Families => cmd_families(),
    }
}

fn print_report(rep: &ConstructionReport, json: bool) {
    if json {
        println!("{}", rep.render_json());
    } else {
        print!("{}", rep.render_text());
    }
}

fn cmd_build(config: &Path, out: Option<PathBuf>, json: bool, set: &[String]) -> ExitCode {
    let text = match std::fs::read_to_string(config) {
        Ok(t) => t,
        Err(e) => return fail(&e.into()),
    };
    let mut cfg = match Config::parse(&text) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    for s in set {
        let Some((k, v)) = s.split_once('=') else {
            return fail_with(&format!("--set expects KEY=VALUE, got {s:?}"), 1);
        };
        cfg.set_override(k.trim(), v.trim());
    }

    let outcome: BuildOutcome = match build_from_config(&cfg) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    for n in &outcome.notes {
        println!("note: {n}");
    }

    let Some(code) = outcome.code else {
        // `stage = cover`: structure checks only, nothing to write.
        let failing = outcome.facts.get("failing_sets").copied().unwrap_or(0);
        println!(
            "cover stage: {} helper sets over {} coordinates, {} failing",
            outcome.facts.get("fibers").copied().unwrap_or(-1),
            outcome.facts.get("n").copied().unwrap_or(-1),
            failing,
        );
        return if failing == 0 {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(2)
        };
    };

    // The config may pin a distance policy; otherwise pick automatically
    // (exhaustive when the message space is affordable, low-weight search
    // else), the same default `analyze` uses on the written file.
    let policy = if cfg.get("distance.policy").is_some() {
        match distance_policy_from(&cfg) {
            Ok(p) => p,
            Err(e) => return fail(&e),
        }
    } else {
        DistancePolicy::default()
    };
    let rep = match report(&code, policy, RecoverySweep::Random(100)) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };

    let out_path = out.unwrap_or_else(|| config.with_extension("code"));
    if let Err(e) = write_code_file(&code, &out_path) {
        return fail(&e);
    }
    println!("wrote {}", out_path.display());
    print_report(&rep, json);

    if rep.locality_verdict == "pass" && code.designed_distance >= 1 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn cmd_analyze(
    path: &Path,
    exact_budget: Option<u64>,
    low_weight: Option<usize>,
    json: bool,
) -> ExitCode {
    let code = match read_code_file(path) {
        Ok(c) => c,
        // A file that cannot be read or parsed is an input problem.
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let policy = match (exact_budget, low_weight) {
        (Some(budget), None) => {
            let affordable = message_space_size(code.field.order(), code.k)
                .map(|s| s <= budget)
                .unwrap_or(false);
            if affordable {
                DistancePolicy::Exhaustive { budget }
            } else {
                eprintln!(
                    "note: message space exceeds the budget {budget}; reporting the designed bound only"
                );
                DistancePolicy::DesignedOnly
            }
        }
        (None, Some(w)) => DistancePolicy::LowWeight { w_max: w },
        // Same default as `build`, so analyzing a freshly written file
        // reproduces the build-time report.
        (None, None) => DistancePolicy::default(),
        (Some(_), Some(_)) => unreachable!("clap rejects conflicting flags"),
    };
    match report(&code, policy, RecoverySweep::Random(100)) {
        Ok(rep) => {
            print_report(&rep, json);
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn cmd_recover(path: &Path, partition: Option<usize>, word_args: &[String]) -> ExitCode {
    let code = match read_code_file(path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let field = code.field.clone();

    let tokens: Vec<&str> = word_args
        .iter()
        .flat_map(|a| a.split_whitespace())
        .collect();
    if tokens.len() != code.n {
        return fail_with(
            &format!("expected {} symbols, got {}", code.n, tokens.len()),
            1,
        );
    }
    let mut word: Vec<Option<Fe>> = Vec::with_capacity(code.n);
    for t in &tokens {
        if *t == "?" {
            word.push(None);
        } else {
            match field.parse_elem(t) {
                Ok(v) => word.push(Some(v)),
                Err(e) => return fail(&e),
            }
        }
    }

    let allowed: Vec<usize> = match partition {
        None => (0..code.partitions.len()).collect(),
        Some(p) if p >= 1 && p <= code.partitions.len() => vec![p - 1],
        Some(p) => {
            return fail_with(
                &format!(
                    "partition {p} does not exist; this code has {}",
                    code.partitions.len()
                ),
                1,
            )
        }
    };

    // Peel: repair any erasure that is the only one in some helper set of an
    // allowed partition, repeat until done or stuck.
    loop {
        let erased: Vec<usize> = (0..code.n).filter(|&c| word[c].is_none()).collect();
        if erased.is_empty() {
            break;
        }
        let mut progressed = false;
        for col in erased {
            for &pi in &allowed {
                if let Ok(v) = recover_coordinate(&code, &word, col, pi) {
                    word[col] = Some(v);
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            return fail_with(
                "unrecoverable erasure pattern: every remaining erasure shares each of its helper sets with another erasure",
                2,
            );
        }
    }

    let filled: Vec<Fe> = word.into_iter().map(|v| v.unwrap()).collect();
    // Never emit an unverified fill: the completed word must satisfy every
    // parity constraint of the code.
    let h = match parity_check(&code) {
        Ok(h) => h,
        Err(e) => return fail(&e),
    };
    for row in &h {
        let mut acc = Fe(0);
        for (hv, wv) in row.iter().zip(&filled) {
            acc = field.add(acc, field.mul(*hv, *wv));
        }
        if acc != Fe(0) {
            return fail_with(
                "the filled word violates a parity check: the input was not a codeword",
                2,
            );
        }
    }

    let rendered: Vec<String> = filled.iter().map(|&v| field.format_elem(v)).collect();
    println!("{}", rendered.join(" "));
    ExitCode::SUCCESS
}

fn cmd_reproduce(id: &str) -> ExitCode {
    if id == "list" {
        for e in catalog::entries() {
            println!("{:<22} {}", e.id, e.title);
        }
        return ExitCode::SUCCESS;
    }
    let selected = catalog::select(id);
    if selected.is_empty() {
        return fail_with(&format!("unknown example id {id:?}; try `lrc reproduce list`"), 1);
    }
    let start = std::time::Instant::now();
    let (mut passed, mut documented, mut failed) = (0usize, 0usize, 0usize);
    for entry in &selected {
        let outcome = catalog::run_entry(entry);
        print!("{}", outcome.render());
        match outcome.status {
            RunStatus::Pass => passed += 1,
            RunStatus::DiscrepancyDocumented => documented += 1,
            RunStatus::Fail => failed += 1,
        }
    }
    println!(
        "{} passed, {} documented discrepancies, {} failed ({} entries)",
        passed,
        documented,
        failed,
        selected.len(),
    );
    // Wall-clock time goes to stderr so stdout stays identical across runs.
    eprintln!("elapsed: {:.1} s", start.elapsed().as_secs_f64());
    if failed > 0 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_families() -> ExitCode {
    println!("built-in construction families (the `family` key of a configuration):\n");
    for (name, desc) in family_catalog() {
        println!("  {name:<20} {desc}");
    }
    println!("\nbuilt-in examples: `lrc reproduce list`");
    ExitCode::SUCCESS
}
