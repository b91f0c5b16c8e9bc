//! plovlab: exact growth invariants from the command line.
//!
//! Every report is byte-deterministic for a fixed input and seed: the math
//! is exact rational arithmetic and all orderings are fixed. Exit status is
//! 0 on success, 1 on input problems (including non-quasi-unipotent
//! actions, which get a JSON result with the witness factor), and 2 when a
//! check that is supposed to be a theorem fails.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use plovlab_core::analysis::{analyze, AnalysisOptions, AnalysisReport};
use plovlab_core::model::file::{load_auto, load_model};
use plovlab_core::model::torus::build_torus;
use plovlab_core::{fuzz, gallery, growth, AutoAction, IntersectionModel, RatMatrix};
use plovlab_core::{Error, Rat, Result};

#[derive(Parser)]
#[command(
    name = "plovlab",
    version,
    about = "Polynomial log-volume growth of automorphism actions, computed exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ReportFlags {
    /// Write the JSON report to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Include quasi-nef candidates, sequence verification, and filtration spaces
    #[arg(long)]
    filtration: bool,
    /// Include the vanishing diagnostics section
    #[arg(long)]
    diagnostics: bool,
    /// Re-derive the growth polynomial by interpolation and cross-check it
    #[arg(long)]
    oracle: bool,
}

impl ReportFlags {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            filtration: self.filtration,
            diagnostics: self.diagnostics,
            oracle: self.oracle,
        }
    }
}

#[derive(Args)]
struct ModelArgs {
    /// Model file: intersection tensor, torus, or fujiki JSON
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
    /// Action file {"matrix": [[..]]}; optional when the model determines one
    #[arg(long, value_name = "FILE")]
    auto: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a model/action pair from JSON files
    Analyze {
        #[command(flatten)]
        input: ModelArgs,
        #[command(flatten)]
        flags: ReportFlags,
    },
    /// Build the torus model of an integer h^{1,0} matrix and analyze it
    Torus {
        /// Matrix as inline JSON "[[1,0],[1,1]]" or a path to a file holding it
        #[arg(long, value_name = "MATRIX|FILE")]
        h10_matrix: String,
        #[command(flatten)]
        flags: ReportFlags,
    },
    /// Built-in example models with frozen expectations
    Gallery {
        #[command(subcommand)]
        action: GalleryCmd,
    },
    /// Tabulate graded dimensions dim B_m as CSV
    Hilbert {
        #[command(flatten)]
        input: ModelArgs,
        /// Largest m to tabulate
        #[arg(long, value_name = "N")]
        n_max: usize,
        /// Output CSV file with header "m,dim"
        #[arg(long, value_name = "FILE")]
        csv: PathBuf,
    },
    /// Print the closed-form and interpolated growth polynomials
    Oracle {
        #[command(flatten)]
        input: ModelArgs,
    },
    /// Random unimodular conjugates of block-unipotent torus actions
    Fuzz {
        #[arg(long, value_name = "D")]
        dim: usize,
        #[arg(long, value_name = "N", default_value_t = 10)]
        count: usize,
        #[arg(long, value_name = "S", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GalleryCmd {
    /// Print every entry with its frozen expectations
    List,
    /// Analyze one entry and check it against its expectations
    Run {
        name: String,
        #[command(flatten)]
        flags: ReportFlags,
    },
    /// Analyze every entry and check all expectations
    RunAll {
        #[command(flatten)]
        flags: ReportFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze { input, flags } => {
            let (model, auto) = load_pair(&input)?;
            analyze_and_emit(&model, &auto, &flags)
        }
        Command::Torus { h10_matrix, flags } => {
            let a = parse_h10_matrix(&h10_matrix)?;
            let (model, auto) = build_torus(&a)?;
            analyze_and_emit(&model, &auto, &flags)
        }
        Command::Gallery { action } => match action {
            GalleryCmd::List => {
                gallery_list();
                Ok(ExitCode::SUCCESS)
            }
            GalleryCmd::Run { name, flags } => gallery_run(&name, &flags),
            GalleryCmd::RunAll { flags } => gallery_run_all(&flags),
        },
        Command::Hilbert { input, n_max, csv } => {
            let (model, auto) = load_pair(&input)?;
            let omega = model.omega().clone();
            let dims = growth::hilbert_sequence(&model, &auto, &omega, n_max + 1)?;
            let mut out = String::from("m,dim\n");
            for (m, dim) in dims.iter().enumerate() {
                out.push_str(&format!("{m},{dim}\n"));
            }
            fs::write(&csv, out)?;
            print_out(&format!("wrote {} rows to {}", dims.len(), csv.display()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { input } => {
            let (model, auto) = load_pair(&input)?;
            let engine = growth::plov(&model, &auto)?;
            let oracle = growth::oracle_check(&model, &auto, &engine.poly)?;
            print_out(&format!("closed-form:   {}", engine.poly));
            print_out(&format!("interpolated:  {}", oracle.poly));
            print_out(&format!("sample points: n = 0..={}", oracle.max_n));
            if oracle.agreed {
                print_out("agreed: true");
                Ok(ExitCode::SUCCESS)
            } else {
                Err(Error::Integrity(
                    "interpolated growth polynomial disagrees with the expansion".into(),
                ))
            }
        }
        Command::Fuzz { dim, count, seed } => {
            let report = fuzz::run_many(dim, count, seed)?;
            print_out(&serde_json::to_string_pretty(&report)?);
            if report.all_ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Err(Error::Violation(format!(
                    "{} of {count} randomized cases broke the square formula or a bound",
                    report.cases.iter().filter(|c| !c.all_ok()).count(),
                )))
            }
        }
    }
}

fn load_pair(input: &ModelArgs) -> Result<(IntersectionModel, AutoAction)> {
    let (model, bundled) = load_model(&input.model)?;
    let auto = match (&input.auto, bundled) {
        (Some(path), _) => load_auto(path)?,
        (None, Some(auto)) => auto,
        (None, None) => {
            return Err(Error::Invalid(format!(
                "{} does not determine an action; pass --auto",
                input.model.display()
            )))
        }
    };
    Ok((model, auto))
}

/// Inline JSON when the argument starts with '['; otherwise a file path.
fn parse_h10_matrix(arg: &str) -> Result<RatMatrix> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg))?
    };
    let rows: Vec<Vec<i64>> = serde_json::from_str(&text)
        .map_err(|e| Error::Invalid(format!("h10 matrix must be an integer matrix: {e}")))?;
    RatMatrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(Rat::from).collect())
            .collect(),
    )
}

/// Print a line to stdout, treating a closed pipe as a normal early exit.
fn print_out(text: &str) {
    let mut out = std::io::stdout();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

fn emit<T: Serialize>(target: &Option<PathBuf>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match target {
        Some(path) => fs::write(path, text + "\n")?,
        None => print_out(&text),
    }
    Ok(())
}

fn analyze_and_emit(
    model: &IntersectionModel,
    auto: &AutoAction,
    flags: &ReportFlags,
) -> Result<ExitCode> {
    match analyze(model, auto, flags.options()) {
        Ok(report) => {
            emit(&flags.report, &report)?;
            finish(&report)
        }
        Err(Error::NotQuasiUnipotent(witness)) => {
            let witness = witness.display_var('x');
            emit(
                &flags.report,
                &serde_json::json!({
                    "status": "not-quasi-unipotent",
                    "plov": "infinite",
                    "witness": witness,
                }),
            )?;
            eprintln!("not quasi-unipotent; Plov = infinite; witness {witness}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e),
    }
}

/// Findings on a geometric model contradict proved statements: exit 2.
fn finish(report: &AnalysisReport) -> Result<ExitCode> {
    if report.violates_guarantees() {
        eprintln!("hypothesis-violation findings on a geometric model:");
        for f in &report.findings {
            eprintln!("  {f}");
        }
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn gallery_list() {
    for e in gallery::entries() {
        let k = match e.expected_k {
            Some(k) => k.to_string(),
            None => "-".into(),
        };
        print_out(&format!(
            "{:<20} d={:<2} k={:<3} plov={:<3} m={:<2} {}",
            e.name, e.expected_d, k, e.expected_plov, e.expected_m, e.summary
        ));
    }
}

fn check_expectations(entry: &gallery::GalleryEntry, report: &AnalysisReport) -> Result<()> {
    if report.plov != entry.expected_plov {
        return Err(Error::Integrity(format!(
            "gallery {}: plov {} differs from the frozen value {}",
            entry.name, report.plov, entry.expected_plov
        )));
    }
    if report.d != entry.expected_d {
        return Err(Error::Integrity(format!(
            "gallery {}: d {} differs from the frozen value {}",
            entry.name, report.d, entry.expected_d
        )));
    }
    if report.k != entry.expected_k {
        return Err(Error::Integrity(format!(
            "gallery {}: k {:?} differs from the frozen value {:?}",
            entry.name, report.k, entry.expected_k
        )));
    }
    if report.certification.order_m != entry.expected_m {
        return Err(Error::Integrity(format!(
            "gallery {}: order {} differs from the frozen value {}",
            entry.name, report.certification.order_m, entry.expected_m
        )));
    }
    Ok(())
}

fn gallery_run(name: &str, flags: &ReportFlags) -> Result<ExitCode> {
    let entry = gallery::find(name).ok_or_else(|| {
        Error::Invalid(format!("no gallery entry named {name}; try `gallery list`"))
    })?;
    let (model, auto) = gallery::build(name)?;
    let report = analyze(&model, &auto, flags.options())?;
    check_expectations(&entry, &report)?;
    emit(&flags.report, &report)?;
    finish(&report)
}

#[derive(Serialize)]
struct NamedReport {
    name: &'static str,
    report: AnalysisReport,
}

fn gallery_run_all(flags: &ReportFlags) -> Result<ExitCode> {
    let mut reports = Vec::new();
    let mut worst = ExitCode::SUCCESS;
    for entry in gallery::entries() {
        let (model, auto) = gallery::build(entry.name)?;
        // Filtration queries are undefined on product carriers; keep the
        // remaining sections as requested.
        let mut opts = flags.options();
        if !model.k_reportable() {
            opts.filtration = false;
            opts.diagnostics = false;
        }
        let report = analyze(&model, &auto, opts)?;
        check_expectations(&entry, &report)?;
        print_out(&format!(
            "{:<20} plov={:<3} gkdim={:<3} status={}",
            entry.name, report.plov, report.gkdim, report.status
        ));
        if finish(&report)? != ExitCode::SUCCESS {
            worst = ExitCode::from(2);
        }
        reports.push(NamedReport {
            name: entry.name,
            report,
        });
    }
    if let Some(path) = &flags.report {
        let text = serde_json::to_string_pretty(&reports)?;
        fs::write(path, text + "\n")?;
    }
    Ok(worst)
}
