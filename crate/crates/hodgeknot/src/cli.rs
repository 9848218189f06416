//! Command-line interface: argument parsing and subcommand execution.
//!
//! Exit codes: `0` success, `2` when the two computation routes disagree,
//! `1` for any other error (bad input, domain errors, I/O).

use crate::blanchfield::{blanchfield_from_seifert, decompose, linking_form_from_json, FormSummand};
use crate::error::{Error, Result};
use crate::fixtures::{by_name, ingest_csv, FixtureRecord};
use crate::plot::emit_signature_plot;
use crate::report::{
    report_json_bytes, run_pipeline, InvariantReport, PipelineOptions,
};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use std::path::{Path, PathBuf};

/// Exact invariants of knots and links from Seifert matrices.
#[derive(Parser, Debug)]
#[command(name = "hodgeknot", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Input selection and report options shared by most subcommands.
#[derive(Args, Debug, Default)]
pub struct InputArgs {
    /// CSV table of Seifert matrices (`name,size,entries...`, row-major).
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Built-in matrix name (e.g. `trefoil`, `8_20`, `torus(3,5)`).
    #[arg(long, value_name = "NAME")]
    pub knot: Option<String>,
    /// Write the full JSON report(s) to this path.
    #[arg(long, value_name = "FILE")]
    pub json_out: Option<PathBuf>,
    /// Use floating-point fast paths for signature samples.
    #[arg(long)]
    pub approximate: bool,
    /// Directory for the content-addressed result cache.
    #[arg(long, value_name = "DIR")]
    pub cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BlanchfieldArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Decompose an external Hermitian presentation (JSON file) instead
    /// of a Seifert matrix.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["input", "knot"])]
    pub presentation: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Output path prefix; `<prefix>.csv` and `<prefix>.svg` are
    /// written.  With multiple records the name is appended.
    #[arg(long, value_name = "PREFIX")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the structure and print its signed block data.
    Hodge(InputArgs),
    /// Print the Alexander polynomial (torsion order).
    Alexander(InputArgs),
    /// Print sampled Tristram–Levine signatures.
    Signature(InputArgs),
    /// Decompose the linking form into cyclic summands.
    Blanchfield(BlanchfieldArgs),
    /// Print the mod-2 spectrum (eigenvalues must be roots of unity).
    Spectrum(InputArgs),
    /// Run both computation routes and verify they agree.
    Crosscheck(InputArgs),
    /// Write CSV and SVG step plots of the signature function.
    Plot(PlotArgs),
}

fn load_records(args: &InputArgs) -> Result<Vec<FixtureRecord>> {
    match (&args.input, &args.knot) {
        (Some(path), None) => {
            let records = ingest_csv(path)?;
            if records.is_empty() {
                return Err(Error::InvalidParameters(format!(
                    "no records in {}",
                    path.display()
                )));
            }
            Ok(records)
        }
        (None, Some(name)) => Ok(vec![by_name(name)?]),
        _ => Err(Error::InvalidParameters(
            "provide exactly one of --input and --knot".into(),
        )),
    }
}

fn pipeline_options(args: &InputArgs, crosscheck: bool) -> PipelineOptions {
    PipelineOptions {
        crosscheck,
        approximate: args.approximate,
        cache_dir: args.cache.clone(),
    }
}

/// Run the pipeline over all records in parallel, preserving record
/// order in the output.
fn run_all(records: &[FixtureRecord], opts: &PipelineOptions) -> Result<Vec<InvariantReport>> {
    records
        .par_iter()
        .map(|r| run_pipeline(r, opts))
        .collect::<Result<Vec<_>>>()
}

fn write_json(reports: &[InvariantReport], path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let bytes = if reports.len() == 1 {
        report_json_bytes(&reports[0])
    } else {
        let mut s = serde_json::to_string_pretty(reports)?;
        s.push('\n');
        s.into_bytes()
    };
    std::fs::write(path, bytes)?;
    Ok(())
}

fn print_hodge(out: &mut String, rep: &InvariantReport) {
    use std::fmt::Write;
    let _ = writeln!(
        out,
        "{}: size {}, zero block {}, invertible part {}, total dimension {}",
        rep.name, rep.size, rep.zero_rank, rep.invertible_size, rep.hodge.total_dimension
    );
    for e in &rep.hodge.on_circle {
        let _ = writeln!(
            out,
            "  circle root {} of {}: size {}, plus {}, minus {}",
            e.root, e.factor, e.size, e.plus, e.minus
        );
    }
    for e in &rep.hodge.off_circle {
        let _ = writeln!(
            out,
            "  off-circle orbit of {}: size {}, count {}",
            e.factor, e.size, e.count
        );
    }
    for e in &rep.hodge.unit_root {
        let _ = writeln!(
            out,
            "  eigenvalue {} block: size {}, count {}",
            e.eigenvalue, e.size, e.count
        );
    }
    if rep.hodge.on_circle.is_empty()
        && rep.hodge.off_circle.is_empty()
        && rep.hodge.unit_root.is_empty()
    {
        let _ = writeln!(out, "  (no torsion blocks)");
    }
}

fn format_summand(s: &FormSummand) -> String {
    match s {
        FormSummand::E { factor, root, k, sign } => format!(
            "E(factor = {}, root = {root}, size = {k}, sign = {sign:+})",
            factor.laurent_rep()
        ),
        FormSummand::F { factor, ell } => {
            format!("F(factor = {}, size = {ell})", factor.laurent_rep())
        }
    }
}

/// Execute a parsed command line; the returned text is the stdout
/// payload.  Errors map to exit codes in `main`.
pub fn run(cli: &Cli) -> Result<String> {
    let mut out = String::new();
    use std::fmt::Write;
    match &cli.command {
        Command::Hodge(args) => {
            let records = load_records(args)?;
            let reports = run_all(&records, &pipeline_options(args, false))?;
            for rep in &reports {
                print_hodge(&mut out, rep);
            }
            if let Some(path) = &args.json_out {
                write_json(&reports, path)?;
            }
        }
        Command::Alexander(args) => {
            let records = load_records(args)?;
            let reports = run_all(&records, &pipeline_options(args, false))?;
            for rep in &reports {
                let _ = writeln!(out, "{}: {}", rep.name, rep.alexander);
                if rep.zero_rank > 0 {
                    let _ = writeln!(
                        out,
                        "{}: zero block of rank {} (free part); torsion order above",
                        rep.name, rep.zero_rank
                    );
                }
            }
            if let Some(path) = &args.json_out {
                write_json(&reports, path)?;
            }
        }
        Command::Signature(args) => {
            let records = load_records(args)?;
            let reports = run_all(&records, &pipeline_options(args, false))?;
            for rep in &reports {
                for s in &rep.signature_samples {
                    let _ = writeln!(
                        out,
                        "{}: turn {} signature {} nullity {}",
                        rep.name, s.turn, s.signature, s.nullity
                    );
                }
            }
            if let Some(path) = &args.json_out {
                write_json(&reports, path)?;
            }
        }
        Command::Blanchfield(args) => {
            if let Some(path) = &args.presentation {
                let text = std::fs::read_to_string(path)?;
                let form = linking_form_from_json(&text)?;
                let summands = decompose(&form)?;
                let _ = writeln!(
                    out,
                    "external presentation: size {}, order {}",
                    form.size(),
                    form.order().canonical_unit_rep()
                );
                for s in &summands {
                    let _ = writeln!(out, "  {}", format_summand(s));
                }
            } else {
                let records = load_records(&args.input)?;
                for record in &records {
                    let s = record.seifert_matrix();
                    let reduction = crate::seifert::keef_reduce(&s)?;
                    let form = blanchfield_from_seifert(&reduction.invertible_part)?;
                    let summands = decompose(&form)?;
                    let _ = writeln!(
                        out,
                        "{}: order {}",
                        record.name,
                        form.order().canonical_unit_rep()
                    );
                    for s in &summands {
                        let _ = writeln!(out, "  {}", format_summand(s));
                    }
                }
            }
        }
        Command::Spectrum(args) => {
            let records = load_records(args)?;
            let reports = run_all(&records, &pipeline_options(args, false))?;
            for (record, rep) in records.iter().zip(&reports) {
                match &rep.spectrum_mod2 {
                    Some(sp) => {
                        let _ = writeln!(out, "{}: {{{}}}", rep.name, sp.join(", "));
                    }
                    None => {
                        // Recompute to surface the precise domain error.
                        let hn = crate::report::hodge_numbers_for(record)?;
                        crate::hvs::mod2_spectrum(&hn)?;
                        unreachable!("spectrum absent from report but recomputation succeeded");
                    }
                }
            }
            if let Some(path) = &args.json_out {
                write_json(&reports, path)?;
            }
        }
        Command::Crosscheck(args) => {
            let records = load_records(args)?;
            let reports = run_all(&records, &pipeline_options(args, true))?;
            for rep in &reports {
                let _ = writeln!(
                    out,
                    "{}: both routes agree (total dimension {})",
                    rep.name, rep.hodge.total_dimension
                );
            }
            if let Some(path) = &args.json_out {
                write_json(&reports, path)?;
            }
        }
        Command::Plot(args) => {
            let records = load_records(&args.input)?;
            for record in &records {
                let prefix = match (&args.out, records.len()) {
                    (Some(p), 1) => p.clone(),
                    (Some(p), _) => {
                        let mut name = p.file_name().unwrap_or_default().to_os_string();
                        name.push("-");
                        name.push(&record.name);
                        p.with_file_name(name)
                    }
                    (None, _) => PathBuf::from(&record.name),
                };
                let s = record.seifert_matrix();
                let (csv, svg) = emit_signature_plot(&record.name, &s, &prefix)?;
                let _ = writeln!(out, "{}: wrote {} and {}", record.name, csv.display(), svg.display());
            }
        }
    }
    Ok(out)
}

/// Exit code for an error, per the documented contract.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::PipelineMismatch(_) => 2,
        _ => 1,
    }
}
