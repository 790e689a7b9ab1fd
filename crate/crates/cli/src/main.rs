//! `cwe`: construct the trace-zero quadratic codes, enumerate their complete
//! weight enumerators and verify the closed forms against brute force.
//!
//! Exit codes: 0 when every requested check passes, 1 on a mathematical
//! mismatch, 2 on usage or parameter errors.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cwe_core::code::{cwe_brute, cwe_closed, weight_distribution, CweTable, DefiningSet};
use cwe_core::report::{
    self, parse_grid, parse_sections, SectionId, Status, SweepReport, VerificationReport,
    VerifyOptions, DEFAULT_GRID, DEFAULT_SWEEP_MAX_R,
};
use cwe_core::FieldContext;

#[derive(Parser)]
#[command(
    name = "cwe",
    version,
    about = "Complete weight enumerators of trace-zero quadratic codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field construction summary: modulus, primitive element, code length.
    FieldInfo {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
    },
    /// Complete weight enumerator by enumeration, closed form or both.
    Cwe {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        run: Run,
    },
    /// Compare every closed form with its exhaustive counterpart.
    Verify {
        #[command(flatten)]
        params: Params,
        /// Comma-separated section names; all sections when omitted.
        #[arg(long)]
        sections: Option<String>,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        run: Run,
    },
    /// Run `verify` over a grid of parameters.
    Sweep {
        /// Items `P:M`, either side may be a range `a..b`.
        #[arg(long)]
        grid: Option<String>,
        /// Grid points with p^m above this are skipped.
        #[arg(long, default_value_t = DEFAULT_SWEEP_MAX_R)]
        max_r: u64,
        #[arg(long)]
        sections: Option<String>,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        run: Run,
    },
}

#[derive(Args)]
struct Params {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u32,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Run {
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Closed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

enum Outcome {
    Pass,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::FieldInfo { params, output } => field_info(&params, &output),
        Command::Cwe {
            params,
            method,
            output,
            run,
        } => with_threads(&run, || cwe(&params, method, &output)),
        Command::Verify {
            params,
            sections,
            output,
            run,
        } => with_threads(&run, || verify(&params, sections.as_deref(), &output)),
        Command::Sweep {
            grid,
            max_r,
            sections,
            output,
            run,
        } => with_threads(&run, || {
            sweep(grid.as_deref(), max_r, sections.as_deref(), &output)
        }),
    }
}

fn with_threads<T: Send>(run: &Run, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(run.threads)
        .build()
        .context("building worker pool")?
        .install(f)
}

fn emit(output: &Output, body: &str) -> Result<()> {
    match &output.out {
        Some(path) => {
            let mut file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            file.write_all(body.as_bytes())?;
        }
        None => io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn to_json(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn verify_options(sections: Option<&str>) -> Result<VerifyOptions> {
    let mut opts = VerifyOptions::default();
    if let Some(s) = sections {
        opts.sections = parse_sections(s)?;
    }
    Ok(opts)
}

fn field_info(params: &Params, output: &Output) -> Result<Outcome> {
    let ctx = FieldContext::new(params.p, params.m)?;
    let n = DefiningSet::new(&ctx).map(|d| d.len()).unwrap_or(0);
    let samples: Vec<Value> = ctx
        .elements()
        .take(8)
        .map(|x| {
            json!({
                "index": x.index(),
                "element": ctx.element_string(x),
                "trace": ctx.trace(x),
            })
        })
        .collect();
    let info = json!({
        "p": ctx.p(),
        "m": ctx.m(),
        "r": ctx.order(),
        "modulus": ctx.modulus_string(),
        "alpha": ctx.element_string(ctx.alpha()),
        "alpha_index": ctx.alpha().index(),
        "n": n,
        "trace_samples": samples,
    });
    let body = match output.format {
        Format::Json => to_json(&info)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["index", "element", "trace"])?;
            for s in &samples {
                w.write_record([
                    s["index"].to_string(),
                    s["element"].as_str().unwrap_or_default().to_string(),
                    s["trace"].to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut out = format!(
                "GF({}^{}), r = {}\nmodulus: {}\nalpha: {} (index {})\nn = |D| = {}\n\n",
                ctx.p(),
                ctx.m(),
                ctx.order(),
                ctx.modulus_string(),
                ctx.element_string(ctx.alpha()),
                ctx.alpha().index(),
                n
            );
            out.push_str("index  trace  element\n");
            for s in &samples {
                out.push_str(&format!(
                    "{:>5}  {:>5}  {}\n",
                    s["index"].as_u64().unwrap_or_default(),
                    s["trace"].as_u64().unwrap_or_default(),
                    s["element"].as_str().unwrap_or_default()
                ));
            }
            out
        }
    };
    emit(output, &body)?;
    Ok(Outcome::Pass)
}

fn cwe(params: &Params, method: Method, output: &Output) -> Result<Outcome> {
    let ctx = FieldContext::new(params.p, params.m)?;
    let mut tables: Vec<(&str, CweTable)> = Vec::new();
    if method != Method::Closed {
        tables.push(("brute", cwe_brute(&ctx)?));
    }
    if method != Method::Brute {
        tables.push(("closed", cwe_closed(ctx.p(), ctx.m())?));
    }
    let matched = (method == Method::Both).then(|| tables[0].1 == tables[1].1);

    let body = match output.format {
        Format::Json => {
            if let [(_, table)] = tables.as_slice() {
                to_json(table)?
            } else {
                to_json(&json!({
                    "brute": tables[0].1,
                    "closed": tables[1].1,
                    "match": matched,
                }))?
            }
        }
        Format::Csv => {
            let p = ctx.p() as usize;
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header: Vec<String> = Vec::new();
            if method == Method::Both {
                header.push("method".into());
            }
            header.extend((0..p).map(|i| format!("k{i}")));
            header.push("frequency".into());
            w.write_record(&header)?;
            for (name, table) in &tables {
                for (composition, frequency) in table.entries() {
                    let mut row: Vec<String> = Vec::new();
                    if method == Method::Both {
                        row.push(name.to_string());
                    }
                    row.extend(composition.counts().iter().map(u64::to_string));
                    row.push(frequency.to_string());
                    w.write_record(&row)?;
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut out = String::new();
            for (name, table) in &tables {
                out.push_str(&format!(
                    "{name}: p = {}, m = {}, n = {}\n",
                    table.p, table.m, table.n
                ));
                out.push_str(&format!("  CWE = {}\n", table.to_polynomial_string()));
                out.push_str(&format!(
                    "  weights = {}\n",
                    weight_distribution(table).to_polynomial_string()
                ));
                for (composition, frequency) in table.entries() {
                    out.push_str(&format!("  {frequency:>8}  {composition}\n"));
                }
            }
            if let Some(m) = matched {
                out.push_str(if m { "match\n" } else { "MISMATCH\n" });
            }
            out
        }
    };
    emit(output, &body)?;
    Ok(if matched == Some(false) {
        Outcome::Mismatch
    } else {
        Outcome::Pass
    })
}

fn verify(params: &Params, sections: Option<&str>, output: &Output) -> Result<Outcome> {
    let opts = verify_options(sections)?;
    let report = report::verify(params.p, params.m, &opts)?;
    let body = match output.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["p", "m", "section", "status", "time_ms"])?;
            write_section_rows(&mut w, &report)?;
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => render_report(&report),
    };
    emit(output, &body)?;
    Ok(outcome(report.passed()))
}

fn sweep(
    grid: Option<&str>,
    max_r: u64,
    sections: Option<&str>,
    output: &Output,
) -> Result<Outcome> {
    let grid = match grid {
        Some(g) => parse_grid(g)?,
        None => DEFAULT_GRID.to_vec(),
    };
    let opts = verify_options(sections)?;
    let sweep = report::sweep(&grid, max_r, &opts)?;
    let body = match output.format {
        Format::Json => to_json(&sweep)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["p", "m", "section", "status", "time_ms"])?;
            for entry in &sweep.entries {
                match &entry.report {
                    Some(report) => write_section_rows(&mut w, report)?,
                    None => w.write_record([
                        entry.p.to_string(),
                        entry.m.to_string(),
                        String::new(),
                        entry.status.to_string(),
                        String::new(),
                    ])?,
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => render_sweep(&sweep),
    };
    emit(output, &body)?;
    Ok(outcome(sweep.passed()))
}

fn outcome(passed: bool) -> Outcome {
    if passed {
        Outcome::Pass
    } else {
        Outcome::Mismatch
    }
}

fn write_section_rows(w: &mut csv::Writer<Vec<u8>>, report: &VerificationReport) -> Result<()> {
    for s in &report.sections {
        w.write_record([
            report.p.to_string(),
            report.m.to_string(),
            s.name.clone(),
            s.status.to_string(),
            report
                .timing_ms
                .get(&s.name)
                .map_or(String::new(), u64::to_string),
        ])?;
    }
    Ok(())
}

fn describe(name: &str) -> &'static str {
    name.parse::<SectionId>().map_or("", SectionId::description)
}

fn render_report(report: &VerificationReport) -> String {
    let mut out = format!(
        "verify p = {}, m = {}, n = {}: {}\n",
        report.p, report.m, report.n, report.overall
    );
    for s in &report.sections {
        out.push_str(&format!(
            "  {:<11} {:<7} {:>6} ms  {}\n",
            s.name,
            s.status.to_string(),
            report.timing_ms.get(&s.name).copied().unwrap_or(0),
            describe(&s.name)
        ));
    }
    for note in &report.notes {
        out.push_str(&format!("  note [{}] {}\n", note.section, note.message));
    }
    out
}

fn render_sweep(sweep: &SweepReport) -> String {
    let mut out = format!("sweep (max r = {}): {}\n", sweep.max_r, sweep.overall);
    out.push_str("     p    m  status   sections  notes\n");
    for entry in &sweep.entries {
        let (passed, total, notes) = entry.report.as_ref().map_or((0, 0, 0), |r| {
            let passed = r
                .sections
                .iter()
                .filter(|s| s.status == Status::Pass)
                .count();
            (passed, r.sections.len(), r.notes.len())
        });
        out.push_str(&format!(
            "  {:>4} {:>4}  {:<7}  {:>3}/{:<3}   {:>5}\n",
            entry.p,
            entry.m,
            entry.status.to_string(),
            passed,
            total,
            notes
        ));
    }
    out
}
