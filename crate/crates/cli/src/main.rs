mod config;
mod text;

use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use config::{Cli, Command, Format, Output, RunConfig};
use isochk::bipoly::BiPoly;
use isochk::criteria::{self, AnalysisOptions};
use isochk::flow::{default_h_set, SampleSet};
use isochk::infinity::analyze_infinity;
use isochk::jacobian::jacobian_report;
use isochk::parser::parse_poly;
use isochk::report::SCHEMA;
use isochk::CoreError;

const EXIT_PARSE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_NUMERIC: u8 = 4;
const EXIT_IO: u8 = 1;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

fn parse(text: &str) -> Result<BiPoly, Failure> {
    parse_poly(text).map_err(|e| Failure::new(EXIT_PARSE, format!("cannot parse {text:?}: {e}")))
}

fn degenerate(e: CoreError) -> Failure {
    Failure::new(EXIT_DEGENERATE, e.to_string())
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    config: &'a RunConfig,
    report: &'a T,
}

/// Writes the report where requested and prints the text form otherwise.
fn emit<T: Serialize>(cfg: &RunConfig, out: &Output, report: &T, text: String) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, config: cfg, report })
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot serialize report: {e}")))?
        + "\n";
    if let Some(path) = &out.json {
        std::fs::write(path, &json).map_err(|e| Failure::new(EXIT_IO, format!("cannot write {path}: {e}")))?;
    }
    match out.format {
        Format::Json => print!("{json}"),
        Format::Text => print!("{text}"),
    }
    Ok(())
}

/// Period samples of `h` at levels of the input, computed on its normal form.
#[derive(Serialize)]
struct PeriodReport {
    morse: criteria::MorseForm,
    samples: SampleSet,
}

fn periods(h: &BiPoly, cfg: &RunConfig, s: &config::Sampling) -> Result<PeriodReport, Failure> {
    let morse = criteria::normalize(h).map_err(degenerate)?;
    let hs = default_h_set(s.samples, s.h_min, s.h_max, &s.rays());
    let samples = criteria::sample_periods_via_normal_form(&morse, &hs, &cfg.flow_options(), s.iso_tol);
    Ok(PeriodReport { morse, samples })
}

fn write_csv(path: &str, set: &SampleSet) -> Result<(), Failure> {
    let io = |e: csv::Error| Failure::new(EXIT_IO, format!("cannot write {path}: {e}"));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["h_re", "h_im", "T_re", "T_im", "drift"]).map_err(io)?;
    for s in set.samples() {
        w.serialize((s.h.re, s.h.im, s.t.re, s.t.im, s.drift)).map_err(io)?;
    }
    w.flush().map_err(|e| Failure::new(EXIT_IO, format!("cannot write {path}: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { ham, sampling, infinity, escape_starts, out } => {
            let mut cfg = RunConfig::new("analyze", &out).with_sampling(&sampling);
            cfg.hamiltonian = Some(ham.hamiltonian.clone());
            cfg.order = Some(infinity.order);
            cfg.escape_starts = Some(escape_starts);
            cfg.validate().map_err(|m| Failure::new(EXIT_PARSE, m))?;
            let h = parse(&ham.hamiltonian)?;
            let opts = AnalysisOptions {
                order: infinity.order,
                samples: sampling.samples,
                h_min: sampling.h_min,
                h_max: sampling.h_max,
                rays: sampling.rays(),
                iso_tol: sampling.iso_tol,
                escape_starts,
                flow: cfg.flow_options(),
                ..AnalysisOptions::default()
            };
            let report = criteria::combined_report(&h, &opts);
            emit(&cfg, &out, &report, text::analysis(&report))?;
            if let Some(m) = report.error_in("normalize") {
                return Err(Failure::new(EXIT_DEGENERATE, m.to_string()));
            }
            if report.numeric.as_ref().is_some_and(|s| s.samples().next().is_none()) {
                return Err(Failure::new(EXIT_NUMERIC, "no period sample succeeded"));
            }
            Ok(())
        }
        Command::Period { ham, sampling, out, csv } => {
            let mut cfg = RunConfig::new("period", &out).with_sampling(&sampling);
            cfg.hamiltonian = Some(ham.hamiltonian.clone());
            cfg.csv = csv.clone();
            cfg.validate().map_err(|m| Failure::new(EXIT_PARSE, m))?;
            let h = parse(&ham.hamiltonian)?;
            let report = periods(&h, &cfg, &sampling)?;
            if let Some(path) = &csv {
                write_csv(path, &report.samples)?;
            }
            emit(&cfg, &out, &report, text::periods(&report.samples))?;
            if report.samples.samples().next().is_none() {
                return Err(Failure::new(EXIT_NUMERIC, "no period sample succeeded"));
            }
            Ok(())
        }
        Command::Infinity { ham, infinity, out } => {
            let mut cfg = RunConfig::new("infinity", &out);
            cfg.hamiltonian = Some(ham.hamiltonian.clone());
            cfg.order = Some(infinity.order);
            cfg.validate().map_err(|m| Failure::new(EXIT_PARSE, m))?;
            let h = parse(&ham.hamiltonian)?;
            let report = analyze_infinity(&h, infinity.order).map_err(degenerate)?;
            emit(&cfg, &out, &report, text::infinity(&report))
        }
        Command::Necessary { ham, out } => {
            let mut cfg = RunConfig::new("necessary", &out);
            cfg.hamiltonian = Some(ham.hamiltonian.clone());
            let h = parse(&ham.hamiltonian)?;
            let check = criteria::multiplicity_check(&h).map_err(degenerate)?;
            let parity = criteria::parity_flag(&h);
            let report = text::NecessaryReport { multiplicity: check, parity, parity_note: parity.note() };
            let txt = text::necessary(&report);
            emit(&cfg, &out, &report, txt)
        }
        Command::Jacobian { f, g, out } => {
            let mut cfg = RunConfig::new("jacobian", &out);
            cfg.f = Some(f.clone());
            cfg.g = Some(g.clone());
            let (fp, gp) = (parse(&f)?, parse(&g)?);
            let report = jacobian_report(&fp, &gp).map_err(degenerate)?;
            let txt = format!("{}\n", report.summary);
            emit(&cfg, &out, &report, txt)?;
            if report.criterion.is_none() {
                return Err(Failure::new(EXIT_DEGENERATE, report.summary.clone()));
            }
            Ok(())
        }
        Command::Singular { ham, out } => {
            let mut cfg = RunConfig::new("singular", &out);
            cfg.hamiltonian = Some(ham.hamiltonian.clone());
            let h = parse(&ham.hamiltonian)?;
            let points = criteria::critical_points(&h).map_err(degenerate)?;
            let report = text::SingularReport { single_singularity_on_l0: criteria::single_singularity_on_l0(&points), points };
            let txt = text::singular(&report);
            emit(&cfg, &out, &report, txt)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("isochk: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
