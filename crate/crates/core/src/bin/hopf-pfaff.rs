use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use hopf_pfaff::cli::{self, Command, JobSpec, OutputFormat};
use hopf_pfaff::{par, Error, Result};

/// Twisted k-form sections and Pfaff systems on diagonal Hopf manifolds.
#[derive(Parser)]
#[command(name = "hopf-pfaff", version)]
struct Cli {
    /// Report format [default: text, or the job file's `output`].
    #[arg(long, value_enum, global = true)]
    output: Option<OutputFormat>,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Relation lattice and resonance class of a spectrum.
    Classify(Common),
    /// Monomial basis of the twisted k-form sections.
    Sections {
        #[command(flatten)]
        common: Common,
        /// Also emit every basis element as a form.
        #[arg(long)]
        basis: bool,
        /// Also emit the general section.
        #[arg(long)]
        general: bool,
    },
    /// Basis elements as explicit forms.
    Basis(Common),
    /// General section with free coefficients.
    General(Common),
    /// Regularity, decomposability and integrability of a form.
    Analyze(Common),
    /// All regular systems over characters in {0,1}^n (no-resonance only).
    EnumerateRegular(Common),
    /// Brute-force kernel of p0 up to a coefficient degree.
    Oracle(Common),
    /// Run the shipped corpus and check every verdict.
    CorpusVerify,
    /// Run a complete job file.
    Run {
        #[arg(long)]
        job: PathBuf,
    },
}

/// Each file may be a bare document or a job file containing it.
#[derive(Args)]
struct Common {
    /// Spectrum JSON.
    #[arg(long)]
    manifold: PathBuf,
    /// Character JSON.
    #[arg(long)]
    character: Option<PathBuf>,
    /// KForm JSON.
    #[arg(long)]
    form: Option<PathBuf>,
    /// Form degree.
    #[arg(short = 'k', long = "k")]
    k: Option<usize>,
    /// Coefficient degree bound for `oracle`.
    #[arg(long)]
    max_degree: Option<u32>,
}

fn optional<T: serde::de::DeserializeOwned>(
    path: Option<&Path>,
    key: &str,
    fallback: Option<&Value>,
) -> Result<Option<T>> {
    let v = match path {
        Some(p) => Some(cli::read_document(p, key)?),
        None => fallback.and_then(|doc| cli::embedded(doc, key)).cloned(),
    };
    v.map(|v| cli::from_value(v, key)).transpose()
}

fn build_job(command: Command, c: &Common, output: OutputFormat) -> Result<JobSpec> {
    let text = std::fs::read_to_string(&c.manifold)
        .map_err(|e| Error::Input {
            field: "manifold".into(),
            message: format!("cannot read {}: {e}", c.manifold.display()),
        })?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Error::Input {
        field: "manifold".into(),
        message: format!("{} is not valid JSON: {e}", c.manifold.display()),
    })?;
    let manifold = cli::embedded(&doc, "manifold").cloned().unwrap_or_else(|| doc.clone());
    let mut job = JobSpec::new(command, cli::from_value(manifold, "manifold")?);
    job.output = output;
    job.character = optional(c.character.as_deref(), "character", Some(&doc))?;
    job.form = optional(c.form.as_deref(), "form", Some(&doc))?;
    job.k = c.k.or_else(|| doc.get("manifold").and(doc.get("k")).and_then(Value::as_u64).map(|k| k as usize));
    job.max_degree = c
        .max_degree
        .or_else(|| doc.get("manifold").and(doc.get("max_degree")).and_then(Value::as_u64).map(|d| d as u32));
    Ok(job)
}

fn threads_from_env() -> std::result::Result<usize, String> {
    match std::env::var("HOPF_PFAFF_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("HOPF_PFAFF_THREADS must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(0),
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match threads_from_env() {
        Ok(t) => par::configure_threads(t),
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    }

    let output = args.output.unwrap_or_default();
    let job = match args.command {
        Sub::CorpusVerify => {
            let summary = cli::corpus_verify();
            if output == OutputFormat::Json {
                println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
            } else {
                print!("{summary}");
            }
            return if summary.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
        Sub::Run { job } => std::fs::read_to_string(&job)
            .map_err(|e| Error::Input {
                field: "job".into(),
                message: format!("cannot read {}: {e}", job.display()),
            })
            .and_then(|t| JobSpec::from_json(&t))
            .map(|mut j| {
                if let Some(o) = args.output {
                    j.output = o;
                }
                j
            }),
        Sub::Classify(c) => build_job(Command::Classify, &c, output),
        Sub::Sections { common, basis, general } => build_job(Command::Sections, &common, output).map(|mut j| {
            j.basis = basis;
            j.general = general;
            j
        }),
        Sub::Basis(c) => build_job(Command::Basis, &c, output),
        Sub::General(c) => build_job(Command::General, &c, output),
        Sub::Analyze(c) => build_job(Command::Analyze, &c, output),
        Sub::EnumerateRegular(c) => build_job(Command::EnumerateRegular, &c, output),
        Sub::Oracle(c) => build_job(Command::Oracle, &c, output),
    };

    let out = match job {
        Ok(job) => cli::run(&job),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cli::exit_code(&e) as u8);
        }
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
