//! Command surface. Exit codes: 0 on success, 2 on input errors, 3 when
//! `--expect` disagrees with the computed verdict (for CI gating).

use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::api::{
    analyze_report, audit_with_report, construct_from_value, go_check_with_report,
    nil_go_check_with_report, quotient_with_report, AuditSuite,
};
use crate::error::{Error, Result};
use crate::files::{parse_algebra_file, space_to_file, to_canonical_json, ParsedSpace};
use crate::gocheck::{GOVerdict, SampleConfig};
use crate::report::{canonical_string, envelope, input_digest, render_text};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_EXPECT_MISMATCH: i32 = 3;

#[derive(Parser)]
#[command(
    name = "gorbit",
    version,
    about = "Exact analysis of geodesic orbit structure for metric homogeneous spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    /// Certified naturally reductive.
    Nr,
    /// Certified naturally reductive or sampled geodesic orbit evidence.
    Go,
    /// Certified negative with exact witness.
    NotGo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Strucrad1,
    Strucnilr,
    Skew,
    Irred1,
    Goodlevi,
}

impl From<SuiteArg> for AuditSuite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Strucrad1 => AuditSuite::Strucrad1,
            SuiteArg::Strucnilr => AuditSuite::Strucnilr,
            SuiteArg::Skew => AuditSuite::Skew,
            SuiteArg::Irred1 => AuditSuite::Irred1,
            SuiteArg::Goodlevi => AuditSuite::Goodlevi,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Series, radical, nilradical, Killing operator spectrum, and the
    /// invariant submodule decomposition of a space.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Geodesic orbit check via the geodesic graph linear systems.
    GoCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Derivation-based geodesic orbit check for two-step nilpotent metric
    /// algebras (file must have trivial isotropy).
    NilGoCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Structure audits conditional on a geodesic orbit verdict.
    Audit {
        file: PathBuf,
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 64)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Quotient construction on the normalizer algebra; writes the derived
    /// space and reports its audit.
    Quotient {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Emit a built-in example space as an algebra file.
    Construct {
        /// One of: u2_sphere, euclidean_go, htype, heisenberg13,
        /// gonil2_extension, ledger_obata, filiform4,
        /// complex_weight_solvable.
        kind: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        copies: Option<usize>,
        /// Complement variant for ledger_obata: killing_orthogonal | ideal.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long = "c-scale")]
        c_scale: Option<String>,
        /// Clifford module JSON for htype / gonil2_extension bases.
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Re-render a previously saved report (file or stdin).
    Report {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Runs the CLI on explicit arguments; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INPUT_ERROR
            } else {
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, content).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
        }
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn emit(value: &Value, format: Format, output: Option<&Path>) -> Result<()> {
    let content = match format {
        Format::Json => canonical_string(value),
        Format::Text => render_text(value),
    };
    write_output(output, &content)
}

fn load_space(path: &Path) -> Result<(ParsedSpace, String)> {
    let bytes = read_file(path)?;
    let digest = input_digest(&bytes);
    let parsed = parse_algebra_file(&bytes)?;
    Ok((parsed, digest))
}

fn expect_matches(expect: Expect, verdict: &GOVerdict) -> bool {
    matches!(
        (expect, verdict),
        (Expect::Nr, GOVerdict::CertifiedNaturallyReductive)
            | (
                Expect::Go,
                GOVerdict::CertifiedNaturallyReductive | GOVerdict::SampledGO { .. }
            )
            | (Expect::NotGo, GOVerdict::NotGO { .. })
    )
}

fn gate(expect: Option<Expect>, verdict: &GOVerdict) -> i32 {
    match expect {
        Some(e) if !expect_matches(e, verdict) => EXIT_EXPECT_MISMATCH,
        _ => EXIT_OK,
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Analyze {
            file,
            format,
            output,
        } => {
            let start = Instant::now();
            let (parsed, digest) = load_space(&file)?;
            let body = analyze_report(&parsed)?;
            let value = envelope(
                "analyze",
                Some(&digest),
                None,
                body,
                start.elapsed().as_millis(),
            );
            emit(&value, format, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::GoCheck {
            file,
            samples,
            seed,
            expect,
            format,
            output,
        } => {
            let start = Instant::now();
            let (parsed, digest) = load_space(&file)?;
            let config = SampleConfig {
                sample_count: samples,
                seed,
                ..Default::default()
            };
            let (verdict, body) = go_check_with_report(&parsed, &config)?;
            let value = envelope(
                "go-check",
                Some(&digest),
                Some(seed),
                body,
                start.elapsed().as_millis(),
            );
            emit(&value, format, output.as_deref())?;
            Ok(gate(expect, &verdict))
        }
        Command::NilGoCheck {
            file,
            samples,
            seed,
            expect,
            format,
            output,
        } => {
            let start = Instant::now();
            let (parsed, digest) = load_space(&file)?;
            let config = SampleConfig {
                sample_count: samples,
                seed,
                ..Default::default()
            };
            let (verdict, body) = nil_go_check_with_report(&parsed, &config)?;
            let value = envelope(
                "nil-go-check",
                Some(&digest),
                Some(seed),
                body,
                start.elapsed().as_millis(),
            );
            emit(&value, format, output.as_deref())?;
            Ok(gate(expect, &verdict))
        }
        Command::Audit {
            file,
            suite,
            samples,
            seed,
            format,
            output,
        } => {
            let start = Instant::now();
            let (parsed, digest) = load_space(&file)?;
            let config = SampleConfig {
                sample_count: samples,
                seed,
                ..Default::default()
            };
            let body = audit_with_report(&parsed, suite.into(), &config)?;
            let value = envelope(
                "audit",
                Some(&digest),
                Some(seed),
                body,
                start.elapsed().as_millis(),
            );
            emit(&value, format, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Quotient {
            file,
            output,
            samples,
            seed,
            format,
        } => {
            let start = Instant::now();
            let (parsed, digest) = load_space(&file)?;
            let config = SampleConfig {
                sample_count: samples,
                seed,
                ..Default::default()
            };
            let (space, body) = quotient_with_report(&parsed, &config)?;
            let value = envelope(
                "quotient",
                Some(&digest),
                Some(seed),
                body,
                start.elapsed().as_millis(),
            );
            let rendered = match format {
                Format::Json => canonical_string(&value),
                Format::Text => render_text(&value),
            };
            println!("{rendered}");
            match space {
                Some(space) => {
                    let name = format!("{}_quotient", parsed.file.name);
                    let file_value = space_to_file(&name, &space);
                    write_output(Some(&output), &to_canonical_json(&file_value))?;
                    Ok(EXIT_OK)
                }
                None => Err(Error::Construction(
                    "quotient is degenerate; no space to write".into(),
                )),
            }
        }
        Command::Construct {
            kind,
            alpha,
            n,
            copies,
            variant,
            c_scale,
            module,
            output,
        } => {
            let mut request = serde_json::Map::new();
            request.insert("kind".into(), json!(kind));
            if let Some(a) = alpha {
                request.insert("alpha".into(), json!(a));
            }
            if let Some(n) = n {
                request.insert("n".into(), json!(n));
            }
            if let Some(c) = copies {
                request.insert("copies".into(), json!(c));
            }
            if let Some(v) = variant {
                request.insert("variant".into(), json!(v));
            }
            if let Some(c) = c_scale {
                request.insert("c_scale".into(), json!(c));
            }
            if let Some(path) = module {
                let bytes = read_file(&path)?;
                let value: Value =
                    serde_json::from_slice(&bytes).map_err(|e| Error::SchemaError {
                        path: "$".into(),
                        message: e.to_string(),
                    })?;
                request.insert("module".into(), value);
            }
            let (name, file_value) = construct_from_value(&Value::Object(request))?;
            let content = to_canonical_json(&file_value);
            write_output(Some(&output), &content)?;
            let summary = json!({
                "command": "construct",
                "kind": kind,
                "name": name,
                "output_digest": input_digest(content.as_bytes()),
                "written_to": output.display().to_string(),
            });
            println!("{}", canonical_string(&summary));
            Ok(EXIT_OK)
        }
        Command::Report { file, format } => {
            let bytes = match &file {
                Some(path) => read_file(path)?,
                None => {
                    let mut buf = Vec::new();
                    std::io::stdin()
                        .read_to_end(&mut buf)
                        .map_err(|e| Error::Io(e.to_string()))?;
                    buf
                }
            };
            let value: Value = serde_json::from_slice(&bytes).map_err(|e| Error::SchemaError {
                path: "$".into(),
                message: e.to_string(),
            })?;
            let rendered = match format {
                Format::Json => canonical_string(&value),
                Format::Text => render_text(&value),
            };
            println!("{rendered}");
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn run_args(args: &[&str]) -> i32 {
        run(std::iter::once("gorbit").chain(args.iter().copied()))
    }

    #[test]
    fn construct_and_check_sphere() {
        let dir = tempdir().unwrap();
        let file = dir.path().join("u2.json");
        let code = run_args(&[
            "construct",
            "u2_sphere",
            "--alpha",
            "2",
            "-o",
            file.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
        let code = run_args(&["go-check", file.to_str().unwrap(), "--expect", "nr"]);
        assert_eq!(code, EXIT_OK);
        // The sphere family is certified, so expecting a negative fails.
        let code = run_args(&["go-check", file.to_str().unwrap(), "--expect", "not-go"]);
        assert_eq!(code, EXIT_EXPECT_MISMATCH);
        let code = run_args(&["analyze", file.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
    }

    #[test]
    fn negative_control_gating() {
        let dir = tempdir().unwrap();
        let file = dir.path().join("filiform4.json");
        assert_eq!(
            run_args(&["construct", "filiform4", "-o", file.to_str().unwrap()]),
            EXIT_OK
        );
        assert_eq!(
            run_args(&["go-check", file.to_str().unwrap(), "--expect", "not-go"]),
            EXIT_OK
        );
    }

    #[test]
    fn audit_suite_on_constructed_example() {
        let dir = tempdir().unwrap();
        let file = dir.path().join("eg2.json");
        assert_eq!(
            run_args(&["construct", "euclidean_go", "--n", "2", "-o", file.to_str().unwrap()]),
            EXIT_OK
        );
        assert_eq!(
            run_args(&["audit", file.to_str().unwrap(), "--suite", "strucrad1"]),
            EXIT_OK
        );
        assert_eq!(
            run_args(&["audit", file.to_str().unwrap(), "--suite", "goodlevi"]),
            EXIT_INPUT_ERROR // constructed file carries no levi vectors
        );
    }

    #[test]
    fn bad_input_exits_2() {
        let dir = tempdir().unwrap();
        let file = dir.path().join("bad.json");
        std::fs::write(&file, b"{\"not\": \"an algebra\"}").unwrap();
        assert_eq!(
            run_args(&["analyze", file.to_str().unwrap()]),
            EXIT_INPUT_ERROR
        );
        assert_eq!(
            run_args(&["analyze", "/nonexistent/x.json"]),
            EXIT_INPUT_ERROR
        );
        assert_eq!(
            run_args(&["construct", "mystery", "-o", "/tmp/x.json"]),
            EXIT_INPUT_ERROR
        );
    }
}
