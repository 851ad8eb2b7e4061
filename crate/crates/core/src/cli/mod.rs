//! The `rt` command-line front end.
//!
//! Exit codes: `0` success, `1` usage or configuration error, `2` a
//! validation check failed.

mod config;
mod output;
mod run;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;

pub use config::{Args, Command, Format, RunConfig};
pub use output::{format_float, write_csv, write_json, Cell, Table};
pub use run::{execute, tv_threshold, Report, RunError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;

/// Parses `args` (including the program name), runs the command and writes
/// the table to `--out` or `stdout`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let cfg = match parsed.resolve() {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let report = match execute(&cfg) {
        Ok(r) => r,
        Err(RunError::Usage(msg)) | Err(RunError::Failed(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = emit(&cfg, &report.table, stdout) {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if report.any_failed {
        let _ = writeln!(stderr, "validation failed");
        return EXIT_VALIDATION;
    }
    EXIT_OK
}

fn emit(cfg: &RunConfig, table: &Table, stdout: &mut dyn Write) -> io::Result<()> {
    let write = |out: &mut dyn Write| match cfg.format {
        Format::Csv => write_csv(table, out),
        Format::Json => write_json(table, &cfg.echo(), out),
    };
    match &cfg.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write(&mut file)?;
            file.flush()
        }
        None => write(stdout),
    }
}
