mod cli;
mod report;
mod run;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use cli::Cli;

const EXIT_PASS: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_FAIL: u8 = 2;

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    ExitCode::from(EXIT_PASS)
                }
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    ExitCode::from(execute(&args))
}

fn execute(args: &Cli) -> u8 {
    let g = &args.global;
    if !(g.tol >= 0.0 && g.tol.is_finite()) {
        eprintln!("error: --tol must be a non-negative number");
        return EXIT_USAGE;
    }
    if let Some(jobs) = g.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    }
    let start = Instant::now();
    let mut report = match run::dispatch(&args.command, g.tol) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    };
    if g.timing {
        report.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    let line = format!("{} {}: {}", report.status(), report.command, report.summary);
    // Keep stdout clean when the report itself goes there.
    if g.out.as_deref().is_some_and(|p| p.as_os_str() == "-") {
        eprintln!("{line}");
    } else {
        println!("{line}");
    }
    if let Some(path) = &g.out {
        if let Err(e) = report.write(path, g.format) {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    }
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
