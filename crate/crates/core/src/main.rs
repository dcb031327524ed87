use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};

use tcalc::cli::{run_command, CommandRequest, Format, InputSource, Subcommand};
use tcalc::root_datum::DEFAULT_WEYL_CAP;

/// Translation functors on Verma modules and principal series, and the
/// trianguline parameter calculus for GL2(Q_p).
#[derive(Parser)]
#[command(name = "tcalc", version)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "inline"])))]
struct Args {
    /// Subcommand to run.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(Subcommand::ALL.map(Subcommand::name)))]
    command: String,

    /// Read the input document from FILE.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Take the input document from the command line.
    #[arg(long, value_name = "JSON")]
    inline: Option<String>,

    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,

    /// Refuse to enumerate Weyl groups larger than N.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_WEYL_CAP)]
    weyl_cap: usize,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let input = match (args.inline, args.input) {
        (Some(s), _) => InputSource::Inline(s),
        (None, Some(p)) => InputSource::File(p),
        (None, None) => unreachable!("clap enforces one source"),
    };
    let req = CommandRequest {
        subcommand: args.command.parse().expect("validated by clap"),
        input,
        format: args.format.parse::<Format>().expect("validated by clap"),
        weyl_cap: args.weyl_cap,
    };
    let out = run_command(&req);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
