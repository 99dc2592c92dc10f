use std::process::ExitCode;

use brunnian::perm::DEFAULT_POINT_BUDGET;
use brunnian_cli::error::{EXIT_NOT_DECIDED, EXIT_TRUE};
use brunnian_cli::render::{render_density, render_group_check, render_report, render_table};
use brunnian_cli::{
    run_density, run_group_check, run_table, run_verify, verify_exit_code, CliError, DegreeRange,
    Format, Source,
};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "brunnian", version, about = "Exact checks of GL_n(F_p) generation by conjugated companion matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one polynomial.
    Verify {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        f: String,
        /// Also certify <G_1, ..., G_n> = GL_n(F_p) with a stabilizer chain.
        #[arg(long)]
        group_check: bool,
        /// Largest p^n - 1 the group check accepts.
        #[arg(long, default_value_t = DEFAULT_POINT_BUDGET)]
        points: u64,
        #[arg(long, default_value = "md")]
        format: Format,
    },
    /// Verdict table for one prime over a range of degrees.
    Table {
        #[arg(short)]
        p: u64,
        /// Inclusive range, e.g. 7..18.
        #[arg(long = "n")]
        n: DegreeRange,
        #[arg(long, default_value = "paper")]
        source: Source,
        #[arg(long, default_value = "md")]
        format: Format,
    },
    /// Share of pairs (p, n) the theorem leaves undecided.
    Density {
        #[arg(short = 'N')]
        limit: u64,
        #[arg(long, default_value = "md")]
        format: Format,
    },
    /// Stabilizer-chain certificates for <G_1, ..., G_n> and <C, G>.
    GroupCheck {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        f: Option<String>,
        #[arg(long, default_value_t = DEFAULT_POINT_BUDGET)]
        points: u64,
        #[arg(long, default_value = "md")]
        format: Format,
    },
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Verify {
            p,
            f,
            group_check,
            points,
            format,
        } => {
            let report = run_verify(p, &f, group_check, points)?;
            print!("{}", render_report(&report, format)?);
            Ok(verify_exit_code(&report))
        }
        Command::Table {
            p,
            n,
            source,
            format,
        } => {
            let rows = run_table(p, n, source)?;
            print!("{}", render_table(&rows, format)?);
            Ok(EXIT_TRUE)
        }
        Command::Density { limit, format } => {
            let count = run_density(limit)?;
            print!("{}", render_density(&count, format)?);
            Ok(if count.within_bound { EXIT_TRUE } else { EXIT_NOT_DECIDED })
        }
        Command::GroupCheck {
            p,
            n,
            f,
            points,
            format,
        } => {
            let check = run_group_check(p, n, f.as_deref(), points)?;
            print!("{}", render_group_check(&check, format)?);
            Ok(if check.generates() { EXIT_TRUE } else { EXIT_NOT_DECIDED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
