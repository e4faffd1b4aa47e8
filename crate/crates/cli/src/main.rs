use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lagado_cli::report::{ReportFormat, write_report};
use lagado_cli::repro::repro_paper;
use lagado_cli::run::{run_check, run_table, run_trace};
use lagado_cli::scenario::Scenario;

#[derive(Parser)]
#[command(name = "lagado")]
#[command(about = "Evaluate quotational definition schemas over naming models: \
verdict tables, contradiction witnesses, consistency certificates")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Commands {
    /// Check a scenario file: evaluate its verdict table, detect conflicts,
    /// certify consistency or report the clashes. Exit 0 on a certificate,
    /// 2 on conflicts, 1 on errors or failed expectations.
    Check {
        /// Path to the scenario file
        file: PathBuf,

        /// Output format
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,

        /// Let vacuously true rows witness conflicts too
        #[arg(long)]
        include_vacuous: bool,
    },

    /// Print the derivation trace of one instance under a scenario's model.
    /// The instance is written `CSI(<term>)` or `Phi(<term>,<term>)`.
    Trace {
        /// Path to the scenario file
        file: PathBuf,

        /// Instance to trace, e.g. "CSI(d)" or "Phi('d','d')"
        instance: String,
    },

    /// Print the evaluated verdict table for a scenario.
    Table {
        /// Path to the scenario file
        file: PathBuf,
    },

    /// Run the built-in reproduction corpus and diff actual against expected
    /// outcomes. Exit 0 only on an exact match.
    ReproPaper,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, lagado_cli::CliError> {
    match cli.command {
        Commands::Check {
            file,
            format,
            include_vacuous,
        } => {
            let scenario = Scenario::load(&file)?;
            let (report, exit_code) = run_check(&scenario, include_vacuous)?;
            let bytes = write_report(
                &report,
                match format {
                    OutputFormat::Text => ReportFormat::Text,
                    OutputFormat::Json => ReportFormat::Json,
                },
            );
            std::io::stdout().write_all(&bytes)?;
            Ok(exit_code as u8)
        }
        Commands::Trace { file, instance } => {
            let scenario = Scenario::load(&file)?;
            print!("{}", run_trace(&scenario, &instance)?);
            Ok(0)
        }
        Commands::Table { file } => {
            let scenario = Scenario::load(&file)?;
            print!("{}", run_table(&scenario)?);
            Ok(0)
        }
        Commands::ReproPaper => {
            let outcome = repro_paper()?;
            print!("{}", outcome.render());
            Ok(outcome.exit_code() as u8)
        }
    }
}
