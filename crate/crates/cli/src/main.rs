mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn run(cli: &Cli) -> anyhow::Result<(output::Output, bool)> {
    Ok(match &cli.command {
        Command::Info { file } => (commands::info(&commands::load(file)?), false),
        Command::Table { file, rows } => (commands::table(&commands::load(file)?, rows)?, false),
        Command::Eval {
            file,
            expr,
            by_label,
        } => (
            commands::eval(&commands::load(file)?, expr, *by_label)?,
            false,
        ),
        Command::Sullivan { file } => {
            let loaded = commands::load(file)?;
            let r = commands::sullivan(&loaded);
            (commands::report(&loaded, &r), r.verdict.is_obstruction())
        }
        Command::CheckSet { file, search } | Command::CheckLink { file, search } => {
            let link = matches!(cli.command, Command::CheckLink { .. });
            let loaded = commands::load(file)?;
            let r = commands::check(&loaded, search, link)?;
            (commands::report(&loaded, &r), r.verdict.is_obstruction())
        }
        Command::Fixtures { name, out } => (commands::fixtures(name.as_deref(), out)?, false),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, obstruction)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.render(cli.format).as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if obstruction {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
