mod args;
mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use args::{AnalyzeKind, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => commands::run(a),
        Command::SweepDs(a) => commands::sweep_ds(a),
        Command::SweepDl(a) => commands::sweep_dl(a),
        Command::SweepLevels(a) => commands::sweep_levels(a),
        Command::Scaling(a) => commands::scaling(a),
        Command::Analyze(a) => match &a.kind {
            AnalyzeKind::Acf(a) => commands::acf(a),
            AnalyzeKind::Spectrum(a) => commands::spectrum(a),
            AnalyzeKind::Etmsd(a) => commands::etmsd_cmd(a),
            AnalyzeKind::Condition(a) => commands::condition(a),
        },
        Command::GenSignal(a) => commands::gen_signal(a),
    };
    match result {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
