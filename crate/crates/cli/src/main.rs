mod args;
mod inputs;
mod run;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("CFORGE_LOG")).init();
    // clap exits with 2 on usage errors, which is reserved for inconclusive results
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run::run(&cli.command, &cli.global) {
        Ok(out) => {
            let envelope = serde_json::to_string_pretty(&out.envelope()).expect("serializable result");
            if let Some(path) = &cli.global.out {
                if let Err(e) = fs::write(path, format!("{envelope}\n")) {
                    eprintln!("error: --out {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            let body = match cli.global.format {
                Format::Text => out.text.trim_end().to_string(),
                Format::Json => envelope,
            };
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = writeln!(io::stdout().lock(), "{body}");
            for w in &out.warnings {
                eprintln!("WARNING: {w}");
            }
            if out.inconclusive {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
