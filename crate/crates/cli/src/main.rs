use clap::Parser;

use dickson_cli::commands::{run, Cli, CliError};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if let Some(note) = &out.note {
                eprint!("{note}");
            }
            print!("{}", out.text);
            std::process::exit(if out.check_failed { 1 } else { 0 });
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}
