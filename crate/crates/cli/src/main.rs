use std::process::ExitCode;

use clap::Parser;
use overres_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (code, output) = run(&cli);
    if code == 2 {
        eprint!("{output}");
    } else if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &output) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{output}");
    }
    ExitCode::from(code as u8)
}
