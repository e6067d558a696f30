use std::io::Write;

use clap::Parser;
use filtra_cli::commands::{run, Cli};
use serde_json::json;

fn main() {
    let cli = Cli::parse();
    let (status, document) = match run(&cli) {
        Ok(outcome) => (outcome.status, outcome.document),
        Err(e) => {
            eprintln!("filtra: {e}");
            (2, json!({ "error": e.to_string() }))
        }
    };
    let text = serde_json::to_string_pretty(&document).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    std::process::exit(status);
}
