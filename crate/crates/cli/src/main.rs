use clap::error::ErrorKind;
use clap::Parser;
use polymult::{run, RunConfig};

fn main() {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let reason = e.to_string();
            let first = reason.lines().next().unwrap_or("invalid arguments");
            eprintln!("error[io]: {}", first.trim_start_matches("error: "));
            std::process::exit(4);
        }
    };
    std::process::exit(run(&config));
}
