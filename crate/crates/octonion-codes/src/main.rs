use clap::Parser;
use octonion_codes::cli::{self, Cli};

fn main() {
    let raw: Vec<String> = std::env::args().collect();
    let args = match cli::expand_config_args(raw) {
        Ok(args) => args,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    };
    let cli = Cli::parse_from(args);
    std::process::exit(cli::run(cli));
}
