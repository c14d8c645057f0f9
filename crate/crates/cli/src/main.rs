use clap::Parser;

use green_cli::{run, Cli, SCHEMA_VERSION};

fn main() {
    let cli = Cli::parse();
    if cli.version {
        println!("{SCHEMA_VERSION}");
        return;
    }
    let Some(command) = cli.command else {
        eprintln!("error: no command given; see `green --help`");
        std::process::exit(2);
    };
    std::process::exit(run(&command));
}
