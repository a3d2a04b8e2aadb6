use clap::Parser;

fn main() {
    let cli = creg_cli::Cli::parse();
    let code = match creg_cli::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
