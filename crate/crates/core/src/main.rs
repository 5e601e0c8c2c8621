use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = facetpath::cli::Cli::parse();
    match facetpath::cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(facetpath::Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => {
            eprintln!("error: {e}");
            let code = if matches!(e, facetpath::Error::Usage(_)) { 2 } else { 1 };
            std::process::exit(code);
        }
    }
}
