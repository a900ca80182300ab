use clap::Parser;
use clusterlab_cli::commands::{run, Cli, Command};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Command::Serve { port, host } = &cli.command {
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        if let Err(e) = rt.block_on(clusterlab_cli::service::serve(host, *port)) {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
        return;
    }
    match run(cli.command) {
        Ok(out) => print!("{out}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
