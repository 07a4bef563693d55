use std::io;
use std::path::PathBuf;
use std::process;

use rhetorica::cli::{self, CONFIG_ENV};

fn main() {
    let config = std::env::var_os(CONFIG_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = cli::run(
        std::env::args_os(),
        config,
        &mut stdout.lock(),
        &mut stderr.lock(),
    );
    process::exit(code);
}
