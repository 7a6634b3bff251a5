use std::io::{self, Write};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = chernoff_bounds::cli::run(&args, &mut stdout.lock(), &mut stderr.lock());
    let _ = stdout.lock().flush();
    std::process::exit(code);
}
