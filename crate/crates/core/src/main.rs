use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(n) = std::env::var("COARSE_LAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // A pool can only be installed once; ignore the error if one exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let (code, output) = coarse_lab::cli::run_args(std::env::args_os());
    if code == 2 {
        eprint!("{output}");
    } else {
        print!("{output}");
    }
    ExitCode::from(code as u8)
}
