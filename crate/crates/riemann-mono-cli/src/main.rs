use std::process::ExitCode;

fn main() -> ExitCode {
    let config = match riemann_mono_cli::parse_args(std::env::args_os()) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("{err}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match riemann_mono_cli::run(&config, &mut stdout) {
        Ok(code) => ExitCode::from(u8::try_from(code).unwrap_or(2)),
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(2)
        }
    }
}
