use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match landau_decay_cli::parse(std::env::args_os()) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let (out, failure) = match landau_decay_cli::execute(&cli) {
        Ok(out) => (Some(out), None),
        Err((failure, out)) => (out, Some(failure)),
    };
    if let Some(out) = out {
        let mut stdout = std::io::stdout().lock();
        if stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()).is_err() {
            return ExitCode::from(1);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("landau-decay: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
