use std::io::Write;

fn main() {
    let outcome = ffdelay::cli::run(std::env::args_os());
    let text = format!("{}\n", outcome.message.trim_end());
    // A closed pipe is not an error of the command.
    let _ = if outcome.exit_code == ffdelay::cli::EXIT_OK {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::io::stderr().write_all(text.as_bytes())
    };
    std::process::exit(outcome.exit_code);
}
