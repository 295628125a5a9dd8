use std::io;

fn main() {
    let code = icmod::cli::main_with(
        std::env::args_os(),
        &mut io::stdin(),
        &mut io::stdout(),
        &mut io::stderr(),
    );
    std::process::exit(code);
}
