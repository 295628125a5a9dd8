//! Drives the command-line front end in-process, as a script would.

use icmod::cli::main_with;

fn main() {
    let ideal = r#"{"gens":[[4,0],[2,1],[1,2],[0,4]]}"#;
    let runs: [&[&str]; 4] = [
        &["icmod", "--json", "closure", ideal],
        &["icmod", "classify", ideal, "--e", "3"],
        &["icmod", "--seed", "3", "mult", ideal, "--e", "2"],
        &["icmod", "atlas", "--max-a", "13", "--max-b", "2"],
    ];
    for args in runs {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with(
            args.iter().copied(),
            &mut std::io::empty(),
            &mut out,
            &mut err,
        );
        println!("$ {}", args[1..].join(" "));
        print!(
            "{}{}",
            String::from_utf8_lossy(&out),
            String::from_utf8_lossy(&err)
        );
        println!("exit {code}\n");
    }
}
