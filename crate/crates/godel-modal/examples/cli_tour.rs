//! Drives the `godel-modal` command-line interface in-process: the same
//! subcommands (`prove`, `eval`, `translate`, `solve`, `parse`) exposed by
//! the `godel-modal` binary.
//!
//! Run with: `cargo run --example cli_tour`

use godel_modal::cli::run;

fn cli(args: &[&str]) {
    println!("$ godel-modal {}", args.join(" "));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("godel-modal").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("(exit code {code})\n");
}

fn main() {
    let model = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/two-world.json");
    let constraints = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sample.constraints");

    cli(&["parse", "--core", "--logic", "kginv", "delta p | snot q"]);
    cli(&["prove", "(p -> q) | (q -> p)"]);
    cli(&["prove", "--logic", "kginv", "box p -> inv dia inv p"]);
    cli(&["eval", "--model", model, "--decimal", "p -> box q"]);
    cli(&["translate", "--dir", "oplus", "neg box p"]);
    cli(&["solve", constraints]);
}
