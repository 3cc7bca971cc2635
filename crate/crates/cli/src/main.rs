use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use xmodkit_cli::{run, Command, Output, TaskSpec};

#[derive(Parser)]
#[command(name = "xmodkit", version, about = "Crossed modules, Gr-categories and their group extensions")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args)]
struct Common {
    /// Crossed-module JSON document.
    #[arg(long)]
    input: Option<PathBuf>,
    /// JSON document `{"Q": .., "psi": [..]}` for `ψ: Q -> Coker d`.
    #[arg(long)]
    psi: Option<PathBuf>,
    /// Largest brute-force search space (overrides XMODKIT_BUDGET).
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Exit 1 when no extension exists.
    #[arg(long, alias = "strict")]
    expect_nonempty: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the crossed-module axioms.
    Validate(Common),
    /// Ker d, Im d, Coker d and the action on Ker d.
    Derive(Common),
    /// Reduce to a category of type (Coker d, Ker d, k).
    Reduce(Common),
    /// The obstruction class of ψ in H3.
    Obstruction(Common),
    /// Classify extensions inducing ψ, cross-checked by brute force.
    Classify(Common),
    /// Enumerate extensions inducing ψ by brute force.
    Enumerate(Common),
    /// Compare functor classes, classify and brute force.
    SchreierCheck(Common),
    /// Crossed module to strict Gr-category and back.
    Roundtrip(Common),
    /// Run the full verification battery.
    Check(Common),
}

fn main() {
    let cli = Cli::parse();
    let (command, c) = match cli.command {
        Cmd::Validate(c) => (Command::Validate, c),
        Cmd::Derive(c) => (Command::Derive, c),
        Cmd::Reduce(c) => (Command::Reduce, c),
        Cmd::Obstruction(c) => (Command::Obstruction, c),
        Cmd::Classify(c) => (Command::Classify, c),
        Cmd::Enumerate(c) => (Command::Enumerate, c),
        Cmd::SchreierCheck(c) => (Command::SchreierCheck, c),
        Cmd::Roundtrip(c) => (Command::Roundtrip, c),
        Cmd::Check(c) => (Command::Check, c),
    };
    let task = TaskSpec {
        command,
        input: c.input,
        psi: c.psi,
        budget: c.budget,
        seed: c.seed,
        output: if c.json { Output::Json } else { Output::Text },
        expect_nonempty: c.expect_nonempty,
    };
    let outcome = run(&task);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(outcome.code);
}
