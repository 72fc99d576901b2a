use std::path::{Path, PathBuf};
use std::process::ExitCode;

use artinkit::reduction::{DEFAULT_SEARCH_DEPTH, DEFAULT_STATE_CAP};
use artinkit_cli::{CliError, Output};
use clap::{Parser, Subcommand, ValueEnum};

/// Membership problems in Artin groups: verdicts, word problems and reductions.
#[derive(Parser)]
#[command(name = "artinkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decidability verdicts for an Artin group given by its defining graph.
    Classify {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Compile an automaton into a fixed-target submonoid instance.
    Compile {
        nfa: PathBuf,
        /// trivial, free:k or p4
        #[arg(long, default_value = "trivial")]
        group: String,
        /// product, p4 or b4
        #[arg(long, default_value = "product")]
        target: String,
        /// An accepted word trivial in the group; its path becomes the instance's witness.
        #[arg(long)]
        witness_word: Option<String>,
        /// Write the instance here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Word problem in a right-angled Artin group or a braid group.
    Wp {
        #[command(subcommand)]
        group: WpGroup,
    },
    /// Is the word in the rational subset an automaton defines in the free group?
    Benois { nfa: PathBuf, word: String },
    /// Bounded breadth-first search for a witness of a compiled instance.
    Search {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_DEPTH)]
        depth: usize,
    },
    /// Check the B4 and A(P4) embeddings used by the reduction.
    VerifyEmbeddings,
}

#[derive(Subcommand)]
enum WpGroup {
    /// `A(Γ)` for an all-2 graph file; the word is like "a b^-1 c".
    Raag { graph: PathBuf, word: String },
    /// `B_n`; the word is a JSON array of signed generator indices.
    Braid { strands: usize, word: String },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn state_cap() -> Result<usize, CliError> {
    match std::env::var("ARTINKIT_MAX_STATES") {
        Ok(v) => v.parse().map_err(|_| {
            CliError::Input(format!(
                "ARTINKIT_MAX_STATES must be a positive integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_STATE_CAP),
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Classify { graph, format } => {
            artinkit_cli::cmd_classify(&read(&graph)?, matches!(format, ReportFormat::Json))
        }
        Command::Compile {
            nfa,
            group,
            target,
            witness_word,
            output,
        } => {
            let out =
                artinkit_cli::cmd_compile(&read(&nfa)?, &group, &target, witness_word.as_deref())?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &out.text)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    Ok(Output {
                        code: out.code,
                        text: String::new(),
                    })
                }
                None => Ok(out),
            }
        }
        Command::Wp {
            group: WpGroup::Raag { graph, word },
        } => artinkit_cli::cmd_wp_raag(&read(&graph)?, &word),
        Command::Wp {
            group: WpGroup::Braid { strands, word },
        } => artinkit_cli::cmd_wp_braid(strands, &word),
        Command::Benois { nfa, word } => artinkit_cli::cmd_benois(&read(&nfa)?, &word),
        Command::Search { instance, depth } => {
            artinkit_cli::cmd_search(&read(&instance)?, depth, state_cap()?)
        }
        Command::VerifyEmbeddings => artinkit_cli::cmd_verify_embeddings(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
