use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lpa_core::engine::{PrimeField, Rationals};
use lpa_core::random::RandomConfig;
use lpa_core::report::{
    campaign, center_envelope, classify_envelope, render_text, CenterOptions, ReportEnvelope,
    EXIT_INPUT, SCHEMA,
};
use lpa_core::{parse_graph, Error, Graph};

#[derive(Parser)]
#[command(
    name = "lpa",
    version,
    about = "Classify graphs and compute centers of their Leavitt path algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex and cycle classification plus ideal structure.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Center basis, isomorphism type and optional checks.
    Center {
        file: PathBuf,
        /// Check every basis element against all generators.
        #[arg(long)]
        verify: bool,
        /// Compare spans with the brute-force commutant.
        #[arg(long)]
        oracle: bool,
        /// Length bound for the oracle (default: smallest accepted).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: Option<u64>,
        /// Degree window |n| ≤ N for nonzero components.
        #[arg(long)]
        degrees: Option<u32>,
        /// `q` for the rationals or `p:<prime>`.
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Seeded campaign over random multigraphs.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_edges: usize,
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Print the report JSON schema.
    Schema,
}

enum FieldChoice {
    Q,
    P(PrimeField),
}

fn parse_field(text: &str) -> Result<FieldChoice, Error> {
    if text.eq_ignore_ascii_case("q") {
        return Ok(FieldChoice::Q);
    }
    let p = text
        .strip_prefix("p:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Error::Config(format!("field must be `q` or `p:<prime>`, got `{text}`")))?;
    Ok(FieldChoice::P(PrimeField::new(p)?))
}

fn load(file: &PathBuf) -> Result<Graph, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", file.display()))
}

fn emit(env: &ReportEnvelope, format: Format) {
    match format {
        Format::Json => println!("{}", env.to_json()),
        Format::Text => print!("{}", render_text(env)),
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT as u8)
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Classify { file, format } => {
            let g = match load(&file) {
                Ok(g) => g,
                Err(e) => return input_error(e),
            };
            let env = classify_envelope(&g);
            emit(&env, format);
            ExitCode::from(env.exit_code() as u8)
        }
        Command::Center {
            file,
            verify,
            oracle,
            max_len,
            degrees,
            field,
            format,
        } => {
            let field = match parse_field(&field) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            let g = match load(&file) {
                Ok(g) => g,
                Err(e) => return input_error(e),
            };
            let opts = CenterOptions {
                verify,
                oracle,
                max_len: max_len.map(|n| n as usize),
                window: degrees.map(i64::from),
            };
            let env = match field {
                FieldChoice::Q => center_envelope(&g, Rationals, &opts),
                FieldChoice::P(p) => center_envelope(&g, p, &opts),
            };
            emit(&env, format);
            ExitCode::from(env.exit_code() as u8)
        }
        Command::Random {
            seed,
            count,
            max_vertices,
            max_edges,
            field,
        } => {
            let cfg = RandomConfig {
                seed,
                count,
                max_vertices,
                max_edges,
            };
            let opts = CenterOptions::default();
            let result = match parse_field(&field) {
                Ok(FieldChoice::Q) => campaign(&cfg, Rationals, &opts),
                Ok(FieldChoice::P(p)) => campaign(&cfg, p, &opts),
                Err(e) => Err(e),
            };
            match result {
                Ok(c) => {
                    print!("{}", c.to_json_lines());
                    ExitCode::from(c.exit_code() as u8)
                }
                Err(e) => input_error(e),
            }
        }
        Command::Schema => {
            print!("{SCHEMA}");
            ExitCode::SUCCESS
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
