use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quiverlab_cli::api::{self, ApiError, Budget, Op, Options, Request, Response};
use quiverlab_cli::input::{self, Input};
use quiverlab_cli::server;

#[derive(Parser)]
#[command(name = "quiverlab", version, about = "Valued quivers, mutation classes and cluster variables")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

/// Quivers are given as `@catalog-name`, inline JSON, or a JSON file path.
#[derive(Subcommand)]
enum Command {
    /// Check a quiver or seed against the invariants.
    Validate { quiver: String },
    /// Mutate at a vertex, or along a word.
    Mutate {
        quiver: String,
        #[arg(short = 'k', long = "vertex")]
        vertex: Option<usize>,
        /// Letters in written order, applied right to left, e.g. 3,2,1.
        #[arg(long)]
        word: Option<String>,
        /// Also mutate the initial seed.
        #[arg(long)]
        seed: bool,
    },
    /// Explore the mutation class.
    Class {
        quiver: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Weight, finiteness, rigid vertices, v-v symmetry, zigzag and avenues.
    Analyze {
        quiver: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Symmetric-algebra verdict with the variable comparison when feasible.
    Symmetric {
        quiver: String,
        #[arg(long)]
        initial_only: bool,
        #[arg(long)]
        modulo_sign: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Enumerate cluster variables.
    Variables {
        quiver: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Search for a word returning a class member to the root after mutating at a vertex.
    Counter {
        quiver: String,
        #[arg(short = 'k', long = "vertex")]
        vertex: usize,
        /// Class member to start from; defaults to the root.
        #[arg(long)]
        member: Option<String>,
        #[command(flatten)]
        limits: Limits,
    },
    /// List built-in quivers, or print one.
    Catalog { name: Option<String> },
    /// Start the HTTP service.
    Serve {
        /// Defaults to $QUIVERLAB_PORT, then 8080.
        #[arg(long)]
        port: Option<u16>,
    },
}

#[derive(Args)]
struct Limits {
    /// Member cap for class walks, seed cap for closures.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    max_len: Option<usize>,
}

impl Limits {
    fn budget(&self) -> Budget {
        Budget {
            max_seeds: self.budget,
            max_members: self.budget,
            max_depth: self.depth,
            max_terms: self.max_terms,
            max_len: self.max_len,
        }
    }
}

fn request(quiver: &str, budget: Budget, options: Options) -> Result<Request, ApiError> {
    let mut req = Request { budget, options, ..Request::default() };
    match input::parse(quiver)? {
        Input::Quiver(q) => req.quiver = Some(q),
        Input::Seed(s) => req.seed = Some(s),
    }
    Ok(req)
}

fn dispatch(command: Command) -> Result<Response, ApiError> {
    let no = Options::default();
    let (op, req) = match command {
        Command::Validate { quiver } => (Op::Validate, request(&quiver, Budget::default(), no)?),
        Command::Mutate { quiver, vertex, word, seed } => {
            let mut req = request(&quiver, Budget::default(), Options { seed, ..no })?;
            match (vertex, word) {
                (Some(v), None) => {
                    req.vertex = Some(v);
                    (Op::Mutate, req)
                }
                (None, Some(w)) => {
                    req.word = Some(input::word(&w).map_err(ApiError::malformed)?);
                    (Op::Word, req)
                }
                _ => return Err(ApiError::malformed("give exactly one of -k and --word")),
            }
        }
        Command::Class { quiver, limits } => (Op::Class, request(&quiver, limits.budget(), no)?),
        Command::Analyze { quiver, limits } => (Op::Analyze, request(&quiver, limits.budget(), no)?),
        Command::Symmetric { quiver, initial_only, modulo_sign, limits } => {
            (Op::Symmetric, request(&quiver, limits.budget(), Options { initial_only, modulo_sign, ..no })?)
        }
        Command::Variables { quiver, limits } => (Op::Variables, request(&quiver, limits.budget(), no)?),
        Command::Counter { quiver, vertex, member, limits } => {
            let mut req = request(&quiver, limits.budget(), no)?;
            req.vertex = Some(vertex);
            if let Some(m) = member {
                match input::parse(&m)? {
                    Input::Quiver(q) => req.member = Some(q),
                    Input::Seed(s) => req.member = Some(api::QuiverInput::Spec(s.quiver)),
                }
            }
            (Op::Counter, req)
        }
        Command::Catalog { name } => {
            return api::catalog_json(name.as_deref()).map(|result| Response { result, truncated: false })
        }
        Command::Serve { .. } => unreachable!("handled in main"),
    };
    api::run(op, &req)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve { port } = cli.command {
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        return match rt.block_on(server::serve(server::port(port))) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(3)
            }
        };
    }
    match dispatch(cli.command) {
        Ok(r) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string(&r.result),
                Format::Pretty => serde_json::to_string_pretty(&r.result),
            };
            println!("{}", text.expect("serializable"));
            if r.truncated {
                eprintln!("note: stopped by the budget; the result is partial");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            for v in &e.violations {
                eprintln!("  - {v}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
