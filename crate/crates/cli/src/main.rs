use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use spectral_turan_cli::{run, CliError, Command, Format, RunConfig, Suite, THREADS_ENV};

#[derive(Parser)]
#[command(name = "spectral-turan", version, about = "(alpha, Q)-spectral radii of uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Exponent of the sphere constraint.
    #[arg(long, global = true, default_value_t = 2.0)]
    alpha: f64,
    /// k2 | k3 | c5 | kr_r:q | path to an edge list.
    #[arg(long, global = true, default_value = "k2")]
    pattern: String,
    /// Edge-list file or generator spec (complete:n, cycle:n, turan:m,q,n, blowup:a,b,c,d,e, ...).
    #[arg(long, global = true)]
    host: Option<String>,
    /// graph6 file, one graph per line.
    #[arg(long, global = true)]
    graph6: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 10_000)]
    max_iter: usize,
    #[arg(long, global = true, default_value_t = 16)]
    restarts: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Grid subdivisions for the oracle.
    #[arg(long, global = true, default_value_t = 60)]
    grid: usize,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json | csv | text
    #[arg(long, global = true, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// inj(Q,H), copies and Q-degrees.
    Count,
    /// The (alpha,Q)-spectral radius.
    Lambda {
        /// Use the grid oracle (required for alpha = 1).
        #[arg(long)]
        oracle: bool,
    },
    /// Entropic density and its comparison with lambda.
    Entropy,
    /// Print the host as an edge list.
    Construct {
        /// Generator spec; same as --host.
        spec: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        /// lower-bound | turan-sandwich | turan-count | kny | appendix-inequalities | deletion
        suite: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// complete:lo..hi | paths-cycles:lo..hi | c5-blowups:lo..hi | triangle-free:lo..hi | turan:m,q:lo..hi
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, default_value_t = 2)]
        samples: usize,
    },
    /// Triangle-free maximizers of lambda_{alpha,C5} on n vertices.
    Pentagon {
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
}

fn config(cli: Cli) -> Result<RunConfig, CliError> {
    let mut host = cli.common.host.clone();
    let command = match cli.command {
        Cmd::Count => Command::Count,
        Cmd::Lambda { oracle } => Command::Lambda { oracle },
        Cmd::Entropy => Command::Entropy,
        Cmd::Construct { ref spec } => {
            if spec.is_some() {
                host = spec.clone();
            }
            Command::Construct
        }
        Cmd::Verify { ref suite, .. } => Command::Verify(suite.parse::<Suite>()?),
        Cmd::Pentagon { n } => Command::Pentagon { n },
    };
    let mut cfg = RunConfig::new(command);
    if let Cmd::Verify { m, q, n_min, n_max, family, resolution, samples, .. } = cli.command {
        cfg.suite.m = m;
        cfg.suite.q = q;
        cfg.suite.n_min = n_min;
        cfg.suite.n_max = n_max;
        cfg.suite.family = family;
        cfg.suite.resolution = resolution;
        cfg.suite.samples = samples;
    }
    let c = cli.common;
    cfg.alpha = c.alpha;
    cfg.pattern = c.pattern;
    cfg.set_host(host, c.graph6)?;
    cfg.solver.tol = c.tol;
    cfg.solver.max_iter = c.max_iter;
    cfg.solver.restarts = c.restarts;
    cfg.solver.seed = c.seed;
    cfg.solver.grid_resolution = c.grid;
    cfg.out = c.out;
    cfg.format = c.format.parse::<Format>()?;
    cfg.threads = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(v.parse().map_err(|_| {
            CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))
        })?),
        Err(_) => None,
    };
    Ok(cfg)
}

fn main() {
    let code = match config(Cli::parse()) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
