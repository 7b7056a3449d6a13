//! Run configuration and the small spec languages for patterns, hosts and families.

use std::path::{Path, PathBuf};

use spectral_turan::hypergraph::{
    c5_blowup, complete_bipartite, complete_graph, complete_hypergraph, cycle_graph, path_graph,
    petersen_graph, turan_hypergraph,
};
use spectral_turan::solver::SolverConfig;
use spectral_turan::verify::{FamilyTag, GraphFamilySource};
use spectral_turan::{Hypergraph, Pattern};

use crate::edgelist::parse_edgelist;
use crate::error::{CliError, CliResult};
use crate::graph6::parse_graph6;
use crate::output::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    LowerBound,
    TuranSandwich,
    TuranCount,
    Kny,
    AppendixInequalities,
    Deletion,
}

impl std::str::FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Ok(match s {
            "lower-bound" => Self::LowerBound,
            "turan-sandwich" => Self::TuranSandwich,
            "turan-count" => Self::TuranCount,
            "kny" => Self::Kny,
            "appendix-inequalities" => Self::AppendixInequalities,
            "deletion" => Self::Deletion,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown suite {other:?} (lower-bound, turan-sandwich, turan-count, kny, \
                     appendix-inequalities, deletion)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Count,
    /// `oracle` forces the grid search.
    Lambda { oracle: bool },
    Entropy,
    Construct,
    Verify(Suite),
    Pentagon { n: usize },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Count => "count",
            Self::Lambda { .. } => "lambda",
            Self::Entropy => "entropy",
            Self::Construct => "construct",
            Self::Verify(_) => "verify",
            Self::Pentagon { .. } => "pentagon",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HostSource {
    EdgeList(PathBuf),
    Graph6(PathBuf),
    Generator(String),
}

/// Parameters of the verification suites.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteParams {
    pub m: usize,
    pub q: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// Family spec such as `complete:2..8`; suite default when absent.
    pub family: Option<String>,
    pub resolution: usize,
    /// Random instances per `n` for the m-partite suite.
    pub samples: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            m: 2,
            q: 2,
            n_min: 2,
            n_max: 10,
            family: None,
            resolution: 200,
            samples: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub alpha: f64,
    pub pattern: String,
    pub host: Option<HostSource>,
    pub solver: SolverConfig,
    pub suite: SuiteParams,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            alpha: 2.0,
            pattern: "k2".into(),
            host: None,
            solver: SolverConfig::default(),
            suite: SuiteParams::default(),
            out: None,
            format: Format::Json,
            threads: None,
        }
    }

    pub fn command_name(&self) -> &'static str {
        self.command.name()
    }

    /// Chooses the host source from `--host` / `--graph6`; exactly one is allowed.
    pub fn set_host(&mut self, host: Option<String>, graph6: Option<PathBuf>) -> CliResult<()> {
        self.host = match (host, graph6) {
            (Some(_), Some(_)) => {
                return Err(CliError::Usage("give either --host or --graph6, not both".into()))
            }
            (Some(h), None) if Path::new(&h).is_file() => Some(HostSource::EdgeList(h.into())),
            (Some(h), None) => Some(HostSource::Generator(h)),
            (None, Some(p)) => Some(HostSource::Graph6(p)),
            (None, None) => None,
        };
        Ok(())
    }

    pub fn validate(&self) -> CliResult<()> {
        let oracle_only = matches!(self.command, Command::Lambda { oracle: true });
        let needs_alpha = !matches!(
            self.command,
            Command::Construct
                | Command::Verify(Suite::TuranCount)
                | Command::Verify(Suite::AppendixInequalities)
        );
        if needs_alpha && !(self.alpha > 1.0 || (oracle_only && self.alpha == 1.0)) || !self.alpha.is_finite() {
            return Err(CliError::Usage(format!(
                "--alpha must be > 1 (or exactly 1 with --oracle), got {}",
                self.alpha
            )));
        }
        if self.threads == Some(0) {
            return Err(CliError::Usage("thread count must be positive".into()));
        }
        let needs_host = matches!(
            self.command,
            Command::Count | Command::Lambda { .. } | Command::Entropy | Command::Construct
        );
        if needs_host && self.host.is_none() {
            return Err(CliError::Usage(format!(
                "{} needs --host or --graph6",
                self.command_name()
            )));
        }
        Ok(())
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            alpha: self.alpha,
            ..self.solver.clone()
        }
    }
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::io(&path.display().to_string(), e))
}

fn parse_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("expected integers, found {s:?}")))
        })
        .collect()
}

fn parse_range(s: &str) -> CliResult<std::ops::RangeInclusive<usize>> {
    let bad = || CliError::Usage(format!("expected a range lo..hi, found {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let lo = a.trim().parse().map_err(|_| bad())?;
            let hi = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            Ok(lo..=hi)
        }
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            Ok(n..=n)
        }
    }
}

/// `k2`, `k3`, `c5`, `kr_r:q` (a single `q`-edge), or a path to an edge list.
pub fn parse_pattern(spec: &str) -> CliResult<Pattern> {
    match spec {
        "k2" => Ok(Pattern::k2()),
        "k3" => Ok(Pattern::k3()),
        "c5" => Ok(Pattern::c5()),
        _ => {
            if let Some(q) = spec.strip_prefix("kr_r:") {
                let q: usize = q
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad pattern {spec:?}")))?;
                if q == 0 {
                    return Err(CliError::Usage("kr_r needs q >= 1".into()));
                }
                return Ok(Pattern::single_edge(q));
            }
            let path = Path::new(spec);
            if !path.is_file() {
                return Err(CliError::Usage(format!(
                    "unknown pattern {spec:?} (k2, k3, c5, kr_r:q, or an edge-list file)"
                )));
            }
            let text = String::from_utf8_lossy(&read(path)?).into_owned();
            Ok(Pattern::new(parse_edgelist(&text)?)?)
        }
    }
}

/// Generator specs: `complete:n`, `complete:n,r`, `cycle:n`, `path:n`,
/// `bipartite:a,b`, `petersen`, `turan:m,q,n`, `blowup:a,b,c,d,e`, `empty:n,r`.
pub fn parse_generator(spec: &str) -> CliResult<Hypergraph> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let a = if args.is_empty() { Vec::new() } else { parse_list(args)? };
    let arity = |k: usize| -> CliResult<()> {
        if a.len() == k {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{name} takes {k} argument(s): {spec:?}")))
        }
    };
    Ok(match name {
        "complete" if a.len() == 2 => complete_hypergraph(a[0], a[1])?,
        "complete" => {
            arity(1)?;
            complete_graph(a[0])
        }
        "cycle" => {
            arity(1)?;
            cycle_graph(a[0])?
        }
        "path" => {
            arity(1)?;
            path_graph(a[0])
        }
        "bipartite" => {
            arity(2)?;
            complete_bipartite(a[0], a[1])
        }
        "petersen" => {
            arity(0)?;
            petersen_graph()
        }
        "turan" => {
            arity(3)?;
            turan_hypergraph(a[0], a[1], a[2])?
        }
        "blowup" => {
            arity(5)?;
            c5_blowup(&a)?
        }
        "empty" => {
            arity(2)?;
            Hypergraph::empty(a[0], a[1])?
        }
        _ => {
            return Err(CliError::Usage(format!(
                "unknown host {spec:?}: not a file and not a generator spec"
            )))
        }
    })
}

/// Loads the host graphs with display names.
pub fn load_hosts(source: &HostSource) -> CliResult<Vec<(String, Hypergraph)>> {
    match source {
        HostSource::EdgeList(p) => {
            let text = String::from_utf8_lossy(&read(p)?).into_owned();
            Ok(vec![(p.display().to_string(), parse_edgelist(&text)?)])
        }
        HostSource::Graph6(p) => {
            let graphs = parse_graph6(&read(p)?)?;
            Ok(graphs
                .into_iter()
                .enumerate()
                .map(|(k, g)| (format!("{}#{}", p.display(), k + 1), g))
                .collect())
        }
        HostSource::Generator(spec) => Ok(vec![(spec.clone(), parse_generator(spec)?)]),
    }
}

/// Family specs: `complete:lo..hi`, `paths-cycles:lo..hi`, `c5-blowups:lo..hi`,
/// `triangle-free:lo..hi`, `turan:m,q:lo..hi`.
pub fn parse_family(spec: &str) -> CliResult<GraphFamilySource> {
    let (name, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("family spec needs name:range, got {spec:?}")))?;
    let (tag, range) = match name {
        "complete" => (FamilyTag::Complete, rest),
        "paths-cycles" => (FamilyTag::PathsCycles, rest),
        "c5-blowups" => (FamilyTag::C5Blowups, rest),
        "triangle-free" => (FamilyTag::TriangleFree, rest),
        "turan" => {
            let (mq, range) = rest
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("expected turan:m,q:lo..hi, got {spec:?}")))?;
            let v = parse_list(mq)?;
            let [m, q] = v[..] else {
                return Err(CliError::Usage(format!("expected turan:m,q:lo..hi, got {spec:?}")));
            };
            (FamilyTag::Turan { m, q }, range)
        }
        other => return Err(CliError::Usage(format!("unknown family {other:?}"))),
    };
    Ok(GraphFamilySource::Generator {
        tag,
        sizes: parse_range(range)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns() {
        assert_eq!(parse_pattern("c5").unwrap().q(), 5);
        assert_eq!(parse_pattern("kr_r:3").unwrap().aut_count(), 6);
        assert!(parse_pattern("k9").is_err());
    }

    #[test]
    fn generators() {
        assert_eq!(parse_generator("complete:8").unwrap().edge_count(), 28);
        assert_eq!(parse_generator("turan:5,5,10").unwrap().edge_count(), 32);
        assert_eq!(parse_generator("petersen").unwrap().edge_count(), 15);
        assert_eq!(parse_generator("blowup:2,1,1,1,1").unwrap().n(), 6);
        assert_eq!(parse_generator("complete:5,3").unwrap().edge_count(), 10);
        assert!(parse_generator("cycle:2").is_err());
        assert!(parse_generator("cycle").is_err());
        assert!(parse_generator("nonsense:1").is_err());
    }

    #[test]
    fn families_and_ranges() {
        assert_eq!(parse_range("2..8").unwrap(), 2..=8);
        assert_eq!(parse_range("2..=8").unwrap(), 2..=8);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        let src = parse_family("turan:3,2:2..6").unwrap();
        assert_eq!(src.graphs(false).unwrap().members.len(), 5);
        assert!(parse_family("complete").is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = RunConfig::new(Command::Lambda { oracle: false });
        assert!(cfg.validate().is_err());
        cfg.set_host(Some("complete:3".into()), None).unwrap();
        assert!(cfg.validate().is_ok());
        cfg.alpha = 1.0;
        assert!(cfg.validate().is_err());
        cfg.command = Command::Lambda { oracle: true };
        assert!(cfg.validate().is_ok());
        assert!(cfg.set_host(Some("x".into()), Some("y".into())).is_err());
    }
}
