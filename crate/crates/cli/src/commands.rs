use serde::Serialize;

use spectral_turan::embeddings::enumerate_injective;
use spectral_turan::entropy::entropic_density;
use spectral_turan::solver::{brute_force_lambda, solve_certified, Method, SpectralResult};
use spectral_turan::verify::{
    check_appendix_inequalities, check_kny_suite, check_lower_bound_suite, check_turan_count,
    check_turan_sandwich, deletion_and_degree_reports, pentagon_desk_check, random_partite_family,
    Family, FamilyTag, GraphFamilySource, PartiteInstance, VerifyReport,
};

use crate::config::{load_hosts, parse_family, parse_generator, parse_pattern, Command, HostSource, RunConfig, Suite};
use crate::edgelist::write_edgelist;
use crate::error::{CliError, CliResult};
use crate::output::{write_report, Document};

/// Exit status of a successful run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// An exact claim failed.
    AssertionFailed,
    /// Some solve did not reach the KKT tolerance.
    NotConverged,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Self::Ok => 0,
            Self::AssertionFailed => 1,
            Self::NotConverged => 3,
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone)]
pub enum Output {
    Report(Document),
    /// Raw text such as an edge list.
    Text(String),
}

#[derive(Serialize)]
struct CountRecord<'a> {
    host: &'a str,
    n: usize,
    edges: usize,
    inj: usize,
    copies: usize,
    aut: usize,
    min_degree: usize,
    avg_degree: f64,
    degrees: Vec<usize>,
}

#[derive(Serialize)]
struct LambdaRecord<'a> {
    host: &'a str,
    n: usize,
    edges: usize,
    lambda: f64,
    kkt_residual: f64,
    converged: bool,
    certified_global: bool,
    method: Method,
    iterations: usize,
    restarts_used: usize,
    x_opt: &'a [f64],
}

impl<'a> LambdaRecord<'a> {
    fn new(host: &'a str, h: &spectral_turan::Hypergraph, r: &'a SpectralResult) -> Self {
        Self {
            host,
            n: h.n(),
            edges: h.edge_count(),
            lambda: r.lambda,
            kkt_residual: r.kkt_residual,
            converged: r.converged,
            certified_global: r.certified_global,
            method: r.method,
            iterations: r.iterations,
            restarts_used: r.restarts_used,
            x_opt: r.x_opt.entries(),
        }
    }
}

fn solver_meta(doc: Document, cfg: &RunConfig) -> CliResult<Document> {
    let s = &cfg.solver;
    doc.meta("alpha", cfg.alpha)?
        .meta("pattern", &cfg.pattern)?
        .meta("tol", s.tol)?
        .meta("max_iter", s.max_iter)?
        .meta("restarts", s.restarts)?
        .meta("seed", s.seed)?
        .meta("grid", s.grid_resolution)
}

fn verify_output(report: VerifyReport) -> CliResult<(Output, Outcome)> {
    let mut doc = Document::from_report("verify", &report)?;
    doc.runtime = Some(report.runtime());
    let outcome = if report.passed() {
        Outcome::Ok
    } else {
        Outcome::AssertionFailed
    };
    Ok((Output::Report(doc), outcome))
}

fn family(cfg: &RunConfig, default: &str) -> CliResult<Family> {
    let source = match &cfg.host {
        Some(HostSource::Graph6(_)) | Some(HostSource::EdgeList(_)) => {
            let hosts = load_hosts(cfg.host.as_ref().expect("checked"))?;
            return Ok(Family::from_graphs(hosts));
        }
        Some(HostSource::Generator(spec)) => {
            return Ok(Family::from_graphs(vec![(spec.clone(), parse_generator(spec)?)]))
        }
        None => parse_family(cfg.suite.family.as_deref().unwrap_or(default))?,
    };
    Ok(source.graphs(false)?)
}

fn run_verify(cfg: &RunConfig, suite: Suite) -> CliResult<(Output, Outcome)> {
    let p = &cfg.suite;
    let solver = cfg.solver_config();
    let ns = p.n_min..=p.n_max;
    let report = match suite {
        Suite::LowerBound => {
            let pattern = parse_pattern(&cfg.pattern)?;
            check_lower_bound_suite(&pattern, &family(cfg, "complete:2..8")?, cfg.alpha, &solver)
        }
        Suite::Deletion => {
            let pattern = parse_pattern(&cfg.pattern)?;
            deletion_and_degree_reports(&pattern, &family(cfg, "complete:3..8")?, cfg.alpha, &solver)
        }
        Suite::TuranSandwich => check_turan_sandwich(p.m, p.q, ns, cfg.alpha, &solver)?,
        Suite::TuranCount => check_turan_count(p.m, p.q, ns)?,
        Suite::AppendixInequalities => check_appendix_inequalities(p.resolution)?,
        Suite::Kny => {
            let instances: Vec<PartiteInstance> = match (&cfg.host, &p.family) {
                (None, None) => random_partite_family(p.m, p.q, ns, p.samples, solver.seed)?,
                _ => family(cfg, "")?
                    .members
                    .into_iter()
                    .map(|(name, graph)| PartiteInstance {
                        name,
                        graph,
                        partition: None,
                    })
                    .collect(),
            };
            check_kny_suite(p.m, p.q, cfg.alpha, &instances, &solver)?
        }
    };
    verify_output(report)
}

/// Runs one command without writing anything.
pub fn execute(cfg: &RunConfig) -> CliResult<(Output, Outcome)> {
    cfg.validate()?;
    let solver = cfg.solver_config();
    match &cfg.command {
        Command::Count => {
            let pattern = parse_pattern(&cfg.pattern)?;
            let hosts = load_hosts(cfg.host.as_ref().expect("validated"))?;
            let mut doc = Document::new("count").meta("pattern", &cfg.pattern)?;
            for (name, h) in &hosts {
                let list = enumerate_injective(&pattern, h)?;
                let stats = list.degree_stats();
                doc.push(CountRecord {
                    host: name,
                    n: h.n(),
                    edges: h.edge_count(),
                    inj: list.len(),
                    copies: list.copies(),
                    aut: pattern.aut_count(),
                    min_degree: stats.min,
                    avg_degree: stats.avg,
                    degrees: list.degrees(),
                })?;
            }
            Ok((Output::Report(doc), Outcome::Ok))
        }
        Command::Lambda { oracle } => {
            let pattern = parse_pattern(&cfg.pattern)?;
            let hosts = load_hosts(cfg.host.as_ref().expect("validated"))?;
            let mut doc = solver_meta(Document::new("lambda"), cfg)?;
            let mut outcome = Outcome::Ok;
            for (name, h) in &hosts {
                let r = if *oracle || cfg.alpha == 1.0 {
                    brute_force_lambda(&pattern, h, &solver)?
                } else {
                    solve_certified(&pattern, h, &solver)?
                };
                if !r.converged {
                    outcome = Outcome::NotConverged;
                }
                doc.push(LambdaRecord::new(name, h, &r))?;
            }
            Ok((Output::Report(doc), outcome))
        }
        Command::Entropy => {
            let pattern = parse_pattern(&cfg.pattern)?;
            let hosts = load_hosts(cfg.host.as_ref().expect("validated"))?;
            let mut doc = solver_meta(Document::new("entropy"), cfg)?;
            let mut outcome = Outcome::Ok;
            for (name, h) in &hosts {
                let r = entropic_density(&pattern, h, cfg.alpha, &solver)?;
                if !r.passed() {
                    outcome = Outcome::AssertionFailed;
                }
                let mut v = serde_json::to_value(&r)?;
                v.as_object_mut()
                    .expect("struct serializes to an object")
                    .insert("passed".into(), r.passed().into());
                doc.push(serde_json::json!({ "host": name }))?;
                let last = doc.instances.last_mut().expect("just pushed");
                last.as_object_mut()
                    .expect("object")
                    .extend(v.as_object().cloned().unwrap_or_default());
            }
            Ok((Output::Report(doc), outcome))
        }
        Command::Construct => {
            let hosts = load_hosts(cfg.host.as_ref().expect("validated"))?;
            let text = hosts.iter().map(|(_, h)| write_edgelist(h)).collect::<Vec<_>>().join("\n");
            Ok((Output::Text(text), Outcome::Ok))
        }
        Command::Verify(suite) => run_verify(cfg, *suite),
        Command::Pentagon { n } => {
            let source = match &cfg.host {
                None => None,
                Some(HostSource::Graph6(_)) => Some(GraphFamilySource::Stream {
                    descriptor: "graph6".into(),
                    graphs: load_hosts(cfg.host.as_ref().expect("some"))?
                        .into_iter()
                        .map(|(_, g)| g)
                        .collect(),
                }),
                Some(_) => {
                    return Err(CliError::Usage(
                        "pentagon reads hosts from --graph6 or the internal generator".into(),
                    ))
                }
            };
            let default = GraphFamilySource::Generator {
                tag: FamilyTag::TriangleFree,
                sizes: *n..=*n,
            };
            let report = pentagon_desk_check(*n, cfg.alpha, Some(source.as_ref().unwrap_or(&default)), &solver)?;
            let mut doc = Document::from_report("pentagon", &report.to_verify_report())?
                .meta("source", &report.source)?
                .meta("maximizer", &report.graphs[report.maximizer].name)?
                .meta("maximizer_colorable", report.maximizer_colorable)?
                .meta("maximizer_is_best_blowup", report.maximizer_is_best_blowup)?
                .meta("best_blowup", report.best_blowup)?;
            doc.runtime = None;
            Ok((Output::Report(doc), Outcome::Ok))
        }
    }
}

/// Executes and writes the output; returns the process exit code
/// (0 ok, 1 failed exact claim, 2 input error, 3 non-convergence).
pub fn run(cfg: &RunConfig) -> i32 {
    let go = || -> CliResult<i32> {
        let (output, outcome) = execute(cfg)?;
        match output {
            Output::Report(doc) => write_report(&doc, cfg.format, cfg.out.as_deref())?,
            Output::Text(text) => match &cfg.out {
                Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(&p.display().to_string(), e))?,
                None => print!("{text}"),
            },
        }
        Ok(outcome.code())
    };
    let result = match cfg.threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(go),
            Err(e) => Err(CliError::Usage(format!("thread pool: {e}"))),
        },
        None => go(),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
