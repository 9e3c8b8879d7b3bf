mod output;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use chipfire::corpus::CorpusSpec;
use chipfire::document::GraphDocument;
use chipfire::picard::DEFAULT_CLASS_CAP;
use chipfire::rank::DEFAULT_RANK_DEGREE_CAP;
use chipfire::verify::{self, VerifyConfig};
use chipfire::{
    balance_report, bullet_model, canonical_divisor, contract, enumerate_classes,
    find_semibalanced_representative, is_equivalent, kz_bound, picard_structure, push_forward,
    q_reduce, ContractionMap, Divisor, Graph, RankEngine, Violation,
};

use output::{integer, Format, Report};

#[derive(Parser)]
#[command(
    name = "chipfire",
    version,
    about = "Divisors, ranks and Picard groups of vertex-weighted multigraphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Graph document (JSON).
    graph: PathBuf,
}

#[derive(Args)]
struct DivisorArgs {
    /// Graph document (JSON).
    graph: PathBuf,
    /// Inline tuple such as "(-2,3,-1)" or the name of a divisor in the document.
    #[arg(long, short, allow_hyphen_values = true)]
    divisor: String,
}

#[derive(Subcommand)]
enum Command {
    /// Genus |E| - |V| + 1 + total weight.
    Genus(GraphArg),
    /// Canonical divisor.
    Canonical(GraphArg),
    /// Rank of a divisor.
    Rank {
        #[command(flatten)]
        args: DivisorArgs,
        /// Also print the failing effective divisor on the weightless loopless model.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = DEFAULT_RANK_DEGREE_CAP)]
        degree_cap: i64,
    },
    /// Reduced representative with respect to a basepoint.
    Reduce {
        #[command(flatten)]
        args: DivisorArgs,
        /// Basepoint vertex id.
        #[arg(long)]
        basepoint: String,
    },
    /// Linear equivalence of two divisors.
    Equiv {
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        d1: String,
        #[arg(long, allow_hyphen_values = true)]
        d2: String,
    },
    /// Invariant factors and order of the degree-zero Picard group.
    Pic(GraphArg),
    /// One reduced representative per class of the given degree.
    Classes {
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: u64,
    },
    /// Contract a set of edges (1-based positions, optionally written e4).
    Contract {
        graph: PathBuf,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        edges: Vec<String>,
    },
    /// Push a divisor forward along an edge contraction.
    Pushforward {
        #[command(flatten)]
        args: DivisorArgs,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        edges: Vec<String>,
    },
    /// Riemann-Roch identity r(d) - r(k - d) = deg d - g + 1.
    RrCheck(DivisorArgs),
    /// Clifford bound r(d) <= deg(d)/2 for 0 <= deg d <= 2g - 2.
    Clifford(DivisorArgs),
    /// Whether the subset hypotheses forcing r(d) <= r - 1 hold at a vertex.
    Kz {
        #[command(flatten)]
        args: DivisorArgs,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        r: u32,
    },
    /// Semibalanced and balanced conditions, subset by subset.
    Balance(DivisorArgs),
    /// A semibalanced divisor in the class of the given one.
    SemibalanceRep(DivisorArgs),
    /// Weightless loopless model of the graph.
    Bullet(GraphArg),
    /// Run the property suites over an exhaustive corpus of small graphs.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        /// Bound on the total vertex weight of corpus graphs.
        #[arg(long, default_value_t = 2)]
        max_weight: u64,
        /// Upper limit on the degree of divisors used in rank checks.
        #[arg(long, allow_hyphen_values = true)]
        max_degree: Option<i64>,
        /// Divisor coefficients range over [-B, B].
        #[arg(long, default_value_t = 3)]
        coeff_bound: i64,
        #[arg(long, default_value_t = 1000)]
        random_functions: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Leave graphs with loops out of the corpus.
        #[arg(long)]
        no_loops: bool,
    },
}

type Outcome = Result<Report, String>;

fn load(path: &Path) -> Result<(GraphDocument, Graph), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc = GraphDocument::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let graph = doc
        .to_graph()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((doc, graph))
}

fn load_divisor(args: &DivisorArgs) -> Result<(GraphDocument, Graph, Divisor), String> {
    let (doc, graph) = load(&args.graph)?;
    let d = doc.resolve_divisor(&graph, &args.divisor).map_err(err)?;
    Ok((doc, graph, d))
}

fn err(e: chipfire::Error) -> String {
    e.to_string()
}

fn ids(graph: &Graph) -> Value {
    json!(graph.ids())
}

fn edge_indices(graph: &Graph, refs: &[String]) -> Result<Vec<usize>, String> {
    refs.iter()
        .map(|r| {
            let digits = r.trim().trim_start_matches(['e', 'E']);
            let position: usize = digits
                .parse()
                .map_err(|_| format!("`{r}` is not an edge reference like 4 or e4"))?;
            if position == 0 || position > graph.edge_count() {
                return Err(format!(
                    "edge `{r}` out of range 1..={}",
                    graph.edge_count()
                ));
            }
            Ok(position - 1)
        })
        .collect()
}

fn contraction(graph: &Graph, refs: &[String]) -> Result<ContractionMap, String> {
    contract(graph, &edge_indices(graph, refs)?).map_err(err)
}

fn subset_names<'a>(graph: &'a Graph, z: &[usize]) -> Vec<&'a str> {
    z.iter().map(|&v| graph.id(v)).collect()
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Genus(a) => {
            let (_, g) = load(&a.graph)?;
            let genus = g.genus();
            Ok(Report::new("genus", json!(genus), genus.to_string()))
        }
        Command::Canonical(a) => {
            let (_, g) = load(&a.graph)?;
            let k = canonical_divisor(&g);
            Ok(Report::new("canonical", json!(k.coeffs()), k.to_string())
                .detail("vertices", ids(&g)))
        }
        Command::Rank {
            args,
            witness,
            degree_cap,
        } => {
            let (_, g, d) = load_divisor(&args)?;
            let mut engine = RankEngine::new(&g).with_degree_cap(degree_cap);
            let result = engine.rank(&d).map_err(err)?;
            let mut text = result.value.to_string();
            let mut report = Report::new("rank", json!(result.value), "");
            if let Some(w) = &result.witness {
                if witness {
                    text.push_str(&format!("\nwitness: {w}"));
                }
                report = report
                    .detail("witness", json!(w.coeffs()))
                    .detail("model_vertices", ids(w.graph()));
            }
            report.text = text;
            Ok(report)
        }
        Command::Reduce { args, basepoint } => {
            let (_, g, d) = load_divisor(&args)?;
            let q = g.vertex_index(&basepoint).map_err(err)?;
            let reduced = q_reduce(&d, q).map_err(err)?;
            Ok(Report::new(
                "reduce",
                json!(reduced.base.coeffs()),
                reduced.base.to_string(),
            )
            .detail("basepoint", json!(basepoint))
            .detail("effective_class", json!(reduced.is_class_effective())))
        }
        Command::Equiv { graph, d1, d2 } => {
            let (doc, g) = load(&graph)?;
            let a = doc.resolve_divisor(&g, &d1).map_err(err)?;
            let b = doc.resolve_divisor(&g, &d2).map_err(err)?;
            let same = is_equivalent(&a, &b).map_err(err)?;
            let text = if same { "equivalent" } else { "not equivalent" };
            Ok(Report::new("equiv", json!(same), text).negative_if(!same))
        }
        Command::Pic(a) => {
            let (_, g) = load(&a.graph)?;
            let p = picard_structure(&g);
            let factors: Vec<String> = p.invariant_factors.iter().map(|f| f.to_string()).collect();
            let order = p.order.to_string();
            let text = format!(
                "invariant factors: [{}]\norder: {order}",
                factors.join(", ")
            );
            let factors: Vec<Value> = factors.iter().map(|f| integer(f)).collect();
            Ok(Report::new(
                "pic",
                json!({"invariant_factors": factors, "order": integer(&order)}),
                text,
            ))
        }
        Command::Classes { graph, degree, cap } => {
            let (_, g) = load(&graph)?;
            let classes = enumerate_classes(&g, degree, cap).map_err(err)?;
            let text: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
            let result: Vec<&[i64]> = classes.iter().map(|c| c.coeffs()).collect();
            Ok(Report::new("classes", json!(result), text.join("\n"))
                .detail("count", json!(classes.len()))
                .detail("degree", json!(degree)))
        }
        Command::Contract { graph, edges } => {
            let (_, g) = load(&graph)?;
            let cm = contraction(&g, &edges)?;
            let doc = GraphDocument::from_graph(&cm.target);
            let map: serde_json::Map<String, Value> = (0..g.vertex_count())
                .map(|v| (g.id(v).to_string(), json!(cm.target.id(cm.vertex_map[v]))))
                .collect();
            Ok(Report::new(
                "contract",
                serde_json::to_value(&doc).expect("document"),
                doc.to_json(),
            )
            .detail("vertex_map", Value::Object(map))
            .detail("genus", json!(cm.target.genus())))
        }
        Command::Pushforward { args, edges } => {
            let (_, g, d) = load_divisor(&args)?;
            let cm = contraction(&g, &edges)?;
            let pushed = push_forward(&cm, &d).map_err(err)?;
            Ok(
                Report::new("pushforward", json!(pushed.coeffs()), pushed.to_string())
                    .detail("vertices", ids(&cm.target)),
            )
        }
        Command::RrCheck(args) => {
            let (_, g, d) = load_divisor(&args)?;
            let rr = RankEngine::new(&g).riemann_roch(&d).map_err(err)?;
            let verdict = if rr.holds() { "holds" } else { "fails" };
            let text = format!(
                "r(d) = {}, r(k - d) = {}, deg(d) - g + 1 = {}: {verdict}",
                rr.rank, rr.dual_rank, rr.expected
            );
            Ok(Report::new("rr-check", json!(rr.holds()), text)
                .detail("rank", json!(rr.rank))
                .detail("dual_rank", json!(rr.dual_rank))
                .detail("expected", json!(rr.expected))
                .negative_if(!rr.holds()))
        }
        Command::Clifford(args) => {
            let (_, g, d) = load_divisor(&args)?;
            let mut engine = RankEngine::new(&g);
            let holds = engine.clifford(&d).map_err(err)?;
            let r = engine.rank_value(&d).map_err(err)?;
            let verdict = if holds { "holds" } else { "fails" };
            let text = format!("r(d) = {r}, deg(d)/2 = {}/2: {verdict}", d.degree());
            Ok(Report::new("clifford", json!(holds), text)
                .detail("rank", json!(r))
                .detail("degree", json!(d.degree()))
                .negative_if(!holds))
        }
        Command::Kz { args, vertex, r } => {
            let (_, g, d) = load_divisor(&args)?;
            let v = g.vertex_index(&vertex).map_err(err)?;
            let holds = kz_bound(&g, &d, v, r).map_err(err)?;
            Ok(Report::new("kz", json!(holds), holds.to_string()).negative_if(!holds))
        }
        Command::Balance(args) => {
            let (_, g, d) = load_divisor(&args)?;
            let report = balance_report(&g, &d).map_err(err)?;
            let violation = match &report.violation {
                None => Value::Null,
                Some(Violation::Subset(z)) => json!({"subset": subset_names(&g, z)}),
                Some(Violation::Vertex(v)) => json!({"vertex": g.id(*v)}),
            };
            let mut lines = vec![
                format!("semibalanced: {}", report.semibalanced),
                format!("balanced: {}", report.balanced),
                match &report.violation {
                    None => "violation: none".to_string(),
                    Some(Violation::Subset(z)) => {
                        format!("violation: subset {{{}}}", subset_names(&g, z).join(","))
                    }
                    Some(Violation::Vertex(v)) => format!("violation: vertex {}", g.id(*v)),
                },
            ];
            let mut checks = Vec::new();
            for c in &report.subset_checks {
                let names = subset_names(&g, &c.subset);
                lines.push(format!(
                    "{{{}}}: {} >= {}",
                    names.join(","),
                    c.value,
                    c.bound
                ));
                let bound = if c.bound.is_integer() {
                    json!(c.bound.to_integer())
                } else {
                    json!(c.bound.to_string())
                };
                checks.push(
                    json!({"subset": names, "value": c.value, "bound": bound, "holds": c.holds()}),
                );
            }
            Ok(Report::new(
                "balance",
                json!({"semibalanced": report.semibalanced, "balanced": report.balanced}),
                lines.join("\n"),
            )
            .detail("violation", violation)
            .detail("checks", Value::Array(checks))
            .negative_if(!report.semibalanced))
        }
        Command::SemibalanceRep(args) => {
            let (_, g, d) = load_divisor(&args)?;
            let rep = find_semibalanced_representative(&g, &d).map_err(err)?;
            Ok(Report::new(
                "semibalance-rep",
                json!(rep.coeffs()),
                rep.to_string(),
            ))
        }
        Command::Bullet(a) => {
            let (_, g) = load(&a.graph)?;
            let model = bullet_model(&g);
            let doc = GraphDocument::from_graph(&model.bullet);
            let embedding: Vec<&str> = model
                .vertex_embedding
                .iter()
                .map(|&v| model.bullet.id(v))
                .collect();
            Ok(Report::new(
                "bullet",
                serde_json::to_value(&doc).expect("document"),
                doc.to_json(),
            )
            .detail("embedding", json!(embedding)))
        }
        Command::Verify {
            max_vertices,
            max_edges,
            max_weight,
            max_degree,
            coeff_bound,
            random_functions,
            seed,
            no_loops,
        } => {
            let config = VerifyConfig {
                corpus: CorpusSpec {
                    max_vertices,
                    max_edges,
                    max_total_weight: max_weight,
                    loops: !no_loops,
                },
                coeff_bound,
                max_degree,
                random_functions,
                seed,
                ..VerifyConfig::default()
            };
            let report = verify::run(&config).map_err(err)?;
            let mut lines = vec![format!("corpus: {} graphs", report.graphs)];
            let mut properties = Vec::new();
            for p in &report.properties {
                let status = if p.passed() { "PASS" } else { "FAIL" };
                lines.push(format!(
                    "{status} {}/{}: {} checked, {} failed",
                    p.suite.name(),
                    p.name,
                    p.checked,
                    p.failed
                ));
                let counterexample = p.counterexample.as_ref().map(|c| {
                    json!({"detail": c.detail, "document": serde_json::to_value(&c.document).expect("document")})
                });
                properties.push(json!({
                    "suite": p.suite.name(),
                    "name": p.name,
                    "checked": p.checked,
                    "failed": p.failed,
                    "counterexample": counterexample,
                }));
            }
            for p in report.properties.iter().filter(|p| !p.passed()) {
                let c = p.counterexample.as_ref().expect("failure has an example");
                lines.push(format!(
                    "counterexample for {}: {}\n{}",
                    p.name,
                    c.detail,
                    c.document.to_json()
                ));
            }
            Ok(
                Report::new("verify", json!(report.passed()), lines.join("\n"))
                    .detail("graphs", json!(report.graphs))
                    .detail("properties", Value::Array(properties))
                    .negative_if(!report.passed()),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            // first paragraph of clap's message, folded onto one line
            let rendered = e.to_string();
            let summary: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            eprintln!("{}", summary.join(" "));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(report) => {
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", report.render(cli.format));
            if report.affirmative {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {}", msg.lines().next().unwrap_or(""));
            ExitCode::from(2)
        }
    }
}
