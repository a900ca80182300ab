//! Command-line interface: argument definitions and dispatch.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use clusterlab::models::bipartite::DiskBipartiteGraph;
use clusterlab::models::double_wiring::DoubleWiringDiagram;
use clusterlab::models::triangulation::Triangulation;
use clusterlab::models::wiring::WiringDiagram;
use clusterlab::rational::RationalFunction;
use clusterlab::search::{
    explore_matrix_class, explore_quiver_class, explore_seeds, ExplorationLimits, MutationClassGraph,
};
use clusterlab::seed::{MutationWord, Seed};
use clusterlab::sequences::*;
use clusterlab::tp::*;
use clusterlab::ypattern::YSeed;
use clusterlab::{Error, ExchangeMatrix, Quiver};
use num_rational::BigRational;
use serde_json::json;

use crate::render::{graph_json, quiver_json, seed_state};

pub const DEFAULT_PORT: u16 = 7878;

#[derive(Parser, Debug)]
#[command(name = "clusterlab", version, about = "Exact computations with cluster algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Extended exchange matrix in text form (`m n` header, one row per line)
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Quiver given by its matrix in text form
    #[arg(long)]
    pub quiver: Option<PathBuf>,
    /// Seed JSON document
    #[arg(long)]
    pub seed: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SeedInput {
    /// Extended exchange matrix in text form; the seed starts at the initial cluster
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Seed JSON document
    #[arg(long)]
    pub seed: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mutate a matrix, quiver or seed along a word
    Mutate {
        #[command(flatten)]
        input: Input,
        /// Comma-separated one-based directions
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Explore a mutation class or exchange graph within limits
    Explore {
        #[command(flatten)]
        input: Input,
        /// For a matrix: explore seeds (the exchange graph) instead of the matrix class
        #[arg(long)]
        exchange: bool,
        #[arg(long, default_value_t = 10_000)]
        max_nodes: usize,
        #[arg(long, default_value_t = 64)]
        max_depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Laurent expansions of the cluster variables reached along a word
    Laurent {
        #[command(flatten)]
        input: SeedInput,
        #[arg(long, default_value = "")]
        word: String,
        /// One-based cluster index; all variables when omitted
        #[arg(long)]
        index: Option<usize>,
        /// Also report denominator vectors
        #[arg(long)]
        denominators: bool,
        /// Also report whether all coefficients are positive
        #[arg(long)]
        positivity: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Orbit of a Y-seed along a word
    Ypattern {
        /// Exchange matrix in text form; frozen rows are ignored
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        word: String,
        /// Comma-separated rationals `p/q`; generic variables when omitted
        #[arg(long)]
        values: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a total positivity test on a rational matrix
    Tp {
        /// Rational matrix in text form (`r c` header, entries `p/q`)
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum)]
        test: TpTest,
        /// Diagram for the test: a reduced word, a double wiring word or a triangulation
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a quiver and seed from a combinatorial model
    Model {
        #[command(subcommand)]
        model: ModelKind,
        #[arg(long, value_enum, default_value = "text", global = true)]
        format: Format,
    },
    /// Sequences produced by seed patterns
    Seq {
        #[command(subcommand)]
        seq: SeqKind,
    },
    /// Start the local session service
    Serve {
        #[arg(long, env = "CLUSTERLAB_PORT", default_value_t = DEFAULT_PORT)]
        port: u16,
        /// Interface to bind; loopback unless widened explicitly
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TpTest {
    /// All solid minors (initial and final consecutive rows and columns)
    Solid,
    /// Every minor, checked directly
    Oracle,
    /// Chamber minors of a wiring diagram (flag minors)
    Wiring,
    /// Chamber minors of a double wiring diagram
    DoubleWiring,
    /// Plücker coordinates of a triangulation (2×m matrices)
    Triangulation,
}

#[derive(Subcommand, Debug)]
pub enum ModelKind {
    /// Triangulation `m; a-b, c-d, …`
    Triangulation { diagonals: String },
    /// Reduced word, comma-separated one-based positions
    Wiring { word: String },
    /// Double wiring word such as `2t,1T,2T,1t,2t,1T`
    DoubleWiring { word: String },
    /// Disk bipartite graph JSON document
    Bipartite { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum SeqKind {
    Somos4 {
        #[arg(long, default_value_t = 15)]
        count: usize,
        /// Laurent polynomials in the initial terms instead of numbers
        #[arg(long)]
        symbolic: bool,
    },
    Somos5 {
        #[arg(long, default_value_t = 16)]
        count: usize,
        #[arg(long)]
        symbolic: bool,
    },
    Markov {
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    Fermat {
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
    FordyMarsh {
        /// Palindromic exponent vector, comma-separated
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
}

/// Exit status 1 for unreadable or malformed input, 2 for engine failures.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Engine(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Engine(e) if e.is_parse_error() => 1,
            CliError::Engine(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Input(format!("stdin: {e}")));
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_word(s: &str) -> CliResult<MutationWord> {
    let letters = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(|_| CliError::Input(format!("bad direction {x:?} in word"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(MutationWord::from_one_based(&letters)?)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|_| CliError::Input(format!("bad {what} {x:?}"))))
        .collect()
}

fn load_matrix(path: &Path) -> CliResult<ExchangeMatrix> {
    Ok(ExchangeMatrix::parse_text(&read(path)?)?)
}

fn load_seed(path: &Path) -> CliResult<Seed> {
    Ok(Seed::from_json(&read(path)?)?)
}

fn seed_from(input: &SeedInput) -> CliResult<Seed> {
    match (&input.matrix, &input.seed) {
        (Some(p), _) => Ok(Seed::initial(load_matrix(p)?)),
        (_, Some(p)) => load_seed(p),
        _ => Err(CliError::Input("give --matrix or --seed".into())),
    }
}

fn pretty_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn no_dot(what: &str) -> CliError {
    CliError::Input(format!("--format dot is not available for {what}"))
}

fn quiver_output(q: &Quiver, labels: Option<&[String]>, format: Format) -> String {
    match format {
        Format::Text => q.to_matrix().to_text(),
        Format::Json => pretty_json(&quiver_json(q)),
        Format::Dot => q.to_dot(labels),
    }
}

fn seed_text(s: &Seed) -> String {
    let mut out = s.matrix().to_text();
    for (i, x) in s.cluster().iter().enumerate() {
        let _ = writeln!(out, "x{}: {x}", i + 1);
    }
    out
}

fn graph_output(g: &MutationClassGraph, format: Format) -> String {
    match format {
        Format::Json => pretty_json(&graph_json(g)),
        Format::Dot => g.to_dot(Some(0)),
        Format::Text => {
            let mut out = format!("nodes: {}\nedges: {}\ntruncated: {}\n", g.len(), g.edges.len(), g.truncated);
            if let Some(d) = g.regular_degree() {
                let _ = writeln!(out, "regular of degree {d}");
            }
            for (i, key) in g.nodes.iter().enumerate() {
                let _ = writeln!(out, "{}\t{}\t{}", i + 1, g.depth[i], key);
            }
            out
        }
    }
}

fn rational_string(r: &RationalFunction) -> String {
    if r.den().is_one() {
        r.num().to_string()
    } else {
        format!("({}) / ({})", r.num(), r.den())
    }
}

pub fn run(command: Command) -> CliResult<String> {
    match command {
        Command::Mutate { input, word, format } => {
            let w = parse_word(&word)?;
            if let Some(p) = input.matrix {
                let b = load_matrix(&p)?.mutate_word(w.letters())?;
                return match format {
                    Format::Text => Ok(b.to_text()),
                    Format::Json => Ok(pretty_json(&json!({ "matrix": b.rows() }))),
                    Format::Dot => Ok(Quiver::from_matrix(&b)?.to_dot(None)),
                };
            }
            if let Some(p) = input.quiver {
                let q = Quiver::from_matrix(&load_matrix(&p)?)?.mutate_word(w.letters())?;
                return Ok(quiver_output(&q, None, format));
            }
            let s = load_seed(input.seed.as_deref().expect("clap requires one input"))?.mutate_word(&w)?;
            match format {
                Format::Text => Ok(seed_text(&s)),
                Format::Json => Ok(s.to_json() + "\n"),
                Format::Dot => Ok(Quiver::from_matrix(s.matrix())?.to_dot(None)),
            }
        }
        Command::Explore { input, exchange, max_nodes, max_depth, format } => {
            let limits = ExplorationLimits::new(max_nodes, max_depth)?;
            let g = if let Some(p) = input.matrix {
                let b = load_matrix(&p)?;
                if exchange {
                    explore_seeds(&Seed::initial(b), limits)?.graph
                } else {
                    explore_matrix_class(&b, limits)?.graph
                }
            } else if let Some(p) = input.quiver {
                explore_quiver_class(&Quiver::from_matrix(&load_matrix(&p)?)?, limits)?
            } else {
                let s = load_seed(input.seed.as_deref().expect("clap requires one input"))?;
                explore_seeds(&s, limits)?.graph
            };
            Ok(graph_output(&g, format))
        }
        Command::Laurent { input, word, index, denominators, positivity, format } => {
            let s = seed_from(&input)?.mutate_word(&parse_word(&word)?)?;
            let indices: Vec<usize> = match index {
                Some(k) if k == 0 || k > s.n() => {
                    return Err(Error::IndexOutOfRange { index: k, max: s.n() }.into());
                }
                Some(k) => vec![k - 1],
                None => (0..s.n()).collect(),
            };
            let mut rows = Vec::new();
            let mut text = String::new();
            for i in indices {
                let x = &s.cluster()[i];
                let mut row = json!({ "index": i + 1, "value": x.to_string() });
                let _ = write!(text, "x{}: {x}", i + 1);
                if denominators {
                    let d = x.denominator_vector()?;
                    let _ = write!(text, "\n  denominator: {d:?}");
                    row["denominator"] = json!(d);
                }
                if positivity {
                    let _ = write!(text, "\n  positive: {}", x.is_positive());
                    row["positive"] = json!(x.is_positive());
                }
                text.push('\n');
                rows.push(row);
            }
            match format {
                Format::Text => Ok(text),
                Format::Json => Ok(pretty_json(&rows)),
                Format::Dot => Err(no_dot("laurent")),
            }
        }
        Command::Ypattern { matrix, word, values, format } => {
            let b = load_matrix(&matrix)?.principal();
            let w = parse_word(&word)?;
            let steps: Vec<Vec<String>> = match values {
                Some(v) => {
                    let ys: Vec<BigRational> = parse_list(&v, "rational value")?;
                    YSeed::new(ys, b)?
                        .orbit(&w)?
                        .iter()
                        .map(|s| s.y.iter().map(ToString::to_string).collect())
                        .collect()
                }
                None => YSeed::<RationalFunction>::generic(b)?
                    .orbit(&w)?
                    .iter()
                    .map(|s| s.y.iter().map(rational_string).collect())
                    .collect(),
            };
            let dirs: Vec<Option<usize>> =
                std::iter::once(None).chain(w.letters().iter().map(|&k| Some(k + 1))).collect();
            match format {
                Format::Json => {
                    let rows: Vec<_> =
                        steps.iter().zip(&dirs).map(|(y, k)| json!({ "mutated": k, "y": y })).collect();
                    Ok(pretty_json(&rows))
                }
                Format::Text => {
                    let mut out = String::new();
                    for (t, y) in steps.iter().enumerate() {
                        let _ = writeln!(out, "{t}: {}", y.join(" | "));
                    }
                    Ok(out)
                }
                Format::Dot => Err(no_dot("ypattern")),
            }
        }
        Command::Tp { matrix, test, diagram, format } => {
            let z = RationalMatrix::parse_text(&read(&matrix)?)?;
            let need = || diagram.clone().ok_or_else(|| CliError::Input("this test needs --diagram".into()));
            let passed = match test {
                TpTest::Solid => tp_test_solid(&z)?,
                TpTest::Oracle => all_minors_positive(&z),
                TpTest::Wiring => tp_test_wiring(&z, &WiringDiagram::parse_text(&need()?)?)?,
                TpTest::DoubleWiring => tp_test_double_wiring(&z, &DoubleWiringDiagram::parse_text(&need()?)?)?,
                TpTest::Triangulation => tp_test_triangulation(&z, &Triangulation::parse_text(&need()?)?)?,
            };
            match format {
                Format::Text => Ok(format!("{}\n", if passed { "pass" } else { "fail" })),
                Format::Json => Ok(pretty_json(&json!({ "passed": passed }))),
                Format::Dot => Err(no_dot("tp")),
            }
        }
        Command::Model { model, format } => {
            let (q, labels): (Quiver, Option<Vec<String>>) = match model {
                ModelKind::Triangulation { diagonals } => {
                    let t = Triangulation::parse_text(&diagonals)?;
                    (t.quiver(), Some(t.plucker_names()))
                }
                ModelKind::Wiring { word } => {
                    let d = WiringDiagram::parse_text(&word)?;
                    (d.quiver(), Some(d.vertex_chambers().iter().map(|c| c.name()).collect()))
                }
                ModelKind::DoubleWiring { word } => {
                    let d = DoubleWiringDiagram::parse_text(&word)?;
                    (d.quiver(), Some(d.vertex_chambers().iter().map(|c| c.name()).collect()))
                }
                ModelKind::Bipartite { file } => (DiskBipartiteGraph::from_json(&read(&file)?)?.quiver(), None),
            };
            match format {
                Format::Json => Ok(pretty_json(&json!({
                    "labels": labels,
                    "quiver": quiver_json(&q),
                    "seed": seed_state(&Seed::initial(q.to_matrix())),
                }))),
                _ => Ok(quiver_output(&q, labels.as_deref(), format)),
            }
        }
        Command::Seq { seq } => run_seq(seq),
        Command::Serve { .. } => Err(CliError::Input("serve is handled by the binary".into())),
    }
}

fn lines<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string() + "\n").collect()
}

fn run_seq(seq: SeqKind) -> CliResult<String> {
    match seq {
        SeqKind::Somos4 { count, symbolic: false } => Ok(lines(&somos4_terms(count)?)),
        SeqKind::Somos4 { count, symbolic: true } => Ok(lines(&periodic_terms(&somos4_seed(false)?, count)?)),
        SeqKind::Somos5 { count, symbolic: false } => Ok(lines(&somos5_terms(count)?)),
        SeqKind::Somos5 { count, symbolic: true } => {
            Ok(lines(&periodic_terms(&Seed::initial(somos5_matrix()), count)?))
        }
        SeqKind::Markov { depth } => {
            let mut out = String::new();
            for n in markov_tree(depth) {
                let [a, b, c] = &n.triple;
                let _ = writeln!(out, "{}\t{a},{b},{c}", n.depth);
            }
            Ok(out)
        }
        SeqKind::Fermat { steps } => {
            let mut out = String::new();
            for (t, s) in fermat_demo(steps)?.iter().enumerate() {
                let frozen = &s.matrix.rows()[2];
                let _ = writeln!(out, "{t}\t{}, {}\t{}, {}", s.values[0], s.values[1], frozen[0], frozen[1]);
            }
            Ok(out)
        }
        SeqKind::FordyMarsh { a, count } => {
            let a: Vec<i64> = parse_list(&a, "exponent")?;
            Ok(lines(&fordy_marsh_terms(&a, count)?))
        }
    }
}
