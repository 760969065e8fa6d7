mod input;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use synchro::catalog::{self, CatalogObject};
use synchro::latin::{self, LatinSquare};
use synchro::search::{self, Homomorphism};
use synchro::{io, srg, sync, Error, Graph, SearchOptions, Transformation};

use input::Input;

#[derive(Parser)]
#[command(name = "synchro", version, about = "Synchronization of transformations by permutation groups")]
struct Cli {
    /// Wall-clock budget for exact searches, in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    budget: Option<f64>,
    /// Worker threads for enumeration.
    #[arg(long, global = true, env = "SYNCHRO_JOBS", default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synchronization of a map by a group.
    #[command(subcommand)]
    Sync(SyncCmd),
    /// Clique number, chromatic number, endomorphisms.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Latin squares and superposition homomorphisms.
    #[command(subcommand)]
    Latin(LatinCmd),
    /// Explicit endomorphism constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Strongly regular parameters and bounds.
    #[command(subcommand)]
    Srg(SrgCmd),
    /// Built-in groups and graphs.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Args)]
struct Instance {
    /// Group file (one generator per line) or `@catalog-name`.
    #[arg(short, long)]
    group: String,
    /// Transformation file (1-based image list).
    #[arg(short = 'f', long = "map")]
    map: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Adjacency,
}

#[derive(Subcommand)]
enum SyncCmd {
    /// Decide whether the group synchronizes the map.
    Check(Instance),
    /// Build Gr(S) for S = <G, f>.
    Graph {
        #[command(flatten)]
        instance: Instance,
        /// Also write the graph to this file.
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: GraphFormat,
    },
    /// Minimum rank in <G, f>.
    Minrank(Instance),
    /// Random maps of the given ranks against a primitive group.
    Scan {
        #[arg(short, long)]
        group: String,
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    Clique { graph: String },
    Chroma { graph: String },
    /// Enumerate endomorphisms with a rank histogram.
    Endos {
        graph: String,
        /// Only maps of rank below the vertex count.
        #[arg(long)]
        proper: bool,
        /// Report counts without storing maps.
        #[arg(long)]
        count_only: bool,
        /// Restrict to these ranks.
        #[arg(long, value_delimiter = ',')]
        ranks: Vec<usize>,
        /// Write each endomorphism as a 1-based image list, one per line.
        #[arg(long)]
        emit: Option<String>,
    },
}

#[derive(Subcommand)]
enum LatinCmd {
    /// Number of distinct symbol pairs in the superposition.
    Rorth { first: String, second: String },
    /// The superposition homomorphism K_k □ K_k → complement.
    Hom { first: String, second: String },
    /// Achievable r for r-orthogonal pairs of order k.
    Spectrum {
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Endomorphism of X □ X through K_k □ K_k. With two Latin squares and no
    /// graph, X is the complement of K_k □ K_k.
    Boxpower {
        /// The graph X; defaults to the complement of K_k □ K_k.
        #[arg(long)]
        graph: Option<String>,
        /// Homomorphism K_k □ K_k → X as a 1-based image list.
        #[arg(long, conflicts_with = "latin")]
        hom: Option<String>,
        /// Two Latin squares whose superposition gives the homomorphism.
        #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"])]
        latin: Option<Vec<String>>,
        #[arg(long)]
        out: Option<String>,
    },
    /// The map K_{m-1} □ K_{m-1} → T(m).
    Triangular {
        #[arg(short)]
        m: usize,
    },
    /// The rank-6 endomorphism of the GF(2) Cayley graph for prime p.
    Cayley {
        #[arg(short)]
        p: u64,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
enum SrgCmd {
    Analyze { graph: String },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    /// Print an entry's group generators or graph.
    Build {
        name: String,
        #[arg(long, value_enum, default_value = "graph6")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<String>,
    },
    /// Recompute certified properties (all entries if no name is given).
    Verify { name: Option<String> },
}

/// A failed command and its exit code.
pub struct Failure {
    code: u8,
    message: String,
    partial: Option<Value>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into(), partial: None }
    }

    pub fn input(label: &str, e: Error) -> Self {
        Failure::usage(format!("{label}: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TimeBudgetExceeded { best } => Failure {
                code: 3,
                message: e.to_string(),
                partial: Some(json!({ "partial": true, "best": best })),
            },
            Error::Parse(_) | Error::BadParameter(_) | Error::BadPrime(_) | Error::TooLarge(_) => Failure::usage(e.to_string()),
            _ => Failure { code: 1, message: e.to_string(), partial: None },
        }
    }
}

struct Context {
    opts: SearchOptions,
    inputs: Vec<(String, String)>,
    seed: Option<u64>,
}

impl Context {
    fn load(&mut self, arg: &str) -> Result<Input, Failure> {
        let input = Input::load(arg)?;
        self.inputs.push((input.label.clone(), input.digest()));
        Ok(input)
    }
}

fn write_file(path: &str, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure { code: 1, message: format!("{path}: {e}"), partial: None })
}

fn format_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => io::to_graph6(g) + "\n",
        GraphFormat::Adjacency => io::format_adjacency_list(g),
    }
}

fn map_report(f: &Transformation) -> Value {
    json!({
        "degree": f.degree(),
        "rank": f.rank(),
        "kernel_type": f.kernel_type(),
        "uniform": f.is_uniform(),
    })
}

fn hom_report(h: &Homomorphism) -> Value {
    json!({
        "rank": h.rank(),
        "kernel_type": h.kernel_type(),
        "images": io::format_image_list(&h.images),
    })
}

fn run(cli: &Cli, ctx: &mut Context) -> Result<Value, Failure> {
    let opts = ctx.opts.clone();
    match &cli.command {
        Command::Sync(cmd) => match cmd {
            SyncCmd::Check(i) => {
                let g = ctx.load(&i.group)?.group()?;
                let f = ctx.load(&i.map)?.transformation()?;
                Ok(json!({ "synchronizes": sync::synchronizes(&g, &f)?, "rank": f.rank(), "kernel_type": f.kernel_type() }))
            }
            SyncCmd::Graph { instance, out, format } => {
                let g = ctx.load(&instance.group)?.group()?;
                let f = ctx.load(&instance.map)?.transformation()?;
                let gr = sync::graph_of(&g, &f)?;
                if let Some(path) = out {
                    write_file(path, &format_graph(&gr, *format))?;
                }
                Ok(json!({
                    "vertices": gr.n(),
                    "edges": gr.edge_count(),
                    "valency": gr.regular_valency(),
                    "null": gr.is_null(),
                    "graph6": io::to_graph6(&gr),
                }))
            }
            SyncCmd::Minrank(i) => {
                let g = ctx.load(&i.group)?.group()?;
                let f = ctx.load(&i.map)?.transformation()?;
                Ok(serde_json::to_value(sync::analyze(&g, &f, &opts)?).expect("serializable"))
            }
            SyncCmd::Scan { group, ranks, samples, seed } => {
                ctx.seed = Some(*seed);
                let g = ctx.load(group)?.group()?;
                let ranks: BTreeSet<usize> = ranks.iter().copied().collect();
                let rep = sync::synchronization_rank_scan(&g, *samples, &ranks, *seed)?;
                let mut v = serde_json::to_value(&rep).expect("serializable");
                v["all_synchronized"] = json!(rep.all_synchronized());
                Ok(v)
            }
        },
        Command::Graph(cmd) => match cmd {
            GraphCmd::Clique { graph } => {
                let g = ctx.load(graph)?.graph()?;
                let (w, clique) = search::clique_number(&g, &opts)?;
                Ok(json!({ "clique_number": w, "witness": io::format_image_list(&clique) }))
            }
            GraphCmd::Chroma { graph } => {
                let g = ctx.load(graph)?.graph()?;
                let (chi, colouring) = search::chromatic_number(&g, &opts)?;
                Ok(json!({ "chromatic_number": chi, "colouring": colouring }))
            }
            GraphCmd::Endos { graph, proper, count_only, ranks, emit } => {
                let g = ctx.load(graph)?.graph()?;
                let mut o = opts;
                if *proper {
                    o = o.proper();
                }
                if *count_only && emit.is_none() {
                    o = o.count_only();
                }
                if !ranks.is_empty() {
                    o = o.with_ranks(ranks.iter().copied());
                }
                let e = search::enumerate_endomorphisms(&g, &o)?;
                if let Some(path) = emit {
                    let text: String =
                        e.homomorphisms.iter().map(|h| io::format_image_list(&h.images) + "\n").collect();
                    write_file(path, &text)?;
                }
                let v = json!({ "total": e.total, "by_rank": e.by_rank, "complete": e.complete });
                if !e.complete {
                    return Err(Failure {
                        code: 3,
                        message: "time budget exceeded; histogram is partial".into(),
                        partial: Some(json!({ "partial": true, "total": e.total, "by_rank": e.by_rank })),
                    });
                }
                Ok(v)
            }
        },
        Command::Latin(cmd) => match cmd {
            LatinCmd::Rorth { first, second } => {
                let a = ctx.load(first)?.latin_square()?;
                let b = ctx.load(second)?.latin_square()?;
                Ok(json!({ "order": a.order(), "r": latin::r_orthogonality(&a, &b)? }))
            }
            LatinCmd::Hom { first, second } => {
                let a = ctx.load(first)?.latin_square()?;
                let b = ctx.load(second)?.latin_square()?;
                Ok(hom_report(&latin::superposition_hom(&a, &b)?))
            }
            LatinCmd::Spectrum { k, samples, seed } => {
                if *k > 4 {
                    ctx.seed = Some(*seed);
                }
                let s = latin::r_orthogonal_spectrum(*k, *samples, *seed)?;
                let mut v = serde_json::to_value(&s).expect("serializable");
                v["predicted"] = json!(latin::predicted_spectrum(*k));
                Ok(v)
            }
        },
        Command::Construct(cmd) => match cmd {
            ConstructCmd::Boxpower { graph, hom, latin, out } => {
                let (x, h) = match (graph, hom, latin) {
                    (None, None, Some(files)) => {
                        let a: LatinSquare = ctx.load(&files[0])?.latin_square()?;
                        let b = ctx.load(&files[1])?.latin_square()?;
                        (latin::rook_graph(a.order()).complement(), latin::superposition_hom(&a, &b)?)
                    }
                    (Some(graph), Some(hom), None) => {
                        let x = ctx.load(graph)?.graph()?;
                        let h = ctx.load(hom)?.transformation_like()?;
                        (x, h)
                    }
                    _ => return Err(Failure::usage("give either --latin FIRST SECOND, or --graph and --hom")),
                };
                let (_, colouring) = search::chromatic_number(&x, &opts)?;
                let f = latin::box_power_endomorphism(&x, &colouring, &h)?;
                if let Some(path) = out {
                    write_file(path, &(io::format_transformation(&f) + "\n"))?;
                }
                let mut v = map_report(&f);
                v["vertices"] = json!(f.degree());
                v["base_kernel_type"] = json!(h.kernel_type());
                Ok(v)
            }
            ConstructCmd::Triangular { m } => Ok(hom_report(&latin::triangular_hom(*m)?)),
            ConstructCmd::Cayley { p, out } => {
                let c = latin::cayley_family(*p)?;
                if let Some(path) = out {
                    write_file(path, &(io::format_transformation(&c.endomorphism) + "\n"))?;
                }
                let mut v = map_report(&c.endomorphism);
                v["vertices"] = json!(c.graph.n());
                v["valency"] = json!(c.graph.regular_valency());
                v["primitive"] = json!(c.group.is_primitive());
                v["endomorphism_valid"] = json!(search::is_endomorphism(&c.graph, &c.endomorphism)?);
                Ok(v)
            }
        },
        Command::Srg(SrgCmd::Analyze { graph }) => {
            let g = ctx.load(graph)?.graph()?;
            Ok(serde_json::to_value(srg::analyze(&g)?).expect("serializable"))
        }
        Command::Catalog(cmd) => match cmd {
            CatalogCmd::List => Ok(json!(catalog::entries()
                .iter()
                .map(|e| json!({ "name": e.name, "description": e.description }))
                .collect::<Vec<_>>())),
            CatalogCmd::Build { name, format, out } => {
                let entry = catalog::entry(name).ok_or_else(|| Failure::usage(format!("no catalog entry {name:?}")))?;
                let (text, v) = match entry.build()? {
                    CatalogObject::Graph(g) => {
                        (format_graph(&g, *format), json!({ "kind": "graph", "vertices": g.n(), "graph6": io::to_graph6(&g) }))
                    }
                    CatalogObject::Group(g) => {
                        let text = io::format_group(&g);
                        (text.clone(), json!({ "kind": "group", "degree": g.degree(), "generators": text.lines().skip(1).collect::<Vec<_>>() }))
                    }
                };
                if let Some(path) = out {
                    write_file(path, &text)?;
                }
                Ok(v)
            }
            CatalogCmd::Verify { name } => {
                let entries = match name {
                    Some(n) => vec![catalog::entry(n).ok_or_else(|| Failure::usage(format!("no catalog entry {n:?}")))?],
                    None => catalog::entries(),
                };
                let mut all = true;
                let mut out = Vec::new();
                for e in entries {
                    let (_, certs) = e.verify()?;
                    let ok = certs.iter().all(|c| c.holds());
                    all &= ok;
                    out.push(json!({ "name": e.name, "verified": ok, "certificates": certs }));
                }
                let v = json!({ "verified": all, "entries": out });
                if !all {
                    return Err(Failure { code: 1, message: "certified property failed".into(), partial: Some(v) });
                }
                Ok(v)
            }
        },
    }
}

impl Input {
    fn transformation_like(&self) -> Result<Homomorphism, Failure> {
        Ok(Homomorphism::from_images(self.transformation()?.images().to_vec()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = SearchOptions::default().jobs(cli.jobs.max(1));
    if let Some(secs) = cli.budget {
        if !(secs > 0.0 && secs.is_finite()) {
            eprintln!("error: --budget must be a positive number of seconds");
            return ExitCode::from(2);
        }
        opts = opts.budget(Duration::from_secs_f64(secs));
    }
    let mut ctx = Context { opts, inputs: Vec::new(), seed: None };
    let start = Instant::now();
    let outcome = run(&cli, &mut ctx);
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let inputs: serde_json::Map<String, Value> = ctx.inputs.into_iter().map(|(k, v)| (k, json!(v))).collect();
    let mut report = json!({ "command": argv, "inputs": inputs, "seed": ctx.seed });
    let code = match outcome {
        Ok(result) => {
            report["result"] = result;
            0
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            match f.partial {
                Some(p) => report["result"] = p,
                None if f.code == 2 => return ExitCode::from(2),
                None => report["error"] = json!(f.message),
            }
            f.code
        }
    };
    report["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code)
}
