//! Command-line front end.
//!
//! Exit codes: 0 success, 2 bad flags, 3 domain errors (infeasible alpha,
//! state cap exceeded, ...). Primary output goes to `--out` or stdout;
//! summaries go to stderr.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;

use crate::analysis::{self, ConductanceRow};
use crate::chains::{self, ChainKind};
use crate::error::{Error, Result};
use crate::families::{self, HourglassClassifier};
use crate::io::{self, GraphDoc};
use crate::orientations::{AlphaLattice, AlphaSpec, Orientation, DEFAULT_STATE_CAP};
use crate::planegraph::{GraphClass, PlaneGraph};
use crate::structures;

#[derive(Debug, Parser)]
#[command(name = "alphaflip", version, about = "Alpha-orientation lattices and flip chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Chain {
    Face,
    Tower,
    SlowTower,
}

impl From<Chain> for ChainKind {
    fn from(c: Chain) -> Self {
        match c {
            Chain::Face => ChainKind::FaceFlip,
            Chain::Tower => ChainKind::Tower,
            Chain::SlowTower => ChainKind::SlowTower,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    Auto,
    Separating,
    Schnyder,
    None,
}

/// Where the instance comes from: a named family or a JSON file.
#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["family", "input"])))]
pub struct InstanceArgs {
    /// octahedron, Q, T, Tm, G, grid, random or hardness
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// JSON graph document (must carry alpha)
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout if absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (replicas for `sample`)
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Largest state space enumerated
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a family instance as JSON (or DOT)
    Gen {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate all alpha-orientations
    Enumerate {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Simulate a chain; one trajectory per replica
    Sample {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "face")]
        chain: Chain,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        /// Snapshot interval (0: start and end only)
        #[arg(long, default_value_t = 0)]
        every: u64,
        /// min, max, reference or a bitstring
        #[arg(long, default_value = "min")]
        start: String,
    },
    /// Exact uniform samples by coupling from the past
    Cftp {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// Exact TVD curve and mixing time
    Mix {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "face")]
        chain: Chain,
        /// Last time of the curve (default: the mixing time)
        #[arg(long)]
        max_t: Option<usize>,
        #[arg(long, default_value_t = 1 << 26)]
        max_steps: usize,
    },
    /// Hour-glass conductance bound (and exact conductance when small)
    Conductance {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "face")]
        chain: Chain,
    },
    /// Count directed paths in a state
    Paths {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        /// min, max, reference or a bitstring
        #[arg(long, default_value = "reference")]
        state: String,
    },
    /// Run the trivial coupling of two states
    Couple {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "face")]
        chain: Chain,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long, default_value_t = 1000)]
        steps: u64,
    },
    /// Export a state, optionally as its colored structure
    Export {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "reference")]
        state: String,
        #[arg(long, value_enum, default_value = "auto")]
        structure: Structure,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            3
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Instance {
    family: String,
    params: Vec<usize>,
    graph: PlaneGraph,
    alpha: AlphaSpec,
    markers: BTreeMap<String, usize>,
    classifier: Option<HourglassClassifier>,
    reference: Option<Orientation>,
    doc: GraphDoc,
}

impl Instance {
    fn marker(&self, name: &str) -> Result<usize> {
        self.markers
            .get(name)
            .copied()
            .ok_or_else(|| Error::BadParam(format!("instance has no marker {name}")))
    }

    fn lattice(&self) -> Result<AlphaLattice> {
        AlphaLattice::new(&self.graph, &self.alpha)
    }

    fn state(&self, lat: &AlphaLattice, spec: &str) -> Result<Orientation> {
        let x = match spec {
            "min" => lat.min().clone(),
            "max" => lat.max().clone(),
            "reference" => self.reference.clone().unwrap_or_else(|| lat.min().clone()),
            bits => Orientation::from_bitstring(bits)?,
        };
        if x.num_edges() != self.graph.num_edges() || !x.is_alpha_orientation(&self.graph, &self.alpha) {
            return Err(Error::BadParam(format!("state {spec} is not an alpha-orientation")));
        }
        Ok(x)
    }
}

fn load_instance(a: &InstanceArgs) -> CliResult<Instance> {
    if let Some(name) = &a.family {
        let f = families::by_name(name, a.n, a.m).map_err(|e| match e {
            Error::BadParam(m) => Failure::Usage(m),
            e => Failure::Domain(e),
        })?;
        let doc = GraphDoc::from_instance(&f);
        return Ok(Instance {
            family: f.family,
            params: f.params,
            graph: f.graph,
            alpha: f.alpha,
            markers: f.markers,
            classifier: f.classifier,
            reference: f.reference,
            doc,
        });
    }
    let path = a.input.as_ref().expect("clap enforces a source");
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let doc = GraphDoc::parse(&text)?;
    let l = doc.load()?;
    let alpha = l.alpha.ok_or_else(|| Error::Format("document has no alpha".into()))?;
    // a document produced by `gen` regains its hour-glass classifier
    let classifier = l.family.as_deref().and_then(|name| {
        let f = families::by_name(name, l.params.first().copied(), l.params.get(1).copied()).ok()?;
        (f.graph.edges() == l.graph.edges() && f.graph.coords() == l.graph.coords())
            .then_some(f.classifier)
            .flatten()
    });
    Ok(Instance {
        family: l.family.unwrap_or_else(|| "input".into()),
        params: l.params,
        graph: l.graph,
        alpha,
        markers: l.markers,
        classifier,
        reference: l.reference,
        doc,
    })
}

fn pick_format(common: &Common, allowed: &[Format], cmd: &str) -> CliResult<Format> {
    match common.format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Failure::Usage(format!("{cmd} does not support --format {f:?}").to_lowercase())),
    }
}

fn emit(common: &Common, text: &str) -> CliResult<()> {
    match &common.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn thread_pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn dispatch(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Gen { inst, common } => {
            let fmt = pick_format(&common, &[Format::Json, Format::Dot], "gen")?;
            let i = load_instance(&inst)?;
            i.lattice()?;
            let text = match fmt {
                Format::Dot => i.graph.to_dot(),
                _ => i.doc.to_json(),
            };
            emit(&common, &text)
        }
        Command::Enumerate { inst, common } => {
            let fmt = pick_format(&common, &[Format::Json, Format::Csv], "enumerate")?;
            let i = load_instance(&inst)?;
            let lat = i.lattice()?;
            let space = thread_pool(common.jobs)?.install(|| lat.enumerate(common.cap))?;
            eprintln!("states: {}", space.len());
            let text = match fmt {
                Format::Csv => space.potentials_csv(),
                _ => {
                    let mut s = serde_json::to_string_pretty(&space.to_json()).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            emit(&common, &text)
        }
        Command::Sample { inst, common, chain, steps, every, start } => {
            let fmt = pick_format(&common, &[Format::Csv, Format::Json], "sample")?;
            let i = load_instance(&inst)?;
            let lat = i.lattice()?;
            let x0 = i.state(&lat, &start)?;
            let kind = ChainKind::from(chain);
            let replicas = common.jobs.max(1) as u64;
            let runs: Vec<_> = thread_pool(common.jobs)?.install(|| {
                (0..replicas)
                    .into_par_iter()
                    .map(|r| chains::run(kind, &lat, &x0, steps, replica_seed(common.seed, r), every, None))
                    .collect()
            });
            let text = match fmt {
                Format::Json => {
                    let v: Vec<_> = runs
                        .iter()
                        .enumerate()
                        .map(|(r, t)| {
                            json!({
                                "replica": r,
                                "seed": replica_seed(common.seed, r as u64),
                                "final": t.final_state.to_bitstring(),
                                "snapshots": t.snapshots,
                            })
                        })
                        .collect();
                    let mut s = serde_json::to_string_pretty(&json!({ "chain": kind.name(), "replicas": v }))
                        .expect("serializable");
                    s.push('\n');
                    s
                }
                _ => {
                    let mut s = String::from("replica,step,state_hash,distance\n");
                    for (r, t) in runs.iter().enumerate() {
                        for &(step, h, d) in &t.snapshots {
                            let _ = writeln!(s, "{r},{step},{h:016x},{d}");
                        }
                    }
                    s
                }
            };
            emit(&common, &text)
        }
        Command::Cftp { inst, common, samples } => {
            pick_format(&common, &[Format::Csv], "cftp")?;
            let i = load_instance(&inst)?;
            let lat = i.lattice()?;
            let out: Vec<Orientation> = thread_pool(common.jobs)?.install(|| {
                (0..samples)
                    .into_par_iter()
                    .map(|k| chains::cftp_sample(ChainKind::FaceFlip, &lat, replica_seed(common.seed, k)))
                    .collect::<Result<_>>()
            })?;
            let mut s = String::from("sample,state_hash,orientation\n");
            for (k, x) in out.iter().enumerate() {
                let _ = writeln!(s, "{k},{:016x},{}", x.state_hash(), x.to_bitstring());
            }
            if let Ok(space) = lat.enumerate(common.cap) {
                let rep = analysis::uniformity_test(&space, &out, analysis::DEFAULT_SIGNIFICANCE)?;
                eprintln!(
                    "chi-square: statistic {:.4}, dof {}, p-value {:.6}, {}",
                    rep.statistic,
                    rep.dof,
                    rep.p_value,
                    if rep.passed { "uniform" } else { "rejected" }
                );
            }
            emit(&common, &s)
        }
        Command::Mix { inst, common, chain, max_t, max_steps } => {
            pick_format(&common, &[Format::Csv], "mix")?;
            let i = load_instance(&inst)?;
            let lat = i.lattice()?;
            let space = lat.enumerate(common.cap)?;
            let pool = thread_pool(common.jobs)?;
            let k = pool.install(|| analysis::kernel(chain.into(), &lat, &space))?;
            let tau = pool.install(|| analysis::mixing_time(&k, max_steps))?;
            eprintln!("states: {}", space.len());
            eprintln!("tau_mix: {tau}");
            let curve = pool.install(|| analysis::tvd_curve(&k, max_t.unwrap_or(tau)));
            emit(&common, &analysis::tvd_curve_csv(&curve))
        }
        Command::Conductance { inst, common, chain } => {
            pick_format(&common, &[Format::Csv], "conductance")?;
            let i = load_instance(&inst)?;
            let lat = i.lattice()?;
            let cls = i
                .classifier
                .as_ref()
                .ok_or_else(|| Error::BadParam(format!("family {} has no hour-glass partition", i.family)))?;
            let space = lat.enumerate(common.cap)?;
            let labels = cls
                .labels(&i.graph, &space)
                .ok_or_else(|| Error::BadParam("a state has no hour-glass side".into()))?;
            let pool = thread_pool(common.jobs)?;
            let k = pool.install(|| analysis::kernel(chain.into(), &lat, &space))?;
            let bound = analysis::hourglass_bound(&k, &labels)?;
            let exact = if space.len() <= analysis::CONDUCTANCE_MAX_STATES {
                Some(analysis::exact_conductance(&k)?)
            } else {
                None
            };
            let (l, c, r) = analysis::part_sizes(&labels);
            eprintln!("parts: left {l}, central {c}, right {r}");
            let phi = exact.unwrap_or(bound).to_f64().unwrap_or(f64::NAN);
            eprintln!("mixing time lower bound 1/(4 phi): {:.3}", 1.0 / (4.0 * phi));
            let row = ConductanceRow {
                family: i.family.clone(),
                param: params_label(&i.params),
                states: space.len(),
                bound,
                exact,
            };
            emit(&common, &analysis::conductance_csv(&[row]))
        }
        Command::Paths { inst, common, from, to, state } => {
            pick_format(&common, &[Format::Csv], "paths")?;
            let i = load_instance(&inst)?;
            let lat = i.lattice()?;
            let x = i.state(&lat, &state)?;
            let pairs = match (from, to) {
                (Some(a), Some(b)) => vec![(a, b)],
                (None, None) => default_path_pairs(&i)?,
                _ => return Err(Failure::Usage("--from and --to go together".into())),
            };
            let mut rows = Vec::new();
            for (a, b) in pairs {
                let c = analysis::count_directed_paths(&i.graph, &x, i.marker(&a)?, i.marker(&b)?)?;
                rows.push((a, b, c));
            }
            emit(&common, &analysis::path_count_csv(&rows))
        }
        Command::Couple { inst, common, chain, x, y, steps } => {
            pick_format(&common, &[Format::Csv], "couple")?;
            let i = load_instance(&inst)?;
            let lat = i.lattice()?;
            let kind = ChainKind::from(chain);
            let (mut sx, mut sy) = match (x, y) {
                (Some(a), Some(b)) => (i.state(&lat, &a)?, i.state(&lat, &b)?),
                (None, None) if i.family == "hardness" => {
                    let (_, a, b) = families::hardness_example();
                    (a, b)
                }
                (None, None) => (lat.min().clone(), lat.max().clone()),
                _ => return Err(Failure::Usage("--x and --y go together".into())),
            };
            let e = chains::expected_distance_change(kind, &lat, &sx, &sy);
            let p = chains::distance_change_probability(kind, &lat, &sx, &sy);
            eprintln!("first step: expected distance change {e}, change probability {p}");
            let n = chains::num_levels(&lat);
            let mut s = String::from("step,distance\n");
            let _ = writeln!(s, "0,{}", lat.lattice_distance(&sx, &sy));
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(common.seed);
            for t in 1..=steps {
                let r = chains::StepRandomness::draw(&mut rng, lat.num_cycles(), n);
                let (nx, ny) = chains::coupled_step(kind, &lat, &sx, &sy, &r);
                sx = nx;
                sy = ny;
                let d = lat.lattice_distance(&sx, &sy);
                let _ = writeln!(s, "{t},{d}");
                if d == 0 {
                    eprintln!("coalesced at step {t}");
                    break;
                }
            }
            emit(&common, &s)
        }
        Command::Export { inst, common, state, structure } => {
            let fmt = pick_format(&common, &[Format::Dot, Format::Json], "export")?;
            let i = load_instance(&inst)?;
            let lat = i.lattice()?;
            let x = i.state(&lat, &state)?;
            let coloring = color(&i, &x, structure)?;
            if let Some(c) = &coloring {
                let rep = structures::validate(&i.graph, c);
                if !rep.is_valid() {
                    return Err(Failure::Domain(Error::Format(rep.violations.join("; "))));
                }
            }
            let text = match (fmt, &coloring) {
                (Format::Json, _) => {
                    let colors = coloring
                        .as_ref()
                        .map(|c| c.colors.iter().map(|k| k.map(|k| k.name())).collect::<Vec<_>>());
                    let arcs: Vec<[i64; 2]> = (0..i.graph.num_edges())
                        .map(|e| {
                            let (a, b) = x.arc(&i.graph, e);
                            [i.graph.id(a), i.graph.id(b)]
                        })
                        .collect();
                    let mut s = serde_json::to_string_pretty(&json!({
                        "format": io::FORMAT_VERSION,
                        "orientation": x.to_bitstring(),
                        "arcs": arcs,
                        "colors": colors,
                    }))
                    .expect("serializable");
                    s.push('\n');
                    s
                }
                (_, Some(c)) => structures::to_dot(&i.graph, c),
                (_, None) => io::orientation_to_dot(&i.graph, &x),
            };
            emit(&common, &text)
        }
    }
}

/// Seed of replica `r`: replicas draw from unrelated ChaCha streams.
fn replica_seed(seed: u64, r: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ r.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn params_label(p: &[usize]) -> String {
    p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("x")
}

fn default_path_pairs(i: &Instance) -> CliResult<Vec<(String, String)>> {
    let n = i.params.first().copied().unwrap_or(0);
    let pairs = match i.family.as_str() {
        "Q" => (1..=n).map(|k| ("x0".to_string(), format!("vb{k}"))).collect(),
        "T" => (1..=n + 1).map(|k| ("x0".to_string(), format!("x{k}"))).collect(),
        "Tm" => (1..n).map(|k| (format!("x{k}"), format!("x{}", k + 1))).collect(),
        f => return Err(Failure::Usage(format!("family {f} has no default path table; pass --from and --to"))),
    };
    Ok(pairs)
}

fn color(i: &Instance, x: &Orientation, which: Structure) -> Result<Option<structures::EdgeColoring>> {
    let which = match which {
        Structure::Auto => match i.graph.classify() {
            GraphClass::Quadrangulation if i.markers.contains_key("s") => Structure::Separating,
            GraphClass::Triangulation if i.markers.contains_key("ar") => Structure::Schnyder,
            _ => Structure::None,
        },
        w => w,
    };
    Ok(match which {
        Structure::Separating => Some(structures::color_separating_decomposition(
            &i.graph,
            x,
            i.marker("s")?,
            i.marker("t")?,
        )?),
        Structure::Schnyder => Some(structures::color_schnyder_wood(
            &i.graph,
            x,
            [i.marker("ar")?, i.marker("ag")?, i.marker("ab")?],
        )?),
        _ => None,
    })
}
