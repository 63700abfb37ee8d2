//! Command-line interface: argument definitions and command execution.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhodes_core::bias::{theta_violation, BiasedGraph};
use rhodes_core::bits::Bits;
use rhodes_core::gain::GainGraph;
use rhodes_core::latticekit::{
    compare_forms, is_semiclosed, listed_semiclosed_forms, rhodes_lattice, FinitePoset, Fixture, FormReport, LatticeElement,
    LatticeKind,
};
use rhodes_core::matroid::{self, MatroidKind};
use rhodes_core::multigraph::{Multigraph, Subgraph};
use rhodes_core::rhodes::{enumerate_graphic, enumerate_pp, meet_pairs_traced, verify_isomorphism, BalancedHost, IsoFailure};
use rhodes_core::Limits;
use serde_json::{json, Value};

use crate::dot::to_dot;
use crate::format::{ElementRecord, GroupSpec, Host, HostFile, LatticeFile, PairRecord, SubgraphRecord};

#[derive(Parser, Debug)]
#[command(name = "rhodes", version, about = "Rhodes semilattices and lattices of gain graphs and biased graphs")]
pub struct Cli {
    /// Lift the enumeration guards. With RHODES_SCALE_GUARD=<factor> the
    /// guards are multiplied by the factor instead of removed.
    #[arg(long, global = true)]
    pub unsafe_scale: bool,

    #[arg(long, env = "RHODES_SCALE_GUARD", global = true, hide = true)]
    pub scale_guard: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the group expansion of a base graph (Kn, Cn, or Pn with n edges).
    Expand {
        /// cyclic:N or product:N,M,...
        #[arg(long)]
        group: String,
        #[arg(long)]
        base: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate a semilattice or lattice as elements plus covering pairs.
    Enumerate {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: EnumerationKind,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a check; exits with status 1 when it fails.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum)]
        check: Check,
        /// Lattice for order-ideal (default: all four) and forms.
        #[arg(long, value_enum)]
        lattice: Option<LatticeArg>,
        /// Random samples for rank-axioms.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a lattice file as a Hasse diagram.
    ExportDot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Frame or lift rank of an edge set inside an induced subgraph.
    Rank {
        input: PathBuf,
        #[arg(long, value_enum)]
        matroid: MatroidArg,
        /// Vertex ids of the induced subgraph (default: all).
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        edges: Vec<u32>,
    },
    /// Closure of an edge set inside an induced subgraph.
    Closure {
        input: PathBuf,
        #[arg(long, value_enum)]
        operator: ClosureArg,
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        edges: Vec<u32>,
    },
    /// Meet of two partition-potential pairs (JSON text or file paths).
    Meet {
        input: PathBuf,
        left: String,
        right: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerationKind {
    RhodesPp,
    RhodesGraphic,
    Classic,
    Frame,
    Lift,
    Semiclosed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Iso,
    OrderIdeal,
    RankAxioms,
    Theta,
    Forms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeArg {
    Classic,
    Frame,
    Lift,
    Semiclosed,
}

impl From<LatticeArg> for LatticeKind {
    fn from(l: LatticeArg) -> LatticeKind {
        match l {
            LatticeArg::Classic => LatticeKind::Classic,
            LatticeArg::Frame => LatticeKind::Frame,
            LatticeArg::Lift => LatticeKind::Lift,
            LatticeArg::Semiclosed => LatticeKind::Semiclosed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatroidArg {
    Frame,
    Lift,
}

impl From<MatroidArg> for MatroidKind {
    fn from(m: MatroidArg) -> MatroidKind {
        match m {
            MatroidArg::Frame => MatroidKind::Frame,
            MatroidArg::Lift => MatroidKind::Lift,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClosureArg {
    Frame,
    Lift,
    Balanced,
    Semiclosed,
}

/// What a command produced: text for its output, and whether every
/// requested check passed.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub pass: bool,
    pub output: Option<PathBuf>,
}

impl Outcome {
    fn ok(text: String, output: Option<PathBuf>) -> Outcome {
        Outcome { text, pass: true, output }
    }

    fn report(report: Value) -> Outcome {
        let pass = report["pass"].as_bool().unwrap_or(false);
        Outcome { text: pretty(&report), pass, output: None }
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data");
    s.push('\n');
    s
}

pub fn limits(cli: &Cli) -> anyhow::Result<(Limits, Option<String>)> {
    match (cli.unsafe_scale, cli.scale_guard) {
        (false, None) => Ok((Limits::default(), None)),
        (false, Some(_)) => bail!("RHODES_SCALE_GUARD only takes effect together with --unsafe-scale"),
        (true, None) => Ok((Limits::unbounded(), Some("scale guards disabled (--unsafe-scale)".into()))),
        (true, Some(0)) => bail!("RHODES_SCALE_GUARD must be a positive factor"),
        (true, Some(f)) => {
            Ok((Limits::default().scaled(f), Some(format!("scale guards multiplied by {f} (RHODES_SCALE_GUARD)"))))
        }
    }
}

fn read_host_file(path: &Path) -> anyhow::Result<HostFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_host(path: &Path, limits: &Limits) -> anyhow::Result<Host> {
    Ok(read_host_file(path)?.load(limits)?)
}

fn base_graph(spec: &str) -> anyhow::Result<Multigraph> {
    let bad = || anyhow::anyhow!("bad base graph `{spec}`: expected Kn, Cn or Pn");
    let mut chars = spec.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let n: usize = chars.as_str().parse().map_err(|_| bad())?;
    Ok(match kind.to_ascii_uppercase() {
        'K' => Multigraph::complete(n)?,
        'C' => Multigraph::cycle(n)?,
        'P' => Multigraph::path(n)?,
        _ => return Err(bad()),
    })
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let (limits, note) = limits(cli)?;
    if let Some(note) = note {
        eprintln!("note: {note}");
    }
    match &cli.command {
        Command::Expand { group, base, output } => {
            let group = GroupSpec::parse(group)?.build()?;
            let phi = GainGraph::group_expansion(&base_graph(base)?, &group)?;
            Ok(Outcome::ok(pretty(&HostFile::from_gain_graph(&phi)), output.clone()))
        }
        Command::Enumerate { input, kind, output } => {
            let host = read_host(input, &limits)?;
            Ok(Outcome::ok(pretty(&enumerate(&host, *kind, &limits)?), output.clone()))
        }
        Command::Verify { input, check, lattice, samples, seed } => {
            let report = match check {
                Check::Theta => verify_theta(&read_host_file(input)?, &limits)?,
                Check::Iso => verify_iso(&read_host(input, &limits)?, &limits)?,
                Check::OrderIdeal => verify_order_ideal(&read_host(input, &limits)?, lattice.map(Into::into), &limits)?,
                Check::RankAxioms => verify_rank_axioms(&read_host(input, &limits)?, *samples, *seed, &limits)?,
                Check::Forms => {
                    let Some(lattice) = lattice else { bail!("forms needs --lattice") };
                    verify_forms_check(&read_host(input, &limits)?, (*lattice).into(), &limits)?
                }
            };
            Ok(Outcome::report(report))
        }
        Command::ExportDot { input, output } => {
            let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let file: LatticeFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", input.display()))?;
            Ok(Outcome::ok(to_dot(&file)?, output.clone()))
        }
        Command::Rank { input, matroid, vertices, edges } => {
            let host = read_host(input, &limits)?;
            let (ground, edge_bits) = ground_and_edges(host.graph(), vertices.as_deref(), edges)?;
            let bias = host.bias(&limits)?;
            let r = matroid::rank((*matroid).into(), &bias, ground, edge_bits)?;
            Ok(Outcome::ok(pretty(&json!({ "matroid": matroid_name(*matroid), "rank": r })), None))
        }
        Command::Closure { input, operator, vertices, edges } => {
            let host = read_host(input, &limits)?;
            let graph = host.graph().clone();
            let (ground, edge_bits) = ground_and_edges(&graph, vertices.as_deref(), edges)?;
            let sub = graph.subgraph(ground, edge_bits)?;
            let bias = host.bias(&limits)?;
            let closed = match operator {
                ClosureArg::Frame => graph.subgraph(ground, matroid::closure(MatroidKind::Frame, &bias, ground, edge_bits)?)?,
                ClosureArg::Lift => graph.subgraph(ground, matroid::closure(MatroidKind::Lift, &bias, ground, edge_bits)?)?,
                ClosureArg::Balanced => match &host {
                    Host::Gain(phi) => phi.closed_balanced_closure(&sub)?,
                    Host::Biased(b) => b.closed_balanced_closure(&sub)?,
                },
                ClosureArg::Semiclosed => rhodes_core::latticekit::semiclosed_closure(&bias, &sub)?,
            };
            Ok(Outcome::ok(pretty(&SubgraphRecord::of(&graph, &closed)), None))
        }
        Command::Meet { input, left, right } => {
            let host = read_host(input, &limits)?;
            let phi = host.gains()?;
            let p = read_pair(left)?.resolve(phi)?;
            let q = read_pair(right)?.resolve(phi)?;
            let (m, refined) = meet_pairs_traced(phi, &p, &q);
            Ok(Outcome::ok(pretty(&json!({ "meet": PairRecord::of(phi.graph(), &m), "refined": refined })), None))
        }
    }
}

fn matroid_name(m: MatroidArg) -> &'static str {
    match m {
        MatroidArg::Frame => "frame",
        MatroidArg::Lift => "lift",
    }
}

fn read_pair(arg: &str) -> anyhow::Result<PairRecord> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing pair {arg}"))
}

fn ground_and_edges(graph: &Multigraph, vertices: Option<&[u32]>, edges: &[u32]) -> anyhow::Result<(Bits, Bits)> {
    let ground = match vertices {
        Some(v) => crate::format::vertex_set(graph, v)?,
        None => graph.all_vertices(),
    };
    Ok((ground, crate::format::edge_set(graph, edges)?))
}

pub fn enumerate(host: &Host, kind: EnumerationKind, limits: &Limits) -> anyhow::Result<LatticeFile> {
    let graph = host.graph();
    let subgraphs = |poset: &FinitePoset<LatticeElement>, name: &str| {
        LatticeFile::of(name, poset, |e| ElementRecord::of(graph, e))
    };
    Ok(match kind {
        EnumerationKind::RhodesPp => {
            let phi = host.gains()?;
            let pp = enumerate_pp(phi, limits)?;
            let elements = pp.elements().to_vec();
            let poset = FinitePoset::from_relation(elements.clone(), |i, j| elements[i].leq(phi.group(), &elements[j]))?;
            LatticeFile::of("rhodes-pp", &poset, |p| ElementRecord::Pair(PairRecord::of(graph, p)))
        }
        EnumerationKind::RhodesGraphic => {
            let graphic = match host {
                Host::Gain(phi) => enumerate_graphic(phi, limits)?,
                Host::Biased(b) => enumerate_graphic(b, limits)?,
            };
            let poset = FinitePoset::by_containment(graphic.elements().iter().copied().map(LatticeElement::Subgraph).collect());
            subgraphs(&poset, "rhodes-graphic")
        }
        EnumerationKind::Classic => subgraphs(&rhodes_lattice(LatticeKind::Classic, &host.bias(limits)?, limits)?, "classic"),
        EnumerationKind::Frame => subgraphs(&rhodes_lattice(LatticeKind::Frame, &host.bias(limits)?, limits)?, "frame"),
        EnumerationKind::Lift => subgraphs(&rhodes_lattice(LatticeKind::Lift, &host.bias(limits)?, limits)?, "lift"),
        EnumerationKind::Semiclosed => {
            subgraphs(&rhodes_lattice(LatticeKind::Semiclosed, &host.bias(limits)?, limits)?, "semiclosed")
        }
    })
}

fn verify_theta(file: &HostFile, limits: &Limits) -> anyhow::Result<Value> {
    let graph = file.graph()?;
    let balanced: BTreeSet<Bits> = match &file.balanced {
        Some(circles) => circles.iter().map(|ids| crate::format::edge_set(&graph, ids)).collect::<Result<_, _>>()?,
        None => match file.load(limits)? {
            Host::Gain(phi) => phi.balanced_circles(limits)?.iter().map(|c| c.edge_set()).collect(),
            Host::Biased(_) => unreachable!("no balanced list"),
        },
    };
    let thetas = graph.theta_subgraphs(limits)?.len();
    let violation = theta_violation(&graph, &balanced, limits)?;
    let witness = violation.map(|t| {
        json!({
            "branch_vertices": [graph.vertex_ids()[t.ends.0], graph.vertex_ids()[t.ends.1]],
            "paths": t.paths.iter().map(|p| p.iter().map(|e| graph.edge(e).id).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    });
    Ok(json!({
        "check": "theta",
        "pass": witness.is_none(),
        "thetas": thetas,
        "balanced_circles": balanced.len(),
        "counterexample": witness,
    }))
}

fn verify_iso(host: &Host, limits: &Limits) -> anyhow::Result<Value> {
    let phi = host.gains()?;
    let g = phi.graph();
    let report = verify_isomorphism(phi, limits)?;
    let pair = |p| PairRecord::of(g, p);
    let counterexample = report.failure.as_ref().map(|f| match f {
        IsoFailure::NotInjective(a, b) => json!({ "kind": "not-injective", "pairs": [pair(a), pair(b)] }),
        IsoFailure::ImageNotClosedBalanced(p) => json!({ "kind": "image-not-closed-balanced", "pair": pair(p) }),
        IsoFailure::NotSurjective(s) => json!({ "kind": "not-surjective", "subgraph": SubgraphRecord::of(g, s) }),
        IsoFailure::OrderMismatch { lower, upper, pair_leq, contained } => json!({
            "kind": "order-mismatch", "lower": pair(lower), "upper": pair(upper),
            "pair_leq": pair_leq, "contained": contained,
        }),
    });
    Ok(json!({
        "check": "iso",
        "pass": report.holds(),
        "pairs": report.pair_count,
        "subgraphs": report.graphic_count,
        "order_checks": report.order_checks,
        "counterexample": counterexample,
    }))
}

fn verify_order_ideal(host: &Host, kind: Option<LatticeKind>, limits: &Limits) -> anyhow::Result<Value> {
    let bias = host.bias(limits)?;
    let graph = bias.graph();
    let graphic = enumerate_graphic(&bias, limits)?;
    let kinds = kind.map_or(LatticeKind::ALL.to_vec(), |k| vec![k]);
    let mut results = Vec::new();
    let mut pass = true;
    for kind in kinds {
        let lattice = rhodes_lattice(kind, &bias, limits)?;
        let balanced = lattice.balanced_indices(&bias);
        let found: Vec<Subgraph> = balanced.iter().filter_map(|&i| lattice.elements()[i].subgraph().copied()).collect();
        let equal = found == graphic.elements();
        let ideal = lattice.is_order_ideal(&balanced)?;
        let extra: Vec<_> = found.iter().filter(|s| !graphic.contains(s)).map(|s| SubgraphRecord::of(graph, s)).collect();
        let missing: Vec<_> = graphic
            .elements()
            .iter()
            .filter(|s| found.binary_search(s).is_err())
            .map(|s| SubgraphRecord::of(graph, s))
            .collect();
        pass &= equal && ideal;
        results.push(json!({
            "lattice": kind.name(),
            "elements": lattice.len(),
            "balanced": balanced.len(),
            "equals_semilattice": equal,
            "order_ideal": ideal,
            "extra": extra,
            "missing": missing,
        }));
    }
    Ok(json!({ "check": "order-ideal", "pass": pass, "semilattice": graphic.len(), "lattices": results }))
}

fn random_subset(rng: &mut ChaCha8Rng, universe: Bits) -> Bits {
    universe.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

fn verify_rank_axioms(host: &Host, samples: usize, seed: u64, limits: &Limits) -> anyhow::Result<Value> {
    let bias = host.bias(limits)?;
    let graph = bias.graph();
    let ground = graph.all_vertices();
    let all = graph.all_edges();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut flats_compared = false;
    for kind in [MatroidKind::Frame, MatroidKind::Lift] {
        let name = if kind == MatroidKind::Frame { "frame" } else { "lift" };
        let r = |s: Bits| matroid::rank(kind, &bias, ground, s);
        let cl = |s: Bits| matroid::closure(kind, &bias, ground, s);
        for _ in 0..samples {
            let (s, t) = (random_subset(&mut rng, all), random_subset(&mut rng, all));
            let (rs, rt) = (r(s)?, r(t)?);
            let mut fail = |what: &str| failures.push(json!({ "matroid": name, "axiom": what, "s": ids(graph, s), "t": ids(graph, t) }));
            if rs > s.len() {
                fail("rank bounded by size");
            }
            if r(s | t)? + r(s & t)? > rs + rt {
                fail("submodularity");
            }
            if r(s & t)? > rs {
                fail("monotonicity");
            }
            if let Some(e) = (all - s).iter().nth(rng.gen_range(0..(all - s).len().max(1))) {
                let re = r(s.with(e))?;
                if re < rs || re > rs + 1 {
                    fail("unit increase");
                }
            }
            let c = cl(s)?;
            if c != matroid::closure_by_rank(kind, &bias, ground, s)? {
                fail("closure agrees with rank");
            }
            if !s.is_subset(c) || cl(c)? != c || !cl(s & t)?.is_subset(c) {
                fail("closure extensive, idempotent, monotone");
            }
        }
        if all.len() <= limits.max_brute_force_edges {
            flats_compared = true;
            for x in ground.subsets() {
                if matroid::flats(kind, &bias, x, limits)? != matroid::flats_brute_force(kind, &bias, x, limits)? {
                    failures.push(json!({ "matroid": name, "axiom": "flats", "ground": ids_v(graph, x) }));
                }
            }
        }
    }
    Ok(json!({
        "check": "rank-axioms",
        "pass": failures.is_empty(),
        "samples_per_matroid": samples,
        "seed": seed,
        "flats_compared_with_brute_force": flats_compared,
        "counterexamples": failures.iter().take(10).collect::<Vec<_>>(),
    }))
}

fn ids(graph: &Multigraph, edges: Bits) -> Vec<u32> {
    edges.iter().map(|e| graph.edge(e).id).collect()
}

fn ids_v(graph: &Multigraph, vertices: Bits) -> Vec<u32> {
    vertices.iter().map(|v| graph.vertex_ids()[v]).collect()
}

fn form_report_json(graph: &Multigraph, report: &FormReport) -> Value {
    json!({
        "fixture": report.fixture.name(),
        "lattice": report.kind.name(),
        "pass": report.passes(),
        "unbalanced": report.unbalanced,
        "counts": report.counts.iter().map(|(t, n)| (t.label().to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
        "unlisted": report.unlisted.iter().map(|e| ElementRecord::of(graph, e)).collect::<Vec<_>>(),
        "missing": report.missing.iter().map(|(d, s)| json!({ "form": d.tag.label(), "subgraph": SubgraphRecord::of(graph, s) })).collect::<Vec<_>>(),
    })
}

fn verify_forms_check(host: &Host, kind: LatticeKind, limits: &Limits) -> anyhow::Result<Value> {
    let phi = host.gains()?;
    let fixture = Fixture::detect(phi)?;
    let bias = BiasedGraph::from_gains_unvalidated(phi, limits)?;
    if kind == LatticeKind::Semiclosed {
        let forms = listed_semiclosed_forms(fixture)?;
        let mut failing = Vec::new();
        for s in &forms {
            if !is_semiclosed(&bias, s)? {
                failing.push(SubgraphRecord::of(phi.graph(), s));
            }
        }
        let mut lattice_failures = Vec::new();
        for other in [LatticeKind::Classic, LatticeKind::Frame, LatticeKind::Lift] {
            for element in rhodes_lattice(other, &bias, limits)?.elements() {
                let sub = element.subgraph().copied().unwrap_or_else(|| phi.graph().whole());
                if !is_semiclosed(&bias, &sub)? {
                    lattice_failures.push(json!({ "lattice": other.name(), "subgraph": SubgraphRecord::of(phi.graph(), &sub) }));
                }
            }
        }
        return Ok(json!({
            "check": "forms",
            "fixture": fixture.name(),
            "lattice": "semiclosed",
            "pass": failing.is_empty() && lattice_failures.is_empty(),
            "listed_forms": forms.len(),
            "not_semiclosed": failing,
            "other_lattice_elements_not_semiclosed": lattice_failures,
        }));
    }
    let lattice = rhodes_lattice(kind, &bias, limits)?;
    let report = compare_forms(phi, kind, &lattice)?;
    let mut value = form_report_json(phi.graph(), &report);
    value["check"] = json!("forms");
    Ok(value)
}
