//! Single-shot subcommands: gen, check, match, tile, lattice, absorb and
//! validate-certificate.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use hypermatch::absorbing::{absorb_all, build_absorbing_family, count_absorbing};
use hypermatch::constructions::report::{
    cyclic_barrier_report, mycroft_report, parity_barrier_report, space_barrier_report,
    tiling_barrier_report, tournament_report,
};
use hypermatch::constructions::{
    gen_cyclic_barrier, gen_h1, gen_h2, gen_mycroft, gen_parity_barrier, gen_space_barrier,
    gen_tiling_barrier, ConstructionReport, TilingTarget,
};
use hypermatch::hypergraph::io::{parse_any, to_hg_string};
use hypermatch::hypergraph::{independence_number, is_induced_pattern_free, is_pattern_free, PatternMatch};
use hypermatch::lattice::{
    barrier_diagnostics, coset_group, is_gamma_extremal, missing_completion, transferral_violation,
    DEFAULT_MU,
};
use hypermatch::matching::{
    find_matching_swap, find_tiling_swap, has_perfect_matching, has_perfect_tiling,
    local_search_matching, local_search_tiling, max_matching, max_tiling, validate_matching,
    validate_tiling,
};
use hypermatch::rng;
use hypermatch::{Hypergraph, IntegerLattice, Matching, OrderedPartition, PatternGraph, Tiling};
use rand::seq::index::sample;

use crate::report::{read_file, write_file, CliError, Outcome};
use crate::Ctx;

pub fn load_graph(path: &Path) -> Result<Hypergraph, CliError> {
    let text = read_file(path)?;
    parse_any(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_partition(path: &Path) -> Result<OrderedPartition, CliError> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn pattern(name: &str) -> Result<PatternGraph, CliError> {
    Ok(PatternGraph::builtin(name)?)
}

/// Parses `"a,b,c"` into integers.
pub fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::input(format!("cannot parse {t:?} in {text:?}"))))
        .collect()
}

fn required(value: Option<usize>, flag: &str, what: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::input(format!("--{flag} is required for {what}")))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Construction {
    /// Divisibility barrier H_k over Z_p (needs --k, --n).
    Mycroft,
    /// Space barrier H(m, n) (needs --m, --n).
    SpaceBarrier,
    /// Tournament 3-graph H1, free of K43 (needs --n).
    H1,
    /// Cyclic-triangle 3-graph H2, free of K4- (needs --n).
    H2,
    /// Tiling barrier H1' or H2' (needs --n, --which).
    TilingBarrier,
    /// Parity barrier H' (needs --n).
    ParityBarrier,
    /// Cyclic barrier H'' (needs --m).
    CyclicBarrier,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    construction: Construction,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Tiling target for tiling-barrier, h1 and h2 reports: K43 or K4minus.
    #[arg(long, default_value = "K43")]
    which: String,
    /// Output `.hg` file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Write the vertex partition, when the construction has one, as JSON.
    #[arg(long, value_name = "PATH")]
    partition_out: Option<PathBuf>,
}

pub fn gen(ctx: &Ctx, a: GenArgs) -> Result<Outcome, CliError> {
    let seed = ctx.seed.unwrap_or(0);
    let which: TilingTarget = a.which.parse()?;
    let (graph, partition, report): (Hypergraph, Option<OrderedPartition>, ConstructionReport) = match a.construction {
        Construction::Mycroft => {
            let (k, n) = (required(a.k, "k", "mycroft")?, required(a.n, "n", "mycroft")?);
            let c = gen_mycroft(k, n)?;
            (c.graph, Some(c.partition), mycroft_report(k, n, ctx.budget)?)
        }
        Construction::SpaceBarrier => {
            let (m, n) = (required(a.m, "m", "space-barrier")?, required(a.n, "n", "space-barrier")?);
            let s = gen_space_barrier(m, n, seed)?;
            (s.graph, None, space_barrier_report(m, n, seed, ctx.budget)?)
        }
        Construction::H1 => {
            let n = required(a.n, "n", "h1")?;
            (gen_h1(n, seed)?, None, tournament_report(n, TilingTarget::K43, seed)?)
        }
        Construction::H2 => {
            let n = required(a.n, "n", "h2")?;
            (gen_h2(n, seed)?, None, tournament_report(n, TilingTarget::K4Minus, seed)?)
        }
        Construction::TilingBarrier => {
            let n = required(a.n, "n", "tiling-barrier")?;
            let h = gen_tiling_barrier(n, which, seed)?;
            (h, None, tiling_barrier_report(n, which, seed, ctx.budget)?)
        }
        Construction::ParityBarrier => {
            let n = required(a.n, "n", "parity-barrier")?;
            let b = gen_parity_barrier(n, seed)?;
            (b.graph, Some(b.partition), parity_barrier_report(n, seed, ctx.budget)?)
        }
        Construction::CyclicBarrier => {
            let m = required(a.m, "m", "cyclic-barrier")?;
            let c = gen_cyclic_barrier(m)?;
            (c.graph, Some(c.partition), cyclic_barrier_report(m, ctx.budget)?)
        }
    };
    if let Some(path) = &a.partition_out {
        let p = partition.as_ref().ok_or_else(|| {
            CliError::input(format!("{:?} has no vertex partition to write", a.construction))
        })?;
        write_file(path, &serde_json::to_string(p)?)?;
    }
    let text = to_hg_string(&graph);
    let passed = report.all_passed();
    let mut outcome = Outcome::new(
        "gen",
        json!({
            "out": a.out.as_ref().map(|p| p.display().to_string()),
            "report": report,
        }),
        passed,
    );
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => outcome.stdout_payload = Some(text),
    }
    Ok(outcome)
}

#[derive(Args)]
pub struct CheckArgs {
    file: PathBuf,
    /// Minimum (k-1)-degree.
    #[arg(long)]
    codegree: bool,
    /// Minimum d-degree for the given d.
    #[arg(long, value_name = "D")]
    degree: Option<usize>,
    /// Independence number with a witness.
    #[arg(long)]
    alpha: bool,
    /// Whether the graph has a perfect matching.
    #[arg(long)]
    pm: bool,
    /// Induced freeness from a builtin pattern (Y, K4minus, K4full); repeatable.
    #[arg(long, value_name = "PATTERN")]
    induced_free: Vec<String>,
    /// Non-induced freeness from a builtin pattern; repeatable.
    #[arg(long, value_name = "PATTERN")]
    free: Vec<String>,
    /// Whether a perfect tiling by the pattern exists; repeatable.
    #[arg(long, value_name = "PATTERN")]
    tiling: Vec<String>,
    /// Partition JSON (`{"parts": [[..], ..]}`) for lattice diagnostics.
    #[arg(long, value_name = "PATH")]
    partition: Option<PathBuf>,
    /// Robustness threshold for lattice diagnostics.
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    /// Whether the graph is gamma-extremal.
    #[arg(long, value_name = "GAMMA")]
    gamma: Option<f64>,
}

pub fn check(ctx: &Ctx, a: CheckArgs) -> Result<Outcome, CliError> {
    let h = load_graph(&a.file)?;
    let mut out = json!({
        "file": a.file.display().to_string(),
        "n": h.n(),
        "k": h.k(),
        "edges": h.edge_count(),
    });
    let nothing_requested = !(a.codegree
        || a.alpha
        || a.pm
        || a.degree.is_some()
        || a.gamma.is_some()
        || a.partition.is_some()
        || !a.induced_free.is_empty()
        || !a.free.is_empty()
        || !a.tiling.is_empty());
    if (a.codegree || nothing_requested) && h.n() >= h.k() - 1 {
        out["codegree"] = json!(h.min_codegree()?);
    }
    if let Some(d) = a.degree {
        out["min_degree"] = json!({"d": d, "value": h.min_degree(d)?});
    }
    if a.alpha {
        let s = independence_number(&h, ctx.budget)?;
        out["alpha"] = json!(s.size);
        out["independent_set"] = json!(s.vertices);
    }
    if a.pm {
        out["pm"] = json!(has_perfect_matching(&h, ctx.budget)?);
    }
    let mut group = |names: &[String], key: &str, f: &dyn Fn(&PatternGraph) -> Result<bool, CliError>| {
        let mut res = BTreeMap::new();
        for name in names {
            let p = pattern(name)?;
            res.insert(p.name().unwrap_or(name).to_string(), f(&p)?);
        }
        if !res.is_empty() {
            out[key] = json!(res);
        }
        Ok::<_, CliError>(())
    };
    group(&a.induced_free, "induced_free", &|p| Ok(is_induced_pattern_free(&h, p)?))?;
    group(&a.free, "free", &|p| Ok(is_pattern_free(&h, p)?))?;
    group(&a.tiling, "tiling", &|p| Ok(has_perfect_tiling(&h, p, ctx.budget)?))?;
    if let Some(gamma) = a.gamma {
        out["gamma_extremal"] = json!({"gamma": gamma, "value": is_gamma_extremal(&h, gamma, ctx.budget)?});
    }
    if let Some(path) = &a.partition {
        let p = load_partition(path)?;
        out["lattice"] = json!(barrier_diagnostics(&h, &p, a.mu, ctx.budget)?);
    }
    Ok(Outcome::new("check", out, true))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    /// Exhaustive search.
    Exact,
    /// Greedy packing with 1-to-2 swaps.
    Local,
}

#[derive(Args)]
pub struct MatchArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    /// Write the matching as a JSON array of edges.
    #[arg(long, value_name = "PATH")]
    certificate: Option<PathBuf>,
}

pub fn matching(ctx: &Ctx, a: MatchArgs) -> Result<Outcome, CliError> {
    let h = load_graph(&a.file)?;
    let m = match a.method {
        Method::Exact => max_matching(&h, ctx.budget)?,
        Method::Local => local_search_matching(&h, ctx.seed),
    };
    validate_matching(&h, &m)?;
    if let Some(path) = &a.certificate {
        write_file(path, &serde_json::to_string(&m)?)?;
    }
    let mut out = json!({
        "file": a.file.display().to_string(),
        "method": format!("{:?}", a.method).to_lowercase(),
        "n": h.n(),
        "size": m.len(),
        "covered": m.len() * h.k(),
        "uncovered": m.uncovered(h.n()),
        "perfect": m.len() * h.k() == h.n(),
        "matching": m,
    });
    if let Method::Local = a.method {
        out["swap_free"] = json!(find_matching_swap(&h, &m).is_none());
    }
    Ok(Outcome::new("match", out, true))
}

#[derive(Args)]
pub struct TileArgs {
    file: PathBuf,
    /// Builtin pattern: Y, K4minus or K4full.
    #[arg(long, value_name = "PATTERN")]
    pattern: String,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    /// Write the tiling as a JSON array of copies.
    #[arg(long, value_name = "PATH")]
    certificate: Option<PathBuf>,
}

pub fn tile(ctx: &Ctx, a: TileArgs) -> Result<Outcome, CliError> {
    let h = load_graph(&a.file)?;
    let f = pattern(&a.pattern)?;
    let t = match a.method {
        Method::Exact => max_tiling(&h, &f, ctx.budget)?,
        Method::Local => local_search_tiling(&h, &f, ctx.seed)?,
    };
    validate_tiling(&h, &f, &t)?;
    if let Some(path) = &a.certificate {
        write_file(path, &serde_json::to_string(&t)?)?;
    }
    let mut out = json!({
        "file": a.file.display().to_string(),
        "pattern": f.name(),
        "method": format!("{:?}", a.method).to_lowercase(),
        "n": h.n(),
        "size": t.len(),
        "uncovered": t.uncovered(h.n()),
        "perfect": t.len() * f.f() == h.n(),
        "tiling": t,
    });
    if let Method::Local = a.method {
        out["swap_free"] = json!(find_tiling_swap(&h, &f, &t)?.is_none());
    }
    Ok(Outcome::new("tile", out, true))
}

#[derive(Args)]
pub struct LatticeArgs {
    /// Hypergraph file; diagnostics use the robust edge-vectors under --partition.
    file: Option<PathBuf>,
    /// Partition JSON; the trivial one-part partition when absent.
    #[arg(long, value_name = "PATH")]
    partition: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MU)]
    mu: f64,
    /// Explicit generators instead of a file, e.g. "0,3;2,1".
    #[arg(long, value_name = "VECTORS")]
    vectors: Option<String>,
    /// Uniformity for fullness and the coset group of explicit generators.
    #[arg(long)]
    k: Option<usize>,
    /// Work modulo this integer.
    #[arg(long)]
    modulus: Option<u64>,
    /// Vectors to test for membership, e.g. "1,2"; repeatable.
    #[arg(long, value_name = "VECTOR")]
    contains: Vec<String>,
}

pub fn lattice(ctx: &Ctx, a: LatticeArgs) -> Result<Outcome, CliError> {
    match (&a.file, &a.vectors) {
        (Some(file), None) => {
            let h = load_graph(file)?;
            let p = match &a.partition {
                Some(path) => load_partition(path)?,
                None => OrderedPartition::trivial(h.n())?,
            };
            let r = barrier_diagnostics(&h, &p, a.mu, ctx.budget)?;
            let membership = membership(&r.lattice, &a.contains)?;
            Ok(Outcome::new(
                "lattice",
                json!({"file": file.display().to_string(), "diagnostics": r, "membership": membership}),
                true,
            ))
        }
        (None, Some(text)) => {
            let gens = text
                .split(';')
                .map(parse_list::<i64>)
                .collect::<Result<Vec<_>, _>>()?;
            let dim = gens.first().map(Vec::len).unwrap_or(0);
            let l = IntegerLattice::span(&gens, dim, a.modulus)?;
            let mut out = json!({
                "dim": l.dim(),
                "basis": l.basis(),
                "modulus": l.modulus(),
                "rank": l.rank(),
                "determinant": l.determinant(),
                "transferral_violation": transferral_violation(&l),
                "membership": membership(&l, &a.contains)?,
            });
            if let Some(k) = a.k {
                let missing = missing_completion(&l, k)?;
                out["k"] = json!(k);
                out["missing_completion"] = json!(missing);
                out["full"] = json!(transferral_violation(&l).is_none() && missing.is_none());
                out["coset_group"] = json!(coset_group(&l, k)?);
            }
            Ok(Outcome::new("lattice", out, true))
        }
        _ => Err(CliError::input("give either a hypergraph file or --vectors")),
    }
}

fn membership(l: &IntegerLattice, vectors: &[String]) -> Result<Vec<Value>, CliError> {
    vectors
        .iter()
        .map(|text| {
            let v = parse_list::<i64>(text)?;
            Ok(json!({"vector": v, "member": l.contains(&v)?}))
        })
        .collect()
}

#[derive(Args)]
pub struct AbsorbArgs {
    file: PathBuf,
    /// A (k+1)-set whose absorbing edges are counted, e.g. "0,1,2,3"; repeatable.
    #[arg(long, value_name = "VERTICES")]
    set: Vec<String>,
    /// Build a random absorbing family with selection probability beta·n^(1-k)
    /// and run the absorption loop on it.
    #[arg(long)]
    beta: Option<f64>,
    /// Number of random (k+1)-sets whose absorbing counts are reported.
    #[arg(long, default_value_t = 20)]
    samples: usize,
}

pub fn absorb(ctx: &Ctx, a: AbsorbArgs) -> Result<Outcome, CliError> {
    let h = load_graph(&a.file)?;
    if a.set.is_empty() && a.beta.is_none() {
        return Err(CliError::input("give at least one --set or --beta"));
    }
    let mut out = json!({"file": a.file.display().to_string(), "n": h.n(), "k": h.k()});
    let counts = a
        .set
        .iter()
        .map(|text| {
            let s = parse_list::<usize>(text)?;
            Ok(json!({"set": s, "absorbing_edges": count_absorbing(&h, &s)?}))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    out["counts"] = json!(counts);
    if let Some(beta) = a.beta {
        let seed = ctx.seed.unwrap_or(0);
        if h.n() <= h.k() {
            return Err(CliError::input("absorption needs more than k vertices"));
        }
        let mut r = rng::seeded(seed);
        let sets: Vec<Vec<usize>> = (0..a.samples)
            .map(|_| {
                let mut s = sample(&mut r, h.n(), h.k() + 1).into_vec();
                s.sort_unstable();
                s
            })
            .collect();
        let (family, report) = build_absorbing_family(&h, beta, seed, &sets)?;
        // cover what the family leaves by local search, then absorb the rest
        let outside = family.family.uncovered(h.n());
        let sub = h.induced(&outside)?;
        let rest = Matching::new(
            local_search_matching(&sub, ctx.seed)
                .edges()
                .iter()
                .map(|e| e.iter().map(|&i| outside[i]).collect()),
        );
        let leftover = family.family.union(&rest).uncovered(h.n());
        let outcome = absorb_all(&h, &family.family, &rest, &leftover)?;
        out["family"] = json!(report);
        out["leftover_before"] = json!(leftover.len());
        out["absorption"] = json!({
            "completed": outcome.completed(),
            "rounds": outcome.rounds,
            "uncovered": outcome.uncovered,
            "failed_set": outcome.failed_set,
            "matching_size": outcome.matching.len(),
        });
    }
    Ok(Outcome::new("absorb", out, true))
}

#[derive(Args)]
pub struct ValidateArgs {
    /// Certificate JSON: an array of edges, or of copies with --pattern.
    certificate: PathBuf,
    /// Host hypergraph file.
    file: PathBuf,
    /// Validate a tiling by this builtin pattern instead of a matching.
    #[arg(long, value_name = "PATTERN")]
    pattern: Option<String>,
    /// Also require every vertex to be covered.
    #[arg(long)]
    perfect: bool,
}

/// Accepts `{"vertices", "embedding"}` objects or bare embeddings.
fn parse_copies(value: Value) -> Result<Tiling, CliError> {
    let items = match value {
        Value::Array(items) => items,
        _ => return Err(CliError::input("a tiling certificate is a JSON array")),
    };
    let copies = items
        .into_iter()
        .map(|item| match item {
            Value::Array(_) => {
                let embedding: Vec<usize> = serde_json::from_value(item)?;
                let mut vertices = embedding.clone();
                vertices.sort_unstable();
                Ok(PatternMatch { vertices, embedding })
            }
            other => Ok(serde_json::from_value::<PatternMatch>(other)?),
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Tiling::new(copies))
}

pub fn validate(_ctx: &Ctx, a: ValidateArgs) -> Result<Outcome, CliError> {
    let h = load_graph(&a.file)?;
    let raw: Value = serde_json::from_str(&read_file(&a.certificate)?)
        .map_err(|e| CliError::input(format!("{}: {e}", a.certificate.display())))?;
    let (checked, size, uncovered) = match &a.pattern {
        None => {
            let edges: Vec<Vec<usize>> = serde_json::from_value(raw)?;
            let m = Matching::new(edges);
            (validate_matching(&h, &m), m.len(), m.uncovered(h.n()))
        }
        Some(name) => {
            let f = pattern(name)?;
            let t = parse_copies(raw)?;
            (validate_tiling(&h, &f, &t), t.len(), t.uncovered(h.n()))
        }
    };
    let error = match (&checked, a.perfect && !uncovered.is_empty()) {
        (Err(e), _) => Some(e.to_string()),
        (Ok(()), true) => Some(format!("{} vertices left uncovered", uncovered.len())),
        (Ok(()), false) => None,
    };
    let valid = error.is_none();
    Ok(Outcome::new(
        "validate-certificate",
        json!({
            "certificate": a.certificate.display().to_string(),
            "file": a.file.display().to_string(),
            "kind": if a.pattern.is_some() { "tiling" } else { "matching" },
            "size": size,
            "uncovered": uncovered.len(),
            "valid": valid,
            "error": error,
        }),
        valid,
    ))
}
