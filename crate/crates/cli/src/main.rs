use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use meyniel_core::certify::{family_audit, girth5_certificate, k2t_certificate, read_audit_rows};
use meyniel_core::constructions::{
    bf_graph, bf_graph_search, bf_labels, double_cover, double_cover_labels, factorize, incidence_graph, incidence_labels,
    lex_product, lex_product_labels, neighborhood_deletion, polarity_graph_of, polarity_labels, prime_powers_up_to,
    projective_plane, spanning_profile_family, strip_factors, triangle_trim, DeletionVector, ProfileMode,
};
use meyniel_core::cover::{
    blocking_exact, blocking_lp, bucket_fractional, dlc_cover_bound, dlc_enumerate, domination_bound,
    open_neighborhood_hypergraph, Hypergraph, DEFAULT_EXACT_LIMIT,
};
use meyniel_core::familylab::{profile_count, star_forest, sweep, verify_count_lower_bound, CertChoice, Family, SweepSpec};
use meyniel_core::game::{
    cop_number, evasion_girth5, evasion_lowdeg, simulate, solve, CopStrategy, GameError, GreedyCops, RandomCops,
    RobberStrategy, StationaryCops, StationaryRobber, TableCops, TableRobber, DEFAULT_BUDGET,
};
use meyniel_core::graph::{cycle_census, metrics, read_edge_list, write_edge_list, Graph};
use meyniel_core::{BigRational, VertexLabel};

#[derive(Parser)]
#[command(name = "meyniel", version, about = "Graphs with large cop number: constructions, bounds and exact solving")]
struct Cli {
    /// Seed for randomized choices (split seeds, random cops)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Transition budget for the exact solver
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Directory that relative output paths are resolved against
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and write it as an edge list
    Construct(ConstructArgs),
    /// Order, size, degrees, girth, diameter and short-cycle counts
    Metrics { graph: PathBuf },
    /// Issue a cop-number bound certificate as JSON
    Certify {
        graph: PathBuf,
        #[arg(long, value_enum)]
        kind: CertKindArg,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long = "D")]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact cop number by retrograde analysis
    Copnumber {
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// Play a cop strategy against a robber strategy
    Simulate(SimulateArgs),
    /// Blocking-set bounds on a graph's neighbourhood hypergraphs
    Cover {
        graph: PathBuf,
        #[arg(long, value_enum)]
        mode: CoverMode,
        #[arg(long, default_value_t = 2)]
        omega: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count degree profiles, optionally verifying the count on star forests
    Count {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        verify: bool,
    },
    /// Construct and certify a family over a range of plane orders
    Sweep(SweepArgs),
    /// Audit `n,order,bound` rows: ratios bound/sqrt(order) and their minimum
    FamilyAudit {
        rows: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
    /// Edge-list output (stdout if omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Vertex-label JSON output
    #[arg(long, global = true)]
    labels: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Point-line incidence graph of PG(2,q)
    Incidence {
        #[arg(long)]
        q: u64,
    },
    /// Orthogonal polarity graph of PG(2,q)
    Polarity {
        #[arg(long)]
        q: u64,
    },
    /// Blow-up of an oriented m-cycle by half-lines; --seed picks the split
    Bf {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        /// Scan this many seeds from --seed and keep the first valid one
        #[arg(long)]
        tries: Option<u64>,
    },
    /// Incidence graph minus its first i perfect matchings
    Strip {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
    /// Incidence graph with neighbourhood deletions x
    Deletion {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, value_delimiter = ',')]
        x: Vec<usize>,
    },
    /// Member of the spanning profile family of an incidence or polarity graph
    Family {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = HostKind::Incidence)]
        host: HostKind,
        #[arg(long, value_enum, default_value_t = ModeArg::Girth5)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Polarity graph with triangles trimmed down to t'
    Trim {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t_prime: usize,
        /// Edge selector per trimmed triangle (0, 1 or 2); default all 0
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<u8>>,
    },
    /// Lexicographic product of two edge-list files
    Lex { g: PathBuf, h: PathBuf },
    /// Bipartite double cover of an edge-list file
    DoubleCover { g: PathBuf },
    Petersen,
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    Complete {
        #[arg(long)]
        n: usize,
    },
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        jumps: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HostKind {
    Incidence,
    Polarity,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Girth5,
    C4free,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertKindArg {
    K2t,
    Girth5,
    Domination,
    Dlc,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverMode {
    Domination,
    Dlc,
    Buckets,
}

#[derive(Clone, Copy, ValueEnum)]
enum CopName {
    Greedy,
    Stationary,
    Random,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum RobberName {
    Stationary,
    EvasionLowdeg,
    EvasionGirth5,
    Table,
}

#[derive(Args)]
struct SimulateArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    cop: CopName,
    #[arg(long, value_enum)]
    robber: RobberName,
    /// Number of cops
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 100)]
    rounds: usize,
    /// Where to write the trace JSON
    #[arg(long)]
    trace: Option<PathBuf>,
    /// K_{2,t} parameter for evasion-lowdeg
    #[arg(long, default_value_t = 2)]
    t: usize,
    /// Degree threshold for the evasion robbers (default: best certificate threshold)
    #[arg(long = "D")]
    d: Option<usize>,
    /// Cop placement for greedy/stationary cops
    #[arg(long, value_delimiter = ',')]
    cops_at: Option<Vec<usize>>,
    /// Vertex for the stationary robber
    #[arg(long)]
    robber_at: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Incidence,
    Polarity,
    Bf,
    Strip,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum SweepCert {
    K2t,
    Girth5,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// All prime powers up to this bound (odd ones only for bf)
    #[arg(long, conflicts_with = "qs")]
    q_max: Option<u64>,
    /// Explicit plane orders
    #[arg(long, value_delimiter = ',')]
    qs: Option<Vec<u64>>,
    /// Cycle lengths for bf
    #[arg(long, value_delimiter = ',', default_value = "3")]
    m: Vec<usize>,
    /// Split seeds scanned per bf member
    #[arg(long, default_value_t = 500)]
    tries: u64,
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    /// Factors stripped for the strip family
    #[arg(long, default_value_t = 1)]
    i: usize,
    #[arg(long = "cert", value_enum, default_values_t = [SweepCert::Girth5])]
    certs: Vec<SweepCert>,
    #[arg(long, default_value_t = 2)]
    t: usize,
    /// Also compute exact cop numbers up to this many cops
    #[arg(long)]
    exact_kmax: Option<usize>,
    /// CSV output (default: sweep.csv in --out-dir, else stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn resolve(cli_dir: &Option<PathBuf>, p: &Path) -> PathBuf {
    match cli_dir {
        Some(d) => d.join(p),
        None => p.to_path_buf(),
    }
}

fn load(path: &Path) -> Result<Graph> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_edge_list(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
}

fn sink(dir: &Option<PathBuf>, out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => {
            let p = resolve(dir, p);
            Box::new(BufWriter::new(File::create(&p).with_context(|| format!("creating {}", p.display()))?))
        }
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn emit_json(dir: &Option<PathBuf>, out: &Option<PathBuf>, v: &Value) -> Result<()> {
    let mut w = sink(dir, out)?;
    serde_json::to_writer_pretty(&mut w, v)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn construct(cli: &Cli, a: &ConstructArgs) -> Result<()> {
    let (g, labels): (Graph, Option<Vec<VertexLabel>>) = match &a.kind {
        ConstructKind::Incidence { q } => {
            let p = projective_plane(*q)?;
            (incidence_graph(&p), Some(incidence_labels(&p)))
        }
        ConstructKind::Polarity { q } => {
            let p = projective_plane(*q)?;
            (polarity_graph_of(&p), Some(polarity_labels(&p)))
        }
        ConstructKind::Bf { q, m, tries } => {
            let g = match tries {
                Some(t) => {
                    let (seed, g) = bf_graph_search(*q, *m, cli.seed, *t)?;
                    eprintln!("split seed {seed}");
                    g
                }
                None => bf_graph(*q, *m, cli.seed)?,
            };
            (g, Some(bf_labels(*q, *m)?))
        }
        ConstructKind::Strip { q, i, eps } => {
            let p = projective_plane(*q)?;
            let host = incidence_graph(&p);
            let f = factorize(&host, 1)?;
            (strip_factors(&host, &f, *i, *eps)?, Some(incidence_labels(&p)))
        }
        ConstructKind::Deletion { q, eps, x } => {
            let p = projective_plane(*q)?;
            let host = incidence_graph(&p);
            let v = DeletionVector::new(&host, *eps, x.clone())?;
            (neighborhood_deletion(&host, &v)?, Some(incidence_labels(&p)))
        }
        ConstructKind::Family { q, host, mode, eps, index } => {
            let p = projective_plane(*q)?;
            let (h, labels) = match host {
                HostKind::Incidence => (incidence_graph(&p), incidence_labels(&p)),
                HostKind::Polarity => (polarity_graph_of(&p), polarity_labels(&p)),
            };
            let mode = match mode {
                ModeArg::Girth5 => ProfileMode::Girth5,
                ModeArg::C4free => ProfileMode::C4Free,
            };
            let fam = spanning_profile_family(&h, *eps, mode, index + 1)?;
            let member = fam.members.into_iter().nth(*index).with_context(|| format!("family has no member {index}"))?;
            eprintln!("deletions {:?}", member.deletions);
            (member.graph, Some(labels))
        }
        ConstructKind::Trim { q, t_prime, a: sel } => {
            let p = projective_plane(*q)?;
            let h = polarity_graph_of(&p);
            let t = meyniel_core::graph::triangles(&h).len();
            let sel = sel.clone().unwrap_or_else(|| vec![0; t.saturating_sub(*t_prime)]);
            (triangle_trim(&h, *t_prime, &sel)?, Some(polarity_labels(&p)))
        }
        ConstructKind::Lex { g, h } => {
            let (g, h) = (load(g)?, load(h)?);
            (lex_product(&g, &h), Some(lex_product_labels(&g, &h)))
        }
        ConstructKind::DoubleCover { g } => {
            let g = load(g)?;
            (double_cover(&g), Some(double_cover_labels(&g)))
        }
        ConstructKind::Petersen => (Graph::petersen(), None),
        ConstructKind::Cycle { n } => (Graph::cycle(*n), None),
        ConstructKind::Path { n } => (Graph::path(*n), None),
        ConstructKind::Complete { n } => (Graph::complete(*n), None),
        ConstructKind::Circulant { n, jumps } => (Graph::circulant(*n, jumps), None),
    };
    let mut w = sink(&cli.out_dir, &a.out)?;
    write_edge_list(&g, &mut w)?;
    w.flush()?;
    if let Some(path) = &a.labels {
        let Some(labels) = labels else {
            bail!("this construction has no vertex labels");
        };
        emit_json(&cli.out_dir, &Some(path.clone()), &serde_json::to_value(labels)?)?;
    }
    Ok(())
}

fn metrics_cmd(path: &Path) -> Result<Value> {
    let g = load(path)?;
    let m = metrics(&g);
    Ok(json!({
        "metrics": m,
        "census": cycle_census(&g),
        "bipartite": g.is_bipartite(),
        "c4_free": g.is_c4_free(),
    }))
}

fn certify_cmd(path: &Path, kind: CertKindArg, t: usize, d: Option<usize>) -> Result<Value> {
    let g = load(path)?;
    let cert = match kind {
        CertKindArg::K2t => k2t_certificate(&g, t, d)?,
        CertKindArg::Girth5 => girth5_certificate(&g, d)?,
        CertKindArg::Domination => meyniel_core::cover::domination_certificate(&g)?,
        CertKindArg::Dlc => dlc_cover_bound(&g)?,
    };
    Ok(serde_json::to_value(cert)?)
}

fn copnumber_cmd(path: &Path, kmax: usize, budget: u64) -> Result<Value> {
    let g = load(path)?;
    match cop_number(&g, kmax, budget) {
        Ok(c) => Ok(json!({ "cop_number": c, "kmax": kmax })),
        Err(GameError::ExceedsKmax { kmax }) => Ok(json!({ "cop_number": null, "kmax": kmax, "exceeds_kmax": true })),
        Err(e) => Err(e.into()),
    }
}

fn default_threshold(g: &Graph, t: usize, girth5: bool) -> Result<usize> {
    let c = if girth5 { girth5_certificate(g, None)? } else { k2t_certificate(g, t, None)? };
    Ok(c.param("D").unwrap_or(0) as usize)
}

fn simulate_cmd(cli: &Cli, a: &SimulateArgs) -> Result<Value> {
    let g = load(&a.graph)?;
    let needs_table = matches!(a.cop, CopName::Table) || matches!(a.robber, RobberName::Table);
    let table = if needs_table { Some(Arc::new(solve(&g, a.k, cli.budget)?)) } else { None };
    let placement = a.cops_at.clone().unwrap_or_else(|| vec![0; a.k]);
    let mut cops: Box<dyn CopStrategy> = match a.cop {
        CopName::Greedy => Box::new(GreedyCops::placed(placement)),
        CopName::Stationary => Box::new(StationaryCops::new(placement)),
        CopName::Random => Box::new(RandomCops::new(a.k, cli.seed)),
        CopName::Table => Box::new(TableCops::new(table.clone().unwrap())),
    };
    let mut robber: Box<dyn RobberStrategy> = match a.robber {
        RobberName::Stationary => Box::new(StationaryRobber::new(a.robber_at)),
        RobberName::EvasionLowdeg => {
            let d = match a.d {
                Some(d) => d,
                None => default_threshold(&g, a.t, false)?,
            };
            Box::new(evasion_lowdeg(&g, a.t, d)?)
        }
        RobberName::EvasionGirth5 => {
            let d = match a.d {
                Some(d) => d,
                None => default_threshold(&g, 1, true)?,
            };
            Box::new(evasion_girth5(&g, d)?)
        }
        RobberName::Table => Box::new(TableRobber::new(table.unwrap())),
    };
    let trace = simulate(&g, cops.as_mut(), robber.as_mut(), a.rounds)?;
    let v = serde_json::to_value(&trace)?;
    if a.trace.is_some() {
        emit_json(&cli.out_dir, &a.trace, &v)?;
    }
    Ok(json!({ "cop": cops.name(), "robber": robber.name(), "outcome": trace.outcome, "rounds": trace.rounds.len() - 1 }))
}

fn ratio_parts(r: &BigRational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

fn hypergraph_summary(h: &Hypergraph, greedy_size: usize) -> Result<(Value, Value, Value)> {
    let lp = blocking_lp(h);
    let (num, den) = ratio_parts(&lp.objective);
    let tau = if h.order() <= DEFAULT_EXACT_LIMIT { json!(blocking_exact(h, DEFAULT_EXACT_LIMIT)?.0) } else { Value::Null };
    let _ = greedy_size;
    Ok((tau, json!(num), json!(den)))
}

fn cover_cmd(path: &Path, mode: CoverMode, omega: u64) -> Result<Value> {
    let g = load(path)?;
    Ok(match mode {
        CoverMode::Domination => {
            let r = domination_bound(&g)?;
            let h = open_neighborhood_hypergraph(&g)?;
            let (tau, num, den) = hypergraph_summary(&h, r.set.len())?;
            json!({ "tau": tau, "tau_star_num": num, "tau_star_den": den, "greedy_size": r.set.len(), "bound": r.bound, "witness": r })
        }
        CoverMode::Dlc => {
            let cert = dlc_cover_bound(&g)?;
            let set = dlc_enumerate(&g)?;
            let edges = g.vertices().map(|v| (0..set.dlcs.len()).filter(|&i| set.dlcs[i].members.contains(&v)).collect()).collect();
            let h = Hypergraph::new(set.dlcs.len(), edges)?;
            let greedy = cert.param("tau").unwrap_or(0) as usize;
            let (tau, num, den) = hypergraph_summary(&h, greedy)?;
            json!({
                "tau": tau,
                "tau_star_num": num,
                "tau_star_den": den,
                "greedy_size": greedy,
                "bound": cert.bound.to_integer(),
                "witness": serde_json::to_value(&cert)?,
            })
        }
        CoverMode::Buckets => {
            let r = bucket_fractional(&g, omega)?;
            let (num, den) = ratio_parts(&r.objective);
            json!({
                "tau": null,
                "tau_star_num": num,
                "tau_star_den": den,
                "greedy_size": null,
                "bound": r.objective.to_string(),
                "witness": r,
            })
        }
    })
}

fn count_cmd(a: u64, d: u64, verify: bool) -> Result<Value> {
    let report = profile_count(a, d)?;
    let mut v = json!({ "count": report });
    if verify {
        let (a, d) = (a as usize, d as usize);
        let j = star_forest(a, d);
        let side: Vec<usize> = (0..a).collect();
        v["verification"] = serde_json::to_value(verify_count_lower_bound(&j, &side, d, 1_000_000)?)?;
    }
    Ok(v)
}

fn sweep_cmd(cli: &Cli, a: &SweepArgs) -> Result<bool> {
    let bf = matches!(a.family, FamilyArg::Bf);
    let qs = match (&a.qs, a.q_max) {
        (Some(qs), _) => qs.clone(),
        (None, Some(q)) => prime_powers_up_to(q).into_iter().filter(|q| !bf || q % 2 == 1).collect(),
        (None, None) => bail!("one of --qs or --q-max is required"),
    };
    let family = match a.family {
        FamilyArg::Incidence => Family::Incidence,
        FamilyArg::Polarity => Family::Polarity,
        FamilyArg::Bf => Family::Bf { ms: a.m.clone(), seed_tries: a.tries },
        FamilyArg::Strip => Family::Strip { eps: a.eps, i: a.i },
    };
    let mut certs: Vec<CertChoice> = Vec::new();
    for c in &a.certs {
        let c = match c {
            SweepCert::K2t => CertChoice::K2t { t: a.t },
            SweepCert::Girth5 => CertChoice::Girth5,
        };
        if !certs.contains(&c) {
            certs.push(c);
        }
    }
    if let Some(dir) = &cli.out_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let spec = SweepSpec { family, qs, certs, exact_kmax: a.exact_kmax, budget: cli.budget, seed: cli.seed, out_dir: cli.out_dir.clone() };
    let result = sweep(&spec)?;
    let out = a.out.clone().or_else(|| cli.out_dir.as_ref().map(|_| PathBuf::from("sweep.csv")));
    let mut w = sink(&cli.out_dir, &out)?;
    result.write_csv(&mut w)?;
    w.flush()?;
    match &result.audit {
        Some(audit) => eprintln!("family constant {:.6} (squared {})", audit.constant(), audit.constant_sq),
        None => eprintln!("family constant: no certified rows"),
    }
    Ok(!result.any_failed())
}

fn family_audit_cmd(cli: &Cli, rows: &Path, out: &Option<PathBuf>) -> Result<()> {
    let f = File::open(rows).with_context(|| format!("opening {}", rows.display()))?;
    let audit = family_audit(read_audit_rows(f)?)?;
    let mut w = sink(&cli.out_dir, out)?;
    audit.write_csv(&mut w)?;
    w.flush()?;
    let line = format!("constant,{:.6},{}", audit.constant(), audit.constant_sq);
    if out.is_some() { println!("{line}") } else { eprintln!("{line}") }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    let print = |v: Value| -> Result<bool> {
        println!("{}", serde_json::to_string_pretty(&v)?);
        Ok(true)
    };
    match &cli.command {
        Command::Construct(a) => construct(cli, a).map(|_| true),
        Command::Metrics { graph } => print(metrics_cmd(graph)?),
        Command::Certify { graph, kind, t, d, out } => {
            let v = certify_cmd(graph, *kind, *t, *d)?;
            emit_json(&cli.out_dir, out, &v).map(|_| true)
        }
        Command::Copnumber { graph, kmax } => print(copnumber_cmd(graph, *kmax, cli.budget)?),
        Command::Simulate(a) => print(simulate_cmd(cli, a)?),
        Command::Cover { graph, mode, omega, out } => {
            let v = cover_cmd(graph, *mode, *omega)?;
            emit_json(&cli.out_dir, out, &v).map(|_| true)
        }
        Command::Count { a, d, verify } => print(count_cmd(*a, *d, *verify)?),
        Command::Sweep(a) => sweep_cmd(cli, a),
        Command::FamilyAudit { rows, out } => family_audit_cmd(cli, rows, out).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
