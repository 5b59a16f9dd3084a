use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use orbit_atlas::comatlas::{all_families, build_orbit_poset, classify_family, loci_report, CominusculeFamily};
use orbit_atlas::io::{
    family_report, iso_hasse_dot, iso_table_tsv, orbit_poset_dot, orbit_table_tsv, parse_tangent_json,
    tangential_dot, to_json,
};
use orbit_atlas::isolab::{build_hasse, classify, orbit_dim, tangential_graph, IsoContext};
use orbit_atlas::rootsys::{parse_family, DynkinType};
use orbit_atlas::verify::{self, Fault, VerifyConfig};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "orbit-atlas", version, about = "Secant and tangent orbit atlases of generalized Grassmannians")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Output formats to write.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [Emit::Json, Emit::Dot, Emit::Tsv])]
    emit: Vec<Emit>,
    #[arg(long, global = true, default_value = "out")]
    output_dir: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Dot,
    Tsv,
}

impl std::fmt::Display for Emit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Orbit poset and loci tables of a cominuscule G/P_k.
    Cominuscule {
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        node: usize,
    },
    /// Tangent orbits of IG(k, 2N) and their closure diagrams.
    Isotropic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Orbit of a tangent element read from a JSON file (`-` for stdin).
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Self-check suites; exits 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = Families::All)]
        families: Families,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Largest N for the exhaustive dimension check.
        #[arg(long, default_value_t = 5)]
        max_dim_n: usize,
        #[arg(long)]
        inject_fault: Option<String>,
    },
    /// Every cominuscule family up to a rank and every IG(k, 2N) up to N.
    Sweep {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Families {
    All,
    Cominuscule,
    Isotropic,
}

/// Failure with a dedicated exit status.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    Exit(2, e.to_string()).into()
}

struct Writer<'a> {
    common: &'a Common,
}

impl Writer<'_> {
    fn wants(&self, e: Emit) -> bool {
        self.common.emit.contains(&e)
    }

    fn write(&self, name: &str, contents: &str) -> Result<()> {
        let dir = &self.common.output_dir;
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
    }
}

fn family_slug(f: &CominusculeFamily) -> String {
    format!("{}_node{}", f.dynkin, f.node)
}

fn iso_slug(ctx: &IsoContext) -> String {
    format!("IG_{}_{}", ctx.k(), 2 * ctx.n())
}

fn emit_family(w: &Writer, f: &CominusculeFamily) -> Result<()> {
    let slug = family_slug(f);
    let poset = build_orbit_poset(f);
    if w.wants(Emit::Tsv) {
        w.write(&format!("{slug}.tsv"), &orbit_table_tsv(&poset, &loci_report(f)))?;
    }
    if w.wants(Emit::Dot) {
        w.write(&format!("{slug}.dot"), &orbit_poset_dot(f, &poset))?;
    }
    if w.wants(Emit::Json) {
        w.write(&format!("{slug}.json"), &to_json(&family_report(f)))?;
    }
    Ok(())
}

fn emit_isotropic(w: &Writer, ctx: &IsoContext) -> Result<()> {
    let slug = iso_slug(ctx);
    let hasse = build_hasse(ctx);
    if w.wants(Emit::Tsv) {
        w.write(&format!("{slug}_orbits.tsv"), &iso_table_tsv(&hasse))?;
    }
    if w.wants(Emit::Dot) {
        w.write(&format!("{slug}_hasse.dot"), &iso_hasse_dot(ctx, &hasse))?;
        w.write(&format!("{slug}_tangential.dot"), &tangential_dot(ctx, &tangential_graph(ctx)))?;
    }
    if w.wants(Emit::Json) {
        w.write(&format!("{slug}_hasse.json"), &to_json(&hasse))?;
    }
    Ok(())
}

fn cmd_cominuscule(w: &Writer, family: &str, rank: usize, node: usize) -> Result<()> {
    let dynkin = DynkinType::new(parse_family(family).map_err(usage)?, rank).map_err(usage)?;
    let f = classify_family(dynkin, node).map_err(usage)?;
    emit_family(w, &f)?;
    println!(
        "{} ({dynkin} node {node}): dim {} in P^{}, d = {}, dim sigma_2 = {}, {}",
        f.name,
        f.dim_x,
        f.ambient_dim,
        f.d,
        f.sigma2_dim,
        serde_json::to_value(f.fill_status)?.as_str().unwrap_or_default()
    );
    Ok(())
}

fn cmd_isotropic(w: &Writer, n: usize, k: usize) -> Result<()> {
    let ctx = IsoContext::new(n, k).map_err(usage)?;
    emit_isotropic(w, &ctx)?;
    let hasse = build_hasse(&ctx);
    println!("{}: {} orbits, {} covers", ctx.name(), hasse.node_count(), hasse.edge_count());
    Ok(())
}

fn cmd_classify(input: &Path) -> Result<()> {
    let mut data = Vec::new();
    if input == Path::new("-") {
        std::io::stdin().read_to_end(&mut data)?;
    } else {
        data = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    }
    let (ctx, x) = parse_tangent_json(&data).map_err(usage)?;
    let o = classify(&ctx, &x)?;
    let out = json!({
        "context": ctx.name(),
        "orbit": o,
        "dim": orbit_dim(&ctx, o)?,
        "tangential_identifiable": o.tangential_identifiable(),
    });
    print!("{}", to_json(&out));
    Ok(())
}

fn cmd_verify(w: &Writer, cfg: VerifyConfig) -> Result<()> {
    let report = verify::run(&cfg)?;
    let text = to_json(&report);
    if w.wants(Emit::Json) {
        w.write("verify_report.json", &text)?;
    }
    print!("{text}");
    if report.passed {
        Ok(())
    } else {
        Err(Exit(1, "verification failed".into()).into())
    }
}

fn cmd_sweep(w: &Writer, max_rank: usize, max_n: usize) -> Result<()> {
    let families = all_families(max_rank);
    families.par_iter().try_for_each(|f| emit_family(w, f))?;
    let contexts: Vec<IsoContext> = (3..=max_n)
        .flat_map(|n| (2..n).map(move |k| IsoContext::new(n, k).expect("k in range")))
        .collect();
    contexts.par_iter().try_for_each(|ctx| emit_isotropic(w, ctx))?;
    let summary = json!({
        "families": families.iter().map(|f| json!({
            "dynkin": f.dynkin, "node": f.node, "name": f.name, "dim": f.dim_x,
            "ambient_dim": f.ambient_dim, "d": f.d, "sigma2_dim": f.sigma2_dim,
            "fill_status": f.fill_status,
        })).collect::<Vec<_>>(),
        "isotropic": contexts.iter().map(|c| {
            let h = build_hasse(c);
            json!({ "name": c.name(), "orbits": h.node_count(), "covers": h.edge_count() })
        }).collect::<Vec<_>>(),
    });
    w.write("sweep.json", &to_json(&summary))?;
    println!("{} families, {} isotropic Grassmannians", families.len(), contexts.len());
    Ok(())
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("ORBIT_ATLAS_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| usage(format!("ORBIT_ATLAS_THREADS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    init_threads()?;
    let w = Writer { common: &cli.common };
    match cli.command {
        Command::Cominuscule { family, rank, node } => cmd_cominuscule(&w, &family, rank, node),
        Command::Isotropic { n, k } => cmd_isotropic(&w, n, k),
        Command::Classify { input } => cmd_classify(&input),
        Command::Verify { families, max_rank, n, k, samples, max_dim_n, inject_fault } => {
            let fault = inject_fault.as_deref().map(str::parse::<Fault>).transpose().map_err(usage)?;
            let iso = families != Families::Cominuscule;
            let cfg = VerifyConfig {
                seed: cli.common.seed,
                max_rank: (families != Families::Isotropic).then_some(max_rank),
                contexts: if iso { vec![IsoContext::new(n, k).map_err(usage)?] } else { Vec::new() },
                max_dim_n,
                samples,
                fault,
            };
            cmd_verify(&w, cfg)
        }
        Command::Sweep { max_rank, max_n } => cmd_sweep(&w, max_rank, max_n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.downcast_ref::<Exit>().map_or(1, |x| x.0))
        }
    }
}
