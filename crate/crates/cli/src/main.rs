use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand};
use flagfix::algebra::field_make;
use flagfix::building::{fixed_point_subcomplex, full_building, Ambient, SubComplex};
use flagfix::grouplat::{closure, invariant_lattice, GroupSpec, DEFAULT_AMBIENT_CAP, DEFAULT_CLOSURE_CAP};
use flagfix::harness::{bundled_catalog, ingest_catalog, run_campaign, Cache, CampaignConfig, CACHE_ENV};
use flagfix::theorems::{
    borel_tits_demo, check_convex, check_fixed_point_form, find_centre, g_cr_verdicts, loewy_centres,
};
use flagfix::topology::reduced_homology;
use serde_json::json;

mod input;
use input::{read_flags, GroupArgs};

#[derive(Debug, Parser)]
#[command(name = "flagfix", version, about = "Fixed-point subcomplexes of finite general linear buildings")]
struct Cli {
    /// Closure size cap.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_CAP)]
    cap_closure: usize,
    /// Cap on the matrix scan q^(n^2) used to enumerate the ambient GL_n(F_q).
    #[arg(long, global = true, default_value_t = DEFAULT_AMBIENT_CAP)]
    cap_ambient: u128,
    /// Seed recorded in reports and used for generated catalogs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariant lattice and fixed-point subcomplex X^H.
    Complex(GroupArgs),
    /// Complete reducibility by three independent tests.
    Crcheck(GroupArgs),
    /// Centre of a contractible X^H.
    Centre(GroupArgs),
    /// Reduced integral homology of X^H or of the full building.
    Homology {
        #[command(flatten)]
        group: GroupArgs,
        /// Use the whole building of GL_n(F_q).
        #[arg(long)]
        full_building: bool,
    },
    /// Run a verification campaign over a catalog file or bundled catalog.
    Campaign {
        /// Catalog path, or a bundled name such as gl3f2-all-cyclic, gl4f2-named-standard, gl3f2-random2-200.
        catalog: String,
        /// Directory for cached closures and homology.
        #[arg(long, env = CACHE_ENV, value_name = "DIR")]
        cache_dir: Option<PathBuf>,
        /// Per-entry time budget in seconds.
        #[arg(long, default_value_t = 60)]
        budget: u64,
    },
    /// Socle and radical flags of H, checked against a normalizing K.
    Loewy {
        #[command(flatten)]
        group: GroupArgs,
        /// Generator of K (default: K = H). Repeatable.
        #[arg(long = "over-gens", value_name = "MATRIX")]
        over_gens: Vec<String>,
    },
    /// Whether a set of flags is of the form X^H.
    Fixedform {
        /// Flag-set JSON file.
        flags: PathBuf,
    },
    /// Parabolic containing the normalizer of a unipotent subgroup.
    Boreltits(GroupArgs),
    /// Pairwise convexity of a set of flags.
    Convex {
        /// Flag-set JSON file.
        flags: PathBuf,
    },
}

/// Input problems exit with 2; failed or negative verdicts with 1.
enum Failure {
    Usage(anyhow::Error),
    Verdict(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<flagfix::Error>() {
            Some(inner) if is_verdict(inner) => Failure::Verdict(e),
            _ => Failure::Usage(e),
        }
    }
}

impl From<flagfix::Error> for Failure {
    fn from(e: flagfix::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn is_verdict(e: &flagfix::Error) -> bool {
    use flagfix::Error::*;
    matches!(
        e,
        NotContractible | LoewyImproper | NotUnipotent | TrivialGroup | NotNormal | OracleDisagreement(_) | Verification(_)
    )
}

struct Output {
    json: bool,
    text: String,
    value: serde_json::Value,
    ok: bool,
}

impl Output {
    fn new(json: bool, text: String, value: serde_json::Value) -> Self {
        Output { json, text, value, ok: true }
    }
}

fn ambient(cli: &Cli, spec: &GroupSpec) -> Result<std::sync::Arc<Ambient>> {
    Ok(Ambient::general_linear(spec.field(), spec.n(), cli.cap_ambient)?)
}

fn checked_spec(cli: &Cli, args: &GroupArgs) -> Result<GroupSpec> {
    let spec = args.spec()?;
    let c = closure(&spec, cli.cap_closure);
    if !c.is_complete() {
        bail!("group closure exceeds --cap-closure {}", cli.cap_closure);
    }
    Ok(spec)
}

fn complex_text(y: &SubComplex) -> String {
    let vertices: Vec<String> = y.vertices().map(ToString::to_string).collect();
    match y.simplex_counts().as_slice() {
        [] => "X^H: empty".into(),
        [v] => format!("X^H: {v} vertex{} ({})", if *v == 1 { "" } else { "es" }, vertices.join(", ")),
        counts => format!("X^H: {} simplices, by degree {:?}; vertices: {}", y.len(), counts, vertices.join(", ")),
    }
}

fn run(cli: &Cli) -> std::result::Result<Output, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Complex(args) => {
            let spec = checked_spec(cli, args)?;
            let lat = invariant_lattice(&spec)?;
            let y = fixed_point_subcomplex(&lat);
            let by_type: Vec<_> =
                y.counts_by_type().into_iter().map(|(t, c)| json!({"type": t, "count": c})).collect();
            let nodes: Vec<String> = lat.nodes().iter().map(ToString::to_string).collect();
            let text = format!("invariant subspaces ({}): {}\n{}", nodes.len(), nodes.join(", "), complex_text(&y));
            let value = json!({
                "q": spec.field().q, "n": spec.n(),
                "order": closure(&spec, cli.cap_closure).order(),
                "lattice": nodes,
                "simplices": y.len(),
                "simplex_counts": y.simplex_counts(),
                "counts_by_type": by_type,
                "flags": y.flags(),
            });
            Ok(Output::new(json, text, value))
        }
        Command::Crcheck(args) => {
            let spec = checked_spec(cli, args)?;
            let v = g_cr_verdicts(&spec)?;
            if !v.agree() {
                return Err(Failure::Verdict(anyhow!(
                    "tests disagree: building = {}, not contractible = {}, semisimple = {}",
                    v.building,
                    v.not_contractible,
                    v.semisimple
                )));
            }
            let text = match (v.building, v.irreducible) {
                (true, true) => "G-cr (G-irreducible: X^H empty)".to_string(),
                (true, false) => "G-cr (all three tests agree)".to_string(),
                (false, _) => "not G-cr (all three tests agree)".to_string(),
            };
            Ok(Output::new(json, text, serde_json::to_value(v).unwrap()))
        }
        Command::Centre(args) => {
            let spec = checked_spec(cli, args)?;
            let amb = ambient(cli, &spec)?;
            let r = find_centre(&spec, &amb)?;
            let s = r.summary();
            let text = format!(
                "centre: {}\n|M| = {}, |K| = {}, X^H has {} simplices, X^K has {}",
                s.centre, s.m_order, s.k_order, s.y_simplices, s.xk_simplices
            );
            Ok(Output::new(json, text, serde_json::to_value(s).unwrap()))
        }
        Command::Homology { group, full_building: full } => {
            let y = if *full {
                let q = group.q.ok_or_else(|| anyhow!("--q is required with --full-building"))?;
                let n = group.n.ok_or_else(|| anyhow!("--n is required with --full-building"))?;
                full_building(field_make(q).map_err(anyhow::Error::from)?, n)?
            } else {
                fixed_point_subcomplex(&invariant_lattice(&checked_spec(cli, group)?)?)
            };
            if y.is_empty() {
                let text = "complex is empty: reduced homology is Z in degree -1".to_string();
                return Ok(Output::new(json, text, json!({"empty": true})));
            }
            let h = reduced_homology(&y)?;
            let mut text = String::from("degree  betti  torsion\n");
            for (d, b) in h.reduced_betti.iter().enumerate() {
                let t: Vec<String> = h.torsion[d].iter().map(ToString::to_string).collect();
                text.push_str(&format!("{d:>6}  {b:>5}  {}\n", if t.is_empty() { "-".into() } else { t.join(",") }));
            }
            text.push_str(&format!("reduced Betti: {:?}", h.reduced_betti));
            Ok(Output::new(json, text, serde_json::to_value(&h).unwrap()))
        }
        Command::Campaign { catalog, cache_dir, budget } => {
            let path = PathBuf::from(catalog);
            let cat = if path.exists() {
                ingest_catalog(&path)?
            } else if let Some(c) = bundled_catalog(catalog, cli.seed) {
                c?
            } else {
                return Err(Failure::Usage(anyhow!("no catalog file or bundled catalog named '{catalog}'")));
            };
            let config = CampaignConfig {
                cap_closure: cli.cap_closure,
                cap_ambient: cli.cap_ambient,
                seed: cli.seed,
                workers: cli.workers,
                budget_secs: *budget,
                cache: cache_dir.as_ref().map(Cache::open).transpose()?,
                ..CampaignConfig::default()
            };
            let report = run_campaign(&cat.entries, &cat.pairs, &config);
            let s = &report.summary;
            let text = format!(
                "{} entries, {} pairs, {} checks: {} pass, {} fail, {} skip, {} disagreement",
                s.entries, s.pairs, s.checks, s.pass, s.fail, s.skip, s.disagreement
            );
            let mut out = Output::new(json, text, serde_json::to_value(&report).unwrap());
            out.ok = s.is_clean();
            Ok(out)
        }
        Command::Loewy { group, over_gens } => {
            let h = checked_spec(cli, group)?;
            let k = if over_gens.is_empty() {
                h.clone()
            } else {
                let args = GroupArgs { q: Some(h.field().q as u32), n: Some(h.n()), gens: over_gens.clone(), gens_file: None, entry: None };
                checked_spec(cli, &args)?
            };
            let r = loewy_centres(&h, &k)?;
            let text = format!(
                "socle flag: {}\nradical flag: {}\nLoewy length {}; stable under K: {}",
                r.socle_flag, r.radical_flag, r.loewy_length, r.k_stable
            );
            let mut out = Output::new(json, text, serde_json::to_value(&r).unwrap());
            out.ok = r.k_stable;
            Ok(out)
        }
        Command::Fixedform { flags } => {
            let y = read_flags(flags)?;
            let amb = Ambient::general_linear(y.field(), y.n(), cli.cap_ambient)?;
            let v = check_fixed_point_form(&y, &amb);
            let text = match &v.counterexample {
                None => format!("fixed-point form: yes (pointwise stabilizer of order {})", v.h.order()),
                Some(f) => format!(
                    "fixed-point form: no; {f} is fixed by the pointwise stabilizer (order {}) but missing",
                    v.h.order()
                ),
            };
            let value = json!({
                "is_fixed_point_form": v.is_fixed_point_form,
                "stabilizer_order": v.h.order(),
                "counterexample": v.counterexample,
            });
            Ok(Output::new(json, text, value))
        }
        Command::Boreltits(args) => {
            let spec = checked_spec(cli, args)?;
            let amb = ambient(cli, &spec)?;
            let r = borel_tits_demo(&spec, &amb)?;
            let text = format!(
                "|U| = {}, |N_G(U)| = {}, |N_G(X^U)| = {}\nflag fixed by N_G(U): {} (stabilizer order {})",
                r.u_order, r.normalizer_order, r.complex_stabilizer_order, r.fixed_flag, r.parabolic_order
            );
            Ok(Output::new(json, text, serde_json::to_value(&r).unwrap()))
        }
        Command::Convex { flags } => {
            let y = read_flags(flags)?;
            let amb = Ambient::general_linear(y.field(), y.n(), cli.cap_ambient)?;
            let v = check_convex(&y, &amb);
            let text = match &v.counterexample {
                None => "convex".to_string(),
                Some((a, b, q)) => format!("not convex: {q} is fixed by the stabilizer of {a} and {b}"),
            };
            Ok(Output::new(json, text, serde_json::to_value(&v).unwrap()))
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    let body = if out.json { serde_json::to_string_pretty(&out.value)? } else { out.text.clone() };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, format!("{body}\n"))?;
            if out.json {
                // keep the one-line summary visible when the report goes to a file
                println!("{}", out.text);
            }
        }
        None => writeln!(std::io::stdout(), "{body}")?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let result = flagfix::par::with_workers(cli.workers, || run(&cli));
    match result {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Verdict(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
