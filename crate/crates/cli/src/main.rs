use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use stripes_core::atlas::StripedAtlas;
use stripes_core::dualgraph::{build_dual_graph, euler_invariant, export_dot};
use stripes_core::family::exhaustive_family;
use stripes_core::fixtures;
use stripes_core::format::{parse_atlas, to_text, AtlasError};
use stripes_core::leafspace::{build_leaf_space, classify_leaf, LeafClass, PointId};
use stripes_core::random::{random_atlas, RandomAtlasConfig};
use stripes_core::reduction::{reduce_with, SurfaceClass};
use stripes_core::registry::Strategies;
use stripes_core::render::{leafspace_dot, leafspace_svg};
use stripes_core::selfcheck::selfcheck;
use stripes_core::symmetry::{enumerate_automorphisms_with, kernel_of_psi0, psi0_report, SymmetryError};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Validate,
    Classify,
    Leafspace,
    Reduce,
    Dual,
    Aut,
    Kernel,
    Report,
    Iso,
    Random,
    Selfcheck,
}

/// Striped atlases, leaf spaces and their homeotopy groups.
///
/// FILE is an atlas file, or a built-in fixture name (PLANE, HALFPLANE, CYL,
/// MOEB, SAMESIDE, PUNCTURED, LADDER).
#[derive(Parser, Debug)]
#[command(name = "stripes", version)]
struct Cli {
    command: Command,
    file: Option<String>,
    /// Second atlas, for `iso`.
    other: Option<String>,
    #[arg(long)]
    dot: bool,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[arg(short = 'o', value_name = "OUT")]
    out: Option<PathBuf>,
    /// Sampling depth for the closure oracle (`leafspace`, `selfcheck`).
    #[arg(long, value_name = "K")]
    samples: Option<usize>,
    #[arg(long, value_name = "N", default_value_t = 3)]
    strips: usize,
    #[arg(long = "max-ints", value_name = "M", default_value_t = 2)]
    max_ints: usize,
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    /// Isomorphism search strategy.
    #[arg(long, default_value = "backtrack")]
    search: String,
    /// Seam choice during reduction.
    #[arg(long = "seam-policy", default_value = "first")]
    seam_policy: String,
    /// `selfcheck`: run over every atlas with at most 2 strips and 2 intervals per side.
    #[arg(long)]
    family: bool,
}

enum Failure {
    Validation(String),
    Usage(String),
    Precondition(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Usage(m) | Failure::Precondition(m) => m,
        }
    }
}

impl From<SymmetryError> for Failure {
    fn from(e: SymmetryError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

fn atlas_error_text(e: &AtlasError) -> String {
    match e {
        AtlasError::Syntax(s) => s.to_string(),
        AtlasError::Invalid(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n"),
    }
}

fn load(arg: Option<&str>) -> Result<StripedAtlas, Failure> {
    let arg = arg.ok_or_else(|| Failure::Usage("missing FILE".into()))?;
    let path = Path::new(arg);
    let text = if path.exists() {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    } else if let Some((_, text)) = fixtures::ALL.iter().find(|(n, _)| n.eq_ignore_ascii_case(arg)) {
        text.to_string()
    } else {
        return Err(Failure::Usage(format!("{arg}: no such file or fixture")));
    };
    parse_atlas(&text).map_err(|e| Failure::Validation(atlas_error_text(&e)))
}

fn class_token(c: LeafClass) -> &'static str {
    match c {
        LeafClass::Regular => "REGULAR",
        LeafClass::SingularNonSpecial => "SINGULAR",
        LeafClass::Special => "SPECIAL",
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let strategies = Strategies::default();
    let usage = |e: stripes_core::registry::StrategyError| Failure::Usage(e.to_string());
    let mut out = String::new();
    match cli.command {
        Command::Validate => {
            let a = load(cli.file.as_deref())?;
            writeln!(
                out,
                "OK strips={} intervals={} gluings={}",
                a.strip_count(),
                a.interval_count(),
                a.gluings().len()
            )
            .unwrap();
        }
        Command::Classify => {
            let a = load(cli.file.as_deref())?;
            let m = build_leaf_space(&a);
            for p in m.points() {
                writeln!(out, "{} {}", p.name, class_token(classify_leaf(&a, &p.kind))).unwrap();
            }
        }
        Command::Leafspace => {
            let a = load(cli.file.as_deref())?;
            let m = build_leaf_space(&a);
            let method = match cli.samples {
                None => strategies.hcl.build("rule"),
                Some(k) => strategies.hcl.build(&format!("sampled:{k}")),
            }
            .map_err(usage)?;
            if let Some(path) = &cli.svg {
                std::fs::write(path, leafspace_svg(&m))
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            if cli.dot {
                out.push_str(&leafspace_dot(&m));
            } else {
                for arc in 0..m.arc_count() {
                    writeln!(out, "arc {}", m.arc_name(stripes_core::StripId(arc))).unwrap();
                }
                for id in m.point_ids() {
                    let p = m.point(id);
                    let ends: Vec<String> = p
                        .attachments
                        .iter()
                        .map(|x| format!("{}:{}#{}", m.arc_name(x.end.strip), x.end.side.index(), x.index))
                        .collect();
                    let hcl: BTreeSet<PointId> = method.hcl(&m, id);
                    let hcl: Vec<&str> = hcl.iter().map(|q| m.point(*q).name.as_str()).collect();
                    writeln!(out, "point {} at {} hcl={{{}}}", p.name, ends.join(","), hcl.join(",")).unwrap();
                }
            }
        }
        Command::Reduce => {
            let a = load(cli.file.as_deref())?;
            let mut policy = strategies.seams.build(&cli.seam_policy).map_err(usage)?;
            for class in reduce_with(&a, policy.as_mut()) {
                match class {
                    SurfaceClass::Proper(r) => out.push_str(&to_text(&r)),
                    other => writeln!(out, "{}", other.label()).unwrap(),
                }
            }
        }
        Command::Dual => {
            let a = load(cli.file.as_deref())?;
            let g = build_dual_graph(&a);
            if cli.dot {
                out.push_str(&export_dot(&g));
            } else {
                for v in &g.vertices {
                    writeln!(out, "vertex {} {} {}", v.name, v.side_lengths[0], v.side_lengths[1]).unwrap();
                }
                for e in &g.edges {
                    let end = |s: stripes_core::atlas::Slot| {
                        format!("{}:{}#{}", g.vertices[s.strip.0].name, s.side.index(), s.index)
                    };
                    writeln!(out, "edge {} {} {}", e.parity, end(e.ends[0]), end(e.ends[1])).unwrap();
                }
                writeln!(out, "euler {}", euler_invariant(&g)).unwrap();
            }
        }
        Command::Aut => {
            let a = load(cli.file.as_deref())?;
            let search = strategies.search.build(&cli.search).map_err(usage)?;
            for aut in enumerate_automorphisms_with(&a, search.as_ref()).elements() {
                writeln!(out, "{}", aut.describe(&a, &a)).unwrap();
            }
        }
        Command::Kernel => {
            let a = load(cli.file.as_deref())?;
            writeln!(out, "{}", kernel_of_psi0(&a)?).unwrap();
        }
        Command::Report => {
            let a = load(cli.file.as_deref())?;
            let r = psi0_report(&a)?;
            writeln!(out, "surface {}", r.surface).unwrap();
            writeln!(out, "autOrder {}", r.aut_order).unwrap();
            writeln!(out, "kernel {}", r.kernel).unwrap();
            writeln!(out, "imageOrder {}", r.image_order).unwrap();
            writeln!(out, "leafModelAutOrder {}", r.leaf_model_aut_order).unwrap();
        }
        Command::Iso => {
            let a = load(cli.file.as_deref())?;
            let b = load(cli.other.as_deref())?;
            let search = strategies.search.build(&cli.search).map_err(usage)?;
            match search.first(&a, &b) {
                Some(w) => writeln!(out, "ISOMORPHIC {}", w.describe(&a, &b)).unwrap(),
                None => writeln!(out, "NOT ISOMORPHIC").unwrap(),
            }
        }
        Command::Random => {
            if cli.strips == 0 {
                return Err(Failure::Usage("--strips must be at least 1".into()));
            }
            out.push_str(&to_text(&random_atlas(&RandomAtlasConfig::new(cli.strips, cli.max_ints), cli.seed)));
        }
        Command::Selfcheck => {
            let k = cli.samples.unwrap_or(3);
            if k == 0 {
                return Err(Failure::Usage("--samples must be at least 1".into()));
            }
            let failed = if cli.family {
                let family = exhaustive_family(2, 2);
                let mut checks = 0;
                let mut failures = 0;
                for (i, a) in family.iter().enumerate() {
                    let r = selfcheck(a, k);
                    checks += r.results.len();
                    for f in r.failures() {
                        failures += 1;
                        writeln!(out, "atlas {i}: {f}").unwrap();
                    }
                }
                let verdict = if failures == 0 { "PASS" } else { "FAIL" };
                writeln!(out, "{verdict} family atlases={} checks={checks} failures={failures}", family.len())
                    .unwrap();
                failures > 0
            } else {
                let r = selfcheck(&load(cli.file.as_deref())?, k);
                out.push_str(&r.to_string());
                !r.all_passed()
            };
            if failed {
                return Err(Failure::Validation(out));
            }
        }
    }
    Ok(out)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("STRIPES_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("STRIPES_THREADS={value} is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli)).and_then(|text| emit(&cli, &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // selfcheck failures still print their full report on stdout
        Err(Failure::Validation(text)) if cli.command == Command::Selfcheck => {
            let _ = emit(&cli, &text);
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("stripes: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
