mod source;
mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use projgen::boset::boset_of;
use projgen::chain_semigroup::{ChainSemigroup, SizeVerdict};
use projgen::presentations::{presentation_re, presentation_re2, presentation_rp, tl_presentation};
use projgen::topology::{
    complex_kp, complex_kp_prime, friendliness_graph, pi1_presentation, tietze_simplify, Budgets,
    Complex2, DEFAULT_COSET_BUDGET,
};
use projgen::{Error, ProjectionAlgebra};

use source::{Loaded, Source};
use suites::{Status, SuiteArgs, SuiteReport};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "projgen", version)]
#[command(about = "Projection algebras, their chain semigroups and presentations")]
struct Cli {
    /// kinyon | band:<k> | tl:<n> | motzkin:<n> | brauer:<n> | partition:<n> | partial-brauer:<n> |
    /// adjacency:<graph.json> | <algebra-or-semigroup.json>
    #[arg(long, short, global = true)]
    source: Option<Source>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the main artifact here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Coset limit for Todd–Coxeter (default from PROJGEN_COSET_BUDGET)
    #[arg(long, global = true)]
    coset_budget: Option<usize>,

    #[arg(long, global = true, default_value_t = 10_000)]
    tietze_steps: usize,

    /// Largest semigroup enumerated or tabulated
    #[arg(long, global = true, default_value_t = 100_000)]
    cap: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichComplex {
    /// Friendliness graph
    Gp,
    Kp,
    KpPrime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresentationFamily {
    Rp,
    Re,
    Re2,
    Tl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Kinyon,
    Band,
    Tl,
    Motzkin,
    Presentations,
    Axioms,
    Boset,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportWhat {
    Algebra,
    Semigroup,
    Boset,
    Complex,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms, derived laws and (when present) semigroup laws
    Validate,
    /// Print the projection algebra
    Build,
    /// The relations ≤, ≤F and F
    Relations,
    /// The friendliness graph or one of the complexes
    Complex {
        #[arg(long, value_enum, default_value_t = WhichComplex::KpPrime)]
        which: WhichComplex,
        /// Cell list sidecar for DOT output
        #[arg(long)]
        faces: Option<PathBuf>,
    },
    /// Fundamental groups of the components of K_P′
    Pi1,
    /// List the elements of a finite chain semigroup
    Enumerate,
    /// Size of the chain semigroup with per-component evidence
    Size,
    /// Maximal subgroup at a projection
    Subgroup {
        /// Projection label or index
        #[arg(long)]
        at: String,
    },
    /// Emit a presentation
    Presentations {
        #[arg(long, value_enum, default_value_t = PresentationFamily::Rp)]
        family: PresentationFamily,
        /// Degree for the Temperley–Lieb family
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a named verification suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Random words per normal-form check
        #[arg(long, default_value_t = 1_000)]
        samples: usize,
    },
    /// Write an artifact to --output
    Export {
        #[arg(long, value_enum, default_value_t = ExportWhat::Complex)]
        what: ExportWhat,
        #[arg(long, value_enum, default_value_t = WhichComplex::KpPrime)]
        which: WhichComplex,
    },
}

enum Failure {
    Usage(String),
    Verify(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UndecidedEquality(_) | Error::BudgetExceeded(_) | Error::CapExceeded(_) => {
                Failure::Inconclusive(e.to_string())
            }
            Error::Mismatch(_) | Error::NotAMorphism(_) => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(Failure::Inconclusive(m)) => {
            eprintln!("inconclusive: {m}");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
    }
}

fn budgets(cli: &Cli) -> CliResult<Budgets> {
    let cosets = match cli.coset_budget {
        Some(b) => b,
        None => match std::env::var("PROJGEN_COSET_BUDGET") {
            Ok(v) => v
                .parse()
                .map_err(|_| Failure::Usage(format!("PROJGEN_COSET_BUDGET={v} is not a number")))?,
            Err(_) => DEFAULT_COSET_BUDGET,
        },
    };
    if cosets == 0 || cli.tietze_steps == 0 || cli.cap == 0 {
        return Err(Failure::Usage("budgets must be positive".into()));
    }
    Ok(Budgets {
        cosets,
        tietze_steps: cli.tietze_steps,
        ..Budgets::default()
    })
}

fn load(cli: &Cli) -> CliResult<Loaded> {
    let src = cli
        .source
        .as_ref()
        .ok_or_else(|| Failure::Usage("--source is required".into()))?;
    Ok(src.load()?)
}

fn emit(cli: &Cli, text: String) -> CliResult<()> {
    match &cli.output {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn run(cli: &Cli) -> CliResult<u8> {
    let budgets = budgets(cli)?;
    match &cli.command {
        Command::Validate => validate(cli),
        Command::Build => {
            let l = load(cli)?;
            let out = match cli.format {
                Format::Json => l.algebra.to_json() + "\n",
                _ => table_text(&l.algebra),
            };
            emit(cli, out)?;
            Ok(0)
        }
        Command::Relations => relations(cli),
        Command::Complex { which, faces } => {
            let l = load(cli)?;
            let c = complex(&l.algebra, *which)?;
            emit(cli, render_complex(cli, &l.algebra, &c))?;
            if let Some(path) = faces {
                write_file(path, &(c.faces_json() + "\n"))?;
            }
            Ok(0)
        }
        Command::Pi1 => pi1(cli, budgets),
        Command::Enumerate => {
            let l = load(cli)?;
            let h = ChainSemigroup::with_budgets(&l.algebra, budgets)?;
            let els = h.enumerate(cli.cap)?;
            let out = match cli.format {
                Format::Json => pretty(&json!(els
                    .iter()
                    .map(|c| json!({"chain": c, "display": h.display(c)}))
                    .collect::<Vec<_>>())),
                _ => els.iter().map(|c| h.display(c) + "\n").collect(),
            };
            emit(cli, out)?;
            Ok(0)
        }
        Command::Size => size(cli, budgets),
        Command::Subgroup { at } => {
            let l = load(cli)?;
            let p = match l.algebra.find_label(at) {
                Some(p) => p,
                None => at
                    .parse()
                    .map_err(|_| Failure::Usage(format!("no projection `{at}`")))?,
            };
            let h = ChainSemigroup::with_budgets(&l.algebra, budgets)?;
            let s = h.maximal_subgroup(p)?;
            let out = match cli.format {
                Format::Json => pretty(&json!({
                    "projection": l.algebra.label(p),
                    "presentation": s.presentation,
                    "classification": s.classification,
                    "abelianization": s.abelianization,
                })),
                _ => format!(
                    "subgroup at {}: {}\nabelianization: {}\n{}",
                    l.algebra.label(p),
                    s.classification,
                    s.abelianization,
                    presentation_text(&s.presentation)
                ),
            };
            emit(cli, out)?;
            Ok(if s.classification.is_decisive() { 0 } else { EXIT_INCONCLUSIVE })
        }
        Command::Presentations { family, n } => {
            let pres = match family {
                PresentationFamily::Tl => {
                    tl_presentation(n.ok_or_else(|| Failure::Usage("--n is required".into()))?)?
                }
                f => {
                    let l = load(cli)?;
                    match f {
                        PresentationFamily::Rp => presentation_rp(&l.algebra),
                        PresentationFamily::Re => presentation_re(&l.algebra),
                        _ => presentation_re2(&l.algebra),
                    }
                }
            };
            let out = match cli.format {
                Format::Json => pres.to_json()? + "\n",
                _ => pres.to_text(),
            };
            emit(cli, out)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            n,
            k,
            samples,
        } => verify(cli, *suite, *n, *k, *samples, budgets),
        Command::Export { what, which } => {
            if cli.output.is_none() {
                return Err(Failure::Usage("export needs --output".into()));
            }
            let l = load(cli)?;
            match what {
                ExportWhat::Algebra => emit(cli, l.algebra.to_json() + "\n")?,
                ExportWhat::Semigroup => {
                    let s = match l.semigroup {
                        Some(s) => s,
                        None => {
                            ChainSemigroup::with_budgets(&l.algebra, budgets)?
                                .to_star_semigroup(cli.cap)?
                                .0
                        }
                    };
                    emit(cli, s.to_json() + "\n")?
                }
                ExportWhat::Boset => {
                    let file = boset_of(&l.algebra).to_file();
                    emit(cli, serde_json::to_string_pretty(&file).map_err(Error::from)? + "\n")?
                }
                ExportWhat::Complex => {
                    let c = complex(&l.algebra, *which)?;
                    emit(cli, render_complex(cli, &l.algebra, &c))?;
                    if cli.format == Format::Dot {
                        let path = cli.output.as_ref().expect("checked").with_extension("faces.json");
                        write_file(&path, &(c.faces_json() + "\n"))?;
                    }
                }
            }
            Ok(0)
        }
    }
}

fn table_text(alg: &ProjectionAlgebra) -> String {
    let n = alg.size();
    let mut out = format!("{n} projections; row p lists q θ_p for each q\n");
    for p in 0..n {
        let row: Vec<String> = (0..n).map(|q| alg.label(alg.apply(q, p))).collect();
        out.push_str(&format!("θ_{}: {}\n", alg.label(p), row.join(" ")));
    }
    out
}

fn validate(cli: &Cli) -> CliResult<u8> {
    let l = load(cli)?;
    let mut rep = l.algebra.validate_axioms();
    let axioms_ok = rep.is_valid();
    if axioms_ok {
        rep.merge(l.algebra.check_derived_laws(3));
    }
    let semigroup = l.semigroup.as_ref().map(|s| s.validate());
    let ok = rep.is_valid() && semigroup.as_ref().is_none_or(|r| r.is_valid());
    let out = match cli.format {
        Format::Json => pretty(&json!({
            "source": l.name,
            "projections": l.algebra.size(),
            "algebra": rep.violations,
            "semigroup": semigroup.as_ref().map(|r| &r.violations),
            "valid": ok,
        })),
        _ => {
            let mut s = format!("{}: {} projections\n", l.name, l.algebra.size());
            s += &format!("projection algebra: {rep}\n");
            if let Some(r) = &semigroup {
                s += &format!("semigroup: {r}\n");
            }
            s
        }
    };
    emit(cli, out)?;
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn relations(cli: &Cli) -> CliResult<u8> {
    let l = load(cli)?;
    let rel = l.algebra.relations()?;
    let name = |pairs: Vec<(usize, usize)>| -> Vec<(String, String)> {
        pairs
            .into_iter()
            .map(|(a, b)| (l.algebra.label(a), l.algebra.label(b)))
            .collect()
    };
    let (leq, leq_f, fr) = (
        name(rel.leq_pairs()),
        name(rel.leq_f_pairs()),
        name(rel.friendly_pairs()),
    );
    let out = match cli.format {
        Format::Json => pretty(&json!({"leq": leq, "leq_f": leq_f, "friendly": fr})),
        _ => {
            let show = |v: &[(String, String)]| {
                v.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ")
            };
            format!(
                "<=  : {}\n<=F : {}\nF   : {}\n",
                show(&leq),
                show(&leq_f),
                show(&fr)
            )
        }
    };
    emit(cli, out)?;
    Ok(0)
}

fn complex(alg: &ProjectionAlgebra, which: WhichComplex) -> CliResult<Complex2> {
    Ok(match which {
        WhichComplex::Gp => friendliness_graph(alg),
        WhichComplex::Kp => complex_kp(alg)?,
        WhichComplex::KpPrime => complex_kp_prime(alg)?,
    })
}

fn render_complex(cli: &Cli, alg: &ProjectionAlgebra, c: &Complex2) -> String {
    match cli.format {
        Format::Json => c.to_json() + "\n",
        Format::Dot => c.to_dot(&|v| alg.label(v)),
        Format::Text => {
            let comps = c.components();
            let mut s = format!(
                "{} vertices, {} edges, {} cells, {} components\n",
                c.vertices,
                c.edges.len(),
                c.cells.len(),
                comps.len()
            );
            for cell in &c.cells {
                let b: Vec<String> = cell.boundary.iter().map(|&v| alg.label(v)).collect();
                s += &format!("cell ({})\n", b.join(","));
            }
            s
        }
    }
}

fn presentation_text(p: &projgen::topology::GroupPresentation) -> String {
    let mut s = format!("generators: {}\n", p.generators);
    for r in &p.relators {
        s += &format!("relator: {r}\n");
    }
    s
}

fn pi1(cli: &Cli, budgets: Budgets) -> CliResult<u8> {
    let l = load(cli)?;
    let c = complex_kp_prime(&l.algebra)?;
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut decisive = true;
    for comp in c.components() {
        let base = comp[0];
        let raw = pi1_presentation(&c, base);
        let s = tietze_simplify(&raw.presentation, budgets);
        decisive &= s.classification.is_decisive();
        let labels: Vec<String> = comp.iter().map(|&v| l.algebra.label(v)).collect();
        text += &format!(
            "component at {} ({} vertices, {} cells): {}; abelianization {}\n",
            l.algebra.label(base),
            comp.len(),
            c.cells_in(&comp).len(),
            s.classification,
            s.abelianization
        );
        if !s.presentation.relators.is_empty() || s.presentation.generators > 0 {
            text += &presentation_text(&s.presentation);
        }
        entries.push(json!({
            "basepoint": l.algebra.label(base),
            "vertices": labels,
            "raw": raw.presentation,
            "simplified": s.presentation,
            "classification": s.classification,
            "abelianization": s.abelianization,
        }));
    }
    let out = match cli.format {
        Format::Json => pretty(&json!(entries)),
        _ => text,
    };
    emit(cli, out)?;
    Ok(if decisive { 0 } else { EXIT_INCONCLUSIVE })
}

fn size(cli: &Cli, budgets: Budgets) -> CliResult<u8> {
    let l = load(cli)?;
    let h = ChainSemigroup::with_budgets(&l.algebra, budgets)?;
    let verdict = h.size()?;
    let groups: Vec<Value> = h
        .components()
        .iter()
        .map(|d| {
            json!({
                "basepoint": l.algebra.label(d.pi1.basepoint),
                "vertices": d.vertices.len(),
                "classification": d.simplified.classification,
                "abelianization": d.simplified.abelianization,
            })
        })
        .collect();
    let out = match cli.format {
        Format::Json => pretty(&json!({"size": verdict, "components": groups})),
        _ => {
            let mut s = format!("{verdict}\n");
            for d in h.components() {
                s += &format!(
                    "  component at {} ({} vert{}): {}; abelianization {}\n",
                    l.algebra.label(d.pi1.basepoint),
                    d.vertices.len(),
                    if d.vertices.len() == 1 { "ex" } else { "ices" },
                    d.simplified.classification,
                    d.simplified.abelianization
                );
            }
            s
        }
    };
    emit(cli, out)?;
    Ok(if verdict == SizeVerdict::Unknown { EXIT_INCONCLUSIVE } else { 0 })
}

fn verify(
    cli: &Cli,
    suite: Suite,
    n: Option<usize>,
    k: Option<usize>,
    samples: usize,
    budgets: Budgets,
) -> CliResult<u8> {
    let args = SuiteArgs {
        n,
        k,
        samples,
        seed: cli.seed,
        budgets,
        cap: cli.cap,
    };
    let mut r = SuiteReport::default();
    match suite {
        Suite::Kinyon => suites::kinyon(&args, &mut r),
        Suite::Band => suites::band(&args, &mut r),
        Suite::Tl => suites::tl(&args, &mut r),
        Suite::Motzkin => suites::motzkin(&args, &mut r),
        Suite::Presentations => {
            let l = match &cli.source {
                Some(src) => src.load()?,
                None => Source::Kinyon.load()?,
            };
            suites::presentations(&l.algebra, &l.name, &args, &mut r);
            if let Some(n) = n {
                suites::tl_presentations(n, &args, &mut r);
            }
        }
        Suite::Axioms => {
            let algebras = match &cli.source {
                Some(src) => {
                    let l = src.load()?;
                    vec![(l.name, l.algebra)]
                }
                None => suites::axiom_battery()?,
            };
            suites::axioms(&algebras, &mut r);
        }
        Suite::Boset => {
            let l = match &cli.source {
                Some(src) => src.load()?,
                None => Source::Kinyon.load()?,
            };
            suites::boset(&l, &args, &mut r);
        }
    }
    let out = match cli.format {
        Format::Json => pretty(&json!(r
            .checks
            .iter()
            .map(|c| json!({
                "check": c.name,
                "status": match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Inconclusive => "inconclusive",
                },
                "detail": c.detail,
            }))
            .collect::<Vec<_>>())),
        _ => r.to_string(),
    };
    emit(cli, out)?;
    Ok(match r.status() {
        Status::Pass => 0,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    })
}
