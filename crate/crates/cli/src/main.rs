use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use graphheight::closure::{closure_family, poset_dot, Atom, Height};
use graphheight::dynamics::{fixed_points, infinity_certificate, verify_certificate, PLHomeo};
use graphheight::oracle::{cross_check, search_min_height, OracleError};
use graphheight::report::{published_table, Report, RowStatus, SchemeBlock, CellSummary};
use graphheight::scheme::{apply_scheme, plan, scheme_height, Scheme, SchemeError};
use graphheight::{make_family, parse_graph, FamilyId, TopoGraph};

// A closed pipe (e.g. `| head`) ends the program quietly instead of panicking.
macro_rules! outln {
    ($($arg:tt)*) => {
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    };
}

macro_rules! out {
    ($($arg:tt)*) => {
        if write!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    };
}

#[derive(Parser)]
#[command(name = "graphheight", version, about = "Heights of transformation groups on topological graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph file in JSON: {"vertices": [...], "edges": [[id, u, v], ...]}
    graph: Option<PathBuf>,
    /// Named graph instead of a file: interval, circle, lollipop, star:n, xn:n, yn:n, zn:n, wn:n
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct Output {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Base height and achievable heights of a graph
    Height {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Also run the chain search and compare
        #[arg(long)]
        oracle: bool,
        /// Print the closure poset in DOT instead of a report
        #[arg(long)]
        dot: bool,
    },
    /// Plan or evaluate a subgroup construction
    Construct {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Target height (a number or `inf`)
        #[arg(long)]
        target: Option<String>,
        /// Scheme file in JSON
        #[arg(long)]
        scheme: Option<PathBuf>,
        #[arg(long)]
        oracle: bool,
    },
    /// Orbit closures of the full group or of a scheme
    Orbits {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        scheme: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check a height by engine, closed form and chain search
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        scheme: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Smallest connected multigraph with the given base height
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 6)]
        vmax: usize,
        #[arg(long, default_value_t = 8)]
        emax: usize,
        #[arg(long)]
        json: bool,
    },
    /// Infinite-height certificate for a PL homeomorphism of [0,1]
    Dynamics {
        /// PL map in JSON: {"points": [["0","0"], ["1/2","1/4"], ["1","1"]]}
        #[arg(long)]
        pl: PathBuf,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        d: usize,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the table of published heights
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Domain(String),
    Bound(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Bound(_) => 4,
        }
    }
}

impl From<SchemeError> for Failure {
    fn from(e: SchemeError) -> Self {
        match e {
            SchemeError::BelowBase { .. } => Failure::Domain(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Scheme(s) => s.into(),
            OracleError::TooManyCells { .. }
            | OracleError::EnumerationBound { .. }
            | OracleError::SearchBounds { .. } => Failure::Bound(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(input: &Input) -> Result<(String, TopoGraph), Failure> {
    match (&input.graph, &input.family) {
        (Some(_), Some(_)) => Err(Failure::Input("give either a graph file or --family, not both".into())),
        (None, None) => Err(Failure::Input("a graph file or --family is required".into())),
        (None, Some(f)) => {
            let id: FamilyId = f.parse().map_err(|e| Failure::Input(format!("{e}")))?;
            let g = make_family(id).map_err(|e| Failure::Input(e.to_string()))?;
            Ok((id.to_string(), g))
        }
        (Some(p), None) => {
            let g = parse_graph(&read(p)?).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            Ok((p.display().to_string(), g))
        }
    }
}

fn load_scheme(path: &Option<PathBuf>) -> Result<Option<Scheme>, Failure> {
    let Some(p) = path else { return Ok(None) };
    serde_json::from_str(&read(p)?)
        .map(Some)
        .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
}

fn print_json<T: Serialize>(value: &T) {
    outln!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn emit(mut report: Report, output: &Output, start: Instant) {
    if !output.no_timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if output.json {
        print_json(&report);
    } else {
        out!("{}", report.to_text());
    }
}

fn atom_name(g: &TopoGraph, a: &Atom) -> String {
    match *a {
        Atom::Vertex(i) => g.vertices()[i].clone(),
        Atom::Edge(i) => g.edges()[i].id.clone(),
        Atom::Decoration(i) => format!("seq{i}"),
    }
}

#[derive(Serialize)]
struct CellListing {
    kind: String,
    members: Vec<String>,
    closure: Vec<String>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let start = Instant::now();
    match cli.command {
        Command::Height {
            input,
            output,
            oracle,
            dot,
        } => {
            let (name, g) = load(&input)?;
            if dot {
                let c = apply_scheme(&g, &Scheme::FullHomeo)?;
                out!("{}", poset_dot(&closure_family(&c)));
                return Ok(());
            }
            let mut report = Report::new(name, &g);
            if oracle {
                report.oracle = Some(cross_check(&g, &Scheme::FullHomeo)?);
            }
            emit(report, &output, start);
        }
        Command::Construct {
            input,
            output,
            target,
            scheme,
            oracle,
        } => {
            let (name, g) = load(&input)?;
            let s = match (load_scheme(&scheme)?, target) {
                (Some(_), Some(_)) => {
                    return Err(Failure::Input("give either --target or --scheme, not both".into()))
                }
                (Some(s), None) => s,
                (None, Some(t)) => {
                    let t: Height = t
                        .parse()
                        .map_err(|_| Failure::Input(format!("invalid target `{t}`")))?;
                    plan(&g, t)?
                }
                (None, None) => return Err(Failure::Input("--target or --scheme is required".into())),
            };
            let height = scheme_height(&g, &s)?;
            let cells = match &s {
                Scheme::Trivial | Scheme::Rotation { .. } => None,
                _ => Some(CellSummary::of(&closure_family(&apply_scheme(&g, &s)?))),
            };
            let mut report = Report::new(name, &g);
            if oracle && height != Height::Infinite {
                report.oracle = Some(cross_check(&g, &s)?);
            }
            report.scheme = Some(SchemeBlock {
                scheme: s,
                height,
                cells,
            });
            emit(report, &output, start);
        }
        Command::Orbits {
            input,
            scheme,
            dot,
            json,
        } => {
            let (_, g) = load(&input)?;
            let s = load_scheme(&scheme)?.unwrap_or(Scheme::FullHomeo);
            let f = closure_family(&apply_scheme(&g, &s)?);
            if dot {
                out!("{}", poset_dot(&f));
                return Ok(());
            }
            let sub = &f.source.reduced().graph;
            let listing: Vec<CellListing> = f
                .cells
                .iter()
                .map(|c| CellListing {
                    kind: format!("{:?}", c.kind),
                    members: c.members.iter().map(|a| atom_name(sub, a)).collect(),
                    closure: c.hull.iter().map(|a| atom_name(sub, a)).collect(),
                })
                .collect();
            if json {
                print_json(&listing);
            } else {
                for (i, c) in listing.iter().enumerate() {
                    outln!("c{i} {}: {{{}}}", c.kind, c.members.join(", "));
                }
                outln!("height {}", f.cells.len() - 1);
            }
        }
        Command::Oracle {
            input,
            scheme,
            json,
        } => {
            let (_, g) = load(&input)?;
            let s = load_scheme(&scheme)?.unwrap_or(Scheme::FullHomeo);
            let x = cross_check(&g, &s)?;
            if json {
                print_json(&x);
            } else {
                outln!("engine:       {}", x.engine);
                outln!(
                    "closed form:  {}",
                    x.closed_form.map_or("-".to_string(), |h| h.to_string())
                );
                outln!("chain search: {}", x.chain_search);
                outln!("agree:        {}", x.agree);
                for (i, set) in x.certificate.sets.iter().enumerate() {
                    outln!("  Y{i} = cells {set:?}");
                }
                if let Some(c) = &x.published_claim {
                    outln!(
                        "reference:    {} expects {} ({})",
                        c.family,
                        c.value,
                        if c.matches { "match" } else { "flagged-discrepancy" }
                    );
                }
            }
            if !x.agree {
                return Err(Failure::Check("methods disagree".into()));
            }
        }
        Command::Search {
            p,
            vmax,
            emax,
            json,
        } => {
            let r = search_min_height(p, vmax, emax)?;
            if json {
                print_json(&r);
            } else {
                match &r.witness {
                    Some(g) => outln!("witness: {}", g.to_json()),
                    None => outln!("no witness within vmax={vmax}, emax={emax}"),
                }
                outln!(
                    "classes examined {}, generated {}",
                    r.classes_examined, r.classes_generated
                );
            }
        }
        Command::Dynamics { pl, n, d, json } => {
            let f: PLHomeo = serde_json::from_str(&read(&pl)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", pl.display())))?;
            let cert = infinity_certificate(&f, n, d).map_err(|e| Failure::Input(e.to_string()))?;
            let ok = verify_certificate(&f, &cert).map_err(|e| Failure::Input(e.to_string()))?;
            if json {
                print_json(&serde_json::json!({
                    "fixedPoints": fixed_points(&f).iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "certificate": cert,
                    "verified": ok,
                }));
            } else {
                let fixed: Vec<String> = fixed_points(&f).iter().map(|s| s.to_string()).collect();
                outln!("fixed points: {}", fixed.join(", "));
                outln!("mode:         {:?}{}", cert.mode, if cert.degenerate { " (fixed points)" } else { "" });
                if let Some((a, b)) = &cert.gap {
                    outln!("gap:          [{a}, {b})");
                }
                let pts: Vec<String> = cert.points.iter().map(|x| x.to_string()).collect();
                outln!("points:       {}", pts.join(", "));
                outln!("verified:     {ok}");
            }
            if !ok {
                return Err(Failure::Check("certificate failed verification".into()));
            }
        }
        Command::VerifyPaper { json } => {
            let rows = published_table();
            if json {
                print_json(&rows);
            } else {
                for r in &rows {
                    outln!(
                        "{:<10} {:<44} computed {:<5} expected {:<5} {}",
                        r.graph, r.quantity, r.computed, r.expected, r.status
                    );
                }
            }
            if rows.iter().any(|r| r.status == RowStatus::Mismatch) {
                return Err(Failure::Check("table mismatch".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) | Failure::Domain(m) | Failure::Bound(m) | Failure::Check(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
