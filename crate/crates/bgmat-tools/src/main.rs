//! `bgmat`: command-line front end for the biased-graph matroid library.
//!
//! Subcommands read matroids and biased graphs from plain-text files (see
//! `format`), run one library operation, and print deterministic output.
//! Exit codes: 0 success, 1 negative verdict, 2 inconclusive, 3 input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use bgmat_core::bias::represents;
use bgmat_core::bounds::bound_formulas;
use bgmat_core::canonical::{
    canonicalize_frame, canonicalize_lift, canonicalize_quasi, reconstruct_frame_canonical,
    CanonicalError, CanonicalReport,
};
use bgmat_core::fixing::fixing_graph;
use bgmat_core::multigraph::iter_mask;
use bgmat_core::search::{excluded_minor_scan, glue_three, is_member, SearchConfig, SearchError, Verdict};
use bgmat_core::{BiasedRepresentation, ClassTag, ElemSet, Matroid, Multigraph};

use bgmat_tools::format::{
    parse_biased_graph, parse_matroid, serialize_biased_graph, serialize_matroid, NamedGraph,
    NamedMatroid,
};
use bgmat_tools::suites::{run_suite, SUITES};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "bgmat", version, about = "Frame, lift and quasi-graphic matroid toolkit")]
struct Cli {
    /// Output style: human-readable text or machine-readable lines.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Lines,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Frame,
    Lift,
    Quasi,
}

impl ClassArg {
    fn tag(self) -> ClassTag {
        match self {
            ClassArg::Frame => ClassTag::Frame,
            ClassArg::Lift => ClassTag::Lift,
            ClassArg::Quasi => ClassTag::Quasi,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the circuits of the frame or lift matroid of a biased graph.
    Circuits {
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Biased-graph file.
        bg: PathBuf,
    },
    /// Rank of an edge subset (default: all edges) under a class rank formula.
    Rank {
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Biased-graph file.
        bg: PathBuf,
        /// Comma-separated edge labels.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Check the circuit axioms of a matroid file.
    CheckAxioms {
        /// Matroid file.
        matroid: PathBuf,
    },
    /// Search for a biased-graph representation of a matroid.
    Represent {
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Cap on representation vertices (default: the class's own bound).
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Matroid file.
        matroid: PathBuf,
    },
    /// Long lines of a matroid and the fixing graph of a representation.
    FixingGraph {
        /// Biased-graph file.
        bg: PathBuf,
        /// Matroid file.
        matroid: PathBuf,
    },
    /// Roll a representation into its canonical form.
    Canonicalize {
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Biased-graph file.
        bg: PathBuf,
        /// Matroid file.
        matroid: PathBuf,
    },
    /// Rebuild the canonical representation of each fixing-set span from the
    /// matroid alone.
    Reconstruct {
        /// Matroid file.
        matroid: PathBuf,
    },
    /// Glue three single-deletion representations back together.
    Glue {
        /// Representation missing the first line element.
        bg_e: PathBuf,
        /// Representation missing the second line element.
        bg_f: PathBuf,
        /// Representation missing the third line element.
        bg_g: PathBuf,
        /// The three collinear elements, comma-separated: e,f,g.
        #[arg(long)]
        line: String,
        /// Matroid file.
        matroid: PathBuf,
    },
    /// Enumerate excluded minors of bounded rank and size for a class.
    ExcludedScan {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        max_elements: usize,
    },
    /// Print the closed-form bound table for a rank.
    Bounds {
        #[arg(long)]
        rank: usize,
    },
    /// Run a named verification suite, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe, like any other filter.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            // Help goes to stdout, errors to stderr; clap's print does both.
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let emit = cli.emit;
    let code = match cli.command {
        Command::Circuits { class, bg } => cmd_circuits(emit, class, &bg),
        Command::Rank { class, bg, subset } => cmd_rank(emit, class, &bg, subset.as_deref()),
        Command::CheckAxioms { matroid } => cmd_check_axioms(emit, &matroid),
        Command::Represent { class, max_vertices, matroid } => {
            cmd_represent(emit, class, max_vertices, &matroid)
        }
        Command::FixingGraph { bg, matroid } => cmd_fixing_graph(emit, &bg, &matroid),
        Command::Canonicalize { class, bg, matroid } => {
            cmd_canonicalize(emit, class, &bg, &matroid)
        }
        Command::Reconstruct { matroid } => cmd_reconstruct(emit, &matroid),
        Command::Glue { bg_e, bg_f, bg_g, line, matroid } => {
            cmd_glue(emit, &bg_e, &bg_f, &bg_g, &line, &matroid)
        }
        Command::ExcludedScan { class, rank, max_elements } => {
            cmd_excluded_scan(emit, class, rank, max_elements)
        }
        Command::Bounds { rank } => cmd_bounds(emit, rank),
        Command::Verify { suite } => cmd_verify(emit, &suite),
    };
    match code {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

// Input errors become Err(message) and exit 3; verdicts come back as codes.
type CmdResult = Result<u8, String>;

fn read_to_string(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_matroid(path: &Path) -> Result<NamedMatroid, String> {
    parse_matroid(&read_to_string(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<NamedGraph, String> {
    parse_biased_graph(&read_to_string(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// Representation from a parsed file: an absent `balanced` section means the
/// empty bias.
fn rep_of(ng: &NamedGraph, path: &Path) -> Result<BiasedRepresentation, String> {
    match &ng.balanced {
        None => Ok(BiasedRepresentation::fully_unbalanced(ng.graph.clone())),
        Some(masks) => BiasedRepresentation::new(ng.graph.clone(), masks.clone())
            .map_err(|e| format!("{}: {e}", path.display())),
    }
}

fn circuit_class(class: ClassArg) -> Result<ClassTag, String> {
    match class {
        ClassArg::Quasi => {
            Err("quasi-graphic matroids have no single circuit family; use frame or lift".into())
        }
        other => Ok(other.tag()),
    }
}

fn edge_labels(g: &Multigraph, mask: u32) -> String {
    let labels: Vec<&str> = iter_mask(mask).map(|e| g.edge(e).label.as_str()).collect();
    labels.join(",")
}

fn element_labels(m: &Matroid, set: ElemSet) -> String {
    let labels: Vec<&str> = iter_mask(set).map(|e| m.label(e)).collect();
    labels.join(",")
}

fn cmd_circuits(emit: Emit, class: ClassArg, bg: &Path) -> CmdResult {
    let tag = circuit_class(class)?;
    let ng = load_graph(bg)?;
    let rep = rep_of(&ng, bg)?;
    let mut circuits = match tag {
        ClassTag::Frame => rep.frame_circuits(),
        _ => rep.lift_circuits(),
    };
    circuits.sort_unstable();
    match emit {
        Emit::Text => {
            println!("{} {} circuits: {}", ng.name, tag, circuits.len());
            for &c in &circuits {
                println!("{{ {} }}", edge_labels(rep.graph(), c).replace(',', " "));
            }
        }
        Emit::Lines => {
            for &c in &circuits {
                println!("circuit {} {} {}", ng.name, tag, edge_labels(rep.graph(), c));
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_rank(emit: Emit, class: ClassArg, bg: &Path, subset: Option<&str>) -> CmdResult {
    let tag = circuit_class(class)?;
    let ng = load_graph(bg)?;
    let rep = rep_of(&ng, bg)?;
    let mask = match subset {
        None => ng.graph.full_edge_mask(),
        Some(list) => {
            let mut mask = 0u32;
            for label in list.split(',').filter(|s| !s.is_empty()) {
                let e = ng
                    .graph
                    .edge_by_label(label)
                    .ok_or_else(|| format!("unknown edge label {label}"))?;
                mask |= 1 << e;
            }
            mask
        }
    };
    let rank = rep.rank(tag, mask).ok_or_else(|| format!("no rank formula for {tag}"))?;
    match emit {
        Emit::Text => println!("rank of {{ {} }} in {} as {}: {}",
            edge_labels(rep.graph(), mask).replace(',', " "), ng.name, tag, rank),
        Emit::Lines => println!("rank {} {} {rank}", ng.name, tag),
    }
    Ok(EXIT_OK)
}

fn cmd_check_axioms(emit: Emit, path: &Path) -> CmdResult {
    let nm = load_matroid(path)?;
    match nm.matroid.validate() {
        Ok(()) => {
            match emit {
                Emit::Text => println!(
                    "{}: {} elements, {} circuits, axioms hold",
                    nm.name,
                    nm.matroid.size(),
                    nm.matroid.circuits().len()
                ),
                Emit::Lines => println!("axioms {} valid", nm.name),
            }
            Ok(EXIT_OK)
        }
        Err(err) => {
            match emit {
                Emit::Text => println!("{}: axioms fail: {err}", nm.name),
                Emit::Lines => println!("axioms {} invalid", nm.name),
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Member => EXIT_OK,
        Verdict::NonMember => EXIT_NEGATIVE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn cmd_represent(emit: Emit, class: ClassArg, max_vertices: Option<usize>, path: &Path) -> CmdResult {
    let nm = load_matroid(path)?;
    let tag = class.tag();
    let cfg = SearchConfig { max_vertices, ..SearchConfig::default() };
    match is_member(&nm.matroid, tag, &cfg) {
        Ok(cert) => {
            println!("verdict {} {} {}", nm.name, tag, cert.verdict);
            if emit == Emit::Text {
                println!(
                    "# vertex bound {}, explored {}, pruned {}",
                    cert.vertex_bound, cert.explored, cert.pruned
                );
            }
            if let Some(witness) = &cert.witness {
                let out = NamedGraph {
                    name: format!("{}-{}-rep", nm.name, tag),
                    graph: witness.graph().clone(),
                    balanced: Some(witness.balanced_cycles().to_vec()),
                };
                print!("{}", serialize_biased_graph(&out));
            }
            Ok(verdict_code(cert.verdict))
        }
        Err(SearchError::MatroidLoops(labels)) => {
            // Loops of the matroid rule frame and lift out directly: every
            // edge of a biased graph has rank one.
            println!("verdict {} {} non-member", nm.name, tag);
            if emit == Emit::Text {
                println!("# rank-zero elements: {labels}");
            }
            Ok(EXIT_NEGATIVE)
        }
        Err(SearchError::BudgetExhausted { explored }) => {
            println!("verdict {} {} inconclusive", nm.name, tag);
            if emit == Emit::Text {
                println!("# search budget exhausted after {explored} nodes");
            }
            Ok(EXIT_INCONCLUSIVE)
        }
        Err(err) => Err(format!("{err}")),
    }
}

fn cmd_fixing_graph(emit: Emit, bg: &Path, matroid: &Path) -> CmdResult {
    let ng = load_graph(bg)?;
    let nm = load_matroid(matroid)?;
    let rep = rep_of(&ng, bg)?;
    match represents(&nm.matroid, &rep, ClassTag::Frame) {
        Ok(true) => {}
        Ok(false) => {
            println!("verdict {} frame non-member", nm.name);
            if emit == Emit::Text {
                println!("# {} does not represent {} as frame", ng.name, nm.name);
            }
            return Ok(EXIT_NEGATIVE);
        }
        Err(err) => return Err(format!("{err}")),
    }
    let fg = fixing_graph(&rep, &nm.matroid).map_err(|e| format!("{e}"))?;
    match emit {
        Emit::Text => {
            println!(
                "fixing graph of {} under {}: {} lines, {} components",
                ng.name,
                nm.name,
                fg.set.lines.len(),
                fg.set.components.len()
            );
            for (i, line) in fg.set.lines.iter().enumerate() {
                let (u, v) = fg.endpoints[i];
                println!(
                    "line {{ {} }} on {} {}",
                    element_labels(&nm.matroid, line.elements).replace(',', " "),
                    rep.graph().vertex_name(u),
                    rep.graph().vertex_name(v)
                );
            }
        }
        Emit::Lines => {
            for (i, line) in fg.set.lines.iter().enumerate() {
                let (u, v) = fg.endpoints[i];
                println!(
                    "fixing-line {} {} {} {}",
                    ng.name,
                    element_labels(&nm.matroid, line.elements),
                    rep.graph().vertex_name(u),
                    rep.graph().vertex_name(v)
                );
            }
        }
    }
    Ok(EXIT_OK)
}

/// Structural preconditions are input errors; a failed representation claim
/// or failed verification is a negative verdict.
fn canonical_code(err: &CanonicalError) -> u8 {
    match err {
        CanonicalError::NotRepresenting(_)
        | CanonicalError::ConflictingRules(_)
        | CanonicalError::NoCaseMatched(_)
        | CanonicalError::NotFrame(_)
        | CanonicalError::Ambiguous(_)
        | CanonicalError::Verification(_) => EXIT_NEGATIVE,
        _ => EXIT_INPUT,
    }
}

fn print_canonical(emit: Emit, name: &str, report: &CanonicalReport, m: &Matroid) {
    if emit == Emit::Text {
        for mv in &report.moves {
            println!("# {mv}");
        }
        for rec in &report.cg_rules {
            println!(
                "# rule {} for {} on line {{ {} }}",
                rec.rule,
                rec.element,
                element_labels(m, rec.line).replace(',', " ")
            );
        }
        println!("# {} loops in canonical form", report.loop_count);
    }
    let out = NamedGraph {
        name: format!("{name}-canonical"),
        graph: report.rep.graph().clone(),
        balanced: Some(report.rep.balanced_cycles().to_vec()),
    };
    print!("{}", serialize_biased_graph(&out));
}

fn cmd_canonicalize(emit: Emit, class: ClassArg, bg: &Path, matroid: &Path) -> CmdResult {
    let ng = load_graph(bg)?;
    let nm = load_matroid(matroid)?;
    let rep = rep_of(&ng, bg)?;
    let result = match class.tag() {
        ClassTag::Frame => canonicalize_frame(&rep, &nm.matroid),
        ClassTag::Lift => canonicalize_lift(&rep, &nm.matroid),
        ClassTag::Quasi => canonicalize_quasi(&rep, &nm.matroid),
    };
    match result {
        Ok(report) => {
            print_canonical(emit, &ng.name, &report, &nm.matroid);
            Ok(EXIT_OK)
        }
        Err(err) => {
            let code = canonical_code(&err);
            if code == EXIT_NEGATIVE {
                println!("canonicalize {} {}: {err}", ng.name, class.tag());
                Ok(code)
            } else {
                Err(format!("{err}"))
            }
        }
    }
}

fn cmd_reconstruct(emit: Emit, matroid: &Path) -> CmdResult {
    let nm = load_matroid(matroid)?;
    match reconstruct_frame_canonical(&nm.matroid) {
        Ok(spans) => {
            for (i, span) in spans.iter().enumerate() {
                if emit == Emit::Text {
                    println!(
                        "# span {i}: lines {{ {} }} close to {{ {} }}",
                        element_labels(&nm.matroid, span.component).replace(',', " "),
                        element_labels(&nm.matroid, span.span).replace(',', " ")
                    );
                }
                let out = NamedGraph {
                    name: format!("{}-span{i}", nm.name),
                    graph: span.rep.graph().clone(),
                    balanced: Some(span.rep.balanced_cycles().to_vec()),
                };
                print!("{}", serialize_biased_graph(&out));
            }
            Ok(EXIT_OK)
        }
        Err(err) => {
            let code = canonical_code(&err);
            if code == EXIT_NEGATIVE {
                println!("reconstruct {}: {err}", nm.name);
                Ok(code)
            } else {
                Err(format!("{err}"))
            }
        }
    }
}

fn cmd_glue(emit: Emit, bg_e: &Path, bg_f: &Path, bg_g: &Path, line: &str, matroid: &Path) -> CmdResult {
    let labels: Vec<&str> = line.split(',').filter(|s| !s.is_empty()).collect();
    let [e, f, g] = labels.as_slice() else {
        return Err(format!("--line wants exactly three labels, got {}", labels.len()));
    };
    let nm = load_matroid(matroid)?;
    let n_e = load_graph(bg_e)?;
    let n_f = load_graph(bg_f)?;
    let n_g = load_graph(bg_g)?;
    let r_e = rep_of(&n_e, bg_e)?;
    let r_f = rep_of(&n_f, bg_f)?;
    let r_g = rep_of(&n_g, bg_g)?;
    match glue_three(&nm.matroid, &r_e, &r_f, &r_g, e, f, g) {
        Ok(glued) => {
            if emit == Emit::Text {
                println!("# glued {} {} {} along {e},{f},{g}", n_e.name, n_f.name, n_g.name);
            }
            let out = NamedGraph {
                name: format!("{}-glued", nm.name),
                graph: glued.graph().clone(),
                balanced: Some(glued.balanced_cycles().to_vec()),
            };
            print!("{}", serialize_biased_graph(&out));
            Ok(EXIT_OK)
        }
        Err(err @ (SearchError::Precondition(_) | SearchError::Verification(_))) => {
            println!("glue {}: {err}", nm.name);
            Ok(EXIT_NEGATIVE)
        }
        Err(err) => Err(format!("{err}")),
    }
}

fn cmd_excluded_scan(emit: Emit, class: ClassArg, rank: usize, max_elements: usize) -> CmdResult {
    let tag = class.tag();
    let cfg = SearchConfig::default();
    match excluded_minor_scan(rank, max_elements, tag, &cfg) {
        Ok(found) => {
            match emit {
                Emit::Text => println!(
                    "excluded minors of rank {rank} on <= {max_elements} elements for {tag}: {}",
                    found.len()
                ),
                Emit::Lines => println!("scan {tag} {rank} {max_elements} {}", found.len()),
            }
            for (i, m) in found.iter().enumerate() {
                let out = NamedMatroid { name: format!("xm-{tag}-r{rank}-{i}"), matroid: m.clone() };
                print!("{}", serialize_matroid(&out));
            }
            Ok(EXIT_OK)
        }
        Err(err @ (SearchError::BudgetExhausted { .. } | SearchError::Inconclusive(_))) => {
            match emit {
                Emit::Text => println!("scan inconclusive: {err}"),
                Emit::Lines => println!("scan {tag} {rank} {max_elements} inconclusive"),
            }
            Ok(EXIT_INCONCLUSIVE)
        }
        Err(err) => Err(format!("{err}")),
    }
}

fn cmd_bounds(emit: Emit, rank: usize) -> CmdResult {
    if rank == 0 {
        return Err("rank must be at least 1".into());
    }
    if rank > 12 {
        return Err("rank capped at 12; the table is astronomically large beyond that".into());
    }
    let report = bound_formulas(rank);
    let width = report.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    for entry in &report.entries {
        match emit {
            Emit::Text => println!("{:width$}  {}", entry.name, entry.value),
            Emit::Lines => println!("bound {rank} {} {}", entry.name, entry.value),
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(emit: Emit, suite: &str) -> CmdResult {
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|(n, _)| *n).collect()
    } else if SUITES.iter().any(|(n, _)| *n == suite) {
        vec![suite]
    } else {
        let mut known = String::new();
        for (n, _) in SUITES {
            let _ = write!(known, " {n}");
        }
        return Err(format!("unknown suite {suite}; available:{known} all"));
    };
    let mut all_passed = true;
    for name in names {
        let report = run_suite(name).expect("registered");
        let passed = report.passed();
        all_passed &= passed;
        match emit {
            Emit::Text => {
                println!("suite {name}: {} ({})", if passed { "pass" } else { "FAIL" }, report.title);
                for c in &report.checks {
                    if c.passed {
                        println!("  ok   {}", c.name);
                    } else {
                        println!("  FAIL {} :: {}", c.name, c.detail);
                    }
                }
            }
            Emit::Lines => {
                println!("suite {name} {}", if passed { "pass" } else { "fail" });
            }
        }
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_NEGATIVE })
}
