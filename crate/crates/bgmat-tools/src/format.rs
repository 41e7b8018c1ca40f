//! Plain-text file formats for matroids and biased graphs.
//!
//! A matroid file:
//!
//! ```text
//! matroid u24
//! elements a b c d
//! circuits
//! { a b c }
//! { a b d }
//! end
//! ```
//!
//! A biased-graph file:
//!
//! ```text
//! biasedgraph bundle
//! vertices u v
//! link e1 u v
//! loop e2 u
//! balanced
//! { e1 e3 }
//! end
//! ```
//!
//! Labels and names are ASCII tokens without whitespace or braces. The
//! `balanced` section is optional; when absent the bias is taken as empty
//! (every cycle unbalanced). Lines starting with `#` are comments.
//! Serialization is deterministic, and `parse(serialize(x)) = x`.

use std::fmt;

use bgmat_core::matroid::{Matroid, MatroidError};
use bgmat_core::multigraph::{EdgeMask, GraphError, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMatroid {
    pub name: String,
    pub matroid: Matroid,
}

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Multigraph,
    /// Cycle masks declared balanced, sorted; `None` when the section is
    /// absent. Declared cycles are checked to be cycles of the graph, but
    /// theta closure is the representation constructor's business.
    pub balanced: Option<Vec<EdgeMask>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    Syntax { line: usize, message: String },
    Validation(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            FormatError::Validation(message) => write!(f, "validation: {message}"),
        }
    }
}

impl std::error::Error for FormatError {}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn check_token(line: usize, kind: &str, token: &str) -> Result<(), FormatError> {
    let ok = !token.is_empty()
        && token
            .chars()
            .all(|c| c.is_ascii() && !c.is_ascii_whitespace() && c != '{' && c != '}');
    if ok {
        Ok(())
    } else {
        Err(syntax(line, format!("bad {kind} token {token:?}")))
    }
}

/// Meaningful lines with their 1-based numbers; blanks and comments skipped.
fn meaningful(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

/// A `{ a b c }` line; braces may touch the first and last tokens.
fn brace_list(line: usize, text: &str) -> Result<Vec<&str>, FormatError> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| syntax(line, "expected a { ... } list"))?;
    Ok(inner.split_whitespace().collect())
}

pub fn parse_matroid(text: &str) -> Result<NamedMatroid, FormatError> {
    let lines = meaningful(text);
    let mut it = lines.into_iter();

    let (ln, header) = it.next().ok_or_else(|| syntax(1, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "matroid" {
        return Err(syntax(ln, "expected `matroid <name>`"));
    }
    check_token(ln, "name", toks[1])?;
    let name = toks[1].to_string();

    let (ln, elems) = it.next().ok_or_else(|| syntax(ln, "missing `elements` line"))?;
    let toks: Vec<&str> = elems.split_whitespace().collect();
    if toks.first() != Some(&"elements") {
        return Err(syntax(ln, "expected `elements <label> ...`"));
    }
    let mut labels: Vec<&str> = Vec::new();
    for t in &toks[1..] {
        check_token(ln, "label", t)?;
        if labels.contains(t) {
            return Err(syntax(ln, format!("duplicate label {t}")));
        }
        labels.push(t);
    }

    let (ln, kw) = it.next().ok_or_else(|| syntax(ln, "missing `circuits` line"))?;
    if kw != "circuits" {
        return Err(syntax(ln, "expected `circuits`"));
    }

    let mut circuits: Vec<Vec<&str>> = Vec::new();
    let mut end_seen = false;
    let mut last = ln;
    for (ln, line) in it.by_ref() {
        last = ln;
        if line == "end" {
            end_seen = true;
            break;
        }
        circuits.push(brace_list(ln, line)?);
    }
    if !end_seen {
        return Err(syntax(last, "missing `end`"));
    }
    if let Some((ln, line)) = it.next() {
        return Err(syntax(ln, format!("unexpected content after `end`: {line:?}")));
    }

    let circuit_refs: Vec<&[&str]> = circuits.iter().map(|c| c.as_slice()).collect();
    for c in &circuits {
        for t in c {
            if !labels.contains(t) {
                return Err(FormatError::Validation(format!("circuit references unknown label {t}")));
            }
        }
    }
    let matroid = Matroid::from_labels(&labels, &circuit_refs)
        .map_err(|e: MatroidError| FormatError::Validation(e.to_string()))?;
    Ok(NamedMatroid { name, matroid })
}

pub fn serialize_matroid(nm: &NamedMatroid) -> String {
    let m = &nm.matroid;
    let mut out = format!("matroid {}\n", nm.name);
    out.push_str("elements");
    for l in m.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push_str("\ncircuits\n");
    for &c in m.circuits() {
        out.push('{');
        for l in m.label_set(c) {
            out.push(' ');
            out.push_str(&l);
        }
        out.push_str(" }\n");
    }
    out.push_str("end\n");
    out
}

pub fn parse_biased_graph(text: &str) -> Result<NamedGraph, FormatError> {
    let lines = meaningful(text);
    let mut it = lines.into_iter().peekable();

    let (ln, header) = it.next().ok_or_else(|| syntax(1, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "biasedgraph" {
        return Err(syntax(ln, "expected `biasedgraph <name>`"));
    }
    check_token(ln, "name", toks[1])?;
    let name = toks[1].to_string();

    let (ln, verts) = it.next().ok_or_else(|| syntax(ln, "missing `vertices` line"))?;
    let toks: Vec<&str> = verts.split_whitespace().collect();
    if toks.first() != Some(&"vertices") {
        return Err(syntax(ln, "expected `vertices <v> ...`"));
    }
    let mut graph = Multigraph::new();
    for t in &toks[1..] {
        check_token(ln, "vertex", t)?;
        graph
            .add_vertex(t)
            .map_err(|e: GraphError| syntax(ln, e.to_string()))?;
    }
    let vertex = |ln: usize, g: &Multigraph, t: &str| -> Result<usize, FormatError> {
        g.vertex_names()
            .iter()
            .position(|n| n == t)
            .ok_or_else(|| syntax(ln, format!("unknown vertex {t}")))
    };

    let mut balanced: Option<Vec<EdgeMask>> = None;
    let mut end_seen = false;
    let mut last = ln;
    while let Some((ln, line)) = it.next() {
        last = ln;
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "link" if toks.len() == 4 => {
                check_token(ln, "label", toks[1])?;
                let u = vertex(ln, &graph, toks[2])?;
                let v = vertex(ln, &graph, toks[3])?;
                graph
                    .add_link(toks[1], u, v)
                    .map_err(|e| syntax(ln, e.to_string()))?;
            }
            "loop" if toks.len() == 3 => {
                check_token(ln, "label", toks[1])?;
                let v = vertex(ln, &graph, toks[2])?;
                graph
                    .add_loop(toks[1], v)
                    .map_err(|e| syntax(ln, e.to_string()))?;
            }
            "balanced" if toks.len() == 1 => {
                let mut masks = Vec::new();
                for (ln, line) in it.by_ref() {
                    last = ln;
                    if line == "end" {
                        end_seen = true;
                        break;
                    }
                    let mut mask: EdgeMask = 0;
                    for t in brace_list(ln, line)? {
                        let e = graph
                            .edge_by_label(t)
                            .ok_or_else(|| syntax(ln, format!("unknown edge label {t}")))?;
                        mask |= 1 << e;
                    }
                    masks.push(mask);
                }
                if !end_seen {
                    return Err(syntax(last, "missing `end`"));
                }
                masks.sort_unstable();
                masks.dedup();
                balanced = Some(masks);
                break;
            }
            "end" if toks.len() == 1 => {
                end_seen = true;
                break;
            }
            _ => return Err(syntax(ln, format!("unrecognized line {line:?}"))),
        }
    }
    if !end_seen {
        return Err(syntax(last, "missing `end`"));
    }
    if let Some((ln, line)) = it.next() {
        return Err(syntax(ln, format!("unexpected content after `end`: {line:?}")));
    }
    if let Some(masks) = &balanced {
        let cycles = graph.cycles();
        for &mask in masks {
            if !cycles.contains(&mask) {
                return Err(FormatError::Validation(format!(
                    "declared balanced set {{ {} }} is not a cycle of the graph",
                    mask_labels(&graph, mask).join(" ")
                )));
            }
        }
    }
    Ok(NamedGraph { name, graph, balanced })
}

fn mask_labels(g: &Multigraph, mask: EdgeMask) -> Vec<String> {
    (0..g.edge_count())
        .filter(|e| mask & (1 << e) != 0)
        .map(|e| g.edge(e).label.clone())
        .collect()
}

pub fn serialize_biased_graph(ng: &NamedGraph) -> String {
    let g = &ng.graph;
    let mut out = format!("biasedgraph {}\n", ng.name);
    out.push_str("vertices");
    for v in g.vertex_names() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    for e in g.edges() {
        match e.ends {
            bgmat_core::multigraph::Ends::Link(u, v) => {
                out.push_str(&format!("link {} {} {}\n", e.label, g.vertex_name(u), g.vertex_name(v)));
            }
            bgmat_core::multigraph::Ends::Loop(v) => {
                out.push_str(&format!("loop {} {}\n", e.label, g.vertex_name(v)));
            }
        }
    }
    if let Some(masks) = &ng.balanced {
        out.push_str("balanced\n");
        let mut sorted = masks.clone();
        sorted.sort_unstable();
        for &mask in &sorted {
            out.push('{');
            for l in mask_labels(g, mask) {
                out.push(' ');
                out.push_str(&l);
            }
            out.push_str(" }\n");
        }
    }
    out.push_str("end\n");
    out
}
