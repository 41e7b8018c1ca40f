//! Long-line infrastructure: fixing sets, fixing graphs, pendant lines,
//! pendant roll-ups and fixing trees.
//!
//! The fixing set X(M) is the union of all long lines. Two long lines are
//! adjacent when their union has rank 3; chains of adjacent lines partition
//! X(M) into components. Given a representation, each long line's link
//! elements share one endpoint pair, and drawing one edge per line on those
//! pairs yields the fixing graph.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bias::{derive_bias, edge_element_map, represents, BiasError, BiasedRepresentation, ClassTag};
use crate::matroid::{ElemSet, Line, Matroid};
use crate::multigraph::{iter_mask, Dsu, EdgeMask, Ends, Multigraph, VertexId, VertexMask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixingSet {
    /// Long lines, in deterministic (element-mask) order.
    pub lines: Vec<Line>,
    /// X(M): union of all long lines.
    pub elements: ElemSet,
    /// Groups of indices into `lines`, connected under line adjacency.
    pub components: Vec<Vec<usize>>,
    /// Per element, the indices of long lines containing it.
    pub element_lines: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixingGraph {
    pub set: FixingSet,
    /// Simple graph on the representation's vertex set; edge i belongs to
    /// `set.lines[i]` and is labeled by that line's lowest element.
    pub graph: Multigraph,
    /// Endpoint pair (u_l, v_l) per line, parallel to `set.lines`.
    pub endpoints: Vec<(VertexId, VertexId)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixingTree {
    /// Chosen line indices W, one spanning tree per fixing-graph component.
    pub tree_lines: Vec<usize>,
    /// Z(W): all elements of the chosen lines.
    pub z_elements: ElemSet,
    /// Edges of the representation carrying Z(W).
    pub subgraph: EdgeMask,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixingError {
    Disconnected,
    LabelMismatch(String),
    /// A long line with no link elements in the representation.
    NoLinkElements(ElemSet),
    /// Link elements of one line not all on the same endpoint pair.
    MixedEndpoints(ElemSet),
    /// Two long lines on the same endpoint pair; the fixing graph would not
    /// be simple.
    ParallelFixingEdges,
    NotPendant(ElemSet),
    NotInLine(String),
    NotALink(String),
    NotALoop(String),
    /// Roll-down with no remaining link to read the endpoint pair from.
    CannotInferEndpoints(ElemSet),
    /// Roll-up while the line already has a loop at the pendant vertex; only
    /// one element of a pendant line may be rolled up at a time.
    PendantLoopPresent(ElemSet),
    InvalidTreeChoice(String),
    VerificationFailed(String),
}

impl fmt::Display for FixingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixingError::Disconnected => write!(f, "matroid is disconnected"),
            FixingError::LabelMismatch(l) => write!(f, "label mismatch on {l}"),
            FixingError::NoLinkElements(l) => write!(f, "line {l:#b} has no link elements"),
            FixingError::MixedEndpoints(l) => {
                write!(f, "line {l:#b} has links on different endpoint pairs")
            }
            FixingError::ParallelFixingEdges => {
                write!(f, "two long lines share an endpoint pair")
            }
            FixingError::NotPendant(l) => write!(f, "line {l:#b} is not pendant"),
            FixingError::NotInLine(e) => write!(f, "element {e} is not in the line"),
            FixingError::NotALink(e) => write!(f, "element {e} is not a link"),
            FixingError::NotALoop(e) => write!(f, "element {e} is not a loop"),
            FixingError::CannotInferEndpoints(l) => {
                write!(f, "line {l:#b} has no link left to infer endpoints from")
            }
            FixingError::PendantLoopPresent(l) => {
                write!(f, "line {l:#b} already has a loop at its pendant vertex")
            }
            FixingError::InvalidTreeChoice(s) => write!(f, "invalid tree choice: {s}"),
            FixingError::VerificationFailed(s) => write!(f, "verification failed: {s}"),
        }
    }
}

fn bias_err(e: BiasError) -> FixingError {
    FixingError::LabelMismatch(alloc::format!("{e}"))
}

/// The union of long lines, partitioned into adjacency components.
pub fn fixing_set(m: &Matroid) -> FixingSet {
    let lines = m.long_lines();
    let mut elements: ElemSet = 0;
    for l in &lines {
        elements |= l.elements;
    }
    let mut dsu = Dsu::new(lines.len());
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if m.rank(lines[i].elements | lines[j].elements) == 3 {
                dsu.union(i, j);
            }
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = alloc::vec![None; lines.len()];
    for i in 0..lines.len() {
        let r = dsu.find(i);
        match root_slot[r] {
            Some(s) => components[s].push(i),
            None => {
                root_slot[r] = Some(components.len());
                components.push(alloc::vec![i]);
            }
        }
    }
    let element_lines = (0..m.size())
        .map(|e| {
            lines
                .iter()
                .enumerate()
                .filter(|(_, l)| l.elements & (1 << e) != 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    FixingSet { lines, elements, components, element_lines }
}

/// One simple edge per long line, on the endpoint pair shared by that line's
/// links in `rep`.
pub fn fixing_graph(rep: &BiasedRepresentation, m: &Matroid) -> Result<FixingGraph, FixingError> {
    let set = fixing_set(m);
    let map = edge_element_map(rep.graph(), m).map_err(bias_err)?;
    let mut inverse = alloc::vec![0usize; m.size()];
    for (edge, &elem) in map.iter().enumerate() {
        inverse[elem] = edge;
    }
    let g = rep.graph();
    let mut endpoints = Vec::with_capacity(set.lines.len());
    for line in &set.lines {
        let mut pair: Option<(VertexId, VertexId)> = None;
        for e in iter_mask(line.elements) {
            match g.edge(inverse[e]).ends {
                Ends::Loop(_) => continue,
                Ends::Link(u, v) => match pair {
                    None => pair = Some((u, v)),
                    Some(p) if p == (u, v) => {}
                    Some(_) => return Err(FixingError::MixedEndpoints(line.elements)),
                },
            }
        }
        match pair {
            Some(p) => endpoints.push(p),
            None => return Err(FixingError::NoLinkElements(line.elements)),
        }
    }
    let mut fg = Multigraph::new();
    for name in g.vertex_names() {
        fg.add_vertex(name).expect("vertex names copied from a valid graph");
    }
    for (i, line) in set.lines.iter().enumerate() {
        let (u, v) = endpoints[i];
        if fg
            .edges()
            .iter()
            .any(|e| e.ends == Ends::Link(u.min(v), u.max(v)))
        {
            return Err(FixingError::ParallelFixingEdges);
        }
        let lowest = line.elements.trailing_zeros() as usize;
        fg.add_link(m.label(lowest), u, v)
            .map_err(|_| FixingError::ParallelFixingEdges)?;
    }
    Ok(FixingGraph { set, graph: fg, endpoints })
}

/// All lines with at least three elements, flagged pendant when (l, E-l) is
/// a 2-separation (both sides of size >= 2, ranks summing to r + 1).
pub fn pendant_lines(m: &Matroid) -> Result<Vec<(Line, bool)>, FixingError> {
    if !m.structural_profile().connected {
        return Err(FixingError::Disconnected);
    }
    let full = m.full_rank();
    let ground = m.ground();
    Ok(m.lines()
        .into_iter()
        .filter(|l| l.elements.count_ones() >= 3)
        .map(|l| {
            let rest = ground & !l.elements;
            let pendant = rest.count_ones() >= 2 && 2 + m.rank(rest) == full + 1;
            (l, pendant)
        })
        .collect())
}

/// The endpoint of the line's links that the rest of the graph never
/// touches.
pub fn pendant_vertex(
    rep: &BiasedRepresentation,
    m: &Matroid,
    line_elements: ElemSet,
) -> Result<VertexId, FixingError> {
    let map = edge_element_map(rep.graph(), m).map_err(bias_err)?;
    let mut inverse = alloc::vec![0usize; m.size()];
    for (edge, &elem) in map.iter().enumerate() {
        inverse[elem] = edge;
    }
    let g = rep.graph();
    let mut pair: Option<(VertexId, VertexId)> = None;
    for e in iter_mask(line_elements) {
        if let Ends::Link(u, v) = g.edge(inverse[e]).ends {
            match pair {
                None => pair = Some((u, v)),
                Some(p) if p == (u, v) => {}
                Some(_) => return Err(FixingError::MixedEndpoints(line_elements)),
            }
        }
    }
    let (u, v) = pair.ok_or(FixingError::CannotInferEndpoints(line_elements))?;
    let line_edges: EdgeMask = iter_mask(line_elements).fold(0, |acc, e| acc | (1 << inverse[e]));
    let rest_vertices: VertexMask =
        crate::bias::touched_vertices(g, g.full_edge_mask() & !line_edges);
    match (rest_vertices & (1 << u) == 0, rest_vertices & (1 << v) == 0) {
        (true, false) => Ok(u),
        (false, true) => Ok(v),
        _ => Err(FixingError::NotPendant(line_elements)),
    }
}

fn check_pendant(m: &Matroid, line_elements: ElemSet) -> Result<(), FixingError> {
    let rest = m.ground() & !line_elements;
    let ok = line_elements.count_ones() >= 3
        && rest.count_ones() >= 2
        && m.rank(line_elements) == 2
        && 2 + m.rank(rest) == m.full_rank() + 1;
    if ok {
        Ok(())
    } else {
        Err(FixingError::NotPendant(line_elements))
    }
}

/// Replaces the pendant-line link `e` with a loop at the pendant vertex and
/// re-derives the bias. The output is verified to represent `m` as a frame.
pub fn pendant_roll_up(
    rep: &BiasedRepresentation,
    m: &Matroid,
    line_elements: ElemSet,
    e_label: &str,
) -> Result<BiasedRepresentation, FixingError> {
    check_pendant(m, line_elements)?;
    let elem = m
        .element_by_label(e_label)
        .ok_or_else(|| FixingError::NotInLine(e_label.into()))?;
    if line_elements & (1 << elem) == 0 {
        return Err(FixingError::NotInLine(e_label.into()));
    }
    let v_p = pendant_vertex(rep, m, line_elements)?;
    let g = rep.graph();
    // Only one element of the line may sit rolled up at any time.
    let map = edge_element_map(g, m).map_err(bias_err)?;
    for (ei, ge) in g.edges().iter().enumerate() {
        if line_elements & (1 << map[ei]) != 0 && ge.ends == Ends::Loop(v_p) {
            return Err(FixingError::PendantLoopPresent(line_elements));
        }
    }
    let edge = g
        .edge_by_label(e_label)
        .ok_or_else(|| FixingError::NotInLine(e_label.into()))?;
    if g.edge(edge).ends.is_loop() {
        return Err(FixingError::NotALink(e_label.into()));
    }
    let mut out = g.clone();
    out.set_ends(edge, Ends::Loop(v_p));
    finish_roll(out, m)
}

/// Inverse of `pendant_roll_up`: turns the loop `e` back into a link on the
/// line's endpoint pair, read off the remaining links.
pub fn pendant_roll_down(
    rep: &BiasedRepresentation,
    m: &Matroid,
    line_elements: ElemSet,
    e_label: &str,
) -> Result<BiasedRepresentation, FixingError> {
    check_pendant(m, line_elements)?;
    let elem = m
        .element_by_label(e_label)
        .ok_or_else(|| FixingError::NotInLine(e_label.into()))?;
    if line_elements & (1 << elem) == 0 {
        return Err(FixingError::NotInLine(e_label.into()));
    }
    let g = rep.graph();
    let edge = g
        .edge_by_label(e_label)
        .ok_or_else(|| FixingError::NotInLine(e_label.into()))?;
    let v_p = pendant_vertex(rep, m, line_elements)?;
    if g.edge(edge).ends != Ends::Loop(v_p) {
        return Err(FixingError::NotALoop(e_label.into()));
    }
    let map = edge_element_map(g, m).map_err(bias_err)?;
    let mut pair: Option<(VertexId, VertexId)> = None;
    for (ei, ge) in g.edges().iter().enumerate() {
        if line_elements & (1 << map[ei]) == 0 {
            continue;
        }
        if let Ends::Link(u, v) = ge.ends {
            match pair {
                None => pair = Some((u, v)),
                Some(p) if p == (u, v) => {}
                Some(_) => return Err(FixingError::MixedEndpoints(line_elements)),
            }
        }
    }
    let (u, v) = pair.ok_or(FixingError::CannotInferEndpoints(line_elements))?;
    let mut out = g.clone();
    out.set_ends(edge, Ends::Link(u, v));
    finish_roll(out, m)
}

fn finish_roll(g: Multigraph, m: &Matroid) -> Result<BiasedRepresentation, FixingError> {
    let rep = derive_bias(&g, m)
        .map_err(|e| FixingError::VerificationFailed(alloc::format!("{e}")))?;
    match represents(m, &rep, ClassTag::Frame) {
        Ok(true) => Ok(rep),
        Ok(false) => Err(FixingError::VerificationFailed(
            "rolled graph no longer represents the matroid".into(),
        )),
        Err(e) => Err(FixingError::VerificationFailed(alloc::format!("{e}"))),
    }
}

/// Picks a spanning tree of each fixing-graph component (default: the greedy
/// lowest-label forest) and collects Z(W), the elements of the chosen lines.
pub fn fixing_tree(
    rep: &BiasedRepresentation,
    m: &Matroid,
    tree_choice: Option<&[usize]>,
) -> Result<FixingTree, FixingError> {
    let fg = fixing_graph(rep, m)?;
    let chosen: Vec<usize> = match tree_choice {
        None => iter_mask(fg.graph.spanning_forest()).collect(),
        Some(lines) => {
            let mut v = lines.to_vec();
            v.sort_unstable();
            v.dedup();
            if v.len() != lines.len() {
                return Err(FixingError::InvalidTreeChoice("duplicate line".into()));
            }
            if v.iter().any(|&i| i >= fg.set.lines.len()) {
                return Err(FixingError::InvalidTreeChoice("line index out of range".into()));
            }
            // Must be a forest with the same reach as the full fixing graph.
            let mask: EdgeMask = v.iter().fold(0, |acc, &i| acc | (1 << i));
            let n = fg.graph.vertex_count();
            let mut full = Dsu::new(n);
            let mut sub = Dsu::new(n);
            let mut cycle = false;
            for (i, e) in fg.graph.edges().iter().enumerate() {
                if let Ends::Link(a, b) = e.ends {
                    full.union(a, b);
                    if mask & (1 << i) != 0 {
                        if sub.find(a) == sub.find(b) {
                            cycle = true;
                        }
                        sub.union(a, b);
                    }
                }
            }
            if cycle {
                return Err(FixingError::InvalidTreeChoice("contains a cycle".into()));
            }
            for a in 0..n {
                for b in 0..n {
                    if full.find(a) == full.find(b) && sub.find(a) != sub.find(b) {
                        return Err(FixingError::InvalidTreeChoice(
                            "does not span a fixing-graph component".into(),
                        ));
                    }
                }
            }
            v
        }
    };
    let mut z: ElemSet = 0;
    for &i in &chosen {
        z |= fg.set.lines[i].elements;
    }
    let map = edge_element_map(rep.graph(), m).map_err(bias_err)?;
    let mut subgraph: EdgeMask = 0;
    for (ei, &elem) in map.iter().enumerate() {
        if z & (1 << elem) != 0 {
            subgraph |= 1 << ei;
        }
    }
    Ok(FixingTree { tree_lines: chosen, z_elements: z, subgraph })
}

/// Elements lying on two or more long lines, with the line indices.
pub fn multi_line_elements(set: &FixingSet) -> Vec<(usize, Vec<usize>)> {
    set.element_lines
        .iter()
        .enumerate()
        .filter(|(_, ls)| ls.len() >= 2)
        .map(|(e, ls)| (e, ls.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::uniform;

    #[test]
    fn fixing_set_of_one_line() {
        let m = uniform(2, 6);
        let fs = fixing_set(&m);
        assert_eq!(fs.lines.len(), 1);
        assert_eq!(fs.elements, m.ground());
        assert_eq!(fs.components.len(), 1);

        let none = fixing_set(&uniform(3, 4));
        assert!(none.lines.is_empty());
        assert_eq!(none.elements, 0);
    }

    #[test]
    fn adjacency_components() {
        let star = fixtures::two_bundle_star(6, 6);
        let m = star.matroid(ClassTag::Frame).unwrap().unwrap();
        let fs = fixing_set(&m);
        assert_eq!(fs.lines.len(), 2);
        assert_eq!(fs.components.len(), 1, "lines sharing a vertex are adjacent");
        assert_eq!(fs.elements.count_ones(), 12);

        let bridged = fixtures::bridged_bundles(6, 6);
        let mb = bridged.matroid(ClassTag::Frame).unwrap().unwrap();
        let fsb = fixing_set(&mb);
        assert_eq!(fsb.lines.len(), 2);
        assert_eq!(fsb.components.len(), 2, "far-apart lines are not adjacent");
    }

    #[test]
    fn shared_loop_lies_on_both_lines() {
        let rep = fixtures::shared_loop_star(6, 6);
        let m = rep.matroid(ClassTag::Frame).unwrap().unwrap();
        let fs = fixing_set(&m);
        assert_eq!(fs.lines.len(), 2);
        let h = m.element_by_label("h").unwrap();
        assert_eq!(fs.element_lines[h].len(), 2);
        assert_eq!(multi_line_elements(&fs).len(), 1);
    }

    #[test]
    fn fixing_graph_shapes() {
        let star = fixtures::two_bundle_star(6, 6);
        let m = star.matroid(ClassTag::Frame).unwrap().unwrap();
        let fg = fixing_graph(&star, &m).unwrap();
        assert_eq!(fg.graph.edge_count(), 2);
        // Path v - u - w: shared vertex u has degree 2.
        let u = fg.graph.vertex_names().iter().position(|n| n == "u").unwrap();
        assert_eq!(fg.graph.degree(u), 2);

        // Lift fixture: the loop belongs to the line but contributes no
        // endpoint; the fixing graph is the single edge u-v.
        let lift = fixtures::lift_line_with_far_loop();
        let lm = lift.matroid(ClassTag::Lift).unwrap().unwrap();
        let lfg = fixing_graph(&lift, &lm).unwrap();
        assert_eq!(lfg.graph.edge_count(), 1);
        assert_eq!(lfg.set.lines[0].elements.count_ones(), 6);
    }

    #[test]
    fn pendant_detection() {
        let rep = fixtures::pendant_line_graph();
        let m = rep.matroid(ClassTag::Frame).unwrap().unwrap();
        let pls = pendant_lines(&m).unwrap();
        let long: Vec<_> = pls.iter().filter(|(l, _)| l.long).collect();
        assert_eq!(long.len(), 1);
        assert!(long[0].1, "the six-element line is pendant");
        let v = pendant_vertex(&rep, &m, long[0].0.elements).unwrap();
        assert_eq!(rep.graph().vertex_name(v), "v");

        // A whole-matroid line has no complement to separate from.
        let u24 = uniform(2, 4);
        let pls = pendant_lines(&u24).unwrap();
        assert!(pls.iter().all(|(_, p)| !p));
    }

    #[test]
    fn roll_up_and_down_are_inverse() {
        let rep = fixtures::pendant_line_graph();
        let m = rep.matroid(ClassTag::Frame).unwrap().unwrap();
        let line = fixing_set(&m).lines[0].clone();
        let up = pendant_roll_up(&rep, &m, line.elements, "l1").unwrap();
        assert!(up.graph().edge_by_label("l1").is_some());
        let e = up.graph().edge_by_label("l1").unwrap();
        assert!(up.graph().edge(e).ends.is_loop());
        let down = pendant_roll_down(&up, &m, line.elements, "l1").unwrap();
        assert_eq!(down.graph(), rep.graph());
        assert_eq!(down.balanced_cycles(), rep.balanced_cycles());
    }

    #[test]
    fn roll_up_states_are_distinct_and_exclusive() {
        let base = fixtures::pendant_line_graph();
        let m = base.matroid(ClassTag::Frame).unwrap().unwrap();
        let line = fixing_set(&m).lines[0].clone();
        // One rolled loop per state; with the base graph that is 7 distinct
        // representations of the same matroid.
        let mut states = alloc::vec![base.graph().labeled_canonical()];
        for i in 1..=6 {
            let up = pendant_roll_up(&base, &m, line.elements, &alloc::format!("l{i}")).unwrap();
            assert!(represents(&m, &up, ClassTag::Frame).unwrap());
            states.push(up.graph().labeled_canonical());
            // A second roll-up on the same line is blocked while the loop sits
            // at the pendant vertex.
            let next = pendant_roll_up(&up, &m, line.elements, "l3");
            assert!(matches!(
                next,
                Err(FixingError::PendantLoopPresent(_)) | Err(FixingError::NotALink(_))
            ));
        }
        states.sort();
        states.dedup();
        assert_eq!(states.len(), 7);
    }

    #[test]
    fn fixing_tree_of_star_and_triangle() {
        let star = fixtures::two_bundle_star(6, 6);
        let m = star.matroid(ClassTag::Frame).unwrap().unwrap();
        let ft = fixing_tree(&star, &m, None).unwrap();
        assert_eq!(ft.tree_lines.len(), 2);
        assert_eq!(ft.z_elements, m.ground());

        let tri = fixtures::triangle_of_lines();
        let tm = tri.matroid(ClassTag::Frame).unwrap().unwrap();
        let ft = fixing_tree(&tri, &tm, None).unwrap();
        assert_eq!(ft.tree_lines.len(), 2, "triangle fixing graph drops one line");
        assert_eq!(ft.z_elements.count_ones(), 12);
        assert_eq!(ft.subgraph.count_ones(), 12);

        // A cyclic choice is rejected.
        assert!(matches!(
            fixing_tree(&tri, &tm, Some(&[0, 1, 2])),
            Err(FixingError::InvalidTreeChoice(_))
        ));
    }
}
