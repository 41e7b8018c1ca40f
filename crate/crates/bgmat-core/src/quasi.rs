//! Framework conditions for quasi-graphic matroids.
//!
//! A graph G is a framework for a matroid M when:
//!
//! 1. the edges of G are the elements of M,
//! 2. every component H of G has matroid rank r(E(H)) <= |V(H)|,
//! 3. for every vertex v, cl(E(G-v)) ⊆ E(G-v) ∪ loops(v), and
//! 4. every circuit of M induces at most two components in G.
//!
//! Rank and closure in (2) and (3) are matroid rank and closure, not graph
//! rank. Failures come back as verdicts with witnesses, not errors.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bias::{edge_element_map, translate_mask};
use crate::matroid::{ElemSet, Matroid};
use crate::multigraph::{EdgeMask, Multigraph, VertexId, VertexMask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentWitness {
    pub vertices: VertexMask,
    pub elements: ElemSet,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureWitness {
    pub vertex: VertexId,
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitWitness {
    pub circuit: ElemSet,
    pub components: usize,
}

/// Verdicts for framework conditions (1)-(4), with witnesses for failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameworkDiagnostics {
    pub valid: bool,
    /// Condition (1): edge labels and element labels must match bijectively.
    pub label_mismatch: Option<String>,
    /// Condition (2): components whose edge set outranks their vertex count.
    pub oversized_components: Vec<ComponentWitness>,
    /// Condition (3): elements in cl(E(G-v)) that are neither edges avoiding
    /// v nor loops at v.
    pub closure_escapes: Vec<ClosureWitness>,
    /// Condition (4): circuits inducing three or more components.
    pub split_circuits: Vec<CircuitWitness>,
}

impl FrameworkDiagnostics {
    fn fail_labels(reason: String) -> Self {
        FrameworkDiagnostics {
            valid: false,
            label_mismatch: Some(reason),
            oversized_components: Vec::new(),
            closure_escapes: Vec::new(),
            split_circuits: Vec::new(),
        }
    }
}

impl fmt::Display for FrameworkDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "framework: all four conditions hold");
        }
        writeln!(f, "framework check failed:")?;
        if let Some(l) = &self.label_mismatch {
            writeln!(f, "  (1) labels: {l}")?;
        }
        for w in &self.oversized_components {
            writeln!(
                f,
                "  (2) component rank {} exceeds {} vertices",
                w.rank,
                w.vertices.count_ones()
            )?;
        }
        for w in &self.closure_escapes {
            writeln!(
                f,
                "  (3) {} lies in cl(E(G-{})) but is neither loop there nor avoiding it",
                w.element, w.vertex
            )?;
        }
        for w in &self.split_circuits {
            writeln!(f, "  (4) circuit {:#b} induces {} components", w.circuit, w.components)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasiError {
    UnknownVertex(VertexId),
    LabelMismatch(String),
    /// A circuit edge set matched two distinct forms; should be impossible.
    AmbiguousForm(EdgeMask),
}

impl fmt::Display for QuasiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiError::UnknownVertex(v) => write!(f, "unknown vertex index {v}"),
            QuasiError::LabelMismatch(l) => write!(f, "label mismatch on {l}"),
            QuasiError::AmbiguousForm(m) => {
                write!(f, "edge set {m:#b} matches more than one circuit form")
            }
        }
    }
}

/// Checks the four framework conditions of `g` against `m`.
pub fn is_framework(g: &Multigraph, m: &Matroid) -> FrameworkDiagnostics {
    let map = match edge_element_map(g, m) {
        Ok(map) => map,
        Err(e) => return FrameworkDiagnostics::fail_labels(alloc::format!("{e}")),
    };
    let mut diag = FrameworkDiagnostics {
        valid: true,
        label_mismatch: None,
        oversized_components: Vec::new(),
        closure_escapes: Vec::new(),
        split_circuits: Vec::new(),
    };

    // (2) per-component rank bound.
    let comps = g.components();
    for ci in 0..comps.count {
        let mut vmask: VertexMask = 0;
        for v in 0..g.vertex_count() {
            if comps.vertex_component[v] == ci {
                vmask |= 1 << v;
            }
        }
        let mut emask: EdgeMask = 0;
        for (ei, e) in g.edges().iter().enumerate() {
            let u = match e.ends {
                crate::multigraph::Ends::Link(u, _) => u,
                crate::multigraph::Ends::Loop(u) => u,
            };
            if comps.vertex_component[u] == ci {
                emask |= 1 << ei;
            }
        }
        let elements = translate_mask(emask, &map);
        let rank = m.rank(elements);
        if rank > vmask.count_ones() as usize {
            diag.oversized_components.push(ComponentWitness { vertices: vmask, elements, rank });
        }
    }

    // (3) vertex-deleted closures stay put.
    for v in 0..g.vertex_count() {
        let avoiding = translate_mask(g.edges_avoiding(v), &map);
        let loops = translate_mask(g.loops_at(v), &map);
        let escape = m.closure(avoiding) & !(avoiding | loops);
        for e in crate::multigraph::iter_mask(escape) {
            diag.closure_escapes.push(ClosureWitness {
                vertex: v,
                element: m.label(e).into(),
            });
        }
    }

    // (4) circuits induce at most two components.
    let mut inverse = alloc::vec![0usize; m.size()];
    for (edge, &elem) in map.iter().enumerate() {
        inverse[elem] = edge;
    }
    for &c in m.circuits() {
        let emask = translate_mask(c, &inverse);
        let components = g.component_count_of(emask);
        if components > 2 {
            diag.split_circuits.push(CircuitWitness { circuit: c, components });
        }
    }

    diag.valid = diag.oversized_components.is_empty()
        && diag.closure_escapes.is_empty()
        && diag.split_circuits.is_empty();
    diag
}

/// cl(E(G-v)) as an element mask: the matroid closure of all edges avoiding
/// vertex `v`.
pub fn vertex_deleted_closure(
    g: &Multigraph,
    m: &Matroid,
    v: VertexId,
) -> Result<ElemSet, QuasiError> {
    if v >= g.vertex_count() {
        return Err(QuasiError::UnknownVertex(v));
    }
    let map = edge_element_map(g, m).map_err(|e| QuasiError::LabelMismatch(alloc::format!("{e}")))?;
    Ok(m.closure(translate_mask(g.edges_avoiding(v), &map)))
}

/// The subgraph form a circuit of a quasi-graphic matroid may take. Balance
/// is read off `m`: a cycle is balanced iff its element set is a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitForm {
    BalancedCycle,
    UnbalancedTheta,
    TightHandcuffs,
    LooseHandcuffs,
    DisjointCyclePair,
    None,
}

impl fmt::Display for CircuitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CircuitForm::BalancedCycle => "balanced-cycle",
            CircuitForm::UnbalancedTheta => "unbalanced-theta",
            CircuitForm::TightHandcuffs => "tight-handcuffs",
            CircuitForm::LooseHandcuffs => "loose-handcuffs",
            CircuitForm::DisjointCyclePair => "disjoint-cycle-pair",
            CircuitForm::None => "none",
        };
        write!(f, "{s}")
    }
}

/// Classifies the subgraph induced by edge set `c` into one of the circuit
/// forms, with balance decided by circuit membership in `m`. Independent
/// sets and unrecognized shapes come back as `None`. A set matching two
/// forms is an invariant violation and is reported as an error.
pub fn classify_circuit_subgraph(
    g: &Multigraph,
    m: &Matroid,
    c: EdgeMask,
) -> Result<CircuitForm, QuasiError> {
    let map = edge_element_map(g, m).map_err(|e| QuasiError::LabelMismatch(alloc::format!("{e}")))?;
    if c == 0 {
        return Ok(CircuitForm::None);
    }
    let cycles = g.cycles();
    let inside: Vec<EdgeMask> = cycles.iter().copied().filter(|&x| x & !c == 0).collect();
    let balanced = |x: EdgeMask| m.is_circuit(translate_mask(x, &map));

    let mut forms: Vec<CircuitForm> = Vec::new();

    if inside.contains(&c) && balanced(c) {
        forms.push(CircuitForm::BalancedCycle);
    }

    if crate::bias::is_theta(g, c)
        && inside.len() == 3
        && inside.iter().all(|&x| !balanced(x))
    {
        forms.push(CircuitForm::UnbalancedTheta);
    }

    let mut tight = false;
    let mut loose = false;
    let mut pair = false;
    for (i, &c1) in inside.iter().enumerate() {
        for &c2 in &inside[i + 1..] {
            if c1 & c2 != 0 || balanced(c1) || balanced(c2) {
                continue;
            }
            let v1 = crate::bias::touched_vertices(g, c1);
            let v2 = crate::bias::touched_vertices(g, c2);
            let shared = (v1 & v2).count_ones();
            let rest = c & !(c1 | c2);
            if shared == 1 && rest == 0 {
                tight = true;
            } else if shared == 0 && rest == 0 {
                pair = true;
            } else if shared == 0 && rest != 0 {
                let paths = crate::bias::connecting_paths(g, c1 | c2, v1, v2, 0);
                if paths.contains(&rest) {
                    loose = true;
                }
            }
        }
    }
    if tight {
        forms.push(CircuitForm::TightHandcuffs);
    }
    if loose {
        forms.push(CircuitForm::LooseHandcuffs);
    }
    if pair {
        forms.push(CircuitForm::DisjointCyclePair);
    }

    match forms.len() {
        0 => Ok(CircuitForm::None),
        1 => Ok(forms[0]),
        _ => Err(QuasiError::AmbiguousForm(c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::{BiasedRepresentation, ClassTag};
    use crate::matroid::uniform;

    fn bundle(k: usize) -> Multigraph {
        let mut g = Multigraph::new();
        let u = g.add_vertex("u").unwrap();
        let v = g.add_vertex("v").unwrap();
        for i in 0..k {
            g.add_link(&alloc::format!("e{i}"), u, v).unwrap();
        }
        g
    }

    #[test]
    fn frame_graph_is_a_framework_for_its_matroid() {
        let rep = BiasedRepresentation::fully_unbalanced(bundle(4));
        let m = rep.matroid(ClassTag::Frame).unwrap().unwrap();
        let d = is_framework(rep.graph(), &m);
        assert!(d.valid, "{d}");
    }

    #[test]
    fn rank_overflow_fails_condition_two() {
        let g = bundle(4);
        let m = uniform(3, 4);
        let d = is_framework(&g, &m);
        assert!(!d.valid);
        assert_eq!(d.oversized_components.len(), 1);
        assert_eq!(d.oversized_components[0].rank, 3);
    }

    #[test]
    fn split_circuit_fails_condition_four() {
        // Loops e, f at separate vertices plus a link g elsewhere; force the
        // circuit {e, f, g} across three components.
        let mut g = Multigraph::new();
        let a = g.add_vertex("a").unwrap();
        let b = g.add_vertex("b").unwrap();
        let c = g.add_vertex("c").unwrap();
        let d = g.add_vertex("d").unwrap();
        g.add_loop("e", a).unwrap();
        g.add_loop("f", b).unwrap();
        g.add_link("g", c, d).unwrap();
        let m = Matroid::from_labels(&["e", "f", "g"], &[&["e", "f", "g"]]).unwrap();
        let diag = is_framework(&g, &m);
        assert!(!diag.valid);
        assert_eq!(diag.split_circuits.len(), 1);
        assert_eq!(diag.split_circuits[0].components, 3);
    }

    #[test]
    fn closure_escape_fails_condition_three() {
        // Two parallel elements placed as links at disjoint vertex pairs:
        // deleting an endpoint of one leaves the other, whose closure pulls
        // the first back in.
        let mut g = Multigraph::new();
        let a = g.add_vertex("a").unwrap();
        let b = g.add_vertex("b").unwrap();
        let c = g.add_vertex("c").unwrap();
        let d = g.add_vertex("d").unwrap();
        g.add_link("e", a, b).unwrap();
        g.add_link("f", c, d).unwrap();
        let m = Matroid::from_labels(&["e", "f"], &[&["e", "f"]]).unwrap();
        let diag = is_framework(&g, &m);
        assert!(!diag.valid);
        assert!(!diag.closure_escapes.is_empty());
    }

    #[test]
    fn vertex_deleted_closure_on_bundle() {
        let g = bundle(4);
        let m = uniform(2, 4);
        // Deleting u removes every edge: cl(∅) = ∅.
        assert_eq!(vertex_deleted_closure(&g, &m, 0).unwrap(), 0);
        assert!(vertex_deleted_closure(&g, &m, 9).is_err());
    }

    #[test]
    fn classify_forms() {
        // Graphic triangle: balanced cycle.
        let mut t = Multigraph::new();
        let u = t.add_vertex("u").unwrap();
        let v = t.add_vertex("v").unwrap();
        let w = t.add_vertex("w").unwrap();
        t.add_link("a", u, v).unwrap();
        t.add_link("b", v, w).unwrap();
        t.add_link("c", w, u).unwrap();
        let m = Matroid::from_labels(&["a", "b", "c"], &[&["a", "b", "c"]]).unwrap();
        assert_eq!(
            classify_circuit_subgraph(&t, &m, 0b111).unwrap(),
            CircuitForm::BalancedCycle
        );
        assert_eq!(
            classify_circuit_subgraph(&t, &m, 0b011).unwrap(),
            CircuitForm::None
        );

        // Loops at u and v plus a link: {e,f,g} is a loose handcuff for the
        // frame matroid, and {e,f} a disjoint pair for the lift matroid.
        let mut g = Multigraph::new();
        let u = g.add_vertex("u").unwrap();
        let v = g.add_vertex("v").unwrap();
        g.add_loop("e", u).unwrap();
        g.add_loop("f", v).unwrap();
        g.add_link("g", u, v).unwrap();
        let rep = BiasedRepresentation::fully_unbalanced(g.clone());
        let frame = rep.matroid(ClassTag::Frame).unwrap().unwrap();
        assert_eq!(
            classify_circuit_subgraph(&g, &frame, 0b111).unwrap(),
            CircuitForm::LooseHandcuffs
        );
        let lift = rep.matroid(ClassTag::Lift).unwrap().unwrap();
        assert_eq!(
            classify_circuit_subgraph(&g, &lift, 0b011).unwrap(),
            CircuitForm::DisjointCyclePair
        );

        // Theta and tight handcuffs.
        let b3 = bundle(3);
        let m3 = uniform(2, 3);
        assert_eq!(
            classify_circuit_subgraph(&b3, &m3, 0b111).unwrap(),
            CircuitForm::UnbalancedTheta
        );
        let mut fig8 = Multigraph::new();
        let x = fig8.add_vertex("x").unwrap();
        fig8.add_loop("p", x).unwrap();
        fig8.add_loop("q", x).unwrap();
        let m8 = Matroid::from_labels(&["p", "q"], &[&["p", "q"]]).unwrap();
        assert_eq!(
            classify_circuit_subgraph(&fig8, &m8, 0b11).unwrap(),
            CircuitForm::TightHandcuffs
        );
    }
}
