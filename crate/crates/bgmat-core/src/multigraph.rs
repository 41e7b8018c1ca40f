//! Small multigraphs with parallel edges and loops.
//!
//! Vertices and edges are dense indices. Every edge carries a textual label;
//! labels are the identities shared with matroid elements, so an edge set of a
//! graph and an element set of a matroid can be matched up by label. Edge sets
//! are `u32` bitmasks over edge indices (at most [`MAX_EDGES`] edges), vertex
//! sets are `u16` bitmasks (at most [`MAX_VERTICES`] vertices).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Hard cap on edges per graph (bitmask width budget).
pub const MAX_EDGES: usize = 30;
/// Hard cap on vertices per graph.
pub const MAX_VERTICES: usize = 16;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Edge set of one particular graph, as a bitmask over edge indices.
pub type EdgeMask = u32;
/// Vertex set of one particular graph, as a bitmask over vertex indices.
pub type VertexMask = u16;

/// Endpoints of an edge. Links store their endpoints with `u <= v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Ends {
    Link(VertexId, VertexId),
    Loop(VertexId),
}

impl Ends {
    pub fn is_loop(&self) -> bool {
        matches!(self, Ends::Loop(_))
    }

    /// Vertices touched by the edge, as a mask.
    pub fn vertex_mask(&self) -> VertexMask {
        match *self {
            Ends::Link(u, v) => (1 << u) | (1 << v),
            Ends::Loop(v) => 1 << v,
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.vertex_mask() & (1 << v) != 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub ends: Ends,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    TooManyVertices,
    TooManyEdges,
    UnknownVertex(VertexId),
    DuplicateVertexName(String),
    DuplicateEdgeLabel(String),
    /// line_graph input must be simple and loop-free.
    NotSimple(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::TooManyVertices => write!(f, "more than {MAX_VERTICES} vertices"),
            GraphError::TooManyEdges => write!(f, "more than {MAX_EDGES} edges"),
            GraphError::UnknownVertex(v) => write!(f, "unknown vertex index {v}"),
            GraphError::DuplicateVertexName(n) => write!(f, "duplicate vertex name {n}"),
            GraphError::DuplicateEdgeLabel(l) => write!(f, "duplicate edge label {l}"),
            GraphError::NotSimple(why) => write!(f, "graph is not simple: {why}"),
        }
    }
}

/// Partition of vertices (and hence edges) into connected components.
/// Isolated vertices form their own components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Component index per vertex.
    pub vertex_component: Vec<usize>,
    pub count: usize,
}

impl Multigraph {
    pub fn new() -> Self {
        Multigraph { vertex_names: Vec::new(), edges: Vec::new() }
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        if self.vertex_names.len() >= MAX_VERTICES {
            return Err(GraphError::TooManyVertices);
        }
        if self.vertex_names.iter().any(|n| n == name) {
            return Err(GraphError::DuplicateVertexName(name.to_string()));
        }
        self.vertex_names.push(name.to_string());
        Ok(self.vertex_names.len() - 1)
    }

    /// Adds a vertex with a generated name (`v0`, `v1`, ... skipping clashes).
    pub fn add_anon_vertex(&mut self) -> Result<VertexId, GraphError> {
        let mut k = self.vertex_names.len();
        loop {
            let name = alloc::format!("v{k}");
            if !self.vertex_names.iter().any(|n| *n == name) {
                return self.add_vertex(&name);
            }
            k += 1;
        }
    }

    pub fn add_link(&mut self, label: &str, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        if u == v {
            return self.add_loop(label, u);
        }
        self.check_new_edge(label, u.max(v))?;
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.push(Edge { label: label.to_string(), ends: Ends::Link(a, b) });
        Ok(self.edges.len() - 1)
    }

    pub fn add_loop(&mut self, label: &str, v: VertexId) -> Result<EdgeId, GraphError> {
        self.check_new_edge(label, v)?;
        self.edges.push(Edge { label: label.to_string(), ends: Ends::Loop(v) });
        Ok(self.edges.len() - 1)
    }

    fn check_new_edge(&self, label: &str, max_end: VertexId) -> Result<(), GraphError> {
        if self.edges.len() >= MAX_EDGES {
            return Err(GraphError::TooManyEdges);
        }
        if max_end >= self.vertex_names.len() {
            return Err(GraphError::UnknownVertex(max_end));
        }
        if self.edges.iter().any(|e| e.label == label) {
            return Err(GraphError::DuplicateEdgeLabel(label.to_string()));
        }
        Ok(())
    }

    /// Removes the edge with the given index; later edge indices shift down.
    pub fn remove_edge(&mut self, e: EdgeId) {
        self.edges.remove(e);
    }

    /// Re-places an existing edge, keeping its label and index.
    pub fn set_ends(&mut self, e: EdgeId, ends: Ends) {
        let ends = match ends {
            Ends::Link(u, v) if u == v => Ends::Loop(u),
            Ends::Link(u, v) if u > v => Ends::Link(v, u),
            other => other,
        };
        self.edges[e].ends = ends;
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_by_label(&self, label: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.label == label)
    }

    pub fn full_edge_mask(&self) -> EdgeMask {
        if self.edges.is_empty() {
            0
        } else {
            (1u32 << self.edges.len()) - 1
        }
    }

    /// All edges incident to `v`.
    pub fn edges_at(&self, v: VertexId) -> EdgeMask {
        let mut m = 0;
        for (i, e) in self.edges.iter().enumerate() {
            if e.ends.touches(v) {
                m |= 1 << i;
            }
        }
        m
    }

    /// All edges avoiding `v`, i.e. the edge set of the vertex deletion G − v.
    pub fn edges_avoiding(&self, v: VertexId) -> EdgeMask {
        self.full_edge_mask() & !self.edges_at(v)
    }

    /// Loops incident to `v`.
    pub fn loops_at(&self, v: VertexId) -> EdgeMask {
        let mut m = 0;
        for (i, e) in self.edges.iter().enumerate() {
            if e.ends == Ends::Loop(v) {
                m |= 1 << i;
            }
        }
        m
    }

    /// Vertices touched by an edge set.
    pub fn vertices_of(&self, x: EdgeMask) -> VertexMask {
        let mut m = 0;
        for e in iter_mask(x) {
            m |= self.edges[e].ends.vertex_mask();
        }
        m
    }

    /// Connected components of the whole graph, isolated vertices included.
    pub fn components(&self) -> Components {
        let n = self.vertex_names.len();
        let mut dsu = Dsu::new(n);
        for e in &self.edges {
            if let Ends::Link(u, v) = e.ends {
                dsu.union(u, v);
            }
        }
        let mut index = BTreeMap::new();
        let mut vertex_component = vec![0usize; n];
        for v in 0..n {
            let root = dsu.find(v);
            let next = index.len();
            let c = *index.entry(root).or_insert(next);
            vertex_component[v] = c;
        }
        Components { vertex_component, count: index.len() }
    }

    /// Number of connected components of the subgraph induced by the edge set
    /// `x`, counting only vertices touched by `x`.
    pub fn component_count_of(&self, x: EdgeMask) -> usize {
        self.component_assignment_of(x).1
    }

    /// Component id per touched vertex (untouched vertices get `usize::MAX`),
    /// plus the component count.
    pub fn component_assignment_of(&self, x: EdgeMask) -> (Vec<usize>, usize) {
        let n = self.vertex_names.len();
        let mut dsu = Dsu::new(n);
        let touched = self.vertices_of(x);
        for e in iter_mask(x) {
            if let Ends::Link(u, v) = self.edges[e].ends {
                dsu.union(u, v);
            }
        }
        let mut index = BTreeMap::new();
        let mut assign = vec![usize::MAX; n];
        for v in 0..n {
            if touched & (1 << v) != 0 {
                let root = dsu.find(v);
                let next = index.len();
                assign[v] = *index.entry(root).or_insert(next);
            }
        }
        (assign, index.len())
    }

    /// All cycles of the graph as edge sets: every loop is a singleton cycle,
    /// and every closed walk through distinct vertices using distinct parallel
    /// edges contributes one cycle per choice of edges.
    pub fn cycles(&self) -> Vec<EdgeMask> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.ends.is_loop() {
                out.push(1u32 << i);
            }
        }
        // Parallel classes: links grouped by endpoint pair.
        let mut parallel: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let Ends::Link(u, v) = e.ends {
                parallel.entry((u, v)).or_default().push(i);
            }
        }
        // Digons: two parallel links.
        for ids in parallel.values() {
            for a in 0..ids.len() {
                for b in a + 1..ids.len() {
                    out.push((1u32 << ids[a]) | (1u32 << ids[b]));
                }
            }
        }
        // Longer cycles: vertex cycles of length >= 3, one edge set per choice
        // of parallel link along each step. Start vertex is the minimum of the
        // cycle; direction fixed by second vertex < last vertex.
        let n = self.vertex_names.len();
        let mut neighbors: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for (&(u, v), _) in &parallel {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
            nb.dedup();
        }
        let mut path: Vec<VertexId> = Vec::new();
        for s in 0..n {
            path.clear();
            path.push(s);
            self.cycle_dfs(s, s, &neighbors, &parallel, &mut path, &mut out);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn cycle_dfs(
        &self,
        s: VertexId,
        at: VertexId,
        neighbors: &[Vec<VertexId>],
        parallel: &BTreeMap<(VertexId, VertexId), Vec<EdgeId>>,
        path: &mut Vec<VertexId>,
        out: &mut Vec<EdgeMask>,
    ) {
        for &w in &neighbors[at] {
            if w == s && path.len() >= 3 {
                // Closed; kill the reflected traversal.
                if path[1] < path[path.len() - 1] {
                    expand_parallel_choices(path, parallel, out);
                }
            } else if w > s && !path.contains(&w) {
                path.push(w);
                self.cycle_dfs(s, w, neighbors, parallel, path, out);
                path.pop();
            }
        }
    }

    /// Line graph of a simple loop-free graph: one vertex per edge, one edge
    /// per pair of edges sharing an endpoint. Used on fixing graphs only.
    pub fn line_graph(&self) -> Result<Multigraph, GraphError> {
        let mut seen = BTreeMap::new();
        for e in &self.edges {
            match e.ends {
                Ends::Loop(_) => {
                    return Err(GraphError::NotSimple(alloc::format!("loop {}", e.label)))
                }
                Ends::Link(u, v) => {
                    if seen.insert((u, v), &e.label).is_some() {
                        return Err(GraphError::NotSimple(alloc::format!(
                            "parallel edge {}",
                            e.label
                        )));
                    }
                }
            }
        }
        let mut lg = Multigraph::new();
        for e in &self.edges {
            lg.add_vertex(&e.label)?;
        }
        let mut k = 0;
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                let mi = self.edges[i].ends.vertex_mask();
                let mj = self.edges[j].ends.vertex_mask();
                if mi & mj != 0 {
                    lg.add_link(&alloc::format!("lg{k}"), i, j)?;
                    k += 1;
                }
            }
        }
        Ok(lg)
    }

    /// Greedy spanning forest: links in label order, via union-find.
    pub fn spanning_forest(&self) -> EdgeMask {
        let mut order: Vec<EdgeId> = (0..self.edges.len()).collect();
        order.sort_by(|&a, &b| self.edges[a].label.cmp(&self.edges[b].label));
        let mut dsu = Dsu::new(self.vertex_names.len());
        let mut forest = 0u32;
        for e in order {
            if let Ends::Link(u, v) = self.edges[e].ends {
                if dsu.find(u) != dsu.find(v) {
                    dsu.union(u, v);
                    forest |= 1 << e;
                }
            }
        }
        forest
    }

    /// Degree counting loops twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| match e.ends {
                Ends::Link(u, w) => (u == v) as usize + (w == v) as usize,
                Ends::Loop(u) => 2 * (u == v) as usize,
            })
            .sum()
    }

    /// Canonical byte encoding of the unlabeled multigraph: minimum over
    /// vertex permutations of the loop-count vector plus the upper-triangular
    /// link multiplicity matrix. Two multigraphs are isomorphic (ignoring
    /// labels and vertex names) iff their encodings agree.
    pub fn canonical_label(&self) -> Vec<u8> {
        let n = self.vertex_names.len();
        let mut loops = vec![0u8; n];
        let mut mult = vec![vec![0u8; n]; n];
        for e in &self.edges {
            match e.ends {
                Ends::Loop(v) => loops[v] += 1,
                Ends::Link(u, v) => {
                    mult[u][v] += 1;
                    mult[v][u] += 1;
                }
            }
        }
        let mut best: Option<Vec<u8>> = None;
        for_each_invariant_permutation(self, |perm| {
            // perm[new position] = old vertex
            let mut enc = Vec::with_capacity(1 + n + n * n / 2);
            enc.push(n as u8);
            for &v in perm {
                enc.push(loops[v]);
            }
            for i in 0..n {
                for j in i + 1..n {
                    enc.push(mult[perm[i]][perm[j]]);
                }
            }
            if best.as_ref().map_or(true, |b| enc < *b) {
                best = Some(enc);
            }
        });
        best.unwrap_or_else(|| vec![0])
    }

    /// Canonical byte encoding with edge labels kept fixed: minimum over
    /// vertex permutations of the edge list sorted by label. Two graphs on the
    /// same labels get equal encodings iff some vertex relabeling carries one
    /// onto the other edge-for-edge.
    pub fn labeled_canonical(&self) -> Vec<u8> {
        let mut order: Vec<EdgeId> = (0..self.edges.len()).collect();
        order.sort_by(|&a, &b| self.edges[a].label.cmp(&self.edges[b].label));
        let mut best: Option<Vec<u8>> = None;
        for_each_invariant_permutation(self, |perm| {
            // inverse: old vertex -> new position
            let mut inv = vec![0usize; perm.len()];
            for (pos, &v) in perm.iter().enumerate() {
                inv[v] = pos;
            }
            let mut enc = Vec::with_capacity(3 * order.len() + 1);
            enc.push(perm.len() as u8);
            for &ei in &order {
                match self.edges[ei].ends {
                    Ends::Loop(v) => {
                        enc.push(255);
                        enc.push(inv[v] as u8);
                    }
                    Ends::Link(u, v) => {
                        let (a, b) = (inv[u].min(inv[v]), inv[u].max(inv[v]));
                        enc.push(a as u8);
                        enc.push(b as u8);
                    }
                }
            }
            if best.as_ref().map_or(true, |b| enc < *b) {
                best = Some(enc);
            }
        });
        best.unwrap_or_else(|| vec![0])
    }
}

impl Default for Multigraph {
    fn default() -> Self {
        Self::new()
    }
}

fn expand_parallel_choices(
    path: &[VertexId],
    parallel: &BTreeMap<(VertexId, VertexId), Vec<EdgeId>>,
    out: &mut Vec<EdgeMask>,
) {
    // One step per consecutive vertex pair, wrapping around.
    let steps: Vec<&Vec<EdgeId>> = (0..path.len())
        .map(|i| {
            let u = path[i];
            let v = path[(i + 1) % path.len()];
            let key = (u.min(v), u.max(v));
            &parallel[&key]
        })
        .collect();
    let mut choice = vec![0usize; steps.len()];
    loop {
        let mut mask = 0u32;
        for (i, ids) in steps.iter().enumerate() {
            mask |= 1 << ids[choice[i]];
        }
        out.push(mask);
        // odometer
        let mut i = 0;
        loop {
            if i == steps.len() {
                return;
            }
            choice[i] += 1;
            if choice[i] < steps[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Calls `f` with every vertex permutation consistent with the cheap vertex
/// invariant (loop count, degree, sorted incident multiplicities). Any
/// isomorphism respects the invariant, so minimizing an encoding over these
/// permutations is a sound canonical form.
fn for_each_invariant_permutation<F: FnMut(&[usize])>(g: &Multigraph, mut f: F) {
    let n = g.vertex_count();
    if n == 0 {
        f(&[]);
        return;
    }
    let mut invariant: Vec<(usize, usize, Vec<usize>)> = Vec::with_capacity(n);
    for v in 0..n {
        let loops = iter_mask(g.loops_at(v)).count();
        let mut mults = Vec::new();
        for w in 0..n {
            if w == v {
                continue;
            }
            let m = g
                .edges()
                .iter()
                .filter(|e| e.ends == Ends::Link(v.min(w), v.max(w)))
                .count();
            if m > 0 {
                mults.push(m);
            }
        }
        mults.sort_unstable();
        invariant.push((loops, g.degree(v), mults));
    }
    // Group vertices by invariant; classes ordered by invariant value.
    let mut classes: BTreeMap<&(usize, usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(&invariant[v]).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    permute_classes(&classes, 0, &mut perm, &mut f);
}

fn permute_classes<F: FnMut(&[usize])>(
    classes: &[Vec<usize>],
    i: usize,
    perm: &mut Vec<usize>,
    f: &mut F,
) {
    if i == classes.len() {
        f(perm);
        return;
    }
    let mut members = classes[i].clone();
    heap_permutations(&mut members, &mut |p| {
        let base = perm.len();
        perm.extend_from_slice(p);
        permute_classes(classes, i + 1, perm, f);
        perm.truncate(base);
    });
}

pub(crate) fn heap_permutations<F: FnMut(&[usize])>(items: &mut [usize], f: &mut F) {
    let k = items.len();
    if k <= 1 {
        f(items);
        return;
    }
    let mut c = vec![0usize; k];
    f(items);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Iterates the set bits of a mask, lowest first.
pub fn iter_mask(mask: u32) -> MaskIter {
    MaskIter(mask)
}

pub struct MaskIter(u32);

impl Iterator for MaskIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// Union-find over dense indices.
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bundle(k: usize) -> Multigraph {
        let mut g = Multigraph::new();
        g.add_vertex("u").unwrap();
        g.add_vertex("v").unwrap();
        for i in 0..k {
            g.add_link(&alloc::format!("e{i}"), 0, 1).unwrap();
        }
        g
    }

    /// Brute-force cycle oracle: an edge set is a cycle iff it is connected
    /// and every touched vertex has degree exactly 2 within the set.
    fn cycles_brute(g: &Multigraph) -> Vec<EdgeMask> {
        let full = g.full_edge_mask();
        let mut out = Vec::new();
        for x in 1..=full {
            if x & full != x {
                continue;
            }
            let touched = g.vertices_of(x);
            let mut ok = g.component_count_of(x) == 1;
            for v in 0..g.vertex_count() {
                if touched & (1 << v) == 0 {
                    continue;
                }
                let deg: usize = iter_mask(x)
                    .map(|e| match g.edge(e).ends {
                        Ends::Link(a, b) => (a == v) as usize + (b == v) as usize,
                        Ends::Loop(a) => 2 * (a == v) as usize,
                    })
                    .sum();
                if deg != 2 {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(x);
            }
        }
        out
    }

    #[test]
    fn cycles_of_parallel_bundle() {
        let g = bundle(4);
        let cycles = g.cycles();
        assert_eq!(cycles.len(), 6); // C(4,2) digons
        assert_eq!(cycles, cycles_brute(&g));
    }

    #[test]
    fn cycles_match_brute_force_on_mixed_graphs() {
        // Triangle with a doubled edge and a loop.
        let mut g = Multigraph::new();
        for name in ["a", "b", "c"] {
            g.add_vertex(name).unwrap();
        }
        g.add_link("e0", 0, 1).unwrap();
        g.add_link("e1", 0, 1).unwrap();
        g.add_link("e2", 1, 2).unwrap();
        g.add_link("e3", 0, 2).unwrap();
        g.add_loop("e4", 2).unwrap();
        let mut got = g.cycles();
        got.sort_unstable();
        assert_eq!(got, cycles_brute(&g));
        // loop, digon, two triangles
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn components_count_isolated_vertices() {
        let mut g = Multigraph::new();
        g.add_vertex("u").unwrap();
        g.add_vertex("v").unwrap();
        g.add_vertex("w").unwrap();
        g.add_link("e", 0, 1).unwrap();
        let c = g.components();
        assert_eq!(c.count, 2);
        assert_eq!(c.vertex_component[0], c.vertex_component[1]);
        assert_ne!(c.vertex_component[0], c.vertex_component[2]);
    }

    #[test]
    fn line_graph_of_path_is_path() {
        let mut g = Multigraph::new();
        for name in ["a", "b", "c"] {
            g.add_vertex(name).unwrap();
        }
        g.add_link("p", 0, 1).unwrap();
        g.add_link("q", 1, 2).unwrap();
        let lg = g.line_graph().unwrap();
        assert_eq!(lg.vertex_count(), 2);
        assert_eq!(lg.edge_count(), 1);
    }

    #[test]
    fn line_graph_rejects_loops_and_parallels() {
        let mut g = Multigraph::new();
        g.add_vertex("a").unwrap();
        g.add_loop("l", 0).unwrap();
        assert!(g.line_graph().is_err());
        let g2 = bundle(2);
        assert!(g2.line_graph().is_err());
    }

    #[test]
    fn spanning_forest_prefers_low_labels() {
        let mut g = Multigraph::new();
        g.add_vertex("u").unwrap();
        g.add_vertex("v").unwrap();
        g.add_link("b", 0, 1).unwrap();
        g.add_link("a", 0, 1).unwrap();
        // "a" sorts first even though it was added second.
        assert_eq!(g.spanning_forest(), 0b10);
    }

    #[test]
    fn canonical_label_identifies_isomorphic_graphs() {
        let mut g1 = Multigraph::new();
        g1.add_vertex("x").unwrap();
        g1.add_vertex("y").unwrap();
        g1.add_vertex("z").unwrap();
        g1.add_link("a", 0, 1).unwrap();
        g1.add_link("b", 0, 1).unwrap();
        g1.add_loop("c", 2).unwrap();

        let mut g2 = Multigraph::new();
        g2.add_vertex("p").unwrap();
        g2.add_vertex("q").unwrap();
        g2.add_vertex("r").unwrap();
        g2.add_loop("k", 0).unwrap();
        g2.add_link("m", 1, 2).unwrap();
        g2.add_link("n", 2, 1).unwrap();
        assert_eq!(g1.canonical_label(), g2.canonical_label());

        let g3 = bundle(3);
        assert_ne!(g1.canonical_label(), g3.canonical_label());
    }

    #[test]
    fn canonical_label_exhaustive_small() {
        // All graphs on 3 vertices with up to 2 edges, pairwise: encodings
        // agree exactly when a brute-force isomorphism exists.
        let mut graphs = Vec::new();
        let slots: [(usize, usize); 4] = [(0, 1), (1, 2), (0, 2), (0, 0)];
        for a in 0..slots.len() {
            for b in a..slots.len() {
                let mut g = Multigraph::new();
                for name in ["x", "y", "z"] {
                    g.add_vertex(name).unwrap();
                }
                for (i, &(u, v)) in [slots[a], slots[b]].iter().enumerate() {
                    if u == v {
                        g.add_loop(&alloc::format!("e{i}"), u).unwrap();
                    } else {
                        g.add_link(&alloc::format!("e{i}"), u, v).unwrap();
                    }
                }
                graphs.push(g);
            }
        }
        for g1 in &graphs {
            for g2 in &graphs {
                let iso = brute_isomorphic(g1, g2);
                assert_eq!(iso, g1.canonical_label() == g2.canonical_label());
            }
        }
    }

    fn brute_isomorphic(g1: &Multigraph, g2: &Multigraph) -> bool {
        if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
            return false;
        }
        let n = g1.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut found = false;
        heap_permutations(&mut perm, &mut |p| {
            if found {
                return;
            }
            let mut m1: Vec<(usize, usize)> = g1
                .edges()
                .iter()
                .map(|e| match e.ends {
                    Ends::Link(u, v) => (p[u].min(p[v]), p[u].max(p[v])),
                    Ends::Loop(u) => (p[u], usize::MAX),
                })
                .collect();
            let mut m2: Vec<(usize, usize)> = g2
                .edges()
                .iter()
                .map(|e| match e.ends {
                    Ends::Link(u, v) => (u.min(v), u.max(v)),
                    Ends::Loop(u) => (u, usize::MAX),
                })
                .collect();
            m1.sort_unstable();
            m2.sort_unstable();
            if m1 == m2 {
                found = true;
            }
        });
        found
    }

    #[test]
    fn labeled_canonical_respects_labels() {
        // Same unlabeled shape, different label placement: not equivalent.
        let mut g1 = Multigraph::new();
        g1.add_vertex("u").unwrap();
        g1.add_vertex("v").unwrap();
        g1.add_link("a", 0, 1).unwrap();
        g1.add_loop("b", 0).unwrap();

        let mut g2 = Multigraph::new();
        g2.add_vertex("u").unwrap();
        g2.add_vertex("v").unwrap();
        g2.add_loop("a", 0).unwrap();
        g2.add_link("b", 0, 1).unwrap();
        assert_ne!(g1.labeled_canonical(), g2.labeled_canonical());

        // Vertex renaming is invisible.
        let mut g3 = Multigraph::new();
        g3.add_vertex("x").unwrap();
        g3.add_vertex("y").unwrap();
        g3.add_link("a", 1, 0).unwrap();
        g3.add_loop("b", 1).unwrap();
        assert_eq!(g1.labeled_canonical(), g3.labeled_canonical());
    }
}
