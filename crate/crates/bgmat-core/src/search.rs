//! Exhaustive desk-scale decision procedures: representation search, class
//! membership, excluded-minor predicates and scans, the three-representation
//! gluing construction, and the Turán triangle step.
//!
//! The search places elements one at a time as loops or links on a bounded
//! vertex set and derives the bias at the leaves; the bias is determined by
//! the matroid, so graphs are the whole search space. Exhaustiveness rests on
//! vertex bounds: a connected frame member always has a representation on
//! rank-many vertices (an unbalanced representation has |V| = r; a balanced
//! one is graphic and rolls one vertex into loops), a lift member normalizes
//! to a body plus one trivial component on r + 1 vertices, and a framework
//! never touches more than 2r vertices. Frame and quasi membership split
//! over connectivity components (both classes are closed under direct sums);
//! lift is not, so lift non-membership is always decided on the whole
//! matroid.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bias::{
    connecting_paths, derive_bias, is_theta, represents, touched_vertices, BiasedRepresentation,
    ClassTag,
};
use crate::fixing::fixing_set;
use crate::matroid::{ElemSet, Matroid};
use crate::multigraph::{iter_mask, EdgeMask, Ends, Multigraph, VertexId};

/// Placement searches stay within this many vertices; canonical labeling and
/// the symmetry machinery are tuned for graphs of this size.
const SEARCH_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Overrides the class default: rank for frame, rank + 1 for lift,
    /// 2·rank for quasi.
    pub max_vertices: Option<usize>,
    pub symmetry_pruning: bool,
    /// Placement attempts before the search gives up as inconclusive.
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_vertices: None, symmetry_pruning: true, budget: 50_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Member,
    NonMember,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Member => "member",
            Verdict::NonMember => "non-member",
            Verdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

/// Outcome of a membership decision. For members the witness passes
/// `represents`; for non-members `vertex_bound` is the bound (summed over
/// components when the search split) that makes the exhaustion a proof.
#[derive(Debug, Clone)]
pub struct MembershipCertificate {
    pub verdict: Verdict,
    pub witness: Option<BiasedRepresentation>,
    pub vertex_bound: usize,
    pub explored: u64,
    pub pruned: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorOp {
    Delete,
    Contract,
}

impl fmt::Display for MinorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorOp::Delete => write!(f, "delete"),
            MinorOp::Contract => write!(f, "contract"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinorCheck {
    pub op: MinorOp,
    pub element: String,
    pub verdict: Verdict,
}

/// Excluded-minor verdict plus the table of single-element minor checks.
/// `excluded` is None when some sub-verdict ran out of budget.
#[derive(Debug, Clone)]
pub struct ExclusionReport {
    pub excluded: Option<bool>,
    /// Set when a structural pre-filter settled the question before any
    /// search ran (excluded minors are simple, cosimple, and for frame and
    /// quasi connected).
    pub prefilter: Option<String>,
    pub self_verdict: Option<Verdict>,
    pub minors: Vec<MinorCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    /// Rank-0 elements cannot appear in frame or lift representations (all
    /// loops are unbalanced, so every edge has rank one).
    MatroidLoops(String),
    BudgetExhausted { explored: u64 },
    Envelope(String),
    Precondition(String),
    Verification(String),
    /// An excluded-minor scan hit an inconclusive membership verdict.
    Inconclusive(String),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::MatroidLoops(s) => write!(f, "matroid has loops: {s}"),
            SearchError::BudgetExhausted { explored } => {
                write!(f, "search budget exhausted after {explored} placements")
            }
            SearchError::Envelope(s) => write!(f, "outside the feasibility envelope: {s}"),
            SearchError::Precondition(s) => write!(f, "precondition violated: {s}"),
            SearchError::Verification(s) => write!(f, "verification failed: {s}"),
            SearchError::Inconclusive(s) => write!(f, "inconclusive: {s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct SearchStats {
    explored: u64,
    pruned: u64,
}

fn class_bound(class: ClassTag, rank: usize) -> usize {
    match class {
        ClassTag::Frame => rank.max(1),
        ClassTag::Lift => rank + 1,
        ClassTag::Quasi => (2 * rank).max(1),
    }
}

fn resolve_bound(m: &Matroid, class: ClassTag, cfg: &SearchConfig) -> Result<usize, SearchError> {
    let bound = cfg.max_vertices.unwrap_or_else(|| class_bound(class, m.full_rank()));
    if bound == 0 || bound > SEARCH_MAX_VERTICES {
        return Err(SearchError::Envelope(alloc::format!(
            "vertex bound {bound} outside 1..={SEARCH_MAX_VERTICES}"
        )));
    }
    Ok(bound)
}

fn matroid_loop_guard(m: &Matroid, class: ClassTag) -> Result<(), SearchError> {
    if class == ClassTag::Quasi {
        return Ok(());
    }
    let loops: Vec<&str> =
        (0..m.size()).filter(|&e| m.rank(1 << e) == 0).map(|e| m.label(e)).collect();
    if loops.is_empty() {
        Ok(())
    } else {
        Err(SearchError::MatroidLoops(loops.join(" ")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Cycle,
    Theta,
    TightHandcuff,
    LooseHandcuff,
    DisjointPair,
    None,
}

/// Shape of the subgraph on edge set `x`, with `cycles` the cycle list of
/// the ambient graph. Balance plays no part here; the search prunes on the
/// graph form alone.
fn shape_of(g: &Multigraph, cycles: &[EdgeMask], x: EdgeMask) -> Shape {
    let inside: Vec<EdgeMask> = cycles.iter().copied().filter(|&c| c & !x == 0).collect();
    if inside.contains(&x) {
        return Shape::Cycle;
    }
    if is_theta(g, x) {
        return Shape::Theta;
    }
    for (i, &c1) in inside.iter().enumerate() {
        for &c2 in &inside[i + 1..] {
            if c1 & c2 != 0 {
                continue;
            }
            let v1 = touched_vertices(g, c1);
            let v2 = touched_vertices(g, c2);
            let shared = (v1 & v2).count_ones();
            let rest = x & !(c1 | c2);
            if shared == 1 && rest == 0 {
                return Shape::TightHandcuff;
            }
            if shared == 0 && rest == 0 {
                return Shape::DisjointPair;
            }
            if shared == 0
                && rest != 0
                && connecting_paths(g, c1 | c2, v1, v2, 0).contains(&rest)
            {
                return Shape::LooseHandcuff;
            }
        }
    }
    Shape::None
}

fn shape_allowed(class: ClassTag, shape: Shape) -> bool {
    match shape {
        Shape::None => false,
        Shape::Cycle | Shape::Theta | Shape::TightHandcuff => true,
        Shape::LooseHandcuff => class != ClassTag::Lift,
        Shape::DisjointPair => class != ClassTag::Frame,
    }
}

struct Dfs<'a> {
    m: &'a Matroid,
    class: ClassTag,
    order: Vec<usize>,
    g: Multigraph,
    edge_elem: Vec<usize>,
    placed: ElemSet,
    bound: usize,
    symmetry: bool,
    budget: u64,
    stats: SearchStats,
    seen: BTreeSet<Vec<u8>>,
    stop: bool,
}

impl<'a> Dfs<'a> {
    fn new(
        m: &'a Matroid,
        class: ClassTag,
        bound: usize,
        cfg: &SearchConfig,
    ) -> Result<Self, SearchError> {
        let mut g = Multigraph::new();
        for i in 0..bound {
            g.add_vertex(&alloc::format!("v{i}"))
                .map_err(|e| SearchError::Envelope(alloc::format!("{e}")))?;
        }
        // Most constrained first: elements on many long lines.
        let set = fixing_set(m);
        let mut order: Vec<usize> = (0..m.size()).collect();
        order.sort_by_key(|&e| (usize::MAX - set.element_lines[e].len(), e));
        Ok(Dfs {
            m,
            class,
            order,
            g,
            edge_elem: Vec::new(),
            placed: 0,
            bound,
            symmetry: cfg.symmetry_pruning,
            budget: cfg.budget,
            stats: SearchStats::default(),
            seen: BTreeSet::new(),
            stop: false,
        })
    }

    /// Vertex swaps preserving every placed edge individually; products of
    /// these are automorphisms of the partial placement, so candidate
    /// placements in one orbit explore isomorphic subtrees.
    fn edge_preserving_swaps(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        'pairs: for a in 0..self.bound {
            for b in a + 1..self.bound {
                for e in self.g.edges() {
                    let ok = match e.ends {
                        Ends::Loop(v) => v != a && v != b,
                        Ends::Link(u, v) => {
                            (u != a && u != b && v != a && v != b) || (u == a && v == b)
                        }
                    };
                    if !ok {
                        continue 'pairs;
                    }
                }
                out.push((a, b));
            }
        }
        out
    }

    fn orbit_of(&self, ends: Ends, swaps: &[(VertexId, VertexId)]) -> Vec<Ends> {
        let apply = |ends: Ends, (a, b): (VertexId, VertexId)| {
            let map = |v: VertexId| {
                if v == a {
                    b
                } else if v == b {
                    a
                } else {
                    v
                }
            };
            match ends {
                Ends::Loop(v) => Ends::Loop(map(v)),
                Ends::Link(u, v) => {
                    let (u, v) = (map(u), map(v));
                    Ends::Link(u.min(v), u.max(v))
                }
            }
        };
        let mut orbit = alloc::vec![ends];
        let mut i = 0;
        while i < orbit.len() {
            let cur = orbit[i];
            for &s in swaps {
                let next = apply(cur, s);
                if !orbit.contains(&next) {
                    orbit.push(next);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Exact rank condition on the partial placement. Balance is forced (a
    /// cycle is balanced iff its elements are dependent), so the frame and
    /// lift ranks of the placed set are determined by the graph and must
    /// equal the matroid rank; quasi admits only the forest lower bound.
    fn rank_consistent(&self, cycles: &[EdgeMask]) -> bool {
        let comps = self.g.components();
        let mut nv = alloc::vec![0usize; comps.count];
        let mut balanced = alloc::vec![true; comps.count];
        let touched = touched_vertices(&self.g, self.g.full_edge_mask());
        for v in 0..self.g.vertex_count() {
            if touched & (1 << v) != 0 {
                nv[comps.vertex_component[v]] += 1;
            }
        }
        for &c in cycles {
            let elems = self.cycle_elems(c);
            if self.m.is_independent(elems) {
                let v = touched_vertices(&self.g, c).trailing_zeros() as usize;
                balanced[comps.vertex_component[v]] = false;
            }
        }
        let rank = self.m.rank(self.placed);
        match self.class {
            ClassTag::Frame => {
                let mut expected = 0usize;
                for k in 0..comps.count {
                    if nv[k] == 0 {
                        continue;
                    }
                    expected += nv[k] - usize::from(balanced[k]);
                }
                rank == expected
            }
            ClassTag::Lift => {
                let mut vertices = 0usize;
                let mut parts = 0usize;
                let mut unbalanced = false;
                for k in 0..comps.count {
                    if nv[k] == 0 {
                        continue;
                    }
                    vertices += nv[k];
                    parts += 1;
                    if !balanced[k] {
                        unbalanced = true;
                    }
                }
                rank == vertices - parts + usize::from(unbalanced)
            }
            ClassTag::Quasi => {
                let mut low = 0usize;
                for k in 0..comps.count {
                    if nv[k] > 0 {
                        low += nv[k] - 1;
                    }
                }
                rank >= low
            }
        }
    }

    fn cycle_elems(&self, c: EdgeMask) -> ElemSet {
        iter_mask(c).fold(0, |acc, e| acc | (1 << self.edge_elem[e]))
    }

    fn prune_ok(&self, new_edge: usize, new_elem: usize) -> bool {
        let cycles = self.g.cycles();
        let newbit: EdgeMask = 1 << new_edge;
        for &c in &cycles {
            if c & newbit == 0 {
                continue;
            }
            let elems = self.cycle_elems(c);
            if !self.m.is_independent(elems) && !self.m.is_circuit(elems) {
                return false;
            }
        }
        if !self.rank_consistent(&cycles) {
            return false;
        }
        let ebit: ElemSet = 1 << new_elem;
        for &circ in self.m.circuits() {
            if circ & ebit == 0 || circ & !self.placed != 0 {
                continue;
            }
            let mut edges: EdgeMask = 0;
            for (i, &el) in self.edge_elem.iter().enumerate() {
                if circ & (1 << el) != 0 {
                    edges |= 1 << i;
                }
            }
            if !shape_allowed(self.class, shape_of(&self.g, &cycles, edges)) {
                return false;
            }
        }
        true
    }

    fn leaf(
        &mut self,
        emit: &mut dyn FnMut(&BiasedRepresentation) -> bool,
    ) -> Result<(), SearchError> {
        let touched = touched_vertices(&self.g, self.g.full_edge_mask());
        let mut trimmed = Multigraph::new();
        let mut pos = alloc::vec![usize::MAX; self.g.vertex_count()];
        for v in 0..self.g.vertex_count() {
            if touched & (1 << v) != 0 {
                pos[v] = trimmed
                    .add_vertex(self.g.vertex_name(v))
                    .map_err(|e| SearchError::Verification(alloc::format!("{e}")))?;
            }
        }
        for e in self.g.edges() {
            let r = match e.ends {
                Ends::Loop(v) => trimmed.add_loop(&e.label, pos[v]),
                Ends::Link(u, v) => trimmed.add_link(&e.label, pos[u], pos[v]),
            };
            r.map_err(|err| SearchError::Verification(alloc::format!("{err}")))?;
        }
        let rep = match derive_bias(&trimmed, self.m) {
            Ok(rep) => rep,
            Err(_) => return Ok(()),
        };
        if !matches!(represents(self.m, &rep, self.class), Ok(true)) {
            return Ok(());
        }
        if self.seen.insert(trimmed.labeled_canonical()) && !emit(&rep) {
            self.stop = true;
        }
        Ok(())
    }

    fn run(
        &mut self,
        depth: usize,
        emit: &mut dyn FnMut(&BiasedRepresentation) -> bool,
    ) -> Result<(), SearchError> {
        if self.stop {
            return Ok(());
        }
        if depth == self.order.len() {
            return self.leaf(emit);
        }
        let elem = self.order[depth];
        let label = alloc::format!("{}", self.m.label(elem));
        let mut candidates: Vec<Ends> = Vec::new();
        for u in 0..self.bound {
            for v in u + 1..self.bound {
                candidates.push(Ends::Link(u, v));
            }
        }
        for v in 0..self.bound {
            candidates.push(Ends::Loop(v));
        }
        let swaps = if self.symmetry { self.edge_preserving_swaps() } else { Vec::new() };
        let mut tried: Vec<Ends> = Vec::new();
        for ends in candidates {
            if self.stop {
                break;
            }
            if self.symmetry {
                let orbit = self.orbit_of(ends, &swaps);
                if orbit.iter().any(|o| tried.contains(o)) {
                    self.stats.pruned += 1;
                    continue;
                }
                tried.push(ends);
            }
            self.stats.explored += 1;
            if self.stats.explored > self.budget {
                return Err(SearchError::BudgetExhausted { explored: self.stats.explored });
            }
            let edge = match ends {
                Ends::Loop(v) => self.g.add_loop(&label, v),
                Ends::Link(u, v) => self.g.add_link(&label, u, v),
            }
            .map_err(|e| SearchError::Verification(alloc::format!("{e}")))?;
            self.edge_elem.push(elem);
            self.placed |= 1 << elem;
            if self.prune_ok(edge, elem) {
                self.run(depth + 1, emit)?;
            } else {
                self.stats.pruned += 1;
            }
            self.g.remove_edge(edge);
            self.edge_elem.pop();
            self.placed &= !(1 << elem);
        }
        Ok(())
    }
}

fn search_core(
    m: &Matroid,
    class: ClassTag,
    bound: usize,
    cfg: &SearchConfig,
    emit: &mut dyn FnMut(&BiasedRepresentation) -> bool,
) -> Result<SearchStats, SearchError> {
    let mut dfs = Dfs::new(m, class, bound, cfg)?;
    dfs.run(0, emit)?;
    Ok(dfs.stats)
}

/// All representations of `m` in the class on at most the configured number
/// of vertices, up to isomorphism, in deterministic discovery order.
pub fn find_representations(
    m: &Matroid,
    class: ClassTag,
    cfg: &SearchConfig,
) -> Result<Vec<BiasedRepresentation>, SearchError> {
    matroid_loop_guard(m, class)?;
    let bound = resolve_bound(m, class, cfg)?;
    let mut out = Vec::new();
    search_core(m, class, bound, cfg, &mut |rep| {
        out.push(rep.clone());
        true
    })?;
    Ok(out)
}

fn first_witness(
    m: &Matroid,
    class: ClassTag,
    bound: usize,
    cfg: &SearchConfig,
) -> Result<(Option<BiasedRepresentation>, SearchStats), SearchError> {
    let mut witness: Option<BiasedRepresentation> = None;
    let stats = search_core(m, class, bound, cfg, &mut |rep| {
        witness = Some(rep.clone());
        false
    })?;
    Ok((witness, stats))
}

/// Decides class membership. Frame and quasi split over connectivity
/// components and rejoin member witnesses as a disjoint union; lift is
/// searched whole on r + 1 vertices.
pub fn is_member(
    m: &Matroid,
    class: ClassTag,
    cfg: &SearchConfig,
) -> Result<MembershipCertificate, SearchError> {
    matroid_loop_guard(m, class)?;
    let comps = m.connectivity_components();
    let whole = class == ClassTag::Lift || comps.len() <= 1 || cfg.max_vertices.is_some();
    if whole {
        let bound = resolve_bound(m, class, cfg)?;
        return Ok(match first_witness(m, class, bound, cfg) {
            Ok((witness, stats)) => MembershipCertificate {
                verdict: if witness.is_some() { Verdict::Member } else { Verdict::NonMember },
                witness,
                vertex_bound: bound,
                explored: stats.explored,
                pruned: stats.pruned,
            },
            Err(SearchError::BudgetExhausted { explored }) => MembershipCertificate {
                verdict: Verdict::Inconclusive,
                witness: None,
                vertex_bound: bound,
                explored,
                pruned: 0,
            },
            Err(e) => return Err(e),
        });
    }
    let mut total_bound = 0usize;
    let mut explored = 0u64;
    let mut pruned = 0u64;
    let mut witnesses: Vec<BiasedRepresentation> = Vec::new();
    let mut verdict = Verdict::Member;
    for &comp in &comps {
        let sub = m.restrict(comp);
        let bound = resolve_bound(&sub, class, cfg)?;
        total_bound += bound;
        match first_witness(&sub, class, bound, cfg) {
            Ok((Some(w), stats)) => {
                explored += stats.explored;
                pruned += stats.pruned;
                witnesses.push(w);
            }
            Ok((None, stats)) => {
                explored += stats.explored;
                pruned += stats.pruned;
                verdict = Verdict::NonMember;
            }
            Err(SearchError::BudgetExhausted { explored: e }) => {
                explored += e;
                if verdict == Verdict::Member {
                    verdict = Verdict::Inconclusive;
                }
            }
            Err(e) => return Err(e),
        }
    }
    let witness = if verdict == Verdict::Member {
        let mut union = Multigraph::new();
        for (i, w) in witnesses.iter().enumerate() {
            let g = w.graph();
            let mut pos = alloc::vec![0usize; g.vertex_count()];
            for v in 0..g.vertex_count() {
                pos[v] = union
                    .add_vertex(&alloc::format!("c{i}{}", g.vertex_name(v)))
                    .map_err(|e| SearchError::Verification(alloc::format!("{e}")))?;
            }
            for e in g.edges() {
                let r = match e.ends {
                    Ends::Loop(v) => union.add_loop(&e.label, pos[v]),
                    Ends::Link(u, v) => union.add_link(&e.label, pos[u], pos[v]),
                };
                r.map_err(|err| SearchError::Verification(alloc::format!("{err}")))?;
            }
        }
        let rep = derive_bias(&union, m)
            .map_err(|e| SearchError::Verification(alloc::format!("{e}")))?;
        if !matches!(represents(m, &rep, class), Ok(true)) {
            return Err(SearchError::Verification(
                "disjoint union of component witnesses does not represent the matroid".into(),
            ));
        }
        Some(rep)
    } else {
        None
    };
    Ok(MembershipCertificate { verdict, witness, vertex_bound: total_bound, explored, pruned })
}

/// True iff `m` is outside the class while all 2|E| single-element minors
/// are inside. Structural pre-filters settle most inputs without a search:
/// excluded minors are simple and cosimple, and for frame and quasi also
/// connected (the lift statement omits connectivity, and indeed the direct
/// sum of two four-point lines is a disconnected lift excluded minor).
pub fn is_excluded_minor(
    m: &Matroid,
    class: ClassTag,
    cfg: &SearchConfig,
) -> Result<ExclusionReport, SearchError> {
    let profile = m.structural_profile();
    let mut missing: Vec<&str> = Vec::new();
    if !profile.simple {
        missing.push("simple");
    }
    if !profile.cosimple {
        missing.push("cosimple");
    }
    if class != ClassTag::Lift && !profile.connected {
        missing.push("connected");
    }
    if !missing.is_empty() {
        return Ok(ExclusionReport {
            excluded: Some(false),
            prefilter: Some(alloc::format!("not {}", missing.join(", not "))),
            self_verdict: None,
            minors: Vec::new(),
        });
    }
    let own = is_member(m, class, cfg)?;
    if own.verdict == Verdict::Member {
        return Ok(ExclusionReport {
            excluded: Some(false),
            prefilter: None,
            self_verdict: Some(Verdict::Member),
            minors: Vec::new(),
        });
    }
    let mut minors = Vec::new();
    let mut all_members = true;
    let mut inconclusive = own.verdict == Verdict::Inconclusive;
    for e in 0..m.size() {
        for op in [MinorOp::Delete, MinorOp::Contract] {
            let minor = match op {
                MinorOp::Delete => m.delete(1 << e),
                MinorOp::Contract => m.contract(1 << e),
            };
            let verdict = is_member(&minor, class, cfg)?.verdict;
            match verdict {
                Verdict::Member => {}
                Verdict::NonMember => all_members = false,
                Verdict::Inconclusive => inconclusive = true,
            }
            minors.push(MinorCheck { op, element: m.label(e).into(), verdict });
        }
    }
    let excluded = if inconclusive && all_members {
        None
    } else {
        Some(own.verdict == Verdict::NonMember && all_members)
    };
    Ok(ExclusionReport { excluded, prefilter: None, self_verdict: Some(own.verdict), minors })
}

/// Simple rank-2 matroids are exactly the uniform lines U_{2,n}.
fn rank2_candidates(max_elements: usize) -> Vec<Matroid> {
    (2..=max_elements).map(|n| crate::matroid::uniform(2, n)).collect()
}

/// Simple rank-3 matroids on `n` elements correspond to line families:
/// collections of subsets of size >= 3, pairwise sharing at most one
/// element, none equal to the whole ground set. Circuits are the collinear
/// triples plus every 4-set containing none of them.
fn rank3_candidates(max_elements: usize, budget: u64) -> Result<Vec<Matroid>, SearchError> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut built = 0u64;
    for n in 3..=max_elements {
        let ground: ElemSet = if n == 32 { !0 } else { (1 << n) - 1 };
        let mut subsets: Vec<ElemSet> = Vec::new();
        for s in 0..=ground {
            if s & !ground == 0 && s.count_ones() >= 3 && s != ground {
                subsets.push(s);
            }
        }
        let mut stack: Vec<(usize, Vec<ElemSet>)> = alloc::vec![(0, Vec::new())];
        while let Some((from, family)) = stack.pop() {
            built += 1;
            if built > budget {
                return Err(SearchError::BudgetExhausted { explored: built });
            }
            if let Some(m) = line_family_matroid(n, &family) {
                if m.full_rank() == 3 && seen.insert(m.canonical_form()) {
                    out.push(m);
                }
            }
            for i in from..subsets.len() {
                let cand = subsets[i];
                if family.iter().all(|&l| (l & cand).count_ones() <= 1) {
                    let mut next = family.clone();
                    next.push(cand);
                    stack.push((i + 1, next));
                }
            }
        }
    }
    Ok(out)
}

fn line_family_matroid(n: usize, family: &[ElemSet]) -> Option<Matroid> {
    let labels: Vec<String> = (0..n).map(|i| alloc::format!("e{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let mut triples: Vec<ElemSet> = Vec::new();
    for &line in family {
        let members: Vec<usize> = iter_mask(line).collect();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                for k in j + 1..members.len() {
                    triples.push((1 << members[i]) | (1 << members[j]) | (1 << members[k]));
                }
            }
        }
    }
    triples.sort_unstable();
    triples.dedup();
    let mut circuits = triples.clone();
    let all: ElemSet = if n == 32 { !0 } else { (1 << n) - 1 };
    let mut quad_stack: Vec<ElemSet> = Vec::new();
    for s in 0..=all {
        if s.count_ones() == 4 && triples.iter().all(|&t| t & !s != 0) {
            quad_stack.push(s);
        }
    }
    circuits.extend(quad_stack);
    let named: Vec<Vec<&str>> = circuits
        .iter()
        .map(|&c| iter_mask(c).map(|e| refs[e]).collect())
        .collect();
    let borrowed: Vec<&[&str]> = named.iter().map(|v| v.as_slice()).collect();
    let m = Matroid::from_labels(&refs, &borrowed).ok()?;
    m.validate().ok()?;
    Some(m)
}

/// Scans all simple matroids of the given rank and size for excluded minors
/// of the class, up to relabeling. Feasible for rank <= 3 and at most 9
/// elements; candidates failing the structural pre-filters are skipped.
pub fn excluded_minor_scan(
    rank: usize,
    max_elements: usize,
    class: ClassTag,
    cfg: &SearchConfig,
) -> Result<Vec<Matroid>, SearchError> {
    if rank > 3 || max_elements > 9 {
        return Err(SearchError::Envelope(alloc::format!(
            "scan limited to rank <= 3 and <= 9 elements, got rank {rank}, {max_elements} elements"
        )));
    }
    let candidates = match rank {
        0 => alloc::vec![crate::matroid::uniform(0, 0)],
        1 => alloc::vec![crate::matroid::uniform(1, 1)],
        2 => rank2_candidates(max_elements),
        _ => rank3_candidates(max_elements, cfg.budget)?,
    };
    let mut out = Vec::new();
    for m in candidates {
        if m.size() > max_elements || m.full_rank() != rank {
            continue;
        }
        let report = is_excluded_minor(&m, class, cfg)?;
        match report.excluded {
            Some(true) => out.push(m),
            Some(false) => {}
            None => {
                return Err(SearchError::Inconclusive(alloc::format!(
                    "membership undecided for a candidate with {} elements",
                    m.size()
                )))
            }
        }
    }
    Ok(out)
}

fn ends_by_name(g: &Multigraph, e: usize) -> (String, Option<String>) {
    match g.edge(e).ends {
        Ends::Loop(v) => (g.vertex_name(v).into(), None),
        Ends::Link(u, v) => {
            let mut names = [g.vertex_name(u), g.vertex_name(v)];
            names.sort_unstable();
            (names[0].into(), Some(names[1].into()))
        }
    }
}

fn cycle_by_labels(target: &Multigraph, labels: &[&str]) -> Option<EdgeMask> {
    let mut mask: EdgeMask = 0;
    for l in labels {
        mask |= 1 << target.edge_by_label(l)?;
    }
    Some(mask)
}

/// Glues three frame representations of M\e, M\f, M\g into one of M, for
/// collinear e, f, g: e is added to g_e in parallel with f and g, cycles
/// avoiding e take their balance from g_e, cycles through e from g_f, and
/// the one cycle through both e and f (their digon) from g_g. The result is
/// verified against m; failure is evidence m is not frame.
pub fn glue_three(
    m: &Matroid,
    g_e: &BiasedRepresentation,
    g_f: &BiasedRepresentation,
    g_g: &BiasedRepresentation,
    e: &str,
    f: &str,
    g: &str,
) -> Result<BiasedRepresentation, SearchError> {
    let precondition = |s: String| SearchError::Precondition(s);
    let ie = m
        .element_by_label(e)
        .ok_or_else(|| precondition(alloc::format!("unknown element {e}")))?;
    let if_ = m
        .element_by_label(f)
        .ok_or_else(|| precondition(alloc::format!("unknown element {f}")))?;
    let ig = m
        .element_by_label(g)
        .ok_or_else(|| precondition(alloc::format!("unknown element {g}")))?;
    let triple: ElemSet = (1 << ie) | (1 << if_) | (1 << ig);
    if triple.count_ones() != 3 || m.rank(triple) != 2 {
        return Err(precondition(alloc::format!("{e}, {f}, {g} are not collinear")));
    }
    for (rep, gone) in [(g_e, ie), (g_f, if_), (g_g, ig)] {
        let minor = m.delete(1 << gone);
        match represents(&minor, rep, ClassTag::Frame) {
            Ok(true) => {}
            _ => {
                return Err(precondition(alloc::format!(
                    "input graph does not represent the matroid without {}",
                    m.label(gone)
                )))
            }
        }
    }
    // The three graphs must agree on every shared edge, endpoint names and
    // all; e, f, g must be pairwise parallel links wherever they appear.
    let shared_pair = |rep: &BiasedRepresentation,
                       a: &str,
                       b: &str|
     -> Result<(String, String), SearchError> {
        let ga = rep.graph();
        let ea = ga
            .edge_by_label(a)
            .ok_or_else(|| precondition(alloc::format!("{a} missing from an input graph")))?;
        let eb = ga
            .edge_by_label(b)
            .ok_or_else(|| precondition(alloc::format!("{b} missing from an input graph")))?;
        match (ends_by_name(ga, ea), ends_by_name(ga, eb)) {
            ((u1, Some(v1)), (u2, Some(v2))) if u1 == u2 && v1 == v2 => Ok((u1, v1)),
            _ => Err(precondition(alloc::format!("{a} and {b} are not parallel links"))),
        }
    };
    let (u, v) = shared_pair(g_e, f, g)?;
    let (uf, vf) = shared_pair(g_f, e, g)?;
    let (ug, vg) = shared_pair(g_g, e, f)?;
    if (uf.as_str(), vf.as_str()) != (u.as_str(), v.as_str())
        || (ug.as_str(), vg.as_str()) != (u.as_str(), v.as_str())
    {
        return Err(precondition(
            "the three graphs place the line at different endpoint pairs".into(),
        ));
    }
    for x in 0..m.size() {
        if triple & (1 << x) != 0 {
            continue;
        }
        let label = m.label(x);
        let mut spots: Vec<(String, Option<String>)> = Vec::new();
        for rep in [g_e, g_f, g_g] {
            let idx = rep.graph().edge_by_label(label).ok_or_else(|| {
                precondition(alloc::format!("{label} missing from an input graph"))
            })?;
            spots.push(ends_by_name(rep.graph(), idx));
        }
        if spots[0] != spots[1] || spots[1] != spots[2] {
            return Err(precondition(alloc::format!(
                "the input graphs disagree on the endpoints of {label}"
            )));
        }
    }
    let mut combined = g_e.graph().clone();
    let iu = (0..combined.vertex_count())
        .find(|&x| combined.vertex_name(x) == u)
        .ok_or_else(|| precondition("endpoint vertex missing".into()))?;
    let iv = (0..combined.vertex_count())
        .find(|&x| combined.vertex_name(x) == v)
        .ok_or_else(|| precondition("endpoint vertex missing".into()))?;
    combined
        .add_link(e, iu, iv)
        .map_err(|err| precondition(alloc::format!("{err}")))?;
    let mut balanced: Vec<EdgeMask> = Vec::new();
    let e_edge = combined.edge_by_label(e).expect("just added");
    let f_edge = combined.edge_by_label(f).expect("checked above");
    for c in combined.cycles() {
        let labels: Vec<&str> = iter_mask(c).map(|i| combined.edge(i).label.as_str()).collect();
        let source = if c & (1 << e_edge) == 0 {
            g_e
        } else if c & (1 << f_edge) == 0 {
            g_f
        } else {
            g_g
        };
        let there = cycle_by_labels(source.graph(), &labels).ok_or_else(|| {
            precondition("a cycle of the glued graph is missing from its source".into())
        })?;
        if !source.cycles().contains(&there) {
            return Err(precondition(
                "a cycle of the glued graph is not a cycle of its source".into(),
            ));
        }
        if source.is_balanced(there) {
            balanced.push(c);
        }
    }
    let rep = BiasedRepresentation::new(combined, balanced)
        .map_err(|err| SearchError::Verification(alloc::format!("{err}")))?;
    match represents(m, &rep, ClassTag::Frame) {
        Ok(true) => Ok(rep),
        _ => Err(SearchError::Verification(
            "glued graph does not represent the matroid; evidence it is not frame".into(),
        )),
    }
}

/// Lexicographically first triangle of H, given the complement of H. The
/// input must be simple and loop-free.
pub fn turan_triangle(
    h_complement: &Multigraph,
) -> Result<Option<(VertexId, VertexId, VertexId)>, SearchError> {
    let n = h_complement.vertex_count();
    let mut adj = alloc::vec![0u16; n];
    for e in h_complement.edges() {
        match e.ends {
            Ends::Loop(_) => {
                return Err(SearchError::Precondition("complement has a loop".into()))
            }
            Ends::Link(u, v) => {
                if adj[u] & (1 << v) != 0 {
                    return Err(SearchError::Precondition(
                        "complement has parallel edges".into(),
                    ));
                }
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if adj[a] & (1 << b) != 0 {
                continue;
            }
            for c in b + 1..n {
                if adj[a] & (1 << c) == 0 && adj[b] & (1 << c) == 0 {
                    return Ok(Some((a, b, c)));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{parallel_bundle, two_loops_and_link};
    use crate::matroid::uniform;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    /// U24 plus a disjoint U24 copy on fresh labels f0..f3.
    fn u24_pair() -> Matroid {
        let copy = Matroid::from_labels(
            &["f0", "f1", "f2", "f3"],
            &[
                &["f0", "f1", "f2"],
                &["f0", "f1", "f3"],
                &["f0", "f2", "f3"],
                &["f1", "f2", "f3"],
            ],
        )
        .unwrap();
        uniform(2, 4).direct_sum(&copy).unwrap()
    }

    fn with_vertices(n: usize) -> SearchConfig {
        SearchConfig { max_vertices: Some(n), ..SearchConfig::default() }
    }

    #[test]
    fn u24_frame_representations_start_with_the_bundle() {
        let m = uniform(2, 4);
        let reps = find_representations(&m, ClassTag::Frame, &cfg()).unwrap();
        assert!(!reps.is_empty());
        for rep in &reps {
            assert!(represents(&m, rep, ClassTag::Frame).unwrap());
        }
        let first = reps[0].graph();
        assert_eq!(first.vertex_count(), 2);
        assert!(first.edges().iter().all(|e| !e.ends.is_loop()));
    }

    #[test]
    fn u24_loop_variants_appear_with_more_vertices() {
        let m = uniform(2, 4);
        let reps = find_representations(&m, ClassTag::Frame, &with_vertices(3)).unwrap();
        assert!(reps.len() > 1);
        assert!(reps
            .iter()
            .any(|r| r.graph().edges().iter().any(|e| e.ends.is_loop())));
    }

    #[test]
    fn triangle_matroid_has_balanced_triangle_representation() {
        let m = Matroid::from_labels(&["ab", "ac", "bc"], &[&["ab", "ac", "bc"]]).unwrap();
        let reps = find_representations(&m, ClassTag::Frame, &with_vertices(3)).unwrap();
        let triangle = reps.iter().find(|r| {
            r.graph().vertex_count() == 3 && r.balanced_cycles().len() == 1
        });
        assert!(triangle.is_some());
    }

    #[test]
    fn search_agrees_with_unpruned_brute_force() {
        // Every placement of every element, no pruning at all.
        fn brute(m: &Matroid, class: ClassTag, bound: usize) -> BTreeSet<Vec<u8>> {
            let mut ends: Vec<Ends> = Vec::new();
            for u in 0..bound {
                for v in u + 1..bound {
                    ends.push(Ends::Link(u, v));
                }
            }
            for v in 0..bound {
                ends.push(Ends::Loop(v));
            }
            let mut out = BTreeSet::new();
            let mut choice = alloc::vec![0usize; m.size()];
            loop {
                let mut g = Multigraph::new();
                for i in 0..bound {
                    g.add_vertex(&alloc::format!("v{i}")).unwrap();
                }
                for e in 0..m.size() {
                    match ends[choice[e]] {
                        Ends::Loop(v) => g.add_loop(m.label(e), v).unwrap(),
                        Ends::Link(u, v) => g.add_link(m.label(e), u, v).unwrap(),
                    };
                }
                let touched = touched_vertices(&g, g.full_edge_mask());
                let mut trimmed = Multigraph::new();
                let mut pos = alloc::vec![usize::MAX; g.vertex_count()];
                for v in 0..g.vertex_count() {
                    if touched & (1 << v) != 0 {
                        pos[v] = trimmed.add_vertex(g.vertex_name(v)).unwrap();
                    }
                }
                for e in g.edges() {
                    match e.ends {
                        Ends::Loop(v) => trimmed.add_loop(&e.label, pos[v]).unwrap(),
                        Ends::Link(u, v) => {
                            trimmed.add_link(&e.label, pos[u], pos[v]).unwrap()
                        }
                    };
                }
                if let Ok(rep) = derive_bias(&trimmed, m) {
                    if matches!(represents(m, &rep, class), Ok(true)) {
                        out.insert(trimmed.labeled_canonical());
                    }
                }
                let mut d = 0;
                loop {
                    if d == m.size() {
                        return out;
                    }
                    choice[d] += 1;
                    if choice[d] < ends.len() {
                        break;
                    }
                    choice[d] = 0;
                    d += 1;
                }
            }
        }
        for (m, class, bound) in [
            (uniform(2, 3), ClassTag::Frame, 2),
            (uniform(2, 4), ClassTag::Lift, 3),
            (
                two_loops_and_link().matroid(ClassTag::Frame).unwrap().unwrap(),
                ClassTag::Frame,
                2,
            ),
        ] {
            let expected = brute(&m, class, bound);
            let reps = find_representations(&m, class, &with_vertices(bound)).unwrap();
            let got: BTreeSet<Vec<u8>> =
                reps.iter().map(|r| r.graph().labeled_canonical()).collect();
            assert_eq!(got, expected, "class {class:?} bound {bound}");
        }
    }

    #[test]
    fn u24_membership_in_all_classes() {
        let m = uniform(2, 4);
        for class in [ClassTag::Frame, ClassTag::Lift, ClassTag::Quasi] {
            let cert = is_member(&m, class, &cfg()).unwrap();
            assert_eq!(cert.verdict, Verdict::Member, "{class:?}");
            let w = cert.witness.unwrap();
            assert!(represents(&m, &w, class).unwrap());
        }
    }

    #[test]
    fn u24_sum_is_frame_member_via_disjoint_union() {
        let m = u24_pair();
        let cert = is_member(&m, ClassTag::Frame, &cfg()).unwrap();
        assert_eq!(cert.verdict, Verdict::Member);
        let w = cert.witness.unwrap();
        assert_eq!(w.graph().components().count, 2);
        assert!(represents(&m, &w, ClassTag::Frame).unwrap());
    }

    #[test]
    fn u24_sum_is_not_a_lift_member() {
        let m = u24_pair();
        let cert = is_member(&m, ClassTag::Lift, &cfg()).unwrap();
        assert_eq!(cert.verdict, Verdict::NonMember);
        assert_eq!(cert.vertex_bound, 5);
    }

    #[test]
    fn u24_sum_is_a_lift_excluded_minor() {
        let m = u24_pair();
        let report = is_excluded_minor(&m, ClassTag::Lift, &cfg()).unwrap();
        assert_eq!(report.excluded, Some(true));
        assert_eq!(report.minors.len(), 16);
        assert!(report.minors.iter().all(|c| c.verdict == Verdict::Member));
        let frame = is_excluded_minor(&m, ClassTag::Frame, &cfg()).unwrap();
        assert_eq!(frame.excluded, Some(false));
    }

    #[test]
    fn matroid_loops_are_rejected_for_frame_and_lift() {
        let m = uniform(0, 1);
        assert!(matches!(
            is_member(&m, ClassTag::Frame, &cfg()),
            Err(SearchError::MatroidLoops(_))
        ));
        assert!(matches!(
            is_member(&m, ClassTag::Lift, &cfg()),
            Err(SearchError::MatroidLoops(_))
        ));
        let quasi = is_member(&m, ClassTag::Quasi, &cfg()).unwrap();
        assert_eq!(quasi.verdict, Verdict::NonMember);
    }

    #[test]
    fn frame_members_have_rank_many_vertex_witnesses() {
        let m = uniform(2, 4);
        let reps = find_representations(&m, ClassTag::Frame, &cfg()).unwrap();
        assert!(reps.iter().any(|r| r.graph().vertex_count() == 2));
        let fixture = parallel_bundle(6).matroid(ClassTag::Frame).unwrap().unwrap();
        let cert = is_member(&fixture, ClassTag::Frame, &cfg()).unwrap();
        assert_eq!(cert.verdict, Verdict::Member);
        assert_eq!(cert.witness.unwrap().graph().vertex_count(), 2);
    }

    #[test]
    fn rank2_scans_are_empty_for_all_classes() {
        for class in [ClassTag::Frame, ClassTag::Lift, ClassTag::Quasi] {
            let found = excluded_minor_scan(2, 7, class, &cfg()).unwrap();
            assert!(found.is_empty(), "{class:?} scan found {}", found.len());
        }
    }

    #[test]
    fn rank3_scan_on_five_elements_is_empty_for_frame() {
        let found = excluded_minor_scan(3, 5, ClassTag::Frame, &cfg()).unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn scan_envelope_is_enforced() {
        assert!(matches!(
            excluded_minor_scan(4, 6, ClassTag::Frame, &cfg()),
            Err(SearchError::Envelope(_))
        ));
        assert!(matches!(
            excluded_minor_scan(2, 10, ClassTag::Frame, &cfg()),
            Err(SearchError::Envelope(_))
        ));
    }

    fn bundle_without(m: &Matroid, skip: &str) -> BiasedRepresentation {
        let mut g = Multigraph::new();
        let u = g.add_vertex("u").unwrap();
        let v = g.add_vertex("v").unwrap();
        for e in 0..m.size() {
            if m.label(e) != skip {
                g.add_link(m.label(e), u, v).unwrap();
            }
        }
        BiasedRepresentation::fully_unbalanced(g)
    }

    #[test]
    fn gluing_rebuilds_the_seven_point_line() {
        let m = uniform(2, 7);
        let g_e = bundle_without(&m, "e0");
        let g_f = bundle_without(&m, "e1");
        let g_g = bundle_without(&m, "e2");
        let rep = glue_three(&m, &g_e, &g_f, &g_g, "e0", "e1", "e2").unwrap();
        assert!(represents(&m, &rep, ClassTag::Frame).unwrap());
        assert_eq!(rep.graph().vertex_count(), 2);
        assert_eq!(rep.graph().edge_count(), 7);
    }

    #[test]
    fn gluing_rejects_disagreeing_inputs() {
        let m = uniform(2, 7);
        let g_e = bundle_without(&m, "e0");
        let mut wrong = Multigraph::new();
        let u = wrong.add_vertex("u").unwrap();
        let v = wrong.add_vertex("v").unwrap();
        let w = wrong.add_vertex("w").unwrap();
        for e in 0..m.size() {
            let label = m.label(e);
            if label == "e1" {
                continue;
            }
            if label == "e3" {
                wrong.add_link(label, u, w).unwrap();
            } else {
                wrong.add_link(label, u, v).unwrap();
            }
        }
        let g_f = BiasedRepresentation::fully_unbalanced(wrong);
        let g_g = bundle_without(&m, "e2");
        assert!(matches!(
            glue_three(&m, &g_e, &g_f, &g_g, "e0", "e1", "e2"),
            Err(SearchError::Precondition(_))
        ));
    }

    #[test]
    fn turan_finds_triangles_in_sparse_complements() {
        let mut bare = Multigraph::new();
        for i in 0..11 {
            bare.add_vertex(&alloc::format!("v{i}")).unwrap();
        }
        assert_eq!(turan_triangle(&bare).unwrap(), Some((0, 1, 2)));
        // A path complement still leaves plenty of triangles.
        let mut path = bare.clone();
        for i in 0..10 {
            path.add_link(&alloc::format!("p{i}"), i, i + 1).unwrap();
        }
        assert_eq!(turan_triangle(&path).unwrap(), Some((0, 2, 4)));
    }

    #[test]
    fn turan_reports_none_for_complete_complement() {
        let mut k5 = Multigraph::new();
        for i in 0..5 {
            k5.add_vertex(&alloc::format!("v{i}")).unwrap();
        }
        let mut n = 0;
        for u in 0..5 {
            for v in u + 1..5 {
                k5.add_link(&alloc::format!("e{n}"), u, v).unwrap();
                n += 1;
            }
        }
        assert_eq!(turan_triangle(&k5).unwrap(), None);
    }

    #[test]
    fn turan_rejects_loops_and_parallels() {
        let mut g = Multigraph::new();
        let v = g.add_vertex("v").unwrap();
        g.add_loop("l", v).unwrap();
        assert!(matches!(turan_triangle(&g), Err(SearchError::Precondition(_))));
        let mut h = Multigraph::new();
        let a = h.add_vertex("a").unwrap();
        let b = h.add_vertex("b").unwrap();
        h.add_link("e1", a, b).unwrap();
        h.add_link("e2", a, b).unwrap();
        assert!(matches!(turan_triangle(&h), Err(SearchError::Precondition(_))));
    }
}
