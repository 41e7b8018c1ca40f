//! Verification suites behind `bgmat verify`.
//!
//! Each suite rebuilds independent evidence for one guarantee the library
//! makes: a brute-force rank oracle over every small biased graph, exact
//! decimal recomputation of the closed-form bound table, deterministic random
//! probes of the triangle finder, and cross-checks of the canonicalization
//! rules on their own output. A suite returns named pass/fail checks; the
//! acceptance test and the CLI print one line per suite.

use std::collections::{BTreeMap, BTreeSet};

use bgmat_core::bias::represents;
use bgmat_core::bounds::bound_formulas;
use bgmat_core::canonical::{
    apply_line_placements, canonicalize_frame, canonicalize_quasi, place_line_elements_quasi,
    reconstruct_frame_canonical, CgRule, Placement,
};
use bgmat_core::fixing::{fixing_graph, pendant_lines, pendant_roll_up, FixingError};
use bgmat_core::fixtures::{
    bridged_bundles, disjoint_bundles, disjoint_bundles_shared_loop, handcuffed_line,
    lift_line_with_far_loop, line_with_end_loop, long_line_family, mk4, mk4_rolled_rep,
    multi_line_family, parallel_bundle, pendant_line_graph, pendant_line_with_loop_tail,
    shared_loop_star, triangle_of_lines, two_bundle_star, two_loops_and_link,
};
use bgmat_core::matroid::uniform;
use bgmat_core::multigraph::{iter_mask, Ends, VertexId};
use bgmat_core::quasi::{is_framework, vertex_deleted_closure};
use bgmat_core::search::{
    excluded_minor_scan, find_representations, glue_three, is_excluded_minor, is_member,
    turan_triangle, SearchConfig, SearchError, Verdict,
};
use bgmat_core::{BiasedRepresentation, ClassTag, EdgeId, ElemSet, Matroid, Multigraph};

type EdgeMask = u32;

/// One named verification step.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything one suite verified, in execution order.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &'static str, title: &'static str) -> SuiteReport {
        SuiteReport { suite, title, checks: Vec::new() }
    }

    fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Suite names with one-line descriptions, in the order `verify --suite all`
/// runs them.
pub const SUITES: &[(&str, &str)] = &[
    ("oracle", "frame and lift circuits match a brute-force rank oracle on all small biased graphs"),
    ("u24", "the four-point line is the frame and the lift matroid of the four-edge bundle"),
    ("u24-sum", "two disjoint four-point lines: frame member, lift excluded minor"),
    ("frameworks", "fixture representations are frameworks for their frame and lift matroids"),
    ("roll-up", "every pendant-line roll-up state represents the same matroid"),
    ("fixing", "all representations of each multi-line fixture share one fixing graph"),
    ("reconstruct", "reconstruction equals the minimum-loop representation found by search"),
    ("glue", "three agreeing single-deletion representations glue into a verified whole"),
    ("turan", "sparse complements always leave a triangle"),
    ("bounds", "the bound table matches an independent decimal recomputation"),
    ("cg-rules", "quasi canonicalization satisfies its placement rules on its own output"),
    ("scan", "excluded-minor scans: empty at rank 2, filtered verified finds at rank 3"),
];

pub fn suite_title(name: &str) -> Option<&'static str> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn run_suite(name: &str) -> Option<SuiteReport> {
    Some(match name {
        "oracle" => suite_oracle(),
        "u24" => suite_u24(),
        "u24-sum" => suite_u24_sum(),
        "frameworks" => suite_frameworks(),
        "roll-up" => suite_roll_up(),
        "fixing" => suite_fixing(),
        "reconstruct" => suite_reconstruct(),
        "glue" => suite_glue(),
        "turan" => suite_turan(),
        "bounds" => suite_bounds(),
        "cg-rules" => suite_cg_rules(),
        "scan" => suite_scan(),
        _ => return None,
    })
}

// ---------------------------------------------------------------------------
// Shared helpers.

fn frame_of(rep: &BiasedRepresentation) -> Matroid {
    rep.matroid(ClassTag::Frame).expect("frame is defined").expect("frame circuits are valid")
}

fn lift_of(rep: &BiasedRepresentation) -> Matroid {
    rep.matroid(ClassTag::Lift).expect("lift is defined").expect("lift circuits are valid")
}

/// The graph with one labeled edge removed, vertex names kept.
fn graph_without(g: &Multigraph, label: &str) -> Multigraph {
    let mut out = Multigraph::new();
    for v in 0..g.vertex_count() {
        out.add_vertex(g.vertex_name(v)).expect("copy vertex");
    }
    for e in g.edges() {
        if e.label == label {
            continue;
        }
        match e.ends {
            Ends::Link(u, v) => out.add_link(&e.label, u, v).expect("copy link"),
            Ends::Loop(v) => out.add_loop(&e.label, v).expect("copy loop"),
        };
    }
    out
}

fn loop_count(g: &Multigraph) -> usize {
    g.edges().iter().filter(|e| e.ends.is_loop()).count()
}

/// Two disjoint four-point lines, on labels e0..e3 and f0..f3.
fn four_point_pair() -> Matroid {
    let copy = Matroid::from_labels(
        &["f0", "f1", "f2", "f3"],
        &[
            &["f0", "f1", "f2"],
            &["f0", "f1", "f3"],
            &["f0", "f2", "f3"],
            &["f1", "f2", "f3"],
        ],
    )
    .expect("second line");
    uniform(2, 4).direct_sum(&copy).expect("disjoint labels")
}

/// Endpoint pair of a long line read off its link elements in `g`: all links
/// of the line must sit on one vertex pair, returned with the smaller id
/// first.
fn line_endpoints_in(g: &Multigraph, m: &Matroid, line: ElemSet) -> Result<(VertexId, VertexId), String> {
    let mut pair: Option<(VertexId, VertexId)> = None;
    for e in iter_mask(line) {
        let edge = g
            .edge_by_label(m.label(e))
            .ok_or_else(|| format!("element {} missing from the graph", m.label(e)))?;
        if let Ends::Link(u, v) = g.edge(edge).ends {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            match pair {
                None => pair = Some((a, b)),
                Some(p) if p == (a, b) => {}
                Some(p) => {
                    return Err(format!(
                        "line links split over vertex pairs {p:?} and {:?}",
                        (a, b)
                    ))
                }
            }
        }
    }
    pair.ok_or_else(|| "line has no link element".into())
}

/// CG rule implied by where an element physically sits relative to the line
/// endpoints (a, b): isolated loop, loop at b, loop at a, or an a-b link.
fn rule_of_position(g: &Multigraph, edge: EdgeId, a: VertexId, b: VertexId) -> Result<CgRule, String> {
    match g.edge(edge).ends {
        Ends::Link(u, v) => {
            let (x, y) = if u < v { (u, v) } else { (v, u) };
            if (x, y) == (a, b) {
                Ok(CgRule::Cg4)
            } else {
                Err(format!("link sits on {x}-{y}, not on the line endpoints"))
            }
        }
        Ends::Loop(v) if v == b => Ok(CgRule::Cg2),
        Ends::Loop(v) if v == a => Ok(CgRule::Cg3),
        Ends::Loop(v) => {
            if g.edges_at(v) == (1 << edge) {
                Ok(CgRule::Cg1)
            } else {
                Err(format!("loop at {v} shares its vertex but avoids both endpoints"))
            }
        }
    }
}

fn rule_of_placement(p: Placement, a: VertexId, b: VertexId) -> Result<CgRule, String> {
    match p {
        Placement::IsolatedLoop => Ok(CgRule::Cg1),
        Placement::Loop(v) if v == b => Ok(CgRule::Cg2),
        Placement::Loop(v) if v == a => Ok(CgRule::Cg3),
        Placement::Loop(v) => Err(format!("loop placed at {v}, off both endpoints")),
        Placement::Link(..) => Ok(CgRule::Cg4),
    }
}

/// Rule from closure membership at the two endpoints.
fn rule_of_closures(in_a: bool, in_b: bool) -> CgRule {
    match (in_a, in_b) {
        (true, true) => CgRule::Cg1,
        (true, false) => CgRule::Cg2,
        (false, true) => CgRule::Cg3,
        (false, false) => CgRule::Cg4,
    }
}

// ---------------------------------------------------------------------------
// Deterministic random bits for the probe suites.

/// SplitMix64; good enough for test-case generation and fully reproducible.
struct SplitMix64(u64);

impl SplitMix64 {
    fn new(seed: u64) -> SplitMix64 {
        SplitMix64(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

// ---------------------------------------------------------------------------
// Decimal big integers for the bounds oracle. Deliberately written from
// scratch: the table is checked against arithmetic sharing no code with the
// library's big-integer dependency.

const DEC_BASE: u64 = 1_000_000_000;

/// Unsigned big integer, little-endian base-10^9 limbs, no leading zero limb
/// except for the value zero itself.
#[derive(Clone, PartialEq, Eq)]
struct Dec(Vec<u32>);

impl Dec {
    fn from_usize(n: usize) -> Dec {
        let mut n = n as u64;
        let mut limbs = Vec::new();
        loop {
            limbs.push((n % DEC_BASE) as u32);
            n /= DEC_BASE;
            if n == 0 {
                break;
            }
        }
        Dec(limbs)
    }

    fn mul(&self, other: &Dec) -> Dec {
        let mut acc = vec![0u64; self.0.len() + other.0.len()];
        for (i, &a) in self.0.iter().enumerate() {
            let mut carry = 0u64;
            for (j, &b) in other.0.iter().enumerate() {
                let cur = acc[i + j] + u64::from(a) * u64::from(b) + carry;
                acc[i + j] = cur % DEC_BASE;
                carry = cur / DEC_BASE;
            }
            let mut k = i + other.0.len();
            while carry > 0 {
                let cur = acc[k] + carry;
                acc[k] = cur % DEC_BASE;
                carry = cur / DEC_BASE;
                k += 1;
            }
        }
        let mut limbs: Vec<u32> = acc.into_iter().map(|x| x as u32).collect();
        while limbs.len() > 1 && *limbs.last().expect("nonempty") == 0 {
            limbs.pop();
        }
        Dec(limbs)
    }

    fn mul_usize(&self, k: usize) -> Dec {
        self.mul(&Dec::from_usize(k))
    }

    fn pow(&self, e: usize) -> Dec {
        let mut acc = Dec::from_usize(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Self minus one; the value must be positive.
    fn sub_one(&self) -> Dec {
        let mut limbs = self.0.clone();
        for limb in limbs.iter_mut() {
            if *limb > 0 {
                *limb -= 1;
                break;
            }
            *limb = (DEC_BASE - 1) as u32;
        }
        while limbs.len() > 1 && *limbs.last().expect("nonempty") == 0 {
            limbs.pop();
        }
        Dec(limbs)
    }

    fn add_one(&self) -> Dec {
        let mut limbs = self.0.clone();
        for limb in limbs.iter_mut() {
            if u64::from(*limb) + 1 < DEC_BASE {
                *limb += 1;
                return Dec(limbs);
            }
            *limb = 0;
        }
        limbs.push(1);
        Dec(limbs)
    }

    fn to_decimal(&self) -> String {
        let mut out = self.0.last().expect("nonempty").to_string();
        for limb in self.0.iter().rev().skip(1) {
            out.push_str(&format!("{limb:09}"));
        }
        out
    }
}

fn choose(n: usize, k: usize) -> usize {
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The eighteen displayed closed forms, recomputed in decimal.
fn dec_bound_table(r: usize) -> Vec<(&'static str, Dec)> {
    let c2 = choose(r, 2);
    let d2 = choose(2 * r, 2);
    let dec = Dec::from_usize;
    let frame_coarse = dec(r).pow(5 * r * r);
    let frame_line = frame_coarse.mul_usize(10);
    let lift_coarse = dec(r).pow(6 * r * r);
    let lift_line = lift_coarse.mul_usize(6);
    let quasi = dec(d2).pow(d2).mul(&dec(d2 + 2 * r).pow(5 * d2));
    let quasi_base = dec(3 * r * r);
    let sharp = if c2 == 0 { dec(1) } else { dec(c2 - 1).pow(5 * c2) };
    vec![
        ("frame-canonical", dec(c2 + r).pow(5 * c2)),
        ("frame-canonical-coarse", frame_coarse.clone()),
        ("frame-line-length", frame_line.clone()),
        ("frame-size", frame_line.sub_one().mul_usize(c2).add_one()),
        ("frame-size-coarse", dec(r).pow(5 * r * r + 2).mul_usize(5)),
        ("lift-canonical-many-lines", dec(c2).pow(6 * c2)),
        ("lift-canonical-coarse", lift_coarse),
        ("lift-canonical-one-line", dec(c2).pow(5 * c2)),
        ("lift-canonical-one-line-sharp", sharp),
        ("lift-line-length", lift_line.clone()),
        ("lift-size", lift_line.sub_one().mul_usize(c2).add_one()),
        ("lift-size-coarse", dec(r).pow(6 * r * r + 2).mul_usize(3)),
        ("quasi-canonical", quasi.clone()),
        ("quasi-canonical-coarse", quasi_base.pow(12 * r * r)),
        ("quasi-line-length", quasi.mul_usize(8 * r + 2)),
        ("quasi-line-length-coarse", quasi_base.pow(12 * r * r + 1)),
        ("quasi-size", quasi.mul_usize(8 * r + 2).mul_usize(d2)),
        ("quasi-size-coarse", quasi_base.pow(12 * r * r + 2)),
    ]
}

// ---------------------------------------------------------------------------
// Suite: oracle. Enumerate every multigraph with at most 4 vertices and 7
// edges (no isolated vertices: neither circuits nor the rank of an edge set
// can see them), every bias signature closed under the theta property, and
// compare frame and lift circuits against the minimal dependent sets of the
// rank formulas, recomputed here from first principles.

/// One multigraph per isomorphism class. Graphs are generated as multisets
/// over the vertex-pair slots and deduplicated by canonical label.
fn small_multigraphs(max_v: usize, max_e: usize) -> Vec<Multigraph> {
    let mut out = vec![Multigraph::new()];
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    for n in 1..=max_v {
        let mut slots: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i..n {
                slots.push((i, j));
            }
        }
        let mut counts = vec![0usize; slots.len()];
        fill_slot(0, max_e, &mut counts, &slots, n, &mut seen, &mut out);
    }
    out
}

fn fill_slot(
    slot: usize,
    left: usize,
    counts: &mut Vec<usize>,
    slots: &[(usize, usize)],
    n: usize,
    seen: &mut BTreeSet<Vec<u8>>,
    out: &mut Vec<Multigraph>,
) {
    if slot == slots.len() {
        let total: usize = counts.iter().sum();
        if total == 0 {
            return;
        }
        let mut touched = vec![false; n];
        for (s, &c) in counts.iter().enumerate() {
            if c > 0 {
                touched[slots[s].0] = true;
                touched[slots[s].1] = true;
            }
        }
        if touched.iter().any(|&t| !t) {
            return;
        }
        let mut g = Multigraph::new();
        for v in 0..n {
            g.add_vertex(&format!("v{v}")).expect("vertex");
        }
        let mut label = 0usize;
        for (s, &c) in counts.iter().enumerate() {
            let (i, j) = slots[s];
            for _ in 0..c {
                if i == j {
                    g.add_loop(&format!("e{label}"), i).expect("loop");
                } else {
                    g.add_link(&format!("e{label}"), i, j).expect("link");
                }
                label += 1;
            }
        }
        if seen.insert(g.canonical_label()) {
            out.push(g);
        }
        return;
    }
    for c in 0..=left {
        counts[slot] = c;
        fill_slot(slot + 1, left - c, counts, slots, n, seen, out);
    }
    counts[slot] = 0;
}

/// Brute-force cycle test: nonempty, connected, every touched vertex of
/// degree exactly two, a loop contributing two.
fn oracle_is_cycle(g: &Multigraph, x: EdgeMask) -> bool {
    if x == 0 {
        return false;
    }
    let mut deg = vec![0usize; g.vertex_count()];
    for e in iter_mask(x) {
        match g.edge(e).ends {
            Ends::Loop(v) => deg[v] += 2,
            Ends::Link(u, v) => {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    if deg.iter().any(|&d| d != 0 && d != 2) {
        return false;
    }
    oracle_components(g, x).1 == 1
}

/// Component assignment of the touched vertices under `x`: per-vertex root
/// (usize::MAX when untouched) and the component count.
fn oracle_components(g: &Multigraph, x: EdgeMask) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut touched = vec![false; n];
    for e in iter_mask(x) {
        let (u, v) = match g.edge(e).ends {
            Ends::Loop(v) => (v, v),
            Ends::Link(u, v) => (u, v),
        };
        touched[u] = true;
        touched[v] = true;
        let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut roots = Vec::new();
    let mut assignment = vec![usize::MAX; n];
    for v in 0..n {
        if touched[v] {
            let r = root(&mut parent, v);
            assignment[v] = r;
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    (assignment, roots.len())
}

fn oracle_cycles(g: &Multigraph) -> Vec<EdgeMask> {
    let e = g.edge_count();
    let mut out = Vec::new();
    for x in 1u32..(1u32 << e) {
        if oracle_is_cycle(g, x) {
            out.push(x);
        }
    }
    out
}

/// Sorted index triples {i, j, k} whose three cycles form a theta: the third
/// is the symmetric difference of the other two and the union is a connected
/// loop-free subgraph with exactly two degree-3 vertices, the rest degree 2.
fn oracle_theta_triples(g: &Multigraph, cycles: &[EdgeMask]) -> Vec<[usize; 3]> {
    let mut set: BTreeSet<[usize; 3]> = BTreeSet::new();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            let third = cycles[i] ^ cycles[j];
            let Ok(k) = cycles.binary_search(&third) else { continue };
            let union = cycles[i] | cycles[j];
            let mut deg = vec![0usize; g.vertex_count()];
            let mut loopy = false;
            for e in iter_mask(union) {
                match g.edge(e).ends {
                    Ends::Loop(_) => loopy = true,
                    Ends::Link(u, v) => {
                        deg[u] += 1;
                        deg[v] += 1;
                    }
                }
            }
            if loopy
                || deg.iter().filter(|&&d| d == 3).count() != 2
                || deg.iter().any(|&d| d != 0 && d != 2 && d != 3)
                || oracle_components(g, union).1 != 1
            {
                continue;
            }
            let mut t = [i, j, k];
            t.sort_unstable();
            set.insert(t);
        }
    }
    set.into_iter().collect()
}

/// Every balance assignment closed under the theta property, as bitmasks over
/// the cycle indices. Loops are never balanced. Enumerated by depth-first
/// assignment with early pruning on completed triples.
fn theta_closed_signatures(cycles: &[EdgeMask], triples: &[[usize; 3]]) -> Vec<u64> {
    let eligible: Vec<usize> =
        (0..cycles.len()).filter(|&i| cycles[i].count_ones() > 1).collect();
    let mut out = Vec::new();
    let mut balanced = 0u64;
    let mut decided = 0u64;
    for &i in (0..cycles.len()).collect::<Vec<_>>().iter() {
        if cycles[i].count_ones() == 1 {
            decided |= 1 << i;
        }
    }
    descend(0, &eligible, triples, &mut balanced, &mut decided, &mut out);
    out
}

fn violates(triples: &[[usize; 3]], balanced: u64, decided: u64) -> bool {
    triples.iter().any(|t| {
        let all_decided = t.iter().all(|&i| decided & (1 << i) != 0);
        all_decided && t.iter().filter(|&&i| balanced & (1 << i) != 0).count() == 2
    })
}

fn descend(
    pos: usize,
    eligible: &[usize],
    triples: &[[usize; 3]],
    balanced: &mut u64,
    decided: &mut u64,
    out: &mut Vec<u64>,
) {
    if pos == eligible.len() {
        out.push(*balanced);
        return;
    }
    let i = eligible[pos];
    *decided |= 1 << i;
    for pick in [false, true] {
        if pick {
            *balanced |= 1 << i;
        } else {
            *balanced &= !(1 << i);
        }
        if !violates(triples, *balanced, *decided) {
            descend(pos + 1, eligible, triples, balanced, decided, out);
        }
    }
    *balanced &= !(1 << i);
    *decided &= !(1 << i);
}

/// Rank of every edge subset by the displayed formulas, indexed by mask.
/// Frame: |V(X)| - (number of components without an unbalanced cycle).
/// Lift: |V(X)| - c(X), plus one if X holds an unbalanced cycle.
fn oracle_rank_table(
    g: &Multigraph,
    cycles: &[EdgeMask],
    balanced: u64,
    class: ClassTag,
) -> Vec<usize> {
    let e = g.edge_count();
    let mut table = vec![0usize; 1 << e];
    for x in 0..(1u32 << e) as usize {
        let x = x as EdgeMask;
        let (assignment, comps) = oracle_components(g, x);
        let vertices = assignment.iter().filter(|&&a| a != usize::MAX).count();
        let mut unbalanced_roots: BTreeSet<usize> = BTreeSet::new();
        let mut delta = 0usize;
        for (i, &c) in cycles.iter().enumerate() {
            if c & !x == 0 && balanced & (1 << i) == 0 {
                delta = 1;
                let probe = iter_mask(c).next().expect("cycle is nonempty");
                let (u, _) = match g.edge(probe).ends {
                    Ends::Loop(v) => (v, v),
                    Ends::Link(u, v) => (u, v),
                };
                unbalanced_roots.insert(assignment[u]);
            }
        }
        table[x as usize] = match class {
            ClassTag::Frame => vertices - (comps - unbalanced_roots.len()),
            ClassTag::Lift => vertices - comps + delta,
            ClassTag::Quasi => unreachable!("no quasi rank formula"),
        };
    }
    table
}

/// Minimal dependent sets of a rank table: dependent, with every
/// single-element deletion independent.
fn minimal_dependent(table: &[usize], e: usize) -> Vec<EdgeMask> {
    let mut out = Vec::new();
    for x in 1..(1u32 << e) as usize {
        let size = (x as u32).count_ones() as usize;
        if table[x] >= size {
            continue;
        }
        let minimal = iter_mask(x as EdgeMask)
            .all(|i| table[x & !(1usize << i)] == size - 1);
        if minimal {
            out.push(x as EdgeMask);
        }
    }
    out
}

/// Bell numbers by the Bell-triangle recurrence; the independent count of
/// theta-closed signatures on a bundle of n parallel links.
fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 1..=n {
        let mut next = vec![*row.last().expect("nonempty")];
        for &x in &row {
            let last = *next.last().expect("nonempty");
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

fn suite_oracle() -> SuiteReport {
    let mut r = SuiteReport::new("oracle", suite_title("oracle").expect("registered"));
    let graphs = small_multigraphs(4, 7);
    r.check(
        "graph catalog is substantial and duplicate-free",
        graphs.len() > 1000,
        format!("{} multigraphs with <= 4 vertices, <= 7 edges, up to isomorphism", graphs.len()),
    );

    // The seven-link bundle must be in the catalog, and its theta-closed
    // signatures are in bijection with set partitions of the links: the
    // count must be the seventh Bell number.
    let bundle7 = parallel_bundle(7);
    let in_catalog =
        graphs.iter().any(|g| g.canonical_label() == bundle7.graph().canonical_label());
    r.check("the seven-link bundle appears in the catalog", in_catalog, String::new());
    let b_cycles = oracle_cycles(bundle7.graph());
    let b_triples = oracle_theta_triples(bundle7.graph(), &b_cycles);
    let b_sigs = theta_closed_signatures(&b_cycles, &b_triples);
    r.check(
        "bundle signature count equals the Bell number",
        b_sigs.len() as u64 == bell(7),
        format!("{} signatures, Bell(7) = {}", b_sigs.len(), bell(7)),
    );

    let mut graphs_done = 0usize;
    let mut signatures_done = 0usize;
    let mut frame_bad: Option<String> = None;
    let mut lift_bad: Option<String> = None;
    let mut axiom_bad: Option<String> = None;
    let mut bias_rejected: Option<String> = None;
    let mut crosscheck_bad: Option<String> = None;
    let mut validated: BTreeSet<Vec<ElemSet>> = BTreeSet::new();

    for g in &graphs {
        let cycles = oracle_cycles(g);
        let triples = oracle_theta_triples(g, &cycles);
        let signatures = theta_closed_signatures(&cycles, &triples);

        // Independent cross-check of the signature enumeration itself on
        // graphs with few cycles: filter all subsets directly.
        if cycles.len() <= 8 && crosscheck_bad.is_none() {
            let eligible: u64 = (0..cycles.len())
                .filter(|&i| cycles[i].count_ones() > 1)
                .fold(0, |acc, i| acc | (1 << i));
            let mut brute: Vec<u64> = Vec::new();
            let mut sub = 0u64;
            loop {
                let full = !0u64;
                if !violates(&triples, sub, full) {
                    brute.push(sub);
                }
                if sub == eligible {
                    break;
                }
                sub = (sub.wrapping_sub(eligible)) & eligible;
            }
            let mut fast = signatures.clone();
            fast.sort_unstable();
            brute.sort_unstable();
            if fast != brute {
                crosscheck_bad = Some(format!(
                    "{} enumerated vs {} brute-forced on a {}-cycle graph",
                    fast.len(),
                    brute.len(),
                    cycles.len()
                ));
            }
        }

        for &sig in &signatures {
            let balanced_masks: Vec<EdgeMask> = (0..cycles.len())
                .filter(|&i| sig & (1 << i) != 0)
                .map(|i| cycles[i])
                .collect();
            let rep = match BiasedRepresentation::new(g.clone(), balanced_masks) {
                Ok(rep) => rep,
                Err(err) => {
                    if bias_rejected.is_none() {
                        bias_rejected =
                            Some(format!("theta-closed signature rejected: {err}"));
                    }
                    continue;
                }
            };
            for class in [ClassTag::Frame, ClassTag::Lift] {
                let table = oracle_rank_table(g, &cycles, sig, class);
                let mut expected = minimal_dependent(&table, g.edge_count());
                expected.sort_unstable();
                let mut got = match class {
                    ClassTag::Frame => rep.frame_circuits(),
                    _ => rep.lift_circuits(),
                };
                got.sort_unstable();
                if got != expected {
                    let slot = match class {
                        ClassTag::Frame => &mut frame_bad,
                        _ => &mut lift_bad,
                    };
                    if slot.is_none() {
                        *slot = Some(format!(
                            "{} edges, signature {sig:#b}: {} circuits vs {} from the rank oracle",
                            g.edge_count(),
                            got.len(),
                            expected.len()
                        ));
                    }
                    continue;
                }
                if axiom_bad.is_none() && !validated.contains(&got) {
                    match rep.matroid(class) {
                        Some(Ok(m)) => match m.validate() {
                            Ok(()) => {
                                validated.insert(got);
                            }
                            Err(err) => axiom_bad = Some(format!("{err}")),
                        },
                        other => {
                            axiom_bad = Some(format!(
                                "matroid construction failed: {:?}",
                                other.map(|res| res.err())
                            ))
                        }
                    }
                }
            }
            signatures_done += 1;
        }
        graphs_done += 1;
    }

    r.check(
        "signature enumeration matches the brute-force filter",
        crosscheck_bad.is_none(),
        crosscheck_bad.unwrap_or_default(),
    );
    r.check(
        "every theta-closed signature is accepted",
        bias_rejected.is_none(),
        bias_rejected.unwrap_or_default(),
    );
    r.check(
        "frame circuits equal the rank-formula minimal dependent sets",
        frame_bad.is_none(),
        frame_bad.unwrap_or_else(|| {
            format!("{graphs_done} graphs, {signatures_done} signatures")
        }),
    );
    r.check(
        "lift circuits equal the rank-formula minimal dependent sets",
        lift_bad.is_none(),
        lift_bad.unwrap_or_else(|| {
            format!("{graphs_done} graphs, {signatures_done} signatures")
        }),
    );
    r.check(
        "every circuit family passes the circuit axioms",
        axiom_bad.is_none(),
        axiom_bad.unwrap_or_else(|| format!("{} distinct families validated", validated.len())),
    );
    r
}

// ---------------------------------------------------------------------------
// Suite: u24.

fn suite_u24() -> SuiteReport {
    let mut r = SuiteReport::new("u24", suite_title("u24").expect("registered"));
    let rep = parallel_bundle(4);
    // The four-point line on the bundle's own edge labels: every triple of
    // elements is a circuit.
    let m = Matroid::from_labels(
        &["e1", "e2", "e3", "e4"],
        &[
            &["e1", "e2", "e3"],
            &["e1", "e2", "e4"],
            &["e1", "e3", "e4"],
            &["e2", "e3", "e4"],
        ],
    )
    .expect("four-point line");
    for class in [ClassTag::Frame, ClassTag::Lift] {
        let ok = matches!(represents(&m, &rep, class), Ok(true));
        r.check(
            &format!("the bundle represents the four-point line as {class:?}"),
            ok,
            String::new(),
        );
        let circuits = match class {
            ClassTag::Frame => rep.frame_circuits(),
            _ => rep.lift_circuits(),
        };
        let mut sorted = circuits.clone();
        sorted.sort_unstable();
        let expected: Vec<EdgeMask> = (0u32..16).filter(|x| x.count_ones() == 3).collect();
        r.check(
            &format!("{class:?} circuits are exactly the four triples"),
            sorted == expected,
            format!("{} circuits", sorted.len()),
        );
    }
    let built = frame_of(&rep);
    r.check(
        "the frame matroid equals the four-point line on the nose",
        built.labels() == m.labels() && built.circuits() == m.circuits(),
        String::new(),
    );
    r.check(
        "the frame matroid has the isomorphism type of the uniform line",
        built.canonical_form() == uniform(2, 4).canonical_form(),
        String::new(),
    );
    r
}

// ---------------------------------------------------------------------------
// Suite: u24-sum.

fn suite_u24_sum() -> SuiteReport {
    let mut r = SuiteReport::new("u24-sum", suite_title("u24-sum").expect("registered"));
    let m = four_point_pair();
    let cfg = SearchConfig::default();

    match is_member(&m, ClassTag::Frame, &cfg) {
        Ok(cert) => {
            r.check(
                "frame membership verdict is member",
                cert.verdict == Verdict::Member,
                format!("verdict {}, explored {}", cert.verdict, cert.explored),
            );
            let witness_ok = cert
                .witness
                .as_ref()
                .map(|w| matches!(represents(&m, w, ClassTag::Frame), Ok(true)))
                .unwrap_or(false);
            r.check("the frame witness is re-verified against the matroid", witness_ok, String::new());
        }
        Err(err) => r.check("frame membership verdict is member", false, format!("{err}")),
    }

    let cfg5 = SearchConfig { max_vertices: Some(5), ..SearchConfig::default() };
    match is_member(&m, ClassTag::Lift, &cfg5) {
        Ok(cert) => r.check(
            "lift membership verdict is non-member under five vertices",
            cert.verdict == Verdict::NonMember,
            format!("verdict {}, explored {}, pruned {}", cert.verdict, cert.explored, cert.pruned),
        ),
        Err(err) => r.check(
            "lift membership verdict is non-member under five vertices",
            false,
            format!("{err}"),
        ),
    }

    match is_excluded_minor(&m, ClassTag::Lift, &cfg5) {
        Ok(report) => {
            r.check(
                "the sum is a lift excluded minor",
                report.excluded == Some(true),
                format!("excluded {:?}, self {:?}", report.excluded, report.self_verdict),
            );
            r.check(
                "no structural pre-filter fired for lift",
                report.prefilter.is_none(),
                format!("{:?}", report.prefilter),
            );
            let all_minors = report.minors.len() == 16
                && report.minors.iter().all(|c| c.verdict == Verdict::Member);
            r.check(
                "all sixteen single-element minors are lift members",
                all_minors,
                format!("{} minor verdicts", report.minors.len()),
            );
        }
        Err(err) => r.check("the sum is a lift excluded minor", false, format!("{err}")),
    }
    r
}

// ---------------------------------------------------------------------------
// Suite: frameworks.

/// Every fixture representation, including the families, deduplicated by
/// labeled graph.
fn fixture_corpus() -> Vec<(String, BiasedRepresentation)> {
    let mut out: Vec<(String, BiasedRepresentation)> = vec![
        ("bundle4".into(), parallel_bundle(4)),
        ("two-loops-and-link".into(), two_loops_and_link()),
        ("line-with-end-loop".into(), line_with_end_loop()),
        ("lift-line-with-far-loop".into(), lift_line_with_far_loop()),
        ("handcuffed-line".into(), handcuffed_line()),
        ("disjoint-bundles-4-4".into(), disjoint_bundles(4, 4)),
        ("disjoint-bundles-shared-loop-4-4".into(), disjoint_bundles_shared_loop(4, 4)),
        ("pendant-line-with-loop-tail".into(), pendant_line_with_loop_tail()),
        ("rolled-mk4".into(), mk4_rolled_rep()),
    ];
    let mut seen: BTreeSet<Vec<u8>> =
        out.iter().map(|(_, rep)| rep.graph().labeled_canonical()).collect();
    for (name, rep) in long_line_family().into_iter().chain(multi_line_family()) {
        if seen.insert(rep.graph().labeled_canonical()) {
            out.push((name, rep));
        }
    }
    out
}

fn suite_frameworks() -> SuiteReport {
    let mut r = SuiteReport::new("frameworks", suite_title("frameworks").expect("registered"));
    let corpus = fixture_corpus();
    r.check(
        "the corpus covers every fixture shape",
        corpus.len() >= 20,
        format!("{} distinct representations", corpus.len()),
    );
    for (name, rep) in &corpus {
        for class in [ClassTag::Frame, ClassTag::Lift] {
            let m = match rep.matroid(class) {
                Some(Ok(m)) => m,
                other => {
                    r.check(
                        &format!("{name}: {class} matroid"),
                        false,
                        format!("{:?}", other.map(|res| res.err())),
                    );
                    continue;
                }
            };
            let diag = is_framework(rep.graph(), &m);
            r.check(&format!("{name}: {class} framework"), diag.valid, format!("{diag}"));
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Suite: roll-up.

fn suite_roll_up() -> SuiteReport {
    let mut r = SuiteReport::new("roll-up", suite_title("roll-up").expect("registered"));
    let fixtures: Vec<(&str, BiasedRepresentation)> = vec![
        ("pendant line", pendant_line_graph()),
        ("two-bundle star", two_bundle_star(6, 6)),
        ("pendant line with loop tail", pendant_line_with_loop_tail()),
    ];
    for (name, rep) in &fixtures {
        let m = frame_of(rep);
        let lines = match pendant_lines(&m) {
            Ok(lines) => lines,
            Err(err) => {
                r.check(&format!("{name}: pendant lines"), false, format!("{err}"));
                continue;
            }
        };
        let pendant: Vec<ElemSet> = lines
            .iter()
            .filter(|(l, is_pendant)| *is_pendant && l.long)
            .map(|(l, _)| l.elements)
            .collect();
        r.check(
            &format!("{name}: has a pendant long line"),
            !pendant.is_empty(),
            format!("{} pendant long lines", pendant.len()),
        );
        for &line in &pendant {
            let labels: Vec<String> =
                iter_mask(line).map(|e| m.label(e).to_string()).collect();
            let k = labels.len();
            let mut states: Vec<BiasedRepresentation> = vec![rep.clone()];
            let mut roll_err: Option<String> = None;
            for label in &labels {
                match pendant_roll_up(rep, &m, line, label) {
                    Ok(rolled) => states.push(rolled),
                    Err(err) => {
                        roll_err = Some(format!("rolling {label}: {err}"));
                        break;
                    }
                }
            }
            r.check(
                &format!("{name}: all {} single roll-ups succeed", k),
                roll_err.is_none() && states.len() == k + 1,
                roll_err.unwrap_or_default(),
            );
            let all_represent = states
                .iter()
                .all(|s| matches!(represents(&m, s, ClassTag::Frame), Ok(true)));
            r.check(
                &format!("{name}: all {} states represent the same matroid", k + 1),
                all_represent,
                String::new(),
            );
            let distinct: BTreeSet<Vec<u8>> =
                states.iter().map(|s| s.graph().labeled_canonical()).collect();
            r.check(
                &format!("{name}: the {} states are pairwise distinct graphs", k + 1),
                distinct.len() == states.len(),
                format!("{} distinct labeled graphs", distinct.len()),
            );
        }
    }

    // Only one element of a line may sit rolled up at a time: a second
    // roll-up must be refused, because two loops at the pendant vertex would
    // form a two-element circuit the matroid does not have.
    let rep = pendant_line_graph();
    let m = frame_of(&rep);
    let line = m
        .long_lines()
        .first()
        .map(|l| l.elements)
        .expect("pendant fixture has a long line");
    let once = pendant_roll_up(&rep, &m, line, "l1").expect("first roll-up");
    let twice = pendant_roll_up(&once, &m, line, "l2");
    r.check(
        "a second roll-up on the same line is refused",
        matches!(twice, Err(FixingError::PendantLoopPresent(_))),
        format!("{twice:?}"),
    );
    r
}

// ---------------------------------------------------------------------------
// Suite: fixing.

fn suite_fixing() -> SuiteReport {
    let mut r = SuiteReport::new("fixing", suite_title("fixing").expect("registered"));
    let family = multi_line_family();
    r.check(
        "at least ten fixtures with two or more long lines",
        family.len() >= 10,
        format!("{} fixtures", family.len()),
    );
    let cfg = SearchConfig::default();
    for (name, rep) in &family {
        let m = frame_of(rep);
        r.check(
            &format!("{name}: two or more long lines"),
            m.long_lines().len() >= 2,
            format!("{} long lines", m.long_lines().len()),
        );
        let expected = match fixing_graph(rep, &m) {
            Ok(fg) => fg.graph.canonical_label(),
            Err(err) => {
                r.check(&format!("{name}: fixing graph"), false, format!("{err}"));
                continue;
            }
        };
        let reps = match find_representations(&m, ClassTag::Frame, &cfg) {
            Ok(reps) => reps,
            Err(err) => {
                r.check(&format!("{name}: search"), false, format!("{err}"));
                continue;
            }
        };
        let self_found = reps
            .iter()
            .any(|f| f.graph().labeled_canonical() == rep.graph().labeled_canonical());
        r.check(
            &format!("{name}: search rediscovers the fixture"),
            self_found,
            format!("{} representations", reps.len()),
        );
        let mut agree = true;
        let mut detail = String::new();
        for found in &reps {
            match fixing_graph(found, &m) {
                Ok(fg) if fg.graph.canonical_label() == expected => {}
                Ok(_) => {
                    agree = false;
                    detail = "a representation has a different fixing graph".into();
                    break;
                }
                Err(err) => {
                    agree = false;
                    detail = format!("{err}");
                    break;
                }
            }
        }
        r.check(
            &format!("{name}: one fixing graph across {} representations", reps.len()),
            agree,
            detail,
        );
    }
    r
}

// ---------------------------------------------------------------------------
// Suite: reconstruct.

fn suite_reconstruct() -> SuiteReport {
    let mut r =
        SuiteReport::new("reconstruct", suite_title("reconstruct").expect("registered"));
    let fixtures: Vec<(&str, BiasedRepresentation)> = vec![
        ("pendant line", pendant_line_graph()),
        ("two-bundle star", two_bundle_star(6, 6)),
        ("shared-loop star", shared_loop_star(6, 6)),
        ("bridged bundles", bridged_bundles(6, 6)),
        ("triangle of lines", triangle_of_lines()),
    ];
    let cfg = SearchConfig::default();
    for (name, rep) in &fixtures {
        let m = frame_of(rep);
        let spans = match reconstruct_frame_canonical(&m) {
            Ok(spans) => spans,
            Err(err) => {
                r.check(&format!("{name}: reconstruction"), false, format!("{err}"));
                continue;
            }
        };
        r.check(
            &format!("{name}: reconstruction produced spans"),
            !spans.is_empty(),
            format!("{} spans", spans.len()),
        );
        for (i, span) in spans.iter().enumerate() {
            let n = m.restrict(span.span);
            let canon = span.rep.graph().labeled_canonical();
            let reps = match find_representations(&n, ClassTag::Frame, &cfg) {
                Ok(reps) => reps,
                Err(err) => {
                    r.check(&format!("{name}: span {i} search"), false, format!("{err}"));
                    continue;
                }
            };
            let min_loops =
                reps.iter().map(|f| loop_count(f.graph())).min().unwrap_or(usize::MAX);
            let minimal: BTreeSet<Vec<u8>> = reps
                .iter()
                .filter(|f| loop_count(f.graph()) == min_loops)
                .map(|f| f.graph().labeled_canonical())
                .collect();
            r.check(
                &format!("{name}: span {i} minimum-loop representation is unique"),
                minimal.len() == 1,
                format!(
                    "{} representations, {} with the minimum of {min_loops} loops",
                    reps.len(),
                    minimal.len()
                ),
            );
            r.check(
                &format!("{name}: span {i} reconstruction equals the search minimum"),
                minimal.contains(&canon),
                String::new(),
            );
            let mut reduced = true;
            let mut detail = String::new();
            for found in &reps {
                match canonicalize_frame(found, &n) {
                    Ok(report) if report.rep.graph().labeled_canonical() == canon => {}
                    Ok(_) => {
                        reduced = false;
                        detail = "a representation rolls down to a different graph".into();
                        break;
                    }
                    Err(err) => {
                        reduced = false;
                        detail = format!("{err}");
                        break;
                    }
                }
            }
            r.check(
                &format!("{name}: span {i} all representations roll down to it"),
                reduced,
                detail,
            );
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Suite: glue.

fn suite_glue() -> SuiteReport {
    let mut r = SuiteReport::new("glue", suite_title("glue").expect("registered"));
    for n in [7usize, 8, 9] {
        let m = uniform(2, n);
        let mut g = Multigraph::new();
        let u = g.add_vertex("u").expect("u");
        let v = g.add_vertex("v").expect("v");
        for i in 0..n {
            g.add_link(&format!("e{i}"), u, v).expect("bundle link");
        }
        let inputs: Vec<BiasedRepresentation> = ["e0", "e1", "e2"]
            .iter()
            .map(|e| BiasedRepresentation::fully_unbalanced(graph_without(&g, e)))
            .collect();
        match glue_three(&m, &inputs[0], &inputs[1], &inputs[2], "e0", "e1", "e2") {
            Ok(glued) => {
                r.check(
                    &format!("{n}-point line: glued graph is verified"),
                    matches!(represents(&m, &glued, ClassTag::Frame), Ok(true)),
                    String::new(),
                );
                r.check(
                    &format!("{n}-point line: glued graph is the full bundle"),
                    glued.graph().labeled_canonical()
                        == BiasedRepresentation::fully_unbalanced(g.clone())
                            .graph()
                            .labeled_canonical(),
                    String::new(),
                );
            }
            Err(err) => {
                r.check(&format!("{n}-point line: gluing"), false, format!("{err}"))
            }
        }
    }

    let rep = two_bundle_star(7, 6);
    let m = frame_of(&rep);
    let inputs: Vec<BiasedRepresentation> = ["a1", "a2", "a3"]
        .iter()
        .map(|e| BiasedRepresentation::fully_unbalanced(graph_without(rep.graph(), e)))
        .collect();
    match glue_three(&m, &inputs[0], &inputs[1], &inputs[2], "a1", "a2", "a3") {
        Ok(glued) => {
            r.check(
                "rank-3 star: glued graph is verified",
                matches!(represents(&m, &glued, ClassTag::Frame), Ok(true)),
                String::new(),
            );
            r.check(
                "rank-3 star: gluing rebuilds the fixture",
                glued.graph().labeled_canonical() == rep.graph().labeled_canonical(),
                String::new(),
            );
        }
        Err(err) => r.check("rank-3 star: gluing", false, format!("{err}")),
    }

    let non_collinear = glue_three(&m, &inputs[0], &inputs[1], &inputs[2], "a1", "a2", "b1");
    r.check(
        "a non-collinear triple is refused",
        matches!(non_collinear, Err(SearchError::Precondition(_))),
        String::new(),
    );
    r
}

// ---------------------------------------------------------------------------
// Suite: turan.

fn random_complement(rng: &mut SplitMix64, n: usize, max_edges: usize) -> (Multigraph, Vec<(usize, usize)>) {
    let edges = rng.below(max_edges as u64 + 1) as usize;
    let mut chosen: BTreeSet<(usize, usize)> = BTreeSet::new();
    while chosen.len() < edges {
        let i = rng.below(n as u64) as usize;
        let j = rng.below(n as u64) as usize;
        if i == j {
            continue;
        }
        chosen.insert((i.min(j), i.max(j)));
    }
    let mut g = Multigraph::new();
    for v in 0..n {
        g.add_vertex(&format!("v{v}")).expect("vertex");
    }
    let pairs: Vec<(usize, usize)> = chosen.into_iter().collect();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        g.add_link(&format!("c{k}"), i, j).expect("link");
    }
    (g, pairs)
}

fn suite_turan() -> SuiteReport {
    let mut r = SuiteReport::new("turan", suite_title("turan").expect("registered"));
    let regimes: [(&str, u64, Box<dyn Fn(&mut SplitMix64) -> usize>, fn(usize) -> usize); 2] = [
        ("frame regime, 11..15 vertices, complement up to 2|V| edges",
            0x5EED_0001,
            Box::new(|rng: &mut SplitMix64| 11 + rng.below(5) as usize),
            |n| 2 * n),
        ("lift regime, 7 vertices, complement up to |V| edges",
            0x5EED_0002,
            Box::new(|_| 7),
            |n| n),
    ];
    for (name, seed, pick_n, max_edges) in regimes {
        let mut rng = SplitMix64::new(seed);
        let mut found = 0usize;
        let mut bad: Option<String> = None;
        for round in 0..1000 {
            let n = pick_n(&mut rng);
            let (g, pairs) = random_complement(&mut rng, n, max_edges(n));
            match turan_triangle(&g) {
                Ok(Some((a, b, c))) => {
                    let distinct = a < b && b < c;
                    let non_adjacent = [(a, b), (a, c), (b, c)]
                        .iter()
                        .all(|p| !pairs.contains(p));
                    if distinct && non_adjacent {
                        found += 1;
                    } else if bad.is_none() {
                        bad = Some(format!(
                            "round {round}: triangle ({a},{b},{c}) touches a complement edge"
                        ));
                    }
                }
                Ok(None) => {
                    if bad.is_none() {
                        bad = Some(format!(
                            "round {round}: no triangle in a {n}-vertex complement with {} edges",
                            pairs.len()
                        ));
                    }
                }
                Err(err) => {
                    if bad.is_none() {
                        bad = Some(format!("round {round}: {err}"));
                    }
                }
            }
        }
        r.check(
            &format!("{name}: 1000 of 1000 probes yield an independent triple"),
            found == 1000 && bad.is_none(),
            bad.unwrap_or_else(|| format!("{found} verified triangles")),
        );
    }
    r
}

// ---------------------------------------------------------------------------
// Suite: bounds.

fn suite_bounds() -> SuiteReport {
    let mut r = SuiteReport::new("bounds", suite_title("bounds").expect("registered"));
    for rank in 1..=5usize {
        let report = bound_formulas(rank);
        let oracle = dec_bound_table(rank);
        r.check(
            &format!("rank {rank}: eighteen entries in matching order"),
            report.entries.len() == oracle.len()
                && report
                    .entries
                    .iter()
                    .zip(oracle.iter())
                    .all(|(e, (name, _))| e.name == *name),
            format!("{} entries", report.entries.len()),
        );
        let mut mismatch: Option<String> = None;
        for (entry, (name, dec)) in report.entries.iter().zip(oracle.iter()) {
            if entry.value.to_string() != dec.to_decimal() {
                mismatch = Some(format!(
                    "{name}: {} vs {}",
                    entry.value,
                    dec.to_decimal()
                ));
                break;
            }
        }
        r.check(
            &format!("rank {rank}: every value matches the decimal recomputation"),
            mismatch.is_none(),
            mismatch.unwrap_or_default(),
        );
    }
    let pinned = bound_formulas(2);
    r.check(
        "rank 2 frame line bound is 10485760",
        pinned.get("frame-line-length").map(|v| v.to_string()).as_deref() == Some("10485760"),
        String::new(),
    );
    r.check(
        "rank 2 frame canonical count is 243",
        pinned.get("frame-canonical").map(|v| v.to_string()).as_deref() == Some("243"),
        String::new(),
    );
    r
}

// ---------------------------------------------------------------------------
// Suite: cg-rules.

fn suite_cg_rules() -> SuiteReport {
    let mut r = SuiteReport::new("cg-rules", suite_title("cg-rules").expect("registered"));
    let mut cases: Vec<(String, BiasedRepresentation, ClassTag)> = vec![
        ("six-edge bundle".into(), parallel_bundle(6), ClassTag::Frame),
        ("line with end loop".into(), line_with_end_loop(), ClassTag::Frame),
        ("line with far loop".into(), lift_line_with_far_loop(), ClassTag::Lift),
        ("handcuffed line".into(), handcuffed_line(), ClassTag::Frame),
        ("pendant line".into(), pendant_line_graph(), ClassTag::Frame),
    ];
    for (name, rep) in multi_line_family() {
        cases.push((name, rep, ClassTag::Frame));
    }
    for (name, rep, class) in &cases {
        let m = match class {
            ClassTag::Frame => frame_of(rep),
            _ => lift_of(rep),
        };
        let report = match canonicalize_quasi(rep, &m) {
            Ok(report) => report,
            Err(err) => {
                r.check(&format!("{name}: canonicalization"), false, format!("{err}"));
                continue;
            }
        };
        let out = report.rep.graph();
        r.check(
            &format!("{name}: output graph has exactly 2r vertices"),
            out.vertex_count() == 2 * m.full_rank(),
            format!("{} vertices, rank {}", out.vertex_count(), m.full_rank()),
        );
        let diag = is_framework(out, &m);
        r.check(&format!("{name}: output is a framework"), diag.valid, format!("{diag}"));

        let mut rule_bad: Option<String> = None;
        let mut log_bad: Option<String> = None;
        let mut elements_checked = 0usize;
        for line in m.long_lines() {
            let (a, b) = match line_endpoints_in(out, &m, line.elements) {
                Ok(pair) => pair,
                Err(err) => {
                    rule_bad = Some(err);
                    break;
                }
            };
            let off_a = match vertex_deleted_closure(out, &m, a) {
                Ok(x) => x,
                Err(err) => {
                    rule_bad = Some(format!("{err}"));
                    break;
                }
            };
            let off_b = match vertex_deleted_closure(out, &m, b) {
                Ok(x) => x,
                Err(err) => {
                    rule_bad = Some(format!("{err}"));
                    break;
                }
            };
            for e in iter_mask(line.elements) {
                let expected = rule_of_closures(off_a & (1 << e) != 0, off_b & (1 << e) != 0);
                let edge = out.edge_by_label(m.label(e)).expect("labels match");
                match rule_of_position(out, edge, a, b) {
                    Ok(actual) if actual == expected => elements_checked += 1,
                    Ok(actual) => {
                        rule_bad = Some(format!(
                            "{} sits as {actual}, the closures demand {expected}",
                            m.label(e)
                        ));
                        break;
                    }
                    Err(err) => {
                        rule_bad = Some(format!("{}: {err}", m.label(e)));
                        break;
                    }
                }
                let logged = report
                    .cg_rules
                    .iter()
                    .find(|rec| rec.line == line.elements && rec.element == m.label(e));
                match logged {
                    Some(rec) if rec.rule == expected => {}
                    Some(rec) => {
                        log_bad = Some(format!(
                            "{} logged as {}, recomputed {expected}",
                            m.label(e),
                            rec.rule
                        ));
                    }
                    None => {
                        log_bad =
                            Some(format!("{} missing from the rule log", m.label(e)))
                    }
                }
            }
            if rule_bad.is_some() {
                break;
            }
        }
        r.check(
            &format!("{name}: output satisfies its rules element by element"),
            rule_bad.is_none(),
            rule_bad.unwrap_or_else(|| format!("{elements_checked} elements")),
        );
        r.check(
            &format!("{name}: the rule log matches the recomputation"),
            log_bad.is_none(),
            log_bad.unwrap_or_default(),
        );

        // Placement decision tree, checked the same way on its own output.
        let mut place_bad: Option<String> = None;
        let mut placed_checked = 0usize;
        for line in m.long_lines() {
            let links_in_rep = iter_mask(line.elements)
                .filter(|&e| {
                    rep.graph()
                        .edge_by_label(m.label(e))
                        .map(|i| !rep.graph().edge(i).ends.is_loop())
                        .unwrap_or(false)
                })
                .count();
            if links_in_rep < 4 {
                continue;
            }
            let records = match place_line_elements_quasi(rep, &m, line.elements) {
                Ok(records) => records,
                Err(err) => {
                    place_bad = Some(format!("{err}"));
                    break;
                }
            };
            let placed = match apply_line_placements(rep.graph(), &m, &records) {
                Ok(placed) => placed,
                Err(err) => {
                    place_bad = Some(format!("{err}"));
                    break;
                }
            };
            let (a, b) = match line_endpoints_in(&placed, &m, line.elements) {
                Ok(pair) => pair,
                Err(err) => {
                    place_bad = Some(err);
                    break;
                }
            };
            for rec in &records {
                let e = m.element_by_label(&rec.element).expect("element exists");
                let in_a = match vertex_deleted_closure(&placed, &m, a) {
                    Ok(x) => x & (1 << e) != 0,
                    Err(err) => {
                        place_bad = Some(format!("{err}"));
                        break;
                    }
                };
                let in_b = match vertex_deleted_closure(&placed, &m, b) {
                    Ok(x) => x & (1 << e) != 0,
                    Err(err) => {
                        place_bad = Some(format!("{err}"));
                        break;
                    }
                };
                let expected = rule_of_closures(in_a, in_b);
                match rule_of_placement(rec.placement, a, b) {
                    Ok(actual) if actual == expected => placed_checked += 1,
                    Ok(actual) => {
                        place_bad = Some(format!(
                            "{} placed as {actual} (case {}), closures demand {expected}",
                            rec.element, rec.case_tag
                        ));
                        break;
                    }
                    Err(err) => {
                        place_bad = Some(format!("{}: {err}", rec.element));
                        break;
                    }
                }
            }
            if place_bad.is_some() {
                break;
            }
        }
        r.check(
            &format!("{name}: placements agree with the rules on their output"),
            place_bad.is_none(),
            place_bad.unwrap_or_else(|| format!("{placed_checked} placements")),
        );
    }
    r
}

// ---------------------------------------------------------------------------
// Suite: scan.

/// The seven-line rank-3 geometry on seven points: circuits are its seven
/// lines and their seven four-element complements.
fn seven_line_geometry() -> Matroid {
    let labels = ["e0", "e1", "e2", "e3", "e4", "e5", "e6"];
    let lines: [[usize; 3]; 7] =
        [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    let mut circuits: Vec<Vec<&str>> = Vec::new();
    for line in &lines {
        circuits.push(line.iter().map(|&i| labels[i]).collect());
        circuits.push(
            (0..7).filter(|i| !line.contains(i)).map(|i| labels[i]).collect(),
        );
    }
    let borrowed: Vec<&[&str]> = circuits.iter().map(|c| c.as_slice()).collect();
    let m = Matroid::from_labels(&labels, &borrowed).expect("seven-line geometry");
    m.validate().expect("circuit axioms");
    m
}

fn suite_scan() -> SuiteReport {
    let mut r = SuiteReport::new("scan", suite_title("scan").expect("registered"));
    let cfg = SearchConfig::default();
    for class in [ClassTag::Frame, ClassTag::Lift, ClassTag::Quasi] {
        match excluded_minor_scan(2, 7, class, &cfg) {
            Ok(found) => r.check(
                &format!("rank-2 scan is empty for {class:?}"),
                found.is_empty(),
                format!("{} found", found.len()),
            ),
            Err(err) => {
                r.check(&format!("rank-2 scan is empty for {class:?}"), false, format!("{err}"))
            }
        }
    }

    let mut rank3: BTreeMap<&'static str, Vec<Matroid>> = BTreeMap::new();
    for class in [ClassTag::Frame, ClassTag::Lift, ClassTag::Quasi] {
        let label: &'static str = match class {
            ClassTag::Frame => "frame",
            ClassTag::Lift => "lift",
            ClassTag::Quasi => "quasi",
        };
        match excluded_minor_scan(3, 7, class, &cfg) {
            Ok(found) => {
                let mut filters_ok = true;
                let mut verified_ok = true;
                for m in &found {
                    let p = m.structural_profile();
                    // Connectivity is demanded of frame and quasi scans; the
                    // lift class is not closed under direct sums, so its scan
                    // may in principle emit disconnected objects. These runs
                    // happen to emit only connected ones; the filter check
                    // here sticks to what each class promises.
                    let connected_ok = p.connected || class == ClassTag::Lift;
                    if !(p.simple && p.cosimple && connected_ok) {
                        filters_ok = false;
                    }
                    match is_excluded_minor(m, class, &cfg) {
                        Ok(rep) if rep.excluded == Some(true) => {}
                        _ => verified_ok = false,
                    }
                }
                r.check(
                    &format!("rank-3 {label} finds pass the structural filters"),
                    filters_ok,
                    format!("{} found", found.len()),
                );
                r.check(
                    &format!("rank-3 {label} finds re-verify as excluded minors"),
                    verified_ok,
                    String::new(),
                );
                rank3.insert(label, found);
            }
            Err(err) => r.check(&format!("rank-3 {label} scan"), false, format!("{err}")),
        }
    }

    if let Some(found) = rank3.get("frame") {
        let forms: BTreeSet<Vec<u8>> = found.iter().map(|m| m.canonical_form()).collect();
        r.check(
            "frame finds are the seven-point uniform matroid and the seven-line geometry",
            found.len() == 2
                && forms.contains(&uniform(3, 7).canonical_form())
                && forms.contains(&seven_line_geometry().canonical_form()),
            format!("{} found", found.len()),
        );
    }
    if let Some(found) = rank3.get("lift") {
        let u37 = uniform(3, 7).canonical_form();
        let other = found.iter().find(|m| m.canonical_form() != u37);
        // The second lift find is a free extension of the graphic matroid of
        // the complete graph on four vertices: one element lies on no
        // three-element circuit, and deleting it leaves that matroid.
        let extension_ok = other
            .map(|m| {
                let covered: ElemSet = m
                    .circuits()
                    .iter()
                    .filter(|c| c.count_ones() == 3)
                    .fold(0, |acc, &c| acc | c);
                let free = m.ground() & !covered;
                free.count_ones() == 1
                    && m.delete(free).canonical_form() == mk4().canonical_form()
            })
            .unwrap_or(false);
        r.check(
            "lift finds are the seven-point uniform matroid and a free extension of the K4 matroid",
            found.len() == 2
                && found.iter().any(|m| m.canonical_form() == u37)
                && extension_ok,
            format!("{} found", found.len()),
        );
    }
    if let Some(found) = rank3.get("quasi") {
        r.check(
            "the quasi find is the seven-point uniform matroid",
            found.len() == 1 && found[0].canonical_form() == uniform(3, 7).canonical_form(),
            format!("{} found", found.len()),
        );
    }

    // Pre-filters: anything non-simple, non-cosimple, or (for frame)
    // disconnected is settled without a search.
    let cases: Vec<(&str, Matroid, &str)> = vec![
        ("a parallel pair is rejected as non-simple", uniform(1, 2), "simple"),
        ("a free matroid is rejected as non-cosimple", uniform(2, 2), "cosimple"),
        ("a disconnected sum is rejected for frame", four_point_pair(), "connected"),
    ];
    for (name, m, needle) in &cases {
        match is_excluded_minor(m, ClassTag::Frame, &cfg) {
            Ok(report) => r.check(
                name,
                report.excluded == Some(false)
                    && report.prefilter.as_deref().map(|s| s.contains(needle)).unwrap_or(false),
                format!("prefilter {:?}", report.prefilter),
            ),
            Err(err) => r.check(name, false, format!("{err}")),
        }
    }
    r
}
