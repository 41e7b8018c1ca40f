//! Matroids as explicit circuit collections.
//!
//! Every construction in this crate produces circuits explicitly, so the
//! circuit list is the single source of truth; rank, closure, minors and
//! connectivity are derived from it. Ground sets are capped at
//! [`MAX_ELEMENTS`] elements and element sets are `u32` bitmasks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::multigraph::{iter_mask, Dsu};

/// Hard cap on ground-set size (bitmask width budget).
pub const MAX_ELEMENTS: usize = 24;

/// Rank-1 flat count at which a line counts as long.
pub const LONG_LINE_THRESHOLD: usize = 6;

/// Element set as a bitmask over element indices of one particular matroid.
pub type ElemSet = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    labels: Vec<String>,
    /// Sorted, deduplicated circuit masks.
    circuits: Vec<ElemSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidError {
    TooManyElements,
    DuplicateLabel(String),
    UnknownLabel(String),
    EmptyCircuit,
    CircuitOutOfRange,
    /// Circuit axiom failure; carries a human-readable witness.
    Axiom(String),
    NotABasis(String),
    NoSuchFundamentalCircuit(String),
}

impl fmt::Display for MatroidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidError::TooManyElements => write!(f, "more than {MAX_ELEMENTS} elements"),
            MatroidError::DuplicateLabel(l) => write!(f, "duplicate element label {l}"),
            MatroidError::UnknownLabel(l) => write!(f, "unknown element label {l}"),
            MatroidError::EmptyCircuit => write!(f, "empty circuit"),
            MatroidError::CircuitOutOfRange => write!(f, "circuit references missing element"),
            MatroidError::Axiom(w) => write!(f, "circuit axiom violation: {w}"),
            MatroidError::NotABasis(w) => write!(f, "not a basis: {w}"),
            MatroidError::NoSuchFundamentalCircuit(w) => {
                write!(f, "no unique fundamental circuit: {w}")
            }
        }
    }
}

/// A rank-2 flat together with its point count (rank-1 flats it contains).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub elements: ElemSet,
    pub points: usize,
    pub long: bool,
}

/// Simplicity, cosimplicity and connectivity in one pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralProfile {
    pub simple: bool,
    pub cosimple: bool,
    pub connected: bool,
}

impl Matroid {
    /// Builds a matroid from labels and circuits given as label lists.
    /// Performs structural checks only; call [`Matroid::validate`] for the
    /// circuit axioms.
    pub fn from_labels(
        labels: &[&str],
        circuits: &[&[&str]],
    ) -> Result<Matroid, MatroidError> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let mut masks = Vec::with_capacity(circuits.len());
        for c in circuits {
            let mut mask = 0u32;
            for l in *c {
                let i = owned
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| MatroidError::UnknownLabel(l.to_string()))?;
                mask |= 1 << i;
            }
            masks.push(mask);
        }
        Matroid::new(owned, masks)
    }

    pub fn new(labels: Vec<String>, mut circuits: Vec<ElemSet>) -> Result<Matroid, MatroidError> {
        if labels.len() > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(MatroidError::DuplicateLabel(l.clone()));
            }
        }
        let ground: ElemSet = if labels.is_empty() { 0 } else { (1u32 << labels.len()) - 1 };
        for c in &circuits {
            if *c == 0 {
                return Err(MatroidError::EmptyCircuit);
            }
            if c & !ground != 0 {
                return Err(MatroidError::CircuitOutOfRange);
            }
        }
        circuits.sort_unstable();
        circuits.dedup();
        Ok(Matroid { labels, circuits })
    }

    /// Ground set as a mask.
    pub fn ground(&self) -> ElemSet {
        if self.labels.is_empty() {
            0
        } else {
            (1u32 << self.labels.len()) - 1
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn circuits(&self) -> &[ElemSet] {
        &self.circuits
    }

    pub fn is_circuit(&self, x: ElemSet) -> bool {
        self.circuits.binary_search(&x).is_ok()
    }

    /// Renders a mask as sorted labels, for error messages and output.
    pub fn label_set(&self, x: ElemSet) -> Vec<String> {
        let mut v: Vec<String> = iter_mask(x).map(|e| self.labels[e].clone()).collect();
        v.sort();
        v
    }

    /// Circuit axioms: every circuit nonempty (checked at construction), no
    /// circuit properly contains another, and circuit elimination holds.
    pub fn validate(&self) -> Result<(), MatroidError> {
        for (i, &c1) in self.circuits.iter().enumerate() {
            for &c2 in &self.circuits[i + 1..] {
                if c1 & c2 == c1 || c1 & c2 == c2 {
                    return Err(MatroidError::Axiom(alloc::format!(
                        "nested circuits {:?} and {:?}",
                        self.label_set(c1),
                        self.label_set(c2)
                    )));
                }
            }
        }
        for &c1 in &self.circuits {
            for &c2 in &self.circuits {
                if c1 == c2 {
                    continue;
                }
                let common = c1 & c2;
                if common == 0 {
                    continue;
                }
                for e in iter_mask(common) {
                    let target = (c1 | c2) & !(1 << e);
                    if !self.circuits.iter().any(|&c3| c3 & !target == 0) {
                        return Err(MatroidError::Axiom(alloc::format!(
                            "elimination fails for {:?}, {:?} on {}",
                            self.label_set(c1),
                            self.label_set(c2),
                            self.labels[e]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_independent(&self, x: ElemSet) -> bool {
        !self.circuits.iter().any(|&c| c & !x == 0)
    }

    /// Rank by greedy extension: scan elements of `x` in index order, keep
    /// those that stay independent.
    pub fn rank(&self, x: ElemSet) -> usize {
        let mut acc = 0u32;
        let mut r = 0;
        for e in iter_mask(x) {
            let cand = acc | (1 << e);
            if self.is_independent(cand) {
                acc = cand;
                r += 1;
            }
        }
        r
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    /// A maximal independent subset of `x`, greedily lowest-index.
    pub fn basis_of(&self, x: ElemSet) -> ElemSet {
        let mut acc = 0u32;
        for e in iter_mask(x) {
            let cand = acc | (1 << e);
            if self.is_independent(cand) {
                acc = cand;
            }
        }
        acc
    }

    pub fn closure(&self, x: ElemSet) -> ElemSet {
        let r = self.rank(x);
        let mut out = x;
        for e in iter_mask(self.ground() & !x) {
            if self.rank(x | (1 << e)) == r {
                out |= 1 << e;
            }
        }
        out
    }

    /// Deletion then contraction. Circuits of the minor are the minimal
    /// nonempty sets of the form c − contract over circuits c avoiding the
    /// deleted elements. Labels of surviving elements are preserved.
    pub fn minor(&self, delete: ElemSet, contract: ElemSet) -> Matroid {
        debug_assert_eq!(delete & contract, 0);
        let keep = self.ground() & !(delete | contract);
        let mut remap = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (new, old) in iter_mask(keep).enumerate() {
            remap[old] = new;
            labels.push(self.labels[old].clone());
        }
        let mut reduced: Vec<ElemSet> = Vec::new();
        for &c in &self.circuits {
            if c & delete != 0 {
                continue;
            }
            let rest = c & !contract;
            if rest == 0 {
                continue;
            }
            let mut mask = 0u32;
            for e in iter_mask(rest) {
                mask |= 1 << remap[e];
            }
            reduced.push(mask);
        }
        reduced.sort_unstable();
        reduced.dedup();
        // Keep only inclusion-minimal sets.
        let mut minimal = Vec::new();
        'outer: for (i, &c) in reduced.iter().enumerate() {
            for (j, &d) in reduced.iter().enumerate() {
                if i != j && d & !c == 0 && (d != c || j < i) {
                    continue 'outer;
                }
            }
            minimal.push(c);
        }
        Matroid { labels, circuits: minimal }
    }

    pub fn delete(&self, x: ElemSet) -> Matroid {
        self.minor(x, 0)
    }

    pub fn contract(&self, x: ElemSet) -> Matroid {
        self.minor(0, x)
    }

    /// Restriction to `keep`.
    pub fn restrict(&self, keep: ElemSet) -> Matroid {
        self.minor(self.ground() & !keep, 0)
    }

    /// Connectivity classes: the transitive closure of "lie in a common
    /// circuit". Elements in no circuit (coloops) are singleton classes.
    pub fn connectivity_components(&self) -> Vec<ElemSet> {
        let n = self.labels.len();
        if n == 0 {
            return Vec::new();
        }
        let mut dsu = Dsu::new(n);
        for &c in &self.circuits {
            let mut it = iter_mask(c);
            if let Some(first) = it.next() {
                for e in it {
                    dsu.union(first, e);
                }
            }
        }
        let mut classes: BTreeMap<usize, ElemSet> = BTreeMap::new();
        for e in 0..n {
            *classes.entry(dsu.find(e)).or_insert(0) |= 1 << e;
        }
        classes.into_values().collect()
    }

    pub fn structural_profile(&self) -> StructuralProfile {
        let simple = !self.circuits.iter().any(|c| c.count_ones() <= 2);
        let n = self.labels.len();
        let full = self.full_rank();
        let mut cosimple = true;
        // Coloops: elements in no circuit.
        for e in 0..n {
            if !self.circuits.iter().any(|&c| c & (1 << e) != 0) {
                cosimple = false;
            }
        }
        // Series pairs: 2-element cocircuits.
        if cosimple {
            'pairs: for e in 0..n {
                for f in e + 1..n {
                    let rest = self.ground() & !((1 << e) | (1 << f));
                    if self.rank(rest) < full {
                        cosimple = false;
                        break 'pairs;
                    }
                }
            }
        }
        let connected = n <= 1 || self.connectivity_components().len() == 1;
        StructuralProfile { simple, cosimple, connected }
    }

    /// All rank-2 flats, with point counts, under the default long-line
    /// threshold.
    pub fn lines(&self) -> Vec<Line> {
        self.lines_with_threshold(LONG_LINE_THRESHOLD)
    }

    pub fn long_lines(&self) -> Vec<Line> {
        self.lines().into_iter().filter(|l| l.long).collect()
    }

    pub fn lines_with_threshold(&self, threshold: usize) -> Vec<Line> {
        let mut flats = BTreeSet::new();
        let n = self.labels.len();
        for e in 0..n {
            for f in e + 1..n {
                let pair = (1u32 << e) | (1 << f);
                if self.rank(pair) == 2 {
                    flats.insert(self.closure(pair));
                }
            }
        }
        flats
            .into_iter()
            .map(|elements| {
                let points = self.point_count(elements);
                Line { elements, points, long: points >= threshold }
            })
            .collect()
    }

    /// Number of rank-1 flats contained in `x`: parallel classes among the
    /// rank-1 elements of `x`.
    fn point_count(&self, x: ElemSet) -> usize {
        let mut reps: Vec<usize> = Vec::new();
        for e in iter_mask(x) {
            if self.rank(1 << e) != 1 {
                continue;
            }
            if !reps
                .iter()
                .any(|&r| self.rank((1 << r) | (1 << e)) == 1)
            {
                reps.push(e);
            }
        }
        reps.len()
    }

    /// The unique circuit contained in `basis ∪ {e}` and containing `e`.
    pub fn fundamental_circuit(&self, basis: ElemSet, e: usize) -> Result<ElemSet, MatroidError> {
        if !self.is_independent(basis) || self.rank(basis) != self.full_rank() {
            return Err(MatroidError::NotABasis(alloc::format!(
                "{:?}",
                self.label_set(basis)
            )));
        }
        if basis & (1 << e) != 0 {
            return Err(MatroidError::NoSuchFundamentalCircuit(alloc::format!(
                "{} already in the basis",
                self.labels[e]
            )));
        }
        let within = basis | (1 << e);
        let mut found = None;
        for &c in &self.circuits {
            if c & !within == 0 && c & (1 << e) != 0 {
                if found.is_some() {
                    return Err(MatroidError::NoSuchFundamentalCircuit(alloc::format!(
                        "multiple circuits through {}",
                        self.labels[e]
                    )));
                }
                found = Some(c);
            }
        }
        found.ok_or_else(|| {
            MatroidError::NoSuchFundamentalCircuit(alloc::format!(
                "{} independent over the basis",
                self.labels[e]
            ))
        })
    }

    /// All 2-separations: bipartitions (A, E−A) with both sides of size >= 2
    /// and r(A) + r(E−A) = r(E) + 1.
    pub fn two_separations(&self) -> Vec<(ElemSet, ElemSet)> {
        let n = self.labels.len();
        if n < 4 {
            return Vec::new();
        }
        let full = self.full_rank();
        let ground = self.ground();
        let mut out = Vec::new();
        // Fix the top element on the B side to enumerate unordered pairs once.
        let top = n - 1;
        for a in 1u32..(1 << top) {
            if a.count_ones() < 2 || (ground & !a).count_ones() < 2 {
                continue;
            }
            let b = ground & !a;
            if self.rank(a) + self.rank(b) == full + 1 {
                out.push((a, b));
            }
        }
        out
    }

    /// Canonical byte encoding under element relabeling, refined by a cheap
    /// element invariant. Equal encodings iff the matroids are isomorphic.
    /// Intended for deduplication at scan scale (<= 10 elements).
    pub fn canonical_form(&self) -> Vec<u8> {
        let n = self.labels.len();
        // Invariant per element: sorted list of sizes of circuits through it.
        let mut inv: Vec<Vec<u8>> = Vec::with_capacity(n);
        for e in 0..n {
            let mut sizes: Vec<u8> = self
                .circuits
                .iter()
                .filter(|&&c| c & (1 << e) != 0)
                .map(|&c| c.count_ones() as u8)
                .collect();
            sizes.sort_unstable();
            inv.push(sizes);
        }
        let mut classes: BTreeMap<&Vec<u8>, Vec<usize>> = BTreeMap::new();
        for e in 0..n {
            classes.entry(&inv[e]).or_default().push(e);
        }
        let classes: Vec<Vec<usize>> = classes.into_values().collect();
        let mut best: Option<Vec<u8>> = None;
        let mut perm = Vec::with_capacity(n);
        permute_elem_classes(&classes, &mut perm, &mut |perm| {
            // perm[new] = old; build remapped circuit list.
            let mut inv_map = vec![0usize; n];
            for (new, &old) in perm.iter().enumerate() {
                inv_map[old] = new;
            }
            let mut mapped: Vec<ElemSet> = self
                .circuits
                .iter()
                .map(|&c| {
                    let mut m = 0u32;
                    for e in iter_mask(c) {
                        m |= 1 << inv_map[e];
                    }
                    m
                })
                .collect();
            mapped.sort_unstable();
            let mut enc: Vec<u8> = Vec::with_capacity(1 + 4 * mapped.len());
            enc.push(n as u8);
            for m in mapped {
                enc.extend_from_slice(&m.to_be_bytes());
            }
            if best.as_ref().map_or(true, |b| enc < *b) {
                best = Some(enc);
            }
        });
        best.unwrap_or_else(|| vec![0])
    }

    /// Direct sum; label sets must be disjoint.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let shift = self.labels.len();
        let mut circuits = self.circuits.clone();
        circuits.extend(other.circuits.iter().map(|c| c << shift));
        Matroid::new(labels, circuits)
    }
}

fn permute_elem_classes<F: FnMut(&[usize])>(
    classes: &[Vec<usize>],
    perm: &mut Vec<usize>,
    f: &mut F,
) {
    fn go<F: FnMut(&[usize])>(
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
        crate::multigraph::heap_permutations(&mut members, &mut |p| {
            let base = perm.len();
            perm.extend_from_slice(p);
            go(classes, i + 1, perm, f);
            perm.truncate(base);
        });
    }
    go(classes, 0, perm, f);
}

/// Uniform matroid U_{r,n} with labels e0..e(n-1): circuits are all
/// (r+1)-subsets.
pub fn uniform(r: usize, n: usize) -> Matroid {
    let labels: Vec<String> = (0..n).map(|i| alloc::format!("e{i}")).collect();
    let mut circuits = Vec::new();
    if r < n {
        let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
        for x in 0..=full {
            if x.count_ones() as usize == r + 1 {
                circuits.push(x);
            }
        }
    }
    Matroid::new(labels, circuits).expect("uniform matroid construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_basics() {
        let m = uniform(2, 4);
        assert_eq!(m.full_rank(), 2);
        assert_eq!(m.circuits().len(), 4);
        m.validate().unwrap();
        assert_eq!(m.rank(0b0011), 2);
        assert_eq!(m.closure(0b0011), 0b1111);
        let p = m.structural_profile();
        assert!(p.simple && p.cosimple && p.connected);
    }

    #[test]
    fn validate_rejects_nested_and_broken_elimination() {
        let nested = Matroid::from_labels(&["a", "b", "c"], &[&["a", "b"], &["a", "b", "c"]])
            .unwrap();
        assert!(matches!(nested.validate(), Err(MatroidError::Axiom(_))));

        // {a,b} and {b,c} circuits but nothing inside {a,c}: elimination fails.
        let broken =
            Matroid::from_labels(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]).unwrap();
        assert!(matches!(broken.validate(), Err(MatroidError::Axiom(_))));
    }

    #[test]
    fn rank_is_monotone_submodular_unit_increase() {
        let m = uniform(2, 5);
        let full = m.ground();
        for x in 0..=full {
            for y in 0..=full {
                let rx = m.rank(x);
                let ry = m.rank(y);
                assert!(m.rank(x | y) + m.rank(x & y) <= rx + ry, "submodularity");
                if x & y == x {
                    assert!(rx <= ry, "monotonicity");
                }
            }
            for e in iter_mask(full & !x) {
                let up = m.rank(x | (1 << e));
                assert!(up == m.rank(x) || up == m.rank(x) + 1, "unit increase");
            }
        }
    }

    #[test]
    fn minor_composition() {
        let m = uniform(3, 6);
        let step = m.minor(0b000001, 0b000010);
        // After removing e0 (delete) and e1 (contract), ground is e2..e5.
        let two = step.minor(0b0001, 0); // delete e2
        let direct = m.minor(0b000101, 0b000010);
        assert_eq!(two, direct);
    }

    #[test]
    fn contraction_creates_loops_and_parallels() {
        // Triangle a,b,c: contracting a makes {b,c} a 2-circuit.
        let m = Matroid::from_labels(&["a", "b", "c"], &[&["a", "b", "c"]]).unwrap();
        let c = m.contract(0b001);
        assert_eq!(c.circuits(), &[0b11]);
        // Contracting a 2-circuit member makes the other a loop.
        let p = Matroid::from_labels(&["a", "b"], &[&["a", "b"]]).unwrap();
        let l = p.contract(0b01);
        assert_eq!(l.circuits(), &[0b1]);
        assert_eq!(l.full_rank(), 0);
    }

    #[test]
    fn u24_direct_sum_profile() {
        let m = uniform(2, 4).direct_sum(&{
            let mut u = uniform(2, 4);
            u = Matroid::new(
                u.labels().iter().map(|l| alloc::format!("f{l}")).collect(),
                u.circuits().to_vec(),
            )
            .unwrap();
            u
        })
        .unwrap();
        m.validate().unwrap();
        assert_eq!(m.full_rank(), 4);
        let p = m.structural_profile();
        assert!(p.simple && p.cosimple && !p.connected);
        assert_eq!(m.connectivity_components().len(), 2);
    }

    #[test]
    fn lines_of_u26() {
        let m = uniform(2, 6);
        let lines = m.lines();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].points, 6);
        assert!(lines[0].long);
        assert_eq!(lines[0].elements, m.ground());
    }

    #[test]
    fn lines_of_u34() {
        // Rank 3 uniform: every pair spans a 2-point line.
        let m = uniform(3, 4);
        let lines = m.lines();
        assert_eq!(lines.len(), 6);
        assert!(lines.iter().all(|l| l.points == 2 && !l.long));
    }

    #[test]
    fn fundamental_circuit_u24() {
        let m = uniform(2, 4);
        let basis = 0b0011;
        let c = m.fundamental_circuit(basis, 2).unwrap();
        assert_eq!(c, 0b0111);
        assert!(m.fundamental_circuit(0b0001, 2).is_err()); // not a basis
    }

    #[test]
    fn two_separations_found_and_absent() {
        // Direct sums give exact (1-)separations, not 2-separations.
        let a = uniform(1, 2);
        let b = Matroid::new(vec!["x".into(), "y".into()], vec![0b11]).unwrap();
        let m = a.direct_sum(&b).unwrap();
        assert!(m.two_separations().is_empty());

        // Uniform rank-2 matroids are 3-connected: r(A) + r(B) = 4 > r + 1.
        assert!(uniform(2, 6).two_separations().is_empty());

        // A pendant line yields exactly one 2-separation: the line against
        // the rest.
        let rep = crate::fixtures::pendant_line_graph();
        let pm = rep
            .matroid(crate::bias::ClassTag::Frame)
            .unwrap()
            .unwrap();
        let seps = pm.two_separations();
        assert_eq!(seps.len(), 1);
        let line: ElemSet = 0b00111111;
        assert!(seps[0].0 == line || seps[0].1 == line);
    }

    #[test]
    fn canonical_form_detects_relabeling() {
        let m1 = Matroid::from_labels(&["a", "b", "c", "d"], &[&["a", "b", "c"]]).unwrap();
        let m2 = Matroid::from_labels(&["p", "q", "r", "s"], &[&["q", "r", "s"]]).unwrap();
        assert_eq!(m1.canonical_form(), m2.canonical_form());
        let m3 = Matroid::from_labels(&["a", "b", "c", "d"], &[&["a", "b", "c", "d"]]).unwrap();
        assert_ne!(m1.canonical_form(), m3.canonical_form());
    }
}
