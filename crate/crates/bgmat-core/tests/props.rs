//! Random-instance properties. Matroids built from biased graphs must obey
//! the rank and closure axioms, minors must compose, the graph rank formulas
//! must agree with the derived matroid, and the balanced-cycle set must be
//! recoverable from the matroid alone.

use std::collections::BTreeSet;

use proptest::prelude::*;

use bgmat_core::bias::{
    derive_bias, edge_element_map, is_theta, translate_mask, BiasedRepresentation, ClassTag,
};
use bgmat_core::matroid::{ElemSet, Matroid};
use bgmat_core::multigraph::{EdgeMask, Multigraph};

/// Raw edge list on up to four vertices; (a, a) encodes a loop.
fn arb_edges() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=4).prop_flat_map(|n| {
        let edge = (0..n, 0..n);
        proptest::collection::vec(edge, 1..=7).prop_map(move |es| (n, es))
    })
}

fn build_graph(n: usize, edges: &[(usize, usize)]) -> Multigraph {
    let mut g = Multigraph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}")).unwrap();
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        let label = format!("e{i}");
        if a == b {
            g.add_loop(&label, a).unwrap();
        } else {
            g.add_link(&label, a, b).unwrap();
        }
    }
    g
}

fn is_loop_cycle(g: &Multigraph, c: EdgeMask) -> bool {
    c.count_ones() == 1 && g.edge(c.trailing_zeros() as usize).ends.is_loop()
}

/// Close a seed of cycle indices under the theta rule: whenever two balanced
/// cycles union to a theta, its third cycle joins the balanced set.
fn close_bias(g: &Multigraph, cycles: &[EdgeMask], seed: &[usize]) -> Vec<EdgeMask> {
    let mut balanced: BTreeSet<EdgeMask> = seed
        .iter()
        .map(|&i| cycles[i % cycles.len()])
        .filter(|&c| !is_loop_cycle(g, c))
        .collect();
    let in_list: BTreeSet<EdgeMask> = cycles.iter().copied().collect();
    loop {
        let mut grew = false;
        let now: Vec<EdgeMask> = balanced.iter().copied().collect();
        for (i, &a) in now.iter().enumerate() {
            for &b in &now[i + 1..] {
                if is_theta(g, a | b) && in_list.contains(&(a ^ b)) && balanced.insert(a ^ b) {
                    grew = true;
                }
            }
        }
        if !grew {
            return balanced.into_iter().collect();
        }
    }
}

fn arb_biased() -> impl Strategy<Value = BiasedRepresentation> {
    (arb_edges(), proptest::collection::vec(any::<usize>(), 0..=6)).prop_map(
        |((n, edges), seed)| {
            let g = build_graph(n, &edges);
            let cycles = g.cycles();
            let balanced = if cycles.is_empty() {
                Vec::new()
            } else {
                close_bias(&g, &cycles, &seed)
            };
            BiasedRepresentation::new(g, balanced).expect("theta-closed bias must be accepted")
        },
    )
}

fn matroid_of(rep: &BiasedRepresentation, class: ClassTag) -> Matroid {
    rep.matroid(class)
        .expect("frame and lift always derive a matroid")
        .expect("derived circuit family must validate")
}

fn subset_of(ground: ElemSet, raw: u32) -> ElemSet {
    raw & ground
}

proptest! {
    #[test]
    fn rank_axioms_hold(rep in arb_biased(), xr in any::<u32>(), yr in any::<u32>()) {
        for class in [ClassTag::Frame, ClassTag::Lift] {
            let m = matroid_of(&rep, class);
            let x = subset_of(m.ground(), xr);
            let y = subset_of(m.ground(), yr);
            let rx = m.rank(x);
            prop_assert!(rx <= x.count_ones() as usize);
            prop_assert!(m.rank(x & y) <= rx.min(m.rank(y)));
            // Submodularity.
            prop_assert!(m.rank(x | y) + m.rank(x & y) <= rx + m.rank(y));
            // Unit increase.
            for e in 0..m.size() {
                let re = m.rank(x | (1 << e));
                prop_assert!(re >= rx && re <= rx + 1);
            }
        }
    }

    #[test]
    fn closure_behaves(rep in arb_biased(), xr in any::<u32>(), yr in any::<u32>()) {
        for class in [ClassTag::Frame, ClassTag::Lift] {
            let m = matroid_of(&rep, class);
            let x = subset_of(m.ground(), xr);
            let y = subset_of(m.ground(), yr);
            let cx = m.closure(x);
            prop_assert_eq!(x & cx, x, "closure must contain the set");
            prop_assert_eq!(m.closure(cx), cx, "closure must be idempotent");
            if x & y == x {
                prop_assert_eq!(cx & m.closure(y), cx, "closure must be monotone");
            }
            prop_assert_eq!(m.rank(cx), m.rank(x), "closure must not raise rank");
        }
    }

    #[test]
    fn graph_rank_formulas_match_the_matroid(rep in arb_biased(), xr in any::<u32>()) {
        let g = rep.graph();
        let x = xr & g.full_edge_mask();
        for class in [ClassTag::Frame, ClassTag::Lift] {
            let m = matroid_of(&rep, class);
            let map = edge_element_map(g, &m).unwrap();
            let formula = rep.rank(class, x).unwrap();
            prop_assert_eq!(formula, m.rank(translate_mask(x, &map)));
        }
    }

    #[test]
    fn bias_is_recoverable_from_the_matroid(rep in arb_biased()) {
        for class in [ClassTag::Frame, ClassTag::Lift] {
            let m = matroid_of(&rep, class);
            let back = derive_bias(rep.graph(), &m).unwrap();
            let want: BTreeSet<EdgeMask> = rep.balanced_cycles().iter().copied().collect();
            let got: BTreeSet<EdgeMask> = back.balanced_cycles().iter().copied().collect();
            prop_assert_eq!(want, got);
        }
    }

    #[test]
    fn minors_compose(rep in arb_biased(), dr in any::<u32>(), cr in any::<u32>(), dr2 in any::<u32>(), cr2 in any::<u32>()) {
        let m = matroid_of(&rep, ClassTag::Frame);
        let ground = m.ground();
        let d1 = subset_of(ground, dr);
        let c1 = subset_of(ground, cr) & !d1;
        let d2 = subset_of(ground, dr2) & !(d1 | c1);
        let c2 = subset_of(ground, cr2) & !(d1 | c1 | d2);
        let once = m.minor(d1 | d2, c1 | c2);
        let first = m.minor(d1, c1);
        let by_label = |n: &Matroid, x: ElemSet| -> BTreeSet<String> {
            n.label_set(x).into_iter().collect()
        };
        // Replay the second round through labels: indices shift after a minor.
        let mut d2m: ElemSet = 0;
        let mut c2m: ElemSet = 0;
        for e in 0..first.size() {
            let orig = m.element_by_label(first.label(e)).unwrap();
            if d2 & (1 << orig) != 0 {
                d2m |= 1 << e;
            }
            if c2 & (1 << orig) != 0 {
                c2m |= 1 << e;
            }
        }
        let twice = first.minor(d2m, c2m);
        prop_assert_eq!(by_label(&once, once.ground()), by_label(&twice, twice.ground()));
        let circs = |n: &Matroid| -> BTreeSet<Vec<String>> {
            n.circuits().iter().map(|&c| n.label_set(c)).collect()
        };
        prop_assert_eq!(circs(&once), circs(&twice));
    }

    #[test]
    fn balanced_graphs_are_graphic(nes in arb_edges()) {
        let (n, edges) = nes;
        if edges.iter().any(|&(a, b)| a == b) {
            return Ok(()); // loops cannot be balanced
        }
        let g = build_graph(n, &edges);
        let cycles: BTreeSet<EdgeMask> = g.cycles().into_iter().collect();
        let rep = BiasedRepresentation::fully_balanced(g);
        let frame: BTreeSet<EdgeMask> = rep.frame_circuits().into_iter().collect();
        let lift: BTreeSet<EdgeMask> = rep.lift_circuits().into_iter().collect();
        prop_assert_eq!(&frame, &cycles, "frame circuits of a balanced graph are its cycles");
        prop_assert_eq!(&lift, &cycles, "lift circuits of a balanced graph are its cycles");
    }
}
