//! Shared fixture graphs and matroids used across tests and the
//! verification suites.
//!
//! Unless stated otherwise, fixtures carry the all-unbalanced bias: parallel
//! links then sit on a common long line of the frame matroid, which is what
//! most of the long-line machinery wants to see.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bias::BiasedRepresentation;
use crate::matroid::Matroid;
use crate::multigraph::Multigraph;

/// `n` parallel links between two vertices, all cycles unbalanced. Frame and
/// lift matroid are both U_{2,n}.
pub fn parallel_bundle(n: usize) -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    for i in 1..=n {
        g.add_link(&format!("e{i}"), u, v).unwrap();
    }
    BiasedRepresentation::fully_unbalanced(g)
}

/// Unbalanced loops at two vertices joined by a link. The frame matroid has
/// the loose handcuff {e,f,g} as its one circuit; the lift matroid instead
/// has the disjoint pair {e,f}.
pub fn two_loops_and_link() -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    g.add_loop("e", u).unwrap();
    g.add_loop("f", v).unwrap();
    g.add_link("g", u, v).unwrap();
    BiasedRepresentation::fully_unbalanced(g)
}

/// A six-element line l1..l6 between u and v plus a two-link bundle m1, m2
/// between u and w. The line is pendant with pendant vertex v: it meets the
/// rest of the graph only at u.
pub fn pendant_line_graph() -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    let w = g.add_vertex("w").unwrap();
    for i in 1..=6 {
        g.add_link(&format!("l{i}"), u, v).unwrap();
    }
    g.add_link("m1", u, w).unwrap();
    g.add_link("m2", u, w).unwrap();
    BiasedRepresentation::fully_unbalanced(g)
}

/// Two long lines sharing the middle vertex u: `a1..a<k1>` between v and u,
/// `b1..b<k2>` between u and w. The fixing graph is the path v - u - w.
pub fn two_bundle_star(k1: usize, k2: usize) -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    let w = g.add_vertex("w").unwrap();
    for i in 1..=k1 {
        g.add_link(&format!("a{i}"), v, u).unwrap();
    }
    for i in 1..=k2 {
        g.add_link(&format!("b{i}"), u, w).unwrap();
    }
    BiasedRepresentation::fully_unbalanced(g)
}

/// `two_bundle_star` plus an unbalanced loop h at the shared vertex u. The
/// loop lies in the closure of both bundles, so both long lines contain h
/// and h must stay a loop in every representation.
pub fn shared_loop_star(k1: usize, k2: usize) -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    let w = g.add_vertex("w").unwrap();
    for i in 1..=k1 {
        g.add_link(&format!("a{i}"), v, u).unwrap();
    }
    for i in 1..=k2 {
        g.add_link(&format!("b{i}"), u, w).unwrap();
    }
    g.add_loop("h", u).unwrap();
    BiasedRepresentation::fully_unbalanced(g)
}

/// Two vertex-disjoint long lines joined by a bridge link c. The fixing
/// graph is two disjoint edges; the frame matroid is connected through the
/// bridge.
pub fn bridged_bundles(k1: usize, k2: usize) -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    let w = g.add_vertex("w").unwrap();
    let x = g.add_vertex("x").unwrap();
    for i in 1..=k1 {
        g.add_link(&format!("a{i}"), u, v).unwrap();
    }
    for i in 1..=k2 {
        g.add_link(&format!("b{i}"), w, x).unwrap();
    }
    g.add_link("c", u, w).unwrap();
    BiasedRepresentation::fully_unbalanced(g)
}

/// Three six-element lines on the triangle a-b-c: the fixing graph is a
/// 3-cycle, so any fixing tree must drop one line.
pub fn triangle_of_lines() -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let a = g.add_vertex("a").unwrap();
    let b = g.add_vertex("b").unwrap();
    let c = g.add_vertex("c").unwrap();
    for i in 1..=6 {
        g.add_link(&format!("p{i}"), a, b).unwrap();
    }
    for i in 1..=6 {
        g.add_link(&format!("q{i}"), b, c).unwrap();
    }
    for i in 1..=6 {
        g.add_link(&format!("r{i}"), c, a).unwrap();
    }
    BiasedRepresentation::fully_unbalanced(g)
}

/// Five parallel links plus an unbalanced loop e on a separate vertex. The
/// lift matroid is U_{2,6}; the loop joins the line without contributing an
/// endpoint.
pub fn lift_line_with_far_loop() -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    let w0 = g.add_vertex("w0").unwrap();
    for i in 1..=5 {
        g.add_link(&format!("l{i}"), u, v).unwrap();
    }
    g.add_loop("e", w0).unwrap();
    BiasedRepresentation::fully_unbalanced(g)
}

/// Five parallel links between u and v plus an unbalanced loop e at v. Both
/// the lift matroid and the frameworks machinery see U_{2,6}; under the
/// canonical quasi rules e stays a loop at v (it avoids u, and cl(∅) at v
/// is empty).
pub fn line_with_end_loop() -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    for i in 1..=5 {
        g.add_link(&format!("l{i}"), u, v).unwrap();
    }
    g.add_loop("e", v).unwrap();
    BiasedRepresentation::fully_unbalanced(g)
}

/// Two vertex-disjoint bundles with nothing joining them: `a*` between u1
/// and v1, `b*` between u2 and v2. The lift matroid is connected (any a-pair
/// and b-pair form a circuit) even though the graph is not.
pub fn disjoint_bundles(k1: usize, k2: usize) -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u1 = g.add_vertex("u1").unwrap();
    let v1 = g.add_vertex("v1").unwrap();
    let u2 = g.add_vertex("u2").unwrap();
    let v2 = g.add_vertex("v2").unwrap();
    for i in 1..=k1 {
        g.add_link(&format!("a{i}"), u1, v1).unwrap();
    }
    for i in 1..=k2 {
        g.add_link(&format!("b{i}"), u2, v2).unwrap();
    }
    BiasedRepresentation::fully_unbalanced(g)
}

/// `disjoint_bundles` plus an unbalanced loop h at u1. In the lift matroid h
/// completes a circuit with any two a's and with any two b's, so h lies on
/// both long lines and no relink can keep the matroid: the loop is forced.
pub fn disjoint_bundles_shared_loop(k1: usize, k2: usize) -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u1 = g.add_vertex("u1").unwrap();
    let v1 = g.add_vertex("v1").unwrap();
    let u2 = g.add_vertex("u2").unwrap();
    let v2 = g.add_vertex("v2").unwrap();
    for i in 1..=k1 {
        g.add_link(&format!("a{i}"), u1, v1).unwrap();
    }
    for i in 1..=k2 {
        g.add_link(&format!("b{i}"), u2, v2).unwrap();
    }
    g.add_loop("h", u1).unwrap();
    BiasedRepresentation::fully_unbalanced(g)
}

/// A long line a1..a5 + e between u and v where e is a loop at u held in
/// place by a loose handcuff: a digon c1, c2 on x-y reaches u through the
/// link p1, and {c1, c2, p1, e} is a frame circuit. Placing e from matroid
/// queries must find that circuit and pin the loop at u.
pub fn handcuffed_line() -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    let x = g.add_vertex("x").unwrap();
    let y = g.add_vertex("y").unwrap();
    for i in 1..=5 {
        g.add_link(&format!("a{i}"), u, v).unwrap();
    }
    g.add_loop("e", u).unwrap();
    g.add_link("c1", x, y).unwrap();
    g.add_link("c2", x, y).unwrap();
    g.add_link("p1", u, x).unwrap();
    BiasedRepresentation::fully_unbalanced(g)
}

/// Three long lines strung along the path v - u - w - x: `a*` between v and
/// u, `b*` between u and w, `c*` between w and x. The fixing graph is that
/// path; the outer lines are pendant, the middle one is not.
pub fn three_bundle_path(k1: usize, k2: usize, k3: usize) -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    let w = g.add_vertex("w").unwrap();
    let x = g.add_vertex("x").unwrap();
    for i in 1..=k1 {
        g.add_link(&format!("a{i}"), v, u).unwrap();
    }
    for i in 1..=k2 {
        g.add_link(&format!("b{i}"), u, w).unwrap();
    }
    for i in 1..=k3 {
        g.add_link(&format!("c{i}"), w, x).unwrap();
    }
    BiasedRepresentation::fully_unbalanced(g)
}

/// `pendant_line_graph` plus an unbalanced loop t at the tail vertex w. The
/// line l1..l6 stays pendant at v while the far end now carries a loop, so
/// roll-ups happen away from the only existing loop.
pub fn pendant_line_with_loop_tail() -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let u = g.add_vertex("u").unwrap();
    let v = g.add_vertex("v").unwrap();
    let w = g.add_vertex("w").unwrap();
    for i in 1..=6 {
        g.add_link(&format!("l{i}"), u, v).unwrap();
    }
    g.add_link("m1", u, w).unwrap();
    g.add_link("m2", u, w).unwrap();
    g.add_loop("t", w).unwrap();
    BiasedRepresentation::fully_unbalanced(g)
}

/// The cycle matroid of the complete graph on four vertices, on elements
/// named after its edges.
pub fn mk4() -> Matroid {
    Matroid::from_labels(
        &["ab", "ac", "ad", "bc", "bd", "cd"],
        &[
            &["ab", "ac", "bc"],
            &["ab", "ad", "bd"],
            &["ac", "ad", "cd"],
            &["bc", "bd", "cd"],
            &["ab", "ad", "bc", "cd"],
            &["ab", "ac", "bd", "cd"],
            &["ac", "ad", "bc", "bd"],
        ],
    )
    .unwrap()
}

/// A three-vertex frame representation of M(K_4): roll vertex d into loops.
/// The triangle a-b-c stays balanced; the former edges at d become
/// unbalanced loops at their surviving endpoints.
pub fn mk4_rolled_rep() -> BiasedRepresentation {
    let mut g = Multigraph::new();
    let a = g.add_vertex("a").unwrap();
    let b = g.add_vertex("b").unwrap();
    let c = g.add_vertex("c").unwrap();
    g.add_link("ab", a, b).unwrap();
    g.add_link("ac", a, c).unwrap();
    g.add_link("bc", b, c).unwrap();
    g.add_loop("ad", a).unwrap();
    g.add_loop("bd", b).unwrap();
    g.add_loop("cd", c).unwrap();
    let triangle = 0b111;
    BiasedRepresentation::new(g, alloc::vec![triangle]).unwrap()
}

/// Named two-long-line (and related) fixtures for fixing-graph uniqueness
/// sweeps. Every entry is a frame representation whose matroid has at least
/// one long line.
pub fn long_line_family() -> Vec<(String, BiasedRepresentation)> {
    alloc::vec![
        (String::from("bundle6"), parallel_bundle(6)),
        (String::from("bundle7"), parallel_bundle(7)),
        (String::from("pendant-line"), pendant_line_graph()),
        (String::from("star-6-6"), two_bundle_star(6, 6)),
        (String::from("star-7-6"), two_bundle_star(7, 6)),
        (String::from("star-7-7"), two_bundle_star(7, 7)),
        (String::from("shared-loop-6-6"), shared_loop_star(6, 6)),
        (String::from("shared-loop-7-6"), shared_loop_star(7, 6)),
        (String::from("bridged-6-6"), bridged_bundles(6, 6)),
        (String::from("bridged-7-6"), bridged_bundles(7, 6)),
        (String::from("triangle-of-lines"), triangle_of_lines()),
    ]
}

/// Frame fixtures whose matroids carry at least two long lines, for the
/// fixing-graph uniqueness sweeps. All are small enough for exhaustive
/// representation search.
pub fn multi_line_family() -> Vec<(String, BiasedRepresentation)> {
    alloc::vec![
        (String::from("star-6-6"), two_bundle_star(6, 6)),
        (String::from("star-7-6"), two_bundle_star(7, 6)),
        (String::from("star-7-7"), two_bundle_star(7, 7)),
        (String::from("star-8-6"), two_bundle_star(8, 6)),
        (String::from("shared-loop-6-6"), shared_loop_star(6, 6)),
        (String::from("shared-loop-7-6"), shared_loop_star(7, 6)),
        (String::from("bridged-6-6"), bridged_bundles(6, 6)),
        (String::from("bridged-7-6"), bridged_bundles(7, 6)),
        (String::from("bridged-7-7"), bridged_bundles(7, 7)),
        (String::from("path-6-6-6"), three_bundle_path(6, 6, 6)),
        (String::from("triangle-of-lines"), triangle_of_lines()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::{represents, ClassTag};

    #[test]
    fn rolled_rep_gives_mk4() {
        let rep = mk4_rolled_rep();
        let m = mk4();
        m.validate().unwrap();
        assert!(represents(&m, &rep, ClassTag::Frame).unwrap());
    }

    #[test]
    fn lift_fixtures_give_u26() {
        let far = lift_line_with_far_loop();
        let near = line_with_end_loop();
        let u26 = crate::matroid::uniform(2, 6);
        let far_m = far.matroid(ClassTag::Lift).unwrap().unwrap();
        let near_m = near.matroid(ClassTag::Lift).unwrap().unwrap();
        assert_eq!(far_m.circuits().len(), u26.circuits().len());
        assert_eq!(near_m.circuits().len(), u26.circuits().len());
        assert_eq!(far_m.full_rank(), 2);
        assert_eq!(near_m.full_rank(), 2);
    }

    #[test]
    fn family_members_are_valid_and_have_long_lines() {
        for (name, rep) in long_line_family() {
            let m = rep.matroid(ClassTag::Frame).unwrap().unwrap();
            m.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!m.long_lines().is_empty(), "{name} has no long line");
        }
    }

    #[test]
    fn multi_line_family_members_have_two_long_lines() {
        let family = multi_line_family();
        assert!(family.len() >= 10);
        for (name, rep) in family {
            let m = rep.matroid(ClassTag::Frame).unwrap().unwrap();
            m.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(m.long_lines().len() >= 2, "{name} is short on long lines");
        }
    }

    #[test]
    fn loop_tail_fixture_is_rank_three_with_a_pendant_line() {
        let rep = pendant_line_with_loop_tail();
        let m = rep.matroid(ClassTag::Frame).unwrap().unwrap();
        assert_eq!(m.full_rank(), 3);
        let pendants = crate::fixing::pendant_lines(&m).unwrap();
        assert!(pendants.iter().any(|(l, p)| *p && l.elements.count_ones() == 6));
    }
}
