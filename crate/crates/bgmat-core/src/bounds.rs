//! Closed-form bounds on representation counts, line lengths and matroid
//! sizes, per class, as exact big integers.
//!
//! For rank r, with c2 = C(r,2) and q = C(2r,2):
//!
//! * frame: canonical count < (c2 + r)^(5 c2), coarsened to r^(5 r^2); a long
//!   line in a rank-r frame matroid has fewer than 10 r^(5 r^2) points; a
//!   simple rank-r frame matroid with a long line has at most
//!   (10 r^(5 r^2) - 1) c2 + 1 elements, coarsened to 5 r^(5 r^2 + 2).
//! * lift: canonical count < c2^(6 c2) with two or more long lines and
//!   c2^(5 c2) with exactly one (sharpened to (c2 - 1)^(5 c2)), coarsened to
//!   r^(6 r^2); line bound 6 r^(6 r^2); size bound (6 r^(6 r^2) - 1) c2 + 1,
//!   coarsened to 3 r^(6 r^2 + 2).
//! * quasi: canonical framework count < n(r) = q^q (q + 2r)^(5 q), coarsened
//!   to (3 r^2)^(12 r^2); line bound (8r + 2) n(r); size bound
//!   (8r + 2) n(r) q; coarse forms add one resp. two factors of 3 r^2.

use alloc::vec::Vec;

use num_bigint::BigUint;

/// One named closed-form value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub value: BigUint,
}

/// Exact values of the displayed count and size bounds at a given rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub rank: usize,
    pub entries: Vec<BoundEntry>,
}

impl BoundsReport {
    pub fn get(&self, name: &str) -> Option<&BigUint> {
        self.entries.iter().find(|e| e.name == name).map(|e| &e.value)
    }
}

/// Exact big-integer evaluation of the canonical-count, line-length, and
/// excluded-minor size bounds at rank r >= 1. The sharp lift one-line count
/// uses base C(r,2) - 1, which is taken as 1 when its exponent is zero (so
/// the r = 1 row stays well defined) and may evaluate to 0 at r = 2.
pub fn bound_formulas(r: usize) -> BoundsReport {
    assert!(r >= 1, "rank must be positive");
    let big = |x: usize| BigUint::from(x);
    let c2 = r * (r - 1) / 2;
    let d2 = 2 * r * (2 * r - 1) / 2;
    let rr = big(r);
    let pow = |b: &BigUint, e: usize| b.pow(e as u32);
    let frame_canonical = pow(&big(c2 + r), 5 * c2);
    let frame_coarse = pow(&rr, 5 * r * r);
    let frame_line = big(10) * &frame_coarse;
    let lift_coarse = pow(&rr, 6 * r * r);
    let lift_line = big(6) * &lift_coarse;
    let quasi_canonical = pow(&big(d2), d2) * pow(&big(d2 + 2 * r), 5 * d2);
    let quasi_base = big(3 * r * r);
    // Guarded base: C(r,2) - 1 would underflow at r = 1, where the exponent
    // is zero anyway.
    let one_line_sharp = if c2 == 0 { big(1) } else { pow(&big(c2 - 1), 5 * c2) };
    let entries = alloc::vec![
        BoundEntry { name: "frame-canonical", value: frame_canonical },
        BoundEntry { name: "frame-canonical-coarse", value: frame_coarse.clone() },
        BoundEntry { name: "frame-line-length", value: frame_line.clone() },
        BoundEntry {
            name: "frame-size",
            value: (&frame_line - 1usize) * c2 + 1usize,
        },
        BoundEntry { name: "frame-size-coarse", value: big(5) * pow(&rr, 5 * r * r + 2) },
        BoundEntry { name: "lift-canonical-many-lines", value: pow(&big(c2), 6 * c2) },
        BoundEntry { name: "lift-canonical-coarse", value: lift_coarse },
        BoundEntry { name: "lift-canonical-one-line", value: pow(&big(c2), 5 * c2) },
        BoundEntry { name: "lift-canonical-one-line-sharp", value: one_line_sharp },
        BoundEntry { name: "lift-line-length", value: lift_line.clone() },
        BoundEntry {
            name: "lift-size",
            value: (&lift_line - 1usize) * c2 + 1usize,
        },
        BoundEntry { name: "lift-size-coarse", value: big(3) * pow(&rr, 6 * r * r + 2) },
        BoundEntry { name: "quasi-canonical", value: quasi_canonical.clone() },
        BoundEntry { name: "quasi-canonical-coarse", value: pow(&quasi_base, 12 * r * r) },
        BoundEntry {
            name: "quasi-line-length",
            value: big(8 * r + 2) * &quasi_canonical,
        },
        BoundEntry {
            name: "quasi-line-length-coarse",
            value: pow(&quasi_base, 12 * r * r + 1),
        },
        BoundEntry {
            name: "quasi-size",
            value: big(8 * r + 2) * &quasi_canonical * d2,
        },
        BoundEntry { name: "quasi-size-coarse", value: pow(&quasi_base, 12 * r * r + 2) },
    ];
    BoundsReport { rank: r, entries }
}
