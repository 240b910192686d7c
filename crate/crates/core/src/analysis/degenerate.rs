use serde::Serialize;

use crate::plane::Point;
use crate::presentation::{TrianglePresentation, Triple};

/// The three groups presented over the three-point geometry.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DegenerateKind {
    /// `abc = acb = e`: all generators commute.
    ZSquare,
    /// `x³ = y³ = z³ = xyz = e`.
    T333,
    /// `xy² = xz² = e`, the Klein bottle group.
    Klein,
}

impl DegenerateKind {
    pub fn name(self) -> &'static str {
        match self {
            DegenerateKind::ZSquare => "Z^2",
            DegenerateKind::T333 => "T(3,3,3)",
            DegenerateKind::Klein => "Klein bottle",
        }
    }
}

/// Reads the kind off the shape of the relators of an order-one
/// presentation: diagonal triples mean `T(3,3,3)`, triples `(x, y, y)`
/// mean the Klein bottle group, and only triples of distinct points mean
/// `ℤ²`.
pub fn classify_degenerate(tp: &TrianglePresentation) -> Option<DegenerateKind> {
    if tp.order() != 1 || tp.triples().is_empty() {
        return None;
    }
    let t = tp.triples();
    if t.iter().any(|t| t.is_diagonal()) {
        Some(DegenerateKind::T333)
    } else if t.iter().any(|t| t.0 != t.1 && t.1 == t.2) {
        Some(DegenerateKind::Klein)
    } else if t.iter().all(|t| t.0 != t.1 && t.1 != t.2 && t.0 != t.2) {
        Some(DegenerateKind::ZSquare)
    } else {
        None
    }
}

/// The triple set up to renaming points: the least sorted relabelling over
/// all permutations of the points. Practical only for small planes.
pub fn relator_pattern(tp: &TrianglePresentation) -> Vec<Triple> {
    let n = tp.num_points();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Triple>> = None;
    loop {
        let map = |p: Point| Point(perm[p.index()] as u16);
        let mut relabelled: Vec<Triple> = tp
            .triples()
            .iter()
            .map(|t| Triple(map(t.0), map(t.1), map(t.2)))
            .collect();
        relabelled.sort_unstable();
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            best = Some(relabelled);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
