//! The length-two rewriting system whose irreducible words are the normal
//! forms.
//!
//! * R1: `x x⁻¹ → e`, `x⁻¹ x → e`
//! * R2: `x y → z⁻¹` for `(x, y, z) ∈ T`
//! * R3: `x⁻¹ y⁻¹ → z` for `(y, x, z) ∈ T`
//! * R4 (left orientation): `y z⁻¹ → s⁻¹ t` for `y ≠ z`, where `w` is the
//!   meet of `λ(y)` and `λ(z)`, `(y, w, s) ∈ T` and `(z, w, t) ∈ T`.
//! * R4' (right orientation): `s⁻¹ t → y z⁻¹` for `s ≠ t`, where `λ(w)` is
//!   the line through `s` and `t`, `(w, s, y) ∈ T` and `(w, t, z) ∈ T`.
//!
//! With the left orientation irreducible words have all inverse letters
//! first; with the right orientation all inverse letters last.

use std::collections::BTreeSet;

use serde::Serialize;

use super::Letter;
use crate::plane::Point;
use crate::presentation::TrianglePresentation;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Orientation {
    /// Inverse letters to the left: `x₁⁻¹ … x_m⁻¹ y₁ … y_n`.
    Left,
    /// Inverse letters to the right: `y₁ … y_n x₁⁻¹ … x_m⁻¹`.
    Right,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R4Right,
}

/// Rule tables built from an arbitrary (possibly invalid) presentation.
/// Inconsistent presentations produce several right-hand sides for one
/// left-hand side; [`RewriteSystem::reduce`] always takes the first.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    n: usize,
    r2: Vec<Vec<Point>>,
    r4: Vec<Vec<(Point, Point)>>,
    r4_right: Vec<Vec<(Point, Point)>>,
}

type Rhs = ([Letter; 2], usize);

impl RewriteSystem {
    pub fn new(tp: &TrianglePresentation) -> Self {
        let n = tp.num_points();
        let plane = tp.plane();
        let lambda = tp.lambda();
        let mut r2 = vec![Vec::new(); n * n];
        let mut r4 = vec![Vec::new(); n * n];
        let mut r4_right = vec![Vec::new(); n * n];
        for x in plane.points() {
            for y in plane.points() {
                r2[x.index() * n + y.index()] = tp.thirds(x, y).to_vec();
                if x == y {
                    continue;
                }
                if let Ok(w) = plane.meet(lambda.line_of(x), lambda.line_of(y)) {
                    for &s in tp.thirds(x, w) {
                        for &t in tp.thirds(y, w) {
                            r4[x.index() * n + y.index()].push((s, t));
                        }
                    }
                }
                if let Ok(line) = plane.join(x, y) {
                    let w = lambda.point_of(line);
                    for &a in tp.thirds(w, x) {
                        for &b in tp.thirds(w, y) {
                            r4_right[x.index() * n + y.index()].push((a, b));
                        }
                    }
                }
            }
        }
        RewriteSystem {
            n,
            r2,
            r4,
            r4_right,
        }
    }

    pub fn num_points(&self) -> usize {
        self.n
    }

    fn idx(&self, a: Point, b: Point) -> usize {
        a.index() * self.n + b.index()
    }

    /// Every rule application to the adjacent pair `a b`.
    pub fn rewrites(
        &self,
        orientation: Orientation,
        a: Letter,
        b: Letter,
    ) -> Vec<(Rule, Vec<Letter>)> {
        let mut out = Vec::new();
        if a.point == b.point && a.inverse != b.inverse {
            out.push((Rule::R1, Vec::new()));
        }
        match (a.inverse, b.inverse) {
            (false, false) => {
                for &z in &self.r2[self.idx(a.point, b.point)] {
                    out.push((Rule::R2, vec![Letter::inv(z)]));
                }
            }
            (true, true) => {
                for &z in &self.r2[self.idx(b.point, a.point)] {
                    out.push((Rule::R3, vec![Letter::pos(z)]));
                }
            }
            (false, true) if orientation == Orientation::Left && a.point != b.point => {
                for &(s, t) in &self.r4[self.idx(a.point, b.point)] {
                    out.push((Rule::R4, vec![Letter::inv(s), Letter::pos(t)]));
                }
            }
            (true, false) if orientation == Orientation::Right && a.point != b.point => {
                for &(y, z) in &self.r4_right[self.idx(a.point, b.point)] {
                    out.push((Rule::R4Right, vec![Letter::pos(y), Letter::inv(z)]));
                }
            }
            _ => {}
        }
        out
    }

    fn first_rewrite(&self, orientation: Orientation, a: Letter, b: Letter) -> Option<Rhs> {
        let none = Letter::pos(Point(0));
        if a.point == b.point && a.inverse != b.inverse {
            return Some(([none, none], 0));
        }
        match (a.inverse, b.inverse) {
            (false, false) => self.r2[self.idx(a.point, b.point)]
                .first()
                .map(|&z| ([Letter::inv(z), none], 1)),
            (true, true) => self.r2[self.idx(b.point, a.point)]
                .first()
                .map(|&z| ([Letter::pos(z), none], 1)),
            (false, true) if orientation == Orientation::Left => self.r4
                [self.idx(a.point, b.point)]
            .first()
            .map(|&(s, t)| ([Letter::inv(s), Letter::pos(t)], 2)),
            (true, false) if orientation == Orientation::Right => self.r4_right
                [self.idx(a.point, b.point)]
            .first()
            .map(|&(y, z)| ([Letter::pos(y), Letter::inv(z)], 2)),
            _ => None,
        }
    }

    /// Leftmost rewriting to an irreducible word.
    pub fn reduce(&self, orientation: Orientation, word: &[Letter]) -> Vec<Letter> {
        self.reduce_onto(orientation, Vec::with_capacity(word.len()), word)
    }

    /// Reduces `prefix · word` where `prefix` is already irreducible.
    pub(crate) fn reduce_onto(
        &self,
        orientation: Orientation,
        mut stack: Vec<Letter>,
        word: &[Letter],
    ) -> Vec<Letter> {
        let mut input: Vec<Letter> = word.iter().rev().copied().collect();
        while let Some(next) = input.pop() {
            if let Some(&top) = stack.last() {
                if let Some((rhs, len)) = self.first_rewrite(orientation, top, next) {
                    stack.pop();
                    input.extend(rhs[..len].iter().rev());
                    continue;
                }
            }
            stack.push(next);
        }
        stack
    }

    pub fn is_irreducible(&self, orientation: Orientation, word: &[Letter]) -> bool {
        word.windows(2)
            .all(|w| self.first_rewrite(orientation, w[0], w[1]).is_none())
    }

    /// All words reachable from `word` by one rewrite step at position
    /// `pos` (letters `pos` and `pos + 1`).
    pub fn step_at(
        &self,
        orientation: Orientation,
        word: &[Letter],
        pos: usize,
    ) -> Vec<(Rule, Vec<Letter>)> {
        if pos + 1 >= word.len() {
            return Vec::new();
        }
        self.rewrites(orientation, word[pos], word[pos + 1])
            .into_iter()
            .map(|(rule, rhs)| {
                let mut out = word[..pos].to_vec();
                out.extend(rhs);
                out.extend_from_slice(&word[pos + 2..]);
                (rule, out)
            })
            .collect()
    }

    /// Enumerates every word of two and three letters, rewrites it one step
    /// in every possible way, reduces each result and records words whose
    /// results disagree. By Newman's lemma an empty list, together with the
    /// termination measure, certifies unique irreducible forms.
    pub fn critical_pairs(&self, orientation: Orientation) -> (usize, Vec<Divergence>) {
        let letters: Vec<Letter> = (0..self.n)
            .flat_map(|i| [Letter::pos(Point(i as u16)), Letter::inv(Point(i as u16))])
            .collect();
        let mut checked = 0;
        let mut out = Vec::new();
        let mut check = |word: Vec<Letter>| {
            let mut forms = BTreeSet::new();
            for pos in 0..word.len() - 1 {
                for (_, next) in self.step_at(orientation, &word, pos) {
                    forms.insert(self.reduce(orientation, &next));
                }
            }
            checked += 1;
            if forms.len() > 1 {
                out.push(Divergence {
                    word,
                    forms: forms.into_iter().collect(),
                });
            }
        };
        for &a in &letters {
            for &b in &letters {
                check(vec![a, b]);
                for &c in &letters {
                    check(vec![a, b, c]);
                }
            }
        }
        (checked, out)
    }
}

/// A word with two different irreducible descendants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub word: Vec<Letter>,
    pub forms: Vec<Vec<Letter>>,
}

/// `(length, misplaced pairs)`, where a misplaced pair is a positive letter
/// before an inverse one (left orientation) or the reverse (right). Every
/// rule strictly lowers this lexicographically.
pub fn termination_measure(orientation: Orientation, word: &[Letter]) -> (usize, usize) {
    let mut seen_first = 0usize;
    let mut misplaced = 0usize;
    for l in word {
        let (first, second) = match orientation {
            Orientation::Left => (!l.inverse, l.inverse),
            Orientation::Right => (l.inverse, !l.inverse),
        };
        if second {
            misplaced += seen_first;
        }
        if first {
            seen_first += 1;
        }
    }
    (word.len(), misplaced)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub words_checked: usize,
    pub left: Vec<Divergence>,
    pub right: Vec<Divergence>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

/// Critical-pair check for both orientations of the rewriting system.
pub fn check_confluence(tp: &TrianglePresentation) -> ConfluenceReport {
    let rs = RewriteSystem::new(tp);
    let (words_checked, left) = rs.critical_pairs(Orientation::Left);
    let (_, right) = rs.critical_pairs(Orientation::Right);
    ConfluenceReport {
        words_checked,
        left,
        right,
    }
}
