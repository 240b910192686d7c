//! Triangle presentations: cyclically closed triple sets compatible with a
//! point-line correspondence.

mod format;
mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::plane::{
    validate_plane, PlaneViolation, Point, PointLineCorrespondence, ProjectivePlane,
};
use crate::{Error, Result};

pub use format::{parse, serialize};
pub use search::{search, search_all, search_with, SearchOptions, SearchOutcome};

/// An ordered triple `(x, y, z)` standing for the relation `x y z = e`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple(pub Point, pub Point, pub Point);

impl Triple {
    pub fn rotate(self) -> Triple {
        Triple(self.1, self.2, self.0)
    }

    pub fn rotations(self) -> [Triple; 3] {
        let r = self.rotate();
        [self, r, r.rotate()]
    }

    /// Least rotation; the representative written to files.
    pub fn canonical(self) -> Triple {
        *self.rotations().iter().min().unwrap()
    }

    pub fn is_diagonal(self) -> bool {
        self.0 == self.1 && self.1 == self.2
    }
}

#[derive(Clone)]
pub struct TrianglePresentation {
    label: String,
    plane: ProjectivePlane,
    lambda: PointLineCorrespondence,
    triples: BTreeSet<Triple>,
    // All z with (x, y, z) present, indexed by x * n + y.
    third: Vec<Vec<Point>>,
}

impl PartialEq for TrianglePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
            && self.plane == other.plane
            && self.lambda == other.lambda
            && self.triples == other.triples
    }
}

impl Eq for TrianglePresentation {}

impl fmt::Debug for TrianglePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrianglePresentation")
            .field("label", &self.label)
            .field("order", &self.plane.order())
            .field("triples", &self.triples.len())
            .finish()
    }
}

impl TrianglePresentation {
    /// Stores the triples exactly as given. Nothing beyond index ranges is
    /// checked; see [`validate`].
    pub fn new(
        label: impl Into<String>,
        plane: ProjectivePlane,
        lambda: PointLineCorrespondence,
        triples: impl IntoIterator<Item = Triple>,
    ) -> Result<Self> {
        let n = plane.num_points();
        if lambda.as_slice().len() != n {
            return Err(Error::LambdaNotBijective(format!(
                "{} images for {n} points",
                lambda.as_slice().len()
            )));
        }
        let triples: BTreeSet<Triple> = triples.into_iter().collect();
        let mut third = vec![Vec::new(); n * n];
        for t in &triples {
            for p in [t.0, t.1, t.2] {
                if p.index() >= n {
                    return Err(Error::ForeignLetter(p.index()));
                }
            }
            third[t.0.index() * n + t.1.index()].push(t.2);
        }
        Ok(TrianglePresentation {
            label: label.into(),
            plane,
            lambda,
            triples,
            third,
        })
    }

    /// Like [`TrianglePresentation::new`] but adds every rotation of every
    /// listed triple first.
    pub fn with_cyclic_closure(
        label: impl Into<String>,
        plane: ProjectivePlane,
        lambda: PointLineCorrespondence,
        triples: impl IntoIterator<Item = Triple>,
    ) -> Result<Self> {
        let closed: Vec<Triple> = triples.into_iter().flat_map(Triple::rotations).collect();
        Self::new(label, plane, lambda, closed)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn plane(&self) -> &ProjectivePlane {
        &self.plane
    }

    pub fn lambda(&self) -> &PointLineCorrespondence {
        &self.lambda
    }

    pub fn order(&self) -> usize {
        self.plane.order()
    }

    pub fn num_points(&self) -> usize {
        self.plane.num_points()
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn contains(&self, t: Triple) -> bool {
        self.triples.contains(&t)
    }

    /// Every `z` with `(x, y, z)` in the presentation.
    pub fn thirds(&self, x: Point, y: Point) -> &[Point] {
        &self.third[x.index() * self.num_points() + y.index()]
    }

    /// The `z` completing `(x, y, z)`, when exactly one exists.
    pub fn third(&self, x: Point, y: Point) -> Option<Point> {
        match self.thirds(x, y) {
            [z] => Some(*z),
            _ => None,
        }
    }

    /// `y ∈ λ(x)`.
    pub fn on_lambda(&self, x: Point, y: Point) -> bool {
        self.plane.incident(y, self.lambda.line_of(x))
    }

    pub fn lambda_points(&self, x: Point) -> &[Point] {
        self.plane.line(self.lambda.line_of(x))
    }

    /// One representative per cyclic class, sorted.
    pub fn representatives(&self) -> Vec<Triple> {
        let reps: BTreeSet<Triple> = self.triples.iter().map(|t| t.canonical()).collect();
        reps.into_iter().collect()
    }

    pub fn name(&self, p: Point) -> &str {
        self.plane.name(p)
    }

    pub fn point(&self, name: &str) -> Result<Point> {
        self.plane
            .point_by_name(name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn is_valid(&self) -> bool {
        validate(self).is_valid()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// The underlying incidence structure is not a projective plane.
    Plane,
    /// `(x, y, ·)` exists iff `y ∈ λ(x)`.
    Incidence,
    /// Closure under rotation.
    Cyclic,
    /// At most one completion per pair.
    Unique,
    /// `λ` read back from the triples differs from the stored one.
    Recovery,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Plane => "plane",
            Condition::Incidence => "(i)",
            Condition::Cyclic => "(ii)",
            Condition::Unique => "(iii)",
            Condition::Recovery => "recovery",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    Pair(Point, Point),
    Triple(Triple),
    Point(Point),
    Plane(PlaneViolation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub witness: Witness,
}

impl Violation {
    pub fn involves(&self, p: Point) -> bool {
        match &self.witness {
            Witness::Pair(a, b) => *a == p || *b == p,
            Witness::Triple(t) => t.0 == p || t.1 == p || t.2 == p,
            Witness::Point(a) => *a == p,
            Witness::Plane(_) => false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub violations: Vec<Violation>,
}

impl PresentationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn of(&self, condition: Condition) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(move |v| v.condition == condition)
    }

    pub fn describe(&self, tp: &TrianglePresentation) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| {
                let w = match &v.witness {
                    Witness::Pair(a, b) => format!("({}, {})", tp.name(*a), tp.name(*b)),
                    Witness::Triple(t) => {
                        format!("({} {} {})", tp.name(t.0), tp.name(t.1), tp.name(t.2))
                    }
                    Witness::Point(a) => tp.name(*a).to_string(),
                    Witness::Plane(p) => p.to_string(),
                };
                format!("{} {}", v.condition, w)
            })
            .collect()
    }
}

/// Checks the plane axioms and conditions (i)-(iii) exhaustively, and that
/// `λ` is recoverable from the triple set.
pub fn validate(tp: &TrianglePresentation) -> PresentationReport {
    let mut violations: Vec<Violation> = validate_plane(tp.plane())
        .into_iter()
        .map(|p| Violation {
            condition: Condition::Plane,
            witness: Witness::Plane(p),
        })
        .collect();
    let plane = tp.plane();
    for x in plane.points() {
        for y in plane.points() {
            let zs = tp.thirds(x, y);
            let incident = tp.on_lambda(x, y);
            if incident && zs.is_empty() {
                violations.push(Violation {
                    condition: Condition::Incidence,
                    witness: Witness::Pair(x, y),
                });
            }
            if !incident {
                for &z in zs {
                    violations.push(Violation {
                        condition: Condition::Incidence,
                        witness: Witness::Triple(Triple(x, y, z)),
                    });
                }
            }
            if zs.len() > 1 {
                violations.push(Violation {
                    condition: Condition::Unique,
                    witness: Witness::Pair(x, y),
                });
            }
        }
    }
    for &t in tp.triples() {
        if !tp.contains(t.rotate()) {
            violations.push(Violation {
                condition: Condition::Cyclic,
                witness: Witness::Triple(t),
            });
        }
    }
    for x in plane.points() {
        let recovered: Vec<Point> = plane
            .points()
            .filter(|&y| !tp.thirds(x, y).is_empty())
            .collect();
        if recovered != tp.lambda_points(x) {
            violations.push(Violation {
                condition: Condition::Recovery,
                witness: Witness::Point(x),
            });
        }
    }
    PresentationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The cyclic Fano plane with `λ(a0) = {a1, a2, a4}`, and a presentation
    /// in which `a0 a1 a1 = a0 a2 a2 = a0 a4 a4 = e`.
    pub(crate) const B3_PATTERN: &str = crate::fixtures::B3_PATTERN;

    #[test]
    fn fixture_has_no_violation_at_a0() {
        let tp = parse(B3_PATTERN).unwrap();
        let a0 = tp.point("a0").unwrap();
        let report = validate(&tp);
        assert!(report.violations.iter().all(|v| !v.involves(a0)));
        assert!(report.is_valid());
        let line: Vec<&str> = tp.lambda_points(a0).iter().map(|&p| tp.name(p)).collect();
        assert_eq!(line, ["a1", "a2", "a4"]);
    }

    #[test]
    fn duplicate_completion_breaks_uniqueness() {
        let tp = parse(B3_PATTERN).unwrap();
        let p = |s: &str| tp.point(s).unwrap();
        let mut triples: Vec<Triple> = tp.triples().iter().copied().collect();
        triples.push(Triple(p("a0"), p("a1"), p("a3")));
        let bad =
            TrianglePresentation::new("bad", tp.plane().clone(), tp.lambda().clone(), triples)
                .unwrap();
        let report = validate(&bad);
        assert!(report
            .of(Condition::Unique)
            .any(|v| v.witness == Witness::Pair(p("a0"), p("a1"))));
    }

    #[test]
    fn dropped_rotation_breaks_closure() {
        let tp = parse(B3_PATTERN).unwrap();
        let p = |s: &str| tp.point(s).unwrap();
        let dropped = Triple(p("a1"), p("a1"), p("a0"));
        let triples = tp.triples().iter().copied().filter(|&t| t != dropped);
        let bad =
            TrianglePresentation::new("bad", tp.plane().clone(), tp.lambda().clone(), triples)
                .unwrap();
        let report = validate(&bad);
        assert!(report.of(Condition::Cyclic).count() > 0);
        assert!(report.of(Condition::Incidence).count() > 0);
    }

    #[test]
    fn empty_triple_set_misses_every_incident_pair() {
        let tp = parse(B3_PATTERN).unwrap();
        let empty = TrianglePresentation::new(
            "empty",
            tp.plane().clone(),
            tp.lambda().clone(),
            std::iter::empty(),
        )
        .unwrap();
        let report = validate(&empty);
        assert_eq!(report.of(Condition::Incidence).count(), 21);
    }

    #[test]
    fn triple_count_and_degree() {
        let tp = parse(B3_PATTERN).unwrap();
        assert_eq!(tp.triples().len(), 7 * 3);
        for x in tp.plane().points() {
            assert_eq!(tp.triples().iter().filter(|t| t.0 == x).count(), 3);
        }
        assert_eq!(
            tp.lambda().line_of(Point(0)),
            tp.plane().line_id(tp.lambda_points(Point(0))).unwrap()
        );
    }
}
