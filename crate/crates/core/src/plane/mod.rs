//! Finite projective planes and point-line correspondences.
//!
//! A plane is stored as a plain incidence structure: named points and lines
//! given as sorted point sets. Lines are always kept in lexicographic order
//! of their point lists, so `LineId`s are canonical for a given set of lines.

mod singer;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use singer::SingerLabelling;

/// Index of a point in its plane.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point(pub u16);

impl Point {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of a line in its plane.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineId(pub u16);

impl LineId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone)]
pub struct ProjectivePlane {
    order: usize,
    names: Vec<String>,
    lines: Vec<Vec<Point>>,
    incidence: Vec<bool>,
    lines_through: Vec<Vec<LineId>>,
    by_name: HashMap<String, Point>,
    // Homogeneous coordinates, present for planes built over a prime field.
    coordinates: Option<Vec<[u32; 3]>>,
}

impl PartialEq for ProjectivePlane {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.names == other.names && self.lines == other.lines
    }
}

impl Eq for ProjectivePlane {}

impl fmt::Debug for ProjectivePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProjectivePlane")
            .field("order", &self.order)
            .field("points", &self.names.len())
            .field("lines", &self.lines.len())
            .finish()
    }
}

/// Number of points (and lines) of a plane of order `q`.
pub fn plane_size(q: usize) -> usize {
    q * q + q + 1
}

pub(crate) fn is_prime(q: usize) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).collect()
}

impl ProjectivePlane {
    /// Builds an incidence structure from explicit lines. No axiom is
    /// checked beyond index ranges; use [`validate_plane`] for that.
    pub fn from_lines(order: usize, names: Vec<String>, lines: Vec<Vec<Point>>) -> Result<Self> {
        Self::assemble(order, names, lines, None)
    }

    /// The cyclic plane whose lines are the translates `D + i (mod n)` of a
    /// difference set `D`, with points named `a0, a1, ...`.
    pub fn from_difference_set(order: usize, base: &[usize]) -> Result<Self> {
        let n = plane_size(order);
        let lines = (0..n)
            .map(|shift| {
                base.iter()
                    .map(|&d| Point(((d + shift) % n) as u16))
                    .collect()
            })
            .collect();
        Self::from_lines(order, default_names(n), lines)
    }

    fn assemble(
        order: usize,
        names: Vec<String>,
        lines: Vec<Vec<Point>>,
        coordinates: Option<Vec<[u32; 3]>>,
    ) -> Result<Self> {
        let n_points = names.len();
        let mut by_name = HashMap::with_capacity(n_points);
        for (i, name) in names.iter().enumerate() {
            if by_name.insert(name.clone(), Point(i as u16)).is_some() {
                return Err(Error::Syntax {
                    line: 0,
                    message: format!("duplicate point name `{name}`"),
                });
            }
        }
        let mut lines: Vec<Vec<Point>> = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        for p in lines.iter().flatten() {
            if p.index() >= n_points {
                return Err(Error::ForeignLetter(p.index()));
            }
        }
        lines.sort();
        let mut incidence = vec![false; n_points * lines.len()];
        let mut lines_through = vec![Vec::new(); n_points];
        for (li, line) in lines.iter().enumerate() {
            for p in line {
                incidence[p.index() * lines.len() + li] = true;
                lines_through[p.index()].push(LineId(li as u16));
            }
        }
        Ok(ProjectivePlane {
            order,
            names,
            lines,
            incidence,
            lines_through,
            by_name,
            coordinates,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_points(&self) -> usize {
        self.names.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.names.len()).map(|i| Point(i as u16))
    }

    pub fn line_ids(&self) -> impl Iterator<Item = LineId> + '_ {
        (0..self.lines.len()).map(|i| LineId(i as u16))
    }

    pub fn name(&self, p: Point) -> &str {
        &self.names[p.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn point_by_name(&self, name: &str) -> Option<Point> {
        self.by_name.get(name).copied()
    }

    pub fn line(&self, l: LineId) -> &[Point] {
        &self.lines[l.index()]
    }

    pub fn lines(&self) -> &[Vec<Point>] {
        &self.lines
    }

    pub fn lines_through(&self, p: Point) -> &[LineId] {
        &self.lines_through[p.index()]
    }

    /// Finds the line with exactly this point set.
    pub fn line_id(&self, points: &[Point]) -> Option<LineId> {
        let mut key = points.to_vec();
        key.sort_unstable();
        key.dedup();
        self.lines
            .binary_search(&key)
            .ok()
            .map(|i| LineId(i as u16))
    }

    #[inline]
    pub fn incident(&self, p: Point, l: LineId) -> bool {
        self.incidence[p.index() * self.lines.len() + l.index()]
    }

    pub fn coordinates(&self, p: Point) -> Option<[u32; 3]> {
        self.coordinates.as_ref().map(|c| c[p.index()])
    }

    /// The unique common point of two distinct lines.
    pub fn meet(&self, l1: LineId, l2: LineId) -> Result<Point> {
        if l1 == l2 {
            return Err(Error::AmbiguousIntersection(l1.index(), l2.index()));
        }
        let (a, b) = (self.line(l1), self.line(l2));
        let mut common = a.iter().filter(|p| b.binary_search(p).is_ok());
        match (common.next(), common.next()) {
            (Some(&p), None) => Ok(p),
            _ => Err(Error::NoUniqueIntersection(l1.index(), l2.index())),
        }
    }

    /// The unique line through two distinct points.
    pub fn join(&self, p1: Point, p2: Point) -> Result<LineId> {
        if p1 == p2 {
            return Err(Error::NoUniqueJoin(p1.index(), p2.index()));
        }
        let mut common = self
            .lines_through(p1)
            .iter()
            .filter(|&&l| self.incident(p2, l));
        match (common.next(), common.next()) {
            (Some(&l), None) => Ok(l),
            _ => Err(Error::NoUniqueJoin(p1.index(), p2.index())),
        }
    }

    /// A cyclic labelling of the points under which lines are translates of
    /// one difference set.
    pub fn singer_labelling(&self) -> Result<SingerLabelling> {
        singer::labelling(self)
    }
}

/// Builds the Desarguesian plane `PG(2, q)` for prime `q`, or the
/// three-point degenerate geometry when `q = 1`.
///
/// Points are the nonzero vectors of `GF(q)^3` whose first nonzero entry is
/// 1, in lexicographic order.
pub fn build_desarguesian_plane(q: usize) -> Result<ProjectivePlane> {
    if q == 1 {
        let lines = vec![
            vec![Point(0), Point(1)],
            vec![Point(0), Point(2)],
            vec![Point(1), Point(2)],
        ];
        return ProjectivePlane::from_lines(1, default_names(3), lines);
    }
    if !is_prime(q) {
        return Err(Error::UnsupportedOrder(q));
    }
    let coords = normalized_vectors(q as u32);
    let n = coords.len();
    let lines = coords
        .iter()
        .map(|l| {
            coords
                .iter()
                .enumerate()
                .filter(|(_, p)| dot(l, p, q as u32) == 0)
                .map(|(i, _)| Point(i as u16))
                .collect()
        })
        .collect();
    ProjectivePlane::assemble(q, default_names(n), lines, Some(coords))
}

fn normalized_vectors(q: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let v = [x, y, z];
                if v.iter().find(|&&c| c != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn dot(a: &[u32; 3], b: &[u32; 3], q: u32) -> u32 {
    (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % q
}

/// One broken axiom of a projective plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PlaneViolation {
    PointCount {
        expected: usize,
        found: usize,
    },
    LineCount {
        expected: usize,
        found: usize,
    },
    LineSize {
        line: usize,
        size: usize,
    },
    PointDegree {
        point: usize,
        degree: usize,
    },
    PointPair {
        points: (usize, usize),
        common_lines: usize,
    },
    LineIntersection {
        lines: (usize, usize),
        common_points: usize,
    },
}

impl PlaneViolation {
    pub fn kind(&self) -> &'static str {
        match self {
            PlaneViolation::PointCount { .. } => "point count",
            PlaneViolation::LineCount { .. } => "line count",
            PlaneViolation::LineSize { .. } => "line size",
            PlaneViolation::PointDegree { .. } => "point degree",
            PlaneViolation::PointPair { .. } => "point pair",
            PlaneViolation::LineIntersection { .. } => "line intersection",
        }
    }
}

impl fmt::Display for PlaneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}", self.kind(), self)
    }
}

/// Checks every plane axiom exhaustively. An empty list means the
/// structure is a projective plane of its declared order.
pub fn validate_plane(plane: &ProjectivePlane) -> Vec<PlaneViolation> {
    let q = plane.order();
    let n = plane_size(q);
    let mut out = Vec::new();
    if plane.num_points() != n {
        out.push(PlaneViolation::PointCount {
            expected: n,
            found: plane.num_points(),
        });
    }
    if plane.num_lines() != n {
        out.push(PlaneViolation::LineCount {
            expected: n,
            found: plane.num_lines(),
        });
    }
    for (i, line) in plane.lines().iter().enumerate() {
        if line.len() != q + 1 {
            out.push(PlaneViolation::LineSize {
                line: i,
                size: line.len(),
            });
        }
    }
    for p in plane.points() {
        let degree = plane.lines_through(p).len();
        if degree != q + 1 {
            out.push(PlaneViolation::PointDegree {
                point: p.index(),
                degree,
            });
        }
    }
    for a in plane.points() {
        for b in plane.points().filter(|&b| b > a) {
            let common = plane
                .lines_through(a)
                .iter()
                .filter(|&&l| plane.incident(b, l))
                .count();
            if common != 1 {
                out.push(PlaneViolation::PointPair {
                    points: (a.index(), b.index()),
                    common_lines: common,
                });
            }
        }
    }
    for l1 in plane.line_ids() {
        for l2 in plane.line_ids().filter(|&l| l > l1) {
            let common = plane
                .line(l1)
                .iter()
                .filter(|&&p| plane.incident(p, l2))
                .count();
            if common != 1 {
                out.push(PlaneViolation::LineIntersection {
                    lines: (l1.index(), l2.index()),
                    common_points: common,
                });
            }
        }
    }
    out
}

/// A bijection from points to lines.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointLineCorrespondence {
    map: Vec<LineId>,
    inverse: Vec<Point>,
}

impl PointLineCorrespondence {
    pub fn new(map: Vec<LineId>) -> Result<Self> {
        let n = map.len();
        let mut inverse = vec![None; n];
        for (i, l) in map.iter().enumerate() {
            if l.index() >= n {
                return Err(Error::LambdaNotBijective(format!(
                    "line index {} out of range",
                    l.index()
                )));
            }
            if inverse[l.index()].replace(Point(i as u16)).is_some() {
                return Err(Error::LambdaNotBijective(format!(
                    "line {} is the image of two points",
                    l.index()
                )));
            }
        }
        Ok(PointLineCorrespondence {
            map,
            inverse: inverse.into_iter().map(Option::unwrap).collect(),
        })
    }

    #[inline]
    pub fn line_of(&self, p: Point) -> LineId {
        self.map[p.index()]
    }

    #[inline]
    pub fn point_of(&self, l: LineId) -> Point {
        self.inverse[l.index()]
    }

    pub fn as_slice(&self) -> &[LineId] {
        &self.map
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CorrespondenceFamily {
    /// Correspondences `x -> D + (m x + s)` relative to a Singer labelling,
    /// `m` a unit mod `n`.
    Singer,
    /// Every bijection, in lexicographic order of the line-index sequence.
    All,
}

/// Bijection enumeration beyond this many points is refused without an
/// explicit override.
pub const ALL_CORRESPONDENCES_MAX_POINTS: usize = 7;

/// Enumerates point-line correspondences of `plane` in a deterministic order.
pub fn enumerate_correspondences(
    plane: &ProjectivePlane,
    family: CorrespondenceFamily,
    allow_large: bool,
) -> Result<Box<dyn Iterator<Item = PointLineCorrespondence> + Send>> {
    let n = plane.num_points();
    match family {
        CorrespondenceFamily::All => {
            if n > ALL_CORRESPONDENCES_MAX_POINTS && !allow_large {
                return Err(Error::SearchSpaceTooLarge(format!(
                    "{n}! bijections; pass the override flag to enumerate them anyway"
                )));
            }
            Ok(Box::new(Permutations::new(n).map(|perm| {
                PointLineCorrespondence::new(perm.into_iter().map(|i| LineId(i as u16)).collect())
                    .expect("permutation is a bijection")
            })))
        }
        CorrespondenceFamily::Singer => {
            let labelling = plane.singer_labelling()?;
            let mut seen = std::collections::HashSet::new();
            let units: Vec<i64> = (1..n as i64).filter(|&m| gcd(m, n as i64) == 1).collect();
            let maps: Vec<_> = units
                .into_iter()
                .flat_map(|m| (0..n as i64).map(move |shift| (m, shift)))
                .map(|(m, shift)| labelling.correspondence(plane, m, shift))
                .filter(|m| seen.insert(m.clone()))
                .collect();
            Ok(Box::new(maps.into_iter()))
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Lexicographic permutations of `0..n`.
struct Permutations {
    current: Option<Vec<usize>>,
}

impl Permutations {
    fn new(n: usize) -> Self {
        Permutations {
            current: Some((0..n).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if let Some(i) = (1..next.len()).rev().find(|&i| next[i - 1] < next[i]) {
            let j = (i..next.len())
                .rev()
                .find(|&j| next[j] > next[i - 1])
                .unwrap();
            next.swap(i - 1, j);
            next[i..].reverse();
            self.current = Some(next);
        }
        Some(out)
    }
}
