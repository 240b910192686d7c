//! Structure of the generating set: commuting generators and the flat
//! subgroups they span, strips, generators of order three, line-central
//! generators, conjugate chains and normalizer scans.

mod degenerate;
mod normalizer;
mod subgroups;

use serde::Serialize;

use crate::plane::Point;
use crate::presentation::TrianglePresentation;
use crate::words::{A2Group, GroupElement};

pub use degenerate::{classify_degenerate, relator_pattern, DegenerateKind};
pub use normalizer::{
    condition_ii_bruteforce, condition_ii_counterexample, icc_conjugate_chain, lemma1_conjugator,
    normalizer_scan, ConjugateStep, FixingMatrix, NormalizerReport, NormalizerViolator,
};
pub use subgroups::{StripLattice, ZSquareSubgroup};

/// Result of comparing `xy` with `yx`, and for a commuting pair of distinct
/// generators the checks that `xyz = e` where `z` is the meet of `λ(x)`
/// and `λ(y)`, and that `x ∈ λ(y)`, `y ∈ λ(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Commutation {
    pub commutes: bool,
    pub witness: Option<Point>,
    pub witness_relation_holds: bool,
}

pub fn commutes(group: &A2Group, x: Point, y: Point) -> Commutation {
    let gx = group.generator(x);
    let gy = group.generator(y);
    let commutes = group.multiply(&gx, &gy) == group.multiply(&gy, &gx);
    if !commutes || x == y {
        return Commutation {
            commutes,
            witness: None,
            witness_relation_holds: true,
        };
    }
    let tp = group.presentation();
    let plane = tp.plane();
    let lambda = tp.lambda();
    match plane.meet(lambda.line_of(x), lambda.line_of(y)) {
        Ok(z) => {
            let xyz = group.multiply(&group.multiply(&gx, &gy), &group.generator(z));
            Commutation {
                commutes,
                witness: Some(z),
                witness_relation_holds: xyz.is_identity()
                    && tp.on_lambda(x, y)
                    && tp.on_lambda(y, x),
            }
        }
        Err(_) => Commutation {
            commutes,
            witness: None,
            witness_relation_holds: false,
        },
    }
}

fn commute_table(group: &A2Group) -> Vec<Vec<bool>> {
    let n = group.num_points();
    let gens: Vec<GroupElement> = (0..n).map(|i| group.generator(Point(i as u16))).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| group.multiply(&gens[i], &gens[j]) == group.multiply(&gens[j], &gens[i]))
                .collect()
        })
        .collect()
}

/// Unordered pairs `x < y` of commuting generators.
#[allow(clippy::needless_range_loop)]
pub fn commuting_pairs(group: &A2Group) -> Vec<(Point, Point)> {
    let t = commute_table(group);
    let n = t.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if t[i][j] {
                out.push((Point(i as u16), Point(j as u16)));
            }
        }
    }
    out
}

/// A set of three distinct pairwise commuting generators, ordered so that
/// `abc = e` when such an order exists (the least such order), otherwise
/// increasing.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CommutingTriple {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    /// `abc = e` for the stored order.
    pub product_trivial: bool,
    /// `λ(a) ∩ λ(b) = {c}`.
    pub meet_is_third: bool,
}

#[allow(clippy::needless_range_loop)]
pub fn commuting_triples(group: &A2Group) -> Vec<CommutingTriple> {
    let t = commute_table(group);
    let n = t.len();
    let tp = group.presentation();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !t[i][j] {
                continue;
            }
            for k in j + 1..n {
                if !(t[i][k] && t[j][k]) {
                    continue;
                }
                let p = [i, j, k].map(|x| Point(x as u16));
                let orders = [
                    [0, 1, 2],
                    [0, 2, 1],
                    [1, 0, 2],
                    [1, 2, 0],
                    [2, 0, 1],
                    [2, 1, 0],
                ];
                let trivial = orders.iter().map(|o| o.map(|x| p[x])).find(|&[a, b, c]| {
                    let abc = group.multiply(
                        &group.multiply(&group.generator(a), &group.generator(b)),
                        &group.generator(c),
                    );
                    abc.is_identity()
                });
                let [a, b, c] = trivial.unwrap_or(p);
                let meet = tp
                    .plane()
                    .meet(tp.lambda().line_of(a), tp.lambda().line_of(b));
                out.push(CommutingTriple {
                    a,
                    b,
                    c,
                    product_trivial: trivial.is_some(),
                    meet_is_third: meet.ok() == Some(c),
                });
            }
        }
    }
    out
}

/// Size of the largest set of pairwise commuting distinct generators.
pub fn max_commuting_set(group: &A2Group) -> usize {
    let t = commute_table(group);
    let n = t.len();
    fn grow(t: &[Vec<bool>], chosen: &mut Vec<usize>, from: usize, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for v in from..t.len() {
            if chosen.iter().all(|&u| t[u][v]) {
                chosen.push(v);
                grow(t, chosen, v + 1, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    if n > 0 {
        grow(&t, &mut Vec::new(), 0, &mut best);
    }
    best
}

/// Pairs `(a, b)` with `a ≠ b` and `(a, b, b)` in the presentation, so that
/// `ab² = e`.
pub fn strip_pairs(tp: &TrianglePresentation) -> Vec<(Point, Point)> {
    tp.triples()
        .iter()
        .filter(|t| t.0 != t.1 && t.1 == t.2)
        .map(|t| (t.0, t.1))
        .collect()
}

/// Generators `x` with `(x, x, x)` in the presentation, so that `x³ = e`.
pub fn order_three_generators(tp: &TrianglePresentation) -> Vec<Point> {
    tp.triples()
        .iter()
        .filter(|t| t.is_diagonal())
        .map(|t| t.0)
        .collect()
}

/// A generator commuting with exactly `q + 1` others, with the checks that
/// it is not on its own line, that its commuting set is `λ(a)`, and that
/// `x ∈ λ(a) ⇔ a ∈ λ(x)` for every `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineCentralReport {
    pub element: Point,
    pub commuting: Vec<Point>,
    pub not_on_own_line: bool,
    pub commuting_set_is_line: bool,
    pub biconditional: bool,
}

impl LineCentralReport {
    pub fn holds(&self) -> bool {
        self.not_on_own_line && self.commuting_set_is_line && self.biconditional
    }
}

/// Every generator's commuting partners, other than itself.
pub fn commuting_sets(group: &A2Group) -> Vec<Vec<Point>> {
    let t = commute_table(group);
    t.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, &c)| c && j != i)
                .map(|(j, _)| Point(j as u16))
                .collect()
        })
        .collect()
}

pub fn line_central_elements(group: &A2Group) -> Vec<LineCentralReport> {
    let tp = group.presentation();
    let q = tp.order();
    commuting_sets(group)
        .into_iter()
        .enumerate()
        .filter(|(_, set)| set.len() == q + 1)
        .map(|(i, commuting)| {
            let a = Point(i as u16);
            LineCentralReport {
                element: a,
                not_on_own_line: !tp.on_lambda(a, a),
                commuting_set_is_line: commuting == tp.lambda_points(a),
                biconditional: tp
                    .plane()
                    .points()
                    .all(|x| tp.on_lambda(a, x) == tp.on_lambda(x, a)),
                commuting,
            }
        })
        .collect()
}

/// The strip lattices `⟨a, bc⟩` for `b < c` with `ab² = ac² = e`.
pub fn strip_lattices(group: &A2Group) -> Vec<StripLattice> {
    let pairs = strip_pairs(group.presentation());
    let mut out = Vec::new();
    for &(a, b) in &pairs {
        for &(a2, c) in &pairs {
            if a == a2 && b < c {
                out.push(StripLattice::new(group, a, b, c));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedLineCentral {
    pub element: String,
    pub commuting: Vec<String>,
    pub lambda: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedNormalizerReport {
    pub subgroup: String,
    pub radius: usize,
    pub scanned: usize,
    pub violators: Vec<String>,
}

/// Summary of [`commuting_pairs`], [`commuting_triples`], [`strip_pairs`],
/// [`order_three_generators`], [`line_central_elements`] and optional
/// normalizer scans, with points and elements written by name.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub commuting_pairs: Vec<[String; 2]>,
    pub commuting_triples: Vec<[String; 3]>,
    pub strip_pairs: Vec<[String; 2]>,
    pub order_three: Vec<String>,
    pub line_central: Vec<NamedLineCentral>,
    pub normalizer_violators: Vec<NamedNormalizerReport>,
}

/// Runs every check; normalizer scans (one per commuting triple and per
/// strip lattice) only when `normalizer_radius` is given.
pub fn analyze(group: &A2Group, normalizer_radius: Option<usize>) -> AnalysisReport {
    let tp = group.presentation();
    let name = |p: Point| tp.name(p).to_string();
    let triples = commuting_triples(group);
    let mut normalizer_violators = Vec::new();
    if let Some(radius) = normalizer_radius {
        let mut push = |report: NormalizerReport| {
            normalizer_violators.push(NamedNormalizerReport {
                subgroup: report.subgroup,
                radius: report.radius,
                scanned: report.scanned,
                violators: report
                    .violators
                    .iter()
                    .map(|v| group.format(&v.element))
                    .collect(),
            })
        };
        for t in &triples {
            push(normalizer_scan(
                &ZSquareSubgroup::new(group, t.a, t.b, t.c),
                radius,
            ));
        }
        for lattice in strip_lattices(group) {
            push(normalizer_scan(&lattice, radius));
        }
    }
    AnalysisReport {
        commuting_pairs: commuting_pairs(group)
            .into_iter()
            .map(|(x, y)| [name(x), name(y)])
            .collect(),
        commuting_triples: triples
            .iter()
            .map(|t| [name(t.a), name(t.b), name(t.c)])
            .collect(),
        strip_pairs: strip_pairs(tp)
            .into_iter()
            .map(|(a, b)| [name(a), name(b)])
            .collect(),
        order_three: order_three_generators(tp).into_iter().map(name).collect(),
        line_central: line_central_elements(group)
            .into_iter()
            .map(|r| NamedLineCentral {
                element: name(r.element),
                commuting: r.commuting.iter().map(|&p| name(p)).collect(),
                lambda: tp
                    .lambda_points(r.element)
                    .iter()
                    .map(|&p| name(p))
                    .collect(),
                holds: r.holds(),
            })
            .collect(),
        normalizer_violators,
    }
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let join = |v: &[String], sep: &str| v.join(sep);
        let mut out = String::new();
        let list = |items: Vec<String>| {
            if items.is_empty() {
                "none".to_string()
            } else {
                items.join(", ")
            }
        };
        out += &format!(
            "commuting pairs: {}\n",
            list(
                self.commuting_pairs
                    .iter()
                    .map(|p| format!("({})", join(p, " ")))
                    .collect()
            )
        );
        out += &format!(
            "commuting triples: {}\n",
            list(
                self.commuting_triples
                    .iter()
                    .map(|p| format!("({})", join(p, " ")))
                    .collect()
            )
        );
        out += &format!(
            "strip pairs: {}\n",
            list(
                self.strip_pairs
                    .iter()
                    .map(|p| format!("({})", join(p, " ")))
                    .collect()
            )
        );
        out += &format!("order three: {}\n", list(self.order_three.clone()));
        out += &format!(
            "line central: {}\n",
            list(
                self.line_central
                    .iter()
                    .map(|r| format!(
                        "{} commutes with {{{}}}, lambda {{{}}}, {}",
                        r.element,
                        join(&r.commuting, " "),
                        join(&r.lambda, " "),
                        if r.holds { "ok" } else { "FAILED" }
                    ))
                    .collect()
            )
        );
        for n in &self.normalizer_violators {
            out += &format!(
                "normalizer of {} (radius {}, {} scanned): {}\n",
                n.subgroup,
                n.radius,
                n.scanned,
                list(n.violators.clone())
            );
        }
        out
    }
}
