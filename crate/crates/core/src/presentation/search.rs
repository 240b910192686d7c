//! Backtracking search for triangle presentations.
//!
//! A presentation compatible with `λ` is an exact cover of the slots
//! `(x, y)` with `y ∈ λ(x)` by rotation classes `{(x,y,z), (y,z,x),
//! (z,x,y)}`. The search always branches on the open slot with the fewest
//! completions and tries completions in increasing order, so the
//! enumeration order is fixed.

use rayon::prelude::*;

use super::{format::serialize, TrianglePresentation, Triple};
use crate::plane::{
    enumerate_correspondences, CorrespondenceFamily, Point, PointLineCorrespondence,
    ProjectivePlane,
};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub limit: usize,
    /// Triples (with their rotations) that every result must contain.
    pub forced: Vec<Triple>,
    /// Give up after visiting this many search nodes.
    pub node_budget: Option<u64>,
}

impl SearchOptions {
    pub fn with_limit(limit: usize) -> Self {
        SearchOptions {
            limit,
            forced: Vec::new(),
            node_budget: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub presentations: Vec<TrianglePresentation>,
    /// True when the whole tree was explored (or the limit was reached).
    pub complete: bool,
    pub nodes: u64,
}

/// Up to `limit` presentations compatible with `lambda`, sorted by their
/// serialization.
pub fn search(
    plane: &ProjectivePlane,
    lambda: &PointLineCorrespondence,
    limit: usize,
) -> Result<Vec<TrianglePresentation>> {
    Ok(search_with(plane, lambda, &SearchOptions::with_limit(limit))?.presentations)
}

pub fn search_with(
    plane: &ProjectivePlane,
    lambda: &PointLineCorrespondence,
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    if options.limit == 0 {
        return Err(Error::Precondition(
            "search limit must be at least 1".into(),
        ));
    }
    let mut state = State::new(plane, lambda);
    for &t in &options.forced {
        if !state.admissible(t) || !state.place(t) {
            return Ok(SearchOutcome {
                presentations: Vec::new(),
                complete: true,
                nodes: 0,
            });
        }
    }
    let mut solutions: Vec<Vec<Triple>> = Vec::new();
    let mut nodes = 0u64;
    let complete = state.run(options, &mut solutions, &mut nodes);
    let mut presentations = solutions
        .into_iter()
        .map(|reps| {
            TrianglePresentation::with_cyclic_closure("", plane.clone(), lambda.clone(), reps)
        })
        .collect::<Result<Vec<_>>>()?;
    presentations.sort_by_cached_key(serialize);
    let presentations = presentations
        .into_iter()
        .enumerate()
        .map(|(k, tp)| tp.with_label(format!("search-{k}")))
        .collect();
    Ok(SearchOutcome {
        presentations,
        complete,
        nodes,
    })
}

/// Searches every correspondence of `family`, in parallel over
/// correspondences. Results keep the enumeration order of the
/// correspondences and are labelled `<family>-<index>-<k>`.
pub fn search_all(
    plane: &ProjectivePlane,
    family: CorrespondenceFamily,
    allow_large: bool,
    limit_per_lambda: usize,
) -> Result<Vec<TrianglePresentation>> {
    let lambdas: Vec<PointLineCorrespondence> =
        enumerate_correspondences(plane, family, allow_large)?.collect();
    let tag = match family {
        CorrespondenceFamily::All => "all",
        CorrespondenceFamily::Singer => "singer",
    };
    let per: Vec<Vec<TrianglePresentation>> = lambdas
        .par_iter()
        .enumerate()
        .map(|(i, lambda)| {
            search(plane, lambda, limit_per_lambda).map(|found| {
                found
                    .into_iter()
                    .enumerate()
                    .map(|(k, tp)| tp.with_label(format!("{tag}-{i}-{k}")))
                    .collect()
            })
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

struct State<'a> {
    plane: &'a ProjectivePlane,
    lambda: &'a PointLineCorrespondence,
    n: usize,
    // slot (x, y) with y ∈ λ(x) -> filled?
    open: Vec<bool>,
    slots: Vec<(Point, Point)>,
    chosen: Vec<Triple>,
}

impl<'a> State<'a> {
    fn new(plane: &'a ProjectivePlane, lambda: &'a PointLineCorrespondence) -> Self {
        let n = plane.num_points();
        let mut open = vec![false; n * n];
        let mut slots = Vec::new();
        for x in plane.points() {
            for &y in plane.line(lambda.line_of(x)) {
                open[x.index() * n + y.index()] = true;
                slots.push((x, y));
            }
        }
        State {
            plane,
            lambda,
            n,
            open,
            slots,
            chosen: Vec::new(),
        }
    }

    fn on_lambda(&self, x: Point, y: Point) -> bool {
        self.plane.incident(y, self.lambda.line_of(x))
    }

    fn is_open(&self, x: Point, y: Point) -> bool {
        self.open[x.index() * self.n + y.index()]
    }

    fn admissible(&self, t: Triple) -> bool {
        self.on_lambda(t.0, t.1) && self.on_lambda(t.1, t.2) && self.on_lambda(t.2, t.0)
    }

    fn fits(&self, t: Triple) -> bool {
        if t.is_diagonal() {
            return self.is_open(t.0, t.1);
        }
        t.rotations().iter().all(|r| self.is_open(r.0, r.1))
    }

    fn place(&mut self, t: Triple) -> bool {
        if !self.fits(t) {
            return false;
        }
        for r in t.rotations() {
            self.open[r.0.index() * self.n + r.1.index()] = false;
        }
        self.chosen.push(t.canonical());
        true
    }

    fn unplace(&mut self, t: Triple) {
        for r in t.rotations() {
            self.open[r.0.index() * self.n + r.1.index()] = true;
        }
        self.chosen.pop();
    }

    fn completions(&self, x: Point, y: Point) -> Vec<Triple> {
        self.plane
            .line(self.lambda.line_of(y))
            .iter()
            .map(|&z| Triple(x, y, z))
            .filter(|&t| self.on_lambda(t.2, t.0) && self.fits(t))
            .collect()
    }

    /// Returns false when the node budget ran out.
    fn run(
        &mut self,
        options: &SearchOptions,
        out: &mut Vec<Vec<Triple>>,
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        if options.node_budget.is_some_and(|b| *nodes > b) {
            return false;
        }
        let mut best: Option<Vec<Triple>> = None;
        for &(x, y) in &self.slots {
            if !self.is_open(x, y) {
                continue;
            }
            let c = self.completions(x, y);
            if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                let empty = c.is_empty();
                best = Some(c);
                if empty {
                    break;
                }
            }
        }
        let Some(candidates) = best else {
            let mut reps = self.chosen.clone();
            reps.sort_unstable();
            out.push(reps);
            return true;
        };
        for t in candidates {
            if out.len() >= options.limit {
                return true;
            }
            self.place(t);
            let finished = self.run(options, out, nodes);
            self.unplace(t);
            if !finished {
                return false;
            }
        }
        true
    }
}
