//! Elements `g_n = z₁ z₂ ⋯ z_n` in pairwise distinct free double cosets of
//! the flat subgroup of a commuting triple `{a, b, c}`.
//!
//! `z₁ ∉ λ(a) ∪ λ(b) ∪ λ(c)` and `z_{j+1} ∉ {a, b, c} ∪ λ(z_j)`, each chosen
//! least. Then for `x, y ∈ {a, b, c}` every word
//! `z_n⁻¹ ⋯ z₁⁻¹ x^-m y^l z₁ ⋯ z_n` is in left normal form, so `g_n` is free,
//! and every word `x^m z₁ ⋯ z_r y^-l` is in right normal form, so
//! `g_r ∈ H g_s H` forces `r = s` by counting letters outside `{a, b, c}`.

use std::collections::BTreeSet;

use super::{condition_31_check, Cond31};
use crate::analysis::ZSquareSubgroup;
use crate::plane::Point;
use crate::words::{A2Group, GroupElement, Subgroup};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma3cSequence {
    pub triple: (Point, Point, Point),
    pub z: Vec<Point>,
    /// `g[k] = z₁ ⋯ z_{k+1}`.
    pub g: Vec<GroupElement>,
    /// Number of admissible choices for `z₁`.
    pub first_choices: usize,
    /// Number of admissible choices for each later `z_{j+1}`.
    pub later_choices: Vec<usize>,
}

fn covered_by_lines(group: &A2Group, triple: (Point, Point, Point)) -> BTreeSet<Point> {
    let tp = group.presentation();
    let (a, b, c) = triple;
    [a, b, c]
        .iter()
        .flat_map(|&x| tp.lambda_points(x).iter().copied())
        .collect()
}

fn first_candidates(group: &A2Group, triple: (Point, Point, Point)) -> Vec<Point> {
    let covered = covered_by_lines(group, triple);
    group
        .presentation()
        .plane()
        .points()
        .filter(|p| !covered.contains(p))
        .collect()
}

fn next_candidates(group: &A2Group, triple: (Point, Point, Point), prev: Point) -> Vec<Point> {
    let tp = group.presentation();
    let (a, b, c) = triple;
    tp.plane()
        .points()
        .filter(|&p| p != a && p != b && p != c && !tp.on_lambda(prev, p))
        .collect()
}

impl Lemma3cSequence {
    /// Builds the sequence from explicit points, refusing any point that
    /// violates the admissibility rules.
    pub fn from_points(
        group: &A2Group,
        triple: (Point, Point, Point),
        z: Vec<Point>,
    ) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::Precondition(
                "the sequence needs at least one point".into(),
            ));
        }
        let tp = group.presentation();
        let first = first_candidates(group, triple);
        if !first.contains(&z[0]) {
            return Err(Error::Precondition(format!(
                "{} lies on a line of the triple",
                tp.name(z[0])
            )));
        }
        let mut later_choices = Vec::new();
        for w in z.windows(2) {
            let next = next_candidates(group, triple, w[0]);
            if !next.contains(&w[1]) {
                return Err(Error::Precondition(format!(
                    "{} is in the triple or on the line of {}",
                    tp.name(w[1]),
                    tp.name(w[0])
                )));
            }
            later_choices.push(next.len());
        }
        let mut g = Vec::with_capacity(z.len());
        let mut current = group.identity();
        for &p in &z {
            current = group.multiply(&current, &group.generator(p));
            g.push(current.clone());
        }
        Ok(Lemma3cSequence {
            triple,
            z,
            g,
            first_choices: first.len(),
            later_choices,
        })
    }

    /// Checks, letter by letter, that the words in the module comment are
    /// in the stated normal forms.
    pub fn normal_form_conditions_hold(&self, group: &A2Group) -> bool {
        let tp = group.presentation();
        let (a, b, c) = self.triple;
        let abc = [a, b, c];
        // Powers x^k, x^-k are normal.
        let powers = abc.iter().all(|&x| !tp.on_lambda(x, x));
        // x z₁ and z₁⁻¹ x⁻¹ are irreducible.
        let joins = abc.iter().all(|&x| !tp.on_lambda(x, self.z[0]));
        let chain = self.z.windows(2).all(|w| !tp.on_lambda(w[0], w[1]));
        // No z equals a, b or c (cancellation at the block boundary).
        let outside = self.z.iter().all(|p| !abc.contains(p));
        powers && joins && chain && outside
    }
}

pub fn lemma3c_sequence(
    group: &A2Group,
    triple: (Point, Point, Point),
    n: usize,
) -> Result<Lemma3cSequence> {
    if n < 1 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let mut z = Vec::with_capacity(n);
    let first = first_candidates(group, triple);
    let Some(&z1) = first.first() else {
        return Err(Error::Precondition(
            "no admissible generator outside the lines of the triple".into(),
        ));
    };
    z.push(z1);
    while z.len() < n {
        let next = next_candidates(group, triple, *z.last().unwrap());
        let Some(&p) = next.first() else {
            return Err(Error::Precondition("no admissible next generator".into()));
        };
        z.push(p);
    }
    Lemma3cSequence::from_points(group, triple, z)
}

#[derive(Clone, Debug)]
pub struct Lemma3cReport {
    pub sequence: Lemma3cSequence,
    pub bound: usize,
    /// Freeness of each `g_k` up to the bound.
    pub cond31: Vec<Cond31<GroupElement>>,
    /// `|g_k| = k` and `g_k` is a positive word.
    pub lengths_ok: bool,
    /// The normal-form argument applies (exact disjointness).
    pub normal_form_conditions: bool,
    /// Pairs `(r, s)`, `r ≠ s`, for which some `u ∈ H` with `|u| ≤ bound`
    /// has `g_s⁻¹ u g_r ∈ H`; expected empty.
    pub merged_pairs: Vec<(usize, usize)>,
}

impl Lemma3cReport {
    pub fn all_free(&self) -> bool {
        self.cond31.iter().all(Cond31::holds)
    }

    pub fn pairwise_disjoint(&self) -> bool {
        self.normal_form_conditions && self.merged_pairs.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.all_free() && self.lengths_ok && self.pairwise_disjoint()
    }

    /// Free, pairwise disjoint double cosets exhibited.
    pub fn witness_count(&self) -> usize {
        if self.pairwise_disjoint() {
            self.cond31.iter().filter(|c| c.holds()).count()
        } else {
            0
        }
    }
}

/// Verifies freeness of `g_1, …, g_n` up to `bound` and their pairwise
/// disjointness, both by the normal-form argument and by a bounded search.
pub fn verify_lemma3c(
    group: &A2Group,
    triple: (Point, Point, Point),
    n: usize,
    bound: usize,
) -> Result<Lemma3cReport> {
    let sequence = lemma3c_sequence(group, triple, n)?;
    let (a, b, c) = triple;
    let sub = ZSquareSubgroup::new(group, a, b, c);
    let cond31 = sequence
        .g
        .iter()
        .map(|g| condition_31_check(&sub, g, bound))
        .collect();
    let lengths_ok = sequence
        .g
        .iter()
        .enumerate()
        .all(|(k, g)| g.len() == k + 1 && g.neg().is_empty() && g.pos() == &sequence.z[..=k]);
    let normal_form_conditions = sequence.normal_form_conditions_hold(group);
    let h = sub.elements(bound);
    let mut merged_pairs = Vec::new();
    for r in 0..n {
        for s in 0..n {
            if r == s {
                continue;
            }
            let gs_inv = group.invert(&sequence.g[s]);
            let merged = h.iter().any(|u| {
                let w = group.multiply(&group.multiply(&gs_inv, u), &sequence.g[r]);
                sub.contains(&w)
            });
            if merged {
                merged_pairs.push((r + 1, s + 1));
            }
        }
    }
    Ok(Lemma3cReport {
        sequence,
        bound,
        cond31,
        lengths_ok,
        normal_form_conditions,
        merged_pairs,
    })
}
