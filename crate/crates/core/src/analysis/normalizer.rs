use rayon::prelude::*;

use crate::plane::Point;
use crate::words::{ball_elements, A2Group, GroupElement, Subgroup};
use crate::{Error, Result};

/// One step `g ↦ z⁻¹ g z` of a conjugate chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateStep {
    pub z: Point,
    pub conjugate: GroupElement,
    /// How many generators were admissible at this step.
    pub admissible: usize,
}

/// Generators `z` for which `z⁻¹ g z` is again in normal form as written,
/// hence of length `|g| + 2`: `z ∉ λ(x₁) ∪ λ(y_n)`, with `z ≠ y₁` when
/// `g` is positive and `z ≠ x_m` when `g` is negative.
fn admissible_conjugators(group: &A2Group, g: &GroupElement) -> Vec<Point> {
    let tp = group.presentation();
    let x1 = g.neg().first().copied();
    let xm = g.neg().last().copied();
    let y1 = g.pos().first().copied();
    let yn = g.pos().last().copied();
    tp.plane()
        .points()
        .filter(|&z| {
            let ok_neg = x1.is_none_or(|x| !tp.on_lambda(x, z));
            let ok_pos = yn.is_none_or(|y| !tp.on_lambda(y, z));
            let ok_positive_only = !(g.neg().is_empty() && y1 == Some(z));
            let ok_negative_only = !(g.pos().is_empty() && xm == Some(z));
            ok_neg && ok_pos && ok_positive_only && ok_negative_only
        })
        .collect()
}

/// The least admissible conjugator for `g ≠ e`, with the number of
/// admissible choices.
pub fn lemma1_conjugator(group: &A2Group, g: &GroupElement) -> Result<(Point, usize)> {
    if g.is_identity() {
        return Err(Error::Precondition(
            "the identity has no conjugate chain".into(),
        ));
    }
    let all = admissible_conjugators(group, g);
    match all.first() {
        Some(&z) => Ok((z, all.len())),
        None => Err(Error::Precondition(format!(
            "no admissible conjugator for {}",
            group.format(g)
        ))),
    }
}

/// Repeatedly conjugates by the least admissible generator. Each step
/// lengthens the element by exactly two.
pub fn icc_conjugate_chain(
    group: &A2Group,
    g: &GroupElement,
    steps: usize,
) -> Result<Vec<ConjugateStep>> {
    if steps == 0 {
        return Err(Error::Precondition("steps must be at least 1".into()));
    }
    let mut current = g.clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let (z, admissible) = lemma1_conjugator(group, &current)?;
        current = group.conjugate(&current, &group.generator(z));
        out.push(ConjugateStep {
            z,
            conjugate: current.clone(),
            admissible,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct NormalizerViolator {
    pub element: GroupElement,
    /// For each subgroup generator `s`: `(s, g s g⁻¹, g⁻¹ s g)`.
    pub conjugates: Vec<(GroupElement, GroupElement, GroupElement)>,
}

#[derive(Clone, Debug)]
pub struct NormalizerReport {
    pub subgroup: String,
    pub radius: usize,
    pub scanned: usize,
    /// Sorted by element.
    pub violators: Vec<NormalizerViolator>,
}

/// Every `g ∉ H` with `|g| ≤ radius` such that `g s g⁻¹ ∈ H` and
/// `g⁻¹ s g ∈ H` for all generators `s` of `H`, i.e. `g H g⁻¹ = H`.
pub fn normalizer_scan<S>(sub: &S, radius: usize) -> NormalizerReport
where
    S: Subgroup<Group = A2Group>,
{
    let group = sub.group();
    let gens = sub.generators();
    let candidates: Vec<GroupElement> = ball_elements(group, radius)
        .into_iter()
        .filter(|g| !sub.contains(g))
        .collect();
    let scanned = candidates.len();
    let violators: Vec<NormalizerViolator> = candidates
        .into_par_iter()
        .filter_map(|g| {
            let inv = group.invert(&g);
            let mut conjugates = Vec::with_capacity(gens.len());
            for s in &gens {
                let forward = group.conjugate(s, &inv);
                if !sub.contains(&forward) {
                    return None;
                }
                let backward = group.conjugate(s, &g);
                if !sub.contains(&backward) {
                    return None;
                }
                conjugates.push((s.clone(), forward, backward));
            }
            Some(NormalizerViolator {
                element: g,
                conjugates,
            })
        })
        .collect();
    NormalizerReport {
        subgroup: sub.describe(),
        radius,
        scanned,
        violators,
    }
}

/// A 2×2 integer matrix with the sublattice indices `(m, n)` it fixes.
pub type FixingMatrix = ([[i64; 2]; 2], (i64, i64));

/// A matrix `M` with entries in `[-entry_bound, entry_bound]` and
/// determinant `±1`, other than the identity, fixing `(m, 0)` and `(0, n)`
/// for some `1 ≤ m, n ≤ index_bound`.
pub fn condition_ii_counterexample(entry_bound: i64, index_bound: i64) -> Option<FixingMatrix> {
    let r = -entry_bound..=entry_bound;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    let det = a * d - b * c;
                    if det.abs() != 1 {
                        continue;
                    }
                    let identity = a == 1 && b == 0 && c == 0 && d == 1;
                    for m in 1..=index_bound {
                        for n in 1..=index_bound {
                            // M (m, 0) = (a m, c m), M (0, n) = (b n, d n).
                            let fixes = a * m == m && c * m == 0 && b * n == 0 && d * n == n;
                            if fixes && !identity {
                                return Some(([[a, b], [c, d]], (m, n)));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// True when no unimodular matrix within the bounds fixes one of the
/// sublattices `mℤ × nℤ` pointwise without being the identity.
pub fn condition_ii_bruteforce(entry_bound: i64, index_bound: i64) -> bool {
    condition_ii_counterexample(entry_bound, index_bound).is_none()
}
