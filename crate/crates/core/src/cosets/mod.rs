//! Double cosets `H g H` of a subgroup `H`, the freeness condition
//! `g⁻¹ H g ∩ H = {e}`, and sequences of elements in distinct free double
//! cosets.
//!
//! Double-coset equality in a ball is decided by bounded search: `g` and
//! `h` are merged when `h = u g v` for `u, v ∈ H` of length at most the
//! bound. Merges always carry an explicit witness, so a partition may be
//! finer than the true one but never coarser. Subgroups with a canonical
//! double-coset key are partitioned exactly.

mod free_product;
mod lemma3c;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::union_find::UnionFind;
use crate::words::{ball_elements, GroupOracle, Subgroup};

pub use free_product::{CyclicFactor, FpElement, FreeProduct};
pub use lemma3c::{lemma3c_sequence, verify_lemma3c, Lemma3cReport, Lemma3cSequence};

type Elem<S> = <<S as Subgroup>::Group as GroupOracle>::Element;

/// Outcome of checking `g⁻¹ g₀ g ∉ H` for every `g₀ ∈ H \ {e}` up to a
/// length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond31<E> {
    HoldsUpToBound,
    /// `g₀ ∈ H` with `g⁻¹ g₀ g ∈ H`.
    Fails {
        witness: E,
        conjugate: E,
    },
}

impl<E> Cond31<E> {
    pub fn holds(&self) -> bool {
        matches!(self, Cond31::HoldsUpToBound)
    }
}

pub fn condition_31_check<S: Subgroup>(sub: &S, g: &Elem<S>, bound: usize) -> Cond31<Elem<S>> {
    let group = sub.group();
    let e = group.identity();
    let test = |g0: &Elem<S>| {
        let conj = group.conjugate(g0, g);
        sub.contains(&conj).then(|| Cond31::Fails {
            witness: g0.clone(),
            conjugate: conj,
        })
    };
    // An element of H fails with itself as witness.
    if *g != e && sub.contains(g) && group.length(g) <= bound {
        if let Some(fail) = test(g) {
            return fail;
        }
    }
    sub.elements(bound)
        .iter()
        .filter(|g0| **g0 != e)
        .find_map(test)
        .unwrap_or(Cond31::HoldsUpToBound)
}

#[derive(Clone, Debug)]
pub struct DoubleCoset<E> {
    /// Least member.
    pub representative: E,
    /// Sorted members inside the ball.
    pub members: Vec<E>,
    pub cond31: Cond31<E>,
}

#[derive(Clone, Debug)]
pub struct DoubleCosetPartition<E> {
    pub radius: usize,
    pub bound: usize,
    /// The trivial coset first, then by representative.
    pub cosets: Vec<DoubleCoset<E>>,
    /// True when the subgroup supplied a canonical double-coset key, so the
    /// partition is the true one restricted to the ball.
    pub exact: bool,
}

impl<E> DoubleCosetPartition<E> {
    /// Nontrivial cosets satisfying the freeness condition up to the bound.
    pub fn free_cosets(&self) -> impl Iterator<Item = &DoubleCoset<E>> {
        self.cosets.iter().skip(1).filter(|c| c.cond31.holds())
    }

    pub fn nontrivial_count(&self) -> usize {
        self.cosets.len().saturating_sub(1)
    }
}

/// Partitions the ball of the given radius into double cosets.
pub fn decompose_ball<S: Subgroup>(
    sub: &S,
    radius: usize,
    bound: usize,
) -> DoubleCosetPartition<Elem<S>> {
    let group = sub.group();
    let ball = ball_elements(group, radius);
    let e = group.identity();
    let exact = sub.double_coset_key(&e).is_some();
    let classes: Vec<Vec<usize>> = if exact {
        let keys: Vec<Elem<S>> = ball
            .par_iter()
            .map(|g| sub.double_coset_key(g).expect("key exists"))
            .collect();
        let mut by_key: BTreeMap<&Elem<S>, Vec<usize>> = BTreeMap::new();
        for (i, k) in keys.iter().enumerate() {
            by_key.entry(k).or_default().push(i);
        }
        by_key.into_values().collect()
    } else {
        let index: HashMap<&Elem<S>, usize> =
            ball.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let h = sub.elements(bound);
        let links: Vec<Vec<usize>> = ball
            .par_iter()
            .map(|g| {
                let mut out = Vec::new();
                for u in &h {
                    let ug = group.multiply(u, g);
                    for v in &h {
                        if let Some(&j) = index.get(&group.multiply(&ug, v)) {
                            out.push(j);
                        }
                    }
                }
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        let mut uf = UnionFind::new(ball.len());
        for (i, js) in links.iter().enumerate() {
            for &j in js {
                uf.union(i, j);
            }
        }
        uf.classes()
    };
    let mut cosets: Vec<DoubleCoset<Elem<S>>> = classes
        .into_par_iter()
        .map(|mut idx| {
            idx.sort_unstable();
            let members: Vec<Elem<S>> = idx.iter().map(|&i| ball[i].clone()).collect();
            let representative = members[0].clone();
            let cond31 = condition_31_check(sub, &representative, bound);
            DoubleCoset {
                representative,
                members,
                cond31,
            }
        })
        .collect();
    // The identity is the least element, so sorting puts H first.
    cosets.sort_by(|a, b| a.representative.cmp(&b.representative));
    debug_assert!(cosets.first().is_none_or(|c| c.representative == e));
    DoubleCosetPartition {
        radius,
        bound,
        cosets,
        exact,
    }
}

/// Double cosets found satisfying the freeness condition, against a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PukanszkyWitness<E> {
    pub target: usize,
    /// Representatives of the free cosets found.
    pub representatives: Vec<E>,
    /// Number of nontrivial double cosets met (for subgroups where every
    /// nontrivial coset is free this is the multiplicity `n`).
    pub nontrivial: usize,
}

impl<E> PukanszkyWitness<E> {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn success(&self) -> bool {
        self.count() >= self.target
    }
}

/// Counts free double cosets in a ball.
pub fn pukanszky_witness<S: Subgroup>(
    sub: &S,
    target: usize,
    radius: usize,
    bound: usize,
) -> PukanszkyWitness<Elem<S>> {
    let partition = decompose_ball(sub, radius, bound);
    PukanszkyWitness {
        target,
        representatives: partition
            .free_cosets()
            .map(|c| c.representative.clone())
            .collect(),
        nontrivial: partition.nontrivial_count(),
    }
}

/// Members `g` of a free coset with representative `c` that factor as
/// `u c v` (`u, v ∈ H` within the bound) in more than one way; such a
/// member would make `u c v ↦ u d v` ill defined. Returns the offending
/// members with their factorization counts.
pub fn ambiguous_factorizations<S: Subgroup>(
    sub: &S,
    coset: &DoubleCoset<Elem<S>>,
    bound: usize,
) -> Vec<(Elem<S>, usize)> {
    let group = sub.group();
    let h = sub.elements(bound);
    let c_inv = group.invert(&coset.representative);
    coset
        .members
        .par_iter()
        .filter_map(|g| {
            let count = h
                .iter()
                .filter(|u| {
                    let v = group.multiply(&group.multiply(&c_inv, &group.invert(u)), g);
                    group.length(&v) <= bound && sub.contains(&v)
                })
                .count();
            (count > 1).then(|| (g.clone(), count))
        })
        .collect()
}
