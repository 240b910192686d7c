use std::collections::HashMap;

use crate::building::hex_norm;
use crate::plane::Point;
use crate::words::{A2Group, GroupElement, Subgroup};

/// The subgroup `⟨a, b, c⟩ ≅ ℤ²` of a commuting triple with `abc = e`,
/// with coordinates `θ(a) = (1, 0)`, `θ(b) = (0, 1)`, `θ(c) = (-1, -1)`.
///
/// Its elements have normal forms `x^-k y^l` with `x ≠ y` in `{a, b, c}`,
/// which makes membership a shape test on the normal form.
#[derive(Clone, Debug)]
pub struct ZSquareSubgroup {
    group: A2Group,
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl ZSquareSubgroup {
    /// Does not check that the triple commutes; see
    /// [`crate::analysis::commuting_triples`].
    pub fn new(group: &A2Group, a: Point, b: Point, c: Point) -> Self {
        ZSquareSubgroup {
            group: group.clone(),
            a,
            b,
            c,
        }
    }

    fn theta_of(&self, x: Point) -> Option<(i64, i64)> {
        if x == self.a {
            Some((1, 0))
        } else if x == self.b {
            Some((0, 1))
        } else if x == self.c {
            Some((-1, -1))
        } else {
            None
        }
    }

    /// The coordinates of `g` when its normal form is `x^-k y^l` with
    /// `x, y ∈ {a, b, c}` and `x ≠ y` (when both blocks are present).
    pub fn theta(&self, g: &GroupElement) -> Option<(i64, i64)> {
        let block = |pts: &[Point]| -> Option<(i64, i64)> {
            match pts.first() {
                None => Some((0, 0)),
                Some(&x) if pts.iter().all(|&p| p == x) => {
                    let (u, v) = self.theta_of(x)?;
                    let k = pts.len() as i64;
                    Some((u * k, v * k))
                }
                Some(_) => None,
            }
        };
        let (nk, nl) = block(g.neg())?;
        let (pk, pl) = block(g.pos())?;
        if let (Some(x), Some(y)) = (g.neg().first(), g.pos().first()) {
            if x == y {
                return None;
            }
        }
        Some((pk - nk, pl - nl))
    }

    /// `a^k b^l`.
    pub fn element_at(&self, k: i64, l: i64) -> GroupElement {
        let g = &self.group;
        g.multiply(
            &g.power(&g.generator(self.a), k),
            &g.power(&g.generator(self.b), l),
        )
    }
}

impl Subgroup for ZSquareSubgroup {
    type Group = A2Group;

    fn group(&self) -> &A2Group {
        &self.group
    }

    fn contains(&self, g: &GroupElement) -> bool {
        self.theta(g).is_some()
    }

    fn generators(&self) -> Vec<GroupElement> {
        vec![self.group.generator(self.a), self.group.generator(self.b)]
    }

    /// Uses `|a^k b^l| = max(|k|, |l|, |k - l|)`.
    fn elements(&self, bound: usize) -> Vec<GroupElement> {
        let r = bound as i64;
        let mut out = Vec::new();
        for k in -r..=r {
            for l in -r..=r {
                if hex_norm(k, l) <= bound {
                    out.push(self.element_at(k, l));
                }
            }
        }
        out.sort();
        out
    }

    fn describe(&self) -> String {
        let tp = self.group.presentation();
        format!(
            "<{}, {}, {}>",
            tp.name(self.a),
            tp.name(self.b),
            tp.name(self.c)
        )
    }
}

/// The lattice `⟨a, bc⟩` for generators with `ab² = ac² = e`.
///
/// No closed normal-form shape is available for this lattice, so
/// membership of `g` is decided by searching `a^i (bc)^j` with
/// `|i|, |j| ≤ |g| + 2`.
#[derive(Clone, Debug)]
pub struct StripLattice {
    group: A2Group,
    pub a: Point,
    pub b: Point,
    pub c: Point,
    a_gen: GroupElement,
    bc_gen: GroupElement,
    // a^i for |i| <= cached, and the inverse table of (bc)^j.
    cached: i64,
    a_powers: Vec<GroupElement>,
    bc_index: HashMap<GroupElement, i64>,
}

const STRIP_CACHE: i64 = 24;

impl StripLattice {
    pub fn new(group: &A2Group, a: Point, b: Point, c: Point) -> Self {
        let a_gen = group.generator(a);
        let bc_gen = group.multiply(&group.generator(b), &group.generator(c));
        let cached = STRIP_CACHE;
        let a_powers = (-cached..=cached).map(|i| group.power(&a_gen, i)).collect();
        let bc_index = (-cached..=cached)
            .map(|j| (group.power(&bc_gen, j), j))
            .collect();
        StripLattice {
            group: group.clone(),
            a,
            b,
            c,
            a_gen,
            bc_gen,
            cached,
            a_powers,
            bc_index,
        }
    }

    fn a_power(&self, i: i64) -> GroupElement {
        if i.abs() <= self.cached {
            self.a_powers[(i + self.cached) as usize].clone()
        } else {
            self.group.power(&self.a_gen, i)
        }
    }

    /// `a^i (bc)^j`.
    pub fn element_at(&self, i: i64, j: i64) -> GroupElement {
        self.group
            .multiply(&self.a_power(i), &self.group.power(&self.bc_gen, j))
    }

    /// Exponents `(i, j)` with `g = a^i (bc)^j` and `|i|, |j| ≤ |g| + 2`.
    pub fn coordinates(&self, g: &GroupElement) -> Option<(i64, i64)> {
        let r = g.len() as i64 + 2;
        for i in -r..=r {
            let rest = self.group.multiply(&self.a_power(-i), g);
            if r <= self.cached {
                if let Some(&j) = self.bc_index.get(&rest) {
                    if j.abs() <= r {
                        return Some((i, j));
                    }
                }
            } else {
                for j in -r..=r {
                    if self.group.power(&self.bc_gen, j) == rest {
                        return Some((i, j));
                    }
                }
            }
        }
        None
    }

    pub fn bc(&self) -> &GroupElement {
        &self.bc_gen
    }
}

impl Subgroup for StripLattice {
    type Group = A2Group;

    fn group(&self) -> &A2Group {
        &self.group
    }

    fn contains(&self, g: &GroupElement) -> bool {
        self.coordinates(g).is_some()
    }

    fn generators(&self) -> Vec<GroupElement> {
        vec![self.a_gen.clone(), self.bc_gen.clone()]
    }

    /// `a^i (bc)^j` of length at most `bound`, over `|i|, |j| ≤ bound + 2`.
    fn elements(&self, bound: usize) -> Vec<GroupElement> {
        let r = bound as i64 + 2;
        let mut out: Vec<GroupElement> = (-r..=r)
            .flat_map(|i| (-r..=r).map(move |j| (i, j)))
            .map(|(i, j)| self.element_at(i, j))
            .filter(|g| g.len() <= bound)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn describe(&self) -> String {
        let tp = self.group.presentation();
        format!(
            "<{}, {}{}>",
            tp.name(self.a),
            tp.name(self.b),
            tp.name(self.c)
        )
    }
}
