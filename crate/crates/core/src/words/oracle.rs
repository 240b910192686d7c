use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

/// Exact arithmetic in a finitely generated group whose elements have a
/// canonical representation, so that `==` is group equality.
pub trait GroupOracle: Send + Sync {
    type Element: Clone + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Self::Element;
    fn invert(&self, g: &Self::Element) -> Self::Element;
    /// Word length with respect to [`GroupOracle::generators`].
    fn length(&self, g: &Self::Element) -> usize;
    /// A symmetric generating set, sorted.
    fn generators(&self) -> Vec<Self::Element>;
    fn format(&self, g: &Self::Element) -> String;

    /// `h⁻¹ g h`.
    fn conjugate(&self, g: &Self::Element, h: &Self::Element) -> Self::Element {
        self.multiply(&self.invert(h), &self.multiply(g, h))
    }

    fn equal(&self, g: &Self::Element, h: &Self::Element) -> bool {
        g == h
    }
}

/// A subgroup with an exact membership test.
pub trait Subgroup: Send + Sync {
    type Group: GroupOracle;

    fn group(&self) -> &Self::Group;

    fn contains(&self, g: &<Self::Group as GroupOracle>::Element) -> bool;

    /// Subgroup generators, as elements of the ambient group.
    fn generators(&self) -> Vec<<Self::Group as GroupOracle>::Element>;

    /// Every member of length at most `bound`, sorted. Closed under
    /// inversion.
    fn elements(&self, bound: usize) -> Vec<<Self::Group as GroupOracle>::Element>;

    /// A canonical representative of the double coset `H g H`, for subgroups
    /// where this is decidable.
    fn double_coset_key(
        &self,
        _g: &<Self::Group as GroupOracle>::Element,
    ) -> Option<<Self::Group as GroupOracle>::Element> {
        None
    }

    fn describe(&self) -> String;
}

/// Breadth-first spheres `S_0, …, S_radius` around the identity, each
/// sorted.
pub fn spheres<G: GroupOracle>(group: &G, radius: usize) -> Vec<Vec<G::Element>> {
    let gens = group.generators();
    let mut seen: BTreeSet<G::Element> = BTreeSet::new();
    let e = group.identity();
    seen.insert(e.clone());
    let mut out = vec![vec![e]];
    for _ in 0..radius {
        let mut next = BTreeSet::new();
        for g in out.last().unwrap() {
            for s in &gens {
                let h = group.multiply(g, s);
                if !seen.contains(&h) {
                    next.insert(h);
                }
            }
        }
        seen.extend(next.iter().cloned());
        out.push(next.into_iter().collect());
    }
    out
}

/// All elements within `radius` of the identity, sorted.
pub fn ball_elements<G: GroupOracle>(group: &G, radius: usize) -> Vec<G::Element> {
    let mut all: Vec<G::Element> = spheres(group, radius).into_iter().flatten().collect();
    all.sort();
    all
}
