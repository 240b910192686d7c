use super::{is_prime, plane_size, LineId, Point, PointLineCorrespondence, ProjectivePlane};
use crate::{Error, Result};

/// A cyclic labelling `Z/n -> P` under which every line is a translate of a
/// single difference set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingerLabelling {
    /// `cycle[i]` is the point carrying label `i`.
    pub cycle: Vec<Point>,
    /// Labels of the base line (a perfect difference set mod `n`).
    pub base: Vec<usize>,
    label_of: Vec<usize>,
}

impl SingerLabelling {
    fn new(plane: &ProjectivePlane, cycle: Vec<Point>) -> Result<Self> {
        let n = cycle.len();
        let mut label_of = vec![usize::MAX; n];
        for (i, p) in cycle.iter().enumerate() {
            label_of[p.index()] = i;
        }
        let mut base: Vec<usize> = plane
            .line(LineId(0))
            .iter()
            .map(|p| label_of[p.index()])
            .collect();
        base.sort_unstable();
        let labelling = SingerLabelling {
            cycle,
            base,
            label_of,
        };
        for shift in 0..n {
            if labelling.translate(plane, shift).is_none() {
                return Err(Error::NoSingerCycle);
            }
        }
        Ok(labelling)
    }

    pub fn label(&self, p: Point) -> usize {
        self.label_of[p.index()]
    }

    /// The line whose labels are `base + shift`.
    pub fn translate(&self, plane: &ProjectivePlane, shift: usize) -> Option<LineId> {
        let n = self.cycle.len();
        let pts: Vec<Point> = self
            .base
            .iter()
            .map(|&d| self.cycle[(d + shift) % n])
            .collect();
        plane.line_id(&pts)
    }

    /// `x -> base + (multiplier * label(x) + shift)`. The multiplier must be
    /// a unit mod `n`; `±1` give the plain translate maps.
    pub fn correspondence(
        &self,
        plane: &ProjectivePlane,
        multiplier: i64,
        shift: i64,
    ) -> PointLineCorrespondence {
        let n = self.cycle.len() as i64;
        let map = plane
            .points()
            .map(|p| {
                let t = (multiplier * self.label(p) as i64 + shift).rem_euclid(n) as usize;
                self.translate(plane, t).expect("translates are lines")
            })
            .collect();
        PointLineCorrespondence::new(map).expect("translate map is a bijection")
    }
}

pub(super) fn labelling(plane: &ProjectivePlane) -> Result<SingerLabelling> {
    let n = plane.num_points();
    // A plane already labelled cyclically (difference-set planes, files in
    // the usual cyclic numbering) keeps its own numbering.
    let identity: Vec<Point> = plane.points().collect();
    if let Ok(l) = SingerLabelling::new(plane, identity) {
        return Ok(l);
    }
    let q = plane.order();
    if !is_prime(q) || n != plane_size(q) {
        return Err(Error::NoSingerCycle);
    }
    let coords: Vec<[u32; 3]> = match plane.points().map(|p| plane.coordinates(p)).collect() {
        Some(c) => c,
        None => return Err(Error::NoSingerCycle),
    };
    let q = q as u32;
    for c0 in 1..q {
        for c1 in 0..q {
            for c2 in 0..q {
                if let Some(orbit) = projective_orbit([c0, c1, c2], q, n) {
                    let cycle: Option<Vec<Point>> = orbit
                        .iter()
                        .map(|v| coords.iter().position(|c| c == v).map(|i| Point(i as u16)))
                        .collect();
                    if let Some(cycle) = cycle {
                        return SingerLabelling::new(plane, cycle);
                    }
                }
            }
        }
    }
    Err(Error::NoSingerCycle)
}

/// Orbit of `1` under multiplication by `t` in `GF(q)[t] / (t^3 + c2 t^2 +
/// c1 t + c0)`, projectivised. Returns `None` unless the orbit visits all `n`
/// points, i.e. unless `t` induces a Singer cycle.
fn projective_orbit(c: [u32; 3], q: u32, n: usize) -> Option<Vec<[u32; 3]>> {
    let [c0, c1, c2] = c;
    let neg = |x: u32| (q - x % q) % q;
    let mut v = [1u32, 0, 0];
    let mut seen = std::collections::HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let p = normalize(v, q);
        if !seen.insert(p) {
            return None;
        }
        out.push(p);
        let [v0, v1, v2] = v;
        v = [
            neg(c0 * v2 % q),
            (v0 + neg(c1 * v2 % q)) % q,
            (v1 + neg(c2 * v2 % q)) % q,
        ];
    }
    Some(out)
}

fn normalize(v: [u32; 3], q: u32) -> [u32; 3] {
    let lead = *v.iter().find(|&&c| c != 0).expect("nonzero vector");
    let inv = (1..q).find(|&i| lead * i % q == 1).expect("prime field");
    v.map(|c| c * inv % q)
}

#[cfg(test)]
mod tests {
    use super::super::build_desarguesian_plane;
    use super::*;

    #[test]
    fn desarguesian_planes_have_singer_cycles() {
        for q in [2, 3, 5] {
            let plane = build_desarguesian_plane(q).unwrap();
            let l = plane.singer_labelling().unwrap();
            let n = plane.num_points();
            // Perfect difference set: every nonzero residue occurs once.
            let mut diffs: Vec<usize> = Vec::new();
            for &a in &l.base {
                for &b in &l.base {
                    if a != b {
                        diffs.push((a + n - b) % n);
                    }
                }
            }
            diffs.sort_unstable();
            assert_eq!(diffs, (1..n).collect::<Vec<_>>(), "q = {q}");
        }
    }

    #[test]
    fn cyclic_plane_keeps_its_numbering() {
        let plane = ProjectivePlane::from_difference_set(2, &[1, 2, 4]).unwrap();
        let l = plane.singer_labelling().unwrap();
        assert_eq!(l.cycle, plane.points().collect::<Vec<_>>());
    }
}
