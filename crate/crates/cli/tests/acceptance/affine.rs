//! Faithful realizations of the three groups with three generators as
//! groups of integer affine maps of the plane, used to decide equality of
//! words independently of the rewriting engine.

use std::collections::HashMap;

use trigroup_core::analysis::DegenerateKind;
use trigroup_core::{A2Group, GroupElement, Letter, Point, TrianglePresentation};

/// `v -> m v + t`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    m: [[i64; 2]; 2],
    t: [i64; 2],
}

impl Affine {
    const IDENTITY: Affine = Affine {
        m: [[1, 0], [0, 1]],
        t: [0, 0],
    };

    fn translation(x: i64, y: i64) -> Self {
        Affine {
            m: [[1, 0], [0, 1]],
            t: [x, y],
        }
    }

    fn apply_linear(m: [[i64; 2]; 2], v: [i64; 2]) -> [i64; 2] {
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// `self ∘ other`.
    fn compose(self, other: Affine) -> Affine {
        let a = self.m;
        let b = other.m;
        let m = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        let mt = Self::apply_linear(a, other.t);
        Affine {
            m,
            t: [mt[0] + self.t[0], mt[1] + self.t[1]],
        }
    }

    fn inverse(self) -> Affine {
        let [[a, b], [c, d]] = self.m;
        let det = a * d - b * c;
        assert!(det == 1 || det == -1, "not invertible over the integers");
        let m = [[d * det, -b * det], [-c * det, a * det]];
        let t = Self::apply_linear(m, self.t);
        Affine {
            m,
            t: [-t[0], -t[1]],
        }
    }

    /// Rotation by a third of a turn about `p`, in coordinates for the
    /// basis `1, ω` of the Eisenstein integers.
    fn third_turn_about(p: [i64; 2]) -> Affine {
        let r = [[0, -1], [1, -1]];
        let rp = Self::apply_linear(r, p);
        Affine {
            m: r,
            t: [p[0] - rp[0], p[1] - rp[1]],
        }
    }
}

/// Generator images of one model group, in model order.
fn model(kind: DegenerateKind) -> [Affine; 3] {
    match kind {
        // Three translations summing to zero.
        DegenerateKind::ZSquare => [
            Affine::translation(1, 0),
            Affine::translation(0, 1),
            Affine::translation(-1, -1),
        ],
        // Third turns about the corners of a triangle chosen so that the
        // product of the three is the identity.
        DegenerateKind::T333 => {
            let x = Affine::third_turn_about([0, 0]);
            let y = Affine::third_turn_about([3, 0]);
            let r = (-9..=9)
                .flat_map(|i| (-9..=9).map(move |j| [i, j]))
                .find(|&r| x.compose(y).compose(Affine::third_turn_about(r)) == Affine::IDENTITY)
                .expect("a third rotation centre exists");
            [x, y, Affine::third_turn_about(r)]
        }
        // Two glide reflections with equal squares; the third generator is
        // the inverse of that square.
        DegenerateKind::Klein => {
            let g = Affine {
                m: [[1, 0], [0, -1]],
                t: [1, 0],
            };
            let h = Affine {
                m: [[1, 0], [0, -1]],
                t: [1, 1],
            };
            [g.compose(g).inverse(), g, h]
        }
    }
}

pub const KINDS: [DegenerateKind; 3] = [
    DegenerateKind::ZSquare,
    DegenerateKind::T333,
    DegenerateKind::Klein,
];

fn image(gens: &[Affine; 3], word: &[Letter]) -> Affine {
    word.iter().fold(Affine::IDENTITY, |acc, l| {
        let g = gens[l.point.index()];
        acc.compose(if l.inverse { g.inverse() } else { g })
    })
}

/// Assignments of model generators to the three points under which every
/// relator of `tp` maps to the identity.
fn assignments(tp: &TrianglePresentation, kind: DegenerateKind) -> Vec<[Affine; 3]> {
    let m = model(kind);
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    perms
        .iter()
        .map(|p| p.map(|i| m[i]))
        .filter(|gens| {
            tp.triples().iter().all(|t| {
                let word = [Letter::pos(t.0), Letter::pos(t.1), Letter::pos(t.2)];
                image(gens, &word) == Affine::IDENTITY
            })
        })
        .collect()
}

fn words_up_to(len: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = (0..3u16)
        .flat_map(|p| [Letter::pos(Point(p)), Letter::inv(Point(p))])
        .collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// True when two words of length at most `len` have equal normal forms
/// exactly when their affine images agree.
fn agrees(group: &A2Group, gens: &[Affine; 3], len: usize) -> bool {
    let mut by_form: HashMap<GroupElement, Affine> = HashMap::new();
    let mut by_image: HashMap<Affine, GroupElement> = HashMap::new();
    for w in words_up_to(len) {
        let form = group.normalize(&w).expect("letters are in range");
        let img = image(gens, &w);
        if *by_form.entry(form.clone()).or_insert(img) != img {
            return false;
        }
        if *by_image.entry(img).or_insert(form.clone()) != form {
            return false;
        }
    }
    true
}

/// The model group that `tp` presents, decided by the affine realization
/// agreeing with the rewriting engine on all words of length at most `len`.
pub fn identify(tp: &TrianglePresentation, len: usize) -> Option<DegenerateKind> {
    let group = A2Group::new(tp.clone()).ok()?;
    KINDS.into_iter().find(|&kind| {
        assignments(tp, kind)
            .iter()
            .any(|gens| agrees(&group, gens, len))
    })
}
