//! Group arithmetic by normal forms.
//!
//! Every element has a unique left normal form `x₁⁻¹ … x_m⁻¹ y₁ … y_n` with
//! `x_i ∉ λ(x_{i+1})`, `y_{j+1} ∉ λ(y_j)` and `x_m ≠ y₁`; its length is
//! `m + n`. Normal forms are computed by the rewriting system in
//! [`rewrite`]; the certificate that they are unique for a given
//! presentation is [`check_confluence`].

mod oracle;
pub mod rewrite;

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::plane::Point;
use crate::presentation::{serialize, validate, TrianglePresentation};
use crate::{Error, Result};

pub use oracle::{ball_elements, spheres, GroupOracle, Subgroup};
pub use rewrite::{
    check_confluence, termination_measure, ConfluenceReport, Divergence, Orientation,
    RewriteSystem, Rule,
};

/// A generator or its inverse.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub point: Point,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(point: Point) -> Self {
        Letter {
            point,
            inverse: false,
        }
    }

    pub fn inv(point: Point) -> Self {
        Letter {
            point,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            point: self.point,
            inverse: !self.inverse,
        }
    }
}

/// Formal inverse of a word: reversed, every letter inverted.
pub fn invert_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inverted()).collect()
}

/// An element in left normal form `x₁⁻¹ … x_m⁻¹ y₁ … y_n`, tagged with the
/// group it belongs to.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: u64,
    neg: Vec<Point>,
    pos: Vec<Point>,
}

impl GroupElement {
    /// The points `x₁, …, x_m` of the inverse block.
    pub fn neg(&self) -> &[Point] {
        &self.neg
    }

    /// The points `y₁, …, y_n` of the positive block.
    pub fn pos(&self) -> &[Point] {
        &self.pos
    }

    /// `m + n`.
    pub fn len(&self) -> usize {
        self.neg.len() + self.pos.len()
    }

    pub fn is_identity(&self) -> bool {
        self.neg.is_empty() && self.pos.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.neg
            .iter()
            .map(|&p| Letter::inv(p))
            .chain(self.pos.iter().map(|&p| Letter::pos(p)))
            .collect()
    }

    pub fn letter_iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.neg
            .iter()
            .map(|&p| Letter::inv(p))
            .chain(self.pos.iter().map(|&p| Letter::pos(p)))
    }

    pub fn group_id(&self) -> u64 {
        self.group
    }
}

impl Ord for GroupElement {
    /// Shortlex on the letters of the normal form.
    fn cmp(&self, other: &Self) -> Ordering {
        self.group
            .cmp(&other.group)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.letter_iter().cmp(other.letter_iter()))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        let tokens: Vec<String> = self
            .letter_iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", l.point.0)
                } else {
                    l.point.0.to_string()
                }
            })
            .collect();
        f.write_str(&tokens.join(" "))
    }
}

struct Inner {
    tp: TrianglePresentation,
    rules: RewriteSystem,
    id: u64,
}

/// The group presented by a valid triangle presentation. Cheap to clone.
#[derive(Clone)]
pub struct A2Group {
    inner: Arc<Inner>,
}

impl fmt::Debug for A2Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("A2Group")
            .field("label", &self.inner.tp.label())
            .field("order", &self.inner.tp.order())
            .finish()
    }
}

impl A2Group {
    pub fn new(tp: TrianglePresentation) -> Result<Self> {
        let report = validate(&tp);
        if !report.is_valid() {
            return Err(Error::InvalidPresentation(report.describe(&tp).join("; ")));
        }
        let mut hasher = DefaultHasher::new();
        serialize(&tp.clone().with_label("")).hash(&mut hasher);
        let id = hasher.finish();
        let rules = RewriteSystem::new(&tp);
        Ok(A2Group {
            inner: Arc::new(Inner { tp, rules, id }),
        })
    }

    pub fn presentation(&self) -> &TrianglePresentation {
        &self.inner.tp
    }

    pub fn rules(&self) -> &RewriteSystem {
        &self.inner.rules
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn num_points(&self) -> usize {
        self.inner.tp.num_points()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.id(),
            neg: Vec::new(),
            pos: Vec::new(),
        }
    }

    pub fn generator(&self, p: Point) -> GroupElement {
        GroupElement {
            group: self.id(),
            neg: Vec::new(),
            pos: vec![p],
        }
    }

    pub fn generator_inverse(&self, p: Point) -> GroupElement {
        GroupElement {
            group: self.id(),
            neg: vec![p],
            pos: Vec::new(),
        }
    }

    pub fn letter(&self, l: Letter) -> GroupElement {
        if l.inverse {
            self.generator_inverse(l.point)
        } else {
            self.generator(l.point)
        }
    }

    fn check_letters(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|l| l.point.index() >= self.num_points()) {
            Some(l) => Err(Error::ForeignLetter(l.point.index())),
            None => Ok(()),
        }
    }

    fn element_from_irreducible(&self, word: Vec<Letter>) -> GroupElement {
        let split = word.iter().position(|l| !l.inverse).unwrap_or(word.len());
        debug_assert!(word[split..].iter().all(|l| !l.inverse));
        GroupElement {
            group: self.id(),
            neg: word[..split].iter().map(|l| l.point).collect(),
            pos: word[split..].iter().map(|l| l.point).collect(),
        }
    }

    /// The left normal form of a word.
    pub fn normalize(&self, word: &[Letter]) -> Result<GroupElement> {
        self.check_letters(word)?;
        Ok(self.element_from_irreducible(self.rules().reduce(Orientation::Left, word)))
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        parse_word(self.presentation(), text)
    }

    /// Parses and normalizes a word such as `"a0 a1^-1"`.
    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        self.normalize(&self.parse_word(text)?)
    }

    pub fn format(&self, g: &GroupElement) -> String {
        format_word(self.presentation(), &g.letters())
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        format_word(self.presentation(), word)
    }

    pub fn try_multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        if g.group != self.id() || h.group != self.id() {
            return Err(Error::MixedGroups);
        }
        let word = self
            .rules()
            .reduce_onto(Orientation::Left, g.letters(), &h.letters());
        Ok(self.element_from_irreducible(word))
    }

    /// Panics when the elements belong to different groups; see
    /// [`A2Group::try_multiply`].
    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.try_multiply(g, h).expect("elements of this group")
    }

    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        let word = invert_word(&g.letters());
        self.element_from_irreducible(self.rules().reduce(Orientation::Left, &word))
    }

    /// `h⁻¹ g h`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.multiply(&self.invert(h), &self.multiply(g, h))
    }

    pub fn power(&self, g: &GroupElement, k: i64) -> GroupElement {
        let base = if k < 0 { self.invert(g) } else { g.clone() };
        let mut out = self.identity();
        for _ in 0..k.unsigned_abs() {
            out = self.multiply(&out, &base);
        }
        out
    }

    /// The right normal form `y₁ … y_n x₁⁻¹ … x_m⁻¹` of `g`, returned as the
    /// positive points followed by the inverted points.
    pub fn right_normal_form(&self, g: &GroupElement) -> (Vec<Point>, Vec<Point>) {
        let word = self.rules().reduce(Orientation::Right, &g.letters());
        let split = word.iter().position(|l| l.inverse).unwrap_or(word.len());
        (
            word[..split].iter().map(|l| l.point).collect(),
            word[split..].iter().map(|l| l.point).collect(),
        )
    }

    /// Element given by a right normal form.
    pub fn from_right_normal_form(&self, pos: &[Point], neg: &[Point]) -> Result<GroupElement> {
        let word: Vec<Letter> = pos
            .iter()
            .map(|&p| Letter::pos(p))
            .chain(neg.iter().map(|&p| Letter::inv(p)))
            .collect();
        self.normalize(&word)
    }

    /// Checks the admissibility conditions of the left normal form directly.
    pub fn is_left_normal(&self, g: &GroupElement) -> bool {
        let tp = self.presentation();
        g.neg.windows(2).all(|w| !tp.on_lambda(w[1], w[0]))
            && g.pos.windows(2).all(|w| !tp.on_lambda(w[0], w[1]))
            && match (g.neg.last(), g.pos.first()) {
                (Some(x), Some(y)) => x != y,
                _ => true,
            }
    }

    /// Uniformly random letters, `len` of them.
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Vec<Letter> {
        let n = self.num_points();
        (0..len)
            .map(|_| Letter {
                point: Point(rng.gen_range(0..n) as u16),
                inverse: rng.gen_bool(0.5),
            })
            .collect()
    }

    /// Normal form of a random word of random length `0..=max_len`; the
    /// result may be shorter than the word.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> GroupElement {
        let len = rng.gen_range(0..=max_len);
        let word = self.random_word(rng, len);
        self.normalize(&word).expect("letters are in range")
    }
}

pub fn parse_word(tp: &TrianglePresentation, text: &str) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        if token == "e" {
            continue;
        }
        let (name, inverse) = match token.strip_suffix("^-1") {
            Some(name) => (name, true),
            None => (token, false),
        };
        out.push(Letter {
            point: tp.point(name)?,
            inverse,
        });
    }
    Ok(out)
}

/// Token syntax: `name` or `name^-1`, space separated; `e` for the empty
/// word.
pub fn format_word(tp: &TrianglePresentation, word: &[Letter]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter()
        .map(|l| {
            if l.inverse {
                format!("{}^-1", tp.name(l.point))
            } else {
                tp.name(l.point).to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl GroupOracle for A2Group {
    type Element = GroupElement;

    fn identity(&self) -> GroupElement {
        A2Group::identity(self)
    }

    fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        A2Group::multiply(self, g, h)
    }

    fn invert(&self, g: &GroupElement) -> GroupElement {
        A2Group::invert(self, g)
    }

    fn length(&self, g: &GroupElement) -> usize {
        g.len()
    }

    fn generators(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = self
            .presentation()
            .plane()
            .points()
            .flat_map(|p| [self.generator(p), self.generator_inverse(p)])
            .collect();
        out.sort();
        out
    }

    fn format(&self, g: &GroupElement) -> String {
        A2Group::format(self, g)
    }
}
