use std::cmp::Ordering;
use std::fmt;

use crate::words::{GroupOracle, Subgroup};
use crate::{Error, Result};

/// A reduced word in a free product of `s` infinite cyclic and `t` order-two
/// groups: syllables `(factor, exponent)` with adjacent factors distinct,
/// exponents nonzero, and exponent 1 in the order-two factors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpElement(Vec<(u8, i32)>);

impl FpElement {
    pub fn syllables(&self) -> &[(u8, i32)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The letters `(factor, ±1)` spelled out.
    fn letters(&self) -> impl Iterator<Item = (u8, i32)> + '_ {
        self.0
            .iter()
            .flat_map(|&(f, e)| std::iter::repeat_n((f, e.signum()), e.unsigned_abs() as usize))
    }
}

impl Ord for FpElement {
    /// Shortlex on the spelled-out letters.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for FpElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `ℤ * … * ℤ * ℤ₂ * … * ℤ₂` with `s` infinite cyclic factors named
/// `a, b, …` followed by `t` order-two factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    s: usize,
    t: usize,
    names: Vec<String>,
}

impl FreeProduct {
    pub fn new(s: usize, t: usize) -> Result<Self> {
        if 2 * s + t < 2 {
            return Err(Error::Precondition(format!(
                "a free product with s = {s}, t = {t} is finite; need 2s + t >= 2"
            )));
        }
        if s + t > 26 {
            return Err(Error::Precondition("at most 26 factors".into()));
        }
        let names = (0..s + t)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        Ok(FreeProduct { s, t, names })
    }

    pub fn num_factors(&self) -> usize {
        self.s + self.t
    }

    fn is_involution(&self, factor: u8) -> bool {
        factor as usize >= self.s
    }

    pub fn name(&self, factor: u8) -> &str {
        &self.names[factor as usize]
    }

    /// The generator of a factor.
    pub fn generator(&self, factor: u8) -> FpElement {
        FpElement(vec![(factor, 1)])
    }

    /// Reduces an arbitrary syllable sequence.
    pub fn reduce(&self, syllables: impl IntoIterator<Item = (u8, i32)>) -> FpElement {
        let mut out: Vec<(u8, i32)> = Vec::new();
        for (f, e) in syllables {
            let mut e = if self.is_involution(f) {
                e.rem_euclid(2)
            } else {
                e
            };
            if e == 0 {
                continue;
            }
            if let Some(&(lf, le)) = out.last() {
                if lf == f {
                    out.pop();
                    e += le;
                    if self.is_involution(f) {
                        e = e.rem_euclid(2);
                    }
                    if e != 0 {
                        out.push((f, e));
                    }
                    continue;
                }
            }
            out.push((f, e));
        }
        FpElement(out)
    }

    pub fn parse(&self, text: &str) -> Result<FpElement> {
        let mut syllables = Vec::new();
        for token in text.split_whitespace() {
            if token == "e" {
                continue;
            }
            let (name, e) = match token.strip_suffix("^-1") {
                Some(name) => (name, -1),
                None => (token, 1),
            };
            let f = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownPoint(name.to_string()))?;
            syllables.push((f as u8, e));
        }
        Ok(self.reduce(syllables))
    }

    /// `h` with `g = a^k h` and `h` not starting with a power of factor 0.
    fn strip_leading(&self, g: &FpElement, factor: u8) -> FpElement {
        match g.0.first() {
            Some(&(f, _)) if f == factor => FpElement(g.0[1..].to_vec()),
            _ => g.clone(),
        }
    }
}

impl GroupOracle for FreeProduct {
    type Element = FpElement;

    fn identity(&self) -> FpElement {
        FpElement(Vec::new())
    }

    fn multiply(&self, g: &FpElement, h: &FpElement) -> FpElement {
        self.reduce(g.0.iter().chain(&h.0).copied())
    }

    fn invert(&self, g: &FpElement) -> FpElement {
        self.reduce(g.0.iter().rev().map(|&(f, e)| (f, -e)))
    }

    fn length(&self, g: &FpElement) -> usize {
        g.len()
    }

    fn generators(&self) -> Vec<FpElement> {
        let mut out = Vec::new();
        for f in 0..self.num_factors() as u8 {
            out.push(FpElement(vec![(f, 1)]));
            if !self.is_involution(f) {
                out.push(FpElement(vec![(f, -1)]));
            }
        }
        out.sort();
        out
    }

    fn format(&self, g: &FpElement) -> String {
        if g.is_empty() {
            return "e".into();
        }
        g.letters()
            .map(|(f, e)| {
                if e < 0 {
                    format!("{}^-1", self.name(f))
                } else {
                    self.name(f).to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The cyclic subgroup generated by the first factor.
#[derive(Clone, Debug)]
pub struct CyclicFactor {
    group: FreeProduct,
}

impl CyclicFactor {
    pub fn new(group: &FreeProduct) -> Result<Self> {
        if group.s == 0 {
            return Err(Error::Precondition(
                "the free product has no infinite cyclic factor".into(),
            ));
        }
        Ok(CyclicFactor {
            group: group.clone(),
        })
    }

    /// Exact freeness test `g⁻¹ H g ∩ H = {e}`: writing `g = a^j h` with `h`
    /// not starting with a power of `a`, the conjugate `g⁻¹ a^k g = h⁻¹ a^k h`
    /// is reduced as written, so it lies in `H` only when `h = e`.
    pub fn exact_condition_31(&self, g: &FpElement) -> bool {
        let h = self.group.strip_leading(g, 0);
        if h.is_empty() {
            return false;
        }
        let a = self.group.generator(0);
        let conj = self.group.conjugate(&a, &h);
        // The syntactic argument, confirmed on k = 1.
        conj.len() == 2 * h.len() + 1 && !self.contains(&conj)
    }
}

impl Subgroup for CyclicFactor {
    type Group = FreeProduct;

    fn group(&self) -> &FreeProduct {
        &self.group
    }

    fn contains(&self, g: &FpElement) -> bool {
        matches!(g.0.as_slice(), [] | [(0, _)])
    }

    fn generators(&self) -> Vec<FpElement> {
        vec![self.group.generator(0)]
    }

    fn elements(&self, bound: usize) -> Vec<FpElement> {
        let r = bound as i32;
        let mut out: Vec<FpElement> = (-r..=r).map(|k| self.group.reduce([(0, k)])).collect();
        out.sort();
        out
    }

    /// Strips the leading and trailing powers of `a`; reduced words are
    /// unique, so this is canonical on `H g H`.
    fn double_coset_key(&self, g: &FpElement) -> Option<FpElement> {
        let mut s = g.0.as_slice();
        if let Some(&(0, _)) = s.first() {
            s = &s[1..];
        }
        if let Some(&(0, _)) = s.last() {
            s = &s[..s.len() - 1];
        }
        Some(FpElement(s.to_vec()))
    }

    fn describe(&self) -> String {
        format!("<{}>", self.group.name(0))
    }
}
