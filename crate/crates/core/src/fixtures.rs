//! Bundled presentations.
//!
//! * `Z2`, `T333`, `KLEIN`: the three groups over the three-point geometry.
//! * `B3_PATTERN`: an order-two presentation with `a0 a1 a1 = a0 a2 a2 =
//!   a0 a4 a4 = e`.
//! * `Q3_COMMUTING`: an order-three presentation with the commuting triple
//!   `{a1, a7, a9}`, over the cyclic plane with `λ(x) = D + 3x`.

use crate::presentation::parse;
use crate::{Result, TrianglePresentation};

pub const Z2: &str = include_str!("../fixtures/q1_z2.tp");
pub const T333: &str = include_str!("../fixtures/q1_t333.tp");
pub const KLEIN: &str = include_str!("../fixtures/q1_klein.tp");
pub const B3_PATTERN: &str = include_str!("../fixtures/q2_b3_pattern.tp");
pub const Q3_COMMUTING: &str = include_str!("../fixtures/q3_commuting.tp");

/// All bundled fixtures as `(file stem, text)`.
pub const ALL: [(&str, &str); 5] = [
    ("q1_z2", Z2),
    ("q1_t333", T333),
    ("q1_klein", KLEIN),
    ("q2_b3_pattern", B3_PATTERN),
    ("q3_commuting", Q3_COMMUTING),
];

/// Parses a bundled fixture.
pub fn load(text: &str) -> Result<TrianglePresentation> {
    parse(text)
}
