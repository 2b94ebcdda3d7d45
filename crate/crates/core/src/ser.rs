//! Serde helpers.

/// Rationals as `"p/q"` (or `"p"`) strings.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::expoly::fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse::<Rational>().map_err(serde::de::Error::custom)
    }
}
