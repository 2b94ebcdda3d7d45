//! Greedy search for absolute-monotonicity certificates.
//!
//! Validity of a chain rests on two facts: if `g(0) >= 0` and `g'` is
//! absolutely monotonic on `(0, inf)` then so is `g`; and `c e^{m t} h` is
//! absolutely monotonic whenever `h` is and `c > 0`, `m >= 0`.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::exppoly::ExpPoly;
use crate::ser::rational_str;
use crate::Rational;

pub const CERTIFICATE_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    /// Expression reached after differentiating and stripping.
    pub expoly: ExpPoly,
    pub derivatives: u32,
    /// `m` in the stripped factor `e^{m t}`.
    pub exp_stripped: u32,
    /// Positive constant divided out together with `e^{m t}`.
    #[serde(with = "rational_str")]
    pub content_stripped: Rational,
    /// Value of the differentiated expression at `0+`, before stripping.
    #[serde(with = "rational_str")]
    pub limit: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AMCertificate {
    pub schema_version: u32,
    pub root: ExpPoly,
    #[serde(with = "rational_str")]
    pub root_limit: Rational,
    pub steps: Vec<Step>,
    pub terminal: ExpPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    NegativeLimit(Rational),
    DepthExhausted(u32),
}

/// Search failure. It does not assert that the function fails to be
/// absolutely monotonic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationFailure {
    pub offending: ExpPoly,
    pub reason: FailureReason,
    pub depth: u32,
    pub partial_steps: Vec<Step>,
}

impl std::fmt::Display for CertificationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.reason {
            FailureReason::NegativeLimit(v) => {
                write!(f, "limit at 0+ equals {v} < 0 after {} derivatives", self.depth)
            }
            FailureReason::DepthExhausted(d) => write!(f, "depth {d} exhausted"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("root limit {0} is negative or misrecorded")]
    RootLimit(Rational),
    #[error("step {0}: recorded limit does not match")]
    Limit(usize),
    #[error("step {0}: limit is negative")]
    NegativeLimit(usize),
    #[error("step {0}: stripped factor is not admissible")]
    Strip(usize),
    #[error("step {0}: recorded expression does not match replay")]
    Mismatch(usize),
    #[error("terminal does not match the last step")]
    Terminal,
    #[error("terminal has a negative coefficient")]
    NegativeTerminal,
}

impl AMCertificate {
    pub fn depth(&self) -> u32 {
        self.steps.iter().map(|s| s.derivatives).sum()
    }

    /// `[root_limit, step limits...]`.
    pub fn limits(&self) -> Vec<Rational> {
        std::iter::once(self.root_limit.clone()).chain(self.steps.iter().map(|s| s.limit.clone())).collect()
    }

    /// Re-executes every step from the root and checks each recorded value.
    pub fn replay(&self) -> Result<(), ReplayError> {
        if self.root.value_at_zero() != self.root_limit || self.root_limit.is_negative() {
            return Err(ReplayError::RootLimit(self.root_limit.clone()));
        }
        let mut cur = self.root.clone();
        for (i, s) in self.steps.iter().enumerate() {
            let mut d = cur;
            for _ in 0..s.derivatives {
                d = d.differentiate();
            }
            if d.value_at_zero() != s.limit {
                return Err(ReplayError::Limit(i));
            }
            if s.limit.is_negative() {
                return Err(ReplayError::NegativeLimit(i));
            }
            if !s.content_stripped.is_positive() || d.min_degree().is_some_and(|m| m < s.exp_stripped) {
                return Err(ReplayError::Strip(i));
            }
            let next = d.strip_exp(s.exp_stripped).scale(&(Rational::one() / &s.content_stripped));
            if next != s.expoly {
                return Err(ReplayError::Mismatch(i));
            }
            cur = next;
        }
        if cur != self.terminal {
            return Err(ReplayError::Terminal);
        }
        if !self.terminal.has_nonnegative_coefficients() {
            return Err(ReplayError::NegativeTerminal);
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Differentiate until every coefficient is nonnegative, checking the value
/// at `0+` before each step and stripping the largest common `e^{m t}`
/// (with the rational content) whenever the constant-exponential part vanishes.
pub fn certify_absolutely_monotonic(
    f: &ExpPoly,
    max_depth: u32,
) -> Result<AMCertificate, CertificationFailure> {
    let root_limit = f.value_at_zero();
    let mut steps = Vec::new();
    let fail = |offending: &ExpPoly, reason, depth, steps: &Vec<Step>| CertificationFailure {
        offending: offending.clone(),
        reason,
        depth,
        partial_steps: steps.clone(),
    };
    if f.has_nonnegative_coefficients() {
        return Ok(AMCertificate {
            schema_version: CERTIFICATE_SCHEMA,
            root: f.clone(),
            root_limit,
            steps,
            terminal: f.clone(),
        });
    }
    if root_limit.is_negative() {
        return Err(fail(f, FailureReason::NegativeLimit(root_limit), 0, &steps));
    }
    let mut cur = f.clone();
    let mut depth = 0;
    while !cur.has_nonnegative_coefficients() {
        if depth >= max_depth {
            return Err(fail(&cur, FailureReason::DepthExhausted(max_depth), depth, &steps));
        }
        let d = cur.differentiate();
        depth += 1;
        let limit = d.value_at_zero();
        if limit.is_negative() {
            return Err(fail(&d, FailureReason::NegativeLimit(limit), depth, &steps));
        }
        let m = d.min_degree().unwrap_or(0);
        let (next, content) = if m > 0 {
            let s = d.strip_exp(m);
            let c = s.content();
            (s.scale(&(Rational::one() / &c)), c)
        } else {
            (d, Rational::one())
        };
        steps.push(Step {
            expoly: next.clone(),
            derivatives: 1,
            exp_stripped: m,
            content_stripped: content,
            limit,
        });
        cur = next;
    }
    Ok(AMCertificate { schema_version: CERTIFICATE_SCHEMA, root: f.clone(), root_limit, steps, terminal: cur })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expoly::{catalog, parse_expoly};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn f1_chain() {
        let c = certify_absolutely_monotonic(&catalog::named("f1").unwrap(), 16).unwrap();
        assert_eq!(c.limits(), ints(&[0, 0, 0, 0, 0, 10, 74, 231, 408, 516]));
        assert_eq!(c.terminal, parse_expoly("6t+43").unwrap());
        assert_eq!(c.depth(), 9);
        c.replay().unwrap();
    }

    #[test]
    fn trivial_success_and_failure() {
        let c = certify_absolutely_monotonic(&parse_expoly("1+t").unwrap(), 4).unwrap();
        assert!(c.steps.is_empty());
        let e = certify_absolutely_monotonic(&parse_expoly("t-1").unwrap(), 4).unwrap_err();
        assert_eq!(e.reason, FailureReason::NegativeLimit(Rational::from_integer((-1).into())));
        let e = certify_absolutely_monotonic(&catalog::named("f2").unwrap(), 3).unwrap_err();
        assert_eq!(e.reason, FailureReason::DepthExhausted(3));
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let mut c = certify_absolutely_monotonic(&catalog::named("h1").unwrap(), 64).unwrap();
        c.steps[2].limit += Rational::one();
        assert_eq!(c.replay(), Err(ReplayError::Limit(2)));
    }

    #[test]
    fn json_field_order_and_roundtrip() {
        let c = certify_absolutely_monotonic(&catalog::named("f1").unwrap(), 16).unwrap();
        let js = c.to_json();
        let root = js.find("\"root\"").unwrap();
        let steps = js.find("\"steps\"").unwrap();
        let term = js.find("\"terminal\"").unwrap();
        assert!(root < steps && steps < term);
        let back: AMCertificate = serde_json::from_str(&js).unwrap();
        assert_eq!(back, c);
    }
}
