//! Violation lists produced by the axiom checkers.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{decode_index, Mat};

/// One failed identity: its name, the object indices it was checked at, and
/// the domain basis tuple where the two sides first disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub at: Vec<usize>,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, identity: &str, at: &[usize], witness: &[usize]) {
        self.violations.push(Violation { identity: identity.into(), at: at.to_vec(), witness: witness.to_vec() });
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    /// Record a violation unless `lhs == rhs`. `domain` gives the tensor
    /// factor dimensions of the common domain, used to decode the witness.
    pub fn check_eq(&mut self, identity: &str, at: &[usize], lhs: &Mat, rhs: &Mat, domain: &[usize]) -> bool {
        if lhs.shape() != rhs.shape() {
            self.push(identity, at, &[]);
            return false;
        }
        match lhs.first_difference(rhs) {
            None => true,
            Some((_, col)) => {
                self.push(identity, at, &decode_index(col, domain));
                false
            }
        }
    }

    /// Names of the violated identities, deduplicated in first-seen order.
    pub fn identities(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.identity.as_str()) {
                out.push(&v.identity);
            }
        }
        out
    }

    pub fn has(&self, identity: &str) -> bool {
        self.violations.iter().any(|v| v.identity == identity)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?} witness {:?}", self.identity, self.at, self.witness)
    }
}
