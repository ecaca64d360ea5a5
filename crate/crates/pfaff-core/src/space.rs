//! Ordered variable spaces.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Debug)]
struct Inner {
    names: Vec<String>,
    degree_cap: u32,
}

/// An ordered list of distinct variable names. The order is fixed for the
/// lifetime of every object referencing the space; it fixes the monomial
/// order and all printing. Cheap to clone.
///
/// Each space also carries the polynomial degree cap enforced by checked
/// multiplication (default 64), which catches runaway wedge chains.
#[derive(Clone, Debug)]
pub struct VarSpace(Arc<Inner>);

impl VarSpace {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_degree_cap(names, DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap<I, S>(names: I, degree_cap: u32) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (k, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Dimension("empty variable name".into()));
            }
            if names[..k].contains(name) {
                return Err(Error::Dimension(format!("duplicate variable name {name}")));
            }
        }
        Ok(VarSpace(Arc::new(Inner { names, degree_cap })))
    }

    pub fn dim(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn degree_cap(&self) -> u32 {
        self.0.degree_cap
    }
}

/// Spaces are equal when their variable lists are equal; the degree cap is
/// policy, not identity.
impl PartialEq for VarSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl Eq for VarSpace {}

impl fmt::Display for VarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.names.join(", "))
    }
}

pub(crate) fn space_mismatch(expected: &VarSpace, found: &VarSpace) -> Error {
    Error::SpaceMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
