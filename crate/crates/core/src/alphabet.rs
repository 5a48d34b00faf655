use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a letter inside its [`Alphabet`]; the order of indices is the
/// variable order used by every monomial ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered set of variable names. Polynomials carry a shared handle to
/// the alphabet they are written in; two alphabets are compatible when
/// their name lists agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

pub type Ctx = Arc<Alphabet>;

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ctx> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim().to_string();
            if n.is_empty() || !valid_name(&n) {
                return Err(Error::Invalid(format!("bad variable name `{n}`")));
            }
            if out.contains(&n) {
                return Err(Error::DuplicateVariable(n));
            }
            out.push(n);
        }
        Ok(Arc::new(Alphabet { names: out }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.index()]
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.names.iter().position(|n| n == name).map(|i| Var(i as u32))
    }

    pub fn var_or_err(&self, name: &str) -> Result<Var> {
        self.var(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.names.len() as u32).map(Var)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

fn valid_name(n: &str) -> bool {
    let mut chars = n.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// The alphabet `x, y, z` used throughout the rank-3 computations.
pub fn xyz() -> Ctx {
    Alphabet::new(&["x", "y", "z"]).expect("static names")
}

/// The commuting pair `z1, z2` that receives z-coefficients of xy-linear polynomials.
pub fn z_pair() -> Ctx {
    Alphabet::new(&["z1", "z2"]).expect("static names")
}
