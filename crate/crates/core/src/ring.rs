//! Named polynomial ring contexts.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::TermOrder;
use crate::poly::Polynomial;

struct RingData {
    names: Vec<String>,
    index: HashMap<String, usize>,
    order: TermOrder,
}

/// `Q[x_1, ..., x_n]` with declared variable names and a term order.
///
/// Cloning is cheap; two rings are the same context when they agree on the
/// variable list and the order.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S], order: TermOrder) -> Result<Ring> {
        let mut index = HashMap::new();
        let mut owned = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !valid_name(n) {
                return Err(Error::Unsupported(format!("invalid variable name `{n}`")));
            }
            if index.insert(n.to_string(), i).is_some() {
                return Err(Error::Unsupported(format!("duplicate variable `{n}`")));
            }
            owned.push(n.to_string());
        }
        if let TermOrder::Block(k) = order {
            if k > owned.len() {
                return Err(Error::Unsupported(format!(
                    "block size {k} exceeds ring arity {}",
                    owned.len()
                )));
            }
        }
        Ok(Ring(Arc::new(RingData {
            names: owned,
            index,
            order,
        })))
    }

    /// Degrevlex ring; panics on malformed names. Meant for compiled-in data.
    pub fn degrevlex<S: AsRef<str>>(names: &[S]) -> Ring {
        Ring::new(names, TermOrder::DegRevLex).expect("valid ring declaration")
    }

    pub fn arity(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0.names[index]
    }

    pub fn order(&self) -> TermOrder {
        self.0.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: TermOrder) -> Result<Ring> {
        Ring::new(&self.0.names, order)
    }

    pub fn var(&self, name: &str) -> Result<Polynomial> {
        Ok(Polynomial::variable(self, self.require_index(name)?))
    }

    pub fn gen(&self, index: usize) -> Polynomial {
        Polynomial::variable(self, index)
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.arity()).map(|i| self.gen(i)).collect()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Polynomial::parse(self, text)
    }

    pub(crate) fn check_same(&self, other: &Ring, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{what}: {self} versus {other}"
            )))
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.order == other.0.order && self.0.names == other.0.names)
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}] ({})", self.0.names.join(", "), self.0.order)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_validated() {
        assert!(Ring::new(&["z0", "c_12", "w"], TermOrder::DegRevLex).is_ok());
        assert!(Ring::new(&["0z"], TermOrder::DegRevLex).is_err());
        assert!(Ring::new(&["x", "x"], TermOrder::DegRevLex).is_err());
        assert!(Ring::new(&["x"], TermOrder::Block(2)).is_err());
    }

    #[test]
    fn equality_is_structural() {
        let a = Ring::degrevlex(&["x", "y"]);
        let b = Ring::degrevlex(&["x", "y"]);
        assert_eq!(a, b);
        assert_ne!(a, a.with_order(TermOrder::Lex).unwrap());
        assert_ne!(a, Ring::degrevlex(&["y", "x"]));
    }
}
