//! Exponent vectors and the term orders used by the engine.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A monomial `x_1^{a_1} ... x_n^{a_n}` stored as its exponent vector.
///
/// The total degree is cached because every degree-compatible comparison
/// needs it first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; arity].into_boxed_slice(),
        }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial {
            degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn variable(arity: usize, index: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Monomial::new(exps)
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Sum of the exponents of the listed variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&v| self.exps[v]).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial {
            degree: self.degree + other.degree,
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, provided `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            degree: other.degree - self.degree,
            exps: other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(b, a)| b - a)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            degree: self.degree * e,
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }

    /// Keep only the listed coordinates, in the listed order.
    pub fn project(&self, vars: &[usize]) -> Monomial {
        Monomial::new(vars.iter().map(|&v| self.exps[v]).collect())
    }

    /// The variable index if this monomial is `x_i^k` with `k >= 1`.
    pub fn pure_power(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// Compatible total orders on monomials of a fixed arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum TermOrder {
    #[default]
    DegRevLex,
    Lex,
    /// Degrevlex on the first `k` variables, ties broken by degrevlex on the
    /// remaining ones. Eliminates the first block.
    Block(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // a smaller exponent in the last differing variable wins
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::DegRevLex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                }
                ord => ord,
            },
            TermOrder::Lex => a.exps.cmp(&b.exps),
            TermOrder::Block(k) => {
                let k = (*k).min(a.arity());
                match degrevlex(&a.exps[..k], &b.exps[..k]) {
                    Ordering::Equal => degrevlex(&a.exps[k..], &b.exps[k..]),
                    ord => ord,
                }
            }
        }
    }

    /// Whether every monomial of larger total degree is larger.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, TermOrder::DegRevLex)
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::DegRevLex => write!(f, "degrevlex"),
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::Block(k) => write!(f, "block:{k}"),
        }
    }
}

impl std::str::FromStr for TermOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "degrevlex" => Ok(TermOrder::DegRevLex),
            "lex" => Ok(TermOrder::Lex),
            other => match other.strip_prefix("block:") {
                Some(k) => k
                    .parse()
                    .map(TermOrder::Block)
                    .map_err(|_| format!("bad block size in `{other}`")),
                None => Err(format!("unknown term order `{other}`")),
            },
        }
    }
}
