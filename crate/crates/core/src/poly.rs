//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::rational::{format_rational, is_negative, Rational};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub mono: Monomial,
}

/// A polynomial in a [`Ring`]. Terms are kept strictly descending under the
/// ring's order with no zero coefficients, so structural equality is
/// mathematical equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

/// Merge two descending term lists into `a + factor * b`.
pub(crate) fn merge_scaled(
    order: TermOrder,
    a: &[Term],
    b: &[Term],
    factor: &Rational,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    coeff: &b[j].coeff * factor,
                    mono: b[j].mono.clone(),
                });
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].coeff + &b[j].coeff * factor;
                if !c.is_zero() {
                    out.push(Term {
                        coeff: c,
                        mono: a[i].mono.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|t| Term {
        coeff: &t.coeff * factor,
        mono: t.mono.clone(),
    }));
    out
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                coeff: c,
                mono: Monomial::one(ring.arity()),
            }],
        }
    }

    pub fn variable(ring: &Ring, index: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                coeff: Rational::one(),
                mono: Monomial::variable(ring.arity(), index),
            }],
        }
    }

    pub fn monomial(ring: &Ring, coeff: Rational, mono: Monomial) -> Self {
        assert_eq!(mono.arity(), ring.arity(), "monomial arity");
        if coeff.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term { coeff, mono }],
        }
    }

    /// Build from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Monomial)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (c, m) in terms {
            assert_eq!(m.arity(), ring.arity(), "monomial arity");
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, Rational>) -> Self {
        let order = ring.order();
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusted constructor: terms already strictly descending and nonzero.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.mono.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|t| &t.mono == mono)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree_in(vars)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.mono.degree();
                self.terms.iter().all(|s| s.mono.degree() == d)
            }
        }
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.arity()];
        for t in &self.terms {
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter_map(|(i, &u)| u.then_some(i))
            .collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exponent(var) > 0)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring, "add")?;
        Ok(self.add_scaled(other, &Rational::one()))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring, "sub")?;
        Ok(self.add_scaled(other, &-Rational::one()))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring, "mul")?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, other: &Polynomial, factor: &Rational) -> Polynomial {
        debug_assert!(self.ring == other.ring);
        if factor.is_zero() {
            return self.clone();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: merge_scaled(self.ring.order(), &self.terms, &other.terms, factor),
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].coeff, &other.terms[0].mono);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].coeff, &self.terms[0].mono);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                *acc.entry(a.mono.mul(&b.mono))
                    .or_insert_with(Rational::zero) += &a.coeff * &b.coeff;
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    /// Multiplication by a single term keeps the order, so no re-sort.
    pub fn mul_term(&self, coeff: &Rational, mono: &Monomial) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * coeff,
                    mono: t.mono.mul(mono),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&(Rational::one() / lc)),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.arity() {
            return Err(Error::Shape(format!(
                "evaluation point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.arity()
            )));
        }
        let mut total = Rational::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Replace the listed variables by rational values, staying in the same
    /// ring.
    pub fn specialize(&self, values: &[(usize, Rational)]) -> Polynomial {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for t in &self.terms {
            let mut exps = t.mono.exponents().to_vec();
            let mut c = t.coeff.clone();
            for (v, value) in values {
                let e = exps[*v];
                if e > 0 {
                    c *= num_traits::pow(value.clone(), e as usize);
                    exps[*v] = 0;
                }
            }
            if !c.is_zero() {
                *acc.entry(Monomial::new(exps))
                    .or_insert_with(Rational::zero) += c;
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|t| {
            let e = t.mono.exponent(var);
            if e == 0 {
                return None;
            }
            let mut exps = t.mono.exponents().to_vec();
            exps[var] -= 1;
            Some((
                &t.coeff * Rational::from_integer(e.into()),
                Monomial::new(exps),
            ))
        });
        Polynomial::from_terms(&self.ring, terms.collect::<Vec<_>>())
    }

    /// Multiply each term by `var^(target - deg(term))`.
    pub fn homogenize(&self, var: usize, target: u32) -> Result<Polynomial> {
        if let Some(d) = self.total_degree() {
            if d > target {
                return Err(Error::Degree(format!(
                    "cannot homogenize a degree {d} polynomial to degree {target}"
                )));
            }
        }
        let terms = self.terms.iter().map(|t| {
            let mut exps = t.mono.exponents().to_vec();
            exps[var] += target - t.mono.degree();
            (t.coeff.clone(), Monomial::new(exps))
        });
        Ok(Polynomial::from_terms(
            &self.ring,
            terms.collect::<Vec<_>>(),
        ))
    }

    /// Sum of the terms of the given total degree in `vars`.
    pub fn component_in(&self, vars: &[usize], degree: u32) -> Polynomial {
        Polynomial::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .filter(|t| t.mono.degree_in(vars) == degree)
                .cloned()
                .collect(),
        )
    }

    /// Top-degree part in `vars`.
    pub fn top_component_in(&self, vars: &[usize]) -> Polynomial {
        match self.degree_in(vars) {
            None => self.clone(),
            Some(d) => self.component_in(vars, d),
        }
    }

    /// Split along the `axes` variables: each monomial in the axes maps to
    /// its coefficient, a polynomial in the remaining variables.
    pub fn coefficients_along(&self, axes: &[usize]) -> BTreeMap<Vec<u32>, Polynomial> {
        let mut groups: BTreeMap<Vec<u32>, Vec<(Rational, Monomial)>> = BTreeMap::new();
        for t in &self.terms {
            let key: Vec<u32> = axes.iter().map(|&a| t.mono.exponent(a)).collect();
            let mut exps = t.mono.exponents().to_vec();
            for &a in axes {
                exps[a] = 0;
            }
            groups
                .entry(key)
                .or_default()
                .push((t.coeff.clone(), Monomial::new(exps)));
        }
        groups
            .into_iter()
            .map(|(k, ts)| (k, Polynomial::from_terms(&self.ring, ts)))
            .collect()
    }

    /// Move into another ring by matching variable names.
    pub fn to_ring(&self, target: &Ring) -> Result<Polynomial> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ring.arity());
        for name in self.ring.names() {
            map.push(target.index_of(name));
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut exps = vec![0u32; target.arity()];
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => return Err(Error::UnmappedVariable(self.ring.name(i).to_string())),
                }
            }
            out.push((t.coeff.clone(), Monomial::new(exps)));
        }
        Ok(Polynomial::from_terms(target, out))
    }

    /// Linear form coefficients: `(coefficients per variable, constant)`.
    /// Fails if the degree exceeds one.
    pub fn linear_coefficients(&self) -> Result<(Vec<Rational>, Rational)> {
        let mut coeffs = vec![Rational::zero(); self.ring.arity()];
        let mut constant = Rational::zero();
        for t in &self.terms {
            match t.mono.degree() {
                0 => constant = t.coeff.clone(),
                1 => {
                    let v = t.mono.pure_power().expect("degree one");
                    coeffs[v] = t.coeff.clone();
                }
                _ => return Err(Error::Degree(format!("expected a linear form, got {self}"))),
            }
        }
        Ok((coeffs, constant))
    }

    /// Re-sort under the ring's order after an unchecked construction.
    pub fn with_ring_order(&self, ring: &Ring) -> Result<Polynomial> {
        if ring.names() != self.ring.names() {
            return Err(Error::RingMismatch(format!(
                "reorder: {} versus {}",
                self.ring, ring
            )));
        }
        let ts: Vec<_> = self
            .terms
            .iter()
            .map(|t| (t.coeff.clone(), t.mono.clone()))
            .collect();
        Ok(Polynomial::from_terms(ring, ts))
    }

    /// Position of `other` relative to `self` as a rational multiple, if any.
    pub fn scalar_ratio(&self, other: &Polynomial) -> Option<Rational> {
        if self.ring != other.ring || self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let ratio = &other.terms[0].coeff / &self.terms[0].coeff;
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            if a.mono != b.mono || &a.coeff * &ratio != b.coeff {
                return None;
            }
        }
        Some(ratio)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = is_negative(&t.coeff);
            let abs = if neg {
                -t.coeff.clone()
            } else {
                t.coeff.clone()
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(&self.ring, &t.mono);
            match (abs.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{}", format_rational(&abs))?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", format_rational(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

pub(crate) fn format_monomial(ring: &Ring, mono: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in mono.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.name(i).to_string()),
            _ => parts.push(format!("{}^{e}", ring.name(i))),
        }
    }
    parts.join("*")
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials from the same ring")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self)
                    .$checked(&rhs)
                    .expect("polynomials from the same ring")
            }
        }
        impl<'a> $trait<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                (&self)
                    .$checked(rhs)
                    .expect("polynomials from the same ring")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ring() -> Ring {
        Ring::degrevlex(&["z0", "z1", "z2", "c0", "c1"])
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let (z1, z2) = (r.gen(1), r.gen(2));
        let p = (&z1 + &z2) * (&z1 - &z2);
        assert_eq!(p, r.parse("z1^2 - z2^2").unwrap());
    }

    #[test]
    fn zero_absorbs() {
        let r = ring();
        let f = r.parse("z1^3 - 2/3*z2 + 5").unwrap();
        assert!((&f * &r.zero()).is_zero());
    }

    #[test]
    fn deformation_shape() {
        let r = ring();
        let a = r.parse("z0^2").unwrap();
        let b = r.parse("z0^2 - c1*z0 - c0*z1").unwrap();
        assert_eq!(&a - &b, r.parse("c1*z0 + c0*z1").unwrap());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Ring::degrevlex(&["x"]).gen(0);
        let b = Ring::degrevlex(&["y"]).gen(0);
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn homogenize_lifts_each_term() {
        let r = Ring::degrevlex(&["z", "w", "t"]);
        let f = r.parse("z^2 + w").unwrap();
        assert_eq!(f.homogenize(2, 2).unwrap(), r.parse("z^2 + w*t").unwrap());
        let g = r.parse("z*w").unwrap();
        assert_eq!(g.homogenize(2, 2).unwrap(), g);
        assert!(matches!(f.homogenize(2, 1), Err(Error::Degree(_))));
    }

    #[test]
    fn homogenize_then_dehomogenize() {
        let r = Ring::degrevlex(&["z", "w", "t"]);
        let f = r.parse("z^2 - 3*z*w + w - 7/2").unwrap();
        let h = f.homogenize(2, 3).unwrap();
        assert!(h.is_homogeneous());
        assert_eq!(h.specialize(&[(2, int(1))]), f);
    }

    #[test]
    fn display_is_canonical() {
        let r = Ring::degrevlex(&["z0", "c32"]);
        let f = r.parse("1 + z0^2 - 2/3*c32*z0").unwrap();
        assert_eq!(f.to_string(), "z0^2 - 2/3*z0*c32 + 1");
        assert_eq!(r.zero().to_string(), "0");
        assert_eq!(r.parse("-z0").unwrap().to_string(), "-z0");
    }

    #[test]
    fn split_along_axes() {
        let r = ring();
        let f = r.parse("c0*z0*z1 + 2*c1*z0*z1 - z1^2 + c0").unwrap();
        let parts = f.coefficients_along(&[0, 1, 2]);
        assert_eq!(parts[&vec![1, 1, 0]], r.parse("c0 + 2*c1").unwrap());
        assert_eq!(parts[&vec![0, 2, 0]], r.parse("-1").unwrap());
        assert_eq!(parts[&vec![0, 0, 0]], r.parse("c0").unwrap());
    }

    #[test]
    fn evaluate_and_specialize() {
        let r = Ring::degrevlex(&["x", "y"]);
        let f = r.parse("x^2*y - 1/2*y").unwrap();
        assert_eq!(f.evaluate(&[int(2), int(3)]).unwrap(), rat(21, 2));
        assert_eq!(f.specialize(&[(0, int(2))]), r.parse("7/2*y").unwrap());
        assert_eq!(f.derivative(0), r.parse("2*x*y").unwrap());
    }

    #[test]
    fn moving_between_rings() {
        let a = Ring::degrevlex(&["x", "y"]);
        let b = Ring::degrevlex(&["y", "t", "x"]);
        let f = a.parse("x^2 - y").unwrap();
        assert_eq!(f.to_ring(&b).unwrap(), b.parse("x^2 - y").unwrap());
        let c = Ring::degrevlex(&["x"]);
        assert!(matches!(f.to_ring(&c), Err(Error::UnmappedVariable(_))));
    }
}
