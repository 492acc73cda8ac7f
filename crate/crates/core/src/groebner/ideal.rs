//! Ideals and the operations built on their Gröbner bases.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};

use super::buchberger::{groebner_below, top_reduce_with};
use super::vector::{ModuleCtx, VTerm, Vector};
use super::{buchberger as gb_of, GroebnerBasis};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::ring::Ring;
use crate::subst::Substitution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            ring.check_same(g.ring(), "ideal generator")?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let gens = gens
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// Gröbner basis under the ring's own order.
    pub fn groebner(&self) -> Result<GroebnerBasis> {
        self.groebner_with(self.ring.order())
    }

    pub fn groebner_with(&self, order: TermOrder) -> Result<GroebnerBasis> {
        if self.gens.is_empty() {
            let ring = super::ring_for(&self.ring, order)?;
            return super::groebner_in(&ring, &[], None);
        }
        gb_of(&self.gens, order)
    }

    /// Gröbner basis valid up to `degree`, for homogeneous ideals.
    pub fn groebner_truncated(&self, degree: u32) -> Result<GroebnerBasis> {
        if !self.is_homogeneous() {
            return Err(Error::Unsupported(
                "degree truncation needs a homogeneous ideal".into(),
            ));
        }
        super::groebner_in(&self.ring, &self.gens, Some(degree))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.groebner()?.contains(f)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring, "ideal sum")?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn map(&self, s: &Substitution) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| s.apply(g))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(s.codomain(), gens)
    }

    pub fn to_ring(&self, ring: &Ring) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }
}

/// Equality of ideals: mutual containment of generators.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.ring.check_same(&b.ring, "ideal_equal")?;
    let ga = a.groebner()?;
    let gb = b.groebner()?;
    for g in b.gens() {
        if !ga.contains(g)? {
            return Ok(false);
        }
    }
    for g in a.gens() {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ring with `first` moved to the front, keeping relative order otherwise.
fn front_loaded(ring: &Ring, first: &[usize], order: TermOrder) -> Result<Ring> {
    let mut names: Vec<String> = first.iter().map(|&i| ring.name(i).to_string()).collect();
    for (i, n) in ring.names().iter().enumerate() {
        if !first.contains(&i) {
            names.push(n.clone());
        }
    }
    Ring::new(&names, order)
}

fn dedup_sorted(mut vars: Vec<usize>, arity: usize) -> Result<Vec<usize>> {
    vars.sort_unstable();
    vars.dedup();
    if vars.iter().any(|&v| v >= arity) {
        return Err(Error::Shape("variable index out of range".into()));
    }
    Ok(vars)
}

/// Generators of `I ∩ k[remaining variables]`, as polynomials of the
/// original ring.
pub fn eliminate(ideal: &Ideal, drop: &[usize]) -> Result<Ideal> {
    let ring = ideal.ring();
    let drop = dedup_sorted(drop.to_vec(), ring.arity())?;
    if drop.is_empty() {
        return Ok(ideal.clone());
    }
    let k = drop.len();
    let order = if k == ring.arity() {
        TermOrder::DegRevLex
    } else {
        TermOrder::Block(k)
    };
    let work = front_loaded(ring, &drop, order)?;
    let moved = ideal.to_ring(&work)?;
    let gb = moved.groebner()?;
    let front: Vec<usize> = (0..k).collect();
    let kept = gb
        .polynomials()
        .into_iter()
        .filter(|g| front.iter().all(|&v| !g.involves(v)))
        .map(|g| g.to_ring(ring))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, kept)
}

/// The ideal of top-degree parts in `vars` of all elements of `I`.
pub fn initial_ideal(ideal: &Ideal, vars: &[usize]) -> Result<Ideal> {
    let ring = ideal.ring();
    let vars = dedup_sorted(vars.to_vec(), ring.arity())?;
    if ideal.is_zero() {
        return Ok(ideal.clone());
    }
    let k = vars.len();
    let order = if k == ring.arity() {
        TermOrder::DegRevLex
    } else {
        TermOrder::Block(k)
    };
    let work = front_loaded(ring, &vars, order)?;
    let gb = ideal.to_ring(&work)?.groebner()?;
    let front: Vec<usize> = (0..k).collect();
    let tops = gb
        .polynomials()
        .into_iter()
        .map(|g| g.top_component_in(&front).to_ring(ring))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, tops)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    Infinite,
}

impl StandardMonomials {
    pub fn count(&self) -> Option<usize> {
        match self {
            StandardMonomials::Finite(v) => Some(v.len()),
            StandardMonomials::Infinite => None,
        }
    }
}

/// Monomials outside the leading-term ideal, ascending.
pub fn standard_monomials(gb: &GroebnerBasis) -> StandardMonomials {
    assert_eq!(gb.rank(), 1, "standard monomials of an ideal basis");
    let n = gb.ring().arity();
    let leads = gb.leading_monomials();
    for v in 0..n {
        if !leads
            .iter()
            .any(|l| l.pure_power() == Some(v) || l.is_one())
        {
            return StandardMonomials::Infinite;
        }
    }
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut stack = vec![Monomial::one(n)];
    let mut out = Vec::new();
    while let Some(m) = stack.pop() {
        if !seen.insert(m.clone()) || leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for v in 0..n {
            stack.push(m.mul(&Monomial::variable(n, v)));
        }
        out.push(m);
    }
    let order = gb.ring().order();
    out.sort_by(|a, b| order.cmp(a, b));
    StandardMonomials::Finite(out)
}

/// Matrix of multiplication by `f` on the quotient, in the basis of
/// standard monomials: column `j` holds the coordinates of `f * b_j`.
pub fn multiplication_matrix(gb: &GroebnerBasis, f: &Polynomial) -> Result<Vec<Vec<Rational>>> {
    let StandardMonomials::Finite(basis) = standard_monomials(gb) else {
        return Err(Error::Precondition(
            "multiplication matrix of a positive-dimensional quotient".into(),
        ));
    };
    let ring = gb.ring();
    let f = f.with_ring_order(ring)?;
    let n = basis.len();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (j, b) in basis.iter().enumerate() {
        let image = gb.normal_form(&f.mul_term(&Rational::one(), b))?;
        for t in image.terms() {
            let i = basis
                .iter()
                .position(|s| s == &t.mono)
                .ok_or_else(|| Error::Internal("normal form left the staircase".into()))?;
            m[i][j] = t.coeff.clone();
        }
    }
    Ok(m)
}

pub fn trace(m: &[Vec<Rational>]) -> Rational {
    m.iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, row)| acc + &row[i])
}

/// Cofactors `a` with `f = sum a_i gens_i`, or `None` if `f` is not in the
/// ideal.
pub fn divide(f: &Polynomial, gens: &[Polynomial]) -> Result<Option<Vec<Polynomial>>> {
    let ring = super::common_ring(gens)?;
    ring.check_same(f.ring(), "divide")?;
    let k = gens.len();
    let mut twists = vec![0];
    twists.extend(gens.iter().map(|g| g.total_degree().unwrap_or(0)));
    let ctx = ModuleCtx {
        order: ring.order(),
        twists,
        schreyer: None,
    };
    let one = Monomial::one(ring.arity());
    let lifts: Vec<Vector> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut v = Vector::from_poly_at(g, 0);
            v.terms.push(VTerm {
                pos: 1 + i,
                mono: one.clone(),
                coeff: Rational::one(),
            });
            v
        })
        .collect();
    let basis = groebner_below(&ctx, lifts, None, 1).basis;
    let reducers: Vec<&Vector> = basis.iter().collect();
    let r = top_reduce_with(&ctx, Vector::from_poly_at(f, 0), &reducers);
    if r.terms.first().is_some_and(|t| t.pos == 0) {
        return Ok(None);
    }
    let tail = r.slice_positions(1..1 + k).scale(&-Rational::one());
    Ok(Some(tail.to_polys(&ring, k)))
}

/// Variables that occur in some generator.
pub fn support(gens: &[Polynomial]) -> BTreeSet<usize> {
    gens.iter().flat_map(|g| g.support()).collect()
}
