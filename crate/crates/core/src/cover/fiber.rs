//! Checking a single fiber of the deformation.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{CoverProblem, CoverRelations, HOMOGENIZER};
use crate::error::{Error, Result};
use crate::groebner::{
    free_resolution, ideal_equal, initial_ideal, standard_monomials, BettiEntry, Ideal,
};
use crate::poly::Polynomial;
use crate::rational::{format_rational, Rational};
use crate::ring::Ring;

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub generators: Vec<String>,
    pub quotient_dimension: Option<usize>,
    pub reference_dimension: Option<usize>,
    pub betti: Vec<BettiEntry>,
    pub reference_betti: Vec<BettiEntry>,
    pub initial_ideal_matches: bool,
}

impl FiberReport {
    pub fn betti_ranks(&self) -> Vec<usize> {
        self.betti.iter().map(|b| b.rank).collect()
    }

    /// Same length, same resolution format, same initial ideal.
    pub fn is_flat(&self) -> bool {
        self.quotient_dimension.is_some()
            && self.quotient_dimension == self.reference_dimension
            && self.betti == self.reference_betti
            && self.initial_ideal_matches
    }
}

/// The deformed generators `f_i = q_i - sum c_ij z_j - h_i(c)` at a point.
pub fn deformed_generators(
    problem: &CoverProblem,
    rel: &CoverRelations,
    point: &BTreeMap<String, Rational>,
) -> Result<Vec<Polynomial>> {
    let c_ring = rel.c_ring();
    let values: Vec<Rational> = c_ring
        .names()
        .iter()
        .map(|n| {
            point
                .get(n)
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("no value for {n}")))
        })
        .collect::<Result<_>>()?;
    for g in rel
        .linear_relations()
        .iter()
        .chain(rel.quadratic_relations())
    {
        if !g.evaluate(&values)?.is_zero() {
            return Err(Error::Precondition(format!("the point violates {g}")));
        }
    }
    let ring = problem.ring();
    let lay = rel.layout();
    let mut out = Vec::new();
    for (i, q) in problem.q().iter().enumerate() {
        let mut f = q.clone();
        for j in 0..ring.arity() {
            let c = &point[&lay.c[i][j]];
            f = f.add_scaled(&ring.gen(j), &-c.clone());
        }
        let d = rel.d_exprs()[i].evaluate(&values)?;
        f = &f - &Polynomial::constant(ring, d);
        out.push(f);
    }
    Ok(out)
}

fn homogenized(ring: &Ring, gens: &[Polynomial]) -> Result<(Ring, Vec<Polynomial>)> {
    let mut names = vec![HOMOGENIZER.to_string()];
    names.extend(ring.names().iter().cloned());
    let big = Ring::new(&names, ring.order())?;
    let hs = gens
        .iter()
        .map(|g| g.to_ring(&big)?.homogenize(0, 2))
        .collect::<Result<Vec<_>>>()?;
    Ok((big, hs))
}

fn betti_of(ring: &Ring, gens: &[Polynomial]) -> Result<Vec<BettiEntry>> {
    let steps = ring.arity() + 1;
    let res = free_resolution(&Ideal::new(ring, gens.to_vec())?, steps)?;
    Ok(res.table())
}

use num_traits::Zero;

/// Build the fiber at `point` and compare it with the undeformed cone.
pub fn verify_fiber(
    problem: &CoverProblem,
    rel: &CoverRelations,
    point: &BTreeMap<String, Rational>,
) -> Result<FiberReport> {
    let point = if point.len() < rel.c_ring().arity() {
        rel.complete_point(point)?
    } else {
        point.clone()
    };
    let ring = problem.ring();
    let f = deformed_generators(problem, rel, &point)?;
    let ideal = Ideal::new(ring, f.clone())?;
    let gb = ideal.groebner()?;
    let quotient_dimension = standard_monomials(&gb).count();
    let cone = Ideal::new(ring, problem.q().to_vec())?;
    let reference_dimension = standard_monomials(&cone.groebner()?).count();

    let (big, hs) = homogenized(ring, &f)?;
    let betti = betti_of(&big, &hs)?;
    let reference_betti = betti_of(ring, problem.q())?;

    let all: Vec<usize> = (0..ring.arity()).collect();
    let init = initial_ideal(&ideal, &all)?;
    let initial_ideal_matches = ideal_equal(&init, &cone)?;

    Ok(FiberReport {
        generators: f.iter().map(ToString::to_string).collect(),
        quotient_dimension,
        reference_dimension,
        betti,
        reference_betti,
        initial_ideal_matches,
    })
}

/// Text form of a parameter point.
pub fn format_point(point: &BTreeMap<String, Rational>) -> String {
    point
        .iter()
        .map(|(k, v)| format!("{k}={}", format_rational(v)))
        .collect::<Vec<_>>()
        .join(", ")
}
