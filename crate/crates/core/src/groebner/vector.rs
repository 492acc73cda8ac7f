//! Sparse vectors in a graded free module, the engine's working type.
//!
//! Terms are sorted descending under position-over-term: a smaller position
//! is larger, ties broken by the monomial order.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::monomial::{Monomial, TermOrder};
use crate::poly::{Polynomial, Term};
use crate::rational::Rational;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct VTerm {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Rational,
}

/// Order and grading shared by all vectors of one computation.
#[derive(Clone, Debug)]
pub(crate) struct ModuleCtx {
    pub order: TermOrder,
    pub twists: Vec<u32>,
    /// Induced order: `m e_i` compares as `m * lead(g_i)` one level down.
    pub schreyer: Option<Arc<Frame>>,
}

/// Leading terms of the previous level's basis and that level's order.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub below: ModuleCtx,
    pub leads: Vec<(usize, Monomial)>,
}

impl ModuleCtx {
    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match &self.schreyer {
            None => b.0.cmp(&a.0).then_with(|| self.order.cmp(a.1, b.1)),
            Some(f) => {
                let (pa, la) = &f.leads[a.0];
                let (pb, lb) = &f.leads[b.0];
                f.below
                    .cmp((*pa, &a.1.mul(la)), (*pb, &b.1.mul(lb)))
                    .then_with(|| b.0.cmp(&a.0))
            }
        }
    }

    pub fn degree(&self, pos: usize, mono: &Monomial) -> u32 {
        mono.degree() + self.twists[pos]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Vector {
    pub terms: Vec<VTerm>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &VTerm {
        &self.terms[0]
    }

    pub fn from_polys(ctx: &ModuleCtx, comps: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (pos, p) in comps.iter().enumerate() {
            terms.extend(p.terms().iter().map(|t| VTerm {
                pos,
                mono: t.mono.clone(),
                coeff: t.coeff.clone(),
            }));
        }
        terms.sort_by(|a, b| ctx.cmp((b.pos, &b.mono), (a.pos, &a.mono)));
        Vector { terms }
    }

    pub fn from_poly_at(p: &Polynomial, pos: usize) -> Self {
        Vector {
            terms: p
                .terms()
                .iter()
                .map(|t| VTerm {
                    pos,
                    mono: t.mono.clone(),
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    /// Components as polynomials of `ring` (whose order must match).
    pub fn to_polys(&self, ring: &Ring, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos].push(Term {
                coeff: t.coeff.clone(),
                mono: t.mono.clone(),
            });
        }
        buckets
            .into_iter()
            .map(|ts| Polynomial::from_sorted(ring, ts))
            .collect()
    }

    pub fn monic(mut self) -> Self {
        if let Some(first) = self.terms.first() {
            if !first.coeff.is_one() {
                let inv = Rational::one() / &first.coeff;
                for t in &mut self.terms {
                    t.coeff *= &inv;
                }
            }
        }
        self
    }

    pub fn is_homogeneous(&self, ctx: &ModuleCtx) -> bool {
        match self.terms.first() {
            None => true,
            Some(l) => {
                let d = ctx.degree(l.pos, &l.mono);
                self.terms.iter().all(|t| ctx.degree(t.pos, &t.mono) == d)
            }
        }
    }

    pub fn degree(&self, ctx: &ModuleCtx) -> Option<u32> {
        self.terms.iter().map(|t| ctx.degree(t.pos, &t.mono)).max()
    }

    /// Keep positions in `range`, shifted down by `range.start`.
    pub fn slice_positions(&self, range: std::ops::Range<usize>) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&t.pos))
                .map(|t| VTerm {
                    pos: t.pos - range.start,
                    mono: t.mono.clone(),
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    pos: t.pos,
                    mono: t.mono.clone(),
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }
}

/// `a + factor * mono * b`, with both inputs sorted. Terms of `b` are
/// shifted by `mono`.
pub(crate) fn axpy(
    ctx: &ModuleCtx,
    a: &[VTerm],
    b: &[VTerm],
    mono: &Monomial,
    factor: &Rational,
) -> Vec<VTerm> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let shifted = |t: &VTerm| VTerm {
        pos: t.pos,
        mono: t.mono.mul(mono),
        coeff: &t.coeff * factor,
    };
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<VTerm> = b.first().map(shifted);
    while i < a.len() {
        let Some(bt) = pending.as_ref() else { break };
        match ctx.cmp((a[i].pos, &a[i].mono), (bt.pos, &bt.mono)) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(pending.take().expect("present"));
                j += 1;
                pending = b.get(j).map(shifted);
            }
            Ordering::Equal => {
                let c = &a[i].coeff + &bt.coeff;
                if !c.is_zero() {
                    out.push(VTerm {
                        pos: a[i].pos,
                        mono: a[i].mono.clone(),
                        coeff: c,
                    });
                }
                i += 1;
                j += 1;
                pending = b.get(j).map(shifted);
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some(bt) = pending {
        out.push(bt);
        out.extend(b[j + 1..].iter().map(shifted));
    }
    out
}
