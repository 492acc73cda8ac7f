//! Gröbner bases of ideals and of submodules of graded free modules.

mod buchberger;
mod ideal;
mod resolution;
mod syzygy;
mod vector;

use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::Polynomial;
use crate::ring::Ring;

pub use ideal::{
    divide, eliminate, ideal_equal, initial_ideal, multiplication_matrix, standard_monomials,
    support, trace, Ideal, StandardMonomials,
};
pub use resolution::{free_resolution, BettiEntry, Resolution};
pub use syzygy::{
    min_generators, min_generators_echelon, module_min_generators, module_syzygies, syzygy_module,
};

use vector::{ModuleCtx, Vector};

/// An element of the free module `S^m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeModuleElement {
    ring: Ring,
    components: Vec<Polynomial>,
}

impl FreeModuleElement {
    pub fn new(ring: &Ring, components: Vec<Polynomial>) -> Result<Self> {
        for c in &components {
            ring.check_same(c.ring(), "module element")?;
        }
        Ok(FreeModuleElement {
            ring: ring.clone(),
            components,
        })
    }

    pub fn parse(ring: &Ring, components: &[&str]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        FreeModuleElement::new(ring, comps)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// `sum a_i g_i`.
    pub fn contract(&self, gens: &[Polynomial]) -> Result<Polynomial> {
        if gens.len() != self.rank() {
            return Err(Error::Shape(format!(
                "{} coefficients against {} generators",
                self.rank(),
                gens.len()
            )));
        }
        let mut acc = self.ring.zero();
        for (a, g) in self.components.iter().zip(gens) {
            acc = &acc + &a.checked_mul(g)?;
        }
        Ok(acc)
    }

    /// `sum a_i v_i` for module elements `v_i`.
    pub fn combine(&self, vectors: &[FreeModuleElement]) -> Result<FreeModuleElement> {
        if vectors.len() != self.rank() {
            return Err(Error::Shape("coefficient count".into()));
        }
        let width = vectors.first().map_or(0, FreeModuleElement::rank);
        let mut acc = vec![self.ring.zero(); width];
        for (a, v) in self.components.iter().zip(vectors) {
            if v.rank() != width {
                return Err(Error::Shape("ragged module elements".into()));
            }
            for (slot, c) in acc.iter_mut().zip(&v.components) {
                *slot = &*slot + &a.checked_mul(c)?;
            }
        }
        FreeModuleElement::new(&self.ring, acc)
    }

    fn in_ring(&self, ring: &Ring) -> Result<FreeModuleElement> {
        let components = self
            .components
            .iter()
            .map(|c| c.with_ring_order(ring))
            .collect::<Result<Vec<_>>>()?;
        FreeModuleElement::new(ring, components)
    }
}

impl fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A reduced Gröbner basis under position-over-term order. Ideals are the
/// rank one case.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    ctx: ModuleCtx,
    elements: Vec<Vector>,
    truncated: bool,
}

/// Same variables, order replaced if needed.
fn ring_for(ring: &Ring, order: TermOrder) -> Result<Ring> {
    if ring.order() == order {
        Ok(ring.clone())
    } else {
        ring.with_order(order)
    }
}

fn common_ring(polys: &[Polynomial]) -> Result<Ring> {
    let first = polys
        .first()
        .ok_or_else(|| Error::Shape("empty generator list".into()))?;
    for p in polys {
        first.ring().check_same(p.ring(), "generators")?;
    }
    Ok(first.ring().clone())
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: TermOrder) -> Result<GroebnerBasis> {
    let ring = ring_for(&common_ring(gens)?, order)?;
    groebner_in(&ring, gens, None)
}

fn groebner_in(ring: &Ring, gens: &[Polynomial], max_degree: Option<u32>) -> Result<GroebnerBasis> {
    let ctx = ModuleCtx {
        order: ring.order(),
        twists: vec![0],
        schreyer: None,
    };
    let vecs = gens
        .iter()
        .map(|g| Ok(Vector::from_poly_at(&g.with_ring_order(ring)?, 0)))
        .collect::<Result<Vec<_>>>()?;
    let run = buchberger::groebner(&ctx, vecs, max_degree);
    Ok(GroebnerBasis {
        ring: ring.clone(),
        ctx,
        elements: run.basis,
        truncated: run.truncated,
    })
}

/// Reduced Gröbner basis of a submodule of `S^m` whose basis vectors carry
/// the given degree shifts.
pub fn module_groebner(
    gens: &[FreeModuleElement],
    twists: &[u32],
    order: TermOrder,
) -> Result<GroebnerBasis> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Shape("empty generator list".into()))?;
    let ring = ring_for(first.ring(), order)?;
    let ctx = ModuleCtx {
        order,
        twists: twists.to_vec(),
        schreyer: None,
    };
    let vecs = to_vectors(&ring, &ctx, gens)?;
    let run = buchberger::groebner(&ctx, vecs, None);
    Ok(GroebnerBasis {
        ring,
        ctx,
        elements: run.basis,
        truncated: run.truncated,
    })
}

fn to_vectors(ring: &Ring, ctx: &ModuleCtx, gens: &[FreeModuleElement]) -> Result<Vec<Vector>> {
    gens.iter()
        .map(|g| {
            if g.rank() != ctx.rank() {
                return Err(Error::Shape(format!(
                    "element of rank {} in a rank {} module",
                    g.rank(),
                    ctx.rank()
                )));
            }
            Ok(Vector::from_polys(ctx, g.in_ring(ring)?.components()))
        })
        .collect()
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.ctx.order
    }

    pub fn rank(&self) -> usize {
        self.ctx.rank()
    }

    pub fn twists(&self) -> &[u32] {
        &self.ctx.twists
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Set when a degree bound cut the computation short.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// The unit ideal (or the whole module).
    pub fn is_unit(&self) -> bool {
        (0..self.rank()).all(|p| {
            self.elements
                .iter()
                .any(|e| e.lead().pos == p && e.lead().mono.is_one())
        })
    }

    /// Basis elements as polynomials; only meaningful for ideals.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        assert_eq!(self.rank(), 1, "polynomials() on a module basis");
        self.elements
            .iter()
            .map(|v| v.to_polys(&self.ring, 1).remove(0))
            .collect()
    }

    pub fn elements(&self) -> Vec<FreeModuleElement> {
        self.elements
            .iter()
            .map(|v| FreeModuleElement {
                ring: self.ring.clone(),
                components: v.to_polys(&self.ring, self.rank()),
            })
            .collect()
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements
            .iter()
            .map(|v| (v.lead().pos, v.lead().mono.clone()))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|v| v.lead().mono.clone())
            .collect()
    }

    fn refs(&self) -> Vec<&Vector> {
        self.elements.iter().collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.rank() != 1 {
            return Err(Error::Shape(
                "polynomial normal form against a module basis".into(),
            ));
        }
        let f = f.with_ring_order(&self.ring)?;
        let r = buchberger::reduce_with(&self.ctx, Vector::from_poly_at(&f, 0), &self.refs());
        Ok(r.to_polys(&self.ring, 1).remove(0))
    }

    pub fn normal_form_element(&self, v: &FreeModuleElement) -> Result<FreeModuleElement> {
        let vecs = to_vectors(&self.ring, &self.ctx, std::slice::from_ref(v))?;
        let r = buchberger::reduce_with(
            &self.ctx,
            vecs.into_iter().next().expect("one"),
            &self.refs(),
        );
        FreeModuleElement::new(&self.ring, r.to_polys(&self.ring, self.rank()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_element(&self, v: &FreeModuleElement) -> Result<bool> {
        Ok(self.normal_form_element(v)?.is_zero())
    }

    /// Check Buchberger's criterion directly on the stored basis.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        buchberger::satisfies_criterion(&self.ctx, &self.elements)
    }

    pub fn is_reduced(&self) -> bool {
        buchberger::is_reduced(&self.elements)
    }

    /// Elements printed in polynomial text, one per entry.
    pub fn to_text(&self) -> Vec<String> {
        if self.rank() == 1 {
            self.polynomials().iter().map(ToString::to_string).collect()
        } else {
            self.elements().iter().map(ToString::to_string).collect()
        }
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.ctx.twists == other.ctx.twists
            && self.elements == other.elements
    }
}

#[cfg(test)]
mod tests;
