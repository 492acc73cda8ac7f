//! Syzygy modules and graded minimal generating sets.

use std::collections::BTreeMap;

use num_traits::One;

use super::buchberger::{groebner, reduce_with};
use super::vector::{axpy, ModuleCtx, VTerm, Vector};
use super::{to_vectors, FreeModuleElement};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::ring::Ring;

/// Degree of a generator for grading the syzygy module: its twisted
/// degree when homogeneous, otherwise its top degree.
fn generator_degree(ctx: &ModuleCtx, v: &Vector) -> u32 {
    v.degree(ctx).unwrap_or(0)
}

/// Reduced Gröbner basis of the syzygies of `gens` via the graph module
/// `(g_i | e_i)`. Returns the syzygies and the twists of their module.
pub(crate) fn syzygy_vectors(ctx: &ModuleCtx, gens: &[Vector]) -> (ModuleCtx, Vec<Vector>) {
    let m = ctx.rank();
    let k = gens.len();
    let arity = gens
        .iter()
        .find_map(|g| g.terms.first().map(|t| t.mono.arity()))
        .unwrap_or(0);
    let mut twists = ctx.twists.clone();
    let gen_twists: Vec<u32> = gens.iter().map(|g| generator_degree(ctx, g)).collect();
    twists.extend(&gen_twists);
    let ext = ModuleCtx {
        order: ctx.order,
        twists,
        schreyer: None,
    };
    let lifts: Vec<Vector> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut terms = g.terms.clone();
            terms.push(VTerm {
                pos: m + i,
                mono: Monomial::one(arity),
                coeff: Rational::one(),
            });
            Vector { terms }
        })
        .collect();
    let syz = groebner(&ext, lifts, None)
        .basis
        .into_iter()
        .filter(|v| v.lead().pos >= m)
        .map(|v| v.slice_positions(m..m + k))
        .collect();
    (
        ModuleCtx {
            order: ctx.order,
            twists: gen_twists,
            schreyer: None,
        },
        syz,
    )
}

/// Generators of the syzygy module of `gens`, read off a Gröbner basis.
pub fn syzygy_module(gens: &[Polynomial]) -> Result<Vec<FreeModuleElement>> {
    let ring = super::common_ring(gens)?;
    let ctx = ModuleCtx {
        order: ring.order(),
        twists: vec![0],
        schreyer: None,
    };
    let vecs: Vec<Vector> = gens.iter().map(|g| Vector::from_poly_at(g, 0)).collect();
    let (sctx, syz) = syzygy_vectors(&ctx, &vecs);
    Ok(syz
        .iter()
        .map(|v| FreeModuleElement {
            ring: ring.clone(),
            components: v.to_polys(&ring, sctx.rank()),
        })
        .collect())
}

/// Syzygies of module elements in a free module with the given twists.
pub fn module_syzygies(
    gens: &[FreeModuleElement],
    twists: &[u32],
) -> Result<(Vec<u32>, Vec<FreeModuleElement>)> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Shape("empty generator list".into()))?;
    let ring = first.ring().clone();
    let ctx = ModuleCtx {
        order: ring.order(),
        twists: twists.to_vec(),
        schreyer: None,
    };
    let vecs = to_vectors(&ring, &ctx, gens)?;
    let (sctx, syz) = syzygy_vectors(&ctx, &vecs);
    let out = syz
        .iter()
        .map(|v| FreeModuleElement {
            ring: ring.clone(),
            components: v.to_polys(&ring, sctx.rank()),
        })
        .collect();
    Ok((sctx.twists, out))
}

/// Subtract rows whose leading term occurs in `v`; rows have distinct
/// leading terms and unit leading coefficients.
fn reduce_linear(ctx: &ModuleCtx, v: Vector, rows: &[Vector]) -> Vector {
    let mut p = v.terms;
    let mut k = 0;
    while k < p.len() {
        let t = &p[k];
        match rows
            .iter()
            .find(|r| r.lead().pos == t.pos && r.lead().mono == t.mono)
        {
            Some(r) => {
                let factor = -t.coeff.clone();
                let one = Monomial::one(t.mono.arity());
                let mut head = p[..k].to_vec();
                let tail = axpy(ctx, &p[k + 1..], &r.terms[1..], &one, &factor);
                head.extend(tail);
                p = head;
            }
            None => k += 1,
        }
    }
    Vector { terms: p }
}

enum Selection {
    Sublist,
    Echelon,
}

fn minimize(ctx: &ModuleCtx, gens: Vec<Vector>, how: Selection) -> Result<Vec<Vector>> {
    let mut by_degree: BTreeMap<u32, Vec<Vector>> = BTreeMap::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if !g.is_homogeneous(ctx) {
            return Err(Error::Unsupported(
                "minimal generators need homogeneous input".into(),
            ));
        }
        by_degree
            .entry(g.degree(ctx).expect("nonzero"))
            .or_default()
            .push(g);
    }
    let mut accepted: Vec<Vector> = Vec::new();
    for (d, cands) in by_degree {
        let gb = if accepted.is_empty() {
            Vec::new()
        } else {
            groebner(ctx, accepted.clone(), Some(d)).basis
        };
        let refs: Vec<&Vector> = gb.iter().collect();
        let mut rows: Vec<Vector> = Vec::new();
        let mut chosen = Vec::new();
        for c in cands {
            let nf = reduce_with(ctx, c.clone(), &refs);
            let r = reduce_linear(ctx, nf, &rows);
            if r.is_zero() {
                continue;
            }
            let r = r.monic();
            // keep rows fully reduced against each other
            let lead = r.lead().clone();
            for row in rows.iter_mut() {
                let hit = row
                    .terms
                    .iter()
                    .find(|t| t.pos == lead.pos && t.mono == lead.mono)
                    .map(|t| t.coeff.clone());
                if let Some(c) = hit {
                    let one = Monomial::one(lead.mono.arity());
                    row.terms = axpy(ctx, &row.terms, &r.terms, &one, &-c);
                }
            }
            rows.push(r);
            chosen.push(c);
        }
        match how {
            Selection::Sublist => accepted.extend(chosen),
            Selection::Echelon => {
                rows.sort_by(|a, b| {
                    let (la, lb) = (a.lead(), b.lead());
                    ctx.cmp((lb.pos, &lb.mono), (la.pos, &la.mono))
                });
                accepted.extend(rows)
            }
        }
    }
    Ok(accepted)
}

fn poly_ctx(ring: &Ring) -> ModuleCtx {
    ModuleCtx {
        order: ring.order(),
        twists: vec![0],
        schreyer: None,
    }
}

/// A minimal generating sublist of homogeneous generators, scanning in
/// degree order and keeping input order within a degree.
pub fn min_generators(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let ring = super::common_ring(gens)?;
    let ctx = poly_ctx(&ring);
    let vecs = gens.iter().map(|g| Vector::from_poly_at(g, 0)).collect();
    Ok(minimize(&ctx, vecs, Selection::Sublist)?
        .iter()
        .map(|v| v.to_polys(&ring, 1).remove(0))
        .collect())
}

/// A canonical minimal generating set: in each degree, the reduced echelon
/// form of the new generators modulo the lower-degree part.
pub fn min_generators_echelon(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let ring = super::common_ring(gens)?;
    let ctx = poly_ctx(&ring);
    let vecs = gens.iter().map(|g| Vector::from_poly_at(g, 0)).collect();
    Ok(minimize(&ctx, vecs, Selection::Echelon)?
        .iter()
        .map(|v| v.to_polys(&ring, 1).remove(0))
        .collect())
}

/// Minimal generating sublist of a graded submodule.
pub fn module_min_generators(
    gens: &[FreeModuleElement],
    twists: &[u32],
) -> Result<Vec<FreeModuleElement>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let ctx = ModuleCtx {
        order: ring.order(),
        twists: twists.to_vec(),
        schreyer: None,
    };
    let vecs = to_vectors(&ring, &ctx, gens)?;
    Ok(minimize(&ctx, vecs, Selection::Sublist)?
        .iter()
        .map(|v| FreeModuleElement {
            ring: ring.clone(),
            components: v.to_polys(&ring, ctx.rank()),
        })
        .collect())
}
