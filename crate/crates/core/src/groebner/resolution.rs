//! Minimal graded free resolutions.

use serde::{Deserialize, Serialize};

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::buchberger::{groebner, s_vector};
use super::vector::{axpy, Frame, ModuleCtx, VTerm, Vector};
use super::Ideal;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::monomial::{Monomial, TermOrder};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub step: usize,
    pub rank: usize,
    pub twists: Vec<u32>,
}

/// `S <- F_1 <- F_2 <- ...` with `maps[i]` the matrix of `F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Ring,
    maps: Vec<PolyMatrix>,
    twists: Vec<Vec<u32>>,
    truncated: bool,
}

impl Resolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// Set when `max_steps` stopped the computation before the syzygies
    /// ran out.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Ranks `1, b_1, b_2, ...`.
    pub fn betti(&self) -> Vec<usize> {
        self.twists.iter().map(Vec::len).collect()
    }

    pub fn twists(&self) -> &[Vec<u32>] {
        &self.twists
    }

    pub fn table(&self) -> Vec<BettiEntry> {
        self.twists
            .iter()
            .enumerate()
            .map(|(step, t)| {
                let mut twists = t.clone();
                twists.sort_unstable();
                BettiEntry {
                    step,
                    rank: t.len(),
                    twists,
                }
            })
            .collect()
    }

    /// Consecutive maps compose to zero.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No map has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| {
            m.entries()
                .iter()
                .all(|e| e.is_zero() || !e.terms().iter().any(|t| t.mono.is_one()))
        })
    }
}

/// Minimal graded free resolution of a homogeneous ideal, computing at most
/// `max_steps` maps.
///
/// Schreyer's construction gives a free resolution whose bases are Gröbner
/// bases for the induced orders, so each level only needs the S-pair
/// reductions of the one below. Constant entries are then pivoted away.
pub fn free_resolution(ideal: &Ideal, max_steps: usize) -> Result<Resolution> {
    let ring = ideal.ring().clone();
    if !ideal.is_homogeneous() {
        return Err(Error::Unsupported(
            "free resolutions need a homogeneous ideal".into(),
        ));
    }
    let mut ctx = ModuleCtx {
        order: ring.order(),
        twists: vec![0],
        schreyer: None,
    };
    let gens: Vec<Vector> = ideal
        .gens()
        .iter()
        .map(|g| Vector::from_poly_at(g, 0))
        .collect();
    let mut basis = groebner(&ctx, gens, None).basis;
    schreyer_sort(&mut basis);
    let mut maps: Vec<Vec<Vec<Polynomial>>> = Vec::new();
    let mut twists = vec![vec![0]];
    let mut truncated = false;
    while !basis.is_empty() {
        let rank = ctx.rank();
        let cols: Vec<Vec<Polynomial>> = basis.iter().map(|v| v.to_polys(&ring, rank)).collect();
        maps.push(
            (0..rank)
                .map(|i| cols.iter().map(|c| c[i].clone()).collect())
                .collect(),
        );
        twists.push(
            basis
                .iter()
                .map(|v| v.degree(&ctx).expect("nonzero generator"))
                .collect(),
        );
        let (next_ctx, mut next) = next_level(&ctx, &basis)?;
        schreyer_sort(&mut next);
        if maps.len() == max_steps {
            truncated = !next.is_empty();
            break;
        }
        ctx = next_ctx;
        basis = next;
    }
    prune(&mut maps, &mut twists)?;
    while maps
        .last()
        .is_some_and(|m| m.first().is_none_or(|r| r.is_empty()))
    {
        maps.pop();
        twists.pop();
    }
    let maps = maps
        .into_iter()
        .map(|m| PolyMatrix::from_rows(&ring, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(Resolution {
        ring,
        maps,
        twists,
        truncated,
    })
}

/// Within each position, lead monomials in descending lex order: the next
/// level's leading terms then avoid one more variable, which bounds the
/// length by the number of variables.
fn schreyer_sort(basis: &mut [Vector]) {
    basis.sort_by(|a, b| {
        let (la, lb) = (a.lead(), b.lead());
        la.pos
            .cmp(&lb.pos)
            .then_with(|| TermOrder::Lex.cmp(&lb.mono, &la.mono))
    });
}

/// Syzygies of a Gröbner basis from its S-pairs, with the Schreyer order
/// they are a Gröbner basis for.
fn next_level(ctx: &ModuleCtx, basis: &[Vector]) -> Result<(ModuleCtx, Vec<Vector>)> {
    let frame = ModuleCtx {
        order: ctx.order,
        twists: basis
            .iter()
            .map(|g| g.degree(ctx).expect("nonzero generator"))
            .collect(),
        schreyer: Some(Arc::new(Frame {
            below: ctx.clone(),
            leads: basis
                .iter()
                .map(|g| (g.lead().pos, g.lead().mono.clone()))
                .collect(),
        })),
    };
    let n = basis.len();
    let mut out = Vec::new();
    for i in 0..n {
        let li = basis[i].lead();
        let cands: Vec<(usize, Monomial)> = (i + 1..n)
            .filter(|&j| basis[j].lead().pos == li.pos)
            .map(|j| {
                let lcm = li.mono.lcm(&basis[j].lead().mono);
                (j, li.mono.quotient_of(&lcm).expect("lcm"))
            })
            .collect();
        // the leads m e_i of the kept pairs generate those of all pairs
        for (a, (j, m)) in cands.iter().enumerate() {
            let redundant = cands
                .iter()
                .enumerate()
                .any(|(b, (_, m2))| b != a && m2.divides(m) && (m2 != m || b < a));
            if !redundant {
                out.push(pair_syzygy(ctx, &frame, basis, i, *j, m)?);
            }
        }
    }
    Ok((frame, out))
}

/// `m_ij e_i - m_ji e_j - sum q_k e_k` from a standard representation of
/// the S-vector of monic `g_i, g_j`.
fn pair_syzygy(
    ctx: &ModuleCtx,
    frame: &ModuleCtx,
    basis: &[Vector],
    i: usize,
    j: usize,
    mij: &Monomial,
) -> Result<Vector> {
    let lcm = mij.mul(&basis[i].lead().mono);
    let mji = basis[j].lead().mono.quotient_of(&lcm).expect("lcm");
    let mut coeffs: HashMap<(usize, Monomial), Rational> = HashMap::new();
    coeffs.insert((i, mij.clone()), Rational::one());
    coeffs.insert((j, mji), -Rational::one());
    let mut s = s_vector(ctx, &basis[i], &basis[j]).terms;
    while let Some(lt) = s.first() {
        let k = basis
            .iter()
            .position(|g| g.lead().pos == lt.pos && g.lead().mono.divides(&lt.mono))
            .ok_or_else(|| Error::Internal("resolution level is not a Gröbner basis".into()))?;
        let q = basis[k].lead().mono.quotient_of(&lt.mono).expect("divides");
        let factor = -lt.coeff.clone();
        s = axpy(ctx, &s[1..], &basis[k].terms[1..], &q, &factor);
        *coeffs.entry((k, q)).or_insert_with(Rational::zero) += factor;
    }
    let mut terms: Vec<VTerm> = coeffs
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((pos, mono), coeff)| VTerm { pos, mono, coeff })
        .collect();
    terms.sort_by(|a, b| frame.cmp((b.pos, &b.mono), (a.pos, &a.mono)));
    Ok(Vector { terms }.monic())
}

/// Pivot on nonzero constant entries of the maps after the first, scanning
/// each matrix in row-major order, until none remain.
fn prune(maps: &mut [Vec<Vec<Polynomial>>], twists: &mut [Vec<u32>]) -> Result<()> {
    for k in 1..maps.len() {
        loop {
            let m = &maps[k];
            let hit = m.iter().enumerate().find_map(|(r, row)| {
                row.iter()
                    .position(|e| !e.is_zero() && e.is_constant())
                    .map(|c| (r, c))
            });
            let Some((r, c)) = hit else { break };
            let u = m[r][c].as_constant().expect("constant");
            let pivot_row: Vec<Polynomial> = m[r]
                .iter()
                .map(|e| e.scale(&(Rational::one() / &u)))
                .collect();
            let mut next: Vec<Vec<Polynomial>> = Vec::with_capacity(m.len() - 1);
            for (i, row) in m.iter().enumerate() {
                if i == r {
                    continue;
                }
                let f = &row[c];
                next.push(
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(j, e)| {
                            if f.is_zero() {
                                e.clone()
                            } else {
                                e - &(f * &pivot_row[j])
                            }
                        })
                        .collect(),
                );
            }
            maps[k] = next;
            for row in maps[k - 1].iter_mut() {
                row.remove(r);
            }
            if k + 1 < maps.len() {
                maps[k + 1].remove(c);
            }
            twists[k].remove(r);
            twists[k + 1].remove(c);
        }
    }
    Ok(())
}
