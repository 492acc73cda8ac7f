//! Buchberger's algorithm over sparse module vectors with the
//! Gebauer–Möller pair criteria.

use num_traits::One;

use super::vector::{axpy, ModuleCtx, VTerm, Vector};
use crate::monomial::Monomial;
use crate::rational::Rational;

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
    degree: u32,
}

/// Outcome of a run; `truncated` is set when pairs above the degree bound
/// were discarded.
pub(crate) struct Run {
    pub basis: Vec<Vector>,
    pub truncated: bool,
}

/// Full reduction of `f` by monic reducers.
pub(crate) fn reduce_with(ctx: &ModuleCtx, f: Vector, reducers: &[&Vector]) -> Vector {
    let mut p = f.terms;
    let mut rem: Vec<VTerm> = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let lt = &p[start];
        let hit = reducers
            .iter()
            .find(|g| {
                let l = g.lead();
                l.pos == lt.pos && l.mono.divides(&lt.mono)
            })
            .copied();
        match hit {
            Some(g) => {
                let q = g.lead().mono.quotient_of(&lt.mono).expect("divides");
                let factor = -lt.coeff.clone();
                p = axpy(ctx, &p[start + 1..], &g.terms[1..], &q, &factor);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Vector { terms: rem }
}

/// Reduce only while the leading term is reducible.
pub(crate) fn top_reduce_with(ctx: &ModuleCtx, f: Vector, reducers: &[&Vector]) -> Vector {
    let mut p = f.terms;
    while let Some(lt) = p.first() {
        let hit = reducers
            .iter()
            .find(|g| {
                let l = g.lead();
                l.pos == lt.pos && l.mono.divides(&lt.mono)
            })
            .copied();
        let Some(g) = hit else { break };
        let q = g.lead().mono.quotient_of(&lt.mono).expect("divides");
        let factor = -lt.coeff.clone();
        p = axpy(ctx, &p[1..], &g.terms[1..], &q, &factor);
    }
    Vector { terms: p }
}

pub(crate) fn s_vector(ctx: &ModuleCtx, f: &Vector, g: &Vector) -> Vector {
    let (lf, lg) = (f.lead(), g.lead());
    debug_assert_eq!(lf.pos, lg.pos);
    let lcm = lf.mono.lcm(&lg.mono);
    let uf = lf.mono.quotient_of(&lcm).expect("lcm");
    let ug = lg.mono.quotient_of(&lcm).expect("lcm");
    // (lcm/lf) f / lc(f) - (lcm/lg) g / lc(g), leading terms cancel
    let a: Vec<VTerm> = axpy(ctx, &[], &f.terms[1..], &uf, &(Rational::one() / &lf.coeff));
    let factor = -(Rational::one() / &lg.coeff);
    Vector {
        terms: axpy(ctx, &a, &g.terms[1..], &ug, &factor),
    }
}

struct State<'a> {
    ctx: &'a ModuleCtx,
    basis: Vec<Vector>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    product_criterion: bool,
}

impl<'a> State<'a> {
    fn update(&mut self, h: Vector) {
        let hi = self.basis.len();
        let hl = h.lead().clone();
        self.basis.push(h);

        let mut cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .copied()
            .filter(|&g| self.basis[g].lead().pos == hl.pos)
            .map(|g| {
                let gl = &self.basis[g].lead().mono;
                (
                    g,
                    gl.lcm(&hl.mono),
                    self.product_criterion && gl.is_coprime(&hl.mono),
                )
            })
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while !cands.is_empty() {
            let p = cands.remove(0);
            let dominated =
                cands.iter().any(|q| q.1.divides(&p.1)) || kept.iter().any(|q| q.1.divides(&p.1));
            if p.2 || !dominated {
                kept.push(p);
            }
        }

        // old pairs made redundant by h
        let basis = &self.basis;
        self.pairs.retain(|pr| {
            if pr.pos != hl.pos || !hl.mono.divides(&pr.lcm) {
                return true;
            }
            let li = basis[pr.i].lead().mono.lcm(&hl.mono);
            let lj = basis[pr.j].lead().mono.lcm(&hl.mono);
            li == pr.lcm || lj == pr.lcm
        });

        for (g, lcm, coprime) in kept {
            if coprime {
                continue;
            }
            let degree = self.ctx.degree(hl.pos, &lcm);
            self.pairs.push(Pair {
                i: g.min(hi),
                j: g.max(hi),
                pos: hl.pos,
                lcm,
                degree,
            });
        }

        let basis = &self.basis;
        self.active.retain(|&g| {
            let gl = basis[g].lead();
            !(gl.pos == hl.pos && hl.mono.divides(&gl.mono))
        });
        self.active.push(hi);
    }

    fn reducers(&self) -> Vec<&Vector> {
        self.active.iter().map(|&k| &self.basis[k]).collect()
    }

    fn take_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then(a.i.cmp(&b.i))
                    .then(a.j.cmp(&b.j))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`, sorted by
/// ascending leading term.
pub(crate) fn groebner(ctx: &ModuleCtx, gens: Vec<Vector>, max_degree: Option<u32>) -> Run {
    groebner_below(ctx, gens, max_degree, usize::MAX)
}

/// Like [`groebner`] but drops every vector whose lead sits at position
/// `cut` or later. With position-over-term orders this computes the part of
/// the basis in the first `cut` positions without the syzygies behind it.
pub(crate) fn groebner_below(
    ctx: &ModuleCtx,
    gens: Vec<Vector>,
    max_degree: Option<u32>,
    cut: usize,
) -> Run {
    let mut state = State {
        ctx,
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        product_criterion: ctx.rank() == 1,
    };
    let mut truncated = false;

    let mut input: Vec<Vector> = gens.into_iter().filter(|v| !v.is_zero()).collect();
    input.sort_by(|a, b| {
        let (la, lb) = (a.lead(), b.lead());
        ctx.degree(la.pos, &la.mono)
            .cmp(&ctx.degree(lb.pos, &lb.mono))
            .then_with(|| ctx.cmp((la.pos, &la.mono), (lb.pos, &lb.mono)))
    });
    for f in input {
        let r = reduce_with(ctx, f, &state.reducers());
        if !r.is_zero() && r.lead().pos < cut {
            state.update(r.monic());
        }
    }

    while let Some(pair) = state.take_pair() {
        if let Some(bound) = max_degree {
            if pair.degree > bound {
                truncated = true;
                continue;
            }
        }
        let s = s_vector(ctx, &state.basis[pair.i], &state.basis[pair.j]);
        let r = reduce_with(ctx, s, &state.reducers());
        if !r.is_zero() && r.lead().pos < cut {
            state.update(r.monic());
        }
    }

    let Run { basis, .. } = interreduce(
        ctx,
        state
            .active
            .iter()
            .map(|&k| state.basis[k].clone())
            .collect(),
    );
    Run { basis, truncated }
}

/// Make a minimal basis reduced, monic and sorted.
pub(crate) fn interreduce(ctx: &ModuleCtx, minimal: Vec<Vector>) -> Run {
    let mut out = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&Vector> = minimal
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != k)
            .map(|(_, v)| v)
            .collect();
        let lead = g.terms[0].clone();
        let tail = reduce_with(
            ctx,
            Vector {
                terms: g.terms[1..].to_vec(),
            },
            &others,
        );
        let mut terms = vec![lead];
        terms.extend(tail.terms);
        out.push(Vector { terms }.monic());
    }
    out.sort_by(|a, b| {
        let (la, lb) = (a.lead(), b.lead());
        ctx.cmp((la.pos, &la.mono), (lb.pos, &lb.mono))
    });
    Run {
        basis: out,
        truncated: false,
    }
}

/// Buchberger's criterion: every S-vector reduces to zero.
pub(crate) fn satisfies_criterion(ctx: &ModuleCtx, basis: &[Vector]) -> bool {
    let refs: Vec<&Vector> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].lead().pos != basis[j].lead().pos {
                continue;
            }
            let s = s_vector(ctx, &basis[i], &basis[j]);
            if !reduce_with(ctx, s, &refs).is_zero() {
                return false;
            }
        }
    }
    true
}

/// No term of one element is divisible by the leading term of another,
/// and every leading coefficient is one.
pub(crate) fn is_reduced(basis: &[Vector]) -> bool {
    let active: Vec<usize> = (0..basis.len()).collect();
    basis.iter().enumerate().all(|(k, g)| {
        g.lead().coeff.is_one()
            && g.terms.iter().all(|t| {
                active.iter().all(|&m| {
                    m == k
                        || !(basis[m].lead().pos == t.pos && basis[m].lead().mono.divides(&t.mono))
                })
            })
    })
}
