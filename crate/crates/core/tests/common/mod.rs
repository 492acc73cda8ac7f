//! Random inputs and the engine consistency checks shared by the property
//! tests and the acceptance run.

#![allow(dead_code)]

use cover_forge::groebner::{
    buchberger, divide, eliminate, free_resolution, syzygy_module, GroebnerBasis, Ideal,
};
use cover_forge::rational::int;
use cover_forge::{Monomial, Polynomial, Ring, TermOrder};
use proptest::prelude::*;

pub fn xyz() -> Ring {
    Ring::degrevlex(&["x", "y", "z"])
}

/// Monomial exponents of total degree exactly `d` in three variables.
fn exponents_of_degree(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

pub fn poly_from(ring: &Ring, terms: &[(i64, [u32; 3])]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        terms
            .iter()
            .map(|(c, e)| (int(*c), Monomial::new(e.to_vec()))),
    )
}

/// Up to `len` terms of degree at most `max_deg`.
pub fn poly(max_deg: u32, len: usize) -> impl Strategy<Value = Polynomial> {
    let term = (-4i64..=4, 0..=max_deg, 0..=max_deg, 0..=max_deg)
        .prop_map(move |(c, a, b, d)| (c, [a, b, d]))
        .prop_filter("degree bound", move |(_, e)| {
            e.iter().sum::<u32>() <= max_deg
        });
    prop::collection::vec(term, 1..=len).prop_map(|ts| poly_from(&xyz(), &ts))
}

/// A nonzero form of degree `d`.
pub fn form(d: u32) -> impl Strategy<Value = Polynomial> {
    let monos = exponents_of_degree(d);
    let n = monos.len();
    prop::collection::vec(-3i64..=3, n)
        .prop_filter("nonzero form", |cs| cs.iter().any(|&c| c != 0))
        .prop_map(move |cs| {
            let ts: Vec<(i64, [u32; 3])> = cs.iter().copied().zip(monos.iter().copied()).collect();
            poly_from(&xyz(), &ts)
        })
}

/// Sparse forms keep the bases small while still producing syzygies.
pub fn sparse_form() -> impl Strategy<Value = Polynomial> {
    (1u32..=3).prop_flat_map(|d| {
        let monos = exponents_of_degree(d);
        prop::collection::vec((prop::sample::select(monos), -3i64..=3), 1..=3).prop_filter_map(
            "nonzero",
            |ts| {
                let ts: Vec<(i64, [u32; 3])> = ts.into_iter().map(|(e, c)| (c, e)).collect();
                let p = poly_from(&xyz(), &ts);
                (!p.is_zero()).then_some(p)
            },
        )
    })
}

/// Homogeneous or arbitrary small ideals in `x, y, z`.
pub fn ideal_input() -> impl Strategy<Value = (bool, Vec<Polynomial>)> {
    prop_oneof![
        prop::collection::vec(sparse_form(), 1..=4).prop_map(|g| (true, g)),
        prop::collection::vec(poly(2, 4), 1..=3)
            .prop_filter("nonzero", |g| g.iter().all(|p| !p.is_zero()))
            .prop_map(|g| (false, g)),
    ]
}

fn standard_count(gb: &GroebnerBasis, d: u32) -> usize {
    let leads = gb.leading_monomials();
    exponents_of_degree(d)
        .into_iter()
        .filter(|e| {
            let m = Monomial::new(e.to_vec());
            !leads.iter().any(|l| l.divides(&m))
        })
        .count()
}

fn binomial(n: i64, k: i64) -> i64 {
    if n < k || k < 0 {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Every engine invariant on one input; the error names the first failure.
pub fn check_engine(
    homogeneous: bool,
    gens: &[Polynomial],
    multipliers: &[Polynomial],
) -> Result<(), String> {
    let ring = gens[0].ring().clone();
    let err = |what: &str, e: cover_forge::Error| format!("{what}: {e}");
    let gb = buchberger(gens, TermOrder::DegRevLex).map_err(|e| err("buchberger", e))?;
    if !gb.satisfies_buchberger_criterion() {
        return Err("an S-polynomial has nonzero normal form".into());
    }
    if !gb.is_reduced() {
        return Err("basis is not reduced".into());
    }
    for g in gens {
        if !gb.normal_form(g).map_err(|e| err("nf", e))?.is_zero() {
            return Err(format!("generator {g} is not reduced to 0"));
        }
    }

    // uniqueness of the reduced basis
    let mut rev = gens.to_vec();
    rev.reverse();
    let mut rot = gens.to_vec();
    rot.rotate_left(1);
    for other in [rev, rot] {
        let gb2 = buchberger(&other, TermOrder::DegRevLex).map_err(|e| err("buchberger", e))?;
        if gb2.polynomials() != gb.polynomials() {
            return Err("reduced basis depends on generator order".into());
        }
    }

    for s in syzygy_module(gens).map_err(|e| err("syzygies", e))? {
        let c = s.contract(gens).map_err(|e| err("contract", e))?;
        if !c.is_zero() {
            return Err(format!("syzygy {s:?} gives {c}"));
        }
    }

    // a member with certified cofactors
    let basis = gb.polynomials();
    let mut f = ring.zero();
    for (g, m) in gens.iter().zip(multipliers.iter().cycle()) {
        f = &f + &(g * m);
    }
    if !gb.normal_form(&f).map_err(|e| err("nf", e))?.is_zero() {
        return Err(format!("combination {f} is not a member"));
    }
    match divide(&f, &basis).map_err(|e| err("divide", e))? {
        Some(cof) => {
            let back = cof
                .iter()
                .zip(&basis)
                .fold(ring.zero(), |acc, (a, g)| &acc + &(a * g));
            if back != f {
                return Err("cofactors do not reconstruct the member".into());
            }
        }
        None => return Err("no cofactors for a member".into()),
    }

    let ideal = Ideal::new(&ring, gens.to_vec()).map_err(|e| err("ideal", e))?;
    let elim = eliminate(&ideal, &[0]).map_err(|e| err("eliminate", e))?;
    for g in elim.gens() {
        if g.involves(0) {
            return Err(format!("eliminant {g} involves x"));
        }
        if !gb.normal_form(g).map_err(|e| err("nf", e))?.is_zero() {
            return Err(format!("eliminant {g} is not in the ideal"));
        }
    }

    if homogeneous {
        let res = free_resolution(&ideal, 6).map_err(|e| err("resolution", e))?;
        if !res.is_complex().map_err(|e| err("complex", e))? {
            return Err("consecutive maps do not compose to zero".into());
        }
        if !res.is_minimal() {
            return Err("resolution has a constant entry".into());
        }
        if res.is_truncated() {
            return Err("resolution longer than the number of variables".into());
        }
        // exactness: the alternating sum of the free modules has the
        // Hilbert function of S/I
        for d in 0..8u32 {
            let mut alt = 0i64;
            for (i, tw) in res.twists().iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for &t in tw {
                    alt += sign * binomial(d as i64 - t as i64 + 2, 2);
                }
            }
            let hf = standard_count(&gb, d) as i64;
            if alt != hf {
                return Err(format!(
                    "Hilbert function {hf} in degree {d}, resolution gives {alt}"
                ));
            }
        }
    }
    Ok(())
}
