//! Three points in the plane cut out by the triple-cover family, the
//! discriminant `Delta_tc`, and the projected binary cubic.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cyclo::CycloContext;
use super::Certificate;
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, divide, eliminate, multiplication_matrix, standard_monomials, trace, Ideal,
    StandardMonomials,
};
use crate::linalg::determinant;
use crate::monomial::{Monomial, TermOrder};
use crate::poly::Polynomial;
use crate::rational::{format_rational, int, rat, Rational};
use crate::ring::Ring;

pub const THREE_POINT_SYSTEM: [&str; 3] = [
    "z^2 - e1*z - e0*w + 2*(e0*e2 - e1^2)",
    "z*w + e2*z + e1*w - (e0*e3 - e1*e2)",
    "w^2 - e3*z - e2*w + 2*(e1*e3 - e2^2)",
];

const DELTA_TC: &str = "e0^2*e3^2 + 4*e0*e2^3 - 3*e1^2*e2^2 + 4*e1^3*e3 - 6*e0*e1*e2*e3";

/// Coefficients of `z^3, z^2 w, z w^2, w^3` in the projected cubic.
const CUBIC: [&str; 4] = [
    "e1*e2*e3 - 1/3*e0*e3^2 - 2/3*e2^3",
    "2*e1^2*e3 - e1*e2^2 - e0*e2*e3",
    "e1^2*e2 + e0*e1*e3 - 2*e0*e2^2",
    "2/3*e1^3 - e0*e1*e2 + 1/3*e0^2*e3",
];

pub(crate) fn three_point_ring() -> Ring {
    Ring::degrevlex(&["z", "w", "e0", "e1", "e2", "e3"])
}

fn plane() -> Ring {
    Ring::degrevlex(&["z", "w"])
}

/// `Delta_tc` of four polynomials in a common ring.
pub fn delta_tc_poly(e: &[Polynomial; 4]) -> Polynomial {
    let [e0, e1, e2, e3] = e;
    let c = |k: i64| int(k);
    (&(e0 * e0) * &(e3 * e3)) + (e0 * &e2.pow(3)).scale(&c(4))
        - (&(e1 * e1) * &(e2 * e2)).scale(&c(3))
        + (&e1.pow(3) * e3).scale(&c(4))
        - (&(e0 * e1) * &(e2 * e3)).scale(&c(6))
}

pub fn delta_tc(e: &[Rational; 4]) -> Rational {
    let [e0, e1, e2, e3] = e;
    e0 * e0 * e3 * e3 + int(4) * e0 * e2 * e2 * e2 - int(3) * e1 * e1 * e2 * e2
        + int(4) * e1 * e1 * e1 * e3
        - int(6) * e0 * e1 * e2 * e3
}

/// The three quadrics in `Q[z, w]` at a rational `e`.
pub fn three_point_system(e: &[Rational; 4]) -> Result<(Ring, Vec<Polynomial>)> {
    let big = three_point_ring();
    let target = plane();
    let values: Vec<(usize, Rational)> = (0..4).map(|k| (2 + k, e[k].clone())).collect();
    let gens = THREE_POINT_SYSTEM
        .iter()
        .map(|t| big.parse(t)?.specialize(&values).to_ring(&target))
        .collect::<Result<Vec<_>>>()?;
    Ok((target, gens))
}

/// Multiply each term by `h^(target - degree in vars)`.
fn homogenize_in(p: &Polynomial, vars: &[usize], h: usize, target: u32) -> Polynomial {
    let terms = p.terms().iter().map(|t| {
        let mut exps = t.mono.exponents().to_vec();
        exps[h] += target - t.mono.degree_in(vars);
        (t.coeff.clone(), Monomial::new(exps))
    });
    Polynomial::from_terms(p.ring(), terms.collect::<Vec<_>>())
}

/// Homogenize with `t` and eliminate it: the binary cubic through the
/// projections of the points from `(0 : 0 : 1)`.
fn eliminate_projection(
    ring: &Ring,
    gens: &[Polynomial],
    zw: [usize; 2],
    t: usize,
) -> Result<Option<Polynomial>> {
    let hs: Vec<Polynomial> = gens.iter().map(|g| homogenize_in(g, &zw, t, 2)).collect();
    let elim = eliminate(&Ideal::new(ring, hs)?, &[t])?;
    Ok(match elim.gens() {
        [g] => Some(g.clone()),
        _ => None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectedCubic {
    /// Eliminated generator, in `(t, z, w, e0..e3)`.
    pub cubic: String,
    /// `cubic = scalar * displayed`.
    pub scalar: Option<String>,
    /// `disc(displayed) = disc_scalar * Delta_tc^disc_exponent`.
    pub disc_scalar: Option<String>,
    pub disc_exponent: u32,
}

/// Exact elimination of the homogenizing variable with symbolic `e`.
pub fn projected_cubic() -> Result<ProjectedCubic> {
    let ring = Ring::degrevlex(&["t", "z", "w", "e0", "e1", "e2", "e3"]);
    let gens = THREE_POINT_SYSTEM
        .iter()
        .map(|s| ring.parse(s))
        .collect::<Result<Vec<_>>>()?;
    let g = eliminate_projection(&ring, &gens, [1, 2], 0)?
        .ok_or_else(|| Error::Regression("elimination of t is not principal".into()))?;
    let coeffs = CUBIC
        .iter()
        .map(|s| ring.parse(s))
        .collect::<Result<Vec<_>>>()?;
    let (z, w) = (ring.gen(1), ring.gen(2));
    let displayed = &(&(&coeffs[0] * &z.pow(3)) + &(&coeffs[1] * &(&z.pow(2) * &w)))
        + &(&(&coeffs[2] * &(&z * &w.pow(2))) + &(&coeffs[3] * &w.pow(3)));
    let scalar = displayed.scalar_ratio(&g).map(|s| format_rational(&s));

    let [a, b, c, d] = [&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3]];
    let k = |n: i64| int(n);
    let disc = (&(b * b) * &(c * c))
        - (a * &c.pow(3)).scale(&k(4))
        - (&b.pow(3) * d).scale(&k(4))
        - (&(a * a) * &(d * d)).scale(&k(27))
        + (&(a * b) * &(c * d)).scale(&k(18));
    let delta = ring.parse(DELTA_TC)?;
    let (mut rest, mut exponent) = (disc, 0);
    while !rest.is_constant() {
        match divide(&rest, std::slice::from_ref(&delta))? {
            Some(q) => {
                rest = q[0].clone();
                exponent += 1;
            }
            None => break,
        }
    }
    let disc_scalar = rest.as_constant().map(|s| format_rational(&s));
    Ok(ProjectedCubic {
        cubic: g.to_string(),
        scalar,
        disc_scalar,
        disc_exponent: exponent,
    })
}

/// True when the binary form has no repeated linear factor.
fn binary_squarefree(f: &Polynomial, z: usize, w: usize) -> Result<bool> {
    let x = Ring::degrevlex(&["x"]);
    let degree = f.degree_in(&[z, w]).unwrap_or(0);
    let terms = f
        .terms()
        .iter()
        .map(|t| (t.coeff.clone(), Monomial::new(vec![t.mono.exponent(z)])));
    let u = Polynomial::from_terms(&x, terms.collect::<Vec<_>>());
    let du = u.total_degree().unwrap_or(0);
    // w divides f to the power degree - du
    if f.is_zero() || degree - du > 1 {
        return Ok(false);
    }
    let gb = buchberger(&[u.clone(), u.derivative(0)], TermOrder::Lex)?;
    Ok(gb.is_unit())
}

#[derive(Clone, Debug, Serialize)]
pub struct ThreePointReport {
    pub e: Vec<String>,
    pub delta: String,
    pub length: Option<usize>,
    pub trace_z: String,
    pub trace_w: String,
    /// Projected cubic has no repeated factor.
    pub distinct: bool,
    /// Trace form is nondegenerate, an independent reducedness test.
    pub reduced: bool,
}

fn analyse(e: &[Rational; 4]) -> Result<ThreePointReport> {
    let (ring, gens) = three_point_system(e)?;
    let gb = Ideal::new(&ring, gens.clone())?.groebner()?;
    let length = standard_monomials(&gb).count();
    let mz = multiplication_matrix(&gb, &ring.gen(0))?;
    let mw = multiplication_matrix(&gb, &ring.gen(1))?;

    let t_ring = Ring::degrevlex(&["t", "z", "w"]);
    let lifted = gens
        .iter()
        .map(|g| g.to_ring(&t_ring))
        .collect::<Result<Vec<_>>>()?;
    // a point at the projection center leaves no principal image
    let distinct = match eliminate_projection(&t_ring, &lifted, [1, 2], 0)? {
        Some(cubic) => cubic.degree_in(&[1, 2]) == Some(3) && binary_squarefree(&cubic, 1, 2)?,
        None => false,
    };

    let StandardMonomials::Finite(basis) = standard_monomials(&gb) else {
        return Err(Error::Precondition("positive-dimensional fiber".into()));
    };
    let n = basis.len();
    let mut form = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = Polynomial::monomial(&ring, Rational::one(), basis[i].mul(&basis[j]));
            form[i][j] = trace(&multiplication_matrix(&gb, &p)?);
        }
    }
    let reduced = !determinant(form).is_zero();
    Ok(ThreePointReport {
        e: e.iter().map(format_rational).collect(),
        delta: format_rational(&delta_tc(e)),
        length,
        trace_z: format_rational(&trace(&mz)),
        trace_w: format_rational(&trace(&mw)),
        distinct,
        reduced,
    })
}

/// Fiber at `e` away from the discriminant.
pub fn three_points_check(e: &[Rational; 4]) -> Result<ThreePointReport> {
    if delta_tc(e).is_zero() {
        return Err(Error::Precondition(format!(
            "Delta_tc vanishes at ({})",
            e.iter().map(format_rational).collect::<Vec<_>>().join(", ")
        )));
    }
    analyse(e)
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

/// Mostly generic draws, plus points on the discriminant: with `e0 = 0`,
/// `Delta_tc = e1^2 (4 e1 e3 - 3 e2^2)`.
pub(crate) fn sample_e(rng: &mut ChaCha8Rng, k: usize) -> [Rational; 4] {
    match k % 5 {
        3 => {
            let e1 = loop {
                let v = small(rng);
                if !v.is_zero() {
                    break v;
                }
            };
            let e2 = small(rng);
            let e3 = int(3) * &e2 * &e2 / (int(4) * &e1);
            [Rational::zero(), e1, e2, e3]
        }
        4 => [
            small(rng),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ],
        _ => [small(rng), small(rng), small(rng), small(rng)],
    }
}

/// Points over `Q(eps)` at `e = (1, 0, 0, 1)`.
fn cyclotomic_points(cert: &mut Certificate) -> Result<()> {
    let k = CycloContext::new(&["z", "w"])?;
    let one = k.ring().one();
    let eps = k.eps();
    let eps2 = k.reduce(&eps.pow(2))?;
    let big = three_point_ring();
    let e = [int(1), int(0), int(0), int(1)];
    let values: Vec<(usize, Rational)> = (0..4).map(|i| (2 + i, e[i].clone())).collect();
    let gens = THREE_POINT_SYSTEM
        .iter()
        .map(|t| big.parse(t)?.specialize(&values).to_ring(k.ring()))
        .collect::<Result<Vec<_>>>()?;
    let points = [
        (one.clone(), one.clone()),
        (eps.clone(), eps2.clone()),
        (eps2.clone(), eps.clone()),
    ];
    let mut bad = Vec::new();
    for (p, (zv, wv)) in points.iter().enumerate() {
        for g in &gens {
            let mut s = crate::subst::Substitution::within(k.ring());
            s.set(0, zv.clone())?.set(1, wv.clone())?;
            if !k.is_zero(&s.apply(g)?)? {
                bad.push(format!("q{} does not satisfy {g}", p + 1));
            }
        }
    }
    let mut distinct = true;
    for i in 0..3 {
        for j in i + 1..3 {
            let dz = &points[i].0 - &points[j].0;
            let dw = &points[i].1 - &points[j].1;
            if k.is_zero(&dz)? && k.is_zero(&dw)? {
                distinct = false;
            }
        }
    }
    let plane_gb = k.groebner(&gens)?;
    let length = standard_monomials(&plane_gb).count();
    cert.check(
        "cyclotomic-points",
        bad.is_empty() && distinct && length == Some(6),
        if bad.is_empty() {
            // dimension over Q is twice the length over Q(eps)
            format!("(1,1), (eps,eps^2), (eps^2,eps) are distinct zeros; the fiber has Q-dimension {length:?} = 2 * 3, so there are no others")
        } else {
            bad.join("; ")
        },
    );
    let sum = &(&one + &eps) + &eps2;
    let bary_z = k.reduce(&sum)?;
    cert.check(
        "barycenter-cyclotomic",
        bary_z.is_zero() && k.is_zero(&(&eps.pow(3) - &one))?,
        format!("1 + eps + eps^2 = {bary_z}, eps^3 = 1"),
    );
    Ok(())
}

/// Discriminant, projected cubic, ramification criterion and traces on
/// `samples` seeded fibers.
pub(crate) fn certificate(samples: usize, seed: u64) -> Result<Certificate> {
    let mut cert = Certificate::new("three-points");
    let ring = three_point_ring();
    let e: [Polynomial; 4] = [ring.gen(2), ring.gen(3), ring.gen(4), ring.gen(5)];
    let computed = delta_tc_poly(&e);
    let shown = ring.parse(DELTA_TC)?;
    cert.compare_artifact("Delta_tc", &[computed.to_string()], &[shown.to_string()]);
    let at = delta_tc(&[int(1), int(0), int(0), int(1)]);
    cert.check(
        "delta-tc",
        computed == shown && at.is_one() && delta_tc(&[int(0), int(0), int(0), int(0)]).is_zero(),
        "symbolic form equal; value 1 at (1,0,0,1), 0 at the origin",
    );

    if let Some(pc) = cert.attempt("projected-cubic", projected_cubic()) {
        cert.artifact(
            "projected cubic",
            serde_json::to_value(&pc).expect("serializes"),
        );
        cert.check(
            "projected-cubic",
            pc.scalar.is_some(),
            match &pc.scalar {
                Some(s) => format!("eliminated generator = {s} * displayed cubic"),
                None => format!(
                    "eliminated generator {} is not a multiple of the displayed cubic",
                    pc.cubic
                ),
            },
        );
        let ok = pc.disc_scalar.is_some() && pc.disc_exponent > 0;
        cert.check(
            "cubic-discriminant",
            ok,
            match &pc.disc_scalar {
                Some(s) => format!("disc = {s} * Delta_tc^{}", pc.disc_exponent),
                None => "disc is not a constant times a power of Delta_tc".into(),
            },
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    let mut trace_failures = Vec::new();
    let mut on_disc = 0;
    for k in 0..samples {
        let e = sample_e(&mut rng, k);
        let r = analyse(&e)?;
        let generic = !delta_tc(&e).is_zero();
        if !generic {
            on_disc += 1;
        }
        if r.distinct != generic || r.reduced != generic {
            counterexamples.push(format!(
                "{:?}: delta {} distinct {} reduced {}",
                r.e, r.delta, r.distinct, r.reduced
            ));
        }
        if r.trace_z != "0" || r.trace_w != "0" || r.length != Some(3) {
            trace_failures.push(format!(
                "{:?}: length {:?} tr z {} tr w {}",
                r.e, r.length, r.trace_z, r.trace_w
            ));
        }
    }
    cert.check(
        "ramification",
        counterexamples.is_empty(),
        if counterexamples.is_empty() {
            format!("{samples} samples ({on_disc} on Delta_tc = 0): distinct iff Delta_tc != 0, 0 counterexamples")
        } else {
            counterexamples.join("; ")
        },
    );
    cert.check(
        "traces",
        trace_failures.is_empty(),
        if trace_failures.is_empty() {
            format!("trace of z and w is 0 on all {samples} length-3 fibers")
        } else {
            trace_failures.join("; ")
        },
    );
    cyclotomic_points(&mut cert)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_values() {
        assert!(delta_tc(&[int(0), int(0), int(0), int(0)]).is_zero());
        assert!(delta_tc(&[int(1), int(0), int(0), int(1)]).is_one());
    }

    #[test]
    fn degenerate_fiber_is_rejected() {
        assert!(matches!(
            three_points_check(&[int(0), int(0), int(0), int(1)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn fermat_fiber() {
        let r = three_points_check(&[int(1), int(0), int(0), int(1)]).unwrap();
        assert_eq!(r.length, Some(3));
        assert!(r.distinct && r.reduced);
        assert_eq!((r.trace_z.as_str(), r.trace_w.as_str()), ("0", "0"));
    }

    #[test]
    fn cubic_and_discriminant() {
        let pc = projected_cubic().unwrap();
        assert!(pc.scalar.is_some(), "{}", pc.cubic);
        assert_eq!(pc.disc_exponent, 3);
        assert_eq!(pc.disc_scalar.as_deref(), Some("-1/3"));
    }
}
