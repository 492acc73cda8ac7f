//! The Gorenstein degree-6 cover with fiber `(z1, z2, w1, w2)`.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::compare::{
    derive_renaming, describe_renaming, entry_mismatches, matrix_rows, parse_all, scalar_match,
    texts,
};
use super::points::{delta_tc, sample_e};
use super::triple::{parse_matrix, triple_cover_instance, witness};
use super::{CatalogInstance, Certificate, Verified};
use crate::cover::{cover_relations, verify_fiber, CoverProblem, CoverRelations};
use crate::error::{Error, Result};
use crate::groebner::{ideal_equal, min_generators, Ideal};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::rational::{format_rational, Rational};
use crate::ring::Ring;
use crate::subst::Substitution;

pub const DEG6_FIBER: [&str; 4] = ["z1", "z2", "w1", "w2"];

pub const DEG6_Q: [&str; 9] = [
    "z1^2",
    "z1*z2",
    "z2^2",
    "z1*w1",
    "1/2*(z1*w2 + z2*w1)",
    "z2*w2",
    "w1^2",
    "w1*w2",
    "w2^2",
];

/// Traces of the four fiber coordinates.
pub const DEG6_TRACE_FREE: [&str; 4] = ["c32 + c43", "c42 + c53", "c72 + c83", "c62 + c73"];

/// `C^t` after the trace-free normalization, in engine names.
const C_NORMALIZED: [[&str; 4]; 9] = [
    ["c43", "-c33", "-c13", "c03"],
    ["c53", "-c43", "-c23", "c13"],
    ["-c52", "-c53", "c22", "c23"],
    ["c73", "-c63", "-c43", "c33"],
    ["c83", "-c73", "-c53", "c43"],
    ["-c82", "-c83", "c52", "c53"],
    ["-c71", "c61", "-c73", "c63"],
    ["-c81", "c71", "-c83", "c73"],
    ["c80", "c81", "c82", "c83"],
];

/// The same matrix relabelled to show the block structure.
const C_RELABELLED: [[&str; 4]; 9] = [
    ["c11", "c10", "c01", "c00"],
    ["-c12", "-c11", "-c02", "-c01"],
    ["c13", "c12", "c03", "c02"],
    ["-c21", "-c20", "-c11", "-c10"],
    ["c22", "c21", "c12", "c11"],
    ["-c23", "-c22", "-c13", "-c12"],
    ["c31", "c30", "c21", "c20"],
    ["-c32", "-c31", "-c22", "-c21"],
    ["c33", "c32", "c23", "c22"],
];

const D: [&str; 9] = [
    "-2*c11^2 + 2*c10*c12 + 2*c01*c21 - c02*c20 - c00*c22",
    "-c10*c13 + c11*c12 - 2*c02*c21 + c03*c20 + c01*c22",
    "2*c11*c13 - 2*c12^2 - c03*c21 - c01*c23 + 2*c02*c22",
    "-c01*c31 + c00*c32 + c11*c21 + c12*c20 - 2*c10*c22",
    "1/2*(-c00*c33 + c01*c32 - 5*c12*c21 + c13*c20 + 4*c11*c22)",
    "c01*c33 - c02*c32 + c13*c21 - 2*c11*c23 + c12*c22",
    "2*c11*c31 - c12*c30 - c10*c32 - 2*c21^2 + 2*c20*c22",
    "c12*c31 + c10*c33 - 2*c11*c32 - c20*c23 + c21*c22",
    "-c13*c31 - c11*c33 + 2*c12*c32 + 2*c21*c23 - 2*c22^2",
];

pub(crate) const IQ: [&str; 10] = [
    "c00*c13 - 3*c01*c12 + 3*c02*c11 - c03*c10",
    "c00*c23 - 3*c01*c22 + 3*c02*c21 - c03*c20",
    "c10*c33 - 3*c11*c32 + 3*c12*c31 - c13*c30",
    "c20*c33 - 3*c21*c32 + 3*c22*c31 - c23*c30",
    "c00*c31 - c01*c30 - 3*c10*c21 + 3*c11*c20",
    "c00*c32 - c02*c30 - 3*c10*c22 + 3*c12*c20",
    "c00*c33 - c03*c30 - 9*c11*c22 + 9*c12*c21",
    "c01*c33 - c03*c31 - 3*c11*c23 + 3*c13*c21",
    "c02*c33 - c03*c32 - 3*c12*c23 + 3*c13*c22",
    "c01*c32 - c02*c31 - c10*c23 + c13*c20",
];

/// `c_ij`, `0 <= i, j <= 3`, in the relabelled display.
pub(crate) fn shown_c_ring() -> Ring {
    let names: Vec<String> = (0..4)
        .flat_map(|i| (0..4).map(move |j| format!("c{i}{j}")))
        .collect();
    Ring::degrevlex(&names)
}

/// Fiber variables followed by the relabelled `c`'s.
pub(crate) fn shown_full_ring() -> Ring {
    let mut names: Vec<String> = DEG6_FIBER.iter().map(|s| s.to_string()).collect();
    names.extend(shown_c_ring().names().iter().cloned());
    Ring::degrevlex(&names)
}

/// The block pattern `[[C1, C0], [-C2, -C1], [C3, C2]]` with
/// `C_i = [[ci1, ci0], [-ci2, -ci1], [ci3, ci2]]`.
fn block_pattern(ring: &Ring) -> Result<PolyMatrix> {
    let c = |i: usize, j: usize| ring.var(&format!("c{i}{j}"));
    let block = |i: usize| -> Result<[[Polynomial; 2]; 3]> {
        Ok([
            [c(i, 1)?, c(i, 0)?],
            [-c(i, 2)?, -c(i, 1)?],
            [c(i, 3)?, c(i, 2)?],
        ])
    };
    let layout: [[(usize, bool); 2]; 3] = [
        [(1, false), (0, false)],
        [(2, true), (1, true)],
        [(3, false), (2, false)],
    ];
    let mut rows = Vec::new();
    for block_row in layout {
        let (left, right) = (block_row[0], block_row[1]);
        let (bl, br) = (block(left.0)?, block(right.0)?);
        for r in 0..3 {
            let sign = |p: &Polynomial, neg: bool| if neg { -p } else { p.clone() };
            rows.push(vec![
                sign(&bl[r][0], left.1),
                sign(&bl[r][1], left.1),
                sign(&br[r][0], right.1),
                sign(&br[r][1], right.1),
            ]);
        }
    }
    PolyMatrix::from_rows(ring, rows)
}

/// Extend a renaming of `c`'s to rings that also carry the fiber variables.
pub(crate) fn widen(ren: &Substitution, from: &Ring, to: &Ring) -> Result<Substitution> {
    let mut s = Substitution::new(from, to);
    for (v, image) in ren.images() {
        let name = ren.domain().name(v);
        s.set(from.require_index(name)?, image.to_ring(to)?)?;
    }
    Ok(s)
}

pub fn degree6_instance() -> Result<Verified> {
    let problem = CoverProblem::parse(&DEG6_FIBER, &DEG6_Q)?.with_trace_free(&DEG6_TRACE_FREE);
    let displayed = shown_c_ring();
    let mut expected = BTreeMap::new();
    expected.insert("D".to_string(), D.map(String::from).to_vec());
    expected.insert("I_q".to_string(), IQ.map(String::from).to_vec());
    expected.insert(
        "C relabelled".to_string(),
        C_RELABELLED
            .iter()
            .flatten()
            .map(|s| s.to_string())
            .collect(),
    );
    let mut instance = CatalogInstance {
        name: "deg6".into(),
        problem,
        expected,
        postprocess: Vec::new(),
    };
    instance.validate(&displayed)?;

    let t = Instant::now();
    let rel = cover_relations(&instance.problem)?;
    let elapsed = t.elapsed();
    let c_ring = rel.c_ring().clone();
    let mut cert = Certificate::new("deg6");
    cert.info(
        "trace-free",
        format!(
            "{}; eliminated {}",
            DEG6_TRACE_FREE.join(", "),
            rel.c_subst()
                .iter()
                .filter(|(n, _)| ["c32", "c42", "c62", "c72"].contains(&n.as_str()))
                .map(|(n, p)| format!("{n} = {p}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    cert.timing("cover_relations", elapsed);

    let c_engine = rel.c_matrix()?;
    let c_norm = parse_matrix(&c_ring, &C_NORMALIZED)?;
    let bad = entry_mismatches(&c_engine, &c_norm);
    cert.compare_artifact("C^t", &matrix_rows(&c_engine), &matrix_rows(&c_norm));
    cert.check(
        "C-normalized",
        bad.is_empty(),
        witness(&bad, "36 entries equal"),
    );

    let c_rel = parse_matrix(&displayed, &C_RELABELLED)?;
    let renaming = derive_renaming(&c_norm, &c_rel)?;
    instance.postprocess.push(renaming.clone());
    let bad = entry_mismatches(&c_norm.substitute(&renaming)?, &c_rel);
    cert.check(
        "renaming",
        bad.is_empty() && renaming.images().count() == 16,
        if bad.is_empty() {
            format!(
                "consistent on all 36 entries: {}",
                describe_renaming(&renaming)
            )
        } else {
            bad.join("; ")
        },
    );
    let renamed_c = c_engine.substitute(&renaming)?;
    let bad = entry_mismatches(&renamed_c, &block_pattern(&displayed)?);
    cert.check(
        "block-structure",
        bad.is_empty(),
        witness(&bad, "C^t = [[C1, C0], [-C2, -C1], [C3, C2]]"),
    );

    let iq_shown = parse_all(&displayed, &IQ)?;
    let iq_engine = rel
        .quadratic_relations()
        .iter()
        .map(|g| renaming.apply(g))
        .collect::<Result<Vec<_>>>()?;
    let shown_ideal = Ideal::new(&displayed, iq_shown.clone())?;
    let engine_ideal = Ideal::new(&displayed, iq_engine.clone())?;
    let equal = ideal_equal(&engine_ideal, &shown_ideal)?;
    cert.compare_artifact("I_q", &texts(&iq_engine), &texts(&iq_shown));
    cert.check("I_q-ideal", equal, format!("ideal_equal: {equal}"));
    let minimal = min_generators(&iq_engine)?;
    let hits = scalar_match(&iq_shown, &minimal);
    let unmatched: Vec<String> = iq_shown
        .iter()
        .zip(&hits)
        .filter(|(_, h)| h.is_none())
        .map(|(g, _)| g.to_string())
        .collect();
    let scalars: Vec<String> = hits
        .iter()
        .flatten()
        .map(|(_, s)| format_rational(s))
        .collect();
    cert.check(
        "I_q-set",
        unmatched.is_empty() && minimal.len() == iq_shown.len(),
        if unmatched.is_empty() {
            format!(
                "{} minimal generators, each displayed quadric a multiple: [{}]",
                minimal.len(),
                scalars.join(", ")
            )
        } else {
            format!(
                "no multiple among the minimal generators for {}",
                unmatched.join("; ")
            )
        },
    );

    // D is the constant term of each deformed generator; it is only defined
    // modulo I_q, so compare exactly and in the quotient.
    let d = rel
        .d_exprs()
        .iter()
        .map(|p| Ok(-&renaming.apply(p)?))
        .collect::<Result<Vec<_>>>()?;
    let d_shown = parse_all(&displayed, &D)?;
    let gb = shown_ideal.groebner()?;
    let mut exact = Vec::new();
    let mut off = Vec::new();
    for (k, (a, b)) in d.iter().zip(&d_shown).enumerate() {
        if a == b {
            exact.push(k + 1);
        } else if !gb.normal_form(&(a - b))?.is_zero() {
            off.push(format!("entry {}: computed {a}, expected {b}", k + 1));
        }
    }
    cert.compare_artifact("D", &texts(&d), &texts(&d_shown));
    cert.check(
        "D",
        off.is_empty(),
        if off.is_empty() {
            format!(
                "equal modulo I_q; identical as polynomials in entries {:?}, the rest differ by elements of I_q",
                exact
            )
        } else {
            off.join("; ")
        },
    );
    cert.check(
        "cubic-residues",
        rel.cubics_ok(),
        format!(
            "{} cubic coefficients, all reduce to 0 modulo the linear and quadratic relations",
            rel.cubic_residues.len()
        ),
    );

    Ok(Verified {
        instance,
        relations: rel,
        renaming,
        certificate: cert,
    })
}

/// Relabelled coordinates `c_ij = e_i c_j`.
pub(crate) fn section_values(e: &[Rational; 4], c: &[Rational; 4]) -> BTreeMap<String, Rational> {
    let mut out = BTreeMap::new();
    for i in 0..4 {
        for j in 0..4 {
            out.insert(format!("c{i}{j}"), &e[i] * &c[j]);
        }
    }
    out
}

/// Pull a point given in displayed names back to the engine's free `c`'s.
pub(crate) fn pull_back(
    rel: &CoverRelations,
    renaming: &Substitution,
    shown: &BTreeMap<String, Rational>,
) -> Result<BTreeMap<String, Rational>> {
    let codomain = renaming.codomain();
    let values = codomain
        .names()
        .iter()
        .map(|n| {
            shown
                .get(n)
                .cloned()
                .or_else(|| {
                    DEG6_FIBER
                        .contains(&n.as_str())
                        .then(num_traits::Zero::zero)
                })
                .or_else(|| {
                    ["z1", "z2"]
                        .contains(&n.as_str())
                        .then(num_traits::Zero::zero)
                })
                .ok_or_else(|| Error::Precondition(format!("no value for {n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = BTreeMap::new();
    for name in rel.free_c() {
        let v = renaming
            .domain()
            .require_index(name)
            .ok()
            .and_then(|i| renaming.image_of(i))
            .ok_or_else(|| Error::Internal(format!("{name} has no displayed name")))?;
        out.insert(name.clone(), v.evaluate(&values)?);
    }
    Ok(out)
}

/// Engine free-`c` point of the linear section at `(e, c)`.
pub fn section_point(
    deg6: &Verified,
    e: &[Rational; 4],
    c: &[Rational; 4],
) -> Result<BTreeMap<String, Rational>> {
    pull_back(&deg6.relations, &deg6.renaming, &section_values(e, c))
}

/// Flatness of random fibers on the linear section, and of random triple
/// cover fibers.
pub fn linear_section_fibers(samples: usize, seed: u64) -> Result<Certificate> {
    let deg6 = degree6_instance()?;
    let triple = triple_cover_instance()?;
    let mut cert = Certificate::new("deg6-fibers");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut slowest = std::time::Duration::ZERO;
    let mut taken = 0;
    let mut k = 0;
    while taken < samples {
        let e = sample_e(&mut rng, 0);
        let c = sample_e(&mut rng, 1);
        k += 1;
        if delta_tc(&e) == Rational::from_integer(0.into())
            || delta_tc(&c) == Rational::from_integer(0.into())
        {
            continue;
        }
        taken += 1;
        let t = Instant::now();
        let point = section_point(&deg6, &e, &c)?;
        let report = verify_fiber(&deg6.instance.problem, &deg6.relations, &point)?;
        slowest = slowest.max(t.elapsed());
        if report.betti_ranks() != [1, 9, 16, 9, 1]
            || report.quotient_dimension != Some(6)
            || !report.initial_ideal_matches
        {
            bad.push(format!(
                "e = {:?}, c = {:?}: betti {:?}, length {:?}, in-ideal {}",
                e.iter().map(format_rational).collect::<Vec<_>>(),
                c.iter().map(format_rational).collect::<Vec<_>>(),
                report.betti_ranks(),
                report.quotient_dimension,
                report.initial_ideal_matches
            ));
        }
    }
    cert.timing("slowest sample", slowest);
    cert.check(
        "deg6-fibers",
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "{samples} section points ({k} drawn): betti (1,9,16,9,1), length 6, in(I) = (q)"
            )
        } else {
            bad.join("; ")
        },
    );

    let mut bad = Vec::new();
    let mut taken = 0;
    while taken < samples {
        let c = sample_e(&mut rng, 2);
        if delta_tc(&c) == Rational::from_integer(0.into()) {
            continue;
        }
        taken += 1;
        let shown: BTreeMap<String, Rational> =
            (0..4).map(|j| (format!("c{j}"), c[j].clone())).collect();
        let point = pull_back(&triple.relations, &triple.renaming, &shown)?;
        let report = verify_fiber(&triple.instance.problem, &triple.relations, &point)?;
        if report.betti_ranks() != [1, 3, 2] || !report.is_flat() {
            bad.push(format!(
                "c = {:?}: betti {:?}",
                c.iter().map(format_rational).collect::<Vec<_>>(),
                report.betti_ranks()
            ));
        }
    }
    cert.check(
        "triple-fibers",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{samples} points: betti (1,3,2), length 3, in(I) = (q)")
        } else {
            bad.join("; ")
        },
    );
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_pattern_is_the_relabelled_display() {
        let r = shown_c_ring();
        let shown = parse_matrix(&r, &C_RELABELLED).unwrap();
        assert!(entry_mismatches(&block_pattern(&r).unwrap(), &shown).is_empty());
    }

    #[test]
    fn reproduces_displays() {
        let v = degree6_instance().unwrap();
        assert!(v.certificate.passed(), "{}", v.certificate.report());
    }
}
