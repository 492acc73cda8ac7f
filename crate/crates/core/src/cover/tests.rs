use num_traits::Zero;
use std::collections::BTreeMap;

use super::*;
use crate::groebner::{ideal_equal, Ideal};
use crate::rational::int;
use crate::subst::Substitution;
use crate::Rational;

fn triple() -> CoverProblem {
    CoverProblem::parse(&["z1", "z2"], &["z1^2", "z1*z2", "z2^2"]).unwrap()
}

fn degree6_q() -> Vec<&'static str> {
    vec![
        "z1^2",
        "z1*z2",
        "z2^2",
        "z1*w1",
        "1/2*(z1*w2+z2*w1)",
        "z2*w2",
        "w1^2",
        "w1*w2",
        "w2^2",
    ]
}

const DEG6_TRACE_FREE: [&str; 4] = ["c32 + c43", "c42 + c53", "c72 + c83", "c62 + c73"];

fn degree6() -> CoverProblem {
    CoverProblem::parse(&["z1", "z2", "w1", "w2"], &degree6_q())
        .unwrap()
        .with_trace_free(&DEG6_TRACE_FREE)
}

fn texts(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

#[test]
fn triple_cover_relations() {
    let rel = cover_relations(&triple().with_trace_free(&["c00 + c11", "c10 + c21"])).unwrap();
    assert_eq!(rel.free_c(), &["c01", "c11", "c20", "c21"]);
    assert!(rel.quadratic_relations().is_empty());
    assert!(rel.cubics_ok());
    let ring = rel.c_ring();
    let expect = [
        "2*c11^2 - 2*c01*c21",
        "c01*c20 + c11*c21",
        "2*c11*c20 + 2*c21^2",
    ];
    for (d, e) in rel.d_exprs().iter().zip(expect) {
        assert_eq!(d, &ring.parse(e).unwrap());
    }
    let n = rel.n_matrix().unwrap();
    let want = PolyMatrix::parse_rows(
        ring,
        &[&["-c20", "c21"], &["-2*c21", "-2*c11"], &["c11", "c01"]],
    )
    .unwrap();
    assert_eq!(n, want);
}

#[test]
fn triple_cover_without_trace_conditions_is_unconstrained() {
    let rel = cover_relations(&triple()).unwrap();
    assert_eq!(rel.free_c().len(), 6);
    assert!(rel.linear_relations().is_empty());
    assert!(rel.quadratic_relations().is_empty());
}

#[test]
fn non_minimal_or_non_quadratic_input_is_rejected() {
    let p = CoverProblem::parse(&["z1", "z2"], &["z1^2", "z2^2"]).unwrap();
    assert!(matches!(cover_relations(&p), Err(Error::Hypothesis(_))));
    assert!(matches!(
        CoverProblem::parse(&["z1", "z2"], &["z1^3", "z2^2"]),
        Err(Error::Hypothesis(_))
    ));
    let p = CoverProblem::parse(&["z1", "z2"], &["z1^2", "z1*z2", "z2^2", "z1^2 + z2^2"]).unwrap();
    assert!(matches!(cover_relations(&p), Err(Error::Hypothesis(_))));
}

#[test]
fn undeformed_point_has_zero_constants() {
    let rel = cover_relations(&degree6()).unwrap();
    let zero = vec![Rational::zero(); rel.c_ring().arity()];
    for d in rel.d_exprs() {
        assert!(d.evaluate(&zero).unwrap().is_zero());
    }
}

#[test]
fn degree6_relations() {
    let rel = cover_relations(&degree6()).unwrap();
    assert_eq!(rel.free_c().len(), 16);
    assert_eq!(rel.quadratic_relations().len(), 10);
    assert_eq!(rel.dstep.residuals.len(), 29);
    assert!(rel.cubics_ok());
    assert!(rel.cubic_residues.iter().all(|c| c.residue.is_zero()));
    let c = rel.c_matrix().unwrap();
    assert_eq!(texts(&c.row(0)), ["c43", "-c33", "-c13", "c03"]);
    let ring = rel.c_ring();
    assert_eq!(
        rel.d_exprs()[0],
        ring.parse("2*c43^2 - 2*c33*c53 + c23*c63 - 2*c13*c73 + c03*c83")
            .unwrap()
    );
}

#[test]
fn generator_permutation_is_equivariant() {
    // reverse the generator order; c_ij becomes c_(8-i)j
    let mut q = degree6_q();
    q.reverse();
    let renamed: Vec<String> = DEG6_TRACE_FREE
        .iter()
        .map(|t| {
            t.split(" + ")
                .map(|v| {
                    let i: usize = v[1..2].parse().unwrap();
                    format!("c{}{}", 8 - i, &v[2..])
                })
                .collect::<Vec<_>>()
                .join(" + ")
        })
        .collect();
    let p2 = CoverProblem::parse(&["z1", "z2", "w1", "w2"], &q)
        .unwrap()
        .with_trace_free(&renamed);
    let a = cover_relations(&degree6()).unwrap();
    let b = cover_relations(&p2).unwrap();
    let ring = a.c_ring();
    let mut s = Substitution::within(ring);
    for i in 0..9 {
        for j in 0..4 {
            s.set_text(&format!("c{i}{j}"), &format!("c{}{j}", 8 - i))
                .unwrap();
        }
    }
    let ia = a.relations_ideal().unwrap().map(&s).unwrap();
    let ib = b.relations_ideal().unwrap();
    assert!(ideal_equal(&ia, &ib).unwrap());
}

#[test]
fn json_round_trip() {
    let rel = cover_relations(&triple().with_trace_free(&["c00 + c11", "c10 + c21"])).unwrap();
    let j = RelationsJson::from_relations(&rel);
    let text = j.to_json();
    let back = RelationsJson::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);
    let ds = back.d_polynomials().unwrap();
    assert_eq!(ds.len(), 3);
    assert_eq!(ds["d1"], rel.c_ring().parse("c01*c20 + c11*c21").unwrap());
}

#[test]
fn fiber_over_a_general_point_is_flat() {
    let rel = cover_relations(&triple().with_trace_free(&["c00 + c11", "c10 + c21"])).unwrap();
    let mut free = BTreeMap::new();
    for (name, v) in [("c01", 1), ("c11", 0), ("c20", 1), ("c21", 0)] {
        free.insert(name.to_string(), int(v));
    }
    let report = verify_fiber(&triple(), &rel, &free).unwrap();
    assert_eq!(report.betti_ranks(), [1, 3, 2]);
    assert_eq!(report.quotient_dimension, Some(3));
    assert!(report.is_flat());
}

#[test]
fn point_off_the_relations_is_rejected() {
    let rel = cover_relations(&degree6()).unwrap();
    let mut free = BTreeMap::new();
    for (k, name) in rel.free_c().iter().enumerate() {
        free.insert(name.clone(), int(k as i64 + 1));
    }
    let ok = rel.quadratic_relations().iter().all(|g| {
        let full = rel.complete_point(&free).unwrap();
        let vals: Vec<Rational> = rel
            .c_ring()
            .names()
            .iter()
            .map(|n| full[n].clone())
            .collect();
        g.evaluate(&vals).unwrap().is_zero()
    });
    assert!(!ok);
    assert!(matches!(
        verify_fiber(&degree6(), &rel, &free),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn supplied_syzygies_must_generate() {
    let ring = triple().ring().clone();
    let bad = PolyMatrix::parse_rows(&ring, &[&["z2"], &["-z1"], &["0"]]).unwrap();
    let p = triple().with_syzygies(bad).unwrap();
    assert!(cover_relations(&p).is_err());
    let good =
        PolyMatrix::parse_rows(&ring, &[&["0", "z2"], &["-z2", "-z1"], &["z1", "0"]]).unwrap();
    let p = triple().with_syzygies(good).unwrap();
    let rel = cover_relations(&p).unwrap();
    assert!(rel.cubics_ok());
    let _ = Ideal::new(rel.c_ring(), rel.d_exprs().to_vec()).unwrap();
}
