//! The triple cover `q = (z1^2, z1*z2, z2^2)`.

use std::collections::BTreeMap;

use super::compare::{
    derive_renaming, describe_renaming, entry_mismatches, matrix_rows, parse_all, texts, to_ring,
};
use super::points::{three_point_ring, THREE_POINT_SYSTEM};
use super::{CatalogInstance, Certificate, Verified};
use crate::cover::{cover_relations, CoverProblem};
use crate::error::Result;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::subst::Substitution;

/// Trace of multiplication by `z1` and by `z2` on `{1, z1, z2}`.
pub const TRIPLE_TRACE_FREE: [&str; 2] = ["c00 + c11", "c10 + c21"];

const SYZYGIES: [[&str; 2]; 3] = [["0", "z2"], ["-z2", "-z1"], ["z1", "0"]];

const Q_MINUS_ZC: [&str; 3] = [
    "z1^2 - c1*z1 - c0*z2",
    "z1*z2 + c2*z1 + c1*z2",
    "z2^2 - c3*z1 - c2*z2",
];

const L_PLUS_N: [[&str; 2]; 3] = [
    ["c3", "z2 + c2"],
    ["-z2 + 2*c2", "-z1 + 2*c1"],
    ["z1 + c1", "c0"],
];

const D: [&str; 3] = ["2*(c0*c2 - c1^2)", "-(c0*c3 - c1*c2)", "2*(c1*c3 - c2^2)"];

pub(crate) fn display_ring() -> Ring {
    Ring::degrevlex(&["z1", "z2", "c0", "c1", "c2", "c3"])
}

pub(crate) fn parse_matrix<const N: usize>(ring: &Ring, rows: &[[&str; N]]) -> Result<PolyMatrix> {
    let parsed = rows
        .iter()
        .map(|r| parse_all(ring, r))
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(ring, parsed)
}

/// Coefficient matrix `C` (generators by variables) of rows `q_i - sum C_ij z_j`.
fn linear_part(
    ring: &Ring,
    rows: &[Polynomial],
    q: &[Polynomial],
    vars: &[usize],
) -> Result<PolyMatrix> {
    let mut out = PolyMatrix::zeros(ring, rows.len(), vars.len());
    for (i, (row, qi)) in rows.iter().zip(q).enumerate() {
        let coeffs = (row - qi).coefficients_along(vars);
        for j in 0..vars.len() {
            let mut key = vec![0; vars.len()];
            key[j] = 1;
            if let Some(c) = coeffs.get(&key) {
                out.set(i, j, -c);
            }
        }
    }
    Ok(out)
}

pub fn triple_cover_instance() -> Result<Verified> {
    let base = CoverProblem::parse(&["z1", "z2"], &["z1^2", "z1*z2", "z2^2"])?;
    let l = parse_matrix(base.ring(), &SYZYGIES)?;
    let problem = base.with_syzygies(l)?.with_trace_free(&TRIPLE_TRACE_FREE);
    let shown = display_ring();
    let mut expected = BTreeMap::new();
    expected.insert(
        "q - zC".to_string(),
        Q_MINUS_ZC.iter().map(|s| s.to_string()).collect(),
    );
    expected.insert(
        "l + N".to_string(),
        L_PLUS_N.iter().flatten().map(|s| s.to_string()).collect(),
    );
    expected.insert("D".to_string(), D.iter().map(|s| s.to_string()).collect());
    let mut instance = CatalogInstance {
        name: "triple-cover".into(),
        problem,
        expected,
        postprocess: Vec::new(),
    };
    instance.validate(&shown)?;

    let rel = cover_relations(&instance.problem)?;
    let disp = rel.display_ring();
    let mut cert = Certificate::new("triple-cover");

    let fiber = [0, 1];
    let q_shown = parse_all(&shown, &["z1^2", "z1*z2", "z2^2"])?;
    let row_shown = parse_all(&shown, &Q_MINUS_ZC)?;
    let c_shown = linear_part(&shown, &row_shown, &q_shown, &fiber)?;
    let c_engine = to_ring(&rel.c_matrix()?, &disp)?;
    let renaming = derive_renaming(&c_engine, &c_shown)?;
    cert.info("renaming", describe_renaming(&renaming));
    instance.postprocess.push(renaming.clone());

    // (q - zC)
    let row = rel
        .q_minus_zc()?
        .iter()
        .map(|p| renaming.apply(p))
        .collect::<Result<Vec<_>>>()?;
    let got = PolyMatrix::row_vector(&shown, row.clone())?;
    let want = PolyMatrix::row_vector(&shown, row_shown.clone())?;
    let bad = entry_mismatches(&got, &want);
    cert.compare_artifact("q - zC", &texts(&row), &texts(&row_shown));
    cert.check("C", bad.is_empty(), witness(&bad, "3 entries equal"));

    // (l + N)
    let ln = rel.l_plus_n()?.substitute(&renaming)?;
    let ln_shown = parse_matrix(&shown, &L_PLUS_N)?;
    let bad = entry_mismatches(&ln, &ln_shown);
    cert.compare_artifact("l + N", &matrix_rows(&ln), &matrix_rows(&ln_shown));
    cert.check("l+N", bad.is_empty(), witness(&bad, "6 entries equal"));

    // D is the constant term of each deformed generator
    let d = rel
        .d_exprs()
        .iter()
        .map(|p| Ok(-&renaming.apply(&p.to_ring(&disp)?)?))
        .collect::<Result<Vec<_>>>()?;
    let d_shown = parse_all(&shown, &D)?;
    let bad = entry_mismatches(
        &PolyMatrix::row_vector(&shown, d.clone())?,
        &PolyMatrix::row_vector(&shown, d_shown.clone())?,
    );
    cert.compare_artifact("D", &texts(&d), &texts(&d_shown));
    cert.check("D", bad.is_empty(), witness(&bad, "3 entries equal"));

    cert.check(
        "I_q",
        rel.quadratic_relations().is_empty(),
        format!(
            "{} constraints on the free c's beyond the d identities",
            rel.quadratic_relations().len()
        ),
    );
    cert.check(
        "cubic-residues",
        rel.cubics_ok(),
        format!(
            "{} cubic coefficients reduce to 0",
            rel.cubic_residues.len()
        ),
    );

    // the deformed system at c = e is the three-point system
    let pts = three_point_ring();
    let mut to_pts = Substitution::new(&shown, &pts);
    to_pts.set_text("z1", "z")?.set_text("z2", "w")?;
    for k in 0..4 {
        to_pts.set_text(&format!("c{k}"), &format!("e{k}"))?;
    }
    let system = row
        .iter()
        .zip(&d)
        .map(|(r, dk)| to_pts.apply(&(r + dk)))
        .collect::<Result<Vec<_>>>()?;
    let system_shown = parse_all(&pts, &THREE_POINT_SYSTEM)?;
    let bad = entry_mismatches(
        &PolyMatrix::column_vector(&pts, system.clone())?,
        &PolyMatrix::column_vector(&pts, system_shown.clone())?,
    );
    cert.compare_artifact(
        "deformed system at c = e",
        &texts(&system),
        &texts(&system_shown),
    );
    cert.check(
        "three-point-system",
        bad.is_empty(),
        witness(&bad, "3 generators equal"),
    );

    Ok(Verified {
        instance,
        relations: rel,
        renaming,
        certificate: cert,
    })
}

pub(crate) fn witness(bad: &[String], ok: &str) -> String {
    if bad.is_empty() {
        ok.to_string()
    } else {
        bad.join("; ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_displays() {
        let v = triple_cover_instance().unwrap();
        let cert = &v.certificate;
        assert!(cert.passed(), "{}", cert.report());
        assert_eq!(v.relations.free_c().len(), 4);
    }
}
