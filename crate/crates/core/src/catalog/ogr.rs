//! The ten spinor quadrics of `OGr(5, 10)` in `P^15` and their
//! identification with the degree-6 quadratic relations.

use std::time::Instant;

use num_traits::Zero;

use super::compare::{parse_all, scalar_match, texts};
use super::degree6::{shown_c_ring, IQ};
use super::{Certificate, Verified};
use crate::error::Result;
use crate::groebner::{free_resolution, ideal_equal, Ideal};
use crate::linalg::determinant;
use crate::matrix::{pfaffian4, skew_from_upper, PolyMatrix};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::subst::Substitution;

const PAIRS: [&str; 10] = ["12", "13", "14", "15", "23", "24", "25", "34", "35", "45"];
const QUADS: [&str; 5] = ["1234", "1235", "1245", "1345", "2345"];

/// Labels and generators in display order.
const SPINOR_QUADRICS: [(&str, &str); 10] = [
    ("N1", "xi0*xi2345 - xi23*xi45 + xi24*xi35 - xi25*xi34"),
    (
        "N-1",
        "xi12*xi1345 - xi13*xi1245 + xi14*xi1235 - xi15*xi1234",
    ),
    ("N2", "xi0*xi1345 - xi13*xi45 + xi14*xi35 - xi15*xi34"),
    (
        "N-2",
        "xi12*xi2345 - xi23*xi1245 + xi24*xi1235 - xi25*xi1234",
    ),
    ("N3", "xi0*xi1245 - xi12*xi45 + xi14*xi25 - xi15*xi24"),
    (
        "N-3",
        "xi13*xi2345 - xi23*xi1345 + xi34*xi1235 - xi35*xi1234",
    ),
    ("N4", "xi0*xi1235 - xi12*xi35 + xi13*xi25 - xi15*xi23"),
    (
        "N-4",
        "xi14*xi2345 - xi24*xi1345 + xi34*xi1245 - xi45*xi1234",
    ),
    ("N5", "xi0*xi1234 - xi12*xi34 + xi13*xi24 - xi14*xi23"),
    (
        "N-5",
        "xi15*xi2345 - xi25*xi1345 + xi35*xi1245 - xi45*xi1235",
    ),
];

/// Images of the spinor coordinates in the relabelled `c`'s.
const SPINOR_TO_C: [(&str, &str); 16] = [
    ("xi0", "3*c11"),
    ("xi12", "3*c21"),
    ("xi13", "c30"),
    ("xi14", "-c33"),
    ("xi15", "-c31"),
    ("xi23", "-c00"),
    ("xi24", "c03"),
    ("xi25", "c01"),
    ("xi34", "3*c12"),
    ("xi35", "-c10"),
    ("xi45", "c13"),
    // v = (c02, c32, c23, c20, 3 c22) = (-xi2345, xi1345, -xi1245, xi1235, -xi1234)
    ("xi2345", "-c02"),
    ("xi1345", "c32"),
    ("xi1245", "-c23"),
    ("xi1235", "c20"),
    ("xi1234", "-3*c22"),
];

pub fn ogr_ring() -> Ring {
    let mut names = vec!["xi0".to_string()];
    names.extend(PAIRS.iter().map(|p| format!("xi{p}")));
    names.extend(QUADS.iter().map(|q| format!("xi{q}")));
    Ring::degrevlex(&names)
}

pub fn ogr10_ideal() -> Result<Ideal> {
    let ring = ogr_ring();
    let gens = SPINOR_QUADRICS
        .iter()
        .map(|(_, g)| ring.parse(g))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&ring, gens)
}

/// `(xi0 v - s, M v)` with `M` the skew matrix of the `xi_ij`, `v` the
/// signed `xi_ijkl` and `s_i = (-1)^i Pf(M without row and column i)`.
pub fn spinor_rearrangement(ring: &Ring) -> Result<(PolyMatrix, Vec<Polynomial>, Vec<Polynomial>)> {
    let upper = PAIRS
        .iter()
        .map(|p| ring.var(&format!("xi{p}")))
        .collect::<Result<Vec<_>>>()?;
    let m = skew_from_upper(ring, 5, upper)?;
    let v = parse_all(ring, &["-xi2345", "xi1345", "-xi1245", "xi1235", "-xi1234"])?;
    let mut s = Vec::new();
    for i in 0..5 {
        let pf = pfaffian4(&m.minor(&[i], &[i]))?;
        s.push(if i % 2 == 0 { -pf } else { pf });
    }
    Ok((m, v, s))
}

fn substitution(xi: &Ring, c: &Ring, xi0: &str, flip_v: bool) -> Result<Substitution> {
    let mut s = Substitution::new(xi, c);
    for (k, (var, image)) in SPINOR_TO_C.iter().enumerate() {
        let mut p = c.parse(if k == 0 { xi0 } else { image })?;
        if flip_v && k >= 11 {
            p = -p;
        }
        s.set(xi.require_index(var)?, p)?;
    }
    Ok(s)
}

/// Check the rearranged form of the spinor ideal, the invertibility of the
/// coordinate change and the equality of the substituted ideal with `I_q`.
pub fn verify_spinor_identification(deg6: &Verified) -> Result<Certificate> {
    let mut cert = Certificate::new("deg6-ogr");
    let ogr = ogr10_ideal()?;
    let xi = ogr.ring().clone();
    let labels: Vec<&str> = SPINOR_QUADRICS.iter().map(|(l, _)| *l).collect();

    cert.check(
        "ogr-generators",
        ogr.gens().len() == 10 && ogr.is_homogeneous(),
        format!("{} quadrics in {} variables", ogr.gens().len(), xi.arity()),
    );
    let mut origin = vec![num_traits::Zero::zero(); xi.arity()];
    origin[0] = num_traits::One::one();
    let n5 = ogr.gens()[8].evaluate(&origin)?;
    cert.check(
        "coordinate-point",
        n5.is_zero(),
        "N5 vanishes at xi0 = 1, others 0",
    );

    // rearranged form
    let (m, v, s) = spinor_rearrangement(&xi)?;
    let xi0 = xi.gen(0);
    let vm = PolyMatrix::column_vector(&xi, v.clone())?;
    let mv = m.mul(&vm)?.column(0);
    let mut rearranged: Vec<Polynomial> =
        v.iter().zip(&s).map(|(vi, si)| &(&xi0 * vi) - si).collect();
    rearranged.extend(mv.iter().cloned());
    let equal = ideal_equal(&Ideal::new(&xi, rearranged.clone())?, &ogr)?;
    let hits = scalar_match(&mv, ogr.gens());
    let named: Vec<String> = hits
        .iter()
        .map(|h| match h {
            Some((k, sc)) => format!("{}*{}", crate::rational::format_rational(sc), labels[*k]),
            None => "none".into(),
        })
        .collect();
    cert.compare_artifact(
        "xi0 v - Pf(M), M v",
        &texts(&rearranged),
        &texts(ogr.gens()),
    );
    cert.check(
        "rearrangement",
        equal && hits.iter().all(Option::is_some),
        format!("ideal_equal: {equal}; M v = ({})", named.join(", ")),
    );

    // the coordinate change
    let c = shown_c_ring();
    let sub = substitution(&xi, &c, SPINOR_TO_C[0].1, false)?;
    let det = determinant(sub.linear_matrix()?);
    cert.check(
        "linear-map",
        !det.is_zero(),
        format!(
            "16x16 determinant {}",
            crate::rational::format_rational(&det)
        ),
    );

    let iq_shown = Ideal::new(&c, parse_all(&c, &IQ)?)?;
    let iq_engine = {
        let rel = &deg6.relations;
        let gens = rel
            .quadratic_relations()
            .iter()
            .map(|g| deg6.renaming.apply(g)?.to_ring(&c))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&c, gens)?
    };
    let image = ogr.map(&sub)?;
    let literal = ideal_equal(&image, &iq_shown)?;
    let literal_engine = ideal_equal(&image, &iq_engine)?;
    cert.compare_artifact(
        "substituted quadrics",
        &texts(image.gens()),
        &IQ.map(String::from),
    );
    let gb = iq_engine.groebner()?;
    let mut outside = Vec::new();
    for (l, g) in labels.iter().zip(image.gens()) {
        let r = gb.normal_form(g)?;
        if !r.is_zero() {
            outside.push(format!("{l} -> {g} has normal form {r}"));
        }
    }
    cert.check(
        "ideal_equal",
        literal && literal_engine,
        if outside.is_empty() {
            format!("ideal_equal: {literal} (displayed), {literal_engine} (recomputed)")
        } else {
            format!("ideal_equal: false; {}", outside.join("; "))
        },
    );

    for (id, xi0_image, flip) in [("xi0=-3c11", "-3*c11", false), ("v negated", "3*c11", true)] {
        let alt = ogr.map(&substitution(&xi, &c, xi0_image, flip)?)?;
        let eq = ideal_equal(&alt, &iq_engine)?;
        cert.info(
            &format!("variant {id}"),
            format!("ideal_equal(substituted, I_q) = {eq}"),
        );
    }

    let t = Instant::now();
    let res = free_resolution(&ogr, 16)?;
    cert.timing("ogr resolution", t.elapsed());
    let betti = res.betti();
    cert.artifact("ogr betti", serde_json::json!(res.table()));
    cert.check(
        "ogr-betti",
        betti.get(1) == Some(&10),
        format!(
            "betti {:?}; self-dual: {}",
            betti,
            betti.iter().eq(betti.iter().rev())
        ),
    );
    Ok(cert)
}
