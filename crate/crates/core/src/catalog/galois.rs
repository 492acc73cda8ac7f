//! The `S_3` symmetry of the linear section `c_ij = e_i c_j` at
//! `e = (1, 0, 0, 1)` and its `Z/2` and `Z/3` quotients.

use std::time::Instant;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::compare::texts;
use super::cyclo::CycloContext;
use super::degree6::{degree6_instance, shown_full_ring, widen};
use super::points::{delta_tc_poly, sample_e};
use super::{Certificate, Verified};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, ideal_equal, initial_ideal, standard_monomials, Ideal};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::rational::{format_rational, int, rat, Rational};
use crate::ring::Ring;
use crate::subst::Substitution;

const SECTION_VARS: [&str; 8] = ["z1", "z2", "w1", "w2", "c0", "c1", "c2", "c3"];

/// `C~ = [[c1, c0], [-c2, -c1], [c3, c2]]`.
const C_TILDE: [[&str; 2]; 3] = [["c1", "c0"], ["-c2", "-c1"], ["c3", "c2"]];

const D_TILDE: [&str; 3] = ["2*(-c0*c2 + c1^2)", "c0*c3 - c1*c2", "2*(-c1*c3 + c2^2)"];

/// `c_ij = e_i c_j` with symbolic `c`.
#[derive(Clone, Debug)]
pub struct LinearSection {
    pub e: [Rational; 4],
    pub ring: Ring,
    pub generators: Vec<Polynomial>,
}

impl LinearSection {
    pub fn new(deg6: &Verified, e: [Rational; 4]) -> Result<Self> {
        let ring = Ring::degrevlex(&SECTION_VARS);
        let rel = &deg6.relations;
        let disp = rel.display_ring();
        let displayed = shown_full_ring();
        let ren = widen(&deg6.renaming, &disp, &displayed)?;
        let mut section = Substitution::new(&displayed, &ring);
        for i in 0..4 {
            for j in 0..4 {
                let image = ring.var(&format!("c{j}"))?.scale(&e[i]);
                section.set(displayed.require_index(&format!("c{i}{j}"))?, image)?;
            }
        }
        let rows = rel.q_minus_zc()?;
        let mut generators = Vec::new();
        for (row, d) in rows.iter().zip(rel.d_exprs()) {
            let f = &ren.apply(row)? - &ren.apply(&d.to_ring(&disp)?)?;
            generators.push(section.apply(&f)?);
        }
        Ok(LinearSection {
            e,
            ring,
            generators,
        })
    }

    pub fn ideal(&self) -> Result<Ideal> {
        Ideal::new(&self.ring, self.generators.clone())
    }

    /// Fiber at numeric `c`, in the ring of `z, w`.
    pub fn fiber(&self, c: &[Rational; 4]) -> Result<Vec<Polynomial>> {
        let zw = Ring::degrevlex(&SECTION_VARS[..4]);
        let values: Vec<(usize, Rational)> = (0..4).map(|j| (4 + j, c[j].clone())).collect();
        self.generators
            .iter()
            .map(|g| g.specialize(&values).to_ring(&zw))
            .collect()
    }
}

fn column(ring: &Ring, texts: &[&str]) -> Result<PolyMatrix> {
    let v = texts
        .iter()
        .map(|t| ring.parse(t))
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::column_vector(ring, v)
}

fn c_tilde(ring: &Ring) -> Result<PolyMatrix> {
    let rows = C_TILDE
        .iter()
        .map(|r| r.iter().map(|t| ring.parse(t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(ring, rows)
}

/// Parts of each generator of degree 0 in the fiber variables.
fn constants(gens: &[Polynomial]) -> Vec<Polynomial> {
    gens.iter()
        .map(|g| g.component_in(&[0, 1, 2, 3], 0))
        .collect()
}

/// Invariance of the section ideal under `r = diag(eps, eps^2)` and the
/// swap of `Z` and `W`, over `Q(eps)` with symbolic `c`.
pub fn s3_invariance_check(section: &LinearSection, cert: &mut Certificate) -> Result<bool> {
    let k = CycloContext::new(&SECTION_VARS)?;
    let ring = k.ring().clone();
    let gens = section
        .generators
        .iter()
        .map(|g| g.to_ring(&ring))
        .collect::<Result<Vec<_>>>()?;
    let t = Instant::now();
    let gb = k.groebner(&gens)?;
    let gb_time = t.elapsed();

    let mut r = Substitution::within(&ring);
    r.set_text("z1", "eps*z1")?
        .set_text("z2", "eps*z2")?
        .set_text("w1", "eps^2*w1")?
        .set_text("w2", "eps^2*w2")?;
    let mut iota = Substitution::within(&ring);
    iota.set_text("z1", "w1")?
        .set_text("z2", "w2")?
        .set_text("w1", "z1")?
        .set_text("w2", "z2")?;
    let mut ok = true;
    for (name, s) in [("r", &r), ("iota", &iota)] {
        let mut outside = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let nf = gb.normal_form(&s.apply(g)?)?;
            if !nf.is_zero() {
                outside.push(format!("generator {}: normal form {nf}", i + 1));
            }
        }
        ok &= cert.check(
            &format!("invariance-{name}"),
            outside.is_empty(),
            if outside.is_empty() {
                format!("all {} generators map into the ideal", gens.len())
            } else {
                outside.join("; ")
            },
        );
    }
    cert.timing("basis over Q(eps)", gb_time);

    let m = |rows: [[&str; 2]; 2]| -> Result<PolyMatrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|t| k.parse(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(&ring, parsed)
    };
    let rm = m([["eps", "0"], ["0", "eps^2"]])?;
    let im = m([["0", "1"], ["1", "0"]])?;
    let id = PolyMatrix::identity(&ring, 2);
    let r2 = k.pow(&rm, 2)?;
    let relations = [
        ("r^3 = 1", k.pow(&rm, 3)? == id),
        ("iota^2 = 1", k.pow(&im, 2)? == id),
        ("iota r iota = r^2", k.mul(&k.mul(&im, &rm)?, &im)? == r2),
        ("r != 1", rm != id),
    ];
    let failed: Vec<&str> = relations
        .iter()
        .filter(|(_, b)| !b)
        .map(|(n, _)| *n)
        .collect();
    ok &= cert.check(
        "group-relations",
        failed.is_empty(),
        if failed.is_empty() {
            relations
                .iter()
                .map(|(n, _)| *n)
                .collect::<Vec<_>>()
                .join(", ")
        } else {
            format!("violated: {}", failed.join(", "))
        },
    );
    Ok(ok)
}

#[derive(Clone, Debug)]
pub struct QuotientIdeals {
    pub kappa: Option<Rational>,
    /// `S^2(U) - C~ U - kappa D~` in `u1, u2, c0..c3`.
    pub z2: Vec<Polynomial>,
    pub z2_members: bool,
    pub z2_initial_ok: bool,
    /// `((z1 w2 - z2 w1)/2)^2 - Delta`.
    pub z3: Polynomial,
    pub z3_member: bool,
    pub z3_constant_ok: bool,
    /// `lambda` with `(z1 w2 - z2 w1)^2 - lambda Delta` in the ideal.
    pub z3_scale: Option<Rational>,
}

pub fn quotient_ideals(section: &LinearSection) -> Result<QuotientIdeals> {
    let ring = &section.ring;
    let gb = section.ideal()?.groebner()?;
    let z = column(ring, &["z1", "z2"])?;
    let w = column(ring, &["w1", "w2"])?;
    let ct = c_tilde(ring)?;
    let d = column(ring, &D_TILDE)?.column(0);

    // Z/2: U = Z + W
    let u = [z.get(0, 0) + w.get(0, 0), z.get(1, 0) + w.get(1, 0)];
    let s2 = [u[0].pow(2), &u[0] * &u[1], u[1].pow(2)];
    let cu = ct
        .mul(&PolyMatrix::column_vector(ring, u.to_vec())?)?
        .column(0);
    let a: Vec<Polynomial> = s2.iter().zip(&cu).map(|(s, l)| s - l).collect();
    let mut kappa = None;
    let mut consistent = true;
    for (ak, dk) in a.iter().zip(&d) {
        let k = gb.normal_form(dk)?.scalar_ratio(&gb.normal_form(ak)?);
        match (&kappa, k) {
            (None, Some(k)) => kappa = Some(k),
            (Some(prev), Some(k)) if *prev == k => {}
            _ => consistent = false,
        }
    }
    if !consistent {
        kappa = None;
    }
    let z2_members = match &kappa {
        Some(k) => {
            let mut all = true;
            for (ak, dk) in a.iter().zip(&d) {
                all &= gb.normal_form(&(ak - &dk.scale(k)))?.is_zero();
            }
            all
        }
        None => false,
    };
    let uring = Ring::degrevlex(&["u1", "u2", "c0", "c1", "c2", "c3"]);
    let ut = c_tilde(&uring)?;
    let uu = column(&uring, &["u1", "u2"])?;
    let us = parse_u(&uring, &["u1^2", "u1*u2", "u2^2"])?;
    let ud = column(&uring, &D_TILDE)?.column(0);
    let kap = kappa.clone().unwrap_or_else(Rational::zero);
    let z2: Vec<Polynomial> = us
        .iter()
        .zip(ut.mul(&uu)?.column(0))
        .zip(&ud)
        .map(|((s, l), dk)| &(s - &l) - &dk.scale(&kap))
        .collect();
    let initial = initial_ideal(&Ideal::new(&uring, z2.clone())?, &[0, 1])?;
    let z2_initial_ok = ideal_equal(&initial, &Ideal::new(&uring, us.clone())?)?;

    // Z/3: the r-invariant, iota-anti-invariant (z1 w2 - z2 w1)
    let delta = delta_tc_poly(&[
        ring.var("c0")?,
        ring.var("c1")?,
        ring.var("c2")?,
        ring.var("c3")?,
    ]);
    let wedge = ring.parse("z1*w2 - z2*w1")?;
    let quarter = rat(1, 4);
    let z3 = &wedge.pow(2).scale(&quarter) - &delta;
    let z3_member = gb.normal_form(&z3)?.is_zero();
    let expanded = ring.parse("(c0*c3 - c1*c2)^2 - 4*(-c1*c3 + c2^2)*(-c0*c2 + c1^2)")?;
    let z3_constant_ok = constants(std::slice::from_ref(&z3))[0] == -&delta && expanded == delta;
    let z3_scale = gb
        .normal_form(&delta)?
        .scalar_ratio(&gb.normal_form(&wedge.pow(2))?);
    Ok(QuotientIdeals {
        kappa,
        z2,
        z2_members,
        z2_initial_ok,
        z3,
        z3_member,
        z3_constant_ok,
        z3_scale,
    })
}

fn parse_u(ring: &Ring, texts: &[&str]) -> Result<Vec<Polynomial>> {
    texts.iter().map(|t| ring.parse(t)).collect()
}

/// The section with the middle constants replaced by `-D~`, at a random `c`.
fn printed_is_degenerate(section: &LinearSection, cert: &mut Certificate) -> Result<()> {
    let ring = &section.ring;
    let d = column(ring, &D_TILDE)?.column(0);
    let consts = constants(&section.generators);
    let ratios: Vec<Option<Rational>> = (0..3).map(|k| d[k].scalar_ratio(&consts[3 + k])).collect();
    cert.info(
        "middle-constants",
        format!(
            "constant parts of generators 4..6 are [{}] times D~",
            ratios
                .iter()
                .map(|r| r
                    .as_ref()
                    .map(format_rational)
                    .unwrap_or_else(|| "?".into()))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    let mut printed = section.generators.clone();
    for k in 0..3 {
        printed[3 + k] = &(&printed[3 + k] - &consts[3 + k]) - &d[k];
    }
    let printed = LinearSection {
        generators: printed,
        ..section.clone()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = sample_e(&mut rng, 0);
    let zw = Ring::degrevlex(&SECTION_VARS[..4]);
    let len = |gens: Vec<Polynomial>| -> Result<String> {
        let gb = buchberger(&gens, zw.order())?;
        Ok(if gb.is_unit() {
            "empty".to_string()
        } else {
            match standard_monomials(&gb).count() {
                Some(n) => format!("length {n}"),
                None => "positive dimensional".to_string(),
            }
        })
    };
    cert.info(
        "middle-sign",
        format!(
            "at c = ({}): with S^2(Z,W) - D~ the fiber is {}; the flat family gives {}",
            c.iter().map(format_rational).collect::<Vec<_>>().join(", "),
            len(printed.fiber(&c)?)?,
            len(section.fiber(&c)?)?
        ),
    );
    Ok(())
}

pub(crate) fn certificate() -> Result<Certificate> {
    let deg6 = degree6_instance()?;
    let e = [1, 0, 0, 1].map(int);
    let section = LinearSection::new(&deg6, e)?;
    let mut cert = Certificate::new("s3-galois");
    cert.artifact(
        "section generators",
        serde_json::json!(texts(&section.generators)),
    );
    if section.generators.len() != 9 {
        return Err(Error::Internal("expected nine generators".into()));
    }
    // the shape S^2(Z) - C~ W, S^2(Z,W) + constants, S^2(W) - C~ Z
    let ring = &section.ring;
    let ct = c_tilde(ring)?;
    let cw = ct.mul(&column(ring, &["w1", "w2"])?)?.column(0);
    let cz = ct.mul(&column(ring, &["z1", "z2"])?)?.column(0);
    let q = parse_u(ring, &deg6_q_texts())?;
    let consts = constants(&section.generators);
    let mut shape_bad = Vec::new();
    for (i, g) in section.generators.iter().enumerate() {
        let want = match i {
            0..=2 => &q[i] - &cw[i],
            3..=5 => q[i].clone(),
            _ => &q[i] - &cz[i - 6],
        };
        if (g - &consts[i]) != want || !(3..=5).contains(&i) && !consts[i].is_zero() {
            shape_bad.push(format!("generator {}: {g}", i + 1));
        }
    }
    cert.check(
        "section-shape",
        shape_bad.is_empty(),
        if shape_bad.is_empty() {
            "S^2(Z) - C~W, S^2(Z,W) - const, S^2(W) - C~Z".to_string()
        } else {
            shape_bad.join("; ")
        },
    );
    printed_is_degenerate(&section, &mut cert)?;
    s3_invariance_check(&section, &mut cert)?;

    let qi = quotient_ideals(&section)?;
    cert.artifact("Z2 ideal", serde_json::json!(texts(&qi.z2)));
    cert.check(
        "z2-quotient",
        qi.z2_members && qi.z2_initial_ok,
        format!(
            "kappa = {}; members: {}; in(Z2) = (u1^2, u1*u2, u2^2): {}",
            qi.kappa
                .as_ref()
                .map(format_rational)
                .unwrap_or_else(|| "undetermined".into()),
            qi.z2_members,
            qi.z2_initial_ok
        ),
    );
    cert.check(
        "z3-constant",
        qi.z3_constant_ok,
        "the z,w-free part of the Z3 polynomial is -Delta_tc",
    );
    cert.check(
        "z3-quotient",
        qi.z3_member,
        format!(
            "((z1*w2 - z2*w1)/2)^2 - Delta_tc in the ideal: {}",
            qi.z3_member
        ),
    );
    if let Some(l) = &qi.z3_scale {
        cert.info(
            "z3-corrected",
            format!(
                "(z1*w2 - z2*w1)^2 - {}*Delta_tc is in the ideal",
                format_rational(l)
            ),
        );
    }
    Ok(cert)
}

fn deg6_q_texts() -> [&'static str; 9] {
    super::degree6::DEG6_Q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_is_symmetric_and_quotients_hold() {
        let cert = certificate().unwrap();
        for id in [
            "section-shape",
            "invariance-r",
            "invariance-iota",
            "group-relations",
            "z2-quotient",
            "z3-constant",
        ] {
            assert_eq!(
                cert.status_of(id),
                Some(super::super::Status::Pass),
                "{}",
                cert.report()
            );
        }
    }
}
