//! Entry matching between computed and displayed matrices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::rational::{format_rational, Rational};
use crate::ring::Ring;
use crate::subst::Substitution;

fn single_variable(p: &Polynomial) -> Option<(Rational, usize)> {
    match p.terms() {
        [t] if t.mono.degree() == 1 => Some((t.coeff.clone(), t.mono.pure_power()?)),
        _ => None,
    }
}

/// Read off `x -> s*y` from every pair of entries that are both a signed
/// single variable, and insist the readings agree. Other entries are left
/// to the caller's consistency check.
pub fn derive_renaming(from: &PolyMatrix, to: &PolyMatrix) -> Result<Substitution> {
    if (from.rows(), from.cols()) != (to.rows(), to.cols()) {
        return Err(Error::Shape(
            "renaming between matrices of different shape".into(),
        ));
    }
    let mut map: BTreeMap<usize, (Rational, usize, (usize, usize))> = BTreeMap::new();
    for i in 0..from.rows() {
        for j in 0..from.cols() {
            let (Some((a, x)), Some((b, y))) = (
                single_variable(from.get(i, j)),
                single_variable(to.get(i, j)),
            ) else {
                continue;
            };
            let s = b / a;
            match map.get(&x) {
                Some((s0, y0, at)) if (s0, *y0) != (&s, y) => {
                    return Err(Error::Regression(format!(
                        "{} read as {}*{} at entry {:?} but as {}*{} at entry ({i}, {j})",
                        from.ring().name(x),
                        format_rational(s0),
                        to.ring().name(*y0),
                        at,
                        format_rational(&s),
                        to.ring().name(y)
                    )));
                }
                Some(_) => {}
                None => {
                    map.insert(x, (s, y, (i, j)));
                }
            }
        }
    }
    let mut targets = BTreeMap::new();
    for (x, (_, y, at)) in &map {
        if let Some(prev) = targets.insert(*y, (*x, *at)) {
            return Err(Error::Regression(format!(
                "{} and {} both map to {}",
                from.ring().name(prev.0),
                from.ring().name(*x),
                to.ring().name(*y)
            )));
        }
    }
    let mut sub = Substitution::new(from.ring(), to.ring());
    for (x, (s, y, _)) in map {
        sub.set(x, to.ring().gen(y).scale(&s))?;
    }
    Ok(sub)
}

/// Positions where `got` and `want` differ, with both values.
pub fn entry_mismatches(got: &PolyMatrix, want: &PolyMatrix) -> Vec<String> {
    let mut out = Vec::new();
    if (got.rows(), got.cols()) != (want.rows(), want.cols()) {
        out.push(format!(
            "shape {}x{} vs {}x{}",
            got.rows(),
            got.cols(),
            want.rows(),
            want.cols()
        ));
        return out;
    }
    for i in 0..got.rows() {
        for j in 0..got.cols() {
            if got.get(i, j) != want.get(i, j) {
                out.push(format!(
                    "entry ({i}, {j}): computed {}, expected {}",
                    got.get(i, j),
                    want.get(i, j)
                ));
            }
        }
    }
    out
}

/// For each `wanted` polynomial, the index of a `pool` element it is a
/// nonzero scalar multiple of, with that scalar.
pub fn scalar_match(wanted: &[Polynomial], pool: &[Polynomial]) -> Vec<Option<(usize, Rational)>> {
    wanted
        .iter()
        .map(|w| {
            pool.iter()
                .enumerate()
                .find_map(|(k, p)| w.scalar_ratio(p).map(|s| (k, s)))
        })
        .collect()
}

pub(crate) fn to_ring(m: &PolyMatrix, ring: &Ring) -> Result<PolyMatrix> {
    let rows = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|p| p.to_ring(ring))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(ring, rows)
}

pub(crate) fn texts(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

pub(crate) fn matrix_rows(m: &PolyMatrix) -> Vec<String> {
    (0..m.rows())
        .map(|i| format!("[{}]", texts(&m.row(i)).join(", ")))
        .collect()
}

pub(crate) fn parse_all<S: AsRef<str>>(ring: &Ring, texts: &[S]) -> Result<Vec<Polynomial>> {
    texts.iter().map(|t| ring.parse(t.as_ref())).collect()
}

pub(crate) fn describe_renaming(s: &Substitution) -> String {
    s.images()
        .map(|(v, p)| format!("{}->{}", s.domain().name(v), p))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consistent_signed_renaming() {
        let a = Ring::degrevlex(&["x", "y"]);
        let b = Ring::degrevlex(&["u", "v"]);
        let m = PolyMatrix::parse_rows(&a, &[&["x", "-y"], &["x + y", "2*x"]]).unwrap();
        let n = PolyMatrix::parse_rows(&b, &[&["-v", "u"], &["-u - v", "-2*v"]]).unwrap();
        let s = derive_renaming(&m, &n).unwrap();
        assert!(entry_mismatches(&m.substitute(&s).unwrap(), &n).is_empty());
    }

    #[test]
    fn conflicting_readings_are_reported() {
        let a = Ring::degrevlex(&["x", "y"]);
        let m = PolyMatrix::parse_rows(&a, &[&["x", "x"]]).unwrap();
        let n = PolyMatrix::parse_rows(&a, &[&["y", "-y"]]).unwrap();
        assert!(matches!(derive_renaming(&m, &n), Err(Error::Regression(_))));
    }

    #[test]
    fn scalar_multiples() {
        let a = Ring::degrevlex(&["x", "y"]);
        let w = vec![a.parse("2*x*y - 4*y^2").unwrap()];
        let pool = vec![a.parse("x^2").unwrap(), a.parse("-x*y + 2*y^2").unwrap()];
        let m = scalar_match(&w, &pool);
        assert_eq!(m[0].as_ref().unwrap().0, 1);
    }
}
