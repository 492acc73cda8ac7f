//! Matrices with polynomial entries.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::subst::Substitution;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            ring.check_same(e.ring(), "matrix entry")?;
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        PolyMatrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    /// Parse a matrix given as rows of polynomial text.
    pub fn parse_rows(ring: &Ring, rows: &[&[&str]]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| ring.parse(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(ring, parsed)
    }

    pub fn row_vector(ring: &Ring, entries: Vec<Polynomial>) -> Result<Self> {
        let n = entries.len();
        PolyMatrix::new(ring, 1, n, entries)
    }

    pub fn column_vector(ring: &Ring, entries: Vec<Polynomial>) -> Result<Self> {
        let n = entries.len();
        PolyMatrix::new(ring, n, 1, entries)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Polynomial) {
        assert!(self.ring == *value.ring(), "entry from another ring");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> Vec<Polynomial> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.check_same(&other.ring, "matrix product")?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &PolyMatrix,
        what: &str,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> Result<PolyMatrix> {
        self.ring.check_same(&other.ring, what)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{what}: {}x{} versus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, "matrix sum", |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, "matrix difference", |a, b| a - b)
    }

    pub fn scale(&self, p: &Polynomial) -> PolyMatrix {
        self.map(|e| e * p)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        let entries: Vec<_> = self.entries.iter().map(f).collect();
        let ring = entries
            .first()
            .map_or(self.ring.clone(), |e| e.ring().clone());
        PolyMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn substitute(&self, s: &Substitution) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| s.apply(e))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(s.codomain(), self.rows, self.cols, entries)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (i + 1..self.cols).all(|j| *self.get(i, j) == -self.get(j, i))
            })
    }

    /// Minor obtained by deleting the listed rows and columns.
    pub fn minor(&self, drop_rows: &[usize], drop_cols: &[usize]) -> PolyMatrix {
        let keep_r: Vec<usize> = (0..self.rows).filter(|r| !drop_rows.contains(r)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|c| !drop_cols.contains(c)).collect();
        let mut entries = Vec::with_capacity(keep_r.len() * keep_c.len());
        for &r in &keep_r {
            for &c in &keep_c {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix {
            ring: self.ring.clone(),
            rows: keep_r.len(),
            cols: keep_c.len(),
            entries,
        }
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(self.det_rec())
    }

    fn det_rec(&self) -> Polynomial {
        match self.rows {
            0 => self.ring.one(),
            1 => self.get(0, 0).clone(),
            2 => self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            n => {
                let mut acc = self.ring.zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let sub = self.minor(&[0], &[j]).det_rec();
                    let term = a * &sub;
                    acc = if j % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                acc
            }
        }
    }

    /// Pfaffian of a skew-symmetric matrix of even size, by expansion along
    /// the first row.
    pub fn pfaffian(&self) -> Result<Polynomial> {
        if !self.is_skew_symmetric() {
            return Err(Error::Shape(
                "Pfaffian needs a skew-symmetric matrix".into(),
            ));
        }
        if self.rows % 2 == 1 {
            return Ok(self.ring.zero());
        }
        Ok(self.pf_rec())
    }

    fn pf_rec(&self) -> Polynomial {
        if self.rows == 0 {
            return self.ring.one();
        }
        let mut acc = self.ring.zero();
        for j in 1..self.rows {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let term = a * &self.minor(&[0, j], &[0, j]).pf_rec();
            acc = if j % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    /// Aligned text rendering, one row per line.
    pub fn to_text(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let mut widths = vec![0; self.cols];
        for (k, s) in cells.iter().enumerate() {
            widths[k % self.cols.max(1)] = widths[k % self.cols.max(1)].max(s.chars().count());
        }
        let mut out = String::new();
        for r in 0..self.rows {
            out.push('[');
            for c in 0..self.cols {
                let s = &cells[r * self.cols + c];
                if c > 0 {
                    out.push_str(", ");
                }
                out.push_str(s);
                if c + 1 < self.cols {
                    out.extend(std::iter::repeat_n(' ', widths[c] - s.chars().count()));
                }
            }
            out.push_str("]\n");
        }
        out
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `m12*m34 - m13*m24 + m14*m23` for a 4x4 skew-symmetric matrix.
pub fn pfaffian4(m: &PolyMatrix) -> Result<Polynomial> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::Shape(format!(
            "pfaffian4 needs a 4x4 matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_skew_symmetric() {
        return Err(Error::Shape(
            "pfaffian4 needs a skew-symmetric matrix".into(),
        ));
    }
    Ok(m.get(0, 1) * m.get(2, 3) - m.get(0, 2) * m.get(1, 3) + m.get(0, 3) * m.get(1, 2))
}

/// Skew-symmetric matrix from its strict upper triangle, row by row.
pub fn skew_from_upper(ring: &Ring, n: usize, upper: Vec<Polynomial>) -> Result<PolyMatrix> {
    if upper.len() != n * (n - 1) / 2 {
        return Err(Error::Shape(format!(
            "{} upper entries for a {n}x{n} skew matrix",
            upper.len()
        )));
    }
    let mut m = PolyMatrix::zeros(ring, n, n);
    let mut it = upper.into_iter();
    for i in 0..n {
        for j in i + 1..n {
            let e = it.next().expect("counted");
            m.set(j, i, -&e);
            m.set(i, j, e);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_product_vanishes() {
        let r = Ring::degrevlex(&["z1", "z2"]);
        let q = PolyMatrix::parse_rows(&r, &[&["z1^2", "z1*z2", "z2^2"]]).unwrap();
        let l = PolyMatrix::parse_rows(&r, &[&["z2"], &["-z1"], &["0"]]).unwrap();
        assert!(q.mul(&l).unwrap().is_zero());
        let l2 =
            PolyMatrix::parse_rows(&r, &[&["0", "z2"], &["-z2", "-z1"], &["z1", "0"]]).unwrap();
        assert_eq!(q.mul(&l2).unwrap(), PolyMatrix::zeros(&r, 1, 2));
    }

    #[test]
    fn identity_is_neutral() {
        let r = Ring::degrevlex(&["x", "y"]);
        let a = PolyMatrix::parse_rows(&r, &[&["x", "y^2", "1"], &["0", "x*y", "-3"]]).unwrap();
        assert_eq!(a.mul(&PolyMatrix::identity(&r, 3)).unwrap(), a);
        assert!(matches!(a.mul(&a), Err(Error::Shape(_))));
    }

    #[test]
    fn generic_pfaffian() {
        let r = Ring::degrevlex(&["a12", "a13", "a14", "a23", "a24", "a34"]);
        let m = skew_from_upper(&r, 4, r.vars()).unwrap();
        let pf = pfaffian4(&m).unwrap();
        assert_eq!(pf, r.parse("a12*a34 - a13*a24 + a14*a23").unwrap());
        assert_eq!(&pf * &pf, m.determinant().unwrap());
        assert_eq!(m.pfaffian().unwrap(), pf);
        assert!(pfaffian4(&PolyMatrix::zeros(&r, 4, 4)).unwrap().is_zero());
    }

    #[test]
    fn pfaffian_rejects_bad_input() {
        let r = Ring::degrevlex(&["x"]);
        assert!(matches!(
            pfaffian4(&PolyMatrix::identity(&r, 4)),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            pfaffian4(&PolyMatrix::zeros(&r, 3, 3)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn aligned_text() {
        let r = Ring::degrevlex(&["c0", "c1"]);
        let m = PolyMatrix::parse_rows(&r, &[&["c0", "2*c1"], &["-c1", "0"]]).unwrap();
        assert_eq!(m.to_text(), "[c0 , 2*c1]\n[-c1, 0]\n");
    }
}
