//! Arithmetic over `Q(eps)`, `eps^2 + eps + 1 = 0`, as normal forms modulo
//! the cyclotomic polynomial.

use crate::error::Result;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::Ring;

pub const EPS: &str = "eps";

#[derive(Clone, Debug)]
pub struct CycloContext {
    ring: Ring,
    modulus: Polynomial,
    gb: GroebnerBasis,
}

impl CycloContext {
    /// Polynomials in `vars` with coefficients in `Q(eps)`; `eps` is
    /// appended as the last variable.
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        let mut names: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        names.push(EPS.to_string());
        let ring = Ring::new(&names, Default::default())?;
        let modulus = ring.parse("eps^2 + eps + 1")?;
        let gb = buchberger(std::slice::from_ref(&modulus), ring.order())?;
        Ok(CycloContext { ring, modulus, gb })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn eps(&self) -> Polynomial {
        self.ring.gen(self.ring.arity() - 1)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        self.ring.parse(text)
    }

    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        self.gb.normal_form(p)
    }

    pub fn is_zero(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Basis of the ideal generated by `gens` over `Q(eps)`.
    pub fn groebner(&self, gens: &[Polynomial]) -> Result<GroebnerBasis> {
        let mut all = gens.to_vec();
        all.push(self.modulus.clone());
        buchberger(&all, self.ring.order())
    }

    pub fn reduce_matrix(&self, m: &PolyMatrix) -> Result<PolyMatrix> {
        let rows = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|p| self.reduce(p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(&self.ring, rows)
    }

    pub fn mul(&self, a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
        self.reduce_matrix(&a.mul(b)?)
    }

    pub fn pow(&self, a: &PolyMatrix, e: u32) -> Result<PolyMatrix> {
        let mut acc = PolyMatrix::identity(&self.ring, a.rows());
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_root_identities() {
        let k = CycloContext::new::<&str>(&[]).unwrap();
        let e = k.eps();
        assert!(k.is_zero(&(&e.pow(3) - &k.ring().one())).unwrap());
        assert!(k.is_zero(&(&(&k.ring().one() + &e) + &e.pow(2))).unwrap());
        assert!(!k.is_zero(&(&e - &k.ring().one())).unwrap());
        assert_eq!(k.reduce(&e.pow(5)).unwrap(), k.parse("-eps - 1").unwrap());
    }
}
