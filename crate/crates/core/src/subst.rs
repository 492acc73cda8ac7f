//! Ring homomorphisms given by images of variables.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Sends each variable of `domain` to a polynomial in `codomain`.
/// Unmapped variables go to the variable of the same name in the codomain.
#[derive(Clone, Debug)]
pub struct Substitution {
    domain: Ring,
    codomain: Ring,
    images: BTreeMap<usize, Polynomial>,
}

impl Substitution {
    pub fn new(domain: &Ring, codomain: &Ring) -> Self {
        Substitution {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images: BTreeMap::new(),
        }
    }

    /// Endomorphism of a single ring.
    pub fn within(ring: &Ring) -> Self {
        Substitution::new(ring, ring)
    }

    pub fn domain(&self) -> &Ring {
        &self.domain
    }

    pub fn codomain(&self) -> &Ring {
        &self.codomain
    }

    pub fn set(&mut self, var: usize, image: Polynomial) -> Result<&mut Self> {
        self.codomain
            .check_same(image.ring(), "substitution image")?;
        if var >= self.domain.arity() {
            return Err(Error::Shape(format!("variable index {var} out of range")));
        }
        self.images.insert(var, image);
        Ok(self)
    }

    /// Map by name; the image is parsed in the codomain.
    pub fn set_text(&mut self, var: &str, image: &str) -> Result<&mut Self> {
        let v = self.domain.require_index(var)?;
        let p = self.codomain.parse(image)?;
        self.set(v, p)
    }

    pub fn with(mut self, var: &str, image: &str) -> Result<Self> {
        self.set_text(var, image)?;
        Ok(self)
    }

    pub fn image_of(&self, var: usize) -> Option<&Polynomial> {
        self.images.get(&var)
    }

    pub fn images(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.images.iter().map(|(&k, v)| (k, v))
    }

    fn resolve(&self) -> Result<Vec<Option<Polynomial>>> {
        (0..self.domain.arity())
            .map(|i| match self.images.get(&i) {
                Some(p) => Ok(Some(p.clone())),
                None => Ok(self
                    .codomain
                    .index_of(self.domain.name(i))
                    .map(|j| self.codomain.gen(j))),
            })
            .collect()
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.domain.check_same(f.ring(), "substitute")?;
        let images = self.resolve()?;
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(&self.codomain);
        for t in f.terms() {
            let mut prod = Polynomial::constant(&self.codomain, t.coeff.clone());
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i]
                    .as_ref()
                    .ok_or_else(|| Error::UnmappedVariable(self.domain.name(i).to_string()))?;
                let pw = powers.entry((i, e)).or_insert_with(|| img.pow(e)).clone();
                prod = &prod * &pw;
            }
            acc = &acc + &prod;
        }
        Ok(acc)
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &Substitution) -> Result<Substitution> {
        self.codomain.check_same(&other.domain, "compose")?;
        let images = self.resolve()?;
        let mut out = Substitution::new(&self.domain, &other.codomain);
        for (i, img) in images.into_iter().enumerate() {
            if let Some(img) = img {
                out.images.insert(i, other.apply(&img)?);
            }
        }
        Ok(out)
    }

    /// True when every image is a linear form without constant term.
    pub fn is_linear(&self) -> bool {
        self.images
            .values()
            .all(|p| p.terms().iter().all(|t| t.mono.degree() == 1))
    }

    /// Coefficient matrix of a linear substitution: rows are the mapped
    /// domain variables (ascending), columns the codomain variables.
    pub fn linear_matrix(&self) -> Result<Vec<Vec<crate::rational::Rational>>> {
        let mut rows = Vec::new();
        for p in self.images.values() {
            let (coeffs, constant) = p.linear_coefficients()?;
            if !constant.is_zero() {
                return Err(Error::Degree(format!("affine image {p}")));
            }
            rows.push(coeffs);
        }
        Ok(rows)
    }
}

/// Apply `s` to each polynomial.
pub fn substitute_all(s: &Substitution, fs: &[Polynomial]) -> Result<Vec<Polynomial>> {
    fs.iter().map(|f| s.apply(f)).collect()
}

/// Variable-only substitution helper used to permute variables.
pub fn rename(domain: &Ring, codomain: &Ring, pairs: &[(&str, &str)]) -> Result<Substitution> {
    let mut s = Substitution::new(domain, codomain);
    for (from, to) in pairs {
        let v = domain.require_index(from)?;
        let w = codomain.require_index(to)?;
        s.set(v, codomain.gen(w))?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_free_shift_shape() {
        let r = Ring::degrevlex(&["z0", "c32", "c43"]);
        let s = Substitution::within(&r)
            .with("z0", "z0 - (c32 + c43)")
            .unwrap();
        let f = r.parse("z0^2").unwrap();
        let expect = r.parse("z0^2 - 2*(c32 + c43)*z0 + (c32 + c43)^2").unwrap();
        assert_eq!(s.apply(&f).unwrap(), expect);
    }

    #[test]
    fn identity_leaves_input() {
        let r = Ring::degrevlex(&["x", "y"]);
        let f = r.parse("x^3 - 1/2*x*y + 7").unwrap();
        assert_eq!(Substitution::within(&r).apply(&f).unwrap(), f);
    }

    #[test]
    fn spinor_coordinate_image() {
        let xi = Ring::degrevlex(&["x0", "x2345"]);
        let c = Ring::degrevlex(&["c11", "c02"]);
        let s = Substitution::new(&xi, &c)
            .with("x0", "3*c11")
            .unwrap()
            .with("x2345", "-c02")
            .unwrap();
        let f = xi.parse("x0*x2345").unwrap();
        assert_eq!(s.apply(&f).unwrap(), c.parse("-3*c11*c02").unwrap());
    }

    #[test]
    fn unmapped_foreign_variable() {
        let a = Ring::degrevlex(&["x", "t"]);
        let b = Ring::degrevlex(&["x"]);
        let s = Substitution::new(&a, &b);
        assert!(s.apply(&a.parse("x + 1").unwrap()).is_ok());
        assert!(matches!(
            s.apply(&a.parse("t*x").unwrap()),
            Err(Error::UnmappedVariable(_))
        ));
    }

    #[test]
    fn composition() {
        let r = Ring::degrevlex(&["x", "y"]);
        let s = Substitution::within(&r).with("x", "x + y").unwrap();
        let t = Substitution::within(&r).with("y", "2*y").unwrap();
        let f = r.parse("x^2").unwrap();
        let st = s.then(&t).unwrap();
        assert_eq!(
            st.apply(&f).unwrap(),
            t.apply(&s.apply(&f).unwrap()).unwrap()
        );
    }
}
