//! The cover-relation solver: deform `q_i` by linear and constant terms and
//! find the conditions under which the syzygies lift.

mod fiber;
mod json;
mod solve;

use crate::error::{Error, Result};
use crate::groebner::{min_generators, module_min_generators, syzygy_module, FreeModuleElement};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::Ring;

pub use fiber::{deformed_generators, format_point, verify_fiber, FiberReport};
pub use json::RelationsJson;
pub use solve::{
    build_system, cover_relations, relations_ideal, step2_eliminate_n, step3_solve_d, step4_check,
    CoverRelations, CoverSystem, CubicResidue, DStep, LinearStep,
};

/// Name of the homogenizing variable.
pub const HOMOGENIZER: &str = "z0";

/// Generators `q` of the initial ideal, with optional linear conditions on
/// the `c` unknowns and an optional explicit syzygy matrix.
#[derive(Clone, Debug)]
pub struct CoverProblem {
    ring: Ring,
    q: Vec<Polynomial>,
    trace_free: Vec<String>,
    syzygies: Option<PolyMatrix>,
}

impl CoverProblem {
    pub fn new(ring: &Ring, q: Vec<Polynomial>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::Hypothesis("no generators".into()));
        }
        if ring.index_of(HOMOGENIZER).is_some() {
            return Err(Error::Hypothesis(format!(
                "`{HOMOGENIZER}` is reserved for the homogenizing variable"
            )));
        }
        for (i, g) in q.iter().enumerate() {
            ring.check_same(g.ring(), "cover generator")?;
            if !g.is_homogeneous() || g.total_degree() != Some(2) {
                return Err(Error::Hypothesis(format!(
                    "q{i} = {g} is not a quadratic form"
                )));
            }
        }
        Ok(CoverProblem {
            ring: ring.clone(),
            q,
            trace_free: Vec::new(),
            syzygies: None,
        })
    }

    pub fn parse(fiber_vars: &[&str], q: &[&str]) -> Result<Self> {
        let ring = Ring::new(fiber_vars, Default::default())?;
        let q = q
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        CoverProblem::new(&ring, q)
    }

    /// Linear forms in the `c` unknowns, as text.
    pub fn with_trace_free<S: AsRef<str>>(mut self, forms: &[S]) -> Self {
        self.trace_free = forms.iter().map(|s| s.as_ref().to_string()).collect();
        self
    }

    /// Use the given columns as the syzygy matrix `l`. They must generate
    /// the first syzygy module of `q`.
    pub fn with_syzygies(mut self, l: PolyMatrix) -> Result<Self> {
        self.ring.check_same(l.ring(), "syzygy matrix")?;
        if l.rows() != self.q.len() {
            return Err(Error::Shape(format!(
                "syzygy matrix has {} rows for {} generators",
                l.rows(),
                self.q.len()
            )));
        }
        self.syzygies = Some(l);
        Ok(self)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn fiber_vars(&self) -> &[String] {
        self.ring.names()
    }

    pub fn q(&self) -> &[Polynomial] {
        &self.q
    }

    pub fn trace_free(&self) -> &[String] {
        &self.trace_free
    }

    /// Check the hypotheses and return the linear syzygy matrix.
    pub fn syzygy_matrix(&self) -> Result<PolyMatrix> {
        let m = self.q.len();
        if min_generators(&self.q)?.len() != m {
            return Err(Error::Hypothesis(
                "q is not a minimal generating set".into(),
            ));
        }
        let computed = module_min_generators(&syzygy_module(&self.q)?, &vec![2; m])?;
        for s in &computed {
            if s.components()
                .iter()
                .any(|c| c.total_degree().unwrap_or(0) > 1)
            {
                return Err(Error::Hypothesis(format!("syzygy {s} is not linear")));
            }
        }
        let cols: Vec<FreeModuleElement> = match &self.syzygies {
            None => computed,
            Some(l) => {
                let given: Vec<FreeModuleElement> = (0..l.cols())
                    .map(|j| FreeModuleElement::new(&self.ring, l.column(j)))
                    .collect::<Result<_>>()?;
                check_same_module(&given, &computed, m)?;
                given
            }
        };
        let mut l = PolyMatrix::zeros(&self.ring, m, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, e) in col.components().iter().enumerate() {
                l.set(i, j, e.clone());
            }
        }
        Ok(l)
    }
}

fn check_same_module(
    given: &[FreeModuleElement],
    computed: &[FreeModuleElement],
    m: usize,
) -> Result<()> {
    use crate::groebner::module_groebner;
    if given.len() != computed.len() {
        return Err(Error::Hypothesis(format!(
            "{} syzygies supplied, the module needs {}",
            given.len(),
            computed.len()
        )));
    }
    let order = given.first().map(|g| g.ring().order()).unwrap_or_default();
    let twists = vec![2; m];
    let a = module_groebner(given, &twists, order)?;
    let b = module_groebner(computed, &twists, order)?;
    for s in computed {
        if !a.contains_element(s)? {
            return Err(Error::Hypothesis(format!("supplied syzygies miss {s}")));
        }
    }
    for s in given {
        if !b.contains_element(s)? {
            return Err(Error::Hypothesis(format!("{s} is not a syzygy")));
        }
    }
    Ok(())
}

/// Names of the unknowns: `c` is `m x r`, `d` has length `m`, `n` is
/// `m x n2` with one column per syzygy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownLayout {
    pub c: Vec<Vec<String>>,
    pub d: Vec<String>,
    pub n: Vec<Vec<String>>,
}

impl UnknownLayout {
    pub fn new(m: usize, r: usize, syzygies: usize) -> Self {
        let compact = m <= 10 && r <= 10;
        let c = (0..m)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if compact {
                            format!("c{i}{j}")
                        } else {
                            format!("c{i}_{j}")
                        }
                    })
                    .collect()
            })
            .collect();
        let d = (0..m).map(|i| format!("d{i}")).collect();
        let n = (0..m)
            .map(|i| (0..syzygies).map(|j| format!("n{i}_{j}")).collect())
            .collect();
        UnknownLayout { c, d, n }
    }

    pub fn generators(&self) -> usize {
        self.d.len()
    }

    pub fn c_names(&self) -> Vec<String> {
        self.c.iter().flatten().cloned().collect()
    }

    pub fn n_names(&self) -> Vec<String> {
        self.n.iter().flatten().cloned().collect()
    }
}

#[cfg(test)]
mod tests;
