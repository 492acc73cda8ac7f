//! Steps (1) to (4) of the graded extension algorithm.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{CoverProblem, UnknownLayout, HOMOGENIZER};
use crate::error::{Error, Result};
use crate::groebner::{min_generators_echelon, Ideal};
use crate::linalg::rref_ordered;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::ring::{valid_name, Ring};
use crate::subst::Substitution;

/// The expanded product `(q - zC z0 - D z0^2)(l + N z0)` over the combined
/// ring `(z0, fiber, n, d, c)`.
#[derive(Clone, Debug)]
pub struct CoverSystem {
    pub problem: CoverProblem,
    pub l: PolyMatrix,
    pub layout: UnknownLayout,
    pub ring: Ring,
    pub c_ring: Ring,
    pub product: PolyMatrix,
    fiber_axes: Vec<usize>,
}

impl CoverSystem {
    fn axes(&self) -> Vec<usize> {
        let mut a = vec![0];
        a.extend(&self.fiber_axes);
        a
    }

    /// Coefficients of the product by (entry, z0 power, fiber monomial).
    fn strata(&self) -> Vec<(usize, u32, Vec<u32>, Polynomial)> {
        let axes = self.axes();
        let mut out = Vec::new();
        for (k, e) in self.product.entries().iter().enumerate() {
            for (key, coeff) in e.coefficients_along(&axes) {
                out.push((k, key[0], key[1..].to_vec(), coeff));
            }
        }
        out
    }

    fn index(&self, name: &str) -> usize {
        self.ring.index_of(name).expect("layout name")
    }
}

pub fn build_system(problem: &CoverProblem) -> Result<CoverSystem> {
    let l = problem.syzygy_matrix()?;
    let q = problem.q();
    let (m, r, n2) = (q.len(), problem.ring().arity(), l.cols());
    let layout = UnknownLayout::new(m, r, n2);

    let mut names: Vec<String> = vec![HOMOGENIZER.to_string()];
    names.extend(problem.fiber_vars().iter().cloned());
    names.extend(layout.n_names());
    names.extend(layout.d.iter().cloned());
    names.extend(layout.c_names());
    for f in problem.fiber_vars() {
        if names.iter().filter(|n| *n == f).count() > 1 {
            return Err(Error::Precondition(format!(
                "fiber variable `{f}` clashes with an unknown"
            )));
        }
    }
    debug_assert!(names.iter().all(|n| valid_name(n)));
    let ring = Ring::degrevlex(&names);
    let c_ring = Ring::degrevlex(&layout.c_names());

    // step (1)
    let qrow = PolyMatrix::row_vector(problem.ring(), q.to_vec())?;
    if !qrow.mul(&l)?.is_zero() {
        return Err(Error::Internal("q * l is not zero".into()));
    }

    let z0 = ring.gen(0);
    let fiber: Vec<Polynomial> = (0..r).map(|j| ring.gen(1 + j)).collect();
    let var = |n: &str| ring.var(n).expect("layout name");
    let mut frow = Vec::with_capacity(m);
    for i in 0..m {
        let mut f = q[i].to_ring(&ring)?;
        let mut lin = ring.zero();
        for (j, z) in fiber.iter().enumerate() {
            lin = &lin + &(&var(&layout.c[i][j]) * z);
        }
        f = &f - &(&lin * &z0);
        f = &f - &(&var(&layout.d[i]) * &z0.pow(2));
        frow.push(f);
    }
    let frow = PolyMatrix::row_vector(&ring, frow)?;
    let mut lifted = PolyMatrix::zeros(&ring, m, n2);
    for i in 0..m {
        for j in 0..n2 {
            let e = &l.get(i, j).to_ring(&ring)? + &(&var(&layout.n[i][j]) * &z0);
            lifted.set(i, j, e);
        }
    }
    let product = frow.mul(&lifted)?;
    Ok(CoverSystem {
        problem: problem.clone(),
        l,
        layout,
        ring,
        c_ring,
        product,
        fiber_axes: (1..=r).collect(),
    })
}

/// Outcome of step (2).
#[derive(Clone, Debug)]
pub struct LinearStep {
    /// `n_ij` as linear forms in the free `c`'s.
    pub n_subst: Vec<(String, Polynomial)>,
    /// Pivot `c`'s as linear forms in the free ones.
    pub c_subst: Vec<(String, Polynomial)>,
    pub free_c: Vec<String>,
    /// Linear forms (in the `c` ring) that vanish.
    pub linear_relations: Vec<Polynomial>,
}

impl LinearStep {
    /// Substitution on the combined ring eliminating `n` and pivot `c`.
    fn substitution(&self, sys: &CoverSystem) -> Result<Substitution> {
        let mut s = Substitution::within(&sys.ring);
        for (name, p) in self.n_subst.iter().chain(&self.c_subst) {
            s.set(sys.index(name), p.to_ring(&sys.ring)?)?;
        }
        Ok(s)
    }
}

fn linear_row(p: &Polynomial, cols: &[usize]) -> Result<Vec<Rational>> {
    let (coeffs, constant) = p.linear_coefficients()?;
    if !constant.is_zero() {
        return Err(Error::Internal(format!("affine equation {p}")));
    }
    if (0..coeffs.len()).any(|v| !cols.contains(&v) && !coeffs[v].is_zero()) {
        return Err(Error::Internal(format!("equation {p} leaves the unknowns")));
    }
    Ok(cols.iter().map(|&c| coeffs[c].clone()).collect())
}

/// Step (2): from the `z0` stratum, solve for every `n` and collect the
/// linear relations among the `c`'s, together with `trace_free`.
pub fn step2_eliminate_n(sys: &CoverSystem, trace_free: &[Polynomial]) -> Result<LinearStep> {
    let n_names = sys.layout.n_names();
    let c_names = sys.layout.c_names();
    let cols: Vec<usize> = n_names
        .iter()
        .chain(&c_names)
        .map(|n| sys.index(n))
        .collect();
    let mut rows = Vec::new();
    for (_, z0_power, _, coeff) in sys.strata() {
        if z0_power == 1 {
            rows.push(linear_row(&coeff, &cols)?);
        }
    }
    for t in trace_free {
        let p = t.to_ring(&sys.ring)?;
        rows.push(linear_row(&p, &cols).map_err(|_| {
            Error::Precondition(format!(
                "trace condition {t} is not a linear form in the c's"
            ))
        })?);
    }
    let order: Vec<usize> = (0..cols.len()).collect();
    let ech = rref_ordered(rows, &order);
    let nn = n_names.len();
    let pivots: Vec<bool> = {
        let mut p = vec![false; cols.len()];
        for &k in &ech.pivots {
            p[k] = true;
        }
        p
    };
    if let Some(k) = (0..nn).find(|&k| !pivots[k]) {
        return Err(Error::Internal(format!(
            "{} is not determined by the linear system",
            n_names[k]
        )));
    }
    let c_ring = &sys.c_ring;
    let free_c: Vec<String> = (nn..cols.len())
        .filter(|&k| !pivots[k])
        .map(|k| c_names[k - nn].clone())
        .collect();
    let mut n_subst = Vec::new();
    let mut c_subst = Vec::new();
    let mut linear = Vec::new();
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        let mut expr = c_ring.zero();
        for k in nn..cols.len() {
            if k != p && !row[k].is_zero() {
                let v = c_ring.gen(k - nn);
                expr = expr.add_scaled(&v, &-row[k].clone());
            }
        }
        if p < nn {
            n_subst.push((n_names[p].clone(), expr));
        } else {
            let v = c_ring.gen(p - nn);
            linear.push(&v - &expr);
            c_subst.push((c_names[p - nn].clone(), expr));
        }
    }
    // keep the layout order for n
    n_subst.sort_by_key(|(n, _)| n_names.iter().position(|x| x == n));
    Ok(LinearStep {
        n_subst,
        c_subst,
        free_c,
        linear_relations: linear,
    })
}

/// Outcome of step (3).
#[derive(Clone, Debug)]
pub struct DStep {
    /// `d_i = h_i(c)`.
    pub d_exprs: Vec<Polynomial>,
    /// All residual constraints before minimization.
    pub residuals: Vec<Polynomial>,
    /// Minimal generators of `I_q` (echelon form).
    pub quadratic_relations: Vec<Polynomial>,
}

/// Step (3): solve the `z0^2` stratum for `d` and keep what is left over.
pub fn step3_solve_d(sys: &CoverSystem, lin: &LinearStep) -> Result<DStep> {
    let sigma = lin.substitution(sys)?;
    let m = sys.layout.generators();
    let d_idx: Vec<usize> = sys.layout.d.iter().map(|n| sys.index(n)).collect();
    let mut rows: Vec<(Vec<Rational>, Polynomial)> = Vec::new();
    for (_, z0_power, mono, coeff) in sys.strata() {
        if z0_power != 2 {
            continue;
        }
        debug_assert_eq!(mono.iter().sum::<u32>(), 1);
        let p = sigma.apply(&coeff)?;
        let mut a = vec![Rational::zero(); m];
        let mut rest = Vec::new();
        for t in p.terms() {
            match d_idx.iter().position(|&di| t.mono.exponent(di) > 0) {
                Some(i) if t.mono.degree() == 1 => a[i] = t.coeff.clone(),
                Some(_) => return Err(Error::Internal(format!("nonlinear d term in {p}"))),
                None => rest.push((t.coeff.clone(), t.mono.clone())),
            }
        }
        let h = Polynomial::from_terms(&sys.ring, rest).to_ring(&sys.c_ring)?;
        rows.push((a, h));
    }
    // Gaussian elimination on the d columns, carrying the right-hand sides
    let mut pivot_of = vec![None; m];
    let mut next = 0;
    for col in 0..m {
        let Some(found) = (next..rows.len()).find(|&k| !rows[k].0[col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = Rational::one() / &rows[next].0[col];
        let (a, h) = &mut rows[next];
        for x in a.iter_mut() {
            *x *= &inv;
        }
        *h = h.scale(&inv);
        let (pa, ph) = rows[next].clone();
        for (k, (a, h)) in rows.iter_mut().enumerate() {
            if k == next || a[col].is_zero() {
                continue;
            }
            let f = a[col].clone();
            for (x, y) in a.iter_mut().zip(&pa) {
                *x -= &f * y;
            }
            *h = h.add_scaled(&ph, &-f);
        }
        pivot_of[col] = Some(next);
        next += 1;
    }
    let mut d_exprs = Vec::with_capacity(m);
    for (i, p) in pivot_of.iter().enumerate() {
        match p {
            Some(k) => d_exprs.push(-&rows[*k].1),
            None => {
                return Err(Error::Internal(format!(
                    "{} is not determined",
                    sys.layout.d[i]
                )))
            }
        }
    }
    let residuals: Vec<Polynomial> = rows[next..]
        .iter()
        .map(|(_, h)| h.clone())
        .filter(|h| !h.is_zero())
        .collect();
    let quadratic_relations = min_generators_echelon(&residuals)?;
    Ok(DStep {
        d_exprs,
        residuals,
        quadratic_relations,
    })
}

#[derive(Clone, Debug)]
pub struct CubicResidue {
    pub entry: usize,
    pub polynomial: Polynomial,
    pub residue: Polynomial,
}

fn full_substitution(sys: &CoverSystem, lin: &LinearStep, dstep: &DStep) -> Result<Substitution> {
    let mut s = lin.substitution(sys)?;
    for (i, name) in sys.layout.d.iter().enumerate() {
        s.set(sys.index(name), dstep.d_exprs[i].to_ring(&sys.ring)?)?;
    }
    Ok(s)
}

/// The ideal generated by the linear and quadratic relations.
pub fn relations_ideal(sys: &CoverSystem, lin: &LinearStep, dstep: &DStep) -> Result<Ideal> {
    let mut gens = lin.linear_relations.clone();
    gens.extend(dstep.quadratic_relations.iter().cloned());
    Ideal::new(&sys.c_ring, gens)
}

/// Step (4): the `z0^3` stratum after substitution, reduced modulo the
/// relations found so far.
pub fn step4_check(
    sys: &CoverSystem,
    lin: &LinearStep,
    dstep: &DStep,
) -> Result<Vec<CubicResidue>> {
    let s = full_substitution(sys, lin, dstep)?;
    let gb = relations_ideal(sys, lin, dstep)?.groebner()?;
    let mut out = Vec::new();
    for (entry, z0_power, _, coeff) in sys.strata() {
        if z0_power != 3 {
            continue;
        }
        let p = s.apply(&coeff)?.to_ring(&sys.c_ring)?;
        let residue = gb.normal_form(&p)?;
        out.push(CubicResidue {
            entry,
            polynomial: p,
            residue,
        });
    }
    Ok(out)
}

/// Everything the solver produces for one problem.
#[derive(Clone, Debug)]
pub struct CoverRelations {
    pub system: CoverSystem,
    pub linear: LinearStep,
    pub dstep: DStep,
    pub cubic_residues: Vec<CubicResidue>,
}

/// Run steps (1) to (4) and certify the product identity modulo the
/// relations before returning.
pub fn cover_relations(problem: &CoverProblem) -> Result<CoverRelations> {
    let sys = build_system(problem)?;
    let trace_free = problem
        .trace_free()
        .iter()
        .map(|t| sys.c_ring.parse(t))
        .collect::<Result<Vec<_>>>()?;
    let linear = step2_eliminate_n(&sys, &trace_free)?;
    let dstep = step3_solve_d(&sys, &linear)?;
    let cubic_residues = step4_check(&sys, &linear, &dstep)?;
    let rel = CoverRelations {
        system: sys,
        linear,
        dstep,
        cubic_residues,
    };
    rel.certify()?;
    Ok(rel)
}

impl CoverRelations {
    pub fn c_ring(&self) -> &Ring {
        &self.system.c_ring
    }

    pub fn layout(&self) -> &UnknownLayout {
        &self.system.layout
    }

    pub fn n_subst(&self) -> &[(String, Polynomial)] {
        &self.linear.n_subst
    }

    pub fn c_subst(&self) -> &[(String, Polynomial)] {
        &self.linear.c_subst
    }

    pub fn free_c(&self) -> &[String] {
        &self.linear.free_c
    }

    pub fn linear_relations(&self) -> &[Polynomial] {
        &self.linear.linear_relations
    }

    pub fn d_exprs(&self) -> &[Polynomial] {
        &self.dstep.d_exprs
    }

    pub fn quadratic_relations(&self) -> &[Polynomial] {
        &self.dstep.quadratic_relations
    }

    pub fn cubics_ok(&self) -> bool {
        self.cubic_residues.iter().all(|c| c.residue.is_zero())
    }

    pub fn relations_ideal(&self) -> Result<Ideal> {
        relations_ideal(&self.system, &self.linear, &self.dstep)
    }

    /// Every coefficient of the substituted product lies in the relations
    /// ideal.
    pub fn certify(&self) -> Result<()> {
        let s = full_substitution(&self.system, &self.linear, &self.dstep)?;
        let gb = self.relations_ideal()?.groebner()?;
        for (entry, z0_power, mono, coeff) in self.system.strata() {
            let p = s.apply(&coeff)?.to_ring(&self.system.c_ring)?;
            if !gb.contains(&p)? {
                if z0_power == 3 {
                    // reported through cubic_residues
                    continue;
                }
                return Err(Error::Internal(format!(
                    "entry {entry}, z0^{z0_power} {mono:?}: {p} is not in the relations ideal"
                )));
            }
        }
        Ok(())
    }

    /// `C` after the linear substitution, `m x r`, in the `c` ring.
    pub fn c_matrix(&self) -> Result<PolyMatrix> {
        let lay = &self.system.layout;
        let ring = &self.system.c_ring;
        let subst: BTreeMap<&str, &Polynomial> = self
            .linear
            .c_subst
            .iter()
            .map(|(n, p)| (n.as_str(), p))
            .collect();
        let mut rows = Vec::new();
        for row in &lay.c {
            rows.push(
                row.iter()
                    .map(|n| match subst.get(n.as_str()) {
                        Some(p) => Ok((*p).clone()),
                        None => ring.var(n),
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        PolyMatrix::from_rows(ring, rows)
    }

    /// `N` after substitution, `m x n2`, in the `c` ring.
    pub fn n_matrix(&self) -> Result<PolyMatrix> {
        let lay = &self.system.layout;
        let subst: BTreeMap<&str, &Polynomial> = self
            .linear
            .n_subst
            .iter()
            .map(|(n, p)| (n.as_str(), p))
            .collect();
        let rows = lay
            .n
            .iter()
            .map(|row| row.iter().map(|n| subst[n.as_str()].clone()).collect())
            .collect();
        PolyMatrix::from_rows(&self.system.c_ring, rows)
    }

    /// Ring of fiber variables followed by the `c`'s.
    pub fn display_ring(&self) -> Ring {
        let mut names: Vec<String> = self.system.problem.fiber_vars().to_vec();
        names.extend(self.system.layout.c_names());
        Ring::degrevlex(&names)
    }

    /// `l + N`, in the display ring.
    pub fn l_plus_n(&self) -> Result<PolyMatrix> {
        let ring = self.display_ring();
        let n = self.n_matrix()?;
        let l = &self.system.l;
        let mut out = PolyMatrix::zeros(&ring, l.rows(), l.cols());
        for i in 0..l.rows() {
            for j in 0..l.cols() {
                out.set(
                    i,
                    j,
                    &l.get(i, j).to_ring(&ring)? + &n.get(i, j).to_ring(&ring)?,
                );
            }
        }
        Ok(out)
    }

    /// The row `q_i - sum_j c_ij z_j`, in the display ring.
    pub fn q_minus_zc(&self) -> Result<Vec<Polynomial>> {
        let ring = self.display_ring();
        let c = self.c_matrix()?;
        let z: Vec<Polynomial> = (0..self.system.problem.ring().arity())
            .map(|j| ring.gen(j))
            .collect();
        self.system
            .problem
            .q()
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let mut f = q.to_ring(&ring)?;
                for (j, zj) in z.iter().enumerate() {
                    f = &f - &(&c.get(i, j).to_ring(&ring)? * zj);
                }
                Ok(f)
            })
            .collect()
    }

    /// Complete a point given on the free `c`'s to all `c`'s.
    pub fn complete_point(
        &self,
        free: &BTreeMap<String, Rational>,
    ) -> Result<BTreeMap<String, Rational>> {
        let ring = &self.system.c_ring;
        let mut values = vec![Rational::zero(); ring.arity()];
        for name in &self.linear.free_c {
            let v = free
                .get(name)
                .ok_or_else(|| Error::Precondition(format!("no value for {name}")))?;
            values[ring.require_index(name)?] = v.clone();
        }
        let mut out: BTreeMap<String, Rational> = BTreeMap::new();
        for name in &self.linear.free_c {
            out.insert(name.clone(), free[name].clone());
        }
        for (name, expr) in &self.linear.c_subst {
            out.insert(name.clone(), expr.evaluate(&values)?);
        }
        Ok(out)
    }
}
