//! Symmetric and Rees algebras of presented modules, graded pieces,
//! special fiber, analytic spread, reduction numbers.

use crate::config::{Budget, Config};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::{self, Ideal};
use crate::matrix::PolyMatrix;
use crate::modgb::{self, ModElem};
use crate::modlib::{self, PresentedModule};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

/// A quotient of k[x-vars, t-vars] by a bihomogeneous ideal. The first
/// `ring.nvars() - t_count` variables are the base variables.
#[derive(Debug, Clone)]
pub struct GradedQuotientAlgebra {
    pub base: Arc<PolyRing>,
    pub ring: Arc<PolyRing>,
    pub t_count: usize,
    pub defining_ideal: Ideal,
}

impl GradedQuotientAlgebra {
    pub fn x_count(&self) -> usize {
        self.ring.nvars() - self.t_count
    }

    /// Total degree in the t-block of variables.
    pub fn t_degree(&self, exp: &[u32]) -> u32 {
        exp[self.x_count()..].iter().sum()
    }
}

#[derive(Debug, Clone)]
pub struct ReesPackage {
    pub module: PresentedModule,
    pub rank: usize,
    pub sym: GradedQuotientAlgebra,
    pub rees: GradedQuotientAlgebra,
    /// Correction ideal with sym subset rees; equals the sym ideal exactly
    /// when the module is of linear type.
    pub torsion_ideal: Ideal,
    pub saturating_element: Polynomial,
}

fn t_var_names(base: &Arc<PolyRing>, n: usize) -> Vec<String> {
    let mut names = vec![];
    for i in 1..=n {
        let mut cand = format!("t{i}");
        while base.var_index(&cand).is_some() || names.contains(&cand) {
            cand.push('t');
        }
        names.push(cand);
    }
    names
}

fn base_to_xt_map(base: &Arc<PolyRing>) -> Vec<Option<usize>> {
    (0..base.nvars()).map(Some).collect()
}

/// S(E) = k[x,t]/((t_1..t_n) * phi), one t-linear form per column of phi.
pub fn symmetric_algebra(e: &PresentedModule) -> Result<GradedQuotientAlgebra> {
    let base = &e.ring;
    let n = e.phi.rows;
    let names = t_var_names(base, n);
    let tvars: Vec<(String, u32)> = names
        .into_iter()
        .zip(e.row_degrees.iter())
        .map(|(nm, &d)| (nm, d.max(0) as u32))
        .collect();
    let ring = base.extended(&tvars, MonomialOrder::GrevLex)?;
    let fwd = base_to_xt_map(base);
    let d = base.nvars();
    let mut gens = vec![];
    for j in 0..e.phi.cols {
        let mut g = Polynomial::zero(&ring);
        for i in 0..n {
            let p = e.phi.at(i, j);
            if p.is_zero() {
                continue;
            }
            let t = Polynomial::var(&ring, d + i);
            g = g.add(&t.mul(&p.map_to_ring(&ring, &fwd)?)?)?;
        }
        if !g.is_zero() {
            gens.push(g);
        }
    }
    Ok(GradedQuotientAlgebra {
        base: base.clone(),
        ring: ring.clone(),
        t_count: n,
        defining_ideal: Ideal::new(&ring, gens)?,
    })
}

/// R(E) = S(E)/T_R, with the torsion removed by saturating the defining
/// ideal at an element inverting which makes E free.
pub fn rees_algebra(e: &PresentedModule, budget: &Budget) -> Result<ReesPackage> {
    let rank = modlib::module_rank(e)?;
    if rank == 0 {
        return Err(Error::NoRank);
    }
    let sym = symmetric_algebra(e)?;
    let a = modlib::freeing_element(e)?;
    let fwd = base_to_xt_map(&e.ring);
    let a_xt = a.map_to_ring(&sym.ring, &fwd)?;
    let rees_ideal = if sym.defining_ideal.is_zero() || a_xt.is_unit_constant() {
        sym.defining_ideal.clone()
    } else {
        groebner::saturate(&sym.defining_ideal, &a_xt, budget)?
    };
    let rees = GradedQuotientAlgebra {
        base: sym.base.clone(),
        ring: sym.ring.clone(),
        t_count: sym.t_count,
        defining_ideal: rees_ideal.clone(),
    };
    Ok(ReesPackage {
        module: e.clone(),
        rank,
        sym,
        rees,
        torsion_ideal: rees_ideal,
        saturating_element: a,
    })
}

/// Exponent vectors of the t-monomials of degree `deg` in `n` variables,
/// in a fixed deterministic order.
fn t_monomials(n: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, deg: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n - 1 {
            cur.push(deg);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for d in (0..=deg).rev() {
            cur.push(d);
            rec(n, deg - d, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    if n == 0 {
        return out;
    }
    rec(n, deg, &mut vec![], &mut out);
    out
}

/// Split a bihomogeneous element of t-degree `deg` into its coefficient
/// vector over the t-monomial basis; coefficients land in the base ring.
fn coefficient_column(
    alg: &GradedQuotientAlgebra,
    g: &Polynomial,
    basis: &[Vec<u32>],
) -> Result<Vec<Polynomial>> {
    let d = alg.x_count();
    let mut back = vec![None; alg.ring.nvars()];
    for i in 0..d {
        back[i] = Some(i);
    }
    let mut col = vec![Polynomial::zero(&alg.base); basis.len()];
    for (exp, c) in &g.terms {
        let tpart: Vec<u32> = exp[d..].to_vec();
        let idx = basis
            .iter()
            .position(|b| *b == tpart)
            .ok_or_else(|| Error::Input("element not t-homogeneous of expected degree".into()))?;
        let xmono = Polynomial::monomial(
            &alg.base,
            exp[..d].to_vec(),
            c.clone(),
        );
        col[idx] = col[idx].add(&xmono)?;
    }
    Ok(col)
}

/// Columns over the base ring spanning the t-degree-`deg` piece of the
/// defining ideal, expressed in the t-monomial basis.
fn ideal_degree_columns(
    alg: &GradedQuotientAlgebra,
    deg: u32,
    basis: &[Vec<u32>],
    budget: &Budget,
) -> Result<Vec<Vec<Polynomial>>> {
    let gb = groebner::groebner_basis(&alg.defining_ideal, budget)?;
    let d = alg.x_count();
    let mut cols = vec![];
    for g in &gb.basis {
        let Some((lead, _)) = g.lead() else { continue };
        let gdeg = alg.t_degree(lead);
        if gdeg > deg {
            continue;
        }
        for shift in t_monomials(alg.t_count, deg - gdeg) {
            let mut exp = vec![0u32; alg.ring.nvars()];
            for (i, &s) in shift.iter().enumerate() {
                exp[d + i] = s;
            }
            let shifted = g.mul_term(&exp, &alg.ring.field.one());
            cols.push(coefficient_column(alg, &shifted, basis)?);
        }
    }
    Ok(cols)
}

/// E^n = [R(E)]_n as a presented R-module: generators the t-monomials of
/// degree n, relations the degree-n piece of the defining ideal.
pub fn power_component(p: &ReesPackage, n: u32, budget: &Budget) -> Result<PresentedModule> {
    if n == 0 {
        return Err(Error::Input("power_component needs n >= 1".into()));
    }
    let alg = &p.rees;
    let basis = t_monomials(alg.t_count, n);
    let cols = ideal_degree_columns(alg, n, &basis, budget)?;
    let phi = if cols.is_empty() {
        PolyMatrix::zero(&alg.base, basis.len(), 0)
    } else {
        PolyMatrix::from_cols(&alg.base, cols)?
    };
    let d = alg.x_count();
    let degs: Vec<i64> = basis
        .iter()
        .map(|b| {
            b.iter()
                .enumerate()
                .map(|(i, &e)| e as i64 * alg.ring.var_degrees[d + i] as i64)
                .sum()
        })
        .collect();
    match PresentedModule::new(phi.clone(), degs.clone()) {
        Ok(m) => Ok(m),
        Err(_) => PresentedModule::new_ungraded(phi, degs),
    }
}

/// The special fiber F(E) = R(E) (x) k, as a quotient of the t-ring.
pub fn special_fiber(p: &ReesPackage, budget: &Budget) -> Result<GradedQuotientAlgebra> {
    let alg = &p.rees;
    let d = alg.x_count();
    let mut gens = alg.defining_ideal.gens.clone();
    for i in 0..d {
        gens.push(Polynomial::var(&alg.ring, i));
    }
    let big = Ideal::new(&alg.ring, gens)?;
    let drop: Vec<usize> = (0..d).collect();
    let elim = groebner::eliminate(&big, &drop, budget)?;
    // move to the pure t-ring
    let tring = PolyRing::new(
        alg.ring.field.clone(),
        alg.ring.vars[d..].to_vec(),
        alg.ring.var_degrees[d..].to_vec(),
        MonomialOrder::GrevLex,
    )?;
    let mut vmap = vec![None; alg.ring.nvars()];
    for i in 0..alg.t_count {
        vmap[d + i] = Some(i);
    }
    let tgens: Vec<Polynomial> = elim
        .gens
        .iter()
        .map(|g| g.map_to_ring(&tring, &vmap))
        .collect::<Result<_>>()?;
    Ok(GradedQuotientAlgebra {
        base: tring.clone(),
        ring: tring.clone(),
        t_count: alg.t_count,
        defining_ideal: Ideal::new(&tring, tgens)?,
    })
}

/// l(E) = dim F(E).
pub fn analytic_spread(p: &ReesPackage, budget: &Budget) -> Result<i64> {
    let fiber = special_fiber(p, budget)?;
    groebner::krull_dimension(&fiber.defining_ideal, budget)
}

/// Does U (columns of scalar coefficients on the module generators) give
/// E^{r+1} = U E^r? Tested as R-module membership in t-degree r+1.
pub fn is_reduction(
    p: &ReesPackage,
    u_cols: &[Vec<Scalar>],
    r: u32,
    budget: &Budget,
) -> Result<bool> {
    let alg = &p.rees;
    let n = alg.t_count;
    let d = alg.x_count();
    let basis = t_monomials(n, r + 1);
    let mut cols = ideal_degree_columns(alg, r + 1, &basis, budget)?;
    // columns u_j * t^beta for |beta| = r
    for u in u_cols {
        let mut uform = Polynomial::zero(&alg.ring);
        for (i, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exp = vec![0u32; alg.ring.nvars()];
            exp[d + i] = 1;
            uform = uform.add(&Polynomial::monomial(&alg.ring, exp, c.clone()))?;
        }
        if uform.is_zero() {
            continue;
        }
        for beta in t_monomials(n, r) {
            let mut exp = vec![0u32; alg.ring.nvars()];
            for (i, &b) in beta.iter().enumerate() {
                exp[d + i] = b;
            }
            let shifted = uform.mul_term(&exp, &alg.ring.field.one());
            cols.push(coefficient_column(alg, &shifted, &basis)?);
        }
    }
    if cols.is_empty() {
        return Ok(false);
    }
    let mat = PolyMatrix::from_cols(&alg.base, cols)?;
    let span = modgb::span_groebner(&mat, budget)?;
    for k in 0..basis.len() {
        let mut comps = vec![Polynomial::zero(&alg.base); basis.len()];
        comps[k] = Polynomial::one(&alg.base);
        let v = ModElem { comps };
        if !modgb::in_span(&alg.base, &v, &span, budget) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionNumber {
    pub value: u32,
    /// Always "probabilistic": a random U is a minimal reduction achieving
    /// r(E) only with high probability.
    pub status: String,
    pub seed: u64,
}

fn random_u(n: usize, l: usize, field: &crate::field::FieldSpec, seed: u64) -> Vec<Vec<Scalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..l)
        .map(|_| {
            (0..n)
                .map(|_| field.from_i64(rng.gen_range(1..30000)))
                .collect()
        })
        .collect()
}

/// Least r <= r_max with E^{r+1} = U E^r for a seeded random U generated
/// by l(E) generic combinations; minimum over a few seeds.
pub fn reduction_number(
    p: &ReesPackage,
    config: &Config,
    budget: &Budget,
) -> Result<ReductionNumber> {
    let l = analytic_spread(p, budget)?;
    if l < 0 {
        return Err(Error::Input("empty fiber".into()));
    }
    let e = p.rank as i64;
    let r_max = config.r_max.unwrap_or(((l - e).max(0) + 2) as u32);
    let n = p.rees.t_count;
    let field = &p.module.ring.field;
    let mut best: Option<(u32, u64)> = None;
    for retry in 0..config.reduction_seed_retries {
        let seed = config.seed + retry as u64;
        let u = random_u(n, l as usize, field, seed);
        for r in 0..=r_max {
            if best.map_or(false, |(b, _)| r >= b) {
                break;
            }
            if is_reduction(p, &u, r, budget)? {
                best = Some((r, seed));
                break;
            }
        }
    }
    match best {
        Some((value, seed)) => Ok(ReductionNumber {
            value,
            status: "probabilistic".into(),
            seed,
        }),
        None => Err(Error::NotAReduction { r_max }),
    }
}

/// Reduction number with an explicit U given as scalar coefficient columns.
pub fn reduction_number_with_u(
    p: &ReesPackage,
    u_cols: &[Vec<Scalar>],
    r_max: u32,
    budget: &Budget,
) -> Result<u32> {
    for r in 0..=r_max {
        if is_reduction(p, u_cols, r, budget)? {
            return Ok(r);
        }
    }
    Err(Error::NotAReduction { r_max })
}

/// Linear type: the saturation added nothing.
pub fn is_linear_type(p: &ReesPackage, budget: &Budget) -> Result<bool> {
    groebner::ideal_equal(&p.sym.defining_ideal, &p.rees.defining_ideal, budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CmReport {
    pub is_cm: bool,
    pub depth: i64,
    pub dim: i64,
}

/// Cohen-Macaulayness of R(E) as a quotient of the big polynomial ring:
/// depth by graded Auslander-Buchsbaum, dimension by independent sets.
pub fn rees_cm_test(p: &ReesPackage, budget: &Budget) -> Result<CmReport> {
    cm_test_of_quotient(&p.rees, budget)
}

pub fn cm_test_of_quotient(alg: &GradedQuotientAlgebra, budget: &Budget) -> Result<CmReport> {
    let dim = groebner::krull_dimension(&alg.defining_ideal, budget)?;
    let nv = alg.ring.nvars() as i64;
    let depth = if alg.defining_ideal.is_zero() {
        nv
    } else {
        let phi = PolyMatrix::from_rows(&alg.ring, vec![alg.defining_ideal.gens.clone()])?;
        let m = PresentedModule::new(phi, vec![0])?;
        nv - modlib::projective_dimension(&m, budget)? as i64
    };
    Ok(CmReport {
        is_cm: depth == dim,
        depth,
        dim,
    })
}
