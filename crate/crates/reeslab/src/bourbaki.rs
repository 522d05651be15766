//! Generic Bourbaki ideals: factor e-1 generic elements out of a rank-e
//! module and embed the resulting rank-1 torsion-free quotient as an ideal.

use crate::config::{Budget, Config};
use crate::error::{Error, Result};
use crate::groebner::{self, Ideal};
use crate::matrix::PolyMatrix;
use crate::modlib::{self, PresentedModule};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::rees;
use crate::ring::PolyRing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BourbakiMode {
    /// Adjoin indeterminate coefficients z_ij to the base ring.
    Symbolic,
    /// Specialize the coefficients to random nonzero scalars.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BourbakiFlags {
    pub torsion_free_quotient: bool,
    pub positive_grade: bool,
}

#[derive(Debug, Clone)]
pub struct BourbakiResult {
    pub mode: BourbakiMode,
    pub seed: u64,
    /// Base ring in random mode, the z-extended ring in symbolic mode.
    pub ring: Arc<PolyRing>,
    /// The generic elements x_j as coefficient vectors on the generators.
    pub generic_elements: Vec<Vec<Polynomial>>,
    /// The quotient E''/F whose embedding produced the ideal.
    pub quotient: PresentedModule,
    pub ideal: Ideal,
    pub verified: BourbakiFlags,
    pub height: i64,
}

fn check_u_admissible(
    e: &PresentedModule,
    u: &[usize],
    budget: &Budget,
) -> Result<()> {
    if u.len() == e.phi.rows && (0..e.phi.rows).all(|i| u.contains(&i)) {
        return Ok(());
    }
    let q = modlib::quotient_by_generator_subset(e, u)?;
    if modlib::is_zero_module(&q) {
        return Ok(());
    }
    if modlib::module_rank(&q)? != 0 {
        return Err(Error::Input(
            "E/U is not torsion: U is not an admissible reduction submodule".into(),
        ));
    }
    let g = modlib::grade_of_module(&q, budget)?;
    if g <= 0 {
        return Err(Error::Input("E/U has grade 0".into()));
    }
    Ok(())
}

/// Deterministic embedding of a rank-1 torsion-free quotient: the minimal
/// degree nonzero functional in the dual, ties broken by column index.
fn embed_as_ideal(q: &PresentedModule, budget: &Budget) -> Result<Ideal> {
    let duals = modlib::dual_generators(q, budget)?;
    if duals.cols == 0 {
        return Err(Error::VerificationFailed(
            "rank-1 torsion-free quotient has zero dual".into(),
        ));
    }
    let mut best: Option<(i64, usize)> = None;
    for j in 0..duals.cols {
        let col = duals.col(j);
        if col.iter().all(|p| p.is_zero()) {
            continue;
        }
        let deg = col
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| p.homogeneous_degree().unwrap_or(0) - q.row_degrees[i])
            .max()
            .unwrap_or(0);
        if best.map_or(true, |(d, _)| deg < d) {
            best = Some((deg, j));
        }
    }
    let (_, j) = best.ok_or_else(|| {
        Error::VerificationFailed("no nonzero functional on the quotient".into())
    })?;
    Ideal::new(&q.ring, duals.col(j))
}

fn symbolic_ring(
    base: &Arc<PolyRing>,
    n: usize,
    cols: usize,
) -> Result<(Arc<PolyRing>, Vec<Vec<usize>>)> {
    let mut names = vec![];
    let mut index = vec![vec![0usize; cols]; n];
    let d = base.nvars();
    for j in 0..cols {
        for i in 0..n {
            let mut cand = format!("z{}{}", i + 1, j + 1);
            while base.var_index(&cand).is_some() || names.contains(&cand) {
                cand.push('z');
            }
            index[i][j] = d + names.len();
            names.push(cand);
        }
    }
    let new_vars: Vec<(String, u32)> = names.into_iter().map(|nm| (nm, 0)).collect();
    let ring = base.extended(&new_vars, MonomialOrder::GrevLex)?;
    Ok((ring, index))
}

/// The quotient Q = E''/F together with the coefficient vectors of the
/// generic elements, in the given coefficient assignment.
fn build_quotient(
    e: &PresentedModule,
    u: &[usize],
    ring: &Arc<PolyRing>,
    coeff: &dyn Fn(usize, usize) -> Polynomial,
    count: usize,
) -> Result<(PresentedModule, Vec<Vec<Polynomial>>)> {
    let n = e.phi.rows;
    let fwd: Vec<Option<usize>> = (0..e.ring.nvars()).map(Some).collect();
    let phi = e.phi.map_to_ring(ring, &fwd)?;
    let mut x = PolyMatrix::zero(ring, n, count);
    let mut elems = vec![];
    for j in 0..count {
        let mut col = vec![Polynomial::zero(ring); n];
        for &i in u {
            let c = coeff(i, j);
            *x.at_mut(i, j) = c.clone();
            col[i] = c;
        }
        elems.push(col);
    }
    let stacked = phi.hstack(&x)?;
    let q = match PresentedModule::new(stacked.clone(), e.row_degrees.clone()) {
        Ok(m) => m,
        Err(_) => PresentedModule::new_ungraded(stacked, e.row_degrees.clone())?,
    };
    Ok((q, elems))
}

/// Construct a generic Bourbaki ideal of E with respect to U (default E).
pub fn generic_bourbaki(
    e: &PresentedModule,
    u: Option<&[usize]>,
    mode: BourbakiMode,
    config: &Config,
    budget: &Budget,
) -> Result<BourbakiResult> {
    let rank = modlib::module_rank(e)?;
    if rank == 0 {
        return Err(Error::RankTooSmall);
    }
    let n = e.phi.rows;
    let all: Vec<usize> = (0..n).collect();
    let u: Vec<usize> = u.map(|s| s.to_vec()).unwrap_or(all);
    check_u_admissible(e, &u, budget)?;
    let count = rank - 1;
    match mode {
        BourbakiMode::Symbolic => {
            let (ring, zidx) = symbolic_ring(&e.ring, n, count)?;
            let coeff = |i: usize, j: usize| Polynomial::var(&ring, zidx[i][j]);
            let (q, elems) = build_quotient(e, &u, &ring, &coeff, count)?;
            finish(e, mode, 0, ring, q, elems, budget)
        }
        BourbakiMode::Random => {
            let mut last_err = None;
            for retry in 0..config.specialization_retries {
                let seed = config.seed + retry as u64;
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x626b)); // bourbaki stream
                let field = e.ring.field.clone();
                let p = field.characteristic().max(30000) as i64;
                // column-major draw order, shared with specialize_symbolic
                let mut vals = vec![vec![field.zero(); count]; n];
                for j in 0..count {
                    for i in 0..n {
                        vals[i][j] = field.from_i64(rng.gen_range(1..p));
                    }
                }
                let ring = e.ring.clone();
                let coeff = |i: usize, j: usize| {
                    Polynomial::constant(&ring, vals[i][j].clone())
                };
                let (q, elems) = build_quotient(e, &u, &ring, &coeff, count)?;
                match finish(e, mode, seed, ring.clone(), q, elems, budget) {
                    Ok(res) => return Ok(res),
                    Err(err @ Error::NotTorsionFree { .. }) => last_err = Some(err),
                    Err(other) => return Err(other),
                }
            }
            Err(last_err.unwrap_or(Error::NotTorsionFree { seed: config.seed }))
        }
    }
}

fn finish(
    e: &PresentedModule,
    mode: BourbakiMode,
    seed: u64,
    ring: Arc<PolyRing>,
    q: PresentedModule,
    elems: Vec<Vec<Polynomial>>,
    budget: &Budget,
) -> Result<BourbakiResult> {
    let _ = e;
    let torsion_free = modlib::is_torsion_free(&q, budget)?;
    if !torsion_free {
        return Err(Error::NotTorsionFree { seed });
    }
    let qrank = modlib::module_rank(&q)?;
    if qrank != 1 {
        return Err(Error::VerificationFailed(format!(
            "quotient by generic elements has rank {qrank}, expected 1"
        )));
    }
    let ideal = embed_as_ideal(&q, budget)?;
    let positive_grade = !ideal.is_zero();
    if !positive_grade {
        return Err(Error::VerificationFailed("embedded ideal is zero".into()));
    }
    let height = groebner::height(&ideal, budget)?;
    Ok(BourbakiResult {
        mode,
        seed,
        ring,
        generic_elements: elems,
        quotient: q,
        ideal,
        verified: BourbakiFlags {
            torsion_free_quotient: torsion_free,
            positive_grade,
        },
        height,
    })
}

#[derive(Debug, Clone)]
pub struct BourbakiVerifyReport {
    pub torsion_free: bool,
    pub positive_grade: bool,
    pub height: i64,
    /// l(I) = l(E) - e + 1 when both spreads are computable (random mode).
    pub spread_match: Option<bool>,
    /// r(I) <= r(E) when both are computable (random mode).
    pub reduction_bound: Option<bool>,
    pub height_seed_stable: bool,
}

/// Re-check the defining properties of a Bourbaki result, with
/// cross-checks against E in random mode and 3-seed height agreement.
pub fn bourbaki_verify(
    b: &BourbakiResult,
    e: &PresentedModule,
    config: &Config,
    budget: &Budget,
) -> Result<BourbakiVerifyReport> {
    let torsion_free = modlib::is_torsion_free(&b.quotient, budget)?;
    let positive_grade = !b.ideal.is_zero();
    if !torsion_free {
        return Err(Error::VerificationFailed("quotient not torsion-free".into()));
    }
    if !positive_grade {
        return Err(Error::VerificationFailed("ideal has grade 0".into()));
    }
    let mut spread_match = None;
    let mut reduction_bound = None;
    if b.mode == BourbakiMode::Random {
        let rank = modlib::module_rank(e)? as i64;
        let pe = rees::rees_algebra(e, budget)?;
        let le = rees::analytic_spread(&pe, budget)?;
        if let Ok(mi) = PresentedModule::from_ideal(&b.ideal, budget) {
            let pi = rees::rees_algebra(&mi, budget)?;
            let li = rees::analytic_spread(&pi, budget)?;
            spread_match = Some(li == le - rank + 1);
            let re = rees::reduction_number(&pe, config, budget);
            let ri = rees::reduction_number(&pi, config, budget);
            if let (Ok(re), Ok(ri)) = (re, ri) {
                reduction_bound = Some(ri.value <= re.value);
            }
        }
    }
    // 3-seed height agreement in random mode
    let height_seed_stable = if b.mode == BourbakiMode::Random {
        let mut stable = true;
        for k in 1..=2u64 {
            let mut cfg = config.clone();
            cfg.seed = config.seed + 100 * k;
            let other = generic_bourbaki(e, None, BourbakiMode::Random, &cfg, budget)?;
            if other.height != b.height {
                stable = false;
            }
        }
        stable
    } else {
        true
    };
    Ok(BourbakiVerifyReport {
        torsion_free,
        positive_grade,
        height: b.height,
        spread_match,
        reduction_bound,
        height_seed_stable,
    })
}

/// Specialize a symbolic-mode ideal at the coefficient values drawn for
/// the given seed, landing in the base ring.
pub fn specialize_symbolic(
    b: &BourbakiResult,
    base: &Arc<PolyRing>,
    seed: u64,
) -> Result<Ideal> {
    if b.mode != BourbakiMode::Symbolic {
        return Err(Error::Input("specialize_symbolic needs a symbolic result".into()));
    }
    let d = base.nvars();
    let field = base.field.clone();
    let nz = b.ring.nvars() - d;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x626b));
    let p = field.characteristic().max(30000) as i64;
    // z variables were appended column-major; draw in the same order as
    // random mode fills its n x (e-1) table row-major per column
    let mut vals = vec![field.zero(); nz];
    for v in vals.iter_mut() {
        *v = field.from_i64(rng.gen_range(1..p));
    }
    let assign = |idx: usize| {
        if idx < d {
            None
        } else {
            Some(vals[idx - d].clone())
        }
    };
    let gens: Vec<Polynomial> = b
        .ideal
        .gens
        .iter()
        .map(|g| g.specialize(base, &assign))
        .collect::<Result<_>>()?;
    Ideal::new(base, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;

    fn ring3() -> Arc<PolyRing> {
        PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "z"])
    }

    fn ideal(ring: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(
            ring,
            gens.iter()
                .map(|s| parse_polynomial(ring, s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn example_e(ring: &Arc<PolyRing>) -> PresentedModule {
        let b = Budget::default();
        PresentedModule::direct_sum_of_ideals(
            ring,
            &[ideal(ring, &["x^2", "x*y"]), ideal(ring, &["y", "z"])],
            &b,
        )
        .unwrap()
    }

    fn example_e4(ring: &Arc<PolyRing>) -> PresentedModule {
        let b = Budget::default();
        PresentedModule::direct_sum_of_ideals(
            ring,
            &[ideal(ring, &["x^2", "x*y"]), ideal(ring, &["y*z", "z^2"])],
            &b,
        )
        .unwrap()
    }

    #[test]
    fn rank_one_module_embeds_as_itself() {
        let r = ring3();
        let b = Budget::default();
        let cfg = Config::default();
        let e = PresentedModule::from_ideal(&ideal(&r, &["x", "y"]), &b).unwrap();
        let res = generic_bourbaki(&e, None, BourbakiMode::Random, &cfg, &b).unwrap();
        assert!(res.generic_elements.is_empty());
        assert!(res.verified.torsion_free_quotient);
        assert!(groebner::ideal_equal(&res.ideal, &ideal(&r, &["x", "y"]), &b).unwrap());
        assert_eq!(res.height, 2);
    }

    #[test]
    fn example_random_bourbaki_height_two() {
        let r = ring3();
        let b = Budget::default();
        let cfg = Config::default();
        let e = example_e(&r);
        let res = generic_bourbaki(&e, None, BourbakiMode::Random, &cfg, &b).unwrap();
        assert_eq!(res.generic_elements.len(), 1);
        assert!(res.verified.torsion_free_quotient);
        assert_eq!(res.height, 2);
        let rep = bourbaki_verify(&res, &e, &cfg, &b).unwrap();
        assert!(rep.height_seed_stable);
        assert_eq!(rep.spread_match, Some(true));
    }

    #[test]
    fn example4_random_bourbaki_height_two() {
        let r = ring3();
        let b = Budget::default();
        let cfg = Config::default();
        let e = example_e4(&r);
        let res = generic_bourbaki(&e, None, BourbakiMode::Random, &cfg, &b).unwrap();
        assert_eq!(res.height, 2);
    }

    #[test]
    fn example_symbolic_bourbaki() {
        let r = ring3();
        let b = Budget::default();
        let cfg = Config::default();
        let e = example_e(&r);
        let res = generic_bourbaki(&e, None, BourbakiMode::Symbolic, &cfg, &b).unwrap();
        assert!(res.verified.torsion_free_quotient);
        assert_eq!(res.ring.nvars(), 7);
        for g in &res.ideal.gens {
            if !g.is_zero() {
                assert!(g.is_homogeneous());
            }
        }
        // specialization of the symbolic ideal agrees with a random-mode
        // run at the same seed
        let spec = specialize_symbolic(&res, &r, cfg.seed).unwrap();
        let rnd = generic_bourbaki(&e, None, BourbakiMode::Random, &cfg, &b).unwrap();
        assert_eq!(groebner::height(&spec, &b).unwrap(), rnd.height);
    }

    #[test]
    fn free_rank_two_module() {
        let r = ring3();
        let b = Budget::default();
        let cfg = Config::default();
        let e = PresentedModule::free(&r, 2, vec![1, 1]);
        let res = generic_bourbaki(&e, None, BourbakiMode::Random, &cfg, &b).unwrap();
        // factoring a generic element out of R^2 leaves R
        assert_eq!(res.height, groebner::height(&res.ideal, &b).unwrap());
        assert!(res.verified.positive_grade);
    }
}
