//! Hypothesis checkers (G_s, orientability, ideal module, local freeness,
//! sliding depth, AN_s) and the theorem pipelines, each paired with an
//! independent direct verification of the conclusion.

use crate::bourbaki::{self, BourbakiMode};
use crate::config::{Budget, Config};
use crate::error::Result;
use crate::groebner::{self, Ideal, INFINITE_HEIGHT};
use crate::modlib::{self, PresentedModule};
use crate::poly::Polynomial;
use crate::rees::{self, CmReport, ReesPackage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    ProbabilisticHolds,
    NotComputable,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisVerdict {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl HypothesisVerdict {
    fn holds(name: &str) -> HypothesisVerdict {
        HypothesisVerdict {
            name: name.into(),
            status: Status::Holds,
            witness: None,
        }
    }

    fn fails(name: &str, witness: String) -> HypothesisVerdict {
        HypothesisVerdict {
            name: name.into(),
            status: Status::Fails,
            witness: Some(witness),
        }
    }

    fn probabilistic(name: &str, witness: String) -> HypothesisVerdict {
        HypothesisVerdict {
            name: name.into(),
            status: Status::ProbabilisticHolds,
            witness: Some(witness),
        }
    }

    fn not_computable(name: &str, witness: String) -> HypothesisVerdict {
        HypothesisVerdict {
            name: name.into(),
            status: Status::NotComputable,
            witness: Some(witness),
        }
    }

    fn of(name: &str, ok: bool, witness: impl Fn() -> String) -> HypothesisVerdict {
        if ok {
            HypothesisVerdict::holds(name)
        } else {
            HypothesisVerdict::fails(name, witness())
        }
    }

    pub fn passing(&self) -> bool {
        matches!(self.status, Status::Holds | Status::ProbabilisticHolds)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Conclusion {
    pub linear_type: bool,
    pub rees_cm: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectVerification {
    pub linear_type: bool,
    pub cm: CmReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub hypotheses: Vec<HypothesisVerdict>,
    pub all_hypotheses_hold: bool,
    pub paper_conclusion: Conclusion,
    pub direct_verification: DirectVerification,
    /// False only when every hypothesis passes yet the directly verified
    /// conclusion contradicts the claimed one.
    pub consistent: bool,
}

// ---------------------------------------------------------------------------
// condition checkers

/// G_s via Fitting heights: ht Fitt_{e+j-1}(E) >= j+1 for 1 <= j <= s-1,
/// truncated at s = d+1 (G_infinity).
pub fn check_gs(
    e: &PresentedModule,
    s: Option<i64>,
    budget: &Budget,
) -> Result<HypothesisVerdict> {
    let rank = modlib::module_rank(e)? as i64;
    let d = e.ring.nvars() as i64;
    let s_eff = s.unwrap_or(d + 1).min(d + 1);
    let name = match s {
        None => "G_infinity".to_string(),
        Some(s) => format!("G_{s}"),
    };
    for j in 1..s_eff {
        let fitt = modlib::fitting_ideal(e, (rank + j - 1) as usize)?;
        let h = groebner::height(&fitt, budget)?;
        if h < j + 1 {
            return Ok(HypothesisVerdict::fails(
                &name,
                format!("ht Fitt_{}(E) = {h} < {}", rank + j - 1, j + 1),
            ));
        }
    }
    Ok(HypothesisVerdict::holds(&name))
}

/// Orientable: (wedge^e E)** is cyclic and torsion-free, hence free of
/// rank 1 over a polynomial ring.
pub fn check_orientable(e: &PresentedModule, budget: &Budget) -> Result<HypothesisVerdict> {
    let rank = modlib::module_rank(e)?;
    if rank == 0 {
        return Ok(HypothesisVerdict::fails(
            "orientable",
            "module has rank 0".into(),
        ));
    }
    let w = modlib::exterior_power(e, rank, budget)?;
    let dd = modlib::double_dual(&w, budget)?;
    let mu = modlib::minimal_generators(&dd);
    if mu != 1 {
        return Ok(HypothesisVerdict::fails(
            "orientable",
            format!("mu((wedge^e E)**) = {mu}"),
        ));
    }
    if !modlib::is_torsion_free(&dd, budget)? {
        return Ok(HypothesisVerdict::fails(
            "orientable",
            "(wedge^e E)** has torsion".into(),
        ));
    }
    Ok(HypothesisVerdict::holds("orientable"))
}

/// Ideal module: nonzero, torsion-free, free double dual.
pub fn check_ideal_module(e: &PresentedModule, budget: &Budget) -> Result<HypothesisVerdict> {
    if modlib::is_zero_module(e) {
        return Ok(HypothesisVerdict::fails("ideal-module", "E = 0".into()));
    }
    if !modlib::is_torsion_free(e, budget)? {
        return Ok(HypothesisVerdict::fails(
            "ideal-module",
            "E has torsion".into(),
        ));
    }
    let rank = modlib::module_rank(e)?;
    let dd = modlib::double_dual(e, budget)?;
    let mu = modlib::minimal_generators(&dd);
    let free = modlib::projective_dimension(&modlib::minimal_presentation(&dd), budget)? == 0;
    if mu != rank || !free {
        return Ok(HypothesisVerdict::fails(
            "ideal-module",
            format!("E** not free of rank {rank}: mu = {mu}, free = {free}"),
        ));
    }
    Ok(HypothesisVerdict::holds("ideal-module"))
}

/// Free locally in codimension c: ht Fitt_e(E) >= c+1.
pub fn check_free_in_codim(
    e: &PresentedModule,
    c: i64,
    budget: &Budget,
) -> Result<HypothesisVerdict> {
    let name = format!("free-in-codim-{c}");
    if c < 0 {
        return Ok(HypothesisVerdict::holds(&name));
    }
    let rank = modlib::module_rank(e)?;
    let fitt = modlib::fitting_ideal(e, rank)?;
    let h = groebner::height(&fitt, budget)?;
    Ok(HypothesisVerdict::of(&name, h >= c + 1, || {
        format!("ht Fitt_{rank}(E) = {h} < {}", c + 1)
    }))
}

/// Sliding depth for an ideal with its given generating sequence:
/// depth H_i(x;R) >= d - n + i for every nonzero Koszul homology module.
pub fn check_sliding_depth(i: &Ideal, budget: &Budget) -> Result<HypothesisVerdict> {
    let d = i.ring.nvars() as i64;
    let n = i.gens.len() as i64;
    let hs = modlib::koszul_homology(i, budget)?;
    for (k, h) in hs.iter().enumerate() {
        if modlib::is_zero_module(h) {
            continue;
        }
        let dep = match modlib::depth(h, budget) {
            Ok(dep) => dep,
            Err(_) => {
                return Ok(HypothesisVerdict::not_computable(
                    "sliding-depth",
                    format!("depth of H_{k} not computable"),
                ))
            }
        };
        let bound = d - n + k as i64;
        if dep < bound {
            return Ok(HypothesisVerdict::fails(
                "sliding-depth",
                format!("depth H_{k} = {dep} < {bound}"),
            ));
        }
    }
    Ok(HypothesisVerdict::holds("sliding-depth"))
}

/// Randomized Artin-Nagata check: for each i <= s draw J as i generic
/// combinations of the generators and test Cohen-Macaulayness of R/(J:I).
pub fn check_ans(
    i: &Ideal,
    s: i64,
    seed: u64,
    budget: &Budget,
) -> Result<HypothesisVerdict> {
    let name = format!("AN_{s}");
    if s < 0 || i.is_zero() {
        return Ok(HypothesisVerdict::probabilistic(
            &name,
            "vacuous range".into(),
        ));
    }
    let ring = &i.ring;
    let field = &ring.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0xa7));
    let p = field.characteristic().max(30000) as i64;
    for k in 0..=s {
        let mut jgens = vec![];
        for _ in 0..k {
            let mut g = Polynomial::zero(ring);
            for gen in &i.gens {
                let c = field.from_i64(rng.gen_range(1..p));
                g = g.add(&gen.scale(&c))?;
            }
            jgens.push(g);
        }
        let j = Ideal::new(ring, jgens)?;
        let colon = groebner::ideal_quotient(&j, i, budget)?;
        let h = groebner::height(&colon, budget)?;
        if h == INFINITE_HEIGHT {
            // J:I is the unit ideal, the quotient is zero
            continue;
        }
        if h < k {
            // applicability range empty for this draw
            continue;
        }
        let cm = rees::cm_test_of_quotient(
            &crate::rees::GradedQuotientAlgebra {
                base: ring.clone(),
                ring: ring.clone(),
                t_count: 0,
                defining_ideal: colon.clone(),
            },
            budget,
        );
        match cm {
            Ok(rep) if rep.is_cm => {}
            Ok(rep) => {
                return Ok(HypothesisVerdict::fails(
                    &name,
                    format!(
                        "R/(J:I) not CM at i = {k}, seed {seed}: depth {} < dim {}",
                        rep.depth, rep.dim
                    ),
                ))
            }
            Err(_) => {
                return Ok(HypothesisVerdict::not_computable(
                    &name,
                    format!("CM test failed at i = {k}"),
                ))
            }
        }
    }
    Ok(HypothesisVerdict::probabilistic(&name, format!("seed {seed}")))
}

// ---------------------------------------------------------------------------
// theorem pipelines

struct Pipeline {
    package: ReesPackage,
    rank: i64,
    spread: i64,
    d: i64,
}

fn prepare(e: &PresentedModule, budget: &Budget) -> Result<Pipeline> {
    let package = rees::rees_algebra(e, budget)?;
    let spread = rees::analytic_spread(&package, budget)?;
    Ok(Pipeline {
        rank: package.rank as i64,
        spread,
        d: e.ring.nvars() as i64,
        package,
    })
}

fn depth_chain(
    name: &str,
    p: &Pipeline,
    range_hi: i64,
    bound: impl Fn(i64) -> i64,
    budget: &Budget,
) -> HypothesisVerdict {
    if range_hi < 1 {
        return HypothesisVerdict::holds(name);
    }
    for n in 1..=range_hi {
        let power = match rees::power_component(&p.package, n as u32, budget) {
            Ok(m) => m,
            Err(e) => {
                return HypothesisVerdict::not_computable(name, format!("E^{n}: {e}"))
            }
        };
        let dep = match modlib::depth(&power, budget) {
            Ok(d) => d,
            Err(e) => {
                return HypothesisVerdict::not_computable(name, format!("depth E^{n}: {e}"))
            }
        };
        if dep < bound(n) {
            return HypothesisVerdict::fails(
                name,
                format!("depth E^{n} = {dep} < {}", bound(n)),
            );
        }
    }
    HypothesisVerdict::holds(name)
}

fn bourbaki_height(
    e: &PresentedModule,
    config: &Config,
    budget: &Budget,
) -> Result<(i64, HypothesisVerdict)> {
    match bourbaki::generic_bourbaki(e, None, BourbakiMode::Random, config, budget) {
        Ok(res) => {
            let g = res.height;
            let v = HypothesisVerdict::of("bourbaki-grade>=2", g >= 2, || {
                format!("height(I) = {g} < 2")
            });
            Ok((g, v))
        }
        Err(err) => Ok((
            0,
            HypothesisVerdict::not_computable("bourbaki-grade>=2", err.to_string()),
        )),
    }
}

fn assemble(
    theorem_id: &str,
    hypotheses: Vec<HypothesisVerdict>,
    conclusion: Conclusion,
    p: &Pipeline,
    budget: &Budget,
) -> Result<TheoremReport> {
    let linear = rees::is_linear_type(&p.package, budget)?;
    let cm = rees::rees_cm_test(&p.package, budget)?;
    let all_hold = hypotheses.iter().all(|h| h.passing());
    let conclusion_confirmed = (!conclusion.linear_type || linear)
        && (!conclusion.rees_cm || cm.is_cm);
    Ok(TheoremReport {
        theorem_id: theorem_id.into(),
        hypotheses,
        all_hypotheses_hold: all_hold,
        paper_conclusion: conclusion,
        direct_verification: DirectVerification {
            linear_type: linear,
            cm,
        },
        consistent: !all_hold || conclusion_confirmed,
    })
}

/// G_infinity + orientable + grade I >= 2 + depth E^n >= d-n for
/// n <= l-e imply linear type and a Cohen-Macaulay Rees algebra.
pub fn check_theorem_linear(
    e: &PresentedModule,
    config: &Config,
    budget: &Budget,
) -> Result<TheoremReport> {
    let p = prepare(e, budget)?;
    let mut hyps = vec![HypothesisVerdict::holds("gorenstein-base")];
    hyps.push(check_orientable(e, budget)?);
    hyps.push(check_gs(e, None, budget)?);
    let (_, v) = bourbaki_height(e, config, budget)?;
    hyps.push(v);
    hyps.push(depth_chain(
        "depth E^n >= d-n",
        &p,
        p.spread - p.rank,
        |n| p.d - n,
        budget,
    ));
    assemble(
        "linear",
        hyps,
        Conclusion {
            linear_type: true,
            rees_cm: true,
        },
        &p,
        budget,
    )
}

/// Torsion-free orientable E with G_{l-e+1}, Bourbaki height g >= 2,
/// r(E) <= l-g-e+1 and the depth chain give a Cohen-Macaulay Rees algebra.
pub fn check_theorem_cm(
    e: &PresentedModule,
    config: &Config,
    budget: &Budget,
) -> Result<TheoremReport> {
    let p = prepare(e, budget)?;
    let l = p.spread;
    let rank = p.rank;
    let mut hyps = vec![HypothesisVerdict::holds("gorenstein-base")];
    hyps.push(HypothesisVerdict::of(
        "torsion-free",
        modlib::is_torsion_free(e, budget)?,
        || "E has torsion".into(),
    ));
    hyps.push(check_orientable(e, budget)?);
    if l - rank + 1 < 2 {
        hyps.push(HypothesisVerdict::not_computable(
            "G_{l-e+1}>=G_2",
            format!("l-e+1 = {} < 2: theorem not applicable", l - rank + 1),
        ));
    } else {
        hyps.push(check_gs(e, Some(l - rank + 1), budget)?);
    }
    let (g, v) = bourbaki_height(e, config, budget)?;
    hyps.push(v);
    if g >= 2 {
        let bound = l - g - rank + 1;
        match rees::reduction_number(&p.package, config, budget) {
            Ok(r) if (r.value as i64) <= bound => hyps.push(HypothesisVerdict::probabilistic(
                "r(E)<=l-g-e+1",
                format!("r = {} (seed {})", r.value, r.seed),
            )),
            Ok(r) => hyps.push(HypothesisVerdict::fails(
                "r(E)<=l-g-e+1",
                format!("r = {} > {bound} (seed {})", r.value, r.seed),
            )),
            Err(err) => hyps.push(HypothesisVerdict::not_computable(
                "r(E)<=l-g-e+1",
                err.to_string(),
            )),
        }
        hyps.push(depth_chain(
            "depth E^n >= d-g-n+2",
            &p,
            l - rank - g + 1,
            |n| p.d - g - n + 2,
            budget,
        ));
    }
    assemble(
        "cm",
        hyps,
        Conclusion {
            linear_type: false,
            rees_cm: true,
        },
        &p,
        budget,
    )
}

/// Small generator count: G_infinity, mu(E) <= min{e+3, d+e-1} and
/// depth E >= d-1 give linear type and a Cohen-Macaulay Rees algebra.
pub fn check_prop_minrank(
    e: &PresentedModule,
    config: &Config,
    budget: &Budget,
) -> Result<TheoremReport> {
    let _ = config;
    let p = prepare(e, budget)?;
    let d = p.d;
    let rank = p.rank;
    let mut hyps = vec![check_gs(e, None, budget)?];
    let mu = modlib::minimal_generators(e) as i64;
    let mu_bound = (rank + 3).min(d + rank - 1);
    hyps.push(HypothesisVerdict::of(
        "mu(E)<=min{e+3,d+e-1}",
        mu <= mu_bound,
        || format!("mu = {mu} > {mu_bound}"),
    ));
    match modlib::depth(e, budget) {
        Ok(dep) => hyps.push(HypothesisVerdict::of("depth E >= d-1", dep >= d - 1, || {
            format!("depth E = {dep} < {}", d - 1)
        })),
        Err(err) => hyps.push(HypothesisVerdict::not_computable(
            "depth E >= d-1",
            err.to_string(),
        )),
    }
    assemble(
        "minrank",
        hyps,
        Conclusion {
            linear_type: true,
            rees_cm: true,
        },
        &p,
        budget,
    )
}

/// Ideal module with user-supplied U: grade E/U = l-e-1 >= 2, G_{l-e+1},
/// free in codimension l-e-2, 1 <= r(E) <= s and the depth chain give a
/// Cohen-Macaulay Rees algebra.
pub fn check_cor_cm2(
    e: &PresentedModule,
    u: &[usize],
    s: i64,
    config: &Config,
    budget: &Budget,
) -> Result<TheoremReport> {
    let p = prepare(e, budget)?;
    let l = p.spread;
    let rank = p.rank;
    let mut hyps = vec![check_ideal_module(e, budget)?];
    let quotient = modlib::quotient_by_generator_subset(e, u)?;
    if modlib::is_zero_module(&quotient) {
        hyps.push(HypothesisVerdict::not_computable(
            "grade(E/U)=l-e-1>=2",
            "U = E: grade E/U undefined".into(),
        ));
    } else {
        let grade = modlib::grade_of_module(&quotient, budget)?;
        let target = l - rank - 1;
        hyps.push(HypothesisVerdict::of(
            "grade(E/U)=l-e-1>=2",
            grade == target && target >= 2,
            || format!("grade E/U = {grade}, l-e-1 = {target}"),
        ));
    }
    if l - rank + 1 < 2 {
        hyps.push(HypothesisVerdict::not_computable(
            "G_{l-e+1}>=G_2",
            format!("l-e+1 = {} < 2", l - rank + 1),
        ));
    } else {
        hyps.push(check_gs(e, Some(l - rank + 1), budget)?);
    }
    hyps.push(check_free_in_codim(e, l - rank - 2, budget)?);
    match rees::reduction_number(&p.package, config, budget) {
        Ok(r) if r.value >= 1 && (r.value as i64) <= s => {
            hyps.push(HypothesisVerdict::probabilistic(
                "1<=r(E)<=s",
                format!("r = {} (seed {})", r.value, r.seed),
            ))
        }
        Ok(r) => hyps.push(HypothesisVerdict::fails(
            "1<=r(E)<=s",
            format!("r = {} outside [1, {s}] (seed {})", r.value, r.seed),
        )),
        Err(err) => hyps.push(HypothesisVerdict::not_computable(
            "1<=r(E)<=s",
            err.to_string(),
        )),
    }
    hyps.push(depth_chain(
        "depth E^n >= d-(l-e+1)+s-n+1",
        &p,
        s,
        |n| p.d - (l - rank + 1) + s - n + 1,
        budget,
    ));
    assemble(
        "cm2",
        hyps,
        Conclusion {
            linear_type: false,
            rees_cm: true,
        },
        &p,
        budget,
    )
}

/// Local projective dimension variant: G_{l-e+1}, free in codimension
/// l-e-s, r(E) <= s, pd E_P <= 2 and the local mu bound for height
/// P <= l-e, and the depth chain give a Cohen-Macaulay Rees algebra.
pub fn check_cor_cm3(
    e: &PresentedModule,
    s: i64,
    config: &Config,
    budget: &Budget,
) -> Result<TheoremReport> {
    let p = prepare(e, budget)?;
    let l = p.spread;
    let rank = p.rank;
    let mut hyps = vec![check_ideal_module(e, budget)?];
    if l - rank + 1 < 2 {
        hyps.push(HypothesisVerdict::not_computable(
            "G_{l-e+1}>=G_2",
            format!("l-e+1 = {} < 2", l - rank + 1),
        ));
    } else {
        hyps.push(check_gs(e, Some(l - rank + 1), budget)?);
    }
    hyps.push(check_free_in_codim(e, l - rank - s, budget)?);
    match rees::reduction_number(&p.package, config, budget) {
        Ok(r) if r.value >= 1 && (r.value as i64) <= s => {
            hyps.push(HypothesisVerdict::probabilistic(
                "1<=r(E)<=s",
                format!("r = {} (seed {})", r.value, r.seed),
            ))
        }
        Ok(r) => hyps.push(HypothesisVerdict::fails(
            "1<=r(E)<=s",
            format!("r = {} outside [1, {s}] (seed {})", r.value, r.seed),
        )),
        Err(err) => hyps.push(HypothesisVerdict::not_computable(
            "1<=r(E)<=s",
            err.to_string(),
        )),
    }
    hyps.push(local_pd_bound(e, l - rank, budget)?);
    hyps.push(local_mu_bound(e, l - rank, rank, budget)?);
    hyps.push(depth_chain(
        "depth E^n >= d-(l-e+1)+s-n+1",
        &p,
        s,
        |n| p.d - (l - rank + 1) + s - n + 1,
        budget,
    ));
    assemble(
        "cm3",
        hyps,
        Conclusion {
            linear_type: false,
            rees_cm: true,
        },
        &p,
        budget,
    )
}

/// pd E_P <= 2 for all height P <= c, via support heights of Ext^i(E,R)
/// for i >= 3.
fn local_pd_bound(
    e: &PresentedModule,
    c: i64,
    budget: &Budget,
) -> Result<HypothesisVerdict> {
    let name = "pd(E_P)<=2 for ht P<=l-e";
    let min = modlib::minimal_presentation(e);
    let pd = match modlib::projective_dimension(&min, budget) {
        Ok(pd) => pd,
        Err(err) => return Ok(HypothesisVerdict::not_computable(name, err.to_string())),
    };
    for i in 3..=pd {
        let Some(ext) = modlib::ext_module(&min, i, budget)? else {
            continue;
        };
        let ann = modlib::annihilator(&ext, budget)?;
        let h = groebner::height(&ann, budget)?;
        if h <= c {
            return Ok(HypothesisVerdict::fails(
                name,
                format!("Ext^{i}(E,R) supported in height {h} <= {c}"),
            ));
        }
    }
    Ok(HypothesisVerdict::holds(name))
}

/// mu(E_P) <= (ht P - 1)/2 + e for all height P <= c, via Fitting heights.
fn local_mu_bound(
    e: &PresentedModule,
    c: i64,
    rank: i64,
    budget: &Budget,
) -> Result<HypothesisVerdict> {
    let name = "mu(E_P)<=(ht P-1)/2+e for ht P<=l-e";
    for h in 1..=c {
        let t = (h - 1) / 2 + rank;
        let fitt = modlib::fitting_ideal(e, t as usize)?;
        let ht = groebner::height(&fitt, budget)?;
        if ht <= h {
            return Ok(HypothesisVerdict::fails(
                name,
                format!("ht Fitt_{t}(E) = {ht} <= {h}"),
            ));
        }
    }
    Ok(HypothesisVerdict::holds(name))
}
