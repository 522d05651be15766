//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line. A failing sub-check names itself in the line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reeslab::bourbaki::{self, BourbakiMode};
use reeslab::checker;
use reeslab::config::{Budget, Config};
use reeslab::field::{FieldSpec, Scalar};
use reeslab::groebner::{self, Ideal};
use reeslab::modlib::{self, PresentedModule};
use reeslab::parse::parse_polynomial;
use reeslab::poly::Polynomial;
use reeslab::rees;
use reeslab::ring::PolyRing;
use std::sync::Arc;

fn ring(vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::standard(FieldSpec::default_prime(), vars)
}

fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
    Ideal::new(
        r,
        gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect(),
    )
    .unwrap()
}

fn direct_sum(r: &Arc<PolyRing>, parts: &[&[&str]], budget: &Budget) -> PresentedModule {
    let ideals: Vec<Ideal> = parts.iter().map(|p| ideal(r, p)).collect();
    PresentedModule::direct_sum_of_ideals(r, &ideals, budget).unwrap()
}

struct Checklist {
    criterion: String,
    failures: Vec<String>,
    total: usize,
}

impl Checklist {
    fn new(criterion: &str) -> Checklist {
        Checklist {
            criterion: criterion.into(),
            failures: vec![],
            total: 0,
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.total += 1;
        if !ok {
            self.failures.push(name.into());
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("acceptance {}: PASS ({} checks)", self.criterion, self.total);
        } else {
            println!(
                "acceptance {}: FAIL ({}/{} checks failed: {})",
                self.criterion,
                self.failures.len(),
                self.total,
                self.failures.join(", ")
            );
        }
        assert!(
            self.failures.is_empty(),
            "criterion `{}` failed: {}",
            self.criterion,
            self.failures.join(", ")
        );
    }
}

// ---------------------------------------------------------------------------
// shared corpus: direct sums of monomial ideals in at most 4 variables

struct CorpusItem {
    label: &'static str,
    ring: Arc<PolyRing>,
    parts: Vec<Vec<&'static str>>,
}

fn corpus() -> Vec<CorpusItem> {
    let r2 = ring(&["x", "y"]);
    let r3 = ring(&["x", "y", "z"]);
    let r4 = ring(&["x", "y", "z", "w"]);
    let items: Vec<(&'static str, &Arc<PolyRing>, Vec<Vec<&'static str>>)> = vec![
        ("m01", &r2, vec![vec!["x", "y"]]),
        ("m02", &r2, vec![vec!["x^2", "x*y", "y^2"]]),
        ("m03", &r2, vec![vec!["x^2", "y^3"]]),
        ("m04", &r2, vec![vec!["x", "y"], vec!["x", "y"]]),
        ("m05", &r2, vec![vec!["x^2", "x*y"], vec!["y^2", "x*y"]]),
        ("m06", &r2, vec![vec!["x", "y^2"], vec!["x^3", "y"]]),
        ("m07", &r2, vec![vec!["x", "y"], vec!["x^2", "x*y", "y^2"]]),
        ("m08", &r2, vec![vec!["x", "y"], vec!["x", "y"], vec!["x", "y"]]),
        ("m09", &r3, vec![vec!["x", "y", "z"]]),
        ("m10", &r3, vec![vec!["x*y", "y*z", "x*z"]]),
        ("m11", &r3, vec![vec!["x^2", "y^2", "z^2"]]),
        ("m12", &r3, vec![vec!["x", "y"], vec!["y", "z"]]),
        ("m13", &r3, vec![vec!["x^2", "x*y"], vec!["y", "z"]]),
        ("m14", &r3, vec![vec!["x^2", "x*y"], vec!["y*z", "z^2"]]),
        ("m15", &r3, vec![vec!["x", "z"], vec!["x", "y"]]),
        ("m16", &r3, vec![vec!["x", "y", "z"], vec!["x", "y", "z"]]),
        ("m17", &r3, vec![vec!["x*y", "z^2"]]),
        ("m18", &r3, vec![vec!["x", "y^2", "z^3"]]),
        ("m19", &r3, vec![vec!["x^2", "y"], vec!["z", "x"]]),
        ("m20", &r3, vec![vec!["x", "y"], vec!["y", "z"], vec!["x", "z"]]),
        ("m21", &r4, vec![vec!["x", "y", "z", "w"]]),
        ("m22", &r4, vec![vec!["x", "y"], vec!["z", "w"]]),
        ("m23", &r4, vec![vec!["x*y", "z*w"]]),
        ("m24", &r4, vec![vec!["x", "y", "z"], vec!["y", "z", "w"]]),
        ("m25", &r4, vec![vec!["x^2", "x*y"], vec!["z^2", "z*w"]]),
        ("m26", &r4, vec![vec!["x", "w"], vec!["y", "z"], vec!["x", "z"]]),
        ("m27", &r4, vec![vec!["x*z", "y*w", "x*w"]]),
    ];
    items
        .into_iter()
        .map(|(label, r, parts)| CorpusItem {
            label,
            ring: r.clone(),
            parts,
        })
        .collect()
}

fn corpus_module(item: &CorpusItem, budget: &Budget) -> PresentedModule {
    let parts: Vec<&[&str]> = item.parts.iter().map(|p| p.as_slice()).collect();
    direct_sum(&item.ring, &parts, budget)
}

// ---------------------------------------------------------------------------
// criterion 1: worked example A, E = (x^2, x*y) (+) (y, z)

#[test]
fn criterion_1_example_a() {
    let budget = Budget::default();
    let config = Config::default();
    let r = ring(&["x", "y", "z"]);
    let e = direct_sum(&r, &[&["x^2", "x*y"], &["y", "z"]], &budget);
    let mut list = Checklist::new("1 (example A)");

    list.check("rank = 2", modlib::module_rank(&e).unwrap() == 2);
    list.check(
        "G_infinity",
        checker::check_gs(&e, None, &budget).unwrap().passing(),
    );
    let p = rees::rees_algebra(&e, &budget).unwrap();
    list.check(
        "analytic spread = 4",
        rees::analytic_spread(&p, &budget).unwrap() == 4,
    );
    let e1 = rees::power_component(&p, 1, &budget).unwrap();
    list.check("depth E^1 = 2", modlib::depth(&e1, &budget).unwrap() == 2);
    let e2 = rees::power_component(&p, 2, &budget).unwrap();
    // The reference value for this entry is 2. The computed value is 1:
    // E^2 contains the summand (x^2,xy)(y,z) = x(x,y)(y,z), and y is a
    // socle element of R/(x,y)(y,z), so that summand has depth 1. The
    // depth bound used downstream only needs depth E^2 >= 1, so the
    // conclusions (linear type, Cohen-Macaulay) are unaffected.
    list.check("depth E^2 = 2", modlib::depth(&e2, &budget).unwrap() == 2);

    let b = bourbaki::generic_bourbaki(&e, None, BourbakiMode::Symbolic, &config, &budget)
        .unwrap();
    // reference display for the generic Bourbaki ideal
    let display = ideal(
        &b.ring,
        &[
            "z11*x^4 + z21*x^3*y",
            "z11*x^3*y + z21*x^2*y^2",
            "z31*y^2 + z41*y*z",
            "z31*y*z + z41*z^2",
        ],
    );
    // mutual GB membership after specializing the coefficients z_ij
    let zvals: Vec<i64> = vec![3, 5, 7, 11];
    let assign = |idx: usize| -> Option<Scalar> {
        if idx < 3 {
            None
        } else {
            Some(r.field.from_i64(zvals[idx - 3]))
        }
    };
    let spec_ideal = |i: &Ideal| -> Ideal {
        Ideal::new(
            &r,
            i.gens
                .iter()
                .map(|g| g.specialize(&r, &assign).unwrap())
                .collect(),
        )
        .unwrap()
    };
    let ours = spec_ideal(&b.ideal);
    let theirs = spec_ideal(&display);
    // The reference display has generators of degrees 4, 4, 2, 2. Every
    // functional embedding of the rank-1 quotient yields an ideal whose
    // generators share one degree after a twist, so the display cannot be
    // an embedded image of the quotient and the two ideals differ. Both
    // do have height 2 and the same analytic spread.
    list.check(
        "bourbaki display match",
        groebner::ideal_equal(&ours, &theirs, &budget).unwrap(),
    );
    list.check(
        "grade(I) >= 2",
        groebner::height(&ours, &budget).unwrap() >= 2,
    );
    list.check("linear type", rees::is_linear_type(&p, &budget).unwrap());
    let cm = rees::rees_cm_test(&p, &budget).unwrap();
    list.check("R(E) CM", cm.is_cm);
    list.check("dim R(E) = 5", cm.dim == 5);
    list.finish();
}

// ---------------------------------------------------------------------------
// criterion 2: worked example B, E = (x^2, x*y) (+) (y*z, z^2)

#[test]
fn criterion_2_example_b() {
    let budget = Budget::default();
    let config = Config::default();
    let r = ring(&["x", "y", "z"]);
    let e = direct_sum(&r, &[&["x^2", "x*y"], &["y*z", "z^2"]], &budget);
    let mut list = Checklist::new("2 (example B)");

    list.check("mu = 4", modlib::minimal_generators(&e) == 4);
    list.check("rank = 2", modlib::module_rank(&e).unwrap() == 2);
    let b = bourbaki::generic_bourbaki(&e, None, BourbakiMode::Random, &config, &budget)
        .unwrap();
    list.check("bourbaki height = 2", b.height == 2);
    list.check("depth E = 2", modlib::depth(&e, &budget).unwrap() == 2);
    let report = checker::check_prop_minrank(&e, &config, &budget).unwrap();
    list.check("minrank hypotheses hold", report.all_hypotheses_hold);
    list.check(
        "minrank conclusion verified",
        report.direct_verification.linear_type && report.direct_verification.cm.is_cm,
    );
    list.check("minrank consistent", report.consistent);
    list.finish();
}

// ---------------------------------------------------------------------------
// criterion 3: spread and dimension bounds over the corpus

#[test]
fn criterion_3_bound_suite() {
    let budget = Budget::default();
    let items = corpus();
    assert!(items.len() >= 25);
    let mut list = Checklist::new("3 (bound suite)");
    for item in &items {
        let e = corpus_module(item, &budget);
        let d = item.ring.nvars() as i64;
        let rank = modlib::module_rank(&e).unwrap() as i64;
        let p = rees::rees_algebra(&e, &budget).unwrap();
        let l = rees::analytic_spread(&p, &budget).unwrap();
        let dim = groebner::krull_dimension(&p.rees.defining_ideal, &budget).unwrap();
        let free = modlib::minimal_presentation(&e).phi.cols == 0;
        list.check(
            &format!("{}: l <= d+e-1", item.label),
            free || l <= d + rank - 1,
        );
        list.check(&format!("{}: dim R(E) = d+e", item.label), dim == d + rank);
    }
    list.finish();
}

// ---------------------------------------------------------------------------
// criterion 4: reduction number oracle for (x^2, xy, y^2)

#[test]
fn criterion_4_reduction_number_oracle() {
    let budget = Budget::default();
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2", "x*y", "y^2"]);
    let e = PresentedModule::from_ideal(&i, &budget).unwrap();
    let p = rees::rees_algebra(&e, &budget).unwrap();
    let mut list = Checklist::new("4 (reduction number)");
    for seed in [42u64, 101, 7] {
        let config = Config {
            seed,
            ..Config::default()
        };
        let r_e = rees::reduction_number(&p, &config, &budget).unwrap();
        list.check(&format!("random U, seed {seed}: r = 1"), r_e.value == 1);
    }
    // hand oracle: U = (x^2, y^2) with U * I = I^2
    let one = r.field.one();
    let zero = r.field.zero();
    let u = vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), zero, one],
    ];
    list.check(
        "oracle U = (x^2, y^2): r = 1",
        rees::reduction_number_with_u(&p, &u, 3, &budget).unwrap() == 1,
    );
    list.finish();
}

// ---------------------------------------------------------------------------
// criterion 5: kernel property suites

fn rand_poly(r: &Arc<PolyRing>, max_deg: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let nv = r.nvars();
    let mut p = Polynomial::zero(r);
    for _ in 0..rng.gen_range(1..=3) {
        let mut exp = vec![0u32; nv];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            exp[rng.gen_range(0..nv)] += 1;
        }
        let c = r.field.from_i64(rng.gen_range(1..1000));
        p = p.add(&Polynomial::monomial(r, exp, c)).unwrap();
    }
    p
}

#[test]
fn criterion_5_kernel_properties() {
    let budget = Budget::default();
    let r3 = ring(&["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut list = Checklist::new("5 (kernel properties)");

    // (a) normal-form membership consistency, 1000 instances
    let pool = [
        ideal(&r3, &["x^2 - y*z", "x*y - z^2"]),
        ideal(&r3, &["x*y", "y*z", "x*z"]),
        ideal(&r3, &["x^3 - y^3", "y^2 - x*z"]),
        ideal(&r3, &["x + y + z", "x*y*z"]),
    ];
    let gbs: Vec<_> = pool
        .iter()
        .map(|i| groebner::groebner_basis(i, &budget).unwrap())
        .collect();
    let mut membership_ok = true;
    for _ in 0..1000 {
        let k = rng.gen_range(0..pool.len());
        let mut f = Polynomial::zero(&r3);
        for g in &pool[k].gens {
            f = f
                .add(&g.mul(&rand_poly(&r3, 2, &mut rng)).unwrap())
                .unwrap();
        }
        let h = rand_poly(&r3, 3, &mut rng);
        let nf_f = groebner::normal_form(&f, &gbs[k], &budget).unwrap();
        let nf_sum = groebner::normal_form(&f.add(&h).unwrap(), &gbs[k], &budget).unwrap();
        let nf_h = groebner::normal_form(&h, &gbs[k], &budget).unwrap();
        if !nf_f.is_zero() || !nf_sum.sub(&nf_h).unwrap().is_zero() {
            membership_ok = false;
            break;
        }
    }
    list.check("normal-form membership, 1000 instances", membership_ok);

    // (b) Koszul homology of 20 random regular sequences vanishes above 0
    let mut found = 0;
    let mut koszul_ok = true;
    while found < 20 {
        let gens: Vec<Polynomial> = (0..3)
            .map(|v| {
                let a = rng.gen_range(1..=2u32);
                let mut exp = vec![0u32; 3];
                exp[v] = a;
                let mut p = Polynomial::monomial(&r3, exp, r3.field.one());
                // a couple of extra homogeneous degree-a terms
                for _ in 0..rng.gen_range(0..=2) {
                    let mut e = vec![0u32; 3];
                    for _ in 0..a {
                        e[rng.gen_range(0..3)] += 1;
                    }
                    let c = r3.field.from_i64(rng.gen_range(1..1000));
                    p = p.add(&Polynomial::monomial(&r3, e, c)).unwrap();
                }
                p
            })
            .collect();
        let i = Ideal::new(&r3, gens).unwrap();
        // three elements form a regular sequence iff they cut dimension 0
        match groebner::krull_dimension(&i, &budget) {
            Ok(0) => {}
            _ => continue,
        }
        found += 1;
        let h = modlib::koszul_homology(&i, &budget).unwrap();
        for hi in h.iter().skip(1) {
            if !modlib::is_zero_module(hi) {
                koszul_ok = false;
            }
        }
    }
    list.check("Koszul H_{i>0} = 0, 20 regular sequences", koszul_ok);

    // (c) saturation idempotence
    let mut sat_ok = true;
    for _ in 0..10 {
        let k = rng.gen_range(0..pool.len());
        let f = rand_poly(&r3, 2, &mut rng);
        if f.is_zero() {
            continue;
        }
        let s1 = groebner::saturate(&pool[k], &f, &budget).unwrap();
        let s2 = groebner::saturate(&s1, &f, &budget).unwrap();
        if !groebner::ideal_equal(&s1, &s2, &budget).unwrap() {
            sat_ok = false;
        }
    }
    list.check("saturation idempotence", sat_ok);

    // (d) resolutions from runs 1-3: minimal and d o d = 0
    let budget = Budget::default();
    let r = ring(&["x", "y", "z"]);
    let mut modules = vec![
        direct_sum(&r, &[&["x^2", "x*y"], &["y", "z"]], &budget),
        direct_sum(&r, &[&["x^2", "x*y"], &["y*z", "z^2"]], &budget),
    ];
    for item in corpus() {
        modules.push(corpus_module(&item, &budget));
    }
    let mut res_ok = true;
    for m in &modules {
        let res = modlib::free_resolution(m, &budget).unwrap();
        for d in &res.differentials {
            for i in 0..d.rows {
                for j in 0..d.cols {
                    if d.at(i, j).is_unit_constant() {
                        res_ok = false;
                    }
                }
            }
        }
        for w in res.differentials.windows(2) {
            let prod = w[0].matmul(&w[1]).unwrap();
            for i in 0..prod.rows {
                for j in 0..prod.cols {
                    if !prod.at(i, j).is_zero() {
                        res_ok = false;
                    }
                }
            }
        }
    }
    list.check("resolutions minimal, d o d = 0", res_ok);
    list.finish();
}

// ---------------------------------------------------------------------------
// criterion 6: soundness coupling over the corpus

#[test]
fn criterion_6_soundness_coupling() {
    let budget = Budget::default();
    let config = Config::default();
    let mut list = Checklist::new("6 (soundness coupling)");
    let mut completed = 0;
    for item in corpus() {
        let e = corpus_module(&item, &budget);
        for (name, run) in [
            ("linear", checker::check_theorem_linear(&e, &config, &budget)),
            ("minrank", checker::check_prop_minrank(&e, &config, &budget)),
        ] {
            match run {
                Ok(report) => {
                    completed += 1;
                    list.check(
                        &format!("{} {name} consistent", item.label),
                        report.consistent,
                    );
                }
                Err(reeslab::Error::BudgetExceeded(_)) => {}
                Err(other) => panic!("{} {name}: {other}", item.label),
            }
        }
    }
    assert!(completed >= 40, "only {completed} pipeline runs completed");
    list.finish();
}

// ---------------------------------------------------------------------------
// criterion 7: Bourbaki consistency over the corpus

#[test]
fn criterion_7_bourbaki_consistency() {
    let budget = Budget::default();
    let config = Config::default();
    let mut list = Checklist::new("7 (bourbaki consistency)");
    let mut covered = 0;
    for item in corpus() {
        let e = corpus_module(&item, &budget);
        if modlib::module_rank(&e).unwrap() < 2 {
            continue;
        }
        let b = match bourbaki::generic_bourbaki(&e, None, BourbakiMode::Random, &config, &budget)
        {
            Ok(b) => b,
            Err(reeslab::Error::BudgetExceeded(_)) => continue,
            Err(other) => panic!("{}: {other}", item.label),
        };
        let v = match bourbaki::bourbaki_verify(&b, &e, &config, &budget) {
            Ok(v) => v,
            Err(reeslab::Error::BudgetExceeded(_)) => continue,
            Err(other) => panic!("{} verify: {other}", item.label),
        };
        covered += 1;
        if let Some(sm) = v.spread_match {
            list.check(&format!("{}: l(I) = l(E)-e+1", item.label), sm);
        }
        list.check(
            &format!("{}: height stable over 3 seeds", item.label),
            v.height_seed_stable,
        );
    }
    assert!(covered >= 8, "only {covered} corpus members covered");
    list.finish();
}
