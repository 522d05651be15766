//! Groebner bases of ideals and derived ideal operations.

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::modgb::{module_groebner, module_normal_form, ModElem, ModOrder};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::sync::Arc;

/// Sentinel height of the unit ideal.
pub const INFINITE_HEIGHT: i64 = i64::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub ring: Arc<PolyRing>,
    pub gens: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if g.ring != *ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: vec![],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub ideal: Ideal,
    pub order: MonomialOrder,
    /// Reduced basis: monic leads, auto-reduced, canonically sorted.
    pub basis: Vec<Polynomial>,
}

fn to_elems(gens: &[Polynomial]) -> Vec<ModElem> {
    gens.iter()
        .map(|g| ModElem {
            comps: vec![g.clone()],
        })
        .collect()
}

fn from_elems(elems: Vec<ModElem>) -> Vec<Polynomial> {
    elems.into_iter().map(|mut e| e.comps.remove(0)).collect()
}

/// Reduced Groebner basis under the ring's own order.
pub fn groebner_basis(ideal: &Ideal, budget: &Budget) -> Result<GroebnerBasis> {
    groebner_basis_under(ideal, ideal.ring.order.clone(), budget)
}

/// Reduced Groebner basis under an explicit order (the ideal is re-read in
/// a ring that differs only in its order).
pub fn groebner_basis_under(
    ideal: &Ideal,
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    let ring = if ideal.ring.order == order {
        ideal.ring.clone()
    } else {
        Arc::new(PolyRing {
            field: ideal.ring.field.clone(),
            vars: ideal.ring.vars.clone(),
            var_degrees: ideal.ring.var_degrees.clone(),
            order: order.clone(),
        })
    };
    let ident: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
    let gens: Vec<Polynomial> = ideal
        .gens
        .iter()
        .map(|g| g.map_to_ring(&ring, &ident))
        .collect::<Result<_>>()?;
    let gb = module_groebner(&ring, &to_elems(&gens), ModOrder::Top, budget)?;
    let basis: Vec<Polynomial> = from_elems(gb)
        .into_iter()
        .map(|p| p.map_to_ring(&ideal.ring, &ident))
        .collect::<Result<_>>()?;
    Ok(GroebnerBasis {
        ideal: ideal.clone(),
        order,
        basis,
    })
}

/// Remainder of `f` modulo the basis; zero iff `f` is in the ideal.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis, budget: &Budget) -> Result<Polynomial> {
    if f.ring != gb.ideal.ring {
        return Err(Error::RingMismatch);
    }
    let ring = if gb.ideal.ring.order == gb.order {
        gb.ideal.ring.clone()
    } else {
        Arc::new(PolyRing {
            field: gb.ideal.ring.field.clone(),
            vars: gb.ideal.ring.vars.clone(),
            var_degrees: gb.ideal.ring.var_degrees.clone(),
            order: gb.order.clone(),
        })
    };
    let ident: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
    let fe = ModElem {
        comps: vec![f.map_to_ring(&ring, &ident)?],
    };
    let basis: Vec<ModElem> = gb
        .basis
        .iter()
        .map(|g| {
            Ok(ModElem {
                comps: vec![g.map_to_ring(&ring, &ident)?],
            })
        })
        .collect::<Result<_>>()?;
    let r = module_normal_form(&ring, &fe, &basis, ModOrder::Top, budget);
    r.comps[0].map_to_ring(&gb.ideal.ring, &ident)
}

pub fn in_ideal(f: &Polynomial, gb: &GroebnerBasis, budget: &Budget) -> Result<bool> {
    Ok(normal_form(f, gb, budget)?.is_zero())
}

/// Canonical equality via reduced bases under the ring order.
pub fn ideal_equal(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<bool> {
    let ga = groebner_basis(a, budget)?;
    let gb = groebner_basis(b, budget)?;
    Ok(ga.basis == gb.basis)
}

/// I cap k[remaining vars]: generators free of `drop_vars`, returned in the
/// original ring.
pub fn eliminate(ideal: &Ideal, drop_vars: &[usize], budget: &Budget) -> Result<Ideal> {
    let ring = &ideal.ring;
    for &v in drop_vars {
        if v >= ring.nvars() {
            return Err(Error::Input(format!("variable index {v} out of range")));
        }
    }
    if drop_vars.is_empty() {
        return Ok(ideal.clone());
    }
    // reorder: dropped vars first, block elimination order
    let mut perm: Vec<usize> = drop_vars.to_vec();
    for v in 0..ring.nvars() {
        if !drop_vars.contains(&v) {
            perm.push(v);
        }
    }
    let vars: Vec<String> = perm.iter().map(|&v| ring.vars[v].clone()).collect();
    let degs: Vec<u32> = perm.iter().map(|&v| ring.var_degrees[v]).collect();
    let elim_ring = Arc::new(PolyRing {
        field: ring.field.clone(),
        vars,
        var_degrees: degs,
        order: MonomialOrder::elim_block(drop_vars.len()),
    });
    // var_map: original index -> position in elim ring
    let mut fwd = vec![None; ring.nvars()];
    for (pos, &v) in perm.iter().enumerate() {
        fwd[v] = Some(pos);
    }
    let gens: Vec<Polynomial> = ideal
        .gens
        .iter()
        .map(|g| g.map_to_ring(&elim_ring, &fwd))
        .collect::<Result<_>>()?;
    let gb = module_groebner(&elim_ring, &to_elems(&gens), ModOrder::Top, budget)?;
    let k = drop_vars.len();
    let mut back = vec![None; elim_ring.nvars()];
    for (pos, &v) in perm.iter().enumerate() {
        back[pos] = Some(v);
    }
    let mut out = vec![];
    for e in from_elems(gb) {
        let free = e.terms.iter().all(|(exp, _)| exp[..k].iter().all(|&x| x == 0));
        if free {
            out.push(e.map_to_ring(ring, &back)?);
        }
    }
    Ideal::new(ring, out)
}

/// Intersection via the auxiliary-variable trick: eliminate w from
/// w*I + (1-w)*J.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal> {
    let ring = &a.ring;
    if *ring != b.ring {
        return Err(Error::RingMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let w_name = ring.fresh_var("w");
    let big = ring.prepended(&[(w_name, 1)], MonomialOrder::elim_block(1))?;
    let shift: Vec<Option<usize>> = (0..ring.nvars()).map(|i| Some(i + 1)).collect();
    let w = Polynomial::var(&big, 0);
    let one = Polynomial::one(&big);
    let mut gens = vec![];
    for g in &a.gens {
        gens.push(w.mul(&g.map_to_ring(&big, &shift)?)?);
    }
    let one_minus_w = one.sub(&w)?;
    for g in &b.gens {
        gens.push(one_minus_w.mul(&g.map_to_ring(&big, &shift)?)?);
    }
    let big_ideal = Ideal::new(&big, gens)?;
    let elim = eliminate(&big_ideal, &[0], budget)?;
    let mut back = vec![None; big.nvars()];
    for i in 0..ring.nvars() {
        back[i + 1] = Some(i);
    }
    let out: Vec<Polynomial> = elim
        .gens
        .iter()
        .map(|g| g.map_to_ring(ring, &back))
        .collect::<Result<_>>()?;
    Ideal::new(ring, out)
}

/// J : (f) for a single nonzero f, via (J cap (f)) / f.
pub fn quotient_by_element(j: &Ideal, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::Input("quotient by zero element".into()));
    }
    let ring = &j.ring;
    if j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let fid = Ideal::new(ring, vec![f.clone()])?;
    let cap = intersect(j, &fid, budget)?;
    let mut out = vec![];
    for g in &cap.gens {
        let q = g
            .div_exact(f)
            .ok_or_else(|| Error::Input("intersection element not divisible".into()))?;
        out.push(q);
    }
    Ideal::new(ring, out)
}

/// J : I = {g : g*I in J}.
pub fn ideal_quotient(j: &Ideal, i: &Ideal, budget: &Budget) -> Result<Ideal> {
    let ring = &j.ring;
    if *ring != i.ring {
        return Err(Error::RingMismatch);
    }
    if i.is_zero() {
        // J : (0) is the whole ring
        return Ideal::new(ring, vec![Polynomial::one(ring)]);
    }
    let mut acc: Option<Ideal> = None;
    for f in &i.gens {
        let q = quotient_by_element(j, f, budget)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => intersect(&prev, &q, budget)?,
        });
    }
    Ok(acc.unwrap())
}

/// J : f^infinity via the Rabinowitsch trick: adjoin w, add w*f - 1,
/// eliminate w.
pub fn saturate(j: &Ideal, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::Input("saturation by zero element".into()));
    }
    let ring = &j.ring;
    let w_name = ring.fresh_var("w");
    let big = ring.prepended(&[(w_name, 1)], MonomialOrder::elim_block(1))?;
    let shift: Vec<Option<usize>> = (0..ring.nvars()).map(|i| Some(i + 1)).collect();
    let w = Polynomial::var(&big, 0);
    let mut gens: Vec<Polynomial> = j
        .gens
        .iter()
        .map(|g| g.map_to_ring(&big, &shift))
        .collect::<Result<_>>()?;
    let rab = w.mul(&f.map_to_ring(&big, &shift)?)?.sub(&Polynomial::one(&big))?;
    gens.push(rab);
    let big_ideal = Ideal::new(&big, gens)?;
    let elim = eliminate(&big_ideal, &[0], budget)?;
    let mut back = vec![None; big.nvars()];
    for i in 0..ring.nvars() {
        back[i + 1] = Some(i);
    }
    let out: Vec<Polynomial> = elim
        .gens
        .iter()
        .map(|g| g.map_to_ring(ring, &back))
        .collect::<Result<_>>()?;
    Ideal::new(ring, out)
}

/// Krull dimension of R/I via a maximal independent set of variables
/// modulo the lead-term ideal; dim R/(1) = -1.
pub fn krull_dimension(ideal: &Ideal, budget: &Budget) -> Result<i64> {
    let gb = groebner_basis(ideal, budget)?;
    krull_dimension_from_gb(&gb)
}

pub fn krull_dimension_from_gb(gb: &GroebnerBasis) -> Result<i64> {
    let ring = &gb.ideal.ring;
    let n = ring.nvars();
    let leads: Vec<Vec<u32>> = gb
        .basis
        .iter()
        .filter_map(|p| p.lead().map(|(e, _)| e.clone()))
        .collect();
    if leads.iter().any(|e| e.iter().all(|&x| x == 0)) {
        return Ok(-1); // unit ideal
    }
    // max |S| with no lead monomial supported inside S
    let mut best: i64 = 0;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        let independent = leads.iter().all(|e| {
            // support of e not contained in S
            e.iter()
                .enumerate()
                .any(|(i, &x)| x > 0 && (mask >> i) & 1 == 0)
        });
        if independent {
            best = size;
        }
    }
    Ok(best)
}

/// height(I) = #vars - dim(R/I); the unit ideal gets the +infinity sentinel.
pub fn height(ideal: &Ideal, budget: &Budget) -> Result<i64> {
    let dim = krull_dimension(ideal, budget)?;
    if dim < 0 {
        return Ok(INFINITE_HEIGHT);
    }
    Ok(ideal.ring.nvars() as i64 - dim)
}
