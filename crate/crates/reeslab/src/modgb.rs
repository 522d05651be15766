//! Buchberger engine for submodules of free modules R^c.
//!
//! Ideals are the one-component case; syzygies and kernels come from
//! component elimination with a position-over-term order.

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::PolyMatrix;
use crate::poly::{exp_divides, exp_lcm, exp_sub, ExpVec, Polynomial};
use crate::ring::PolyRing;
use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

/// Order on module terms (monomial, component).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModOrder {
    /// Term-over-position: ring order on monomials, lower component wins ties.
    Top,
    /// Position-over-term: lower component dominant. An element whose lead
    /// sits in component >= k has every term in components >= k, which is
    /// what kernel extraction relies on.
    Pot,
}

/// An element of R^c as one polynomial per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModElem {
    pub comps: Vec<Polynomial>,
}

impl ModElem {
    pub fn zero(ring: &Arc<PolyRing>, ncomp: usize) -> ModElem {
        ModElem {
            comps: vec![Polynomial::zero(ring); ncomp],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn from_col(ring: &Arc<PolyRing>, col: Vec<Polynomial>) -> ModElem {
        let _ = ring;
        ModElem { comps: col }
    }

    /// Leading term under the module order: (component, exponent, coeff).
    pub fn lead(&self, order: ModOrder, ring: &PolyRing) -> Option<(usize, &ExpVec, &Scalar)> {
        match order {
            ModOrder::Pot => {
                for (i, p) in self.comps.iter().enumerate() {
                    if let Some((e, c)) = p.lead() {
                        return Some((i, e, c));
                    }
                }
                None
            }
            ModOrder::Top => {
                let mut best: Option<(usize, &ExpVec, &Scalar)> = None;
                for (i, p) in self.comps.iter().enumerate() {
                    if let Some((e, c)) = p.lead() {
                        best = match best {
                            None => Some((i, e, c)),
                            Some((bi, be, bc)) => match ring.order.cmp_exps(e, be) {
                                Ordering::Greater => Some((i, e, c)),
                                Ordering::Less => Some((bi, be, bc)),
                                Ordering::Equal => {
                                    if i < bi {
                                        Some((i, e, c))
                                    } else {
                                        Some((bi, be, bc))
                                    }
                                }
                            },
                        };
                    }
                }
                best
            }
        }
    }

    fn sub_scaled_shifted(&self, g: &ModElem, exp: &[u32], c: &Scalar) -> ModElem {
        ModElem {
            comps: self
                .comps
                .iter()
                .zip(&g.comps)
                .map(|(a, b)| a.sub(&b.mul_term(exp, c)).expect("same ring"))
                .collect(),
        }
    }

    fn scale(&self, c: &Scalar) -> ModElem {
        ModElem {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Remove the current leading term (first term of component `comp`).
    fn pop_lead(&mut self, comp: usize) -> (ExpVec, Scalar) {
        self.comps[comp].terms.remove(0)
    }
}

struct Engine<'a> {
    ring: Arc<PolyRing>,
    order: ModOrder,
    budget: &'a Budget,
    start: Instant,
}

impl<'a> Engine<'a> {
    fn check_time(&self) -> Result<()> {
        if self.start.elapsed() > self.budget.time_cap() {
            return Err(Error::BudgetExceeded("time cap".into()));
        }
        Ok(())
    }

    /// Full normal form: every remaining term irreducible by the basis leads.
    fn normal_form(&self, f: &ModElem, basis: &[ModElem]) -> ModElem {
        let ring = self.ring.clone();
        let field = ring.field.clone();
        let ncomp = f.comps.len();
        let mut rem = f.clone();
        let mut out = ModElem::zero(&ring, ncomp);
        'outer: while let Some((comp, exp, coeff)) = {
            let l = rem.lead(self.order, &ring);
            l.map(|(i, e, c)| (i, e.clone(), c.clone()))
        } {
            for g in basis {
                if let Some((gc, ge, gcoef)) = g.lead(self.order, &ring) {
                    if gc == comp && exp_divides(ge, &exp) {
                        let factor = field.div(&coeff, gcoef);
                        let shift = exp_sub(&exp, ge);
                        rem = rem.sub_scaled_shifted(g, &shift, &factor);
                        continue 'outer;
                    }
                }
            }
            // irreducible: move to output
            let (e, c) = rem.pop_lead(comp);
            out.comps[comp] = out.comps[comp]
                .add(&Polynomial::monomial(&ring, e, c))
                .expect("same ring");
        }
        out
    }

    fn s_elem(&self, f: &ModElem, g: &ModElem) -> Option<ModElem> {
        let ring = self.ring.clone();
        let field = ring.field.clone();
        let (fc, fe, fcoef) = f.lead(self.order, &ring)?;
        let (gc, ge, gcoef) = g.lead(self.order, &ring)?;
        if fc != gc {
            return None;
        }
        let lcm = exp_lcm(fe, ge);
        let a = exp_sub(&lcm, fe);
        let b = exp_sub(&lcm, ge);
        let inv_f = field.inv(fcoef);
        let inv_g = field.inv(gcoef);
        let lf = ModElem {
            comps: f.comps.iter().map(|p| p.mul_term(&a, &inv_f)).collect(),
        };
        let s = lf.sub_scaled_shifted(g, &b, &inv_g);
        Some(s)
    }

    fn buchberger(&self, gens: &[ModElem]) -> Result<Vec<ModElem>> {
        let ring = self.ring.clone();
        let mut basis: Vec<ModElem> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let mut pending: Vec<(usize, usize)> = vec![];
        let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
        let add_pairs = |basis: &[ModElem],
                             t: usize,
                             pending: &mut Vec<(usize, usize)>,
                             pending_set: &mut HashSet<(usize, usize)>| {
            for i in 0..t {
                let li = basis[i].lead(self.order, &ring);
                let lt = basis[t].lead(self.order, &ring);
                if let (Some((ci, _, _)), Some((ct, _, _))) = (li, lt) {
                    if ci == ct {
                        pending.push((i, t));
                        pending_set.insert((i, t));
                    }
                }
            }
        };
        for t in 0..basis.len() {
            add_pairs(&basis, t, &mut pending, &mut pending_set);
        }
        let ncomp = basis.first().map(|b| b.comps.len()).unwrap_or(0);

        while !pending.is_empty() {
            self.check_time()?;
            // normal strategy: smallest lcm degree first
            let mut best = 0;
            let mut best_deg = u64::MAX;
            for (k, &(i, j)) in pending.iter().enumerate() {
                let (_, ei, _) = basis[i].lead(self.order, &ring).unwrap();
                let (_, ej, _) = basis[j].lead(self.order, &ring).unwrap();
                let d: u64 = exp_lcm(ei, ej).iter().map(|&e| e as u64).sum();
                if d < best_deg {
                    best_deg = d;
                    best = k;
                }
            }
            let (i, j) = pending.swap_remove(best);
            pending_set.remove(&(i, j));

            let (ci, ei, _) = {
                let (c, e, s) = basis[i].lead(self.order, &ring).unwrap();
                (c, e.clone(), s.clone())
            };
            let (ej,) = {
                let (_, e, _) = basis[j].lead(self.order, &ring).unwrap();
                (e.clone(),)
            };
            // product criterion (ideal case only: it does not hold for modules)
            if ncomp == 1 {
                let coprime = ei.iter().zip(&ej).all(|(&a, &b)| a.min(b) == 0);
                if coprime {
                    continue;
                }
            }
            // chain criterion
            let lcm_ij = exp_lcm(&ei, &ej);
            let mut skip = false;
            for k in 0..basis.len() {
                if k == i || k == j {
                    continue;
                }
                if let Some((ck, ek, _)) = basis[k].lead(self.order, &ring) {
                    if ck == ci && exp_divides(ek, &lcm_ij) {
                        let p1 = (i.min(k), i.max(k));
                        let p2 = (j.min(k), j.max(k));
                        if !pending_set.contains(&p1) && !pending_set.contains(&p2) {
                            skip = true;
                            break;
                        }
                    }
                }
            }
            if skip {
                continue;
            }

            let s = match self.s_elem(&basis[i], &basis[j]) {
                Some(s) => s,
                None => continue,
            };
            let r = self.normal_form(&s, &basis);
            if r.is_zero() {
                continue;
            }
            if let Some(d) = r
                .comps
                .iter()
                .filter_map(|p| p.total_degree())
                .max()
            {
                if d > self.budget.degree_cap {
                    return Err(Error::BudgetExceeded(format!(
                        "degree cap {} (reached {})",
                        self.budget.degree_cap, d
                    )));
                }
            }
            let t = basis.len();
            basis.push(r);
            add_pairs(&basis, t, &mut pending, &mut pending_set);
        }

        Ok(self.interreduce(basis))
    }

    /// Auto-reduce: drop redundant elements, tail-reduce, make monic, sort.
    fn interreduce(&self, mut basis: Vec<ModElem>) -> Vec<ModElem> {
        let ring = self.ring.clone();
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < basis.len() {
                let f = basis.remove(i);
                let r = self.normal_form(&f, &basis);
                if r.is_zero() {
                    changed = true;
                    continue;
                }
                if r != f {
                    changed = true;
                }
                basis.insert(i, r);
                i += 1;
            }
            if !changed {
                break;
            }
        }
        for b in basis.iter_mut() {
            if let Some((_, _, c)) = b.lead(self.order, &ring) {
                let inv = ring.field.inv(c);
                *b = b.scale(&inv);
            }
        }
        let order = self.order;
        basis.sort_by(|a, b| {
            let la = a.lead(order, &ring).unwrap();
            let lb = b.lead(order, &ring).unwrap();
            match la.0.cmp(&lb.0) {
                Ordering::Equal => ring.order.cmp_exps(lb.1, la.1),
                o => o,
            }
        });
        basis
    }
}

/// Reduced module Groebner basis of the submodule generated by `gens`.
pub fn module_groebner(
    ring: &Arc<PolyRing>,
    gens: &[ModElem],
    order: ModOrder,
    budget: &Budget,
) -> Result<Vec<ModElem>> {
    let eng = Engine {
        ring: ring.clone(),
        order,
        budget,
        start: Instant::now(),
    };
    eng.buchberger(gens)
}

pub fn module_normal_form(
    ring: &Arc<PolyRing>,
    f: &ModElem,
    basis: &[ModElem],
    order: ModOrder,
    budget: &Budget,
) -> ModElem {
    let eng = Engine {
        ring: ring.clone(),
        order,
        budget,
        start: Instant::now(),
    };
    eng.normal_form(f, basis)
}

/// Generators of ker(R^m -> R^n) for the map given by the columns of `mat`
/// (n rows, m cols). Returned as an m x k matrix whose columns generate the
/// kernel.
pub fn kernel(mat: &PolyMatrix, budget: &Budget) -> Result<PolyMatrix> {
    let ring = mat.ring.clone();
    let (n, m) = (mat.rows, mat.cols);
    if m == 0 {
        return Ok(PolyMatrix::zero(&ring, 0, 0));
    }
    // work in R^(n+m): (column_j, e_j); POT eliminates the top block
    let mut gens = vec![];
    for j in 0..m {
        let mut comps = mat.col(j);
        for k in 0..m {
            comps.push(if k == j {
                Polynomial::one(&ring)
            } else {
                Polynomial::zero(&ring)
            });
        }
        gens.push(ModElem { comps });
    }
    let gb = module_groebner(&ring, &gens, ModOrder::Pot, budget)?;
    let mut cols = vec![];
    for g in &gb {
        if g.comps[..n].iter().all(|p| p.is_zero()) {
            cols.push(g.comps[n..].to_vec());
        }
    }
    if cols.is_empty() {
        return Ok(PolyMatrix::zero(&ring, m, 0));
    }
    PolyMatrix::from_cols(&ring, cols)
}

/// Groebner basis (TOP order) of the submodule of R^c spanned by the
/// columns of `gens`.
pub fn span_groebner(gens: &PolyMatrix, budget: &Budget) -> Result<Vec<ModElem>> {
    let ring = gens.ring.clone();
    let elems: Vec<ModElem> = (0..gens.cols)
        .map(|j| ModElem::from_col(&ring, gens.col(j)))
        .collect();
    module_groebner(&ring, &elems, ModOrder::Top, budget)
}

/// Membership of a vector in a column span, via a precomputed TOP basis.
pub fn in_span(ring: &Arc<PolyRing>, v: &ModElem, basis: &[ModElem], budget: &Budget) -> bool {
    module_normal_form(ring, v, basis, ModOrder::Top, budget).is_zero()
}
