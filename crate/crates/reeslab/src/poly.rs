//! Exact multivariate polynomials in canonical form.

use crate::error::{Error, Result};
use crate::field::{render_scalar, scalar_is_negative, Scalar};
use crate::ring::PolyRing;
use std::cmp::Ordering;
use std::sync::Arc;

pub type ExpVec = Vec<u32>;

/// Terms are kept sorted descending under the ring order; no zero
/// coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub ring: Arc<PolyRing>,
    pub terms: Vec<(ExpVec, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![],
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(vec![0; ring.nvars()], c)],
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<PolyRing>, idx: usize) -> Polynomial {
        let mut e = vec![0; ring.nvars()];
        e[idx] = 1;
        Polynomial {
            ring: ring.clone(),
            terms: vec![(e, ring.field.one())],
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, exp: ExpVec, c: Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(exp, c)],
        }
    }

    /// Build from an arbitrary term list: merges duplicates, drops zeros,
    /// sorts canonically.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(ExpVec, Scalar)>) -> Polynomial {
        let order = &ring.order;
        terms.sort_by(|a, b| order.cmp_exps(&b.0, &a.0));
        let mut out: Vec<(ExpVec, Scalar)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 = ring.field.add(&last.1, &c);
                    continue;
                }
            }
            out.push((e, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    /// Nonzero constant, i.e. a unit of the graded ring.
    pub fn is_unit_constant(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn lead(&self) -> Option<(&ExpVec, &Scalar)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total (unweighted) degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
    }

    /// Weighted degree if homogeneous under the ring grading, else None.
    /// The zero polynomial is homogeneous of every degree (returns Some(0)).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for (e, _) in &self.terms {
            let d = self.ring.weighted_degree(e);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let field = &self.ring.field;
        let order = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match order.cmp_exps(ea, eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { field.neg(cb) } else { cb.clone() };
                    out.push((eb.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        field.sub(ca, cb)
                    } else {
                        field.add(ca, cb)
                    };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (eb, cb) in &other.terms[j..] {
            let c = if negate { field.neg(cb) } else { cb.clone() };
            out.push((eb.clone(), c));
        }
        debug_assert!(out.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let field = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    /// Multiply by a single term `c * x^exp`.
    pub fn mul_term(&self, exp: &[u32], c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, a)| {
                    let ne: ExpVec = e.iter().zip(exp).map(|(&a, &b)| a + b).collect();
                    (ne, field.mul(a, c))
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        // accumulate by repeated merging of term-scaled copies
        let mut acc = Polynomial::zero(&self.ring);
        for (e, c) in &other.terms {
            let part = self.mul_term(e, c);
            acc = acc.merge(&part, false);
        }
        debug_assert!(acc.terms.iter().all(|(_, c)| !c.is_zero()));
        Ok(acc)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.field.inv(c);
                self.scale(&inv)
            }
        }
    }

    /// Exact division: returns Some(q) with self = q * g, or None.
    pub fn div_exact(&self, g: &Polynomial) -> Option<Polynomial> {
        if g.is_zero() {
            return None;
        }
        let field = self.ring.field.clone();
        let (glead_e, glead_c) = {
            let (e, c) = g.lead().unwrap();
            (e.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut q = Polynomial::zero(&self.ring);
        while let Some((e, c)) = rem.lead() {
            let mut diff = vec![0u32; e.len()];
            for i in 0..e.len() {
                if e[i] < glead_e[i] {
                    return None;
                }
                diff[i] = e[i] - glead_e[i];
            }
            let qc = field.div(c, &glead_c);
            let qt = Polynomial::monomial(&self.ring, diff.clone(), qc.clone());
            q = q.merge(&qt, false);
            rem = rem.merge(&g.mul_term(&diff, &qc), true);
        }
        Some(q)
    }

    /// Map into a target ring via `var_map[i] = index of self's var i in
    /// target`; vars mapped to None must not occur.
    pub fn map_to_ring(
        &self,
        target: &Arc<PolyRing>,
        var_map: &[Option<usize>],
    ) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; target.nvars()];
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match var_map[i] {
                    Some(j) => ne[j] += exp,
                    None => {
                        return Err(Error::Input(format!(
                            "variable `{}` cannot be mapped away",
                            self.ring.vars[i]
                        )))
                    }
                }
            }
            terms.push((ne, c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Substitute scalars for a subset of variables, landing in `target`
    /// (which must contain the non-substituted variables by name).
    pub fn specialize(
        &self,
        target: &Arc<PolyRing>,
        assign: &dyn Fn(usize) -> Option<Scalar>,
    ) -> Result<Polynomial> {
        let field = &target.field;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut ne = vec![0u32; target.nvars()];
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match assign(i) {
                    Some(v) => {
                        for _ in 0..exp {
                            coeff = field.mul(&coeff, &v);
                        }
                    }
                    None => {
                        let j = target.var_index(&self.ring.vars[i]).ok_or_else(|| {
                            Error::Input(format!(
                                "variable `{}` missing in target ring",
                                self.ring.vars[i]
                            ))
                        })?;
                        ne[j] += exp;
                    }
                }
            }
            terms.push((ne, coeff));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Canonical textual rendering; `parse_polynomial(render(p)) == p`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let field = &self.ring.field;
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = scalar_is_negative(field, c);
            let cabs = if neg { field.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(&self.ring, e);
            if mono.is_empty() {
                out.push_str(&render_scalar(field, &cabs));
            } else if cabs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&render_scalar(field, &cabs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn render_monomial(ring: &PolyRing, e: &[u32]) -> String {
    let mut parts = vec![];
    for (i, &exp) in e.iter().enumerate() {
        if exp == 1 {
            parts.push(ring.vars[i].clone());
        } else if exp > 1 {
            parts.push(format!("{}^{}", ring.vars[i], exp));
        }
    }
    parts.join("*")
}

/// Exponent-wise divisibility.
pub fn exp_divides(div: &[u32], m: &[u32]) -> bool {
    div.iter().zip(m).all(|(&a, &b)| a <= b)
}

pub fn exp_sub(a: &[u32], b: &[u32]) -> ExpVec {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn exp_lcm(a: &[u32], b: &[u32]) -> ExpVec {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

pub fn exp_add(a: &[u32], b: &[u32]) -> ExpVec {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring() -> Arc<PolyRing> {
        PolyRing::standard(FieldSpec::default_prime(), &["x", "y", "z"])
    }

    #[test]
    fn product_of_sum_and_difference() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = x.add(&y).unwrap();
        let q = x.sub(&y).unwrap();
        let prod = p.mul(&q).unwrap();
        let expect = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn additive_identity() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        assert_eq!(x.add(&Polynomial::zero(&r)).unwrap(), x);
    }

    #[test]
    fn monomial_product() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let x2 = x.mul(&x).unwrap();
        let xy = x.mul(&y).unwrap();
        let p = x2.mul(&xy).unwrap();
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.terms[0].0, vec![3, 1, 0]);
    }

    #[test]
    fn cancellation_gives_empty_term_map() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        assert!(x.sub(&x).unwrap().terms.is_empty());
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = x.add(&y).unwrap();
        let q = x.sub(&y).unwrap();
        let prod = p.mul(&q).unwrap();
        assert_eq!(prod.div_exact(&p).unwrap(), q);
        assert!(x.div_exact(&y).is_none());
    }

    #[test]
    fn homogeneity() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let h = x.mul(&x).unwrap().add(&x.mul(&y).unwrap()).unwrap();
        assert_eq!(h.homogeneous_degree(), Some(2));
        let nh = x.add(&x.mul(&y).unwrap()).unwrap();
        assert!(!nh.is_homogeneous());
    }
}
