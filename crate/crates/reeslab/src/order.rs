//! Monomial orders on exponent vectors.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic: total degree first, then the last
    /// variable with differing exponent decides (smaller exponent wins).
    GrevLex,
    /// Pure lexicographic, first variable dominant.
    Lex,
    /// The first `elim` variables compared under `inner`; ties broken by
    /// `outer` on the remaining variables. Used for elimination.
    Block {
        elim: usize,
        inner: Box<MonomialOrder>,
        outer: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    pub fn elim_block(elim: usize) -> MonomialOrder {
        MonomialOrder::Block {
            elim,
            inner: Box::new(MonomialOrder::GrevLex),
            outer: Box::new(MonomialOrder::GrevLex),
        }
    }

    /// Total order on exponent vectors; orders are compatible with
    /// multiplication and well-founded.
    pub fn cmp_exps(&self, u: &[u32], v: &[u32]) -> Ordering {
        debug_assert_eq!(u.len(), v.len());
        match self {
            MonomialOrder::GrevLex => {
                let du: u64 = u.iter().map(|&e| e as u64).sum();
                let dv: u64 = v.iter().map(|&e| e as u64).sum();
                match du.cmp(&dv) {
                    Ordering::Equal => {
                        for i in (0..u.len()).rev() {
                            match u[i].cmp(&v[i]) {
                                Ordering::Equal => continue,
                                // larger exponent in a later variable is smaller
                                Ordering::Less => return Ordering::Greater,
                                Ordering::Greater => return Ordering::Less,
                            }
                        }
                        Ordering::Equal
                    }
                    o => o,
                }
            }
            MonomialOrder::Lex => {
                for i in 0..u.len() {
                    match u[i].cmp(&v[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { elim, inner, outer } => {
                let e = *elim;
                match inner.cmp_exps(&u[..e], &v[..e]) {
                    Ordering::Equal => outer.cmp_exps(&u[e..], &v[e..]),
                    o => o,
                }
            }
        }
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        if let MonomialOrder::Block { elim, inner, outer } = self {
            if *elim < 1 || *elim > nvars {
                return Err(Error::Input(format!(
                    "block elimination count {elim} out of range for {nvars} variables"
                )));
            }
            inner.validate(*elim)?;
            outer.validate(nvars - elim)?;
        }
        Ok(())
    }
}

/// Public comparison with a length check, per the toolkit API.
pub fn monomial_compare(order: &MonomialOrder, u: &[u32], v: &[u32]) -> Result<Ordering> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch);
    }
    Ok(order.cmp_exps(u, v))
}
