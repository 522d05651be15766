//! Graded polynomial rings over an exact field.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::order::MonomialOrder;
use std::sync::Arc;

/// A polynomial ring k[x_1..x_d] with named variables, a weight per
/// variable (the grading), and a monomial order. Shared behind `Arc`;
/// immutable after construction.
///
/// Weights are >= 1 for user-declared variables; internally constructed
/// rings (generic Bourbaki coefficients) may carry weight-0 parameter
/// variables, which take no part in the monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub var_degrees: Vec<u32>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(
        field: FieldSpec,
        vars: Vec<String>,
        var_degrees: Vec<u32>,
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        field.validate().map_err(Error::Input)?;
        if vars.is_empty() {
            return Err(Error::Input("ring must have at least one variable".into()));
        }
        if vars.len() != var_degrees.len() {
            return Err(Error::Input("vars and var_degrees length mismatch".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable `{v}`")));
            }
        }
        order.validate(vars.len())?;
        Ok(Arc::new(PolyRing {
            field,
            vars,
            var_degrees,
            order,
        }))
    }

    /// Standard-graded grevlex ring, the common case.
    pub fn standard(field: FieldSpec, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            vec![1; vars.len()],
            MonomialOrder::GrevLex,
        )
        .expect("standard ring construction")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Weighted degree of an exponent vector under the ring grading.
    pub fn weighted_degree(&self, exp: &[u32]) -> i64 {
        exp.iter()
            .zip(&self.var_degrees)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    /// A new ring with extra variables appended (same field). The caller
    /// chooses the order for the enlarged ring.
    pub fn extended(
        &self,
        new_vars: &[(String, u32)],
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        let mut vars = self.vars.clone();
        let mut degs = self.var_degrees.clone();
        for (v, d) in new_vars {
            vars.push(v.clone());
            degs.push(*d);
        }
        // bypass the weight >= 1 check: internal rings may carry weight-0 vars
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable `{v}`")));
            }
        }
        order.validate(vars.len())?;
        Ok(Arc::new(PolyRing {
            field: self.field.clone(),
            vars,
            var_degrees: degs,
            order,
        }))
    }

    /// A new ring with extra variables *prepended*, for elimination with a
    /// block order.
    pub fn prepended(
        &self,
        new_vars: &[(String, u32)],
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        let mut vars: Vec<String> = new_vars.iter().map(|(v, _)| v.clone()).collect();
        let mut degs: Vec<u32> = new_vars.iter().map(|(_, d)| *d).collect();
        vars.extend(self.vars.iter().cloned());
        degs.extend(self.var_degrees.iter().cloned());
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable `{v}`")));
            }
        }
        order.validate(vars.len())?;
        Ok(Arc::new(PolyRing {
            field: self.field.clone(),
            vars,
            var_degrees: degs,
            order,
        }))
    }

    /// Fresh variable name not clashing with existing ones.
    pub fn fresh_var(&self, stem: &str) -> String {
        if self.var_index(stem).is_none() {
            return stem.to_string();
        }
        let mut i = 0usize;
        loop {
            let cand = format!("{stem}{i}");
            if self.var_index(&cand).is_none() {
                return cand;
            }
            i += 1;
        }
    }
}
