//! Dense matrices of polynomials.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::sync::Arc;

/// Row-major matrix over a polynomial ring. A matrix may have zero rows or
/// columns; the ring is always carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub ring: Arc<PolyRing>,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Polynomial::one(ring);
        }
        m
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::Input("ragged matrix rows".into()));
            }
            for p in r {
                if p.ring != *ring {
                    return Err(Error::RingMismatch);
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn from_cols(ring: &Arc<PolyRing>, cols: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let ncols = cols.len();
        let nrows = cols.first().map(|c| c.len()).unwrap_or(0);
        let mut m = PolyMatrix::zero(ring, nrows, ncols);
        for (j, c) in cols.into_iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::Input("ragged matrix columns".into()));
            }
            for (i, p) in c.into_iter().enumerate() {
                if p.ring != *ring {
                    return Err(Error::RingMismatch);
                }
                *m.at_mut(i, j) = p;
            }
        }
        Ok(m)
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.data[i * self.cols + j]
    }

    pub fn col(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut m = PolyMatrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ring != other.ring || self.rows != other.rows {
            return Err(Error::RingMismatch);
        }
        let mut m = PolyMatrix::zero(&self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                *m.at_mut(i, self.cols + j) = other.at(i, j).clone();
            }
        }
        Ok(m)
    }

    pub fn block_diag(ring: &Arc<PolyRing>, blocks: &[&PolyMatrix]) -> PolyMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = PolyMatrix::zero(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    *m.at_mut(r0 + i, c0 + j) = b.at(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn matmul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ring != other.ring || self.cols != other.rows {
            return Err(Error::RingMismatch);
        }
        let mut m = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j))?)?;
                }
                *m.at_mut(i, j) = acc;
            }
        }
        Ok(m)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn map_to_ring(
        &self,
        target: &Arc<PolyRing>,
        var_map: &[Option<usize>],
    ) -> Result<PolyMatrix> {
        let mut m = PolyMatrix::zero(target, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).map_to_ring(target, var_map)?;
            }
        }
        Ok(m)
    }

    pub fn specialize(
        &self,
        target: &Arc<PolyRing>,
        assign: &dyn Fn(usize) -> Option<Scalar>,
    ) -> Result<PolyMatrix> {
        let mut m = PolyMatrix::zero(target, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(i, j) = self.at(i, j).specialize(target, assign)?;
            }
        }
        Ok(m)
    }

    pub fn delete_row(&self, i: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(&self.ring, self.rows - 1, self.cols);
        let mut r = 0;
        for i2 in 0..self.rows {
            if i2 == i {
                continue;
            }
            for j in 0..self.cols {
                *m.at_mut(r, j) = self.at(i2, j).clone();
            }
            r += 1;
        }
        m
    }

    pub fn delete_col(&self, j: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(&self.ring, self.rows, self.cols - 1);
        for i in 0..self.rows {
            let mut c = 0;
            for j2 in 0..self.cols {
                if j2 == j {
                    continue;
                }
                *m.at_mut(i, c) = self.at(i, j2).clone();
                c += 1;
            }
        }
        m
    }

    /// Determinant by Laplace expansion; intended for the small matrices
    /// appearing in Fitting-ideal computations.
    pub fn det(&self) -> Result<Polynomial> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        if n == 1 {
            return Ok(self.at(0, 0).clone());
        }
        let mut acc = Polynomial::zero(&self.ring);
        let rest = self.delete_row(0);
        for j in 0..n {
            if self.at(0, j).is_zero() {
                continue;
            }
            let minor = rest.delete_col(j).det()?;
            let term = self.at(0, j).mul(&minor)?;
            acc = if j % 2 == 0 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
        }
        Ok(acc)
    }

    /// All t x t minors.
    pub fn minors(&self, t: usize) -> Result<Vec<Polynomial>> {
        if t == 0 {
            return Ok(vec![Polynomial::one(&self.ring)]);
        }
        if t > self.rows || t > self.cols {
            return Ok(vec![]);
        }
        let row_sets = subsets(self.rows, t);
        let col_sets = subsets(self.cols, t);
        let mut out = vec![];
        for rs in &row_sets {
            for cs in &col_sets {
                let mut sub = PolyMatrix::zero(&self.ring, t, t);
                for (a, &i) in rs.iter().enumerate() {
                    for (b, &j) in cs.iter().enumerate() {
                        *sub.at_mut(a, b) = self.at(i, j).clone();
                    }
                }
                out.push(sub.det()?);
            }
        }
        Ok(out)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
