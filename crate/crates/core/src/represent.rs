//! 0/1 representatives of orbits, built from lace diagrams, and exact
//! integer rank computations on the partial products of a chain.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kostant::{DimensionVector, RankPattern, Triangle};
use crate::lace::LaceDiagram;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[i128] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i128) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a
                        .checked_mul(rhs.get(k, j))
                        .ok_or(Error::Overflow("matrix product"))?;
                    let cell = &mut out.data[i * rhs.cols + j];
                    *cell = cell
                        .checked_add(term)
                        .ok_or(Error::Overflow("matrix product"))?;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `{"shape": [rows, cols], "data": [...]}` with `data` row-major.
impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            shape: [usize; 2],
            data: &'a [i128],
        }
        Wire {
            shape: [self.rows, self.cols],
            data: &self.data,
        }
        .serialize(serializer)
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn exact_rank(m: &IntMatrix) -> Result<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let at = |r: usize, c: usize| r * cols + c;
    let overflow = || Error::Overflow("rank elimination");
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[at(r, col)] != 0) else {
            continue;
        };
        if p != rank {
            for c in 0..cols {
                a.swap(at(p, c), at(rank, c));
            }
        }
        let pivot = a[at(rank, col)];
        for r in rank + 1..rows {
            let lead = a[at(r, col)];
            for c in col + 1..cols {
                let x = pivot.checked_mul(a[at(r, c)]).ok_or_else(overflow)?;
                let y = lead.checked_mul(a[at(rank, c)]).ok_or_else(overflow)?;
                // exact by Sylvester's identity
                a[at(r, c)] = x.checked_sub(y).ok_or_else(overflow)? / prev;
            }
            a[at(r, col)] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

/// Matrices `A_1, ..., A_n` with `A_i : C^{d_{i-1}} -> C^{d_i}` of shape
/// `d_i x d_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentativeTuple {
    #[serde(skip)]
    dims: DimensionVector,
    matrices: Vec<IntMatrix>,
}

impl RepresentativeTuple {
    pub fn new(dims: DimensionVector, matrices: Vec<IntMatrix>) -> Result<Self> {
        if matrices.len() != dims.order() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for order {}",
                matrices.len(),
                dims.order()
            )));
        }
        for (i, a) in matrices.iter().enumerate() {
            let want = (dims.get(i + 1) as usize, dims.get(i) as usize);
            if (a.rows, a.cols) != want {
                return Err(Error::ShapeMismatch(format!(
                    "A_{} is {}x{}, expected {}x{}",
                    i + 1,
                    a.rows,
                    a.cols,
                    want.0,
                    want.1
                )));
            }
        }
        Ok(Self { dims, matrices })
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    /// `A_i`, one-based.
    pub fn map(&self, i: usize) -> &IntMatrix {
        &self.matrices[i - 1]
    }
}

/// Dots of each column indexed bottom-up; every link `(x, y) - (x+1, y')`
/// puts a one in `A_{x+1}` at (index of `y'`, index of `y`).
pub fn representative_tuple(g: &LaceDiagram) -> Result<RepresentativeTuple> {
    // rejects dots with two links on one side
    g.strands()?;
    let index: Vec<BTreeMap<i64, usize>> = g
        .columns()
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, &y)| (y, i)).collect())
        .collect();
    let dims = g.dimension_vector();
    let mut matrices: Vec<IntMatrix> = (1..=dims.order())
        .map(|x| IntMatrix::zeros(dims.get(x) as usize, dims.get(x - 1) as usize))
        .collect();
    for s in g.segments() {
        let col = index[s.x][&s.from];
        let row = index[s.x + 1][&s.to];
        matrices[s.x].set(row, col, 1);
    }
    RepresentativeTuple::new(dims, matrices)
}

/// `r[k,l] = rank(A_l ... A_{k+1})` for `k < l`, and `r[i,i] = d_i`.
pub fn partial_products_ranks(t: &RepresentativeTuple) -> Result<RankPattern> {
    let n = t.dims.order();
    let mut r = Triangle::<u64>::new(n);
    for k in 0..=n {
        *r.get_mut(k, k) = t.dims.get(k);
        let mut prod: Option<IntMatrix> = None;
        for l in k + 1..=n {
            let next = match &prod {
                None => t.map(l).clone(),
                Some(p) => t.map(l).mul(p)?,
            };
            if next.is_zero() {
                // every longer product vanishes too
                break;
            }
            *r.get_mut(k, l) = exact_rank(&next)? as u64;
            prod = Some(next);
        }
    }
    Ok(RankPattern::from_triangle(r))
}

/// Whether `A_n ... A_1 = 0`.
pub fn product_is_zero(t: &RepresentativeTuple) -> Result<bool> {
    let mut prod = t.map(1).clone();
    for l in 2..=t.dims.order() {
        if prod.is_zero() {
            return Ok(true);
        }
        prod = t.map(l).mul(&prod)?;
    }
    Ok(prod.is_zero())
}
