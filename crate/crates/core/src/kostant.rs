//! Dimension vectors, Kostant partitions and rank patterns of the
//! equioriented type A quiver, and the orbit-codimension formula.
//!
//! An orbit of `GL_d` acting on chains `C^{d_0} -> C^{d_1} -> ... -> C^{d_n}`
//! is coded by a Kostant partition: a multiplicity `m[k,l]` for every
//! interval `[k,l]`, with the indicator vectors of the intervals summing to
//! `d`. The codimension of the orbit is `sum m[a] m[b] ext(a, b)` over pairs
//! of intervals.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Sizes `(d_0, ..., d_n)` of the spaces in a chain of linear maps, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct DimensionVector(Vec<u64>);

impl DimensionVector {
    pub fn new(dims: Vec<u64>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::TooShort(dims.len()));
        }
        Ok(Self(dims))
    }

    /// The order `n`; the vector has `n + 1` entries.
    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn dims(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn min(&self) -> u64 {
        *self.0.iter().min().expect("non-empty")
    }

    /// Positions attaining the minimum, ascending.
    pub fn min_positions(&self) -> Vec<usize> {
        let min = self.min();
        (0..self.0.len()).filter(|&i| self.0[i] == min).collect()
    }

    /// Smallest position attaining the minimum.
    pub fn default_star(&self) -> usize {
        self.min_positions()[0]
    }

    pub fn sorted(&self) -> Self {
        let mut v = self.0.clone();
        v.sort_unstable();
        Self(v)
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Minimum of `d_k, ..., d_l`.
    pub fn min_over(&self, k: usize, l: usize) -> u64 {
        *self.0[k..=l].iter().min().expect("non-empty range")
    }

    pub fn check_star(&self, k: usize) -> Result<()> {
        if k > self.order() {
            return Err(Error::InfeasibleVector(format!(
                "placeholder position {k} out of range 0..={}",
                self.order()
            )));
        }
        let min = self.min();
        if self.0[k] != min {
            return Err(Error::NotAMinimumPosition {
                k,
                value: self.0[k],
                min,
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<u64>> for DimensionVector {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DimensionVector> for Vec<u64> {
    fn from(d: DimensionVector) -> Self {
        d.0
    }
}

impl FromStr for DimensionVector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let dims = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| format!("bad entry {t:?}: {e}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(dims).map_err(|e| e.to_string())
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// The interval `[k, l]` of columns, `k <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub k: usize,
    pub l: usize,
}

impl Interval {
    pub fn new(k: usize, l: usize) -> Self {
        assert!(k <= l, "interval [{k},{l}] is reversed");
        Self { k, l }
    }

    /// All intervals of order `n`, sorted by `(k, l)`.
    pub fn all(n: usize) -> impl Iterator<Item = Interval> {
        (0..=n).flat_map(move |k| (k..=n).map(move |l| Interval { k, l }))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.k <= i && i <= self.l
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.k, self.l)
    }
}

/// Dense upper-triangular array indexed by `(k, l)`, `0 <= k <= l <= n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Clone + Default> Triangle<T> {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            data: vec![T::default(); (n + 1) * (n + 2) / 2],
        }
    }
}

impl<T> Triangle<T> {
    pub fn order(&self) -> usize {
        self.n
    }

    fn index(&self, k: usize, l: usize) -> usize {
        assert!(k <= l && l <= self.n, "index ({k},{l}) out of range");
        k * (self.n + 1) - k * k.saturating_sub(1) / 2 + (l - k)
    }

    pub fn get(&self, k: usize, l: usize) -> &T {
        &self.data[self.index(k, l)]
    }

    pub fn get_mut(&mut self, k: usize, l: usize) -> &mut T {
        let i = self.index(k, l);
        &mut self.data[i]
    }

    /// Rows `k = 0..=n`, each listing entries `l = k..=n`.
    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        (0..=self.n).map(move |k| {
            let start = self.index(k, k);
            &self.data[start..start + self.n + 1 - k]
        })
    }
}

/// Multiplicities `m[k,l]` of the indecomposable chains supported on `[k,l]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KostantPartition {
    m: Triangle<u64>,
}

impl KostantPartition {
    pub fn zero(n: usize) -> Self {
        Self {
            m: Triangle::new(n),
        }
    }

    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (Interval, u64)>) -> Self {
        let mut p = Self::zero(n);
        for (iv, c) in entries {
            *p.m.get_mut(iv.k, iv.l) += c;
        }
        p
    }

    /// Shorthand for `from_entries` with `(k, l, multiplicity)` triples.
    pub fn from_triples(n: usize, triples: &[(usize, usize, u64)]) -> Self {
        Self::from_entries(n, triples.iter().map(|&(k, l, c)| (Interval::new(k, l), c)))
    }

    pub fn order(&self) -> usize {
        self.m.order()
    }

    pub fn get(&self, k: usize, l: usize) -> u64 {
        *self.m.get(k, l)
    }

    pub fn set(&mut self, k: usize, l: usize, value: u64) {
        *self.m.get_mut(k, l) = value;
    }

    pub fn triangle(&self) -> &Triangle<u64> {
        &self.m
    }

    /// Non-zero entries in `(k, l)` order.
    pub fn entries(&self) -> impl Iterator<Item = (Interval, u64)> + '_ {
        Interval::all(self.order())
            .map(move |iv| (iv, self.get(iv.k, iv.l)))
            .filter(|&(_, c)| c > 0)
    }

    /// The dimension vector `sum m[k,l] 1_{kl}`.
    pub fn column_sums(&self) -> Result<Vec<u64>> {
        let n = self.order();
        let mut sums = vec![0u64; n + 1];
        for (iv, c) in self.entries() {
            for s in &mut sums[iv.k..=iv.l] {
                *s = s.checked_add(c).ok_or(Error::Overflow("column sums"))?;
            }
        }
        Ok(sums)
    }

    /// Checks that the column sums equal `d`.
    pub fn validate(&self, d: &DimensionVector) -> Result<()> {
        if d.order() != self.order() {
            return Err(Error::OrderMismatch {
                expected: d.order(),
                found: self.order(),
            });
        }
        for (column, (&found, &expected)) in self.column_sums()?.iter().zip(d.dims()).enumerate() {
            if found != expected {
                return Err(Error::ColumnSumMismatch {
                    column,
                    expected,
                    found,
                });
            }
        }
        Ok(())
    }

    /// Every multiplicity multiplied by `c`.
    pub fn scaled(&self, c: u64) -> Result<Self> {
        let mut out = self.clone();
        for v in out.m.data.iter_mut() {
            *v = v.checked_mul(c).ok_or(Error::Overflow("scaling"))?;
        }
        Ok(out)
    }
}

impl fmt::Display for KostantPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (iv, c)) in self.entries().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "m{}{}={c}", iv.k, iv.l)?;
        }
        write!(f, "}}")
    }
}

/// Serialized as a list of `[k, l, multiplicity]` for the non-zero entries.
impl Serialize for KostantPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<_> = self.entries().collect();
        let mut seq = serializer.serialize_seq(Some(entries.len()))?;
        for (iv, c) in entries {
            seq.serialize_element(&(iv.k, iv.l, c))?;
        }
        seq.end()
    }
}

/// `r[i,j]`: number of strands covering the whole interval `[i,j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankPattern {
    r: Triangle<u64>,
}

impl RankPattern {
    pub fn from_triangle(r: Triangle<u64>) -> Self {
        Self { r }
    }

    /// Builds a pattern from rows `k = 0..=n`, row `k` holding `r[k,k..=n]`.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len().checked_sub(1).ok_or(Error::TooShort(0))?;
        let mut r = Triangle::new(n);
        for (k, row) in rows.iter().enumerate() {
            if row.len() != n + 1 - k {
                return Err(Error::OrderMismatch {
                    expected: n,
                    found: row.len() + k - 1,
                });
            }
            for (off, &v) in row.iter().enumerate() {
                *r.get_mut(k, k + off) = v;
            }
        }
        Ok(Self { r })
    }

    pub fn order(&self) -> usize {
        self.r.order()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        *self.r.get(i, j)
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.r.rows().map(<[u64]>::to_vec).collect()
    }

    /// The diagonal `r[i,i]`.
    pub fn diagonal(&self) -> Vec<u64> {
        (0..=self.order()).map(|i| self.get(i, i)).collect()
    }

    /// Monotone under enlarging the interval.
    pub fn is_monotone(&self) -> bool {
        let n = self.order();
        Interval::all(n).all(|iv| {
            let v = self.get(iv.k, iv.l);
            (iv.k == 0 || self.get(iv.k - 1, iv.l) <= v)
                && (iv.l == n || self.get(iv.k, iv.l + 1) <= v)
        })
    }
}

impl Serialize for RankPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

/// `r[i,j] = sum of m[k,l]` over `[k,l]` containing `[i,j]`.
pub fn rank_pattern(m: &KostantPartition) -> RankPattern {
    let n = m.order();
    let mut r = Triangle::<u64>::new(n);
    for (iv, c) in m.entries() {
        for i in iv.k..=iv.l {
            for j in i..=iv.l {
                let cell = r.get_mut(i, j);
                *cell = cell.checked_add(c).expect("rank pattern overflows u64");
            }
        }
    }
    RankPattern { r }
}

/// Inverts [`rank_pattern`] by inclusion-exclusion on the two endpoints.
pub fn partition_from_rank(r: &RankPattern) -> Result<KostantPartition> {
    let n = r.order();
    let at = |i: Option<usize>, j: usize| -> i128 {
        match i {
            Some(i) if j <= n => i128::from(r.get(i, j)),
            _ => 0,
        }
    };
    let mut m = KostantPartition::zero(n);
    for iv in Interval::all(n) {
        let (k, l) = (iv.k, iv.l);
        let before = k.checked_sub(1);
        let value = at(Some(k), l) - at(before, l) - at(Some(k), l + 1) + at(before, l + 1);
        if value < 0 {
            return Err(Error::NotAPattern { k, l, value });
        }
        m.set(k, l, value as u64);
    }
    Ok(m)
}

/// `dim Ext(M_a, M_b)` for indecomposables `a = [i,j]`, `b = [u,v]`:
/// one exactly when `i + 1 <= u <= j + 1 <= v`.
pub fn ext_dim_indecomposable(a: Interval, b: Interval) -> u8 {
    u8::from(a.k < b.k && b.k <= a.l + 1 && a.l < b.l)
}

/// Codimension of the orbit of `m`, i.e. `dim Ext(M_m, M_m)`.
pub fn orbit_codimension(m: &KostantPartition) -> Result<i128> {
    let entries: Vec<(Interval, i128)> = m.entries().map(|(iv, c)| (iv, i128::from(c))).collect();
    let mut total: i128 = 0;
    for &(a, ma) in &entries {
        for &(b, mb) in &entries {
            if ext_dim_indecomposable(a, b) == 1 {
                let term = ma
                    .checked_mul(mb)
                    .ok_or(Error::Overflow("orbit codimension"))?;
                total = total
                    .checked_add(term)
                    .ok_or(Error::Overflow("orbit codimension"))?;
            }
        }
    }
    Ok(total)
}

/// The orbit lies in the zero-product locus iff no strand spans all columns.
pub fn lies_in_sigma(m: &KostantPartition) -> bool {
    m.get(0, m.order()) == 0
}

/// Lazily enumerates all Kostant partitions of `d`.
///
/// Intervals are visited in `(k, l)` order and multiplicities tried in
/// ascending order, so partitions come out lexicographically sorted by their
/// multiplicity vector. The last interval `[k, n]` starting at a column is the
/// last one covering column `k`, so its multiplicity is forced.
pub fn enumerate_partitions(d: &DimensionVector) -> PartitionEnumerator {
    PartitionEnumerator::new(d, false)
}

/// As [`enumerate_partitions`], restricted to partitions with `m[0,n] = 0`.
pub fn enumerate_sigma_partitions(d: &DimensionVector) -> PartitionEnumerator {
    PartitionEnumerator::new(d, true)
}

#[derive(Debug, Clone)]
pub struct PartitionEnumerator {
    n: usize,
    intervals: Vec<Interval>,
    budget: Vec<u64>,
    values: Vec<u64>,
    exclude_full: bool,
    state: EnumState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EnumState {
    Fresh,
    Running,
    Done,
}

impl PartitionEnumerator {
    fn new(d: &DimensionVector, exclude_full: bool) -> Self {
        let n = d.order();
        let intervals: Vec<_> = Interval::all(n).collect();
        let len = intervals.len();
        Self {
            n,
            intervals,
            budget: d.dims().to_vec(),
            values: vec![0; len],
            exclude_full,
            state: EnumState::Fresh,
        }
    }

    fn max_value(&self, p: usize) -> u64 {
        let iv = self.intervals[p];
        self.budget[iv.k..=iv.l].iter().copied().min().unwrap_or(0)
    }

    fn is_forced(&self, p: usize) -> bool {
        self.intervals[p].l == self.n
    }

    fn lowest(&self, p: usize) -> Option<u64> {
        let iv = self.intervals[p];
        if iv.l != self.n {
            return Some(0);
        }
        if self.exclude_full && iv.k == 0 {
            return (self.budget[0] == 0).then_some(0);
        }
        let need = self.budget[iv.k];
        (need <= self.max_value(p)).then_some(need)
    }

    fn apply(&mut self, p: usize, v: u64) {
        let iv = self.intervals[p];
        for b in &mut self.budget[iv.k..=iv.l] {
            *b -= v;
        }
        self.values[p] = v;
    }

    fn unapply(&mut self, p: usize) {
        let iv = self.intervals[p];
        let v = self.values[p];
        for b in &mut self.budget[iv.k..=iv.l] {
            *b += v;
        }
        self.values[p] = 0;
    }

    /// Fills positions `p..` with their lowest feasible values. On failure
    /// returns the failing position; everything before it stays applied.
    fn fill_from(&mut self, mut p: usize) -> std::result::Result<(), usize> {
        while p < self.intervals.len() {
            let v = self.lowest(p).ok_or(p)?;
            self.apply(p, v);
            p += 1;
        }
        Ok(())
    }

    fn current(&self) -> KostantPartition {
        KostantPartition::from_entries(
            self.n,
            self.intervals
                .iter()
                .copied()
                .zip(self.values.iter().copied()),
        )
    }
}

impl Iterator for PartitionEnumerator {
    type Item = KostantPartition;

    fn next(&mut self) -> Option<KostantPartition> {
        let mut p = match self.state {
            EnumState::Done => return None,
            EnumState::Fresh => {
                self.state = EnumState::Running;
                match self.fill_from(0) {
                    Ok(()) => return Some(self.current()),
                    Err(q) => q,
                }
            }
            EnumState::Running => self.intervals.len(),
        };
        // positions < p are applied
        loop {
            if p == 0 {
                self.state = EnumState::Done;
                return None;
            }
            p -= 1;
            let v = self.values[p];
            self.unapply(p);
            if !self.is_forced(p) && v < self.max_value(p) {
                self.apply(p, v + 1);
                match self.fill_from(p + 1) {
                    Ok(()) => return Some(self.current()),
                    Err(q) => p = q,
                }
            }
        }
    }
}
