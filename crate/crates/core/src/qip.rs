//! The two quadratic integer programs over compositions of `min(d)`.
//!
//! The sorted program works on `d'`, the weakly increasing rearrangement of
//! `d`, and minimizes
//!
//! ```text
//! G(e) = sum_{1 <= j <= i <= n} e_i (e_j + d'_j - d'_{j-1})
//! ```
//!
//! over `e_1 + ... + e_n = d'_0`. The rising program keeps `d` in place,
//! marks a minimum position `k` with a placeholder and minimizes
//!
//! ```text
//! F(e) = sum_{i != k} e_i (d_i - d_k) + sum_{i <= j; i, j != k} e_i e_j
//! ```
//!
//! over `sum_{i != k} e_i = d_k`. Both have minimum `C` and `theta` minimizers.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kostant::DimensionVector;

/// `(e_0, ..., e_{k-1}, *, e_{k+1}, ..., e_n)` with the entries summing to `d_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RisingVector {
    k: usize,
    // full length n + 1; the slot at k is kept at zero
    e: Vec<u64>,
}

impl RisingVector {
    /// `entries` lists the values at positions `0..=n` except `k`, in order.
    pub fn from_parts(k: usize, entries: &[u64]) -> Self {
        assert!(k <= entries.len(), "placeholder position {k} out of range");
        let mut e = Vec::with_capacity(entries.len() + 1);
        e.extend_from_slice(&entries[..k]);
        e.push(0);
        e.extend_from_slice(&entries[k..]);
        Self { k, e }
    }

    pub fn order(&self) -> usize {
        self.e.len() - 1
    }

    pub fn star(&self) -> usize {
        self.k
    }

    /// Entry at position `i`; `None` at the placeholder.
    pub fn get(&self, i: usize) -> Option<u64> {
        (i != self.k).then(|| self.e[i])
    }

    /// Entry at `i`, reading the placeholder as zero.
    pub fn value(&self, i: usize) -> u64 {
        self.e[i]
    }

    /// The entries at all positions except the placeholder.
    pub fn parts(&self) -> Vec<u64> {
        (0..self.e.len())
            .filter(|&i| i != self.k)
            .map(|i| self.e[i])
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.e.iter().sum()
    }

    pub fn validate(&self, d: &DimensionVector) -> Result<()> {
        if self.order() != d.order() {
            return Err(Error::OrderMismatch {
                expected: d.order(),
                found: self.order(),
            });
        }
        d.check_star(self.k)?;
        if self.total() != d.get(self.k) {
            return Err(Error::InfeasibleVector(format!(
                "{self} sums to {}, expected d_{} = {}",
                self.total(),
                self.k,
                d.get(self.k)
            )));
        }
        Ok(())
    }
}

impl fmt::Display for RisingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.e.len() {
            if i > 0 {
                write!(f, ",")?;
            }
            match self.get(i) {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "*")?,
            }
        }
        write!(f, ")")
    }
}

impl FromStr for RisingVector {
    type Err = String;

    /// Parses `0,1,*,0,4,0`; exactly one entry must be `*`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut star = None;
        let mut parts = Vec::new();
        for (i, tok) in s.split(',').map(str::trim).enumerate() {
            if tok == "*" {
                if star.replace(i).is_some() {
                    return Err("more than one '*' placeholder".into());
                }
            } else {
                parts.push(
                    tok.parse::<u64>()
                        .map_err(|e| format!("bad entry {tok:?}: {e}"))?,
                );
            }
        }
        let k = star.ok_or("missing '*' placeholder")?;
        Ok(Self::from_parts(k, &parts))
    }
}

/// Serialized as an array of integers with the string `"*"` at the placeholder.
impl Serialize for RisingVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.e.len()))?;
        for i in 0..self.e.len() {
            match self.get(i) {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element("*")?,
            }
        }
        seq.end()
    }
}

/// Minimum value and all minimizers, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QipSolutionSet<T> {
    pub minimum: i128,
    pub solutions: Vec<T>,
    /// Number of feasible vectors evaluated.
    pub examined: u128,
}

impl<T> QipSolutionSet<T> {
    pub fn theta(&self) -> usize {
        self.solutions.len()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Skip prefixes whose lower bound already exceeds the best value.
    pub prune: bool,
}

/// Compositions of `total` into `parts` non-negative parts, in
/// lexicographically ascending order.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Vec<u64>,
    done: bool,
}

impl Compositions {
    pub fn new(total: u64, parts: usize) -> Self {
        if parts == 0 {
            return Self {
                current: Vec::new(),
                done: total != 0,
            };
        }
        let mut current = vec![0; parts];
        current[parts - 1] = total;
        Self {
            current,
            done: false,
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let c = &mut self.current;
        let last = c.len().saturating_sub(1);
        let bump = if c.is_empty() {
            None
        } else if c[last] > 0 {
            last.checked_sub(1)
        } else {
            c.iter()
                .rposition(|&v| v > 0)
                .and_then(|p| p.checked_sub(1))
        };
        match bump {
            None => self.done = true,
            Some(i) => {
                let rest: u64 = c[i + 1..].iter().sum();
                c[i + 1..].iter_mut().for_each(|v| *v = 0);
                c[i] += 1;
                c[last] = rest - 1;
            }
        }
        Some(out)
    }
}

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("objective"))
}

/// `G(e)` for the sorted program; `e` has `n` entries summing to `d'_0`.
pub fn objective_sorted(d_sorted: &DimensionVector, e: &[u64]) -> Result<i128> {
    if !d_sorted.is_weakly_increasing() {
        return Err(Error::NotIncreasing);
    }
    let n = d_sorted.order();
    if e.len() != n {
        return Err(Error::InfeasibleVector(format!(
            "expected {n} entries, got {}",
            e.len()
        )));
    }
    let total: u64 = e.iter().sum();
    if total != d_sorted.get(0) {
        return Err(Error::InfeasibleVector(format!(
            "entries sum to {total}, expected d'_0 = {}",
            d_sorted.get(0)
        )));
    }
    let d: Vec<i128> = d_sorted.dims().iter().map(|&x| i128::from(x)).collect();
    let mut value: i128 = 0;
    for i in 1..=n {
        let ei = i128::from(e[i - 1]);
        for j in 1..=i {
            let inner = checked(i128::from(e[j - 1]).checked_add(d[j] - d[j - 1]))?;
            value = checked(value.checked_add(checked(ei.checked_mul(inner))?))?;
        }
    }
    Ok(value)
}

/// `F(e)` for the rising program.
pub fn objective_rising(d: &DimensionVector, v: &RisingVector) -> Result<i128> {
    v.validate(d)?;
    let k = v.star();
    let dk = i128::from(d.get(k));
    let idx: Vec<usize> = (0..=d.order()).filter(|&i| i != k).collect();
    let mut value: i128 = 0;
    for (a, &i) in idx.iter().enumerate() {
        let ei = i128::from(v.value(i));
        value = checked(value.checked_add(checked(ei.checked_mul(i128::from(d.get(i)) - dk))?))?;
        for &j in &idx[a..] {
            let ej = i128::from(v.value(j));
            value = checked(value.checked_add(checked(ei.checked_mul(ej))?))?;
        }
    }
    Ok(value)
}

fn push_candidate<T: Ord>(best: &mut Option<(i128, Vec<T>)>, value: i128, cand: T) {
    match best {
        Some((b, sols)) if value == *b => sols.push(cand),
        Some((b, _)) if value > *b => {}
        _ => *best = Some((value, vec![cand])),
    }
}

/// Solves the sorted program for `d` (sorted internally) by exhaustion.
pub fn solve_sorted(d: &DimensionVector) -> Result<QipSolutionSet<Vec<u64>>> {
    solve_sorted_with(d, SolveOptions::default())
}

pub fn solve_sorted_with(
    d: &DimensionVector,
    options: SolveOptions,
) -> Result<QipSolutionSet<Vec<u64>>> {
    let ds = d.sorted();
    if options.prune {
        return solve_sorted_pruned(&ds);
    }
    let mut best = None;
    let mut examined = 0u128;
    for e in Compositions::new(ds.get(0), ds.order()) {
        let value = objective_sorted(&ds, &e)?;
        examined += 1;
        push_candidate(&mut best, value, e);
    }
    let (minimum, mut solutions) = best.expect("at least one composition");
    solutions.sort();
    Ok(QipSolutionSet {
        minimum,
        solutions,
        examined,
    })
}

struct Pruner<'a> {
    // d'_i - d'_0 for i = 0..=n
    offset: Vec<i128>,
    d: &'a DimensionVector,
    best: Option<(i128, Vec<Vec<u64>>)>,
    examined: u128,
    prefix: Vec<u64>,
}

impl Pruner<'_> {
    // G = sum_i e_i (E_i + d'_i - d'_0) with E_i the prefix sum up to i
    fn descend(&mut self, i: usize, remaining: u64, prefix_sum: u64, partial: i128) -> Result<()> {
        let n = self.d.order();
        if i == n {
            // the last part takes what is left
            let e = i128::from(remaining);
            let value = checked(
                e.checked_mul(i128::from(prefix_sum + remaining) + self.offset[n])
                    .and_then(|t| t.checked_add(partial)),
            )?;
            self.examined += 1;
            self.prefix.push(remaining);
            push_candidate(&mut self.best, value, self.prefix.clone());
            self.prefix.pop();
            return Ok(());
        }
        for v in 0..=remaining {
            let e = i128::from(v);
            let term = checked(e.checked_mul(i128::from(prefix_sum + v) + self.offset[i]))?;
            let value = checked(partial.checked_add(term))?;
            let rest = remaining - v;
            let bound = if rest == 0 {
                value
            } else {
                let per_unit = i128::from(prefix_sum + v) + 1 + self.offset[i + 1];
                checked(
                    i128::from(rest)
                        .checked_mul(per_unit)
                        .and_then(|t| t.checked_add(value)),
                )?
            };
            if matches!(&self.best, Some((b, _)) if bound > *b) {
                continue;
            }
            self.prefix.push(v);
            self.descend(i + 1, rest, prefix_sum + v, value)?;
            self.prefix.pop();
        }
        Ok(())
    }
}

fn solve_sorted_pruned(ds: &DimensionVector) -> Result<QipSolutionSet<Vec<u64>>> {
    let d0 = i128::from(ds.get(0));
    let mut p = Pruner {
        offset: ds.dims().iter().map(|&x| i128::from(x) - d0).collect(),
        d: ds,
        best: None,
        examined: 0,
        prefix: Vec::new(),
    };
    p.descend(1, ds.get(0), 0, 0)?;
    let (minimum, mut solutions) = p.best.expect("at least one composition");
    solutions.sort();
    Ok(QipSolutionSet {
        minimum,
        solutions,
        examined: p.examined,
    })
}

/// Solves the rising program with the placeholder at `k` by exhaustion.
pub fn solve_rising(d: &DimensionVector, k: usize) -> Result<QipSolutionSet<RisingVector>> {
    d.check_star(k)?;
    let mut best = None;
    let mut examined = 0u128;
    for parts in Compositions::new(d.get(k), d.order()) {
        let v = RisingVector::from_parts(k, &parts);
        let value = objective_rising(d, &v)?;
        examined += 1;
        push_candidate(&mut best, value, v);
    }
    let (minimum, mut solutions) = best.expect("at least one composition");
    solutions.sort();
    Ok(QipSolutionSet {
        minimum,
        solutions,
        examined,
    })
}

/// The permutation `sigma` with `d_i = d'_{sigma(i)}` and `sigma(k) = 0`.
///
/// Positions are ranked by a stable sort on their values; if another
/// minimum position lands on rank 0 it trades ranks with `k`.
pub fn star_permutation(d: &DimensionVector, k: usize) -> Result<Vec<usize>> {
    d.check_star(k)?;
    let mut order: Vec<usize> = (0..=d.order()).collect();
    order.sort_by_key(|&i| d.get(i));
    let mut sigma = vec![0; order.len()];
    for (rank, &i) in order.iter().enumerate() {
        sigma[i] = rank;
    }
    let first = order[0];
    if first != k {
        sigma.swap(first, k);
    }
    Ok(sigma)
}

/// Maps solutions of the sorted program to rising vectors with the
/// placeholder at `k`: position `i != k` receives `e_{sigma(i)}`.
pub fn transport_solutions(
    d: &DimensionVector,
    k: usize,
    s: &QipSolutionSet<Vec<u64>>,
) -> Result<Vec<RisingVector>> {
    let sigma = star_permutation(d, k)?;
    let n = d.order();
    let mut out: Vec<RisingVector> = s
        .solutions
        .iter()
        .map(|e| {
            let parts: Vec<u64> = (0..=n)
                .filter(|&i| i != k)
                .map(|i| e[sigma[i] - 1])
                .collect();
            RisingVector::from_parts(k, &parts)
        })
        .collect();
    out.sort();
    Ok(out)
}
