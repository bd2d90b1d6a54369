//! Slow, literal reimplementations used as oracles. Nothing here calls the
//! library routine it is meant to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use chainzero::lace::Segment;
use chainzero::{DimensionVector, IntMatrix, Interval, KostantPartition, LaceDiagram};
use num_bigint::BigInt;
use num_traits::Zero;

pub fn dv(v: &[u64]) -> DimensionVector {
    DimensionVector::new(v.to_vec()).unwrap()
}

/// `dim Hom(M[i,j], M[u,v])` for arrows pointing right: a map must send the
/// top of `[i,j]` into `[u,v]` with image a submodule of `[u,v]`.
pub fn hom_dim(a: Interval, b: Interval) -> i128 {
    i128::from(b.k <= a.k && a.k <= b.l && b.l <= a.l)
}

/// Codimension through the Euler form: `codim = dim Rep - sum d_i^2 + dim End(M)`.
pub fn codim_via_hom(d: &[u64], m: &KostantPartition) -> i128 {
    let rep: i128 = d.windows(2).map(|w| i128::from(w[0] * w[1])).sum();
    let gl: i128 = d.iter().map(|&x| i128::from(x * x)).sum();
    let entries: Vec<(Interval, u64)> = m.entries().collect();
    let mut end = 0;
    for &(a, ma) in &entries {
        for &(b, mb) in &entries {
            end += i128::from(ma * mb) * hom_dim(a, b);
        }
    }
    rep - gl + end
}

/// Every Kostant partition of `d`, built column by column: at each column
/// choose how many live strands (grouped by start) continue, then start
/// new strands to fill the column.
pub fn partitions_by_columns(d: &[u64]) -> BTreeSet<Vec<(usize, usize, u64)>> {
    fn go(
        d: &[u64],
        x: usize,
        live: &BTreeMap<usize, u64>,
        done: &mut BTreeMap<(usize, usize), u64>,
        out: &mut BTreeSet<Vec<(usize, usize, u64)>>,
    ) {
        let n = d.len() - 1;
        if x > n {
            let mut all = done.clone();
            for (&s, &c) in live {
                if c > 0 {
                    *all.entry((s, n)).or_insert(0) += c;
                }
            }
            out.insert(
                all.into_iter()
                    .filter(|&(_, c)| c > 0)
                    .map(|((k, l), c)| (k, l, c))
                    .collect(),
            );
            return;
        }
        let starts: Vec<(usize, u64)> = live.iter().map(|(&s, &c)| (s, c)).collect();
        choose(d, x, &starts, 0, &mut Vec::new(), done, out);
    }

    fn choose(
        d: &[u64],
        x: usize,
        starts: &[(usize, u64)],
        i: usize,
        picked: &mut Vec<u64>,
        done: &mut BTreeMap<(usize, usize), u64>,
        out: &mut BTreeSet<Vec<(usize, usize, u64)>>,
    ) {
        let used: u64 = picked.iter().sum();
        if i == starts.len() {
            let mut next = BTreeMap::new();
            let mut ended = Vec::new();
            for (&(s, c), &keep) in starts.iter().zip(picked.iter()) {
                if keep > 0 {
                    next.insert(s, keep);
                }
                if c > keep {
                    ended.push(((s, x - 1), c - keep));
                }
            }
            if d[x] > used {
                next.insert(x, d[x] - used);
            }
            for &(key, c) in &ended {
                *done.entry(key).or_insert(0) += c;
            }
            go(d, x + 1, &next, done, out);
            for &(key, c) in &ended {
                *done.get_mut(&key).unwrap() -= c;
            }
            return;
        }
        let (_, c) = starts[i];
        for keep in 0..=c.min(d[x] - used) {
            picked.push(keep);
            choose(d, x, starts, i + 1, picked, done, out);
            picked.pop();
        }
    }

    let mut out = BTreeSet::new();
    go(d, 0, &BTreeMap::new(), &mut BTreeMap::new(), &mut out);
    out
}

pub fn triples(m: &KostantPartition) -> Vec<(usize, usize, u64)> {
    m.entries().map(|(iv, c)| (iv.k, iv.l, c)).collect()
}

/// All vectors of `parts` non-negative integers summing to `total`.
pub fn vectors_summing_to(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in vectors_summing_to(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The sorted objective written as the double sum over `1 <= j <= i <= n`.
pub fn sorted_objective_literal(ds: &[u64], e: &[u64]) -> i128 {
    let n = ds.len() - 1;
    let mut g = 0i128;
    for i in 1..=n {
        for j in 1..=i {
            let ei = i128::from(e[i - 1]);
            let ej = i128::from(e[j - 1]);
            g += ei * (ej + i128::from(ds[j]) - i128::from(ds[j - 1]));
        }
    }
    g
}

/// Minimum and minimizers of the sorted program by listing every vector.
pub fn sorted_program_oracle(d: &[u64]) -> (i128, Vec<Vec<u64>>) {
    let mut ds = d.to_vec();
    ds.sort_unstable();
    let all = vectors_summing_to(ds[0], ds.len() - 1);
    let values: Vec<i128> = all
        .iter()
        .map(|e| sorted_objective_literal(&ds, e))
        .collect();
    let min = *values.iter().min().unwrap();
    let mut sols: Vec<Vec<u64>> = all
        .into_iter()
        .zip(values)
        .filter(|&(_, v)| v == min)
        .map(|(e, _)| e)
        .collect();
    sols.sort();
    (min, sols)
}

/// The rising objective with `e` given on all positions (`e[k]` ignored).
pub fn rising_objective_literal(d: &[u64], k: usize, e: &[u64]) -> i128 {
    let idx: Vec<usize> = (0..d.len()).filter(|&i| i != k).collect();
    let mut f = 0i128;
    for &i in &idx {
        f += i128::from(e[i]) * (i128::from(d[i]) - i128::from(d[k]));
    }
    for &i in &idx {
        for &j in &idx {
            if i <= j {
                f += i128::from(e[i]) * i128::from(e[j]);
            }
        }
    }
    f
}

/// Number of partitions of `m` into parts of size at most `s`, for `m <= order`.
fn bounded_partition_counts(s: u64, order: usize) -> Vec<BigInt> {
    // table[p][m]: partitions of m into parts <= p
    let s = s as usize;
    let mut row: Vec<BigInt> = (0..=order)
        .map(|m| BigInt::from(u8::from(m == 0)))
        .collect();
    for p in 1..=s.min(order) {
        let mut next = row.clone();
        for m in p..=order {
            let add = next[m - p].clone();
            next[m] += add;
        }
        row = next;
    }
    row
}

fn poly_mul(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= order {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// The alternating generating function, multiplied out term by term.
pub fn lr1_oracle(d: &[u64], order: usize) -> Vec<BigInt> {
    let mut total = vec![BigInt::zero(); order + 1];
    let min = *d.iter().min().unwrap();
    for s in 0..=min {
        let mut term = bounded_partition_counts(s, order);
        for &di in d {
            term = poly_mul(&term, &bounded_partition_counts(di - s, order), order);
        }
        let shift = (s * s.saturating_sub(1) / 2) as usize;
        for e in 0..=order {
            if e + shift <= order {
                if s % 2 == 0 {
                    total[e + shift] += &term[e];
                } else {
                    total[e + shift] -= &term[e];
                }
            }
        }
    }
    total
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sum = 0;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        sum += sign * m[0][c] * det(&minor);
    }
    sum
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest size of a non-vanishing minor.
pub fn rank_by_minors(a: &IntMatrix) -> usize {
    let max = a.rows().min(a.cols());
    for size in (1..=max).rev() {
        for rows in subsets(a.rows(), size) {
            for cols in subsets(a.cols(), size) {
                let sub: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| a.get(r, c)).collect())
                    .collect();
                if det(&sub) != 0 {
                    return size;
                }
            }
        }
    }
    0
}

/// A diagram realizing `m`: strands stacked as horizontal lines, each new
/// strand placed on the lowest height free across its whole span.
pub fn diagram_of_partition(m: &KostantPartition) -> LaceDiagram {
    let n = m.order();
    let mut columns = vec![BTreeSet::new(); n + 1];
    let mut segments = Vec::new();
    for (iv, c) in m.entries() {
        for _ in 0..c {
            let y = (0i64..)
                .find(|y| (iv.k..=iv.l).all(|x| !columns[x].contains(y)))
                .unwrap();
            for column in &mut columns[iv.k..=iv.l] {
                column.insert(y);
            }
            for x in iv.k..iv.l {
                segments.push(Segment::horizontal(x, y));
            }
        }
    }
    LaceDiagram::from_parts(columns, segments).unwrap()
}
