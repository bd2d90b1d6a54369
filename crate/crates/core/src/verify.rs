//! Exhaustive oracles and the end-to-end component pipeline.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::closedform::closed_form;
use crate::error::{Error, Result};
use crate::kostant::{
    enumerate_sigma_partitions, lies_in_sigma, orbit_codimension, rank_pattern, DimensionVector,
    KostantPartition, RankPattern,
};
use crate::lace::{diagram_from_rising, partition_of_diagram, LaceDiagram};
use crate::qip::{solve_rising, solve_sorted_with, RisingVector, SolveOptions};
use crate::qseries::codim_and_count;
use crate::represent::{
    partial_products_ranks, product_is_zero, representative_tuple, RepresentativeTuple,
};

pub const DEFAULT_CAP: u64 = 10_000_000;

/// First truncation order tried by the series method.
pub const DEFAULT_TRUNCATION: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForceResult {
    #[serde(rename = "C")]
    pub c: i128,
    pub minimizers: Vec<KostantPartition>,
    /// Codimension to number of orbits in the zero-product locus.
    pub spectrum: BTreeMap<i128, u64>,
    pub enumerated: u64,
}

/// Enumerates every orbit with `m[0,n] = 0` and keeps those of least codimension.
pub fn brute_force_components(d: &DimensionVector, cap: u64) -> Result<BruteForceResult> {
    let mut spectrum = BTreeMap::new();
    let mut best: Option<(i128, Vec<KostantPartition>)> = None;
    let mut enumerated = 0u64;
    for m in enumerate_sigma_partitions(d) {
        enumerated += 1;
        if enumerated > cap {
            return Err(Error::SearchSpaceTooLarge { cap });
        }
        let c = orbit_codimension(&m)?;
        *spectrum.entry(c).or_insert(0) += 1;
        match &mut best {
            Some((b, ms)) if c == *b => ms.push(m),
            Some((b, _)) if c > *b => {}
            _ => best = Some((c, vec![m])),
        }
    }
    // Σ always contains the zero tuple, so something was enumerated
    let (c, mut minimizers) = best.ok_or_else(|| Error::Consistency("empty Σ".into()))?;
    minimizers.sort();
    Ok(BruteForceResult {
        c,
        minimizers,
        spectrum,
        enumerated,
    })
}

/// `rk(A_l ... A_{k+1}) <= bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RankEquation {
    pub k: usize,
    pub l: usize,
    pub bound: u64,
}

impl fmt::Display for RankEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let maps: Vec<String> = (self.k + 1..=self.l)
            .rev()
            .map(|i| format!("A{i}"))
            .collect();
        write!(f, "rk({}) <= {}", maps.join(""), self.bound)
    }
}

/// Rank conditions cutting out the orbit closure inside Σ, after dropping
/// the full product (zero on Σ), the generic ones, and any condition
/// implied by a shorter product with no larger bound.
pub fn reduced_equations(d: &DimensionVector, r: &RankPattern) -> Vec<RankEquation> {
    let n = d.order();
    let mut out = Vec::new();
    for k in 0..n {
        for l in k + 1..=n {
            if (k, l) == (0, n) {
                continue;
            }
            let bound = r.get(k, l);
            if bound >= d.min_over(k, l) {
                continue;
            }
            let implied = (k..=l)
                .flat_map(|a| (a..=l).map(move |b| (a, b)))
                .any(|(a, b)| (a, b) != (k, l) && r.get(a, b) <= bound);
            if !implied {
                out.push(RankEquation { k, l, bound });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub rising_vector: RisingVector,
    pub kostant_partition: KostantPartition,
    pub rank_pattern: RankPattern,
    pub equations: Vec<RankEquation>,
    #[serde(rename = "matrices", serialize_with = "serialize_matrices")]
    pub representative: RepresentativeTuple,
    pub diagram: LaceDiagram,
}

fn serialize_matrices<S: serde::Serializer>(
    t: &RepresentativeTuple,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    t.matrices().serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub d: DimensionVector,
    pub k: usize,
    #[serde(rename = "C")]
    pub c: i128,
    pub theta: usize,
    pub components: Vec<ComponentRecord>,
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Consistency(what()))
    }
}

/// Solves the rising program at `k` (default: first minimum position) and
/// builds and checks every component.
pub fn components(d: &DimensionVector, k: Option<usize>) -> Result<ComponentReport> {
    let k = k.unwrap_or_else(|| d.default_star());
    let solved = solve_rising(d, k)?;
    let mut records = Vec::with_capacity(solved.theta());
    for v in solved.solutions {
        let diagram = diagram_from_rising(d, &v)?;
        let m = partition_of_diagram(&diagram)?;
        m.validate(d)?;
        let r = rank_pattern(&m);
        let t = representative_tuple(&diagram)?;

        ensure(lies_in_sigma(&m), || format!("{v}: m[0,n] != 0"))?;
        let codim = orbit_codimension(&m)?;
        ensure(codim == solved.minimum, || {
            format!(
                "{v}: codimension {codim}, program minimum {}",
                solved.minimum
            )
        })?;
        ensure(product_is_zero(&t)?, || format!("{v}: product is not zero"))?;
        ensure(partial_products_ranks(&t)? == r, || {
            format!("{v}: representative ranks differ from the pattern")
        })?;

        records.push(ComponentRecord {
            equations: reduced_equations(d, &r),
            rising_vector: v,
            kostant_partition: m,
            rank_pattern: r,
            representative: t,
            diagram,
        });
    }
    let distinct: BTreeSet<_> = records.iter().map(|c| &c.kostant_partition).collect();
    ensure(distinct.len() == records.len(), || {
        "two rising vectors share an orbit".into()
    })?;
    Ok(ComponentReport {
        d: d.clone(),
        k,
        c: solved.minimum,
        theta: records.len(),
        components: records,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Qip,
    Qseries,
    ClosedForm,
    BruteForce,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Qip,
        Method::Qseries,
        Method::ClosedForm,
        Method::BruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Qip => "qip",
            Method::Qseries => "qseries",
            Method::ClosedForm => "closedform",
            Method::BruteForce => "bruteforce",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CrossCheckOptions {
    pub cap: u64,
    pub truncation: usize,
    pub prune: bool,
    pub k: Option<usize>,
}

impl Default for CrossCheckOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            truncation: DEFAULT_TRUNCATION,
            prune: true,
            k: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodResult {
    pub method: Method,
    #[serde(rename = "C")]
    pub c: i128,
    pub theta: u128,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub d: DimensionVector,
    pub results: Vec<MethodResult>,
    /// All methods report the same `(C, theta)`.
    pub agree: bool,
    /// Pipeline partitions equal the brute-force minimizers; absent
    /// unless brute force ran.
    pub partitions_match: Option<bool>,
}

impl CrossCheckReport {
    pub fn consistent(&self) -> bool {
        self.agree && self.partitions_match != Some(false)
    }

    pub fn result(&self, method: Method) -> Option<&MethodResult> {
        self.results.iter().find(|r| r.method == method)
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed()))
}

pub fn cross_check(
    d: &DimensionVector,
    methods: &[Method],
    options: &CrossCheckOptions,
) -> Result<CrossCheckReport> {
    let methods: BTreeSet<Method> = methods.iter().copied().collect();
    if methods.len() < 2 {
        return Err(Error::TooFewMethods(methods.len()));
    }
    let mut results = Vec::new();
    let mut partitions_match = None;
    for &method in &methods {
        let ((c, theta), elapsed) = match method {
            Method::Qip => timed(|| {
                let s = solve_sorted_with(
                    d,
                    SolveOptions {
                        prune: options.prune,
                    },
                )?;
                Ok((s.minimum, s.theta() as u128))
            })?,
            Method::Qseries => timed(|| {
                let (c, theta) = codim_and_count(d, options.truncation)?;
                let theta = theta
                    .to_u128()
                    .ok_or(Error::Overflow("series coefficient"))?;
                Ok((c as i128, theta))
            })?,
            Method::ClosedForm => timed(|| {
                let r = closed_form(d)?;
                Ok((r.c, r.theta))
            })?,
            Method::BruteForce => timed(|| {
                let b = brute_force_components(d, options.cap)?;
                let report = components(d, options.k)?;
                let pipeline: BTreeSet<&KostantPartition> = report
                    .components
                    .iter()
                    .map(|c| &c.kostant_partition)
                    .collect();
                let oracle: BTreeSet<&KostantPartition> = b.minimizers.iter().collect();
                partitions_match = Some(pipeline == oracle);
                Ok((b.c, b.minimizers.len() as u128))
            })?,
        };
        results.push(MethodResult {
            method,
            c,
            theta,
            elapsed,
        });
    }
    let agree = results
        .windows(2)
        .all(|w| (w[0].c, w[0].theta) == (w[1].c, w[1].theta));
    Ok(CrossCheckReport {
        d: d.clone(),
        results,
        agree,
        partitions_match,
    })
}
