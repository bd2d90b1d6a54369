//! Lace diagrams: columns of dots joined by unit links between adjacent
//! columns, each dot touching at most one link on either side. Maximal
//! chains of links are strands; a strand from column `k` to column `l`
//! contributes one to `m[k,l]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kostant::{DimensionVector, Interval, KostantPartition};
use crate::qip::RisingVector;

/// A link from `(x, from)` to `(x + 1, to)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Segment {
    pub x: usize,
    pub from: i64,
    pub to: i64,
}

impl Segment {
    pub fn horizontal(x: usize, y: i64) -> Self {
        Self { x, from: y, to: y }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaceDiagram {
    /// Heights of the dots in each column.
    columns: Vec<BTreeSet<i64>>,
    segments: BTreeSet<Segment>,
}

/// A maximal chain of links; `heights[i]` is the dot in column `start + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub start: usize,
    pub heights: Vec<i64>,
}

impl Strand {
    pub fn end(&self) -> usize {
        self.start + self.heights.len() - 1
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.start, self.end())
    }
}

impl LaceDiagram {
    /// Assembles a diagram from explicit dots and links. Every link must join
    /// existing dots in adjacent columns; the one-link-per-side rule is
    /// checked when strands are traced.
    pub fn from_parts(
        columns: Vec<BTreeSet<i64>>,
        segments: impl IntoIterator<Item = Segment>,
    ) -> Result<Self> {
        if columns.len() < 2 {
            return Err(Error::TooShort(columns.len()));
        }
        let segments: BTreeSet<Segment> = segments.into_iter().collect();
        for s in &segments {
            if s.x + 1 >= columns.len() {
                return Err(Error::MalformedDiagram(format!(
                    "link leaves column {} which has no right neighbour",
                    s.x
                )));
            }
            if !columns[s.x].contains(&s.from) || !columns[s.x + 1].contains(&s.to) {
                return Err(Error::MalformedDiagram(format!(
                    "link ({},{})-({},{}) does not join two dots",
                    s.x,
                    s.from,
                    s.x + 1,
                    s.to
                )));
            }
        }
        Ok(Self { columns, segments })
    }

    /// Dots only, joined by every possible horizontal link.
    pub fn fully_linked(columns: Vec<BTreeSet<i64>>) -> Self {
        let mut segments = BTreeSet::new();
        for x in 0..columns.len().saturating_sub(1) {
            for &y in columns[x].intersection(&columns[x + 1]) {
                segments.insert(Segment::horizontal(x, y));
            }
        }
        Self { columns, segments }
    }

    pub fn order(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn column(&self, x: usize) -> &BTreeSet<i64> {
        &self.columns[x]
    }

    pub fn columns(&self) -> &[BTreeSet<i64>] {
        &self.columns
    }

    pub fn segments(&self) -> &BTreeSet<Segment> {
        &self.segments
    }

    pub fn dot_count(&self) -> usize {
        self.columns.iter().map(BTreeSet::len).sum()
    }

    pub fn dimension_vector(&self) -> DimensionVector {
        DimensionVector::new(self.columns.iter().map(|c| c.len() as u64).collect())
            .expect("at least two columns")
    }

    /// Whether each column occupies consecutive heights.
    pub fn columns_consecutive(&self) -> bool {
        self.columns.iter().all(|c| match (c.first(), c.last()) {
            (Some(lo), Some(hi)) => (hi - lo + 1) as usize == c.len(),
            _ => true,
        })
    }

    /// Lowest and highest height over all dots.
    pub fn height_range(&self) -> Option<(i64, i64)> {
        let lo = self.columns.iter().filter_map(|c| c.first()).min()?;
        let hi = self.columns.iter().filter_map(|c| c.last()).max()?;
        Some((*lo, *hi))
    }

    pub fn validate(&self, d: &DimensionVector) -> Result<()> {
        if d.order() != self.order() {
            return Err(Error::OrderMismatch {
                expected: d.order(),
                found: self.order(),
            });
        }
        for (x, col) in self.columns.iter().enumerate() {
            if col.len() as u64 != d.get(x) {
                return Err(Error::MalformedDiagram(format!(
                    "column {x} has {} dots, expected {}",
                    col.len(),
                    d.get(x)
                )));
            }
        }
        Ok(())
    }

    /// Traces all maximal strands. Strands are listed by starting column,
    /// then by starting height.
    pub fn strands(&self) -> Result<Vec<Strand>> {
        let mut right: BTreeMap<(usize, i64), i64> = BTreeMap::new();
        let mut has_left: BTreeSet<(usize, i64)> = BTreeSet::new();
        for s in &self.segments {
            if right.insert((s.x, s.from), s.to).is_some() {
                return Err(Error::MalformedDiagram(format!(
                    "dot ({},{}) has two links to the right",
                    s.x, s.from
                )));
            }
            if !has_left.insert((s.x + 1, s.to)) {
                return Err(Error::MalformedDiagram(format!(
                    "dot ({},{}) has two links to the left",
                    s.x + 1,
                    s.to
                )));
            }
        }
        let mut strands = Vec::new();
        for (x, col) in self.columns.iter().enumerate() {
            for &y in col {
                if has_left.contains(&(x, y)) {
                    continue;
                }
                let mut heights = vec![y];
                let mut at = (x, y);
                while let Some(&next) = right.get(&at) {
                    heights.push(next);
                    at = (at.0 + 1, next);
                }
                strands.push(Strand { start: x, heights });
            }
        }
        Ok(strands)
    }
}

/// The diagram `D(e)` of a rising vector with placeholder at `k`.
///
/// Column `k` holds heights `0..d_k`. Going right, the bottom of column `x`
/// sits `e_x` above the bottom of column `x - 1`; going left, the top of
/// column `x` sits `e_x` below the top of column `x + 1`. Then every
/// horizontal link is drawn.
pub fn diagram_from_rising(d: &DimensionVector, v: &RisingVector) -> Result<LaceDiagram> {
    v.validate(d)?;
    let k = v.star();
    let n = d.order();
    let dk = d.get(k) as i64;
    let mut columns = vec![BTreeSet::new(); n + 1];
    columns[k] = (0..dk).collect();
    let mut drop = 0i64;
    for x in (0..k).rev() {
        drop += v.value(x) as i64;
        let top = dk - drop;
        columns[x] = (top - d.get(x) as i64..top).collect();
    }
    let mut rise = 0i64;
    for (x, column) in columns.iter_mut().enumerate().skip(k + 1) {
        rise += v.value(x) as i64;
        *column = (rise..rise + d.get(x) as i64).collect();
    }
    Ok(LaceDiagram::fully_linked(columns))
}

/// Lace diagram for weakly increasing `d` and a solution `e = (e_1..e_n)`
/// of the sorted program: bottom-aligned columns, all horizontal links,
/// then the links between columns `i - 1` and `i` removed in the rows
/// `e_1 + ... + e_{i-1} .. e_1 + ... + e_i`.
pub fn diagram_increasing_case(d: &DimensionVector, e: &[u64]) -> Result<LaceDiagram> {
    if !d.is_weakly_increasing() {
        return Err(Error::NotIncreasing);
    }
    let n = d.order();
    if e.len() != n || e.iter().sum::<u64>() != d.get(0) {
        return Err(Error::InfeasibleVector(format!(
            "expected {n} entries summing to d_0 = {}, got {e:?}",
            d.get(0)
        )));
    }
    let mut g = open_orbit_diagram(d);
    let mut lo = 0i64;
    for (i, &ei) in e.iter().enumerate() {
        let hi = lo + ei as i64;
        for y in lo..hi {
            g.segments.remove(&Segment::horizontal(i, y));
        }
        lo = hi;
    }
    Ok(g)
}

/// Bottom-aligned columns with every horizontal link: the open orbit.
pub fn open_orbit_diagram(d: &DimensionVector) -> LaceDiagram {
    LaceDiagram::fully_linked(
        d.dims()
            .iter()
            .map(|&dx| (0..dx as i64).collect())
            .collect(),
    )
}

/// `m[k,l]` = number of strands running from column `k` to column `l`.
pub fn partition_of_diagram(g: &LaceDiagram) -> Result<KostantPartition> {
    let strands = g.strands()?;
    Ok(KostantPartition::from_entries(
        g.order(),
        strands.iter().map(|s| (s.interval(), 1)),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
    Tikz,
}

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    /// Characters between adjacent columns in ASCII output.
    pub cell_width: usize,
    /// Pixel spacing for SVG.
    pub scale_x: u32,
    pub scale_y: u32,
    /// Wrap TikZ output in a compilable document.
    pub standalone: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            cell_width: 3,
            scale_x: 40,
            scale_y: 30,
            standalone: false,
        }
    }
}

pub fn render(g: &LaceDiagram, format: RenderFormat, opts: &RenderOptions) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(g, opts),
        RenderFormat::Svg => render_svg(g, opts),
        RenderFormat::Tikz => render_tikz(g, opts),
    }
}

// Rows from the top height down. Links are drawn in the gap to the right
// of their left dot: '-' for level links, '/' rising, '\' falling.
fn render_ascii(g: &LaceDiagram, opts: &RenderOptions) -> String {
    let Some((lo, hi)) = g.height_range() else {
        return String::new();
    };
    let w = opts.cell_width.max(1);
    let width = g.order() * (w + 1) + 1;
    let mut out = String::new();
    for y in (lo..=hi).rev() {
        let mut row = vec![' '; width];
        for (x, col) in g.columns.iter().enumerate() {
            if col.contains(&y) {
                row[x * (w + 1)] = 'o';
            }
        }
        for s in g.segments.iter().filter(|s| s.from == y) {
            let fill = match s.to.cmp(&s.from) {
                std::cmp::Ordering::Equal => '-',
                std::cmp::Ordering::Greater => '/',
                std::cmp::Ordering::Less => '\\',
            };
            let start = s.x * (w + 1) + 1;
            row[start..start + w].iter_mut().for_each(|c| *c = fill);
        }
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render_svg(g: &LaceDiagram, opts: &RenderOptions) -> String {
    let (lo, hi) = g.height_range().unwrap_or((0, 0));
    let margin = 20i64;
    let sx = i64::from(opts.scale_x);
    let sy = i64::from(opts.scale_y);
    let px = |x: usize| margin + x as i64 * sx;
    let py = |y: i64| margin + (hi - y) * sy;
    let width = 2 * margin + g.order() as i64 * sx;
    let height = 2 * margin + (hi - lo) * sy;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for s in &g.segments {
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2"/>"#,
            px(s.x),
            py(s.from),
            px(s.x + 1),
            py(s.to)
        );
    }
    for (x, col) in g.columns.iter().enumerate() {
        for &y in col {
            let _ = writeln!(
                out,
                r#"  <circle cx="{}" cy="{}" r="4" fill="black"/>"#,
                px(x),
                py(y)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn render_tikz(g: &LaceDiagram, opts: &RenderOptions) -> String {
    let mut out = String::new();
    if opts.standalone {
        out.push_str("\\documentclass[tikz]{standalone}\n\\begin{document}\n");
    }
    out.push_str("\\begin{tikzpicture}[x=0.8cm,y=0.5cm]\n");
    for s in &g.segments {
        let _ = writeln!(
            out,
            "  \\draw[thick] ({},{}) -- ({},{});",
            s.x,
            s.from,
            s.x + 1,
            s.to
        );
    }
    for (x, col) in g.columns.iter().enumerate() {
        for &y in col {
            let _ = writeln!(out, "  \\fill ({x},{y}) circle (2pt);");
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    if opts.standalone {
        out.push_str("\\end{document}\n");
    }
    out
}
