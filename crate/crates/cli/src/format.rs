//! On-disk graph and raster formats.
//!
//! Every float written by this crate is rounded to 12 significant digits
//! first, so re-running a command reproduces its output byte for byte.

use fixedbitset::FixedBitSet;
use isospectral::graph::{normalize_input, EdgeInput, NormalizeOptions, WeightedDigraph};
use isospectral::regions::{RasterGrid, RegionFamily, Window, EPS_MEM};
use isospectral::wfield::{Poly, RationalFn};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const SIG_DIGITS: usize = 12;

/// Rounds to [`SIG_DIGITS`] significant digits and clears negative zero.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap();
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Rounded `[re, im]`, with a component far below the other snapped to 0.
pub fn pair(z: Complex64) -> [f64; 2] {
    let scale = 1e-12 * (1.0 + z.norm());
    let clean = |x: f64| if x.abs() < scale { 0.0 } else { round_sig(x) };
    [clean(z.re), clean(z.im)]
}

/// Human form of a complex value, e.g. `-1`, `2.5i`, `0.5-0.25i`.
pub fn show_complex(z: Complex64) -> String {
    let [re, im] = pair(z);
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) if im < 0.0 => format!("{re}-{}i", -im),
        (false, false) => format!("{re}+{im}i"),
    }
}

pub fn coeff_pairs(p: &Poly) -> Vec<[f64; 2]> {
    p.coeffs().iter().map(|&c| [round_sig(c.re), round_sig(c.im)]).collect()
}

/// 1-based label list such as `{v1, v3}`.
pub fn show_labels(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| format!("v{}", v + 1)).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphEntry {
    pub i: usize,
    pub j: usize,
    pub num: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<[f64; 2]>>,
}

/// Sparse weighted-digraph file. Coefficients run in ascending degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    #[serde(default = "one_based")]
    pub index_base: usize,
    #[serde(default)]
    pub entries: Vec<GraphEntry>,
}

fn one_based() -> usize {
    1
}

/// A parsed graph plus anything worth telling the user about it.
pub struct Loaded {
    pub graph: WeightedDigraph,
    pub warnings: Vec<String>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    /// Builds the graph, summing repeated `(i, j)` entries.
    pub fn to_graph(&self) -> Result<Loaded, CliError> {
        if self.index_base > 1 {
            return Err(CliError::Invalid(format!("index_base must be 0 or 1, got {}", self.index_base)));
        }
        let base = self.index_base;
        let mut seen = std::collections::BTreeMap::new();
        let mut warnings = Vec::new();
        let mut edges = Vec::with_capacity(self.entries.len());
        for (k, e) in self.entries.iter().enumerate() {
            let at = format!("entry {k} ({},{})", e.i, e.j);
            let (Some(i), Some(j)) = (e.i.checked_sub(base), e.j.checked_sub(base)) else {
                return Err(CliError::Invalid(format!("{at}: index below index_base {base}")));
            };
            if i >= self.n || j >= self.n {
                return Err(CliError::Invalid(format!("{at}: index out of range for n = {}", self.n)));
            }
            let num = poly_of(&e.num).map_err(|m| CliError::Invalid(format!("{at}: numerator {m}")))?;
            let den = match &e.den {
                Some(d) => poly_of(d).map_err(|m| CliError::Invalid(format!("{at}: denominator {m}")))?,
                None => Poly::one(),
            };
            if den.is_zero() {
                return Err(CliError::Invalid(format!("zero denominator at ({},{})", e.i, e.j)));
            }
            let w = RationalFn::new(num, den).map_err(|err| CliError::Invalid(format!("{at}: {err}")))?;
            if let Some(first) = seen.insert((i, j), k) {
                warnings.push(format!("entry {k} repeats ({},{}) from entry {first}; weights summed", e.i, e.j));
            }
            edges.push(EdgeInput::weighted(i, j, w));
        }
        let opts = NormalizeOptions {
            merge_parallel: true,
            ..NormalizeOptions::default()
        };
        let graph = normalize_input(self.n, &edges, opts).map_err(|e| CliError::Invalid(e.to_string()))?;
        Ok(Loaded { graph, warnings })
    }

    /// Canonical 1-based form: nonzero entries in row-major order, monic
    /// denominators, `den` omitted when it is 1.
    pub fn from_graph(g: &WeightedDigraph) -> GraphFile {
        let entries = g
            .edges()
            .into_iter()
            .map(|(i, j)| {
                let w = g.get(i, j);
                let den = (!w.den().is_constant() || w.den().coeffs()[0] != Complex64::new(1.0, 0.0))
                    .then(|| coeff_pairs(w.den()));
                GraphEntry {
                    i: i + 1,
                    j: j + 1,
                    num: coeff_pairs(w.num()),
                    den,
                }
            })
            .collect();
        GraphFile {
            n: g.n(),
            index_base: 1,
            entries,
        }
    }

    /// Canonical text: one entry per line, so fixture diffs stay readable.
    pub fn to_json(&self) -> String {
        let mut s = format!("{{\"n\": {}, \"index_base\": {}, \"entries\": [", self.n, self.index_base);
        for (k, e) in self.entries.iter().enumerate() {
            s.push_str(if k == 0 { "\n  " } else { ",\n  " });
            s.push_str(&serde_json::to_string(e).expect("plain data serializes"));
        }
        s.push_str(if self.entries.is_empty() { "]}\n" } else { "\n]}\n" });
        s
    }

    /// Hex SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

fn poly_of(coeffs: &[[f64; 2]]) -> Result<Poly, String> {
    if let Some(k) = coeffs.iter().position(|c| !c[0].is_finite() || !c[1].is_finite()) {
        return Err(format!("coefficient {k} is not finite"));
    }
    Ok(Poly::new(coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect()))
}

/// Compact JSON plus a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Alternating run lengths over a bit sequence, starting with a run of
/// zeros (possibly empty).
pub fn rle_encode(bits: &FixedBitSet, len: usize) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut current = false;
    let mut count = 0;
    for k in 0..len {
        if bits.contains(k) != current {
            runs.push(count);
            current = !current;
            count = 0;
        }
        count += 1;
    }
    runs.push(count);
    runs
}

pub fn rle_decode(runs: &[usize], len: usize) -> Result<FixedBitSet, String> {
    let total: usize = runs.iter().sum();
    if total != len {
        return Err(format!("runs cover {total} cells, expected {len}"));
    }
    let mut bits = FixedBitSet::with_capacity(len);
    let mut at = 0;
    for (k, &r) in runs.iter().enumerate() {
        if k % 2 == 1 {
            bits.insert_range(at..at + r);
        }
        at += r;
    }
    Ok(bits)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowJson {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl From<Window> for WindowJson {
    fn from(w: Window) -> Self {
        WindowJson {
            re_min: round_sig(w.re_min),
            re_max: round_sig(w.re_max),
            im_min: round_sig(w.im_min),
            im_max: round_sig(w.im_max),
        }
    }
}

impl WindowJson {
    pub fn window(&self) -> Window {
        Window::new(self.re_min, self.re_max, self.im_min, self.im_max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Slack {
    /// How the tolerance enters each inequality.
    pub rule: String,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecMask {
    pub spec: String,
    pub runs: Vec<usize>,
}

/// Rasterized region. Cell `(ix, iy)` is bit `iy * nx + ix`, with `iy = 0`
/// the row nearest `im_min`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RasterFile {
    pub kind: String,
    pub graph_sha256: String,
    pub window: WindowJson,
    pub resolution: [usize; 2],
    pub slack: Slack,
    pub union: Vec<usize>,
    pub specs: Vec<SpecMask>,
}

impl RasterFile {
    pub fn new(grid: &RasterGrid, family: RegionFamily, graph_sha256: String) -> RasterFile {
        let len = grid.cells();
        RasterFile {
            kind: family.to_string(),
            graph_sha256,
            window: grid.window.into(),
            resolution: [grid.nx, grid.ny],
            slack: Slack {
                rule: "gap-shrink".into(),
                eps: EPS_MEM,
            },
            union: rle_encode(grid.union(), len),
            specs: grid
                .specs
                .iter()
                .enumerate()
                .map(|(k, s)| SpecMask {
                    spec: s.to_string(),
                    runs: rle_encode(grid.mask(k), len),
                })
                .collect(),
        }
    }

    pub fn cells(&self) -> usize {
        self.resolution[0] * self.resolution[1]
    }

    pub fn union_mask(&self) -> Result<FixedBitSet, String> {
        rle_decode(&self.union, self.cells())
    }

    /// Cell holding `z`, if it lies in the window.
    pub fn cell_of(&self, z: Complex64) -> Option<usize> {
        let w = &self.window;
        let [nx, ny] = self.resolution;
        let fx = (z.re - w.re_min) / (w.re_max - w.re_min);
        let fy = (z.im - w.im_min) / (w.im_max - w.im_min);
        if !(0.0..=1.0).contains(&fx) || !(0.0..=1.0).contains(&fy) {
            return None;
        }
        let ix = ((fx * nx as f64) as usize).min(nx - 1);
        let iy = ((fy * ny as f64) as usize).min(ny - 1);
        Some(iy * nx + ix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use isospectral::fixtures;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(-0.0), 0.0);
        assert_eq!(round_sig(2.0), 2.0);
        assert_eq!(show_complex(Complex64::new(-1e-17, -1.0)), "-1i");
        assert_eq!(show_complex(Complex64::new(0.5, -0.25)), "0.5-0.25i");
    }

    #[test]
    fn rle_round_trip() {
        let mut bits = FixedBitSet::with_capacity(10);
        bits.insert_range(0..3);
        bits.insert(7);
        let runs = rle_encode(&bits, 10);
        assert_eq!(runs, vec![0, 3, 4, 1, 2]);
        assert_eq!(rle_decode(&runs, 10).unwrap(), bits);
        assert!(rle_decode(&runs, 11).is_err());
        assert_eq!(rle_encode(&FixedBitSet::with_capacity(4), 4), vec![4]);
    }

    #[test]
    fn zero_denominator_is_reported_in_file_indices() {
        let f = GraphFile::parse(r#"{"n":2,"entries":[{"i":1,"j":2,"num":[[1,0]],"den":[[0,0]]}]}"#).unwrap();
        let err = f.to_graph().err().unwrap();
        assert_eq!(err.to_string(), "zero denominator at (1,2)");
    }

    #[test]
    fn duplicates_sum_with_warning() {
        let f = GraphFile::parse(
            r#"{"n":2,"index_base":1,"entries":[
                {"i":1,"j":2,"num":[[1,0]],"den":[[0,0],[1,0]]},
                {"i":1,"j":2,"num":[[-1,0],[1,0]],"den":[[0,0],[1,0]]}]}"#,
        )
        .unwrap();
        let l = f.to_graph().unwrap();
        assert_eq!(l.warnings.len(), 1);
        assert!(l.graph.get(0, 1).approx_eq(&RationalFn::one(), 1e-12));
    }

    #[test]
    fn zero_based_files_load() {
        let f = GraphFile::parse(r#"{"n":2,"index_base":0,"entries":[{"i":0,"j":1,"num":[[2,0]]}]}"#).unwrap();
        let g = f.to_graph().unwrap().graph;
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert!(GraphFile::parse(r#"{"n":2,"index_base":0,"entries":[{"i":2,"j":1,"num":[[2,0]]}]}"#)
            .unwrap()
            .to_graph()
            .is_err());
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        for (name, g) in fixtures::all() {
            let once = GraphFile::from_graph(&g).to_json();
            let back = GraphFile::parse(&once).unwrap().to_graph().unwrap().graph;
            assert_eq!(GraphFile::from_graph(&back).to_json(), once, "{name}");
        }
    }
}
