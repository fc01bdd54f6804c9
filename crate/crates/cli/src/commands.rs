//! One function per subcommand. Each returns what should go to stdout, plus
//! notes for stderr, so tests can drive them without a process.

use isospectral::apps::{
    estimate_rho, laplacian, suggest_structural_sets, LaplacianKind, Strategy,
};
use isospectral::charpoly::spectrum;
use isospectral::graph::WeightedDigraph;
use isospectral::reduce::ReductionResult;
use isospectral::regions::{all_specs, auto_window, poly_extension, raster, RegionFamily, Window};
use serde::Serialize;

use crate::error::CliError;
use crate::format::{coeff_pairs, pair, round_sig, show_complex, show_labels, to_json, GraphFile, RasterFile};

#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub notes: Vec<String>,
}

/// Parses `1,3,4` or `v1,v3,v4` (1-based) into 0-based labels.
pub fn parse_labels(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let digits = t.strip_prefix('v').unwrap_or(t);
            match digits.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(CliError::invalid(format!("bad vertex label {t:?}; labels start at 1"))),
            }
        })
        .collect()
}

/// `re_min,re_max,im_min,im_max`.
pub fn parse_window(s: &str) -> Result<Window, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::invalid(format!("bad window {s:?}: {e}")))?;
    match v[..] {
        [a, b, c, d] if a < b && c < d && v.iter().all(|x| x.is_finite()) => Ok(Window::new(a, b, c, d)),
        _ => Err(CliError::invalid(format!(
            "bad window {s:?}: want re_min,re_max,im_min,im_max with min < max"
        ))),
    }
}

/// `400` or `400x300`.
pub fn parse_resolution(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::invalid(format!("bad resolution {s:?}"));
    let (a, b) = s.split_once('x').unwrap_or((s, s));
    let nx: usize = a.trim().parse().map_err(|_| bad())?;
    let ny: usize = b.trim().parse().map_err(|_| bad())?;
    if nx < 2 || ny < 2 {
        return Err(bad());
    }
    Ok((nx, ny))
}

pub fn validate(file: &GraphFile) -> Result<Output, CliError> {
    let loaded = file.to_graph()?;
    let g = &loaded.graph;
    let mut notes: Vec<String> = loaded.warnings.iter().map(|w| format!("warning: {w}")).collect();
    notes.push(format!("ok: {} vertices, {} edges", g.n(), g.edge_count()));
    Ok(Output {
        stdout: GraphFile::from_graph(g).to_json(),
        notes,
    })
}

#[derive(Serialize)]
struct ExceptionalJson {
    values: Vec<[f64; 2]>,
    /// Polynomials whose roots make up `values`, coefficients ascending.
    polys: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct ReduceJson {
    kept: Vec<usize>,
    trace: Vec<Vec<usize>>,
    graph: GraphFile,
    exceptional: ExceptionalJson,
}

pub enum ReducePlan {
    /// Nested kept sets, each applied in one step.
    Keep(Vec<Vec<usize>>),
    /// Nested kept sets, each reached one vertex at a time.
    Sequence(Vec<Vec<usize>>),
    /// Vertices removed one at a time, in the order given.
    Eliminate(Vec<usize>),
}

pub fn reduce(g: &WeightedDigraph, plan: &ReducePlan) -> Result<(Output, GraphFile), CliError> {
    let mut r = ReductionResult::identity(g);
    match plan {
        ReducePlan::Keep(keeps) => {
            for k in keeps {
                r = r.then_keep(k)?;
            }
        }
        ReducePlan::Sequence(keeps) => {
            for k in keeps {
                r = r.then_closure(k)?;
            }
        }
        ReducePlan::Eliminate(vs) => {
            for &v in vs {
                r = r.then_eliminate(v)?;
            }
        }
    }
    let one_based = |vs: &[usize]| vs.iter().map(|v| v + 1).collect::<Vec<_>>();
    let graph = GraphFile::from_graph(&r.graph);
    let report = ReduceJson {
        kept: one_based(&r.labels),
        trace: r.trace.iter().map(|t| one_based(t)).collect(),
        graph: graph.clone(),
        exceptional: ExceptionalJson {
            values: r.exceptional.sorted_values().into_iter().map(pair).collect(),
            polys: r.exceptional.polys().iter().map(coeff_pairs).collect(),
        },
    };
    let notes = vec![format!(
        "reduced onto {}; {} exceptional values",
        show_labels(&r.labels),
        r.exceptional.len()
    )];
    Ok((
        Output {
            stdout: to_json(&report),
            notes,
        },
        graph,
    ))
}

#[derive(Serialize)]
struct Eigen {
    value: [f64; 2],
    multiplicity: usize,
}

#[derive(Serialize)]
struct SpectrumJson {
    total: usize,
    eigenvalues: Vec<Eigen>,
}

pub fn spectrum_cmd(g: &WeightedDigraph, tol: f64, json: bool) -> Result<Output, CliError> {
    let s = spectrum(g, tol)?;
    let stdout = if json {
        to_json(&SpectrumJson {
            total: s.total(),
            eigenvalues: s
                .entries()
                .iter()
                .map(|&(z, m)| Eigen {
                    value: pair(z),
                    multiplicity: m,
                })
                .collect(),
        })
    } else {
        let mut out = format!("{:<40} {}\n", "eigenvalue", "multiplicity");
        for &(z, m) in s.entries() {
            out.push_str(&format!("{:<40} {m}\n", show_complex(z)));
        }
        out.push_str(&format!("total {}\n", s.total()));
        out
    };
    Ok(Output { stdout, notes: Vec::new() })
}

pub fn family_of(name: &str) -> Option<RegionFamily> {
    match name {
        "gershgorin" => Some(RegionFamily::Gershgorin),
        "brauer" => Some(RegionFamily::Brauer),
        "brualdi" => Some(RegionFamily::Brualdi),
        _ => None,
    }
}

/// Rasterizes one region family. Without a window, the Gershgorin-type
/// region's bounding box is used so that all three kinds share a grid.
pub fn region(
    g: &WeightedDigraph,
    family: RegionFamily,
    window: Option<Window>,
    resolution: (usize, usize),
) -> Result<(RasterFile, Output), CliError> {
    let ext = poly_extension(g);
    let specs = all_specs(&ext, family).map_err(CliError::invalid)?;
    let window = match window {
        Some(w) => w,
        None => auto_window(&ext, RegionFamily::Gershgorin).map_err(CliError::invalid)?,
    };
    let grid = raster(&ext, &specs, window, resolution).map_err(CliError::invalid)?;
    let file = RasterFile::new(&grid, family, GraphFile::from_graph(g).digest());
    let notes = vec![format!(
        "{family}: {} regions, {} of {} cells over {window}",
        specs.len(),
        grid.union_count(),
        grid.cells()
    )];
    let stdout = to_json(&file);
    Ok((file, Output { stdout, notes }))
}

#[derive(Serialize)]
struct LevelJson {
    level: usize,
    kept: Vec<usize>,
    exceptional: Vec<[f64; 2]>,
    retained: Vec<[f64; 2]>,
    region_radius: f64,
    bound: f64,
}

#[derive(Serialize)]
struct RhoJson {
    bound: f64,
    levels: Vec<LevelJson>,
}

pub fn rho(g: &WeightedDigraph, levels: usize, json: bool) -> Result<Output, CliError> {
    let est = estimate_rho(g, levels)?;
    let stdout = if json {
        to_json(&RhoJson {
            bound: round_sig(est.bound),
            levels: est
                .levels
                .iter()
                .enumerate()
                .map(|(k, l)| LevelJson {
                    level: k,
                    kept: l.reduction.labels.iter().map(|v| v + 1).collect(),
                    exceptional: l.exceptional.iter().copied().map(pair).collect(),
                    retained: l.retained.iter().copied().map(pair).collect(),
                    region_radius: round_sig(l.region_radius),
                    bound: round_sig(l.bound),
                })
                .collect(),
        })
    } else {
        let values = |zs: &[num_complex::Complex64]| {
            let v: Vec<String> = zs.iter().map(|&z| show_complex(z)).collect();
            format!("{{{}}}", v.join(", "))
        };
        let mut out = String::new();
        for (k, l) in est.levels.iter().enumerate() {
            out.push_str(&format!(
                "level {k}: keep {} radius {} exceptional {} retained {} bound {}\n",
                show_labels(&l.reduction.labels),
                round_sig(l.region_radius),
                values(&l.exceptional),
                values(&l.retained),
                round_sig(l.bound)
            ));
        }
        out.push_str(&format!("bound {}\n", round_sig(est.bound)));
        out
    };
    Ok(Output { stdout, notes: Vec::new() })
}

pub fn laplacian_cmd(g: &WeightedDigraph, kind: LaplacianKind) -> Result<Output, CliError> {
    let l = laplacian(g, kind)?;
    Ok(Output {
        stdout: GraphFile::from_graph(&l).to_json(),
        notes: Vec::new(),
    })
}

#[derive(Serialize)]
struct SuggestionJson {
    rank: usize,
    keep: Vec<usize>,
    score: f64,
}

pub fn suggest(g: &WeightedDigraph, strategy: Strategy, limit: usize, json: bool) -> Result<Output, CliError> {
    let all = suggest_structural_sets(g, strategy)?;
    let total = all.len();
    let shown = &all[..total.min(limit)];
    let stdout = if json {
        let v: Vec<SuggestionJson> = shown
            .iter()
            .enumerate()
            .map(|(k, s)| SuggestionJson {
                rank: k + 1,
                keep: s.keep.iter().map(|v| v + 1).collect(),
                score: round_sig(s.score),
            })
            .collect();
        to_json(&v)
    } else {
        let mut out = String::new();
        for (k, s) in shown.iter().enumerate() {
            out.push_str(&format!("{:>3}  keep {}  score {}\n", k + 1, show_labels(&s.keep), round_sig(s.score)));
        }
        out
    };
    let notes = vec![format!("{total} candidates, showing {}", shown.len())];
    Ok(Output { stdout, notes })
}
