//! Adjacency spectra and the classifications derived from them: Ramanujan
//! status, distinct-eigenvalue counts and the spectral Cheeger bounds.

pub mod eigen;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::UGraph;
use crate::weave::{build, WeaveSpec};

pub use eigen::{symmetric_eigen, SymmetricEigen};

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("cannot take the spectrum of a graph with no vertices")]
    EmptyGraph,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("QL iteration did not converge for eigenvalue {index} within {iterations} sweeps")]
    NoConvergence { index: usize, iterations: usize },
    #[error("eigenpair residual {achieved:e} exceeds the requested accuracy {target:e}")]
    AccuracyNotMet { achieved: f64, target: f64 },
    #[error("trace identity violated: {0}")]
    TraceIdentity(String),
    #[error("largest eigenvalue {largest} differs from degree {degree}; graph is not regular and connected as assumed")]
    NotRegular { largest: f64, degree: usize },
    #[error("spectrum has no eigenvalue below the degree")]
    NoSecondEigenvalue,
    #[error("n = {n}: {source}")]
    Member {
        n: usize,
        #[source]
        source: Box<SpectralError>,
    },
}

/// Numerical knobs shared by the spectral routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigenvalues this close to `+d` / `-d` are treated as trivial.
    pub eig_tol: f64,
    /// Gap above which sorted eigenvalues start a new cluster.
    pub cluster_tol: f64,
    /// Maximum admissible eigenpair residual.
    pub target_accuracy: f64,
    /// QL sweep budget per eigenvalue.
    pub max_sweeps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eig_tol: 1e-6,
            cluster_tol: 1e-6,
            target_accuracy: 1e-9,
            max_sweeps: 60,
        }
    }
}

/// Sorted (descending) adjacency eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Largest `||A x - lambda x||` over the computed unit eigenvectors; for
    /// a symmetric matrix every eigenvalue is within this of an exact one.
    pub residual_bound: f64,
    pub graph_size: usize,
}

impl Spectrum {
    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn smallest(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is non-empty")
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x * x).sum()
    }

    /// Checks `sum = 0` (zero trace) and `sum of squares = 2|E|`.
    pub fn check_trace_identities(&self, edge_count: usize) -> Result<(), SpectralError> {
        let sum = self.sum();
        if sum.abs() > 1e-7 * self.graph_size as f64 {
            return Err(SpectralError::TraceIdentity(format!(
                "sum of eigenvalues is {sum:e}"
            )));
        }
        let sq = self.sum_of_squares();
        let want = 2.0 * edge_count as f64;
        if (sq - want).abs() > 1e-6 * (edge_count.max(1)) as f64 {
            return Err(SpectralError::TraceIdentity(format!(
                "sum of squares is {sq}, expected {want}"
            )));
        }
        Ok(())
    }

    /// Size of the cluster containing the largest eigenvalue.
    pub fn top_multiplicity(&self, cluster_tol: f64) -> usize {
        clusters(&self.eigenvalues, cluster_tol)
            .first()
            .map_or(0, Vec::len)
    }
}

/// Computes the spectrum of `g` and verifies each eigenpair residual against
/// `target_accuracy`.
pub fn eigenvalues(g: &UGraph, tol: &Tolerances) -> Result<Spectrum, SpectralError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    if !(tol.target_accuracy > 0.0) {
        return Err(SpectralError::BadTolerance(tol.target_accuracy));
    }
    let eig = symmetric_eigen(&g.adjacency_matrix(), n, tol.max_sweeps).map_err(|e| {
        SpectralError::NoConvergence {
            index: e.index,
            iterations: e.iterations,
        }
    })?;

    let adjacency = g.adjacency_lists();
    let mut residual_bound: f64 = 0.0;
    for j in 0..n {
        let x = eig.vector(j);
        let lambda = eig.values[j];
        let r: f64 = adjacency
            .iter()
            .enumerate()
            .map(|(row, nbrs)| {
                let ax: f64 = nbrs.iter().map(|&c| x[c]).sum();
                (ax - lambda * x[row]).powi(2)
            })
            .sum::<f64>()
            .sqrt();
        residual_bound = residual_bound.max(r);
    }
    if residual_bound > tol.target_accuracy {
        return Err(SpectralError::AccuracyNotMet {
            achieved: residual_bound,
            target: tol.target_accuracy,
        });
    }

    let spectrum = Spectrum {
        eigenvalues: eig.values,
        residual_bound,
        graph_size: n,
    };
    spectrum.check_trace_identities(g.edge_count())?;
    Ok(spectrum)
}

fn check_degree(s: &Spectrum, degree: usize, eig_tol: f64) -> Result<(), SpectralError> {
    if !(eig_tol > 0.0) {
        return Err(SpectralError::BadTolerance(eig_tol));
    }
    let largest = s.largest();
    if (largest - degree as f64).abs() > eig_tol {
        return Err(SpectralError::NotRegular { largest, degree });
    }
    Ok(())
}

/// Second-largest eigenvalue in the signed sense: the largest one more than
/// `eig_tol` below the degree.
pub fn second_largest(s: &Spectrum, degree: usize, eig_tol: f64) -> Option<f64> {
    let d = degree as f64;
    s.eigenvalues.iter().copied().find(|&x| d - x > eig_tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RamanujanVerdict {
    /// Signed second-largest eigenvalue, if there is one.
    pub lambda2: Option<f64>,
    /// `|lambda2|`, the value tabulated for this family.
    pub lambda2_abs: f64,
    /// Largest `|lambda|` over eigenvalues other than `+d` (and `-d` for
    /// bipartite graphs); this is what the Ramanujan bound constrains.
    pub nontrivial_abs_max: f64,
    /// `2 sqrt(d - 1)`.
    pub bound: f64,
    pub is_ramanujan: bool,
    /// `bound - nontrivial_abs_max`.
    pub margin: f64,
}

pub fn ramanujan_bound(degree: usize) -> f64 {
    2.0 * (degree.saturating_sub(1) as f64).sqrt()
}

pub fn ramanujan_verdict(
    s: &Spectrum,
    degree: usize,
    eig_tol: f64,
) -> Result<RamanujanVerdict, SpectralError> {
    check_degree(s, degree, eig_tol)?;
    let d = degree as f64;
    let bipartite = (s.smallest() + d).abs() <= eig_tol;
    let nontrivial_abs_max = s
        .eigenvalues
        .iter()
        .filter(|&&x| (x - d).abs() > eig_tol && !(bipartite && (x + d).abs() <= eig_tol))
        .fold(0.0_f64, |acc, x| acc.max(x.abs()));
    let lambda2 = second_largest(s, degree, eig_tol);
    let bound = ramanujan_bound(degree);
    Ok(RamanujanVerdict {
        lambda2,
        lambda2_abs: lambda2.map_or(0.0, f64::abs),
        nontrivial_abs_max,
        bound,
        is_ramanujan: nontrivial_abs_max <= bound,
        margin: bound - nontrivial_abs_max,
    })
}

/// Groups descending values greedily: a new cluster starts whenever the gap
/// to the previous value exceeds `tol`.
fn clusters(values: &[f64], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for &x in values {
        match out.last_mut() {
            Some(cluster) if cluster.last().is_some_and(|&prev| prev - x <= tol) => cluster.push(x),
            _ => out.push(vec![x]),
        }
    }
    out
}

pub fn distinct_count(s: &Spectrum, cluster_tol: f64) -> Result<usize, SpectralError> {
    if !(cluster_tol > 0.0) {
        return Err(SpectralError::BadTolerance(cluster_tol));
    }
    Ok(clusters(&s.eigenvalues, cluster_tol).len())
}

/// The tolerance closest (in log scale) to `reference` at which the distinct
/// count equals `expected`, scanning `1e-12 ..= 1e-1` in quarter decades.
pub fn nearest_passing_tolerance(s: &Spectrum, expected: usize, reference: f64) -> Option<f64> {
    (0..=44)
        .map(|k| 10f64.powf(-12.0 + k as f64 / 4.0))
        .filter(|&t| clusters(&s.eigenvalues, t).len() == expected)
        .min_by(|a, b| {
            let da = (a.log10() - reference.log10()).abs();
            let db = (b.log10() - reference.log10()).abs();
            da.total_cmp(&db)
        })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerBounds {
    pub spectral_gap: f64,
    pub lower: f64,
    pub upper: f64,
}

/// `(d - lambda2) / 2 <= h(G) <= sqrt(2 d (d - lambda2))` with the signed
/// second-largest eigenvalue.
pub fn cheeger_bounds(
    s: &Spectrum,
    degree: usize,
    eig_tol: f64,
) -> Result<CheegerBounds, SpectralError> {
    check_degree(s, degree, eig_tol)?;
    let lambda2 = second_largest(s, degree, eig_tol).ok_or(SpectralError::NoSecondEigenvalue)?;
    let d = degree as f64;
    let gap = d - lambda2;
    Ok(CheegerBounds {
        spectral_gap: gap,
        lower: gap / 2.0,
        upper: (2.0 * d * gap).sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub lambda2: f64,
    pub lambda2_abs: f64,
    pub nontrivial_abs_max: f64,
    pub spectral_gap: f64,
    pub cheeger_lower: f64,
    pub cheeger_upper: f64,
    pub ramanujan: bool,
}

/// Second-eigenvalue trend over `G_3 ..= G_{n_max}`, computed in parallel and
/// returned in order of `n`.
pub fn lambda2_scan(n_max: usize, tol: &Tolerances) -> Result<Vec<ScanRow>, SpectralError> {
    (3..=n_max.max(2))
        .into_par_iter()
        .map(|n| {
            scan_member(n, tol).map_err(|e| SpectralError::Member {
                n,
                source: Box::new(e),
            })
        })
        .collect()
}

fn scan_member(n: usize, tol: &Tolerances) -> Result<ScanRow, SpectralError> {
    let spec = WeaveSpec::cycle(n).expect("n >= 3");
    let g = build(&spec);
    let s = eigenvalues(&g, tol)?;
    let verdict = ramanujan_verdict(&s, 6, tol.eig_tol)?;
    let cheeger = cheeger_bounds(&s, 6, tol.eig_tol)?;
    Ok(ScanRow {
        n,
        lambda2: verdict.lambda2.ok_or(SpectralError::NoSecondEigenvalue)?,
        lambda2_abs: verdict.lambda2_abs,
        nontrivial_abs_max: verdict.nontrivial_abs_max,
        spectral_gap: cheeger.spectral_gap,
        cheeger_lower: cheeger.lower,
        cheeger_upper: cheeger.upper,
        ramanujan: verdict.is_ramanujan,
    })
}
