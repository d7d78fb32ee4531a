//! Measuring family members end to end and checking them against the
//! published reference tables shipped in `fixtures/reference_tables.toml`.

use std::fmt;

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::classify::{classify, Budgets, ClassificationReport};
use crate::codec::ReportRecord;
use crate::graph::{diameter, girth, line_graph, named, regular_degree, UGraph};
use crate::spectral::{
    cheeger_bounds, distinct_count, eigenvalues, nearest_passing_tolerance, ramanujan_verdict,
    RamanujanVerdict, SpectralError, Spectrum, Tolerances,
};
use crate::symmetry::{automorphism_group, AutReport, SymmetryError, DEFAULT_SEARCH_BUDGET};
use crate::weave::{build, petersen, WeaveSpec};

const REFERENCE_TOML: &str = include_str!("../fixtures/reference_tables.toml");

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("n={n}: {source}")]
    Spectral { n: usize, source: SpectralError },
    #[error("n={n}: {source}")]
    Symmetry { n: usize, source: SymmetryError },
    #[error("n={n}: graph is not regular")]
    NotRegular { n: usize },
    #[error("n={n}: automorphism group order {order} does not fit in 64 bits")]
    OrderTooLarge { n: usize, order: u128 },
}

impl SurveyError {
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(
            self,
            SurveyError::Symmetry {
                source: SymmetryError::BudgetExceeded { .. },
                ..
            }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurveyConfig {
    pub tolerances: Tolerances,
    pub aut_budget: u64,
    pub budgets: Budgets,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            tolerances: Tolerances::default(),
            aut_budget: DEFAULT_SEARCH_BUDGET,
            budgets: Budgets::default(),
        }
    }
}

/// Everything computed for one member; `record` is the flattened row.
#[derive(Debug, Clone)]
pub struct Measurement {
    pub spec: WeaveSpec,
    pub graph: UGraph,
    pub spectrum: Spectrum,
    pub ramanujan: RamanujanVerdict,
    pub automorphisms: AutReport,
    pub classification: ClassificationReport,
    pub record: ReportRecord,
}

pub fn measure(spec: &WeaveSpec, cfg: &SurveyConfig) -> Result<Measurement, SurveyError> {
    let n = spec.n();
    let g = build(spec);
    let degree = regular_degree(&g).ok_or(SurveyError::NotRegular { n })?;
    let spectral = |source| SurveyError::Spectral { n, source };
    let tol = &cfg.tolerances;

    let spectrum = eigenvalues(&g, tol).map_err(spectral)?;
    let ramanujan = ramanujan_verdict(&spectrum, degree, tol.eig_tol).map_err(spectral)?;
    let cheeger = cheeger_bounds(&spectrum, degree, tol.eig_tol).map_err(spectral)?;
    let distinct_eigs = distinct_count(&spectrum, tol.cluster_tol).map_err(spectral)?;
    let automorphisms = automorphism_group(&g, cfg.aut_budget)
        .map_err(|source| SurveyError::Symmetry { n, source })?;
    let aut_order =
        u64::try_from(automorphisms.group_order).map_err(|_| SurveyError::OrderTooLarge {
            n,
            order: automorphisms.group_order,
        })?;
    let classification = classify(&g, &cfg.budgets);

    let chromatic = &classification.chromatic;
    let three_colorable = if chromatic.upper <= 3 {
        Some(true)
    } else if chromatic.lower > 3 {
        Some(false)
    } else {
        None
    };

    let record = ReportRecord {
        n,
        wiring: spec.sigma().to_string(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        degree,
        girth: girth(&g),
        diameter: diameter(&g),
        aut_order,
        lambda2_abs: ramanujan.lambda2_abs,
        nontrivial_abs_max: ramanujan.nontrivial_abs_max,
        spectral_gap: cheeger.spectral_gap,
        cheeger_lower: cheeger.lower,
        cheeger_upper: cheeger.upper,
        ramanujan: ramanujan.is_ramanujan,
        distinct_eigs,
        hamiltonian: classification.hamiltonian.as_bool(),
        chromatic_number: chromatic.exact(),
        three_colorable,
    };
    Ok(Measurement {
        spec: spec.clone(),
        graph: g,
        spectrum,
        ramanujan,
        automorphisms,
        classification,
        record,
    })
}

/// Measures every member in parallel; results come back in input order. The
/// first error in input order wins.
pub fn survey(specs: &[WeaveSpec], cfg: &SurveyConfig) -> Result<Vec<Measurement>, SurveyError> {
    specs.par_iter().map(|s| measure(s, cfg)).collect()
}

/// Named graphs used for regression and property checks: small classical
/// graphs, the Petersen graph and its line graph, and `G_2 ..= G_7`.
pub fn corpus() -> Vec<(String, UGraph)> {
    let mut out: Vec<(String, UGraph)> = Vec::new();
    for n in 1..=6 {
        out.push((format!("K{n}"), named::complete(n)));
    }
    for n in 3..=9 {
        out.push((format!("C{n}"), named::cycle(n)));
    }
    for n in 2..=7 {
        out.push((format!("P{n}"), named::path(n)));
    }
    for leaves in 2..=6 {
        out.push((format!("star{leaves}"), named::star(leaves)));
    }
    for (a, b) in [(1, 3), (2, 2), (2, 3), (3, 3), (2, 5), (3, 4), (4, 4)] {
        out.push((format!("K{a},{b}"), named::complete_bipartite(a, b)));
    }
    out.push(("empty4".into(), UGraph::empty(4)));
    out.push(("cube".into(), named::cube()));
    out.push(("petersen".into(), petersen()));
    out.push(("L(petersen)".into(), line_graph(&petersen())));
    for n in 2..=7 {
        out.push((
            format!("G{n}"),
            build(&WeaveSpec::cycle(n).expect("n >= 2")),
        ));
    }
    out
}

#[derive(Debug, Clone, Deserialize)]
pub struct BasicRow {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub degree: usize,
    pub girth: usize,
    pub diameter: usize,
    pub aut_order: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SpectraRow {
    pub n: usize,
    pub lambda2_abs: f64,
    pub ramanujan: bool,
}

#[derive(Debug, Clone, Deserialize)]
pub struct DistinctRow {
    pub n: usize,
    pub distinct_eigs: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CheegerRow {
    pub n: usize,
    pub spectral_gap: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ReferenceTolerances {
    pub lambda2: f64,
    pub cheeger: f64,
    pub cluster: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ReferenceTables {
    pub version: u32,
    pub ramanujan_bound: f64,
    pub tolerance: ReferenceTolerances,
    pub basic: Vec<BasicRow>,
    pub spectra: Vec<SpectraRow>,
    pub distinct: Vec<DistinctRow>,
    pub cheeger: Vec<CheegerRow>,
}

impl ReferenceTables {
    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    /// The tables bundled with the crate.
    pub fn bundled() -> Self {
        Self::parse(REFERENCE_TOML).expect("bundled reference tables parse")
    }

    /// `n` values that appear in any table.
    pub fn covered(&self) -> Vec<usize> {
        let mut ns: Vec<usize> = self.basic.iter().map(|r| r.n).collect();
        ns.extend(self.spectra.iter().map(|r| r.n));
        ns.extend(self.distinct.iter().map(|r| r.n));
        ns.extend(self.cheeger.iter().map(|r| r.n));
        ns.sort_unstable();
        ns.dedup();
        ns
    }
}

/// One reference value that the measurement failed to reproduce.
#[derive(Debug, Clone, PartialEq)]
pub struct Divergence {
    pub table: &'static str,
    pub n: usize,
    pub column: &'static str,
    pub expected: String,
    pub got: String,
    pub note: Option<String>,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "table {}, row n={}, column {}: expected {}, got {}",
            self.table, self.n, self.column, self.expected, self.got
        )?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

struct Checker {
    n: usize,
    out: Vec<Divergence>,
}

impl Checker {
    fn exact<T: PartialEq + fmt::Display>(
        &mut self,
        table: &'static str,
        column: &'static str,
        expected: T,
        got: T,
    ) {
        if expected != got {
            self.push(table, column, expected.to_string(), got.to_string(), None);
        }
    }

    fn opt_exact(
        &mut self,
        table: &'static str,
        column: &'static str,
        expected: usize,
        got: Option<usize>,
    ) {
        if got != Some(expected) {
            let got = got.map_or_else(|| "infinite".to_string(), |v| v.to_string());
            self.push(table, column, expected.to_string(), got, None);
        }
    }

    fn close(
        &mut self,
        table: &'static str,
        column: &'static str,
        expected: f64,
        got: f64,
        tol: f64,
    ) {
        if !((expected - got).abs() <= tol) {
            self.push(
                table,
                column,
                format!("{expected} ± {tol:e}"),
                format!("{got:.9}"),
                None,
            );
        }
    }

    fn push(
        &mut self,
        table: &'static str,
        column: &'static str,
        expected: String,
        got: String,
        note: Option<String>,
    ) {
        self.out.push(Divergence {
            table,
            n: self.n,
            column,
            expected,
            got,
            note,
        });
    }
}

/// Compares one measurement against every table row for its `n`. Members
/// with a non-standard wiring or an `n` outside the tables are not checked.
pub fn check_against(m: &Measurement, refs: &ReferenceTables) -> Vec<Divergence> {
    let n = m.spec.n();
    let r = &m.record;
    let mut c = Checker { n, out: Vec::new() };
    if m.spec.is_exploratory() {
        return c.out;
    }

    if let Some(row) = refs.basic.iter().find(|row| row.n == n) {
        c.exact("basic", "vertices", row.vertices, r.vertices);
        c.exact("basic", "edges", row.edges, r.edges);
        c.exact("basic", "degree", row.degree, r.degree);
        c.opt_exact("basic", "girth", row.girth, r.girth);
        c.opt_exact("basic", "diameter", row.diameter, r.diameter);
        c.exact("basic", "aut_order", row.aut_order, r.aut_order);
    }
    if let Some(row) = refs.spectra.iter().find(|row| row.n == n) {
        c.close(
            "spectra",
            "lambda2_abs",
            row.lambda2_abs,
            r.lambda2_abs,
            refs.tolerance.lambda2,
        );
        c.close(
            "spectra",
            "ramanujan_bound",
            refs.ramanujan_bound,
            m.ramanujan.bound,
            5e-7,
        );
        c.exact("spectra", "ramanujan", row.ramanujan, r.ramanujan);
    }
    if let Some(row) = refs.distinct.iter().find(|row| row.n == n) {
        let tol = refs.tolerance.cluster;
        let got = distinct_count(&m.spectrum, tol).expect("positive cluster tolerance");
        if got != row.distinct_eigs {
            let note = match nearest_passing_tolerance(&m.spectrum, row.distinct_eigs, tol) {
                Some(t) => {
                    format!("count at cluster tolerance {tol:e}; nearest passing tolerance {t:.3e}")
                }
                None => format!(
                    "count at cluster tolerance {tol:e}; no tolerance in 1e-12..1e-1 reproduces it"
                ),
            };
            c.push(
                "distinct",
                "distinct_eigs",
                row.distinct_eigs.to_string(),
                got.to_string(),
                Some(note),
            );
        }
    }
    if let Some(row) = refs.cheeger.iter().find(|row| row.n == n) {
        c.close(
            "cheeger",
            "spectral_gap",
            row.spectral_gap,
            r.spectral_gap,
            refs.tolerance.lambda2,
        );
        c.close(
            "cheeger",
            "lower",
            row.lower,
            r.cheeger_lower,
            refs.tolerance.cheeger,
        );
        c.close(
            "cheeger",
            "upper",
            row.upper,
            r.cheeger_upper,
            refs.tolerance.cheeger,
        );
    }
    c.out
}
