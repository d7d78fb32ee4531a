use std::fmt::{self, Write as _};
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use petweave::classify::Budgets;
use petweave::codec::{decode_graph6_lines, emit_report, emit_scan, encode_graph6, ReportRecord};
use petweave::spectral::{lambda2_scan, Tolerances};
use petweave::survey::{check_against, survey, ReferenceTables, SurveyConfig};
use petweave::symmetry::{are_isomorphic, SymmetryError};
use petweave::weave::{build, Sigma, WeaveSpec};

use crate::args::{
    Command, ConstructArgs, MemberArgs, ReportArgs, ScanArgs, ToleranceArgs, VerifyArgs,
};

#[derive(Debug)]
pub enum Failure {
    Assertion(String),
    Usage(String),
    Budget(String),
    Runtime(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Assertion(m) => write!(f, "assertion failed: {m}"),
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Budget(m) => write!(f, "budget exceeded: {m}"),
            Failure::Runtime(m) => f.write_str(m),
        }
    }
}

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Construct(a) => construct(a),
        Command::Report(a) => report(a),
        Command::Verify(a) => verify(a),
        Command::Scan(a) => scan(a),
    }
}

fn specs(member: &MemberArgs) -> Result<Vec<WeaveSpec>, Failure> {
    if member.n.start < 2 {
        return Err(Failure::Usage(format!(
            "--n must be at least 2, got {}",
            member.n.start
        )));
    }
    match &member.sigma {
        Some(text) => {
            if !member.n.is_single() {
                return Err(Failure::Usage("--sigma needs a single --n".into()));
            }
            let n = member.n.start;
            let sigma = Sigma::parse_cycles(text, n).map_err(|e| Failure::Usage(e.to_string()))?;
            let spec =
                WeaveSpec::with_sigma(n, sigma).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(vec![spec])
        }
        None => member
            .n
            .values()
            .map(|n| WeaveSpec::cycle(n).map_err(|e| Failure::Usage(e.to_string())))
            .collect(),
    }
}

fn tolerances(t: &ToleranceArgs) -> Result<Tolerances, Failure> {
    for (flag, v) in [
        ("--eig-tol", t.eig_tol),
        ("--cluster-tol", t.cluster_tol),
        ("--target-accuracy", t.target_accuracy),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Failure::Usage(format!("{flag} must be positive, got {v}")));
        }
    }
    Ok(Tolerances {
        eig_tol: t.eig_tol,
        cluster_tol: t.cluster_tol,
        target_accuracy: t.target_accuracy,
        ..Tolerances::default()
    })
}

fn positive(flag: &str, v: u64) -> Result<u64, Failure> {
    if v == 0 {
        return Err(Failure::Usage(format!("{flag} must be positive")));
    }
    Ok(v)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Runtime(format!("cannot write to stdout: {e}"))),
    }
}

fn construct(a: ConstructArgs) -> Result<(), Failure> {
    let mut text = String::new();
    for spec in specs(&a.member)? {
        let s = encode_graph6(&build(&spec)).map_err(|e| Failure::Runtime(e.to_string()))?;
        let _ = writeln!(text, "{s}");
    }
    write_output(a.out.as_deref(), &text)
}

fn report(a: ReportArgs) -> Result<(), Failure> {
    let specs = specs(&a.member)?;
    let cfg = SurveyConfig {
        tolerances: tolerances(&a.tolerances)?,
        aut_budget: positive("--aut-budget", a.aut_budget)?,
        budgets: Budgets {
            hamilton_nodes: positive("--ham-budget", a.ham_budget)?,
            ..Budgets::default()
        },
    };
    let measured = survey(&specs, &cfg).map_err(|e| {
        if e.is_budget_exceeded() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    })?;
    let records: Vec<ReportRecord> = measured.iter().map(|m| m.record.clone()).collect();
    write_output(
        a.output.out.as_deref(),
        &emit_report(&records, a.output.format),
    )?;

    if !a.assert_paper {
        return Ok(());
    }
    let refs = ReferenceTables::bundled();
    let covered = refs.covered();
    let mut divergences = Vec::new();
    for m in &measured {
        if m.spec.is_exploratory() {
            eprintln!(
                "n={}: wiring {} is exploratory, not checked",
                m.spec.n(),
                m.spec.sigma()
            );
        } else if !covered.contains(&m.spec.n()) {
            eprintln!("n={}: no reference row, not checked", m.spec.n());
        }
        divergences.extend(check_against(m, &refs));
    }
    for d in &divergences {
        eprintln!("{d}");
    }
    if divergences.is_empty() {
        Ok(())
    } else {
        Err(Failure::Assertion(format!(
            "{} reference value(s) not reproduced",
            divergences.len()
        )))
    }
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let budget = positive("--aut-budget", a.aut_budget)?;
    let text = fs::read_to_string(&a.file)
        .map_err(|e| Failure::Runtime(format!("cannot read {}: {e}", a.file.display())))?;
    let mut out = String::new();
    for (line, decoded) in decode_graph6_lines(&text) {
        let g = match decoded {
            Ok(g) => g,
            Err(e) => {
                let _ = writeln!(out, "line {line}: decode error: {e}");
                continue;
            }
        };
        let v = g.vertex_count();
        let candidate = (v.is_multiple_of(10) && v >= 20).then_some(v / 10);
        let verdict = match candidate {
            None => format!("{v} vertices, no family member of this size"),
            Some(n) => {
                let member = build(&WeaveSpec::cycle(n).expect("n >= 2"));
                match are_isomorphic(&g, &member, budget) {
                    Ok(Some(_)) => format!("isomorphic to G_{n}"),
                    Ok(None) => format!("not isomorphic to G_{n}"),
                    Err(SymmetryError::BudgetExceeded { budget }) => {
                        return Err(Failure::Budget(format!(
                            "line {line}: isomorphism search exceeded {budget} nodes"
                        )))
                    }
                    Err(e) => format!("not isomorphic to G_{n} ({e})"),
                }
            }
        };
        let _ = writeln!(out, "line {line}: {verdict}");
    }
    write_output(a.out.as_deref(), &out)
}

fn scan(a: ScanArgs) -> Result<(), Failure> {
    if a.n_max < 3 {
        return Err(Failure::Usage(format!(
            "--n-max must be at least 3, got {}",
            a.n_max
        )));
    }
    let tol = tolerances(&a.tolerances)?;
    let rows = lambda2_scan(a.n_max, &tol).map_err(|e| Failure::Runtime(e.to_string()))?;
    write_output(a.output.out.as_deref(), &emit_scan(&rows, a.output.format))?;
    let bad: Vec<usize> = rows
        .iter()
        .filter(|r| !(r.lambda2 < 6.0))
        .map(|r| r.n)
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Assertion(format!(
            "second eigenvalue reaches 6 for n in {bad:?}"
        )))
    }
}
