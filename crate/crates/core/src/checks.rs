//! Report assembly for the structural checks of an instance.

use crate::algebra::{AlgebraInstance, Scope};
use crate::cohomology::{CocycleReport, Cochain2};
use crate::linalg::fmt_rational;
use crate::report::{Finding, Report};

/// Location prefix for a spec line, `file:line`.
pub fn line_location(source: &str, line: Option<usize>) -> String {
    match line {
        Some(l) => format!("{source}:{l}"),
        None => source.to_string(),
    }
}

/// Instance-building findings (for example ill-kinded rule outputs).
pub fn instance_findings(a: &AlgebraInstance, source: &str) -> Vec<Finding> {
    a.findings()
        .iter()
        .map(|f| {
            Finding::violation(
                f.code.clone(),
                format!("{} {}", line_location(source, f.line), f.location),
                f.detail.clone(),
            )
        })
        .collect()
}

/// Alternating/graded-symmetry, Jacobi and center over `scope`.
pub fn structural_report(a: &AlgebraInstance, source: &str, scope: Scope) -> Report {
    let mut r = Report::new("check");
    r.summary("generators", a.dim());
    r.summary("interior_generators", a.scope_members(Scope::Interior).len());
    r.summary("boundary_pairs", a.boundary_pair_count());
    if let Some(w) = a.window() {
        r.summary("window", w);
    }
    r.extend(instance_findings(a, source));
    let alt = a.check_alternating();
    r.summary("alternating_violations", alt.len());
    r.extend(alt.iter().map(|v| {
        Finding::violation(
            "alternating_violation",
            format!("({}, {})", v.pair.0, v.pair.1),
            format!("residual {}", v.residual),
        )
    }));
    let jac = a.check_jacobi(scope);
    r.summary("jacobi_checked", jac.checked);
    r.summary("jacobi_skipped", jac.skipped);
    r.summary("jacobi_violations", jac.violations.len());
    r.extend(jac.violations.iter().map(|v| {
        Finding::violation(
            "jacobi_violation",
            format!("({}, {}, {})", v.triple[0], v.triple[1], v.triple[2]),
            format!("residual {}", v.residual),
        )
    }));
    let center = a.center();
    r.summary("center_dim", center.dim());
    r.summary("center_pinned", center.pinned);
    let basis: Vec<String> = center.basis.iter().map(ToString::to_string).collect();
    r.push(Finding::info(
        "center_basis",
        a.name(),
        if basis.is_empty() {
            "0".to_string()
        } else {
            basis.join("; ")
        },
    ));
    r
}

/// Findings for one cochain: symmetry conflicts and failing triples.
pub fn cocycle_findings(
    a: &AlgebraInstance,
    omega: &Cochain2,
    report: &CocycleReport,
) -> Vec<Finding> {
    let mut out: Vec<Finding> = omega
        .conflicts()
        .iter()
        .map(|c| {
            Finding::violation(
                "cochain_conflict",
                format!(
                    "{} ({}, {})",
                    omega.name,
                    a.generator(c.pair.0),
                    a.generator(c.pair.1)
                ),
                format!("residual {}", fmt_rational(&c.residual)),
            )
        })
        .collect();
    out.extend(report.violations.iter().map(|v| {
        Finding::violation(
            "cocycle_violation",
            format!(
                "{} ({}, {}, {})",
                omega.name, v.triple[0], v.triple[1], v.triple[2]
            ),
            format!("residual {}", fmt_rational(&v.residual)),
        )
    }));
    out
}
