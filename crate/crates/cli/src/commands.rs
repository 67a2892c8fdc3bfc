//! One function per subcommand; each returns a finished report. Input
//! problems become error findings so the exit code is 2.

use std::path::Path;

use lieforge::algebra::{AlgebraInstance, Convention, Scope};
use lieforge::automorphisms::{self as aut, AutError};
use lieforge::checks;
use lieforge::cohomology::{self, Cochain2, CohomologyError, Grading};
use lieforge::corpus::ESVLA_LIE;
use lieforge::esvla::{self, EsvlaConfig, NIndexMode};
use lieforge::linalg::{fmt_rational, parse_rational, Rational};
use lieforge::report::{Finding, InputDigest, Report};
use lieforge::snla::{self, SnlaInstance};
use lieforge::specfile::{self, AlgebraSpecDoc};
use serde_json::json;
use sha2::{Digest, Sha256};

struct Input {
    name: String,
    text: String,
}

impl Input {
    fn digest(&self) -> InputDigest {
        digest(&self.name, &self.text)
    }
}

fn digest(name: &str, text: &str) -> InputDigest {
    InputDigest {
        name: name.to_string(),
        sha256: hex::encode(Sha256::digest(text.as_bytes())),
    }
}

/// Report carrying a single error finding.
fn failed(command: &str, inputs: Vec<InputDigest>, finding: Finding) -> Report {
    let mut r = Report::new(command);
    r.inputs = inputs;
    r.push(finding);
    r
}

fn base_name(path: &str) -> String {
    Path::new(path)
        .file_name()
        .map_or_else(|| path.to_string(), |n| n.to_string_lossy().into_owned())
}

fn read_input(path: &str) -> Result<Input, Finding> {
    let name = base_name(path);
    std::fs::read_to_string(path)
        .map(|text| Input {
            name: name.clone(),
            text,
        })
        .map_err(|e| Finding::error("io_error", name, e.to_string()))
}

fn parse_doc(input: &Input) -> Result<AlgebraSpecDoc, Finding> {
    specfile::parse(&input.text).map_err(|e| {
        Finding::error("parse_error", format!("{}:{}", input.name, e.line), e.to_string())
    })
}

fn load_instance(input: &Input, window: Option<u32>) -> Result<(AlgebraSpecDoc, AlgebraInstance), Finding> {
    let doc = parse_doc(input)?;
    let a = specfile::instantiate(&doc, window)
        .map_err(|e| Finding::error("instantiate_error", input.name.clone(), e.to_string()))?;
    Ok((doc, a))
}

/// Reads and instantiates a spec file, or returns the error report.
fn open_spec(command: &str, path: &str, window: Option<u32>) -> Result<(Input, AlgebraSpecDoc, AlgebraInstance), Report> {
    let input = read_input(path).map_err(|f| failed(command, vec![], f))?;
    match load_instance(&input, window) {
        Ok((doc, a)) => Ok((input, doc, a)),
        Err(f) => Err(failed(command, vec![input.digest()], f)),
    }
}

fn grading(grade_zero: bool) -> Grading {
    if grade_zero {
        Grading::GradeZero
    } else {
        Grading::Any
    }
}

fn cohomology_error(input: &Input, e: CohomologyError) -> Finding {
    let code = match e {
        CohomologyError::GradeRestrictionRequired => "grade_restriction_required",
        CohomologyError::UnknownCochain(_) => "unknown_cochain",
    };
    Finding::error(code, input.name.clone(), e.to_string())
}

pub fn check(path: &str, window: Option<u32>) -> Report {
    let (input, _, a) = match open_spec("check", path, window) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let mut r = checks::structural_report(&a, &input.name, Scope::Interior);
    r.inputs.push(input.digest());
    r
}

/// Instance findings (such as dropped ill-kinded terms) counted but left to
/// `check` to report.
fn note_instance_findings(r: &mut Report, a: &AlgebraInstance) {
    r.summary("instance_findings", a.findings().len());
}

pub fn cohomology(path: &str, window: Option<u32>, grade_zero: bool) -> Report {
    let command = "cohomology";
    let (input, doc, a) = match open_spec(command, path, window) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let mut r = Report::new(command);
    r.inputs.push(input.digest());
    let h = match cohomology::h2_dimension(&a, grading(grade_zero)) {
        Ok(h) => h,
        Err(e) => {
            r.push(cohomology_error(&input, e));
            return r;
        }
    };
    r.summary("generators", a.dim());
    r.summary("z2_dim", h.cocycles);
    r.summary("b2_dim", h.coboundaries);
    r.summary("h2_dim", h.h2);
    if a.window().is_none() {
        r.summary("derived_dim", a.derived_subalgebra().len());
    }
    note_instance_findings(&mut r, &a);
    for name in doc.cocycle_names() {
        let w = match Cochain2::from_spec(&a, &doc, &name) {
            Ok(w) => w,
            Err(e) => {
                r.push(cohomology_error(&input, e));
                continue;
            }
        };
        let rep = cohomology::check_cocycle(&a, &w, Scope::Interior);
        r.summary(format!("{name}_checked"), rep.checked);
        r.summary(format!("{name}_violations"), rep.violations.len());
        r.extend(checks::cocycle_findings(&a, &w, &rep));
    }
    r
}

pub fn derivations(path: &str, window: Option<u32>, grade_zero: bool) -> Report {
    let command = "derivations";
    let (input, _, a) = match open_spec(command, path, window) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let mut r = Report::new(command);
    r.inputs.push(input.digest());
    match cohomology::derivations(&a, grading(grade_zero)) {
        Ok(d) => {
            r.summary("generators", a.dim());
            r.summary("derivations", d.split.total);
            r.summary("inner", d.split.inner);
            r.summary("outer", d.split.outer);
            r.summary("center_dim", a.center().dim());
            note_instance_findings(&mut r, &a);
        }
        Err(e) => {
            r.push(cohomology_error(&input, e));
        }
    }
    r
}

pub fn extend(path: &str, window: Option<u32>, cocycle: &str) -> Report {
    let command = "extend";
    let (input, doc, a) = match open_spec(command, path, window) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let mut inputs = vec![input.digest()];
    // A declared name wins; otherwise the argument is a file of cocycle lines.
    let (source_doc, name) = if doc.cocycle_names().iter().any(|n| n == cocycle) {
        (doc, cocycle.to_string())
    } else {
        let extra = match read_input(cocycle) {
            Ok(x) => x,
            Err(_) => {
                return failed(
                    command,
                    inputs,
                    Finding::error("unknown_cochain", input.name.clone(), format!("no cochain or file named {cocycle}")),
                )
            }
        };
        inputs.push(extra.digest());
        let extra_doc = match parse_doc(&extra) {
            Ok(d) => d,
            Err(f) => return failed(command, inputs, f),
        };
        let Some(first) = extra_doc.cocycle_names().into_iter().next() else {
            return failed(
                command,
                inputs,
                Finding::error("unknown_cochain", extra.name.clone(), "file declares no cocycle"),
            );
        };
        (extra_doc, first)
    };
    let w = match Cochain2::from_spec(&a, &source_doc, &name) {
        Ok(w) => w,
        Err(e) => return failed(command, inputs, cohomology_error(&input, e)),
    };
    let rep = cohomology::check_cocycle(&a, &w, Scope::Interior);
    let ext = cohomology::central_extension(&a, &w);
    let mut r = Report::new(command);
    r.inputs = inputs;
    r.summary("generators", a.dim());
    r.summary("cocycle_checked", rep.checked);
    r.summary("cocycle_violations", rep.violations.len());
    r.extend(checks::cocycle_findings(&a, &w, &rep));
    let structure = checks::structural_report(&ext, &input.name, Scope::Interior);
    r.absorb("extension_", structure);
    for note in ext.notes() {
        r.push(Finding::info("note", ext.name(), note.clone()));
    }
    r
}

pub fn esvla_audit(window: u32, super_convention: bool, extended: bool) -> Report {
    let command = "esvla audit";
    let cfg = EsvlaConfig::new(window)
        .convention(if super_convention {
            Convention::Super
        } else {
            Convention::Plain
        })
        .n_index(if extended {
            NIndexMode::Extended
        } else {
            NIndexMode::Strict
        });
    let inputs = vec![digest(esvla::SOURCE_NAME, ESVLA_LIE)];
    match esvla::audit_esvla(&cfg) {
        Ok(audit) => {
            let mut r = audit.to_report();
            r.inputs = inputs;
            r
        }
        Err(e) => failed(command, inputs, Finding::error("bad_window", "window", e.to_string())),
    }
}

pub fn snla_verify(path: &str) -> Report {
    let command = "snla verify";
    let input = match read_input(path) {
        Ok(x) => x,
        Err(f) => return failed(command, vec![], f),
    };
    let inputs = vec![input.digest()];
    let doc = match parse_doc(&input) {
        Ok(d) => d,
        Err(f) => return failed(command, inputs, f),
    };
    let s = match SnlaInstance::from_doc(&doc) {
        Ok(s) => s,
        Err(e) => return failed(command, inputs, Finding::error("snla_error", input.name.clone(), e.to_string())),
    };
    let v = snla::verify_snla(&s);
    let mut r = snla::verification_report(&s, &v);
    r.inputs = inputs;
    r
}

fn parse_coeffs(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',')
        .map(|t| parse_rational(t).ok_or_else(|| format!("bad rational '{}'", t.trim())))
        .collect()
}

pub fn snla_search(dim: usize, coeffs: &str, budget: Option<u128>, catalog: Option<&str>) -> Report {
    let command = "snla search";
    let coeffs = match parse_coeffs(coeffs) {
        Ok(c) => c,
        Err(e) => return failed(command, vec![], Finding::error("bad_coefficients", "--coeffs", e)),
    };
    let result = match snla::snla_search(dim, &coeffs, budget) {
        Ok(r) => r,
        Err(e) => return failed(command, vec![], Finding::error("search_error", "search", e.to_string())),
    };
    let mut r = snla::search_report(&result);
    if let Some(path) = catalog {
        let entry = |h: &snla::SearchHit| {
            json!({
                "ordinal": h.ordinal.to_string(),
                "constants": h.constants.iter().map(fmt_rational).collect::<Vec<_>>(),
                "center_dim": h.fingerprint.center_dim,
                "derived_dim": h.fingerprint.derived_dim,
                "h2": h.fingerprint.h2,
            })
        };
        let doc = json!({
            "dim": result.dim,
            "coefficients": result.coeffs.iter().map(fmt_rational).collect::<Vec<_>>(),
            "constant_order": "c[i][j][k] for e_i . e_j = sum_k c[i][j][k] e_k, lexicographic in (i, j, k)",
            "examined": result.examined.to_string(),
            "partial": result.partial,
            "results": result.hits.iter().map(entry).collect::<Vec<_>>(),
        });
        let text = serde_json::to_string_pretty(&doc).expect("catalog serializes") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            r.push(Finding::error("io_error", base_name(path), e.to_string()));
        }
    }
    r
}

fn aut_error(name: &str, e: AutError) -> Finding {
    let (code, location) = match &e {
        AutError::Singular { .. } => ("singular_map", name.to_string()),
        AutError::DimMismatch { .. } => ("dimension_mismatch", name.to_string()),
        AutError::Parse { line, .. } => ("parse_error", format!("{name}:{line}")),
        AutError::ZeroAlpha => ("bad_value", name.to_string()),
    };
    Finding::error(code, location, e.to_string())
}

pub fn aut_verify(path: &str, window: Option<u32>, map: &str) -> Report {
    let command = "aut verify";
    let (input, doc, a) = match open_spec(command, path, window) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let mut inputs = vec![input.digest()];
    let map_input = match read_input(map) {
        Ok(x) => x,
        Err(f) => return failed(command, inputs, f),
    };
    inputs.push(map_input.digest());
    let phi = match aut::parse_map(&map_input.text) {
        Ok(p) => p,
        Err(e) => return failed(command, inputs, aut_error(&map_input.name, e)),
    };
    let rep = match aut::check_automorphism(&a, &phi) {
        Ok(x) => x,
        Err(e) => {
            let mut r = failed(command, inputs, aut_error(&map_input.name, e));
            r.summary("rank", phi.rank());
            return r;
        }
    };
    let mut r = aut::automorphism_report(&a, &rep);
    r.inputs = inputs;
    r.summary("rank", phi.rank());
    if doc.has_product_data() {
        match SnlaInstance::from_doc(&doc) {
            Ok(s) => {
                if let Ok(list) = aut::check_product_preserved(&s.product, &phi) {
                    r.summary("product_violations", list.len());
                    r.extend(aut::product_findings(&a, &list));
                }
                if let Ok(c) = aut::check_symplectomorphism(&s.form, &phi) {
                    r.summary("form_preserved", i64::from(c.passes));
                    r.extend(aut::symplecto_findings(&a, &c));
                }
            }
            Err(e) => {
                r.push(Finding::error("snla_error", input.name.clone(), e.to_string()));
            }
        }
    }
    r
}

pub fn aut_recurrences(path: &str, window: u32) -> Report {
    let command = "aut recurrences";
    let input = match read_input(path) {
        Ok(x) => x,
        Err(f) => return failed(command, vec![], f),
    };
    let inputs = vec![input.digest()];
    if window == 0 {
        return failed(command, inputs, Finding::error("bad_window", "window", "window must be at least 1"));
    }
    let cf = match aut::parse_coefficients(&input.text, window) {
        Ok(c) => c,
        Err(e) => return failed(command, inputs, aut_error(&input.name, e)),
    };
    let rep = aut::check_recurrences(&cf);
    let mut r = aut::recurrence_report(&cf, &rep);
    r.inputs = inputs;
    r
}
