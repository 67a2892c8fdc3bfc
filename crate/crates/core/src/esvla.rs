//! Truncated extended Schrodinger-Virasoro algebra, its three named
//! cochains, and the window-scoped audit.

use thiserror::Error;

use crate::algebra::{AlgebraInstance, Convention, IndexKind, Scope};
use crate::checks;
use crate::cohomology::{self, check_cocycle, Cochain2, CocycleReport, Grading, H2Report, InnerSplit};
use crate::corpus::ESVLA_LIE;
use crate::report::{Finding, Report};
use crate::specfile::{self, AlgebraSpecDoc};

pub const SOURCE_NAME: &str = "esvla.lie";
pub const COCYCLE_NAMES: [&str; 3] = ["omega1", "omega2", "omega3"];

/// How the `N` family is indexed. `[M_m, Y_{n+1/2}]` lands on half-integer
/// `N` indices, so `Strict` flags those terms and `Extended` admits them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NIndexMode {
    Strict,
    Extended,
}

impl NIndexMode {
    pub fn keyword(self) -> &'static str {
        match self {
            NIndexMode::Strict => "strict",
            NIndexMode::Extended => "extended",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EsvlaConfig {
    pub window: u32,
    pub convention: Convention,
    pub n_index: NIndexMode,
}

impl EsvlaConfig {
    pub fn new(window: u32) -> Self {
        Self {
            window,
            convention: Convention::Super,
            n_index: NIndexMode::Strict,
        }
    }

    pub fn convention(mut self, c: Convention) -> Self {
        self.convention = c;
        self
    }

    pub fn n_index(mut self, mode: NIndexMode) -> Self {
        self.n_index = mode;
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EsvlaError {
    #[error("window must be at least 2, got {0}")]
    WindowTooSmall(u32),
}

/// The bundled document with the convention and `N` kind of `cfg`.
pub fn document(cfg: &EsvlaConfig) -> AlgebraSpecDoc {
    let mut doc = specfile::parse(ESVLA_LIE).expect("bundled file parses");
    doc.convention = cfg.convention;
    if cfg.n_index == NIndexMode::Extended {
        doc.family_mut("N").expect("N declared").kind = IndexKind::Mixed;
    }
    doc
}

pub fn build_esvla(cfg: &EsvlaConfig) -> Result<AlgebraInstance, EsvlaError> {
    if cfg.window < 2 {
        return Err(EsvlaError::WindowTooSmall(cfg.window));
    }
    Ok(specfile::instantiate(&document(cfg), Some(cfg.window)).expect("bundled file instantiates"))
}

#[derive(Clone, Debug)]
pub struct BundledCocycles {
    pub omega1: Cochain2,
    pub omega2: Cochain2,
    pub omega3: Cochain2,
}

impl BundledCocycles {
    pub fn all(&self) -> [&Cochain2; 3] {
        [&self.omega1, &self.omega2, &self.omega3]
    }
}

/// The three cochains of the bundled file evaluated on `a`.
pub fn bundled_cocycles(cfg: &EsvlaConfig, a: &AlgebraInstance) -> BundledCocycles {
    let doc = document(cfg);
    let get = |n: &str| Cochain2::from_spec(a, &doc, n).expect("bundled cochain");
    BundledCocycles {
        omega1: get("omega1"),
        omega2: get("omega2"),
        omega3: get("omega3"),
    }
}

#[derive(Clone, Debug)]
pub struct CochainAudit {
    pub name: String,
    pub even: bool,
    pub report: CocycleReport,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub config: EsvlaConfig,
    pub structure: Report,
    pub cochains: Vec<CochainAudit>,
    pub derivations: InnerSplit,
    pub h2: H2Report,
    pub findings: Vec<Finding>,
}

pub fn audit_esvla(cfg: &EsvlaConfig) -> Result<AuditReport, EsvlaError> {
    let a = build_esvla(cfg)?;
    let structure = checks::structural_report(&a, SOURCE_NAME, Scope::Interior);
    let omegas = bundled_cocycles(cfg, &a);
    let mut findings = Vec::new();
    let mut cochains = Vec::new();
    for w in omegas.all() {
        let report = check_cocycle(&a, w, Scope::Interior);
        findings.extend(checks::cocycle_findings(&a, w, &report));
        let even = w.is_even(&a);
        if !even {
            findings.push(Finding::info(
                "odd_cochain",
                w.name.clone(),
                "pairs generators of opposite parity; outside the even cochain space used for H2",
            ));
        }
        cochains.push(CochainAudit {
            name: w.name.clone(),
            even,
            report,
        });
    }
    let ders = cohomology::derivations(&a, Grading::GradeZero).expect("grade-zero is allowed");
    let h2 = cohomology::h2_dimension(&a, Grading::GradeZero).expect("grade-zero is allowed");
    findings.push(Finding::info(
        "scope",
        format!("window {}", cfg.window),
        "verdicts hold for this truncation only; dimensions count grade-zero maps and cochains \
         and are not comparable to statements about the full algebra",
    ));
    Ok(AuditReport {
        config: *cfg,
        structure,
        cochains,
        derivations: ders.split,
        h2,
        findings,
    })
}

impl AuditReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("esvla audit");
        r.absorb("", self.structure.clone());
        r.summary("window", self.config.window);
        r.summary("interior_margin", crate::algebra::DEFAULT_INTERIOR_MARGIN);
        for c in &self.cochains {
            r.summary(format!("{}_checked", c.name), c.report.checked);
            r.summary(format!("{}_skipped", c.name), c.report.skipped);
            r.summary(format!("{}_violations", c.name), c.report.violations.len());
        }
        r.summary("grade_zero_derivations", self.derivations.total);
        r.summary("grade_zero_inner_derivations", self.derivations.inner);
        r.summary("grade_zero_outer_derivations", self.derivations.outer);
        r.summary("grade_zero_z2_dim", self.h2.cocycles);
        r.summary("grade_zero_b2_dim", self.h2.coboundaries);
        r.summary("grade_zero_h2_dim_at_window", self.h2.h2);
        r.push(Finding::info(
            "config",
            SOURCE_NAME,
            format!(
                "convention {} n-index {}",
                self.config.convention.keyword(),
                self.config.n_index.keyword()
            ),
        ));
        r.extend(self.findings.iter().cloned());
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Element, GeneratorId};
    use crate::linalg::{int, rat, Rational};
    use num_traits::Zero;

    fn g(f: &str, i: i64) -> Element {
        Element::generator(GeneratorId::at(f, i))
    }

    fn y(i: i64) -> Element {
        Element::generator(GeneratorId::half("Y", i))
    }

    fn ext(w: u32) -> EsvlaConfig {
        EsvlaConfig::new(w).n_index(NIndexMode::Extended)
    }

    #[test]
    fn window_three_has_27_generators() {
        assert_eq!(build_esvla(&EsvlaConfig::new(3)).unwrap().dim(), 27);
        assert_eq!(build_esvla(&EsvlaConfig::new(1)).unwrap_err(), EsvlaError::WindowTooSmall(1));
    }

    #[test]
    fn relation_entries() {
        let a = build_esvla(&ext(4)).unwrap();
        let br = |x: &Element, z: &Element| a.bracket(x, z).unwrap().0;
        assert!(br(&g("M", 1), &g("N", 2)).is_zero());
        assert_eq!(br(&g("L", 1), &g("M", 1)), g("M", 2));
        assert_eq!(br(&g("L", 1), &g("L", 2)), g("L", 3));
        assert_eq!(br(&g("L", 2), &y(0)), y(2));
        assert_eq!(br(&y(0), &y(0)), g("L", 1).scaled(&int(2)));
        // [L_m, L_n] = (n - m) L_{m+n} as displayed
        assert_eq!(br(&g("L", 2), &g("L", 1)), g("L", 3).scaled(&int(-1)));
    }

    #[test]
    fn matches_spec_instantiation() {
        let cfg = EsvlaConfig::new(3);
        let a = build_esvla(&cfg).unwrap();
        let b = specfile::instantiate(&specfile::parse(ESVLA_LIE).unwrap(), Some(3)).unwrap();
        assert_eq!(a.canonical_dump(), b.canonical_dump());
    }

    #[test]
    fn cochain_values() {
        let cfg = ext(4);
        let a = build_esvla(&cfg).unwrap();
        let w = bundled_cocycles(&cfg, &a);
        let pos = |id: GeneratorId| a.position(&id).unwrap();
        let v = |c: &Cochain2, x: GeneratorId, z: GeneratorId| c.value(pos(x), pos(z));
        assert_eq!(v(&w.omega1, GeneratorId::half("Y", 0), GeneratorId::half("Y", -1)), int(1));
        assert_eq!(v(&w.omega1, GeneratorId::half("Y", 0), GeneratorId::half("Y", -2)), int(0));
        assert_eq!(v(&w.omega2, GeneratorId::at("L", 2), GeneratorId::half("Y", -3)), int(1));
        assert_eq!(v(&w.omega2, GeneratorId::at("L", 1), GeneratorId::half("Y", -2)), rat(1, 2));
        for m in -4..=4 {
            for n in -4..=3 {
                let expected = if m + n + 1 == 0 { 1 } else { 0 };
                assert_eq!(
                    v(&w.omega3, GeneratorId::at("M", m), GeneratorId::half("Y", n)),
                    int(expected)
                );
            }
        }
        assert!(w.omega1.conflicts().is_empty());
        assert!(w.omega1.is_even(&a));
        assert!(!w.omega3.is_even(&a));
    }

    /// Cyclic sum for `(L_p, M_m, Y_{n+1/2})` expanded by hand:
    /// `ω3(L_p, N) = 0`, `[Y, L_p] = -(p/2 - n) Y_{p+n+1/2}`,
    /// `[L_p, M_m] = m M_{p+m}`, `ω3(Y, M) = -ω3(M, Y)`.
    fn omega3_oracle(p: i64, m: i64, n: i64) -> Rational {
        if p + m + n + 1 != 0 {
            return int(0);
        }
        -(rat(p, 2) - int(n)) - int(m)
    }

    #[test]
    fn omega3_matches_symbolic_expansion() {
        let cfg = ext(6);
        let a = build_esvla(&cfg).unwrap();
        let w = bundled_cocycles(&cfg, &a).omega3;
        let report = check_cocycle(&a, &w, Scope::All);
        let failing: std::collections::BTreeSet<String> = report
            .violations
            .iter()
            .map(|v| format!("{} {} {}", v.triple[0], v.triple[1], v.triple[2]))
            .collect();
        let mut compared = 0;
        for p in -2..=2 {
            for m in -2..=2 {
                for n in -2..=1 {
                    let key = format!(
                        "{} {} {}",
                        GeneratorId::at("L", p),
                        GeneratorId::at("M", m),
                        GeneratorId::half("Y", n)
                    );
                    let oracle_fails = !omega3_oracle(p, m, n).is_zero();
                    assert_eq!(failing.contains(&key), oracle_fails, "{key}");
                    compared += 1;
                }
            }
        }
        assert_eq!(compared, 100);
    }

    #[test]
    fn plain_convention_flags_yy() {
        let cfg = EsvlaConfig::new(4).convention(Convention::Plain);
        let a = build_esvla(&cfg).unwrap();
        let alt = a.check_alternating();
        assert!(alt
            .iter()
            .any(|v| v.pair.0 == GeneratorId::half("Y", 0) && v.pair.1 == GeneratorId::half("Y", 0)));
        let sup = build_esvla(&EsvlaConfig::new(4)).unwrap();
        assert!(sup.check_alternating().is_empty());
    }

    #[test]
    fn abelianized_center_is_everything() {
        let mut doc = document(&EsvlaConfig::new(3));
        for r in &mut doc.rules {
            r.value.terms.clear();
        }
        let a = specfile::instantiate(&doc, Some(3)).unwrap();
        let interior = a.scope_members(Scope::Interior).len();
        assert_eq!(a.center().dim(), interior);
    }

    #[test]
    fn audit_is_repeatable() {
        let cfg = ext(3);
        let one = audit_esvla(&cfg).unwrap().to_report();
        let again = audit_esvla(&cfg).unwrap().to_report();
        assert_eq!(one, again);
    }
}
