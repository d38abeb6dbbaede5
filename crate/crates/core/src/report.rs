//! Run configuration, orchestration and the certificate report.
//!
//! Input and report are JSON documents. Rationals are written as strings
//! `"p"` or `"p/q"`. The report never contains timing data unless asked
//! for, so it is byte-identical across thread counts.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frobenius::{
    assemble, euler_socle_piece, frobenius_axiom_check, jacobian_pieces, AxiomReport, FrobeniusAlgebra, TraceStrategy,
};
use crate::jacobian::{
    crit_containment_check, euler_membership_check, EulerCheck, GradedPiece, JacobianSystem, MacaulayCheck,
    PieceOptions, RankMethod,
};
use crate::poly::{parse_polynomial, Polynomial};
use crate::scalar::Rational;
use crate::toric::{
    anticanonical_polytope, betti_numbers, class_group, extraisom_necessary_check, normalized_volume, validate_fan,
    ExtraisomStatus, FanData, GradingMap, ValidationReport,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanInput {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunOptions {
    pub trace_strategy: TraceStrategy,
    /// Macaulay vanishing is checked for `p = m, ..., m + macaulay_max_extra`.
    pub macaulay_max_extra: usize,
    pub sample_seed: u64,
    pub sample_count: usize,
    pub modular_prefilter: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    /// Only `R(f)_{aβ}` with `a <= max_degree_a` are computed; the socle,
    /// Macaulay and algebra stages are skipped when this cuts below `m-1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree_a: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            trace_strategy: TraceStrategy::Generic,
            macaulay_max_extra: 1,
            sample_seed: 0,
            sample_count: 200,
            modular_prefilter: true,
            threads: None,
            max_degree_a: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub fan: FanInput,
    pub variables: Vec<String>,
    pub polynomial: String,
    /// Each entry names variables set to zero for a critical-locus
    /// containment check.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub crit_subspaces: Vec<Vec<String>>,
    /// Expected variable degrees, compared up to unimodular transform.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_degrees: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub options: RunOptions,
}

/// Bad input; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| InputError(format!("invalid input JSON: {e}")))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    fn check(&self) -> Result<(), InputError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(InputError(format!(
                "unsupported schema_version {}, expected {SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        if self.variables.len() != self.fan.rays.len() {
            return Err(InputError(format!(
                "{} variables for {} rays",
                self.variables.len(),
                self.fan.rays.len()
            )));
        }
        for (i, v) in self.variables.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(InputError(format!("invalid variable name {v:?}")));
            }
            if self.variables[..i].contains(v) {
                return Err(InputError(format!("duplicate variable {v:?}")));
            }
        }
        if self.options.sample_count == 0 {
            return Err(InputError("sample_count must be positive".into()));
        }
        if self.options.threads == Some(0) {
            return Err(InputError("threads must be positive".into()));
        }
        Ok(())
    }

    fn fan(&self) -> Result<FanData, InputError> {
        FanData::new(self.fan.dim, self.fan.rays.clone(), self.fan.max_cones.clone())
            .map_err(|e| InputError(e.to_string()))
    }

    fn parse_polynomial(&self) -> Result<Polynomial<Rational>, InputError> {
        parse_polynomial(&self.polynomial, &self.variables).map_err(|e| InputError(format!("polynomial: {e}")))
    }

    fn crit_indices(&self) -> Result<Vec<Vec<usize>>, InputError> {
        self.crit_subspaces
            .iter()
            .map(|set| {
                set.iter()
                    .map(|name| {
                        self.variables
                            .iter()
                            .position(|v| v == name)
                            .ok_or_else(|| InputError(format!("unknown variable {name:?} in crit_subspaces")))
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok,
    Input,
    Validation,
    Certificate,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Ok => 0,
            ExitStatus::Input => 2,
            ExitStatus::Validation => 3,
            ExitStatus::Certificate => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedGrading {
    pub pass: bool,
    /// `T` with `expected_i = T deg(z_i)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingReport {
    pub rank: usize,
    pub degrees: Vec<Vec<i64>>,
    pub beta: Vec<i64>,
    pub gale_duality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedGrading>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeReport {
    pub vertices: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized_volume: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEntry {
    pub a: usize,
    pub degree: Vec<i64>,
    pub monomials: usize,
    pub relations: usize,
    pub rank: usize,
    pub dim: usize,
    pub method: RankMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CritEntry {
    pub zero_variables: Vec<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surviving_partial: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleReport {
    pub top_dim: usize,
    pub euler_socle_dim: usize,
    pub top_generators: Vec<String>,
    pub euler_socle_generators: Vec<String>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramEntry {
    pub a: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// Rational parts; present for small matrices or on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub strategy: TraceStrategy,
    pub normalized_volume: u64,
    /// `-(-1)^{m(m-1)/2}`
    pub trace_sign: i64,
    /// Coordinate of the strategy generator in `R_0(f)_{mβ}`.
    pub generator_coordinate: String,
    /// `Tr` of the top-degree basis monomial: rational part.
    pub socle_trace: String,
    /// Exponent of the unit `(2πi)`.
    pub unit_exponent: usize,
    pub gram: Vec<GramEntry>,
    pub axioms: AxiomReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianReport {
    pub euler: Option<EulerCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_error: Option<String>,
    pub crit: Vec<CritEntry>,
    pub dims: Vec<DimEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    /// `dim R(f)_{aβ}` for `a = 0, ..., m-1`: the predicted primitive Hodge
    /// numbers `h^{m-1-a,a}_pr` of the hypersurface.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge_row: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge_symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub macaulay: Option<MacaulayCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub socle: Option<SocleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra_error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    /// `consistent`, `inconsistent`, or `asserted` when not all certificates ran.
    pub quasi_smoothness: String,
    pub non_degeneracy: String,
    pub extraisom: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub command: String,
    pub validation: ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extraisom: Option<ExtraisomStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian: Option<JacobianReport>,
    pub hypotheses: Hypotheses,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

/// Extra knobs that do not belong to the input document.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportSettings {
    pub timings: bool,
    pub gram_entries: bool,
}

pub struct Outcome {
    pub report: Report,
    pub status: ExitStatus,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Timer {
    on: bool,
    map: BTreeMap<String, f64>,
}

impl Timer {
    fn run<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if self.on {
            self.map.insert(stage.to_string(), t.elapsed().as_secs_f64());
        }
        out
    }
}

fn extraisom_label(s: &ExtraisomStatus) -> String {
    match s {
        ExtraisomStatus::TriviallyHolds => "trivially_holds".into(),
        ExtraisomStatus::NecessaryConditionOk { .. } => "necessary_condition_ok (not fully verified)".into(),
        ExtraisomStatus::NecessaryConditionFails { .. } => "necessary_condition_fails".into(),
    }
}

/// Validation, grading, polytope and Betti data shared by both commands.
struct Toric {
    fan: FanData,
    grading: Option<GradingMap>,
    report: Report,
}

fn toric_stage(cfg: &RunConfig, command: &str, timer: &mut Timer) -> Result<Toric, InputError> {
    let fan = cfg.fan()?;
    let validation = timer.run("validate", || validate_fan(&fan));
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        name: cfg.name.clone(),
        command: command.into(),
        validation,
        grading: None,
        grading_error: None,
        polytope: None,
        betti: None,
        extraisom: None,
        jacobian: None,
        hypotheses: Hypotheses {
            quasi_smoothness: "asserted".into(),
            non_degeneracy: "asserted".into(),
            extraisom: "not_evaluated".into(),
        },
        failures: Vec::new(),
        timings: None,
    };
    let v = &report.validation;
    let mut grading = None;
    if v.simplicial.pass && v.torsion_free.pass {
        match timer.run("class_group", || class_group(&fan)) {
            Ok(g) => {
                let expected = cfg.expected_degrees.as_ref().map(|e| {
                    let t = g.unimodular_transform_to(e);
                    ExpectedGrading {
                        pass: t.is_some(),
                        transform: t.map(|t| t.to_rows()),
                    }
                });
                if expected.as_ref().is_some_and(|e| !e.pass) {
                    report
                        .failures
                        .push("grading does not match expected_degrees up to unimodular transform".into());
                }
                report.grading = Some(GradingReport {
                    rank: g.rank(),
                    degrees: g.degree_matrix().to_rows(),
                    beta: g.beta().to_vec(),
                    gale_duality: g.gale_duality_holds(&fan),
                    expected,
                });
                grading = Some(g);
            }
            Err(e) => report.grading_error = Some(e.to_string()),
        }
    }
    if v.simplicial.pass && v.complete_criterion.pass {
        let b = betti_numbers(&fan);
        let ex = extraisom_necessary_check(&fan, &b);
        report.hypotheses.extraisom = extraisom_label(&ex);
        report.betti = Some(b);
        report.extraisom = Some(ex);
    }
    if report.validation.all_pass() {
        report.polytope = Some(timer.run("polytope", || match anticanonical_polytope(&fan) {
            Ok(p) => {
                let (normalized_volume, error) = match normalized_volume(&p) {
                    Ok(v) => (Some(v), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                PolytopeReport {
                    vertices: p.vertices.clone(),
                    normalized_volume,
                    error,
                }
            }
            Err(e) => PolytopeReport {
                vertices: Vec::new(),
                normalized_volume: None,
                error: Some(e.to_string()),
            },
        }));
    }
    Ok(Toric { fan, grading, report })
}

fn finish(mut report: Report, timer: Timer) -> Outcome {
    if timer.on {
        report.timings = Some(timer.map);
    }
    let status = if !report.validation.all_pass() || report.grading.is_none() {
        ExitStatus::Validation
    } else if !report.failures.is_empty() {
        ExitStatus::Certificate
    } else {
        ExitStatus::Ok
    };
    Outcome { report, status }
}

/// Validation, grading, polytope and Betti numbers; no Jacobian work.
pub fn cmd_validate(cfg: &RunConfig, settings: ReportSettings) -> Result<Outcome, InputError> {
    let mut timer = Timer {
        on: settings.timings,
        map: BTreeMap::new(),
    };
    cfg.parse_polynomial()?;
    cfg.crit_indices()?;
    let toric = toric_stage(cfg, "validate", &mut timer)?;
    Ok(finish(toric.report, timer))
}

fn dim_entry(a: usize, p: &GradedPiece<Rational>) -> DimEntry {
    DimEntry {
        a,
        degree: p.degree().to_vec(),
        monomials: p.monomials().len(),
        relations: p.relation_count(),
        rank: p.rank(),
        dim: p.dim(),
        method: p.method(),
    }
}

fn gram_entries(alg: &FrobeniusAlgebra<Rational>, a: usize, full: bool) -> Result<GramEntry, String> {
    let g = alg.gram_matrix(a).map_err(|e| e.to_string())?;
    let small = g.nrows() * g.ncols() <= 100;
    Ok(GramEntry {
        a,
        rows: g.nrows(),
        cols: g.ncols(),
        rank: crate::matrix::rank(&g),
        entries: (full || small).then(|| {
            g.to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect()
        }),
    })
}

/// The full certificate run.
pub fn cmd_report(cfg: &RunConfig, settings: ReportSettings) -> Result<Outcome, InputError> {
    let mut timer = Timer {
        on: settings.timings,
        map: BTreeMap::new(),
    };
    let f = cfg.parse_polynomial()?;
    let crit = cfg.crit_indices()?;
    let Toric {
        fan,
        grading,
        mut report,
    } = toric_stage(cfg, "report", &mut timer)?;
    let Some(grading) = grading.filter(|_| report.validation.all_pass()) else {
        return Ok(finish(report, timer));
    };
    let system = match JacobianSystem::new(f, grading, fan) {
        Ok(s) => s,
        Err(e) => return Err(InputError(format!("polynomial: {e}"))),
    };
    let opts = &cfg.options;
    let m = system.dim();
    let names = &cfg.variables;
    let mut jr = JacobianReport {
        euler: None,
        euler_error: None,
        crit: Vec::new(),
        dims: Vec::new(),
        degree_cap: None,
        hodge_row: None,
        hodge_symmetric: None,
        macaulay: None,
        socle: None,
        algebra: None,
        algebra_error: None,
        skipped: Vec::new(),
    };
    let mut failures = Vec::new();

    match timer.run("euler", || euler_membership_check(&system)) {
        Ok(e) => {
            if !e.pass {
                failures.push("Euler-type membership identity fails".into());
            }
            jr.euler = Some(e);
        }
        Err(e) => {
            failures.push(format!("Euler-type membership: {e}"));
            jr.euler_error = Some(e.to_string());
        }
    }
    for c in crit_containment_check(&system, &crit) {
        let entry = CritEntry {
            zero_variables: c.zero_variables.iter().map(|&i| names[i].clone()).collect(),
            pass: c.pass,
            surviving_partial: c.surviving_partial.map(|i| format!("d/d{}", names[i])),
        };
        if !entry.pass {
            failures.push(format!(
                "critical locus containment fails for zero set {:?}",
                entry.zero_variables
            ));
        }
        jr.crit.push(entry);
    }

    let piece_opts = PieceOptions {
        modular_prefilter: opts.modular_prefilter,
        ..PieceOptions::default()
    };
    let cap = opts.max_degree_a.filter(|&c| c < m - 1);
    if let Some(c) = cap {
        jr.degree_cap = Some(c);
        let pieces = timer.run("pieces", || jacobian_pieces(&system, c, piece_opts));
        match pieces {
            Ok(p) => jr.dims = p.iter().enumerate().map(|(a, p)| dim_entry(a, p)).collect(),
            Err(e) => failures.push(format!("graded pieces: {e}")),
        }
        jr.skipped = vec!["macaulay".into(), "socle".into(), "algebra".into()];
        report.jacobian = Some(jr);
        report.failures.extend(failures);
        return Ok(finish(report, timer));
    }

    let top = (2 * m - 2).max(m + opts.macaulay_max_extra);
    let (pieces, euler_piece) = timer.run("pieces", || {
        rayon::join(
            || jacobian_pieces(&system, top, piece_opts),
            || euler_socle_piece(&system, piece_opts),
        )
    });
    let (pieces, euler_piece) = match (pieces, euler_piece) {
        (Ok(p), Ok(e)) => (p, e),
        (Err(e), _) | (_, Err(e)) => {
            failures.push(format!("graded pieces: {e}"));
            report.jacobian = Some(jr);
            report.failures.extend(failures);
            return Ok(finish(report, timer));
        }
    };
    jr.dims = pieces[..m].iter().enumerate().map(|(a, p)| dim_entry(a, p)).collect();
    let row: Vec<usize> = pieces[..m].iter().map(GradedPiece::dim).collect();
    let symmetric = (0..m).all(|a| row[a] == row[m - 1 - a]);
    if !symmetric {
        failures.push(format!("Hodge symmetry fails: {row:?}"));
    }
    jr.hodge_symmetric = Some(symmetric);
    jr.hodge_row = Some(row);

    let mdims: Vec<(i64, usize)> = (m..=m + opts.macaulay_max_extra)
        .map(|p| (p as i64, pieces[p].dim()))
        .collect();
    let mac = MacaulayCheck {
        pass: mdims.iter().all(|(_, d)| *d == 0),
        dims: mdims,
    };
    if !mac.pass {
        failures.push(format!("Macaulay vanishing fails: {:?}", mac.dims));
    }
    jr.macaulay = Some(mac);

    let socle = SocleReport {
        top_dim: pieces[m - 1].dim(),
        euler_socle_dim: euler_piece.dim(),
        top_generators: pieces[m - 1].basis().iter().map(|x| x.to_text(names)).collect(),
        euler_socle_generators: euler_piece.basis().iter().map(|x| x.to_text(names)).collect(),
        consistent: pieces[m - 1].dim() == 1 && euler_piece.dim() == 1,
    };
    if !socle.consistent {
        failures.push(format!(
            "socle certificates ({}, {}) are not (1, 1)",
            socle.top_dim, socle.euler_socle_dim
        ));
    }
    let socle_ok = socle.consistent;
    jr.socle = Some(socle);

    let mut gram_ok = false;
    if socle_ok {
        let built = timer.run("algebra", || {
            assemble(&system, pieces, euler_piece, opts.trace_strategy)
        });
        match built {
            Ok(alg) => {
                let axioms = timer.run("axioms", || {
                    frobenius_axiom_check(&alg, opts.sample_seed, opts.sample_count)
                });
                let grams: Result<Vec<GramEntry>, String> =
                    (0..m).map(|a| gram_entries(&alg, a, settings.gram_entries)).collect();
                let tau = alg.trace(&[Rational::from_integer(1.into())]);
                match (axioms, grams, tau) {
                    (Ok(axioms), Ok(gram), Ok(tau)) => {
                        for (name, r) in [
                            ("unit", &axioms.unit),
                            ("commutativity", &axioms.commutativity),
                            ("associativity", &axioms.associativity),
                            ("invariance", &axioms.invariance),
                            ("nondegeneracy", &axioms.nondegeneracy),
                        ] {
                            if !r.pass {
                                failures.push(format!("{name} axiom fails: {}", r.witness.clone().unwrap_or_default()));
                            }
                        }
                        gram_ok = axioms.nondegeneracy.pass;
                        jr.algebra = Some(AlgebraReport {
                            strategy: alg.strategy(),
                            normalized_volume: alg.volume(),
                            trace_sign: alg.trace_sign(),
                            generator_coordinate: alg.generator_coordinate().to_string(),
                            socle_trace: tau.value.to_string(),
                            unit_exponent: tau.unit_exponent,
                            gram,
                            axioms,
                        });
                    }
                    (Err(e), _, _) | (_, _, Err(e)) => {
                        failures.push(format!("algebra: {e}"));
                        jr.algebra_error = Some(e.to_string());
                    }
                    (_, Err(e), _) => {
                        failures.push(format!("algebra: {e}"));
                        jr.algebra_error = Some(e);
                    }
                }
            }
            Err(e) => {
                failures.push(format!("algebra: {e}"));
                jr.algebra_error = Some(e.to_string());
            }
        }
    } else {
        jr.algebra_error = Some(format!(
            "{}",
            crate::frobenius::FrobeniusError::SocleNotOneDimensional {
                top: jr.socle.as_ref().unwrap().top_dim,
                euler: jr.socle.as_ref().unwrap().euler_socle_dim,
            }
        ));
    }
    report.hypotheses.quasi_smoothness = if socle_ok && symmetric && gram_ok {
        "consistent".into()
    } else {
        "inconsistent".into()
    };
    report.jacobian = Some(jr);
    report.failures.extend(failures);
    Ok(finish(report, timer))
}

/// Plain-text summary for humans.
pub fn summary_table(r: &Report) -> String {
    let mut s = String::new();
    let mark = |b: bool| if b { "pass" } else { "FAIL" };
    let _ = writeln!(s, "{:<24} {}", "input", r.name.as_deref().unwrap_or("-"));
    let v = &r.validation;
    for (k, c) in [
        ("simplicial", &v.simplicial),
        ("complete criterion", &v.complete_criterion),
        ("gorenstein", &v.gorenstein),
        ("ample", &v.ample),
        ("torsion free", &v.torsion_free),
    ] {
        let _ = writeln!(s, "{k:<24} {}", mark(c.pass));
    }
    if let Some(g) = &r.grading {
        let _ = writeln!(s, "{:<24} rank {} beta {:?}", "class group", g.rank, g.beta);
    }
    if let Some(p) = &r.polytope {
        let _ = writeln!(
            s,
            "{:<24} {}",
            "normalized volume",
            p.normalized_volume.map_or("-".into(), |v| v.to_string())
        );
    }
    if let Some(b) = &r.betti {
        let _ = writeln!(s, "{:<24} {b:?}", "betti");
    }
    let _ = writeln!(s, "{:<24} {}", "extraisom", r.hypotheses.extraisom);
    if let Some(j) = &r.jacobian {
        let dims: Vec<usize> = j.dims.iter().map(|d| d.dim).collect();
        let _ = writeln!(s, "{:<24} {dims:?}", "dim R(f)_{aβ}");
        if let Some(m) = &j.macaulay {
            let _ = writeln!(s, "{:<24} {} {:?}", "macaulay", mark(m.pass), m.dims);
        }
        if let Some(so) = &j.socle {
            let _ = writeln!(s, "{:<24} ({}, {})", "socle", so.top_dim, so.euler_socle_dim);
        }
        if let Some(a) = &j.algebra {
            let _ = writeln!(
                s,
                "{:<24} {} (2πi)^{}",
                "trace of socle", a.socle_trace, a.unit_exponent
            );
            let _ = writeln!(s, "{:<24} {}", "axioms", mark(a.axioms.all_pass()));
        }
    }
    let _ = writeln!(s, "{:<24} {}", "quasi-smoothness", r.hypotheses.quasi_smoothness);
    for f in &r.failures {
        let _ = writeln!(s, "failure: {f}");
    }
    s
}
