//! Parameter sweeps, consistency certification and report rendering.
//!
//! Float output uses 12 significant digits and is independent of locale, so
//! identical invocations produce byte-identical CSV and JSON.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::appendix::AppendixCheck;
use crate::bounds::{self, BoundProfile, Side, Target, Thm61Variant, BOUND_NAMES};
use crate::curves::{
    self, CaseTag, CertifiedDilatation, Configuration, CurveColor, CASE3_MAX_ROW_SUM,
    CASE3_REFERENCE_ROW_SUM,
};
use crate::pf::{self, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("invalid n-rule {rule:?}: {reason}")]
    NRule { rule: String, reason: String },
    #[error("invalid sweep: {0}")]
    Sweep(String),
}

/// `a·g + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub coef: i64,
    pub offset: i64,
}

impl Affine {
    pub fn eval(&self, g: u32) -> i64 {
        self.coef * g as i64 + self.offset
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coef, self.offset) {
            (0, b) => write!(f, "{b}"),
            (a, b) => {
                match a {
                    1 => write!(f, "g")?,
                    -1 => write!(f, "-g")?,
                    _ => write!(f, "{a}g")?,
                }
                match b {
                    0 => Ok(()),
                    b if b > 0 => write!(f, "+{b}"),
                    b => write!(f, "{b}"),
                }
            }
        }
    }
}

fn parse_affine(text: &str, rule: &str) -> Result<Affine, HarnessError> {
    let err = |reason: &str| HarnessError::NRule {
        rule: rule.to_owned(),
        reason: reason.to_owned(),
    };
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty bound"));
    }
    let mut out = Affine { coef: 0, offset: 0 };
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        if let Some(c) = body.strip_suffix('g') {
            let c = c.strip_suffix('*').unwrap_or(c);
            let coef = if c.is_empty() {
                1
            } else {
                c.parse::<i64>().map_err(|_| err("bad coefficient of g"))?
            };
            out.coef += sign * coef;
        } else {
            let v = body.parse::<i64>().map_err(|_| err("bad integer term"))?;
            out.offset += sign * v;
        }
    }
    Ok(out)
}

/// Inclusive per-genus puncture range such as `2..2g+16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRule {
    pub lo: Affine,
    pub hi: Affine,
}

impl NRule {
    /// The puncture range at genus `g`, or `None` when it is empty or below 1.
    pub fn range(&self, g: u32) -> Option<(u32, u32)> {
        let lo = self.lo.eval(g).max(1);
        let hi = self.hi.eval(g);
        if hi < lo || hi > u32::MAX as i64 {
            return None;
        }
        Some((lo as u32, hi as u32))
    }
}

impl FromStr for NRule {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
            None => (s, s),
        };
        Ok(NRule {
            lo: parse_affine(lo, s)?,
            hi: parse_affine(hi, s)?,
        })
    }
}

impl fmt::Display for NRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl Serialize for NRule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for NRule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub g_min: u32,
    pub g_max: u32,
    pub n_rule: NRule,
    pub tolerance: f64,
    /// Explicit-bound variants certified as lower bounds.
    pub variants: BTreeSet<Thm61Variant>,
    /// Added to every upper bound before comparison; a negative shift is a
    /// fault-injection self-test.
    pub perturb_upper: f64,
    pub tsai_cg: Option<f64>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            g_min: 2,
            g_max: 64,
            n_rule: "2..2g+16".parse().unwrap(),
            tolerance: DEFAULT_TOLERANCE,
            variants: BTreeSet::from([Thm61Variant::Proof]),
            perturb_upper: 0.0,
            tsai_cg: None,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.g_min < 2 {
            return Err(HarnessError::Sweep("genus must be ≥ 2".into()));
        }
        if self.g_min > self.g_max {
            return Err(HarnessError::Sweep(format!(
                "empty genus range {}..={}",
                self.g_min, self.g_max
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(HarnessError::Sweep("tolerance must be positive".into()));
        }
        if !self.perturb_upper.is_finite() {
            return Err(HarnessError::Sweep("perturbation must be finite".into()));
        }
        for g in self.g_min..=self.g_max {
            if self.n_rule.range(g).is_none() {
                return Err(HarnessError::Sweep(format!(
                    "n-rule {} gives no punctures at g = {g}",
                    self.n_rule
                )));
            }
        }
        Ok(())
    }

    /// Grid points in `(g, n)` order.
    pub fn points(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for g in self.g_min..=self.g_max {
            if let Some((lo, hi)) = self.n_rule.range(g) {
                out.extend((lo..=hi).map(|n| (g, n)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "type", content = "message")]
pub enum ViolationKind {
    Inequality,
    Computation(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub g: u32,
    pub n: u32,
    pub lower_name: String,
    pub upper_name: String,
    pub lower_value: f64,
    pub upper_value: f64,
    pub kind: ViolationKind,
}

impl Violation {
    fn inequality(g: u32, n: u32, lower: (&str, f64), upper: (&str, f64)) -> Self {
        Self {
            g,
            n,
            lower_name: lower.0.into(),
            upper_name: upper.0.into(),
            lower_value: lower.1,
            upper_value: upper.1,
            kind: ViolationKind::Inequality,
        }
    }

    fn computation(g: u32, n: u32, what: &str, message: String) -> Self {
        Self {
            g,
            n,
            lower_name: what.into(),
            upper_name: what.into(),
            lower_value: f64::NAN,
            upper_value: f64::NAN,
            kind: ViolationKind::Computation(message),
        }
    }
}

/// Per-point summary; `case` is `pointpush` for `n = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub g: u32,
    pub n: u32,
    pub case: String,
    pub mu_upper: Option<f64>,
    pub entropy: Option<f64>,
    pub main_upper: Option<f64>,
    pub constant_lower: f64,
    pub thm61_proof: Option<f64>,
    pub thm61_statement: Option<f64>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub grid_size: usize,
    pub violations: Vec<Violation>,
    pub points: Vec<PointSummary>,
    pub notes: Vec<String>,
    /// Wall time; left out of CSV and JSON so they stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_computation_failure(&self) -> bool {
        self.violations
            .iter()
            .any(|v| matches!(v.kind, ViolationKind::Computation(_)))
    }
}

/// Note attached to every report whose grid contains genus-one cycles.
pub fn case3_note() -> String {
    format!(
        "case3: maximum row sum of NN^T is {CASE3_MAX_ROW_SUM} for the cyclic 6/8/2 layout; \
         the commonly quoted {CASE3_REFERENCE_ROW_SUM} is not reproduced. \
         Both give entropy below 4·log 6."
    )
}

/// Entropy of the point-pushing pair: `λ` of a filling pair meeting
/// `24g² − 24g + 6` times, with `μ = i²`.
fn pointpush_entropy(g: u32) -> Result<(f64, f64), String> {
    let i = bounds::pointpush_intersection(g).map_err(|e| e.to_string())?;
    let est = pf::dilatation_of_filling_pair(i).map_err(|e| e.to_string())?;
    Ok((est.mu, est.entropy))
}

/// Builds, measures and checks one grid point.
pub fn evaluate_point(g: u32, n: u32, spec: &SweepSpec) -> (PointSummary, Vec<Violation>) {
    let mut violations = Vec::new();
    let mut summary = PointSummary {
        g,
        n,
        case: String::new(),
        mu_upper: None,
        entropy: None,
        main_upper: None,
        constant_lower: bounds::constant_lower(),
        thm61_proof: bounds::thm61_lower(g, n, Thm61Variant::Proof).ok(),
        thm61_statement: bounds::thm61_lower(g, n, Thm61Variant::Statement).ok(),
        ok: false,
    };

    let profile = match BoundProfile::evaluate(g, n, spec.tsai_cg) {
        Ok(p) => p,
        Err(e) => {
            violations.push(Violation::computation(g, n, "bounds", e.to_string()));
            return (summary, violations);
        }
    };
    summary.main_upper = profile.get("main_upper").and_then(|e| e.valid_value());

    let entropy = if n == 1 {
        summary.case = "pointpush".into();
        match pointpush_entropy(g) {
            Ok((mu, h)) => {
                summary.mu_upper = Some(mu);
                Some(h)
            }
            Err(e) => {
                violations.push(Violation::computation(g, n, "pointpush", e));
                None
            }
        }
    } else {
        match construct(g, n, spec.tolerance) {
            Ok((config, dil)) => {
                summary.case = config.case.to_string();
                summary.mu_upper = Some(dil.bracket.upper);
                if config.case == CaseTag::Case3 {
                    let max = config.matrix.gram().max_row_sum();
                    if max != CASE3_MAX_ROW_SUM {
                        violations.push(Violation::inequality(
                            g,
                            n,
                            ("max_row_sum", max as f64),
                            ("case3_row_sum", CASE3_MAX_ROW_SUM as f64),
                        ));
                    }
                }
                Some(dil.estimate.entropy)
            }
            Err(e) => {
                summary.case = CaseTag::for_parameters(g, n)
                    .map(|c| c.to_string())
                    .unwrap_or_default();
                violations.push(Violation::computation(g, n, "construction", e));
                None
            }
        }
    };
    summary.entropy = entropy;

    let excluded = |name: &str| match name {
        "thm61_proof" => !spec.variants.contains(&Thm61Variant::Proof),
        "thm61_statement" => !spec.variants.contains(&Thm61Variant::Statement),
        _ => false,
    };
    for target in [Target::PureBraid, Target::ClosedMod, Target::PuncturedMod] {
        let lowers: Vec<_> = profile
            .valid(Side::Lower, target)
            .into_iter()
            .filter(|(name, _)| !excluded(name))
            .collect();
        let uppers: Vec<_> = profile
            .valid(Side::Upper, target)
            .into_iter()
            .map(|(name, v)| (name, v + spec.perturb_upper))
            .collect();
        for &(lname, lv) in &lowers {
            for &(uname, uv) in &uppers {
                if !(lv <= uv) {
                    violations.push(Violation::inequality(g, n, (lname, lv), (uname, uv)));
                }
            }
        }
        if let (Target::PureBraid, Some(h)) = (target, entropy) {
            for &(uname, uv) in &uppers {
                if !(h <= uv) {
                    violations.push(Violation::inequality(g, n, ("entropy", h), (uname, uv)));
                }
            }
            for &(lname, lv) in &lowers {
                if !(lv <= h) {
                    violations.push(Violation::inequality(g, n, (lname, lv), ("entropy", h)));
                }
            }
        }
    }
    summary.ok = violations.is_empty();
    (summary, violations)
}

/// Configuration and certified dilatation at `(g, n)`, `n ≥ 2`.
pub fn construct(
    g: u32,
    n: u32,
    tolerance: f64,
) -> Result<(Configuration, CertifiedDilatation), String> {
    let config = curves::build_configuration(g, n).map_err(|e| e.to_string())?;
    config.check_invariants()?;
    let dil = curves::configuration_dilatation(&config, tolerance).map_err(|e| e.to_string())?;
    Ok((config, dil))
}

pub fn run_sweep(spec: &SweepSpec) -> Result<ConsistencyReport, HarnessError> {
    spec.validate()?;
    let start = Instant::now();
    let grid = spec.points();
    let mut points = Vec::with_capacity(grid.len());
    let mut violations = Vec::new();
    for &(g, n) in &grid {
        let (summary, v) = evaluate_point(g, n, spec);
        points.push(summary);
        violations.extend(v);
    }
    let mut notes = Vec::new();
    if points.iter().any(|p| p.case == CaseTag::Case3.as_str()) {
        notes.push(case3_note());
    }
    if spec.perturb_upper != 0.0 {
        notes.push(format!(
            "upper bounds shifted by {} for fault injection",
            fmt_float(spec.perturb_upper)
        ));
    }
    Ok(ConsistencyReport {
        grid_size: grid.len(),
        violations,
        points,
        notes,
        elapsed: start.elapsed(),
    })
}

/// Formats with 12 significant digits, shortest representation.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    let r = round12(x);
    if r != 0.0 && !(1e-4..1e16).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

/// Rounds every non-integer number in a JSON tree to 12 significant digits.
pub fn round_json(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *value = serde_json::Number::from_f64(round12(x))
                    .map(Value::Number)
                    .unwrap_or(Value::Null);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Pretty JSON with rounded floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    round_json(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// `name` followed by `name_valid` for every bound.
pub fn bounds_csv_header() -> String {
    let mut cols = vec!["g".to_owned(), "n".to_owned()];
    for name in BOUND_NAMES {
        cols.push(name.to_owned());
        cols.push(format!("{name}_valid"));
    }
    cols.join(",")
}

pub fn bounds_csv_row(profile: &BoundProfile) -> String {
    let mut cols = vec![profile.genus.to_string(), profile.punctures.to_string()];
    for name in BOUND_NAMES {
        let entry = profile.get(name);
        cols.push(fmt_opt(entry.and_then(|e| e.value)));
        cols.push(entry.is_some_and(|e| e.valid).to_string());
    }
    cols.join(",")
}

pub fn render_bounds(profile: &BoundProfile, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => format!("{}\n{}\n", bounds_csv_header(), bounds_csv_row(profile)),
        OutputFormat::Json => to_json(profile),
        OutputFormat::Table => {
            let mut s = format!(
                "bounds at g = {}, n = {}\n",
                profile.genus, profile.punctures
            );
            let _ = writeln!(
                s,
                "{:<24} {:<6} {:<14} {:>20} valid",
                "name", "side", "target", "value"
            );
            for name in BOUND_NAMES {
                let Some(e) = profile.get(name) else { continue };
                let side = match e.side {
                    Side::Lower => "lower",
                    Side::Upper => "upper",
                };
                let target = match e.target {
                    Target::PureBraid => "pure-braid",
                    Target::ClosedMod => "closed-mod",
                    Target::PuncturedMod => "punctured-mod",
                };
                let value = e.value.map(fmt_float).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    s,
                    "{name:<24} {side:<6} {target:<14} {value:>20} {}",
                    e.valid
                );
            }
            s
        }
    }
}

pub const VERIFY_CSV_HEADER: &str =
    "g,n,case,mu_upper,entropy,main_upper,constant_lower,thm61_proof,thm61_statement,ok";

pub fn render_report(report: &ConsistencyReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut s = String::from(VERIFY_CSV_HEADER);
            s.push('\n');
            for p in &report.points {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{}",
                    p.g,
                    p.n,
                    p.case,
                    fmt_opt(p.mu_upper),
                    fmt_opt(p.entropy),
                    fmt_opt(p.main_upper),
                    fmt_float(p.constant_lower),
                    fmt_opt(p.thm61_proof),
                    fmt_opt(p.thm61_statement),
                    p.ok
                );
            }
            s
        }
        OutputFormat::Json => to_json(report),
        OutputFormat::Table => {
            let mut s = String::new();
            let status = if report.passed() {
                "CERTIFIED"
            } else {
                "VIOLATIONS"
            };
            let _ = writeln!(
                s,
                "{status}: {} grid points, {} violations, {:.3} s",
                report.grid_size,
                report.violations.len(),
                report.elapsed.as_secs_f64()
            );
            if report.points.len() <= 40 {
                let _ = writeln!(
                    s,
                    "{:>5} {:>5} {:<10} {:>16} {:>16} {:>16}",
                    "g", "n", "case", "mu_upper", "entropy", "main_upper"
                );
                for p in &report.points {
                    let _ = writeln!(
                        s,
                        "{:>5} {:>5} {:<10} {:>16} {:>16} {:>16}",
                        p.g,
                        p.n,
                        p.case,
                        fmt_opt(p.mu_upper),
                        fmt_opt(p.entropy),
                        fmt_opt(p.main_upper)
                    );
                }
            }
            for v in report.violations.iter().take(50) {
                match &v.kind {
                    ViolationKind::Inequality => {
                        let _ = writeln!(
                            s,
                            "violation at (g, n) = ({}, {}): {} = {} > {} = {}",
                            v.g,
                            v.n,
                            v.lower_name,
                            fmt_float(v.lower_value),
                            v.upper_name,
                            fmt_float(v.upper_value)
                        );
                    }
                    ViolationKind::Computation(msg) => {
                        let _ = writeln!(
                            s,
                            "failure at (g, n) = ({}, {}) in {}: {msg}",
                            v.g, v.n, v.lower_name
                        );
                    }
                }
            }
            if report.violations.len() > 50 {
                let _ = writeln!(s, "... {} more", report.violations.len() - 50);
            }
            for note in &report.notes {
                let _ = writeln!(s, "note: {note}");
            }
            s
        }
    }
}

/// JSON shape of a configuration: `{genus, punctures, case, subsurface_genera, edges}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationJson {
    pub genus: u32,
    pub punctures: u32,
    pub case: CaseTag,
    pub subsurface_genera: Vec<u32>,
    pub edges: Vec<[u64; 3]>,
}

impl From<&Configuration> for ConfigurationJson {
    fn from(c: &Configuration) -> Self {
        Self {
            genus: c.genus,
            punctures: c.punctures,
            case: c.case,
            subsurface_genera: c.subsurface_genera.clone(),
            edges: c
                .graph
                .edges()
                .iter()
                .map(|e| [e.red as u64, e.blue as u64, e.label])
                .collect(),
        }
    }
}

/// Graphviz rendering: red and blue vertices, edge labels as weights.
pub fn to_dot(config: &Configuration) -> String {
    let g = &config.graph;
    let mut s = String::new();
    let _ = writeln!(s, "graph configuration {{");
    let _ = writeln!(
        s,
        "  label=\"g={} n={} {}\";",
        config.genus, config.punctures, config.case
    );
    let _ = writeln!(s, "  node [shape=circle, style=filled, fontcolor=white];");
    for v in g.red().iter().chain(g.blue()) {
        let color = match v.color() {
            CurveColor::Red => "red",
            CurveColor::Blue => "blue",
        };
        let _ = writeln!(s, "  {} [fillcolor={color}];", v.name());
    }
    for e in g.edges() {
        let _ = writeln!(
            s,
            "  {} -- {} [label={}, weight={}];",
            g.red()[e.red].name(),
            g.blue()[e.blue].name(),
            e.label,
            e.label
        );
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
struct ConstructJson<'a> {
    configuration: ConfigurationJson,
    matrix: Vec<Vec<u64>>,
    mu_lower: f64,
    mu_upper: f64,
    iterations: usize,
    trace: f64,
    lambda: f64,
    entropy: f64,
    main_upper: Option<f64>,
    chain: Option<&'a curves::ChainShape>,
}

pub fn render_construct(
    config: &Configuration,
    dil: &CertifiedDilatation,
    format: OutputFormat,
) -> String {
    let main_upper = bounds::main_upper(config.genus, config.punctures).ok();
    match format {
        OutputFormat::Json => to_json(&ConstructJson {
            configuration: config.into(),
            matrix: config.matrix.to_rows(),
            mu_lower: dil.bracket.lower,
            mu_upper: dil.bracket.upper,
            iterations: dil.bracket.iterations,
            trace: dil.estimate.trace,
            lambda: dil.estimate.lambda,
            entropy: dil.estimate.entropy,
            main_upper,
            chain: config.chain.as_ref(),
        }),
        OutputFormat::Csv => {
            let mut s = String::from("g,n,case,mu_lower,mu_upper,lambda,entropy,main_upper\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                config.genus,
                config.punctures,
                config.case,
                fmt_float(dil.bracket.lower),
                fmt_float(dil.bracket.upper),
                fmt_float(dil.estimate.lambda),
                fmt_float(dil.estimate.entropy),
                fmt_opt(main_upper)
            );
            s
        }
        OutputFormat::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "case: {}", config.case);
            if let Some(chain) = config.chain {
                let _ = writeln!(s, "chain: {chain:?}");
            }
            let _ = writeln!(s, "subsurface genera: {:?}", config.subsurface_genera);
            let _ = writeln!(
                s,
                "punctures: subsurfaces {:?}, bounded disc {}, central {}",
                config.layout.subsurface, config.layout.bounded_disc, config.layout.central
            );
            let red: Vec<String> = config.graph.red().iter().map(|v| v.name()).collect();
            let blue: Vec<String> = config.graph.blue().iter().map(|v| v.name()).collect();
            let _ = writeln!(s, "N (rows {}; columns {}):", red.join(" "), blue.join(" "));
            for row in config.matrix.to_rows() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>6}")).collect();
                let _ = writeln!(s, "  {}", cells.join(""));
            }
            let _ = writeln!(
                s,
                "mu in [{}, {}] after {} iterations",
                fmt_float(dil.bracket.lower),
                fmt_float(dil.bracket.upper),
                dil.bracket.iterations
            );
            let _ = writeln!(s, "lambda: {}", fmt_float(dil.estimate.lambda));
            let _ = writeln!(s, "entropy: {}", fmt_float(dil.estimate.entropy));
            if let Some(u) = main_upper {
                let _ = writeln!(s, "main_upper: {}", fmt_float(u));
            }
            s
        }
    }
}

pub fn render_appendix(checks: &[AppendixCheck], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(&checks),
        OutputFormat::Csv => {
            let mut s = String::from("name,lhs,relation,rhs,status\n");
            for c in checks {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    c.name,
                    fmt_float(c.lhs),
                    c.relation,
                    fmt_float(c.rhs),
                    c.status.as_str()
                );
            }
            s
        }
        OutputFormat::Table => {
            let mut s = String::new();
            for c in checks {
                let _ = writeln!(
                    s,
                    "{:<22} {:>16} {:<2} {:<16} {:<16} {}",
                    c.name,
                    fmt_float(c.lhs),
                    c.relation,
                    fmt_float(c.rhs),
                    c.status.as_str(),
                    c.detail
                );
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_rule_parsing() {
        let r: NRule = "2..2g+16".parse().unwrap();
        assert_eq!(r.range(2), Some((2, 20)));
        assert_eq!(r.to_string(), "2..2g+16");
        let r: NRule = "g - 1 ..= 3*g".parse().unwrap();
        assert_eq!(r.range(4), Some((3, 12)));
        let r: NRule = "5".parse().unwrap();
        assert_eq!(r.range(9), Some((5, 5)));
        assert_eq!("2g..g".parse::<NRule>().unwrap().range(3), None);
        assert!("2..x".parse::<NRule>().is_err());
        assert!("..".parse::<NRule>().is_err());
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_float(5.111951496643704), "5.11195149664");
        assert_eq!(fmt_float(164.0), "164");
        assert_eq!(fmt_float(0.000155), "0.000155");
        assert_eq!(fmt_float(f64::NAN), "nan");
        assert_eq!(fmt_float(2.168404344971009e-19), "2.16840434497e-19");
        assert_eq!(fmt_float(-3.0e20), "-3e20");
    }

    #[test]
    fn single_point() {
        let spec = SweepSpec {
            g_min: 2,
            g_max: 2,
            n_rule: "2".parse().unwrap(),
            ..SweepSpec::default()
        };
        let report = run_sweep(&spec).unwrap();
        assert!(report.passed());
        let p = &report.points[0];
        assert_eq!(p.case, "case1");
        assert!((p.entropy.unwrap() - 5.111951496643704).abs() < 1e-9);
    }

    #[test]
    fn fault_injection_detected() {
        let spec = SweepSpec {
            g_max: 4,
            perturb_upper: -10.0,
            ..SweepSpec::default()
        };
        let report = run_sweep(&spec).unwrap();
        assert!(!report.passed());
        assert!(!report.has_computation_failure());
    }

    #[test]
    fn one_puncture_path() {
        let (p, v) = evaluate_point(2, 1, &SweepSpec::default());
        assert!(v.is_empty(), "{v:?}");
        assert_eq!(p.case, "pointpush");
        assert!(p.entropy.unwrap() < 2918f64.ln());
    }

    #[test]
    fn csv_is_stable() {
        let spec = SweepSpec {
            g_max: 3,
            ..SweepSpec::default()
        };
        let a = render_report(&run_sweep(&spec).unwrap(), OutputFormat::Csv);
        let b = render_report(&run_sweep(&spec).unwrap(), OutputFormat::Csv);
        assert_eq!(a, b);
        assert!(a.starts_with(VERIFY_CSV_HEADER));
        let j1 = render_report(&run_sweep(&spec).unwrap(), OutputFormat::Json);
        let j2 = render_report(&run_sweep(&spec).unwrap(), OutputFormat::Json);
        assert_eq!(j1, j2);
    }

    #[test]
    fn dot_export() {
        let c = curves::build_configuration(2, 4).unwrap();
        let dot = to_dot(&c);
        assert!(dot.contains("c_1 -- beta_1 [label=8, weight=8]"));
        assert!(dot.contains("c_1 -- beta_2 [label=2, weight=2]"));
        assert!(dot.contains("alpha_1 -- beta_1 [label=6, weight=6]"));
        assert!(dot.contains("beta_1 [fillcolor=blue]"));
    }

    #[test]
    fn spec_validation() {
        let bad = SweepSpec {
            g_min: 1,
            ..SweepSpec::default()
        };
        assert!(bad.validate().is_err());
        let bad = SweepSpec {
            tolerance: 0.0,
            ..SweepSpec::default()
        };
        assert!(bad.validate().is_err());
    }
}
