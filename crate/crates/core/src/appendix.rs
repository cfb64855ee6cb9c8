//! Hyperbolic trigonometry and the lower bound on the diameter of a graph
//! whose complement is a union of discs.
//!
//! Everything here is a real-valued function of its parameters. No surface,
//! triangulation or geodesic is ever built.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, Thm61Variant};

/// Slack allowed when a law-of-cosines argument drifts outside `[-1, 1]`.
const COSINE_SLACK: f64 = 1e-9;

/// Absolute tolerance for transcendental comparisons.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AppendixError {
    #[error("no hyperbolic triangle with sides ({a}, {b}, {c}): cos γ = {cosine}")]
    NoSuchTriangle { a: f64, b: f64, c: f64, cosine: f64 },
    #[error("side lengths must be positive, got {0}")]
    NonPositiveSide(f64),
    #[error("angle must lie in (0, π), got {0}")]
    Angle(f64),
    #[error("arccosh argument {0} is below 1")]
    Arccosh(f64),
    #[error("perimeter must be positive, got {0}")]
    Perimeter(f64),
    #[error("length must be nonnegative, got {0}")]
    Length(f64),
    #[error("genus must be ≥ {min}, got {genus}")]
    Genus { genus: u64, min: u64 },
    #[error("inconsistent constants: {0}")]
    Constants(String),
}

/// Size constants of the trigon model of a closed hyperbolic surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigonModelConstants {
    pub max_side: f64,
    pub min_triangle_side: f64,
    pub min_area: f64,
    pub max_area: f64,
    pub min_width: f64,
    pub max_width: f64,
    pub combinatorial_slope: u32,
    pub combinatorial_offset: u32,
}

impl Default for TrigonModelConstants {
    fn default() -> Self {
        Self {
            max_side: 4f64.ln(),
            min_triangle_side: LN_2,
            min_area: 0.19,
            max_area: 1.36,
            min_width: 0.25,
            max_width: LN_2,
            combinatorial_slope: 40,
            combinatorial_offset: 2,
        }
    }
}

impl TrigonModelConstants {
    pub fn validate(&self) -> Result<(), AppendixError> {
        let finite = [
            self.max_side,
            self.min_triangle_side,
            self.min_area,
            self.max_area,
            self.min_width,
            self.max_width,
        ];
        if finite.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(AppendixError::Constants(
                "lengths and areas must be positive and finite".into(),
            ));
        }
        if !(self.min_width < self.max_width) {
            return Err(AppendixError::Constants(
                "need min_width < max_width".into(),
            ));
        }
        if !(self.min_triangle_side <= self.max_side) {
            return Err(AppendixError::Constants(
                "need min_triangle_side ≤ max_side".into(),
            ));
        }
        if !(self.min_area <= self.max_area) {
            return Err(AppendixError::Constants("need min_area ≤ max_area".into()));
        }
        if self.combinatorial_slope == 0 {
            return Err(AppendixError::Constants(
                "combinatorial_slope must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn positive(x: f64) -> Result<f64, AppendixError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(AppendixError::NonPositiveSide(x))
    }
}

/// Angle opposite `c` in the hyperbolic triangle with sides `a, b, c`:
/// `cos γ = (cosh c − cosh a cosh b) / (−sinh a sinh b)`.
pub fn angle_from_sides(a: f64, b: f64, c: f64) -> Result<f64, AppendixError> {
    let (a, b, c) = (positive(a)?, positive(b)?, positive(c)?);
    let cosine = (c.cosh() - a.cosh() * b.cosh()) / (-a.sinh() * b.sinh());
    if !(cosine.abs() <= 1.0 + COSINE_SLACK) {
        return Err(AppendixError::NoSuchTriangle { a, b, c, cosine });
    }
    Ok(cosine.clamp(-1.0, 1.0).acos())
}

/// Side opposite the angle `gamma` between sides `a` and `b`.
pub fn side_from_sides_angle(a: f64, b: f64, gamma: f64) -> Result<f64, AppendixError> {
    let (a, b) = (positive(a)?, positive(b)?);
    if !(gamma > 0.0 && gamma < PI) {
        return Err(AppendixError::Angle(gamma));
    }
    let arg = a.cosh() * b.cosh() - a.sinh() * b.sinh() * gamma.cos();
    if !(arg >= 1.0) {
        return Err(AppendixError::Arccosh(arg));
    }
    Ok(arg.acosh())
}

fn perimeter(p: f64) -> Result<f64, AppendixError> {
    if p > 0.0 && p.is_finite() {
        Ok(p)
    } else {
        Err(AppendixError::Perimeter(p))
    }
}

/// `4π sinh²(arcsinh(p/2π)/2)`, the area of a hyperbolic disc of perimeter `p`.
pub fn isoperimetric_stage1(p: f64) -> Result<f64, AppendixError> {
    let p = perimeter(p)?;
    Ok(4.0 * PI * ((p / (2.0 * PI)).asinh() / 2.0).sinh().powi(2))
}

/// `4π sinh²(log(1 + p/π)/2)`.
pub fn isoperimetric_stage2(p: f64) -> Result<f64, AppendixError> {
    let p = perimeter(p)?;
    Ok(4.0 * PI * ((p / PI).ln_1p() / 2.0).sinh().powi(2))
}

/// `p² / (p + π)`.
pub fn isoperimetric_stage3(p: f64) -> Result<f64, AppendixError> {
    let p = perimeter(p)?;
    Ok(p * p / (p + PI))
}

/// Upper bound `p²/(p + π) < p` on the area enclosed by a curve of length `p`.
pub fn isoperimetric_area_bound(p: f64) -> Result<f64, AppendixError> {
    isoperimetric_stage3(p)
}

/// `2π(g − 1)`, a lower bound on the length of a filling graph.
pub fn graph_length_lower(genus: u64) -> Result<f64, AppendixError> {
    if genus < 2 {
        return Err(AppendixError::Genus { genus, min: 2 });
    }
    Ok(2.0 * PI * (genus - 1) as f64)
}

/// Longest boundary a single piece can contribute, `3 · max_side`, next to
/// the area-per-genus length `2π`. Returned as `(piece, 2π)`.
pub fn piece_length_comparison(constants: &TrigonModelConstants) -> (f64, f64) {
    (3.0 * constants.max_side, 2.0 * PI)
}

/// `40 ℓ_S + 2`.
pub fn combinatorial_length_upper(
    constants: &TrigonModelConstants,
    ell_s: f64,
) -> Result<f64, AppendixError> {
    if !(ell_s >= 0.0) {
        return Err(AppendixError::Length(ell_s));
    }
    Ok(constants.combinatorial_slope as f64 * ell_s + constants.combinatorial_offset as f64)
}

/// `(ℓ_C − 2) / 40`, the hyperbolic length forced by a combinatorial length.
pub fn hyperbolic_length_lower(constants: &TrigonModelConstants, ell_c: f64) -> f64 {
    (ell_c - constants.combinatorial_offset as f64) / constants.combinatorial_slope as f64
}

/// Pieces within combinatorial distance `d` of a base piece when every
/// piece has at most three neighbours: `3·2^{d−1} + 1`, and `1` at `d = 0`.
pub fn ball_size_bound(d: u32) -> u128 {
    match d {
        0 => 1,
        _ => 3 * (1u128 << (d - 1)) + 1,
    }
}

/// Least `d` with `ball_size_bound(d) > g − 1`.
pub fn escape_radius(genus: u64) -> u32 {
    let target = genus.saturating_sub(1) as u128;
    (0..).find(|&d| ball_size_bound(d) > target).unwrap()
}

/// `3·2^d ≥ g − 2`, the integer form of `d ≥ log₂((g − 2)/3)`.
pub fn escape_radius_dominates_log(genus: u64) -> bool {
    let d = escape_radius(genus);
    3u128 << d >= genus.saturating_sub(2) as u128
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiameterBound {
    pub genus: u64,
    /// `(log((g − 2)/3) − 2) / 40`; negative for small genus.
    pub lower_bound: f64,
    /// The bound is only claimed for `g > 5`.
    pub valid: bool,
}

/// Lower bound on the diameter of a filling graph on a closed genus-`g`
/// surface.
pub fn diameter_lower(genus: u64) -> Result<DiameterBound, AppendixError> {
    diameter_lower_with(&TrigonModelConstants::default(), genus)
}

pub fn diameter_lower_with(
    constants: &TrigonModelConstants,
    genus: u64,
) -> Result<DiameterBound, AppendixError> {
    if genus < 3 {
        return Err(AppendixError::Genus { genus, min: 3 });
    }
    let combinatorial = ((genus as f64 - 2.0) / 3.0).ln();
    Ok(DiameterBound {
        genus,
        lower_bound: hyperbolic_length_lower(constants, combinatorial),
        valid: genus > 5,
    })
}

/// The explicit entropy lower bound rebuilt from the diameter bound:
/// `(1/3) · log(1 + t/2)` at `t = diam / (2n)`, where the factor 2 is the
/// Lipschitz constant of the covering map. Negative diameters give zero.
pub fn thm61_via_diameter(genus: u64, punctures: u32) -> Result<f64, AppendixError> {
    if genus < 6 {
        return Err(AppendixError::Genus { genus, min: 6 });
    }
    if punctures == 0 {
        return Err(AppendixError::Length(0.0));
    }
    let diam = diameter_lower(genus)?.lower_bound.max(0.0);
    let t = diam / (2.0 * punctures as f64);
    let kra = bounds::varkappa_lower(t).map_err(|_| AppendixError::Length(t))?;
    Ok(kra / 3.0)
}

/// The same quantity from the bounds module.
pub fn thm61_direct(genus: u32, punctures: u32) -> Option<f64> {
    bounds::thm61_lower(genus, punctures, Thm61Variant::Proof).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The published inequality does not hold numerically; reported, not asserted.
    InfoDiscrepancy,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::InfoDiscrepancy => "INFO-DISCREPANCY",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

/// One row of the appendix report: `lhs relation rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppendixCheck {
    pub name: String,
    pub lhs: f64,
    pub relation: String,
    pub rhs: f64,
    pub status: CheckStatus,
    pub detail: String,
}

fn check(
    name: &str,
    lhs: f64,
    relation: &str,
    rhs: f64,
    status: CheckStatus,
    detail: String,
) -> AppendixCheck {
    AppendixCheck {
        name: name.into(),
        lhs,
        relation: relation.into(),
        rhs,
        status,
        detail,
    }
}

/// Log-spaced perimeters from `1e-3` to `1e6`, eight per decade.
pub fn isoperimetric_grid() -> Vec<f64> {
    (0..=72)
        .map(|k| 10f64.powf(-3.0 + k as f64 / 8.0))
        .collect()
}

/// `stage1 ≤ stage2 ≤ stage3 < p`, with stages 2 and 3 compared relatively
/// since they agree in exact arithmetic.
pub fn isoperimetric_chain_holds(p: f64) -> Result<bool, AppendixError> {
    let s1 = isoperimetric_stage1(p)?;
    let s2 = isoperimetric_stage2(p)?;
    let s3 = isoperimetric_stage3(p)?;
    let slack = 1e-9 * s3.max(1e-300);
    Ok(s1 <= s2 + slack && s2 <= s3 + slack && s3 < p)
}

/// Runs every appendix inequality against `constants`. `max_genus` bounds the
/// ball-counting sweep.
pub fn appendix_checks(
    constants: &TrigonModelConstants,
    max_genus: u64,
) -> Result<Vec<AppendixCheck>, AppendixError> {
    constants.validate()?;
    let mut out = Vec::new();

    let min_angle = PI / 9.0;
    let gamma = angle_from_sides(
        constants.max_side,
        constants.max_side,
        constants.min_triangle_side,
    )?;
    out.push(check(
        "triangle_angle",
        gamma,
        ">",
        min_angle,
        CheckStatus::from_bool(gamma > min_angle + TOLERANCE),
        "smallest angle of a trigon-model triangle vs π/9".into(),
    ));

    let side = side_from_sides_angle(
        constants.min_triangle_side,
        constants.min_triangle_side,
        min_angle,
    )?;
    out.push(check(
        "good_segment",
        side,
        ">=",
        constants.min_width,
        CheckStatus::from_bool(side >= constants.min_width + TOLERANCE),
        "segment joining midpoints of two short sides at angle π/9".into(),
    ));

    let arc = constants.min_triangle_side / 2.0;
    out.push(check(
        "trigon_arc",
        arc,
        ">",
        constants.min_width,
        CheckStatus::from_bool(arc > constants.min_width + TOLERANCE),
        "half of a geodesic arc side vs the minimum width".into(),
    ));

    let grid = isoperimetric_grid();
    let mut failures = 0;
    for &p in &grid {
        if !isoperimetric_chain_holds(p)? {
            failures += 1;
        }
    }
    out.push(check(
        "isoperimetric_chain",
        failures as f64,
        "==",
        0.0,
        CheckStatus::from_bool(failures == 0),
        format!("{} perimeters in [1e-3, 1e6]", grid.len()),
    ));

    let p = PI;
    let area = isoperimetric_area_bound(p)?;
    out.push(check(
        "isoperimetric_at_pi",
        area,
        "==",
        PI / 2.0,
        CheckStatus::from_bool((area - PI / 2.0).abs() <= TOLERANCE),
        "p²/(p + π) at p = π".into(),
    ));

    let (piece, two_pi) = piece_length_comparison(constants);
    out.push(check(
        "piece_length",
        piece,
        "vs",
        two_pi,
        if piece > two_pi {
            CheckStatus::Pass
        } else {
            CheckStatus::InfoDiscrepancy
        },
        "3·max_side compared with 2π; the claimed direction 3·log 4 > 2π fails".into(),
    ));

    let ell = 1.0;
    let ell_c = combinatorial_length_upper(constants, ell)?;
    let back = hyperbolic_length_lower(constants, ell_c);
    out.push(check(
        "combinatorial_inverse",
        back,
        "==",
        ell,
        CheckStatus::from_bool((back - ell).abs() <= TOLERANCE),
        format!("ℓ_S = 1 gives ℓ_C ≤ {ell_c}"),
    ));

    let mut bad = Vec::new();
    let mut previous = f64::NEG_INFINITY;
    let mut monotone = true;
    for g in 6..=max_genus.max(6) {
        let d = escape_radius(g);
        let log2 = ((g as f64 - 2.0) / 3.0).log2();
        let ln = ((g as f64 - 2.0) / 3.0).ln();
        if !escape_radius_dominates_log(g) || (d as f64) < log2 - TOLERANCE || log2 < ln {
            bad.push(g);
        }
        let diam = diameter_lower(g)?.lower_bound;
        if diam <= previous {
            monotone = false;
        }
        previous = diam;
    }
    out.push(check(
        "ball_counting",
        bad.len() as f64,
        "==",
        0.0,
        CheckStatus::from_bool(bad.is_empty()),
        format!(
            "least escape radius ≥ log₂((g−2)/3) ≥ log((g−2)/3) for g in 6..={}",
            max_genus.max(6)
        ),
    ));
    out.push(check(
        "diameter_monotone",
        previous,
        ">",
        diameter_lower(6)?.lower_bound,
        CheckStatus::from_bool(monotone),
        format!(
            "diameter bound strictly increasing on 6..={}",
            max_genus.max(6)
        ),
    ));

    let mut worst: f64 = 0.0;
    for g in [6u32, 7, 27, 100, 1000, 10_000] {
        for n in [1u32, 2, 10, 100] {
            let via = thm61_via_diameter(g as u64, n)?;
            let direct = thm61_direct(g, n).unwrap_or(f64::NAN);
            worst = worst.max((via - direct).abs());
        }
    }
    out.push(check(
        "thm61_identity",
        worst,
        "<=",
        1e-12,
        CheckStatus::from_bool(worst <= 1e-12),
        "entropy bound via diameter vs closed form, max abs difference".into(),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_of_model_triangle() {
        let g = angle_from_sides(4f64.ln(), 4f64.ln(), LN_2).unwrap();
        assert!((g.cos() - 0.9288888888888889).abs() < 1e-12);
        assert!((g - 0.3793949557204621).abs() < 1e-12);
        assert!(g > PI / 9.0);
    }

    #[test]
    fn angle_symmetry_and_degenerate_limit() {
        let x = angle_from_sides(1.3, 0.7, 1.1).unwrap();
        let y = angle_from_sides(0.7, 1.3, 1.1).unwrap();
        assert!((x - y).abs() < 1e-14);
        let flat = angle_from_sides(0.8, 0.5, 1.3).unwrap();
        assert!((flat - PI).abs() < 1e-6);
        assert!(matches!(
            angle_from_sides(0.5, 0.5, 2.0),
            Err(AppendixError::NoSuchTriangle { .. })
        ));
        assert!(angle_from_sides(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn good_segment_length() {
        let c = side_from_sides_angle(LN_2, LN_2, PI / 9.0).unwrap();
        assert!((c - 0.2597414993278826).abs() < 1e-12);
        assert!(c >= 0.25);
    }

    #[test]
    fn pythagoras_and_round_trip() {
        let (a, b) = (0.9, 1.7);
        let c = side_from_sides_angle(a, b, PI / 2.0).unwrap();
        assert!((c.cosh() - a.cosh() * b.cosh()).abs() < 1e-12);
        for gamma in [0.1, 0.5, 1.0, 2.0, 3.0] {
            let c = side_from_sides_angle(a, b, gamma).unwrap();
            assert!((angle_from_sides(a, b, c).unwrap() - gamma).abs() < 1e-9);
        }
        assert!(side_from_sides_angle(a, b, 0.0).is_err());
        assert!(side_from_sides_angle(a, b, PI).is_err());
    }

    #[test]
    fn isoperimetric_values() {
        assert!((isoperimetric_area_bound(PI).unwrap() - PI / 2.0).abs() < 1e-15);
        for p in [0.1, 1.0, 10.0, 100.0] {
            let s1 = isoperimetric_stage1(p).unwrap();
            let s2 = isoperimetric_stage2(p).unwrap();
            let s3 = isoperimetric_stage3(p).unwrap();
            assert!(s1 <= s2);
            assert!((s2 - s3).abs() <= 1e-9 * s3);
            assert!(s3 < p);
        }
        assert!(isoperimetric_grid()
            .iter()
            .all(|&p| isoperimetric_chain_holds(p).unwrap()));
        assert!(isoperimetric_area_bound(0.0).is_err());
        assert!(isoperimetric_area_bound(-1.0).is_err());
    }

    #[test]
    fn graph_length() {
        assert!((graph_length_lower(2).unwrap() - 2.0 * PI).abs() < 1e-15);
        assert!((graph_length_lower(3).unwrap() - 4.0 * PI).abs() < 1e-15);
        let (piece, two_pi) = piece_length_comparison(&TrigonModelConstants::default());
        assert!((piece - 3.0 * 4f64.ln()).abs() < 1e-15);
        assert!(piece < two_pi);
    }

    #[test]
    fn combinatorial_length() {
        let c = TrigonModelConstants::default();
        assert_eq!(combinatorial_length_upper(&c, 0.0).unwrap(), 2.0);
        assert_eq!(combinatorial_length_upper(&c, 1.0).unwrap(), 42.0);
        assert_eq!(hyperbolic_length_lower(&c, 42.0), 1.0);
        assert!(combinatorial_length_upper(&c, -0.1).is_err());
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(ball_size_bound(0), 1);
        assert_eq!(ball_size_bound(1), 4);
        assert_eq!(ball_size_bound(3), 13);
        assert_eq!(escape_radius(6), 2);
        assert!((6..5000).all(escape_radius_dominates_log));
    }

    #[test]
    fn diameter_values() {
        let b = diameter_lower(27).unwrap();
        assert!((b.lower_bound - 0.003006588405002275).abs() < 1e-15);
        assert!(b.valid);
        assert!(!diameter_lower(5).unwrap().valid);
        assert!(diameter_lower(6).unwrap().lower_bound < 0.0);
    }

    #[test]
    fn thm61_route_agrees() {
        for g in [6u32, 24, 25, 26, 100, 9999] {
            for n in 1..=5 {
                let via = thm61_via_diameter(g as u64, n).unwrap();
                assert!((via - thm61_direct(g, n).unwrap()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn default_checks() {
        let checks = appendix_checks(&TrigonModelConstants::default(), 2000).unwrap();
        for c in &checks {
            let expected = if c.name == "piece_length" {
                CheckStatus::InfoDiscrepancy
            } else {
                CheckStatus::Pass
            };
            assert_eq!(c.status, expected, "{}", c.name);
        }
    }

    #[test]
    fn constants_validation() {
        let mut c = TrigonModelConstants::default();
        assert!(c.validate().is_ok());
        c.min_width = 1.0;
        assert!(c.validate().is_err());
        let json = serde_json::to_string(&TrigonModelConstants::default()).unwrap();
        let back: TrigonModelConstants = serde_json::from_str(&json).unwrap();
        assert_eq!(back, TrigonModelConstants::default());
    }
}
