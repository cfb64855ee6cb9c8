//! Closed-form bounds on the least entropy `L(PB_n(S_g))` and related
//! quantities. Every value is in nats.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::ceil_div;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("genus must be ≥ {min}, got {genus}")]
    Genus { genus: u32, min: u32 },
    #[error("number of punctures must be ≥ {min}, got {punctures}")]
    Punctures { punctures: u32, min: u32 },
    #[error("Euler characteristic must be negative, got {0}")]
    EulerCharacteristic(i64),
    #[error("distance must be nonnegative, got {0}")]
    NegativeDistance(f64),
    #[error("Ivanov input lists have different lengths")]
    IvanovShape,
    #[error("constant c_g must be ≥ 1, got {0}")]
    TsaiConstant(f64),
}

fn require_genus(genus: u32, min: u32) -> Result<(), BoundsError> {
    if genus < min {
        Err(BoundsError::Genus { genus, min })
    } else {
        Ok(())
    }
}

fn require_punctures(punctures: u32, min: u32) -> Result<(), BoundsError> {
    if punctures < min {
        Err(BoundsError::Punctures { punctures, min })
    } else {
        Ok(())
    }
}

/// Upper bound from the multicurve constructions:
/// `4 log⌈2g/n⌉ + 4 log 7` for `n ≤ 2g`, `4 log 6` beyond.
pub fn main_upper(genus: u32, punctures: u32) -> Result<f64, BoundsError> {
    require_genus(genus, 2)?;
    require_punctures(punctures, 1)?;
    if punctures <= 2 * genus {
        let k = ceil_div(2 * genus, punctures) as f64;
        Ok(4.0 * k.ln() + 4.0 * 7f64.ln())
    } else {
        Ok(4.0 * 6f64.ln())
    }
}

pub const CONSTANT_LOWER: f64 = 0.000155;

/// Coefficient in the Agol–Leininger–Margalit inequality.
pub const ALM_COEFFICIENT: f64 = 0.00031;

pub fn constant_lower() -> f64 {
    CONSTANT_LOWER
}

/// `0.00031 · (κ + 1) / |χ|`.
pub fn alm_lower(kappa: u64, chi: i64) -> Result<f64, BoundsError> {
    if chi >= 0 {
        return Err(BoundsError::EulerCharacteristic(chi));
    }
    Ok(ALM_COEFFICIENT * (kappa as f64 + 1.0) / chi.unsigned_abs() as f64)
}

/// `max{2g, n − 1}`, a lower bound on the dimension of the fixed homology.
pub fn kappa_lower(genus: u32, punctures: u32) -> u64 {
    (2 * genus as u64).max((punctures as u64).saturating_sub(1))
}

/// `χ(S_{g,n}) = 2 − 2g − n`.
pub fn euler_characteristic(genus: u32, punctures: u32) -> i64 {
    2 - 2 * genus as i64 - punctures as i64
}

/// `2(κ + 1) > |χ|` in integers, i.e. `(κ + 1)/|χ| > 1/2`.
pub fn alm_ratio_exceeds_half(genus: u32, punctures: u32) -> bool {
    let kappa = kappa_lower(genus, punctures) as i128;
    2 * (kappa + 1) > -(euler_characteristic(genus, punctures) as i128)
}

/// Sign of the `± 2` term in the explicit lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Thm61Variant {
    /// `log((g − 2)/3) + 2`, as stated.
    Statement,
    /// `log((g − 2)/3) − 2`, as derived; clamped at zero.
    Proof,
}

impl Thm61Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Thm61Variant::Statement => "statement",
            Thm61Variant::Proof => "proof",
        }
    }
}

/// `(1/3) · log(1 + (log((g − 2)/3) ± 2) / (160 n))`, valid for `g > 5`.
pub fn thm61_lower(genus: u32, punctures: u32, variant: Thm61Variant) -> Result<f64, BoundsError> {
    require_genus(genus, 6)?;
    require_punctures(punctures, 1)?;
    let log_term = ((genus as f64 - 2.0) / 3.0).ln();
    let numerator = match variant {
        Thm61Variant::Statement => log_term + 2.0,
        Thm61Variant::Proof => (log_term - 2.0).max(0.0),
    };
    Ok((numerator / (160.0 * punctures as f64)).ln_1p() / 3.0)
}

/// `log(1 + t/2)`, a lower bound for Kra's distortion function.
pub fn varkappa_lower(t: f64) -> Result<f64, BoundsError> {
    if !(t >= 0.0) {
        return Err(BoundsError::NegativeDistance(t));
    }
    Ok((t / 2.0).ln_1p())
}

/// Data for Ivanov's two-sided intersection inequality after a powered
/// multi-twist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IvanovInput {
    pub exponents: Vec<i64>,
    /// `i(ρ, c_i)`
    pub rho_curve: Vec<u64>,
    /// `i(c_i, γ)`
    pub curve_gamma: Vec<u64>,
    /// `i(ρ, γ)`
    pub rho_gamma: u64,
}

impl IvanovInput {
    pub fn new(
        exponents: Vec<i64>,
        rho_curve: Vec<u64>,
        curve_gamma: Vec<u64>,
        rho_gamma: u64,
    ) -> Result<Self, BoundsError> {
        if exponents.len() != rho_curve.len() || exponents.len() != curve_gamma.len() {
            return Err(BoundsError::IvanovShape);
        }
        Ok(Self {
            exponents,
            rho_curve,
            curve_gamma,
            rho_gamma,
        })
    }

    /// Input for `T_{β₁}^{s} T_{β₂}^{-s}` applied to `α` with `γ = α`,
    /// where each `β_i` meets `α` in `i` points.
    pub fn point_push(s: i64, intersection: u64) -> Self {
        Self {
            exponents: vec![s, -s],
            rho_curve: vec![intersection; 2],
            curve_gamma: vec![intersection; 2],
            rho_gamma: 0,
        }
    }
}

/// `(Σ(|s_i| − 2)·i(ρ,c_i)·i(c_i,γ) − i(ρ,γ), Σ|s_i|·i(ρ,c_i)·i(c_i,γ) + i(ρ,γ))`.
pub fn ivanov_bounds(input: &IvanovInput) -> (i128, i128) {
    let mut lower = -(input.rho_gamma as i128);
    let mut upper = input.rho_gamma as i128;
    for ((&s, &a), &b) in input
        .exponents
        .iter()
        .zip(&input.rho_curve)
        .zip(&input.curve_gamma)
    {
        let product = a as i128 * b as i128;
        let s = s.unsigned_abs() as i128;
        lower += (s - 2) * product;
        upper += s * product;
    }
    (lower, upper)
}

/// `24g² − 24g + 6`, the intersection bound for the point-pushing pair.
pub fn pointpush_intersection(genus: u32) -> Result<u64, BoundsError> {
    require_genus(genus, 2)?;
    let g = genus as u64;
    Ok(24 * g * g - 24 * g + 6)
}

/// `(24g² − 24g + 6)² + 2`.
pub fn pointpush_dilatation_upper(genus: u32) -> Result<f64, BoundsError> {
    let i = pointpush_intersection(genus)? as f64;
    Ok(i * i + 2.0)
}

/// `4 log g + 2 log 24`.
pub fn pointpush_upper(genus: u32) -> Result<f64, BoundsError> {
    require_genus(genus, 2)?;
    Ok(4.0 * (genus as f64).ln() + 2.0 * 24f64.ln())
}

pub fn penner_lower(genus: u32) -> Result<f64, BoundsError> {
    require_genus(genus, 2)?;
    Ok(LN_2 / (12.0 * genus as f64 - 12.0))
}

pub fn penner_upper(genus: u32) -> Result<f64, BoundsError> {
    require_genus(genus, 2)?;
    Ok(11f64.ln() / genus as f64)
}

/// `(1/5) log(2g)`, for one puncture.
pub fn dowdall_lower(genus: u32) -> Result<f64, BoundsError> {
    require_genus(genus, 2)?;
    Ok((2.0 * genus as f64).ln() / 5.0)
}

/// `((log n)/(c_g n), c_g (log n)/n)`, for `n ≥ 3` and a caller-supplied `c_g ≥ 1`.
pub fn tsai_bounds(punctures: u32, cg: f64) -> Result<(f64, f64), BoundsError> {
    require_punctures(punctures, 3)?;
    if !(cg >= 1.0 && cg.is_finite()) {
        return Err(BoundsError::TsaiConstant(cg));
    }
    let n = punctures as f64;
    Ok((n.ln() / (cg * n), cg * n.ln() / n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// The least-entropy quantity a bound speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// `L(PB_n(S_g))`; entries with this target are mutually comparable.
    PureBraid,
    /// `L(Mod(S_g))` of the closed surface.
    ClosedMod,
    /// `L(Mod(S_{g,n}))`.
    PuncturedMod,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub value: Option<f64>,
    pub valid: bool,
    pub side: Side,
    pub target: Target,
}

impl BoundEntry {
    fn from_result(result: Result<f64, BoundsError>, side: Side, target: Target) -> Self {
        let value = result.ok().filter(|v| v.is_finite());
        Self {
            value,
            valid: value.is_some(),
            side,
            target,
        }
    }

    /// Value when the hypotheses hold.
    pub fn valid_value(&self) -> Option<f64> {
        self.value.filter(|_| self.valid)
    }
}

/// Column order of [`BoundProfile`] in tabular output.
pub const BOUND_NAMES: [&str; 12] = [
    "main_upper",
    "constant_lower",
    "alm_lower",
    "thm61_proof",
    "thm61_statement",
    "dowdall_lower",
    "aougab_taylor_upper",
    "pointpush_construction",
    "penner_lower",
    "penner_upper",
    "tsai_lower",
    "tsai_upper",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundProfile {
    pub genus: u32,
    pub punctures: u32,
    pub entries: BTreeMap<String, BoundEntry>,
}

impl BoundProfile {
    /// Evaluates every bound at `(g, n)`. Entries whose hypotheses fail are
    /// kept and flagged invalid.
    pub fn evaluate(genus: u32, punctures: u32, tsai_cg: Option<f64>) -> Result<Self, BoundsError> {
        require_genus(genus, 2)?;
        require_punctures(punctures, 1)?;
        use Side::{Lower, Upper};
        use Target::{ClosedMod, PuncturedMod, PureBraid};

        let one_puncture = |r: Result<f64, BoundsError>| {
            if punctures == 1 {
                r
            } else {
                Err(BoundsError::Punctures { punctures, min: 1 })
            }
        };
        let chi = euler_characteristic(genus, punctures);
        let kappa = kappa_lower(genus, punctures);
        let tsai = tsai_cg
            .ok_or(BoundsError::TsaiConstant(f64::NAN))
            .and_then(|cg| tsai_bounds(punctures, cg));

        let mut entries = BTreeMap::new();
        let mut put = |name: &str, entry: BoundEntry| {
            entries.insert(name.to_owned(), entry);
        };
        put(
            "main_upper",
            BoundEntry::from_result(main_upper(genus, punctures), Upper, PureBraid),
        );
        put(
            "constant_lower",
            BoundEntry::from_result(Ok(constant_lower()), Lower, PureBraid),
        );
        put(
            "alm_lower",
            BoundEntry::from_result(alm_lower(kappa, chi), Lower, PureBraid),
        );
        put(
            "thm61_proof",
            BoundEntry::from_result(
                thm61_lower(genus, punctures, Thm61Variant::Proof),
                Lower,
                PureBraid,
            ),
        );
        put(
            "thm61_statement",
            BoundEntry::from_result(
                thm61_lower(genus, punctures, Thm61Variant::Statement),
                Lower,
                PureBraid,
            ),
        );
        put(
            "dowdall_lower",
            BoundEntry::from_result(one_puncture(dowdall_lower(genus)), Lower, PureBraid),
        );
        put(
            "aougab_taylor_upper",
            BoundEntry::from_result(one_puncture(pointpush_upper(genus)), Upper, PureBraid),
        );
        put(
            "pointpush_construction",
            BoundEntry::from_result(
                one_puncture(pointpush_dilatation_upper(genus).map(f64::ln)),
                Upper,
                PureBraid,
            ),
        );
        put(
            "penner_lower",
            BoundEntry::from_result(penner_lower(genus), Lower, ClosedMod),
        );
        put(
            "penner_upper",
            BoundEntry::from_result(penner_upper(genus), Upper, ClosedMod),
        );
        put(
            "tsai_lower",
            BoundEntry::from_result(tsai.clone().map(|t| t.0), Lower, PuncturedMod),
        );
        put(
            "tsai_upper",
            BoundEntry::from_result(tsai.map(|t| t.1), Upper, PuncturedMod),
        );
        Ok(Self {
            genus,
            punctures,
            entries,
        })
    }

    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.get(name)
    }

    /// Valid entries on `side` about `target`, in [`BOUND_NAMES`] order.
    pub fn valid(&self, side: Side, target: Target) -> Vec<(&str, f64)> {
        BOUND_NAMES
            .iter()
            .filter_map(|&name| {
                let e = self.entries.get(name)?;
                (e.side == side && e.target == target)
                    .then_some(())
                    .and(e.valid_value())
                    .map(|v| (name, v))
            })
            .collect()
    }

    /// Largest valid lower bound on `L(PB_n(S_g))`.
    pub fn best_lower(&self) -> Option<(&str, f64)> {
        self.valid(Side::Lower, Target::PureBraid)
            .into_iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Pairs `(lower, upper)` of comparable valid entries with `lower > upper`.
    pub fn inconsistencies(&self) -> Vec<(&str, f64, &str, f64)> {
        let mut out = Vec::new();
        for target in [Target::PureBraid, Target::ClosedMod, Target::PuncturedMod] {
            let uppers = self.valid(Side::Upper, target);
            for (lname, lvalue) in self.valid(Side::Lower, target) {
                for &(uname, uvalue) in &uppers {
                    if lvalue > uvalue {
                        out.push((lname, lvalue, uname, uvalue));
                    }
                }
            }
        }
        out
    }
}
