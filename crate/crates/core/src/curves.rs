//! Filling multicurve configurations as labeled bipartite graphs.
//!
//! Curves are never realized geometrically. A configuration is the labeled
//! intersection graph between the red multicurve `A` and the blue multicurve
//! `B`, together with the bookkeeping needed to check genus and puncture
//! counts. Edge labels are the worst-case intersection numbers of the
//! building blocks, so every entropy computed from them is an upper bound.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pf::{self, DilatationEstimate, IntersectionMatrix, PfBracket, PfError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("subsurface genus must be at least 1")]
    ZeroGenus,
    #[error("unsupported parameters (g, n) = ({genus}, {punctures}): {reason}")]
    Unsupported {
        genus: u32,
        punctures: u32,
        reason: String,
    },
    #[error("cannot split genus {genus} into {parts} subsurfaces of genus at most {cap}")]
    InfeasiblePartition { genus: u32, parts: u32, cap: u32 },
    #[error("invalid curve graph: {0}")]
    Graph(String),
    #[error(transparent)]
    Pf(#[from] PfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveColor {
    Red,
    Blue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    /// `α` of an Aougab–Taylor pair.
    AtAlpha,
    /// `τ` of an Aougab–Taylor pair, drawn in blue.
    AtBeta,
    /// Curve bounding a disc with two or three punctures.
    PunctureBounding,
}

impl CurveKind {
    pub fn color(self) -> CurveColor {
        match self {
            CurveKind::AtAlpha | CurveKind::PunctureBounding => CurveColor::Red,
            CurveKind::AtBeta => CurveColor::Blue,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveVertex {
    pub kind: CurveKind,
    pub subsurface: usize,
}

impl CurveVertex {
    pub fn new(kind: CurveKind, subsurface: usize) -> Self {
        Self { kind, subsurface }
    }

    pub fn color(&self) -> CurveColor {
        self.kind.color()
    }

    /// Display name, 1-based: `alpha_1`, `beta_2`, `c_3`.
    pub fn name(&self) -> String {
        let prefix = match self.kind {
            CurveKind::AtAlpha => "alpha",
            CurveKind::AtBeta => "beta",
            CurveKind::PunctureBounding => "c",
        };
        format!("{prefix}_{}", self.subsurface + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledEdge {
    pub red: usize,
    pub blue: usize,
    pub label: u64,
}

/// Red vertices are components of `A`, blue vertices components of `B`;
/// an edge carries the intersection number of its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteCurveGraph {
    red: Vec<CurveVertex>,
    blue: Vec<CurveVertex>,
    edges: Vec<LabeledEdge>,
}

impl BipartiteCurveGraph {
    pub fn new(
        red: Vec<CurveVertex>,
        blue: Vec<CurveVertex>,
        mut edges: Vec<LabeledEdge>,
    ) -> Result<Self, CurveError> {
        if let Some(v) = red.iter().find(|v| v.color() != CurveColor::Red) {
            return Err(CurveError::Graph(format!("{} listed as red", v.name())));
        }
        if let Some(v) = blue.iter().find(|v| v.color() != CurveColor::Blue) {
            return Err(CurveError::Graph(format!("{} listed as blue", v.name())));
        }
        for e in &edges {
            if e.red >= red.len() || e.blue >= blue.len() {
                return Err(CurveError::Graph(format!(
                    "edge ({}, {}) out of range",
                    e.red, e.blue
                )));
            }
            if e.label == 0 {
                return Err(CurveError::Graph(format!(
                    "edge ({}, {}) has label 0",
                    e.red, e.blue
                )));
            }
        }
        edges.sort_by_key(|e| (e.red, e.blue));
        if edges
            .windows(2)
            .any(|w| (w[0].red, w[0].blue) == (w[1].red, w[1].blue))
        {
            return Err(CurveError::Graph("duplicate edge".into()));
        }
        let graph = Self { red, blue, edges };
        if !graph.is_connected() {
            return Err(CurveError::Graph("graph is disconnected".into()));
        }
        Ok(graph)
    }

    pub fn red(&self) -> &[CurveVertex] {
        &self.red
    }

    pub fn blue(&self) -> &[CurveVertex] {
        &self.blue
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn red_valence(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.red == i).count()
    }

    pub fn blue_valence(&self, j: usize) -> usize {
        self.edges.iter().filter(|e| e.blue == j).count()
    }

    pub fn is_connected(&self) -> bool {
        let total = self.red.len() + self.blue.len();
        if total == 0 {
            return false;
        }
        // red i -> i, blue j -> red.len() + j
        let offset = self.red.len();
        let mut seen = vec![false; total];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let (a, b) = (e.red, offset + e.blue);
                let next = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Adjacency-label matrix `N`, red rows by blue columns.
    pub fn intersection_matrix(&self) -> Result<IntersectionMatrix, PfError> {
        let cols = self.blue.len();
        let mut entries = vec![0u64; self.red.len() * cols];
        for e in &self.edges {
            entries[e.red * cols + e.blue] = e.label;
        }
        IntersectionMatrix::new(self.red.len(), cols, entries)
    }

    /// Total weight of length-two paths between red vertices, walked edge by
    /// edge through each blue vertex. Agrees with `N Nᵀ`.
    pub fn path_weight_matrix(&self) -> Vec<Vec<u128>> {
        let dim = self.red.len();
        let mut out = vec![vec![0u128; dim]; dim];
        for b in 0..self.blue.len() {
            let incident: Vec<&LabeledEdge> = self.edges.iter().filter(|e| e.blue == b).collect();
            for first in &incident {
                for second in &incident {
                    out[first.red][second.red] += first.label as u128 * second.label as u128;
                }
            }
        }
        out
    }
}

/// Which construction produced a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    /// `n ∈ {2, 3}`: two subsurfaces joined by one puncture-bounding curve.
    Case1,
    /// `4 ≤ n < 2g`.
    Case2,
    /// `n ≥ 2g`: genus-one subsurfaces.
    Case3,
}

impl CaseTag {
    pub fn for_parameters(genus: u32, punctures: u32) -> Option<Self> {
        match punctures {
            _ if genus < 2 => None,
            0 | 1 => None,
            2 | 3 => Some(CaseTag::Case1),
            n if n < 2 * genus => Some(CaseTag::Case2),
            _ => Some(CaseTag::Case3),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Case3 => "case3",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the puncture-bounding curves link consecutive subsurfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainShape {
    /// `c_i` meets `β_i` and `β_{i+1 mod m}`; `m` curves `c_i`.
    Cyclic,
    /// `c_i` meets `β_i` and `β_{i+1}` for `i < m`; `m − 1` curves `c_i`.
    /// The last subsurface keeps only its own puncture.
    Open,
}

/// Where the `n` punctures sit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PunctureLayout {
    /// Punctures inside (or at the boundary of) each subsurface.
    pub subsurface: Vec<u32>,
    /// Extra punctures inside a disc already bounded by a red curve.
    pub bounded_disc: u32,
    /// Surplus punctures in the central planar region.
    pub central: u32,
}

impl PunctureLayout {
    pub fn total(&self) -> u32 {
        self.subsurface.iter().sum::<u32>() + self.bounded_disc + self.central
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub genus: u32,
    pub punctures: u32,
    pub case: CaseTag,
    pub chain: Option<ChainShape>,
    pub subsurface_genera: Vec<u32>,
    pub layout: PunctureLayout,
    pub graph: BipartiteCurveGraph,
    pub matrix: IntersectionMatrix,
}

/// Upper bound on `i(α, τ)` for an Aougab–Taylor pair on a genus-`h`
/// surface with one boundary component.
pub fn at_pair_intersection(h: u32) -> Result<u64, CurveError> {
    let h = h as u64;
    match h {
        0 => Err(CurveError::ZeroGenus),
        1 => Ok(6),
        2 => Ok(24),
        _ => Ok(24 * h * h - 24 * h + 6),
    }
}

/// Label of a puncture-bounding curve against the blue curve of the
/// subsurface it reaches into.
pub fn bounding_label(h: u32) -> Result<u64, CurveError> {
    Ok(at_pair_intersection(h)? + 2)
}

pub fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

fn unsupported(genus: u32, punctures: u32, reason: impl Into<String>) -> CurveError {
    CurveError::Unsupported {
        genus,
        punctures,
        reason: reason.into(),
    }
}

/// Splits `genus` into `parts` blocks of sizes `⌈g/m⌉` then `⌊g/m⌋`.
pub fn balanced_partition(genus: u32, parts: u32) -> Vec<u32> {
    let (q, r) = (genus / parts, genus % parts);
    (0..parts).map(|i| if i < r { q + 1 } else { q }).collect()
}

fn assemble(
    genus: u32,
    punctures: u32,
    case: CaseTag,
    chain: Option<ChainShape>,
    subsurface_genera: Vec<u32>,
    layout: PunctureLayout,
    red: Vec<CurveVertex>,
    blue: Vec<CurveVertex>,
    edges: Vec<LabeledEdge>,
) -> Result<Configuration, CurveError> {
    let graph = BipartiteCurveGraph::new(red, blue, edges)?;
    let matrix = graph.intersection_matrix()?;
    let config = Configuration {
        genus,
        punctures,
        case,
        chain,
        subsurface_genera,
        layout,
        graph,
        matrix,
    };
    debug_assert!(config.check_invariants().is_ok());
    Ok(config)
}

/// Aougab–Taylor pairs on each subsurface, linked by puncture-bounding
/// curves in a cycle or an open chain.
fn chained(
    genus: u32,
    punctures: u32,
    case: CaseTag,
    chain: ChainShape,
    genera: Vec<u32>,
    layout: PunctureLayout,
) -> Result<Configuration, CurveError> {
    let m = genera.len();
    let links = match chain {
        ChainShape::Cyclic => m,
        ChainShape::Open => m - 1,
    };
    let mut red: Vec<CurveVertex> = (0..m)
        .map(|i| CurveVertex::new(CurveKind::AtAlpha, i))
        .collect();
    red.extend((0..links).map(|i| CurveVertex::new(CurveKind::PunctureBounding, i)));
    let blue = (0..m)
        .map(|i| CurveVertex::new(CurveKind::AtBeta, i))
        .collect();
    let mut edges = Vec::with_capacity(m + 2 * links);
    for (i, &h) in genera.iter().enumerate() {
        edges.push(LabeledEdge {
            red: i,
            blue: i,
            label: at_pair_intersection(h)?,
        });
    }
    for i in 0..links {
        edges.push(LabeledEdge {
            red: m + i,
            blue: i,
            label: bounding_label(genera[i])?,
        });
        edges.push(LabeledEdge {
            red: m + i,
            blue: (i + 1) % m,
            label: 2,
        });
    }
    assemble(
        genus,
        punctures,
        case,
        Some(chain),
        genera,
        layout,
        red,
        blue,
        edges,
    )
}

/// `n ∈ {2, 3}`: subsurfaces of genus `⌈g/2⌉` and `⌊g/2⌋`, each once
/// punctured and filled by an Aougab–Taylor pair, plus one red curve around
/// the punctured disc meeting both blue curves.
pub fn build_case1(genus: u32, punctures: u32) -> Result<Configuration, CurveError> {
    if genus < 2 {
        return Err(unsupported(genus, punctures, "genus must be ≥ 2"));
    }
    if !(2..=3).contains(&punctures) {
        return Err(unsupported(genus, punctures, "case 1 needs n ∈ {2, 3}"));
    }
    let genera = vec![ceil_div(genus, 2), genus / 2];
    let red = vec![
        CurveVertex::new(CurveKind::AtAlpha, 0),
        CurveVertex::new(CurveKind::AtAlpha, 1),
        CurveVertex::new(CurveKind::PunctureBounding, 0),
    ];
    let blue = vec![
        CurveVertex::new(CurveKind::AtBeta, 0),
        CurveVertex::new(CurveKind::AtBeta, 1),
    ];
    let mut edges = Vec::new();
    for (i, &h) in genera.iter().enumerate() {
        edges.push(LabeledEdge {
            red: i,
            blue: i,
            label: at_pair_intersection(h)?,
        });
        edges.push(LabeledEdge {
            red: 2,
            blue: i,
            label: bounding_label(h)?,
        });
    }
    let layout = PunctureLayout {
        subsurface: vec![1, 1],
        bounded_disc: punctures - 2,
        central: 0,
    };
    assemble(
        genus,
        punctures,
        CaseTag::Case1,
        None,
        genera,
        layout,
        red,
        blue,
        edges,
    )
}

/// `4 ≤ n < 2g`: `⌊n/2⌋` subsurfaces in a cycle, two punctures each and
/// the odd one in a bounded disc. When those subsurfaces cannot all have
/// genus at most `⌈2g/n⌉` (odd `n` only), `⌈n/2⌉` subsurfaces are linked in
/// an open chain instead and the last one keeps a single puncture.
pub fn build_case2(genus: u32, punctures: u32) -> Result<Configuration, CurveError> {
    let n = punctures;
    if !(4 <= n && n < 2 * genus) {
        return Err(unsupported(genus, n, "case 2 needs 4 ≤ n < 2g"));
    }
    let cap = ceil_div(2 * genus, n);
    let m = n / 2;
    let genera = balanced_partition(genus, m);
    if genera[0] <= cap {
        let layout = PunctureLayout {
            subsurface: vec![2; m as usize],
            bounded_disc: n % 2,
            central: 0,
        };
        return chained(genus, n, CaseTag::Case2, ChainShape::Cyclic, genera, layout);
    }
    let m = n.div_ceil(2);
    let genera = balanced_partition(genus, m);
    if genera[0] > cap {
        return Err(CurveError::InfeasiblePartition {
            genus,
            parts: m,
            cap,
        });
    }
    let mut subsurface = vec![2; m as usize];
    subsurface[m as usize - 1] = 1;
    let layout = PunctureLayout {
        subsurface,
        bounded_disc: 0,
        central: 0,
    };
    chained(genus, n, CaseTag::Case2, ChainShape::Open, genera, layout)
}

/// `n ≥ 2g`: `g` punctured tori in a cycle; the surplus `n − 2g` punctures
/// sit in the central region and add no intersections.
pub fn build_case3(genus: u32, punctures: u32) -> Result<Configuration, CurveError> {
    if genus < 2 {
        return Err(unsupported(genus, punctures, "genus must be ≥ 2"));
    }
    if punctures < 2 * genus {
        return Err(unsupported(genus, punctures, "case 3 needs n ≥ 2g"));
    }
    let layout = PunctureLayout {
        subsurface: vec![2; genus as usize],
        bounded_disc: 0,
        central: punctures - 2 * genus,
    };
    chained(
        genus,
        punctures,
        CaseTag::Case3,
        ChainShape::Cyclic,
        vec![1; genus as usize],
        layout,
    )
}

/// Dispatches to the case builder matching `(g, n)`.
pub fn build_configuration(genus: u32, punctures: u32) -> Result<Configuration, CurveError> {
    if genus < 2 {
        return Err(unsupported(genus, punctures, "genus must be ≥ 2"));
    }
    match CaseTag::for_parameters(genus, punctures) {
        Some(CaseTag::Case1) => build_case1(genus, punctures),
        Some(CaseTag::Case2) => build_case2(genus, punctures),
        Some(CaseTag::Case3) => build_case3(genus, punctures),
        None if punctures == 1 => Err(unsupported(
            genus,
            punctures,
            "n = 1 is the point-pushing subgroup; use the point-pushing bounds",
        )),
        None => Err(unsupported(genus, punctures, "need n ≥ 2")),
    }
}

/// Certified upper bound on the dilatation of `T_A T_B⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedDilatation {
    pub bracket: PfBracket,
    /// Evaluated at `μ = bracket.upper`.
    pub estimate: DilatationEstimate,
}

pub fn configuration_dilatation(
    config: &Configuration,
    tolerance: f64,
) -> Result<CertifiedDilatation, CurveError> {
    let bracket = pf::pf_eigenvalue(&config.matrix.gram(), tolerance)?;
    let estimate = pf::dilatation_from_mu(bracket.upper)?;
    Ok(CertifiedDilatation { bracket, estimate })
}

impl Configuration {
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.subsurface_genera.iter().sum::<u32>() != self.genus {
            return Err("subsurface genera do not sum to the genus".into());
        }
        if self.subsurface_genera.contains(&0) {
            return Err("zero-genus subsurface".into());
        }
        if self.layout.total() != self.punctures {
            return Err(format!(
                "puncture layout totals {} but n = {}",
                self.layout.total(),
                self.punctures
            ));
        }
        if CaseTag::for_parameters(self.genus, self.punctures) != Some(self.case) {
            return Err(format!("{} does not match (g, n)", self.case));
        }
        if !self.graph.is_connected() {
            return Err("graph is disconnected".into());
        }
        match self.graph.intersection_matrix() {
            Ok(m) if m == self.matrix => Ok(()),
            _ => Err("matrix is not the adjacency-label matrix of the graph".into()),
        }
    }

    /// `β_i` column sums implied by the chain shape, ignoring the matrix.
    fn blue_column_sums(&self) -> Result<Vec<u128>, CurveError> {
        let m = self.subsurface_genera.len();
        let cyclic = self.chain == Some(ChainShape::Cyclic);
        let mut sums = Vec::with_capacity(m);
        for (i, &h) in self.subsurface_genera.iter().enumerate() {
            let d = at_pair_intersection(h)? as u128;
            let e = bounding_label(h)? as u128;
            let has_own_link = cyclic || i + 1 < m;
            let has_previous_link = cyclic || i > 0;
            sums.push(d + if has_own_link { e } else { 0 } + if has_previous_link { 2 } else { 0 });
        }
        Ok(sums)
    }

    /// Row sums of `N Nᵀ` for a chained configuration from the per-vertex
    /// formulas `D_i·S_i` for `α_i` and `E_i·S_i + 2·S_{i+1}` for `c_i`,
    /// where `S_i` is the label sum at `β_i`. Red vertex order.
    pub fn chain_row_sums(&self) -> Result<Vec<u128>, CurveError> {
        let chain = self.chain.ok_or_else(|| {
            CurveError::Graph(format!("{} configurations are not chained", self.case))
        })?;
        let m = self.subsurface_genera.len();
        let sums = self.blue_column_sums()?;
        let links = match chain {
            ChainShape::Cyclic => m,
            ChainShape::Open => m - 1,
        };
        let mut rows = Vec::with_capacity(m + links);
        for (i, &h) in self.subsurface_genera.iter().enumerate() {
            rows.push(at_pair_intersection(h)? as u128 * sums[i]);
        }
        for i in 0..links {
            let e = bounding_label(self.subsurface_genera[i])? as u128;
            rows.push(e * sums[i] + 2 * sums[(i + 1) % m]);
        }
        Ok(rows)
    }
}

/// Row sums of `N Nᵀ` for a cyclic chain whose subsurfaces all have genus
/// `h`: `(2E² + 4E, 2E² − 4E)` for `(c_i, α_i)` with `E = D + 2`.
pub fn equal_genus_row_sums(h: u32) -> Result<(u128, u128), CurveError> {
    let e = bounding_label(h)? as u128;
    Ok((2 * e * e + 4 * e, 2 * e * e - 4 * e))
}

/// Worst-case label on a dashed edge when every subsurface has genus at most
/// `k`: `24k² − 24k + 8`.
pub fn dashed_label_bound(k: u32) -> u128 {
    let k = k as u128;
    24 * k * k - 24 * k + 8
}

/// Row-sum ceilings `(2D′² + 6D′ + 4, 2D′² + 2D′)` for valence-two and
/// valence-one red vertices, with `D′` from [`dashed_label_bound`].
pub fn row_sum_ceilings(k: u32) -> (u128, u128) {
    let d = dashed_label_bound(k);
    (2 * d * d + 6 * d + 4, 2 * d * d + 2 * d)
}

/// Row sum of a `c_i` vertex in any genus-one cycle: `8·16 + 2·16`.
pub const CASE3_MAX_ROW_SUM: u128 = 160;

/// The figure quoted for the same quantity in the literature, which the
/// cyclic 6/8/2 layout does not reproduce.
pub const CASE3_REFERENCE_ROW_SUM: u128 = 152;

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_rows(m: &IntersectionMatrix) -> Vec<Vec<u64>> {
        let mut rows = m.to_rows();
        rows.sort();
        rows
    }

    #[test]
    fn at_pair_values() {
        assert_eq!(at_pair_intersection(1).unwrap(), 6);
        assert_eq!(at_pair_intersection(2).unwrap(), 24);
        assert_eq!(at_pair_intersection(3).unwrap(), 150);
        assert_eq!(at_pair_intersection(0), Err(CurveError::ZeroGenus));
        for h in 3..200u64 {
            assert_eq!(
                at_pair_intersection(h as u32).unwrap(),
                6 * (2 * h - 1) * (2 * h - 1)
            );
        }
    }

    #[test]
    fn case1_examples() {
        let c = build_case1(2, 2).unwrap();
        assert_eq!(c.matrix.to_rows(), vec![vec![6, 0], vec![0, 6], vec![8, 8]]);
        assert_eq!(c.graph.red().len() + c.graph.blue().len(), 5);

        let c3 = build_case1(2, 3).unwrap();
        assert_eq!(c3.matrix, c.matrix);
        assert_eq!(c3.layout.bounded_disc, 1);

        let c = build_case1(4, 2).unwrap();
        assert_eq!(
            c.matrix.to_rows(),
            vec![vec![24, 0], vec![0, 24], vec![26, 26]]
        );
        let c = build_case1(3, 2).unwrap();
        assert_eq!(c.subsurface_genera, vec![2, 1]);
        assert_eq!(
            c.matrix.to_rows(),
            vec![vec![24, 0], vec![0, 6], vec![26, 8]]
        );
    }

    #[test]
    fn case2_examples() {
        let c = build_case2(4, 4).unwrap();
        assert_eq!(c.subsurface_genera, vec![2, 2]);
        assert_eq!(
            c.matrix.to_rows(),
            vec![vec![24, 0], vec![0, 24], vec![26, 2], vec![2, 26]]
        );
        let c = build_case2(6, 4).unwrap();
        assert_eq!(c.subsurface_genera, vec![3, 3]);
        assert_eq!(
            c.matrix.to_rows(),
            vec![vec![150, 0], vec![0, 150], vec![152, 2], vec![2, 152]]
        );
    }

    #[test]
    fn case2_odd_falls_back_to_open_chain_only_when_needed() {
        // ⌊5/2⌋ = 2 subsurfaces would need genus 3 > ⌈10/5⌉ = 2
        let c = build_case2(5, 5).unwrap();
        assert_eq!(c.chain, Some(ChainShape::Open));
        assert_eq!(c.subsurface_genera, vec![2, 2, 1]);
        assert_eq!(c.layout.subsurface, vec![2, 2, 1]);
        assert_eq!(c.graph.blue_valence(0), 2);
        assert_eq!(c.graph.blue_valence(1), 3);
        assert_eq!(c.graph.blue_valence(2), 2);

        let c = build_case2(3, 5).unwrap();
        assert_eq!(c.chain, Some(ChainShape::Cyclic));
        assert_eq!(c.subsurface_genera, vec![2, 1]);
        assert_eq!(c.layout.bounded_disc, 1);
    }

    #[test]
    fn case3_examples() {
        let c = build_case3(2, 4).unwrap();
        assert_eq!(
            sorted_rows(&c.matrix),
            vec![vec![0, 6], vec![2, 8], vec![6, 0], vec![8, 2]]
        );
        let c7 = build_case3(2, 7).unwrap();
        assert_eq!(c7.matrix, c.matrix);
        assert_eq!(c7.layout.central, 3);
        assert_eq!(c7.layout.total(), 7);
        assert_eq!(c.matrix.gram().max_row_sum(), CASE3_MAX_ROW_SUM);
    }

    #[test]
    fn dispatch() {
        assert_eq!(build_configuration(5, 4).unwrap().case, CaseTag::Case2);
        assert_eq!(build_configuration(5, 10).unwrap().case, CaseTag::Case3);
        assert_eq!(build_configuration(5, 3).unwrap().case, CaseTag::Case1);
        assert_eq!(build_configuration(2, 4).unwrap().case, CaseTag::Case3);
        for (g, n) in [(5, 0), (5, 1), (1, 4), (0, 0)] {
            assert!(matches!(
                build_configuration(g, n),
                Err(CurveError::Unsupported { .. })
            ));
        }
    }

    #[test]
    fn builders_reject_wrong_case() {
        assert!(build_case1(4, 4).is_err());
        assert!(build_case2(4, 8).is_err());
        assert!(build_case2(4, 3).is_err());
        assert!(build_case3(4, 7).is_err());
    }

    #[test]
    fn graph_validation() {
        let red = vec![CurveVertex::new(CurveKind::AtAlpha, 0)];
        let blue = vec![CurveVertex::new(CurveKind::AtBeta, 0)];
        let zero = vec![LabeledEdge {
            red: 0,
            blue: 0,
            label: 0,
        }];
        assert!(BipartiteCurveGraph::new(red.clone(), blue.clone(), zero).is_err());
        assert!(BipartiteCurveGraph::new(red.clone(), blue.clone(), vec![]).is_err());
        assert!(BipartiteCurveGraph::new(blue.clone(), red.clone(), vec![]).is_err());
        let dup = vec![
            LabeledEdge {
                red: 0,
                blue: 0,
                label: 1,
            },
            LabeledEdge {
                red: 0,
                blue: 0,
                label: 2,
            },
        ];
        assert!(BipartiteCurveGraph::new(red, blue, dup).is_err());
    }

    #[test]
    fn case2_row_sums_match_formulas() {
        let c = build_case2(4, 4).unwrap();
        let rows = c.chain_row_sums().unwrap();
        assert_eq!(rows, c.matrix.gram().row_sums());
        let (c_row, alpha_row) = equal_genus_row_sums(2).unwrap();
        assert_eq!(rows, vec![alpha_row, alpha_row, c_row, c_row]);
        // E = 26: 2·676 + 104 and 2·676 − 104
        assert_eq!((c_row, alpha_row), (1456, 1248));
        assert!(build_case1(2, 2).unwrap().chain_row_sums().is_err());
    }

    #[test]
    fn row_sum_ceilings_values() {
        assert_eq!(dashed_label_bound(1), 8);
        assert_eq!(dashed_label_bound(2), 56);
        assert_eq!(
            row_sum_ceilings(2),
            (2 * 56 * 56 + 6 * 56 + 4, 2 * 56 * 56 + 2 * 56)
        );
    }

    #[test]
    fn dilatation_of_case1() {
        let c = build_configuration(2, 2).unwrap();
        let d = configuration_dilatation(&c, 1e-10).unwrap();
        assert!(d.bracket.contains(164.0));
        assert!((d.estimate.entropy - 5.111951496643704).abs() < 1e-9);
    }
}
