//! Monotonicity certification rules.
//!
//! Each rule mechanically checks the hypotheses of one classical
//! monotonicity criterion for Riemann-type sums and, when they hold,
//! emits a [`Certificate`] naming the rule, the checks performed, and
//! the soundness level of those checks. [`certify`] runs every rule
//! applicable to the requested sum kind and accumulates all
//! certificates, so overlapping criteria each leave their own record.
//!
//! Soundness levels: hypotheses on polynomial specs are decided in exact
//! rational arithmetic (derivative sign analysis via Sturm chains), and
//! boundary-value comparisons use closed forms where available; such
//! certificates are `exact`. Hypotheses established by grid probes or by
//! checking a sequence condition up to a finite horizon are `numeric` —
//! strong evidence, not proof.

use std::fmt;

use serde::Serialize;

use crate::fourier::FourierSpec;
use crate::funcspec::{FunctionSpec, ShapeReport, DEFAULT_PROBE_GRID, DEFAULT_PROBE_TOLERANCE};
use crate::polyexact::{poly_nonneg_on, poly_nonpos_on, rat, rat_int, rational_to_f64, Rational};
use crate::sums::{NodeSide, NodeWeight, ShiftSide, SumKind};
use crate::Result;

/// Number of leading terms checked for sequence hypotheses (node-ratio
/// conditions, coefficient monotonicity). Finite, hence `numeric`.
pub const DEFAULT_HORIZON: u64 = 10_000;

/// Tolerance for floating boundary-value comparisons.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// Tolerance for sequence-condition comparisons over the horizon.
const SEQUENCE_TOLERANCE: f64 = 1e-12;

/// Direction asserted by a certificate. Positive verdicts claim the sum
/// sequence is monotone; negative verdicts exclude a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertDirection {
    Increasing,
    Decreasing,
    NotIncreasing,
    NotDecreasing,
}

impl CertDirection {
    /// `true` for verdicts that assert monotonicity (rather than exclude it).
    pub fn is_positive(self) -> bool {
        matches!(self, CertDirection::Increasing | CertDirection::Decreasing)
    }

    /// A positive verdict and the exclusion of that same direction clash.
    pub fn contradicts(self, other: CertDirection) -> bool {
        use CertDirection::*;
        matches!(
            (self, other),
            (Increasing, NotIncreasing)
                | (NotIncreasing, Increasing)
                | (Decreasing, NotDecreasing)
                | (NotDecreasing, Decreasing)
        )
    }
}

impl fmt::Display for CertDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertDirection::Increasing => write!(f, "increasing"),
            CertDirection::Decreasing => write!(f, "decreasing"),
            CertDirection::NotIncreasing => write!(f, "not increasing"),
            CertDirection::NotDecreasing => write!(f, "not decreasing"),
        }
    }
}

/// How the hypothesis checks behind a certificate were performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Soundness {
    /// Every check ran in exact arithmetic or is structurally guaranteed.
    Exact,
    /// At least one check used grid probes or a finite horizon.
    Numeric,
}

impl fmt::Display for Soundness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Soundness::Exact => write!(f, "exact"),
            Soundness::Numeric => write!(f, "numeric"),
        }
    }
}

/// One named hypothesis check and its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub outcome: bool,
    pub detail: String,
}

impl Hypothesis {
    fn new(name: impl Into<String>, outcome: bool, detail: impl Into<String>) -> Self {
        Hypothesis {
            name: name.into(),
            outcome,
            detail: detail.into(),
        }
    }
}

/// A monotonicity verdict with provenance: which rule fired, which
/// hypotheses were checked, and how rigorously.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    /// Token form of the certified sum kind (parseable by `SumKind`).
    pub sum_kind: String,
    pub direction: CertDirection,
    pub rule_id: String,
    pub hypotheses: Vec<Hypothesis>,
    pub soundness: Soundness,
    pub notes: String,
}

impl Certificate {
    fn new(
        kind: &SumKind,
        direction: CertDirection,
        rule_id: &str,
        hypotheses: Vec<Hypothesis>,
        soundness: Soundness,
        notes: impl Into<String>,
    ) -> Self {
        Certificate {
            sum_kind: kind.to_string(),
            direction,
            rule_id: rule_id.to_string(),
            hypotheses,
            soundness,
            notes: notes.into(),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} sum: {} [rule {}, {}]",
            self.sum_kind, self.direction, self.rule_id, self.soundness
        )?;
        for h in &self.hypotheses {
            writeln!(
                f,
                "  - {}: {} ({})",
                h.name,
                if h.outcome { "holds" } else { "fails" },
                h.detail
            )?;
        }
        if !self.notes.is_empty() {
            writeln!(f, "  note: {}", self.notes)?;
        }
        Ok(())
    }
}

/// A [`ShapeReport`] together with a flag telling whether it came from
/// exact polynomial arithmetic (`grid_size` is 0 in that case) or from
/// grid probes.
#[derive(Clone, Debug)]
pub struct ShapeEvidence {
    pub report: ShapeReport,
    pub exact: bool,
}

impl ShapeEvidence {
    fn probe_detail(&self) -> String {
        if self.exact {
            "exact derivative sign analysis on [0,1]".to_string()
        } else {
            format!(
                "grid probe ({} points, tolerance {:e})",
                self.report.grid_size, self.report.tolerance
            )
        }
    }
}

/// Shape hypotheses for `spec`: exact (Sturm-based derivative signs) for
/// polynomials, grid probes otherwise.
pub fn shape_evidence(spec: &FunctionSpec) -> Result<ShapeEvidence> {
    if let Some(p) = spec.as_polynomial() {
        let lo = rat_int(0);
        let hi = rat_int(1);
        let d1 = p.derivative();
        let d2 = d1.derivative();
        let report = ShapeReport {
            increasing: poly_nonneg_on(&d1, &lo, &hi),
            decreasing: poly_nonpos_on(&d1, &lo, &hi),
            convex: poly_nonneg_on(&d2, &lo, &hi),
            concave: poly_nonpos_on(&d2, &lo, &hi),
            f0: p.eval_f64(0.0),
            f_half: p.eval_f64(0.5),
            f1: p.eval_f64(1.0),
            grid_size: 0,
            tolerance: 0.0,
        };
        return Ok(ShapeEvidence {
            report,
            exact: true,
        });
    }
    let report = spec.probe_shape(DEFAULT_PROBE_GRID, DEFAULT_PROBE_TOLERANCE)?;
    Ok(ShapeEvidence {
        report,
        exact: false,
    })
}

/// Shape hypotheses for the first derivative of `spec`: exact for
/// polynomials, otherwise judged from central-difference samples.
pub fn derivative_evidence(spec: &FunctionSpec) -> Result<ShapeEvidence> {
    if let Some(p) = spec.as_polynomial() {
        let lo = rat_int(0);
        let hi = rat_int(1);
        let d1 = p.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        let report = ShapeReport {
            increasing: poly_nonneg_on(&d2, &lo, &hi),
            decreasing: poly_nonpos_on(&d2, &lo, &hi),
            convex: poly_nonneg_on(&d3, &lo, &hi),
            concave: poly_nonpos_on(&d3, &lo, &hi),
            f0: d1.eval_f64(0.0),
            f_half: d1.eval_f64(0.5),
            f1: d1.eval_f64(1.0),
            grid_size: 0,
            tolerance: 0.0,
        };
        return Ok(ShapeEvidence {
            report,
            exact: true,
        });
    }
    // Difference quotients at interval midpoints form an evenly spaced
    // sample of f'; judge its shape by the same difference criteria.
    let m = DEFAULT_PROBE_GRID;
    let tol = DEFAULT_PROBE_TOLERANCE;
    let step = 1.0 / (m as f64 - 1.0);
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        values.push(spec.eval(i as f64 * step)?);
    }
    let d: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]) / step).collect();
    let mut increasing = true;
    let mut decreasing = true;
    for w in d.windows(2) {
        let delta = w[1] - w[0];
        if delta < -tol {
            increasing = false;
        }
        if delta > tol {
            decreasing = false;
        }
    }
    let mut convex = true;
    let mut concave = true;
    for w in d.windows(3) {
        let second = w[2] - 2.0 * w[1] + w[0];
        if second < -tol {
            convex = false;
        }
        if second > tol {
            concave = false;
        }
    }
    let report = ShapeReport {
        increasing,
        decreasing,
        convex,
        concave,
        f0: d[0],
        f_half: d[d.len() / 2],
        f1: d[d.len() - 1],
        grid_size: d.len(),
        tolerance: tol,
    };
    Ok(ShapeEvidence {
        report,
        exact: false,
    })
}

/// Boundary values f(0), f(1/2), f(1) with exact comparisons when the
/// spec has closed-form rational values there.
#[derive(Clone, Debug)]
struct Boundary {
    exact: Option<[Rational; 3]>,
    approx: [f64; 3],
}

impl Boundary {
    fn of(spec: &FunctionSpec) -> Result<Self> {
        let exact = spec
            .boundary_values_exact()
            .map(|(a, b, c)| [a, b, c]);
        let approx = match &exact {
            Some(v) => [
                rational_to_f64(&v[0]),
                rational_to_f64(&v[1]),
                rational_to_f64(&v[2]),
            ],
            None => [spec.eval(0.0)?, spec.eval(0.5)?, spec.eval(1.0)?],
        };
        Ok(Boundary { exact, approx })
    }

    fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `value(i) ≥ value(j)`, exactly when possible, else within
    /// [`BOUNDARY_TOLERANCE`]. Indices: 0 → f(0), 1 → f(1/2), 2 → f(1).
    fn ge(&self, i: usize, j: usize) -> bool {
        match &self.exact {
            Some(v) => v[i] >= v[j],
            None => self.approx[i] >= self.approx[j] - BOUNDARY_TOLERANCE,
        }
    }

    fn describe(&self, i: usize) -> String {
        const POINTS: [&str; 3] = ["f(0)", "f(1/2)", "f(1)"];
        format!("{} = {:.6}", POINTS[i], self.approx[i])
    }
}

fn monotone_hypotheses(shape: &ShapeEvidence, increasing: bool) -> Vec<Hypothesis> {
    let detail = shape.probe_detail();
    let curvature = if shape.report.convex && shape.report.concave {
        "linear (both convex and concave)"
    } else if shape.report.convex {
        "convex"
    } else {
        "concave"
    };
    vec![
        Hypothesis::new(
            if increasing {
                "f increasing on [0,1]"
            } else {
                "f decreasing on [0,1]"
            },
            true,
            detail.clone(),
        ),
        Hypothesis::new(
            "f convex or concave on [0,1]",
            true,
            format!("{curvature}; {detail}"),
        ),
    ]
}

fn soundness_of(exact: bool) -> Soundness {
    if exact {
        Soundness::Exact
    } else {
        Soundness::Numeric
    }
}

/// Endpoint-sum rule for monotone single-curvature functions: an
/// increasing f (convex or concave) has increasing left sums and
/// decreasing right sums; a decreasing f, the reverse.
pub fn rule_fejer(shape: &ShapeEvidence, kind: &SumKind) -> Vec<Certificate> {
    if !matches!(kind, SumKind::Left | SumKind::Right) {
        return Vec::new();
    }
    let r = &shape.report;
    if !(r.monotone() && r.convex_or_concave()) {
        return Vec::new();
    }
    let soundness = soundness_of(shape.exact);
    let mut out = Vec::new();
    let mut emit = |f_increasing: bool| {
        let direction = match (kind, f_increasing) {
            (SumKind::Left, true) | (SumKind::Right, false) => CertDirection::Increasing,
            _ => CertDirection::Decreasing,
        };
        out.push(Certificate::new(
            kind,
            direction,
            "fejer",
            monotone_hypotheses(shape, f_increasing),
            soundness,
            "endpoint Riemann sums of a monotone function with a single curvature",
        ));
    };
    if r.increasing {
        emit(true);
    }
    if r.decreasing {
        emit(false);
    }
    out
}

/// Shifted endpoint sums: under the same hypotheses, the right-shifted
/// family decreases in n (for each fixed shift k) when f is increasing,
/// and the left-shifted family increases; reversed for decreasing f.
pub fn rule_qi_shifted(shape: &ShapeEvidence, kind: &SumKind) -> Vec<Certificate> {
    let SumKind::Shifted { k, side } = kind else {
        return Vec::new();
    };
    let r = &shape.report;
    if !(r.monotone() && r.convex_or_concave()) {
        return Vec::new();
    }
    let soundness = soundness_of(shape.exact);
    let mut out = Vec::new();
    let mut emit = |f_increasing: bool| {
        let direction = match (side, f_increasing) {
            (ShiftSide::Right, true) | (ShiftSide::Left, false) => CertDirection::Decreasing,
            _ => CertDirection::Increasing,
        };
        out.push(Certificate::new(
            kind,
            direction,
            "qi_shifted",
            monotone_hypotheses(shape, f_increasing),
            soundness,
            format!(
                "monotone in n for fixed shift k = {k}; the family is also {direction} \
                 in k for fixed n (confirmed by scans, not certified here)"
            ),
        ));
    };
    if r.increasing {
        emit(true);
    }
    if r.decreasing {
        emit(false);
    }
    out
}

/// First index (1-based among the checked pairs) where the sequence
/// fails to be increasing, or `None` if it never does.
fn first_increase_violation(values: &[f64]) -> Option<usize> {
    values
        .windows(2)
        .position(|w| w[1] < w[0] - SEQUENCE_TOLERANCE)
        .map(|i| i + 1)
}

fn first_decrease_violation(values: &[f64]) -> Option<usize> {
    values
        .windows(2)
        .position(|w| w[1] > w[0] + SEQUENCE_TOLERANCE)
        .map(|i| i + 1)
}

fn sequence_hypothesis(
    name: &str,
    values: &[f64],
    want_increasing: bool,
    horizon: u64,
) -> Hypothesis {
    let violation = if want_increasing {
        first_increase_violation(values)
    } else {
        first_decrease_violation(values)
    };
    match violation {
        None => Hypothesis::new(
            name.to_string(),
            true,
            format!("holds for k ≤ {horizon}"),
        ),
        Some(k) => Hypothesis::new(
            name.to_string(),
            false,
            format!("violated at k = {k}"),
        ),
    }
}

/// Is `spec` nonnegative on [0,1]? Exact for polynomials, grid-probed
/// otherwise. Returns (outcome, detail).
fn nonnegativity(spec: &FunctionSpec) -> Result<(bool, String, bool)> {
    if let Some(p) = spec.as_polynomial() {
        let ok = poly_nonneg_on(&p, &rat_int(0), &rat_int(1));
        return Ok((ok, "exact sign analysis on [0,1]".to_string(), true));
    }
    let m = DEFAULT_PROBE_GRID;
    let step = 1.0 / (m as f64 - 1.0);
    let mut min = f64::INFINITY;
    for i in 0..m {
        min = min.min(spec.eval(i as f64 * step)?);
    }
    Ok((
        min >= -DEFAULT_PROBE_TOLERANCE,
        format!("grid minimum {min:.3e} over {m} points"),
        false,
    ))
}

/// Generalized-node sums `f(a_k/a_n)` for an increasing positive node
/// sequence `a_k = φ(k)`, `a_0 = 0`. For increasing f, the rule checks
/// the node-ratio sequence conditions (with `A_k = 1 − a_k/a_{k+1}` and
/// `B_k = a_{k+1}/a_k − 1`) over a finite horizon and certifies:
/// right-node/per-n sums decreasing (convex f needs kA_k increasing;
/// concave f needs kB_k increasing), left-node/per-n sums increasing
/// (convex: kB_k decreasing; concave: kA_k decreasing), and for
/// nonnegative f the per-a_n analogues (right decreasing when φ is
/// convex and a_k·A_k increases; left increasing when a_{k+1}·B_k
/// decreases for convex f, or a_k·A_k decreases for concave f).
pub fn rule_qi_guo_nodes(
    spec: &FunctionSpec,
    shape: &ShapeEvidence,
    kind: &SumKind,
    horizon: u64,
) -> Vec<Certificate> {
    let SumKind::GeneralizedNodes {
        nodes,
        weight,
        side,
    } = kind
    else {
        return Vec::new();
    };
    let r = &shape.report;
    if !(r.increasing && r.convex_or_concave()) {
        return Vec::new();
    }

    let a = |k: u64| nodes.value(k);
    let len = horizon as usize;
    let k_a: Vec<f64> = (1..=horizon)
        .map(|k| k as f64 * (1.0 - a(k) / a(k + 1)))
        .collect();
    let k_b: Vec<f64> = (1..=horizon)
        .map(|k| k as f64 * (a(k + 1) / a(k) - 1.0))
        .collect();
    debug_assert_eq!(k_a.len(), len);

    let mut hypotheses = vec![Hypothesis::new(
        "f increasing on [0,1]",
        true,
        shape.probe_detail(),
    )];
    let curvature_hyp = |convex: bool, shape: &ShapeEvidence| {
        Hypothesis::new(
            if convex {
                "f convex on [0,1]"
            } else {
                "f concave on [0,1]"
            },
            true,
            shape.probe_detail(),
        )
    };

    let mut satisfied = false;
    let direction;
    let notes;
    match (side, weight) {
        (NodeSide::Right, NodeWeight::PerN) => {
            direction = CertDirection::Decreasing;
            notes = "right-node sums with weight 1/n decrease in n";
            if r.convex {
                let h = sequence_hypothesis("k·A_k increasing", &k_a, true, horizon);
                satisfied |= h.outcome;
                hypotheses.push(curvature_hyp(true, shape));
                hypotheses.push(h);
            }
            if r.concave {
                let h = sequence_hypothesis("k·B_k increasing", &k_b, true, horizon);
                satisfied |= h.outcome;
                hypotheses.push(curvature_hyp(false, shape));
                hypotheses.push(h);
            }
        }
        (NodeSide::Left, NodeWeight::PerN) => {
            direction = CertDirection::Increasing;
            notes = "left-node sums with weight 1/n increase in n";
            if r.convex {
                let h = sequence_hypothesis("k·B_k decreasing", &k_b, false, horizon);
                satisfied |= h.outcome;
                hypotheses.push(curvature_hyp(true, shape));
                hypotheses.push(h);
            }
            if r.concave {
                let h = sequence_hypothesis("k·A_k decreasing", &k_a, false, horizon);
                satisfied |= h.outcome;
                hypotheses.push(curvature_hyp(false, shape));
                hypotheses.push(h);
            }
        }
        (NodeSide::Right, NodeWeight::PerAn) => {
            direction = CertDirection::Decreasing;
            notes = "right-node sums with weight 1/a_n decrease in n";
            let (nonneg, detail, _) = match nonnegativity(spec) {
                Ok(v) => v,
                Err(_) => return Vec::new(),
            };
            hypotheses.push(Hypothesis::new("f nonnegative on [0,1]", nonneg, detail));
            let phi_convex: Vec<f64> = (1..horizon).map(|k| a(k + 1) - 2.0 * a(k) + a(k - 1)).collect();
            let phi_ok = phi_convex.iter().all(|&v| v >= -SEQUENCE_TOLERANCE);
            hypotheses.push(Hypothesis::new(
                "node sequence convex",
                phi_ok,
                format!("second differences of a_k checked for k < {horizon}"),
            ));
            let a_ka: Vec<f64> = (1..=horizon).map(|k| a(k) * (1.0 - a(k) / a(k + 1))).collect();
            let h = sequence_hypothesis("a_k·A_k increasing", &a_ka, true, horizon);
            satisfied = nonneg && phi_ok && h.outcome;
            hypotheses.push(h);
        }
        (NodeSide::Left, NodeWeight::PerAn) => {
            direction = CertDirection::Increasing;
            notes = "left-node sums with weight 1/a_n increase in n";
            let (nonneg, detail, _) = match nonnegativity(spec) {
                Ok(v) => v,
                Err(_) => return Vec::new(),
            };
            hypotheses.push(Hypothesis::new("f nonnegative on [0,1]", nonneg, detail));
            if r.convex {
                let ab: Vec<f64> = (1..=horizon)
                    .map(|k| a(k + 1) * (a(k + 1) / a(k) - 1.0))
                    .collect();
                let h = sequence_hypothesis("a_{k+1}·B_k decreasing", &ab, false, horizon);
                satisfied |= nonneg && h.outcome;
                hypotheses.push(curvature_hyp(true, shape));
                hypotheses.push(h);
            }
            if r.concave {
                let a_ka: Vec<f64> =
                    (1..=horizon).map(|k| a(k) * (1.0 - a(k) / a(k + 1))).collect();
                let h = sequence_hypothesis("a_k·A_k decreasing", &a_ka, false, horizon);
                satisfied |= nonneg && h.outcome;
                hypotheses.push(curvature_hyp(false, shape));
                hypotheses.push(h);
            }
        }
    }

    if !satisfied {
        return Vec::new();
    }
    vec![Certificate::new(
        kind,
        direction,
        "qi_guo_nodes",
        hypotheses,
        Soundness::Numeric,
        format!("{notes}; sequence conditions verified for k ≤ {horizon}"),
    )]
}

/// Interior-sum rule: convex f has increasing central sums and
/// decreasing bilateral sums (concave f, the reverse); when f' is itself
/// convex or concave, convex f additionally has increasing midpoint sums
/// and decreasing trapezium sums (concave f, the reverse).
pub fn rule_bennett(
    shape: &ShapeEvidence,
    derivative_shape: &ShapeEvidence,
    kind: &SumKind,
) -> Vec<Certificate> {
    use SumKind::*;
    if !matches!(kind, Central | Bilateral | Midpoint | Trapezium) {
        return Vec::new();
    }
    let r = &shape.report;
    let needs_derivative = matches!(kind, Midpoint | Trapezium);
    if needs_derivative && !derivative_shape.report.convex_or_concave() {
        return Vec::new();
    }
    let soundness = soundness_of(
        shape.exact && (!needs_derivative || derivative_shape.exact),
    );
    let mut out = Vec::new();
    let mut emit = |f_convex: bool| {
        let direction = match (kind, f_convex) {
            (Central, true) | (Bilateral, false) | (Midpoint, true) | (Trapezium, false) => {
                CertDirection::Increasing
            }
            _ => CertDirection::Decreasing,
        };
        let mut hypotheses = vec![Hypothesis::new(
            if f_convex {
                "f convex on [0,1]"
            } else {
                "f concave on [0,1]"
            },
            true,
            shape.probe_detail(),
        )];
        if needs_derivative {
            hypotheses.push(Hypothesis::new(
                "f' convex or concave on [0,1]",
                true,
                derivative_shape.probe_detail(),
            ));
        }
        out.push(Certificate::new(
            kind,
            direction,
            "bennett",
            hypotheses,
            soundness,
            "interior Riemann sums ordered by curvature",
        ));
    };
    if r.convex {
        emit(true);
    }
    if r.concave {
        emit(false);
    }
    out
}

/// Width of the symmetric difference stencil used to sample curvature.
const INFLECTION_STENCIL: f64 = 1e-3;

/// Resolution to which the inflection point is located.
const INFLECTION_RESOLUTION: f64 = 1e-6;

fn second_difference(spec: &FunctionSpec, x: f64, h: f64) -> Result<f64> {
    Ok(spec.eval(x - h)? - 2.0 * spec.eval(x)? + spec.eval(x + h)?)
}

/// Locates a single curvature change: bisects on the sign of the
/// symmetric second difference, returning the crossing point when the
/// two ends of [0,1] have opposite curvature, `None` otherwise.
pub fn locate_inflection(spec: &FunctionSpec) -> Result<Option<f64>> {
    let h = INFLECTION_STENCIL;
    let mut lo = h;
    let mut hi = 1.0 - h;
    let d_lo = second_difference(spec, lo, h)?;
    let d_hi = second_difference(spec, hi, h)?;
    if d_lo == 0.0 || d_hi == 0.0 || d_lo.signum() == d_hi.signum() {
        return Ok(None);
    }
    while hi - lo > INFLECTION_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        let d_mid = second_difference(spec, mid, h)?;
        if d_mid == 0.0 {
            return Ok(Some(mid));
        }
        if d_mid.signum() == d_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Endpoint sums of a monotone function with one inflection at `c`:
/// a decreasing f that is convex on [0,c] and concave on [c,1] has
/// decreasing left sums and increasing right sums; an increasing f that
/// is concave then convex, the mirror image.
pub fn rule_borwein_inflection(
    spec: &FunctionSpec,
    shape: &ShapeEvidence,
    c: f64,
    kind: &SumKind,
) -> Vec<Certificate> {
    if !matches!(kind, SumKind::Left | SumKind::Right) {
        return Vec::new();
    }
    let r = &shape.report;
    if !r.monotone() || !(0.0..=1.0).contains(&c) {
        return Vec::new();
    }
    let h = INFLECTION_STENCIL;
    // Verify single-signed curvature on each side of c.
    let m = 256;
    let mut convex_first = true;
    let mut concave_first = true;
    for i in 0..m {
        let x = h + (1.0 - 2.0 * h) * i as f64 / (m - 1) as f64;
        let Ok(d2) = second_difference(spec, x, h) else {
            return Vec::new();
        };
        // Second differences scale like f''·h²; tolerate curvature that
        // is flat to within probe noise near the crossing.
        let tol = DEFAULT_PROBE_TOLERANCE;
        if x <= c {
            if d2 < -tol {
                convex_first = false;
            }
            if d2 > tol {
                concave_first = false;
            }
        } else {
            if d2 > tol {
                convex_first = false;
            }
            if d2 < -tol {
                concave_first = false;
            }
        }
    }
    let fires = (r.decreasing && convex_first) || (r.increasing && concave_first);
    if !fires {
        return Vec::new();
    }
    let f_decreasing = r.decreasing && convex_first;
    let direction = match (kind, f_decreasing) {
        (SumKind::Left, true) | (SumKind::Right, false) => CertDirection::Decreasing,
        _ => CertDirection::Increasing,
    };
    let (first, second) = if f_decreasing {
        ("convex", "concave")
    } else {
        ("concave", "convex")
    };
    let hypotheses = vec![
        Hypothesis::new(
            if f_decreasing {
                "f decreasing on [0,1]"
            } else {
                "f increasing on [0,1]"
            },
            true,
            shape.probe_detail(),
        ),
        Hypothesis::new(
            format!("f {first} on [0,c]"),
            true,
            format!("c ≈ {c:.6}, curvature sampled on {m} points"),
        ),
        Hypothesis::new(
            format!("f {second} on [c,1]"),
            true,
            format!("c ≈ {c:.6}, curvature sampled on {m} points"),
        ),
    ];
    vec![Certificate::new(
        kind,
        direction,
        "borwein_inflection",
        hypotheses,
        Soundness::Numeric,
        format!("monotone with a single inflection at c ≈ {c:.6}"),
    )]
}

/// Extremum location and shift constant for the shifted endpoint-sum
/// rule: returns `(c, Δ)` with `Δ = f(c) − f(0)` for right sums and
/// `Δ = f(c) − f(1)` for left sums, where `c` maximizes f when
/// `maximize` is set (concave case) and minimizes it otherwise.
pub fn borwein_shift(spec: &FunctionSpec, kind: &SumKind, maximize: bool) -> Result<(f64, f64)> {
    let m = 4096;
    let mut best_x = 0.0;
    let mut best = spec.eval(0.0)?;
    for i in 1..=m {
        let x = i as f64 / m as f64;
        let v = spec.eval(x)?;
        if (maximize && v > best) || (!maximize && v < best) {
            best = v;
            best_x = x;
        }
    }
    let endpoint = match kind {
        SumKind::Right => spec.eval(0.0)?,
        SumKind::Left => spec.eval(1.0)?,
        _ => {
            return Err(crate::Error::Domain(
                "shifted endpoint-sum rule applies to left and right sums only".to_string(),
            ))
        }
    };
    Ok((best_x, best - endpoint))
}

/// Shifted endpoint sums around an interior extremum: for concave f with
/// maximum f(c), the sequences `R_n − (f(c)−f(0))/n` and
/// `L_n − (f(c)−f(1))/n` increase; for convex f with minimum f(c), they
/// decrease. The certificate covers the *shifted* sequence — the shift
/// constant is recorded in the hypotheses and notes.
pub fn rule_borwein_shifted(
    spec: &FunctionSpec,
    shape: &ShapeEvidence,
    kind: &SumKind,
) -> Vec<Certificate> {
    if !matches!(kind, SumKind::Left | SumKind::Right) {
        return Vec::new();
    }
    let r = &shape.report;
    let soundness = Soundness::Numeric;
    let endpoint_name = match kind {
        SumKind::Right => "f(0)",
        _ => "f(1)",
    };
    let mut out = Vec::new();
    let mut emit = |f_concave: bool| {
        let Ok((c, delta)) = borwein_shift(spec, kind, f_concave) else {
            return;
        };
        let direction = if f_concave {
            CertDirection::Increasing
        } else {
            CertDirection::Decreasing
        };
        let extremum = if f_concave { "maximum" } else { "minimum" };
        let hypotheses = vec![
            Hypothesis::new(
                if f_concave {
                    "f concave on [0,1]"
                } else {
                    "f convex on [0,1]"
                },
                true,
                shape.probe_detail(),
            ),
            Hypothesis::new(
                format!("{extremum} f(c) located"),
                true,
                format!("c ≈ {c:.6} on a 4096-point grid"),
            ),
            Hypothesis::new(
                "shift constant",
                true,
                format!("Δ = f(c) − {endpoint_name} = {delta:.17e}"),
            ),
        ];
        out.push(Certificate::new(
            kind,
            direction,
            "borwein_shifted",
            hypotheses,
            soundness,
            format!(
                "certifies the shifted sequence S_n − Δ/n with Δ = {delta:.17e}, \
                 not the raw {kind} sums"
            ),
        ));
    };
    if r.concave {
        emit(true);
    }
    if r.convex {
        emit(false);
    }
    out
}

/// Symmetric-sum rule: for f symmetric about 1/2, the symmetric sums
/// λ_n increase when f is concave and decrease when f is convex.
pub fn rule_sym(spec: &FunctionSpec, shape: &ShapeEvidence, kind: &SumKind) -> Vec<Certificate> {
    if !matches!(kind, SumKind::Symmetric) {
        return Vec::new();
    }
    // Symmetry check: exact for polynomials, sampled otherwise.
    let (symmetric, sym_detail, sym_exact) = if let Some(p) = spec.as_polynomial() {
        let reflected = p.compose_affine(&rat_int(-1), &rat_int(1));
        (
            p == reflected,
            "exact comparison of f(x) and f(1-x)".to_string(),
            true,
        )
    } else {
        let m = DEFAULT_PROBE_GRID;
        let tol = spec.default_tolerance();
        let mut worst = 0.0f64;
        for i in 0..m {
            let x = i as f64 / (m as f64 - 1.0);
            let (Ok(a), Ok(b)) = (spec.eval(x), spec.eval(1.0 - x)) else {
                return Vec::new();
            };
            worst = worst.max((a - b).abs());
        }
        (
            worst <= tol,
            format!("max |f(x) − f(1−x)| = {worst:.3e} over {m} points"),
            false,
        )
    };
    if !symmetric {
        return Vec::new();
    }
    let r = &shape.report;
    let soundness = soundness_of(sym_exact && shape.exact);
    let mut out = Vec::new();
    let mut emit = |f_concave: bool| {
        let direction = if f_concave {
            CertDirection::Increasing
        } else {
            CertDirection::Decreasing
        };
        out.push(Certificate::new(
            kind,
            direction,
            "sym",
            vec![
                Hypothesis::new("f symmetric about 1/2", true, sym_detail.clone()),
                Hypothesis::new(
                    if f_concave {
                        "f concave on [0,1]"
                    } else {
                        "f convex on [0,1]"
                    },
                    true,
                    shape.probe_detail(),
                ),
            ],
            soundness,
            "symmetric sums of a symmetric single-curvature function",
        ));
    };
    if r.concave {
        emit(true);
    }
    if r.convex {
        emit(false);
    }
    out
}

/// Symmetrization rule: with 𝓕 the symmetrization of f, each of the four
/// combinations of (𝓕 concave/convex) with a boundary comparison against
/// f(1/2) pins down both endpoint sums:
/// concave 𝓕, f(0) ≥ f(1/2) → left decreasing, right increasing;
/// concave 𝓕, f(1) ≥ f(1/2) → left increasing, right decreasing;
/// convex 𝓕, f(1) ≤ f(1/2) → left decreasing, right increasing;
/// convex 𝓕, f(0) ≤ f(1/2) → left increasing, right decreasing.
pub fn rule_symmetrization(spec: &FunctionSpec, kind: &SumKind) -> Vec<Certificate> {
    if !matches!(kind, SumKind::Left | SumKind::Right) {
        return Vec::new();
    }
    let symmetrized = spec.symmetrize();
    let Ok(fshape) = shape_evidence(&symmetrized) else {
        return Vec::new();
    };
    let Ok(boundary) = Boundary::of(spec) else {
        return Vec::new();
    };
    let r = &fshape.report;
    let boundary_detail = |i: usize, rel: &str, j: usize| {
        format!(
            "{} {} {} ({})",
            boundary.describe(i),
            rel,
            boundary.describe(j),
            if boundary.is_exact() {
                "exact"
            } else {
                "tolerance 1e-12"
            }
        )
    };
    let soundness = soundness_of(fshape.exact && boundary.is_exact());
    let mut out = Vec::new();
    // (𝓕 concave?, boundary index, ≥?, verdict for Left)
    let cases: [(bool, usize, bool, CertDirection); 4] = [
        (true, 0, true, CertDirection::Decreasing),
        (true, 2, true, CertDirection::Increasing),
        (false, 2, false, CertDirection::Decreasing),
        (false, 0, false, CertDirection::Increasing),
    ];
    for (want_concave, idx, want_ge, left_dir) in cases {
        let curvature_ok = if want_concave { r.concave } else { r.convex };
        if !curvature_ok {
            continue;
        }
        let cmp_ok = if want_ge {
            boundary.ge(idx, 1)
        } else {
            boundary.ge(1, idx)
        };
        if !cmp_ok {
            continue;
        }
        let direction = match kind {
            SumKind::Left => left_dir,
            _ => match left_dir {
                CertDirection::Decreasing => CertDirection::Increasing,
                _ => CertDirection::Decreasing,
            },
        };
        let companion = match direction {
            CertDirection::Increasing => "decreasing",
            _ => "increasing",
        };
        let other = match kind {
            SumKind::Left => "right",
            _ => "left",
        };
        let rel = if want_ge { "≥" } else { "≤" };
        let point = ["f(0)", "f(1/2)", "f(1)"][idx];
        out.push(Certificate::new(
            kind,
            direction,
            "symmetrization",
            vec![
                Hypothesis::new(
                    if want_concave {
                        "symmetrization of f concave"
                    } else {
                        "symmetrization of f convex"
                    },
                    true,
                    fshape.probe_detail(),
                ),
                Hypothesis::new(
                    format!("{point} {rel} f(1/2)"),
                    true,
                    boundary_detail(idx, rel, 1),
                ),
            ],
            soundness,
            format!("companion verdict: {other} sums {companion}"),
        ));
    }
    out
}

/// Fourier-coefficient rule for specs with explicit cosine data: if the
/// coefficients a_k are decreasing (checked to a horizon) then the right
/// sums decrease when f(1) ≥ f(0) and the left sums decrease when
/// f(0) ≥ f(1); if the a_k are increasing, the mirrored verdicts hold.
pub fn rule_fourier(spec: &FourierSpec, kind: &SumKind, horizon: u64) -> Vec<Certificate> {
    if !matches!(kind, SumKind::Left | SumKind::Right) {
        return Vec::new();
    }
    let provider = spec.provider();
    let coeffs: Vec<f64> = (1..=horizon).map(|k| provider.ak(k)).collect();
    let decreasing = first_decrease_violation(&coeffs).is_none();
    let increasing = first_increase_violation(&coeffs).is_none();
    if !decreasing && !increasing {
        return Vec::new();
    }
    let (f0, f1) = spec.boundary_values();
    let f1_ge_f0 = f1 >= f0 - BOUNDARY_TOLERANCE;
    let f0_ge_f1 = f0 >= f1 - BOUNDARY_TOLERANCE;
    let mut out = Vec::new();
    let mut emit = |coeff_decreasing: bool, direction: CertDirection, cmp_name: &str| {
        out.push(Certificate::new(
            kind,
            direction,
            "fourier",
            vec![
                Hypothesis::new(
                    if coeff_decreasing {
                        "cosine coefficients decreasing"
                    } else {
                        "cosine coefficients increasing"
                    },
                    true,
                    format!("checked for k ≤ {horizon}"),
                ),
                Hypothesis::new(
                    cmp_name.to_string(),
                    true,
                    format!("f(0) = {f0:.6}, f(1) = {f1:.6}"),
                ),
            ],
            Soundness::Numeric,
            format!("coefficient monotonicity checked to horizon {horizon}"),
        ));
    };
    match kind {
        SumKind::Right => {
            if decreasing && f1_ge_f0 {
                emit(true, CertDirection::Decreasing, "f(1) ≥ f(0)");
            }
            if increasing && f0_ge_f1 {
                emit(false, CertDirection::Increasing, "f(0) ≥ f(1)");
            }
        }
        _ => {
            if decreasing && f0_ge_f1 {
                emit(true, CertDirection::Decreasing, "f(0) ≥ f(1)");
            }
            if increasing && f1_ge_f0 {
                emit(false, CertDirection::Increasing, "f(1) ≥ f(0)");
            }
        }
    }
    out
}

/// Necessary-condition rule (negative certificates): a non-constant
/// increasing f has right sums that are *not* increasing and left sums
/// that are *not* decreasing; a non-constant decreasing f, the reverse.
pub fn rule_necessary(shape: &ShapeEvidence, kind: &SumKind) -> Vec<Certificate> {
    if !matches!(kind, SumKind::Left | SumKind::Right) {
        return Vec::new();
    }
    let r = &shape.report;
    // Constant within tolerance = increasing and decreasing at once.
    let constant = r.increasing && r.decreasing;
    if constant || !r.monotone() {
        return Vec::new();
    }
    let f_increasing = r.increasing;
    let direction = match (kind, f_increasing) {
        (SumKind::Right, true) | (SumKind::Left, false) => CertDirection::NotIncreasing,
        _ => CertDirection::NotDecreasing,
    };
    let hypotheses = vec![
        Hypothesis::new(
            if f_increasing {
                "f increasing on [0,1]"
            } else {
                "f decreasing on [0,1]"
            },
            true,
            shape.probe_detail(),
        ),
        Hypothesis::new("f non-constant", true, shape.probe_detail()),
    ];
    vec![Certificate::new(
        kind,
        direction,
        "necessary",
        hypotheses,
        soundness_of(shape.exact),
        "negative certificate: the direction is excluded, no claim about the other",
    )]
}

/// Runs every rule applicable to `kind` and accumulates the certificates
/// (possibly none). Never fabricates a verdict: each certificate traces
/// to one satisfied rule.
pub fn certify(spec: &FunctionSpec, kind: &SumKind) -> Vec<Certificate> {
    certify_with_horizon(spec, kind, DEFAULT_HORIZON)
}

/// [`certify`] with an explicit horizon for sequence-condition checks.
pub fn certify_with_horizon(
    spec: &FunctionSpec,
    kind: &SumKind,
    horizon: u64,
) -> Vec<Certificate> {
    let Ok(shape) = shape_evidence(spec) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    match kind {
        SumKind::Left | SumKind::Right => {
            out.extend(rule_fejer(&shape, kind));
            if let Ok(Some(c)) = locate_inflection(spec) {
                out.extend(rule_borwein_inflection(spec, &shape, c, kind));
            }
            out.extend(rule_borwein_shifted(spec, &shape, kind));
            out.extend(rule_symmetrization(spec, kind));
            if let FunctionSpec::Fourier(fs) = spec {
                out.extend(rule_fourier(fs, kind, horizon));
            }
            out.extend(rule_necessary(&shape, kind));
        }
        SumKind::Shifted { .. } => out.extend(rule_qi_shifted(&shape, kind)),
        SumKind::GeneralizedNodes { .. } => {
            out.extend(rule_qi_guo_nodes(spec, &shape, kind, horizon))
        }
        SumKind::Central | SumKind::Bilateral | SumKind::Midpoint | SumKind::Trapezium => {
            if let Ok(d) = derivative_evidence(spec) {
                out.extend(rule_bennett(&shape, &d, kind));
            }
        }
        SumKind::Symmetric => out.extend(rule_sym(spec, &shape, kind)),
    }
    out
}

/// Indices of a contradicting pair (positive verdict vs. exclusion of
/// the same direction on the same sum kind), if any. Certificates from
/// the shifted-sequence rule describe `S_n − Δ/n` rather than the raw
/// sums, so they are never compared against raw-sum certificates.
pub fn find_contradiction(certs: &[Certificate]) -> Option<(usize, usize)> {
    for (i, a) in certs.iter().enumerate() {
        if a.rule_id == "borwein_shifted" {
            continue;
        }
        for (j, b) in certs.iter().enumerate().skip(i + 1) {
            if b.rule_id == "borwein_shifted" {
                continue;
            }
            if a.sum_kind == b.sum_kind && a.direction.contradicts(b.direction) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Scans the sequence certified by a *positive* certificate for
/// violations: returns the step index n of the first adjacent pair that
/// moves against the certified direction by more than `tol`, or `None`
/// when the scan is clean. Shifted-sequence certificates are audited on
/// the shifted sequence.
pub fn audit_certificate(
    spec: &FunctionSpec,
    cert: &Certificate,
    n_max: u32,
    tol: f64,
) -> Result<Option<u32>> {
    use std::str::FromStr;
    if !cert.direction.is_positive() {
        return Ok(None);
    }
    let kind = SumKind::from_str(&cert.sum_kind)?;
    let mut values = crate::sums::sum_sequence(spec, &kind, kind.min_n(), n_max)?;
    if cert.rule_id == "borwein_shifted" {
        let maximize = cert.direction == CertDirection::Increasing;
        let (_, delta) = borwein_shift(spec, &kind, maximize)?;
        for (n, v) in values.iter_mut() {
            *v -= delta / f64::from(*n);
        }
    }
    for w in values.windows(2) {
        let (n, a) = w[0];
        let (_, b) = w[1];
        let bad = match cert.direction {
            CertDirection::Increasing => b < a - tol,
            CertDirection::Decreasing => b > a + tol,
            _ => false,
        };
        if bad {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// The built-in corpus exercised by the certifier test-bench: a spread
/// of polynomial shapes, the f_b family at representative parameters,
/// and the explicit-coefficient builtins.
pub fn builtin_corpus() -> Vec<FunctionSpec> {
    use crate::polyexact::RationalPoly;
    let poly = |coeffs: &[(i64, i64)]| {
        FunctionSpec::Polynomial(RationalPoly::new(
            coeffs.iter().map(|&(n, d)| rat(n, d)).collect(),
        ))
    };
    vec![
        poly(&[(1, 1)]),                                  // constant 1
        poly(&[(0, 1), (1, 1)]),                          // x
        poly(&[(1, 1), (-1, 1)]),                         // 1 - x
        poly(&[(0, 1), (0, 1), (1, 1)]),                  // x²
        poly(&[(0, 1), (1, 1), (-1, 1)]),                 // x(1-x)
        poly(&[(1, 4), (-1, 1), (1, 1)]),                 // (x-1/2)²
        poly(&[(1, 1), (-6, 1), (12, 1), (-8, 1)]),       // (1-2x)³
        poly(&[(-1, 1), (6, 1), (-12, 1), (8, 1)]),       // (2x-1)³
        FunctionSpec::fb(0.0).expect("valid parameter"),
        FunctionSpec::fb(1.0).expect("valid parameter"),
        FunctionSpec::fb(1.6).expect("valid parameter"),
        FunctionSpec::fb(-1.0).expect("valid parameter"),
        FunctionSpec::Fourier(FourierSpec::ExpCos),
        FunctionSpec::Fourier(FourierSpec::Cosine(1)),
        FunctionSpec::Fourier(FourierSpec::Constant(2.0)),
    ]
}

/// Checks, for one f_b parameter, that the folded construction
/// g = 0 on [0,1/2], g = 2𝓕 − 2f(1/2) on [1/2,1] (with 𝓕 the
/// symmetrization of f) is concave-and-decreasing exactly when 𝓕 is
/// concave, both sides judged by grid probes.
pub fn folded_equivalence_holds(b: f64) -> Result<bool> {
    use std::sync::Arc;
    let f = FunctionSpec::fb(b)?;
    let symmetrized = f.symmetrize();
    let fshape = symmetrized.probe_shape(DEFAULT_PROBE_GRID, DEFAULT_PROBE_TOLERANCE)?;
    let f_half = f.eval(0.5)?;
    let inner = symmetrized.clone();
    let g = FunctionSpec::BlackBox(crate::funcspec::BlackBoxFn::new(
        format!("folded_fb_{b}"),
        Arc::new(move |x: f64| {
            if x <= 0.5 {
                0.0
            } else {
                2.0 * inner.eval(x).unwrap_or(f64::NAN) - 2.0 * f_half
            }
        }),
    ));
    let gshape = g.probe_shape(DEFAULT_PROBE_GRID, DEFAULT_PROBE_TOLERANCE)?;
    Ok((gshape.concave && gshape.decreasing) == fshape.concave)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::RationalPoly;
    use crate::sums::{sum_sequence, NodeSequence};
    use std::str::FromStr;

    fn poly(coeffs: &[(i64, i64)]) -> FunctionSpec {
        FunctionSpec::Polynomial(RationalPoly::new(
            coeffs.iter().map(|&(n, d)| rat(n, d)).collect(),
        ))
    }

    fn directions(certs: &[Certificate], rule: &str) -> Vec<CertDirection> {
        certs
            .iter()
            .filter(|c| c.rule_id == rule)
            .map(|c| c.direction)
            .collect()
    }

    #[test]
    fn fejer_four_cases() {
        let x = poly(&[(0, 1), (1, 1)]);
        let left = certify(&x, &SumKind::Left);
        assert_eq!(directions(&left, "fejer"), vec![CertDirection::Increasing]);
        let right = certify(&x, &SumKind::Right);
        assert_eq!(directions(&right, "fejer"), vec![CertDirection::Decreasing]);

        let one_minus_x = poly(&[(1, 1), (-1, 1)]);
        let left = certify(&one_minus_x, &SumKind::Left);
        assert_eq!(directions(&left, "fejer"), vec![CertDirection::Decreasing]);
        let right = certify(&one_minus_x, &SumKind::Right);
        assert_eq!(directions(&right, "fejer"), vec![CertDirection::Increasing]);
    }

    #[test]
    fn fejer_requires_monotonicity_and_single_curvature() {
        // x(1-x) is not monotone.
        let bump = poly(&[(0, 1), (1, 1), (-1, 1)]);
        assert!(directions(&certify(&bump, &SumKind::Left), "fejer").is_empty());
        // (1-2x)³ is monotone but has an inflection.
        let cubic = poly(&[(1, 1), (-6, 1), (12, 1), (-8, 1)]);
        assert!(directions(&certify(&cubic, &SumKind::Left), "fejer").is_empty());
    }

    #[test]
    fn fejer_certificates_for_polynomials_are_exact() {
        let x = poly(&[(0, 1), (1, 1)]);
        let certs = certify(&x, &SumKind::Left);
        let fejer: Vec<_> = certs.iter().filter(|c| c.rule_id == "fejer").collect();
        assert_eq!(fejer[0].soundness, Soundness::Exact);
        // A black-box version of the same function only gets numeric.
        let bb = FunctionSpec::BlackBox(crate::funcspec::BlackBoxFn::new(
            "identity",
            std::sync::Arc::new(|x: f64| x),
        ));
        let certs = certify(&bb, &SumKind::Left);
        let fejer: Vec<_> = certs.iter().filter(|c| c.rule_id == "fejer").collect();
        assert_eq!(fejer[0].soundness, Soundness::Numeric);
    }

    #[test]
    fn shifted_rule_directions() {
        let x = poly(&[(0, 1), (1, 1)]); // increasing, linear
        for k in 0..3u32 {
            let kind = SumKind::Shifted {
                k,
                side: ShiftSide::Right,
            };
            let dirs = directions(&certify(&x, &kind), "qi_shifted");
            assert!(dirs.contains(&CertDirection::Decreasing), "k = {k}");
        }
        // Shift k = 0 on the right coincides with the plain right sums.
        let right = directions(&certify(&x, &SumKind::Right), "fejer");
        assert!(right.contains(&CertDirection::Decreasing));

        // Decreasing concave: 1 - x².
        let f = poly(&[(1, 1), (0, 1), (-1, 1)]);
        let kind = SumKind::Shifted {
            k: 1,
            side: ShiftSide::Left,
        };
        let dirs = directions(&certify(&f, &kind), "qi_shifted");
        assert_eq!(dirs, vec![CertDirection::Decreasing]);
    }

    #[test]
    fn node_rule_identity_nodes_convex() {
        // x² is increasing, convex, nonnegative; with a_k = k the ratio
        // sequence kA_k = k/(k+1) increases, so right/per-n sums decrease.
        let f = poly(&[(0, 1), (0, 1), (1, 1)]);
        let kind = SumKind::GeneralizedNodes {
            nodes: NodeSequence::Identity,
            weight: NodeWeight::PerN,
            side: NodeSide::Right,
        };
        let dirs = directions(&certify(&f, &kind), "qi_guo_nodes");
        assert_eq!(dirs, vec![CertDirection::Decreasing]);
        // And the verdict is numerically sound on a short scan.
        let seq = sum_sequence(&f, &kind, 1, 60).unwrap();
        for w in seq.windows(2) {
            assert!(w[1].1 <= w[0].1 + 1e-12);
        }
    }

    #[test]
    fn node_rule_square_nodes_concave_branch_does_not_fire() {
        // For a_k = k² the sequence kB_k = (2k+1)/k decreases, so the
        // concave branch of the right/per-n item must not fire.
        let concave_increasing = poly(&[(0, 1), (2, 1), (-1, 1)]); // 2x - x²
        let kind = SumKind::GeneralizedNodes {
            nodes: NodeSequence::Squares,
            weight: NodeWeight::PerN,
            side: NodeSide::Right,
        };
        assert!(directions(&certify(&concave_increasing, &kind), "qi_guo_nodes").is_empty());
        // Direct computation confirms kB_k decreases.
        let kb = |k: f64| (2.0 * k + 1.0) / k;
        assert!(kb(1.0) > kb(2.0) && kb(2.0) > kb(3.0));
    }

    #[test]
    fn node_rule_per_an_branches() {
        let f = poly(&[(0, 1), (0, 1), (1, 1)]); // x²: nonneg, convex, increasing
        let right = SumKind::GeneralizedNodes {
            nodes: NodeSequence::Squares,
            weight: NodeWeight::PerAn,
            side: NodeSide::Right,
        };
        let dirs = directions(&certify(&f, &right), "qi_guo_nodes");
        assert_eq!(dirs, vec![CertDirection::Decreasing]);
        let seq = sum_sequence(&f, &right, 1, 60).unwrap();
        for w in seq.windows(2) {
            assert!(w[1].1 <= w[0].1 + 1e-12, "at n = {}", w[0].0);
        }

        // Identity nodes, left/per-an with convex f: a_{k+1}B_k = (k+1)/k
        // decreases, so the rule fires with verdict increasing.
        let left = SumKind::GeneralizedNodes {
            nodes: NodeSequence::Identity,
            weight: NodeWeight::PerAn,
            side: NodeSide::Left,
        };
        let dirs = directions(&certify(&f, &left), "qi_guo_nodes");
        assert_eq!(dirs, vec![CertDirection::Increasing]);
    }

    #[test]
    fn bennett_directions_for_square() {
        let f = poly(&[(0, 1), (0, 1), (1, 1)]); // x², convex; f' linear
        let cases = [
            (SumKind::Central, CertDirection::Increasing),
            (SumKind::Bilateral, CertDirection::Decreasing),
            (SumKind::Midpoint, CertDirection::Increasing),
            (SumKind::Trapezium, CertDirection::Decreasing),
        ];
        for (kind, expected) in cases {
            let dirs = directions(&certify(&f, &kind), "bennett");
            assert_eq!(dirs, vec![expected], "kind {kind}");
            let certs = certify(&f, &kind);
            assert!(certs.iter().all(|c| c.soundness == Soundness::Exact));
        }
    }

    #[test]
    fn bennett_linear_fires_everywhere() {
        let f = poly(&[(0, 1), (1, 1)]);
        for kind in [
            SumKind::Central,
            SumKind::Bilateral,
            SumKind::Midpoint,
            SumKind::Trapezium,
        ] {
            let dirs = directions(&certify(&f, &kind), "bennett");
            assert_eq!(dirs.len(), 2, "kind {kind}");
            assert!(dirs.contains(&CertDirection::Increasing));
            assert!(dirs.contains(&CertDirection::Decreasing));
        }
    }

    #[test]
    fn inflection_rule_cubics() {
        // (1-2x)³: decreasing, convex on [0,1/2], concave on [1/2,1].
        let falling = poly(&[(1, 1), (-6, 1), (12, 1), (-8, 1)]);
        let left = directions(&certify(&falling, &SumKind::Left), "borwein_inflection");
        assert_eq!(left, vec![CertDirection::Decreasing]);
        let right = directions(&certify(&falling, &SumKind::Right), "borwein_inflection");
        assert_eq!(right, vec![CertDirection::Increasing]);

        // (2x-1)³: increasing, concave then convex — the mirror case.
        let rising = poly(&[(-1, 1), (6, 1), (-12, 1), (8, 1)]);
        let left = directions(&certify(&rising, &SumKind::Left), "borwein_inflection");
        assert_eq!(left, vec![CertDirection::Increasing]);
        let right = directions(&certify(&rising, &SumKind::Right), "borwein_inflection");
        assert_eq!(right, vec![CertDirection::Decreasing]);

        // Verify the falling-case verdicts by direct scan.
        for (kind, inc) in [(SumKind::Left, false), (SumKind::Right, true)] {
            let seq = sum_sequence(&falling, &kind, 1, 120).unwrap();
            for w in seq.windows(2) {
                if inc {
                    assert!(w[1].1 >= w[0].1 - 1e-12);
                } else {
                    assert!(w[1].1 <= w[0].1 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn inflection_locator() {
        let falling = poly(&[(1, 1), (-6, 1), (12, 1), (-8, 1)]);
        let c = locate_inflection(&falling).unwrap().unwrap();
        assert!((c - 0.5).abs() < 1e-4, "c = {c}");
        // Single-curvature functions have no sign change.
        let square = poly(&[(0, 1), (0, 1), (1, 1)]);
        assert!(locate_inflection(&square).unwrap().is_none());
    }

    #[test]
    fn borwein_shifted_concave_bump() {
        let bump = poly(&[(0, 1), (1, 1), (-1, 1)]); // x(1-x), max 1/4 at 1/2
        let certs = certify(&bump, &SumKind::Right);
        let shifted: Vec<_> = certs
            .iter()
            .filter(|c| c.rule_id == "borwein_shifted")
            .collect();
        assert_eq!(shifted.len(), 1);
        assert_eq!(shifted[0].direction, CertDirection::Increasing);
        let (c, delta) = borwein_shift(&bump, &SumKind::Right, true).unwrap();
        assert!((c - 0.5).abs() < 1e-9);
        assert!((delta - 0.25).abs() < 1e-12);
        // The shifted sequence really increases.
        let seq = sum_sequence(&bump, &SumKind::Right, 1, 120).unwrap();
        let shifted_vals: Vec<f64> = seq
            .iter()
            .map(|&(n, v)| v - delta / f64::from(n))
            .collect();
        for w in shifted_vals.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
    }

    #[test]
    fn borwein_shifted_convex_and_linear() {
        let valley = poly(&[(1, 4), (-1, 1), (1, 1)]); // (x-1/2)², min 0 at 1/2
        let dirs = directions(&certify(&valley, &SumKind::Right), "borwein_shifted");
        assert_eq!(dirs, vec![CertDirection::Decreasing]);

        // Linear f is both concave and convex: both branches fire, with
        // extremum at opposite endpoints.
        let x = poly(&[(0, 1), (1, 1)]);
        let dirs = directions(&certify(&x, &SumKind::Right), "borwein_shifted");
        assert_eq!(dirs.len(), 2);
        let (_, delta_max) = borwein_shift(&x, &SumKind::Right, true).unwrap();
        let (_, delta_min) = borwein_shift(&x, &SumKind::Right, false).unwrap();
        assert!((delta_max - 1.0).abs() < 1e-12);
        assert!(delta_min.abs() < 1e-12);
    }

    #[test]
    fn symmetric_rule_examples() {
        let bump = poly(&[(0, 1), (1, 1), (-1, 1)]); // concave, symmetric
        let dirs = directions(&certify(&bump, &SumKind::Symmetric), "sym");
        assert_eq!(dirs, vec![CertDirection::Increasing]);

        let valley = poly(&[(1, 4), (-1, 1), (1, 1)]); // convex, symmetric
        let dirs = directions(&certify(&valley, &SumKind::Symmetric), "sym");
        assert_eq!(dirs, vec![CertDirection::Decreasing]);

        let asym = poly(&[(0, 1), (1, 1)]);
        assert!(directions(&certify(&asym, &SumKind::Symmetric), "sym").is_empty());

        // f_1 = 1/(1 - x + x²) is symmetric about 1/2 and concave.
        let f1 = FunctionSpec::fb(1.0).unwrap();
        let dirs = directions(&certify(&f1, &SumKind::Symmetric), "sym");
        assert_eq!(dirs, vec![CertDirection::Increasing]);
    }

    #[test]
    fn symmetrization_rule_fb_cases() {
        // f_0 = 1/(1+x²): symmetrization concave, f(0) = 1 ≥ f(1/2) = 4/5.
        let f0 = FunctionSpec::fb(0.0).unwrap();
        let left = directions(&certify(&f0, &SumKind::Left), "symmetrization");
        assert_eq!(left, vec![CertDirection::Decreasing]);
        let right = directions(&certify(&f0, &SumKind::Right), "symmetrization");
        assert_eq!(right, vec![CertDirection::Increasing]);

        // f_{1.6}: symmetrization concave, f(1/2) = 20/9 ≤ f(1) = 5/2.
        let f16 = FunctionSpec::fb(1.6).unwrap();
        let left = directions(&certify(&f16, &SumKind::Left), "symmetrization");
        assert_eq!(left, vec![CertDirection::Increasing]);
        let right = directions(&certify(&f16, &SumKind::Right), "symmetrization");
        assert_eq!(right, vec![CertDirection::Decreasing]);
    }

    #[test]
    fn symmetrization_rule_exact_for_polynomials() {
        let f = poly(&[(1, 1), (-1, 1)]); // 1 - x, symmetrization = 1/2
        let certs = certify(&f, &SumKind::Left);
        let sym: Vec<_> = certs
            .iter()
            .filter(|c| c.rule_id == "symmetrization")
            .collect();
        // Constant symmetrization is both convex and concave; f(0) ≥ f(1/2)
        // and f(1) ≤ f(1/2) both hold: left decreasing via two cases.
        assert!(!sym.is_empty());
        assert!(sym.iter().all(|c| c.soundness == Soundness::Exact));
        assert!(sym
            .iter()
            .all(|c| c.direction == CertDirection::Decreasing));
    }

    #[test]
    fn symmetrization_neither_curvature_gives_nothing() {
        // x²(1-x)² is its own symmetrization and changes curvature.
        let f = poly(&[(0, 1), (0, 1), (1, 1), (-2, 1), (1, 1)]);
        assert!(directions(&certify(&f, &SumKind::Left), "symmetrization").is_empty());
    }

    #[test]
    fn fourier_rule_expcos_both_decreasing() {
        let spec = FunctionSpec::Fourier(FourierSpec::ExpCos);
        let left = directions(&certify(&spec, &SumKind::Left), "fourier");
        assert_eq!(left, vec![CertDirection::Decreasing]);
        let right = directions(&certify(&spec, &SumKind::Right), "fourier");
        assert_eq!(right, vec![CertDirection::Decreasing]);
    }

    #[test]
    fn fourier_rule_constant_fires_all_four() {
        let spec = FunctionSpec::Fourier(FourierSpec::Constant(2.0));
        let left = directions(&certify(&spec, &SumKind::Left), "fourier");
        assert_eq!(left.len(), 2);
        let right = directions(&certify(&spec, &SumKind::Right), "fourier");
        assert_eq!(right.len(), 2);
    }

    #[test]
    fn necessary_rule_exclusions() {
        let x = poly(&[(0, 1), (1, 1)]);
        let right = directions(&certify(&x, &SumKind::Right), "necessary");
        assert_eq!(right, vec![CertDirection::NotIncreasing]);
        let left = directions(&certify(&x, &SumKind::Left), "necessary");
        assert_eq!(left, vec![CertDirection::NotDecreasing]);

        let falling = poly(&[(1, 1), (-1, 1)]);
        let right = directions(&certify(&falling, &SumKind::Right), "necessary");
        assert_eq!(right, vec![CertDirection::NotDecreasing]);
        let left = directions(&certify(&falling, &SumKind::Left), "necessary");
        assert_eq!(left, vec![CertDirection::NotIncreasing]);

        let constant = poly(&[(3, 1)]);
        assert!(directions(&certify(&constant, &SumKind::Right), "necessary").is_empty());
    }

    #[test]
    fn corpus_certificates_are_consistent() {
        for spec in builtin_corpus() {
            for kind in [SumKind::Left, SumKind::Right] {
                let certs = certify(&spec, &kind);
                assert!(
                    find_contradiction(&certs).is_none(),
                    "contradiction for {spec} / {kind}"
                );
            }
        }
    }

    #[test]
    fn corpus_positive_certificates_survive_short_audit() {
        // Full-depth audit (n ≤ 500) runs in the acceptance suite; this
        // is a fast smoke version.
        for spec in builtin_corpus() {
            for kind in [
                SumKind::Left,
                SumKind::Right,
                SumKind::Central,
                SumKind::Bilateral,
                SumKind::Midpoint,
                SumKind::Trapezium,
                SumKind::Symmetric,
            ] {
                for cert in certify(&spec, &kind) {
                    let bad = audit_certificate(&spec, &cert, 80, 1e-10).unwrap();
                    assert_eq!(
                        bad, None,
                        "violation for {spec} / {kind} via {}",
                        cert.rule_id
                    );
                }
            }
        }
    }

    #[test]
    fn single_sum_symmetrization_verdicts_come_in_pairs() {
        // Whenever the symmetrization rule certifies one endpoint sum,
        // it also certifies the companion sum in the opposite direction.
        for spec in builtin_corpus() {
            let left = certify(&spec, &SumKind::Left);
            let right = certify(&spec, &SumKind::Right);
            for c in left.iter().filter(|c| c.rule_id == "symmetrization") {
                let mirrored = match c.direction {
                    CertDirection::Increasing => CertDirection::Decreasing,
                    _ => CertDirection::Increasing,
                };
                assert!(
                    right
                        .iter()
                        .any(|d| d.rule_id == "symmetrization" && d.direction == mirrored),
                    "missing companion for {spec}"
                );
            }
        }
    }

    #[test]
    fn folded_construction_tracks_symmetrization_concavity() {
        for b in [-1.0, 0.0, 0.5, 1.0] {
            assert!(folded_equivalence_holds(b).unwrap(), "b = {b}");
        }
    }

    #[test]
    fn certificate_json_schema() {
        let x = poly(&[(0, 1), (1, 1)]);
        let certs = certify(&x, &SumKind::Left);
        let json = serde_json::to_value(&certs[0]).unwrap();
        for key in [
            "sum_kind",
            "direction",
            "rule_id",
            "hypotheses",
            "soundness",
            "notes",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["sum_kind"], "left");
        assert_eq!(json["direction"], "increasing");
        assert!(json["hypotheses"][0].get("name").is_some());
        assert!(json["hypotheses"][0].get("outcome").is_some());
        assert!(json["hypotheses"][0].get("detail").is_some());
        // The token round-trips through the kind parser.
        assert!(SumKind::from_str(json["sum_kind"].as_str().unwrap()).is_ok());
    }
}
