//! Riemann-sum families on [0,1] and monotonicity scanning.
//!
//! Nine sum families are supported, all as sequences indexed by the
//! partition count `n`:
//!
//! ```text
//! Left       L_n = (1/n)     Σ_{k=0}^{n-1} f(k/n)
//! Right      R_n = (1/n)     Σ_{k=1}^{n}   f(k/n)
//! Central    C_n = (1/(n-1)) Σ_{k=1}^{n-1} f(k/n)            (n ≥ 2)
//! Bilateral  B_n = (1/(n+1)) Σ_{k=0}^{n}   f(k/n)
//! Midpoint   M_n = (1/n)     Σ_{k=1}^{n}   f((2k-1)/(2n))
//! Trapezium  T_n = (f(0)+f(1))/(2n) + (1/n) Σ_{k=1}^{n-1} f(k/n)
//! Symmetric  λ_n = (1/n)     Σ_{k=0}^{n}   f(k/n)  -  f(1/2)/n
//! Shifted(k) right: (1/n) Σ_{i=k+1}^{n+k} f(i/(n+k));  left: (1/n) Σ_{i=0}^{n-1} f(i/(n+k))
//! GeneralizedNodes(φ): nodes a_k = φ(k), a_0 = 0; sum of f(a_k/a_n) over
//!     k = 1..n (right) or 0..n-1 (left), weighted by 1/n or 1/a_n
//! ```
//!
//! Whether such a sequence increases or decreases in `n` is the central
//! question everywhere in this crate; [`monotonicity_scan`] answers it
//! empirically for a computed prefix, with explicit violation witnesses.
//! Every evaluation uses compensated (Neumaier) summation so that scans
//! to large `n` do not drown genuine `O(1/n²)` monotonicity signals in
//! rounding noise.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::funcspec::FunctionSpec;
use crate::{Error, Result};

/// Endpoint choice for shifted sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftSide {
    Left,
    Right,
}

/// Node weighting for generalized-node sums: divide by `n` or by `a_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeWeight {
    PerN,
    PerAn,
}

/// Endpoint choice for generalized-node sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeSide {
    Left,
    Right,
}

/// Built-in node sequences `a_k = φ(k)` with `a_0 = 0`; both are
/// strictly positive and increasing for `k ≥ 1` as the sum definition
/// requires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeSequence {
    /// `a_k = k` (recovers the uniform partition).
    Identity,
    /// `a_k = k²`.
    Squares,
}

impl NodeSequence {
    /// `a_k`, exact in `f64` for every `k` this crate scans.
    pub fn value(&self, k: u64) -> f64 {
        match self {
            NodeSequence::Identity => k as f64,
            NodeSequence::Squares => (k * k) as f64,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NodeSequence::Identity => "k",
            NodeSequence::Squares => "k2",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "k" => Ok(NodeSequence::Identity),
            "k2" => Ok(NodeSequence::Squares),
            other => Err(Error::Parse(format!(
                "unknown node sequence `{other}` (builtins: k, k2)"
            ))),
        }
    }
}

/// Which Riemann-sum family to evaluate. See the module docs for the
/// defining formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumKind {
    Left,
    Right,
    Central,
    Bilateral,
    Midpoint,
    Trapezium,
    Symmetric,
    Shifted {
        k: u32,
        side: ShiftSide,
    },
    GeneralizedNodes {
        nodes: NodeSequence,
        weight: NodeWeight,
        side: NodeSide,
    },
}

impl SumKind {
    /// Smallest index at which the sequence is defined (2 for central
    /// sums, 1 otherwise).
    pub fn min_n(&self) -> u32 {
        match self {
            SumKind::Central => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumKind::Left => write!(f, "left"),
            SumKind::Right => write!(f, "right"),
            SumKind::Central => write!(f, "central"),
            SumKind::Bilateral => write!(f, "bilateral"),
            SumKind::Midpoint => write!(f, "midpoint"),
            SumKind::Trapezium => write!(f, "trapezium"),
            SumKind::Symmetric => write!(f, "symmetric"),
            SumKind::Shifted { k, side } => {
                let side = match side {
                    ShiftSide::Left => "left",
                    ShiftSide::Right => "right",
                };
                write!(f, "shifted:{k}:{side}")
            }
            SumKind::GeneralizedNodes {
                nodes,
                weight,
                side,
            } => {
                let weight = match weight {
                    NodeWeight::PerN => "per-n",
                    NodeWeight::PerAn => "per-an",
                };
                let side = match side {
                    NodeSide::Left => "left",
                    NodeSide::Right => "right",
                };
                write!(f, "nodes:{}:{weight}:{side}", nodes.name())
            }
        }
    }
}

impl FromStr for SumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "left" => return Ok(SumKind::Left),
            "right" => return Ok(SumKind::Right),
            "central" => return Ok(SumKind::Central),
            "bilateral" => return Ok(SumKind::Bilateral),
            "midpoint" => return Ok(SumKind::Midpoint),
            "trapezium" => return Ok(SumKind::Trapezium),
            "symmetric" => return Ok(SumKind::Symmetric),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("shifted:") {
            let (k, side) = rest.split_once(':').ok_or_else(|| {
                Error::Parse(format!("expected shifted:<k>:<side>, got `{t}`"))
            })?;
            let k: u32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("invalid shift count `{k}`")))?;
            let side = match side {
                "left" => ShiftSide::Left,
                "right" => ShiftSide::Right,
                other => {
                    return Err(Error::Parse(format!(
                        "invalid shift side `{other}` (left or right)"
                    )))
                }
            };
            return Ok(SumKind::Shifted { k, side });
        }
        if let Some(rest) = t.strip_prefix("nodes:") {
            let parts: Vec<&str> = rest.split(':').collect();
            let [nodes, weight, side] = parts.as_slice() else {
                return Err(Error::Parse(format!(
                    "expected nodes:<builtin>:<weight>:<side>, got `{t}`"
                )));
            };
            let nodes = NodeSequence::parse(nodes)?;
            let weight = match *weight {
                "per-n" => NodeWeight::PerN,
                "per-an" => NodeWeight::PerAn,
                other => {
                    return Err(Error::Parse(format!(
                        "invalid node weight `{other}` (per-n or per-an)"
                    )))
                }
            };
            let side = match *side {
                "left" => NodeSide::Left,
                "right" => NodeSide::Right,
                other => {
                    return Err(Error::Parse(format!(
                        "invalid node side `{other}` (left or right)"
                    )))
                }
            };
            return Ok(SumKind::GeneralizedNodes {
                nodes,
                weight,
                side,
            });
        }
        Err(Error::Parse(format!("unknown sum kind `{t}`")))
    }
}

/// Neumaier (Kahan–Babuška) compensated accumulator: running error of a
/// length-m sum is O(ε) + O(mε²) instead of O(mε), independent of term
/// cancellation order.
#[derive(Clone, Copy, Debug, Default)]
pub struct Compensated {
    sum: f64,
    compensation: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Compensated::default()
    }

    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - t) + term;
        } else {
            self.compensation += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Evaluates one Riemann sum. `n ≥ 1` everywhere; `n ≥ 2` for central
/// sums.
pub fn sum_value(spec: &FunctionSpec, kind: &SumKind, n: u32) -> Result<f64> {
    if n < kind.min_n() {
        return Err(Error::Domain(format!(
            "`{kind}` sums are defined for n ≥ {}, got n = {n}",
            kind.min_n()
        )));
    }
    let nf = f64::from(n);
    let mut acc = Compensated::new();
    match kind {
        SumKind::Left => {
            for k in 0..n {
                acc.add(spec.eval(f64::from(k) / nf)?);
            }
            Ok(acc.value() / nf)
        }
        SumKind::Right => {
            for k in 1..=n {
                acc.add(spec.eval(f64::from(k) / nf)?);
            }
            Ok(acc.value() / nf)
        }
        SumKind::Central => {
            for k in 1..n {
                acc.add(spec.eval(f64::from(k) / nf)?);
            }
            Ok(acc.value() / f64::from(n - 1))
        }
        SumKind::Bilateral => {
            for k in 0..=n {
                acc.add(spec.eval(f64::from(k) / nf)?);
            }
            Ok(acc.value() / f64::from(n + 1))
        }
        SumKind::Midpoint => {
            let two_n = 2.0 * nf;
            for k in 1..=n {
                acc.add(spec.eval((2.0 * f64::from(k) - 1.0) / two_n)?);
            }
            Ok(acc.value() / nf)
        }
        SumKind::Trapezium => {
            acc.add(0.5 * (spec.eval(0.0)? + spec.eval(1.0)?));
            for k in 1..n {
                acc.add(spec.eval(f64::from(k) / nf)?);
            }
            Ok(acc.value() / nf)
        }
        SumKind::Symmetric => {
            for k in 0..=n {
                acc.add(spec.eval(f64::from(k) / nf)?);
            }
            acc.add(-spec.eval(0.5)?);
            Ok(acc.value() / nf)
        }
        SumKind::Shifted { k, side } => {
            let m = u64::from(n) + u64::from(*k);
            let mf = m as f64;
            match side {
                ShiftSide::Right => {
                    for i in u64::from(*k) + 1..=m {
                        acc.add(spec.eval(i as f64 / mf)?);
                    }
                }
                ShiftSide::Left => {
                    for i in 0..u64::from(n) {
                        acc.add(spec.eval(i as f64 / mf)?);
                    }
                }
            }
            Ok(acc.value() / nf)
        }
        SumKind::GeneralizedNodes {
            nodes,
            weight,
            side,
        } => {
            let an = nodes.value(u64::from(n));
            let range = match side {
                NodeSide::Right => 1..=u64::from(n),
                NodeSide::Left => 0..=u64::from(n) - 1,
            };
            for k in range {
                acc.add(spec.eval(nodes.value(k) / an)?);
            }
            match weight {
                NodeWeight::PerN => Ok(acc.value() / nf),
                NodeWeight::PerAn => Ok(acc.value() / an),
            }
        }
    }
}

/// Values of [`sum_value`] for `n = n_from..=n_to`, as `(n, value)`
/// pairs. Central sums skip `n = 1`.
pub fn sum_sequence(
    spec: &FunctionSpec,
    kind: &SumKind,
    n_from: u32,
    n_to: u32,
) -> Result<Vec<(u32, f64)>> {
    if n_from < 1 || n_from > n_to {
        return Err(Error::Domain(format!(
            "need 1 ≤ nFrom ≤ nTo, got {n_from}..{n_to}"
        )));
    }
    let start = n_from.max(kind.min_n());
    let mut out = Vec::new();
    for n in start..=n_to {
        out.push((n, sum_value(spec, kind, n)?));
    }
    Ok(out)
}

/// Direction verdict of a sequence scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanDirection {
    Increasing,
    Decreasing,
    None,
}

impl fmt::Display for ScanDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ScanDirection::Increasing => "increasing",
            ScanDirection::Decreasing => "decreasing",
            ScanDirection::None => "none",
        };
        write!(f, "{s}")
    }
}

/// One consecutive step of a scanned sequence: `delta` is
/// `value(next index) − value(n)` where `n` labels the left element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StepDelta {
    pub n: u32,
    pub delta: f64,
}

/// Outcome of [`monotonicity_scan`].
///
/// `direction` is judged under `tolerance`: increasing means every
/// consecutive difference ≥ −tolerance, decreasing means every one ≤
/// +tolerance, and a sequence satisfying both (constant to within
/// tolerance) reports increasing with `strict = false`. When neither
/// holds, `direction` is `None` and every out-of-tolerance step is a
/// violation — so `violations` is non-empty exactly when `direction` is
/// `None`. Adverse steps smaller than the tolerance are suppressed from
/// the verdict but logged in `suppressed`.
#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityStatus {
    pub direction: ScanDirection,
    /// Every step exceeded the tolerance in the reported direction.
    pub strict: bool,
    pub tolerance: f64,
    pub violations: Vec<StepDelta>,
    pub suppressed: Vec<StepDelta>,
    /// Inclusive range of sequence labels scanned.
    pub n_range: (u32, u32),
}

/// Judges the monotonicity of a labeled sequence under a tolerance.
/// Inputs come from [`sum_sequence`]; any labeled sequence works.
pub fn monotonicity_scan(values: &[(u32, f64)], tolerance: f64) -> MonotonicityStatus {
    let n_range = match (values.first(), values.last()) {
        (Some(first), Some(last)) => (first.0, last.0),
        _ => (0, 0),
    };
    let diffs: Vec<StepDelta> = values
        .windows(2)
        .map(|w| StepDelta {
            n: w[0].0,
            delta: w[1].1 - w[0].1,
        })
        .collect();
    let breaks_increasing = diffs.iter().any(|d| d.delta < -tolerance);
    let breaks_decreasing = diffs.iter().any(|d| d.delta > tolerance);
    let (direction, strict, violations, suppressed) = match (breaks_increasing, breaks_decreasing)
    {
        (false, _) => (
            ScanDirection::Increasing,
            !diffs.is_empty() && diffs.iter().all(|d| d.delta > tolerance),
            Vec::new(),
            diffs.iter().filter(|d| d.delta < 0.0).copied().collect(),
        ),
        (true, false) => (
            ScanDirection::Decreasing,
            !diffs.is_empty() && diffs.iter().all(|d| d.delta < -tolerance),
            Vec::new(),
            diffs.iter().filter(|d| d.delta > 0.0).copied().collect(),
        ),
        (true, true) => (
            ScanDirection::None,
            false,
            diffs
                .iter()
                .filter(|d| d.delta.abs() > tolerance)
                .copied()
                .collect(),
            Vec::new(),
        ),
    };
    MonotonicityStatus {
        direction,
        strict,
        tolerance,
        violations,
        suppressed,
        n_range,
    }
}
