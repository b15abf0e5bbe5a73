//! Analysis toolkit for the one-parameter family `f_b(x) = 1/(1 − b·x + x²)`
//! on `[0,1]`, defined for `b < 2`.
//!
//! The family is a sharp test bed for Riemann-sum monotonicity: the left sums
//! `L_n` are decreasing for `b ≤ 1/2`, the right sums `R_n` are increasing for
//! `b ≤ 1`, and the behaviour flips as `b` grows toward 2, with genuinely
//! non-monotone windows in between. This module provides
//!
//! - the algebraic constants that delimit where the symmetrization
//!   `𝓕_b(x) = (f_b(x) + f_b(1−x))/2` is concave ([`constants`],
//!   [`concavity_class`]);
//! - a closed form for `R_x(f_1)` valid for all real `x ≥ 1`
//!   ([`f1_closed_form`]), built from a hyperbolic-ratio term and a lattice
//!   series evaluated by zeta subtraction;
//! - the trigamma function ([`trigamma`]) and the direct left sum of
//!   `f_2(x) = 1/(1−x)²` ([`f2_left_sum`]), which are tied by the identity
//!   `L_n(f_2) = n·(π²/6 − ψ₁(n+1))`;
//! - grid verification of four hyperbolic inequalities
//!   ([`check_inequalities`]) and of a derivative positivity bound
//!   ([`f1_derivative_check`]);
//! - exact and numeric decomposition checks used to reduce the family's
//!   monotonicity to convexity statements ([`decomposition_checks`]);
//! - parallel monotonicity scans over a `b` grid ([`scan`]) whose reported
//!   violation witnesses can be re-verified independently
//!   ([`verify_witness`]).

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::funcspec::FunctionSpec;
use crate::polyexact::{exact_sum, rat, RationalPoly};
use crate::sums::{
    monotonicity_scan, sum_sequence, sum_value, Compensated, MonotonicityStatus, ScanDirection,
    SumKind,
};
use crate::{Error, Result};

/// Absolute accuracy target of [`f1_closed_form`] and [`trigamma`].
pub const SERIES_TOLERANCE: f64 = 1e-13;

/// Pass threshold for inequality margins and sign checks: a grid point fails
/// only when its (relative) margin drops below `−PASS_TOLERANCE`.
pub const PASS_TOLERANCE: f64 = 1e-12;

/// How the tail of the lattice series inside [`f1_closed_form`] is evaluated.
/// Recorded so reports can state the method alongside the numbers.
pub const F2_TAIL_METHOD: &str = "zeta subtraction: inverse-power expansion of the lattice terms, \
     Euler-Maclaurin tails for the zeta pieces, closed-form remainder summed to ~9.2x terms";

fn sqrt3() -> f64 {
    3.0_f64.sqrt()
}

/// Pointwise value of `f_b(x) = 1/(1 − b·x + x²)`.
///
/// The denominator is positive on `[0,1]` for every `b < 2`, so no domain
/// guard is needed beyond the family's own `b` constraint.
fn fb_value(b: f64, x: f64) -> f64 {
    1.0 / (1.0 - b * x + x * x)
}

/// Symmetrization `𝓕_b(x) = (f_b(x) + f_b(1−x))/2`.
fn sym_fb_value(b: f64, x: f64) -> f64 {
    0.5 * (fb_value(b, x) + fb_value(b, 1.0 - x))
}

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

/// The four algebraic constants that delimit the concavity region of the
/// symmetrization `𝓕_b`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FbConstants {
    /// Unique negative root of `b³ − 3b² + 3`, ≈ −0.8794.
    pub alpha: f64,
    /// `1 + 2·sin(π/18)` ≈ 1.347296.
    pub gamma: f64,
    /// `(3 − √13)/4` ≈ −0.151388.
    pub beta_minus: f64,
    /// `(3 + √13)/4` ≈ 1.651388.
    pub beta_plus: f64,
}

/// Computes [`FbConstants`]. `alpha` is found by bisection on `[−1, −1/2]`
/// to width `1e−14`; the other three have closed forms.
pub fn constants() -> FbConstants {
    let q = |b: f64| b * b * b - 3.0 * b * b + 3.0;
    let (mut lo, mut hi) = (-1.0_f64, -0.5_f64);
    debug_assert!(q(lo) < 0.0 && q(hi) > 0.0);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if q(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let sqrt13 = 13.0_f64.sqrt();
    FbConstants {
        alpha: 0.5 * (lo + hi),
        gamma: 1.0 + 2.0 * (PI / 18.0).sin(),
        beta_minus: (3.0 - sqrt13) / 4.0,
        beta_plus: (3.0 + sqrt13) / 4.0,
    }
}

// ---------------------------------------------------------------------------
// Concavity classification of the symmetrization
// ---------------------------------------------------------------------------

/// Shape class of the symmetrization `𝓕_b` on `[0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConcavityClass {
    /// `𝓕_b″` keeps one sign on `[0,1]` — no interior inflection. The sign
    /// is negative (genuine concavity) on `[β⁻, 1] ∪ [γ, β⁺]`, the two
    /// sub-intervals the concave-symmetrization monotonicity rules consume;
    /// on `(−∞, α]` the fixed sign is positive (`f_b` itself is convex for
    /// `b ≤ −1`, and convexity persists up to `α`). The classical label for
    /// the whole fixed-sign region is nevertheless "concave".
    Concave,
    /// `𝓕_b″` changes sign inside `(0,1)`: the symmetrization has an
    /// interior inflection point.
    Inflected,
}

impl std::fmt::Display for ConcavityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConcavityClass::Concave => write!(f, "concave"),
            ConcavityClass::Inflected => write!(f, "inflected"),
        }
    }
}

/// Range of estimated `𝓕_b″` over an interior grid (central second
/// differences; the narrow stencil keeps truncation error near `1e−6` so the
/// `1e−4` decision threshold is trustworthy).
fn symmetrization_curvature_range(b: f64) -> (f64, f64) {
    const H: f64 = 2e-4;
    const POINTS: usize = 400;
    let mut min_curv = f64::INFINITY;
    let mut max_curv = f64::NEG_INFINITY;
    for i in 0..POINTS {
        let x = 0.002 + (i as f64) * 0.996 / ((POINTS - 1) as f64);
        let d2 = sym_fb_value(b, x + H) - 2.0 * sym_fb_value(b, x) + sym_fb_value(b, x - H);
        let curv = d2 / (H * H);
        min_curv = min_curv.min(curv);
        max_curv = max_curv.max(curv);
    }
    (min_curv, max_curv)
}

/// Classifies the symmetrization `𝓕_b` as concave or inflected.
///
/// The classification is by membership of `b` in
/// `(−∞, α] ∪ [β⁻, 1] ∪ [γ, β⁺]` versus its complement, with the constants
/// from [`constants`]. The union is exactly the parameter set where `𝓕_b″`
/// keeps one sign on `[0,1]`: `β^±` are the roots of `4b² − 6b − 1`, where
/// the midpoint curvature `𝓕_b″(1/2)` vanishes, while `α` and `γ` are the
/// two sub-2 roots of `b³ − 3b² + 3`, where the endpoint curvature
/// `𝓕_b″(0) = 𝓕_b″(1) ∝ (b−1)(b³−3b²+3)` vanishes. (See the sign caveat on
/// [`ConcavityClass::Concave`]: on `(−∞, α]` the fixed sign is convex.)
///
/// The verdict is cross-checked by sampling second differences of `𝓕_b` on
/// an interior grid: a fixed-sign class must show no interior sign change,
/// an inflected class must show both signs. Disagreement (possible only for
/// `b` within stencil noise of a region boundary) is reported as
/// [`Error::Verification`] rather than silently returned.
///
/// Errors: [`Error::Parameter`] if `b ≥ 2`.
pub fn concavity_class(b: f64) -> Result<ConcavityClass> {
    if b.is_nan() || b >= 2.0 {
        return Err(Error::Parameter(format!(
            "family parameter must satisfy b < 2, got {b}"
        )));
    }
    let c = constants();
    let class = if b <= c.alpha || (c.beta_minus <= b && b <= 1.0) || (c.gamma <= b && b <= c.beta_plus)
    {
        ConcavityClass::Concave
    } else {
        ConcavityClass::Inflected
    };
    // Grid cross-check. The stencil resolves curvature down to ~1e−4; region
    // boundaries are algebraic, so any b at least ~1e−3 from a boundary has
    // peak curvature well clear of the threshold on the relevant side.
    let threshold = 1e-4;
    let (min_curv, max_curv) = symmetrization_curvature_range(b);
    let has_convex_part = max_curv > threshold;
    let has_concave_part = min_curv < -threshold;
    let grid_agrees = match class {
        ConcavityClass::Concave => !(has_convex_part && has_concave_part),
        ConcavityClass::Inflected => has_convex_part && has_concave_part,
    };
    if !grid_agrees {
        return Err(Error::Verification(format!(
            "concavity classification of the symmetrization at b = {b} ({class}) disagrees with \
             the sampled curvature range [{min_curv:.3e}, {max_curv:.3e}]"
        )));
    }
    Ok(class)
}

// ---------------------------------------------------------------------------
// Closed form for R_x(f_1)
// ---------------------------------------------------------------------------

/// Euler–Maclaurin evaluation of the zeta tail `Σ_{k>K} k^{−s}` for integer
/// `s ≥ 2` and `K ≥ 64`. Truncated after the fourth correction term; the
/// omitted term is `O(s⁷·K^{−s−7})`, far below [`SERIES_TOLERANCE`] here.
fn zeta_tail(s: i32, k: f64) -> f64 {
    let sf = f64::from(s);
    k.powi(1 - s) / (sf - 1.0) - 0.5 * k.powi(-s) + (sf / 12.0) * k.powi(-s - 1)
        - (sf * (sf + 1.0) * (sf + 2.0) / 720.0) * k.powi(-s - 3)
        + (sf * (sf + 1.0) * (sf + 2.0) * (sf + 3.0) * (sf + 4.0) / 30240.0) * k.powi(-s - 5)
}

/// The lattice series `S(x) = Σ_{k≥1} x²/(k² + k·x + x²)`.
///
/// Terms decay only like `1/k²`, so direct summation cannot reach `1e−13`.
/// The evaluation splits at `k₀ = max(64, ⌈4x⌉)`:
///
/// - `k ≤ k₀`: direct compensated summation;
/// - `k > k₀`: with `u = x/k < 1`, the factorization
///   `1/(1+u+u²) = (1−u)/(1−u³)` gives
///   `x²/(k²+kx+x²) = x²/k² − x³/k³ + x⁵/k⁵ − x⁶/k⁶ + … ` (exponents skip
///   multiples of 3, alternating in adjacent pairs). The first eight powers
///   are summed exactly as zeta tails via [`zeta_tail`]; the remainder per
///   term is the closed form `(x²/(k²+kx+x²))·(x/k)¹²`, positive and
///   `< x¹⁴/k¹⁴`, summed explicitly to `k_r ≈ 9.2x` so the truncated part
///   stays below the accuracy target.
fn lattice_series(x: f64) -> f64 {
    let k0 = 64u64.max((4.0 * x).ceil() as u64);
    let mut direct = Compensated::new();
    for k in 1..=k0 {
        let kf = k as f64;
        direct.add(x * x / (kf * kf + kf * x + x * x));
    }
    let kf0 = k0 as f64;
    // Signed inverse-power expansion: +x²/k², −x³/k³, +x⁵/k⁵, −x⁶/k⁶, …
    let mut expansion = Compensated::new();
    for (s, sign) in [
        (2, 1.0),
        (3, -1.0),
        (5, 1.0),
        (6, -1.0),
        (8, 1.0),
        (9, -1.0),
        (11, 1.0),
        (12, -1.0),
    ] {
        expansion.add(sign * x.powi(s) * zeta_tail(s, kf0));
    }
    let kr = k0.max((9.2 * x).ceil() as u64).max(96);
    let mut remainder = Compensated::new();
    for k in (k0 + 1)..=kr {
        let kf = k as f64;
        let u = x / kf;
        remainder.add((x * x / (kf * kf + kf * x + x * x)) * u.powi(12));
    }
    direct.value() + expansion.value() + remainder.value()
}

/// Closed form for the right Riemann sum `R_x(f_1)` of
/// `f_1(t) = 1/(1 − t + t²)`, valid for all real `x ≥ 1`:
///
/// `R_x(f_1) = 2π·sinh(√3·π·x) / (√3·(cosh(√3·π·x) − cos(π·x)))
///             − (1/x + (2/x)·Σ_{k≥1} x²/(x² + k·x + k²))`.
///
/// The hyperbolic ratio is evaluated in the overflow-free form
/// `(1 − e^{−2y})/(1 + e^{−2y} − 2·cos(πx)·e^{−y})` with `y = √3πx`, and
/// `cos(πx)` is taken as exactly `(−1)^x` at integer `x`. The lattice series
/// uses zeta subtraction (see [`F2_TAIL_METHOD`]); total absolute accuracy is
/// [`SERIES_TOLERANCE`].
///
/// Errors: [`Error::Domain`] if `x < 1` or `x` is not finite.
pub fn f1_closed_form(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 1.0 {
        return Err(Error::Domain(format!(
            "closed form for the right sum of f_1 requires finite x >= 1, got {x}"
        )));
    }
    let y = sqrt3() * PI * x;
    let cos_pi_x = if x.fract() == 0.0 {
        if (x as u64).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    } else {
        (PI * x).cos()
    };
    let e1 = (-y).exp();
    let e2 = e1 * e1;
    let hyperbolic = (2.0 * PI / sqrt3()) * (1.0 - e2) / (1.0 + e2 - 2.0 * cos_pi_x * e1);
    let series = 1.0 / x + (2.0 / x) * lattice_series(x);
    Ok(hyperbolic - series)
}

// ---------------------------------------------------------------------------
// Trigamma and the b = 2 endpoint
// ---------------------------------------------------------------------------

/// Trigamma function `ψ₁(x) = Σ_{k≥0} 1/(x+k)²` for `x > 0`.
///
/// Uses the recurrence `ψ₁(x) = ψ₁(x+1) + 1/x²` to push the argument up to
/// `x ≥ 10`, then the asymptotic series
/// `1/x + 1/(2x²) + Σ_k B_{2k}·x^{−2k−1}` through `B₁₆`; the first omitted
/// term is below `6e−18` there. Absolute accuracy [`SERIES_TOLERANCE`] for
/// arguments of moderate size (for tiny `x` the value itself grows like
/// `1/x²` and accuracy is relative).
///
/// Errors: [`Error::Domain`] if `x ≤ 0` or not finite.
pub fn trigamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "trigamma requires finite x > 0, got {x}"
        )));
    }
    let mut shifted = Compensated::new();
    let mut y = x;
    while y < 10.0 {
        shifted.add(1.0 / (y * y));
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // B₂/x³, B₄/x⁵, …, B₁₆/x¹⁷ with B₂ = 1/6, B₄ = −1/30, B₆ = 1/42,
    // B₈ = −1/30, B₁₀ = 5/66, B₁₂ = −691/2730, B₁₄ = 7/6, B₁₆ = −3617/510.
    let bernoulli = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
    ];
    let mut asymptotic = inv + 0.5 * inv2;
    let mut power = inv * inv2;
    for b2k in bernoulli {
        asymptotic += b2k * power;
        power *= inv2;
    }
    Ok(shifted.value() + asymptotic)
}

/// Direct left Riemann sum `L_n(f_2)` of `f_2(x) = 1/(1 − 2x + x²) = 1/(1−x)²`,
/// the `b = 2` endpoint of the family (excluded from [`FunctionSpec::fb`]
/// because `f_2` blows up at `x = 1`; left sums never sample that endpoint).
///
/// Each term `1/(1 − k/n)²` is evaluated through the exact integer gap
/// `(n−k)/n`, avoiding the cancellation the expanded quadratic would incur
/// near `x = 1`. Satisfies `L_n(f_2) = n·(π²/6 − ψ₁(n+1))` exactly.
///
/// Errors: [`Error::Parameter`] if `n = 0`.
pub fn f2_left_sum(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("sum index n must be >= 1".into()));
    }
    let nf = f64::from(n);
    let mut acc = Compensated::new();
    for k in 0..n {
        let gap = f64::from(n - k) / nf;
        acc.add(1.0 / (gap * gap));
    }
    Ok(acc.value() / nf)
}

// ---------------------------------------------------------------------------
// Inequality grid checks
// ---------------------------------------------------------------------------

/// Minimum relative margin of one inequality over the grid.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityMargin {
    /// Human-readable statement of the inequality.
    pub name: String,
    /// Smallest relative margin found (`≥ 0` means the inequality held with
    /// room to spare everywhere; slightly negative values are floating noise).
    pub min_margin: f64,
    /// Grid point where the minimum was attained.
    pub at_x: f64,
    /// Whether `min_margin ≥ −`[`PASS_TOLERANCE`].
    pub pass: bool,
}

/// Result of [`check_inequalities`].
#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub grid_max: f64,
    pub step: f64,
    pub items: Vec<InequalityMargin>,
    /// All items passed.
    pub pass: bool,
}

/// Margins are normalized by `max(1, |lhs|, |rhs|)`: for large `x` both sides
/// of the hyperbolic inequalities grow like `e^x`, where only relative
/// comparisons are meaningful in floating point, while near `0` the
/// normalization leaves the absolute margin intact.
fn relative_margin(favored_minus_other: f64, lhs: f64, rhs: f64) -> f64 {
    favored_minus_other / 1.0_f64.max(lhs.abs()).max(rhs.abs())
}

/// Verifies four hyperbolic inequalities on the grid
/// `x ∈ {0, step, 2·step, …} ∩ [0, grid_max]`:
///
/// 1. `α·sinh(x) + cosh(x) ≤ e^x` for `α ∈ {0, 1/2, 1}` (equality throughout
///    at `α = 1`);
/// 2. `coth(x) ≤ 1/x + x/3` (for `x > 0`; both sides diverge at `0`, so the
///    grid point `x = 0` is skipped);
/// 3. `(x·coth(x/2) − 2)·csch²(x/2) ≤ e^{−x/3}` (at `x = 0` the left side is
///    taken as its continuous extension `2/3`);
/// 4. `(sinh(x) − x)·csch²(x/2) ≥ 2 − 2·e^{−x/3}` (at `x = 0` both sides
///    vanish and the margin is exactly `0`).
///
/// Each item records its minimum relative margin (see the normalization note
/// on the margin helper) and passes when that minimum is `≥ −`[`PASS_TOLERANCE`].
///
/// Errors: [`Error::Parameter`] if `step ≤ 0` or `grid_max ≤ 0`.
pub fn check_inequalities(grid_max: f64, step: f64) -> Result<InequalityReport> {
    if step.is_nan() || step <= 0.0 || grid_max.is_nan() || grid_max <= 0.0 {
        return Err(Error::Parameter(format!(
            "inequality grid requires grid_max > 0 and step > 0, got grid_max = {grid_max}, step = {step}"
        )));
    }
    struct Tracker {
        name: &'static str,
        min_margin: f64,
        at_x: f64,
    }
    impl Tracker {
        fn new(name: &'static str) -> Self {
            Tracker {
                name,
                min_margin: f64::INFINITY,
                at_x: 0.0,
            }
        }
        fn observe(&mut self, margin: f64, x: f64) {
            if margin < self.min_margin {
                self.min_margin = margin;
                self.at_x = x;
            }
        }
    }
    let mut trackers = [
        Tracker::new("0*sinh(x) + cosh(x) <= exp(x)"),
        Tracker::new("(1/2)*sinh(x) + cosh(x) <= exp(x)"),
        Tracker::new("1*sinh(x) + cosh(x) <= exp(x)"),
        Tracker::new("coth(x) <= 1/x + x/3"),
        Tracker::new("(x*coth(x/2) - 2)*csch(x/2)^2 <= exp(-x/3)"),
        Tracker::new("(sinh(x) - x)*csch(x/2)^2 >= 2 - 2*exp(-x/3)"),
    ];
    let steps = (grid_max / step + 0.5).floor() as u64;
    for i in 0..=steps {
        let x = (i as f64) * step;
        if x > grid_max + step * 1e-9 {
            break;
        }
        let (sinh_x, cosh_x, exp_x) = (x.sinh(), x.cosh(), x.exp());
        for (slot, alpha) in [(0usize, 0.0), (1, 0.5), (2, 1.0)] {
            let lhs = alpha * sinh_x + cosh_x;
            trackers[slot].observe(relative_margin(exp_x - lhs, lhs, exp_x), x);
        }
        if x > 0.0 {
            let lhs = 1.0 / x.tanh();
            let rhs = 1.0 / x + x / 3.0;
            trackers[3].observe(relative_margin(rhs - lhs, lhs, rhs), x);
        }
        let csch_half_sq = if x > 0.0 {
            let s = (0.5 * x).sinh();
            1.0 / (s * s)
        } else {
            f64::INFINITY
        };
        let decay = (-x / 3.0).exp();
        let lhs3 = if x == 0.0 {
            2.0 / 3.0
        } else {
            (x / (0.5 * x).tanh() - 2.0) * csch_half_sq
        };
        trackers[4].observe(relative_margin(decay - lhs3, lhs3, decay), x);
        let lhs4 = if x == 0.0 {
            0.0
        } else {
            (sinh_x - x) * csch_half_sq
        };
        let rhs4 = 2.0 - 2.0 * decay;
        trackers[5].observe(relative_margin(lhs4 - rhs4, lhs4, rhs4), x);
    }
    let items: Vec<InequalityMargin> = trackers
        .into_iter()
        .map(|t| InequalityMargin {
            name: t.name.to_string(),
            min_margin: t.min_margin,
            at_x: t.at_x,
            pass: t.min_margin >= -PASS_TOLERANCE,
        })
        .collect();
    let pass = items.iter().all(|i| i.pass);
    Ok(InequalityReport {
        grid_max,
        step,
        items,
        pass,
    })
}

// ---------------------------------------------------------------------------
// Decomposition checks
// ---------------------------------------------------------------------------

/// The fourth-order Taylor polynomial of `f_1` at `x = 1/2`:
/// `h(x) = (4/3)·(1 − w²/3 + w⁴/9)` with `w = 2x − 1`, i.e. coefficients
/// `[28/27, 16/27, 16/9, −128/27, 64/27]`.
pub fn quartic_taylor_poly() -> RationalPoly {
    RationalPoly::new(vec![
        rat(28, 27),
        rat(16, 27),
        rat(16, 9),
        rat(-128, 27),
        rat(64, 27),
    ])
}

/// Outcome of one curvature grid check in [`DecompositionReport`].
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureCheck {
    /// `"concave"` or `"convex"`.
    pub expected: String,
    /// Worst curvature estimate against the expectation: the maximum second
    /// difference over `h²` when concavity is expected, the minimum when
    /// convexity is expected.
    pub worst: f64,
    pub pass: bool,
}

/// Result of [`decomposition_checks`].
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub b: f64,
    /// The left sums of the quartic Taylor polynomial match
    /// `(4/27)·(41/5 − 2/(3n²) − 8/(15n⁴))` as exact rationals.
    pub quartic_identity: bool,
    /// Exact value of the quartic's left sum at `n = 1` (should be `28/27`).
    pub quartic_at_one: String,
    /// Minimum over `b ∈ [γ, 3/2]` of `(27/8)·(3−2b)/((5−2b)(2−b))`.
    pub taylor_factor_min: f64,
    pub taylor_factor_pass: bool,
    /// Minimum over `b ∈ [1/2, γ]` of `3(2b−1)/(5−2b)`.
    pub f1_factor_min: f64,
    pub f1_factor_pass: bool,
    /// Curvature of `𝓖 = 𝓕_b − t·f_1` at the given `b` (only when
    /// `b ∈ [1/2, γ]`, the range where a fixed curvature is claimed).
    pub remainder_curvature: Option<CurvatureCheck>,
    pub pass: bool,
}

/// Verifies the decompositions that reduce the family's monotonicity to
/// convexity statements.
///
/// 1. **Exact series identity.** The left sums of the quartic Taylor
///    polynomial `h` (see [`quartic_taylor_poly`]) equal
///    `(4/27)·(41/5 − 2/(3n²) − 8/(15n⁴))` — compared as exact rationals for
///    `n = 1..30`, which over-determines the degree-4 rational function.
///    At `n = 1` the value is `h(0) = 28/27`.
/// 2. **Mixing factors are nonnegative on their ranges.** The factor
///    `t(b) = (27/8)·(3−2b)/((5−2b)(2−b))` used with `h` is `≥ 0` on
///    `[γ, 3/2]` (vanishing at `3/2`), and the factor `t(b) = 3(2b−1)/(5−2b)`
///    used with `f_1` is `≥ 0` on `[1/2, γ]` (vanishing at `1/2`); both are
///    sampled at step `1e−3`.
/// 3. **Remainder curvature.** For the given `b ∈ [1/2, γ]`, the combination
///    `𝓖(x) = 𝓕_b(x) − 3(2b−1)/(5−2b)·f_1(x)` is concave when `b ≤ 1` and
///    convex when `b ≥ 1` (at `b = 1` it is identically zero). Verified by
///    second differences on an interior grid with stencil `1e−3`, pass
///    threshold `1e−9` on the curvature estimate.
///
/// Errors: [`Error::Parameter`] if `b ≥ 2`.
pub fn decomposition_checks(b: f64) -> Result<DecompositionReport> {
    if b.is_nan() || b >= 2.0 {
        return Err(Error::Parameter(format!(
            "family parameter must satisfy b < 2, got {b}"
        )));
    }
    let c = constants();

    // (1) Exact identity for the quartic's left sums.
    let form = exact_sum(&quartic_taylor_poly(), &SumKind::Left)?;
    let scale = rat(4, 27);
    let mut quartic_identity = true;
    for n in 1..=30u64 {
        let n2 = rat((n * n) as i64, 1);
        let n4 = &n2 * &n2;
        let target = &scale * &(rat(41, 5) - rat(2, 3) / &n2 - rat(8, 15) / &n4);
        if form.eval_at(n)? != target {
            quartic_identity = false;
            break;
        }
    }
    let quartic_at_one = form.eval_at(1)?.to_string();

    // (2) Mixing-factor signs on their stated b ranges.
    let taylor_factor = |b: f64| (27.0 / 8.0) * (3.0 - 2.0 * b) / ((5.0 - 2.0 * b) * (2.0 - b));
    let f1_factor = |b: f64| 3.0 * (2.0 * b - 1.0) / (5.0 - 2.0 * b);
    let min_on = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64| {
        let steps = ((hi - lo) / 1e-3).ceil() as u64;
        let mut min = f64::INFINITY;
        for i in 0..=steps {
            let t = lo + (hi - lo) * (i as f64) / (steps as f64);
            min = min.min(f(t));
        }
        min
    };
    let taylor_factor_min = min_on(&taylor_factor, c.gamma, 1.5);
    let f1_factor_min = min_on(&f1_factor, 0.5, c.gamma);

    // (3) Curvature of the remainder 𝓖 = 𝓕_b − t·f_1 at this b.
    let remainder_curvature = if (0.5..=c.gamma + 1e-12).contains(&b) {
        let t = f1_factor(b);
        let g = |x: f64| sym_fb_value(b, x) - t * fb_value(1.0, x);
        const H: f64 = 1e-3;
        const POINTS: usize = 400;
        let mut worst = if b <= 1.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
        for i in 0..POINTS {
            let x = 0.002 + (i as f64) * 0.996 / ((POINTS - 1) as f64);
            let curv = (g(x + H) - 2.0 * g(x) + g(x - H)) / (H * H);
            worst = if b <= 1.0 {
                worst.max(curv)
            } else {
                worst.min(curv)
            };
        }
        let (expected, pass) = if b <= 1.0 {
            ("concave", worst <= 1e-9)
        } else {
            ("convex", worst >= -1e-9)
        };
        Some(CurvatureCheck {
            expected: expected.to_string(),
            worst,
            pass,
        })
    } else {
        None
    };

    let taylor_factor_pass = taylor_factor_min >= -PASS_TOLERANCE;
    let f1_factor_pass = f1_factor_min >= -PASS_TOLERANCE;
    let pass = quartic_identity
        && taylor_factor_pass
        && f1_factor_pass
        && remainder_curvature.as_ref().is_none_or(|c| c.pass);
    Ok(DecompositionReport {
        b,
        quartic_identity,
        quartic_at_one,
        taylor_factor_min,
        taylor_factor_pass,
        f1_factor_min,
        f1_factor_pass,
        remainder_curvature,
        pass,
    })
}

// ---------------------------------------------------------------------------
// b-grid scans
// ---------------------------------------------------------------------------

/// One monotonicity violation found by [`scan`]: at parameter `b`, the sum
/// sequence of `kind` moved by `delta` from index `n` to `n+1` against the
/// prevailing direction.
#[derive(Clone, Debug, Serialize)]
pub struct ScanWitness {
    pub b: f64,
    /// Sum-kind token (`"left"` or `"right"`).
    pub kind: String,
    pub n: u32,
    pub delta: f64,
}

/// Result of [`scan`].
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub b_grid: Vec<f64>,
    /// Inclusive index range scanned.
    pub n_range: (u32, u32),
    /// Per-`b` verdict for the left sums, aligned with `b_grid`.
    pub left: Vec<MonotonicityStatus>,
    /// Per-`b` verdict for the right sums, aligned with `b_grid`.
    pub right: Vec<MonotonicityStatus>,
    /// Violations (capped per `(b, kind)` pair), each re-verifiable via
    /// [`verify_witness`].
    pub witnesses: Vec<ScanWitness>,
    pub tolerance: f64,
}

/// At most this many violation witnesses are kept per `(b, kind)` pair.
const WITNESS_CAP: usize = 16;

/// Scans left and right sums of `f_b` for monotonicity over a `b` grid.
///
/// For each `b ∈ {b_from, b_from + b_step, …} ∩ [b_from, b_to]` the sums for
/// `n = 1..n_max` are computed and judged by
/// [`monotonicity_scan`]; when a sequence is non-monotone, its out-of-tolerance
/// steps become [`ScanWitness`] records (first [`WITNESS_CAP`] per direction).
/// Work is distributed across the rayon pool by grid index and merged in
/// order, so the report is deterministic regardless of thread count.
///
/// A grid entry whose verdict is `Increasing`/`Decreasing` means **no
/// violation was found up to `n_max`** — evidence, not a proof of
/// monotonicity.
///
/// Errors: [`Error::Parameter`] for an empty or ill-formed grid
/// (`b_step ≤ 0`, `b_from > b_to`, `b_to ≥ 2`, `n_max < 2`).
pub fn scan(b_from: f64, b_to: f64, b_step: f64, n_max: u32, tolerance: f64) -> Result<ScanReport> {
    if b_step.is_nan() || b_step <= 0.0 || b_from.is_nan() || b_to.is_nan() || b_from > b_to || b_to >= 2.0 {
        return Err(Error::Parameter(format!(
            "scan grid requires b_step > 0 and b_from <= b_to < 2, got [{b_from}, {b_to}] step {b_step}"
        )));
    }
    if n_max < 2 {
        return Err(Error::Parameter(format!(
            "scan requires n_max >= 2, got {n_max}"
        )));
    }
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::Parameter(format!(
            "scan tolerance must be >= 0, got {tolerance}"
        )));
    }
    let mut b_grid = Vec::new();
    let mut i = 0u64;
    loop {
        let b = b_from + (i as f64) * b_step;
        if b > b_to + b_step * 1e-9 {
            break;
        }
        b_grid.push(b);
        i += 1;
    }
    let per_b: Vec<(MonotonicityStatus, MonotonicityStatus, Vec<ScanWitness>)> = b_grid
        .par_iter()
        .map(|&b| -> Result<_> {
            let spec = FunctionSpec::fb(b)?;
            let mut witnesses = Vec::new();
            let mut run = |kind: SumKind| -> Result<MonotonicityStatus> {
                let seq = sum_sequence(&spec, &kind, 1, n_max)?;
                let status = monotonicity_scan(&seq, tolerance);
                if status.direction == ScanDirection::None {
                    for v in status.violations.iter().take(WITNESS_CAP) {
                        witnesses.push(ScanWitness {
                            b,
                            kind: kind.to_string(),
                            n: v.n,
                            delta: v.delta,
                        });
                    }
                }
                Ok(status)
            };
            let left = run(SumKind::Left)?;
            let right = run(SumKind::Right)?;
            Ok((left, right, witnesses))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut left = Vec::with_capacity(b_grid.len());
    let mut right = Vec::with_capacity(b_grid.len());
    let mut witnesses = Vec::new();
    for (l, r, w) in per_b {
        left.push(l);
        right.push(r);
        witnesses.extend(w);
    }
    Ok(ScanReport {
        b_grid,
        n_range: (1, n_max),
        left,
        right,
        witnesses,
        tolerance,
    })
}

/// Recomputes the two sums behind a [`ScanWitness`] from scratch and checks
/// that the step still violates monotonicity in the recorded direction:
/// same sign, magnitude above `tolerance`, and agreement with the recorded
/// delta to within floating reproduction error.
pub fn verify_witness(witness: &ScanWitness, tolerance: f64) -> Result<bool> {
    let spec = FunctionSpec::fb(witness.b)?;
    let kind: SumKind = witness.kind.parse()?;
    let a = sum_value(&spec, &kind, witness.n)?;
    let b = sum_value(&spec, &kind, witness.n + 1)?;
    let delta = b - a;
    Ok(delta.abs() > tolerance
        && delta.signum() == witness.delta.signum()
        && (delta - witness.delta).abs() <= 1e-9 * witness.delta.abs().max(1e-30))
}

// ---------------------------------------------------------------------------
// Derivative positivity of the closed form
// ---------------------------------------------------------------------------

/// Result of [`f1_derivative_check`].
#[derive(Clone, Debug, Serialize)]
pub struct DerivativeReport {
    pub x_from: f64,
    pub x_to: f64,
    pub step: f64,
    /// Minimum of the analytic lower-bound expression over the grid.
    pub min_bound: f64,
    pub min_bound_at: f64,
    /// Minimum central-difference derivative of [`f1_closed_form`].
    pub min_derivative: f64,
    pub min_derivative_at: f64,
    pub pass: bool,
}

/// Checks the positivity evidence for `d/dx R_x(f_1)` on a grid.
///
/// Two independent signals are evaluated at each grid point `x`:
///
/// - the analytic lower-bound expression
///   `(80/e^{√3πx})·(4x⁶/(5(9x² + 3x + 1)) − 1)`, which must be `> 0`
///   (its second factor exceeds `0` for all `x ≥ 2`; at `x = 2` it is
///   `256/215 − 1`);
/// - a central-difference derivative of [`f1_closed_form`] with step `1e−4`,
///   which must stay above `−1e−8` (the closed form is accurate to
///   `~1e−13`, so derivative noise is below `1e−9`).
///
/// Errors: [`Error::Parameter`] unless `2 ≤ x_from < x_to` and `step > 0`.
pub fn f1_derivative_check(x_from: f64, x_to: f64, step: f64) -> Result<DerivativeReport> {
    if x_from.is_nan() || x_to.is_nan() || x_from < 2.0 || x_from >= x_to || step.is_nan() || step <= 0.0 {
        return Err(Error::Parameter(format!(
            "derivative check requires 2 <= x_from < x_to and step > 0, got [{x_from}, {x_to}] step {step}"
        )));
    }
    const DIFF_STEP: f64 = 1e-4;
    const DERIVATIVE_FLOOR: f64 = -1e-8;
    let mut report = DerivativeReport {
        x_from,
        x_to,
        step,
        min_bound: f64::INFINITY,
        min_bound_at: x_from,
        min_derivative: f64::INFINITY,
        min_derivative_at: x_from,
        pass: false,
    };
    let steps = ((x_to - x_from) / step + 0.5).floor() as u64;
    for i in 0..=steps {
        let x = x_from + (i as f64) * step;
        if x > x_to + step * 1e-9 {
            break;
        }
        let x6 = x.powi(6);
        let bound =
            80.0 * (-sqrt3() * PI * x).exp() * (4.0 * x6 / (5.0 * (9.0 * x * x + 3.0 * x + 1.0)) - 1.0);
        if bound < report.min_bound {
            report.min_bound = bound;
            report.min_bound_at = x;
        }
        let derivative =
            (f1_closed_form(x + DIFF_STEP)? - f1_closed_form(x - DIFF_STEP)?) / (2.0 * DIFF_STEP);
        if derivative < report.min_derivative {
            report.min_derivative = derivative;
            report.min_derivative_at = x;
        }
    }
    report.pass = report.min_bound > 0.0 && report.min_derivative >= DERIVATIVE_FLOOR;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
