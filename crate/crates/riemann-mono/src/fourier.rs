//! Riemann sums from Fourier cosine coefficients.
//!
//! On a uniform `n`-point grid, pure trigonometric sums collapse exactly:
//! sampled sines always cancel, and a sampled cosine of frequency `m`
//! survives (with value 1) precisely when `n` divides `m`
//! ([`trig_sum_exact`]). For a continuous function of bounded variation
//! with cosine coefficients `a_k`, this turns the left/right sums into
//! coefficient subseries with a boundary correction:
//!
//! ```text
//! L_n(f) - (f(0) - f(1))/(2n)  =  R_n(f) + (f(0) - f(1))/(2n)
//!                              =  a_0 + Σ_{k≥1} a_{nk}
//! ```
//!
//! [`sum_from_coeffs`] evaluates the right-hand series to a requested
//! tolerance using the provider's certified tail bound, and
//! [`verify_identity`] cross-checks the identity against direct
//! summation. Monotonicity of `n ↦ a_n` then yields certification rules
//! (see the `certify` module): the subseries `Σ_k a_{nk}` inherits the
//! coefficients' direction term by term.
//!
//! Producing coefficients for arbitrary functions is out of scope;
//! providers are built in ([`FourierSpec`]) or supplied by library users
//! with an explicit tail bound.

use std::fmt;
use std::sync::Arc;

use crate::funcspec::FunctionSpec;
use crate::sums::{self, Compensated, SumKind};
use crate::{Error, Result};

/// Built-in function specs defined by explicit Fourier cosine data.
///
/// * `ExpCos` — `f(x) = e^{cos 2πx}·cos(sin 2πx)`, whose series is
///   `1 + Σ_{k≥1} cos(2πkx)/k!` (`a_0 = 1`, `a_k = 1/k!`).
/// * `Cosine(m)` — `f(x) = cos(2πmx)`, the one-hot coefficient family.
/// * `Constant(c)` — `f(x) = c` (`a_0 = c`, all other coefficients 0).
#[derive(Clone, Debug, PartialEq)]
pub enum FourierSpec {
    ExpCos,
    Cosine(u32),
    Constant(f64),
}

impl FourierSpec {
    /// Parses a builtin registry name: `expcos`, `cos:<m>`, `const:<c>`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "expcos" {
            return Ok(FourierSpec::ExpCos);
        }
        if let Some(m) = t.strip_prefix("cos:") {
            let m: u32 = m
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid cosine frequency `{m}`")))?;
            if m == 0 {
                return Err(Error::Parse(
                    "cosine frequency must be ≥ 1 (use const:<c> for constants)".into(),
                ));
            }
            return Ok(FourierSpec::Cosine(m));
        }
        if let Some(c) = t.strip_prefix("const:") {
            let c: f64 = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid constant `{c}`")))?;
            return Ok(FourierSpec::Constant(c));
        }
        Err(Error::Parse(format!(
            "unknown fourier builtin `{t}` (expected expcos, cos:<m>, or const:<c>)"
        )))
    }

    /// Pointwise value of the underlying function.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            FourierSpec::ExpCos => {
                let theta = 2.0 * std::f64::consts::PI * x;
                theta.cos().exp() * theta.sin().cos()
            }
            FourierSpec::Cosine(m) => (2.0 * std::f64::consts::PI * f64::from(*m) * x).cos(),
            FourierSpec::Constant(c) => *c,
        }
    }

    /// The coefficient provider realizing this builtin's series.
    pub fn provider(&self) -> CoefficientProvider {
        match self {
            FourierSpec::ExpCos => {
                // Σ_{k≥s} 1/k! ≤ (1/s!)·Σ_{j≥0} (s+1)^{-j} ≤ 2/s! for s ≥ 1.
                CoefficientProvider::new(
                    1.0,
                    Arc::new(|k| 1.0 / factorial(k)),
                    Arc::new(|start| if start == 0 { f64::INFINITY } else { 2.0 / factorial(start) }),
                    "expcos",
                )
            }
            FourierSpec::Cosine(m) => {
                let m = u64::from(*m);
                CoefficientProvider::new(
                    0.0,
                    Arc::new(move |k| if k == m { 1.0 } else { 0.0 }),
                    Arc::new(move |start| if start <= m { 1.0 } else { 0.0 }),
                    format!("cos:{m}"),
                )
            }
            FourierSpec::Constant(c) => CoefficientProvider::new(
                *c,
                Arc::new(|_| 0.0),
                Arc::new(|_| 0.0),
                format!("const:{c}"),
            ),
        }
    }

    /// Boundary values `(f(0), f(1))`; both endpoints coincide for every
    /// builtin (they are 1-periodic functions restricted to [0,1]).
    pub fn boundary_values(&self) -> (f64, f64) {
        match self {
            FourierSpec::ExpCos => (std::f64::consts::E, std::f64::consts::E),
            FourierSpec::Cosine(_) => (1.0, 1.0),
            FourierSpec::Constant(c) => (*c, *c),
        }
    }
}

impl fmt::Display for FourierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FourierSpec::ExpCos => write!(f, "expcos"),
            FourierSpec::Cosine(m) => write!(f, "cos:{m}"),
            FourierSpec::Constant(c) => write!(f, "const:{c}"),
        }
    }
}

fn factorial(k: u64) -> f64 {
    let mut acc = 1.0f64;
    for i in 2..=k {
        acc *= i as f64;
        if acc.is_infinite() {
            break;
        }
    }
    acc
}

/// Cosine-coefficient source: `a_0`, the map `k ↦ a_k` for `k ≥ 1`, and a
/// certified upper bound on `Σ_{k ≥ start} |a_k|` used to truncate series
/// at a requested tolerance.
#[derive(Clone)]
pub struct CoefficientProvider {
    a0: f64,
    ak: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
    tail_bound: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
    name: String,
}

impl CoefficientProvider {
    pub fn new(
        a0: f64,
        ak: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
        tail_bound: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
        name: impl Into<String>,
    ) -> Self {
        CoefficientProvider {
            a0,
            ak,
            tail_bound,
            name: name.into(),
        }
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    /// Coefficient `a_k`, `k ≥ 1`.
    pub fn ak(&self, k: u64) -> f64 {
        (self.ak)(k)
    }

    /// Upper bound on `Σ_{k ≥ start} |a_k|`.
    pub fn tail_bound(&self, start: u64) -> f64 {
        (self.tail_bound)(start)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for CoefficientProvider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientProvider")
            .field("a0", &self.a0)
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

/// Sine / cosine selector for [`trig_sum_exact`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wave {
    Sine,
    Cosine,
}

/// Exact value of the left or right Riemann sum of `sin(2πmx)` or
/// `cos(2πmx)`: sines sum to 0; cosines sum to 1 when `n | m` and 0
/// otherwise. Identical for both endpoint choices (the full-period grid
/// sum is shift-invariant).
pub fn trig_sum_exact(m: u64, n: u64, kind: &SumKind, wave: Wave) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("trig sums require m ≥ 1 and n ≥ 1".into()));
    }
    if !matches!(kind, SumKind::Left | SumKind::Right) {
        return Err(Error::Domain(format!(
            "trig sums are defined for left/right kinds, not `{kind}`"
        )));
    }
    Ok(match wave {
        Wave::Sine => 0.0,
        Wave::Cosine => {
            if m.is_multiple_of(n) {
                1.0
            } else {
                0.0
            }
        }
    })
}

/// Left/right Riemann sum reconstructed from cosine coefficients:
/// `a_0 + Σ_{k≥1} a_{nk}`, truncated once the provider's tail bound drops
/// to `tol`, plus the boundary term `±(f0 - f1)/(2n)` (`+` for left, `-`
/// for right). Absolute error at most `2·tol`.
pub fn sum_from_coeffs(
    provider: &CoefficientProvider,
    f0: f64,
    f1: f64,
    n: u32,
    kind: &SumKind,
    tol: f64,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("sum_from_coeffs requires n ≥ 1".into()));
    }
    if tol <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let sign = match kind {
        SumKind::Left => 1.0,
        SumKind::Right => -1.0,
        other => {
            return Err(Error::Domain(format!(
                "the coefficient identity covers left/right kinds, not `{other}`"
            )))
        }
    };
    const MAX_TERMS: u64 = 10_000_000;
    let n64 = u64::from(n);
    let mut acc = Compensated::new();
    acc.add(provider.a0());
    let mut k = 1u64;
    while provider.tail_bound(k * n64) > tol {
        acc.add(provider.ak(k * n64));
        k += 1;
        if k > MAX_TERMS {
            return Err(Error::TailBound(format!(
                "provider `{}` cannot certify tolerance {tol:e} within {MAX_TERMS} terms",
                provider.name()
            )));
        }
    }
    Ok(acc.value() + sign * (f0 - f1) / (2.0 * f64::from(n)))
}

/// Residuals of the coefficient identity against direct summation.
#[derive(Clone, Copy, Debug)]
pub struct IdentityResidual {
    pub n: u32,
    /// `|sum_from_coeffs(Left) − sum_value(Left)|`
    pub left: f64,
    /// `|sum_from_coeffs(Right) − sum_value(Right)|`
    pub right: f64,
}

/// Compares the coefficient-series reconstruction against direct
/// evaluation of `spec` for `n = 1..=n_max`, both kinds. The caller
/// asserts that `spec` is continuous and of bounded variation (the
/// hypothesis under which the identity holds).
pub fn verify_identity(
    spec: &FunctionSpec,
    provider: &CoefficientProvider,
    n_max: u32,
    tol: f64,
) -> Result<Vec<IdentityResidual>> {
    let f0 = spec.eval(0.0)?;
    let f1 = spec.eval(1.0)?;
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let left_series = sum_from_coeffs(provider, f0, f1, n, &SumKind::Left, tol)?;
        let right_series = sum_from_coeffs(provider, f0, f1, n, &SumKind::Right, tol)?;
        let left_direct = sums::sum_value(spec, &SumKind::Left, n)?;
        let right_direct = sums::sum_value(spec, &SumKind::Right, n)?;
        out.push(IdentityResidual {
            n,
            left: (left_series - left_direct).abs(),
            right: (right_series - right_direct).abs(),
        });
    }
    Ok(out)
}
