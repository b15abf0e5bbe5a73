//! Function specifications on the unit interval.
//!
//! A [`FunctionSpec`] is a closed description of a function `[0,1] → ℝ`
//! that every other module consumes: rational polynomials (which keep
//! exact arithmetic available end to end), the rational family
//! `f_b(x) = 1/(1 - bx + x²)` for `b < 2`, Fourier builtins, black-box
//! closures for library embedding, and the structural combinators
//! reflect / negate / affine sum from which symmetrization is built.
//!
//! Specs written in the text grammar round-trip through [`Display`]:
//! `poly:c0,c1,...`, `fb:<b>`, `fourier:<builtin>`, `reflect(<spec>)`,
//! `neg(<spec>)`, `sum(<c1>,<spec1>,<c2>,<spec2>)`. Black boxes have no
//! grammar on purpose — command-line runs stay reproducible from text.
//!
//! [`FunctionSpec::probe_shape`] samples a uniform grid and judges
//! monotonicity and convexity from first and second differences under a
//! stated tolerance. Certification rules treat such grid verdicts as
//! numeric evidence (in contrast to exact polynomial checks); the probe
//! exists so every theorem hypothesis has a mechanical check.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::fourier::FourierSpec;
use crate::polyexact::{parse_rational, rat, rational_to_f64, Rational, RationalPoly};
use crate::{Error, Result};

/// Default grid size for [`FunctionSpec::probe_shape`].
pub const DEFAULT_PROBE_GRID: usize = 512;
/// Default tolerance for grid shape probes.
pub const DEFAULT_PROBE_TOLERANCE: f64 = 1e-9;

/// Named black-box function for library embedding (not reachable from
/// the text grammar).
#[derive(Clone)]
pub struct BlackBoxFn {
    name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl BlackBoxFn {
    pub fn new(name: impl Into<String>, f: Arc<dyn Fn(f64) -> f64 + Send + Sync>) -> Self {
        BlackBoxFn {
            name: name.into(),
            f,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn call(&self, x: f64) -> f64 {
        (self.f)(x)
    }
}

impl fmt::Debug for BlackBoxFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlackBoxFn").field("name", &self.name).finish_non_exhaustive()
    }
}

impl PartialEq for BlackBoxFn {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

/// A function `[0,1] → ℝ` in closed description.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    /// Exact rational polynomial, ascending coefficients.
    Polynomial(RationalPoly),
    /// `f_b(x) = 1 / (1 - bx + x²)`, requires `b < 2`.
    FbFamily { b: f64 },
    /// Builtin defined by explicit Fourier cosine data.
    Fourier(FourierSpec),
    /// Arbitrary closure; shape judgments fall back to looser numerics.
    BlackBox(BlackBoxFn),
    /// `x ↦ f(1 - x)`.
    Reflect(Box<FunctionSpec>),
    /// `x ↦ -f(x)`.
    Negate(Box<FunctionSpec>),
    /// `x ↦ c1·f1(x) + c2·f2(x)`.
    AffineSum {
        c1: f64,
        f1: Box<FunctionSpec>,
        c2: f64,
        f2: Box<FunctionSpec>,
    },
}

/// Grid-probe verdicts on shape hypotheses. Each property is judged
/// independently (a linear function is both convex and concave; a
/// constant is both increasing and decreasing): `increasing` means every
/// first difference ≥ `-tolerance`, `convex` means every second
/// difference ≥ `-tolerance`, and dually.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShapeReport {
    pub increasing: bool,
    pub decreasing: bool,
    pub convex: bool,
    pub concave: bool,
    pub f0: f64,
    pub f_half: f64,
    pub f1: f64,
    pub grid_size: usize,
    pub tolerance: f64,
}

impl ShapeReport {
    pub fn monotone(&self) -> bool {
        self.increasing || self.decreasing
    }

    pub fn convex_or_concave(&self) -> bool {
        self.convex || self.concave
    }
}

impl FunctionSpec {
    /// Validated constructor for the `f_b` family.
    pub fn fb(b: f64) -> Result<Self> {
        if !b.is_finite() || b >= 2.0 {
            return Err(Error::Parameter(format!(
                "f_b requires b < 2 so 1 - bx + x² stays positive on [0,1]; got b = {b}"
            )));
        }
        Ok(FunctionSpec::FbFamily { b })
    }

    /// Evaluates the function at `x ∈ [0,1]`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!(
                "specs are defined on [0,1]; got x = {x}"
            )));
        }
        match self {
            FunctionSpec::Polynomial(p) => Ok(p.eval_f64(x)),
            FunctionSpec::FbFamily { b } => {
                if !b.is_finite() || *b >= 2.0 {
                    return Err(Error::Parameter(format!(
                        "f_b requires b < 2; got b = {b}"
                    )));
                }
                Ok(1.0 / (1.0 - b * x + x * x))
            }
            FunctionSpec::Fourier(fs) => Ok(fs.eval(x)),
            FunctionSpec::BlackBox(bb) => Ok(bb.call(x)),
            FunctionSpec::Reflect(inner) => inner.eval(1.0 - x),
            FunctionSpec::Negate(inner) => Ok(-inner.eval(x)?),
            FunctionSpec::AffineSum { c1, f1, c2, f2 } => {
                Ok(c1 * f1.eval(x)? + c2 * f2.eval(x)?)
            }
        }
    }

    /// Exact rational evaluation, available when every ingredient is
    /// exactly representable (polynomials, `f_b`, constants, and the
    /// combinators over them — every `f64` coefficient is itself a
    /// dyadic rational).
    pub fn eval_exact(&self, x: &Rational) -> Option<Rational> {
        if x.is_negative() || x > &Rational::one() {
            return None;
        }
        match self {
            FunctionSpec::Polynomial(p) => Some(p.eval(x)),
            FunctionSpec::FbFamily { b } => {
                let br = Rational::from_float(*b)?;
                let den = Rational::one() - br * x + x * x;
                if den.is_positive() {
                    Some(Rational::one() / den)
                } else {
                    None
                }
            }
            FunctionSpec::Fourier(FourierSpec::Constant(c)) => Rational::from_float(*c),
            FunctionSpec::Fourier(_) => None,
            FunctionSpec::BlackBox(_) => None,
            FunctionSpec::Reflect(inner) => inner.eval_exact(&(Rational::one() - x)),
            FunctionSpec::Negate(inner) => Some(-inner.eval_exact(x)?),
            FunctionSpec::AffineSum { c1, f1, c2, f2 } => {
                let c1 = Rational::from_float(*c1)?;
                let c2 = Rational::from_float(*c2)?;
                Some(c1 * f1.eval_exact(x)? + c2 * f2.eval_exact(x)?)
            }
        }
    }

    /// Exact boundary values `(f(0), f(1/2), f(1))` when available.
    pub fn boundary_values_exact(&self) -> Option<(Rational, Rational, Rational)> {
        Some((
            self.eval_exact(&Rational::zero())?,
            self.eval_exact(&rat(1, 2))?,
            self.eval_exact(&Rational::one())?,
        ))
    }

    /// The exact polynomial this spec reduces to, if any (polynomials
    /// and reflect/negate chains over them).
    pub fn as_polynomial(&self) -> Option<RationalPoly> {
        match self {
            FunctionSpec::Polynomial(p) => Some(p.clone()),
            FunctionSpec::Reflect(inner) => {
                // p(1 - x)
                let p = inner.as_polynomial()?;
                Some(p.compose_affine(&-Rational::one(), &Rational::one()))
            }
            FunctionSpec::Negate(inner) => Some(inner.as_polynomial()?.neg()),
            _ => None,
        }
    }

    /// The symmetrization `𝓕(x) = (f(x) + f(1-x))/2`. Polynomial input
    /// yields an exact polynomial; anything else is built structurally
    /// from [`FunctionSpec::AffineSum`] and [`FunctionSpec::Reflect`]
    /// (so the result is symmetric about 1/2 by construction).
    pub fn symmetrize(&self) -> FunctionSpec {
        if let Some(p) = self.as_polynomial() {
            let reflected = p.compose_affine(&-Rational::one(), &Rational::one());
            return FunctionSpec::Polynomial(p.add(&reflected).scale(&rat(1, 2)));
        }
        FunctionSpec::AffineSum {
            c1: 0.5,
            f1: Box::new(self.clone()),
            c2: 0.5,
            f2: Box::new(FunctionSpec::Reflect(Box::new(self.clone()))),
        }
    }

    /// Whether a black box occurs anywhere in the spec tree.
    pub fn contains_black_box(&self) -> bool {
        match self {
            FunctionSpec::BlackBox(_) => true,
            FunctionSpec::Reflect(inner) | FunctionSpec::Negate(inner) => {
                inner.contains_black_box()
            }
            FunctionSpec::AffineSum { f1, f2, .. } => {
                f1.contains_black_box() || f2.contains_black_box()
            }
            _ => false,
        }
    }

    /// Default scan tolerance: 1e-12 for analytic specs, 1e-9 when a
    /// black box is involved.
    pub fn default_tolerance(&self) -> f64 {
        if self.contains_black_box() {
            1e-9
        } else {
            1e-12
        }
    }

    /// Samples `grid_size` equispaced points (endpoints included) and
    /// judges shape from first/second differences under `tolerance`.
    pub fn probe_shape(&self, grid_size: usize, tolerance: f64) -> Result<ShapeReport> {
        if grid_size < 8 {
            return Err(Error::Parameter(format!(
                "shape probes need at least 8 grid points, got {grid_size}"
            )));
        }
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::Parameter("probe tolerance must be positive".into()));
        }
        let m = grid_size;
        let mut values = Vec::with_capacity(m);
        for i in 0..m {
            let x = i as f64 / (m - 1) as f64;
            values.push(self.eval(x)?);
        }
        let mut increasing = true;
        let mut decreasing = true;
        for w in values.windows(2) {
            let d = w[1] - w[0];
            if d < -tolerance {
                increasing = false;
            }
            if d > tolerance {
                decreasing = false;
            }
        }
        let mut convex = true;
        let mut concave = true;
        for w in values.windows(3) {
            let s = w[2] - 2.0 * w[1] + w[0];
            if s < -tolerance {
                convex = false;
            }
            if s > tolerance {
                concave = false;
            }
        }
        Ok(ShapeReport {
            increasing,
            decreasing,
            convex,
            concave,
            f0: values[0],
            f_half: self.eval(0.5)?,
            f1: values[m - 1],
            grid_size,
            tolerance,
        })
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Polynomial(p) => {
                if p.is_zero() {
                    return write!(f, "poly:0");
                }
                write!(f, "poly:")?;
                for (i, c) in p.coeffs().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            FunctionSpec::FbFamily { b } => write!(f, "fb:{b}"),
            FunctionSpec::Fourier(fs) => write!(f, "fourier:{fs}"),
            FunctionSpec::BlackBox(bb) => write!(f, "blackbox:{}", bb.name()),
            FunctionSpec::Reflect(inner) => write!(f, "reflect({inner})"),
            FunctionSpec::Negate(inner) => write!(f, "neg({inner})"),
            FunctionSpec::AffineSum { c1, f1, c2, f2 } => {
                write!(f, "sum({c1},{f1},{c2},{f2})")
            }
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

/// Positions of commas at parenthesis depth zero.
fn top_level_commas(text: &str) -> Vec<usize> {
    let mut depth = 0usize;
    let mut out = Vec::new();
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => out.push(i),
            _ => {}
        }
    }
    out
}

/// If `text` is exactly `name(<inner>)` with balanced parentheses,
/// returns `inner`.
fn strip_call<'a>(text: &'a str, name: &str) -> Option<&'a str> {
    let inner = text.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i64;
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    (depth == 0).then_some(inner)
}

fn parse_coefficient(text: &str) -> Result<f64> {
    let t = text.trim();
    if let Ok(v) = t.parse::<f64>() {
        if v.is_finite() {
            return Ok(v);
        }
    }
    parse_rational(t).map(|r| rational_to_f64(&r))
}

/// Parses the function-spec mini-grammar. See the module docs for the
/// forms; inverse of [`FunctionSpec`]'s `Display`.
pub fn parse_spec(text: &str) -> Result<FunctionSpec> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty function spec".into()));
    }
    if let Some(inner) = strip_call(t, "reflect") {
        return Ok(FunctionSpec::Reflect(Box::new(parse_spec(inner)?)));
    }
    if let Some(inner) = strip_call(t, "neg") {
        return Ok(FunctionSpec::Negate(Box::new(parse_spec(inner)?)));
    }
    if let Some(inner) = strip_call(t, "sum") {
        return parse_affine_sum(inner);
    }
    if let Some(rest) = t.strip_prefix("poly:") {
        let coeffs: Result<Vec<Rational>> = rest.split(',').map(parse_rational).collect();
        return Ok(FunctionSpec::Polynomial(RationalPoly::new(coeffs?)));
    }
    if let Some(rest) = t.strip_prefix("fb:") {
        let b = parse_coefficient(rest)?;
        return FunctionSpec::fb(b);
    }
    if let Some(rest) = t.strip_prefix("fourier:") {
        return Ok(FunctionSpec::Fourier(FourierSpec::parse(rest)?));
    }
    Err(Error::Parse(format!(
        "unrecognized function spec `{t}` (expected poly:, fb:, fourier:, reflect(), neg(), or sum())"
    )))
}

/// Parses the body of `sum(<c1>,<spec1>,<c2>,<spec2>)`. Polynomial specs
/// contain top-level commas themselves, so the boundary between `spec1`
/// and `c2` is found by trying each top-level comma left to right and
/// accepting the first split where all four pieces parse.
fn parse_affine_sum(inner: &str) -> Result<FunctionSpec> {
    let commas = top_level_commas(inner);
    let first = *commas.first().ok_or_else(|| {
        Error::Parse("sum() needs four comma-separated arguments".into())
    })?;
    let c1 = parse_coefficient(&inner[..first])?;
    let rest = &inner[first + 1..];
    let rest_offset = first + 1;
    for &pos in &commas[1..] {
        let split = pos - rest_offset;
        let Ok(f1) = parse_spec(&rest[..split]) else {
            continue;
        };
        let tail = &rest[split + 1..];
        let tail_commas = top_level_commas(tail);
        let Some(&c2_end) = tail_commas.first() else {
            continue;
        };
        let Ok(c2) = parse_coefficient(&tail[..c2_end]) else {
            continue;
        };
        let Ok(f2) = parse_spec(&tail[c2_end + 1..]) else {
            continue;
        };
        return Ok(FunctionSpec::AffineSum {
            c1,
            f1: Box::new(f1),
            c2,
            f2: Box::new(f2),
        });
    }
    Err(Error::Parse(format!(
        "could not parse `sum({inner})` as sum(<c1>,<spec1>,<c2>,<spec2>)"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::rat_int;

    fn poly_spec(coeffs: &[(i64, i64)]) -> FunctionSpec {
        FunctionSpec::Polynomial(RationalPoly::new(
            coeffs.iter().map(|&(n, d)| rat(n, d)).collect(),
        ))
    }

    #[test]
    fn eval_examples() {
        let one = poly_spec(&[(1, 1)]);
        assert_eq!(one.eval(0.37).unwrap(), 1.0);
        let fb1 = FunctionSpec::fb(1.0).unwrap();
        assert!((fb1.eval(0.5).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        let fb0 = FunctionSpec::fb(0.0).unwrap();
        assert!((fb0.eval(1.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn domain_and_parameter_errors() {
        let one = poly_spec(&[(1, 1)]);
        assert!(matches!(one.eval(-0.01), Err(Error::Domain(_))));
        assert!(matches!(one.eval(1.01), Err(Error::Domain(_))));
        assert!(matches!(one.eval(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(FunctionSpec::fb(2.0), Err(Error::Parameter(_))));
        assert!(matches!(FunctionSpec::fb(2.5), Err(Error::Parameter(_))));
        let raw = FunctionSpec::FbFamily { b: 3.0 };
        assert!(matches!(raw.eval(0.5), Err(Error::Parameter(_))));
    }

    #[test]
    fn reflect_twice_is_identity() {
        let spec = FunctionSpec::fb(0.7).unwrap();
        let double = FunctionSpec::Reflect(Box::new(FunctionSpec::Reflect(Box::new(
            spec.clone(),
        ))));
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            assert!((double.eval(x).unwrap() - spec.eval(x).unwrap()).abs() <= 1e-15);
        }
    }

    #[test]
    fn symmetrize_linear_is_constant_half() {
        let linear = poly_spec(&[(0, 1), (1, 1)]);
        let sym = linear.symmetrize();
        assert_eq!(sym, poly_spec(&[(1, 2)]));
    }

    #[test]
    fn symmetrize_is_pointwise_symmetric_and_idempotent() {
        let spec = FunctionSpec::fb(1.3).unwrap();
        let sym = spec.symmetrize();
        let sym2 = sym.symmetrize();
        for i in 0..=64 {
            let x = i as f64 / 64.0;
            let v = sym.eval(x).unwrap();
            assert!((v - sym.eval(1.0 - x).unwrap()).abs() <= 1e-14);
            assert!((v - sym2.eval(x).unwrap()).abs() <= 1e-14);
        }
        // f_1(0) = f_1(1) = 1, so the symmetrization keeps value 1 at 0.
        let sym_fb1 = FunctionSpec::fb(1.0).unwrap().symmetrize();
        assert!((sym_fb1.eval(0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exact_eval_matches_float_eval() {
        let spec = poly_spec(&[(1, 3), (-2, 7), (0, 1), (5, 11)]);
        for i in 0..=20 {
            let x = rat(i, 20);
            let exact = rational_to_f64(&spec.eval_exact(&x).unwrap());
            let float = spec.eval(i as f64 / 20.0).unwrap();
            let scale = exact.abs().max(1.0);
            assert!((exact - float).abs() / scale <= 1e-12);
        }
        let fb = FunctionSpec::fb(0.5).unwrap();
        let exact = fb.eval_exact(&rat(1, 2)).unwrap();
        // f_{1/2}(1/2) = 1/(1 - 1/4 + 1/4) = 1
        assert_eq!(exact, rat_int(1));
    }

    #[test]
    fn probe_shape_examples() {
        let linear = poly_spec(&[(0, 1), (1, 1)]);
        let report = linear.probe_shape(64, 1e-12).unwrap();
        assert!(report.increasing && !report.decreasing);
        assert!(report.convex && report.concave);

        let decreasing_linear = poly_spec(&[(1, 1), (-1, 1)]);
        let report = decreasing_linear.probe_shape(64, 1e-12).unwrap();
        assert!(report.decreasing && !report.increasing);
        assert!(report.convex && report.concave);

        // 1/(1+x²) decreases and inflects at 1/√3.
        let fb0 = FunctionSpec::fb(0.0).unwrap();
        let report = fb0.probe_shape(256, 1e-9).unwrap();
        assert!(report.decreasing && !report.increasing);
        assert!(!report.convex && !report.concave);
    }

    #[test]
    fn probe_shape_negation_swaps_verdicts() {
        let spec = FunctionSpec::fb(1.2).unwrap();
        let report = spec.probe_shape(128, 1e-9).unwrap();
        let neg_report = FunctionSpec::Negate(Box::new(spec))
            .probe_shape(128, 1e-9)
            .unwrap();
        assert_eq!(report.increasing, neg_report.decreasing);
        assert_eq!(report.decreasing, neg_report.increasing);
        assert_eq!(report.convex, neg_report.concave);
        assert_eq!(report.concave, neg_report.convex);
    }

    #[test]
    fn probe_shape_guards() {
        let spec = poly_spec(&[(1, 1)]);
        assert!(spec.probe_shape(7, 1e-9).is_err());
        assert!(spec.probe_shape(64, 0.0).is_err());
    }

    #[test]
    fn grammar_round_trips() {
        let texts = [
            "poly:0,1",
            "poly:1/2,-2/3,0,5/7",
            "fb:1.3",
            "fb:-2",
            "fourier:expcos",
            "fourier:cos:3",
            "fourier:const:2.5",
            "reflect(poly:0,1)",
            "neg(fb:0.5)",
            "sum(0.5,poly:0,1,0.5,reflect(poly:0,1))",
            "sum(1,poly:1,2,poly:3)",
        ];
        for text in texts {
            let spec = parse_spec(text).unwrap();
            let printed = spec.to_string();
            let reparsed = parse_spec(&printed).unwrap();
            assert_eq!(spec, reparsed, "round trip of `{text}` via `{printed}`");
        }
    }

    #[test]
    fn grammar_parses_decimals_and_rationals() {
        let a = parse_spec("poly:0.5,-0.25").unwrap();
        let b = parse_spec("poly:1/2,-1/4").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn grammar_rejects_malformed_input() {
        for text in [
            "",
            "poly:",
            "poly:abc",
            "fb:2.5",
            "fourier:nope",
            "reflect(poly:1",
            "sum(1,poly:1)",
            "mystery:1",
            "blackbox:anything",
        ] {
            assert!(parse_spec(text).is_err(), "`{text}` should not parse");
        }
    }

    #[test]
    fn nested_sum_disambiguation() {
        // spec1 = poly:0,1 (contains a comma), c2 = 1/2, spec2 nested sum.
        let text = "sum(0.5,poly:0,1,0.5,sum(1,poly:1,2,poly:3))";
        let spec = parse_spec(text).unwrap();
        let FunctionSpec::AffineSum { c1, f1, c2, f2 } = &spec else {
            panic!("expected affine sum");
        };
        assert_eq!(*c1, 0.5);
        assert_eq!(**f1, parse_spec("poly:0,1").unwrap());
        assert_eq!(*c2, 0.5);
        assert_eq!(**f2, parse_spec("sum(1,poly:1,2,poly:3)").unwrap());
        // value check at x = 1: 0.5·1 + 0.5·(1·1 + 2·3) = 4
        assert!((spec.eval(1.0).unwrap() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn default_tolerances() {
        let analytic = FunctionSpec::fb(1.0).unwrap();
        assert_eq!(analytic.default_tolerance(), 1e-12);
        let bb = FunctionSpec::BlackBox(BlackBoxFn::new("exp", Arc::new(|x: f64| x.exp())));
        assert_eq!(bb.default_tolerance(), 1e-9);
        let wrapped = FunctionSpec::Negate(Box::new(bb));
        assert_eq!(wrapped.default_tolerance(), 1e-9);
    }
}
