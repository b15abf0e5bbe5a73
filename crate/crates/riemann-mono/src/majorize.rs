//! Majorization toolkit.
//!
//! For vectors sorted in increasing order, `x` is *weakly
//! supermajorized* by `y` (written `x ≺^w y`) when every prefix sum of
//! `x` dominates the corresponding prefix sum of `y`; full majorization
//! additionally requires equal totals. By the Hardy–Littlewood–Pólya
//! criterion, `x ≺^w y` holds exactly when `Σφ(x_j) ≤ Σφ(y_j)` for every
//! decreasing convex `φ` — [`hlp_oracle`] probes that characterization
//! with random piecewise-linear test functions.
//!
//! The payoff for Riemann sums: [`lemma_vectors`] builds, for each `n`,
//! the pair of node multisets comparing the `n`- and `(n+1)`-point
//! uniform grids. The weak supermajorization of that pair is precisely
//! what makes `R_n(f) ≤ R_{n+1}(f)` for every decreasing convex `f` —
//! the majorization route to the endpoint-sum monotonicity theorem.
//! Prefix sums of these vectors are exact rationals, so the lemma is
//! checked in exact arithmetic; general float inputs are compared under
//! a 1e-12 tolerance.

use num::{BigInt, Zero};

use crate::polyexact::{rat, Rational};
use crate::{Error, Result};

/// Tolerance for prefix-sum comparisons on floating-point vectors.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// A pair of equal-length real vectors to compare under majorization.
#[derive(Clone, Debug, PartialEq)]
pub struct MajorizationInstance {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl MajorizationInstance {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch(format!(
                "majorization compares equal-length vectors, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        Ok(MajorizationInstance { x, y })
    }
}

fn sorted_increasing(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).expect("finite entries"));
    s
}

/// `x ≺^w y`: with both vectors sorted increasingly, every prefix sum of
/// `x` is ≥ the corresponding prefix sum of `y` (within
/// [`FLOAT_TOLERANCE`]).
pub fn weak_supermajorizes(x: &[f64], y: &[f64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(format!(
            "majorization compares equal-length vectors, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let xs = sorted_increasing(x);
    let ys = sorted_increasing(y);
    let mut px = 0.0f64;
    let mut py = 0.0f64;
    for (a, b) in xs.iter().zip(&ys) {
        px += a;
        py += b;
        if px < py - FLOAT_TOLERANCE {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full majorization: weak supermajorization plus total-sum equality
/// (within [`FLOAT_TOLERANCE`]).
pub fn majorizes(x: &[f64], y: &[f64]) -> Result<bool> {
    if !weak_supermajorizes(x, y)? {
        return Ok(false);
    }
    let tx: f64 = x.iter().sum();
    let ty: f64 = y.iter().sum();
    Ok((tx - ty).abs() <= FLOAT_TOLERANCE)
}

/// Exact-rational weak supermajorization. Returns the 1-based index of
/// the first failing prefix, or `None` when `x ≺^w y` holds.
pub fn weak_supermajorizes_exact(x: &[Rational], y: &[Rational]) -> Result<Option<usize>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(format!(
            "majorization compares equal-length vectors, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort();
    ys.sort();
    let mut px = Rational::zero();
    let mut py = Rational::zero();
    for (i, (a, b)) in xs.iter().zip(&ys).enumerate() {
        px += a;
        py += b;
        if px < py {
            return Ok(Some(i + 1));
        }
    }
    Ok(None)
}

/// The grid-comparison vectors for index `n`, as exact rationals:
/// `x` holds each `j/n` (j = 1..n) repeated `n+1` times, `y` holds each
/// `j/(n+1)` (j = 1..n+1) repeated `n` times; both have length `n(n+1)`.
pub fn lemma_vectors_exact(n: u32) -> (Vec<Rational>, Vec<Rational>) {
    let n = i64::from(n);
    let mut x = Vec::with_capacity((n * (n + 1)) as usize);
    let mut y = Vec::with_capacity((n * (n + 1)) as usize);
    for j in 1..=n {
        for _ in 0..=n {
            x.push(rat(j, n));
        }
    }
    for j in 1..=n + 1 {
        for _ in 0..n {
            y.push(rat(j, n + 1));
        }
    }
    (x, y)
}

/// Float rendering of [`lemma_vectors_exact`].
pub fn lemma_vectors(n: u32) -> MajorizationInstance {
    let nf = f64::from(n);
    let (mut x, mut y) = (Vec::new(), Vec::new());
    for j in 1..=n {
        for _ in 0..=n {
            x.push(f64::from(j) / nf);
        }
    }
    for j in 1..=n + 1 {
        for _ in 0..n {
            y.push(f64::from(j) / (nf + 1.0));
        }
    }
    MajorizationInstance { x, y }
}

/// Closed form for the prefix sums of the sorted `x` of
/// [`lemma_vectors_exact`]: for `m(n+1) ≤ k ≤ (m+1)(n+1)`,
/// `Σ_{j≤k} x_j = ((m+1)/n)·(k − m(n+1)/2)`.
pub fn lemma_prefix_x_closed_form(n: u32, m: u32, k: u64) -> Rational {
    let n = i64::from(n);
    let m = i64::from(m);
    let k = Rational::from_integer(BigInt::from(k));
    rat(m + 1, n) * (k - rat(m * (n + 1), 2))
}

/// Probes the HLP characterization of `x ≺^w y` with `trials` random
/// decreasing convex piecewise-linear functions `φ` (8 segments over the
/// data range; slopes drawn uniformly from [-2, 0], sorted increasingly
/// so the result is convex). Returns `true` iff `Σφ(x_j) ≤ Σφ(y_j)` held
/// for every trial.
///
/// One-sided by construction: a `true` answer is only evidence (finitely
/// many φ were tried), while a `false` answer exhibits a decreasing
/// convex function witnessing that `x ≺^w y` fails. Reproducible for a
/// fixed seed; trials may be split across seeds for parallel runs.
pub fn hlp_oracle(instance: &MajorizationInstance, trials: u32, seed: u64) -> bool {
    use rand::{Rng, SeedableRng};
    const SEGMENTS: usize = 8;
    let lo = instance
        .x
        .iter()
        .chain(&instance.y)
        .fold(f64::INFINITY, |a, &b| a.min(b));
    let hi = instance
        .x
        .iter()
        .chain(&instance.y)
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    if hi <= lo || hi.is_nan() || lo.is_nan() {
        // Degenerate range: every φ is constant on it; Σφ(x) = Σφ(y).
        return true;
    }
    let seg = (hi - lo) / SEGMENTS as f64;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut slopes = [0.0f64; SEGMENTS];
        for s in slopes.iter_mut() {
            *s = rng.random_range(-2.0..=0.0);
        }
        slopes.sort_by(|a, b| a.partial_cmp(b).expect("finite slopes"));
        // φ(lo) = 0; cumulative values at segment boundaries.
        let mut knots = [0.0f64; SEGMENTS + 1];
        for i in 0..SEGMENTS {
            knots[i + 1] = knots[i] + slopes[i] * seg;
        }
        let phi = |v: f64| -> f64 {
            let i = (((v - lo) / seg).floor() as usize).min(SEGMENTS - 1);
            knots[i] + slopes[i] * (v - (lo + i as f64 * seg))
        };
        let sum_x: f64 = instance.x.iter().map(|&v| phi(v)).sum();
        let sum_y: f64 = instance.y.iter().map(|&v| phi(v)).sum();
        if sum_x > sum_y + FLOAT_TOLERANCE {
            return false;
        }
    }
    true
}
