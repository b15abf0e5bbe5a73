//! Sturm-sequence root counting and isolation, entirely over the
//! rationals.
//!
//! Used by the exact monotonicity decision: the forward-difference
//! numerator `D(n)` has finitely many real roots; isolating them into
//! narrow rational intervals reduces "sign of `D` at every integer
//! `n ≥ n₀`" to finitely many exact evaluations.

use super::poly::{rat, Rational, RationalPoly};

/// Sturm chain of a (square-free) polynomial.
pub struct SturmChain {
    chain: Vec<RationalPoly>,
}

impl SturmChain {
    /// Builds the chain `p, p', -rem(p, p'), ...` for a non-zero
    /// polynomial. Callers normally pass a square-free polynomial; the
    /// chain still counts *distinct* roots otherwise.
    pub fn new(p: &RationalPoly) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
            loop {
                let len = chain.len();
                let (_, r) = chain[len - 2]
                    .divrem(&chain[len - 1])
                    .expect("chain members are non-zero");
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg());
            }
        }
        SturmChain { chain }
    }

    /// Number of sign variations of the chain at `x` (zeros skipped).
    pub fn variations_at(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut prev: i8 = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_in(&self, a: &Rational, b: &Rational) -> usize {
        debug_assert!(a < b);
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Isolates every distinct real root of `p` in `(lo, hi]` into disjoint
/// half-open rational intervals `(a, b]`, each containing exactly one
/// root and of width at most `max_width`. Intervals are returned in
/// increasing order.
pub fn isolate_roots(
    p: &RationalPoly,
    lo: &Rational,
    hi: &Rational,
    max_width: &Rational,
) -> Vec<(Rational, Rational)> {
    if p.is_zero() || p.degree() == Some(0) {
        return Vec::new();
    }
    let chain = SturmChain::new(p);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let count = chain.count_roots_in(&a, &b);
        if count == 0 {
            continue;
        }
        let width = &b - &a;
        if count == 1 && width <= *max_width {
            out.push((a, b));
            continue;
        }
        let mid = (&a + &b) / rat(2, 1);
        // Push left before right so the stack pops left-first is not
        // guaranteed; sort at the end instead.
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Isolates all real roots of `p` (over the whole line) to width
/// `max_width`, using the Cauchy bound for the search box.
pub fn isolate_all_roots(p: &RationalPoly, max_width: &Rational) -> Vec<(Rational, Rational)> {
    if p.is_zero() {
        return Vec::new();
    }
    let bound = p.cauchy_root_bound();
    isolate_roots(p, &(-bound.clone()), &bound, max_width)
}

/// Refines an isolating interval `(a, b]` of `p` by bisection until its
/// width is at most `target_width`, preserving the invariant that the
/// (unique) root stays inside.
pub fn refine_interval(
    p: &RationalPoly,
    mut a: Rational,
    mut b: Rational,
    target_width: &Rational,
) -> (Rational, Rational) {
    let chain = SturmChain::new(p);
    debug_assert_eq!(chain.count_roots_in(&a, &b), 1);
    while &b - &a > *target_width {
        let mid = (&a + &b) / rat(2, 1);
        if chain.count_roots_in(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    (a, b)
}

/// Finds the unique root of `p` inside `(a, b]` as an `f64`, by bisecting
/// to the requested absolute accuracy.
pub fn root_to_f64(p: &RationalPoly, a: Rational, b: Rational, accuracy: f64) -> f64 {
    use super::poly::rational_to_f64;
    let mut lo = a;
    let mut hi = b;
    let chain = SturmChain::new(p);
    while rational_to_f64(&(&hi - &lo)) > accuracy {
        let mid = (&lo + &hi) / rat(2, 1);
        if chain.count_roots_in(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    rational_to_f64(&((&lo + &hi) / rat(2, 1)))
}

/// Decides whether `q(x) ≥ 0` for every `x` in `[lo, hi]`, exactly.
///
/// The distinct real roots of `q` split `[lo, hi]` into finitely many
/// open pieces on which the sign of `q` is constant, so one exact
/// evaluation per piece (plus the endpoints) settles the question. Used
/// to decide monotonicity/convexity of rational polynomials on `[0, 1]`
/// without tolerances.
pub fn poly_nonneg_on(q: &RationalPoly, lo: &Rational, hi: &Rational) -> bool {
    if q.is_zero() {
        return true;
    }
    if q.sign_at(lo) < 0 || q.sign_at(hi) < 0 {
        return false;
    }
    let sf = q.squarefree_part();
    let chain = SturmChain::new(&sf);
    let mut intervals = isolate_roots(&sf, lo, hi, &rat(1, 4));
    // The piece strictly after the last root is covered by the `hi`
    // endpoint check: if `q(hi) = 0`, `hi` itself is the last root and
    // the piece is empty; otherwise the constant sign there is `q(hi)`.
    // The pieces before each root are sampled at the interval left
    // endpoints, refined until they strictly separate from the previous
    // root's interval (so the sample provably sits between two roots).
    let mut prev_bound = lo.clone();
    for iv in intervals.iter_mut() {
        while iv.0 <= prev_bound {
            let mid = (&iv.0 + &iv.1) / rat(2, 1);
            if chain.count_roots_in(&iv.0, &mid) == 1 {
                iv.1 = mid;
            } else {
                iv.0 = mid;
            }
        }
        if q.sign_at(&iv.0) < 0 {
            return false;
        }
        prev_bound = iv.1.clone();
    }
    true
}

/// `q(x) ≤ 0` on `[lo, hi]`, exactly.
pub fn poly_nonpos_on(q: &RationalPoly, lo: &Rational, hi: &Rational) -> bool {
    poly_nonneg_on(&q.neg(), lo, hi)
}

/// Exact sign classification of `q` on `[lo, hi]`:
/// `(nonnegative, nonpositive)`. `(true, true)` means identically zero.
pub fn poly_sign_class_on(q: &RationalPoly, lo: &Rational, hi: &Rational) -> (bool, bool) {
    (poly_nonneg_on(q, lo, hi), poly_nonpos_on(q, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::poly::rat_int;

    fn poly(coeffs: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn counts_roots_of_quadratic() {
        // (x - 1)(x - 3) = x^2 - 4x + 3
        let p = poly(&[(3, 1), (-4, 1), (1, 1)]);
        let chain = SturmChain::new(&p);
        assert_eq!(chain.count_roots_in(&rat_int(0), &rat_int(4)), 2);
        assert_eq!(chain.count_roots_in(&rat_int(0), &rat_int(2)), 1);
        assert_eq!(chain.count_roots_in(&rat_int(4), &rat_int(9)), 0);
        // half-open convention: root at the right endpoint is counted,
        // at the left endpoint it is not
        assert_eq!(chain.count_roots_in(&rat_int(0), &rat_int(1)), 1);
        assert_eq!(chain.count_roots_in(&rat_int(1), &rat_int(2)), 0);
    }

    #[test]
    fn isolates_square_roots() {
        // x^2 - 2: roots ±√2
        let p = poly(&[(-2, 1), (0, 1), (1, 1)]);
        let intervals = isolate_all_roots(&p, &rat(1, 16));
        assert_eq!(intervals.len(), 2);
        let sqrt2 = 2f64.sqrt();
        let approx: Vec<f64> = intervals
            .iter()
            .map(|(a, b)| root_to_f64(&p, a.clone(), b.clone(), 1e-12))
            .collect();
        assert!((approx[0] + sqrt2).abs() < 1e-10);
        assert!((approx[1] - sqrt2).abs() < 1e-10);
    }

    #[test]
    fn isolates_clustered_roots() {
        // roots at 0.5 and 0.50390625 = 129/256 (closer than the width cap)
        let r1 = rat(1, 2);
        let r2 = rat(129, 256);
        let p = RationalPoly::new(vec![&r1 * &r2, -(&r1 + &r2), rat_int(1)]);
        let intervals = isolate_all_roots(&p, &rat(1, 4));
        assert_eq!(intervals.len(), 2);
        assert!(intervals[0].1 <= intervals[1].0);
    }

    #[test]
    fn nonneg_on_unit_interval() {
        // x(1 - x) ≥ 0 on [0, 1]
        let p = poly(&[(0, 1), (1, 1), (-1, 1)]);
        assert!(poly_nonneg_on(&p, &rat_int(0), &rat_int(1)));
        assert!(!poly_nonpos_on(&p, &rat_int(0), &rat_int(1)));
        // x - 1/2 changes sign on [0, 1]
        let q = poly(&[(-1, 2), (1, 1)]);
        assert!(!poly_nonneg_on(&q, &rat_int(0), &rat_int(1)));
        assert!(!poly_nonpos_on(&q, &rat_int(0), &rat_int(1)));
        // (x - 1/2)^2 ≥ 0 with a double root inside
        let sq = q.mul(&q);
        assert!(poly_nonneg_on(&sq, &rat_int(0), &rat_int(1)));
        // zero polynomial is both
        assert_eq!(
            poly_sign_class_on(&RationalPoly::zero(), &rat_int(0), &rat_int(1)),
            (true, true)
        );
    }

    #[test]
    fn refinement_narrows_and_keeps_root() {
        let p = poly(&[(-2, 1), (0, 1), (1, 1)]); // x^2 - 2
        let intervals = isolate_all_roots(&p, &rat(1, 2));
        let (a, b) = intervals.last().unwrap().clone();
        let (ra, rb) = refine_interval(&p, a, b, &rat(1, 1 << 20));
        let chain = SturmChain::new(&p);
        assert_eq!(chain.count_roots_in(&ra, &rb), 1);
        assert!(&rb - &ra <= rat(1, 1 << 20));
    }
}
