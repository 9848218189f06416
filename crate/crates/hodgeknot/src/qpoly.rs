//! Dense univariate polynomials over the rational numbers.
//!
//! This is the exact-arithmetic workhorse underneath everything else:
//! Euclidean division, gcd and extended gcd, Yun squarefree decomposition,
//! Sturm sequences, and bisection-based real-root isolation. All operations
//! are exact; no floating point enters any decision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Convenience constructor for an integer rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Convenience constructor for the rational `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational from `"p/q"` or `"p"` decimal-integer notation.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

/// Format a rational as `p` or `p/q`.
pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Sign of a rational as -1, 0, +1.
pub fn sign_q(q: &Q) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// A dense univariate polynomial over `Q`.
///
/// Invariant: the coefficient vector has no trailing zeros; the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(Q::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        QPoly {
            coeffs: vec![Q::zero(), Q::one()],
        }
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            QPoly::zero()
        } else {
            QPoly { coeffs: vec![c] }
        }
    }

    /// Build from a coefficient vector in ascending degree order.
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Build from small integer coefficients, ascending degree.
    pub fn from_ints(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&n| qi(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a nonzero polynomial (panics on zero).
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    /// Coefficient of `x^i` (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Leading coefficient (panics on zero).
    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().expect("lc of zero polynomial")
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Q) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        QPoly { coeffs: out }
    }

    pub fn pow(&self, mut e: usize) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let dlc = d.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (QPoly::zero(), self.clone());
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![Q::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            let f = c / dlc.clone();
            quot[i] = f.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &f * dc;
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, d: &QPoly) -> QPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    /// True if `d` divides `self`.
    pub fn divisible_by(&self, d: &QPoly) -> bool {
        if self.is_zero() {
            return true;
        }
        let (_, r) = self.divrem(d);
        r.is_zero()
    }

    /// Multiplicity of the factor `d` in `self` (0 when no division occurs).
    pub fn valuation(&self, d: &QPoly) -> usize {
        assert!(!self.is_zero() && d.degree().map_or(false, |k| k >= 1));
        let mut v = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(d);
            if r.is_zero() {
                v += 1;
                cur = q;
            } else {
                return v;
            }
        }
    }

    /// Make monic (panics on zero).
    pub fn monic(&self) -> QPoly {
        let l = self.lc();
        self.scale(&(Q::one() / l))
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c * Q::from_integer(BigInt::from(i)));
        }
        QPoly::new(out)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Monic gcd via the Euclidean algorithm; `gcd(0,0) = 0`.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`,
    /// `g` monic (or zero).
    pub fn extended_gcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let ns = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = ns;
            let nt = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = nt;
        }
        if r0.is_zero() {
            (r0, s0, t0)
        } else {
            let l = r0.lc();
            let inv = Q::one() / l;
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }

    /// Squarefree part: `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> QPoly {
        assert!(!self.is_zero());
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.monic()
        } else {
            self.exact_div(&g).monic()
        }
    }

    /// Yun squarefree decomposition of a nonzero polynomial: returns pairs
    /// `(g_i, i)` with `self = lc * prod g_i^i`, each `g_i` monic squarefree,
    /// pairwise coprime, non-constant.
    pub fn yun_squarefree(&self) -> Vec<(QPoly, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.deg() == 0 {
            return vec![];
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        if a0.degree() == Some(0) {
            return vec![(f, 1)];
        }
        let mut out = vec![];
        let mut b = f.exact_div(&a0);
        let mut c = fp.exact_div(&a0);
        let mut i = 1;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.deg() > 0 {
                    out.push((b.monic(), i));
                }
                break;
            }
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            i += 1;
            if b.degree() == Some(0) {
                break;
            }
        }
        out
    }

    /// Reverse coefficients: `x^deg * p(1/x)`.
    pub fn reversed(&self) -> QPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        QPoly::new(c)
    }

    /// Cauchy root bound: every real root has absolute value `< bound`.
    pub fn root_bound(&self) -> Q {
        assert!(!self.is_zero());
        let lc = self.lc().abs();
        let mut m = Q::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let a = c.abs() / lc.clone();
            if a > m {
                m = a;
            }
        }
        m + Q::one()
    }

    /// Compose `self(g(x))` (used for small rewrites only).
    pub fn compose(&self, g: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&QPoly::constant(c.clone()));
        }
        acc
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", fmt_q(&a))?;
            }
            if i >= 1 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// Sturm sequence of `p` (canonical: `p, p', -rem, ...`).
pub fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].divrem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq
}

fn sign_variations(seq: &[QPoly], x: &Q) -> usize {
    let mut last: i8 = 0;
    let mut v = 0;
    for p in seq {
        let s = sign_q(&p.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Exact number of distinct real roots of squarefree `p` in the open
/// interval `(a, b)`. Requires `p(a) != 0` and `p(b) != 0`.
pub fn sturm_count(p: &QPoly, a: &Q, b: &Q) -> usize {
    assert!(a < b, "empty interval");
    assert!(!p.is_zero());
    assert!(
        !p.eval(a).is_zero() && !p.eval(b).is_zero(),
        "sturm_count: endpoint is a root"
    );
    let seq = sturm_sequence(p);
    let va = sign_variations(&seq, a);
    let vb = sign_variations(&seq, b);
    va - vb
}

/// Like [`sturm_count`] but reuses a precomputed Sturm sequence.
pub fn sturm_count_with(seq: &[QPoly], a: &Q, b: &Q) -> usize {
    sign_variations(seq, a) - sign_variations(seq, b)
}

/// Pick a point strictly inside `(a, b)` that is not a root of `p`,
/// preferring the midpoint. Deterministic.
pub fn non_root_point(p: &QPoly, a: &Q, b: &Q) -> Q {
    let two = qi(2);
    let mid = (a + b) / two;
    if !p.eval(&mid).is_zero() {
        return mid;
    }
    // Walk through a deterministic sequence of interior points; only
    // finitely many are roots, so this terminates.
    let mut k = 3i64;
    loop {
        let m = (a.clone() * qi(k - 1) + b.clone()) / qi(k);
        if &m > a && &m < b && !p.eval(&m).is_zero() {
            return m;
        }
        k += 1;
    }
}

/// Isolate all real roots of a squarefree polynomial.
///
/// Returns disjoint open intervals `(a, b)` in ascending order, each
/// containing exactly one real root, with `p(a) != 0`, `p(b) != 0` and a
/// sign change across the interval.
pub fn isolate_real_roots(p: &QPoly) -> Vec<(Q, Q)> {
    assert!(!p.is_zero());
    if p.deg() == 0 {
        return vec![];
    }
    debug_assert!(
        p.gcd(&p.derivative()).degree() == Some(0),
        "isolate_real_roots requires squarefree input"
    );
    let bound = p.root_bound();
    let lo = -bound.clone();
    let hi = bound;
    let seq = sturm_sequence(p);
    let mut out = vec![];
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let n = sturm_count_with(&seq, &a, &b);
        match n {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let m = non_root_point(p, &a, &b);
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Count real roots of squarefree `p` in `(a, b)`, tolerating root
/// endpoints by shrinking inward with non-root cut points.
pub fn count_roots_open(p: &QPoly, a: &Q, b: &Q) -> usize {
    if a >= b {
        return 0;
    }
    let mut lo = a.clone();
    let mut hi = b.clone();
    if p.eval(&lo).is_zero() || p.eval(&hi).is_zero() {
        // Move endpoints inward past any root without crossing another:
        // refine by thirds until the endpoint values are nonzero.
        let seq = sturm_sequence(p);
        // Shrink from each root endpoint by an amount smaller than the
        // distance to the nearest other root, found by bisection.
        let mut step = (hi.clone() - lo.clone()) / qi(4);
        loop {
            let lo2 = if p.eval(&lo).is_zero() {
                lo.clone() + step.clone()
            } else {
                lo.clone()
            };
            let hi2 = if p.eval(&hi).is_zero() {
                hi.clone() - step.clone()
            } else {
                hi.clone()
            };
            if lo2 < hi2 && !p.eval(&lo2).is_zero() && !p.eval(&hi2).is_zero() {
                // Valid only if no root lies in the strips we cut off
                // (other than the endpoint roots themselves).
                let cut_lo_ok = if p.eval(&lo).is_zero() {
                    sturm_count_with(&seq, &(lo.clone() + step.clone() * qr(1, 1000)), &lo2) == 0
                } else {
                    true
                };
                let cut_hi_ok = if p.eval(&hi).is_zero() {
                    sturm_count_with(&seq, &hi2, &(hi.clone() - step.clone() * qr(1, 1000))) == 0
                } else {
                    true
                };
                if cut_lo_ok && cut_hi_ok {
                    lo = lo2;
                    hi = hi2;
                    break;
                }
            }
            step = step / qi(2);
        }
    }
    sturm_count(p, &lo, &hi)
}

/// One bisection refinement step for an isolating interval of a squarefree
/// polynomial with a sign change on `(a, b)`.
pub fn refine_root_interval(p: &QPoly, a: &Q, b: &Q) -> (Q, Q) {
    let m = non_root_point(p, a, b);
    let sa = sign_q(&p.eval(a));
    let sm = sign_q(&p.eval(&m));
    debug_assert!(sa != 0 && sm != 0);
    if sa != sm {
        (a.clone(), m)
    } else {
        (m, b.clone())
    }
}

/// Refine an isolating interval until its width is below `eps`.
pub fn refine_below(p: &QPoly, mut a: Q, mut b: Q, eps: &Q) -> (Q, Q) {
    while &(b.clone() - a.clone()) >= eps {
        let (na, nb) = refine_root_interval(p, &a, &b);
        a = na;
        b = nb;
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let a = QPoly::from_ints(&[2, 0, -3, 1, 7]); // 7x^4 + x^3 - 3x^2 + 2
        let b = QPoly::from_ints(&[1, 2, 1]); // x^2 + 2x + 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().map_or(true, |d| d < b.deg()));
    }

    #[test]
    fn gcd_of_products() {
        let f = QPoly::from_ints(&[-1, 1]); // x - 1
        let g = QPoly::from_ints(&[1, 1]); // x + 1
        let h = QPoly::from_ints(&[0, 0, 1]); // x^2
        let a = f.mul(&g).mul(&h);
        let b = f.mul(&h);
        let d = a.gcd(&b);
        assert_eq!(d, f.mul(&h).monic());
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = QPoly::from_ints(&[1, 0, 1]); // x^2 + 1
        let b = QPoly::from_ints(&[-1, 1]); // x - 1
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(g, QPoly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), QPoly::one());
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x+2)^3 x
        let f = QPoly::from_ints(&[-1, 1])
            .pow(2)
            .mul(&QPoly::from_ints(&[2, 1]).pow(3))
            .mul(&QPoly::x());
        let parts = f.yun_squarefree();
        let mut rebuilt = QPoly::one();
        for (g, m) in &parts {
            rebuilt = rebuilt.mul(&g.pow(*m));
            // each part squarefree
            assert_eq!(g.gcd(&g.derivative()).degree(), Some(0));
        }
        assert_eq!(rebuilt, f.monic());
        let mults: Vec<usize> = parts.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn sturm_counts() {
        // x^2 - 2 has one root in (0, 2)
        let p = QPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &qi(0), &qi(2)), 1);
        // x - 3 has no root in (-2, 2)
        let p = QPoly::from_ints(&[-3, 1]);
        assert_eq!(sturm_count(&p, &qi(-2), &qi(2)), 0);
        // x^2 - 1 has two roots in (-2, 2)
        let p = QPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(sturm_count(&p, &qi(-2), &qi(2)), 2);
    }

    #[test]
    fn isolation_finds_all_roots() {
        // (x-1)(x+1)(x-3)(x+5/2)
        let p = QPoly::from_ints(&[-1, 1])
            .mul(&QPoly::from_ints(&[1, 1]))
            .mul(&QPoly::from_ints(&[-3, 1]))
            .mul(&QPoly::new(vec![qr(5, 2), qi(1)]));
        let ivs = isolate_real_roots(&p);
        assert_eq!(ivs.len(), 4);
        let expected = [qr(-5, 2), qi(-1), qi(1), qi(3)];
        for ((a, b), r) in ivs.iter().zip(expected.iter()) {
            assert!(a < r && r < b, "root {} not in ({}, {})", r, a, b);
        }
    }

    #[test]
    fn isolation_with_root_midpoints() {
        // Roots at 0 and +/-1: naive midpoint of (-bound, bound) may hit 0.
        let p = QPoly::from_ints(&[0, -1, 0, 1]); // x^3 - x
        let ivs = isolate_real_roots(&p);
        assert_eq!(ivs.len(), 3);
    }

    #[test]
    fn refinement_narrows() {
        let p = QPoly::from_ints(&[-2, 0, 1]); // x^2 - 2
        let (a, b) = (qi(0), qi(2));
        let (a, b) = refine_below(&p, a, b, &qr(1, 1_000_000));
        // sqrt(2) = 1.41421356...
        assert!(a < qr(14142136, 10000000) && b > qr(14142135, 10000000));
    }

    #[test]
    fn display_form() {
        let p = QPoly::new(vec![qi(1), qi(-1), qi(1)]);
        assert_eq!(p.to_string(), "x^2 - x + 1");
    }
}
