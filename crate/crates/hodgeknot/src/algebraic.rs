//! Exact real algebraic numbers represented by an irreducible minimal
//! polynomial together with an isolating rational interval, refined on
//! demand. Also provides exact points on the unit circle parameterized by
//! `u = 2 cos(angle)`, including points at rational turn fractions whose
//! `u`-value is a root of a Chebyshev-transformed cyclotomic polynomial.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qpoly::{isolate_real_roots, qi, qr, sign_q, sturm_count, Q, QPoly};
use crate::zfactor::{cyclotomic, euler_phi};
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::cell::RefCell;
use std::cmp::Ordering;

/// A real algebraic number of degree at least 2: the unique root of the
/// monic irreducible `minpoly` inside the open interval `(lo, hi)`.
/// The interval refines in place (interior mutability) and only narrows,
/// so the represented value never changes.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    minpoly: QPoly,
    interval: RefCell<(Q, Q)>,
}

impl AlgebraicReal {
    /// `minpoly` must be irreducible over the rationals of degree >= 2 and
    /// have exactly one root in `(lo, hi)`; the root count is verified.
    pub fn new(minpoly: QPoly, lo: Q, hi: Q) -> Self {
        let minpoly = minpoly.monic();
        assert!(minpoly.deg() >= 2, "rational values use RealValue::Rat");
        assert!(lo < hi);
        assert_eq!(
            sturm_count(&minpoly, &lo, &hi),
            1,
            "interval does not isolate a single root"
        );
        Self {
            minpoly,
            interval: RefCell::new((lo, hi)),
        }
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }

    pub fn interval(&self) -> (Q, Q) {
        self.interval.borrow().clone()
    }

    /// One bisection step. Rational midpoints are never roots of an
    /// irreducible polynomial of degree >= 2, so the step always succeeds.
    pub fn refine(&self) {
        let (lo, hi) = self.interval();
        let mid = (&lo + &hi) / qi(2);
        let new = if sturm_count(&self.minpoly, &lo, &mid) == 1 {
            (lo, mid)
        } else {
            (mid, hi)
        };
        *self.interval.borrow_mut() = new;
    }

    pub fn refine_to_width(&self, eps: &Q) {
        loop {
            let (lo, hi) = self.interval();
            if &(hi - lo) < eps {
                return;
            }
            self.refine();
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.refine_to_width(&qr(1, 1_000_000_000_000));
        let (lo, hi) = self.interval();
        let mid = (lo + hi) / qi(2);
        mid.numer().to_f64().unwrap_or(f64::NAN) / mid.denom().to_f64().unwrap_or(f64::NAN)
    }

    /// Exact sign of `p` evaluated at this number.
    pub fn sign_of_poly(&self, p: &QPoly) -> i8 {
        let (_, r) = p.divrem(&self.minpoly);
        if r.is_zero() {
            return 0;
        }
        // r is coprime to the irreducible minpoly, hence nonzero at the
        // root; shrink until the interval is free of roots of r.
        let sf = r.squarefree_part();
        loop {
            let (lo, hi) = self.interval();
            if crate::qpoly::count_roots_open(&sf, &lo, &hi) == 0 {
                let x = crate::qpoly::non_root_point(&sf, &lo, &hi);
                return sign_q(&r.eval(&x));
            }
            self.refine();
        }
    }

    /// Total order among exact real values; distinct algebraic numbers
    /// separate after finitely many refinements.
    pub fn cmp_alg(&self, other: &Self) -> Ordering {
        if std::ptr::eq(self, other) {
            return Ordering::Equal;
        }
        if self.minpoly == other.minpoly {
            // equal iff the intersection of the isolating intervals
            // contains a root
            let (alo, ahi) = self.interval();
            let (blo, bhi) = other.interval();
            let ilo = alo.clone().max(blo.clone());
            let ihi = ahi.clone().min(bhi.clone());
            if ilo < ihi && sturm_count(&self.minpoly, &ilo, &ihi) == 1 {
                return Ordering::Equal;
            }
        }
        loop {
            let (alo, ahi) = self.interval();
            let (blo, bhi) = other.interval();
            if ahi <= blo {
                return Ordering::Less;
            }
            if bhi <= alo {
                return Ordering::Greater;
            }
            if self.minpoly == other.minpoly {
                let ilo = alo.max(blo);
                let ihi = ahi.min(bhi);
                if ilo < ihi && sturm_count(&self.minpoly, &ilo, &ihi) == 1 {
                    return Ordering::Equal;
                }
            }
            self.refine();
            other.refine();
        }
    }

    pub fn cmp_q(&self, q: &Q) -> Ordering {
        // an irreducible minpoly of degree >= 2 has no rational roots
        loop {
            let (lo, hi) = self.interval();
            if *q <= lo {
                return Ordering::Greater;
            }
            if *q >= hi {
                return Ordering::Less;
            }
            self.refine();
        }
    }
}

/// An exact real number: rational or algebraic.
#[derive(Clone, Debug)]
pub enum RealValue {
    Rat(Q),
    Alg(AlgebraicReal),
}

impl RealValue {
    pub fn cmp_real(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RealValue::Rat(a), RealValue::Rat(b)) => a.cmp(b),
            (RealValue::Rat(a), RealValue::Alg(b)) => b.cmp_q(a).reverse(),
            (RealValue::Alg(a), RealValue::Rat(b)) => a.cmp_q(b),
            (RealValue::Alg(a), RealValue::Alg(b)) => a.cmp_alg(b),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealValue::Rat(q) => q.numer().to_f64().unwrap_or(f64::NAN)
                / q.denom().to_f64().unwrap_or(f64::NAN),
            RealValue::Alg(a) => a.to_f64(),
        }
    }

    /// Exact sign of `p` at this value.
    pub fn sign_of_poly(&self, p: &QPoly) -> i8 {
        match self {
            RealValue::Rat(q) => sign_q(&p.eval(q)),
            RealValue::Alg(a) => a.sign_of_poly(p),
        }
    }
}

impl PartialEq for RealValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_real(other) == Ordering::Equal
    }
}
impl Eq for RealValue {}
impl PartialOrd for RealValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_real(other))
    }
}
impl Ord for RealValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_real(other)
    }
}

/// A point `e^(i x)` on the upper unit circle, `x` in `(0, pi]`, encoded
/// exactly. `U(v)` carries `v = 2 cos(x)` in `(-2, 2)`; the angle-`pi`
/// point `-1` is kept separate because its `u`-value `-2` is degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CirclePoint {
    MinusOne,
    U(RealValue),
}

impl CirclePoint {
    /// The point `e^(2 pi i j/m)`; points in the lower half plane are
    /// replaced by their conjugate (all consumers are conjugation-
    /// invariant). Errors on `j/m` integral (the point 1).
    pub fn from_turn_fraction(j: i64, m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameters("zero denominator".into()));
        }
        // reduce j/m mod 1 to lowest terms
        let g = j.gcd(&m);
        let (mut j, mut m) = (j / g, m / g);
        if m < 0 {
            j = -j;
            m = -m;
        }
        j = j.rem_euclid(m);
        if j == 0 {
            return Err(Error::InvalidParameters(
                "the point 1 (angle 0) is excluded".into(),
            ));
        }
        // conjugate into the upper half circle
        let a = j.min(m - j);
        if 2 * a == m {
            return Ok(CirclePoint::MinusOne);
        }
        // u = 2 cos(2 pi a/m), 0 < a < m/2
        let u = match m {
            3 => Some(qi(-1)),
            4 => Some(qi(0)),
            6 => Some(qi(1)),
            _ => None,
        };
        if let Some(u) = u {
            return Ok(CirclePoint::U(RealValue::Rat(u)));
        }
        // u is a root of the Chebyshev form of the m-th cyclotomic
        // polynomial; roots are 2cos(2 pi a'/m) for a' coprime to m,
        // 0 < a' < m/2, decreasing in a'.
        let phi = euler_phi(m as u64) as usize;
        let cyc = cyclotomic(m as u64);
        let bal = LaurentPoly::from_qpoly(&cyc).mul(&LaurentPoly::t_pow(-(phi as i64) / 2));
        let q = bal
            .to_u_poly()
            .expect("cyclotomic polynomials of order > 2 are palindromic");
        let mut residues: Vec<i64> = (1..m).filter(|r| 2 * r < m && r.gcd(&m) == 1).collect();
        residues.sort_unstable();
        let pos = residues
            .iter()
            .position(|&r| r == a)
            .expect("reduced fraction numerator is coprime to denominator");
        let intervals = isolate_real_roots(&q);
        assert_eq!(intervals.len(), residues.len(), "cyclotomic u-roots are all real");
        // ascending u corresponds to descending residue
        let idx = residues.len() - 1 - pos;
        let (lo, hi) = intervals[idx].clone();
        Ok(CirclePoint::U(RealValue::Alg(AlgebraicReal::new(q, lo, hi))))
    }

    /// `u = 2 cos(angle)` as an exact real value.
    pub fn u_value(&self) -> RealValue {
        match self {
            CirclePoint::MinusOne => RealValue::Rat(qi(-2)),
            CirclePoint::U(v) => v.clone(),
        }
    }

    /// Angle as a fraction of a full turn, in `(0, 1/2]`, as f64.
    pub fn turn_f64(&self) -> f64 {
        match self {
            CirclePoint::MinusOne => 0.5,
            CirclePoint::U(v) => (v.to_f64() / 2.0).clamp(-1.0, 1.0).acos() / (2.0 * std::f64::consts::PI),
        }
    }

    /// Order by angle in `(0, pi]`: ascending angle = descending `u`.
    pub fn cmp_by_angle(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CirclePoint::MinusOne, CirclePoint::MinusOne) => Ordering::Equal,
            (CirclePoint::MinusOne, _) => Ordering::Greater,
            (_, CirclePoint::MinusOne) => Ordering::Less,
            (CirclePoint::U(a), CirclePoint::U(b)) => b.cmp_real(a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(n: i64, lo: i64, hi: i64) -> AlgebraicReal {
        AlgebraicReal::new(QPoly::from_ints(&[-n, 0, 1]), qi(lo), qi(hi))
    }

    #[test]
    fn comparisons() {
        let r2 = sqrt(2, 1, 2);
        let r3 = sqrt(3, 1, 2);
        assert_eq!(r2.cmp_alg(&r3), Ordering::Less);
        assert_eq!(r2.cmp_q(&qr(7, 5)), Ordering::Greater);
        assert_eq!(r2.cmp_q(&qr(3, 2)), Ordering::Less);
        // same number, different isolating intervals
        let r2b = sqrt(2, 0, 1000);
        assert_eq!(r2.cmp_alg(&r2b), Ordering::Equal);
        let vals = [
            RealValue::Rat(qi(1)),
            RealValue::Alg(r2.clone()),
            RealValue::Alg(r3.clone()),
            RealValue::Rat(qi(2)),
        ];
        for w in vals.windows(2) {
            assert_eq!(w[0].cmp_real(&w[1]), Ordering::Less);
        }
    }

    #[test]
    fn sign_evaluation() {
        let r2 = sqrt(2, 1, 2);
        assert_eq!(r2.sign_of_poly(&QPoly::from_ints(&[-2, 0, 1])), 0);
        assert_eq!(r2.sign_of_poly(&QPoly::from_ints(&[-1, 1])), 1); // x - 1 > 0
        // x^3 - 3x at sqrt2: sqrt2 * (2 - 3) < 0
        assert_eq!(r2.sign_of_poly(&QPoly::from_ints(&[0, -3, 0, 1])), -1);
        // multiple of minpoly
        assert_eq!(
            r2.sign_of_poly(&QPoly::from_ints(&[-2, 0, 1]).mul(&QPoly::from_ints(&[5, 7]))),
            0
        );
        assert!((r2.to_f64() - 1.41421356237).abs() < 1e-9);
    }

    #[test]
    fn turn_fraction_rational_points() {
        // e^{i pi/3}: u = 1
        match CirclePoint::from_turn_fraction(1, 6).unwrap() {
            CirclePoint::U(RealValue::Rat(u)) => assert_eq!(u, qi(1)),
            other => panic!("unexpected {other:?}"),
        }
        // conjugate gives the same representative
        assert_eq!(
            CirclePoint::from_turn_fraction(5, 6).unwrap(),
            CirclePoint::from_turn_fraction(1, 6).unwrap()
        );
        assert_eq!(
            CirclePoint::from_turn_fraction(1, 2).unwrap(),
            CirclePoint::MinusOne
        );
        match CirclePoint::from_turn_fraction(3, 4).unwrap() {
            CirclePoint::U(RealValue::Rat(u)) => assert_eq!(u, qi(0)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(CirclePoint::from_turn_fraction(0, 5).is_err());
        assert!(CirclePoint::from_turn_fraction(10, 5).is_err());
    }

    #[test]
    fn turn_fraction_algebraic_points() {
        // 2cos(2pi/5) = (sqrt5 - 1)/2 ~ 0.618
        let p1 = CirclePoint::from_turn_fraction(1, 5).unwrap();
        let u1 = p1.u_value();
        assert_eq!(u1.cmp_real(&RealValue::Rat(qr(1, 2))), Ordering::Greater);
        assert_eq!(u1.cmp_real(&RealValue::Rat(qr(7, 10))), Ordering::Less);
        // 2cos(4pi/5) = -(sqrt5 + 1)/2 ~ -1.618
        let p2 = CirclePoint::from_turn_fraction(2, 5).unwrap();
        let u2 = p2.u_value();
        assert_eq!(u2.cmp_real(&RealValue::Rat(qr(-8, 5))), Ordering::Less);
        assert_eq!(u2.cmp_real(&RealValue::Rat(qi(-2))), Ordering::Greater);
        // angle order: 1/5 < 2/5 < 1/2
        assert_eq!(p1.cmp_by_angle(&p2), Ordering::Less);
        assert_eq!(p2.cmp_by_angle(&CirclePoint::MinusOne), Ordering::Less);
        assert!((p1.turn_f64() - 0.2).abs() < 1e-9);
        // e^{2 pi i /12} = e^{i pi/6}: u = sqrt3
        let p12 = CirclePoint::from_turn_fraction(1, 12).unwrap();
        match p12.u_value() {
            RealValue::Alg(a) => {
                assert_eq!(a.minpoly(), &QPoly::from_ints(&[-3, 0, 1]));
                assert_eq!(a.cmp_q(&qi(0)), Ordering::Greater);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
