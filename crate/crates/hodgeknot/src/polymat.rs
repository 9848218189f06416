//! Matrices over the polynomial ring Q[t] and over its fraction field
//! (represented with an explicit power-of-t unit so the t -> 1/t
//! involution is exact). Provides a fraction-free determinant and the
//! Smith normal form with full invertible transform tracking, the
//! workhorses of the linking-form pipeline.

use crate::laurent::LaurentPoly;
use crate::qmat::{FieldElem, Mat, RingElem};
use crate::qpoly::{Q, QPoly};
use num_traits::{One, Zero};
use std::fmt;

impl RingElem for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn one() -> Self {
        QPoly::one()
    }
    fn add(&self, o: &Self) -> Self {
        QPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        QPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        QPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
}

pub type PolyMat = Mat<QPoly>;

/// Fraction-free (Bareiss) determinant over Q[t]; all divisions are exact.
pub fn bareiss_det(a: &PolyMat) -> QPoly {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return QPoly::one();
    }
    let mut m: Vec<Vec<QPoly>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = QPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return QPoly::zero();
            };
            m.swap(k, sw);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = QPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Smith normal form over Q[t]: invertible `u` (m x m) and `w` (n x n)
/// with `u * a * w = d` diagonal, each diagonal entry monic (or zero)
/// and dividing the next. The inverses are tracked exactly.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: Vec<QPoly>,
    pub u: PolyMat,
    pub uinv: PolyMat,
    pub w: PolyMat,
    pub winv: PolyMat,
}

impl SmithForm {
    /// Recompute `u * a * w` and compare with the stored diagonal, and
    /// check the transform inverses; used by tests.
    pub fn verify(&self, a: &PolyMat) -> bool {
        let m = a.rows();
        let n = a.cols();
        let prod = self.u.mul(a).mul(&self.w);
        for i in 0..m {
            for j in 0..n {
                let expect = if i == j && i < self.d.len() {
                    self.d[i].clone()
                } else {
                    QPoly::zero()
                };
                if *prod.get(i, j) != expect {
                    return false;
                }
            }
        }
        self.u.mul(&self.uinv) == Mat::identity(m)
            && self.w.mul(&self.winv) == Mat::identity(n)
            && self
                .d
                .windows(2)
                .all(|p| p[1].is_zero() || (!p[0].is_zero() && p[1].divisible_by(&p[0])))
    }
}

struct SmithWork {
    m: PolyMat,
    u: PolyMat,
    uinv: PolyMat,
    w: PolyMat,
    winv: PolyMat,
}

impl SmithWork {
    fn row_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.m = swap_rows(&self.m, a, b);
        self.u = swap_rows(&self.u, a, b);
        self.uinv = swap_cols(&self.uinv, a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.m = swap_cols(&self.m, a, b);
        self.w = swap_cols(&self.w, a, b);
        self.winv = swap_rows(&self.winv, a, b);
    }

    /// row_i += f * row_j
    fn row_axpy(&mut self, i: usize, j: usize, f: &QPoly) {
        add_row(&mut self.m, i, j, f);
        add_row(&mut self.u, i, j, f);
        sub_col(&mut self.uinv, j, i, f);
    }

    /// col_j += f * col_i
    fn col_axpy(&mut self, j: usize, i: usize, f: &QPoly) {
        add_col(&mut self.m, j, i, f);
        add_col(&mut self.w, j, i, f);
        sub_row(&mut self.winv, i, j, f);
    }

    /// row_i *= c (nonzero constant)
    fn row_scale(&mut self, i: usize, c: &Q) {
        let cp = QPoly::constant(c.clone());
        let cinv = QPoly::constant(crate::qpoly::qi(1) / c.clone());
        scale_row(&mut self.m, i, &cp);
        scale_row(&mut self.u, i, &cp);
        scale_col(&mut self.uinv, i, &cinv);
    }
}

fn swap_rows(m: &PolyMat, a: usize, b: usize) -> PolyMat {
    Mat::from_fn(m.rows(), m.cols(), |i, j| {
        let src = if i == a {
            b
        } else if i == b {
            a
        } else {
            i
        };
        m.get(src, j).clone()
    })
}

fn swap_cols(m: &PolyMat, a: usize, b: usize) -> PolyMat {
    Mat::from_fn(m.rows(), m.cols(), |i, j| {
        let src = if j == a {
            b
        } else if j == b {
            a
        } else {
            j
        };
        m.get(i, src).clone()
    })
}

fn add_row(m: &mut PolyMat, i: usize, j: usize, f: &QPoly) {
    for c in 0..m.cols() {
        let v = m.get(i, c).add(&f.mul(m.get(j, c)));
        m.set(i, c, v);
    }
}

fn sub_col(m: &mut PolyMat, j: usize, i: usize, f: &QPoly) {
    for r in 0..m.rows() {
        let v = m.get(r, j).sub(&f.mul(m.get(r, i)));
        m.set(r, j, v);
    }
}

fn add_col(m: &mut PolyMat, j: usize, i: usize, f: &QPoly) {
    for r in 0..m.rows() {
        let v = m.get(r, j).add(&f.mul(m.get(r, i)));
        m.set(r, j, v);
    }
}

fn sub_row(m: &mut PolyMat, i: usize, j: usize, f: &QPoly) {
    for c in 0..m.cols() {
        let v = m.get(i, c).sub(&f.mul(m.get(j, c)));
        m.set(i, c, v);
    }
}

fn scale_row(m: &mut PolyMat, i: usize, c: &QPoly) {
    for col in 0..m.cols() {
        let v = m.get(i, col).mul(c);
        m.set(i, col, v);
    }
}

fn scale_col(m: &mut PolyMat, j: usize, c: &QPoly) {
    for row in 0..m.rows() {
        let v = m.get(row, j).mul(c);
        m.set(row, j, v);
    }
}

pub fn smith_form(a: &PolyMat) -> SmithForm {
    let rows = a.rows();
    let cols = a.cols();
    let mut work = SmithWork {
        m: a.clone(),
        u: Mat::identity(rows),
        uinv: Mat::identity(rows),
        w: Mat::identity(cols),
        winv: Mat::identity(cols),
    };
    let rank_bound = rows.min(cols);
    let mut k = 0usize;
    'pivot: while k < rank_bound {
        // locate a nonzero entry of minimal degree in the trailing block
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if let Some(d) = work.m.get(i, j).degree() {
                    if best.map_or(true, |(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            break; // trailing block is zero
        };
        work.row_swap(k, pi);
        work.col_swap(k, pj);
        // clear column k below the pivot
        for i in k + 1..rows {
            if work.m.get(i, k).is_zero() {
                continue;
            }
            let (q, r) = work.m.get(i, k).divrem(work.m.get(k, k));
            work.row_axpy(i, k, &q.neg());
            if !r.is_zero() {
                continue 'pivot; // smaller-degree entry created; re-pivot
            }
        }
        // clear row k right of the pivot
        for j in k + 1..cols {
            if work.m.get(k, j).is_zero() {
                continue;
            }
            let (q, r) = work.m.get(k, j).divrem(work.m.get(k, k));
            work.col_axpy(j, k, &q.neg());
            if !r.is_zero() {
                continue 'pivot;
            }
        }
        // enforce divisibility of the trailing block by the pivot
        for i in k + 1..rows {
            for j in k + 1..cols {
                if !work.m.get(i, j).divisible_by(work.m.get(k, k)) {
                    work.row_axpy(k, i, &QPoly::one());
                    continue 'pivot;
                }
            }
        }
        k += 1;
    }
    // normalize pivots to monic
    for i in 0..rank_bound {
        let lc = work.m.get(i, i).coeffs().last().cloned();
        if let Some(lc) = lc {
            if !Zero::is_zero(&lc) && !One::is_one(&lc) {
                work.row_scale(i, &(crate::qpoly::qi(1) / lc));
            }
        }
    }
    let d = (0..rank_bound).map(|i| work.m.get(i, i).clone()).collect();
    SmithForm {
        d,
        u: work.u,
        uinv: work.uinv,
        w: work.w,
        winv: work.winv,
    }
}

// ---------------------------------------------------------------------------
// Rational functions t^shift * num/den with exact involution
// ---------------------------------------------------------------------------

/// An element of the fraction field of Q[t, 1/t]: `t^shift * num / den`
/// normalized so `den` is monic with nonzero constant term, `num` has
/// nonzero constant term (powers of t live in `shift`), and
/// `gcd(num, den) = 1`. Zero is `(0, 0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFrac {
    shift: i64,
    num: QPoly,
    den: QPoly,
}

impl RatFrac {
    pub fn normalized(mut shift: i64, mut num: QPoly, mut den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self {
                shift: 0,
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        let x = QPoly::x();
        while Zero::is_zero(&num.coeff(0)) {
            num = num.exact_div(&x);
            shift += 1;
        }
        while Zero::is_zero(&den.coeff(0)) {
            den = den.exact_div(&x);
            shift -= 1;
        }
        let g = num.gcd(&den);
        if g.deg() > 0 {
            num = num.exact_div(&g);
            den = den.exact_div(&g);
        }
        let lc = den.lc();
        if !One::is_one(&lc) {
            let inv = crate::qpoly::qi(1) / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { shift, num, den }
    }

    pub fn zero() -> Self {
        Self {
            shift: 0,
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self::normalized(0, p, QPoly::one())
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (poly, shift) = p.to_poly_and_shift();
        Self::normalized(shift, poly, QPoly::one())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero_frac(&self) -> bool {
        self.num.is_zero()
    }

    /// In the Laurent ring (denominator trivial)?
    pub fn is_laurent(&self) -> bool {
        self.den == QPoly::one()
    }

    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if !self.is_laurent() {
            return None;
        }
        Some(LaurentPoly::from_qpoly(&self.num).mul(&LaurentPoly::t_pow(self.shift)))
    }

    pub fn add_frac(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(o.shift);
        let a = self.num.shift_up((self.shift - s) as usize).mul(&o.den);
        let b = o.num.shift_up((o.shift - s) as usize).mul(&self.den);
        Self::normalized(s, a.add(&b), self.den.mul(&o.den))
    }

    pub fn sub_frac(&self, o: &Self) -> Self {
        self.add_frac(&o.neg_frac())
    }

    pub fn neg_frac(&self) -> Self {
        Self {
            shift: self.shift,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul_frac(&self, o: &Self) -> Self {
        Self::normalized(
            self.shift + o.shift,
            self.num.mul(&o.num),
            self.den.mul(&o.den),
        )
    }

    pub fn inv_frac(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero");
        Self::normalized(-self.shift, self.den.clone(), self.num.clone())
    }

    /// The involution t -> 1/t.
    pub fn involute(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let dn = self.num.deg() as i64;
        let dd = self.den.deg() as i64;
        Self::normalized(-self.shift - dn + dd, self.num.reversed(), self.den.reversed())
    }
}

impl fmt::Display for RatFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            return write!(f, "{}", self.to_laurent().unwrap());
        }
        let num = LaurentPoly::from_qpoly(&self.num).mul(&LaurentPoly::t_pow(self.shift));
        write!(f, "({}) / ({})", num, LaurentPoly::from_qpoly(&self.den))
    }
}

impl RingElem for RatFrac {
    fn zero() -> Self {
        RatFrac::zero()
    }
    fn one() -> Self {
        RatFrac::one()
    }
    fn add(&self, o: &Self) -> Self {
        self.add_frac(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_frac(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_frac(o)
    }
    fn neg(&self) -> Self {
        self.neg_frac()
    }
    fn is_zero(&self) -> bool {
        self.is_zero_frac()
    }
}

impl FieldElem for RatFrac {
    fn inv(&self) -> Self {
        self.inv_frac()
    }
}

pub type FracMat = Mat<RatFrac>;

/// Entrywise involution combined with transpose: the Hermitian adjoint
/// for forms over the Laurent ring.
pub fn hermitian_adjoint(m: &FracMat) -> FracMat {
    Mat::from_fn(m.cols(), m.rows(), |i, j| m.get(j, i).involute())
}

pub fn poly_mat_to_frac(m: &PolyMat) -> FracMat {
    m.map(|p| RatFrac::from_poly(p.clone()))
}
