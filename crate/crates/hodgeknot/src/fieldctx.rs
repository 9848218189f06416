//! Exact inertia (signature / nullity) of symmetric matrices over an
//! ordered field given by a computable sign oracle: either the rationals
//! or a real embedding of a number field Q[u]/(m(u)) fixed by an isolating
//! interval for a real root of m. Diagonalization is by symmetric Gaussian
//! congruence steps with polarization when the live diagonal vanishes.

use crate::algebraic::AlgebraicReal;
use crate::qmat::QMat;
use crate::qpoly::{sign_q, Q, QPoly};
use num_traits::Zero;
use std::fmt::Debug;

/// An ordered field with exact arithmetic and an exact sign function.
pub trait FieldCtx {
    type El: Clone + PartialEq + Debug;
    fn from_q(&self, q: &Q) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    /// Exact sign (-1, 0, +1) under the field's real embedding.
    fn sign(&self, a: &Self::El) -> i8;
}

/// The rationals.
pub struct QCtx;

impl FieldCtx for QCtx {
    type El = Q;
    fn from_q(&self, q: &Q) -> Q {
        q.clone()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a.clone()
    }
    fn inv(&self, a: &Q) -> Q {
        assert!(!Zero::is_zero(a));
        crate::qpoly::qi(1) / a.clone()
    }
    fn is_zero(&self, a: &Q) -> bool {
        Zero::is_zero(a)
    }
    fn sign(&self, a: &Q) -> i8 {
        sign_q(a)
    }
}

/// The real number field Q(alpha) for `alpha` a fixed real root of the
/// monic irreducible `modulus`. Elements are polynomials in `alpha` of
/// degree < deg(modulus); signs are decided by Sturm-refined interval
/// arithmetic on the shared isolating interval.
pub struct NfCtx {
    modulus: QPoly,
    root: AlgebraicReal,
}

impl NfCtx {
    /// `modulus` monic irreducible with a real root isolated in
    /// `(lo, hi)`; degree >= 2 (use `QCtx` for rational values).
    pub fn new(modulus: QPoly, lo: Q, hi: Q) -> Self {
        let root = AlgebraicReal::new(modulus.clone(), lo, hi);
        Self {
            modulus: root.minpoly().clone(),
            root,
        }
    }

    pub fn from_root(root: AlgebraicReal) -> Self {
        Self {
            modulus: root.minpoly().clone(),
            root,
        }
    }

    fn reduce(&self, p: QPoly) -> QPoly {
        p.divrem(&self.modulus).1
    }

    /// The generator `alpha` as an element.
    pub fn generator(&self) -> QPoly {
        self.reduce(QPoly::x())
    }
}

impl FieldCtx for NfCtx {
    type El = QPoly;
    fn from_q(&self, q: &Q) -> QPoly {
        QPoly::constant(q.clone())
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.add(b)
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.sub(b)
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(a.mul(b))
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        a.neg()
    }
    fn inv(&self, a: &QPoly) -> QPoly {
        assert!(!a.is_zero());
        // modulus irreducible => any nonzero residue is invertible
        let (g, s, _) = a.extended_gcd(&self.modulus);
        assert_eq!(g.degree(), Some(0), "non-invertible residue");
        let ginv = crate::qpoly::qi(1) / g.coeff(0);
        self.reduce(s.scale(&ginv))
    }
    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }
    fn sign(&self, a: &QPoly) -> i8 {
        if a.is_zero() {
            0
        } else {
            self.root.sign_of_poly(a)
        }
    }
}

/// Inertia of a symmetric bilinear form: counts of positive, negative and
/// zero eigenvalue classes in any diagonalizing congruence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn nullity(&self) -> usize {
        self.zero
    }

    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }
}

/// Exact inertia of a symmetric matrix over an ordered field, by
/// congruence diagonalization: symmetric pivoting on nonzero diagonal
/// entries, with the polarization move `e_i += e_j` (which creates the
/// diagonal entry `2 m_ij`) when the live diagonal vanishes.
pub fn symmetric_inertia<C: FieldCtx>(ctx: &C, m: &[Vec<C::El>]) -> Inertia {
    let n = m.len();
    for row in m {
        assert_eq!(row.len(), n, "square matrix required");
    }
    #[cfg(debug_assertions)]
    for i in 0..n {
        for j in 0..n {
            debug_assert!(m[i][j] == m[j][i], "symmetric matrix required");
        }
    }
    let mut a: Vec<Vec<C::El>> = m.to_vec();
    let mut inertia = Inertia {
        pos: 0,
        neg: 0,
        zero: 0,
    };
    let mut k = 0usize;
    while k < n {
        // choose a pivot on the live diagonal
        let pivot = (k..n).find(|&i| !ctx.is_zero(&a[i][i]));
        let p = match pivot {
            Some(p) => p,
            None => {
                // all live diagonal entries vanish: polarize on the first
                // nonzero live off-diagonal entry, if any
                let mut found = None;
                'search: for i in k..n {
                    for j in i + 1..n {
                        if !ctx.is_zero(&a[i][j]) {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    inertia.zero += n - k;
                    break;
                };
                // e_i += e_j: row_i += row_j, then col_i += col_j
                for c in 0..n {
                    let v = ctx.add(&a[i][c], &a[j][c]);
                    a[i][c] = v;
                }
                for r in 0..n {
                    let v = ctx.add(&a[r][i], &a[r][j]);
                    a[r][i] = v;
                }
                debug_assert!(!ctx.is_zero(&a[i][i]));
                i
            }
        };
        if p != k {
            a.swap(p, k);
            for row in a.iter_mut() {
                row.swap(p, k);
            }
        }
        let d = a[k][k].clone();
        match ctx.sign(&d) {
            1 => inertia.pos += 1,
            -1 => inertia.neg += 1,
            _ => unreachable!("pivot is nonzero"),
        }
        let dinv = ctx.inv(&d);
        // symmetric elimination of row/column k from the live block
        for i in k + 1..n {
            if ctx.is_zero(&a[i][k]) {
                continue;
            }
            let f = ctx.mul(&a[i][k], &dinv);
            for j in k..n {
                let v = ctx.sub(&a[i][j], &ctx.mul(&f, &a[k][j]));
                a[i][j] = v;
            }
        }
        for j in k + 1..n {
            a[k][j] = ctx.from_q(&Zero::zero());
            a[j][k] = ctx.from_q(&Zero::zero());
        }
        k += 1;
    }
    inertia
}

/// Inertia of a rational symmetric matrix.
pub fn rational_inertia(m: &QMat) -> Inertia {
    assert!(m.is_symmetric(), "symmetric matrix required");
    let n = m.rows();
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    symmetric_inertia(&QCtx, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::QMat;
    use crate::qpoly::{qi, qr};

    #[test]
    fn rational_diagonal_and_hyperbolic() {
        let d = QMat::from_int_rows(&[&[1, 0, 0], &[0, -2, 0], &[0, 0, 0]]);
        let i = rational_inertia(&d);
        assert_eq!((i.pos, i.neg, i.zero), (1, 1, 1));
        assert_eq!(i.signature(), 0);
        // hyperbolic plane: needs polarization
        let h = QMat::from_int_rows(&[&[0, 1], &[1, 0]]);
        let ih = rational_inertia(&h);
        assert_eq!((ih.pos, ih.neg, ih.zero), (1, 1, 0));
        // trefoil symmetrized intersection form at z = -1: 2(S + S^T)
        let t = QMat::from_int_rows(&[&[-4, 2], &[2, -4]]);
        let it = rational_inertia(&t);
        assert_eq!(it.signature(), -2);
        assert_eq!(it.nullity(), 0);
    }

    #[test]
    fn congruence_invariance_randomized() {
        // deterministic xorshift for reproducibility
        let mut state = 0x12345678u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let n = 2 + (next() % 4) as usize;
            let mut m = QMat::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v = qi((next() % 7) as i64 - 3);
                    m.set(i, j, v.clone());
                    m.set(j, i, v);
                }
            }
            // random unimodular-ish congruence: product of elementary ops
            let mut p = QMat::identity(n);
            for _ in 0..6 {
                let i = (next() % n as u64) as usize;
                let j = (next() % n as u64) as usize;
                if i != j {
                    let mut e = QMat::identity(n);
                    e.set(i, j, qi((next() % 5) as i64 - 2));
                    p = p.mul(&e);
                }
            }
            let a = rational_inertia(&m);
            let b = rational_inertia(&m.congruence(&p));
            assert_eq!(a, b, "inertia not congruence invariant for\n{m}");
            assert_eq!(a.rank(), m.rank());
        }
    }

    #[test]
    fn number_field_signs() {
        // field Q(sqrt2)
        let ctx = NfCtx::new(QPoly::from_ints(&[-2, 0, 1]), qi(1), qi(2));
        let u = ctx.generator();
        assert_eq!(ctx.sign(&u), 1);
        let um2 = ctx.sub(&u, &ctx.from_q(&qi(2)));
        assert_eq!(ctx.sign(&um2), -1); // sqrt2 - 2 < 0
        // inverse: (sqrt2 - 1)^-1 = sqrt2 + 1
        let x = ctx.sub(&u, &ctx.from_q(&qi(1)));
        let xinv = ctx.inv(&x);
        assert_eq!(xinv, QPoly::from_ints(&[1, 1]));
        // matrix [[u, 1], [1, u]]: det u^2 - 1 = 1 > 0, trace > 0 => ++
        let one = ctx.from_q(&qi(1));
        let m = vec![vec![u.clone(), one.clone()], vec![one.clone(), u.clone()]];
        let i = symmetric_inertia(&ctx, &m);
        assert_eq!((i.pos, i.neg, i.zero), (2, 0, 0));
        // [[u - 2, 0], [0, u]] => one negative, one positive
        let zero = ctx.from_q(&qi(0));
        let m2 = vec![vec![um2, zero.clone()], vec![zero, u.clone()]];
        let i2 = symmetric_inertia(&ctx, &m2);
        assert_eq!(i2.signature(), 0);
        assert_eq!(i2.rank(), 2);
    }

    #[test]
    fn number_field_nullity() {
        // golden ratio field Q(phi), phi^2 = phi + 1
        let ctx = NfCtx::new(QPoly::from_ints(&[-1, -1, 1]), qi(1), qi(2));
        let phi = ctx.generator();
        // rank-1 matrix [[1, phi], [phi, phi^2]] has nullity 1
        let phi2 = ctx.mul(&phi, &phi);
        let m = vec![
            vec![ctx.from_q(&qi(1)), phi.clone()],
            vec![phi.clone(), phi2],
        ];
        let i = symmetric_inertia(&ctx, &m);
        assert_eq!((i.pos, i.neg, i.zero), (1, 0, 1));
        assert_eq!(ctx.sign(&ctx.from_q(&qr(-3, 7))), -1);
        assert_eq!(ctx.sign(&ctx.from_q(&qi(0))), 0);
    }
}
