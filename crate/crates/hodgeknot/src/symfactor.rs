//! Factorization of symmetric Laurent polynomials into symmetric
//! irreducible units: self-symmetric irreducible polynomials, merged
//! involution pairs g * g~ (g~ the image of g under t -> 1/t), and the
//! degree-one factors t -+ 1. Each factor carries exact data locating its
//! roots relative to the unit circle via the substitution u = t + 1/t.

use crate::algebraic::{AlgebraicReal, CirclePoint, RealValue};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qpoly::{isolate_real_roots, qi, sturm_count, Q, QPoly};
use crate::zfactor::factor_qpoly;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;

/// Root location class of a symmetric factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FactorKind {
    /// At least one root pair on the unit circle (conjugate pair e^{+-ix}).
    OnCircle,
    /// No circle roots; at least one real pair {v, 1/v}.
    OffCircleReal,
    /// No circle roots, no real roots: quadruples {v, conj v, 1/v, 1/conj v}.
    OffCircleComplexPair,
    /// The factor t - 1 or t + 1.
    TPlusMinusOne,
}

/// An irreducible symmetric factor. For kinds other than `TPlusMinusOne`
/// the representative `poly` is monic palindromic of even degree `2d` with
/// constant term 1, and `u_poly` is its degree-`d` form in `u = t + 1/t`.
#[derive(Clone, Debug)]
pub struct SymmetricFactor {
    poly: QPoly,
    kind: FactorKind,
    /// For a merged involution pair, the two monic irreducible halves
    /// `(g, g~)` with `g` the lexicographically smaller.
    halves: Option<(QPoly, QPoly)>,
    u_poly: Option<QPoly>,
    /// Ascending isolating intervals in `(-2, 2)` for the real roots of
    /// `u_poly` there; one per conjugate circle-root pair.
    circle_roots: Vec<(Q, Q)>,
    /// Real roots of `u_poly` outside `[-2, 2]`: each is a real root pair
    /// `{v, 1/v}` of `poly`.
    off_real_pairs: usize,
    /// Conjugate pairs of complex roots of `u_poly`: each is a quadruple
    /// of roots of `poly` off the circle and off the real line.
    off_complex_quads: usize,
}

impl PartialEq for SymmetricFactor {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}
impl Eq for SymmetricFactor {}
impl PartialOrd for SymmetricFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for SymmetricFactor {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_qpoly(&self.poly, &other.poly)
    }
}

pub(crate) fn cmp_qpoly(a: &QPoly, b: &QPoly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let n = a.coeffs().len().max(b.coeffs().len());
        for i in 0..n {
            let c = a.coeff(i).cmp(&b.coeff(i));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

/// Monic involution partner `g~(t) = t^deg(g) g(1/t) / g(0)` of a monic
/// polynomial with nonzero constant term.
pub(crate) fn involution_partner(g: &QPoly) -> QPoly {
    assert!(!g.coeff(0).is_zero());
    g.reversed().monic()
}

impl SymmetricFactor {
    /// Build the factor data for a monic polynomial that is either
    /// `t -+ 1`, a self-symmetric irreducible, or a product of an
    /// involution pair of distinct monic irreducibles.
    fn analyze(poly: QPoly, halves: Option<(QPoly, QPoly)>) -> Self {
        if poly.deg() == 1 {
            assert!(poly == QPoly::from_ints(&[-1, 1]) || poly == QPoly::from_ints(&[1, 1]));
            return Self {
                poly,
                kind: FactorKind::TPlusMinusOne,
                halves: None,
                u_poly: None,
                circle_roots: vec![],
                off_real_pairs: 0,
                off_complex_quads: 0,
            };
        }
        let deg = poly.deg();
        assert!(deg % 2 == 0, "symmetric factor of even degree expected");
        let d = (deg / 2) as i64;
        let bal = LaurentPoly::from_qpoly(&poly).mul(&LaurentPoly::t_pow(-d));
        let u_poly = bal
            .to_u_poly()
            .expect("factor representative must be palindromic");
        assert_eq!(u_poly.deg(), d as usize);
        // classify the real u-roots relative to (-2, 2); roots at exactly
        // +-2 would correspond to t = +-1 roots, which cannot occur here
        let mut circle_roots = vec![];
        let mut off_real = 0usize;
        for (mut lo, mut hi) in isolate_real_roots(&u_poly) {
            loop {
                if lo >= qi(-2) && hi <= qi(2) {
                    circle_roots.push((lo, hi));
                    break;
                }
                if hi <= qi(-2) || lo >= qi(2) {
                    off_real += 1;
                    break;
                }
                // straddles an endpoint: bisect (the endpoint +-2 is not
                // a root, so refinement terminates)
                let mid = crate::qpoly::non_root_point(&u_poly, &lo, &hi);
                if sturm_count(&u_poly, &lo, &mid) == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
        }
        let n_real = circle_roots.len() + off_real;
        assert!((u_poly.deg() - n_real) % 2 == 0);
        let quads = (u_poly.deg() - n_real) / 2;
        let kind = if !circle_roots.is_empty() {
            FactorKind::OnCircle
        } else if off_real > 0 {
            FactorKind::OffCircleReal
        } else {
            FactorKind::OffCircleComplexPair
        };
        Self {
            poly,
            kind,
            halves,
            u_poly: Some(u_poly),
            circle_roots,
            off_real_pairs: off_real,
            off_complex_quads: quads,
        }
    }

    /// The monic ordinary-polynomial representative.
    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    /// For merged involution pairs, the monic irreducible halves `(g, g~)`.
    pub fn halves(&self) -> Option<&(QPoly, QPoly)> {
        self.halves.as_ref()
    }

    pub fn is_pair(&self) -> bool {
        self.halves.is_some()
    }

    /// Degree in `t` of the representative polynomial.
    pub fn deg_t(&self) -> usize {
        self.poly.deg()
    }

    /// The form in `u = t + 1/t` (absent for `t -+ 1`).
    pub fn u_poly(&self) -> Option<&QPoly> {
        self.u_poly.as_ref()
    }

    /// Number of conjugate circle-root pairs.
    pub fn num_circle_roots(&self) -> usize {
        self.circle_roots.len()
    }

    /// Isolating `u`-intervals of the circle roots, ascending and disjoint.
    /// Roots of the Chebyshev form `q(u)` in `(-2, 2)`; endpoints are never
    /// roots, but may touch `-2` or `2`.
    pub fn circle_root_intervals(&self) -> &[(Q, Q)] {
        &self.circle_roots
    }

    pub fn off_real_pairs(&self) -> usize {
        self.off_real_pairs
    }

    pub fn off_complex_quads(&self) -> usize {
        self.off_complex_quads
    }

    /// Total count of off-circle root orbits (real pairs + complex quads).
    pub fn num_off_orbits(&self) -> usize {
        self.off_real_pairs + self.off_complex_quads
    }

    /// Exact `u`-value of the idx-th circle root (ascending in `u`).
    pub fn circle_root_value(&self, idx: usize) -> RealValue {
        let u_poly = self.u_poly.as_ref().expect("factor has no u-form");
        let (lo, hi) = self.circle_roots[idx].clone();
        if u_poly.deg() == 1 {
            RealValue::Rat(-u_poly.coeff(0) / u_poly.coeff(1))
        } else if self.is_pair() {
            // u_poly of a merged pair can be reducible: isolate via the
            // irreducible factor vanishing in this interval
            for (f, _) in factor_qpoly(u_poly) {
                if f.deg() == 1 {
                    let r = -f.coeff(0) / f.coeff(1);
                    if r > lo && r < hi {
                        return RealValue::Rat(r);
                    }
                } else if sturm_count(&f, &lo, &hi) == 1 {
                    return RealValue::Alg(AlgebraicReal::new(f, lo, hi));
                }
            }
            unreachable!("isolating interval contains a root of some factor");
        } else {
            RealValue::Alg(AlgebraicReal::new(u_poly.clone(), lo, hi))
        }
    }

    /// The idx-th circle root as a point `e^{ix}` on the upper circle.
    pub fn circle_point(&self, idx: usize) -> CirclePoint {
        CirclePoint::U(self.circle_root_value(idx))
    }

    /// Exact sign of a symmetric Laurent polynomial evaluated at the
    /// idx-th circle root (a real number since the argument is symmetric
    /// and the point lies on the unit circle).
    pub fn eval_sign_at_circle_root(&self, p: &LaurentPoly, idx: usize) -> Result<i8> {
        let pu = p
            .to_u_poly()
            .ok_or_else(|| Error::NotSymmetric(format!("{p} is not symmetric under t -> 1/t")))?;
        Ok(self.circle_root_value(idx).sign_of_poly(&pu))
    }

    /// Balanced Laurent representative (`t^-d * poly` for even factors,
    /// the polynomial itself for `t -+ 1`).
    pub fn laurent_rep(&self) -> LaurentPoly {
        if self.kind == FactorKind::TPlusMinusOne {
            LaurentPoly::from_qpoly(&self.poly)
        } else {
            LaurentPoly::from_qpoly(&self.poly)
                .mul(&LaurentPoly::t_pow(-(self.poly.deg() as i64) / 2))
        }
    }
}

impl fmt::Display for SymmetricFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.laurent_rep())
    }
}

/// Result of factoring a symmetric Laurent polynomial: symmetric
/// irreducible factors with multiplicities, sorted deterministically.
#[derive(Clone, Debug)]
pub struct SymmetricFactorization {
    pub factors: Vec<(SymmetricFactor, usize)>,
}

impl SymmetricFactorization {
    /// Multiplicity of `t - 1` (sign `+1`) or `t + 1` (sign `-1`).
    pub fn unit_root_multiplicity(&self, sign: i8) -> usize {
        let target = if sign > 0 {
            QPoly::from_ints(&[-1, 1])
        } else {
            QPoly::from_ints(&[1, 1])
        };
        self.factors
            .iter()
            .find(|(f, _)| f.poly == target)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// Factors other than `t -+ 1`.
    pub fn even_factors(&self) -> impl Iterator<Item = &(SymmetricFactor, usize)> {
        self.factors
            .iter()
            .filter(|(f, _)| f.kind != FactorKind::TPlusMinusOne)
    }
}

/// Factor a nonzero symmetric-up-to-unit Laurent polynomial. Errors with
/// `NotSymmetric` when some irreducible factor's involution partner is
/// missing or has mismatched multiplicity.
pub fn factor_symmetric(p: &LaurentPoly) -> Result<SymmetricFactorization> {
    if p.is_zero() {
        return Err(Error::InvalidParameters(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let (poly, _) = p.to_poly_and_shift();
    factor_symmetric_poly(&poly)
}

/// Same as [`factor_symmetric`] for an ordinary polynomial (powers of `t`
/// are units in the Laurent ring and are ignored).
pub fn factor_symmetric_poly(poly: &QPoly) -> Result<SymmetricFactorization> {
    assert!(!poly.is_zero());
    let mut irr: Vec<(QPoly, usize)> = factor_qpoly(poly)
        .into_iter()
        .filter(|(f, _)| *f != QPoly::x())
        .collect();
    let mut factors: Vec<(SymmetricFactor, usize)> = vec![];
    while let Some((f, m)) = irr.pop() {
        let partner = involution_partner(&f);
        if partner == f {
            factors.push((SymmetricFactor::analyze(f, None), m));
            continue;
        }
        let pos = irr.iter().position(|(g, _)| *g == partner);
        match pos {
            Some(i) if irr[i].1 == m => {
                let (g, _) = irr.remove(i);
                let (a, b) = if cmp_qpoly(&f, &g) == Ordering::Less {
                    (f, g)
                } else {
                    (g, f)
                };
                let prod = a.mul(&b);
                factors.push((SymmetricFactor::analyze(prod, Some((a, b))), m));
            }
            Some(i) => {
                return Err(Error::NotSymmetric(format!(
                    "factor {} has multiplicity {} but its involution partner has {}",
                    f, m, irr[i].1
                )));
            }
            None => {
                return Err(Error::NotSymmetric(format!(
                    "factor {} has no involution partner",
                    f
                )));
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SymmetricFactorization { factors })
}
