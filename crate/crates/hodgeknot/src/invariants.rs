//! Derived invariants computed from classified Hodge numbers: the
//! Alexander-polynomial product formula, the Nakanishi index, the circle
//! signature function, and the spectrum/signature relation for torus
//! knots.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::algebraic::{CirclePoint, RealValue};
use crate::error::{Error, Result};
use crate::hvs::HodgeNumbers;
use crate::laurent::LaurentPoly;
use crate::qpoly::{qi, qr, Q};

/// Alexander polynomial as the product of the classified factors:
/// each summand of block size `k` at a factor contributes the factor to
/// the `k`-th power. Canonically normalized.
pub fn alexander_from_hodge(hn: &HodgeNumbers) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for (factor, counts) in hn.factor_size_counts() {
        let rep = factor.laurent_rep();
        for (k, m) in counts {
            out = out.mul(&rep.pow(k * m));
        }
    }
    for ((sign, k), m) in &hn.t_minus_one {
        let rep = if *sign > 0 {
            LaurentPoly::parse("t - 1").unwrap()
        } else {
            LaurentPoly::parse("t + 1").unwrap()
        };
        out = out.mul(&rep.pow(k * m));
    }
    out.canonical_unit_rep()
}

/// The Nakanishi index: the minimal number of module generators, read
/// off as the largest total summand count at a single eigenvalue class.
pub fn nakanishi_index(hn: &HodgeNumbers) -> usize {
    let mut best = 0usize;
    for (_factor, counts) in hn.factor_size_counts() {
        best = best.max(counts.values().sum());
    }
    let mut unit: [usize; 2] = [0, 0];
    for ((sign, _k), m) in &hn.t_minus_one {
        unit[if *sign > 0 { 0 } else { 1 }] += m;
    }
    best.max(unit[0]).max(unit[1])
}

fn u_value_of(z: &CirclePoint) -> RealValue {
    match z {
        CirclePoint::U(v) => v.clone(),
        CirclePoint::MinusOne => RealValue::Rat(qi(-2)),
    }
}

/// Signature at a circle point `z₀ = e^{ix}` that is not an Alexander
/// root: every odd-size block at a root with angle strictly less than `x`
/// contributes `−2ε`.
pub fn signature_from_hodge(hn: &HodgeNumbers, z0: &CirclePoint) -> Result<i64> {
    if matches!(z0, CirclePoint::MinusOne) && hn.t_minus_one.keys().any(|(s, _)| *s < 0) {
        return Err(Error::OnRoot);
    }
    let ux = u_value_of(z0);
    let mut sum = 0i64;
    for ((factor, root, k), pair) in &hn.on_circle {
        match factor.circle_root_value(*root).cmp_real(&ux) {
            Ordering::Equal => return Err(Error::OnRoot),
            // larger u means smaller angle: this root's angle precedes x
            Ordering::Greater => {
                if k % 2 == 1 {
                    sum += pair.plus as i64 - pair.minus as i64;
                }
            }
            Ordering::Less => {}
        }
    }
    Ok(-2 * sum)
}

/// The spectrum multiset `{i/p + j/q : 1 ≤ i < p, 1 ≤ j < q}` of the
/// `(p,q)` torus knot, sorted.
pub fn torus_spectrum(p: i64, q: i64) -> Result<Vec<Q>> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidParameters(
            "torus parameters must both be at least 2".into(),
        ));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let mut out = Vec::with_capacity(((p - 1) * (q - 1)) as usize);
    for i in 1..p {
        for j in 1..q {
            out.push(qr(i, p) + qr(j, q));
        }
    }
    out.sort();
    Ok(out)
}

/// Signature from a spectrum: `−#(Sp ∩ (x, x+1)) + #(Sp ∖ [x, x+1])` for
/// rational `x ∈ (0,1)` with neither `x` nor `x+1` in the spectrum.
pub fn signature_via_spectrum(sp: &[Q], x: &Q) -> Result<i64> {
    if *x <= Q::zero() || *x >= qi(1) {
        return Err(Error::InvalidParameters(
            "spectrum signature is evaluated at rational x with 0 < x < 1".into(),
        ));
    }
    let upper = x + qi(1);
    let mut inside = 0i64;
    let mut outside = 0i64;
    for s in sp {
        if s == x || *s == upper {
            return Err(Error::OnSpectrum(crate::qpoly::fmt_q(s)));
        }
        if s > x && *s < upper {
            inside += 1;
        } else {
            outside += 1;
        }
    }
    Ok(-inside + outside)
}
