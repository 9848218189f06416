//! Laurent polynomials over the rationals in one variable `t`.
//!
//! Supports the `t -> 1/t` involution, detection of symmetric (palindromic)
//! elements, the exact change of variable `u = t + 1/t` for symmetric
//! elements, a canonical representative modulo units, and a small text
//! grammar like `3t^-2 - 1 + t^4`.

use crate::qpoly::{fmt_q, parse_q, Q, QPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A Laurent polynomial: finitely many nonzero rational coefficients
/// indexed by integer exponents of `t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Self { terms }
    }

    /// The monomial `c * t^k`.
    pub fn monomial(k: i64, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn t_pow(k: i64) -> Self {
        Self::monomial(k, Q::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Q)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.terms.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Q)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent support (`max - min`), 0 for constants.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn from_qpoly(p: &QPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }

    /// Write `self = t^shift * p(t)` with `p` an ordinary polynomial and
    /// `p(0) != 0`. Returns `(p, shift)`; zero maps to `(0, 0)`.
    pub fn to_poly_and_shift(&self) -> (QPoly, i64) {
        if self.is_zero() {
            return (QPoly::zero(), 0);
        }
        let shift = self.min_exp().unwrap();
        let max = self.max_exp().unwrap();
        let mut coeffs = vec![Q::zero(); (max - shift + 1) as usize];
        for (k, c) in &self.terms {
            coeffs[(k - shift) as usize] = c.clone();
        }
        (QPoly::new(coeffs), shift)
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The involution `t -> 1/t`.
    pub fn involute(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Evaluate at a nonzero rational.
    pub fn eval_q(&self, t: &Q) -> Q {
        assert!(!t.is_zero());
        let mut acc = Q::zero();
        for (k, c) in &self.terms {
            let mut tp = Q::one();
            if *k >= 0 {
                for _ in 0..*k {
                    tp *= t;
                }
            } else {
                let inv = Q::one() / t;
                for _ in 0..(-k) {
                    tp *= &inv;
                }
            }
            acc += c * tp;
        }
        acc
    }

    /// Symmetric under `t -> 1/t`.
    pub fn is_symmetric(&self) -> bool {
        *self == self.involute()
    }

    /// Antisymmetric under `t -> 1/t`.
    pub fn is_antisymmetric(&self) -> bool {
        self.involute() == self.neg()
    }

    /// For a symmetric element, rewrite as a polynomial in `u = t + 1/t`.
    /// Returns `None` when the element is not symmetric.
    pub fn to_u_poly(&self) -> Option<QPoly> {
        if !self.is_symmetric() {
            return None;
        }
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        // self = a_0 + sum_{d>=1} a_d (t^d + t^-d); z_d(u) defined by
        // z_0 = 2, z_1 = u, z_d = u z_{d-1} - z_{d-2}.
        let d_max = self.max_exp().unwrap().max(0) as usize;
        let mut z_prev = QPoly::constant(Q::from_integer(BigInt::from(2)));
        let mut z_cur = QPoly::x();
        let mut acc = QPoly::constant(self.coeff(0));
        for d in 1..=d_max {
            acc = acc.add(&z_cur.scale(&self.coeff(d as i64)));
            let next = QPoly::x().mul(&z_cur).sub(&z_prev);
            z_prev = z_cur;
            z_cur = next;
        }
        Some(acc)
    }

    /// Substitute `u = t + 1/t` into a polynomial in `u`.
    pub fn from_u_poly(q: &QPoly) -> Self {
        let u = Self::t_pow(1).add(&Self::t_pow(-1));
        let mut acc = Self::zero();
        let mut up = Self::one();
        for c in q.coeffs() {
            acc = acc.add(&up.scale(c));
            up = up.mul(&u);
        }
        acc
    }

    /// Canonical representative modulo units `+- t^k`: minimum exponent 0,
    /// integer coefficients with content 1, positive leading coefficient.
    pub fn canonical_unit_rep(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let shift = self.min_exp().unwrap();
        // common denominator
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        // integer content
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            content = content.gcd(&(c.numer() * &den / c.denom()));
        }
        let lead = self.terms.values().next_back().unwrap();
        let mut scale = Q::new(den, content);
        if lead.is_negative() {
            scale = -scale;
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k - shift, c * &scale))
                .collect(),
        }
    }

    /// Parse the grammar exemplified by `3t^-2 - 1 + t^4` or `1/2*t^3`.
    pub fn parse(input: &str) -> Result<Self, String> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut out = Self::zero();
        let bytes = s.as_bytes();
        let mut i = 0usize;
        let mut first = true;
        while i < bytes.len() {
            // sign
            let mut sign = 1i32;
            if bytes[i] == b'+' {
                i += 1;
            } else if bytes[i] == b'-' {
                sign = -1;
                i += 1;
            } else if !first {
                return Err(format!("expected sign at offset {i} in {input:?}"));
            }
            first = false;
            // coefficient (optional): digits with optional /digits
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut coeff_str = s[start..i].to_string();
            if i < bytes.len() && bytes[i] == b'/' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                coeff_str = format!("{}/{}", coeff_str, &s[ds..i]);
            }
            // optional '*'
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            // variable part
            let mut exp: i64 = 0;
            let mut has_var = false;
            if i < bytes.len() && (bytes[i] == b't' || bytes[i] == b'T') {
                has_var = true;
                exp = 1;
                i += 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = s[es..i]
                        .parse::<i64>()
                        .map_err(|e| format!("bad exponent in {input:?}: {e}"))?;
                }
            }
            let coeff = if coeff_str.is_empty() {
                if !has_var {
                    return Err(format!("empty term at offset {i} in {input:?}"));
                }
                Q::one()
            } else {
                parse_q(&coeff_str).ok_or_else(|| format!("bad coefficient {coeff_str:?}"))?
            };
            let coeff = if sign < 0 { -coeff } else { coeff };
            out.add_term(exp, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
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
            let show_coeff = !mag.is_one() || *k == 0;
            if show_coeff {
                write!(f, "{}", fmt_q(&mag))?;
            }
            if *k != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{qi, qr};

    #[test]
    fn parse_and_format() {
        let p = LaurentPoly::parse("3t^-2 - 1 + t^4").unwrap();
        assert_eq!(p.coeff(-2), qi(3));
        assert_eq!(p.coeff(0), qi(-1));
        assert_eq!(p.coeff(4), qi(1));
        assert_eq!(p.to_string(), "3*t^-2 - 1 + t^4");
        let q = LaurentPoly::parse(&p.to_string()).unwrap();
        assert_eq!(p, q);
        let r = LaurentPoly::parse("1/2*t^3 + 2/3").unwrap();
        assert_eq!(r.coeff(3), qr(1, 2));
        assert_eq!(r.coeff(0), qr(2, 3));
        assert!(LaurentPoly::parse("t^").is_err());
        assert!(LaurentPoly::parse("").is_err());
    }

    #[test]
    fn arithmetic() {
        let a = LaurentPoly::parse("t - 1").unwrap();
        let b = LaurentPoly::parse("t^-1 - 1").unwrap();
        let prod = a.mul(&b);
        // (t-1)(1/t - 1) = 1 - t - 1/t + 1 = -t + 2 - t^-1
        assert_eq!(prod, LaurentPoly::parse("-t + 2 - t^-1").unwrap());
        assert!(prod.is_symmetric());
        assert_eq!(prod.eval_q(&qi(2)), qr(-1, 2));
    }

    #[test]
    fn involution_and_symmetry() {
        let p = LaurentPoly::parse("t^2 - 3t + 1").unwrap();
        let q = p.involute();
        assert_eq!(q, LaurentPoly::parse("t^-2 - 3t^-1 + 1").unwrap());
        assert!(!p.is_symmetric());
        assert!(p.mul(&q).is_symmetric());
        let anti = LaurentPoly::parse("t - t^-1").unwrap();
        assert!(anti.is_antisymmetric());
    }

    #[test]
    fn u_substitution_roundtrip() {
        // (t + 1/t)^3 and a mixed symmetric example
        let u = LaurentPoly::parse("t + t^-1").unwrap();
        let f = u.pow(3).add(&LaurentPoly::parse("5").unwrap());
        let q = f.to_u_poly().unwrap();
        assert_eq!(q, QPoly::from_ints(&[5, 0, 0, 1]));
        assert_eq!(LaurentPoly::from_u_poly(&q), f);

        let g = LaurentPoly::parse("t^2 + t^-2 - 7t - 7t^-1 + 3").unwrap();
        let qg = g.to_u_poly().unwrap();
        // t^2 + t^-2 = u^2 - 2
        assert_eq!(qg, QPoly::from_ints(&[1, -7, 1]));
        assert_eq!(LaurentPoly::from_u_poly(&qg), g);

        assert!(LaurentPoly::parse("t - 2").unwrap().to_u_poly().is_none());
    }

    #[test]
    fn canonical_representative() {
        let p = LaurentPoly::parse("3t^-2 - 3t^2").unwrap();
        let rep = p.canonical_unit_rep();
        assert_eq!(rep, LaurentPoly::parse("-1 + t^4").unwrap());
        // scaling and unit shifts do not change the representative
        let q = p.scale(&qr(-7, 5)).mul(&LaurentPoly::t_pow(9));
        assert_eq!(q.canonical_unit_rep(), rep);
        assert_eq!(LaurentPoly::zero().canonical_unit_rep(), LaurentPoly::zero());
    }

    #[test]
    fn poly_shift_split() {
        let p = LaurentPoly::parse("t^-2 - t + 4t^3").unwrap();
        let (q, s) = p.to_poly_and_shift();
        assert_eq!(s, -2);
        assert_eq!(q, QPoly::from_ints(&[1, 0, 0, -1, 0, 4]));
        let back = LaurentPoly::from_qpoly(&q).mul(&LaurentPoly::t_pow(s));
        assert_eq!(back, p);
    }
}
