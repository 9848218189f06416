//! Irreducible factorization of rational polynomials, from scratch.
//!
//! Pipeline: Yun squarefree decomposition over `Q`, reduction to a primitive
//! integer polynomial, Cantor-Zassenhaus factorization modulo a well-chosen
//! small prime (distinct-degree then equal-degree splitting), quadratic
//! Hensel lifting of each modular factor past the Mignotte coefficient
//! bound, and subset recombination with exact trial division. Also provides
//! cyclotomic polynomials, used to recognize root-of-unity eigenvalue
//! classes.

use crate::qpoly::{Q, QPoly};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

// ---------------------------------------------------------------------------
// Integer polynomials (dense, ascending degree, no trailing zeros)
// ---------------------------------------------------------------------------

type IPoly = Vec<BigInt>;

fn itrim(mut v: IPoly) -> IPoly {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn ideg(v: &IPoly) -> usize {
    assert!(!v.is_empty());
    v.len() - 1
}

fn imul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    itrim(out)
}

fn icontent(v: &IPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

/// Primitive part with positive leading coefficient.
fn iprimitive(v: &IPoly) -> IPoly {
    let v = itrim(v.clone());
    if v.is_empty() {
        return v;
    }
    let mut g = icontent(&v);
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

fn ipoly_to_qpoly(v: &IPoly) -> QPoly {
    QPoly::new(v.iter().map(|c| Q::from_integer(c.clone())).collect())
}

fn qpoly_to_iprimitive(p: &QPoly) -> IPoly {
    assert!(!p.is_zero());
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.denom());
    }
    let v: IPoly = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * &den / c.denom())
        .collect();
    iprimitive(&v)
}

fn i_max_norm(v: &IPoly) -> BigInt {
    v.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

// ---------------------------------------------------------------------------
// Arithmetic in GF(p)[x] with small primes
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
struct Gp {
    p: u64,
}

type GPoly = Vec<u64>;

impl Gp {
    fn trim(&self, mut v: GPoly) -> GPoly {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn addm(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn powm(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        r
    }

    fn invm(&self, a: u64) -> u64 {
        assert!(a % self.p != 0);
        self.powm(a, self.p - 2)
    }

    fn sub(&self, a: &GPoly, b: &GPoly) -> GPoly {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            out[i] = self.subm(x, y);
        }
        self.trim(out)
    }

    fn mul(&self, a: &GPoly, b: &GPoly) -> GPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.addm(out[i + j], self.mulm(x, y));
            }
        }
        self.trim(out)
    }

    fn monic(&self, a: &GPoly) -> GPoly {
        if a.is_empty() {
            return vec![];
        }
        let inv = self.invm(*a.last().unwrap());
        a.iter().map(|&c| self.mulm(c, inv)).collect()
    }

    fn divrem(&self, a: &GPoly, d: &GPoly) -> (GPoly, GPoly) {
        assert!(!d.is_empty());
        let dd = d.len() - 1;
        let dinv = self.invm(*d.last().unwrap());
        let mut rem = a.clone();
        if rem.len() < d.len() {
            return (vec![], rem);
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd];
            if c == 0 {
                continue;
            }
            let f = self.mulm(c, dinv);
            quot[i] = f;
            for (j, &dc) in d.iter().enumerate() {
                rem[i + j] = self.subm(rem[i + j], self.mulm(f, dc));
            }
        }
        (self.trim(quot), self.trim(rem))
    }

    fn rem(&self, a: &GPoly, d: &GPoly) -> GPoly {
        self.divrem(a, d).1
    }

    fn gcd(&self, a: &GPoly, b: &GPoly) -> GPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(&a)
        }
    }

    /// Extended gcd over GF(p)[x]: `(g, s, t)` monic with `s a + t b = g`.
    fn ext_gcd(&self, a: &GPoly, b: &GPoly) -> (GPoly, GPoly, GPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], vec![]);
        let (mut t0, mut t1) = (vec![], vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = r1;
            r1 = r;
            let ns = self.sub(&s0, &self.mul(&q, &s1));
            s0 = s1;
            s1 = ns;
            let nt = self.sub(&t0, &self.mul(&q, &t1));
            t0 = t1;
            t1 = nt;
        }
        if r0.is_empty() {
            return (r0, s0, t0);
        }
        let inv = self.invm(*r0.last().unwrap());
        let scale = |v: &GPoly| v.iter().map(|&c| self.mulm(c, inv)).collect::<GPoly>();
        (scale(&r0), scale(&s0), scale(&t0))
    }

    fn derivative(&self, a: &GPoly) -> GPoly {
        if a.len() <= 1 {
            return vec![];
        }
        let mut out = Vec::with_capacity(a.len() - 1);
        for (i, &c) in a.iter().enumerate().skip(1) {
            out.push(self.mulm(c, (i as u64) % self.p));
        }
        self.trim(out)
    }

    /// `b^e mod f` with a big-integer exponent.
    fn powmod(&self, b: &GPoly, e: &BigUint, f: &GPoly) -> GPoly {
        let mut result = vec![1u64];
        let mut base = self.rem(b, f);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &base), f);
            }
            if i + 1 < e.bits() {
                base = self.rem(&self.mul(&base, &base), f);
            }
        }
        result
    }
}

/// Deterministic xorshift64* generator for equal-degree splitting.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }
}

/// Distinct-degree decomposition of a monic squarefree polynomial mod p.
/// Returns pairs `(product of irreducibles of degree d, d)`.
fn distinct_degree(gp: &Gp, f: &GPoly) -> Vec<(GPoly, usize)> {
    let mut out = vec![];
    let mut f = f.clone();
    let x = vec![0u64, 1u64];
    let mut h = x.clone();
    let mut d = 0usize;
    while f.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = gp.powmod(&h, &BigUint::from(gp.p), &f);
        let g = gp.gcd(&gp.sub(&h, &x), &f);
        if g.len() > 1 {
            out.push((g.clone(), d));
            f = gp.divrem(&f, &g).0;
            h = gp.rem(&h, &f);
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting: factor a monic squarefree product of
/// irreducibles all of degree `d` into the irreducibles (p odd).
fn equal_degree(gp: &Gp, f: &GPoly, d: usize, rng: &mut XorShift) -> Vec<GPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    // exponent (p^d - 1) / 2
    let e = (BigUint::from(gp.p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        // random polynomial of degree < n
        let mut a: GPoly = (0..n).map(|_| rng.next() % gp.p).collect();
        a = gp.trim(a);
        if a.len() <= 1 {
            continue;
        }
        let g1 = gp.gcd(&a, f);
        let split = if g1.len() > 1 && g1.len() < f.len() {
            g1
        } else {
            let b = gp.powmod(&a, &e, f);
            let g = gp.gcd(&gp.sub(&b, &vec![1u64]), f);
            if g.len() > 1 && g.len() < f.len() {
                g
            } else {
                continue;
            }
        };
        let cof = gp.divrem(f, &split).0;
        let mut out = equal_degree(gp, &split, d, rng);
        out.extend(equal_degree(gp, &cof, d, rng));
        return out;
    }
}

/// Full factorization of a monic squarefree polynomial mod p into monic
/// irreducibles.
fn factor_mod_p(gp: &Gp, f: &GPoly) -> Vec<GPoly> {
    let mut rng = XorShift(0x9E3779B97F4A7C15 ^ (gp.p << 16) ^ (f.len() as u64));
    let mut out = vec![];
    for (prod, d) in distinct_degree(gp, f) {
        out.extend(equal_degree(gp, &prod, d, &mut rng));
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z/p^k
// ---------------------------------------------------------------------------

fn mod_reduce(v: &IPoly, m: &BigInt) -> IPoly {
    itrim(v.iter().map(|c| c.mod_floor(m)).collect())
}

fn mod_sym(v: &IPoly, m: &BigInt) -> IPoly {
    let half = m / 2;
    itrim(
        v.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mod_add(a: &IPoly, b: &IPoly, m: &BigInt) -> IPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&z);
        let y = b.get(i).unwrap_or(&z);
        out.push((x + y).mod_floor(m));
    }
    itrim(out)
}

fn mod_sub(a: &IPoly, b: &IPoly, m: &BigInt) -> IPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&z);
        let y = b.get(i).unwrap_or(&z);
        out.push((x - y).mod_floor(m));
    }
    itrim(out)
}

fn mod_mul(a: &IPoly, b: &IPoly, m: &BigInt) -> IPoly {
    mod_reduce(&imul(a, b), m)
}

fn bigint_inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "non-invertible element mod m");
    e.x.mod_floor(m)
}

/// Division `a = q*d + r` in (Z/m)[x]; requires `lc(d)` invertible mod m.
fn mod_divrem(a: &IPoly, d: &IPoly, m: &BigInt) -> (IPoly, IPoly) {
    assert!(!d.is_empty());
    let dd = ideg(d);
    let dinv = bigint_inv_mod(d.last().unwrap(), m);
    let mut rem = mod_reduce(a, m);
    if rem.len() < d.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        if rem.len() < i + dd + 1 {
            continue;
        }
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        let f = (&c * &dinv).mod_floor(m);
        quot[i] = f.clone();
        for (j, dc) in d.iter().enumerate() {
            let idx = i + j;
            let v = (&rem[idx] - &f * dc).mod_floor(m);
            rem[idx] = v;
        }
        rem = itrim(rem);
    }
    (itrim(quot), itrim(rem))
}

/// Quadratic Hensel lift of a coprime pair: given `f = g*h (mod p)` with
/// `g` monic and `lc(h)` invertible mod p, returns `(g*, h*)` with
/// `f = g* h* (mod p^(2^j) >= p^k)`, `g*` monic, `g* = g (mod p)`.
fn hensel_pair(f: &IPoly, g0: &GPoly, h0: &GPoly, gp: &Gp, k: u32) -> (IPoly, IPoly) {
    let p = BigInt::from(gp.p);
    // Bezout over GF(p): s*g + t*h = 1
    let (one, s0, t0) = gp.ext_gcd(g0, h0);
    assert_eq!(one, vec![1u64], "modular factors not coprime");
    let to_ipoly = |v: &GPoly| -> IPoly { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut g: IPoly = to_ipoly(g0);
    let mut h: IPoly = to_ipoly(h0);
    let mut s: IPoly = to_ipoly(&s0);
    let mut t: IPoly = to_ipoly(&t0);
    let mut m = p.clone();
    let mut reached: u32 = 1;
    while reached < k {
        let m2 = &m * &m;
        // e = f - g h (mod m^2)
        let e = mod_sub(&mod_reduce(f, &m2), &mod_mul(&g, &h, &m2), &m2);
        // dg = (t e) rem g  (g monic)
        let (q, dg) = mod_divrem(&mod_mul(&t, &e, &m2), &g, &m2);
        let _ = q;
        // dh = (e - h dg) / g  exactly
        let num = mod_sub(&e, &mod_mul(&h, &dg, &m2), &m2);
        let (dh, r) = mod_divrem(&num, &g, &m2);
        debug_assert!(r.is_empty(), "hensel: non-exact division");
        g = mod_add(&g, &dg, &m2);
        h = mod_add(&h, &dh, &m2);
        // lift the Bezout identity: delta = s g + t h - 1 (mod m^2)
        let delta = mod_sub(
            &mod_add(&mod_mul(&s, &g, &m2), &mod_mul(&t, &h, &m2), &m2),
            &vec![BigInt::one()],
            &m2,
        );
        let (qq, rr) = mod_divrem(&mod_mul(&s, &delta, &m2), &h, &m2);
        let s_new = mod_sub(&s, &rr, &m2);
        let t_new = mod_sub(
            &mod_sub(&t, &mod_mul(&t, &delta, &m2), &m2),
            &mod_mul(&qq, &g, &m2),
            &m2,
        );
        s = s_new;
        t = t_new;
        m = m2;
        reached *= 2;
    }
    (g, h)
}

// ---------------------------------------------------------------------------
// Zassenhaus factorization of squarefree primitive integer polynomials
// ---------------------------------------------------------------------------

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn to_gpoly(v: &IPoly, gp: &Gp) -> GPoly {
    let p = BigInt::from(gp.p);
    gp.trim(
        v.iter()
            .map(|c| c.mod_floor(&p).to_u64().unwrap())
            .collect(),
    )
}

/// Integer square root, rounded up.
fn isqrt_ceil(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + 1
    }
}

/// Factor a primitive squarefree integer polynomial with nonzero constant
/// term and degree >= 1 into primitive irreducible integer polynomials.
fn factor_squarefree_primitive(f: &IPoly) -> Vec<IPoly> {
    let n = ideg(f);
    if n == 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();

    // Choose a prime: odd, not dividing lc, keeping f squarefree mod p.
    // Among the first few usable primes, keep the one giving the fewest
    // modular factors.
    let mut best: Option<(Gp, Vec<GPoly>)> = None;
    let mut tried = 0;
    let mut cand = 3u64;
    while tried < 4 {
        while !is_prime_u64(cand)
            || (&lc % BigInt::from(cand)).is_zero()
            || {
                let gp = Gp { p: cand };
                let fm = to_gpoly(f, &gp);
                fm.len() != n + 1 || gp.gcd(&fm, &gp.derivative(&fm)).len() != 1
            }
        {
            cand += 2;
        }
        let gp = Gp { p: cand };
        let fm = gp.monic(&to_gpoly(f, &gp));
        let factors = factor_mod_p(&gp, &fm);
        let count = factors.len();
        if best.as_ref().map_or(true, |(_, b)| count < b.len()) {
            best = Some((gp, factors));
        }
        if count == 1 {
            break;
        }
        tried += 1;
        cand += 2;
    }
    let (gp, modular) = best.unwrap();
    if modular.len() == 1 {
        return vec![f.clone()]; // irreducible mod p => irreducible over Q
    }

    // Mignotte-style bound: coefficients of lc * (any factor of f) are
    // bounded by sqrt(n+1) * 2^n * maxnorm(f) * |lc|.
    let bound: BigInt =
        isqrt_ceil(&BigInt::from(n as u64 + 1)) * (BigInt::one() << n) * i_max_norm(f) * lc.abs();
    let p_big = BigInt::from(gp.p);
    let mut k = 1u32;
    let mut pk = p_big.clone();
    let two_bound = BigInt::from(2) * &bound;
    while pk <= two_bound {
        pk = &pk * &p_big;
        k += 1;
    }

    // Lift each modular factor to (at least) p^k against its cofactor.
    let mut lifted: Vec<IPoly> = vec![];
    let mut actual_modulus = BigInt::zero();
    for gi in &modular {
        // cofactor: lc * prod of the others, mod p
        let mut h = vec![(&lc).mod_floor(&p_big).to_u64().unwrap()];
        h = gp.trim(h);
        for gj in &modular {
            if std::ptr::eq(gi, gj) {
                continue;
            }
            h = gp.mul(&h, gj);
        }
        let (gstar, _hstar) = hensel_pair(f, gi, &h, &gp, k);
        // modulus actually reached: p^(2^ceil(log2 k)) >= p^k
        let mut reached = 1u32;
        let mut m = p_big.clone();
        while reached < k {
            m = &m * &m;
            reached *= 2;
        }
        actual_modulus = m;
        lifted.push(gstar);
    }
    let modulus = actual_modulus;

    // Subset recombination.
    let mut remaining: Vec<IPoly> = lifted;
    let mut fstar = f.clone();
    let mut out: Vec<IPoly> = vec![];
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, size) {
            // candidate = lc(fstar) * prod_{i in combo} g_i  (mod modulus, symmetric)
            let lcur = fstar.last().unwrap().clone();
            let mut cand: IPoly = vec![lcur.mod_floor(&modulus)];
            for &i in &combo {
                cand = mod_mul(&cand, &remaining[i], &modulus);
            }
            let cand = mod_sym(&cand, &modulus);
            if cand.is_empty() {
                continue;
            }
            let cand = iprimitive(&cand);
            // trial division over Q (Gauss: primitive quotient is integral)
            let fq = ipoly_to_qpoly(&fstar);
            let cq = ipoly_to_qpoly(&cand);
            if cq.degree().map_or(true, |d| d == 0) {
                continue;
            }
            let (quot, rem) = fq.divrem(&cq);
            if rem.is_zero() {
                out.push(cand);
                fstar = qpoly_to_iprimitive(&quot);
                let mut keep: Vec<IPoly> = vec![];
                for (i, g) in remaining.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(g);
                    }
                }
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if ideg(&fstar) >= 1 {
        out.push(iprimitive(&fstar));
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Public interface
// ---------------------------------------------------------------------------

/// Factor a nonzero rational polynomial into monic irreducible factors with
/// multiplicities. The constant content is dropped (recover it as
/// `p / prod f_i^m_i` if needed). Factors are sorted deterministically.
pub fn factor_qpoly(p: &QPoly) -> Vec<(QPoly, usize)> {
    assert!(!p.is_zero(), "factor of zero polynomial");
    if p.deg() == 0 {
        return vec![];
    }
    let mut out: Vec<(QPoly, usize)> = vec![];
    for (sf, mult) in p.yun_squarefree() {
        // strip powers of x
        let mut sf = sf;
        let mut xpow = 0usize;
        while sf.coeff(0).is_zero() {
            sf = sf.exact_div(&QPoly::x());
            xpow += 1;
        }
        if xpow > 0 {
            out.push((QPoly::x(), xpow * mult));
        }
        if sf.degree() == Some(0) {
            continue;
        }
        let fz = qpoly_to_iprimitive(&sf);
        for g in factor_squarefree_primitive(&fz) {
            out.push((ipoly_to_qpoly(&g).monic(), mult));
        }
    }
    // merge duplicates (possible via the x factor), sort deterministically
    let mut merged: Vec<(QPoly, usize)> = vec![];
    'next: for (f, m) in out {
        for (g, n) in merged.iter_mut() {
            if *g == f {
                *n += m;
                continue 'next;
            }
        }
        merged.push((f, m));
    }
    merged.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| cmp_poly(&a.0, &b.0))
    });
    merged
}

fn cmp_poly(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    let n = a.coeffs().len().max(b.coeffs().len());
    for i in 0..n {
        let c = a.coeff(i).cmp(&b.coeff(i));
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

/// The n-th cyclotomic polynomial (monic, integer coefficients), memoized.
pub fn cyclotomic(n: u64) -> QPoly {
    static CACHE: OnceLock<Mutex<HashMap<u64, QPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = {
        assert!(n >= 1);
        // x^n - 1 divided by the product of cyclotomics of proper divisors
        let mut xn1 = vec![Q::from_integer(BigInt::from(-1))];
        xn1.extend(std::iter::repeat(Q::zero()).take(n as usize - 1));
        xn1.push(Q::one());
        let mut f = QPoly::new(xn1);
        for d in 1..n {
            if n % d == 0 {
                f = f.exact_div(&cyclotomic(d));
            }
        }
        f
    };
    cache.lock().unwrap().insert(n, result.clone());
    result
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::qi;

    fn assert_factorization(p: &QPoly) {
        let fs = factor_qpoly(p);
        let mut prod = QPoly::one();
        for (f, m) in &fs {
            assert_eq!(f.lc(), Q::one(), "factor not monic");
            prod = prod.mul(&f.pow(*m));
        }
        assert_eq!(prod, p.monic(), "product of factors mismatch for {}", p);
    }

    #[test]
    fn factor_difference_of_squares() {
        let p = QPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let fs = factor_qpoly(&p);
        assert_eq!(fs.len(), 2);
        assert_factorization(&p);
    }

    #[test]
    fn factor_irreducible_quadratic() {
        let p = QPoly::from_ints(&[1, -1, 1]); // x^2 - x + 1
        let fs = factor_qpoly(&p);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].1, 1);
        assert_eq!(fs[0].0, p);
    }

    #[test]
    fn factor_with_multiplicity() {
        // (x^2 - x + 1)^2 (x - 3)
        let p = QPoly::from_ints(&[1, -1, 1])
            .pow(2)
            .mul(&QPoly::from_ints(&[-3, 1]));
        let fs = factor_qpoly(&p);
        assert_eq!(fs.len(), 2);
        assert_factorization(&p);
        let mults: Vec<usize> = fs.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&2) && mults.contains(&1));
    }

    #[test]
    fn factor_products_of_cyclotomics() {
        // x^12 - 1 = prod of cyclotomics of divisors of 12
        let mut c = vec![qi(-1)];
        c.extend(std::iter::repeat(qi(0)).take(11));
        c.push(qi(1));
        let p = QPoly::new(c);
        let fs = factor_qpoly(&p);
        assert_eq!(fs.len(), 6); // divisors 1,2,3,4,6,12
        assert_factorization(&p);
        for (f, _) in &fs {
            let mut found = false;
            for d in [1u64, 2, 3, 4, 6, 12] {
                if *f == cyclotomic(d) {
                    found = true;
                }
            }
            assert!(found, "unexpected factor {}", f);
        }
    }

    #[test]
    fn factor_large_combination() {
        // A degree-16 product with repeated and paired factors.
        let a = QPoly::from_ints(&[1, 0, -4, 0, 1]); // x^4 - 4x^2 + 1, irreducible
        let b = QPoly::from_ints(&[1, 3]); // 3x + 1
        let c = QPoly::from_ints(&[2, 0, 1]); // x^2 + 2
        let p = a.mul(&b.pow(2)).mul(&c.pow(3)).mul(&QPoly::from_ints(&[-7, 2]));
        assert_factorization(&p);
        let fs = factor_qpoly(&p);
        assert_eq!(fs.iter().map(|(f, m)| f.deg() * m).sum::<usize>(), p.deg());
    }

    #[test]
    fn factor_rational_coefficients() {
        // (x/2 - 1/3)(x^2 + 1/5)
        let p = QPoly::new(vec![crate::qpoly::qr(-1, 3), crate::qpoly::qr(1, 2)])
            .mul(&QPoly::new(vec![crate::qpoly::qr(1, 5), qi(0), qi(1)]));
        assert_factorization(&p);
        assert_eq!(factor_qpoly(&p).len(), 2);
    }

    #[test]
    fn cyclotomic_basics() {
        assert_eq!(cyclotomic(1), QPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), QPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(6), QPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), QPoly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(5), QPoly::from_ints(&[1, 1, 1, 1, 1]));
        assert_eq!(euler_phi(12), 4);
        assert_eq!(cyclotomic(105).deg(), euler_phi(105) as usize);
    }

    #[test]
    fn factor_swinnerton_dyer_like() {
        // minimal polynomial of sqrt(2)+sqrt(3): x^4 - 10x^2 + 1 (irreducible,
        // but splits into 4 linears mod every prime - stresses recombination)
        let p = QPoly::from_ints(&[1, 0, -10, 0, 1]);
        let fs = factor_qpoly(&p);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0, p);
    }
}
