//! Shared randomized suites used by both the property and acceptance
//! test targets.  Everything is seeded and deterministic.

use hodgeknot::blanchfield::{blanchfield_from_seifert, decompose, ef_numbers};
use hodgeknot::hvs::{classify_hvs, hvs_from_seifert, HodgeNumbers};
use hodgeknot::laurent::LaurentPoly;
use hodgeknot::qmat::QMat;
use hodgeknot::qpoly::{qi, Q, QPoly};
use hodgeknot::seifert::SeifertMatrix;
use hodgeknot::symfactor::factor_symmetric;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> QMat {
    QMat::from_fn(n, n, |_, _| qi(rng.gen_range(-bound..=bound)))
}

/// A random integer Seifert matrix with nonzero determinant, of size
/// `1..=max_n`.
pub fn random_invertible_seifert(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    bound: i64,
) -> SeifertMatrix {
    loop {
        let n = rng.gen_range(1..=max_n);
        let m = random_int_matrix(rng, n, bound);
        if m.det() != qi(0) {
            return SeifertMatrix::synthetic(m);
        }
    }
}

/// Elementary matrix `I + c * E_(i,j)` (`i != j`).
fn elementary(n: usize, i: usize, j: usize, c: &Q) -> QMat {
    QMat::from_fn(n, n, |r, s| {
        if r == s {
            qi(1)
        } else if r == i && s == j {
            c.clone()
        } else {
            qi(0)
        }
    })
}

/// A random integer matrix with determinant `+-1`, built from
/// elementary shears, swaps, and sign flips.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> QMat {
    let mut p = QMat::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..(2 * n + 4) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        match rng.gen_range(0..4) {
            0 | 1 => {
                let c = qi(rng.gen_range(-2..=2));
                p = p.mul(&elementary(n, i, j, &c));
            }
            2 => {
                // swap columns i and j
                let e = QMat::from_fn(n, n, |r, s| {
                    let t = if s == i { j } else if s == j { i } else { s };
                    if r == t {
                        qi(1)
                    } else {
                        qi(0)
                    }
                });
                p = p.mul(&e);
            }
            _ => {
                let e = QMat::from_fn(n, n, |r, s| {
                    if r != s {
                        qi(0)
                    } else if r == i {
                        qi(-1)
                    } else {
                        qi(1)
                    }
                });
                p = p.mul(&e);
            }
        }
    }
    assert!(p.det() == qi(1) || p.det() == qi(-1));
    p
}

/// One standard enlargement of a Seifert matrix: two new rows/columns in
/// either the column pattern `[[S, x, 0], [0, a, 1], [0, 0, 0]]` or its
/// row mirror.
pub fn random_stabilization(rng: &mut ChaCha8Rng, s: &QMat) -> QMat {
    let n = s.rows();
    let column_pattern: bool = rng.gen();
    let a = qi(rng.gen_range(-2..=2));
    let link: Vec<Q> = (0..n).map(|_| qi(rng.gen_range(-2..=2))).collect();
    QMat::from_fn(n + 2, n + 2, |i, j| {
        if i < n && j < n {
            s.get(i, j).clone()
        } else if column_pattern {
            if i < n && j == n {
                link[i].clone()
            } else if i == n && j == n {
                a.clone()
            } else if i == n && j == n + 1 {
                qi(1)
            } else {
                qi(0)
            }
        } else if i == n && j < n {
            link[j].clone()
        } else if i == n && j == n {
            a.clone()
        } else if i == n + 1 && j == n {
            qi(1)
        } else {
            qi(0)
        }
    })
}

/// Apply `count` random moves mixing stabilizations and unimodular
/// congruences (always at least `count` stabilizations).
pub fn randomly_stabilized(rng: &mut ChaCha8Rng, s: &QMat, count: usize) -> QMat {
    let mut m = s.clone();
    for _ in 0..count {
        m = random_stabilization(rng, &m);
        if rng.gen() {
            let p = random_unimodular(rng, m.rows());
            m = m.congruence(&p);
        }
    }
    m
}

/// Suite: variation-structure axioms hold for random Seifert input and
/// survive random basis changes (`n` cases).
pub fn suite_structure_axioms(n: usize, seed: u64) {
    let mut r = rng(seed);
    for case in 0..n {
        let s = random_invertible_seifert(&mut r, 6, 2);
        // Construction re-verifies all four axioms exactly.
        let hvs = hvs_from_seifert(&s).unwrap_or_else(|e| panic!("case {case}: {e}"));
        let p = random_unimodular(&mut r, hvs.dim());
        hvs.change_basis(&p)
            .unwrap_or_else(|e| panic!("case {case}: basis change broke an axiom: {e}"));
    }
}

/// Suite: the linking form built from random Seifert matrices is
/// Hermitian with symmetric torsion order (`n` cases).
pub fn suite_hermitian_pairings(n: usize, seed: u64) {
    let mut r = rng(seed);
    for case in 0..n {
        let s = random_invertible_seifert(&mut r, 6, 2);
        let form = blanchfield_from_seifert(&s).unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert!(form.is_hermitian(), "case {case}: pairing is not Hermitian");
        let order = form.order().canonical_unit_rep();
        let reversed = order.involute().canonical_unit_rep();
        assert_eq!(order, reversed, "case {case}: torsion order is not symmetric");
    }
}

/// Random symmetric Laurent polynomial: a product of palindromic
/// quadratics, unit-root factors, reversed pairs, and a random unit.
fn random_symmetric_laurent(r: &mut ChaCha8Rng) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for _ in 0..r.gen_range(1..=3) {
        // t^-1 + c + t is symmetric for any c; c = +-2 gives (t -+ 1)^2/t.
        let c = qi(r.gen_range(-4..=4));
        let quad = LaurentPoly::from_terms([(-1, qi(1)), (0, c), (1, qi(1))]);
        p = p.mul(&quad.pow(r.gen_range(1..=2)));
    }
    for _ in 0..r.gen_range(0..=2) {
        let sign = if r.gen() { 1 } else { -1 };
        p = p.mul(&LaurentPoly::from_terms([(0, qi(sign)), (1, qi(1))]));
        p = p.mul(&LaurentPoly::from_terms([(0, qi(1)), (-1, qi(sign))]));
    }
    if r.gen_range(0..=3) == 0 {
        // a reversed pair q(t) * q(1/t), symmetric as a whole
        let a = qi(r.gen_range(1..=3));
        let q = LaurentPoly::from_terms([(0, qi(1)), (1, a.clone()), (2, qi(1) + a)]);
        p = p.mul(&q).mul(&q.involute());
    }
    let unit_exp = r.gen_range(-2..=2);
    let unit_sign = if r.gen() { qi(1) } else { qi(-1) };
    p.mul(&LaurentPoly::monomial(unit_exp, unit_sign))
}

/// Suite: factoring a symmetric Laurent polynomial and multiplying the
/// factors back recovers the input up to units (`n` cases).
pub fn suite_factorization_round_trips(n: usize, seed: u64) {
    let mut r = rng(seed);
    for case in 0..n {
        let p = random_symmetric_laurent(&mut r);
        let factorization =
            factor_symmetric(&p).unwrap_or_else(|e| panic!("case {case}: {e} on {p}"));
        let mut product = QPoly::one();
        for (factor, mult) in &factorization.factors {
            product = product.mul(&factor.poly().pow(*mult));
        }
        let recovered = LaurentPoly::from_qpoly(&product).canonical_unit_rep();
        assert_eq!(
            recovered,
            p.canonical_unit_rep(),
            "case {case}: round trip failed for {p}"
        );
    }
}

/// Suite: the classification is invariant under integer congruence of
/// the Seifert matrix (`n` cases).
pub fn suite_classification_congruence_invariance(n: usize, seed: u64) {
    let mut r = rng(seed);
    for case in 0..n {
        let s = random_invertible_seifert(&mut r, 5, 2);
        let hn = classify_hvs(&hvs_from_seifert(&s).unwrap())
            .unwrap_or_else(|e| panic!("case {case}: {e}"));
        let p = random_unimodular(&mut r, s.size());
        let s2 = SeifertMatrix::synthetic(s.matrix().congruence(&p));
        let hn2 = classify_hvs(&hvs_from_seifert(&s2).unwrap())
            .unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert_eq!(hn, hn2, "case {case}: congruence changed the classification");
    }
}

/// Both routes to the signed block data for one invertible Seifert
/// matrix; panics with context on disagreement.  Returns the common
/// value.  When the matrix has torsion at `t = +-1`, only the
/// circle/off-circle parts are compared (the public decomposition
/// rejects such input).
pub fn both_routes_agree(s: &SeifertMatrix, label: &str) -> HodgeNumbers {
    let hn = classify_hvs(&hvs_from_seifert(s).unwrap_or_else(|e| panic!("{label}: {e}")))
        .unwrap_or_else(|e| panic!("{label}: classification failed: {e}"));
    let form = blanchfield_from_seifert(s).unwrap_or_else(|e| panic!("{label}: {e}"));
    match decompose(&form) {
        Ok(summands) => {
            let hn_b = ef_numbers(&summands);
            assert_eq!(
                hn.on_circle, hn_b.on_circle,
                "{label}: circle data disagrees between routes"
            );
            assert_eq!(
                hn.off_circle, hn_b.off_circle,
                "{label}: off-circle data disagrees between routes"
            );
        }
        Err(hodgeknot::Error::TPlusMinusOneTorsion) => {
            // Covered by the report-level crosscheck, which compares the
            // unit-root sizes against the Smith form route.
        }
        Err(e) => panic!("{label}: decomposition failed: {e}"),
    }
    hn
}
