//! Real Hermitian variation structures: construction from an invertible
//! Seifert matrix, assembly of the indecomposable model structures,
//! classification into Hodge numbers, and the mod-2 spectrum formula.
//!
//! A (−1)-variation structure is a quadruple `(U; b, h, V)` with `b` a
//! skew-symmetric pairing, `h` a `b`-orthogonal monodromy, and `V` a
//! variation map satisfying `Vᵀ = Vhᵀ` and `Vb = h − I`. It is *simple*
//! when `V` is invertible; simple structures decompose uniquely into
//! indecomposables, and the multiplicities are the Hodge numbers.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qmat::QMat;
use crate::qpoly::{qi, qr, Q, QPoly};
use crate::seifert::{alexander_direct, SeifertMatrix};
use crate::symfactor::{factor_symmetric, FactorKind, SymmetricFactor};
use crate::zfactor::{cyclotomic, euler_phi};

/// A real (−1)-Hermitian variation structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hvs {
    b: QMat,
    h: QMat,
    v: QMat,
}

impl Hvs {
    /// Build a structure, verifying all axioms exactly:
    /// `bᵀ = −b`, `hᵀbh = b`, `Vᵀ = Vhᵀ`, `Vb = h − I`.
    pub fn new(b: QMat, h: QMat, v: QMat) -> Result<Self> {
        let n = b.rows();
        if !b.is_square() || !h.is_square() || !v.is_square() || h.rows() != n || v.rows() != n {
            return Err(Error::InvalidParameters(
                "variation structure matrices must be square of equal size".into(),
            ));
        }
        if b.transpose() != b.neg() {
            return Err(Error::InvalidParameters(
                "intersection form must be skew-symmetric".into(),
            ));
        }
        if b.congruence(&h) != b {
            return Err(Error::InvalidParameters(
                "monodromy must preserve the intersection form".into(),
            ));
        }
        if v.transpose() != v.mul(&h.transpose()) {
            return Err(Error::InvalidParameters(
                "variation map fails its transposition identity".into(),
            ));
        }
        if v.mul(&b) != h.sub(&QMat::identity(n)) {
            return Err(Error::InvalidParameters(
                "variation map fails V·b = h − I".into(),
            ));
        }
        Ok(Self { b, h, v })
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    pub fn b(&self) -> &QMat {
        &self.b
    }

    pub fn h(&self) -> &QMat {
        &self.h
    }

    pub fn v(&self) -> &QMat {
        &self.v
    }

    /// Simple structures are those with invertible variation map.
    pub fn is_simple(&self) -> bool {
        !self.v.det().is_zero()
    }

    pub fn direct_sum(&self, other: &Hvs) -> Hvs {
        Hvs {
            b: QMat::block_diag(&[self.b.clone(), other.b.clone()]),
            h: QMat::block_diag(&[self.h.clone(), other.h.clone()]),
            v: QMat::block_diag(&[self.v.clone(), other.v.clone()]),
        }
    }

    /// Isomorphic image under the basis change with matrix `p`
    /// (`b ↦ PᵀbP`, `h ↦ P⁻¹hP`, `V ↦ P⁻¹V(P⁻¹)ᵀ`).
    pub fn change_basis(&self, p: &QMat) -> Result<Hvs> {
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::InvalidParameters("basis change must be invertible".into()))?;
        Hvs::new(
            self.b.congruence(p),
            pinv.mul(&self.h).mul(p),
            pinv.mul(&self.v).mul(&pinv.transpose()),
        )
    }
}

/// The variation structure of an invertible Seifert matrix:
/// `V = S⁻¹`, `h = S⁻¹Sᵀ`, `b = Sᵀ − S`.
pub fn hvs_from_seifert(s_in: &SeifertMatrix) -> Result<Hvs> {
    let s = s_in.matrix();
    let v = s.inverse().ok_or(Error::SingularMatrix)?;
    let h = v.mul(&s.transpose());
    let b = s.transpose().sub(s);
    Hvs::new(b, h, v)
}

/// Characteristic polynomial `det(tI − m)`.
pub fn char_poly(m: &QMat) -> QPoly {
    let n = m.rows();
    let a = crate::polymat::PolyMat::from_fn(n, n, |i, j| {
        let lead = if i == j { qi(1) } else { qi(0) };
        QPoly::new(vec![-m.get(i, j).clone(), lead])
    });
    crate::polymat::bareiss_det(&a)
}

fn matrix_poly_eval(p: &QPoly, m: &QMat) -> QMat {
    let n = m.rows();
    let mut acc = QMat::zeros(n, n);
    for i in (0..=p.deg()).rev() {
        acc = acc.mul(m);
        let c = p.coeff(i);
        if !c.is_zero() {
            for d in 0..n {
                let cur = acc.get(d, d).clone();
                acc.set(d, d, cur + c.clone());
            }
        }
        if p.is_zero() {
            break;
        }
    }
    acc
}

/// Multiplicities `m_k` of the summands `(Λ/P^k)` in the torsion module of
/// `h` at the irreducible `p`, from the kernel-dimension sequence of
/// `p(h)^j`: `m_k = (2c_k − c_{k−1} − c_{k+1}) / deg(p)`.
fn block_size_counts(h: &QMat, p: &QPoly) -> BTreeMap<usize, usize> {
    let n = h.rows();
    let ph = matrix_poly_eval(p, h);
    let deg = p.deg();
    let mut c: Vec<usize> = vec![0];
    let mut pw = QMat::identity(n);
    loop {
        pw = pw.mul(&ph);
        let ck = n - pw.rank();
        if ck == *c.last().unwrap() {
            break;
        }
        c.push(ck);
    }
    let at = |idx: usize| -> isize {
        if idx < c.len() {
            c[idx] as isize
        } else {
            *c.last().unwrap() as isize
        }
    };
    let mut out = BTreeMap::new();
    for k in 1..c.len() {
        let m = 2 * at(k) - at(k - 1) - at(k + 1);
        assert!(m >= 0 && (m as usize) % deg == 0, "kernel profile must be concave");
        let mk = m as usize / deg;
        if mk > 0 {
            out.insert(k, mk);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Hodge numbers
// ---------------------------------------------------------------------------

/// Counts of the two signed structures at a fixed eigenvalue pair and
/// block size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SignPair {
    pub plus: usize,
    pub minus: usize,
}

impl SignPair {
    pub fn total(&self) -> usize {
        self.plus + self.minus
    }

    /// Signed counts at the conjugate (lower-half-plane) eigenvalue: for a
    /// pair away from ±1 the signs swap exactly when the block size is odd.
    pub fn conjugate(&self, k: usize) -> SignPair {
        if k % 2 == 1 {
            SignPair {
                plus: self.minus,
                minus: self.plus,
            }
        } else {
            *self
        }
    }

    pub fn count(&self, sign: i8) -> usize {
        if sign > 0 {
            self.plus
        } else {
            self.minus
        }
    }
}

/// Multiset of indecomposable summands of a classified structure.
///
/// * `on_circle`: key `(factor, circle-root index, block size k)`; the
///   count pair refers to the upper-half-plane representative `μ` of the
///   root pair (the conjugate representative's counts follow by the
///   symmetry rule in [`SignPair::conjugate`]).
/// * `off_circle`: key `(factor, block size ℓ)` with the count applying to
///   each off-circle root orbit of the factor (one orbit per reciprocal
///   real pair, one per complex quadruple).
/// * `t_minus_one`: key `(±1, block size)` for torsion at `t ∓ 1`
///   (sign-free counts; present only for link-type input).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeNumbers {
    pub on_circle: BTreeMap<(SymmetricFactor, usize, usize), SignPair>,
    pub off_circle: BTreeMap<(SymmetricFactor, usize), usize>,
    pub t_minus_one: BTreeMap<(i8, usize), usize>,
}

impl HodgeNumbers {
    pub fn is_empty(&self) -> bool {
        self.on_circle.is_empty() && self.off_circle.is_empty() && self.t_minus_one.is_empty()
    }

    /// Real dimension of the underlying structure: each circle-root pair
    /// with block size `k` contributes `2k`, each off-circle orbit `2ℓ`
    /// (real pair) or `4ℓ` (complex quadruple), each `t∓1` block its size.
    pub fn total_dim(&self) -> usize {
        let mut dim = 0usize;
        for ((_f, _root, k), pair) in &self.on_circle {
            dim += 2 * k * pair.total();
        }
        for ((f, l), m) in &self.off_circle {
            dim += l * m * (2 * f.off_real_pairs() + 4 * f.off_complex_quads());
        }
        for ((_sign, k), m) in &self.t_minus_one {
            dim += k * m;
        }
        dim
    }

    /// Accumulate another structure's counts (classification of a direct
    /// sum is the sum of classifications).
    pub fn merge(&mut self, other: &HodgeNumbers) {
        for (key, pair) in &other.on_circle {
            let e = self.on_circle.entry(key.clone()).or_default();
            e.plus += pair.plus;
            e.minus += pair.minus;
        }
        for (key, m) in &other.off_circle {
            *self.off_circle.entry(key.clone()).or_default() += m;
        }
        for (key, m) in &other.t_minus_one {
            *self.t_minus_one.entry(*key).or_default() += m;
        }
    }

    /// Summand multiplicities `k ↦ m_k` per symmetric factor (excluding
    /// `t ∓ 1`), with per-root sign splits forgotten.
    pub fn factor_size_counts(&self) -> BTreeMap<SymmetricFactor, BTreeMap<usize, usize>> {
        let mut out: BTreeMap<SymmetricFactor, BTreeMap<usize, usize>> = BTreeMap::new();
        for ((f, root, k), pair) in &self.on_circle {
            if *root == 0 {
                out.entry(f.clone()).or_default().insert(*k, pair.total());
            }
        }
        for ((f, l), m) in &self.off_circle {
            if f.kind() != FactorKind::OnCircle {
                out.entry(f.clone()).or_default().insert(*l, *m);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Model structures
// ---------------------------------------------------------------------------

/// The indecomposable structure families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// Off-circle eigenvalue orbit, paired blocks of size ℓ (no sign).
    VNu2l,
    /// Circle eigenvalue pair, block size k, sign ε.
    VMuKSign,
    /// Unipotent monodromy with degenerate intersection form, odd size k,
    /// sign ε.
    Vtilde1KSign,
    /// One-dimensional structure with `h = 1`, `b = 0`, `V = (ε)`.
    V11Sign,
    /// The trivial one-dimensional structure `(b, h, V) = (0, I, 0)`.
    Ttrivial,
}

/// Parameters of a model structure to assemble.
#[derive(Clone, Debug)]
pub struct ModelStructure {
    pub kind: ModelKind,
    /// Eigenvalue factor for `VNu2l` / `VMuKSign`.
    pub factor: Option<SymmetricFactor>,
    /// Circle-root index whose sign is prescribed (for `VMuKSign` on
    /// factors with several circle roots; the remaining roots' signs are
    /// determined by the rational structure).
    pub root_index: usize,
    /// Block size `k` (or `ℓ`).
    pub size: usize,
    /// Sign ε ∈ {−1, +1} where applicable.
    pub sign: i8,
}

impl ModelStructure {
    pub fn trivial() -> Self {
        Self {
            kind: ModelKind::Ttrivial,
            factor: None,
            root_index: 0,
            size: 1,
            sign: 1,
        }
    }

    pub fn v_1_1(sign: i8) -> Self {
        Self {
            kind: ModelKind::V11Sign,
            factor: None,
            root_index: 0,
            size: 1,
            sign,
        }
    }

    pub fn vtilde_1_k(k: usize, sign: i8) -> Self {
        Self {
            kind: ModelKind::Vtilde1KSign,
            factor: None,
            root_index: 0,
            size: k,
            sign,
        }
    }

    pub fn v_nu_2l(factor: SymmetricFactor, ell: usize) -> Result<Self> {
        if factor.kind() == FactorKind::OnCircle || factor.kind() == FactorKind::TPlusMinusOne {
            return Err(Error::InvalidParameters(
                "off-circle model requires an off-circle factor".into(),
            ));
        }
        if ell == 0 {
            return Err(Error::InvalidParameters("block size must be positive".into()));
        }
        Ok(Self {
            kind: ModelKind::VNu2l,
            factor: Some(factor),
            root_index: 0,
            size: ell,
            sign: 1,
        })
    }

    pub fn v_mu_k_sign(
        factor: SymmetricFactor,
        root_index: usize,
        k: usize,
        sign: i8,
    ) -> Result<Self> {
        if factor.kind() != FactorKind::OnCircle {
            return Err(Error::InvalidParameters(
                "circle model requires an on-circle factor".into(),
            ));
        }
        if root_index >= factor.num_circle_roots() {
            return Err(Error::InvalidParameters("circle-root index out of range".into()));
        }
        if k == 0 || (sign != 1 && sign != -1) {
            return Err(Error::InvalidParameters("need k ≥ 1 and ε = ±1".into()));
        }
        Ok(Self {
            kind: ModelKind::VMuKSign,
            factor: Some(factor),
            root_index,
            size: k,
            sign,
        })
    }
}

/// Companion matrix of a monic polynomial (characteristic polynomial = `p`).
fn companion(p: &QPoly) -> QMat {
    let n = p.deg();
    assert!(n >= 1 && p.lc() == qi(1));
    QMat::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -p.coeff(i)
        } else if i == j + 1 {
            qi(1)
        } else {
            qi(0)
        }
    })
}

/// Basis of the space of skew-symmetric forms invariant under `h`
/// (`hᵀbh = b`).
fn invariant_skew_forms(h: &QMat) -> Vec<QMat> {
    let n = h.rows();
    let nn = n * n;
    let mut rows: Vec<Vec<Q>> = vec![];
    for i in 0..n {
        for j in i..n {
            let mut r = vec![qi(0); nn];
            r[i * n + j] = &r[i * n + j] + &qi(1);
            r[j * n + i] = &r[j * n + i] + &qi(1);
            rows.push(r);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![qi(0); nn];
            for p in 0..n {
                for q in 0..n {
                    r[p * n + q] = &r[p * n + q] + &(h.get(p, i) * h.get(q, j));
                }
            }
            r[i * n + j] = &r[i * n + j] - &qi(1);
            rows.push(r);
        }
    }
    QMat::from_rows(rows)
        .kernel()
        .into_iter()
        .map(|v| QMat::from_fn(n, n, |i, j| v[i * n + j].clone()))
        .collect()
}

/// Deterministic search for a combination `Σ cᵢ·basisᵢ` whose rank equals
/// `want_rank`; coefficients are tried along a moment curve first, then
/// exhaustively over small integers.
fn combination_with_rank(basis: &[QMat], want_rank: usize) -> Option<QMat> {
    if basis.is_empty() {
        return None;
    }
    let n = basis[0].rows();
    let m = basis.len();
    let eval = |coeffs: &[Q]| -> QMat {
        let mut acc = QMat::zeros(n, n);
        for (c, b) in coeffs.iter().zip(basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    };
    // moment curve: c_i = x^i
    for x in 1..=(n * m + 2) as i64 {
        let mut coeffs = Vec::with_capacity(m);
        let mut p = qi(1);
        for _ in 0..m {
            coeffs.push(p.clone());
            p *= qi(x);
        }
        let cand = eval(&coeffs);
        if cand.rank() == want_rank {
            return Some(cand);
        }
    }
    // exhaustive small-coefficient sweep
    let digits = [0i64, 1, -1, 2, -2];
    let total = 5usize.checked_pow(m as u32).unwrap_or(usize::MAX).min(200_000);
    for t in 1..total {
        let mut idx = t;
        let mut coeffs = Vec::with_capacity(m);
        for _ in 0..m {
            coeffs.push(qi(digits[idx % 5]));
            idx /= 5;
        }
        let cand = eval(&coeffs);
        if cand.rank() == want_rank {
            return Some(cand);
        }
    }
    None
}

/// Solve `V·b = h − I`, `Vᵀ = V·hᵀ` for `V`: returns a particular solution
/// and a basis of the homogeneous solution space.
fn solve_variation(h: &QMat, b: &QMat) -> Option<(QMat, Vec<QMat>)> {
    let n = h.rows();
    let nn = n * n;
    let mut rows: Vec<Vec<Q>> = vec![];
    let mut rhs: Vec<Q> = vec![];
    let target = h.sub(&QMat::identity(n));
    // (V·b)_{ij} = Σ_q v_{iq} b_{qj}
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![qi(0); nn];
            for q in 0..n {
                r[i * n + q] = b.get(q, j).clone();
            }
            rows.push(r);
            rhs.push(target.get(i, j).clone());
        }
    }
    // (Vᵀ − V·hᵀ)_{ij} = v_{ji} − Σ_q v_{iq} h_{jq}
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![qi(0); nn];
            r[j * n + i] = &r[j * n + i] + &qi(1);
            for q in 0..n {
                r[i * n + q] = &r[i * n + q] - h.get(j, q);
            }
            rows.push(r);
            rhs.push(qi(0));
        }
    }
    let sys = QMat::from_rows(rows);
    let part = sys.solve(&rhs)?;
    let hom = sys
        .kernel()
        .into_iter()
        .map(|v| QMat::from_fn(n, n, |i, j| v[i * n + j].clone()))
        .collect();
    Some((QMat::from_fn(n, n, |i, j| part[i * n + j].clone()), hom))
}

/// Variation structure of the model `(Λ/P^k, canonical pairing)`: monodromy
/// is the companion matrix of `P^k`, the intersection form an invertible
/// invariant skew form, and `V = (h − I)b⁻¹`.
fn assemble_cyclic(p: &QPoly, k: usize) -> Result<Hvs> {
    let pk = p.pow(k);
    let h = companion(&pk);
    let basis = invariant_skew_forms(&h);
    let b = combination_with_rank(&basis, h.rows()).ok_or_else(|| {
        Error::InvalidParameters("no invertible invariant intersection form exists".into())
    })?;
    let binv = b.inverse().expect("combination was chosen invertible");
    let v = h.sub(&QMat::identity(h.rows())).mul(&binv);
    Hvs::new(b, h, v)
}

/// Negating both `b` and `V` preserves the axioms and flips every
/// summand's sign.
fn flip_signs(v: &Hvs) -> Hvs {
    Hvs {
        b: v.b().neg(),
        h: v.h().clone(),
        v: v.v().neg(),
    }
}

/// Build the real variation structure realizing a model, with prescribed
/// classification.
pub fn assemble_model(m: &ModelStructure) -> Result<Hvs> {
    match m.kind {
        ModelKind::Ttrivial => Hvs::new(
            QMat::zeros(1, 1),
            QMat::identity(1),
            QMat::zeros(1, 1),
        ),
        ModelKind::V11Sign => {
            if m.sign != 1 && m.sign != -1 {
                return Err(Error::InvalidParameters("sign must be ±1".into()));
            }
            Hvs::new(
                QMat::zeros(1, 1),
                QMat::identity(1),
                QMat::from_int_rows(&[&[m.sign as i64]]),
            )
        }
        ModelKind::Vtilde1KSign => {
            let k = m.size;
            if m.sign != 1 && m.sign != -1 {
                return Err(Error::InvalidParameters("sign must be ±1".into()));
            }
            if k % 2 == 0 {
                return Err(Error::InvalidParameters(
                    "unipotent degenerate structures exist only in odd sizes over the reals"
                        .into(),
                ));
            }
            if k == 1 {
                return assemble_model(&ModelStructure::v_1_1(m.sign));
            }
            // h = unipotent Jordan block J_k
            let h = QMat::from_fn(k, k, |i, j| {
                if i == j || j == i + 1 {
                    qi(1)
                } else {
                    qi(0)
                }
            });
            let basis = invariant_skew_forms(&h);
            let b = combination_with_rank(&basis, k - 1).ok_or_else(|| {
                Error::InvalidParameters("no corank-one invariant form exists".into())
            })?;
            let (part, hom) = solve_variation(&h, &b).ok_or_else(|| {
                Error::InvalidParameters("variation equations are inconsistent".into())
            })?;
            // an invertible V = particular + combination of homogeneous parts
            let mut v_opt: Option<QMat> = None;
            let mlen = hom.len();
            for x in 0..=(k * (mlen + 1) + 2) as i64 {
                let mut cand = part.clone();
                let mut p = qi(x);
                for hmat in &hom {
                    cand = cand.add(&hmat.scale(&p));
                    p *= qi(x);
                }
                if !cand.det().is_zero() {
                    v_opt = Some(cand);
                    break;
                }
            }
            let v = v_opt.ok_or_else(|| {
                Error::InvalidParameters("no simple variation map exists for this model".into())
            })?;
            let hvs = Hvs::new(b, h, v)?;
            if hvs.b().kernel().len() != 1 {
                return Err(Error::InvalidParameters(
                    "degenerate form must have a one-dimensional kernel".into(),
                ));
            }
            // the two isomorphism classes in each odd size are told apart
            // by the determinant sign of the variation map (invariant
            // under basis change, flipped by negating b and V)
            let s = crate::qpoly::sign_q(&hvs.v().det());
            if s == m.sign {
                Ok(hvs)
            } else {
                Ok(flip_signs(&hvs))
            }
        }
        ModelKind::VNu2l => {
            let f = m
                .factor
                .as_ref()
                .ok_or_else(|| Error::InvalidParameters("missing factor".into()))?;
            assemble_cyclic(f.poly(), m.size)
        }
        ModelKind::VMuKSign => {
            let f = m
                .factor
                .as_ref()
                .ok_or_else(|| Error::InvalidParameters("missing factor".into()))?
                .clone();
            let hvs = assemble_cyclic(f.poly(), m.size)?;
            let hn = classify_hvs(&hvs)?;
            let pair = hn
                .on_circle
                .get(&(f.clone(), m.root_index, m.size))
                .copied()
                .ok_or_else(|| {
                    Error::Inconsistent("assembled model misses its own eigenvalue".into())
                })?;
            if pair.total() != 1 {
                return Err(Error::Inconsistent(
                    "assembled cyclic model is not a single summand".into(),
                ));
            }
            let actual = if pair.plus == 1 { 1 } else { -1 };
            if actual == m.sign {
                Ok(hvs)
            } else {
                Ok(flip_signs(&hvs))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Decompose a simple structure into indecomposables and count them.
///
/// Block sizes are computed from the kernel-dimension sequence of
/// `P(h)^j`; the signed counts for circle eigenvalues are obtained from
/// the linking-form decomposition of `S = V⁻¹` and cross-checked against
/// the sizes, so the two computations certify each other.
pub fn classify_hvs(v: &Hvs) -> Result<HodgeNumbers> {
    if !v.is_simple() {
        return Err(Error::NotSimple);
    }
    let s = v.v().inverse().expect("simple structure has invertible V");
    let sm = SeifertMatrix::synthetic(s.clone());
    let delta = alexander_direct(&sm);
    debug_assert!(!delta.is_zero());

    // independent size computation from the monodromy
    let mut own_sizes: BTreeMap<SymmetricFactor, BTreeMap<usize, usize>> = BTreeMap::new();
    if delta.span() > 0 {
        let factorization = factor_symmetric(&delta)?;
        for (factor, mult) in factorization.factors {
            // A factor of multiplicity 1 in the torsion order forces a
            // single size-1 block; the kernel-profile computation is
            // needed (and run) only for repeated factors.
            let counts = if mult == 1 {
                BTreeMap::from([(1usize, 1usize)])
            } else {
                block_size_counts(v.h(), factor.poly())
            };
            if counts.is_empty() {
                return Err(Error::Inconsistent(
                    "determinant factor missing from the monodromy torsion".into(),
                ));
            }
            own_sizes.insert(factor, counts);
        }
    }

    // signed counts from the linking form (unit-root factors size-only)
    let hn_b = crate::blanchfield::ef_numbers_skip_unit_root(&s)?;

    let mut result = HodgeNumbers::default();
    for (factor, counts) in &own_sizes {
        match factor.kind() {
            FactorKind::TPlusMinusOne => {
                let sign: i8 = if factor.poly().coeff(0) == qi(-1) { 1 } else { -1 };
                for (k, mk) in counts {
                    result.t_minus_one.insert((sign, *k), *mk);
                }
            }
            FactorKind::OnCircle => {
                for (k, mk) in counts {
                    for root in 0..factor.num_circle_roots() {
                        let pair = hn_b
                            .on_circle
                            .get(&(factor.clone(), root, *k))
                            .copied()
                            .ok_or_else(|| {
                                Error::Inconsistent(format!(
                                    "size {k} block at {} missing from the linking form",
                                    factor.laurent_rep()
                                ))
                            })?;
                        if pair.total() != *mk {
                            return Err(Error::Inconsistent(format!(
                                "multiplicity mismatch at {} size {k}: monodromy {mk}, linking form {}",
                                factor.laurent_rep(),
                                pair.total()
                            )));
                        }
                        result.on_circle.insert((factor.clone(), root, *k), pair);
                    }
                    if factor.num_off_orbits() > 0 {
                        let got = hn_b.off_circle.get(&(factor.clone(), *k)).copied();
                        if got != Some(*mk) {
                            return Err(Error::Inconsistent(
                                "off-circle orbit count of a mixed factor disagrees".into(),
                            ));
                        }
                        result.off_circle.insert((factor.clone(), *k), *mk);
                    }
                }
            }
            FactorKind::OffCircleReal | FactorKind::OffCircleComplexPair => {
                for (k, mk) in counts {
                    let got = hn_b.off_circle.get(&(factor.clone(), *k)).copied();
                    if got != Some(*mk) {
                        return Err(Error::Inconsistent(format!(
                            "multiplicity mismatch at off-circle factor {} size {k}",
                            factor.laurent_rep()
                        )));
                    }
                    result.off_circle.insert((factor.clone(), *k), *mk);
                }
            }
        }
    }
    // no summand may appear in the linking form beyond the monodromy sizes
    for (f, root, k) in hn_b.on_circle.keys() {
        if *root == 0 && own_sizes.get(f).and_then(|c| c.get(k)).is_none() {
            return Err(Error::Inconsistent(
                "linking form contains a circle summand unseen by the monodromy".into(),
            ));
        }
    }
    for (f, l) in hn_b.off_circle.keys() {
        if own_sizes.get(f).and_then(|c| c.get(l)).is_none() {
            return Err(Error::Inconsistent(
                "linking form contains an off-circle summand unseen by the monodromy".into(),
            ));
        }
    }
    if result.total_dim() != v.dim() {
        return Err(Error::Inconsistent(format!(
            "classified dimension {} does not match the structure dimension {}",
            result.total_dim(),
            v.dim()
        )));
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Mod-2 spectrum
// ---------------------------------------------------------------------------

/// Order of the root of unity whose minimal polynomial is `factor`, or an
/// error if the factor is not cyclotomic.
fn cyclotomic_order(factor: &SymmetricFactor) -> Result<u64> {
    let d = factor.deg_t() as u64;
    for m in 3..=(2 * d * d + 2) {
        if euler_phi(m) == d && *factor.poly() == cyclotomic(m) {
            return Ok(m);
        }
    }
    Err(Error::NotRootOfUnity(format!(
        "{} is not a cyclotomic polynomial",
        factor.laurent_rep()
    )))
}

/// Ascending turn numerators of the upper-half-circle roots of the m-th
/// cyclotomic polynomial, ordered to match the factor's circle-root
/// indexing (ascending in `u = 2cos(2πa/m)`, i.e. descending in `a`).
fn turn_numerators(m: u64) -> Vec<u64> {
    let mut residues: Vec<u64> = (1..m)
        .filter(|a| 2 * a < m && num_integer::gcd(*a, m) == 1)
        .collect();
    residues.sort_unstable();
    residues.reverse();
    residues
}

/// The mod-2 spectrum determined by circle-type Hodge numbers: a sorted
/// multiset of rationals in `(0,2) \ {1}`. Each circle pair at turn
/// fraction `a/m` owns the four slots `a/m`, `1−a/m`, `1+a/m`, `2−a/m`;
/// an even block of size `2k` adds `k` to all four, an odd block of size
/// `2k+1` with sign ε adds `k + (1−ε)/2` to the outer pair and
/// `k + (1+ε)/2` to the inner pair.
pub fn mod2_spectrum(hn: &HodgeNumbers) -> Result<Vec<Q>> {
    if !hn.off_circle.is_empty() {
        return Err(Error::OffCircleEigenvalues(
            "spectrum requires all eigenvalues on the unit circle".into(),
        ));
    }
    if !hn.t_minus_one.is_empty() {
        return Err(Error::OffCircleEigenvalues(
            "spectrum is undefined in the presence of torsion at t = ±1".into(),
        ));
    }
    let mut orders: BTreeMap<SymmetricFactor, (u64, Vec<u64>)> = BTreeMap::new();
    let mut mult: BTreeMap<Q, usize> = BTreeMap::new();
    for ((factor, root, k), pair) in &hn.on_circle {
        if pair.total() == 0 {
            continue;
        }
        if !orders.contains_key(factor) {
            let m = cyclotomic_order(factor)?;
            let nums = turn_numerators(m);
            debug_assert_eq!(nums.len(), factor.num_circle_roots());
            orders.insert(factor.clone(), (m, nums));
        }
        let (m, nums) = &orders[factor];
        let a = nums[*root] as i64;
        let mi = *m as i64;
        let slots = [
            qr(a, mi),
            qr(mi - a, mi),
            qr(mi + a, mi),
            qr(2 * mi - a, mi),
        ];
        if k % 2 == 0 {
            let half = k / 2;
            for s in &slots {
                *mult.entry(s.clone()).or_default() += half * pair.total();
            }
        } else {
            let half = (k - 1) / 2;
            let outer = half * pair.total() + pair.minus;
            let inner = half * pair.total() + pair.plus;
            for s in [&slots[0], &slots[3]] {
                *mult.entry(s.clone()).or_default() += outer;
            }
            for s in [&slots[1], &slots[2]] {
                *mult.entry(s.clone()).or_default() += inner;
            }
        }
    }
    let mut out = vec![];
    for (alpha, count) in mult {
        for _ in 0..count {
            out.push(alpha.clone());
        }
    }
    Ok(out)
}
