//! Seifert matrices and their S-equivalence calculus: reduction to a
//! `zero-block ⊕ invertible` form with a replayable move log, Smith
//! invariants of `tS − Sᵀ`, the Alexander polynomial, and exact
//! Tristram–Levine signatures at algebraic points of the unit circle.

use num_traits::{ToPrimitive, Zero};

use crate::algebraic::{CirclePoint, RealValue};
use crate::error::{Error, Result};
use crate::fieldctx::{rational_inertia, symmetric_inertia, FieldCtx, NfCtx, QCtx};
use crate::laurent::LaurentPoly;
use crate::polymat::{bareiss_det, poly_mat_to_frac, smith_form as laurent_smith_form, PolyMat};
use crate::qmat::QMat;
use crate::qpoly::{non_root_point, qi, qr, sturm_count, Q, QPoly};
use crate::symfactor::{factor_symmetric, FactorKind};

/// Provenance tag for a Seifert matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Entered from an integer knot/link table or user input.
    IntegerTable,
    /// Produced by an internal construction (reduction output, model
    /// realization, randomized test data, ...).
    Synthetic,
}

/// A square matrix of exact rationals regarded as a Seifert matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    mat: QMat,
    origin: Origin,
}

impl SeifertMatrix {
    pub fn new(mat: QMat, origin: Origin) -> Self {
        assert!(mat.is_square(), "Seifert matrix must be square");
        Self { mat, origin }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::new(QMat::from_int_rows(rows), Origin::IntegerTable)
    }

    pub fn synthetic(mat: QMat) -> Self {
        Self::new(mat, Origin::Synthetic)
    }

    pub fn matrix(&self) -> &QMat {
        &self.mat
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }
}

/// The presentation matrix `A(t) = tS − Sᵀ` with polynomial entries.
pub fn presentation_matrix(s: &QMat) -> PolyMat {
    PolyMat::from_fn(s.rows(), s.cols(), |i, j| {
        QPoly::new(vec![-s.get(j, i).clone(), s.get(i, j).clone()])
    })
}

/// `det(tS − Sᵀ)` as a Laurent polynomial in canonical unit form
/// (lowest exponent 0, integer content 1, positive leading coefficient);
/// the zero polynomial when the determinant vanishes identically.
pub fn alexander_direct(s: &SeifertMatrix) -> LaurentPoly {
    if s.size() == 0 {
        return LaurentPoly::one();
    }
    let det = bareiss_det(&presentation_matrix(s.matrix()));
    if det.is_zero() {
        return LaurentPoly::zero();
    }
    LaurentPoly::from_qpoly(&det).canonical_unit_rep()
}

/// Smith invariants of the module `Λⁿ / (tS − Sᵀ)Λⁿ` over `Λ = ℚ[t,t⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertSystem {
    /// Smith normal form diagonal of `tS − Sᵀ`, each nonzero entry in
    /// canonical unit form, nonzero entries first, each dividing the next.
    pub module_invariants: Vec<LaurentPoly>,
    /// Number of zero diagonal entries (rank of the free part).
    pub free_rank: usize,
}

pub fn smith_form(s: &SeifertMatrix) -> SeifertSystem {
    let a = presentation_matrix(s.matrix());
    let sf = laurent_smith_form(&a);
    let module_invariants: Vec<LaurentPoly> = sf
        .d
        .iter()
        .map(|p| {
            if p.is_zero() {
                LaurentPoly::zero()
            } else {
                LaurentPoly::from_qpoly(p).canonical_unit_rep()
            }
        })
        .collect();
    let free_rank = module_invariants.iter().filter(|p| p.is_zero()).count();
    SeifertSystem {
        module_invariants,
        free_rank,
    }
}

/// Rank of `tS − Sᵀ` over the fraction field `ℚ(t)`.
pub fn presentation_rank(s: &QMat) -> usize {
    poly_mat_to_frac(&presentation_matrix(s)).rank()
}

// ---------------------------------------------------------------------------
// S-equivalence moves
// ---------------------------------------------------------------------------

/// One step of the S-equivalence calculus over ℚ.
#[derive(Clone, Debug)]
pub enum KeefMove {
    /// Basis change `M ↦ PᵀMP` by an invertible rational matrix.
    Congruence(QMat),
    /// Remove the last two rows/columns of a matrix in column-enlargement
    /// shape `[[X, ξ, 0], [0, 0, 1], [0, 0, 0]]`.
    DestabCol,
    /// Remove the last two rows/columns of a matrix in row-enlargement
    /// shape `[[X, 0, 0], [ξᵀ, 0, 0], [0, 1, 0]]`.
    DestabRow,
}

fn is_col_pattern(m: &QMat) -> bool {
    let n = m.rows();
    if n < 2 {
        return false;
    }
    for j in 0..n - 2 {
        if !m.get(n - 2, j).is_zero() || !m.get(n - 1, j).is_zero() {
            return false;
        }
    }
    for i in 0..n - 2 {
        if !m.get(i, n - 1).is_zero() {
            return false;
        }
    }
    m.get(n - 2, n - 2).is_zero()
        && *m.get(n - 2, n - 1) == qi(1)
        && m.get(n - 1, n - 2).is_zero()
        && m.get(n - 1, n - 1).is_zero()
}

fn is_row_pattern(m: &QMat) -> bool {
    is_col_pattern(&m.transpose())
}

/// Apply a move log starting from `start`, validating every step exactly;
/// returns the final matrix.
pub fn replay_moves(start: &QMat, moves: &[KeefMove]) -> Result<QMat> {
    let mut m = start.clone();
    for mv in moves {
        match mv {
            KeefMove::Congruence(p) => {
                if p.rows() != m.rows() || !p.is_square() || p.det().is_zero() {
                    return Err(Error::ReductionFailed(
                        "congruence move with non-invertible or mis-sized matrix".into(),
                    ));
                }
                m = m.congruence(p);
            }
            KeefMove::DestabCol => {
                if !is_col_pattern(&m) {
                    return Err(Error::ReductionFailed(
                        "column destabilization applied to a matrix not in enlargement shape"
                            .into(),
                    ));
                }
                m = m.submatrix(0..m.rows() - 2, 0..m.cols() - 2);
            }
            KeefMove::DestabRow => {
                if !is_row_pattern(&m) {
                    return Err(Error::ReductionFailed(
                        "row destabilization applied to a matrix not in enlargement shape".into(),
                    ));
                }
                m = m.submatrix(0..m.rows() - 2, 0..m.cols() - 2);
            }
        }
    }
    Ok(m)
}

/// Column elementary enlargement `S ↦ [[S, ξ, 0], [0, 0, 1], [0, 0, 0]]`.
pub fn stabilize_col(s: &SeifertMatrix, xi: &[Q]) -> SeifertMatrix {
    let n = s.size();
    assert_eq!(xi.len(), n);
    let mut m = QMat::zeros(n + 2, n + 2);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, s.matrix().get(i, j).clone());
        }
        m.set(i, n, xi[i].clone());
    }
    m.set(n, n + 1, qi(1));
    SeifertMatrix::synthetic(m)
}

/// Row elementary enlargement `S ↦ [[S, 0, 0], [ξᵀ, 0, 0], [0, 1, 0]]`.
pub fn stabilize_row(s: &SeifertMatrix, xi: &[Q]) -> SeifertMatrix {
    let n = s.size();
    assert_eq!(xi.len(), n);
    let mut m = QMat::zeros(n + 2, n + 2);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, s.matrix().get(i, j).clone());
        }
        m.set(n, i, xi[i].clone());
    }
    m.set(n + 1, n, qi(1));
    SeifertMatrix::synthetic(m)
}

/// Congruent image `PᵀSP` for an invertible rational `P`.
pub fn congruent(s: &SeifertMatrix, p: &QMat) -> SeifertMatrix {
    assert!(p.is_square() && p.rows() == s.size());
    assert!(!p.det().is_zero(), "congruence requires an invertible matrix");
    SeifertMatrix::synthetic(s.matrix().congruence(p))
}

// ---------------------------------------------------------------------------
// Keef reduction
// ---------------------------------------------------------------------------

/// Result of reducing a Seifert matrix to `0_z ⊕ S_in` with `S_in`
/// invertible.
#[derive(Clone, Debug)]
pub struct KeefReduction {
    /// Size `z` of the zero block.
    pub zero_rank: usize,
    /// The invertible block `S_in` (possibly of size 0).
    pub invertible_part: SeifertMatrix,
    /// Move log certifying S-equivalence: replaying it from the input
    /// yields exactly `0_z ⊕ S_in`.
    pub moves: Vec<KeefMove>,
}

impl KeefReduction {
    /// The block matrix `0_z ⊕ S_in`.
    pub fn reduced_form(&self) -> QMat {
        QMat::block_diag(&[
            QMat::zeros(self.zero_rank, self.zero_rank),
            self.invertible_part.matrix().clone(),
        ])
    }
}

/// Extend a basis of ℚᵏ starting from the nonzero vector `h` (placed
/// first) by greedily adding standard basis vectors; returns the matrix
/// whose columns are the basis.
fn complete_basis_front(h: &[Q]) -> QMat {
    let k = h.len();
    let mut cols: Vec<Vec<Q>> = vec![h.to_vec()];
    for i in 0..k {
        if cols.len() == k {
            break;
        }
        let mut e = vec![qi(0); k];
        e[i] = qi(1);
        cols.push(e);
        let cand = QMat::from_fn(k, cols.len(), |r, c| cols[c][r].clone());
        if cand.rank() != cols.len() {
            cols.pop();
        }
    }
    assert_eq!(cols.len(), k);
    QMat::from_fn(k, k, |r, c| cols[c][r].clone())
}

/// For `c` with `cᵀh = 0` and `ch ≠ 0`, produce an invertible `P` with
/// `PᵀcP` in column-enlargement shape `[[X, ξ, 0], [0, 0, 1], [0, 0, 0]]`
/// (the functional `ψ(x) = xᵀch` becomes the last-but-one pairing and `h`
/// the final basis vector).
fn enlargement_basis(c: &QMat, h: &[Q]) -> Result<QMat> {
    let k = c.rows();
    let ch = c.mul_vec(h);
    debug_assert!(c.transpose().mul_vec(h).iter().all(|x| x.is_zero()));
    let y_idx = ch
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::ReductionFailed("destabilization pairing vanished".into()))?;
    // an isotropic g0 with psi(g0) != 0: either the pivot axis itself, or
    // h corrected along it
    let qy = c.get(y_idx, y_idx).clone();
    let g0: Vec<Q> = if qy.is_zero() {
        let mut e = vec![qi(0); k];
        e[y_idx] = qi(1);
        e
    } else {
        // h − (ψ(y)/Q(y))·y is isotropic with nonzero ψ-value
        let coef = &ch[y_idx] / &qy;
        let mut v = h.to_vec();
        v[y_idx] = &v[y_idx] - &coef;
        v
    };
    let psi_g0: Q = g0.iter().zip(&ch).map(|(a, b)| a * b).sum();
    if psi_g0.is_zero() {
        return Err(Error::ReductionFailed("isotropic pivot degenerated".into()));
    }
    let g: Vec<Q> = g0.iter().map(|x| x / &psi_g0).collect();
    let ctg = c.transpose().mul_vec(&g);
    // F = ker psi ∩ ker phi, phi(x) = gᵀcx
    let functional = QMat::from_rows(vec![ch.clone(), ctg]);
    let fbasis = functional.kernel();
    if fbasis.len() != k - 2 {
        return Err(Error::ReductionFailed(
            "isotropic complement has unexpected dimension".into(),
        ));
    }
    let mut cols = fbasis;
    cols.push(g);
    cols.push(h.to_vec());
    let p = QMat::from_fn(k, k, |r, c2| cols[c2][r].clone());
    if p.det().is_zero() {
        return Err(Error::ReductionFailed(
            "destabilization basis is singular".into(),
        ));
    }
    Ok(p)
}

/// Embed a basis change of the trailing `k` coordinates into the full size
/// `n` as `I_(n−k) ⊕ p`.
fn embed_trailing(p: &QMat, n: usize) -> QMat {
    let k = p.rows();
    let z = n - k;
    QMat::from_fn(n, n, |i, j| {
        if i < z || j < z {
            if i == j {
                qi(1)
            } else {
                qi(0)
            }
        } else {
            p.get(i - z, j - z).clone()
        }
    })
}

/// Reduce `S` to `0_z ⊕ S_in` with `S_in` invertible, by kernel-guided
/// congruences and row/column destabilizations. The zero block grows at
/// the front; every emitted move is validated by replaying the log.
pub fn keef_reduce(s: &SeifertMatrix) -> Result<KeefReduction> {
    let n = s.size();
    let mut m = s.matrix().clone();
    let mut moves: Vec<KeefMove> = vec![];
    let mut z = 0usize;
    loop {
        let total = m.rows();
        let k = total - z;
        if k == 0 {
            break;
        }
        let active = m.submatrix(z..total, z..total);
        if !active.det().is_zero() {
            break;
        }
        let ker = active.kernel();
        let h = ker
            .first()
            .cloned()
            .ok_or_else(|| Error::ReductionFailed("singular block with empty kernel".into()))?;
        let ath = active.transpose().mul_vec(&h);
        if ath.iter().all(|x| x.is_zero()) {
            // h is in both kernels: rotate it to the front of the active
            // block, creating one more zero row/column
            let pn = complete_basis_front(&h);
            let p = embed_trailing(&pn, total);
            m = m.congruence(&p);
            moves.push(KeefMove::Congruence(p));
            for j in 0..total {
                debug_assert!(m.get(z, j).is_zero() && m.get(j, z).is_zero());
            }
            z += 1;
        } else {
            // h ∈ ker(active), activeᵀh ≠ 0: bring activeᵀ to
            // column-enlargement shape, i.e. active itself to row shape
            let pn = enlargement_basis(&active.transpose(), &h)?;
            let p = embed_trailing(&pn, total);
            m = m.congruence(&p);
            moves.push(KeefMove::Congruence(p));
            if !is_row_pattern(&m) {
                return Err(Error::ReductionFailed(
                    "congruence did not produce an enlargement shape".into(),
                ));
            }
            moves.push(KeefMove::DestabRow);
            m = m.submatrix(0..total - 2, 0..total - 2);
        }
    }
    let s_in = m.submatrix(z..m.rows(), z..m.rows());
    let reduction = KeefReduction {
        zero_rank: z,
        invertible_part: SeifertMatrix::synthetic(s_in),
        moves,
    };
    // certify: the log replays from the input to exactly 0_z ⊕ S_in
    let replayed = replay_moves(s.matrix(), &reduction.moves)?;
    if replayed != reduction.reduced_form() {
        return Err(Error::ReductionFailed(
            "move log does not replay to the reduced form".into(),
        ));
    }
    // certify: zero block size equals the corank of tS − Sᵀ over ℚ(t)
    let free_rank = n - presentation_rank(s.matrix());
    if z != free_rank {
        return Err(Error::ReductionFailed(format!(
            "zero block has size {z} but the presentation corank is {free_rank}"
        )));
    }
    // certify: det(t·S_in − S_inᵀ) has full span (S_in and its symmetrized
    // top coefficient are invertible)
    let n_in = reduction.invertible_part.size();
    let delta_in = alexander_direct(&reduction.invertible_part);
    if n_in > 0 && (delta_in.is_zero() || delta_in.span() != n_in as i64) {
        return Err(Error::ReductionFailed(
            "invertible part fails the determinant degree check".into(),
        ));
    }
    Ok(reduction)
}

// ---------------------------------------------------------------------------
// Tristram–Levine signatures
// ---------------------------------------------------------------------------

/// The symmetric matrix over ℚ(u) congruent (after realification and
/// scaling) to the Hermitian form `H(z) = (1−z)S + (1−z̄)Sᵀ` at
/// `z = e^{ix}`, `u = 2cos(x) ∈ (−2,2)`:
///
/// ```text
/// R(u) = [[ (2−u)/2 · (S+Sᵀ),   S−Sᵀ            ],
///         [ −(S−Sᵀ),            2/(2+u) · (S+Sᵀ) ]]
/// ```
///
/// with `signature(H) = signature(R)/2`, `nullity(H) = nullity(R)/2`.
fn realified_entries<C: FieldCtx>(ctx: &C, s: &QMat, u: &C::El) -> Vec<Vec<C::El>> {
    let n = s.rows();
    let two = ctx.from_q(&qi(2));
    let c1 = ctx.mul(&ctx.sub(&two, u), &ctx.inv(&two));
    let c2 = ctx.mul(&two, &ctx.inv(&ctx.add(&two, u)));
    let zero = ctx.from_q(&qi(0));
    let mut m = vec![vec![zero; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let plus = ctx.from_q(&(s.get(i, j) + s.get(j, i)));
            let minus = ctx.from_q(&(s.get(i, j) - s.get(j, i)));
            m[i][j] = ctx.mul(&c1, &plus);
            m[n + i][n + j] = ctx.mul(&c2, &plus);
            m[i][n + j] = minus.clone();
            m[n + i][j] = ctx.neg(&minus);
        }
    }
    m
}

/// Exact signature and nullity of the Hermitian form
/// `H(z) = (1−z)S + (1−z̄)Sᵀ` at a point `z ≠ 1` of the unit circle.
pub fn tl_signature_direct(s: &SeifertMatrix, z: &CirclePoint) -> (i64, usize) {
    let n = s.size();
    if n == 0 {
        return (0, 0);
    }
    match z {
        CirclePoint::MinusOne => {
            // H(−1) = 2(S + Sᵀ) is already real symmetric
            let h = s.matrix().add(&s.matrix().transpose()).scale(&qi(2));
            let inertia = rational_inertia(&h);
            (inertia.signature(), inertia.nullity())
        }
        CirclePoint::U(rv) => {
            let inertia = match rv {
                RealValue::Rat(u0) => {
                    assert!(*u0 > qi(-2) && *u0 < qi(2), "u must lie in (-2, 2)");
                    let ctx = QCtx;
                    let m = realified_entries(&ctx, s.matrix(), u0);
                    symmetric_inertia(&ctx, &m)
                }
                RealValue::Alg(a) => {
                    let ctx = NfCtx::from_root(a.clone());
                    let u = ctx.generator();
                    let m = realified_entries(&ctx, s.matrix(), &u);
                    symmetric_inertia(&ctx, &m)
                }
            };
            let sig = inertia.signature();
            let nul = inertia.nullity();
            assert!(sig % 2 == 0 && nul % 2 == 0, "realified inertia must be even");
            (sig / 2, nul / 2)
        }
    }
}

fn refine_isolating(up: &QPoly, lo: &mut Q, hi: &mut Q) {
    let mid = non_root_point(up, lo, hi);
    if sturm_count(up, lo, &mid) == 1 {
        *hi = mid;
    } else {
        *lo = mid;
    }
}

/// Signature jump `j(z₀) = ½(σ(e^{i(x+ε)}) − σ(e^{i(x−ε)}))` at
/// `z₀ = e^{ix}`, evaluated at exact rational `u`-samples isolated from
/// every root of the Alexander polynomial. Zero off the roots and at
/// `z₀ = −1` (where the signature function is symmetric).
pub fn signature_jump(s: &SeifertMatrix, z0: &CirclePoint) -> Q {
    if matches!(z0, CirclePoint::MinusOne) {
        return qi(0);
    }
    let delta = alexander_direct(s);
    if delta.is_zero() {
        // jumps live on the invertible part
        let red = keef_reduce(s).expect("reduction to an invertible part must succeed");
        if red.invertible_part.size() == 0 {
            return qi(0);
        }
        return signature_jump(&red.invertible_part, z0);
    }
    if delta.span() == 0 {
        return qi(0); // constant determinant: no roots at all
    }
    let factorization =
        factor_symmetric(&delta).expect("det(tS − Sᵀ) is symmetric up to a unit");
    let u0 = z0.u_value();
    // collect the isolating intervals of all on-circle roots, remembering
    // which factor owns each
    let mut items: Vec<(QPoly, Q, Q)> = vec![];
    let mut owner: Option<usize> = None;
    for (factor, _) in factorization.factors.iter() {
        if factor.kind() != FactorKind::OnCircle {
            continue;
        }
        let up = factor.u_poly().expect("on-circle factor has a Chebyshev form");
        let is_root_here = u0.sign_of_poly(up) == 0;
        for (lo, hi) in factor.circle_root_intervals() {
            let idx = items.len();
            items.push((up.clone(), lo.clone(), hi.clone()));
            if is_root_here && owner.is_none() {
                let inside = u0.cmp_real(&RealValue::Rat(lo.clone())).is_gt()
                    && u0.cmp_real(&RealValue::Rat(hi.clone())).is_lt();
                if inside {
                    owner = Some(idx);
                }
            }
        }
    }
    let Some(own_idx) = owner else {
        return qi(0); // z0 is not a root of the Alexander polynomial
    };
    // shrink the owning interval strictly inside (−2, 2)
    {
        let (up, lo, hi) = &mut items[own_idx];
        while !(*lo > qi(-2) && *hi < qi(2)) {
            refine_isolating(&up.clone(), lo, hi);
        }
    }
    // refine until all intervals are pairwise disjoint, so the owning
    // interval's endpoints are isolated from every other root
    loop {
        let mut overlapping: Option<(usize, usize)> = None;
        'outer: for i in 0..items.len() {
            for j in i + 1..items.len() {
                let (ref _pi, ref lo_i, ref hi_i) = items[i];
                let (ref _pj, ref lo_j, ref hi_j) = items[j];
                if lo_i < hi_j && lo_j < hi_i {
                    overlapping = Some((i, j));
                    break 'outer;
                }
            }
        }
        match overlapping {
            None => break,
            Some((i, j)) => {
                for idx in [i, j] {
                    let (up, lo, hi) = &mut items[idx];
                    refine_isolating(&up.clone(), lo, hi);
                }
            }
        }
    }
    // sample signatures at the endpoints: smaller u = larger angle
    let (_, a, b) = &items[own_idx];
    let (sig_above, nul_above) =
        tl_signature_direct(s, &CirclePoint::U(RealValue::Rat(a.clone())));
    let (sig_below, nul_below) =
        tl_signature_direct(s, &CirclePoint::U(RealValue::Rat(b.clone())));
    debug_assert_eq!(nul_above, 0);
    debug_assert_eq!(nul_below, 0);
    qr(sig_above - sig_below, 2)
}

// ---------------------------------------------------------------------------
// Floating-point fast path
// ---------------------------------------------------------------------------

/// Approximate signature and nullity of `H(e^{ix})` in double precision
/// (realified form, symmetric pivoting, relative zero threshold). Intended
/// only for quick scans; all reported invariants use the exact routines.
pub fn tl_signature_f64(s: &SeifertMatrix, angle: f64) -> (i64, usize) {
    let n = s.size();
    if n == 0 {
        return (0, 0);
    }
    let (c, sn) = (angle.cos(), angle.sin());
    let mut a = vec![vec![0.0f64; 2 * n]; 2 * n];
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let sij = s.matrix().get(i, j).to_f64().unwrap();
            let sji = s.matrix().get(j, i).to_f64().unwrap();
            let g = (1.0 - c) * (sij + sji);
            let k = -sn * (sij - sji);
            a[i][j] = g;
            a[n + i][n + j] = g;
            a[i][n + j] = -k;
            a[n + i][j] = k;
            scale = scale.max(g.abs()).max(k.abs());
        }
    }
    let eps = 1e-9 * scale.max(1.0);
    let dim = 2 * n;
    let mut live: Vec<usize> = (0..dim).collect();
    let (mut pos, mut neg) = (0i64, 0i64);
    while !live.is_empty() {
        // largest live diagonal entry
        let (best, bestval) = live
            .iter()
            .map(|&i| (i, a[i][i].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if bestval <= eps {
            // try polarizing the largest off-diagonal pair
            let mut top = (0usize, 0usize, 0.0f64);
            for (ii, &i) in live.iter().enumerate() {
                for &j in &live[ii + 1..] {
                    if a[i][j].abs() > top.2 {
                        top = (i, j, a[i][j].abs());
                    }
                }
            }
            if top.2 <= eps {
                break; // remaining block is numerically zero
            }
            let (i, j, _) = top;
            for r in 0..dim {
                a[r][i] += a[r][j];
            }
            for cidx in 0..dim {
                a[i][cidx] += a[j][cidx];
            }
            continue;
        }
        let p = best;
        let d = a[p][p];
        if d > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
        live.retain(|&x| x != p);
        for &i in &live {
            let f = a[i][p] / d;
            if f != 0.0 {
                for &j in &live {
                    a[i][j] -= f * a[p][j];
                }
            }
        }
        for &i in &live {
            a[i][p] = 0.0;
            a[p][i] = 0.0;
        }
    }
    let zero = dim as i64 - pos - neg;
    (((pos - neg) / 2), (zero / 2) as usize)
}
