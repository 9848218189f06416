//! The Blanchfield linking form over the real Laurent ring: construction
//! from a Seifert matrix or from an externally supplied Hermitian
//! presentation, decomposition into cyclic summands by localized
//! diagonalization, and the twisted signature function.
//!
//! For a torsion module `M = Λⁿ/AΛⁿ` (with `Λ = ℝ[t,t⁻¹]` and
//! `det A ≠ 0`) carrying a Hermitian pairing `λ: M × M → ℚ(t)/Λ`, the
//! classification produces summands of two kinds at each symmetric
//! irreducible factor: signed summands `(Λ/B_μᵏ, ε·x·ȳ/B_μᵏ)` for circle
//! eigenvalue pairs and sign-free summands `(Λ/B_νˡ, x·ȳ/B_νˡ)` for
//! off-circle eigenvalue orbits.

use std::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;

use crate::algebraic::CirclePoint;
use crate::error::{Error, Result};
use crate::hvs::HodgeNumbers;
use crate::laurent::LaurentPoly;
use crate::polymat::{
    bareiss_det, hermitian_adjoint, smith_form, FracMat, PolyMat, RatFrac,
};
use crate::qmat::QMat;
use crate::qpoly::{qr, Q, QPoly};
use crate::seifert::{presentation_matrix, SeifertMatrix};
use crate::symfactor::{factor_symmetric_poly, FactorKind, SymmetricFactor};

/// Where a linking form came from.
#[derive(Clone, Debug)]
pub enum FormSource {
    FromSeifert(QMat),
    External,
}

/// A Hermitian linking form on the torsion module presented by a square
/// matrix over the Laurent ring.
#[derive(Clone, Debug)]
pub struct LinkingForm {
    presentation: PolyMat,
    pairing: FracMat,
    source: FormSource,
}

impl LinkingForm {
    pub fn size(&self) -> usize {
        self.presentation.rows()
    }

    pub fn presentation(&self) -> &PolyMat {
        &self.presentation
    }

    pub fn pairing(&self) -> &FracMat {
        &self.pairing
    }

    pub fn source(&self) -> &FormSource {
        &self.source
    }

    /// Exact Hermitian symmetry of the pairing matrix.
    pub fn is_hermitian(&self) -> bool {
        self.pairing == hermitian_adjoint(&self.pairing)
    }

    /// The order of the torsion module: the presentation determinant.
    pub fn order(&self) -> LaurentPoly {
        if self.size() == 0 {
            return LaurentPoly::one();
        }
        LaurentPoly::from_qpoly(&bareiss_det(&self.presentation))
    }
}

/// Linking form of an invertible presentation `tS − Sᵀ` with pairing
/// `(t−1)(S − tSᵀ)⁻¹`.
pub fn blanchfield_from_seifert(s: &SeifertMatrix) -> Result<LinkingForm> {
    let form = linking_form_from_matrix(s.matrix())?;
    Ok(LinkingForm {
        source: FormSource::FromSeifert(s.matrix().clone()),
        ..form
    })
}

pub(crate) fn linking_form_from_matrix(m: &QMat) -> Result<LinkingForm> {
    let n = m.rows();
    if n == 0 {
        return Ok(LinkingForm {
            presentation: PolyMat::zeros(0, 0),
            pairing: FracMat::zeros(0, 0),
            source: FormSource::External,
        });
    }
    let presentation = presentation_matrix(m);
    if bareiss_det(&presentation).is_zero() {
        return Err(Error::DegeneratePresentation);
    }
    // S − tSᵀ (invertible over the fraction field whenever tS − Sᵀ is);
    // its inverse is assembled from cofactors so no fraction arithmetic
    // happens on intermediate values.
    let b = PolyMat::from_fn(n, n, |i, j| {
        QPoly::new(vec![m.get(i, j).clone(), -m.get(j, i)])
    });
    let det = bareiss_det(&b);
    if det.is_zero() {
        return Err(Error::DegeneratePresentation);
    }
    let t_minus_1 = QPoly::from_ints(&[-1, 1]);
    let pairing = FracMat::from_fn(n, n, |i, j| {
        let minor = PolyMat::from_fn(n - 1, n - 1, |r, c| {
            let rr = if r < j { r } else { r + 1 };
            let cc = if c < i { c } else { c + 1 };
            b.get(rr, cc).clone()
        });
        let mut numer = bareiss_det(&minor).mul(&t_minus_1);
        if (i + j) % 2 == 1 {
            numer = numer.neg();
        }
        RatFrac::normalized(0, numer, det.clone())
    });
    Ok(LinkingForm {
        presentation,
        pairing,
        source: FormSource::External,
    })
}

#[derive(Deserialize)]
struct PresentationFile {
    size: usize,
    entries: Vec<[String; 2]>,
}

/// Parse an externally supplied Hermitian presentation: JSON
/// `{size, entries}` where `entries` lists the `size²` matrix entries in
/// row-major order as `[numerator, denominator]` Laurent-polynomial
/// strings (e.g. `"3t^-2 - 1 + t^4"`). Every entry must reduce to a
/// Laurent polynomial; the pairing is the inverse matrix.
pub fn linking_form_from_json(text: &str) -> Result<LinkingForm> {
    let entry_err = |pos: usize, msg: String| Error::Parse {
        line: pos + 1,
        msg,
    };
    let file: PresentationFile = serde_json::from_str(text)?;
    let n = file.size;
    if file.entries.len() != n * n {
        return Err(Error::Parse {
            line: 0,
            msg: format!(
                "expected {} entries for a {n}x{n} presentation, found {}",
                n * n,
                file.entries.len()
            ),
        });
    }
    let mut entries = Vec::with_capacity(n * n);
    for (pos, [num_s, den_s]) in file.entries.iter().enumerate() {
        let num = LaurentPoly::parse(num_s)
            .map_err(|e| entry_err(pos, format!("entry numerator: {e}")))?;
        let den = LaurentPoly::parse(den_s)
            .map_err(|e| entry_err(pos, format!("entry denominator: {e}")))?;
        if den.is_zero() {
            return Err(entry_err(pos, "entry has zero denominator".into()));
        }
        let frac = RatFrac::from_laurent(&num).mul_frac(&RatFrac::from_laurent(&den).inv_frac());
        if !frac.is_laurent() {
            return Err(entry_err(
                pos,
                "entry does not reduce to a Laurent polynomial".into(),
            ));
        }
        entries.push(frac);
    }
    let a = FracMat::from_fn(n, n, |i, j| entries[i * n + j].clone());
    if a != hermitian_adjoint(&a) {
        return Err(Error::NotSymmetric(
            "external presentation matrix must be Hermitian".into(),
        ));
    }
    if n == 0 {
        return Ok(LinkingForm {
            presentation: PolyMat::zeros(0, 0),
            pairing: FracMat::zeros(0, 0),
            source: FormSource::External,
        });
    }
    // clear the global power of t to obtain an honest polynomial matrix
    let mut min_exp: i64 = 0;
    let laurents: Vec<LaurentPoly> = entries
        .iter()
        .map(|f| f.to_laurent().expect("checked Laurent"))
        .collect();
    for l in &laurents {
        if let Some(e) = l.min_exp() {
            min_exp = min_exp.min(e);
        }
    }
    let presentation = PolyMat::from_fn(n, n, |i, j| {
        let shifted = laurents[i * n + j].mul(&LaurentPoly::t_pow(-min_exp));
        let (poly, sh) = shifted.to_poly_and_shift();
        debug_assert!(sh >= 0 || poly.is_zero());
        poly.shift_up(sh.max(0) as usize)
    });
    if bareiss_det(&presentation).is_zero() {
        return Err(Error::DegeneratePresentation);
    }
    let pairing = a.inverse().ok_or(Error::DegeneratePresentation)?;
    Ok(LinkingForm {
        presentation,
        pairing,
        source: FormSource::External,
    })
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

/// One cyclic summand of a decomposed linking form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FormSummand {
    /// Signed summand at the `root`-th circle root pair of an on-circle
    /// factor: module `Λ/B_μᵏ` with pairing `ε·x·ȳ/B_μᵏ`.
    E {
        factor: SymmetricFactor,
        root: usize,
        k: usize,
        sign: i8,
    },
    /// Sign-free summand at each off-circle root orbit of a factor:
    /// module `Λ/B_νˡ` with pairing `x·ȳ/B_νˡ`.
    F { factor: SymmetricFactor, ell: usize },
}

/// Decompose a linking form into its cyclic summands.
///
/// Requires multiplication by `t ∓ 1` to act invertibly on the module;
/// forms with torsion at `±1` are rejected.
pub fn decompose(form: &LinkingForm) -> Result<Vec<FormSummand>> {
    let mut out = decompose_core(&form.presentation, &form.pairing, false)?;
    out.sort();
    Ok(out)
}

/// Repackage a summand multiset into Hodge-number counts.
pub fn ef_numbers(summands: &[FormSummand]) -> HodgeNumbers {
    let mut hn = HodgeNumbers::default();
    for s in summands {
        match s {
            FormSummand::E {
                factor,
                root,
                k,
                sign,
            } => {
                let entry = hn
                    .on_circle
                    .entry((factor.clone(), *root, *k))
                    .or_default();
                if *sign > 0 {
                    entry.plus += 1;
                } else {
                    entry.minus += 1;
                }
            }
            FormSummand::F { factor, ell } => {
                *hn.off_circle.entry((factor.clone(), *ell)).or_default() += 1;
            }
        }
    }
    hn
}

/// Hodge numbers of the linking form of `s` with any torsion at `t ∓ 1`
/// silently ignored (the returned counts cover circle and off-circle
/// eigenvalues only). Used by the monodromy classification, which
/// accounts for unit-root torsion separately.
pub(crate) fn ef_numbers_skip_unit_root(s: &QMat) -> Result<HodgeNumbers> {
    let form = linking_form_from_matrix(s)?;
    let summands = decompose_core(&form.presentation, &form.pairing, true)?;
    Ok(ef_numbers(&summands))
}

fn decompose_core(
    presentation: &PolyMat,
    pairing: &FracMat,
    skip_unit_roots: bool,
) -> Result<Vec<FormSummand>> {
    let n = presentation.rows();
    if n == 0 {
        return Ok(vec![]);
    }
    let det = bareiss_det(presentation);
    if det.is_zero() {
        return Err(Error::DegeneratePresentation);
    }
    let factorization = factor_symmetric_poly(&det)?;
    if !skip_unit_roots {
        for sign in [1i8, -1] {
            if factorization.unit_root_multiplicity(sign) > 0 {
                return Err(Error::TPlusMinusOneTorsion);
            }
        }
    }
    let sf = smith_form(presentation);
    debug_assert!(sf.verify(presentation));
    // Pairing in the coordinates that diagonalize the presentation:
    // generators gᵢ = U⁻¹eᵢ, Gram matrix (U⁻¹)ᵀ · Π · involute(U⁻¹).
    // To avoid fraction arithmetic (gcd normalization dominates on big
    // inputs), the pairing is split into Laurent numerators over one
    // common denominator and the triple product stays polynomial; each
    // localization reduces the numerators modulo a power of its factor
    // before any modular inversion happens.
    let mut den = QPoly::one();
    for i in 0..n {
        for j in 0..n {
            let e = pairing.get(i, j);
            if !e.is_zero_frac() {
                let g = den.gcd(e.den());
                den = den.mul(&e.den().exact_div(&g));
            }
        }
    }
    let num_mat: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = pairing.get(i, j);
                    if e.is_zero_frac() {
                        LaurentPoly::zero()
                    } else {
                        LaurentPoly::from_qpoly(&e.num().mul(&den.exact_div(e.den())))
                            .mul(&LaurentPoly::t_pow(e.shift()))
                    }
                })
                .collect()
        })
        .collect();
    let ui: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| LaurentPoly::from_qpoly(sf.uinv.get(i, j)))
                .collect()
        })
        .collect();
    // tmp = (U⁻¹)ᵀ · num_mat, gram_num = tmp · involute(U⁻¹)
    let mut tmp = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = LaurentPoly::zero();
            for (k, ui_k) in ui.iter().enumerate() {
                acc = acc.add(&ui_k[i].mul(&num_mat[k][j]));
            }
            tmp[i][j] = acc;
        }
    }
    let mut gram_num = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = LaurentPoly::zero();
            for (k, ui_k) in ui.iter().enumerate() {
                acc = acc.add(&tmp[i][k].mul(&ui_k[j].involute()));
            }
            gram_num[i][j] = acc;
        }
    }
    let mut out = vec![];
    for (factor, mult) in &factorization.factors {
        if factor.kind() == FactorKind::TPlusMinusOne {
            continue;
        }
        out.extend(factor_summands(factor, *mult, &sf.d, &gram_num, &den)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Localization at one symmetric factor
// ---------------------------------------------------------------------------

/// Arithmetic in the quotient `ℚ[t]/(p^K)` with `t` invertible, carrying
/// the involution induced by `t ↦ t⁻¹`.
struct LocalRing {
    p: QPoly,
    total: usize,
    modulus: QPoly,
    t_inv: QPoly,
}

impl LocalRing {
    fn new(p: &QPoly, total: usize) -> Result<Self> {
        let modulus = p.pow(total);
        let t_inv = invert_mod(&QPoly::x(), &modulus).ok_or_else(|| {
            Error::Inconsistent("t is not invertible modulo the local factor".into())
        })?;
        Ok(LocalRing {
            p: p.clone(),
            total,
            modulus,
            t_inv,
        })
    }

    fn reduce(&self, x: &QPoly) -> QPoly {
        x.divrem(&self.modulus).1
    }

    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&a.mul(b))
    }

    fn valuation(&self, x: &QPoly) -> usize {
        if x.is_zero() {
            self.total
        } else {
            x.valuation(&self.p).min(self.total)
        }
    }

    /// Substitute `t ↦ t⁻¹`: the induced involution.
    fn tau(&self, x: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in x.coeffs().iter().rev() {
            acc = self.mul(&acc, &self.t_inv).add(&QPoly::constant(c.clone()));
        }
        self.reduce(&acc)
    }

    fn t_pow(&self, e: i64) -> QPoly {
        let base = if e >= 0 {
            QPoly::x()
        } else {
            self.t_inv.clone()
        };
        let mut acc = QPoly::one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

}

fn invert_mod(a: &QPoly, modulus: &QPoly) -> Option<QPoly> {
    let (g, u, _) = a.extended_gcd(modulus);
    if g.degree() == Some(0) {
        Some(u.divrem(modulus).1)
    } else {
        None
    }
}

/// Basis change `c_target += f · c_source` applied to a Gram matrix
/// (row update with `f`, column update with `τ(f)`).
fn update_basis(ring: &LocalRing, g: &mut [Vec<QPoly>], target: usize, source: usize, f: &QPoly) {
    let m = g.len();
    let tf = ring.tau(f);
    for c in 0..m {
        g[target][c] = g[target][c].add(&ring.mul(f, &g[source][c]));
    }
    for r in 0..m {
        let add = ring.mul(&tf, &g[r][source].clone());
        g[r][target] = g[r][target].add(&add);
    }
    for row in g.iter_mut() {
        for x in row.iter_mut() {
            *x = ring.reduce(x);
        }
    }
}

/// Decompose the `factor`-primary part of the pairing: localized
/// diagonalization producing block sizes and, for circle factors,
/// per-root signs.
fn factor_summands(
    factor: &SymmetricFactor,
    total: usize,
    smith_diag: &[QPoly],
    gram_num: &[Vec<LaurentPoly>],
    den: &QPoly,
) -> Result<Vec<FormSummand>> {
    let p = factor.poly();
    let deg = p.deg();
    let ring = LocalRing::new(p, total)?;
    // valuations of the Smith invariants and the indices with torsion here
    let lvals: Vec<usize> = smith_diag.iter().map(|d| d.valuation(p)).collect();
    let support: Vec<usize> = (0..lvals.len()).filter(|&i| lvals[i] > 0).collect();
    let lsum: usize = lvals.iter().sum();
    if lsum != total || support.is_empty() {
        return Err(Error::Inconsistent(
            "presentation invariants disagree with the determinant factorization".into(),
        ));
    }
    // Gram matrix of the primary part, scaled by the balanced factor
    // power so entries are honest local-ring elements and the matrix is
    // Hermitian for the induced involution: entries are images of
    //   (t^{-deg/2}·p)^K · (dᵢ/p^{ℓᵢ}) · involute(dⱼ/p^{ℓⱼ}) · λ(gᵢ,gⱼ)
    // with λ(gᵢ,gⱼ) = gram_num[i][j] / den.  Numerators are reduced
    // modulo p^{K+v} before the denominator's unit part is inverted, so
    // every modular operation stays at bounded degree.
    let v_den = den.valuation(p);
    let den_unit = ring.reduce(&den.exact_div(&p.pow(v_den)));
    let den_unit_inv = invert_mod(&den_unit, &ring.modulus).ok_or_else(|| {
        Error::Inconsistent("denominator unit part is not invertible locally".into())
    })?;
    let cap = p.pow(total + v_den);
    let scale_poly = LaurentPoly::from_qpoly(&p.pow(total));
    let m = support.len();
    let mut g: Vec<Vec<QPoly>> = vec![vec![QPoly::zero(); m]; m];
    for (a, &i) in support.iter().enumerate() {
        let cof_i = LaurentPoly::from_qpoly(&smith_diag[i].exact_div(&p.pow(lvals[i])));
        for (b, &j) in support.iter().enumerate() {
            let cof_j = LaurentPoly::from_qpoly(&smith_diag[j].exact_div(&p.pow(lvals[j])))
                .involute();
            let x = gram_num[i][j].mul(&cof_i).mul(&cof_j).mul(&scale_poly);
            if x.is_zero() {
                continue;
            }
            let (xp, xs) = x.to_poly_and_shift();
            let xr = xp.divrem(&cap).1;
            if xr.is_zero() {
                continue;
            }
            if xr.valuation(&p) < v_den {
                return Err(Error::Inconsistent(
                    "pairing denominator exceeds the expected local valuation".into(),
                ));
            }
            let y = ring.reduce(&xr.exact_div(&p.pow(v_den)));
            let y = ring.mul(&y, &den_unit_inv);
            let shift = xs - ((deg * total) as i64) / 2;
            g[a][b] = ring.mul(&y, &ring.t_pow(shift));
        }
    }
    for a in 0..m {
        for b in 0..m {
            if g[b][a] != ring.tau(&g[a][b]) {
                return Err(Error::Inconsistent(
                    "localized Gram matrix is not Hermitian".into(),
                ));
            }
        }
    }
    // diagonalize by minimal-valuation pivoting
    let mut active: Vec<usize> = (0..m).collect();
    let mut pivots: Vec<(usize, QPoly)> = vec![];
    while !active.is_empty() {
        let mut vmin = ring.total + 1;
        for &a in &active {
            for &b in &active {
                vmin = vmin.min(ring.valuation(&g[a][b]));
            }
        }
        if vmin >= ring.total {
            return Err(Error::Inconsistent(
                "pairing degenerates on a nontrivial primary part".into(),
            ));
        }
        let pivot = match active
            .iter()
            .copied()
            .find(|&a| ring.valuation(&g[a][a]) == vmin)
        {
            Some(a) => a,
            None => {
                // polarization: a minimal off-diagonal entry can be moved
                // to the diagonal by c_a += f·c_b with f = 1 or f = t
                let (a, b) = active
                    .iter()
                    .flat_map(|&a| active.iter().map(move |&b| (a, b)))
                    .find(|&(a, b)| a != b && ring.valuation(&g[a][b]) == vmin)
                    .expect("minimal entry exists");
                let mut done = false;
                for f in [QPoly::one(), QPoly::x()] {
                    let tf = ring.tau(&f);
                    let cand = g[a][a]
                        .add(&ring.mul(&tf, &g[a][b]))
                        .add(&ring.mul(&f, &g[b][a]))
                        .add(&ring.mul(&ring.mul(&f, &tf), &g[b][b]));
                    if ring.valuation(&ring.reduce(&cand)) == vmin {
                        update_basis(&ring, &mut g, a, b, &f);
                        done = true;
                        break;
                    }
                }
                if !done {
                    return Err(Error::Inconsistent(
                        "polarization failed to expose a minimal diagonal entry".into(),
                    ));
                }
                a
            }
        };
        let s = g[pivot][pivot].clone();
        debug_assert_eq!(ring.valuation(&s), vmin);
        let s0 = s.exact_div(&p.pow(vmin));
        let s0_inv = invert_mod(&s0, &ring.modulus)
            .ok_or_else(|| Error::Inconsistent("pivot unit part is not invertible".into()))?;
        for &b in active.clone().iter() {
            if b == pivot || g[b][pivot].is_zero() {
                continue;
            }
            let y = g[b][pivot].exact_div(&p.pow(vmin));
            let f = ring.mul(&y, &s0_inv).neg();
            update_basis(&ring, &mut g, b, pivot, &f);
            debug_assert!(g[b][pivot].is_zero() && g[pivot][b].is_zero());
        }
        // the summand split off here: block size K − vmin, with the
        // involution-invariant numerator t^{deg·vmin/2}·(s/p^vmin)
        let k = total - vmin;
        let numerator = ring.mul(&ring.t_pow((deg * vmin) as i64 / 2), &s0);
        pivots.push((k, numerator));
        active.retain(|&x| x != pivot);
    }
    // the split-off block sizes must reproduce the module structure
    let mut got: Vec<usize> = pivots.iter().map(|(k, _)| *k).collect();
    got.sort_unstable();
    let mut want: Vec<usize> = support.iter().map(|&i| lvals[i]).collect();
    want.sort_unstable();
    if got != want {
        return Err(Error::Inconsistent(format!(
            "diagonalization block sizes {got:?} disagree with module invariants {want:?}"
        )));
    }
    // package summands
    let mut out = vec![];
    match factor.kind() {
        FactorKind::OnCircle => {
            let u_poly = factor
                .u_poly()
                .cloned()
                .ok_or_else(|| Error::Inconsistent("circle factor lacks a trace form".into()))?;
            let u_der = u_poly.derivative();
            for (k, numerator) in &pivots {
                let nl = LaurentPoly::from_qpoly(numerator);
                let symmetrized = nl.add(&nl.involute()).scale(&qr(1, 2));
                for root in 0..factor.num_circle_roots() {
                    let raw = factor.eval_sign_at_circle_root(&symmetrized, root)?;
                    if raw == 0 {
                        return Err(Error::Inconsistent(
                            "summand numerator vanishes at a circle root".into(),
                        ));
                    }
                    // the numerator is written over the full factor; the
                    // per-root sign divides out the other roots' local
                    // contribution, the derivative of the trace form
                    let der_sign = factor.circle_root_value(root).sign_of_poly(&u_der);
                    if der_sign == 0 {
                        return Err(Error::Inconsistent(
                            "trace form has a critical circle root".into(),
                        ));
                    }
                    let correction = if k % 2 == 1 { der_sign } else { 1 };
                    out.push(FormSummand::E {
                        factor: factor.clone(),
                        root,
                        k: *k,
                        sign: -raw * correction,
                    });
                }
                if factor.num_off_orbits() > 0 {
                    out.push(FormSummand::F {
                        factor: factor.clone(),
                        ell: *k,
                    });
                }
            }
        }
        FactorKind::OffCircleReal | FactorKind::OffCircleComplexPair => {
            for (k, _) in &pivots {
                out.push(FormSummand::F {
                    factor: factor.clone(),
                    ell: *k,
                });
            }
        }
        FactorKind::TPlusMinusOne => unreachable!("unit-root factors are filtered earlier"),
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Twisted signature
// ---------------------------------------------------------------------------

/// The twisted signature at `e^{2πix}` for rational `x ∈ (0, 1/2)`: each
/// odd-size block at a circle root with angle strictly inside `(0, 2πx)`
/// contributes `−2ε`, and blocks exactly at the evaluation angle
/// contribute `−ε`.
pub fn twisted_signature(hn: &HodgeNumbers, x: &Q) -> Result<i64> {
    if *x <= Q::zero() || *x >= qr(1, 2) {
        return Err(Error::InvalidParameters(
            "twisted signature is evaluated at rational x with 0 < x < 1/2".into(),
        ));
    }
    let j = x
        .numer()
        .to_i64()
        .ok_or_else(|| Error::InvalidParameters("evaluation point is too large".into()))?;
    let m = x
        .denom()
        .to_i64()
        .ok_or_else(|| Error::InvalidParameters("evaluation point is too large".into()))?;
    let point = CirclePoint::from_turn_fraction(j, m)?;
    let ux = match point {
        CirclePoint::U(v) => v,
        CirclePoint::MinusOne => unreachable!("x < 1/2"),
    };
    let mut total = 0i64;
    for ((factor, root, k), pair) in &hn.on_circle {
        if k % 2 == 0 {
            continue;
        }
        let weight = pair.plus as i64 - pair.minus as i64;
        // larger u means smaller angle: the root angle precedes 2πx
        // exactly when its u-value exceeds the evaluation u-value
        match factor.circle_root_value(*root).cmp_real(&ux) {
            Ordering::Greater => total -= 2 * weight,
            Ordering::Equal => total -= weight,
            Ordering::Less => {}
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::qi;

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::from_int_rows(&[&[-1, 1], &[0, -1]])
    }

    fn t25() -> SeifertMatrix {
        SeifertMatrix::from_int_rows(&[
            &[-1, 1, 0, 0],
            &[0, -1, 1, 0],
            &[0, 0, -1, 1],
            &[0, 0, 0, -1],
        ])
    }

    fn k8_20() -> SeifertMatrix {
        SeifertMatrix::from_int_rows(&[
            &[-1, 1, 0, 0, 0, 0],
            &[0, -1, 1, 0, 0, 0],
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, -1, 1, 0, 0],
            &[0, 0, 0, -1, 1, 0],
            &[0, 0, 0, 0, 0, 1],
        ])
    }

    #[test]
    fn seifert_form_is_hermitian_with_symmetric_order() {
        let form = blanchfield_from_seifert(&trefoil()).unwrap();
        assert!(form.is_hermitian());
        let order = form.order().canonical_unit_rep();
        assert_eq!(
            order,
            LaurentPoly::parse("t^-1 - 1 + t").unwrap().canonical_unit_rep()
        );
        // size-0 input gives the trivial form
        let empty = blanchfield_from_seifert(&SeifertMatrix::synthetic(QMat::zeros(0, 0)));
        assert_eq!(decompose(&empty.unwrap()).unwrap(), vec![]);
    }

    #[test]
    fn trefoil_decomposition_is_one_signed_summand() {
        let form = blanchfield_from_seifert(&trefoil()).unwrap();
        let summands = decompose(&form).unwrap();
        assert_eq!(summands.len(), 1);
        match &summands[0] {
            FormSummand::E {
                factor,
                root,
                k,
                sign,
            } => {
                assert_eq!(factor.laurent_rep(), LaurentPoly::parse("t^-1 - 1 + t").unwrap());
                assert_eq!((*root, *k), (0, 1));
                assert_eq!(*sign, 1);
            }
            other => panic!("unexpected summand {other:?}"),
        }
        let hn = ef_numbers(&summands);
        assert_eq!(hn.total_dim(), 2);
    }

    #[test]
    fn torus_25_has_two_positive_summands() {
        let form = blanchfield_from_seifert(&t25()).unwrap();
        let summands = decompose(&form).unwrap();
        assert_eq!(summands.len(), 2);
        for (want_root, s) in summands.iter().enumerate() {
            match s {
                FormSummand::E { root, k, sign, .. } => {
                    assert_eq!(*root, want_root);
                    assert_eq!(*k, 1);
                    assert_eq!(*sign, 1);
                }
                other => panic!("unexpected summand {other:?}"),
            }
        }
    }

    #[test]
    fn knot_8_20_form_is_cyclic_with_one_double_block() {
        let form = blanchfield_from_seifert(&k8_20()).unwrap();
        let order = form.order().canonical_unit_rep();
        assert_eq!(
            order,
            LaurentPoly::parse("t^-1 - 1 + t")
                .unwrap()
                .pow(2)
                .canonical_unit_rep()
        );
        let summands = decompose(&form).unwrap();
        assert_eq!(summands.len(), 1);
        match &summands[0] {
            FormSummand::E { k, root, .. } => {
                assert_eq!((*k, *root), (2, 0));
            }
            other => panic!("unexpected summand {other:?}"),
        }
    }

    #[test]
    fn direct_sum_decomposes_into_the_union() {
        let s = QMat::block_diag(&[trefoil().matrix().clone(), t25().matrix().clone()]);
        let form = blanchfield_from_seifert(&SeifertMatrix::synthetic(s)).unwrap();
        let got = decompose(&form).unwrap();
        let mut want =
            decompose(&blanchfield_from_seifert(&trefoil()).unwrap()).unwrap();
        want.extend(decompose(&blanchfield_from_seifert(&t25()).unwrap()).unwrap());
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn unit_root_torsion_is_rejected_publicly_and_skipped_internally() {
        let annulus = SeifertMatrix::from_int_rows(&[&[1]]);
        let form = blanchfield_from_seifert(&annulus).unwrap();
        assert!(matches!(
            decompose(&form),
            Err(Error::TPlusMinusOneTorsion)
        ));
        let hn = ef_numbers_skip_unit_root(annulus.matrix()).unwrap();
        assert!(hn.is_empty());
    }

    #[test]
    fn external_off_circle_module_gives_one_f_summand() {
        let text = r#"{"size": 1, "entries": [["t^-1 - 3 + t", "1"]]}"#;
        let form = linking_form_from_json(text).unwrap();
        assert!(form.is_hermitian());
        let summands = decompose(&form).unwrap();
        assert_eq!(summands.len(), 1);
        match &summands[0] {
            FormSummand::F { factor, ell } => {
                assert_eq!(*ell, 1);
                assert_eq!(factor.kind(), FactorKind::OffCircleReal);
            }
            other => panic!("unexpected summand {other:?}"),
        }
    }

    #[test]
    fn external_signed_pair_round_trips() {
        // diag(B, −B) with B = t − 1 + t⁻¹: pairing diag(1/B, −1/B),
        // one summand of each sign
        let text = r#"{"size": 2, "entries": [
            ["t^-1 - 1 + t", "1"], ["0", "1"],
            ["0", "1"], ["1 - t - t^-1", "1"]
        ]}"#;
        let form = linking_form_from_json(text).unwrap();
        let summands = decompose(&form).unwrap();
        let signs: Vec<i8> = summands
            .iter()
            .map(|s| match s {
                FormSummand::E { k: 1, sign, .. } => *sign,
                other => panic!("unexpected summand {other:?}"),
            })
            .collect();
        assert_eq!(signs, vec![-1, 1]);
    }

    #[test]
    fn external_parse_rejects_bad_input() {
        assert!(matches!(
            linking_form_from_json("{"),
            Err(Error::Json(_))
        ));
        assert!(matches!(
            linking_form_from_json(r#"{"size": 2, "entries": [["1", "1"]]}"#),
            Err(Error::Parse { .. })
        ));
        // non-Hermitian
        let text = r#"{"size": 2, "entries": [
            ["t", "1"], ["1", "1"],
            ["0", "1"], ["t + t^-1", "1"]
        ]}"#;
        assert!(matches!(
            linking_form_from_json(text),
            Err(Error::NotSymmetric(_))
        ));
        // entry with a genuine denominator
        assert!(matches!(
            linking_form_from_json(r#"{"size": 1, "entries": [["1", "t - 2"]]}"#),
            Err(Error::Parse { .. })
        ));
        // degenerate presentation
        assert!(matches!(
            linking_form_from_json(r#"{"size": 1, "entries": [["0", "1"]]}"#),
            Err(Error::DegeneratePresentation)
        ));
    }

    #[test]
    fn twisted_signature_matches_direct_signature() {
        let form = blanchfield_from_seifert(&trefoil()).unwrap();
        let hn = ef_numbers(&decompose(&form).unwrap());
        assert_eq!(twisted_signature(&hn, &qr(1, 8)).unwrap(), 0);
        assert_eq!(twisted_signature(&hn, &qr(1, 4)).unwrap(), -2);
        assert_eq!(twisted_signature(&hn, &qr(1, 3)).unwrap(), -2);
        // exactly at the root angle: the half-jump value
        assert_eq!(twisted_signature(&hn, &qr(1, 6)).unwrap(), -1);
        // empty input
        assert_eq!(twisted_signature(&HodgeNumbers::default(), &qr(1, 4)).unwrap(), 0);
        // domain errors
        assert!(twisted_signature(&hn, &qr(1, 2)).is_err());
        assert!(twisted_signature(&hn, &qi(0)).is_err());
    }
}
