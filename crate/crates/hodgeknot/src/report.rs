//! End-to-end pipeline: from a Seifert matrix to a serialized invariant
//! report, with optional cross-validation of the two computation routes
//! and a content-addressed result cache.

use crate::algebraic::CirclePoint;
use crate::blanchfield;
use crate::error::{Error, Result};
use crate::fixtures::FixtureRecord;
use crate::hvs::{classify_hvs, hvs_from_seifert, mod2_spectrum, HodgeNumbers};
use crate::invariants::{alexander_from_hodge, nakanishi_index};
use crate::polymat::smith_form;
use crate::qpoly::{Q, QPoly};
use crate::seifert::{
    alexander_direct, keef_reduce, presentation_matrix, tl_signature_direct, tl_signature_f64,
    SeifertMatrix,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Mutex;

/// Current on-disk schema for [`InvariantReport`].
pub const SCHEMA_VERSION: u32 = 1;

/// Knobs for [`run_pipeline`].
#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    /// Run both computation routes and fail with
    /// [`Error::PipelineMismatch`] if they disagree.
    pub crosscheck: bool,
    /// Use floating-point fast paths for the signature samples.
    pub approximate: bool,
    /// Directory for the content-addressed result cache.
    pub cache_dir: Option<PathBuf>,
}

/// One signed block at a circle root in the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnCircleEntry {
    /// Symmetric irreducible factor, in balanced Laurent form.
    pub factor: String,
    /// Index of the circle root of the factor (ascending `t + 1/t` value).
    pub root: usize,
    /// Block size `k`.
    pub size: usize,
    /// Number of blocks with sign `+1`.
    pub plus: usize,
    /// Number of blocks with sign `-1`.
    pub minus: usize,
}

/// One off-circle orbit entry in the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffCircleEntry {
    pub factor: String,
    /// Block size of the orbit.
    pub size: usize,
    /// Number of orbits of this factor and size.
    pub count: usize,
}

/// One unipotent block (eigenvalue `1` or `-1`) in the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRootEntry {
    /// Eigenvalue, `1` or `-1`.
    pub eigenvalue: i8,
    pub size: usize,
    pub count: usize,
}

/// Serialized block data of the classified structure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeReport {
    pub on_circle: Vec<OnCircleEntry>,
    pub off_circle: Vec<OffCircleEntry>,
    pub unit_root: Vec<UnitRootEntry>,
    pub total_dimension: usize,
}

impl HodgeReport {
    pub fn from_hodge(hn: &HodgeNumbers) -> Self {
        let on_circle = hn
            .on_circle
            .iter()
            .map(|((f, root, k), sp)| OnCircleEntry {
                factor: f.laurent_rep().to_string(),
                root: *root,
                size: *k,
                plus: sp.plus,
                minus: sp.minus,
            })
            .collect();
        let off_circle = hn
            .off_circle
            .iter()
            .map(|((f, ell), count)| OffCircleEntry {
                factor: f.laurent_rep().to_string(),
                size: *ell,
                count: *count,
            })
            .collect();
        let unit_root = hn
            .t_minus_one
            .iter()
            .map(|((sign, k), count)| UnitRootEntry { eigenvalue: *sign, size: *k, count: *count })
            .collect();
        HodgeReport { on_circle, off_circle, unit_root, total_dimension: hn.total_dim() }
    }
}

/// Tristram–Levine signature sampled at one point of the unit circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureSample {
    /// Turn fraction `j/m` of the sample point `exp(2 pi i j/m)`.
    pub turn: String,
    pub signature: i64,
    pub nullity: usize,
}

/// Full invariant report for one input matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub schema_version: u32,
    pub name: String,
    /// Size of the input Seifert matrix.
    pub size: usize,
    /// Size of the zero block split off by the reduction; the free rank
    /// of the associated module.
    pub zero_rank: usize,
    /// Size of the invertible part after reduction.
    pub invertible_size: usize,
    /// Whether floating-point fast paths were used for samples.
    pub approximate: bool,
    /// Order of the torsion module of the invertible part, canonical
    /// unit representative.
    pub alexander: String,
    /// Minimal number of generators of the torsion module.
    pub nakanishi_index: usize,
    pub signature_samples: Vec<SignatureSample>,
    pub hodge: HodgeReport,
    /// Present when all eigenvalues are roots of unity of even order.
    pub spectrum_mod2: Option<Vec<String>>,
}

fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Deterministic serialized form of a report: pretty JSON plus a
/// trailing newline.  All map-like data is emitted as sorted arrays, so
/// equal reports serialize to identical bytes.
pub fn report_json_bytes(report: &InvariantReport) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization");
    s.push('\n');
    s.into_bytes()
}

/// Multiset of block sizes of `(t -+ 1)`-torsion read off a diagonal
/// presentation: the valuations of the Smith invariant factors at
/// `t - 1` (`sign = 1`) or `t + 1` (`sign = -1`).
fn unit_root_sizes_from_smith(diag: &[QPoly], sign: i8) -> BTreeMap<usize, usize> {
    let p = if sign > 0 { QPoly::from_ints(&[-1, 1]) } else { QPoly::from_ints(&[1, 1]) };
    let mut out = BTreeMap::new();
    for d in diag {
        if d.is_zero() {
            continue;
        }
        let v = d.valuation(&p);
        if v > 0 {
            *out.entry(v).or_insert(0) += 1;
        }
    }
    out
}

fn unit_root_sizes_from_hodge(hn: &HodgeNumbers, sign: i8) -> BTreeMap<usize, usize> {
    hn.t_minus_one
        .iter()
        .filter(|((s, _), _)| *s == sign)
        .map(|((_, k), m)| (*k, *m))
        .collect()
}

/// Compare the classification route against the linking-form route on
/// the invertible part; errors with both results on disagreement.
fn crosscheck_routes(name: &str, s_in: &SeifertMatrix, hn: &HodgeNumbers) -> Result<()> {
    let hn_b = blanchfield::ef_numbers_skip_unit_root(s_in.matrix())?;
    if hn.on_circle != hn_b.on_circle || hn.off_circle != hn_b.off_circle {
        return Err(Error::PipelineMismatch(format!(
            "{name}: circle/off-circle data disagree between routes;\n  classification: {:?} / {:?}\n  linking form:   {:?} / {:?}",
            hn.on_circle, hn.off_circle, hn_b.on_circle, hn_b.off_circle
        )));
    }
    // Unit-root torsion is outside the linking-form decomposition; its
    // block sizes are independently recomputed from the Smith normal
    // form of the presentation matrix.
    let a = presentation_matrix(s_in.matrix());
    let smith = smith_form(&a);
    for sign in [1i8, -1] {
        let from_smith = unit_root_sizes_from_smith(&smith.d, sign);
        let from_hodge = unit_root_sizes_from_hodge(hn, sign);
        if from_smith != from_hodge {
            return Err(Error::PipelineMismatch(format!(
                "{name}: (t {} 1)-torsion block sizes disagree;\n  classification: {from_hodge:?}\n  presentation:   {from_smith:?}",
                if sign > 0 { "-" } else { "+" }
            )));
        }
    }
    // The factored torsion order must reproduce the direct determinant
    // computation.
    let direct = alexander_direct(s_in).canonical_unit_rep();
    let from_hodge = alexander_from_hodge(hn).canonical_unit_rep();
    if direct != from_hodge {
        return Err(Error::PipelineMismatch(format!(
            "{name}: torsion order disagrees; determinant route {direct}, block route {from_hodge}"
        )));
    }
    Ok(())
}

/// Sample turns for the signature table: `j/24` for `j = 1..=12`.
fn sample_turns() -> Vec<(i64, i64)> {
    (1..=12).map(|j| (j, 24)).collect()
}

fn signature_samples(s: &SeifertMatrix, approximate: bool) -> Result<Vec<SignatureSample>> {
    let mut out = Vec::new();
    for (j, m) in sample_turns() {
        let (signature, nullity) = if approximate {
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / (m as f64);
            tl_signature_f64(s, angle)
        } else {
            let z = CirclePoint::from_turn_fraction(j, m)?;
            tl_signature_direct(s, &z)
        };
        out.push(SignatureSample { turn: format!("{j}/{m}"), signature, nullity });
    }
    Ok(out)
}

fn check_expectations(record: &FixtureRecord, report: &InvariantReport) -> Result<()> {
    let Some(exp) = &record.expected else { return Ok(()) };
    if let Some(want) = &exp.alexander {
        if &report.alexander != want {
            return Err(Error::Inconsistent(format!(
                "{}: expected torsion order {want}, computed {}",
                record.name, report.alexander
            )));
        }
    }
    if let Some(want) = exp.nakanishi_index {
        if report.nakanishi_index != want {
            return Err(Error::Inconsistent(format!(
                "{}: expected generator count {want}, computed {}",
                record.name, report.nakanishi_index
            )));
        }
    }
    if let Some(want) = exp.signature_at_minus_one {
        let got = report
            .signature_samples
            .iter()
            .find(|s| s.turn == "12/24")
            .map(|s| s.signature);
        if got != Some(want) {
            return Err(Error::Inconsistent(format!(
                "{}: expected signature {want} at -1, computed {got:?}",
                record.name
            )));
        }
    }
    Ok(())
}

/// Classified block data for one record (reduction plus classification
/// of the invertible part).
pub fn hodge_numbers_for(record: &FixtureRecord) -> Result<HodgeNumbers> {
    let s = record.seifert_matrix();
    let reduction = keef_reduce(&s)?;
    let s_in = &reduction.invertible_part;
    if s_in.size() == 0 {
        Ok(HodgeNumbers::default())
    } else {
        classify_hvs(&hvs_from_seifert(s_in)?)
    }
}

fn compute_report(record: &FixtureRecord, opts: &PipelineOptions) -> Result<InvariantReport> {
    let s = record.seifert_matrix();
    let reduction = keef_reduce(&s)?;
    let s_in = &reduction.invertible_part;

    let hn = hodge_numbers_for(record)?;

    if opts.crosscheck && s_in.size() > 0 {
        crosscheck_routes(&record.name, s_in, &hn)?;
    }

    let alexander = alexander_from_hodge(&hn).canonical_unit_rep().to_string();
    let spectrum_mod2 = mod2_spectrum(&hn)
        .ok()
        .map(|sp| sp.iter().map(fmt_q).collect());

    let report = InvariantReport {
        schema_version: SCHEMA_VERSION,
        name: record.name.clone(),
        size: record.size,
        zero_rank: reduction.zero_rank,
        invertible_size: s_in.size(),
        approximate: opts.approximate,
        alexander,
        nakanishi_index: nakanishi_index(&hn),
        signature_samples: signature_samples(&s, opts.approximate)?,
        hodge: HodgeReport::from_hodge(&hn),
        spectrum_mod2,
    };
    check_expectations(record, &report)?;
    Ok(report)
}

/// Cache key: SHA-256 over the schema version, the full input matrix,
/// and every option that can change the report.
fn cache_key(record: &FixtureRecord, opts: &PipelineOptions) -> String {
    let mut h = Sha256::new();
    h.update(SCHEMA_VERSION.to_le_bytes());
    h.update(record.name.as_bytes());
    h.update([0]);
    h.update(record.size.to_le_bytes());
    for e in &record.entries {
        h.update(fmt_q(e).as_bytes());
        h.update([0]);
    }
    h.update([opts.crosscheck as u8, opts.approximate as u8]);
    format!("{:x}", h.finalize())
}

// Cache writes from parallel table runs are serialized through this
// lock; reads are lock-free.
static CACHE_WRITE: Mutex<()> = Mutex::new(());

/// Compute the invariant report for one record, using and populating
/// the byte-level result cache when a cache directory is configured.
pub fn run_pipeline(record: &FixtureRecord, opts: &PipelineOptions) -> Result<InvariantReport> {
    let key_path = opts
        .cache_dir
        .as_ref()
        .map(|dir| dir.join(format!("{}.json", cache_key(record, opts))));

    if let Some(path) = &key_path {
        if let Ok(bytes) = std::fs::read(path) {
            // Stale, foreign, or corrupted entries are recomputed, never
            // trusted.
            if let Ok(report) = serde_json::from_slice::<InvariantReport>(&bytes) {
                if report.schema_version == SCHEMA_VERSION && report_json_bytes(&report) == bytes {
                    return Ok(report);
                }
            }
        }
    }

    let report = compute_report(record, opts)?;

    if let Some(path) = &key_path {
        let _guard = CACHE_WRITE.lock().expect("cache lock");
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, report_json_bytes(&report))?;
        std::fs::rename(&tmp, path)?;
    }
    Ok(report)
}
