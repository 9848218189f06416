//! Built-in Seifert matrices and a small CSV interchange format.
//!
//! A fixture row is `name,size,e11,e12,...` with the `size * size` entries
//! listed row-major.  Entries are rationals: either integers or `p/q`.

use crate::error::{Error, Result};
use crate::qmat::QMat;
use crate::qpoly::Q;
use crate::seifert::SeifertMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::path::Path;

/// One row of an input table: a named Seifert matrix, with optional
/// expected values used as regression pins when present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureRecord {
    pub name: String,
    pub size: usize,
    /// Row-major rational entries; `entries.len() == size * size`.
    pub entries: Vec<Q>,
    /// Optional expectations checked after a pipeline run.
    pub expected: Option<Expectations>,
}

/// Partial expected results attached to a fixture.  Only the present
/// fields are checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    /// Alexander polynomial in canonical unit form, rendered as text.
    pub alexander: Option<String>,
    /// Minimal generator count of the torsion module.
    pub nakanishi_index: Option<usize>,
    /// Ordinary signature, i.e. the Tristram–Levine signature at -1.
    pub signature_at_minus_one: Option<i64>,
}

impl FixtureRecord {
    pub fn new(name: &str, size: usize, entries: Vec<Q>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::InvalidParameters(format!(
                "fixture {name}: expected {} entries, got {}",
                size * size,
                entries.len()
            )));
        }
        Ok(FixtureRecord { name: name.to_string(), size, entries, expected: None })
    }

    fn from_int_rows(name: &str, rows: &[&[i64]]) -> Self {
        let size = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), size);
                r.iter().map(|&x| Q::from(BigInt::from(x)))
            })
            .collect();
        FixtureRecord { name: name.to_string(), size, entries, expected: None }
    }

    fn with_expected(mut self, expected: Expectations) -> Self {
        self.expected = Some(expected);
        self
    }

    /// The Seifert matrix described by this record.
    pub fn seifert_matrix(&self) -> SeifertMatrix {
        let m = QMat::from_fn(self.size, self.size, |i, j| {
            self.entries[i * self.size + j].clone()
        });
        let origin = if self.entries.iter().all(|q| q.is_integer()) {
            crate::seifert::Origin::IntegerTable
        } else {
            crate::seifert::Origin::Synthetic
        };
        SeifertMatrix::new(m, origin)
    }
}

fn q_to_field(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Render records in the row-major CSV format accepted by [`parse_csv`].
pub fn emit_csv(records: &[FixtureRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.name);
        out.push(',');
        out.push_str(&r.size.to_string());
        for e in &r.entries {
            out.push(',');
            out.push_str(&q_to_field(e));
        }
        out.push('\n');
    }
    out
}

fn parse_rational(field: &str) -> Option<Q> {
    let field = field.trim();
    if let Some((num, den)) = field.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = field.parse().ok()?;
        Some(Q::from(n))
    }
}

/// Split one CSV line at commas, except commas nested in parentheses
/// (so names like `torus(2,5)` survive as a single field).
fn split_fields(line: &str) -> Vec<&str> {
    let mut fields = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in line.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                fields.push(&line[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    fields.push(&line[start..]);
    fields
}

/// Parse the CSV table format.  Blank lines and lines starting with `#`
/// are ignored.  Errors carry the 1-based line number.
pub fn parse_csv(text: &str) -> Result<Vec<FixtureRecord>> {
    let mut records = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = split_fields(trimmed);
        if fields.len() < 2 {
            return Err(Error::Parse { line, msg: "expected at least name,size".into() });
        }
        let name = fields[0].trim();
        if name.is_empty() {
            return Err(Error::Parse { line, msg: "empty fixture name".into() });
        }
        let size: usize = fields[1].trim().parse().map_err(|_| Error::Parse {
            line,
            msg: format!("invalid size field {:?}", fields[1].trim()),
        })?;
        let want = size * size;
        let got = fields.len() - 2;
        if got != want {
            return Err(Error::Parse {
                line,
                msg: format!("size {size} needs {want} entries, line has {got}"),
            });
        }
        let mut entries = Vec::with_capacity(want);
        for (k, field) in fields[2..].iter().enumerate() {
            let q = parse_rational(field).ok_or_else(|| Error::Parse {
                line,
                msg: format!("entry {} is not a rational: {:?}", k + 1, field.trim()),
            })?;
            entries.push(q);
        }
        records.push(FixtureRecord {
            name: name.to_string(),
            size,
            entries,
            expected: None,
        });
    }
    Ok(records)
}

/// Read and parse a CSV table from disk.
pub fn ingest_csv(path: &Path) -> Result<Vec<FixtureRecord>> {
    let text = std::fs::read_to_string(path)?;
    parse_csv(&text)
}

/// Bidiagonal block used to build torus-knot Seifert matrices:
/// an `(m-1) x (m-1)` matrix with 1 on the diagonal and -1 above it.
fn bidiagonal_block(m: i64) -> QMat {
    let n = (m - 1) as usize;
    QMat::from_fn(n, n, |i, j| {
        if i == j {
            Q::one()
        } else if j == i + 1 {
            -Q::one()
        } else {
            Q::zero()
        }
    })
}

fn kronecker(a: &QMat, b: &QMat) -> QMat {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    QMat::from_fn(ar * br, ac * bc, |i, j| {
        a.get(i / br, j / bc).clone() * b.get(i % br, j % bc).clone()
    })
}

/// Seifert matrix of the `(p, q)` torus knot on its standard fiber
/// surface: the negated Kronecker product of two bidiagonal blocks, of
/// size `(p-1)(q-1)`.  Requires coprime `p, q >= 2`.
pub fn torus_seifert(p: i64, q: i64) -> Result<SeifertMatrix> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidParameters(format!(
            "torus parameters must be at least 2, got ({p}, {q})"
        )));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let m = kronecker(&bidiagonal_block(p), &bidiagonal_block(q)).neg();
    Ok(SeifertMatrix::new(m, crate::seifert::Origin::IntegerTable))
}

fn torus_record(p: i64, q: i64) -> Result<FixtureRecord> {
    let s = torus_seifert(p, q)?;
    let size = s.size();
    let entries = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .map(|(i, j)| s.matrix().get(i, j).clone())
        .collect();
    FixtureRecord::new(&format!("torus({p},{q})"), size, entries)
}

/// Names accepted by [`by_name`].
pub const BUILTIN_NAMES: &[&str] =
    &["unknot", "annulus", "trefoil", "torus(2,5)", "8_20", "remark"];

/// Look up a built-in fixture.  `torus(p,q)` is accepted for any
/// coprime pair.
pub fn by_name(name: &str) -> Result<FixtureRecord> {
    match name {
        "unknot" => FixtureRecord::new("unknot", 0, Vec::new()).map(|r| {
            r.with_expected(Expectations {
                alexander: Some("1".into()),
                nakanishi_index: Some(0),
                signature_at_minus_one: Some(0),
            })
        }),
        "annulus" => Ok(FixtureRecord::from_int_rows("annulus", &[&[1]]).with_expected(
            Expectations {
                alexander: Some("-1 + t".into()),
                nakanishi_index: Some(1),
                signature_at_minus_one: Some(1),
            },
        )),
        "trefoil" => Ok(FixtureRecord::from_int_rows(
            "trefoil",
            &[&[-1, 1], &[0, -1]],
        )
        .with_expected(Expectations {
            alexander: Some("1 - t + t^2".into()),
            nakanishi_index: Some(1),
            signature_at_minus_one: Some(-2),
        })),
        "8_20" => Ok(FixtureRecord::from_int_rows(
            "8_20",
            &[
                &[-1, 1, 0, 0, 0, 0],
                &[0, -1, 1, 0, 0, 0],
                &[0, 0, 0, 0, 0, 1],
                &[0, 0, -1, 1, 0, 0],
                &[0, 0, 0, -1, 1, 0],
                &[0, 0, 0, 0, 0, 1],
            ],
        )
        .with_expected(Expectations {
            alexander: Some("1 - 2*t + 3*t^2 - 2*t^3 + t^4".into()),
            nakanishi_index: Some(1),
            signature_at_minus_one: Some(0),
        })),
        "remark" => Ok(FixtureRecord::from_int_rows(
            "remark",
            &[&[0, 0, 1], &[1, 0, 0], &[0, 0, 0]],
        )),
        _ => {
            if let Some(args) = name.strip_prefix("torus(").and_then(|s| s.strip_suffix(')')) {
                if let Some((ps, qs)) = args.split_once(',') {
                    let p: i64 = ps.trim().parse().map_err(|_| {
                        Error::InvalidParameters(format!("bad torus parameter {ps:?}"))
                    })?;
                    let q: i64 = qs.trim().parse().map_err(|_| {
                        Error::InvalidParameters(format!("bad torus parameter {qs:?}"))
                    })?;
                    return torus_record(p, q);
                }
            }
            Err(Error::InvalidParameters(format!(
                "unknown fixture {name:?}; built-ins are {BUILTIN_NAMES:?} and torus(p,q)"
            )))
        }
    }
}

/// All fixed-name built-ins, plus the torus knots used in the test
/// matrix.  Useful as a default corpus.
pub fn builtin_corpus() -> Vec<FixtureRecord> {
    let mut v: Vec<FixtureRecord> =
        BUILTIN_NAMES.iter().map(|n| by_name(n).expect("builtin")).collect();
    for (p, q) in [(2i64, 3i64), (3, 4), (3, 5)] {
        v.push(torus_record(p, q).expect("coprime"));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use crate::qpoly::qi;
    use crate::seifert::alexander_direct;
    use crate::symfactor::factor_symmetric;
    use crate::zfactor::cyclotomic;

    #[test]
    fn csv_round_trips_through_emit_and_parse() {
        let mut records = builtin_corpus();
        // A synthetic rational entry exercises the p/q field form.
        records.push(
            FixtureRecord::new(
                "halves",
                2,
                vec![Q::new(1.into(), 2.into()), qi(1), qi(0), Q::new((-3).into(), 2.into())],
            )
            .unwrap(),
        );
        for r in &mut records {
            r.expected = None;
        }
        let text = emit_csv(&records);
        let back = parse_csv(&text).unwrap();
        assert_eq!(back, records);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let text = "trefoil,2,-1,1,0,-1\n\n# comment\nbad,2,-1,1,0\n";
        match parse_csv(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("needs 4 entries"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_csv("knot,2,-1,x,0,-1") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 1);
                assert!(msg.contains("not a rational"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_csv("nameonly"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_csv("k,two,1"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn example_line_parses_to_the_trefoil() {
        let records = parse_csv("trefoil,2,-1,1,0,-1").unwrap();
        assert_eq!(records.len(), 1);
        let s = records[0].seifert_matrix();
        assert_eq!(s.matrix(), by_name("trefoil").unwrap().seifert_matrix().matrix());
    }

    /// The torus generator is certified arithmetically: its Alexander
    /// polynomial must be the product of the cyclotomic polynomials
    /// Phi_d over divisors d of pq dividing neither p nor q.
    #[test]
    fn torus_matrices_have_cyclotomic_alexander_polynomials() {
        for (p, q) in [(2i64, 3i64), (2, 5), (3, 4), (3, 5), (2, 7), (4, 5)] {
            let s = torus_seifert(p, q).unwrap();
            assert_eq!(s.size() as i64, (p - 1) * (q - 1));
            let delta = alexander_direct(&s).canonical_unit_rep();
            let mut expect = crate::qpoly::QPoly::one();
            let n = p * q;
            for d in 1..=n {
                if n % d == 0 && p % d != 0 && q % d != 0 {
                    expect = expect.mul(&cyclotomic(d as u64));
                }
            }
            let expect = LaurentPoly::from_qpoly(&expect).canonical_unit_rep();
            assert_eq!(delta, expect, "torus({p},{q})");
        }
        assert!(matches!(torus_seifert(4, 6), Err(Error::NotCoprime(4, 6))));
        assert!(matches!(torus_seifert(1, 5), Err(Error::InvalidParameters(_))));
    }

    /// Every built-in with expectations matches direct computation, and
    /// the invertible ones have only circle or off-circle factors as
    /// appropriate.
    #[test]
    fn builtin_expectations_match_direct_computation() {
        for r in builtin_corpus() {
            let s = r.seifert_matrix();
            if let Some(exp) = &r.expected {
                if let Some(alex) = &exp.alexander {
                    let got = alexander_direct(&s).canonical_unit_rep();
                    assert_eq!(format!("{got}"), *alex, "{}", r.name);
                }
                if let Some(sig) = exp.signature_at_minus_one {
                    let (got, _) =
                        crate::seifert::tl_signature_direct(&s, &crate::algebraic::CirclePoint::MinusOne);
                    assert_eq!(got, sig, "{}", r.name);
                }
            }
        }
        // Spot check a factorization path on the 8_20 polynomial.
        let s = by_name("8_20").unwrap().seifert_matrix();
        let delta = alexander_direct(&s);
        let facs = factor_symmetric(&delta).unwrap();
        assert_eq!(facs.factors.len(), 1);
        assert_eq!(facs.factors[0].1, 2);
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(by_name("granny"), Err(Error::InvalidParameters(_))));
        assert!(matches!(by_name("torus(2,4)"), Err(Error::NotCoprime(2, 4))));
        assert!(matches!(by_name("torus(x,4)"), Err(Error::InvalidParameters(_))));
    }
}
