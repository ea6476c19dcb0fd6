//! Grid sweeps over (r, i, d) and bit-stable CSV/JSON table emission.
//!
//! One row per grid point with d >= s0 + 1, in lexicographic (r, i, d)
//! order; points with d <= s0 are skipped and counted. Exactly one of the
//! G0 / G_beta0 columns is populated, matching the beta flag of the (r, i)
//! pair. Output is byte-identical across runs and thread counts.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds::{castelnuovo_bound, g0_value_from, theorem_covers, Regime};
use crate::params::{derive_ri, split_degree};
use crate::threshold::d0_met;
use crate::{arith, Error, Result};

/// Largest integer magnitude that round-trips through a JSON number
/// (IEEE 754 double): 2^53 - 1.
const JSON_SAFE_MAX: i64 = (1 << 53) - 1;

/// An exact integer that serializes as a JSON number while it fits the
/// 53-bit interoperable range and as a decimal string beyond it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(v: BigInt) -> Self {
        JsonInt(v)
    }
}

impl std::fmt::Display for JsonInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.abs() <= JSON_SAFE_MAX => serializer.serialize_i64(v),
            _ => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(BigInt::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(BigInt::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("invalid integer literal: {v}")))
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// One table row. JSON keys follow the CSV column order exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub r: u32,
    pub i: u32,
    pub d: JsonInt,
    pub alpha: JsonInt,
    pub beta: JsonInt,
    pub s0: JsonInt,
    pub m: JsonInt,
    pub epsilon: JsonInt,
    pub c0: JsonInt,
    pub gamma: JsonInt,
    pub mu: u8,
    #[serde(rename = "G_castelnuovo")]
    pub g_castelnuovo: JsonInt,
    #[serde(rename = "G0")]
    pub g0: Option<JsonInt>,
    #[serde(rename = "G_beta0")]
    pub g_beta0: Option<JsonInt>,
    pub regime: Regime,
    pub valid_for_theorem: bool,
    pub d0_met: bool,
}

/// Sweep output: rows in lexicographic order plus the count of grid points
/// skipped because d <= s0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    pub skipped: u64,
}

/// The exact CSV header line (without the trailing newline).
pub const CSV_HEADER: &str =
    "r,i,d,alpha,beta,s0,m,epsilon,c0,gamma,mu,G_castelnuovo,G0,G_beta0,regime,valid_for_theorem,d0_met";

/// Computes one row per (r, i, d) with d >= s0 + 1. Rows are produced in
/// lexicographic order regardless of how the work is scheduled.
pub fn sweep(
    r_range: RangeInclusive<u32>,
    i_range: RangeInclusive<u32>,
    d_range: RangeInclusive<u64>,
) -> Result<Sweep> {
    if r_range.is_empty() || i_range.is_empty() || d_range.is_empty() {
        return Err(Error::Domain("sweep ranges must be non-empty".into()));
    }
    if *r_range.start() < 4 {
        return Err(Error::Domain(format!(
            "sweep requires r >= 4 throughout (got {})",
            r_range.start()
        )));
    }
    let points: Vec<(u32, u32)> = r_range
        .flat_map(|r| i_range.clone().map(move |i| (r, i)))
        .collect();
    let per_point: Vec<(Vec<SweepRow>, u64)> = points
        .par_iter()
        .map(|&(r, i)| point_rows(r, i, d_range.clone()))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut skipped = 0;
    for (mut point, skip) in per_point {
        rows.append(&mut point);
        skipped += skip;
    }
    Ok(Sweep { rows, skipped })
}

fn point_rows(r: u32, i: u32, d_range: RangeInclusive<u64>) -> Result<(Vec<SweepRow>, u64)> {
    let ri = derive_ri(r, i)?;
    let beta_zero = ri.beta.is_zero();
    let mut rows = Vec::new();
    let mut skipped = 0u64;
    for d in d_range {
        let db = BigInt::from(d);
        if db <= ri.s0 {
            skipped += 1;
            continue;
        }
        let (m, epsilon) = split_degree(&db, &ri.s0)?;
        let (g0, g_beta0, regime, valid) = if beta_zero {
            let v = arith::choose2(&m) * &ri.s0 + &m * &epsilon;
            (None, Some(JsonInt(v)), Regime::BetaZero, r >= 5 || i == 2)
        } else {
            let v = g0_value_from(&ri, &m, &epsilon);
            (Some(JsonInt(v)), None, Regime::G0, theorem_covers(r, i))
        };
        rows.push(SweepRow {
            r,
            i,
            d: JsonInt(db.clone()),
            alpha: JsonInt(ri.alpha.clone()),
            beta: JsonInt(ri.beta.clone()),
            s0: JsonInt(ri.s0.clone()),
            m: JsonInt(m),
            epsilon: JsonInt(epsilon),
            c0: JsonInt(ri.c0.clone()),
            gamma: JsonInt(ri.gamma.clone()),
            mu: ri.mu,
            g_castelnuovo: JsonInt(castelnuovo_bound(&BigInt::from(r), &db)?),
            g0,
            g_beta0,
            regime,
            valid_for_theorem: valid,
            d0_met: d0_met(r, i, &db, &ri.s0)?,
        });
    }
    Ok((rows, skipped))
}

/// Writes the table as CSV: the exact header, decimal integers, empty
/// cells for the unpopulated bound, LF line endings.
pub fn emit_csv<W: Write>(rows: &[SweepRow], w: &mut W) -> io::Result<()> {
    let mut buf = String::new();
    buf.push_str(CSV_HEADER);
    buf.push('\n');
    for row in rows {
        let opt = |v: &Option<JsonInt>| v.as_ref().map(ToString::to_string).unwrap_or_default();
        writeln!(
            buf,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.r,
            row.i,
            row.d,
            row.alpha,
            row.beta,
            row.s0,
            row.m,
            row.epsilon,
            row.c0,
            row.gamma,
            row.mu,
            row.g_castelnuovo,
            opt(&row.g0),
            opt(&row.g_beta0),
            row.regime.as_str(),
            row.valid_for_theorem,
            row.d0_met,
        )
        .expect("formatting into a String cannot fail");
        if buf.len() >= 1 << 16 {
            w.write_all(buf.as_bytes())?;
            buf.clear();
        }
    }
    w.write_all(buf.as_bytes())
}

/// Writes the table as a JSON array, keys in CSV column order, absent
/// bound as null, big integers as decimal strings beyond the 53-bit safe
/// range.
pub fn emit_json<W: Write>(rows: &[SweepRow], w: &mut W) -> io::Result<()> {
    serde_json::to_writer(&mut *w, rows).map_err(|e| io::Error::new(io::ErrorKind::Other, e))?;
    w.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn to_string(rows: &[SweepRow], f: fn(&[SweepRow], &mut Vec<u8>) -> io::Result<()>) -> String {
        let mut buf = Vec::new();
        f(rows, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn spec_rows_r6() {
        let s = sweep(6..=6, 2..=2, 27..=28).unwrap();
        assert_eq!(s.skipped, 0);
        assert_eq!(s.rows.len(), 2);
        assert_eq!(s.rows[0].g0, Some(JsonInt(BigInt::from(28))));
        assert_eq!(s.rows[1].g0, Some(JsonInt(BigInt::from(30))));
        assert_eq!(s.rows[0].g_beta0, None);
        assert!(!s.rows[0].d0_met);
    }

    #[test]
    fn spec_row_beta_zero() {
        let s = sweep(4..=4, 2..=2, 13..=13).unwrap();
        assert_eq!(s.rows.len(), 1);
        let row = &s.rows[0];
        assert_eq!(row.g_beta0, Some(JsonInt(BigInt::from(12))));
        assert_eq!(row.g0, None);
        assert_eq!(row.regime, Regime::BetaZero);
    }

    #[test]
    fn spec_row_skipped() {
        let s = sweep(6..=6, 2..=2, 5..=5).unwrap();
        assert_eq!(s.rows.len(), 0);
        assert_eq!(s.skipped, 1);
    }

    #[test]
    fn empty_grid_is_an_error() {
        assert!(sweep(6..=5, 2..=2, 1..=10).is_err());
        assert!(sweep(3..=6, 2..=2, 1..=10).is_err());
    }

    #[test]
    fn csv_layout_matches_contract() {
        let s = sweep(6..=6, 2..=2, 27..=27).unwrap();
        let csv = to_string(&s.rows, |r, w| emit_csv(r, w));
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let data = lines.next().unwrap();
        assert_eq!(data, "6,2,27,8,1,9,2,8,1,0,0,55,28,,g0,true,false");
        assert!(data.ends_with(",28,,g0,true,false"));
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn csv_empty_rows_is_header_only() {
        let csv = to_string(&[], |r, w| emit_csv(r, w));
        assert_eq!(csv, format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn json_empty_rows_is_empty_array() {
        let json = to_string(&[], |r, w| emit_json(r, w));
        assert_eq!(json, "[]\n");
    }

    #[test]
    fn json_round_trips_and_nulls_match_empty_cells() {
        let s = sweep(4..=6, 2..=3, 5..=40).unwrap();
        let json = to_string(&s.rows, |r, w| emit_json(r, w));
        let back: Vec<SweepRow> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s.rows);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        let csv = to_string(&s.rows, |r, w| emit_csv(r, w));
        for (obj, line) in parsed.as_array().unwrap().iter().zip(csv.lines().skip(1)) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(obj["G0"].is_null(), cells[12].is_empty());
            assert_eq!(obj["G_beta0"].is_null(), cells[13].is_empty());
            // cell-for-cell value agreement on a few columns
            assert_eq!(obj["r"].to_string(), cells[0]);
            assert_eq!(obj["s0"].to_string(), cells[5]);
        }
    }

    #[test]
    fn json_keys_follow_csv_column_order() {
        let s = sweep(6..=6, 2..=2, 27..=27).unwrap();
        let json = to_string(&s.rows, |r, w| emit_json(r, w));
        let mut last = 0;
        for key in CSV_HEADER.split(',') {
            let pos = json.find(&format!("\"{key}\":")).expect(key);
            assert!(pos > last, "key {key} out of order");
            last = pos;
        }
    }

    #[test]
    fn big_integers_serialize_as_strings_beyond_53_bits() {
        // (60, 30): alpha and s0 are around 1.4e21
        let s = sweep(60..=60, 30..=30, u64::MAX - 1..=u64::MAX - 1).unwrap();
        assert_eq!(s.rows.len(), 0); // d <= s0 there
        assert_eq!(s.skipped, 1);

        let small = JsonInt(BigInt::from(42));
        let big = JsonInt(BigInt::one() << 60);
        assert_eq!(serde_json::to_string(&small).unwrap(), "42");
        assert_eq!(
            serde_json::to_string(&big).unwrap(),
            format!("\"{}\"", BigInt::one() << 60)
        );
        let back: JsonInt = serde_json::from_str("\"1152921504606846976\"").unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn output_is_byte_identical_across_runs_and_thread_counts() {
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    let s = sweep(4..=10, 2..=4, 1..=120).unwrap();
                    (
                        to_string(&s.rows, |r, w| emit_csv(r, w)),
                        to_string(&s.rows, |r, w| emit_json(r, w)),
                        s.skipped,
                    )
                })
        };
        let a = run(1);
        let b = run(4);
        let c = run(1);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn ordering_is_lexicographic() {
        let s = sweep(4..=7, 2..=4, 1..=60).unwrap();
        let keys: Vec<(u32, u32, BigInt)> = s
            .rows
            .iter()
            .map(|row| (row.r, row.i, row.d.0.clone()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn exactly_one_bound_cell_is_populated() {
        let s = sweep(4..=12, 2..=5, 1..=200).unwrap();
        assert!(!s.rows.is_empty());
        for row in &s.rows {
            let beta_zero = row.beta.0.is_zero();
            assert_eq!(row.g_beta0.is_some(), beta_zero);
            assert_eq!(row.g0.is_some(), !beta_zero);
            assert_eq!(row.regime == Regime::BetaZero, beta_zero);
        }
    }
}
