//! Golden CSV fixtures and the regression check against them.
//!
//! Three files live in `golden/`, and copies are compiled into the binary:
//!
//! * `counterexamples.csv`: `n,r,d,a,h1,source`, every failure with `r <= 20`.
//! * `exceptional.csv`: `n,r,d,a,h1,destabilizers`, the sporadic failures
//!   together with their full destabilizer sets.
//! * `twisted.csv`: `n,r,d,a,p,h1`, values of `h1(E(pH))` for base classes
//!   whose twists behave exceptionally.
//!
//! Lines starting with `#` are comments recording where each row came from.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use mukai_bn::classify::enumerate_counterexamples_with;
use mukai_bn::criteria::twisted_h1;
use mukai_bn::{find_dv, Classifier, Int, K3Context, MukaiVector};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use thiserror::Error;

use crate::args::{parse_vector_list, ArgError, INPUT_BOUND};

pub const COUNTEREXAMPLES_FILE: &str = "counterexamples.csv";
pub const EXCEPTIONAL_FILE: &str = "exceptional.csv";
pub const TWISTED_FILE: &str = "twisted.csv";

const BUNDLED_COUNTEREXAMPLES: &str = include_str!("../golden/counterexamples.csv");
const BUNDLED_EXCEPTIONAL: &str = include_str!("../golden/exceptional.csv");
const BUNDLED_TWISTED: &str = include_str!("../golden/twisted.csv");

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("row {row}: {value} is outside [-{INPUT_BOUND}, {INPUT_BOUND}]")]
    OutOfRange { row: usize, value: Int },
    #[error("row {row}: bad destabilizer list: {source}")]
    Destabilizers { row: usize, source: ArgError },
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct CounterexampleRow {
    pub n: Int,
    pub r: Int,
    pub d: Int,
    pub a: Int,
    pub h1: Int,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
struct RawExceptionalRow {
    n: Int,
    r: Int,
    d: Int,
    a: Int,
    h1: Int,
    destabilizers: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalRow {
    pub n: Int,
    pub v: MukaiVector,
    pub h1: Int,
    pub destabilizers: Vec<MukaiVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct TwistedRow {
    pub n: Int,
    pub r: Int,
    pub d: Int,
    pub a: Int,
    pub p: Int,
    pub h1: Int,
}

fn bounded(row: usize, values: &[Int]) -> Result<(), GoldenError> {
    match values.iter().find(|x| x.abs() > INPUT_BOUND) {
        Some(&value) => Err(GoldenError::OutOfRange { row, value }),
        None => Ok(()),
    }
}

fn parse_rows<T: DeserializeOwned>(text: &str) -> Result<Vec<T>, GoldenError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    Ok(reader.deserialize().collect::<Result<Vec<T>, _>>()?)
}

pub fn parse_counterexamples(text: &str) -> Result<Vec<CounterexampleRow>, GoldenError> {
    let rows: Vec<CounterexampleRow> = parse_rows(text)?;
    for (i, x) in rows.iter().enumerate() {
        bounded(i + 1, &[x.n, x.r, x.d, x.a, x.h1])?;
    }
    Ok(rows)
}

pub fn parse_exceptional(text: &str) -> Result<Vec<ExceptionalRow>, GoldenError> {
    let raw: Vec<RawExceptionalRow> = parse_rows(text)?;
    raw.into_iter()
        .enumerate()
        .map(|(i, x)| {
            bounded(i + 1, &[x.n, x.r, x.d, x.a, x.h1])?;
            let destabilizers = parse_vector_list(&x.destabilizers)
                .map_err(|source| GoldenError::Destabilizers { row: i + 1, source })?;
            Ok(ExceptionalRow {
                n: x.n,
                v: MukaiVector::new(x.r, x.d, x.a),
                h1: x.h1,
                destabilizers,
            })
        })
        .collect()
}

pub fn parse_twisted(text: &str) -> Result<Vec<TwistedRow>, GoldenError> {
    let rows: Vec<TwistedRow> = parse_rows(text)?;
    for (i, x) in rows.iter().enumerate() {
        bounded(i + 1, &[x.n, x.r, x.d, x.a, x.p, x.h1])?;
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenSet {
    pub counterexamples: Vec<CounterexampleRow>,
    pub exceptional: Vec<ExceptionalRow>,
    pub twisted: Vec<TwistedRow>,
}

impl GoldenSet {
    pub fn bundled() -> Result<Self, GoldenError> {
        Ok(GoldenSet {
            counterexamples: parse_counterexamples(BUNDLED_COUNTEREXAMPLES)?,
            exceptional: parse_exceptional(BUNDLED_EXCEPTIONAL)?,
            twisted: parse_twisted(BUNDLED_TWISTED)?,
        })
    }

    pub fn load(dir: &Path) -> Result<Self, GoldenError> {
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|source| GoldenError::Io { path, source })
        };
        Ok(GoldenSet {
            counterexamples: parse_counterexamples(&read(COUNTEREXAMPLES_FILE)?)?,
            exceptional: parse_exceptional(&read(EXCEPTIONAL_FILE)?)?,
            twisted: parse_twisted(&read(TWISTED_FILE)?)?,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    pub checked: usize,
    pub mismatches: usize,
}

impl Report {
    fn fail(&mut self, line: String) {
        self.mismatches += 1;
        self.lines.push(line);
    }
}

type Key = (Int, [Int; 3]);

/// Compare the enumeration up to `max_rank` with the golden rows in range,
/// then re-derive every exceptional and twisted row.
pub fn compare(set: &GoldenSet, max_rank: Int, workers: usize) -> mukai_bn::Result<Report> {
    let mut report = Report::default();
    let found: BTreeMap<Key, Int> = enumerate_counterexamples_with(max_rank, None, workers)?
        .into_iter()
        .map(|c| ((c.n, c.v.into()), c.verdict.h1()))
        .collect();
    let expected: BTreeMap<Key, Int> = set
        .counterexamples
        .iter()
        .filter(|x| x.r <= max_rank)
        .map(|x| ((x.n, [x.r, x.d, x.a]), x.h1))
        .collect();
    for (key, h1) in &expected {
        report.checked += 1;
        match found.get(key) {
            None => report.fail(format!("missing n={} v={:?} h1={h1}", key.0, key.1)),
            Some(got) if got != h1 => report.fail(format!("h1 n={} v={:?}: got {got}, golden {h1}", key.0, key.1)),
            Some(_) => {}
        }
    }
    for key in found.keys().filter(|k| !expected.contains_key(k)) {
        report.fail(format!("extra n={} v={:?} h1={}", key.0, key.1, found[key]));
    }
    report
        .lines
        .push(format!("counterexamples: {} golden rows up to rank {max_rank}, {} found", expected.len(), found.len()));

    let mut exceptional = 0;
    for row in set.exceptional.iter().filter(|x| x.v.r <= max_rank) {
        exceptional += 1;
        report.checked += 1;
        let ctx = K3Context::new(row.n)?;
        let verdict = Classifier::new(ctx).weak_bn(row.v)?;
        let got: BTreeSet<MukaiVector> = find_dv(&ctx, row.v)?.iter().map(|x| x.v1()).collect();
        let want: BTreeSet<MukaiVector> = row.destabilizers.iter().copied().collect();
        if verdict.wbn || verdict.h1() != row.h1 {
            report.fail(format!("exceptional n={} v={}: h={:?}, golden h1={}", row.n, row.v, verdict.h, row.h1));
        }
        if got != want {
            report.fail(format!("exceptional n={} v={}: destabilizers {got:?}, golden {want:?}", row.n, row.v));
        }
    }
    report.lines.push(format!("exceptional: {exceptional} rows"));

    for row in &set.twisted {
        report.checked += 1;
        let ctx = K3Context::new(row.n)?;
        let base = MukaiVector::new(row.r, row.d, row.a);
        let got = twisted_h1(&ctx, base, row.p)?;
        if got.exact() != Some(row.h1) {
            report.fail(format!("twisted n={} v={base} p={}: {got:?}, golden {}", row.n, row.p, row.h1));
        }
    }
    report.lines.push(format!("twisted: {} rows", set.twisted.len()));
    Ok(report)
}
