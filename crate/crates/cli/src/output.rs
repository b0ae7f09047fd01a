//! Record types written by the command-line tool, with CSV and JSON emitters.

use std::io::Write;

use mukai_bn::{Counterexample, Destabilizer, Int, K3Context, MukaiVector, Verdict};
use serde::{Deserialize, Serialize};

/// One classified class as written by `classify` and `enumerate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: Int,
    pub v: [Int; 3],
    pub wbn: bool,
    pub h: [Int; 3],
    pub rule: String,
    pub destabilizers: Vec<[Int; 3]>,
}

impl OutputRecord {
    pub fn new(ctx: &K3Context, v: MukaiVector, verdict: &Verdict, destabilizers: &[Destabilizer]) -> Self {
        OutputRecord {
            n: ctx.n(),
            v: v.into(),
            wbn: verdict.wbn,
            h: verdict.h,
            rule: verdict.rule.to_string(),
            destabilizers: destabilizers.iter().map(|x| x.v1().into()).collect(),
        }
    }

    pub fn from_counterexample(c: &Counterexample, destabilizers: &[Destabilizer]) -> Self {
        OutputRecord::new(&K3Context::new(c.n).expect("enumerated n is positive"), c.v, &c.verdict, destabilizers)
    }
}

/// The fixed CSV row `n,r,d,a,wbn,h0,h1,h2,rule`. Destabilizers are not part
/// of the CSV schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRecord {
    pub n: Int,
    pub r: Int,
    pub d: Int,
    pub a: Int,
    pub wbn: bool,
    pub h0: Int,
    pub h1: Int,
    pub h2: Int,
    pub rule: String,
}

impl From<&OutputRecord> for CsvRecord {
    fn from(o: &OutputRecord) -> Self {
        let [r, d, a] = o.v;
        let [h0, h1, h2] = o.h;
        CsvRecord {
            n: o.n,
            r,
            d,
            a,
            wbn: o.wbn,
            h0,
            h1,
            h2,
            rule: o.rule.clone(),
        }
    }
}

impl From<CsvRecord> for OutputRecord {
    fn from(c: CsvRecord) -> Self {
        OutputRecord {
            n: c.n,
            v: [c.r, c.d, c.a],
            wbn: c.wbn,
            h: [c.h0, c.h1, c.h2],
            rule: c.rule,
            destabilizers: Vec::new(),
        }
    }
}

/// Write `rows` as CSV with a header line, even when `rows` is empty.
pub fn write_csv<W: Write, T: Serialize>(out: W, header: &[&str], rows: &[T]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub const RECORD_HEADER: &[&str] = &["n", "r", "d", "a", "wbn", "h0", "h1", "h2", "rule"];

pub fn write_records_csv<W: Write>(out: W, records: &[OutputRecord]) -> csv::Result<()> {
    let rows: Vec<CsvRecord> = records.iter().map(CsvRecord::from).collect();
    write_csv(out, RECORD_HEADER, &rows)
}

pub fn read_records_csv(text: &str) -> csv::Result<Vec<OutputRecord>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize::<CsvRecord>()
        .map(|r| r.map(OutputRecord::from))
        .collect()
}
