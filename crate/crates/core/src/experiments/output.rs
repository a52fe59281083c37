//! Versioned JSON and CSV renderings. Counts are exact integers; bounds are
//! decimal strings.

use serde::Serialize;

use super::{HilbertSweep, InstanceMeta, RunKind, SweepResult};

/// Schema tag written into every JSON document.
pub const SCHEMA: &str = "dgl/1";

#[derive(Serialize)]
struct SweepDoc<'a> {
    schema: &'static str,
    kind: RunKind,
    instance: &'a str,
    meta: &'a InstanceMeta,
    records: Vec<RecordDoc>,
    fitted_exponent: Option<f64>,
}

#[derive(Serialize)]
struct RecordDoc {
    #[serde(rename = "B")]
    b: u64,
    count: u64,
    sz_bound: String,
    elapsed_ms: u64,
}

#[derive(Serialize)]
struct HilbertDoc<'a> {
    schema: &'static str,
    kind: &'static str,
    instance: &'a str,
    records: Vec<HilbertRecordDoc>,
    fitted_exponent: Option<f64>,
}

#[derive(Serialize)]
struct HilbertRecordDoc {
    #[serde(rename = "B")]
    b: u64,
    count: u64,
    bound_value: String,
    elapsed_ms: u64,
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

pub fn sweep_to_json(r: &SweepResult) -> String {
    pretty(&SweepDoc {
        schema: SCHEMA,
        kind: r.kind,
        instance: &r.instance,
        meta: &r.meta,
        records: r
            .records
            .iter()
            .map(|x| RecordDoc {
                b: x.b,
                count: x.count,
                sz_bound: x.sz_bound.to_string(),
                elapsed_ms: x.elapsed_ms,
            })
            .collect(),
        fitted_exponent: r.fitted_exponent,
    })
}

pub fn sweep_to_csv(r: &SweepResult) -> String {
    let mut s = String::from("B,count,sz_bound,elapsed_ms\n");
    for x in &r.records {
        s.push_str(&format!("{},{},{},{}\n", x.b, x.count, x.sz_bound, x.elapsed_ms));
    }
    s
}

pub fn hilbert_to_json(h: &HilbertSweep) -> String {
    pretty(&HilbertDoc {
        schema: SCHEMA,
        kind: "hilbert",
        instance: &h.instance,
        records: h
            .reports
            .iter()
            .zip(&h.elapsed_ms)
            .map(|(r, &e)| HilbertRecordDoc {
                b: r.b_prime,
                count: r.s_t,
                bound_value: r.bound_value.to_string(),
                elapsed_ms: e,
            })
            .collect(),
        fitted_exponent: h.fitted_exponent,
    })
}

/// Same columns as the sweep CSV with the comparator in the bound column
/// renamed `bound_value`.
pub fn hilbert_to_csv(h: &HilbertSweep) -> String {
    let mut s = String::from("B,count,bound_value,elapsed_ms\n");
    for (r, e) in h.reports.iter().zip(&h.elapsed_ms) {
        s.push_str(&format!("{},{},{},{}\n", r.b_prime, r.s_t, r.bound_value, e));
    }
    s
}
