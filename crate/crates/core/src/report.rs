//! Plot-ready CSV and JSON renderings of results.
//!
//! CSV cells carry six significant digits; JSON keeps full `f64` precision.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::classic::{BattyResult, KcResult};
use crate::cooccurrence::{proportional_terms, EntropyDecomposition};
use crate::simulate::StudySummary;

/// `%.6g`-style formatting.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_owned()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_sig6).unwrap_or_default()
}

/// One evaluated measure, as written to result files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureRecord {
    pub measure: String,
    pub global: f64,
    pub relative: Option<f64>,
    pub per_area: Value,
    pub parameters: Value,
}

impl MeasureRecord {
    /// `codes[k]` labels category `k` in the per-area listing.
    pub fn shannon(global: f64, proportions: &[f64], codes: &[i64], parameters: Value) -> Self {
        let n = proportions.len();
        Self {
            measure: "shannon".into(),
            global,
            relative: (n > 1).then(|| global / (n as f64).ln()),
            per_area: json!(proportions
                .iter()
                .zip(codes)
                .map(|(p, c)| json!({"category": c, "p": p}))
                .collect::<Vec<_>>()),
            parameters,
        }
    }

    pub fn batty(r: &BattyResult, parameters: Value) -> Self {
        let mut parameters = parameters;
        if let Value::Object(m) = &mut parameters {
            m.insert("lower_bound".into(), json!(r.lower_bound));
            m.insert("upper_bound".into(), json!(r.upper_bound));
        }
        Self {
            measure: "batty".into(),
            global: r.global,
            relative: r.relative,
            per_area: serde_json::to_value(&r.areas).expect("plain data"),
            parameters,
        }
    }

    pub fn kc(r: &KcResult, parameters: Value) -> Self {
        Self {
            measure: "kc".into(),
            global: r.global,
            relative: r.relative,
            per_area: serde_json::to_value(&r.areas).expect("plain data"),
            parameters,
        }
    }
}

const MEASURE_CSV_HEADER: &str =
    "measure,option,area,p,size,lambda,p_smoothed,local,global,relative";

/// Flat CSV: one `global` row per record followed by its per-area rows.
pub fn measures_csv(records: &[MeasureRecord]) -> String {
    let mut out = String::from(MEASURE_CSV_HEADER);
    out.push('\n');
    for r in records {
        let option = option_label(&r.parameters);
        let _ = writeln!(
            out,
            "{},{},global,,,,,,{},{}",
            r.measure,
            option,
            fmt_sig6(r.global),
            opt(r.relative)
        );
        if let Value::Array(areas) = &r.per_area {
            for (i, a) in areas.iter().enumerate() {
                let f = |k: &str| a.get(k).and_then(Value::as_f64);
                let area = a
                    .get("category")
                    .and_then(Value::as_i64)
                    .map_or(i.to_string(), |c| format!("category{c}"));
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},,",
                    r.measure,
                    option,
                    area,
                    opt(f("p")),
                    opt(f("size")),
                    opt(f("lambda")),
                    opt(f("p_smoothed")),
                    opt(f("local")),
                );
            }
        }
    }
    out
}

fn option_label(parameters: &Value) -> String {
    parameters
        .get("option")
        .and_then(Value::as_str)
        .unwrap_or("")
        .replace(',', ";")
}

/// `{h_z, mi, residual, relative, classes: [{k, lo, hi, pairs, p_w, pi, h, pi_prop, h_prop, empty}]}`.
pub fn decomposition_json(d: &EntropyDecomposition, parameters: Value) -> Value {
    let props = proportional_terms(d);
    let classes: Vec<Value> = d
        .classes
        .iter()
        .zip(props)
        .map(|(c, p)| {
            json!({
                "k": c.k,
                "lo": c.lo,
                "hi": c.hi,
                "pairs": c.pairs,
                "p_w": c.p_w,
                "pi": c.pi,
                "h": c.h,
                "pi_prop": p.map(|p| p.pi),
                "h_prop": p.map(|p| p.h),
                "empty": c.empty,
            })
        })
        .collect();
    json!({
        "measure": "spatial",
        "h_z": d.h_z,
        "mi": d.mi,
        "residual": d.residual,
        "relative": (d.h_z > 0.0).then(|| d.mi / d.h_z),
        "p_z": d.p_z,
        "classes": classes,
        "parameters": parameters,
    })
}

/// Tidy per-class CSV of a decomposition.
pub fn decomposition_csv(d: &EntropyDecomposition) -> String {
    let mut out = String::from("k,lo,hi,pairs,p_w,pi,h,pi_prop,h_prop\n");
    for (c, p) in d.classes.iter().zip(proportional_terms(d)) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            c.k,
            fmt_sig6(c.lo),
            fmt_sig6(c.hi),
            c.pairs,
            fmt_sig6(c.p_w),
            fmt_sig6(c.pi),
            fmt_sig6(c.h),
            opt(p.map(|p| p.pi)),
            opt(p.map(|p| p.h)),
        );
    }
    out
}

/// Tidy `measure,scenario,option,replicate,value` rows, ordered by series then replicate.
pub fn study_csv(summary: &StudySummary) -> String {
    let mut out = String::from("measure,scenario,option,replicate,value\n");
    for s in &summary.series {
        for (rep, v) in s.replicates.iter().zip(&s.values) {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                s.measure,
                s.scenario,
                s.option,
                rep,
                fmt_sig6(*v)
            );
        }
    }
    out
}

/// Five-number summaries of every series.
pub fn study_quartiles_json(summary: &StudySummary) -> Value {
    let series: Vec<Value> = summary
        .series
        .iter()
        .map(|s| {
            json!({
                "measure": s.measure,
                "scenario": s.scenario,
                "option": s.option,
                "n": s.values.len(),
                "min": s.min,
                "q1": s.q1,
                "median": s.median,
                "q3": s.q3,
                "max": s.max,
            })
        })
        .collect();
    json!({
        "replicates": summary.config.replicates,
        "seed": summary.config.seed,
        "series": series,
    })
}

/// Per-scenario `[min, max]` ranges, grouped by measure and option.
pub fn study_reference_json(summary: &StudySummary) -> Value {
    let mut groups: Vec<(String, String, Vec<Value>)> = Vec::new();
    for r in summary.reference_intervals() {
        let entry = json!({"scenario": r.scenario, "lo": r.lo, "hi": r.hi});
        match groups
            .iter_mut()
            .find(|g| g.0 == r.measure && g.1 == r.option)
        {
            Some(g) => g.2.push(entry),
            None => groups.push((r.measure, r.option, vec![entry])),
        }
    }
    Value::Array(
        groups
            .into_iter()
            .map(|(measure, option, intervals)| json!({"measure": measure, "option": option, "intervals": intervals}))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic::batty_from_parts;
    use crate::cooccurrence::{entropy_decomposition, DistanceClassSpec, PairDistribution};

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_sig6(std::f64::consts::LN_2), "0.693147");
        assert_eq!(fmt_sig6(4.605170185988092), "4.60517");
        assert_eq!(fmt_sig6(100.0), "100");
        assert_eq!(fmt_sig6(123456789.0), "1.23457e+08");
        assert_eq!(fmt_sig6(0.00001234567), "1.23457e-05");
        assert_eq!(fmt_sig6(0.0001234567), "0.000123457");
        assert_eq!(fmt_sig6(-2.5), "-2.5");
        assert_eq!(fmt_sig6(9.9999996), "10");
        assert_eq!(fmt_sig6(999999.6), "1e+06");
        assert_eq!(fmt_sig6(0.0), "0");
    }

    #[test]
    fn measure_csv_rows() {
        let r = batty_from_parts(&[0.5, 0.5], &[4.0, 6.0]).unwrap();
        let rec = MeasureRecord::batty(&r, json!({"option": "labels"}));
        let csv = measures_csv(&[rec]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], MEASURE_CSV_HEADER);
        assert!(lines[1].starts_with("batty,labels,global,,,,,,2.28217,"));
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("batty,labels,0,0.5,4,0.125,,"));
    }

    #[test]
    fn decomposition_outputs() {
        let spec = DistanceClassSpec::from_upper_bounds(&[1.0, 2.0]).unwrap();
        let pd = PairDistribution::from_counts(2, spec, vec![vec![1, 0], vec![2, 0], vec![1, 0]])
            .unwrap();
        let d = entropy_decomposition(&pd).unwrap();
        let v = decomposition_json(&d, json!({}));
        assert_eq!(v["classes"][1]["pi_prop"], Value::Null);
        assert_eq!(v["classes"][1]["empty"], json!(true));
        let csv = decomposition_csv(&d);
        assert_eq!(csv.lines().nth(2).unwrap(), "2,1,2,0,0,0,0,,");
    }
}
