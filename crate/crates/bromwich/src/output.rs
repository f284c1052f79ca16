//! CSV tables and JSON summaries for campaign results.
//!
//! Numbers use Rust's shortest round-trip formatting, so output is
//! byte-stable across runs and thread counts. Every table starts with its
//! header row.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::formats::{inverse_kind_name, ContourDoc, SpecDoc};
use crate::harness::{
    CauchyRow, ConvergenceTable, InvertRow, RoundTripReport, Sweep, TransformRow,
};

pub const ROUNDTRIP_HEADER: &str = "arg,truth,recovered,abs_err,rel_err";
pub const TRANSFORM_HEADER: &str = "re_z,im_z,re_val,im_val,err_est";
pub const INVERT_HEADER: &str = "arg,value,err_est";
pub const DELTA_HEADER: &str = "T,value,abs_err,delta";
pub const SWEEP_HEADER: &str = "delta,half_height,value,abs_err";
pub const CAUCHY_HEADER: &str = "re_z,im_z,re_val,im_val,re_truth,im_truth,rel_err";

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-5, 1e16)` so small errors stay readable.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || !a.is_finite() || (1e-5..1e16).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn table<I: IntoIterator<Item = String>>(header: &str, lines: I) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn roundtrip_csv(report: &RoundTripReport) -> String {
    table(
        ROUNDTRIP_HEADER,
        report.rows.iter().map(|r| {
            format!(
                "{},{},{},{},{}",
                num(r.arg),
                num(r.truth),
                num(r.recovered),
                num(r.abs_err),
                num(r.rel_err)
            )
        }),
    )
}

pub fn roundtrip_json(report: &RoundTripReport) -> Value {
    json!({
        "spec": SpecDoc::from_core(&report.spec),
        "kind": inverse_kind_name(report.kind),
        "contour": ContourDoc::from_core(&report.contour),
        "rows": report.rows.iter().map(|r| json!({
            "arg": r.arg,
            "truth": r.truth,
            "recovered": r.recovered,
            "abs_err": r.abs_err,
            "rel_err": r.rel_err,
        })).collect::<Vec<_>>(),
        "max_abs_err": report.max_abs_err,
        "max_rel_err": report.max_rel_err,
        "passed": report.passed,
        "tolerance": report.tolerance,
        "converged": report.converged,
        "wall_time_s": report.wall_time.as_secs_f64(),
    })
}

pub fn transform_csv(rows: &[TransformRow]) -> String {
    table(
        TRANSFORM_HEADER,
        rows.iter().map(|r| {
            format!(
                "{},{},{},{},{}",
                num(r.z.re),
                num(r.z.im),
                num(r.value.re),
                num(r.value.im),
                num(r.err_est)
            )
        }),
    )
}

pub fn transform_json(rows: &[TransformRow]) -> Value {
    json!({
        "rows": rows.iter().map(|r| json!({
            "re_z": r.z.re,
            "im_z": r.z.im,
            "re_val": r.value.re,
            "im_val": r.value.im,
            "err_est": r.err_est,
            "converged": r.converged,
        })).collect::<Vec<_>>(),
        "converged": rows.iter().all(|r| r.converged),
    })
}

pub fn invert_csv(rows: &[InvertRow]) -> String {
    table(
        INVERT_HEADER,
        rows.iter()
            .map(|r| format!("{},{},{}", num(r.arg), num(r.value.re), num(r.err_est))),
    )
}

pub fn invert_json(rows: &[InvertRow], contour: &bromwich_core::Contour) -> Value {
    json!({
        "contour": ContourDoc::from_core(contour),
        "rows": rows.iter().map(|r| json!({
            "arg": r.arg,
            "value": r.value.re,
            "imag": r.value.im,
            "err_est": r.err_est,
            "converged": r.converged,
        })).collect::<Vec<_>>(),
        "converged": rows.iter().all(|r| r.converged),
    })
}

pub fn delta_csv(t: &ConvergenceTable) -> String {
    let errors = t.errors();
    let mut out = String::new();
    writeln!(out, "{DELTA_HEADER}").unwrap();
    for (i, (s, v)) in t.samples.iter().zip(&t.values).enumerate() {
        let err = errors.get(i).map(|&e| num(e)).unwrap_or_default();
        let delta = if i == 0 {
            String::new()
        } else {
            num(t.deltas[i - 1])
        };
        writeln!(out, "{},{},{err},{delta}", num(*s), num(*v)).unwrap();
    }
    out
}

pub fn table_json(t: &ConvergenceTable) -> Value {
    json!({
        "parameter": t.parameter,
        "samples": t.samples,
        "values": t.values,
        "deltas": t.deltas,
        "reference": t.reference,
        "errors": t.errors(),
    })
}

pub fn sweep_csv(s: &Sweep) -> String {
    table(
        SWEEP_HEADER,
        s.tables.iter().flat_map(|(delta, t)| {
            let errors = t.errors();
            t.samples
                .iter()
                .zip(&t.values)
                .enumerate()
                .map(move |(i, (h, v))| {
                    format!("{},{},{},{}", num(*delta), num(*h), num(*v), num(errors[i]))
                })
                .collect::<Vec<_>>()
        }),
    )
}

pub fn sweep_json(s: &Sweep) -> Value {
    json!({
        "tables": s.tables.iter().map(|(delta, t)| json!({
            "delta": delta,
            "table": table_json(t),
        })).collect::<Vec<_>>(),
        "spread": s.spread,
        "converged": s.converged,
    })
}

pub fn cauchy_csv(rows: &[CauchyRow]) -> String {
    table(
        CAUCHY_HEADER,
        rows.iter().map(|r| {
            format!(
                "{},{},{},{},{},{},{}",
                num(r.z.re),
                num(r.z.im),
                num(r.value.re),
                num(r.value.im),
                num(r.truth.re),
                num(r.truth.im),
                num(r.rel_err)
            )
        }),
    )
}

pub fn cauchy_json(rows: &[CauchyRow], rect: &bromwich_core::Contour) -> Value {
    json!({
        "contour": ContourDoc::from_core(rect),
        "rows": rows.iter().map(|r| json!({
            "re_z": r.z.re,
            "im_z": r.z.im,
            "re_val": r.value.re,
            "im_val": r.value.im,
            "re_truth": r.truth.re,
            "im_truth": r.truth.im,
            "abs_err": r.abs_err,
            "rel_err": r.rel_err,
        })).collect::<Vec<_>>(),
        "max_rel_err": rows.iter().map(|r| r.rel_err).fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Row;
    use bromwich_core::{Complex64, Contour, FunctionSpec, InverseKind};
    use std::time::Duration;

    #[test]
    fn roundtrip_table_layout() {
        let report = RoundTripReport {
            spec: FunctionSpec::exp(1.0).unwrap(),
            kind: InverseKind::LaplaceKernel,
            contour: Contour::rectangle(-1.5, -0.5, 1.0, 0.5).unwrap(),
            rows: vec![Row::new(-1.0, 2.5, 2.0), Row::new(0.0, 1.0, 1.0)],
            max_abs_err: 0.5,
            max_rel_err: 0.2,
            passed: false,
            tolerance: 1e-6,
            converged: true,
            wall_time: Duration::from_millis(3),
        };
        assert_eq!(
            roundtrip_csv(&report),
            "arg,truth,recovered,abs_err,rel_err\n-1,2.5,2,0.5,0.2\n0,1,1,0,0\n"
        );
        let j = roundtrip_json(&report);
        assert_eq!(j["kind"], "laplace");
        assert_eq!(j["contour"]["shape"], "rectangle");
        assert_eq!(j["rows"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn numbers_round_trip() {
        for v in [
            0.0,
            -0.0,
            1.0,
            0.5,
            1e-5,
            9.99e-6,
            2.6411212616455816e-16,
            1e16,
            -7.389056098930653,
            123456.789,
        ] {
            assert_eq!(num(v).parse::<f64>().unwrap().to_bits(), v.to_bits(), "{v}");
        }
        assert_eq!(num(2.5e-16), "2.5e-16");
        assert_eq!(num(0.25), "0.25");
    }

    #[test]
    fn empty_tables_keep_their_header() {
        assert_eq!(transform_csv(&[]), format!("{TRANSFORM_HEADER}\n"));
        assert_eq!(invert_csv(&[]), format!("{INVERT_HEADER}\n"));
    }

    #[test]
    fn transform_rows() {
        let rows = [TransformRow {
            z: Complex64::new(1.0, -2.0),
            value: Complex64::new(0.5, 0.25),
            err_est: 1e-15,
            converged: true,
        }];
        assert_eq!(
            transform_csv(&rows),
            "re_z,im_z,re_val,im_val,err_est\n1,-2,0.5,0.25,1e-15\n"
        );
    }

    #[test]
    fn delta_table_leaves_first_delta_blank() {
        let t = ConvergenceTable::new("T", vec![20.0, 40.0], vec![0.5, 0.75], Some(1.0)).unwrap();
        assert_eq!(
            delta_csv(&t),
            "T,value,abs_err,delta\n20,0.5,0.5,\n40,0.75,0.25,0.25\n"
        );
    }
}
