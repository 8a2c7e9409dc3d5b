//! Report serialization: JSON, CSV, and human-readable text share the
//! same numeric strings, and a re-run with identical configuration
//! produces byte-identical machine output. Wall-clock timing therefore
//! goes to stderr; the `elapsed_ms` field in reports is fixed at 0.

use std::collections::BTreeMap;

use serde::Serialize;

use qzeta::{bound_string, decimal_string, BoundedValue, IdentityReport, RelationCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format '{}'", other)),
        }
    }
}

/// One value with its certified bound, rendered at the target digits.
#[derive(Debug, Clone, Serialize)]
pub struct ValueEntry {
    pub value: String,
    pub error_bound: String,
}

pub fn value_entry(v: &BoundedValue, digits: u32) -> ValueEntry {
    ValueEntry {
        value: decimal_string(v.value(), digits as usize),
        error_bound: bound_string(v.bound()),
    }
}

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub command: String,
    pub version: String,
    pub params: BTreeMap<String, String>,
    pub value: serde_json::Value,
    pub error_bound: serde_json::Value,
    pub digits: u32,
    pub elapsed_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct IdentityLine {
    pub identity: String,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub residual_bound: String,
    pub tolerance: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
}

pub fn identity_line(r: &IdentityReport, digits: u32) -> IdentityLine {
    IdentityLine {
        identity: r.identity.clone(),
        params: r.params.clone(),
        lhs: decimal_string(r.lhs.value(), digits as usize),
        rhs: decimal_string(r.rhs.value(), digits as usize),
        residual: decimal_string(r.residual.value(), 8),
        residual_bound: bound_string(r.residual.bound()),
        tolerance: bound_string(&r.tolerance),
        verdict: r.verdict.to_string(),
        exact: r.exact,
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub command: String,
    pub version: String,
    pub params: BTreeMap<String, String>,
    pub digits: u32,
    pub reports: Vec<IdentityLine>,
    pub all_pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct CertificateLine {
    pub status: String,
    pub coefficients: Option<Vec<String>>,
    pub residual: String,
    pub residual_bound: String,
    pub coefficient_bound: String,
    pub digits_used: u32,
}

pub fn certificate_line(c: &RelationCertificate) -> CertificateLine {
    CertificateLine {
        status: c.status.to_string(),
        coefficients: c
            .coefficients
            .as_ref()
            .map(|v| v.iter().map(|x| x.to_string()).collect()),
        residual: decimal_string(c.residual.value(), 8),
        residual_bound: bound_string(c.residual.bound()),
        coefficient_bound: c.coefficient_bound.to_string(),
        digits_used: c.digits_used,
    }
}

#[derive(Debug, Serialize)]
pub struct RelateReport {
    pub command: String,
    pub version: String,
    pub params: BTreeMap<String, String>,
    pub labels: Vec<String>,
    pub certificate: CertificateLine,
    pub elapsed_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct DimensionLine {
    pub b: u64,
    pub phi: u64,
    pub disjoint_lower_bound: u64,
    pub kappa_bracket: [u64; 2],
    pub conjectured: u64,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct DimensionsReport {
    pub command: String,
    pub version: String,
    pub params: BTreeMap<String, String>,
    pub report: DimensionLine,
    pub elapsed_ms: u64,
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub trait Render {
    fn to_json(&self) -> String;
    fn to_csv(&self) -> String;
    fn to_text(&self) -> String;

    fn render(&self, fmt: Format) -> String {
        match fmt {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

impl Render for EvalReport {
    fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialize") + "\n"
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("command,key,value,error_bound,digits,elapsed_ms\n");
        match (&self.value, &self.error_bound) {
            (serde_json::Value::Object(vals), serde_json::Value::Object(errs)) => {
                for (k, v) in vals {
                    let e = errs.get(k).and_then(|x| x.as_str()).unwrap_or("");
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        csv_escape(&self.command),
                        k,
                        v.as_str().unwrap_or(""),
                        e,
                        self.digits,
                        self.elapsed_ms
                    ));
                }
            }
            _ => {
                out.push_str(&format!(
                    "{},value,{},{},{},{}\n",
                    csv_escape(&self.command),
                    self.value.as_str().unwrap_or(""),
                    self.error_bound.as_str().unwrap_or(""),
                    self.digits,
                    self.elapsed_ms
                ));
            }
        }
        out
    }

    fn to_text(&self) -> String {
        let mut out = format!("{} (digits = {})\n", self.command, self.digits);
        for (k, v) in &self.params {
            out.push_str(&format!("  {} = {}\n", k, v));
        }
        match (&self.value, &self.error_bound) {
            (serde_json::Value::Object(vals), serde_json::Value::Object(errs)) => {
                for (k, v) in vals {
                    out.push_str(&format!(
                        "  {} = {}  (+- {})\n",
                        k,
                        v.as_str().unwrap_or(""),
                        errs.get(k).and_then(|x| x.as_str()).unwrap_or("")
                    ));
                }
            }
            _ => {
                out.push_str(&format!(
                    "  value = {}  (+- {})\n",
                    self.value.as_str().unwrap_or(""),
                    self.error_bound.as_str().unwrap_or("")
                ));
            }
        }
        out
    }
}

impl Render for VerifyReport {
    fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialize") + "\n"
    }

    fn to_csv(&self) -> String {
        let mut out =
            String::from("identity,params,lhs,rhs,residual,residual_bound,tolerance,verdict,exact\n");
        for r in &self.reports {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                csv_escape(&r.identity),
                csv_escape(&r.params),
                r.lhs,
                r.rhs,
                r.residual,
                r.residual_bound,
                r.tolerance,
                r.verdict,
                r.exact.map(|b| b.to_string()).unwrap_or_default()
            ));
        }
        out
    }

    fn to_text(&self) -> String {
        let mut out = format!("{} (digits = {})\n", self.command, self.digits);
        for r in &self.reports {
            out.push_str(&format!(
                "  [{}] {} {}: residual {} (tol {}){}\n",
                r.verdict,
                r.identity,
                r.params,
                r.residual,
                r.tolerance,
                r.exact.map(|b| format!(" exact={}", b)).unwrap_or_default()
            ));
        }
        out.push_str(&format!("all_pass: {}\n", self.all_pass));
        out
    }
}

impl Render for RelateReport {
    fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialize") + "\n"
    }

    fn to_csv(&self) -> String {
        let c = &self.certificate;
        let mut out = String::from(
            "command,status,coefficients,residual,residual_bound,coefficient_bound,digits_used\n",
        );
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_escape(&self.command),
            c.status,
            csv_escape(
                &c.coefficients
                    .as_ref()
                    .map(|v| v.join(" "))
                    .unwrap_or_default()
            ),
            c.residual,
            c.residual_bound,
            c.coefficient_bound,
            c.digits_used
        ));
        out
    }

    fn to_text(&self) -> String {
        let c = &self.certificate;
        let mut out = format!("{}\n", self.command);
        out.push_str(&format!("  basis: {}\n", self.labels.join(", ")));
        out.push_str(&format!("  status: {}\n", c.status));
        if let Some(co) = &c.coefficients {
            out.push_str(&format!("  coefficients: [{}]\n", co.join(", ")));
        }
        out.push_str(&format!(
            "  residual: {} (+- {}), bound {}, digits {}\n",
            c.residual, c.residual_bound, c.coefficient_bound, c.digits_used
        ));
        out
    }
}

impl Render for DimensionsReport {
    fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialize") + "\n"
    }

    fn to_csv(&self) -> String {
        let r = &self.report;
        format!(
            "b,phi,disjoint_lower_bound,kappa_bracket_lo,kappa_bracket_hi,conjectured\n{},{},{},{},{},{}\n",
            r.b, r.phi, r.disjoint_lower_bound, r.kappa_bracket[0], r.kappa_bracket[1], r.conjectured
        )
    }

    fn to_text(&self) -> String {
        let r = &self.report;
        let mut out = format!("dimension bounds for b = {} (phi = {})\n", r.b, r.phi);
        out.push_str(&format!(
            "  linearly disjoint case: dim >= {} (theorem-backed)\n",
            r.disjoint_lower_bound
        ));
        out.push_str(&format!(
            "  kappa-in-field case: {} <= dim <= {} (theorem-backed)\n",
            r.kappa_bracket[0], r.kappa_bracket[1]
        ));
        out.push_str(&format!("  conjectured (disjoint): {}\n", r.conjectured));
        for n in &r.notes {
            out.push_str(&format!("  note: {}\n", n));
        }
        out
    }
}
