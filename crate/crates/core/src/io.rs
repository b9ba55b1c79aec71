//! The `frc v1` text format for codes and key=value / JSON renderings of
//! reports.
//!
//! ```text
//! frc v1 n=3 d=2 theta=3 rho=2
//! 1 2
//! 2 3
//! 1 3
//! ```
//!
//! The header may end with ` k=<k>`. Body lines hold the 1-based elements of
//! one subset in ascending order, separated by single spaces. Trailing
//! whitespace on a line and trailing blank lines are ignored.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::code::FrCode;
use crate::params::{FeasibilityReport, Parameters};
use crate::subset::Subset;
use crate::verify::VerificationReport;

pub const MAGIC: &str = "frc";
pub const VERSION: &str = "v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: {reason}")]
    CountMismatch { line: usize, reason: String },
    #[error("line {line}: element {element} outside 1..={theta}")]
    ElementOutOfRange { line: usize, element: u64, theta: u64 },
    #[error("line {line}: element {element} repeated")]
    DuplicateElementInLine { line: usize, element: u64 },
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::MalformedHeader { line, .. }
            | ParseError::CountMismatch { line, .. }
            | ParseError::ElementOutOfRange { line, .. }
            | ParseError::DuplicateElementInLine { line, .. }
            | ParseError::MalformedLine { line, .. } => *line,
        }
    }
}

/// A parsed code file: the header parameters and the subsets in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeDocument {
    pub header: Parameters,
    pub body: Vec<Subset>,
}

impl CodeDocument {
    pub fn into_code(self) -> FrCode {
        FrCode::new(self.header, self.body).expect("parser checks theta")
    }
}

impl From<&FrCode> for CodeDocument {
    fn from(code: &FrCode) -> Self {
        CodeDocument { header: *code.params(), body: code.sets().to_vec() }
    }
}

pub fn render_header(params: &Parameters) -> String {
    let mut out = format!(
        "{MAGIC} {VERSION} n={} d={} theta={} rho={}",
        params.n(),
        params.d(),
        params.theta(),
        params.rho()
    );
    if let Some(k) = params.k() {
        write!(out, " k={k}").unwrap();
    }
    out
}

pub fn render_document(doc: &CodeDocument) -> String {
    let mut out = render_header(&doc.header);
    out.push('\n');
    for set in &doc.body {
        writeln!(out, "{set}").unwrap();
    }
    out
}

pub fn render_code(code: &FrCode) -> String {
    render_document(&CodeDocument::from(code))
}

/// Strict decimal: ASCII digits only, no sign, no leading zeros.
fn parse_decimal(token: &str) -> Option<u64> {
    let canonical = !token.is_empty()
        && token.bytes().all(|b| b.is_ascii_digit())
        && (token == "0" || !token.starts_with('0'));
    if canonical {
        token.parse().ok()
    } else {
        None
    }
}

fn parse_header(line: &str) -> Result<Parameters, ParseError> {
    let malformed = |reason: String| ParseError::MalformedHeader { line: 1, reason };
    let mut tokens = line.split(' ');
    if tokens.next() != Some(MAGIC) || tokens.next() != Some(VERSION) {
        return Err(malformed(format!("expected `{MAGIC} {VERSION}`")));
    }
    let mut field = |key: &str, required: bool| -> Result<Option<u64>, ParseError> {
        let Some(token) = tokens.next() else {
            return if required { Err(malformed(format!("missing {key}="))) } else { Ok(None) };
        };
        let value = token
            .strip_prefix(key)
            .and_then(|t| t.strip_prefix('='))
            .ok_or_else(|| malformed(format!("expected {key}=<value>, found `{token}`")))?;
        match parse_decimal(value) {
            Some(v) if v > 0 => Ok(Some(v)),
            _ => Err(malformed(format!("{key} must be a positive integer, found `{value}`"))),
        }
    };
    let n = field("n", true)?.unwrap();
    let d = field("d", true)?.unwrap();
    let theta = field("theta", true)?.unwrap();
    let rho = field("rho", true)?.unwrap();
    let k = field("k", false)?;
    if let Some(extra) = tokens.next() {
        return Err(malformed(format!("unexpected `{extra}`")));
    }
    if u32::try_from(theta).is_err() {
        return Err(malformed(format!("theta={theta} too large")));
    }
    Parameters::new(n, d, theta, rho)
        .and_then(|p| p.with_k(k))
        .map_err(|e| malformed(e.to_string()))
}

fn parse_body_line(line_no: usize, line: &str, header: &Parameters) -> Result<Subset, ParseError> {
    let theta = header.theta();
    let tokens: Vec<&str> = if line.is_empty() { Vec::new() } else { line.split(' ').collect() };
    if tokens.len() as u64 != header.d() {
        return Err(ParseError::CountMismatch {
            line: line_no,
            reason: format!("expected d={} elements, found {}", header.d(), tokens.len()),
        });
    }
    let mut elements = Vec::with_capacity(tokens.len());
    for token in tokens {
        let element = parse_decimal(token).ok_or_else(|| ParseError::MalformedLine {
            line: line_no,
            reason: format!("`{token}` is not an element"),
        })?;
        if element == 0 || element > theta {
            return Err(ParseError::ElementOutOfRange { line: line_no, element, theta });
        }
        if elements.contains(&element) {
            return Err(ParseError::DuplicateElementInLine { line: line_no, element });
        }
        elements.push(element);
    }
    if elements.windows(2).any(|w| w[0] > w[1]) {
        return Err(ParseError::MalformedLine {
            line: line_no,
            reason: "elements must be in ascending order".into(),
        });
    }
    Ok(Subset::new(theta as u32, elements).expect("elements validated"))
}

pub fn parse_code(text: &str) -> Result<CodeDocument, ParseError> {
    let mut lines: Vec<&str> = text.split('\n').map(str::trim_end).collect();
    while lines.last() == Some(&"") {
        lines.pop();
    }
    let Some((first, rest)) = lines.split_first() else {
        return Err(ParseError::MalformedHeader { line: 1, reason: "empty input".into() });
    };
    let header = parse_header(first)?;
    if rest.len() as u64 > header.n() {
        return Err(ParseError::CountMismatch {
            line: header.n() as usize + 2,
            reason: format!("header says n={} but the body has {} lines", header.n(), rest.len()),
        });
    }
    let body = rest
        .iter()
        .enumerate()
        .map(|(i, line)| parse_body_line(i + 2, line, &header))
        .collect::<Result<Vec<_>, _>>()?;
    if (body.len() as u64) < header.n() {
        return Err(ParseError::CountMismatch {
            line: body.len() + 2,
            reason: format!("header says n={} but the body has {} lines", header.n(), body.len()),
        });
    }
    Ok(CodeDocument { header, body })
}

/// Either kind of report, for [`render_report`].
#[derive(Debug, Clone, Copy)]
pub enum Report<'a> {
    Feasibility(&'a FeasibilityReport),
    Verification(&'a VerificationReport),
}

fn render_feasibility_text(r: &FeasibilityReport) -> String {
    format!(
        "feasible={} omega={} a={} g={} balance_ok={} capacity_ok={}\n",
        r.feasible, r.omega_pair.omega, r.omega_pair.a, r.g, r.balance_ok, r.capacity_ok
    )
}

fn render_verification_text(r: &VerificationReport) -> String {
    let mut out = format!(
        "valid={} count_ok={} cardinality_ok={} distinct_ok={} coverage_ok={}\ncoverage",
        r.valid, r.count_ok, r.cardinality_ok, r.distinct_ok, r.coverage_ok
    );
    for (element, count) in &r.coverage_histogram {
        write!(out, " {element}={count}").unwrap();
    }
    out.push('\n');
    out
}

pub fn render_report(report: Report<'_>, format: Format) -> String {
    match (report, format) {
        (Report::Feasibility(r), Format::Text) => render_feasibility_text(r),
        (Report::Verification(r), Format::Text) => render_verification_text(r),
        (Report::Feasibility(r), Format::Json) => to_json_line(r),
        (Report::Verification(r), Format::Json) => to_json_line(r),
    }
}

#[derive(Serialize)]
struct CodeJson<'a> {
    params: &'a Parameters,
    sets: Vec<Vec<u64>>,
}

/// `{"params":{...},"sets":[[...],...]}` on one line.
pub fn code_to_json(code: &FrCode) -> String {
    let sets = code.sets().iter().map(|s| s.elements().collect()).collect();
    to_json_line(&CodeJson { params: code.params(), sets })
}

/// Compact JSON followed by a newline.
pub fn to_json_line<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = serde_json::to_string(value).expect("serializable");
    out.push('\n');
    out
}
