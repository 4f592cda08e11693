//! JSON document formats: 2-local instance documents and the reports shared
//! by the library and the command-line tool.
//!
//! All numeric payloads (coefficients, scalars) are serialized as exact
//! strings in the element grammar, never as floats; window sizes and
//! dimensions are plain integers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::derivation::{Derivation, Window};
use crate::error::Error;
use crate::exprio::{parse_element, print_element};
use crate::twolocal::TwoLocalInstance;

/// A (point, value) row of an instance document, both in element text.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableRowDoc {
    pub point: String,
    pub value: String,
}

/// The on-disk form of a `TwoLocalInstance`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceDoc {
    pub window: i64,
    pub interior: i64,
    pub table: Vec<TableRowDoc>,
}

impl InstanceDoc {
    pub fn from_instance(inst: &TwoLocalInstance) -> Self {
        InstanceDoc {
            window: inst.window().radius(),
            interior: inst.window().interior(),
            table: inst
                .table()
                .iter()
                .map(|(p, v)| TableRowDoc { point: print_element(p), value: print_element(v) })
                .collect(),
        }
    }

    /// Validates the document and builds the instance it describes.
    pub fn to_instance(&self) -> Result<TwoLocalInstance, Error> {
        load_instance(&self.to_json())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable document")
    }
}

fn schema_err(path: &str, detail: impl Into<String>) -> Error {
    Error::Schema { path: path.to_string(), detail: detail.into() }
}

fn required_integer(obj: &serde_json::Map<String, Value>, field: &str) -> Result<i64, Error> {
    let path = format!("/{field}");
    match obj.get(field) {
        None => Err(schema_err(&path, "missing field")),
        Some(Value::Number(n)) => {
            n.as_i64().ok_or_else(|| schema_err(&path, "expected an integer"))
        }
        Some(_) => Err(schema_err(&path, "expected an integer")),
    }
}

/// Parses and validates an instance document from JSON text. Schema errors
/// carry the JSON path of the offending field.
pub fn load_instance(json: &str) -> Result<TwoLocalInstance, Error> {
    let value: Value =
        serde_json::from_str(json).map_err(|e| schema_err("/", format!("invalid JSON: {e}")))?;
    let obj = value.as_object().ok_or_else(|| schema_err("/", "expected an object"))?;
    let radius = required_integer(obj, "window")?;
    let interior = required_integer(obj, "interior")?;
    let window = Window::new(radius, interior)
        .map_err(|e| schema_err("/interior", e.to_string()))?;
    let rows = match obj.get("table") {
        None => return Err(schema_err("/table", "missing field")),
        Some(Value::Array(rows)) => rows,
        Some(_) => return Err(schema_err("/table", "expected an array")),
    };
    let mut table = Vec::with_capacity(rows.len());
    for (idx, row) in rows.iter().enumerate() {
        let row_obj = row
            .as_object()
            .ok_or_else(|| schema_err(&format!("/table/{idx}"), "expected an object"))?;
        let field = |name: &str| -> Result<String, Error> {
            match row_obj.get(name) {
                Some(Value::String(s)) => Ok(s.clone()),
                Some(_) => Err(schema_err(&format!("/table/{idx}/{name}"), "expected a string")),
                None => Err(schema_err(&format!("/table/{idx}/{name}"), "missing field")),
            }
        };
        let point_text = field("point")?;
        let value_text = field("value")?;
        let point = parse_element(&point_text)
            .map_err(|e| schema_err(&format!("/table/{idx}/point"), e.to_string()))?;
        let value = parse_element(&value_text)
            .map_err(|e| schema_err(&format!("/table/{idx}/value"), e.to_string()))?;
        table.push((point, value));
    }
    TwoLocalInstance::new(window, table)
}

/// Serializes an instance back to document form.
pub fn save_instance(inst: &TwoLocalInstance) -> String {
    InstanceDoc::from_instance(inst).to_json()
}

/// Serializes any report to its published JSON form; the field order is
/// fixed by the report structs, so equal reports serialize byte-identically.
pub fn save_report<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("serializable report")
}

/// Window parameters as they appear in reports.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WindowDoc {
    pub radius: i64,
    pub interior: i64,
}

impl From<&Window> for WindowDoc {
    fn from(w: &Window) -> Self {
        WindowDoc { radius: w.radius(), interior: w.interior() }
    }
}

/// A derivation in text form: inner element plus outer coefficient.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DerivationText {
    pub inner: String,
    pub outer: String,
}

impl From<&Derivation> for DerivationText {
    fn from(d: &Derivation) -> Self {
        DerivationText {
            inner: print_element(d.inner()),
            outer: d.outer_coeff().to_string(),
        }
    }
}

/// Report of one lemma-replay run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReplayReport {
    /// Which replay ran: "3.1i", "3.1ii", "3.2", "3.3", "3.4" or "3.5".
    pub check: String,
    pub window: WindowDoc,
    /// Replay parameters, stringified for stability.
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    /// Case label taken by the 3.5 replay, absent elsewhere.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    /// Named dimensions measured during the replay.
    pub dimensions: BTreeMap<String, usize>,
    /// Basis of the computed derivation space, when one is reported.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivation_basis: Option<Vec<DerivationText>>,
    /// Basis of the computed value space, when one is reported.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_basis: Option<Vec<String>>,
    pub notes: Vec<String>,
}

/// Report of a derivation-space solve. Each interior basis map is listed by
/// its nonzero images, generator text to element text.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerSolveReport {
    pub degree: i64,
    pub window: WindowDoc,
    pub window_dimension: usize,
    pub interior_dimension: usize,
    pub expected_interior_dimension: usize,
    pub matches_known_span: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contains_outer_d: Option<bool>,
    pub interior_basis: Vec<BTreeMap<String, String>>,
}

impl DerSolveReport {
    pub fn from_space(space: &crate::solver::DerivationSpace) -> Self {
        DerSolveReport {
            degree: space.degree,
            window: WindowDoc::from(&space.window),
            window_dimension: space.window_dimension(),
            interior_dimension: space.interior_dimension,
            expected_interior_dimension: if space.degree == 0 { 5 } else { 4 },
            matches_known_span: space.matches_known_span,
            contains_outer_d: space.contains_outer_d,
            interior_basis: space
                .interior_basis
                .iter()
                .map(|map| {
                    map.images()
                        .map(|(g, img)| (g.to_string(), print_element(img)))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Report of a successful extraction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtractReport {
    pub window: WindowDoc,
    pub derivation: DerivationText,
    pub points_checked: usize,
    pub homogeneity_ok: bool,
}

/// Report of a bracket computation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketReport {
    pub x: String,
    pub y: String,
    pub bracket: String,
}

/// Machine-readable error payload.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorReport {
    pub code: String,
    pub message: String,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport { code: e.code().to_string(), message: e.to_string() }
    }
}
