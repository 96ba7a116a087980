use std::collections::{BTreeSet, HashMap, HashSet};
use std::io::Read;

use serde_json::Value;

use super::*;

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Two-value label alphabet for raw data; inferred from the data when `None`.
    pub labels: Option<[String; 2]>,
    /// Column holding participant ids. Falls back to `participant` when that column exists.
    pub participant_column: Option<String>,
}

/// A cell from either source format, before typing.
enum Cell<'a> {
    Text(&'a str),
    Bool(bool),
    Number(&'a serde_json::Number),
    Null,
}

struct Row<'a> {
    record: usize,
    line: Option<u64>,
    cells: HashMap<&'a str, Cell<'a>>,
}

impl<'a> Row<'a> {
    fn error(&self, message: impl Into<String>) -> IngestError {
        IngestError::Parse {
            record: self.record,
            line: self.line,
            message: message.into(),
        }
    }

    fn cell(&self, col: &str) -> Result<&Cell<'a>, IngestError> {
        self.cells
            .get(col)
            .ok_or_else(|| self.error(format!("missing field {col:?}")))
    }

    fn text(&self, col: &str) -> Result<String, IngestError> {
        let s = match self.cell(col)? {
            Cell::Text(s) => s.to_string(),
            Cell::Number(n) => n.to_string(),
            Cell::Bool(_) | Cell::Null => {
                return Err(self.error(format!("field {col:?} must be text")))
            }
        };
        if s.is_empty() {
            return Err(self.error(format!("field {col:?} is empty")));
        }
        Ok(s)
    }

    fn optional_text(&self, col: Option<&str>) -> Result<Option<String>, IngestError> {
        match col {
            Some(c) if self.cells.contains_key(c) => self.text(c).map(Some),
            _ => Ok(None),
        }
    }

    fn flag(&self, col: &str) -> Result<bool, IngestError> {
        let bad = || self.error(format!("field {col:?} must be 0 or 1"));
        match self.cell(col)? {
            Cell::Text("0") => Ok(false),
            Cell::Text("1") => Ok(true),
            Cell::Bool(b) => Ok(*b),
            Cell::Number(n) => match n.as_u64() {
                Some(0) => Ok(false),
                Some(1) => Ok(true),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }

    fn label(&self, col: &str) -> Result<String, IngestError> {
        let s = match self.cell(col)? {
            Cell::Text(s) => s.to_string(),
            Cell::Number(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        };
        if s.is_empty() {
            // No abstain cell exists in the adherence/override taxonomy.
            return Err(self.error(format!("field {col:?} is empty; missing decisions are rejected")));
        }
        Ok(s)
    }
}

fn participant_column<'h>(
    options: &'h ParseOptions,
    columns: impl IntoIterator<Item = &'h str>,
) -> Option<&'h str> {
    match options.participant_column.as_deref() {
        Some(c) => Some(c),
        None => columns
            .into_iter()
            .find(|&c| c == DEFAULT_PARTICIPANT_COLUMN)
            .map(|_| DEFAULT_PARTICIPANT_COLUMN),
    }
}

fn required_columns(schema: Schema) -> &'static [&'static str] {
    match schema {
        Schema::Derived => &[COL_CONDITION, COL_TRIAL, COL_AI_CORRECT, COL_ADHERED],
        Schema::Raw => &[
            COL_CONDITION,
            COL_TRIAL,
            COL_AI_DECISION,
            COL_HUMAN_DECISION,
            COL_GROUND_TRUTH,
        ],
    }
}

/// Parses a dataset in either schema into trial records, preserving row order.
pub fn parse_dataset<R: Read>(
    source: R,
    format: Format,
    schema: Schema,
    options: &ParseOptions,
) -> Result<Vec<TrialRecord>, IngestError> {
    let records = match schema {
        Schema::Derived => with_rows(source, format, schema, options, |row, participant| {
            Ok(TrialRecord {
                condition_id: row.text(COL_CONDITION)?,
                trial_id: row.text(COL_TRIAL)?,
                ai_correct: row.flag(COL_AI_CORRECT)?,
                adhered: row.flag(COL_ADHERED)?,
                participant: row.optional_text(participant)?,
            })
        })?,
        Schema::Raw => {
            let raw = raw_rows(source, format, options)?;
            check_alphabet(&raw, options)?;
            raw.iter().map(RawDecisionRecord::to_trial).collect()
        }
    };
    check_unique(&records)?;
    Ok(records)
}

/// Parses a raw-schema dataset without reducing it, validating the label alphabet.
pub fn parse_raw_decisions<R: Read>(
    source: R,
    format: Format,
    options: &ParseOptions,
) -> Result<Vec<RawDecisionRecord>, IngestError> {
    let raw = raw_rows(source, format, options)?;
    check_alphabet(&raw, options)?;
    Ok(raw)
}

fn raw_rows<R: Read>(
    source: R,
    format: Format,
    options: &ParseOptions,
) -> Result<Vec<RawDecisionRecord>, IngestError> {
    with_rows(source, format, Schema::Raw, options, |row, participant| {
        Ok(RawDecisionRecord {
            condition_id: row.text(COL_CONDITION)?,
            trial_id: row.text(COL_TRIAL)?,
            ai_decision: row.label(COL_AI_DECISION)?,
            human_decision: row.label(COL_HUMAN_DECISION)?,
            ground_truth: row.label(COL_GROUND_TRUTH)?,
            participant: row.optional_text(participant)?,
        })
    })
}

fn with_rows<R: Read, T>(
    mut source: R,
    format: Format,
    schema: Schema,
    options: &ParseOptions,
    mut convert: impl FnMut(&Row<'_>, Option<&str>) -> Result<T, IngestError>,
) -> Result<Vec<T>, IngestError> {
    let required = required_columns(schema);
    match format {
        Format::Csv => {
            let mut reader = csv::ReaderBuilder::new()
                .trim(csv::Trim::All)
                .from_reader(source);
            let header_error = |message: String| IngestError::Parse {
                record: 0,
                line: Some(1),
                message,
            };
            let headers = reader
                .headers()
                .map_err(|e| header_error(e.to_string()))?
                .clone();
            for col in required {
                if !headers.iter().any(|h| h == *col) {
                    return Err(header_error(format!("header is missing column {col:?}")));
                }
            }
            let participant = participant_column(options, headers.iter());
            let mut out = Vec::new();
            for (i, result) in reader.records().enumerate() {
                let record = i + 1;
                let row = result.map_err(|e| IngestError::Parse {
                    record,
                    line: e.position().map(|p| p.line()),
                    message: e.to_string(),
                })?;
                let cells = headers
                    .iter()
                    .zip(row.iter())
                    .map(|(h, v)| (h, Cell::Text(v)))
                    .collect();
                let row_view = Row {
                    record,
                    line: row.position().map(|p| p.line()),
                    cells,
                };
                out.push(convert(&row_view, participant)?);
            }
            Ok(out)
        }
        Format::Json => {
            let mut text = String::new();
            source.read_to_string(&mut text)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| IngestError::Parse {
                record: 0,
                line: Some(e.line() as u64),
                message: e.to_string(),
            })?;
            let items = value.as_array().ok_or(IngestError::Parse {
                record: 0,
                line: None,
                message: "expected a JSON array of objects".into(),
            })?;
            let mut out = Vec::with_capacity(items.len());
            for (i, item) in items.iter().enumerate() {
                let record = i + 1;
                let obj = item.as_object().ok_or(IngestError::Parse {
                    record,
                    line: None,
                    message: "expected an object".into(),
                })?;
                let cells = obj
                    .iter()
                    .map(|(k, v)| {
                        let cell = match v {
                            Value::String(s) => Cell::Text(s),
                            Value::Bool(b) => Cell::Bool(*b),
                            Value::Number(n) => Cell::Number(n),
                            _ => Cell::Null,
                        };
                        (k.as_str(), cell)
                    })
                    .collect();
                let row_view = Row {
                    record,
                    line: None,
                    cells,
                };
                let participant = participant_column(options, obj.keys().map(String::as_str));
                out.push(convert(&row_view, participant)?);
            }
            Ok(out)
        }
    }
}

fn check_alphabet(raw: &[RawDecisionRecord], options: &ParseOptions) -> Result<(), IngestError> {
    let mut alphabet: BTreeSet<String> = options.labels.iter().flatten().cloned().collect();
    let declared = options.labels.is_some();
    for (i, r) in raw.iter().enumerate() {
        for label in [&r.ai_decision, &r.human_decision, &r.ground_truth] {
            if alphabet.contains(label) {
                continue;
            }
            if declared || alphabet.len() == 2 {
                return Err(IngestError::Label {
                    record: i + 1,
                    label: label.clone(),
                    alphabet: alphabet.into_iter().collect(),
                });
            }
            alphabet.insert(label.clone());
        }
    }
    Ok(())
}

fn check_unique(records: &[TrialRecord]) -> Result<(), IngestError> {
    let mut seen = HashSet::with_capacity(records.len());
    for r in records {
        if !seen.insert((r.condition_id.as_str(), r.trial_id.as_str())) {
            return Err(IngestError::DuplicateTrial {
                condition: r.condition_id.clone(),
                trial: r.trial_id.clone(),
            });
        }
    }
    Ok(())
}
