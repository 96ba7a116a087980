use std::io::Write;

use serde::Serialize;

use super::{Format, IngestError, TrialRecord, DEFAULT_PARTICIPANT_COLUMN};

#[derive(Serialize)]
struct DerivedRow<'a> {
    condition: &'a str,
    trial: &'a str,
    ai_correct: bool,
    adhered: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    participant: Option<&'a str>,
}

/// Writes records in the derived schema. CSV flags are `0`/`1`, JSON flags are booleans,
/// and a participant column is emitted only when some record carries one.
pub fn write_dataset<W: Write>(
    records: &[TrialRecord],
    mut out: W,
    format: Format,
) -> Result<(), IngestError> {
    let with_participant = records.iter().any(|r| r.participant.is_some());
    match format {
        Format::Csv => {
            let mut header = vec!["condition", "trial", "ai_correct", "adhered"];
            if with_participant {
                header.push(DEFAULT_PARTICIPANT_COLUMN);
            }
            let mut writer = csv::WriterBuilder::new().from_writer(out);
            let csv_err = |e: csv::Error| IngestError::Io(std::io::Error::other(e));
            writer.write_record(&header).map_err(csv_err)?;
            for r in records {
                let flag = |b: bool| if b { "1" } else { "0" };
                let mut row = vec![
                    r.condition_id.as_str(),
                    r.trial_id.as_str(),
                    flag(r.ai_correct),
                    flag(r.adhered),
                ];
                if with_participant {
                    row.push(r.participant.as_deref().unwrap_or(""));
                }
                writer.write_record(&row).map_err(csv_err)?;
            }
            writer.flush()?;
        }
        Format::Json => {
            out.write_all(b"[")?;
            for (i, r) in records.iter().enumerate() {
                let row = DerivedRow {
                    condition: &r.condition_id,
                    trial: &r.trial_id,
                    ai_correct: r.ai_correct,
                    adhered: r.adhered,
                    participant: r.participant.as_deref(),
                };
                out.write_all(if i == 0 { b"\n  " } else { b",\n  " })?;
                serde_json::to_writer(&mut out, &row).map_err(std::io::Error::from)?;
            }
            out.write_all(b"\n]\n")?;
        }
    }
    Ok(())
}
