use std::io::Read;

use serde::Serialize;

use super::{encode_rank, MedalWord};
use crate::error::{Error, Result};
use crate::exact::{Dyadic, RoundingMode};
use crate::par::{self, Execution};

/// One ranked line of a medal table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedRow {
    pub label: String,
    pub word: MedalWord,
    pub rank: Dyadic,
    pub binary: String,
    pub decimal: String,
}

impl RankedRow {
    pub fn new(label: impl Into<String>, word: MedalWord, digits: usize) -> Self {
        let rank = encode_rank(&word);
        RankedRow {
            label: label.into(),
            binary: rank.to_binary_string(),
            decimal: rank.to_decimal_string(digits, RoundingMode::Truncate),
            word,
            rank,
        }
    }
}

/// Medal records read from CSV, with the count column names from the header.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MedalSheet {
    pub classes: Vec<String>,
    pub records: Vec<(String, MedalWord)>,
}

/// Ranks every row and sorts by descending rank, ties by ascending label.
pub fn build_table(rows: &[(String, MedalWord)], digits: usize) -> Vec<RankedRow> {
    build_table_with(rows, digits, Execution::default())
}

pub fn build_table_with(
    rows: &[(String, MedalWord)],
    digits: usize,
    exec: Execution,
) -> Vec<RankedRow> {
    let mut ranked = par::map(rows, exec, |(label, word)| {
        RankedRow::new(label.clone(), word.clone(), digits)
    });
    ranked.sort_by(|a, b| b.rank.cmp(&a.rank).then_with(|| a.label.cmp(&b.label)));
    ranked
}

/// Reads `country,c1,c2,...` CSV. Rows may carry fewer or more count
/// columns than the header; missing counts are zero. An empty stream yields
/// an empty sheet.
pub fn ingest_csv<R: Read>(reader: R) -> Result<MedalSheet> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();
    let header = match records.next() {
        None => return Ok(MedalSheet::default()),
        Some(h) => h.map_err(csv_error)?,
    };
    if header.len() < 2 {
        return Err(Error::Csv {
            line: 1,
            message: "header needs a label column and at least one count column".into(),
        });
    }
    let classes = header.iter().skip(1).map(str::to_owned).collect();
    let mut sheet = MedalSheet {
        classes,
        records: Vec::new(),
    };
    for record in records {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let mut fields = record.iter();
        let label = fields.next().unwrap_or_default().to_owned();
        let counts = fields
            .enumerate()
            .map(|(col, field)| parse_count(field, line, col + 2))
            .collect::<Result<Vec<u64>>>()?;
        sheet.records.push((label, MedalWord::new(counts)));
    }
    Ok(sheet)
}

fn parse_count(field: &str, line: u64, column: usize) -> Result<u64> {
    if let Some(digits) = field.strip_prefix('-') {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Domain(format!(
                "line {line}, column {column}: negative medal count {field}"
            )));
        }
    }
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Csv {
            line,
            message: format!("column {column}: expected a nonnegative integer, found `{field}`"),
        });
    }
    field.parse().map_err(|_| {
        Error::Domain(format!(
            "line {line}, column {column}: medal count {field} is too large"
        ))
    })
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::Csv {
        line,
        message: e.to_string(),
    }
}

fn class_names(classes: &[String], rows: &[RankedRow]) -> Vec<String> {
    let width = rows
        .iter()
        .map(|r| r.word.len())
        .chain(std::iter::once(classes.len()))
        .max()
        .unwrap_or(0);
    (0..width)
        .map(|i| classes.get(i).cloned().unwrap_or_else(|| format!("c{}", i + 1)))
        .collect()
}

/// Aligned columns: Country, one column per medal class, Binary, Decimal.
pub fn render_text(classes: &[String], rows: &[RankedRow]) -> String {
    let names = class_names(classes, rows);
    let mut grid: Vec<Vec<String>> = Vec::with_capacity(rows.len() + 1);
    let mut head = vec!["Country".to_owned()];
    head.extend(names.iter().cloned());
    head.push("Binary".into());
    head.push("Decimal".into());
    grid.push(head);
    for row in rows {
        let mut line = vec![row.label.clone()];
        line.extend(row.word.padded(names.len()).iter().map(u64::to_string));
        line.push(row.binary.clone());
        line.push(row.decimal.clone());
        grid.push(line);
    }
    let ncols = names.len() + 3;
    let widths: Vec<usize> = (0..ncols)
        .map(|c| grid.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in &grid {
        let mut text = String::new();
        for (c, cell) in line.iter().enumerate() {
            if c > 0 {
                text.push_str("  ");
            }
            let pad = widths[c] - cell.chars().count();
            let numeric = c >= 1 && c <= names.len();
            if numeric {
                text.extend(std::iter::repeat(' ').take(pad));
                text.push_str(cell);
            } else {
                text.push_str(cell);
                text.extend(std::iter::repeat(' ').take(pad));
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

pub fn render_csv(classes: &[String], rows: &[RankedRow]) -> Result<String> {
    let names = class_names(classes, rows);
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut head = vec!["country".to_owned()];
    head.extend(names.iter().cloned());
    head.push("binary".into());
    head.push("decimal".into());
    wtr.write_record(&head).map_err(|e| Error::Io(e.to_string()))?;
    for row in rows {
        let mut rec = vec![row.label.clone()];
        rec.extend(row.word.padded(names.len()).iter().map(u64::to_string));
        rec.push(row.binary.clone());
        rec.push(row.decimal.clone());
        wtr.write_record(&rec).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = wtr.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct JsonRow<'a> {
    country: &'a str,
    medals: Vec<u64>,
    binary: &'a str,
    decimal: &'a str,
}

/// One JSON object per row.
pub fn render_json_lines(classes: &[String], rows: &[RankedRow]) -> String {
    let width = class_names(classes, rows).len();
    let mut out = String::new();
    for row in rows {
        let json = JsonRow {
            country: &row.label,
            medals: row.word.padded(width),
            binary: &row.binary,
            decimal: &row.decimal,
        };
        out.push_str(&serde_json::to_string(&json).expect("plain struct serializes"));
        out.push('\n');
    }
    out
}
