//! `day,load`, `day,performance` and prediction tables.
//!
//! Parsers accept arbitrary bytes and report every failure with the line it
//! occurred on. Numbers are written with Rust's shortest round-trip float
//! formatting, so parsing an emitted table gives back identical values.

use std::collections::BTreeMap;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::error::{Error, Result};
use crate::estimation::ObservationSet;
use crate::model::LoadSeries;

/// Largest day index accepted from files (about 270 years of daily data).
pub const MAX_DAY: usize = 100_000;

struct Rows {
    rows: Vec<(u64, StringRecord)>,
}

fn line_of(record: &StringRecord, fallback: u64) -> u64 {
    record.position().map_or(fallback, |p| p.line())
}

fn read_rows(input: &[u8], header: &[&str]) -> Result<Rows> {
    let mut reader = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(input);
    let mut rows = Vec::new();
    let mut saw_header = false;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(i as u64 + 1, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = line_of(&record, i as u64 + 1);
        if !saw_header {
            if record.iter().ne(header.iter().copied()) {
                return Err(Error::Parse {
                    line,
                    message: format!("expected header `{}`", header.join(",")),
                });
            }
            saw_header = true;
            continue;
        }
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != header.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, found {}", header.len(), record.len()),
            });
        }
        rows.push((line, record));
    }
    if !saw_header {
        return Err(Error::Parse { line: 1, message: format!("missing header `{}`", header.join(",")) });
    }
    Ok(Rows { rows })
}

fn parse_day(field: &str, line: u64) -> Result<usize> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse { line, message: format!("day `{field}` is not a non-negative integer") });
    }
    match field.parse::<usize>() {
        Ok(day) if day <= MAX_DAY => Ok(day),
        _ => Err(Error::Parse { line, message: format!("day `{field}` exceeds {MAX_DAY}") }),
    }
}

fn parse_value(field: &str, what: &str, line: u64) -> Result<f64> {
    match field.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Parse { line, message: format!("{what} `{field}` is not a finite number") }),
    }
}

/// Parses `day,load`. Days may come in any order; missing days are rest days.
pub fn parse_load_csv(input: impl AsRef<[u8]>) -> Result<LoadSeries> {
    let rows = read_rows(input.as_ref(), &["day", "load"])?;
    let mut loads = BTreeMap::new();
    for (line, record) in &rows.rows {
        let line = *line;
        let day = parse_day(&record[0], line)?;
        let load = parse_value(&record[1], "load", line)?;
        if load < 0.0 {
            return Err(Error::Constraint { line, message: format!("negative load {load}") });
        }
        if day == 0 && load != 0.0 {
            return Err(Error::Constraint {
                line,
                message: format!("load on day 0 must be 0 (the model assumes w(0) = 0), got {load}"),
            });
        }
        if loads.insert(day, load).is_some() {
            return Err(Error::DuplicateDay { line, day });
        }
    }
    let len = loads.keys().next_back().map_or(0, |&d| d + 1);
    let mut values = vec![0.0; len];
    for (day, load) in loads {
        values[day] = load;
    }
    LoadSeries::new(values)
}

/// Parses `day,performance` into observations sorted by day. A day-0 row is
/// an observation of the baseline.
pub fn parse_performance_csv(input: impl AsRef<[u8]>) -> Result<ObservationSet> {
    let rows = read_rows(input.as_ref(), &["day", "performance"])?;
    let mut obs = BTreeMap::new();
    for (line, record) in &rows.rows {
        let line = *line;
        let day = parse_day(&record[0], line)?;
        let value = parse_value(&record[1], "performance", line)?;
        if obs.insert(day, value).is_some() {
            return Err(Error::DuplicateDay { line, day });
        }
    }
    if obs.is_empty() {
        return Err(Error::Parse { line: 1, message: "no observations".into() });
    }
    ObservationSet::new(obs.into_iter().collect())
}

/// Writes every day of `w`, rest days included.
pub fn emit_load_csv(w: &LoadSeries) -> String {
    let mut out = String::from("day,load\n");
    for (day, load) in w.values().iter().enumerate() {
        out.push_str(&format!("{day},{load}\n"));
    }
    out
}

pub fn emit_performance_csv(obs: &ObservationSet) -> String {
    let mut out = String::from("day,performance\n");
    for &(day, value) in obs.entries() {
        out.push_str(&format!("{day},{value}\n"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictionRow {
    pub day: usize,
    pub load: f64,
    pub predicted: f64,
    pub observed: Option<f64>,
}

/// One row per day from day 0.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PredictionTable {
    rows: Vec<PredictionRow>,
}

impl PredictionTable {
    /// Rows for days `0..predicted.len()`, with observations attached where
    /// they exist.
    pub fn new(w: &LoadSeries, predicted: &[f64], obs: Option<&ObservationSet>) -> Result<Self> {
        w.check_horizon(predicted.len())?;
        let rows = predicted
            .iter()
            .enumerate()
            .map(|(day, &p)| PredictionRow {
                day,
                load: w.values()[day],
                predicted: p,
                observed: obs.and_then(|o| o.get(day)),
            })
            .collect();
        Ok(Self { rows })
    }

    pub fn from_rows(rows: Vec<PredictionRow>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.day != i {
                return Err(Error::input(format!("row {i} has day {}; days must run 0, 1, 2, ...", r.day)));
            }
            let finite = r.load.is_finite() && r.predicted.is_finite();
            if !finite || r.observed.is_some_and(|o| !o.is_finite()) {
                return Err(Error::input(format!("row {i} holds a non-finite value")));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[PredictionRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

pub fn emit_prediction_csv(table: &PredictionTable) -> String {
    let mut out = String::from("day,load,predicted,observed\n");
    for r in &table.rows {
        let observed = r.observed.map(|o| o.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{}\n", r.day, r.load, r.predicted, observed));
    }
    out
}

pub fn parse_prediction_csv(input: impl AsRef<[u8]>) -> Result<PredictionTable> {
    let rows = read_rows(input.as_ref(), &["day", "load", "predicted", "observed"])?;
    let mut out = Vec::with_capacity(rows.rows.len());
    for (line, record) in &rows.rows {
        let line = *line;
        let day = parse_day(&record[0], line)?;
        if day != out.len() {
            return Err(Error::Parse { line, message: format!("expected day {}, found {day}", out.len()) });
        }
        let observed = match &record[3] {
            "" => None,
            s => Some(parse_value(s, "observed", line)?),
        };
        out.push(PredictionRow {
            day,
            load: parse_value(&record[1], "load", line)?,
            predicted: parse_value(&record[2], "predicted", line)?,
            observed,
        });
    }
    Ok(PredictionTable { rows: out })
}

/// `day,load,state` for a simulated trajectory.
pub fn emit_state_csv(w: &LoadSeries, state: &[f64]) -> String {
    let mut out = String::from("day,load,state\n");
    for (day, (load, g)) in w.values().iter().zip(state).enumerate() {
        out.push_str(&format!("{day},{load},{g}\n"));
    }
    out
}
