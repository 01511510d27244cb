//! Schedule tables: CSV parsing/emission and construction of the initial
//! activity-on-node dag, with optional α/ω augmentation.
//!
//! The CSV layout is `code,duration,predecessors` with predecessors joined
//! by `;` and `-` for "none". The duration column may be left empty or
//! dropped from the header altogether, in which case durations are 0.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{AonDag, NodeKind, ValidationReport, Violation};
use crate::id::{ActivityId, InvalidId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleRow {
    pub code: ActivityId,
    pub duration: u64,
    pub predecessors: Vec<ActivityId>,
}

impl ScheduleRow {
    pub fn new(code: ActivityId, duration: u64, predecessors: Vec<ActivityId>) -> Self {
        ScheduleRow { code, duration, predecessors }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableErrorKind {
    #[error("missing or malformed header (expected `code,duration,predecessors`)")]
    Header,
    #[error("expected {expected} fields, found {found}")]
    FieldCount { expected: usize, found: usize },
    #[error("{0}")]
    InvalidCode(InvalidId),
    #[error("duplicate activity code")]
    DuplicateCode,
    #[error("unknown predecessor {0}")]
    UnknownPredecessor(String),
    #[error("activity lists itself as a predecessor")]
    SelfPrecedence,
    #[error("predecessor {0} listed twice")]
    DuplicatePredecessor(ActivityId),
    #[error("malformed duration {0:?} (expected a non-negative integer)")]
    Duration(String),
}

/// A table error with the 1-based line it was found on and, when known, the
/// code of the offending row.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct TableError {
    pub line: u64,
    pub code: Option<String>,
    pub kind: TableErrorKind,
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.code {
            Some(code) => write!(f, "line {} (activity {}): {}", self.line, code, self.kind),
            None => write!(f, "line {}: {}", self.line, self.kind),
        }
    }
}

/// Ordered rows of a schedule table. Codes are unique and every predecessor
/// names a row (α is always accepted as a predecessor).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScheduleTable {
    rows: Vec<ScheduleRow>,
}

impl ScheduleTable {
    /// Builds a table from rows, checking the same integrity rules as the
    /// parser. Line numbers in errors are row positions (1-based).
    pub fn new(rows: Vec<ScheduleRow>) -> Result<Self, TableError> {
        let lines: Vec<u64> = (1..=rows.len() as u64).collect();
        check_rows(&rows, &lines)?;
        Ok(ScheduleTable { rows })
    }

    pub fn rows(&self) -> &[ScheduleRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, code: &str) -> Option<&ScheduleRow> {
        self.rows.iter().find(|r| r.code == *code)
    }

    pub fn predecessor_entry_count(&self) -> usize {
        self.rows.iter().map(|r| r.predecessors.len()).sum()
    }
}

fn check_rows(rows: &[ScheduleRow], lines: &[u64]) -> Result<(), TableError> {
    let err = |i: usize, kind| TableError { line: lines[i], code: Some(rows[i].code.to_string()), kind };
    let mut seen: HashSet<&ActivityId> = HashSet::new();
    for (i, row) in rows.iter().enumerate() {
        if !seen.insert(&row.code) {
            return Err(err(i, TableErrorKind::DuplicateCode));
        }
    }
    for (i, row) in rows.iter().enumerate() {
        let mut preds: HashSet<&ActivityId> = HashSet::new();
        for p in &row.predecessors {
            if *p == row.code {
                return Err(err(i, TableErrorKind::SelfPrecedence));
            }
            if !preds.insert(p) {
                return Err(err(i, TableErrorKind::DuplicatePredecessor(p.clone())));
            }
            if !seen.contains(p) && !p.is_source() {
                return Err(err(i, TableErrorKind::UnknownPredecessor(p.to_string())));
            }
        }
    }
    Ok(())
}

/// Parses CSV text into a [`ScheduleTable`].
///
/// Fields are never quoted (codes cannot contain `,`), so each line is split
/// directly. Blank lines and lines starting with `#` are skipped.
pub fn parse_schedule_table(text: &str) -> Result<ScheduleTable, TableError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i as u64 + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(TableError { line: 1, code: None, kind: TableErrorKind::Header })?;
    let columns: Vec<String> = header.split(',').map(|c| c.trim().to_ascii_lowercase()).collect();
    let has_duration = match columns.as_slice() {
        [c, d, p] if c == "code" && d == "duration" && p == "predecessors" => true,
        [c, p] if c == "code" && p == "predecessors" => false,
        _ => return Err(TableError { line: header_line, code: None, kind: TableErrorKind::Header }),
    };
    let width = columns.len();

    let mut rows = Vec::new();
    let mut row_lines = Vec::new();
    for (line, raw) in lines {
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        let raw_code = fields[0];
        let fail = |kind| TableError { line, code: (!raw_code.is_empty()).then(|| raw_code.to_owned()), kind };
        if fields.len() != width {
            return Err(fail(TableErrorKind::FieldCount { expected: width, found: fields.len() }));
        }
        let code = ActivityId::parse_aliased(raw_code).map_err(|e| fail(TableErrorKind::InvalidCode(e)))?;
        let duration = if !has_duration || fields[1].is_empty() {
            0
        } else {
            fields[1].parse::<u64>().map_err(|_| fail(TableErrorKind::Duration(fields[1].to_owned())))?
        };
        let raw_preds = fields[width - 1];
        let predecessors = if raw_preds.is_empty() || raw_preds == "-" {
            Vec::new()
        } else {
            raw_preds
                .split(';')
                .map(str::trim)
                .map(|p| ActivityId::parse_aliased(p).map_err(|e| fail(TableErrorKind::InvalidCode(e))))
                .collect::<Result<Vec<_>, _>>()?
        };
        rows.push(ScheduleRow { code, duration, predecessors });
        row_lines.push(line);
    }

    check_rows(&rows, &row_lines)?;
    Ok(ScheduleTable { rows })
}

/// Serializes a table back to canonical CSV (LF line endings, `-` for no
/// predecessors, rows in table order).
pub fn emit_table(table: &ScheduleTable) -> String {
    let mut out = String::from("code,duration,predecessors\n");
    for row in &table.rows {
        let preds = if row.predecessors.is_empty() {
            "-".to_owned()
        } else {
            row.predecessors.iter().map(ActivityId::as_str).collect::<Vec<_>>().join(";")
        };
        out.push_str(&format!("{},{},{}\n", row.code, row.duration, preds));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AugmentPolicy {
    /// Insert α/ω when absent and tie every predecessor-free (successor-free)
    /// activity to α (ω).
    #[default]
    Auto,
    /// Require explicit α/ω rows; no arcs are added.
    Strict,
}

/// Builds the activity-on-node dag of a table and validates it.
pub fn build_aon(table: &ScheduleTable, policy: AugmentPolicy) -> Result<AonDag, ValidationReport> {
    let mut g = AonDag::new();
    for row in &table.rows {
        let kind = if row.code.is_source() {
            NodeKind::SourceMarker
        } else if row.code.is_sink() {
            NodeKind::SinkMarker
        } else {
            NodeKind::Real
        };
        g.add_node(row.code.clone(), kind, row.duration).expect("table codes are unique");
    }

    let mut violations = Vec::new();
    let has_source = g.contains(crate::id::SOURCE_CODE);
    let has_sink = g.contains(crate::id::SINK_CODE);
    match policy {
        AugmentPolicy::Auto => {
            if !has_source {
                g.add_node(ActivityId::source(), NodeKind::SourceMarker, 0).expect("α is absent");
            }
            if !has_sink {
                g.add_node(ActivityId::sink(), NodeKind::SinkMarker, 0).expect("ω is absent");
            }
        }
        AugmentPolicy::Strict => {
            if !has_source {
                violations.push(Violation::MissingSource);
            }
            if !has_sink {
                violations.push(Violation::MissingSink);
            }
        }
    }

    for row in &table.rows {
        for p in &row.predecessors {
            if g.add_arc(p.as_str(), row.code.as_str()).is_err() {
                violations.push(Violation::UnknownActivity(p.to_string()));
            }
        }
    }
    if !violations.is_empty() {
        return Err(ValidationReport { violations });
    }

    if policy == AugmentPolicy::Auto {
        let source = g.source().expect("α present");
        let sink = g.sink().expect("ω present");
        let inner = |i: usize| i != source && i != sink;
        let orphans: Vec<usize> = (0..g.node_count()).filter(|&i| inner(i) && g.pred_idx(i).is_empty()).collect();
        let leaves: Vec<usize> = (0..g.node_count()).filter(|&i| inner(i) && g.succ_idx(i).is_empty()).collect();
        for i in orphans {
            g.add_arc_idx(source, i);
        }
        for i in leaves {
            g.add_arc_idx(i, sink);
        }
        let unlinked = g.succ_idx(source).is_empty() || g.pred_idx(sink).is_empty();
        if unlinked && !g.succ_idx(source).contains(&sink) {
            g.add_arc_idx(source, sink);
        }
    }

    g.validate()?;
    Ok(g)
}

/// Schedule table of an activity-on-node dag: one row per node in code order.
/// Dummy nodes become ordinary zero-duration rows.
pub fn table_of(g: &AonDag) -> ScheduleTable {
    let mut codes: Vec<&ActivityId> = g.nodes().iter().map(|n| &n.id).collect();
    codes.sort();
    let preds: HashMap<&ActivityId, BTreeSet<&ActivityId>> = codes
        .iter()
        .map(|&c| {
            let set = g.neighbors(c.as_str(), crate::graph::Direction::In).expect("node exists").into_iter().collect();
            (c, set)
        })
        .collect();
    let rows = codes
        .iter()
        .map(|&c| ScheduleRow {
            code: c.clone(),
            duration: g.get(c.as_str()).map_or(0, |n| n.duration),
            predecessors: preds[c].iter().map(|&p| p.clone()).collect(),
        })
        .collect();
    ScheduleTable { rows }
}
