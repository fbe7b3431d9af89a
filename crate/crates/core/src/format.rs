//! Square file formats.
//!
//! The text grid has one line per row and one whitespace-separated token per
//! cell: `-` for an empty cell, otherwise `k` base-36 digits giving the
//! 1-based symbols of each layer (`1`..`9`, then `A` = 10 up to `Z` = 35).
//! Serialization prepends a `# kpls n=N k=K` header; any line starting with
//! `#` is otherwise a comment. Without a header, `n` is the number of rows
//! and `k` the width of the first filled token.
//!
//! The structured record is JSON with explicit `n` and `k` and 0-based
//! symbols; see [`SquareRecord`].

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::square::{Cell, EntryTuple, KPartialSquare, Symbol};
use crate::validate::validate;

pub const RECORD_FORMAT: &str = "kpls";
pub const RECORD_VERSION: u32 = 1;

/// Largest order expressible with single base-36 digits for 1-based symbols.
pub const MAX_GRID_ORDER: usize = 35;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Grid,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "grid" | "text" => Ok(Format::Grid),
            "json" | "record" => Ok(Format::Json),
            other => Err(format!("unknown square format `{other}` (expected grid or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub row: usize,
    pub col: usize,
    pub entries: Vec<Symbol>,
}

/// Lossless machine-exchange form of a square (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareRecord {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub k: usize,
    pub cells: Vec<CellRecord>,
}

impl SquareRecord {
    pub fn from_square(square: &KPartialSquare) -> Self {
        SquareRecord {
            format: RECORD_FORMAT.to_string(),
            version: RECORD_VERSION,
            n: square.order(),
            k: square.layers(),
            cells: square
                .iter_filled()
                .map(|(c, e)| CellRecord {
                    row: c.row,
                    col: c.col,
                    entries: e.to_vec(),
                })
                .collect(),
        }
    }

    /// Rebuilds and validates the square.
    pub fn to_square(&self) -> Result<KPartialSquare> {
        if self.format != RECORD_FORMAT {
            return Err(Error::Parse {
                line: 0,
                message: format!("format field is `{}`, expected `{RECORD_FORMAT}`", self.format),
            });
        }
        if self.version != RECORD_VERSION {
            return Err(Error::Parse {
                line: 0,
                message: format!("unsupported record version {}", self.version),
            });
        }
        let sq = KPartialSquare::from_cells_unvalidated(
            self.n,
            self.k,
            self.cells
                .iter()
                .map(|c| (Cell::new(c.row, c.col), EntryTuple::new(&c.entries))),
        )?;
        ensure_valid(sq)
    }
}

fn ensure_valid(sq: KPartialSquare) -> Result<KPartialSquare> {
    let report = validate(&sq);
    if report.is_ok() {
        Ok(sq)
    } else {
        Err(Error::InvalidSquare(report.summary()))
    }
}

fn digit(symbol: Symbol) -> char {
    std::char::from_digit(symbol as u32 + 1, 36)
        .expect("symbol fits one base-36 digit")
        .to_ascii_uppercase()
}

pub fn to_grid(square: &KPartialSquare) -> Result<String> {
    let n = square.order();
    if n > MAX_GRID_ORDER {
        return Err(Error::Unsupported(format!(
            "text grids hold orders up to {MAX_GRID_ORDER}; use the structured format for order {n}"
        )));
    }
    let k = square.layers();
    let width = k.max(1);
    let mut out = format!("# kpls n={n} k={k}\n");
    for row in square.rows() {
        let tokens: Vec<String> = row
            .iter()
            .map(|cell| match cell {
                None => format!("{:>width$}", "-"),
                Some(e) => e.iter().map(|&s| digit(s)).collect(),
            })
            .collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    Ok(out)
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let rest = line.trim_start_matches('#').trim();
    let mut words = rest.split_whitespace();
    if words.next()? != RECORD_FORMAT {
        return None;
    }
    let mut n = None;
    let mut k = None;
    for w in words {
        if let Some(v) = w.strip_prefix("n=") {
            n = v.parse().ok();
        } else if let Some(v) = w.strip_prefix("k=") {
            k = v.parse().ok();
        }
    }
    Some((n?, k?))
}

pub fn parse_grid(text: &str) -> Result<KPartialSquare> {
    let mut header = None;
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if header.is_none() {
                header = parse_header(trimmed);
            }
            continue;
        }
        rows.push((idx + 1, trimmed.split_whitespace().collect()));
    }
    let n = rows.len();
    let inferred_k = rows
        .iter()
        .flat_map(|(_, toks)| toks.iter())
        .find(|t| **t != "-")
        .map(|t| t.chars().count());
    let (n, k) = match (header, inferred_k) {
        (Some((hn, hk)), _) => {
            if hn != n {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("header declares n={hn} but the grid has {n} rows"),
                });
            }
            (hn, hk)
        }
        (None, Some(k)) => (n, k),
        (None, None) => {
            return Err(Error::Parse {
                line: 0,
                message: "cannot infer k from a grid without filled cells; add a `# kpls n=N k=K` header".into(),
            })
        }
    };
    if n == 0 {
        return Err(Error::Parse {
            line: 0,
            message: "empty grid".into(),
        });
    }
    let mut cells = Vec::new();
    for (r, (line, tokens)) in rows.iter().enumerate() {
        if tokens.len() != n {
            return Err(Error::Parse {
                line: *line,
                message: format!("expected {n} tokens, found {}", tokens.len()),
            });
        }
        for (c, tok) in tokens.iter().enumerate() {
            if *tok == "-" {
                continue;
            }
            let symbols: Vec<Symbol> = tok
                .chars()
                .map(|ch| match ch.to_digit(36) {
                    Some(d) if d >= 1 && (d as usize) <= n => Ok(d as Symbol - 1),
                    _ => Err(Error::Parse {
                        line: *line,
                        message: format!("bad symbol `{ch}` in token `{tok}` (1-based base-36, at most {n})"),
                    }),
                })
                .collect::<Result<_>>()?;
            if symbols.len() != k {
                return Err(Error::Parse {
                    line: *line,
                    message: format!("token `{tok}` has {} symbols, expected {k}", symbols.len()),
                });
            }
            cells.push((Cell::new(r, c), EntryTuple::from(symbols)));
        }
    }
    ensure_valid(KPartialSquare::from_cells_unvalidated(n, k, cells)?)
}

pub fn to_json(square: &KPartialSquare) -> Result<String> {
    Ok(serde_json::to_string_pretty(&SquareRecord::from_square(square))?)
}

pub fn parse_json(text: &str) -> Result<KPartialSquare> {
    let record: SquareRecord = serde_json::from_str(text)?;
    record.to_square()
}

pub fn serialize(square: &KPartialSquare, format: Format) -> Result<String> {
    match format {
        Format::Grid => to_grid(square),
        Format::Json => to_json(square),
    }
}

/// Parses either format, choosing JSON when the first non-blank character is `{`.
pub fn parse(text: &str) -> Result<KPartialSquare> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_grid(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MOPLS9_GRID: &str = "\
11 22 33 -  -  -  -  -  -
23 31 12 -  -  -  -  -  -
32 13 21 -  -  -  -  -  -
-  -  -  44 55 66 -  -  -
-  -  -  56 64 45 -  -  -
-  -  -  65 46 54 -  -  -
-  -  -  -  -  -  77 88 99
-  -  -  -  -  -  89 97 78
-  -  -  -  -  -  98 79 87
";

    #[test]
    fn grid_parses_headerless() {
        let sq = parse(MOPLS9_GRID).unwrap();
        assert_eq!((sq.order(), sq.layers(), sq.filled_count()), (9, 2, 27));
        assert_eq!(sq.get(Cell::new(1, 0)), Some(&[1, 2][..]));
    }

    #[test]
    fn grid_and_json_round_trip() {
        let sq = parse(MOPLS9_GRID).unwrap();
        for format in [Format::Grid, Format::Json] {
            let text = serialize(&sq, format).unwrap();
            assert_eq!(parse(&text).unwrap(), sq);
        }
    }

    #[test]
    fn empty_round_trips() {
        let sq = KPartialSquare::new(4, 3).unwrap();
        for format in [Format::Grid, Format::Json] {
            assert_eq!(parse(&serialize(&sq, format).unwrap()).unwrap(), sq);
        }
    }

    #[test]
    fn duplicate_pair_rejected() {
        let err = parse("11 -\n- 11\n").unwrap_err();
        assert!(matches!(err, Error::InvalidSquare(_)), "{err}");
    }

    #[test]
    fn malformed_grids_rejected() {
        assert!(matches!(parse("11 -\n-\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("13 -\n- -\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse("1 -\n- 12\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse("- -\n- -\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse("# kpls n=3 k=2\n- -\n- -\n"), Err(Error::Parse { .. })));
        assert!(parse(
            "{\"format\":\"kpls\",\"version\":1,\"n\":2,\"k\":2,\"cells\":[{\"row\":0,\"col\":0,\"entries\":[0]}]}"
        )
        .is_err());
        assert!(parse("{\"format\":\"kpls\",\"version\":9,\"n\":2,\"k\":2,\"cells\":[]}").is_err());
    }

    #[test]
    fn large_order_needs_record() {
        let sq = KPartialSquare::new(36, 1).unwrap();
        assert!(to_grid(&sq).is_err());
        assert_eq!(parse(&to_json(&sq).unwrap()).unwrap(), sq);
    }
}
