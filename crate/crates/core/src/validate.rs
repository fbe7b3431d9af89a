//! Independent validity checks that do not rely on the square's internal
//! occupancy tables.

use serde::Serialize;

use crate::square::{Cell, KPartialSquare, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// A symbol repeats in a row or column of one layer.
    Latin,
    /// Two cells share the same symbols in two layers.
    Orthogonality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub first: Cell,
    pub second: Cell,
    /// Coordinates (0 = row, 1 = column, 2 + j = layer j) where the two
    /// tuples agree.
    pub coordinates: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => "ok".to_string(),
            Some(v) => format!(
                "{} violation(s); first: {:?} between {} and {} on coordinates {:?}",
                self.violations.len(),
                v.kind,
                v.first,
                v.second,
                v.coordinates
            ),
        }
    }
}

/// Pairwise agreement check over all filled cells.
pub fn validate(square: &KPartialSquare) -> ValidationReport {
    let cells: Vec<(Cell, Vec<Symbol>)> = square
        .iter_filled()
        .map(|(c, e)| {
            let mut t = vec![c.row as Symbol, c.col as Symbol];
            t.extend_from_slice(e);
            (c, t)
        })
        .collect();
    let mut violations = Vec::new();
    for (i, (ca, ta)) in cells.iter().enumerate() {
        for (cb, tb) in &cells[i + 1..] {
            let coordinates: Vec<usize> = ta
                .iter()
                .zip(tb)
                .enumerate()
                .filter(|(_, (x, y))| x == y)
                .map(|(j, _)| j)
                .collect();
            if coordinates.len() >= 2 {
                let kind = if coordinates[0] < 2 {
                    ViolationKind::Latin
                } else {
                    ViolationKind::Orthogonality
                };
                violations.push(Violation {
                    kind,
                    first: *ca,
                    second: *cb,
                    coordinates,
                });
            }
        }
    }
    ValidationReport { violations }
}

/// The two-square definition for `k = 2`: each layer is a partial Latin
/// square and every ordered pair of entries occurs at most once.
///
/// Returns `None` for `k != 2`.
pub fn is_valid_classical(square: &KPartialSquare) -> Option<bool> {
    if square.layers() != 2 {
        return None;
    }
    let n = square.order();
    for layer in 0..2 {
        for line in 0..n {
            let mut in_row = vec![false; n];
            let mut in_col = vec![false; n];
            for other in 0..n {
                if let Some(e) = square.get(Cell::new(line, other)) {
                    if std::mem::replace(&mut in_row[e[layer] as usize], true) {
                        return Some(false);
                    }
                }
                if let Some(e) = square.get(Cell::new(other, line)) {
                    if std::mem::replace(&mut in_col[e[layer] as usize], true) {
                        return Some(false);
                    }
                }
            }
        }
    }
    let mut seen = vec![false; n * n];
    for (_, e) in square.iter_filled() {
        if std::mem::replace(&mut seen[e[0] as usize * n + e[1] as usize], true) {
            return Some(false);
        }
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::EntryTuple;

    #[test]
    fn empty_is_valid() {
        let sq = KPartialSquare::new(4, 2).unwrap();
        assert!(validate(&sq).is_ok());
        assert_eq!(is_valid_classical(&sq), Some(true));
    }

    #[test]
    fn duplicate_pair_is_reported() {
        let sq = KPartialSquare::from_cells_unvalidated(
            3,
            2,
            [
                (Cell::new(0, 0), EntryTuple::from([0, 0])),
                (Cell::new(1, 1), EntryTuple::from([0, 0])),
            ],
        )
        .unwrap();
        let report = validate(&sq);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].kind, ViolationKind::Orthogonality);
        assert_eq!(report.violations[0].coordinates, vec![2, 3]);
        assert_eq!(is_valid_classical(&sq), Some(false));
    }

    #[test]
    fn latin_violation_is_classified() {
        let sq = KPartialSquare::from_cells_unvalidated(
            3,
            1,
            [
                (Cell::new(0, 0), EntryTuple::from([1])),
                (Cell::new(0, 2), EntryTuple::from([1])),
            ],
        )
        .unwrap();
        let report = validate(&sq);
        assert_eq!(report.violations[0].kind, ViolationKind::Latin);
        assert_eq!(report.violations[0].coordinates, vec![0, 2]);
        assert_eq!(is_valid_classical(&sq), None);
    }
}
