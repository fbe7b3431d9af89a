//! Maximum partial transversals of empty cells in a square subarray, via
//! bipartite matching with a König vertex cover as the optimality
//! certificate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::square::{Cell, KPartialSquare};

/// A `d x d` subarray given by its row and column indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Region {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        Region { rows, cols }
    }

    pub fn whole(n: usize) -> Self {
        Region::new((0..n).collect(), (0..n).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.rows.len() != self.cols.len() {
            return Err(Error::Hypothesis(format!(
                "region must be square, got {} rows and {} columns",
                self.rows.len(),
                self.cols.len()
            )));
        }
        for idx in [&self.rows, &self.cols] {
            let mut seen = vec![false; n];
            for &i in idx {
                if i >= n || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Hypothesis(format!(
                        "region index {i} is out of range or repeated"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransversalReport {
    pub region: Region,
    pub t: usize,
    /// Empty cells, no two in a row or column, in absolute coordinates.
    pub transversal: Vec<Cell>,
    /// Rows and columns (absolute) covering every empty cell of the region;
    /// its size equals `t`, so no larger transversal exists.
    pub cover_rows: Vec<usize>,
    pub cover_cols: Vec<usize>,
}

impl TransversalReport {
    /// Re-checks the transversal and the cover against the square.
    pub fn certificate_holds(&self, square: &KPartialSquare) -> bool {
        let rows_ok = {
            let mut r: Vec<usize> = self.transversal.iter().map(|c| c.row).collect();
            let mut c: Vec<usize> = self.transversal.iter().map(|c| c.col).collect();
            r.sort_unstable();
            r.dedup();
            c.sort_unstable();
            c.dedup();
            r.len() == self.t && c.len() == self.t
        };
        let cells_ok = self.transversal.iter().all(|&c| {
            square.is_empty_cell(c) && self.region.rows.contains(&c.row) && self.region.cols.contains(&c.col)
        });
        let cover_ok = self.region.rows.iter().all(|&r| {
            self.region.cols.iter().all(|&c| {
                !square.is_empty_cell(Cell::new(r, c)) || self.cover_rows.contains(&r) || self.cover_cols.contains(&c)
            })
        });
        rows_ok && cells_ok && cover_ok && self.cover_rows.len() + self.cover_cols.len() == self.t
    }
}

fn try_augment(u: usize, adj: &[Vec<usize>], match_right: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &v in &adj[u] {
        if std::mem::replace(&mut seen[v], true) {
            continue;
        }
        let free = match match_right[v] {
            None => true,
            Some(w) => try_augment(w, adj, match_right, seen),
        };
        if free {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

pub fn max_empty_transversal(square: &KPartialSquare, region: &Region) -> Result<TransversalReport> {
    region.check(square.order())?;
    let d = region.size();
    let adj: Vec<Vec<usize>> = region
        .rows
        .iter()
        .map(|&r| {
            (0..d)
                .filter(|&j| square.is_empty_cell(Cell::new(r, region.cols[j])))
                .collect()
        })
        .collect();
    let mut match_right: Vec<Option<usize>> = vec![None; d];
    for u in 0..d {
        let mut seen = vec![false; d];
        try_augment(u, &adj, &mut match_right, &mut seen);
    }
    let mut match_left: Vec<Option<usize>> = vec![None; d];
    for (v, u) in match_right.iter().enumerate() {
        if let Some(u) = *u {
            match_left[u] = Some(v);
        }
    }

    // König: alternate from unmatched left vertices
    let mut vis_left = vec![false; d];
    let mut vis_right = vec![false; d];
    let mut stack: Vec<usize> = (0..d).filter(|&u| match_left[u].is_none()).collect();
    for &u in &stack {
        vis_left[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if std::mem::replace(&mut vis_right[v], true) {
                continue;
            }
            if let Some(w) = match_right[v] {
                if !std::mem::replace(&mut vis_left[w], true) {
                    stack.push(w);
                }
            }
        }
    }

    let mut transversal: Vec<Cell> = match_left
        .iter()
        .enumerate()
        .filter_map(|(u, v)| v.map(|v| Cell::new(region.rows[u], region.cols[v])))
        .collect();
    transversal.sort();
    Ok(TransversalReport {
        region: region.clone(),
        t: transversal.len(),
        transversal,
        cover_rows: (0..d).filter(|&u| !vis_left[u]).map(|u| region.rows[u]).collect(),
        cover_cols: (0..d).filter(|&v| vis_right[v]).map(|v| region.cols[v]).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrequencyShortfall {
    pub row: usize,
    pub col: usize,
    pub sum: usize,
    pub needed: usize,
}

/// Outcome of checking the empty-transversal lemma on one region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma2Report {
    pub d: usize,
    pub t: usize,
    /// Region rows and columns missed by the transversal.
    pub residual_rows: Vec<usize>,
    pub residual_cols: Vec<usize>,
    /// Residual cells that are empty; must be none.
    pub empty_residual_cells: Vec<Cell>,
    /// Residual pairs with `f_r(i) + f_c(j) < 2d - t` (frequencies within
    /// the region); must be none.
    pub shortfalls: Vec<FrequencyShortfall>,
    pub certificate_ok: bool,
    pub ok: bool,
}

pub fn check_lemma2(square: &KPartialSquare, region: &Region) -> Result<Lemma2Report> {
    let report = max_empty_transversal(square, region)?;
    let d = region.size();
    let t = report.t;
    let residual_rows: Vec<usize> = region
        .rows
        .iter()
        .copied()
        .filter(|r| !report.transversal.iter().any(|c| c.row == *r))
        .collect();
    let residual_cols: Vec<usize> = region
        .cols
        .iter()
        .copied()
        .filter(|col| !report.transversal.iter().any(|c| c.col == *col))
        .collect();
    let row_freq = |r: usize| {
        region
            .cols
            .iter()
            .filter(|&&c| !square.is_empty_cell(Cell::new(r, c)))
            .count()
    };
    let col_freq = |c: usize| {
        region
            .rows
            .iter()
            .filter(|&&r| !square.is_empty_cell(Cell::new(r, c)))
            .count()
    };
    let mut empty_residual_cells = Vec::new();
    let mut shortfalls = Vec::new();
    let needed = 2 * d - t;
    for &r in &residual_rows {
        for &c in &residual_cols {
            if square.is_empty_cell(Cell::new(r, c)) {
                empty_residual_cells.push(Cell::new(r, c));
            }
            let sum = row_freq(r) + col_freq(c);
            if sum < needed {
                shortfalls.push(FrequencyShortfall {
                    row: r,
                    col: c,
                    sum,
                    needed,
                });
            }
        }
    }
    let certificate_ok = report.certificate_holds(square);
    Ok(Lemma2Report {
        d,
        t,
        ok: certificate_ok && empty_residual_cells.is_empty() && shortfalls.is_empty(),
        residual_rows,
        residual_cols,
        empty_residual_cells,
        shortfalls,
        certificate_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{k_mols_field, min_mopls};

    #[test]
    fn full_region_has_no_transversal() {
        let sq = k_mols_field(4, 2).unwrap().into_square();
        let r = max_empty_transversal(&sq, &Region::whole(4)).unwrap();
        assert_eq!(r.t, 0);
        assert!(r.certificate_holds(&sq));
        let l = check_lemma2(&sq, &Region::whole(4)).unwrap();
        assert!(l.ok);
        assert_eq!(l.residual_rows.len(), 4);
    }

    #[test]
    fn empty_region_is_fully_transversal() {
        let sq = KPartialSquare::new(5, 2).unwrap();
        let region = Region::new(vec![0, 2, 4], vec![1, 3, 4]);
        let r = max_empty_transversal(&sq, &region).unwrap();
        assert_eq!(r.t, 3);
        assert!(r.certificate_holds(&sq));
        assert!(check_lemma2(&sq, &region).unwrap().ok);
    }

    #[test]
    fn minimum_nine_region() {
        let sq = min_mopls(9).unwrap();
        let region = Region::new((3..9).collect(), (3..9).collect());
        let r = max_empty_transversal(&sq, &region).unwrap();
        assert_eq!(r.t, 6);
        assert!(r.certificate_holds(&sq));
        let l = check_lemma2(&sq, &region).unwrap();
        assert!(l.ok);
        assert!(l.residual_rows.is_empty());
    }

    #[test]
    fn malformed_regions_rejected() {
        let sq = KPartialSquare::new(3, 2).unwrap();
        assert!(max_empty_transversal(&sq, &Region::new(vec![0, 1], vec![0])).is_err());
        assert!(max_empty_transversal(&sq, &Region::new(vec![0, 0], vec![0, 1])).is_err());
        assert!(max_empty_transversal(&sq, &Region::new(vec![3], vec![0])).is_err());
    }
}
