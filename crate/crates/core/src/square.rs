//! The superimposed k-orthogonal partial Latin square.
//!
//! A filled cell `(r, c)` holding entries `(e_1, ..., e_k)` is treated as the
//! `(k + 2)`-tuple `(r, c, e_1, ..., e_k)`. Coordinate 0 is the row,
//! coordinate 1 the column and coordinate `2 + j` the entry of layer `j`.
//! A square is valid when any two filled cells agree in at most one
//! coordinate; this covers both the per-layer Latin condition and
//! orthogonality.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A symbol (or row/column index), 0-based.
pub type Symbol = u16;

const EMPTY: Symbol = Symbol::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// The `k` entries of one filled cell, layer 0 first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntryTuple(SmallVec<[Symbol; 4]>);

impl EntryTuple {
    pub fn new(entries: &[Symbol]) -> Self {
        EntryTuple(SmallVec::from_slice(entries))
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Symbol>> for EntryTuple {
    fn from(v: Vec<Symbol>) -> Self {
        EntryTuple(SmallVec::from_vec(v))
    }
}

impl<const N: usize> From<[Symbol; N]> for EntryTuple {
    fn from(v: [Symbol; N]) -> Self {
        EntryTuple::new(&v)
    }
}

impl std::ops::Deref for EntryTuple {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

/// An `n x n` array whose filled cells hold `k`-tuples of symbols from `[0, n)`.
///
/// `k = 1` is a partial Latin square, `k = 2` an orthogonal pair.
#[derive(Clone)]
pub struct KPartialSquare {
    n: usize,
    k: usize,
    entries: Vec<Symbol>,
    filled: usize,
    /// For every coordinate pair `(a, b)` with `a < b`, an `n x n` table of how
    /// many filled cells carry values `(u, v)` in those coordinates.
    pair_use: Vec<u16>,
}

impl KPartialSquare {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        if k == 0 {
            return Err(Error::ZeroLayers);
        }
        if n >= EMPTY as usize {
            return Err(Error::Unsupported(format!("order {n} is too large")));
        }
        let coords = k + 2;
        Ok(KPartialSquare {
            n,
            k,
            entries: vec![EMPTY; n * n * k],
            filled: 0,
            pair_use: vec![0; coords * (coords - 1) / 2 * n * n],
        })
    }

    /// Builds a square from explicit cells checking only ranges and shapes.
    ///
    /// The result may violate the Latin or orthogonality conditions; run
    /// [`crate::validate::validate`] on it before trusting it.
    pub fn from_cells_unvalidated<I>(n: usize, k: usize, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Cell, EntryTuple)>,
    {
        let mut sq = Self::new(n, k)?;
        for (cell, tuple) in cells {
            sq.check_shape(cell, &tuple)?;
            if sq.get(cell).is_some() {
                return Err(Error::Occupied(cell));
            }
            sq.place(cell, &tuple);
        }
        Ok(sq)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> usize {
        self.k
    }

    /// Number of coordinates in each tuple, `k + 2`.
    pub fn arity(&self) -> usize {
        self.k + 2
    }

    pub fn filled_count(&self) -> usize {
        self.filled
    }

    pub fn is_full(&self) -> bool {
        self.filled == self.n * self.n
    }

    pub fn get(&self, cell: Cell) -> Option<&[Symbol]> {
        if cell.row >= self.n || cell.col >= self.n {
            return None;
        }
        let start = (cell.row * self.n + cell.col) * self.k;
        let slot = &self.entries[start..start + self.k];
        (slot[0] != EMPTY).then_some(slot)
    }

    pub fn is_empty_cell(&self, cell: Cell) -> bool {
        self.get(cell).is_none()
    }

    /// Filled cells in row-major order.
    pub fn iter_filled(&self) -> impl Iterator<Item = (Cell, &[Symbol])> + '_ {
        self.entries
            .chunks_exact(self.k)
            .enumerate()
            .filter(|(_, e)| e[0] != EMPTY)
            .map(move |(idx, e)| (Cell::new(idx / self.n, idx % self.n), e))
    }

    /// Empty cells in row-major order.
    pub fn iter_empty(&self) -> impl Iterator<Item = Cell> + '_ {
        self.entries
            .chunks_exact(self.k)
            .enumerate()
            .filter(|(_, e)| e[0] == EMPTY)
            .map(move |(idx, _)| Cell::new(idx / self.n, idx % self.n))
    }

    /// The `(k + 2)`-tuples `(row, col, e_1, ..., e_k)` of all filled cells.
    pub fn tuples(&self) -> Vec<Vec<Symbol>> {
        self.iter_filled()
            .map(|(cell, e)| {
                let mut t = Vec::with_capacity(self.k + 2);
                t.push(cell.row as Symbol);
                t.push(cell.col as Symbol);
                t.extend_from_slice(e);
                t
            })
            .collect()
    }

    fn pair_index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b);
        let c = self.k + 2;
        a * c - a * (a + 1) / 2 + (b - a - 1)
    }

    /// Number of filled cells whose coordinates `a` and `b` hold `u` and `v`.
    pub fn pair_count(&self, a: usize, u: usize, b: usize, v: usize) -> usize {
        let (a, u, b, v) = if a < b { (a, u, b, v) } else { (b, v, a, u) };
        let n = self.n;
        self.pair_use[self.pair_index(a, b) * n * n + u * n + v] as usize
    }

    pub fn pair_used(&self, a: usize, u: usize, b: usize, v: usize) -> bool {
        self.pair_count(a, u, b, v) > 0
    }

    /// Whether `symbol` appears in `layer` of row `row`.
    pub fn row_has(&self, row: usize, layer: usize, symbol: usize) -> bool {
        self.pair_used(0, row, 2 + layer, symbol)
    }

    /// Whether `symbol` appears in `layer` of column `col`.
    pub fn col_has(&self, col: usize, layer: usize, symbol: usize) -> bool {
        self.pair_used(1, col, 2 + layer, symbol)
    }

    fn check_shape(&self, cell: Cell, tuple: &[Symbol]) -> Result<()> {
        if cell.row >= self.n || cell.col >= self.n {
            return Err(Error::CellOutOfRange { cell, n: self.n });
        }
        if tuple.len() != self.k {
            return Err(Error::TupleLength {
                got: tuple.len(),
                expected: self.k,
            });
        }
        if let Some(&s) = tuple.iter().find(|&&s| s as usize >= self.n) {
            return Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                n: self.n,
            });
        }
        Ok(())
    }

    fn update_pairs(&mut self, cell: Cell, tuple: &[Symbol], add: bool) {
        let n = self.n;
        let coords: SmallVec<[usize; 6]> = [cell.row, cell.col]
            .into_iter()
            .chain(tuple.iter().map(|&s| s as usize))
            .collect();
        for a in 0..coords.len() {
            for b in a + 1..coords.len() {
                let idx = self.pair_index(a, b) * n * n + coords[a] * n + coords[b];
                if add {
                    self.pair_use[idx] += 1;
                } else {
                    self.pair_use[idx] -= 1;
                }
            }
        }
    }

    fn place(&mut self, cell: Cell, tuple: &[Symbol]) {
        let start = (cell.row * self.n + cell.col) * self.k;
        self.entries[start..start + self.k].copy_from_slice(tuple);
        self.filled += 1;
        self.update_pairs(cell, tuple, true);
    }

    /// Checks that `tuple` may legally be placed in the empty `cell`.
    pub fn check_insert(&self, cell: Cell, tuple: &[Symbol]) -> Result<()> {
        self.check_shape(cell, tuple)?;
        if self.get(cell).is_some() {
            return Err(Error::Occupied(cell));
        }
        let coords: SmallVec<[usize; 6]> = [cell.row, cell.col]
            .into_iter()
            .chain(tuple.iter().map(|&s| s as usize))
            .collect();
        for a in 0..coords.len() {
            for b in a.max(2)..coords.len() {
                if a == b || !self.pair_used(a, coords[a], b, coords[b]) {
                    continue;
                }
                let conflict = self
                    .iter_filled()
                    .find(|(c, e)| {
                        let other = [c.row, c.col];
                        let val = |i: usize| {
                            if i < 2 {
                                other[i]
                            } else {
                                e[i - 2] as usize
                            }
                        };
                        val(a) == coords[a] && val(b) == coords[b]
                    })
                    .map(|(c, _)| c)
                    .expect("pair table out of sync with entries");
                return Err(if a < 2 {
                    Error::Latin {
                        cell,
                        conflict,
                        layer: b - 2,
                        symbol: coords[b],
                        line: if a == 0 { "row" } else { "column" },
                    }
                } else {
                    Error::Orthogonality {
                        cell,
                        conflict,
                        coords: (a, b),
                    }
                });
            }
        }
        Ok(())
    }

    /// Fast legality test; same answer as `check_insert(..).is_ok()` for an
    /// empty in-range cell and in-range tuple.
    pub fn can_insert(&self, cell: Cell, tuple: &[Symbol]) -> bool {
        if !self.is_empty_cell(cell) {
            return false;
        }
        let k = self.k;
        for (j, &s) in tuple.iter().enumerate() {
            let s = s as usize;
            if self.row_has(cell.row, j, s) || self.col_has(cell.col, j, s) {
                return false;
            }
            for (i, &r) in tuple.iter().enumerate().take(j) {
                if self.pair_used(2 + i, r as usize, 2 + j, s) {
                    return false;
                }
            }
        }
        debug_assert_eq!(tuple.len(), k);
        true
    }

    pub fn insert(&mut self, cell: Cell, tuple: impl Into<EntryTuple>) -> Result<()> {
        let tuple = tuple.into();
        self.check_insert(cell, &tuple)?;
        self.place(cell, &tuple);
        Ok(())
    }

    /// Empties `cell`, returning what it held.
    pub fn remove(&mut self, cell: Cell) -> Result<EntryTuple> {
        if cell.row >= self.n || cell.col >= self.n {
            return Err(Error::CellOutOfRange { cell, n: self.n });
        }
        let tuple = match self.get(cell) {
            Some(e) => EntryTuple::new(e),
            None => return Err(Error::EmptyCell(cell)),
        };
        let start = (cell.row * self.n + cell.col) * self.k;
        self.entries[start..start + self.k].fill(EMPTY);
        self.filled -= 1;
        self.update_pairs(cell, &tuple, false);
        Ok(tuple)
    }

    /// Reassigns coordinate roles: coordinate `j` of the new square's tuples
    /// is coordinate `roles[j]` of this square's tuples.
    ///
    /// `roles` must be a permutation of `0..k+2`. Agreement between tuples is
    /// unaffected, so validity and maximality carry over.
    pub fn conjugate(&self, roles: &[usize]) -> Result<Self> {
        let arity = self.arity();
        let mut seen = vec![false; arity];
        if roles.len() != arity
            || roles
                .iter()
                .any(|&r| r >= arity || std::mem::replace(&mut seen[r], true))
        {
            return Err(Error::Unsupported(format!(
                "{roles:?} is not a permutation of 0..{arity}"
            )));
        }
        let cells = self.tuples().into_iter().map(|t| {
            let pick = |j: usize| t[roles[j]];
            let cell = Cell::new(pick(0) as usize, pick(1) as usize);
            let entries: Vec<Symbol> = (2..arity).map(pick).collect();
            (cell, EntryTuple::from(entries))
        });
        Self::from_cells_unvalidated(self.n, self.k, cells)
    }

    /// Applies a row permutation, a column permutation and one symbol
    /// permutation per layer: the entry at `(r, c)` moves to
    /// `(rows[r], cols[c])` and symbol `s` of layer `j` becomes `symbols[j][s]`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize], symbols: &[Vec<usize>]) -> Result<Self> {
        let n = self.n;
        let is_perm = |p: &[usize]| {
            let mut seen = vec![false; n];
            p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        if !is_perm(rows) || !is_perm(cols) || symbols.len() != self.k || !symbols.iter().all(|p| is_perm(p)) {
            return Err(Error::Unsupported("malformed permutation".into()));
        }
        let cells = self.iter_filled().map(|(cell, e)| {
            let entries: Vec<Symbol> = e
                .iter()
                .enumerate()
                .map(|(j, &s)| symbols[j][s as usize] as Symbol)
                .collect();
            (Cell::new(rows[cell.row], cols[cell.col]), EntryTuple::from(entries))
        });
        Self::from_cells_unvalidated(n, self.k, cells)
    }

    /// Row-major raw contents, empty cells as `None`.
    pub fn rows(&self) -> Vec<Vec<Option<&[Symbol]>>> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(Cell::new(r, c))).collect())
            .collect()
    }
}

impl PartialEq for KPartialSquare {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.entries == other.entries
    }
}

impl Eq for KPartialSquare {}

impl std::hash::Hash for KPartialSquare {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.k.hash(state);
        self.entries.hash(state);
    }
}

impl fmt::Debug for KPartialSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "KPartialSquare(n={}, k={}, F={})", self.n, self.k, self.filled)?;
        for row in self.rows() {
            let line: Vec<String> = row
                .iter()
                .map(|e| match e {
                    None => "-".to_string(),
                    Some(e) => e.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
                })
                .collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_empty_rejects_degenerate() {
        assert!(matches!(KPartialSquare::new(0, 2), Err(Error::ZeroOrder)));
        assert!(matches!(KPartialSquare::new(3, 0), Err(Error::ZeroLayers)));
        let sq = KPartialSquare::new(3, 2).unwrap();
        assert_eq!(sq.filled_count(), 0);
        let sq = KPartialSquare::new(16, 3).unwrap();
        assert_eq!((sq.order(), sq.layers(), sq.filled_count()), (16, 3, 0));
    }

    #[test]
    fn insert_first_and_second() {
        let mut sq = KPartialSquare::new(3, 2).unwrap();
        sq.insert(Cell::new(0, 0), [0, 0]).unwrap();
        assert_eq!(sq.filled_count(), 1);
        // (0,0,0,0) and (1,1,0,1) agree only in the first entry
        sq.insert(Cell::new(1, 1), [0, 1]).unwrap();
        assert_eq!(sq.filled_count(), 2);
    }

    #[test]
    fn insert_errors() {
        let mut sq = KPartialSquare::new(3, 2).unwrap();
        sq.insert(Cell::new(0, 0), [0, 0]).unwrap();
        assert!(matches!(sq.insert(Cell::new(0, 0), [1, 1]), Err(Error::Occupied(_))));
        assert!(matches!(
            sq.insert(Cell::new(0, 1), [0, 1]),
            Err(Error::Latin {
                layer: 0,
                line: "row",
                ..
            })
        ));
        assert!(matches!(
            sq.insert(Cell::new(1, 0), [2, 0]),
            Err(Error::Latin {
                layer: 1,
                line: "column",
                ..
            })
        ));
        assert!(matches!(
            sq.insert(Cell::new(1, 1), [0, 0]),
            Err(Error::Orthogonality { coords: (2, 3), .. })
        ));
        assert!(matches!(
            sq.insert(Cell::new(3, 0), [1, 1]),
            Err(Error::CellOutOfRange { .. })
        ));
        assert!(matches!(
            sq.insert(Cell::new(1, 1), [1]),
            Err(Error::TupleLength { .. })
        ));
        assert!(matches!(
            sq.insert(Cell::new(1, 1), [1, 3]),
            Err(Error::SymbolOutOfRange { .. })
        ));
    }

    #[test]
    fn remove_restores() {
        let mut sq = KPartialSquare::new(3, 2).unwrap();
        sq.insert(Cell::new(0, 0), [0, 0]).unwrap();
        let before = sq.clone();
        sq.insert(Cell::new(1, 1), [1, 1]).unwrap();
        assert_eq!(sq.remove(Cell::new(1, 1)).unwrap().as_slice(), &[1, 1]);
        assert_eq!(sq, before);
        assert!(sq.can_insert(Cell::new(1, 1), &[1, 1]));
        assert!(matches!(sq.remove(Cell::new(2, 2)), Err(Error::EmptyCell(_))));
    }

    #[test]
    fn conjugate_moves_coordinates() {
        let mut sq = KPartialSquare::new(3, 2).unwrap();
        sq.insert(Cell::new(0, 1), [2, 0]).unwrap();
        let c = sq.conjugate(&[2, 3, 0, 1]).unwrap();
        assert_eq!(c.get(Cell::new(2, 0)), Some(&[0, 1][..]));
        assert!(sq.conjugate(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn permuted_relabels() {
        let mut sq = KPartialSquare::new(2, 1).unwrap();
        sq.insert(Cell::new(0, 0), [0]).unwrap();
        let p = sq.permuted(&[1, 0], &[0, 1], &[vec![1, 0]]).unwrap();
        assert_eq!(p.get(Cell::new(1, 0)), Some(&[1][..]));
    }
}
