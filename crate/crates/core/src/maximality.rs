//! Maximality by direct candidate enumeration.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::square::{Cell, EntryTuple, KPartialSquare, Symbol};

/// A legal insertion into a square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionWitness {
    pub cell: Cell,
    #[serde(serialize_with = "ser_tuple")]
    pub tuple: EntryTuple,
}

fn ser_tuple<S: serde::Serializer>(t: &EntryTuple, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(t.iter())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    Extendable(ExtensionWitness),
}

impl Maximality {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Maximality::Maximal)
    }

    pub fn witness(&self) -> Option<&ExtensionWitness> {
        match self {
            Maximality::Maximal => None,
            Maximality::Extendable(w) => Some(w),
        }
    }
}

/// Per-layer symbols that avoid the cell's row and column.
fn layer_options(square: &KPartialSquare, cell: Cell) -> Vec<Vec<Symbol>> {
    let n = square.order();
    (0..square.layers())
        .map(|j| {
            (0..n)
                .filter(|&s| !square.row_has(cell.row, j, s) && !square.col_has(cell.col, j, s))
                .map(|s| s as Symbol)
                .collect()
        })
        .collect()
}

/// Depth-first over layers, rejecting any layer pair already used.
/// `visit` returns `false` to stop early.
fn for_each_candidate(
    square: &KPartialSquare,
    options: &[Vec<Symbol>],
    prefix: &mut Vec<Symbol>,
    visit: &mut dyn FnMut(&[Symbol]) -> bool,
) -> bool {
    let j = prefix.len();
    if j == options.len() {
        return visit(prefix);
    }
    for &s in &options[j] {
        let clash = prefix
            .iter()
            .enumerate()
            .any(|(i, &p)| square.pair_used(2 + i, p as usize, 2 + j, s as usize));
        if clash {
            continue;
        }
        prefix.push(s);
        let go_on = for_each_candidate(square, options, prefix, visit);
        prefix.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Every tuple that may legally go in the empty `cell`, in lexicographic order.
pub fn candidate_tuples(square: &KPartialSquare, cell: Cell) -> Result<Vec<EntryTuple>> {
    if cell.row >= square.order() || cell.col >= square.order() {
        return Err(Error::CellOutOfRange {
            cell,
            n: square.order(),
        });
    }
    if !square.is_empty_cell(cell) {
        return Err(Error::Occupied(cell));
    }
    let options = layer_options(square, cell);
    let mut out = Vec::new();
    for_each_candidate(square, &options, &mut Vec::new(), &mut |t| {
        out.push(EntryTuple::new(t));
        true
    });
    Ok(out)
}

/// Lexicographically least legal tuple for an empty cell.
pub fn first_candidate(square: &KPartialSquare, cell: Cell) -> Option<EntryTuple> {
    if !square.is_empty_cell(cell) {
        return None;
    }
    let options = layer_options(square, cell);
    let mut found = None;
    for_each_candidate(square, &options, &mut Vec::new(), &mut |t| {
        found = Some(EntryTuple::new(t));
        false
    });
    found
}

/// Maximal, or the row-major first empty cell that admits a tuple together
/// with its least tuple.
pub fn is_maximal(square: &KPartialSquare) -> Maximality {
    let empty: Vec<Cell> = square.iter_empty().collect();
    let hit = empty
        .par_iter()
        .find_map_first(|&cell| first_candidate(square, cell).map(|tuple| ExtensionWitness { cell, tuple }));
    match hit {
        None => Maximality::Maximal,
        Some(w) => Maximality::Extendable(w),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaximalizePolicy {
    /// Scan cells row-major, insert the least legal tuple.
    #[default]
    RowMajorLeast,
    /// Visit cells in a seeded random order, insert a uniformly chosen legal tuple.
    Random { seed: u64 },
}

/// Extends `square` to a maximal square containing it.
///
/// One pass over the empty cells suffices: insertions only remove
/// candidates, so a cell with no candidates never regains one.
pub fn maximalize(square: &KPartialSquare, policy: MaximalizePolicy) -> KPartialSquare {
    let mut out = square.clone();
    let mut cells: Vec<Cell> = out.iter_empty().collect();
    match policy {
        MaximalizePolicy::RowMajorLeast => {
            for cell in cells {
                if let Some(t) = first_candidate(&out, cell) {
                    out.insert(cell, t).expect("candidate is legal");
                }
            }
        }
        MaximalizePolicy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            cells.shuffle(&mut rng);
            for cell in cells {
                let cands = candidate_tuples(&out, cell).expect("cell is empty");
                if !cands.is_empty() {
                    let pick = cands[rng.gen_range(0..cands.len())].clone();
                    out.insert(cell, pick).expect("candidate is legal");
                }
            }
        }
    }
    out
}
