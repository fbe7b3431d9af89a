use serde::Serialize;

use crate::square::KPartialSquare;

/// Which coordinate family an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Row,
    Column,
    Layer(usize),
}

impl Family {
    /// Tuple coordinate of this family: 0 row, 1 column, 2 + j layer j.
    pub fn coordinate(self) -> usize {
        match self {
            Family::Row => 0,
            Family::Column => 1,
            Family::Layer(j) => 2 + j,
        }
    }

    pub fn from_coordinate(c: usize) -> Self {
        match c {
            0 => Family::Row,
            1 => Family::Column,
            j => Family::Layer(j - 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrequencyProfile {
    pub filled: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `layers[j][s]` is the number of occurrences of symbol `s` in layer `j`.
    pub layers: Vec<Vec<usize>>,
    /// Minimum over every row, column and layer-symbol frequency.
    pub min: usize,
}

impl FrequencyProfile {
    /// Frequencies of coordinate `c` (0 rows, 1 columns, 2 + j layer j).
    pub fn family(&self, c: usize) -> &[usize] {
        match c {
            0 => &self.rows,
            1 => &self.cols,
            j => &self.layers[j - 2],
        }
    }

    /// First element attaining the minimum frequency, scanning rows, then
    /// columns, then layers in order, each by increasing index.
    pub fn min_element(&self) -> (Family, usize) {
        let arity = 2 + self.layers.len();
        for c in 0..arity {
            if let Some(i) = self.family(c).iter().position(|&f| f == self.min) {
                return (Family::from_coordinate(c), i);
            }
        }
        unreachable!("minimum is attained by construction")
    }

    /// All frequencies from every family.
    pub fn all(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows
            .iter()
            .chain(&self.cols)
            .chain(self.layers.iter().flatten())
            .copied()
    }
}

pub fn frequencies(square: &KPartialSquare) -> FrequencyProfile {
    let n = square.order();
    let k = square.layers();
    let mut rows = vec![0; n];
    let mut cols = vec![0; n];
    let mut layers = vec![vec![0; n]; k];
    for (cell, e) in square.iter_filled() {
        rows[cell.row] += 1;
        cols[cell.col] += 1;
        for (j, &s) in e.iter().enumerate() {
            layers[j][s as usize] += 1;
        }
    }
    let min = rows
        .iter()
        .chain(&cols)
        .chain(layers.iter().flatten())
        .copied()
        .min()
        .unwrap_or(0);
    FrequencyProfile {
        filled: square.filled_count(),
        rows,
        cols,
        layers,
        min,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::Cell;

    #[test]
    fn empty_profile() {
        let p = frequencies(&KPartialSquare::new(5, 2).unwrap());
        assert_eq!(p.filled, 0);
        assert_eq!(p.min, 0);
        assert_eq!(p.min_element(), (Family::Row, 0));
    }

    #[test]
    fn min_element_tie_break() {
        let mut sq = KPartialSquare::new(2, 2).unwrap();
        sq.insert(Cell::new(0, 0), [0, 0]).unwrap();
        sq.insert(Cell::new(1, 1), [1, 1]).unwrap();
        let p = frequencies(&sq);
        assert_eq!(p.min, 1);
        assert_eq!(p.min_element(), (Family::Row, 0));
        sq.remove(Cell::new(0, 0)).unwrap();
        let p = frequencies(&sq);
        assert_eq!(p.min, 0);
        assert_eq!(p.min_element(), (Family::Row, 0));
        assert_eq!(p.family(3), &[0, 1]);
    }
}
