//! Explicit constructions: mutually orthogonal Latin squares and the
//! block-diagonal maximal squares built from them.

pub mod field;
mod literal;

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::square::{Cell, EntryTuple, KPartialSquare, Symbol};
use crate::validate::validate;

pub use literal::bundled_orders;

use field::{prime_power, prime_power_factors, GaloisField};

/// A full `k`-OLS: every cell filled, every layer a Latin square, layers
/// mutually orthogonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OlsBlock(KPartialSquare);

impl OlsBlock {
    pub fn new(square: KPartialSquare) -> Result<Self> {
        if !square.is_full() {
            return Err(Error::InvalidSquare(format!(
                "an OLS block must be full, found {} of {} cells",
                square.filled_count(),
                square.order() * square.order()
            )));
        }
        let report = validate(&square);
        if !report.is_ok() {
            return Err(Error::InvalidSquare(report.summary()));
        }
        Ok(OlsBlock(square))
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn layers(&self) -> usize {
        self.0.layers()
    }

    pub fn square(&self) -> &KPartialSquare {
        &self.0
    }

    pub fn into_square(self) -> KPartialSquare {
        self.0
    }

    /// The first `k` layers only.
    pub fn truncate_layers(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.layers() {
            return Err(Error::LayerMismatch(k, self.layers()));
        }
        let cells = self.0.iter_filled().map(|(c, e)| (c, EntryTuple::new(&e[..k])));
        Self::new(KPartialSquare::from_cells_unvalidated(self.order(), k, cells)?)
    }
}

/// Block sizes and symbol intervals for a block-diagonal construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionPlan {
    pub n: usize,
    pub k: usize,
    /// `n / 3` for the orthogonal plan, `n / 2` for the single-layer plan.
    pub s: usize,
    pub r: usize,
    pub block_orders: Vec<usize>,
    pub symbol_ranges: Vec<Range<usize>>,
}

impl ConstructionPlan {
    fn from_orders(n: usize, k: usize, s: usize, r: usize, block_orders: Vec<usize>) -> Self {
        let mut start = 0;
        let symbol_ranges = block_orders
            .iter()
            .map(|&m| {
                let range = start..start + m;
                start += m;
                range
            })
            .collect();
        ConstructionPlan {
            n,
            k,
            s,
            r,
            block_orders,
            symbol_ranges,
        }
    }

    /// Three diagonal blocks: `s,s,s` / `s,s,s+1` / `s,s+1,s+1` for
    /// `n = 3s + r` with `r = 0, 1, 2`.
    pub fn mopls(n: usize) -> Self {
        let (s, r) = (n / 3, n % 3);
        let orders = match r {
            0 => vec![s, s, s],
            1 => vec![s, s, s + 1],
            _ => vec![s, s + 1, s + 1],
        };
        Self::from_orders(n, 2, s, r, orders)
    }

    /// Two diagonal Latin squares of orders `n / 2` and `n - n / 2`.
    pub fn mpls(n: usize) -> Self {
        let (s, r) = (n / 2, n % 2);
        Self::from_orders(n, 1, s, r, vec![s, s + r])
    }

    pub fn diagonal(n: usize, k: usize, block_orders: &[usize]) -> Result<Self> {
        if block_orders.iter().sum::<usize>() != n {
            return Err(Error::Infeasible(format!(
                "block orders {block_orders:?} do not sum to {n}"
            )));
        }
        if block_orders.contains(&0) {
            return Err(Error::Infeasible("block orders must be positive".into()));
        }
        Ok(Self::from_orders(n, k, 0, 0, block_orders.to_vec()))
    }

    /// Places `k`-OLS blocks down the diagonal on consecutive symbol intervals.
    pub fn build(&self) -> Result<KPartialSquare> {
        let mut cells = Vec::with_capacity(self.block_orders.iter().map(|m| m * m).sum());
        for (&m, range) in self.block_orders.iter().zip(&self.symbol_ranges) {
            if m == 0 {
                continue;
            }
            let block = k_ols(self.k, m)?;
            let off = range.start;
            for (c, e) in block.square().iter_filled() {
                let entries: Vec<Symbol> = e.iter().map(|&s| s + off as Symbol).collect();
                cells.push((Cell::new(c.row + off, c.col + off), EntryTuple::from(entries)));
            }
        }
        let sq = KPartialSquare::from_cells_unvalidated(self.n, self.k, cells)?;
        debug_assert!(validate(&sq).is_ok());
        Ok(sq)
    }
}

/// `k` MOLS of prime-power order `q`: layer `l` holds `a_l * i + j` over
/// GF(q), with `a_l` the `l`-th nonzero element.
pub fn k_mols_field(q: usize, k: usize) -> Result<OlsBlock> {
    let field = GaloisField::new(q)?;
    if k == 0 {
        return Err(Error::ZeroLayers);
    }
    if k >= q {
        return Err(Error::TooManyLayers { k, q });
    }
    let cells = (0..q).flat_map(|i| {
        let field = &field;
        (0..q).map(move |j| {
            let entries: Vec<Symbol> = (1..=k).map(|a| field.add(field.mul(a, i), j) as Symbol).collect();
            (Cell::new(i, j), EntryTuple::from(entries))
        })
    });
    OlsBlock::new(KPartialSquare::from_cells_unvalidated(q, k, cells)?)
}

/// Direct product: cell `(i1*|B| + i2, j1*|B| + j2)` holds
/// `A(i1, j1) * |B| + B(i2, j2)` in every layer.
pub fn macneish_product(a: &OlsBlock, b: &OlsBlock) -> Result<OlsBlock> {
    if a.layers() != b.layers() {
        return Err(Error::LayerMismatch(a.layers(), b.layers()));
    }
    let (na, nb) = (a.order(), b.order());
    let mut cells = Vec::with_capacity(na * na * nb * nb);
    for (ca, ea) in a.square().iter_filled() {
        for (cb, eb) in b.square().iter_filled() {
            let entries: Vec<Symbol> = ea.iter().zip(eb).map(|(&x, &y)| x * nb as Symbol + y).collect();
            cells.push((
                Cell::new(ca.row * nb + cb.row, ca.col * nb + cb.col),
                EntryTuple::from(entries),
            ));
        }
    }
    OlsBlock::new(KPartialSquare::from_cells_unvalidated(na * nb, a.layers(), cells)?)
}

/// A `k`-OLS of order `m`.
///
/// Tries the field construction, then a product over the prime-power
/// factorization, then the bundled literals. Combinations none of these
/// reach are reported as unsupported, and combinations known not to exist
/// (`k >= m`, two squares of order 2 or 6, more than `q - 1` squares of
/// prime-power order `q`) as infeasible.
pub fn k_ols(k: usize, m: usize) -> Result<OlsBlock> {
    if k == 0 {
        return Err(Error::ZeroLayers);
    }
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    if m == 1 {
        let mut sq = KPartialSquare::new(1, k)?;
        sq.insert(Cell::new(0, 0), vec![0; k])?;
        return OlsBlock::new(sq);
    }
    if k >= m {
        return Err(Error::Infeasible(format!(
            "at most {} mutually orthogonal Latin squares of order {m} exist",
            m - 1
        )));
    }
    if prime_power(m).is_some() {
        return k_mols_field(m, k);
    }
    let factors = prime_power_factors(m);
    if factors.iter().all(|&q| k < q) {
        let mut acc = k_mols_field(factors[0], k)?;
        for &q in &factors[1..] {
            acc = macneish_product(&acc, &k_mols_field(q, k)?)?;
        }
        return Ok(acc);
    }
    if k >= 2 && m == 6 {
        return Err(Error::Infeasible(
            "no pair of orthogonal Latin squares of order 6 exists".into(),
        ));
    }
    if let Some(block) = literal::bundled(m, k)? {
        return Ok(block);
    }
    Err(Error::Unsupported(format!(
        "no construction for {k} mutually orthogonal Latin squares of order {m} (bundled orders: {:?})",
        bundled_orders()
    )))
}

/// Maximal partial Latin square with `ceil(n^2 / 2)` filled cells: two
/// Latin squares of orders `n / 2` and `n - n / 2` on disjoint symbols.
pub fn min_mpls(n: usize) -> Result<KPartialSquare> {
    if n < 2 {
        return Err(Error::Infeasible(format!("min-mpls needs n >= 2, got {n}")));
    }
    ConstructionPlan::mpls(n).build()
}

/// Maximal orthogonal partial Latin square with `ceil(n^2 / 3)` filled
/// cells: three orthogonal pairs down the diagonal on disjoint symbols.
///
/// Minimum size is only guaranteed for `n >= 21`; smaller orders are built
/// whenever every block order admits an orthogonal pair.
pub fn min_mopls(n: usize) -> Result<KPartialSquare> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let plan = ConstructionPlan::mopls(n);
    if let Some(bad) = plan.block_orders.iter().find(|&&m| m == 2 || m == 6) {
        return Err(Error::Infeasible(format!(
            "n = {n} needs blocks of orders {:?}; no orthogonal pair of order {bad} exists",
            plan.block_orders
        )));
    }
    plan.build()
}

/// `k`-OLS blocks of the given orders down the diagonal on disjoint symbol
/// sets. Maximality is not asserted here.
pub fn k_mopls_diagonal(n: usize, k: usize, block_orders: &[usize]) -> Result<KPartialSquare> {
    if k == 0 {
        return Err(Error::ZeroLayers);
    }
    ConstructionPlan::diagonal(n, k, block_orders)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frequency::frequencies;
    use crate::maximality::is_maximal;

    #[test]
    fn field_squares() {
        let ols3 = k_mols_field(3, 2).unwrap();
        assert_eq!(ols3.square().filled_count(), 9);
        let three = k_mols_field(4, 3).unwrap();
        assert_eq!(three.layers(), 3);
        // first row is the identity in every layer
        for j in 0..4 {
            assert_eq!(three.square().get(Cell::new(0, j)).unwrap(), &[j as Symbol; 3]);
        }
        assert!(matches!(k_mols_field(2, 2), Err(Error::TooManyLayers { .. })));
        assert!(matches!(k_mols_field(6, 1), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn products_validate() {
        let a = k_mols_field(3, 2).unwrap();
        let p = macneish_product(&a, &a).unwrap();
        assert_eq!(p.order(), 9);
        let one = k_ols(2, 1).unwrap();
        assert_eq!(macneish_product(&a, &one).unwrap(), a);
        let p = macneish_product(&k_mols_field(4, 3).unwrap(), &k_mols_field(5, 3).unwrap()).unwrap();
        assert_eq!((p.order(), p.layers()), (20, 3));
        assert!(matches!(
            macneish_product(&a, &k_mols_field(4, 3).unwrap()),
            Err(Error::LayerMismatch(2, 3))
        ));
    }

    #[test]
    fn k_ols_dispatch() {
        assert_eq!(k_ols(2, 7).unwrap().order(), 7);
        assert_eq!(k_ols(2, 12).unwrap().order(), 12);
        assert_eq!(k_ols(1, 6).unwrap().order(), 6);
        assert!(matches!(k_ols(2, 6), Err(Error::Infeasible(_))));
        assert!(matches!(k_ols(2, 2), Err(Error::Infeasible(_))));
        assert!(k_ols(3, 4).is_ok());
        assert!(matches!(k_ols(4, 4), Err(Error::Infeasible(_))));
        let ten = k_ols(2, 10).unwrap();
        assert_eq!(ten.square().filled_count(), 100);
        assert_eq!(k_ols(1, 10).unwrap().layers(), 1);
        assert!(matches!(k_ols(3, 10), Err(Error::Unsupported(_))));
    }

    #[test]
    fn plans_follow_the_three_cases() {
        assert_eq!(ConstructionPlan::mopls(21).block_orders, vec![7, 7, 7]);
        assert_eq!(ConstructionPlan::mopls(22).block_orders, vec![7, 7, 8]);
        assert_eq!(ConstructionPlan::mopls(23).block_orders, vec![7, 8, 8]);
        let p = ConstructionPlan::mopls(23);
        assert_eq!(p.symbol_ranges, vec![0..7, 7..15, 15..23]);
        assert_eq!(ConstructionPlan::mpls(7).block_orders, vec![3, 4]);
    }

    #[test]
    fn min_mopls_sizes() {
        for (n, f) in [(9, 27), (21, 147), (22, 162), (1, 1), (2, 2), (3, 3), (10, 34)] {
            let sq = min_mopls(n).unwrap();
            assert_eq!(sq.filled_count(), f, "n={n}");
            assert!(is_maximal(&sq).is_maximal(), "n={n}");
        }
        for n in [4, 5, 6, 7, 8, 16, 20] {
            assert!(matches!(min_mopls(n), Err(Error::Infeasible(_))), "n={n}");
        }
    }

    #[test]
    fn min_mpls_sizes() {
        for (n, f) in [(2, 2), (6, 18), (7, 25)] {
            let sq = min_mpls(n).unwrap();
            assert_eq!(sq.filled_count(), f);
            assert!(is_maximal(&sq).is_maximal());
        }
        assert!(min_mpls(1).is_err());
    }

    #[test]
    fn diagonal_constructions() {
        let sq = k_mopls_diagonal(16, 3, &[4, 4, 4, 4]).unwrap();
        assert_eq!(sq.filled_count(), 64);
        assert!(frequencies(&sq).all().all(|f| f == 4));
        assert_eq!(k_mopls_diagonal(9, 2, &[3, 3, 3]).unwrap(), min_mopls(9).unwrap());
        let eight = k_mopls_diagonal(8, 2, &[4, 4]).unwrap();
        assert_eq!(eight.filled_count(), 32);
        assert!(k_mopls_diagonal(8, 2, &[4, 3]).is_err());
        assert!(k_mopls_diagonal(8, 2, &[2, 6]).is_err());
    }
}
