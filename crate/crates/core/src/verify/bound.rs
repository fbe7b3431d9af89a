//! The lower bound on the size of a maximal orthogonal pair and the
//! per-square inequality behind it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frequency::{frequencies, Family};
use crate::maximality::is_maximal;
use crate::square::KPartialSquare;
use crate::validate::validate;

use super::transversal::{check_lemma2, max_empty_transversal, Region};

/// `ceil(n^2 / 3)`.
pub fn lower_bound(n: usize) -> usize {
    (n * n).div_ceil(3)
}

/// `ceil((n - m - t)^2 / 2 + (n - 3m)^2 / 6 + n^2 / 3)`.
pub fn inequality_rhs(n: usize, m: usize, t: usize) -> Result<usize> {
    if m > n || t > n - m {
        return Err(Error::Hypothesis(format!(
            "need 0 <= m <= n and 0 <= t <= n - m, got n = {n}, m = {m}, t = {t}"
        )));
    }
    let a = (n - m - t) as i128;
    let b = n as i128 - 3 * m as i128;
    let num = 3 * a * a + b * b + 2 * (n as i128) * (n as i128);
    Ok(((num + 5) / 6) as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub filled: usize,
    /// Minimum frequency over rows, columns and both entry layers.
    pub m: usize,
    /// The element attaining `m` that anchors the region.
    pub family: Family,
    pub element: usize,
    /// Size of the region (`n - m`) and of its maximum empty transversal.
    pub d: usize,
    pub t: usize,
    pub rhs: usize,
    pub lower_bound: usize,
    /// `filled >= rhs`.
    pub holds: bool,
    /// `filled == lower_bound`.
    pub tight: bool,
    pub lemma2_ok: bool,
}

/// Coordinate roles that move coordinate `c` into the first-entry slot and
/// keep the others in order.
fn roles_for(c: usize, arity: usize) -> Vec<usize> {
    let mut rest: Vec<usize> = (0..arity).filter(|&x| x != c).collect();
    rest.insert(2, c);
    rest
}

/// The region used by the bound: a minimum-frequency element is moved into
/// the first entry layer of `view`, and `region` holds the rows and columns
/// of `view` that avoid it.
#[derive(Debug, Clone)]
pub struct BoundRegion {
    pub view: KPartialSquare,
    pub family: Family,
    pub element: usize,
    pub region: Region,
}

pub fn bound_region(square: &KPartialSquare) -> Result<BoundRegion> {
    let n = square.order();
    let (family, element) = frequencies(square).min_element();
    let view = square.conjugate(&roles_for(family.coordinate(), square.arity()))?;
    let anchor: Vec<_> = view
        .iter_filled()
        .filter(|(_, e)| e[0] as usize == element)
        .map(|(c, _)| c)
        .collect();
    let region = Region::new(
        (0..n).filter(|r| anchor.iter().all(|c| c.row != *r)).collect(),
        (0..n).filter(|col| anchor.iter().all(|c| c.col != *col)).collect(),
    );
    Ok(BoundRegion {
        view,
        family,
        element,
        region,
    })
}

/// Locates a minimum-frequency element, views the square with that element
/// as a first entry, and evaluates the inequality on the region of rows and
/// columns that avoid it.
pub fn verify_bound(square: &KPartialSquare) -> Result<BoundReport> {
    if square.layers() != 2 {
        return Err(Error::Hypothesis(format!(
            "the bound applies to orthogonal pairs (k = 2), got k = {}",
            square.layers()
        )));
    }
    let report = validate(square);
    if !report.is_ok() {
        return Err(Error::InvalidSquare(report.summary()));
    }
    if !is_maximal(square).is_maximal() {
        return Err(Error::Hypothesis("square is not maximal".into()));
    }
    let n = square.order();
    let m = frequencies(square).min;
    let BoundRegion {
        view,
        family,
        element,
        region,
    } = bound_region(square)?;
    let t = max_empty_transversal(&view, &region)?.t;
    let lemma2_ok = check_lemma2(&view, &region)?.ok;
    let rhs = inequality_rhs(n, m, t)?;
    let filled = square.filled_count();
    Ok(BoundReport {
        n,
        filled,
        m,
        family,
        element,
        d: region.size(),
        t,
        rhs,
        lower_bound: lower_bound(n),
        holds: filled >= rhs,
        tight: filled == lower_bound(n),
        lemma2_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::min_mopls;
    use crate::maximality::{maximalize, MaximalizePolicy};

    #[test]
    fn lower_bound_values() {
        assert_eq!(lower_bound(21), 147);
        assert_eq!(lower_bound(22), 162);
        assert_eq!(lower_bound(1), 1);
        assert_eq!(lower_bound(4), 6);
    }

    #[test]
    fn rhs_arithmetic() {
        // direct rational arithmetic as the oracle
        let oracle = |n: f64, m: f64, t: f64| {
            ((n - m - t).powi(2) / 2.0 + (n - 3.0 * m).powi(2) / 6.0 + n * n / 3.0 - 1e-9).ceil() as usize
        };
        assert_eq!(inequality_rhs(9, 3, 6).unwrap(), 27);
        assert_eq!(inequality_rhs(7, 2, 5).unwrap(), 17);
        assert_eq!(inequality_rhs(3, 0, 3).unwrap(), 5);
        for n in 1..15 {
            for m in 0..=n {
                for t in 0..=n - m {
                    assert_eq!(inequality_rhs(n, m, t).unwrap(), oracle(n as f64, m as f64, t as f64));
                }
            }
        }
        assert!(inequality_rhs(3, 4, 0).is_err());
        assert!(inequality_rhs(3, 1, 3).is_err());
    }

    #[test]
    fn roles() {
        assert_eq!(roles_for(2, 4), vec![0, 1, 2, 3]);
        assert_eq!(roles_for(0, 4), vec![1, 2, 0, 3]);
        assert_eq!(roles_for(3, 4), vec![0, 1, 3, 2]);
    }

    #[test]
    fn tight_on_minimum_nine() {
        let r = verify_bound(&min_mopls(9).unwrap()).unwrap();
        assert_eq!((r.filled, r.m, r.t, r.rhs), (27, 3, 6, 27));
        assert!(r.holds && r.tight && r.lemma2_ok);
        assert_eq!(r.family, Family::Row);
    }

    #[test]
    fn holds_on_random_maximal() {
        let sq = maximalize(
            &KPartialSquare::new(5, 2).unwrap(),
            MaximalizePolicy::Random { seed: 3 },
        );
        let r = verify_bound(&sq).unwrap();
        assert!(r.holds);
        assert!(r.filled >= 9);
    }

    #[test]
    fn rejects_non_maximal() {
        assert!(matches!(
            verify_bound(&KPartialSquare::new(3, 2).unwrap()),
            Err(Error::Hypothesis(_))
        ));
    }
}
