//! Exhaustive search for the smallest maximal squares of small order.
//!
//! Squares are enumerated level by level (level `F` holds every valid square
//! with `F` filled cells), one representative per orbit under row, column and
//! per-layer symbol permutations. Every subset of a valid square is valid, so
//! level `F + 1` is exactly the set of one-cell extensions of level `F`.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frequency::frequencies;
use crate::graphview::complement;
use crate::maximality::candidate_tuples;
use crate::square::{Cell, EntryTuple, KPartialSquare, Symbol};
use crate::verify::lower_bound;

/// Largest order for which the symmetry-reduced canonical form is offered;
/// it scans `(n!)^2` arrangements per square.
pub const MAX_CANONICAL_ORDER: usize = 6;

/// Grid of `n * n * k` bytes: 0 for an empty cell, otherwise symbol + 1.
pub type Key = Vec<u8>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Converts between squares and keys, optionally modulo symmetry.
#[derive(Debug, Clone)]
pub struct Canonicalizer {
    n: usize,
    k: usize,
    symmetry: bool,
    perms: Vec<Vec<usize>>,
}

impl Canonicalizer {
    pub fn new(n: usize, k: usize, symmetry: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        if k == 0 {
            return Err(Error::ZeroLayers);
        }
        if n > 254 {
            return Err(Error::Unsupported(format!("order {n} does not fit a byte key")));
        }
        if symmetry && n > MAX_CANONICAL_ORDER {
            return Err(Error::Unsupported(format!(
                "symmetry reduction is limited to n <= {MAX_CANONICAL_ORDER}, got n = {n}"
            )));
        }
        Ok(Canonicalizer {
            n,
            k,
            symmetry,
            perms: if symmetry { permutations(n) } else { Vec::new() },
        })
    }

    fn raw(&self, square: &KPartialSquare) -> Key {
        let mut key = vec![0u8; self.n * self.n * self.k];
        for (cell, e) in square.iter_filled() {
            let base = (cell.row * self.n + cell.col) * self.k;
            for (l, &s) in e.iter().enumerate() {
                key[base + l] = s as u8 + 1;
            }
        }
        key
    }

    /// Lexicographically least key over all row and column permutations,
    /// with the symbols of each layer renamed in order of first appearance.
    pub fn key(&self, square: &KPartialSquare) -> Key {
        let raw = self.raw(square);
        if !self.symmetry {
            return raw;
        }
        let (n, k) = (self.n, self.k);
        let mut best: Key = vec![u8::MAX; n * n * k];
        let mut cand: Key = vec![0; n * n * k];
        let mut labels = vec![0u8; k * (n + 1)];
        for p in &self.perms {
            for q in &self.perms {
                labels.iter_mut().for_each(|x| *x = 0);
                let mut next = vec![1u8; k];
                let mut less = false;
                let mut pos = 0;
                'scan: for &r in p {
                    for &c in q {
                        let base = (r * n + c) * k;
                        for l in 0..k {
                            let v = raw[base + l];
                            let b = if v == 0 {
                                0
                            } else {
                                let slot = &mut labels[l * (n + 1) + v as usize];
                                if *slot == 0 {
                                    *slot = next[l];
                                    next[l] += 1;
                                }
                                *slot
                            };
                            if !less {
                                if b > best[pos] {
                                    break 'scan;
                                }
                                less = b < best[pos];
                            }
                            cand[pos] = b;
                            pos += 1;
                        }
                    }
                }
                if less {
                    std::mem::swap(&mut best, &mut cand);
                }
            }
        }
        best
    }

    pub fn decode(&self, key: &[u8]) -> Result<KPartialSquare> {
        let (n, k) = (self.n, self.k);
        if key.len() != n * n * k {
            return Err(Error::Parse {
                line: 0,
                message: format!("key has {} bytes, expected {}", key.len(), n * n * k),
            });
        }
        let cells = (0..n * n).filter(|&i| key[i * k] != 0).map(|i| {
            let entries: Vec<Symbol> = key[i * k..(i + 1) * k].iter().map(|&b| b as Symbol - 1).collect();
            (Cell::new(i / n, i % n), EntryTuple::from(entries))
        });
        KPartialSquare::from_cells_unvalidated(n, k, cells)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStats {
    pub filled: usize,
    /// Squares (orbits when symmetry is on) with this many filled cells.
    pub squares: usize,
    pub maximal: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    /// Least filled-cell count of a maximal square when `exhaustive`;
    /// otherwise only an upper bound, or `None` if nothing was found.
    pub min_f: Option<usize>,
    /// Every square with fewer filled cells than this was examined and none
    /// is maximal.
    pub proven_lower: usize,
    #[serde(skip)]
    pub witness: Option<KPartialSquare>,
    pub nodes_explored: u64,
    pub exhaustive: bool,
    pub symmetry_reduced: bool,
    pub levels: Vec<LevelStats>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of expanded squares; `None` for no limit.
    pub budget: Option<u64>,
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            symmetry: true,
        }
    }
}

/// Frontier saved at a level boundary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub k: usize,
    pub symmetry: bool,
    pub filled: usize,
    pub nodes_explored: u64,
    pub levels: Vec<LevelStats>,
    /// Hex-encoded keys.
    pub frontier: Vec<String>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(self)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }
}

struct Expansion {
    children: Vec<Key>,
    maximal: bool,
}

fn expand(canon: &Canonicalizer, key: &[u8]) -> Result<Expansion> {
    let square = canon.decode(key)?;
    let mut children = Vec::new();
    for cell in square.iter_empty().collect::<Vec<_>>() {
        for t in candidate_tuples(&square, cell)? {
            let mut child = square.clone();
            child.insert(cell, t)?;
            children.push(canon.key(&child));
        }
    }
    children.sort_unstable();
    children.dedup();
    Ok(Expansion {
        maximal: children.is_empty(),
        children,
    })
}

/// Level-by-level driver shared by the minimum search and the exhaustive
/// bound check. `visit` sees each level's maximal keys and may stop the walk
/// by returning `false`.
struct Walk {
    canon: Canonicalizer,
    frontier: Vec<Key>,
    filled: usize,
    nodes: u64,
    levels: Vec<LevelStats>,
    checkpoint: Option<PathBuf>,
}

enum WalkEnd {
    Finished,
    Stopped,
    Budget,
}

impl Walk {
    fn start(n: usize, k: usize, opts: &SearchOptions, checkpoint: Option<&Path>) -> Result<Self> {
        let canon = Canonicalizer::new(n, k, opts.symmetry)?;
        if let Some(path) = checkpoint.filter(|p| p.exists()) {
            let cp = Checkpoint::load(path)?;
            if (cp.n, cp.k, cp.symmetry) != (n, k, opts.symmetry) {
                return Err(Error::Hypothesis(format!(
                    "checkpoint is for n = {}, k = {}, symmetry = {}",
                    cp.n, cp.k, cp.symmetry
                )));
            }
            let frontier = cp
                .frontier
                .iter()
                .map(|h| {
                    hex::decode(h).map_err(|e| Error::Parse {
                        line: 0,
                        message: format!("bad checkpoint key: {e}"),
                    })
                })
                .collect::<Result<_>>()?;
            return Ok(Walk {
                canon,
                frontier,
                filled: cp.filled,
                nodes: cp.nodes_explored,
                levels: cp.levels,
                checkpoint: Some(path.to_path_buf()),
            });
        }
        let empty = KPartialSquare::new(n, k)?;
        Ok(Walk {
            frontier: vec![canon.key(&empty)],
            canon,
            filled: 0,
            nodes: 0,
            levels: Vec::new(),
            checkpoint: checkpoint.map(Path::to_path_buf),
        })
    }

    fn save(&self) -> Result<()> {
        if let Some(path) = &self.checkpoint {
            Checkpoint {
                n: self.canon.n,
                k: self.canon.k,
                symmetry: self.canon.symmetry,
                filled: self.filled,
                nodes_explored: self.nodes,
                levels: self.levels.clone(),
                frontier: self.frontier.iter().map(hex::encode).collect(),
            }
            .save(path)?;
        }
        Ok(())
    }

    fn run(&mut self, budget: Option<u64>, mut visit: impl FnMut(usize, &[Key]) -> Result<bool>) -> Result<WalkEnd> {
        while !self.frontier.is_empty() {
            self.save()?;
            if budget.is_some_and(|b| self.nodes + self.frontier.len() as u64 > b) {
                return Ok(WalkEnd::Budget);
            }
            let expansions: Vec<Expansion> = self
                .frontier
                .par_iter()
                .map(|key| expand(&self.canon, key))
                .collect::<Result<_>>()?;
            self.nodes += self.frontier.len() as u64;
            let mut maximal = Vec::new();
            let mut next = Vec::new();
            for (key, e) in self.frontier.iter().zip(expansions) {
                if e.maximal {
                    maximal.push(key.clone());
                }
                next.extend(e.children);
            }
            next.par_sort_unstable();
            next.dedup();
            self.levels.push(LevelStats {
                filled: self.filled,
                squares: self.frontier.len(),
                maximal: maximal.len(),
            });
            let go_on = visit(self.filled, &maximal)?;
            self.frontier = next;
            self.filled += 1;
            if !go_on {
                return Ok(WalkEnd::Stopped);
            }
        }
        self.save()?;
        Ok(WalkEnd::Finished)
    }
}

/// Least number of filled cells in a maximal `k`-OPLS(`n`).
///
/// With a checkpoint path the frontier is written at every level boundary
/// and an existing file there is resumed from.
pub fn min_maximal(n: usize, k: usize, opts: SearchOptions, checkpoint: Option<&Path>) -> Result<SearchResult> {
    let mut walk = Walk::start(n, k, &opts, checkpoint)?;
    let mut found: Option<(usize, Key)> = None;
    let end = walk.run(opts.budget, |filled, maximal| {
        if let Some(first) = maximal.first() {
            found = Some((filled, first.clone()));
            return Ok(false);
        }
        Ok(true)
    })?;
    let proven_lower = walk.filled - usize::from(found.is_some());
    let (min_f, witness, exhaustive) = match (found, end) {
        (Some((f, key)), _) => (Some(f), Some(walk.canon.decode(&key)?), true),
        (None, WalkEnd::Budget) => {
            // any maximal completion of a frontier square bounds the minimum
            let best = walk
                .frontier
                .iter()
                .take(64)
                .map(|key| {
                    walk.canon
                        .decode(key)
                        .map(|sq| crate::maximality::maximalize(&sq, Default::default()))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min_by_key(KPartialSquare::filled_count);
            (best.as_ref().map(KPartialSquare::filled_count), best, false)
        }
        (None, _) => {
            return Err(Error::Infeasible("search ended without a maximal square".into()));
        }
    };
    Ok(SearchResult {
        n,
        k,
        min_f,
        proven_lower,
        witness,
        nodes_explored: walk.nodes,
        exhaustive,
        symmetry_reduced: opts.symmetry,
        levels: walk.levels,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExhaustiveBoundReport {
    pub n: usize,
    pub lower_bound: usize,
    pub exhaustive: bool,
    pub nodes_explored: u64,
    pub min_f: Option<usize>,
    /// `(filled, count)` for every level with at least one maximal square.
    pub maximal_by_filled: Vec<(usize, usize)>,
    /// Maximal squares below the bound; must be empty.
    #[serde(skip)]
    pub below_bound: Vec<KPartialSquare>,
    /// Maximal squares at the bound with some frequency other than `n / 3`.
    #[serde(skip)]
    pub unbalanced_tight: Vec<KPartialSquare>,
    /// Maximal squares whose complement graph contains a transversal clique.
    #[serde(skip)]
    pub clique_disagreements: Vec<KPartialSquare>,
    #[serde(skip)]
    pub tight_witnesses: Vec<KPartialSquare>,
    pub levels: Vec<LevelStats>,
    pub ok: bool,
}

/// Walks every valid orthogonal pair of order `n` (up to symmetry) and checks
/// each maximal one against the size bound, its equality case, and the
/// complement-graph characterisation.
pub fn verify_bound_exhaustive(n: usize, budget: Option<u64>) -> Result<ExhaustiveBoundReport> {
    let opts = SearchOptions { budget, symmetry: true };
    let mut walk = Walk::start(n, 2, &opts, None)?;
    let canon = walk.canon.clone();
    let bound = lower_bound(n);
    let mut maximal_by_filled = Vec::new();
    let mut below_bound = Vec::new();
    let mut unbalanced_tight = Vec::new();
    let mut clique_disagreements = Vec::new();
    let mut tight_witnesses = Vec::new();
    let end = walk.run(budget, |filled, maximal| {
        if !maximal.is_empty() {
            maximal_by_filled.push((filled, maximal.len()));
        }
        for key in maximal {
            let sq = canon.decode(key)?;
            if !complement(&sq).has_clique().is_free() {
                clique_disagreements.push(sq.clone());
            }
            if filled < bound {
                below_bound.push(sq);
            } else if filled == bound {
                if n.is_multiple_of(3) && frequencies(&sq).all().any(|f| f != n / 3) {
                    unbalanced_tight.push(sq.clone());
                }
                tight_witnesses.push(sq);
            }
        }
        Ok(true)
    })?;
    let exhaustive = matches!(end, WalkEnd::Finished);
    let ok = below_bound.is_empty() && unbalanced_tight.is_empty() && clique_disagreements.is_empty();
    Ok(ExhaustiveBoundReport {
        n,
        lower_bound: bound,
        exhaustive,
        nodes_explored: walk.nodes,
        min_f: maximal_by_filled.first().map(|&(f, _)| f),
        maximal_by_filled,
        below_bound,
        unbalanced_tight,
        clique_disagreements,
        tight_witnesses,
        levels: walk.levels,
        ok,
    })
}
