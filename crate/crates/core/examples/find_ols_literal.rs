//! Offline search for a pair of orthogonal Latin squares of order `m`.
//!
//! Draws random Latin squares, enumerates their transversals and looks for
//! `m` pairwise disjoint ones (an exact cover of the cells); labelling the
//! cells of the `i`-th transversal with `i` gives an orthogonal mate.
//!
//!     cargo run --release --example find_ols_literal -- 10 crates/core/data/ols10.json

use std::time::Instant;

use mopls::format::to_json;
use mopls::validate::validate;
use mopls::{Cell, EntryTuple, KPartialSquare, Symbol};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Mask = [u64; 4];

fn set(mask: &mut Mask, bit: usize) {
    mask[bit / 64] |= 1 << (bit % 64);
}

fn disjoint(a: &Mask, b: &Mask) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

/// Random Latin square, one random perfect matching (column -> unused symbol) per row.
fn random_latin(m: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut col_used = vec![vec![false; m]; m];
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        // sym_of_col[c], col_of_sym[s]
        let mut col_of_sym: Vec<Option<usize>> = vec![None; m];
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        for &c in &order {
            let mut seen = vec![false; m];
            assert!(augment(c, &col_used, &mut col_of_sym, &mut seen, rng));
        }
        let mut row = vec![0; m];
        for (s, c) in col_of_sym.iter().enumerate() {
            let c = c.unwrap();
            row[c] = s;
            col_used[c][s] = true;
        }
        rows.push(row);
    }
    rows
}

fn augment(
    c: usize,
    col_used: &[Vec<bool>],
    col_of_sym: &mut [Option<usize>],
    seen: &mut [bool],
    rng: &mut ChaCha8Rng,
) -> bool {
    let m = col_of_sym.len();
    let mut syms: Vec<usize> = (0..m).filter(|&s| !col_used[c][s]).collect();
    syms.shuffle(rng);
    for s in syms {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let free = match col_of_sym[s] {
            None => true,
            Some(other) => augment(other, col_used, col_of_sym, seen, rng),
        };
        if free {
            col_of_sym[s] = Some(c);
            return true;
        }
    }
    false
}

fn transversals(sq: &[Vec<usize>]) -> Vec<Vec<Mask>> {
    let m = sq.len();
    let mut by_first_col = vec![Vec::new(); m];
    let mut cols = vec![0usize; m];
    fn rec(sq: &[Vec<usize>], row: usize, used_cols: u64, used_syms: u64, cols: &mut [usize], out: &mut [Vec<Mask>]) {
        let m = sq.len();
        if row == m {
            let mut mask = [0; 4];
            for (r, &c) in cols.iter().enumerate() {
                set(&mut mask, r * m + c);
            }
            out[cols[0]].push(mask);
            return;
        }
        for c in 0..m {
            let s = sq[row][c];
            if used_cols >> c & 1 == 0 && used_syms >> s & 1 == 0 {
                cols[row] = c;
                rec(sq, row + 1, used_cols | 1 << c, used_syms | 1 << s, cols, out);
            }
        }
    }
    rec(sq, 0, 0, 0, &mut cols, &mut by_first_col);
    by_first_col
}

fn cover(groups: &[Vec<Mask>], used: Mask, chosen: &mut Vec<Mask>, budget: &mut u64) -> bool {
    if chosen.len() == groups.len() {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    // most constrained remaining first-row column
    let (best, _) = groups
        .iter()
        .enumerate()
        .filter(|(j, _)| chosen_col(chosen, *j).is_none())
        .map(|(j, g)| (j, g.iter().filter(|t| disjoint(t, &used)).count()))
        .min_by_key(|&(_, count)| count)
        .unwrap();
    for t in &groups[best] {
        if !disjoint(t, &used) {
            continue;
        }
        let mut next = used;
        for (a, b) in next.iter_mut().zip(t) {
            *a |= b;
        }
        chosen.push(*t);
        if cover(groups, next, chosen, budget) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn chosen_col(chosen: &[Mask], j: usize) -> Option<usize> {
    chosen.iter().position(|t| t[0] >> j & 1 == 1)
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let m: usize = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(10);
    let out = args.get(2).cloned();
    assert!(m <= 16, "cell masks hold at most 256 cells");
    let seed: u64 = args.get(3).and_then(|a| a.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    for attempt in 0.. {
        let sq = random_latin(m, &mut rng);
        let groups = transversals(&sq);
        let total: usize = groups.iter().map(Vec::len).sum();
        let mut chosen = Vec::new();
        let mut budget = 2_000_000;
        let found = cover(&groups, [0; 4], &mut chosen, &mut budget);
        eprintln!(
            "attempt {attempt}: {total} transversals, found={found} ({:.1?})",
            start.elapsed()
        );
        if !found {
            continue;
        }
        let mut mate = vec![vec![0usize; m]; m];
        for (label, t) in chosen.iter().enumerate() {
            for (r, row) in mate.iter_mut().enumerate() {
                for (c, slot) in row.iter_mut().enumerate() {
                    let bit = r * m + c;
                    if t[bit / 64] >> (bit % 64) & 1 == 1 {
                        *slot = label;
                    }
                }
            }
        }
        let cells = (0..m).flat_map(|r| {
            let (sq, mate) = (&sq, &mate);
            (0..m).map(move |c| {
                (
                    Cell::new(r, c),
                    EntryTuple::new(&[sq[r][c] as Symbol, mate[r][c] as Symbol]),
                )
            })
        });
        let ols = KPartialSquare::from_cells_unvalidated(m, 2, cells).unwrap();
        assert!(validate(&ols).is_ok());
        let json = to_json(&ols).unwrap();
        match &out {
            Some(path) => std::fs::write(path, json + "\n").unwrap(),
            None => println!("{json}"),
        }
        return;
    }
}
