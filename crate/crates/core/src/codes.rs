//! Squares as codes: each filled cell gives the word `(row, col, e_1, ..., e_k)`
//! of length `k + 2` over an alphabet of size `n`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::maximality::is_maximal;
use crate::square::{KPartialSquare, Symbol};

/// Largest word space the exact covering-radius scan will visit.
pub const WORD_SPACE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Code {
    pub length: usize,
    pub alphabet_size: usize,
    /// Distinct words in lexicographic order.
    pub words: BTreeSet<Vec<Symbol>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeMetrics {
    pub size: usize,
    pub length: usize,
    pub alphabet_size: usize,
    pub min_distance: Option<usize>,
    pub covering_radius: usize,
    /// A word at distance `covering_radius` from the code.
    pub farthest_word: Vec<Symbol>,
}

impl CodeMetrics {
    /// Length 4, ternary, 9 words, distance 3, radius 1: the parameters of
    /// the ternary Hamming code. Equivalence itself is not decided.
    pub fn has_ternary_hamming_parameters(&self) -> bool {
        self.length == 4
            && self.alphabet_size == 3
            && self.size == 9
            && self.min_distance == Some(3)
            && self.covering_radius == 1
    }
}

pub fn hamming(a: &[Symbol], b: &[Symbol]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

impl Code {
    pub fn new(length: usize, alphabet_size: usize, words: impl IntoIterator<Item = Vec<Symbol>>) -> Result<Self> {
        let words: BTreeSet<Vec<Symbol>> = words.into_iter().collect();
        for w in &words {
            if w.len() != length {
                return Err(Error::TupleLength {
                    got: w.len(),
                    expected: length,
                });
            }
            if let Some(&s) = w.iter().find(|&&s| s as usize >= alphabet_size) {
                return Err(Error::SymbolOutOfRange {
                    symbol: s as usize,
                    n: alphabet_size,
                });
            }
        }
        Ok(Code {
            length,
            alphabet_size,
            words,
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word_space(&self) -> u128 {
        (self.alphabet_size as u128).pow(self.length as u32)
    }

    /// One word per line, 1-based symbols separated by spaces.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for w in &self.words {
            let line: Vec<String> = w.iter().map(|&s| (s as usize + 1).to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

pub fn to_code(square: &KPartialSquare) -> Code {
    Code {
        length: square.arity(),
        alphabet_size: square.order(),
        words: square.tuples().into_iter().collect(),
    }
}

pub fn min_distance(code: &Code) -> Result<usize> {
    if code.len() < 2 {
        return Err(Error::Undefined(format!(
            "minimum distance of a code with {} word(s)",
            code.len()
        )));
    }
    let words: Vec<&Vec<Symbol>> = code.words.iter().collect();
    Ok(words
        .iter()
        .enumerate()
        .flat_map(|(i, a)| words[i + 1..].iter().map(move |b| hamming(a, b)))
        .min()
        .expect("at least one pair"))
}

/// Exact covering radius by scanning every word of the space, with the
/// lexicographically first word attaining it.
///
/// For each word the best agreement with any codeword is accumulated
/// through per-coordinate value indexes, so the cost per word is the number
/// of codewords sharing at least one coordinate value with it.
pub fn covering_radius(code: &Code) -> Result<(usize, Vec<Symbol>)> {
    if code.is_empty() {
        return Err(Error::Undefined("covering radius of the empty code".into()));
    }
    let space = code.word_space();
    if space > WORD_SPACE_LIMIT {
        return Err(Error::ComputeGate {
            words: space,
            limit: WORD_SPACE_LIMIT,
        });
    }
    let (len, q) = (code.length, code.alphabet_size);
    let words: Vec<&Vec<Symbol>> = code.words.iter().collect();
    let mut index = vec![Vec::<u32>::new(); len * q];
    for (id, w) in words.iter().enumerate() {
        for (i, &s) in w.iter().enumerate() {
            index[i * q + s as usize].push(id as u32);
        }
    }
    let tail_space = (space / q as u128) as usize;
    // one independent scan per value of the first coordinate
    let best = (0..q)
        .into_par_iter()
        .map(|first| {
            let mut agree = vec![0u8; words.len()];
            let mut touched: Vec<u32> = Vec::new();
            let mut word = vec![0 as Symbol; len];
            word[0] = first as Symbol;
            let mut best = (0usize, Vec::new());
            for _ in 0..tail_space {
                let mut top = 0u8;
                for (i, &s) in word.iter().enumerate() {
                    for &id in &index[i * q + s as usize] {
                        let a = &mut agree[id as usize];
                        if *a == 0 {
                            touched.push(id);
                        }
                        *a += 1;
                        top = top.max(*a);
                    }
                }
                for id in touched.drain(..) {
                    agree[id as usize] = 0;
                }
                let dist = len - top as usize;
                if dist > best.0 || best.1.is_empty() {
                    best = (dist, word.clone());
                }
                // odometer over coordinates 1..len
                for i in (1..len).rev() {
                    word[i] += 1;
                    if (word[i] as usize) < q {
                        break;
                    }
                    word[i] = 0;
                }
            }
            best
        })
        .reduce_with(|a, b| if b.0 > a.0 { b } else { a })
        .expect("alphabet is nonempty");
    Ok(best)
}

pub fn metrics(code: &Code) -> Result<CodeMetrics> {
    let (covering_radius, farthest_word) = covering_radius(code)?;
    Ok(CodeMetrics {
        size: code.len(),
        length: code.length,
        alphabet_size: code.alphabet_size,
        min_distance: min_distance(code).ok(),
        covering_radius,
        farthest_word,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeEquivalenceReport {
    pub n: usize,
    pub k: usize,
    pub maximal: bool,
    pub metrics: CodeMetrics,
    /// The code-side criterion: for `k = 2`, distance 3 or 4 and radius at
    /// most 2; for other `k`, radius at most `k`.
    pub code_criterion: bool,
    /// For `k = 2` whether `maximal == code_criterion`; otherwise whether
    /// `maximal` implies the criterion.
    pub holds: bool,
}

pub fn check_code_equivalence(square: &KPartialSquare) -> Result<CodeEquivalenceReport> {
    let (n, k) = (square.order(), square.layers());
    if k == 2 && n <= 3 {
        return Err(Error::Hypothesis(format!(
            "the distance-3 / radius-2 characterisation needs n > 3, got n = {n}"
        )));
    }
    let code = to_code(square);
    let metrics = metrics(&code)?;
    let maximal = is_maximal(square).is_maximal();
    let (code_criterion, holds) = if k == 2 {
        let c = matches!(metrics.min_distance, Some(3) | Some(4)) && metrics.covering_radius <= 2;
        (c, c == maximal)
    } else {
        let c = metrics.covering_radius <= k;
        (c, !maximal || c)
    };
    Ok(CodeEquivalenceReport {
        n,
        k,
        maximal,
        metrics,
        code_criterion,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::k_mols_field;
    use crate::square::Cell;

    fn naive_radius(code: &Code) -> usize {
        let (len, q) = (code.length, code.alphabet_size);
        let mut word = vec![0 as Symbol; len];
        let mut best = 0;
        loop {
            let d = code.words.iter().map(|c| hamming(c, &word)).min().unwrap();
            best = best.max(d);
            let mut i = len;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                word[i] += 1;
                if (word[i] as usize) < q {
                    break;
                }
                word[i] = 0;
            }
        }
    }

    #[test]
    fn single_word_radius_is_length() {
        let code = Code::new(4, 2, [vec![0, 0, 0, 0]]).unwrap();
        let (r, w) = covering_radius(&code).unwrap();
        assert_eq!(r, 4);
        assert_eq!(w, vec![1, 1, 1, 1]);
        assert!(min_distance(&code).is_err());
    }

    #[test]
    fn distance_one_pair() {
        let code = Code::new(4, 3, [vec![0, 1, 2, 0], vec![0, 1, 2, 1]]).unwrap();
        assert_eq!(min_distance(&code).unwrap(), 1);
    }

    #[test]
    fn empty_code_undefined() {
        let code = to_code(&KPartialSquare::new(3, 2).unwrap());
        assert!(code.is_empty());
        assert!(matches!(covering_radius(&code), Err(Error::Undefined(_))));
    }

    #[test]
    fn ols3_is_perfect() {
        let code = to_code(k_mols_field(3, 2).unwrap().square());
        let m = metrics(&code).unwrap();
        assert_eq!((m.size, m.min_distance, m.covering_radius), (9, Some(3), 1));
        assert!(m.has_ternary_hamming_parameters());
    }

    #[test]
    fn diagonal_three_has_distance_four() {
        let mut sq = KPartialSquare::new(3, 2).unwrap();
        for i in 0..3 {
            sq.insert(Cell::new(i, i), [i as Symbol, i as Symbol]).unwrap();
        }
        assert_eq!(min_distance(&to_code(&sq)).unwrap(), 4);
    }

    #[test]
    fn radius_matches_naive_scan() {
        let codes = [
            Code::new(3, 4, [vec![0, 1, 2], vec![3, 3, 0], vec![1, 0, 0]]).unwrap(),
            Code::new(4, 3, [vec![0, 0, 0, 0], vec![1, 1, 1, 1], vec![2, 2, 0, 1]]).unwrap(),
            Code::new(5, 2, [vec![0, 1, 0, 1, 1]]).unwrap(),
        ];
        for code in &codes {
            assert_eq!(covering_radius(code).unwrap().0, naive_radius(code));
        }
    }

    #[test]
    fn gate_rejects_huge_spaces() {
        let code = Code::new(5, 40, [vec![0; 5]]).unwrap();
        assert!(matches!(covering_radius(&code), Err(Error::ComputeGate { .. })));
    }

    #[test]
    fn export_is_one_based() {
        let code = Code::new(4, 3, [vec![2, 0, 1, 0], vec![0, 0, 0, 0]]).unwrap();
        assert_eq!(code.export(), "1 1 1 1\n3 1 2 1\n");
    }
}
