//! The complement-graph view of a square.
//!
//! A square with `k` layers lives in the complete `(k + 2)`-partite graph with
//! parts of size `n` (rows, columns, then the symbols of each layer). Every
//! filled cell covers the edges of one `K_{k+2}`; the complement graph keeps
//! the uncovered edges. The square is maximal exactly when the complement
//! has no `K_{k+2}` with one vertex per part.
//!
//! Clique search here deliberately does not reuse the candidate machinery of
//! [`crate::maximality`]; the two are cross-checked against each other.

use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::maximality::ExtensionWitness;
use crate::square::{Cell, EntryTuple, KPartialSquare, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn full(n: usize) -> Self {
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for row in bits.chunks_mut(words) {
            for v in 0..n {
                row[v / 64] |= 1 << (v % 64);
            }
        }
        BitMatrix { words, bits }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    fn clear(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
    }

    fn get(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }
}

fn ones(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + b)
        })
    })
}

/// Label of vertex `v` in part `p`: `r3`, `c0`, `s1_4` (layer 1, symbol 4).
pub fn vertex_label(part: usize, v: usize) -> String {
    match part {
        0 => format!("r{v}"),
        1 => format!("c{v}"),
        p => format!("s{}_{v}", p - 2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementGraph {
    n: usize,
    parts: usize,
    /// `adj[i * parts + j]` row `u` is the neighbourhood in part `j` of vertex
    /// `u` of part `i`; the diagonal entries are unused.
    adj: Vec<BitMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CliqueVerdict {
    Free,
    /// One vertex per part, in part order.
    Clique {
        vertices: Vec<usize>,
    },
}

impl CliqueVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, CliqueVerdict::Free)
    }

    /// The insertion a transversal clique encodes.
    pub fn witness(&self) -> Option<ExtensionWitness> {
        match self {
            CliqueVerdict::Free => None,
            CliqueVerdict::Clique { vertices } => Some(ExtensionWitness {
                cell: Cell::new(vertices[0], vertices[1]),
                tuple: EntryTuple::from(vertices[2..].iter().map(|&v| v as Symbol).collect::<Vec<_>>()),
            }),
        }
    }
}

/// Edge densities between every pair of parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityMatrix {
    pub parts: usize,
    pub n: usize,
    /// `edges[i][j]` edges between parts `i` and `j` (0 on the diagonal).
    pub edges: Vec<Vec<usize>>,
}

impl DensityMatrix {
    pub fn density(&self, i: usize, j: usize) -> Ratio<u64> {
        Ratio::new(self.edges[i][j] as u64, (self.n * self.n) as u64)
    }

    /// Densities of all unordered part pairs `i < j`.
    pub fn pairs(&self) -> Vec<((usize, usize), Ratio<u64>)> {
        let mut out = Vec::new();
        for i in 0..self.parts {
            for j in i + 1..self.parts {
                out.push(((i, j), self.density(i, j)));
            }
        }
        out
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            parts: (usize, usize),
            edges: usize,
            density: String,
        }
        let entries: Vec<Entry> = self
            .pairs()
            .into_iter()
            .map(|((i, j), d)| Entry {
                parts: (i, j),
                edges: self.edges[i][j],
                density: d.to_string(),
            })
            .collect();
        entries.serialize(s)
    }
}

impl ComplementGraph {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    fn matrix(&self, i: usize, j: usize) -> &BitMatrix {
        &self.adj[i * self.parts + j]
    }

    pub fn has_edge(&self, (pi, u): (usize, usize), (pj, v): (usize, usize)) -> bool {
        pi != pj && self.matrix(pi, pj).get(u, v)
    }

    /// Neighbours of vertex `u` of part `i` inside part `j`.
    pub fn neighbours(&self, i: usize, u: usize, j: usize) -> Vec<usize> {
        if i == j {
            return Vec::new();
        }
        ones(self.matrix(i, j).row(u)).collect()
    }

    pub fn edges_between(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 0;
        }
        self.matrix(i, j).bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.parts)
            .flat_map(|i| (i + 1..self.parts).map(move |j| (i, j)))
            .map(|(i, j)| self.edges_between(i, j))
            .sum()
    }

    /// Edges from vertex `u` of part `i` into part `j`.
    pub fn degree_into(&self, i: usize, u: usize, j: usize) -> usize {
        if i == j {
            return 0;
        }
        self.matrix(i, j).row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degree(&self, i: usize, u: usize) -> usize {
        (0..self.parts).map(|j| self.degree_into(i, u, j)).sum()
    }

    pub fn densities(&self) -> DensityMatrix {
        let edges = (0..self.parts)
            .map(|i| (0..self.parts).map(|j| self.edges_between(i, j)).collect())
            .collect();
        DensityMatrix {
            parts: self.parts,
            n: self.n,
            edges,
        }
    }

    fn extend_clique(&self, chosen: &mut Vec<usize>, cands: &[Vec<u64>]) -> bool {
        let p = chosen.len();
        if p == self.parts {
            return true;
        }
        for v in ones(&cands[p]) {
            let narrowed: Vec<Vec<u64>> = (0..self.parts)
                .map(|q| {
                    if q <= p {
                        cands[q].clone()
                    } else {
                        cands[q]
                            .iter()
                            .zip(self.matrix(p, q).row(v))
                            .map(|(a, b)| a & b)
                            .collect()
                    }
                })
                .collect();
            if narrowed[p + 1..].iter().any(|s| s.iter().all(|&w| w == 0)) {
                continue;
            }
            chosen.push(v);
            if self.extend_clique(chosen, &narrowed) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Clique with one vertex in every part, preferring the least row, then
    /// column, then symbols in layer order.
    pub fn has_clique(&self) -> CliqueVerdict {
        let found = (0..self.n).into_par_iter().find_map_first(|r| {
            for c in ones(self.matrix(0, 1).row(r)) {
                let cands: Vec<Vec<u64>> = (0..self.parts)
                    .map(|q| match q {
                        0 | 1 => vec![],
                        q => self
                            .matrix(0, q)
                            .row(r)
                            .iter()
                            .zip(self.matrix(1, q).row(c))
                            .map(|(a, b)| a & b)
                            .collect(),
                    })
                    .collect();
                let mut chosen = vec![r, c];
                if self.extend_clique(&mut chosen, &cands) {
                    return Some(chosen);
                }
            }
            None
        });
        match found {
            None => CliqueVerdict::Free,
            Some(vertices) => CliqueVerdict::Clique { vertices },
        }
    }

    /// One `u v` line per edge, parts in increasing order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for i in 0..self.parts {
            for j in i + 1..self.parts {
                for u in 0..self.n {
                    for v in ones(self.matrix(i, j).row(u)) {
                        let _ = writeln!(out, "{} {}", vertex_label(i, u), vertex_label(j, v));
                    }
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph complement {\n");
        for i in 0..self.parts {
            let _ = writeln!(out, "  subgraph part{i} {{");
            for u in 0..self.n {
                let _ = writeln!(out, "    {};", vertex_label(i, u));
            }
            out.push_str("  }\n");
        }
        for line in self.to_edge_list().lines() {
            let (u, v) = line.split_once(' ').expect("edge line has two labels");
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// The complement of the graph covered by the square's filled cells.
pub fn complement(square: &KPartialSquare) -> ComplementGraph {
    let n = square.order();
    let parts = square.arity();
    let mut adj: Vec<BitMatrix> = (0..parts * parts).map(|_| BitMatrix::full(n)).collect();
    for (cell, e) in square.iter_filled() {
        let coord = |p: usize| match p {
            0 => cell.row,
            1 => cell.col,
            p => e[p - 2] as usize,
        };
        for i in 0..parts {
            for j in 0..parts {
                if i != j {
                    adj[i * parts + j].clear(coord(i), coord(j));
                }
            }
        }
    }
    ComplementGraph { n, parts, adj }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{k_mols_field, min_mopls};

    #[test]
    fn full_square_has_empty_complement() {
        let sq = k_mols_field(3, 2).unwrap().into_square();
        let g = complement(&sq);
        assert_eq!(g.edge_count(), 0);
        assert!(g.has_clique().is_free());
        assert_eq!(g.densities().density(0, 3), Ratio::new(0, 1));
    }

    #[test]
    fn empty_square_is_complete_multipartite() {
        let g = complement(&KPartialSquare::new(3, 2).unwrap());
        assert_eq!(g.edge_count(), 6 * 9);
        assert_eq!(g.densities().density(1, 2), Ratio::new(1, 1));
        let two = complement(&KPartialSquare::new(2, 2).unwrap());
        assert_eq!(
            two.has_clique(),
            CliqueVerdict::Clique {
                vertices: vec![0, 0, 0, 0]
            }
        );
    }

    #[test]
    fn minimum_nine_counts() {
        let g = complement(&min_mopls(9).unwrap());
        for i in 0..4 {
            for j in i + 1..4 {
                assert_eq!(g.edges_between(i, j), 54);
            }
        }
        assert_eq!(g.edge_count(), 324);
        assert!(g.has_clique().is_free());
        assert!(g.densities().pairs().iter().all(|(_, d)| *d == Ratio::new(2, 3)));
    }

    #[test]
    fn exports_label_parts() {
        let mut sq = KPartialSquare::new(2, 1).unwrap();
        sq.insert(Cell::new(0, 0), [1]).unwrap();
        let g = complement(&sq);
        let edges = g.to_edge_list();
        assert!(edges.contains("r0 c1\n"));
        assert!(!edges.contains("r0 c0\n"));
        assert!(edges.contains("c1 s0_1\n"));
        assert!(!edges.contains("r0 s0_1\n"));
        assert_eq!(edges.lines().count(), g.edge_count());
        let dot = g.to_dot();
        assert!(dot.starts_with("graph complement {"));
        assert!(dot.contains("r0 -- c1;"));
    }
}
