//! Independent oracles: boundary matrices, Smith forms and homology computed
//! from scratch with machine integers, sharing no code with the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Invariant factors by plain Euclidean elimination, then gcd/lcm repair of the diagonal.
pub fn naive_invariant_factors(a: &[Vec<i64>]) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] != 0)
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                while m[i][t] != 0 {
                    let q = m[i][t] / m[t][t];
                    let pivot_row = m[t].clone();
                    for (x, v) in m[i].iter_mut().zip(&pivot_row).skip(t) {
                        *x -= q * v;
                    }
                    if m[i][t] != 0 {
                        m.swap(i, t);
                    }
                }
            }
            for j in t + 1..cols {
                while m[t][j] != 0 {
                    let q = m[t][j] / m[t][t];
                    for row in m.iter_mut().skip(t) {
                        let v = row[t];
                        row[j] -= q * v;
                    }
                    if m[t][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(j, t);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty && (t + 1..rows).all(|i| m[i][t] == 0) {
                break;
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    loop {
        let mut changed = false;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                if diag[j] % diag[i] != 0 {
                    let g = gcd(diag[i], diag[j]);
                    let l = diag[i] / g * diag[j];
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            return diag;
        }
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as quotients of determinantal divisors. Small matrices only.
pub fn determinantal_invariant_factors(a: &[Vec<i64>]) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j] as i128).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleGroup {
    pub rank: usize,
    pub torsion: Vec<i128>,
}

/// Face-closed simplex lists by dimension, each simplex as sorted vertex labels
/// ordered by first appearance in `order`.
pub struct OracleComplex {
    pub order: Vec<String>,
    pub cells: Vec<Vec<Vec<usize>>>,
}

impl OracleComplex {
    pub fn new(order: &[String], tops: &[Vec<String>]) -> Self {
        let mut order: Vec<String> = order.to_vec();
        for t in tops {
            for v in t {
                if !order.contains(v) {
                    order.push(v.clone());
                }
            }
        }
        let idx: BTreeMap<&str, usize> = order.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for t in tops {
            let mut s: Vec<usize> = t.iter().map(|v| idx[v.as_str()]).collect();
            s.sort();
            let k = s.len();
            for mask in 1u32..(1 << k) {
                all.insert((0..k).filter(|b| mask & (1 << b) != 0).map(|b| s[b]).collect());
            }
        }
        let dim = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut cells = vec![Vec::new(); dim];
        for s in all {
            cells[s.len() - 1].push(s);
        }
        OracleComplex { cells, order }
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    fn labels_to_cell(&self, labels: &[String]) -> Vec<usize> {
        let mut s: Vec<usize> = labels.iter().map(|l| self.order.iter().position(|o| o == l).unwrap()).collect();
        s.sort();
        s
    }
}

/// Homology of `(K, L)` with `L` given by its top simplices in `K`'s labels.
pub fn oracle_homology(k: &OracleComplex, sub_tops: &[Vec<String>]) -> Vec<OracleGroup> {
    let mut in_sub: BTreeSet<Vec<usize>> = BTreeSet::new();
    for t in sub_tops {
        let s = k.labels_to_cell(t);
        for mask in 1u32..(1 << s.len()) {
            in_sub.insert((0..s.len()).filter(|b| mask & (1 << b) != 0).map(|b| s[b]).collect());
        }
    }
    let rel: Vec<Vec<&Vec<usize>>> =
        k.cells.iter().map(|c| c.iter().filter(|s| !in_sub.contains(*s)).collect()).collect();
    // boundary[q]: C_q -> C_{q-1}
    let boundary = |q: usize| -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; rel[q].len()]; rel[q - 1].len()];
        for (j, s) in rel[q].iter().enumerate() {
            for i in 0..s.len() {
                let mut face = (*s).clone();
                face.remove(i);
                if let Some(r) = rel[q - 1].iter().position(|f| **f == face) {
                    m[r][j] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        m
    };
    let factors: Vec<Vec<i128>> =
        (0..=k.dim() + 1).map(|q| if q == 0 || q > k.dim() { vec![] } else { naive_invariant_factors(&boundary(q)) }).collect();
    (0..=k.dim())
        .map(|q| {
            let rank = rel[q].len() - factors[q].len() - factors[q + 1].len();
            OracleGroup { rank, torsion: factors[q + 1].iter().copied().filter(|&d| d > 1).collect() }
        })
        .collect()
}

/// Cohomology from homology by universal coefficients.
pub fn oracle_cohomology(h: &[OracleGroup]) -> Vec<OracleGroup> {
    (0..h.len())
        .map(|q| OracleGroup { rank: h[q].rank, torsion: if q == 0 { vec![] } else { h[q - 1].torsion.clone() } })
        .collect()
}

/// Reads `complex` blocks of a problem file: name -> (vertex order, top simplices).
pub fn read_complexes(path: &Path) -> BTreeMap<String, (Vec<String>, Vec<Vec<String>>)> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut out = BTreeMap::new();
    let mut current: Option<(String, Vec<String>, Vec<Vec<String>>)> = None;
    for line in text.lines() {
        let t: Vec<&str> = line.split('#').next().unwrap().split_whitespace().collect();
        match (t.first().copied(), current.as_mut()) {
            (Some("complex"), None) => current = Some((t[1].to_string(), vec![], vec![])),
            (Some("vertices"), Some(c)) => c.1.extend(t[1..].iter().map(|s| s.to_string())),
            (Some("simplex"), Some(c)) => c.2.push(t[1..].iter().map(|s| s.to_string()).collect()),
            (Some("end"), Some(_)) => {
                let (n, o, s) = current.take().unwrap();
                out.insert(n, (o, s));
            }
            _ => {}
        }
    }
    out
}
