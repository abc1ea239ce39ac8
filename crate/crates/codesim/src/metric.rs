//! Levenshtein distance/similarity and the all-pairs matrices.

use rayon::prelude::*;

use crate::corpus::Corpus;
use crate::{Error, Result};

/// Symmetric k×k matrix of edit distances with a zero diagonal.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    k: usize,
    cells: Vec<usize>,
}

/// Symmetric k×k matrix of similarities in [0,1] with a unit diagonal.
#[derive(Debug, Clone)]
pub struct SimilarityMatrix {
    k: usize,
    cells: Vec<f64>,
}

impl DistanceMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.k + j]
    }
}

impl SimilarityMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.k + j]
    }

    /// Build a matrix from explicit rows, validating the type's invariants.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<SimilarityMatrix> {
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Config(
                "similarity matrix must be square and non-empty".into(),
            ));
        }
        let mut cells = Vec::with_capacity(k * k);
        for row in &rows {
            cells.extend_from_slice(row);
        }
        let m = SimilarityMatrix { k, cells };
        for i in 0..k {
            if m.get(i, i) != 1.0 {
                return Err(Error::Config(format!(
                    "similarity diagonal [{i}][{i}] must be 1"
                )));
            }
            for j in 0..k {
                let s = m.get(i, j);
                if !(0.0..=1.0).contains(&s) {
                    return Err(Error::Config(format!(
                        "similarity [{i}][{j}] = {s} outside [0,1]"
                    )));
                }
                if s != m.get(j, i) {
                    return Err(Error::Config(format!(
                        "similarity matrix asymmetric at [{i}][{j}]"
                    )));
                }
            }
        }
        Ok(m)
    }
}

/// Values shared by both matrix types for statistics extraction.
pub trait PairwiseMatrix {
    fn size(&self) -> usize;
    fn pair_value(&self, i: usize, j: usize) -> f64;
}

impl PairwiseMatrix for DistanceMatrix {
    fn size(&self) -> usize {
        self.k
    }
    fn pair_value(&self, i: usize, j: usize) -> f64 {
        self.get(i, j) as f64
    }
}

impl PairwiseMatrix for SimilarityMatrix {
    fn size(&self) -> usize {
        self.k
    }
    fn pair_value(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
    }
}

/// Minimum number of single-byte insertions, deletions, and substitutions
/// transforming `a` into `b`. Two-row dynamic program: O(|a|·|b|) time,
/// O(min(|a|,|b|)) memory.
pub fn levenshtein_distance(a: &[u8], b: &[u8]) -> usize {
    if a == b {
        return 0;
    }
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return long.len();
    }
    let mut row: Vec<usize> = (0..=short.len()).collect();
    for (i, &lb) in long.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, &sb) in short.iter().enumerate() {
            let up = row[j + 1];
            let val = (up + 1).min(row[j] + 1).min(diag + usize::from(lb != sb));
            diag = up;
            row[j + 1] = val;
        }
    }
    row[short.len()]
}

/// Relative similarity 1 − d/max(m,n) for strings of lengths m and n with
/// edit distance d; two empty strings are identical by convention.
pub fn levenshtein_similarity(d: usize, m: usize, n: usize) -> Result<f64> {
    let max = m.max(n);
    if d > max {
        return Err(Error::Internal(format!(
            "edit distance {d} exceeds max({m}, {n}) = {max}"
        )));
    }
    if max == 0 {
        return Ok(1.0);
    }
    Ok(1.0 - d as f64 / max as f64)
}

/// Compute both matrices over the corpus. Each unordered pair (j > i) is
/// evaluated once — in parallel — and mirrored; diagonals are set without
/// computation. Cell values are independent of the parallel schedule.
pub fn build_matrices(corpus: &Corpus) -> Result<(DistanceMatrix, SimilarityMatrix)> {
    let subs = &corpus.submissions;
    let k = subs.len();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let distances: Vec<usize> = pairs
        .par_iter()
        .map(|&(i, j)| levenshtein_distance(&subs[i].normalized, &subs[j].normalized))
        .collect();

    let mut d = vec![0usize; k * k];
    let mut s = vec![0f64; k * k];
    for i in 0..k {
        s[i * k + i] = 1.0;
    }
    for (&(i, j), &dist) in pairs.iter().zip(&distances) {
        let sim = levenshtein_similarity(dist, subs[i].normalized.len(), subs[j].normalized.len())?;
        d[i * k + j] = dist;
        d[j * k + i] = dist;
        s[i * k + j] = sim;
        s[j * k + i] = sim;
    }
    Ok((
        DistanceMatrix { k, cells: d },
        SimilarityMatrix { k, cells: s },
    ))
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn matrix_csv(ids: &[String], k: usize, cell: impl Fn(usize, usize) -> String) -> String {
    let mut out = ids
        .iter()
        .map(|id| csv_field(id))
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    for i in 0..k {
        let row: Vec<String> = (0..k).map(|j| cell(i, j)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// CSV export: header row of participant ids, then one row per participant
/// with integer distance cells.
pub fn distance_csv(ids: &[String], m: &DistanceMatrix) -> String {
    matrix_csv(ids, m.k(), |i, j| m.get(i, j).to_string())
}

/// CSV export: header row of participant ids, then one row per participant
/// with fixed 4-decimal similarity cells.
pub fn similarity_csv(ids: &[String], m: &SimilarityMatrix) -> String {
    matrix_csv(ids, m.k(), |i, j| format!("{:.4}", m.get(i, j)))
}
