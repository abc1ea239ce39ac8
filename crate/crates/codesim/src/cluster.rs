//! Propensity vector, ε-threshold relation, and connected-component clusters.

use crate::metric::SimilarityMatrix;
use crate::{Error, Result};

/// Binary relation matrix: related iff similarity ≥ ε. Reflexive and
/// symmetric, but in general not transitive.
#[derive(Debug, Clone)]
pub struct RelationMatrix {
    epsilon: f64,
    k: usize,
    cells: Vec<bool>,
}

impl RelationMatrix {
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.k + j]
    }
}

/// Partition of the nodes 0..k into connected components of the relation
/// graph. Components are sorted internally and ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterSet {
    clusters: Vec<Vec<usize>>,
}

impl ClusterSet {
    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn k(&self) -> usize {
        self.clusters.iter().map(Vec::len).sum()
    }

    /// Map each node to the index of its cluster.
    pub fn assignments(&self) -> Vec<usize> {
        let mut assignment = vec![0; self.k()];
        for (c, members) in self.clusters.iter().enumerate() {
            for &node in members {
                assignment[node] = c;
            }
        }
        assignment
    }
}

/// Per-participant plagiarism propensity: the maximum off-diagonal
/// similarity of each row, or 0 for a single-submission corpus.
pub fn propensity(s: &SimilarityMatrix) -> Vec<f64> {
    let k = s.k();
    (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i)
                .map(|j| s.get(i, j))
                .fold(0.0, f64::max)
        })
        .collect()
}

/// Threshold the similarity matrix at ε (inclusive).
pub fn relation(s: &SimilarityMatrix, epsilon: f64) -> Result<RelationMatrix> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::Config(format!(
            "epsilon must be in (0, 1], got {epsilon}"
        )));
    }
    let k = s.k();
    let mut cells = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            cells[i * k + j] = s.get(i, j) >= epsilon;
        }
    }
    Ok(RelationMatrix { epsilon, k, cells })
}

/// Neighbor lists of the relation graph: self-loops dropped, each list
/// sorted ascending.
pub fn adjacency_lists(r: &RelationMatrix) -> Vec<Vec<usize>> {
    let k = r.k();
    (0..k)
        .map(|i| (0..k).filter(|&j| j != i && r.get(i, j)).collect())
        .collect()
}

/// Connected components by iterative depth-first search in ascending node
/// order. The adjacency must be symmetric.
pub fn connected_components(adj: &[Vec<usize>]) -> Result<ClusterSet> {
    let k = adj.len();
    for (i, neighbors) in adj.iter().enumerate() {
        for &j in neighbors {
            if j >= k {
                return Err(Error::Internal(format!(
                    "adjacency of node {i} references node {j} outside 0..{k}"
                )));
            }
            if !adj[j].contains(&i) {
                return Err(Error::Internal(format!(
                    "asymmetric adjacency: {i} lists {j} but not vice versa"
                )));
            }
        }
    }

    let mut visited = vec![false; k];
    let mut clusters = Vec::new();
    for start in 0..k {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(node) = stack.pop() {
            members.push(node);
            for &next in &adj[node] {
                if !visited[next] {
                    visited[next] = true;
                    stack.push(next);
                }
            }
        }
        members.sort_unstable();
        clusters.push(members);
    }
    Ok(ClusterSet { clusters })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT export of the relation graph: one node per participant labeled with
/// its id, one undirected edge per related pair labeled with the similarity
/// to 4 decimals.
pub fn relation_dot(ids: &[String], s: &SimilarityMatrix, r: &RelationMatrix) -> String {
    let k = r.k();
    let mut out = String::from("graph relation {\n");
    for (i, id) in ids.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", dot_escape(id)));
    }
    for i in 0..k {
        for j in i + 1..k {
            if r.get(i, j) {
                out.push_str(&format!("  n{i} -- n{j} [label=\"{:.4}\"];\n", s.get(i, j)));
            }
        }
    }
    out.push_str("}\n");
    out
}
