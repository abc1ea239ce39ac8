//! Per-participant task grades under the three assessment policies.

use std::fmt;

use crate::cluster::ClusterSet;

/// Policy selector without its parameter, as configured on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    Proportional,
    Binary,
    Complement,
}

impl PolicyKind {
    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Proportional => "proportional",
            PolicyKind::Binary => "binary",
            PolicyKind::Complement => "complement",
        }
    }

    /// Attach the threshold required by the binary and complement policies.
    pub fn with_epsilon(self, epsilon: f64) -> GradePolicy {
        match self {
            PolicyKind::Proportional => GradePolicy::Proportional,
            PolicyKind::Binary => GradePolicy::Binary { epsilon },
            PolicyKind::Complement => GradePolicy::Complement { epsilon },
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A grading policy with its parameter: proportional needs none, the other
/// two carry the plagiarism threshold ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GradePolicy {
    Proportional,
    Binary { epsilon: f64 },
    Complement { epsilon: f64 },
}

impl GradePolicy {
    pub fn kind(&self) -> PolicyKind {
        match self {
            GradePolicy::Proportional => PolicyKind::Proportional,
            GradePolicy::Binary { .. } => PolicyKind::Binary,
            GradePolicy::Complement { .. } => PolicyKind::Complement,
        }
    }
}

/// Each member of an n-node cluster receives 1/n.
pub fn grade_proportional(clusters: &ClusterSet) -> Vec<f64> {
    let mut grades = vec![0.0; clusters.k()];
    for members in clusters.clusters() {
        let share = 1.0 / members.len() as f64;
        for &node in members {
            grades[node] = share;
        }
    }
    grades
}

/// 1 below the threshold, 0 at or above it.
pub fn grade_binary(propensity: &[f64], epsilon: f64) -> Vec<f64> {
    propensity
        .iter()
        .map(|&p| if p < epsilon { 1.0 } else { 0.0 })
        .collect()
}

/// 1 below the threshold, otherwise the complement 1 − p.
pub fn grade_complement(propensity: &[f64], epsilon: f64) -> Vec<f64> {
    propensity
        .iter()
        .map(|&p| if p < epsilon { 1.0 } else { 1.0 - p })
        .collect()
}

/// Dispatch on the selected policy.
pub fn grade(policy: GradePolicy, clusters: &ClusterSet, propensity: &[f64]) -> Vec<f64> {
    match policy {
        GradePolicy::Proportional => grade_proportional(clusters),
        GradePolicy::Binary { epsilon } => grade_binary(propensity, epsilon),
        GradePolicy::Complement { epsilon } => grade_complement(propensity, epsilon),
    }
}
