//! End-to-end analysis pipeline and report emission.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cluster::{
    adjacency_lists, connected_components, propensity, relation, relation_dot, RelationMatrix,
};
use crate::corpus::{load_corpus, Corpus};
use crate::grading::{grade, PolicyKind};
use crate::metric::{
    build_matrices, distance_csv, similarity_csv, DistanceMatrix, SimilarityMatrix,
};
use crate::stats::{
    histogram, histogram_csv, pair_observations, summarize, Histogram, StatsSummary,
};
use crate::{Error, Result};

/// Selectable output artifacts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Emission {
    Json,
    Csv,
    Dot,
    Hist,
    Stats,
}

impl Emission {
    pub const ALL: [Emission; 5] = [
        Emission::Json,
        Emission::Csv,
        Emission::Dot,
        Emission::Hist,
        Emission::Stats,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Emission::Json => "json",
            Emission::Csv => "csv",
            Emission::Dot => "dot",
            Emission::Hist => "hist",
            Emission::Stats => "stats",
        }
    }
}

impl fmt::Display for Emission {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Emission {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Emission, String> {
        match s {
            "json" => Ok(Emission::Json),
            "csv" => Ok(Emission::Csv),
            "dot" => Ok(Emission::Dot),
            "hist" => Ok(Emission::Hist),
            "stats" => Ok(Emission::Stats),
            other => Err(format!(
                "unknown emission `{other}` (expected json, csv, dot, hist, stats)"
            )),
        }
    }
}

/// Everything one analysis run needs to know.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input_dir: PathBuf,
    pub file_glob: Vec<String>,
    pub epsilon: f64,
    pub policy: PolicyKind,
    pub bin_width_similarity: f64,
    pub bin_width_distance: f64,
    pub output_dir: PathBuf,
    pub emit: BTreeSet<Emission>,
}

impl RunConfig {
    /// Paper-style defaults: all C-family sources, ε = 0.90, proportional
    /// grading, every artifact emitted.
    pub fn new(input_dir: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> RunConfig {
        RunConfig {
            input_dir: input_dir.into(),
            file_glob: default_globs(),
            epsilon: 0.90,
            policy: PolicyKind::Proportional,
            bin_width_similarity: 0.05,
            bin_width_distance: 50.0,
            output_dir: output_dir.into(),
            emit: Emission::ALL.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::Config(format!(
                "epsilon must be in (0, 1], got {}",
                self.epsilon
            )));
        }
        for (name, width) in [
            ("similarity bin width", self.bin_width_similarity),
            ("distance bin width", self.bin_width_distance),
        ] {
            if width <= 0.0 || !width.is_finite() {
                return Err(Error::Config(format!(
                    "{name} must be positive, got {width}"
                )));
            }
        }
        if self.emit.is_empty() {
            return Err(Error::Config("emission set must not be empty".into()));
        }
        if self.file_glob.is_empty() {
            return Err(Error::Config("no file patterns given".into()));
        }
        Ok(())
    }
}

pub fn default_globs() -> Vec<String> {
    ["*.c", "*.cc", "*.cpp", "*.h"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// One participant's row in the report.
#[derive(Debug, Clone, Serialize)]
pub struct ParticipantRecord {
    pub participant_id: String,
    pub normalized_length: usize,
    pub propensity: f64,
    pub cluster_id: usize,
    pub grade: f64,
    pub policy: String,
}

/// The full JSON report. Deterministic function of the input bytes and the
/// configuration; contains no timestamps.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub task_id: String,
    pub tool_version: String,
    pub k: usize,
    pub pair_count: usize,
    pub epsilon: f64,
    pub policy: String,
    pub input_digest: String,
    pub participants: Vec<ParticipantRecord>,
    pub clusters: Vec<Vec<String>>,
    pub distance_stats: Option<StatsSummary>,
    pub similarity_stats: Option<StatsSummary>,
    pub propensity_stats: StatsSummary,
    pub warnings: Vec<String>,
}

/// Report plus the intermediate artifacts the emitters render.
#[derive(Debug)]
pub struct Analysis {
    pub report: AnalysisReport,
    pub ids: Vec<String>,
    pub distance: DistanceMatrix,
    pub similarity: SimilarityMatrix,
    pub relation: RelationMatrix,
    pub hist_distance: Option<Histogram>,
    pub hist_similarity: Option<Histogram>,
    pub hist_propensity: Histogram,
}

fn input_digest(corpus: &Corpus) -> String {
    let mut hasher = Sha256::new();
    for sub in &corpus.submissions {
        hasher.update(sub.participant_id.as_bytes());
        hasher.update([0u8]);
        hasher.update(&sub.raw);
        hasher.update([0u8]);
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Execute every analysis stage on the configured corpus without writing
/// anything to disk.
pub fn analyze(config: &RunConfig) -> Result<Analysis> {
    config.validate()?;

    let load =
        load_corpus(&config.input_dir, &config.file_glob).map_err(|e| e.in_stage("load_corpus"))?;
    let corpus = load.corpus;
    let mut warnings = load.warnings;
    let k = corpus.k();

    let (dist, sim) = build_matrices(&corpus).map_err(|e| e.in_stage("build_matrices"))?;
    let prop = propensity(&sim);
    let rel = relation(&sim, config.epsilon).map_err(|e| e.in_stage("relation"))?;
    let adj = adjacency_lists(&rel);
    let clusters = connected_components(&adj).map_err(|e| e.in_stage("connected_components"))?;
    let grades = grade(config.policy.with_epsilon(config.epsilon), &clusters, &prop);

    let pair_count = k * (k - 1) / 2;
    let (distance_stats, similarity_stats, hist_distance, hist_similarity) = if k >= 2 {
        let dist_obs = pair_observations(&dist).map_err(|e| e.in_stage("pair_observations"))?;
        let sim_obs = pair_observations(&sim).map_err(|e| e.in_stage("pair_observations"))?;
        (
            Some(summarize(&dist_obs).map_err(|e| e.in_stage("summarize"))?),
            Some(summarize(&sim_obs).map_err(|e| e.in_stage("summarize"))?),
            Some(
                histogram(&dist_obs, config.bin_width_distance)
                    .map_err(|e| e.in_stage("histogram"))?,
            ),
            Some(
                histogram(&sim_obs, config.bin_width_similarity)
                    .map_err(|e| e.in_stage("histogram"))?,
            ),
        )
    } else {
        warnings.push(
            "no pairs: corpus has a single submission; distance and similarity statistics omitted"
                .into(),
        );
        (None, None, None, None)
    };
    let propensity_stats = summarize(&prop).map_err(|e| e.in_stage("summarize"))?;
    let hist_propensity =
        histogram(&prop, config.bin_width_similarity).map_err(|e| e.in_stage("histogram"))?;

    let ids: Vec<String> = corpus
        .submissions
        .iter()
        .map(|s| s.participant_id.clone())
        .collect();
    let assignment = clusters.assignments();
    let policy_name = config.policy.name().to_string();
    let participants = corpus
        .submissions
        .iter()
        .enumerate()
        .map(|(i, sub)| ParticipantRecord {
            participant_id: sub.participant_id.clone(),
            normalized_length: sub.normalized.len(),
            propensity: prop[i],
            cluster_id: assignment[i] + 1,
            grade: grades[i],
            policy: policy_name.clone(),
        })
        .collect();
    let cluster_listing = clusters
        .clusters()
        .iter()
        .map(|members| members.iter().map(|&n| ids[n].clone()).collect())
        .collect();

    let report = AnalysisReport {
        task_id: corpus.task_id.clone(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        k,
        pair_count,
        epsilon: config.epsilon,
        policy: policy_name,
        input_digest: input_digest(&corpus),
        participants,
        clusters: cluster_listing,
        distance_stats,
        similarity_stats,
        propensity_stats,
        warnings,
    };

    Ok(Analysis {
        report,
        ids,
        distance: dist,
        similarity: sim,
        relation: rel,
        hist_distance,
        hist_similarity,
        hist_propensity,
    })
}

fn stats_section(title: &str, summary: Option<&StatsSummary>, percent: bool) -> String {
    let mut out = format!("{title}\n");
    match summary {
        None => out.push_str("  no pairs\n"),
        Some(s) => {
            let rows = [
                ("Average", s.average),
                ("Median", s.median),
                ("Standard deviation", s.std_dev),
                ("Range", s.range),
                ("Minimum", s.minimum),
                ("Maximum", s.maximum),
            ];
            for (label, value) in rows {
                let rendered = if percent {
                    format!("{:.2}%", value * 100.0)
                } else {
                    format!("{value:.2}")
                };
                out.push_str(&format!("  {label:<18}  {rendered:>10}\n"));
            }
        }
    }
    out
}

fn stats_text(report: &AnalysisReport) -> String {
    [
        stats_section(
            "Levenshtein distance",
            report.distance_stats.as_ref(),
            false,
        ),
        stats_section(
            "Levenshtein similarity",
            report.similarity_stats.as_ref(),
            true,
        ),
        stats_section(
            "Plagiarism propensity",
            Some(&report.propensity_stats),
            true,
        ),
    ]
    .join("\n")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| Error::Write(format!("cannot write {}: {e}", path.display())))
}

/// Render and write the selected artifacts. Output is byte-stable across
/// repeated runs on identical input.
pub fn emit_report(analysis: &Analysis, config: &RunConfig) -> Result<()> {
    let out = &config.output_dir;
    fs::create_dir_all(out).map_err(|e| {
        Error::Write(format!(
            "cannot create output directory {}: {e}",
            out.display()
        ))
    })?;

    for emission in &config.emit {
        match emission {
            Emission::Json => {
                let json = serde_json::to_string_pretty(&analysis.report)
                    .map_err(|e| Error::Internal(format!("cannot serialize report: {e}")))?;
                write_file(&out.join("report.json"), &format!("{json}\n"))?;
            }
            Emission::Csv => {
                write_file(
                    &out.join("similarity.csv"),
                    &similarity_csv(&analysis.ids, &analysis.similarity),
                )?;
                write_file(
                    &out.join("distance.csv"),
                    &distance_csv(&analysis.ids, &analysis.distance),
                )?;
            }
            Emission::Dot => {
                write_file(
                    &out.join("relation.dot"),
                    &relation_dot(&analysis.ids, &analysis.similarity, &analysis.relation),
                )?;
            }
            Emission::Hist => {
                if let Some(h) = &analysis.hist_similarity {
                    write_file(&out.join("hist_similarity.csv"), &histogram_csv(h))?;
                }
                if let Some(h) = &analysis.hist_distance {
                    write_file(&out.join("hist_distance.csv"), &histogram_csv(h))?;
                }
                write_file(
                    &out.join("hist_propensity.csv"),
                    &histogram_csv(&analysis.hist_propensity),
                )?;
            }
            Emission::Stats => {
                write_file(&out.join("stats.txt"), &stats_text(&analysis.report))?;
            }
        }
    }
    Ok(())
}

/// Run the full pipeline: analyze the corpus, write the requested
/// emissions, and return the report.
pub fn run_pipeline(config: &RunConfig) -> Result<AnalysisReport> {
    let analysis = analyze(config)?;
    emit_report(&analysis, config)?;
    Ok(analysis.report)
}
