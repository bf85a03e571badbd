//! Runs the three analyses over a corpus — trial-level Pearson cells,
//! frame-level CCA of saliency features against AUs, and trial-level CCA
//! of AUs against felt emotions — plus the circumplex census, and emits a
//! canonical JSON report and per-figure plot CSVs. Reports are a pure
//! function of the corpus bytes and the configuration.

mod json;
mod synth;

pub use json::{fmt_float, to_canonical_bytes};
pub use synth::{
    emit_au_csv, synth_corpus, EffectSlopes, SynthConfig, SynthError, SynthTrialTruth, SYNTH_FPS,
};

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::domain::{classify_quadrant, EmotionLabel, Quadrant, TrialFeatures, AU_CATALOG};
use crate::features::{extract_frame_features, FeatureConfig};
use crate::ingest::{list_frame_files, load_trial, read_labels_csv, read_manifest, IngestError};
use crate::stats::{
    cca, drop_constant_columns, pearson, top_k_contributors, CcaResult, DataMatrix, StatsError,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("only {complete} trials have complete data; need at least 3")]
    TooFewTrials { complete: usize },
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Everything the analyses depend on besides the corpus itself.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub features: FeatureConfig,
    pub target_fps: f64,
    pub ridge: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            features: FeatureConfig::default(),
            target_fps: 2.0,
            ridge: 1e-6,
        }
    }
}

/// One Pearson cell: a result, or the per-cell error that produced no value.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PccCell {
    Ok { r: f64, p: f64, n: u64 },
    Err { error: String },
}

/// Canonical correlations plus named weights and first-component shares.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CcaJson {
    pub correlations: Vec<f64>,
    pub x_names: Vec<String>,
    pub y_names: Vec<String>,
    pub x_weights: Vec<Vec<f64>>,
    pub y_weights: Vec<Vec<f64>>,
    pub x_shares: BTreeMap<String, f64>,
    pub y_shares: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contribution {
    pub name: String,
    pub share: f64,
}

/// One CCA analysis section. `result` and the `top5` lists stay null when
/// the analysis could not run; the error string says why.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CcaSection {
    pub result: Option<CcaJson>,
    pub error: Option<String>,
    pub dropped_x: Vec<String>,
    pub dropped_y: Vec<String>,
    /// Top contributors from the 18-AU side, one ranked list per variable
    /// of the two-variable side, oriented by that variable's weight sign.
    pub top5: BTreeMap<String, Option<Vec<Contribution>>>,
    /// Observation count the section ran on.
    pub observations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub threshold: f64,
    pub connectivity: u8,
    pub min_region_fraction: f64,
    pub target_fps: f64,
    pub ridge: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedTrial {
    pub trial_id: String,
    pub missing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub config: ConfigEcho,
    pub corpus_digest: String,
    pub excluded_trials: Vec<ExcludedTrial>,
    pub complete_trials: u64,
    pub labeled_trials: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub pcc_table: BTreeMap<String, PccCell>,
    pub cca_saliency_vs_au: CcaSection,
    pub cca_au_vs_emotion: CcaSection,
    pub quadrant_census: BTreeMap<String, u64>,
    pub provenance: Provenance,
}

/// Per-trial data available after ingestion, with whichever streams exist.
struct TrialData {
    features: Option<TrialFeatures>,
    /// Per-sampled-frame AU presence, as f64 flags.
    au_rows: Option<Vec<Vec<f64>>>,
    label: Option<EmotionLabel>,
}

/// Runs every analysis over the corpus described by a manifest and a label
/// table. Trials missing a stream drop out of the affected analyses and
/// are listed in the provenance.
pub fn run_analysis(
    manifest_path: &Path,
    labels_path: &Path,
    config: &AnalysisConfig,
) -> Result<AnalysisReport, ReportError> {
    let mut entries = read_manifest(manifest_path)?;
    entries.sort_by(|a, b| a.trial_id.cmp(&b.trial_id));
    let labels_text = fs::read_to_string(labels_path).map_err(|e| ReportError::Io {
        path: labels_path.to_path_buf(),
        source: e,
    })?;
    let labels = read_labels_csv(&labels_text)?;
    let label_of = |trial_id: &str| labels.iter().find(|l| l.trial_id == trial_id).cloned();

    // The digest covers the label table and every stream byte actually
    // readable, keyed by trial id, so re-runs over identical data match.
    let mut digest = Sha256::new();
    digest.update(labels_text.as_bytes());

    let mut trials = Vec::with_capacity(entries.len());
    let mut excluded = Vec::new();
    for entry in &entries {
        digest.update(entry.trial_id.as_bytes());
        let has_frames = matches!(list_frame_files(&entry.saliency_dir), Ok(f) if !f.is_empty());
        let has_au = entry.au_csv.is_file();
        let mut missing = Vec::new();
        if !has_frames {
            missing.push("saliency_frames".to_string());
        }
        if !has_au {
            missing.push("au_stream".to_string());
        }
        let label = label_of(&entry.trial_id);
        if label.is_none() {
            missing.push("label".to_string());
        }

        let mut features = None;
        if has_frames {
            let files = list_frame_files(&entry.saliency_dir)?;
            let selected =
                crate::ingest::sample_frames(entry.saliency_fps, config.target_fps, files.len())?;
            let mut frame_features = Vec::with_capacity(selected.len());
            for &ordinal in &selected {
                let (index, path) = &files[ordinal];
                let bytes = fs::read(path).map_err(|e| ReportError::Io {
                    path: path.clone(),
                    source: e,
                })?;
                digest.update(&bytes);
                let map = crate::ingest::read_saliency_frame(&bytes)?;
                frame_features.push(extract_frame_features(
                    &map,
                    &config.features,
                    *index,
                    *index as f64 / entry.saliency_fps,
                ));
            }
            features = Some(
                TrialFeatures::aggregate(&entry.trial_id, frame_features)
                    .expect("selection is non-empty when frames exist"),
            );
        }

        let mut au_rows = None;
        if has_au {
            let text = fs::read_to_string(&entry.au_csv).map_err(|e| ReportError::Io {
                path: entry.au_csv.clone(),
                source: e,
            })?;
            digest.update(text.as_bytes());
            let all = crate::ingest::read_au_csv(&text)?;
            if all.is_empty() {
                return Err(IngestError::EmptyTrial(entry.trial_id.clone()).into());
            }
            let selected =
                crate::ingest::sample_frames(entry.au_fps, config.target_fps, all.len())?;
            au_rows = Some(
                selected
                    .iter()
                    .map(|&i| all[i].presence().iter().map(|&p| p as f64).collect())
                    .collect::<Vec<Vec<f64>>>(),
            );
        }

        if !missing.is_empty() {
            excluded.push(ExcludedTrial {
                trial_id: entry.trial_id.clone(),
                missing,
            });
        }
        trials.push(TrialData {
            features,
            au_rows,
            label,
        });
    }

    let complete = trials
        .iter()
        .filter(|t| t.features.is_some() && t.au_rows.is_some() && t.label.is_some())
        .count();
    if complete < 3 {
        return Err(ReportError::TooFewTrials { complete });
    }

    let pcc_table = pcc_cells(&trials);
    let cca_saliency_vs_au = cca_saliency_au(&trials, config.ridge);
    let cca_au_vs_emotion = cca_au_emotion(&trials, config.ridge);
    let quadrant_census = census(&trials);
    let labeled = trials.iter().filter(|t| t.label.is_some()).count();

    Ok(AnalysisReport {
        pcc_table,
        cca_saliency_vs_au,
        cca_au_vs_emotion,
        quadrant_census,
        provenance: Provenance {
            config: ConfigEcho {
                threshold: config.features.threshold,
                connectivity: config.features.connectivity.as_u8(),
                min_region_fraction: config.features.min_region_fraction,
                target_fps: config.target_fps,
                ridge: config.ridge,
            },
            corpus_digest: format!("{:x}", digest.finalize()),
            excluded_trials: excluded,
            complete_trials: complete as u64,
            labeled_trials: labeled as u64,
        },
    })
}

/// The four trial-level Pearson cells over trials with both features and
/// a label. Degenerate series become per-cell errors, not run failures.
fn pcc_cells(trials: &[TrialData]) -> BTreeMap<String, PccCell> {
    let rows: Vec<(&TrialFeatures, &EmotionLabel)> = trials
        .iter()
        .filter_map(|t| Some((t.features.as_ref()?, t.label.as_ref()?)))
        .collect();
    let areas: Vec<f64> = rows.iter().map(|(f, _)| f.mean_saliency_area).collect();
    let counts: Vec<f64> = rows.iter().map(|(f, _)| f.mean_region_count).collect();
    let valence: Vec<f64> = rows.iter().map(|(_, l)| l.valence).collect();
    let arousal: Vec<f64> = rows.iter().map(|(_, l)| l.arousal).collect();

    let cell = |x: &[f64], y: &[f64]| match pearson(x, y) {
        Ok(p) => PccCell::Ok {
            r: p.r,
            p: p.p,
            n: p.n as u64,
        },
        Err(e) => PccCell::Err {
            error: e.to_string(),
        },
    };
    let mut table = BTreeMap::new();
    table.insert("saliency_area_vs_valence".into(), cell(&areas, &valence));
    table.insert("saliency_area_vs_arousal".into(), cell(&areas, &arousal));
    table.insert("region_count_vs_valence".into(), cell(&counts, &valence));
    table.insert("region_count_vs_arousal".into(), cell(&counts, &arousal));
    table
}

/// Frame-level CCA: X is the two saliency features, Y the 18 AU flags,
/// rows paired by sample ordinal within each trial.
fn cca_saliency_au(trials: &[TrialData], ridge: f64) -> CcaSection {
    let mut area = Vec::new();
    let mut count = Vec::new();
    let mut au_cols: Vec<Vec<f64>> = vec![Vec::new(); AU_CATALOG.len()];
    for trial in trials {
        let (Some(features), Some(au_rows)) = (&trial.features, &trial.au_rows) else {
            continue;
        };
        let paired = features.frames.len().min(au_rows.len());
        for k in 0..paired {
            area.push(features.frames[k].saliency_area);
            count.push(features.frames[k].region_count as f64);
            for (j, col) in au_cols.iter_mut().enumerate() {
                col.push(au_rows[k][j]);
            }
        }
    }
    let x_cols = vec![
        ("saliency_area".to_string(), area),
        ("region_count".to_string(), count),
    ];
    let y_cols: Vec<(String, Vec<f64>)> = AU_CATALOG
        .iter()
        .zip(au_cols)
        .map(|(d, c)| (d.code.to_string(), c))
        .collect();
    run_cca_section(x_cols, y_cols, ridge, SharesFrom::Y)
}

/// Trial-level CCA: X is each trial's mean AU presence, Y its felt
/// valence and arousal.
fn cca_au_emotion(trials: &[TrialData], ridge: f64) -> CcaSection {
    let mut au_cols: Vec<Vec<f64>> = vec![Vec::new(); AU_CATALOG.len()];
    let mut valence = Vec::new();
    let mut arousal = Vec::new();
    for trial in trials {
        let (Some(au_rows), Some(label)) = (&trial.au_rows, &trial.label) else {
            continue;
        };
        let n = au_rows.len() as f64;
        for (j, col) in au_cols.iter_mut().enumerate() {
            col.push(au_rows.iter().map(|row| row[j]).sum::<f64>() / n);
        }
        valence.push(label.valence);
        arousal.push(label.arousal);
    }
    let x_cols: Vec<(String, Vec<f64>)> = AU_CATALOG
        .iter()
        .zip(au_cols)
        .map(|(d, c)| (d.code.to_string(), c))
        .collect();
    let y_cols = vec![
        ("valence".to_string(), valence),
        ("arousal".to_string(), arousal),
    ];
    run_cca_section(x_cols, y_cols, ridge, SharesFrom::X)
}

/// Which side of the CCA carries the AU shares to rank.
enum SharesFrom {
    X,
    Y,
}

fn run_cca_section(
    x_cols: Vec<(String, Vec<f64>)>,
    y_cols: Vec<(String, Vec<f64>)>,
    ridge: f64,
    au_side: SharesFrom,
) -> CcaSection {
    let observations = x_cols.first().map_or(0, |(_, c)| c.len()) as u64;
    // The two-variable side's names key the top-5 lists.
    let key_names: Vec<String> = match au_side {
        SharesFrom::Y => x_cols.iter().map(|(n, _)| n.clone()).collect(),
        SharesFrom::X => y_cols.iter().map(|(n, _)| n.clone()).collect(),
    };
    let mut section = CcaSection {
        result: None,
        error: None,
        dropped_x: Vec::new(),
        dropped_y: Vec::new(),
        top5: key_names.iter().map(|n| (n.clone(), None)).collect(),
        observations,
    };
    if observations == 0 {
        section.error = Some("no paired observations".to_string());
        return section;
    }

    let prepared = (|| -> Result<_, StatsError> {
        let (x, dropped_x) = drop_constant_columns(&DataMatrix::from_columns(x_cols)?)?;
        let (y, dropped_y) = drop_constant_columns(&DataMatrix::from_columns(y_cols)?)?;
        Ok((x, dropped_x, y, dropped_y))
    })();
    let (x, y) = match prepared {
        Ok((x, dropped_x, y, dropped_y)) => {
            section.dropped_x = dropped_x;
            section.dropped_y = dropped_y;
            (x, y)
        }
        Err(e) => {
            section.error = Some(e.to_string());
            return section;
        }
    };
    let result = match cca(&x, &y, ridge) {
        Ok(r) => r,
        Err(e) => {
            section.error = Some(e.to_string());
            return section;
        }
    };

    // Rank AU contributions once per surviving key variable, oriented by
    // the sign of that variable's own first-component share.
    let (key_shares, au_shares, au_names) = match au_side {
        SharesFrom::Y => (&result.x_shares, &result.y_shares, y.names()),
        SharesFrom::X => (&result.y_shares, &result.x_shares, x.names()),
    };
    let key_survivors = match au_side {
        SharesFrom::Y => x.names(),
        SharesFrom::X => y.names(),
    };
    for (i, name) in key_survivors.iter().enumerate() {
        let direction = if key_shares[i] < 0.0 { -1.0 } else { 1.0 };
        let named: Vec<(String, f64)> = au_names
            .iter()
            .zip(au_shares)
            .map(|(n, s)| (n.clone(), s * direction))
            .collect();
        let k = 5.min(named.len());
        let ranked = top_k_contributors(&named, k).expect("k bounded by length");
        section.top5.insert(
            name.clone(),
            Some(
                ranked
                    .into_iter()
                    .map(|(name, share)| Contribution { name, share })
                    .collect(),
            ),
        );
    }

    section.result = Some(to_cca_json(&result, x.names(), y.names()));
    section
}

fn to_cca_json(result: &CcaResult, x_names: &[String], y_names: &[String]) -> CcaJson {
    let zip_named = |names: &[String], shares: &[f64]| {
        names
            .iter()
            .cloned()
            .zip(shares.iter().copied())
            .collect::<BTreeMap<String, f64>>()
    };
    CcaJson {
        correlations: result.correlations.clone(),
        x_names: x_names.to_vec(),
        y_names: y_names.to_vec(),
        x_weights: result.x_weights.clone(),
        y_weights: result.y_weights.clone(),
        x_shares: zip_named(x_names, &result.x_shares),
        y_shares: zip_named(y_names, &result.y_shares),
    }
}

/// Counts labeled trials per circumplex quadrant; every bucket is present.
fn census(trials: &[TrialData]) -> BTreeMap<String, u64> {
    let mut counts: BTreeMap<String, u64> = [
        Quadrant::HighValenceLowArousal,
        Quadrant::HighValenceHighArousal,
        Quadrant::LowValenceLowArousal,
        Quadrant::LowValenceHighArousal,
        Quadrant::Boundary,
    ]
    .iter()
    .map(|q| (q.as_str().to_string(), 0))
    .collect();
    for trial in trials {
        if let Some(label) = &trial.label {
            *counts
                .get_mut(classify_quadrant(label).as_str())
                .expect("all buckets present") += 1;
        }
    }
    counts
}

/// Canonical JSON bytes of a report: sorted keys, 17-significant-digit
/// floats, trailing newline. Byte-identical for equal reports.
pub fn emit_json(report: &AnalysisReport) -> Vec<u8> {
    let value = serde_json::to_value(report).expect("report has no non-finite floats");
    to_canonical_bytes(&value)
}

/// Per-figure plot CSVs (`name,value,sign`), numbers formatted exactly as
/// in the JSON report.
pub fn emit_plot_data(report: &AnalysisReport) -> Vec<(String, String)> {
    let mut files = Vec::new();

    let mut pcc = String::from("name,value,sign\n");
    for (name, cell) in &report.pcc_table {
        if let PccCell::Ok { r, .. } = cell {
            pcc.push_str(&format!("{name},{},{}\n", fmt_float(*r), sign_of(*r)));
        }
    }
    files.push(("pcc_bars.csv".to_string(), pcc));

    let au_shares = |section: &CcaSection, from_x: bool| {
        let mut csv = String::from("name,value,sign\n");
        if let Some(result) = &section.result {
            let shares = if from_x {
                &result.x_shares
            } else {
                &result.y_shares
            };
            for (name, share) in shares {
                csv.push_str(&format!(
                    "{name},{},{}\n",
                    fmt_float(*share),
                    sign_of(*share)
                ));
            }
        }
        csv
    };
    files.push((
        "cca_saliency_au.csv".to_string(),
        au_shares(&report.cca_saliency_vs_au, false),
    ));
    files.push((
        "cca_au_emotion.csv".to_string(),
        au_shares(&report.cca_au_vs_emotion, true),
    ));

    for section in [&report.cca_saliency_vs_au, &report.cca_au_vs_emotion] {
        for (variable, list) in &section.top5 {
            let mut csv = String::from("name,value,sign\n");
            if let Some(contributions) = list {
                for c in contributions {
                    csv.push_str(&format!(
                        "{},{},{}\n",
                        c.name,
                        fmt_float(c.share),
                        sign_of(c.share)
                    ));
                }
            }
            files.push((format!("top5_{variable}.csv"), csv));
        }
    }
    files
}

fn sign_of(v: f64) -> char {
    if v < 0.0 {
        '-'
    } else {
        '+'
    }
}

/// Frame-level feature CSV for a set of trials.
pub fn emit_frame_features_csv(trials: &[TrialFeatures]) -> String {
    let mut out = String::from("trial_id,frame_index,timestamp,saliency_area,region_count\n");
    for trial in trials {
        for f in &trial.frames {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                trial.trial_id,
                f.frame_index,
                fmt_float(f.timestamp),
                fmt_float(f.saliency_area),
                f.region_count
            ));
        }
    }
    out
}

/// Trial-level feature CSV.
pub fn emit_trial_features_csv(trials: &[TrialFeatures]) -> String {
    let mut out = String::from("trial_id,mean_saliency_area,mean_region_count\n");
    for trial in trials {
        out.push_str(&format!(
            "{},{},{}\n",
            trial.trial_id,
            fmt_float(trial.mean_saliency_area),
            fmt_float(trial.mean_region_count)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn synth_to(dir: &Path, config: &SynthConfig) -> (PathBuf, PathBuf) {
        synth_corpus(config, dir).unwrap();
        (dir.join("manifest.json"), dir.join("labels.csv"))
    }

    fn small_synth() -> SynthConfig {
        SynthConfig {
            seed: 42,
            trial_count: 30,
            frames_per_trial: 4,
            ..SynthConfig::default()
        }
    }

    #[test]
    fn report_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let (manifest, labels) = synth_to(dir.path(), &small_synth());
        let config = AnalysisConfig::default();
        let a = run_analysis(&manifest, &labels, &config).unwrap();
        let b = run_analysis(&manifest, &labels, &config).unwrap();
        assert_eq!(emit_json(&a), emit_json(&b));
    }

    #[test]
    fn report_invariant_to_manifest_order() {
        let dir = tempfile::tempdir().unwrap();
        let (manifest, labels) = synth_to(dir.path(), &small_synth());
        let config = AnalysisConfig::default();
        let base = run_analysis(&manifest, &labels, &config).unwrap();

        let mut entries: Vec<serde_json::Value> =
            serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
        entries.reverse();
        let shuffled = dir.path().join("manifest_shuffled.json");
        fs::write(&shuffled, serde_json::to_string_pretty(&entries).unwrap()).unwrap();
        let report = run_analysis(&shuffled, &labels, &config).unwrap();
        assert_eq!(report, base);
        assert_eq!(emit_json(&report), emit_json(&base));
    }

    #[test]
    fn report_json_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let (manifest, labels) = synth_to(dir.path(), &small_synth());
        let report = run_analysis(&manifest, &labels, &AnalysisConfig::default()).unwrap();
        let bytes = emit_json(&report);
        let reparsed: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(to_canonical_bytes(&reparsed), bytes);
    }

    #[test]
    fn identical_labels_become_per_cell_errors() {
        let dir = tempfile::tempdir().unwrap();
        let config = SynthConfig {
            noise_sigma: 0.0,
            slopes: EffectSlopes {
                region_to_valence: 0.0,
                region_to_arousal: 0.0,
                area_to_valence: 0.0,
                area_to_arousal: 0.0,
            },
            ..small_synth()
        };
        let (manifest, labels) = synth_to(dir.path(), &config);
        let report = run_analysis(&manifest, &labels, &AnalysisConfig::default()).unwrap();
        for cell in report.pcc_table.values() {
            assert!(matches!(cell, PccCell::Err { .. }), "{cell:?}");
        }
        // The AU-vs-emotion CCA also degenerates: both label columns constant.
        assert!(report.cca_au_vs_emotion.error.is_some());
        assert!(report.cca_au_vs_emotion.result.is_none());
        for list in report.cca_au_vs_emotion.top5.values() {
            assert!(list.is_none());
        }
    }

    #[test]
    fn missing_au_stream_excludes_trial_from_au_analyses_only() {
        let dir = tempfile::tempdir().unwrap();
        let (manifest, labels) = synth_to(dir.path(), &small_synth());
        fs::remove_file(dir.path().join("trials/t0004/au.csv")).unwrap();

        let report = run_analysis(&manifest, &labels, &AnalysisConfig::default()).unwrap();
        assert_eq!(report.provenance.excluded_trials.len(), 1);
        let excluded = &report.provenance.excluded_trials[0];
        assert_eq!(excluded.trial_id, "t0004");
        assert_eq!(excluded.missing, vec!["au_stream".to_string()]);

        // PCC still sees all 30 trials; the AU analyses drop one.
        for cell in report.pcc_table.values() {
            if let PccCell::Ok { n, .. } = cell {
                assert_eq!(*n, 30);
            }
        }
        assert_eq!(report.provenance.complete_trials, 29);
    }

    #[test]
    fn too_few_complete_trials_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let (manifest, labels) = synth_to(dir.path(), &small_synth());
        for t in 3..=30 {
            fs::remove_file(dir.path().join(format!("trials/t{t:04}/au.csv"))).unwrap();
        }
        let err = run_analysis(&manifest, &labels, &AnalysisConfig::default()).unwrap_err();
        assert!(matches!(err, ReportError::TooFewTrials { complete: 2 }));
    }

    #[test]
    fn census_sums_to_labeled_trials() {
        let dir = tempfile::tempdir().unwrap();
        let (manifest, labels) = synth_to(dir.path(), &small_synth());
        let report = run_analysis(&manifest, &labels, &AnalysisConfig::default()).unwrap();
        let total: u64 = report.quadrant_census.values().sum();
        assert_eq!(total, report.provenance.labeled_trials);
        assert_eq!(report.quadrant_census.len(), 5);
    }

    #[test]
    fn planted_signs_recovered_with_significance() {
        let dir = tempfile::tempdir().unwrap();
        let config = SynthConfig {
            seed: 1234,
            trial_count: 200,
            frames_per_trial: 4,
            noise_sigma: 0.5,
            ..SynthConfig::default()
        };
        let (manifest, labels) = synth_to(dir.path(), &config);
        let report = run_analysis(&manifest, &labels, &AnalysisConfig::default()).unwrap();
        let cell = |name: &str| match &report.pcc_table[name] {
            PccCell::Ok { r, p, .. } => (*r, *p),
            PccCell::Err { error } => panic!("cell {name} errored: {error}"),
        };
        let (r_v, p_v) = cell("region_count_vs_valence");
        let (r_a, p_a) = cell("region_count_vs_arousal");
        assert!(r_v > 0.0 && p_v < 0.01, "valence r={r_v} p={p_v}");
        assert!(r_a < 0.0 && p_a < 0.01, "arousal r={r_a} p={p_a}");
    }

    #[test]
    fn plot_csvs_mirror_report_values() {
        let dir = tempfile::tempdir().unwrap();
        let (manifest, labels) = synth_to(dir.path(), &small_synth());
        let report = run_analysis(&manifest, &labels, &AnalysisConfig::default()).unwrap();
        let files = emit_plot_data(&report);
        let by_name: BTreeMap<_, _> = files.iter().cloned().collect();

        let cca_csv = &by_name["cca_saliency_au.csv"];
        let result = report.cca_saliency_vs_au.result.as_ref().unwrap();
        assert_eq!(cca_csv.lines().count(), 1 + result.y_shares.len());
        for (name, share) in &result.y_shares {
            assert!(cca_csv.contains(&format!("{name},{}", fmt_float(*share))));
        }

        for (file, contents) in &files {
            if file.starts_with("top5_") {
                assert!(contents.lines().count() <= 6, "{file} too long");
            }
        }
        assert!(by_name.contains_key("pcc_bars.csv"));
        assert!(by_name.contains_key("top5_saliency_area.csv"));
        assert!(by_name.contains_key("top5_region_count.csv"));
        assert!(by_name.contains_key("top5_valence.csv"));
        assert!(by_name.contains_key("top5_arousal.csv"));
    }

    #[test]
    fn feature_csv_emitters() {
        use crate::domain::FrameFeatures;
        let trial = TrialFeatures::aggregate(
            "t1",
            vec![
                FrameFeatures {
                    frame_index: 0,
                    timestamp: 0.0,
                    saliency_area: 0.25,
                    region_count: 2,
                },
                FrameFeatures {
                    frame_index: 15,
                    timestamp: 0.5,
                    saliency_area: 0.75,
                    region_count: 1,
                },
            ],
        )
        .unwrap();
        let frames = emit_frame_features_csv(std::slice::from_ref(&trial));
        assert!(frames.starts_with("trial_id,frame_index,timestamp,saliency_area,region_count\n"));
        assert_eq!(frames.lines().count(), 3);
        assert!(frames.contains("t1,15,"));
        let trials = emit_trial_features_csv(&[trial]);
        assert!(trials.contains(&fmt_float(0.5)));
        assert_eq!(trials.lines().count(), 2);
    }
}
