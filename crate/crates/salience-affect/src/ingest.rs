//! Readers for the on-disk corpus layout: saliency frames as binary PGM or
//! 8-bit grayscale PNG, action-unit presence CSVs, label tables, and the
//! JSON trial manifest. Also owns frame-rate downsampling.

use std::fs;
use std::io::Cursor;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{AuFrame, DomainError, EmotionLabel, SaliencyMap, AU_CATALOG, AU_COUNT};
use crate::saliency::GrayImage;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("corrupt image: {0}")]
    CorruptImage(String),
    #[error("missing column {0}")]
    MissingColumn(String),
    #[error("malformed row {row}: {reason}")]
    MalformedRow { row: usize, reason: String },
    #[error("non-binary presence value {value:?} at row {row}, column {column}")]
    NonBinaryPresence {
        row: usize,
        column: String,
        value: String,
    },
    #[error("score out of range at row {row}: {source}")]
    ScoreOutOfRange { row: usize, source: DomainError },
    #[error("target rate {target} exceeds native rate {native}")]
    TargetRateExceedsNative { native: f64, target: f64 },
    #[error("trial {0} has no frames after sampling")]
    EmptyTrial(String),
    #[error("invalid manifest: {0}")]
    InvalidManifest(String),
    #[error("duplicate frame index {index} in {dir}")]
    DuplicateFrame { dir: PathBuf, index: usize },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl IngestError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        IngestError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// One manifest entry binding a trial's saliency frames and AU stream,
/// with the native frame rate of each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialManifestEntry {
    pub trial_id: String,
    pub saliency_dir: PathBuf,
    pub saliency_fps: f64,
    pub au_csv: PathBuf,
    pub au_fps: f64,
}

/// A trial's streams after sampling: saliency frames with their source
/// indices and timestamps, and the sampled AU frames.
#[derive(Debug, Clone)]
pub struct LoadedTrial {
    pub trial_id: String,
    pub saliency_frames: Vec<SampledFrame>,
    pub au_frames: Vec<AuFrame>,
}

#[derive(Debug, Clone)]
pub struct SampledFrame {
    pub frame_index: usize,
    pub timestamp: f64,
    pub map: SaliencyMap,
}

/// Decodes an 8-bit single-channel image (binary PGM or grayscale PNG)
/// into luminance values `v / 255`.
pub fn read_gray_image(bytes: &[u8]) -> Result<GrayImage, IngestError> {
    if bytes.starts_with(b"P5") {
        return read_pgm(bytes);
    }
    if bytes.starts_with(&[0x89, b'P', b'N', b'G']) {
        return read_png(bytes);
    }
    Err(IngestError::UnsupportedFormat(
        "expected binary PGM (P5) or PNG magic".into(),
    ))
}

/// Decodes a saved saliency map; each 8-bit sample v becomes v / 255.
pub fn read_saliency_frame(bytes: &[u8]) -> Result<SaliencyMap, IngestError> {
    let image = read_gray_image(bytes)?;
    Ok(
        SaliencyMap::new(image.width(), image.height(), image.luminance().to_vec())
            .expect("luminance grid is a valid saliency map"),
    )
}

fn read_pgm(bytes: &[u8]) -> Result<GrayImage, IngestError> {
    let mut pos = 2; // past "P5"
    let mut fields = [0usize; 3];
    for field in &mut fields {
        // Skip whitespace and '#' comment lines between header fields.
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                }
                Some(_) => break,
                None => {
                    return Err(IngestError::CorruptImage("truncated PGM header".into()));
                }
            }
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(IngestError::CorruptImage("bad PGM header field".into()));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .expect("digits are valid utf-8")
            .parse()
            .map_err(|_| IngestError::CorruptImage("PGM header field overflow".into()))?;
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(IngestError::UnsupportedFormat(format!(
            "PGM maxval {maxval}, only 8-bit (255) supported"
        )));
    }
    if width == 0 || height == 0 {
        return Err(IngestError::CorruptImage("zero PGM dimension".into()));
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(IngestError::CorruptImage("missing PGM raster separator".into())),
    }
    let raster = &bytes[pos..];
    if raster.len() < width * height {
        return Err(IngestError::CorruptImage(format!(
            "PGM raster has {} bytes, needs {}",
            raster.len(),
            width * height
        )));
    }
    let luminance = raster[..width * height]
        .iter()
        .map(|&v| v as f64 / 255.0)
        .collect();
    Ok(GrayImage::new(width, height, luminance)?)
}

fn read_png(bytes: &[u8]) -> Result<GrayImage, IngestError> {
    let decoded = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)
        .map_err(|e| IngestError::CorruptImage(e.to_string()))?;
    match decoded {
        image::DynamicImage::ImageLuma8(buf) => {
            let (width, height) = (buf.width() as usize, buf.height() as usize);
            let luminance = buf.as_raw().iter().map(|&v| v as f64 / 255.0).collect();
            Ok(GrayImage::new(width, height, luminance)?)
        }
        other => Err(IngestError::UnsupportedFormat(format!(
            "PNG color type {:?}, only 8-bit grayscale supported",
            other.color()
        ))),
    }
}

/// Writes a binary PGM (maxval 255) from quantized intensities.
pub fn write_pgm(map: &SaliencyMap) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", map.width(), map.height()).into_bytes();
    out.extend(map.intensities().iter().map(|&v| quantize(v)));
    out
}

/// Encodes a map as an 8-bit grayscale PNG.
pub fn write_png(map: &SaliencyMap) -> Vec<u8> {
    let raw: Vec<u8> = map.intensities().iter().map(|&v| quantize(v)).collect();
    let buf =
        image::GrayImage::from_raw(map.width() as u32, map.height() as u32, raw)
            .expect("raster length matches dimensions");
    let mut out = Cursor::new(Vec::new());
    buf.write_to(&mut out, image::ImageFormat::Png)
        .expect("in-memory PNG encode cannot fail");
    out.into_inner()
}

fn quantize(v: f64) -> u8 {
    (v * 255.0).round() as u8
}

/// Parses an AU presence CSV into one frame per data row, in file order.
///
/// The header must contain `frame`, `timestamp`, and the 18 `AU<nn>_c`
/// presence columns (case-insensitive, surrounding spaces ignored); extra
/// columns are ignored. Presence values may be float-formatted ("1.0").
pub fn read_au_csv(text: &str) -> Result<Vec<AuFrame>, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| IngestError::MalformedRow {
            row: 1,
            reason: e.to_string(),
        })?
        .iter()
        .map(|h| h.trim().to_ascii_lowercase())
        .collect();

    let find = |name: &str| headers.iter().position(|h| h == &name.to_ascii_lowercase());
    let frame_col = find("frame").ok_or_else(|| IngestError::MissingColumn("frame".into()))?;
    let ts_col =
        find("timestamp").ok_or_else(|| IngestError::MissingColumn("timestamp".into()))?;
    let mut au_cols = [0usize; AU_COUNT];
    for (i, descriptor) in AU_CATALOG.iter().enumerate() {
        let column = format!("{}_c", descriptor.code);
        au_cols[i] = find(&column).ok_or(IngestError::MissingColumn(column))?;
    }

    let mut frames = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2; // 1-based, after the header
        let record = record.map_err(|e| IngestError::MalformedRow {
            row,
            reason: e.to_string(),
        })?;
        let field = |col: usize| {
            record.get(col).ok_or_else(|| IngestError::MalformedRow {
                row,
                reason: format!("missing field {col}"),
            })
        };
        let frame_index: usize =
            field(frame_col)?
                .parse()
                .map_err(|_| IngestError::MalformedRow {
                    row,
                    reason: format!("bad frame index {:?}", field(frame_col).unwrap()),
                })?;
        let timestamp: f64 = field(ts_col)?
            .parse()
            .map_err(|_| IngestError::MalformedRow {
                row,
                reason: format!("bad timestamp {:?}", field(ts_col).unwrap()),
            })?;
        let mut presence = Vec::with_capacity(AU_COUNT);
        for (k, &col) in au_cols.iter().enumerate() {
            let raw = field(col)?;
            presence.push(parse_presence(raw, row, AU_CATALOG[k].code)?);
        }
        frames.push(AuFrame::new(frame_index, timestamp, presence)?);
    }
    Ok(frames)
}

/// Accepts 0/1 flags in integer or float spelling; anything else is an error.
fn parse_presence(raw: &str, row: usize, code: &str) -> Result<u8, IngestError> {
    let err = || IngestError::NonBinaryPresence {
        row,
        column: format!("{code}_c"),
        value: raw.to_string(),
    };
    let v: f64 = raw.parse().map_err(|_| err())?;
    let rounded = v.round();
    if (v - rounded).abs() > 1e-9 || !(rounded == 0.0 || rounded == 1.0) {
        return Err(err());
    }
    Ok(rounded as u8)
}

/// Parses the `trial_id,valence,arousal` label table, range-validating
/// every score.
pub fn read_labels_csv(text: &str) -> Result<Vec<EmotionLabel>, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| IngestError::MalformedRow {
            row: 1,
            reason: e.to_string(),
        })?
        .iter()
        .map(|h| h.trim().to_ascii_lowercase())
        .collect();
    for required in ["trial_id", "valence", "arousal"] {
        if !headers.iter().any(|h| h == required) {
            return Err(IngestError::MissingColumn(required.into()));
        }
    }
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (id_col, val_col, ar_col) = (col("trial_id"), col("valence"), col("arousal"));

    let mut labels = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| IngestError::MalformedRow {
            row,
            reason: e.to_string(),
        })?;
        let get = |c: usize| {
            record.get(c).ok_or_else(|| IngestError::MalformedRow {
                row,
                reason: format!("missing field {c}"),
            })
        };
        let trial_id = get(id_col)?.to_string();
        let parse_score = |raw: &str| -> Result<f64, IngestError> {
            raw.parse().map_err(|_| IngestError::MalformedRow {
                row,
                reason: format!("bad score {raw:?}"),
            })
        };
        let valence = parse_score(get(val_col)?)?;
        let arousal = parse_score(get(ar_col)?)?;
        labels.push(
            EmotionLabel::new(&trial_id, valence, arousal)
                .map_err(|source| IngestError::ScoreOutOfRange { row, source })?,
        );
    }
    Ok(labels)
}

/// Frame indices selected when downsampling `frame_count` frames from
/// `native_fps` to `target_fps`: `floor(k * native / target)` for
/// k = 0, 1, 2, ... while in range, deduplicated.
pub fn sample_frames(
    native_fps: f64,
    target_fps: f64,
    frame_count: usize,
) -> Result<Vec<usize>, IngestError> {
    assert!(native_fps > 0.0 && target_fps > 0.0 && frame_count > 0);
    if target_fps > native_fps {
        return Err(IngestError::TargetRateExceedsNative {
            native: native_fps,
            target: target_fps,
        });
    }
    let stride = native_fps / target_fps;
    let mut indices = Vec::new();
    for k in 0.. {
        let index = (k as f64 * stride).floor() as usize;
        if index >= frame_count {
            break;
        }
        if indices.last() != Some(&index) {
            indices.push(index);
        }
    }
    Ok(indices)
}

/// Parses the trial manifest: a JSON array of entries with unique trial
/// ids and positive frame rates. Relative paths are resolved against the
/// manifest's own directory.
pub fn read_manifest(path: &Path) -> Result<Vec<TrialManifestEntry>, IngestError> {
    let bytes = fs::read(path).map_err(|e| IngestError::io(path, e))?;
    let mut entries: Vec<TrialManifestEntry> = serde_json::from_slice(&bytes)
        .map_err(|e| IngestError::InvalidManifest(e.to_string()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    for entry in &mut entries {
        if !(entry.saliency_fps > 0.0) || !(entry.au_fps > 0.0) {
            return Err(IngestError::InvalidManifest(format!(
                "trial {} has a non-positive frame rate",
                entry.trial_id
            )));
        }
        if entry.saliency_dir.is_relative() {
            entry.saliency_dir = base.join(&entry.saliency_dir);
        }
        if entry.au_csv.is_relative() {
            entry.au_csv = base.join(&entry.au_csv);
        }
    }
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if entries[i].trial_id == entries[j].trial_id {
                return Err(IngestError::InvalidManifest(format!(
                    "duplicate trial id {}",
                    entries[i].trial_id
                )));
            }
        }
    }
    Ok(entries)
}

/// Lists `frame_<n>.pgm|png` files in a directory, sorted by frame number.
pub fn list_frame_files(dir: &Path) -> Result<Vec<(usize, PathBuf)>, IngestError> {
    let mut frames = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| IngestError::io(dir, e))? {
        let entry = entry.map_err(|e| IngestError::io(dir, e))?;
        let path = entry.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
            continue;
        };
        let Some(stem) = name
            .strip_suffix(".pgm")
            .or_else(|| name.strip_suffix(".png"))
        else {
            continue;
        };
        let Some(digits) = stem.strip_prefix("frame_") else {
            continue;
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            continue;
        }
        let index: usize = digits.parse().map_err(|_| IngestError::CorruptImage(
            format!("frame number overflow in {name}"),
        ))?;
        frames.push((index, path));
    }
    frames.sort_by(|a, b| a.0.cmp(&b.0));
    for pair in frames.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(IngestError::DuplicateFrame {
                dir: dir.to_path_buf(),
                index: pair[0].0,
            });
        }
    }
    Ok(frames)
}

/// Loads one trial's saliency and AU streams, each sampled at `target_fps`
/// against its own native rate and paired downstream by sample ordinal.
pub fn load_trial(
    entry: &TrialManifestEntry,
    target_fps: f64,
) -> Result<LoadedTrial, IngestError> {
    let files = list_frame_files(&entry.saliency_dir)?;
    if files.is_empty() {
        return Err(IngestError::EmptyTrial(entry.trial_id.clone()));
    }
    let selected = sample_frames(entry.saliency_fps, target_fps, files.len())?;
    let mut saliency_frames = Vec::with_capacity(selected.len());
    for &ordinal in &selected {
        let (frame_index, path) = &files[ordinal];
        let bytes = fs::read(path).map_err(|e| IngestError::io(path, e))?;
        saliency_frames.push(SampledFrame {
            frame_index: *frame_index,
            timestamp: *frame_index as f64 / entry.saliency_fps,
            map: read_saliency_frame(&bytes)?,
        });
    }

    let au_text =
        fs::read_to_string(&entry.au_csv).map_err(|e| IngestError::io(&entry.au_csv, e))?;
    let all_au = read_au_csv(&au_text)?;
    if all_au.is_empty() {
        return Err(IngestError::EmptyTrial(entry.trial_id.clone()));
    }
    let au_selected = sample_frames(entry.au_fps, target_fps, all_au.len())?;
    let au_frames = au_selected.iter().map(|&i| all_au[i].clone()).collect();

    Ok(LoadedTrial {
        trial_id: entry.trial_id.clone(),
        saliency_frames,
        au_frames,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::au_index;

    fn au_header() -> String {
        let mut cols = vec!["frame".to_string(), "timestamp".to_string()];
        cols.extend(AU_CATALOG.iter().map(|d| format!("{}_c", d.code)));
        cols.join(",")
    }

    #[test]
    fn pgm_endpoint_mapping() {
        let bytes = b"P5\n2 1\n255\n\x00\xff";
        let map = read_saliency_frame(bytes).unwrap();
        assert_eq!(map.intensities(), &[0.0, 1.0]);
    }

    #[test]
    fn pgm_linear_scaling() {
        let bytes = b"P5\n1 1\n255\n\x80";
        let map = read_saliency_frame(bytes).unwrap();
        assert!((map.intensities()[0] - 128.0 / 255.0).abs() < 1e-15);
    }

    #[test]
    fn truncated_pgm_is_corrupt() {
        let bytes = b"P5\n4 4\n255\n\x00\x01";
        assert!(matches!(
            read_saliency_frame(bytes).unwrap_err(),
            IngestError::CorruptImage(_)
        ));
    }

    #[test]
    fn pgm_with_comment_parses() {
        let bytes = b"P5\n# a comment\n2 1\n255\n\x10\x20";
        assert!(read_saliency_frame(bytes).is_ok());
    }

    #[test]
    fn pgm_with_wrong_maxval_unsupported() {
        let bytes = b"P5\n1 1\n65535\n\x00\x00";
        assert!(matches!(
            read_saliency_frame(bytes).unwrap_err(),
            IngestError::UnsupportedFormat(_)
        ));
    }

    #[test]
    fn unknown_magic_is_unsupported() {
        assert!(matches!(
            read_saliency_frame(b"GIF89a....").unwrap_err(),
            IngestError::UnsupportedFormat(_)
        ));
    }

    #[test]
    fn png_round_trip() {
        let map = SaliencyMap::new(3, 2, vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0]).unwrap();
        let bytes = write_png(&map);
        let back = read_saliency_frame(&bytes).unwrap();
        assert_eq!((back.width(), back.height()), (3, 2));
        for (a, b) in map.intensities().iter().zip(back.intensities()) {
            assert!((a - b).abs() <= 0.5 / 255.0 + 1e-12);
        }
    }

    #[test]
    fn truncated_png_is_corrupt() {
        let map = SaliencyMap::new(2, 2, vec![0.1; 4]).unwrap();
        let mut bytes = write_png(&map);
        bytes.truncate(bytes.len() / 2);
        assert!(matches!(
            read_saliency_frame(&bytes).unwrap_err(),
            IngestError::CorruptImage(_)
        ));
    }

    #[test]
    fn pgm_round_trip_is_exact() {
        let map = SaliencyMap::new(2, 2, vec![0.0, 1.0, 0.5, 0.25]).unwrap();
        let back = read_saliency_frame(&write_pgm(&map)).unwrap();
        for (a, b) in map.intensities().iter().zip(back.intensities()) {
            assert!((a - b).abs() <= 0.5 / 255.0 + 1e-12);
        }
    }

    #[test]
    fn au_csv_all_absent_row() {
        let zeros = vec!["0"; AU_COUNT].join(",");
        let text = format!("{}\n0,0.0,{}\n", au_header(), zeros);
        let frames = read_au_csv(&text).unwrap();
        assert_eq!(frames.len(), 1);
        assert!(frames[0].presence().iter().all(|&p| p == 0));
    }

    #[test]
    fn au_csv_missing_column_named() {
        let header = au_header().replace(",AU45_c", "");
        let text = format!("{header}\n");
        match read_au_csv(&text).unwrap_err() {
            IngestError::MissingColumn(c) => assert_eq!(c, "AU45_c"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn au_csv_single_presence_lands_at_catalog_position() {
        let mut flags = vec!["0"; AU_COUNT];
        let au12 = au_index("AU12").unwrap();
        flags[au12] = "1";
        let text = format!("{}\n7,3.5,{}\n", au_header(), flags.join(","));
        let frames = read_au_csv(&text).unwrap();
        let presence = frames[0].presence();
        for (i, &p) in presence.iter().enumerate() {
            assert_eq!(p == 1, i == au12, "index {i}");
        }
        assert_eq!(frames[0].frame_index, 7);
        assert_eq!(frames[0].timestamp, 3.5);
    }

    #[test]
    fn au_csv_accepts_float_flags_and_spaces() {
        let flags = vec!["1.0"; AU_COUNT].join(", ");
        let header = au_header().replace(',', ", ");
        let text = format!("{header}\n0, 0.0, {flags}\n");
        let frames = read_au_csv(&text).unwrap();
        assert!(frames[0].presence().iter().all(|&p| p == 1));
    }

    #[test]
    fn au_csv_rejects_non_binary_presence() {
        let mut flags = vec!["0"; AU_COUNT];
        flags[2] = "0.4";
        let text = format!("{}\n0,0.0,{}\n", au_header(), flags.join(","));
        match read_au_csv(&text).unwrap_err() {
            IngestError::NonBinaryPresence { row, column, .. } => {
                assert_eq!(row, 2);
                assert_eq!(column, "AU04_c");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn au_csv_headers_match_case_insensitively() {
        let header = au_header().to_ascii_uppercase().replace("TIMESTAMP", "Timestamp");
        let zeros = vec!["0"; AU_COUNT].join(",");
        let text = format!("{header}\n0,0.0,{zeros}\n");
        assert!(read_au_csv(&text).is_ok());
    }

    #[test]
    fn labels_csv_examples() {
        let labels = read_labels_csv("trial_id,valence,arousal\nt01,7,3\n").unwrap();
        assert_eq!(labels[0], EmotionLabel::new("t01", 7.0, 3.0).unwrap());

        let err = read_labels_csv("trial_id,valence,arousal\nt02,10,4\n").unwrap_err();
        assert!(matches!(err, IngestError::ScoreOutOfRange { row: 2, .. }));

        let fractional = read_labels_csv("trial_id,valence,arousal\nt03,4.5,6.5\n").unwrap();
        assert_eq!(fractional[0], EmotionLabel::new("t03", 4.5, 6.5).unwrap());
    }

    #[test]
    fn labels_csv_bad_score_is_malformed() {
        let err = read_labels_csv("trial_id,valence,arousal\nt01,abc,4\n").unwrap_err();
        assert!(matches!(err, IngestError::MalformedRow { row: 2, .. }));
    }

    #[test]
    fn sample_frames_every_15th() {
        assert_eq!(
            sample_frames(30.0, 2.0, 90).unwrap(),
            vec![0, 15, 30, 45, 60, 75]
        );
    }

    #[test]
    fn sample_frames_fractional_stride() {
        // floor(k * 12.5) for k = 0..: hand-enumerated oracle.
        assert_eq!(sample_frames(25.0, 2.0, 50).unwrap(), vec![0, 12, 25, 37]);
    }

    #[test]
    fn sample_frames_identity_when_rates_match() {
        assert_eq!(sample_frames(2.0, 2.0, 4).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn sample_frames_rejects_upsampling() {
        assert!(matches!(
            sample_frames(2.0, 30.0, 10).unwrap_err(),
            IngestError::TargetRateExceedsNative { .. }
        ));
    }

    #[test]
    fn sample_frames_strictly_increasing_and_bounded() {
        for native in [7.3, 24.0, 25.0, 29.97, 30.0, 60.0] {
            for target in [1.0, 2.0, 5.0] {
                if target > native {
                    continue;
                }
                let indices = sample_frames(native, target, 200).unwrap();
                assert!(!indices.is_empty());
                for pair in indices.windows(2) {
                    assert!(pair[0] < pair[1]);
                }
                assert!(*indices.last().unwrap() < 200);
            }
        }
    }

    #[test]
    fn sample_frames_exact_stride_when_divisible() {
        let indices = sample_frames(24.0, 2.0, 240).unwrap();
        for (k, &index) in indices.iter().enumerate() {
            assert_eq!(index, k * 12);
        }
    }
}
