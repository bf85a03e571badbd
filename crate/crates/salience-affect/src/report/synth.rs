//! Deterministic synthetic corpus generator with planted effects. Each
//! trial draws a latent regime (single vs. multiple salient regions),
//! renders frames as well-separated bright rectangles, emits an AU stream
//! whose presence rates follow the regime, and labels the trial as an
//! affine function of its mean features plus Gaussian noise. The layout on
//! disk matches the ingest readers exactly, so the synthetic path
//! exercises them end to end.

use std::fs;
use std::path::{Path, PathBuf};

use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::domain::{AuFrame, SaliencyMap, AU_CATALOG, AU_COUNT};
use crate::ingest::{write_pgm, TrialManifestEntry};

/// Frame rate of generated corpora; matches the default analysis rate so
/// sampling is the identity and trial means are exact.
pub const SYNTH_FPS: f64 = 2.0;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid synth config: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Planted affine effects from trial-mean features to labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectSlopes {
    pub region_to_valence: f64,
    pub region_to_arousal: f64,
    pub area_to_valence: f64,
    pub area_to_arousal: f64,
}

impl Default for EffectSlopes {
    fn default() -> Self {
        // More regions raise valence and lower arousal.
        Self {
            region_to_valence: 1.0,
            region_to_arousal: -1.0,
            area_to_valence: 0.0,
            area_to_arousal: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub seed: u64,
    pub trial_count: usize,
    pub frames_per_trial: usize,
    pub frame_width: usize,
    pub frame_height: usize,
    pub slopes: EffectSlopes,
    pub noise_sigma: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trial_count: 100,
            frames_per_trial: 10,
            frame_width: 64,
            frame_height: 64,
            slopes: EffectSlopes::default(),
            noise_sigma: 0.5,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<(), SynthError> {
        if self.trial_count < 10 {
            return Err(SynthError::Invalid(format!(
                "trial count {} below the minimum of 10",
                self.trial_count
            )));
        }
        if self.frames_per_trial < 2 {
            return Err(SynthError::Invalid(format!(
                "frames per trial {} below the minimum of 2",
                self.frames_per_trial
            )));
        }
        if self.frame_width < 16 || self.frame_height < 16 {
            return Err(SynthError::Invalid(format!(
                "frame size {}x{} below the 16x16 minimum",
                self.frame_width, self.frame_height
            )));
        }
        if self.noise_sigma < 0.0 {
            return Err(SynthError::Invalid("noise sigma must be >= 0".into()));
        }
        Ok(())
    }
}

/// Ground truth for one generated trial, returned for test assertions.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthTrialTruth {
    pub trial_id: String,
    pub region_count: usize,
    /// Actual rendered foreground fraction of each frame.
    pub area_fraction: f64,
    pub valence: f64,
    pub arousal: f64,
}

/// Header plus one row per AU frame, in the column order the readers expect.
pub fn emit_au_csv(frames: &[AuFrame]) -> String {
    let mut out = String::from("frame,timestamp");
    for descriptor in &AU_CATALOG {
        out.push(',');
        out.push_str(descriptor.code);
        out.push_str("_c");
    }
    out.push('\n');
    for frame in frames {
        out.push_str(&format!("{},{}", frame.frame_index, frame.timestamp));
        for &p in frame.presence() {
            out.push(',');
            out.push_str(if p == 1 { "1" } else { "0" });
        }
        out.push('\n');
    }
    out
}

/// Materializes a corpus under `out_dir`: `manifest.json`, `labels.csv`,
/// and per-trial frame directories and AU streams. Fully deterministic
/// given the config.
pub fn synth_corpus(
    config: &SynthConfig,
    out_dir: &Path,
) -> Result<Vec<SynthTrialTruth>, SynthError> {
    config.validate()?;
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let noise = if config.noise_sigma > 0.0 {
        Some(Normal::new(0.0, config.noise_sigma).expect("validated sigma"))
    } else {
        None
    };

    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source: std::io::Error| SynthError::Io {
            path: path.clone(),
            source,
        }
    };

    let trials_dir = out_dir.join("trials");
    fs::create_dir_all(&trials_dir).map_err(io_err(&trials_dir))?;

    let mut truths = Vec::with_capacity(config.trial_count);
    let mut manifest = Vec::with_capacity(config.trial_count);
    let mut labels_csv = String::from("trial_id,valence,arousal\n");

    for t in 0..config.trial_count {
        let trial_id = format!("t{:04}", t + 1);
        let multi_region = rng.random_bool(0.5);
        let region_count = if multi_region {
            rng.random_range(2..=3usize)
        } else {
            1
        };
        let target_fraction = rng.random_range(0.02..0.13);
        let geometry = plan_rectangles(config, region_count, target_fraction);
        let frame_pixels = (config.frame_width * config.frame_height) as f64;
        let area_fraction =
            geometry.iter().map(|r| (r.w * r.h) as f64).sum::<f64>() / frame_pixels;

        let frame_dir = trials_dir.join(&trial_id).join("frames");
        fs::create_dir_all(&frame_dir).map_err(io_err(&frame_dir))?;
        for f in 0..config.frames_per_trial {
            let map = render_frame(config, &geometry, &mut rng);
            let path = frame_dir.join(format!("frame_{f:06}.pgm"));
            fs::write(&path, write_pgm(&map)).map_err(io_err(&path))?;
        }

        let au_frames = gen_au_frames(config, multi_region, &mut rng);
        let au_path = trials_dir.join(&trial_id).join("au.csv");
        fs::write(&au_path, emit_au_csv(&au_frames)).map_err(io_err(&au_path))?;

        // Labels are affine in the trial-mean features; the region count is
        // centered at 2 and the area at the middle of its generated range.
        let region_term = region_count as f64 - 2.0;
        let area_term = (area_fraction - 0.075) / 0.055;
        let slopes = &config.slopes;
        let mut draw = |base: f64| match &noise {
            Some(n) => base + n.sample(&mut rng),
            None => base,
        };
        let valence = draw(
            5.0 + slopes.region_to_valence * region_term + slopes.area_to_valence * area_term,
        )
        .clamp(1.0, 9.0);
        let arousal = draw(
            5.0 + slopes.region_to_arousal * region_term + slopes.area_to_arousal * area_term,
        )
        .clamp(1.0, 9.0);
        labels_csv.push_str(&format!("{trial_id},{valence},{arousal}\n"));

        manifest.push(TrialManifestEntry {
            trial_id: trial_id.clone(),
            saliency_dir: PathBuf::from(format!("trials/{trial_id}/frames")),
            saliency_fps: SYNTH_FPS,
            au_csv: PathBuf::from(format!("trials/{trial_id}/au.csv")),
            au_fps: SYNTH_FPS,
        });
        truths.push(SynthTrialTruth {
            trial_id,
            region_count,
            area_fraction,
            valence,
            arousal,
        });
    }

    let manifest_path = out_dir.join("manifest.json");
    let manifest_json =
        serde_json::to_string_pretty(&manifest).expect("manifest serialization cannot fail");
    fs::write(&manifest_path, manifest_json + "\n").map_err(io_err(&manifest_path))?;
    let labels_path = out_dir.join("labels.csv");
    fs::write(&labels_path, labels_csv).map_err(io_err(&labels_path))?;

    Ok(truths)
}

struct Rect {
    cell: usize,
    w: usize,
    h: usize,
}

/// Splits the target foreground area across `count` rectangles, one per
/// quadrant cell, clamped so each fits its cell with a 2-pixel margin.
fn plan_rectangles(config: &SynthConfig, count: usize, target_fraction: f64) -> Vec<Rect> {
    let frame_pixels = (config.frame_width * config.frame_height) as f64;
    let per_rect = target_fraction * frame_pixels / count as f64;
    let max_w = config.frame_width / 2 - 4;
    let max_h = config.frame_height / 2 - 4;
    // Spread regions over visually distant cells first.
    const CELL_ORDER: [usize; 4] = [0, 3, 1, 2];
    (0..count)
        .map(|i| {
            let side = per_rect.sqrt();
            let w = (side.round() as usize).clamp(1, max_w);
            let h = ((per_rect / w as f64).round() as usize).clamp(1, max_h);
            Rect {
                cell: CELL_ORDER[i],
                w,
                h,
            }
        })
        .collect()
}

/// Renders the trial's rectangles at full intensity on a black background,
/// jittering each within its own quadrant cell.
fn render_frame(config: &SynthConfig, rects: &[Rect], rng: &mut ChaCha20Rng) -> SaliencyMap {
    let (fw, fh) = (config.frame_width, config.frame_height);
    let mut grid = vec![0.0f64; fw * fh];
    let (cw, ch) = (fw / 2, fh / 2);
    for rect in rects {
        let (cx, cy) = (rect.cell % 2, rect.cell / 2);
        let x_lo = cx * cw + 2;
        let y_lo = cy * ch + 2;
        let x_hi = x_lo + (cw - 4 - rect.w);
        let y_hi = y_lo + (ch - 4 - rect.h);
        let x = rng.random_range(x_lo..=x_hi);
        let y = rng.random_range(y_lo..=y_hi);
        for dy in 0..rect.h {
            for dx in 0..rect.w {
                grid[(y + dy) * fw + x + dx] = 1.0;
            }
        }
    }
    SaliencyMap::new(fw, fh, grid).expect("rendered grid is a valid map")
}

/// AU presence rates tied to the latent regime: smiling-cluster units fire
/// in the multi-region regime, brow/lip-tension units in the single-region
/// regime.
fn gen_au_frames(config: &SynthConfig, multi_region: bool, rng: &mut ChaCha20Rng) -> Vec<AuFrame> {
    let mut probs = [0.08f64; AU_COUNT];
    let boost = |probs: &mut [f64; AU_COUNT], code: &str, p: f64| {
        let i = crate::domain::au_index(code).expect("catalog code");
        probs[i] = p;
    };
    if multi_region {
        boost(&mut probs, "AU06", 0.55);
        boost(&mut probs, "AU12", 0.65);
        boost(&mut probs, "AU25", 0.35);
    } else {
        boost(&mut probs, "AU04", 0.55);
        boost(&mut probs, "AU15", 0.45);
        boost(&mut probs, "AU23", 0.40);
        boost(&mut probs, "AU25", 0.50);
    }
    (0..config.frames_per_trial)
        .map(|f| {
            let presence: Vec<u8> = probs
                .iter()
                .map(|&p| if rng.random_bool(p) { 1 } else { 0 })
                .collect();
            AuFrame::new(f, f as f64 / SYNTH_FPS, presence).expect("18 binary flags")
        })
        .collect()
}
