//! Domain types shared by every stage of the pipeline: saliency maps,
//! per-frame and per-trial features, action-unit frames, emotion labels,
//! and the circumplex quadrant model. No I/O, no statistics.
//!
//! All types are immutable values after construction; invalid states are
//! rejected by the constructors.

use thiserror::Error;

/// Invariant violations raised by the domain constructors.
#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("intensity {0} outside [0, 1]")]
    OutOfRangeIntensity(f64),
    #[error("grid of {len} values does not match {width}x{height}")]
    DimensionMismatch {
        width: usize,
        height: usize,
        len: usize,
    },
    #[error("zero-sized grid ({width}x{height})")]
    EmptyGrid { width: usize, height: usize },
    #[error("{field} score {value} outside [1, 9] for trial {trial_id}")]
    ScoreOutOfRange {
        trial_id: String,
        field: &'static str,
        value: f64,
    },
    #[error("expected {expected} action-unit flags, got {actual}")]
    PresenceLength { expected: usize, actual: usize },
    #[error("action-unit flag {0} is not 0 or 1")]
    NonBinaryPresence(u8),
    #[error("trial {0} has no frames")]
    EmptyTrial(String),
    #[error("frame indices are not strictly increasing at position {0}")]
    NonMonotonicFrames(usize),
}

/// Number of action units tracked per facial frame.
pub const AU_COUNT: usize = 18;

/// Per-frame grid of saliency intensities in `[0, 1]`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SaliencyMap {
    width: usize,
    height: usize,
    intensities: Vec<f64>,
}

impl SaliencyMap {
    /// Builds a map, validating dimensions and the `[0, 1]` intensity range.
    pub fn new(width: usize, height: usize, intensities: Vec<f64>) -> Result<Self, DomainError> {
        if width == 0 || height == 0 {
            return Err(DomainError::EmptyGrid { width, height });
        }
        if intensities.len() != width * height {
            return Err(DomainError::DimensionMismatch {
                width,
                height,
                len: intensities.len(),
            });
        }
        for &v in &intensities {
            if !(0.0..=1.0).contains(&v) {
                return Err(DomainError::OutOfRangeIntensity(v));
            }
        }
        Ok(Self {
            width,
            height,
            intensities,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn intensities(&self) -> &[f64] {
        &self.intensities
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.intensities[y * self.width + x]
    }
}

/// Checks the saliency-map invariants over raw parts without constructing.
pub fn validate_saliency_map(
    width: usize,
    height: usize,
    intensities: &[f64],
) -> Result<(), DomainError> {
    if width == 0 || height == 0 {
        return Err(DomainError::EmptyGrid { width, height });
    }
    if intensities.len() != width * height {
        return Err(DomainError::DimensionMismatch {
            width,
            height,
            len: intensities.len(),
        });
    }
    for &v in intensities {
        if !(0.0..=1.0).contains(&v) {
            return Err(DomainError::OutOfRangeIntensity(v));
        }
    }
    Ok(())
}

/// Row-major boolean grid, the thresholded form of a saliency map.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<Self, DomainError> {
        if width == 0 || height == 0 {
            return Err(DomainError::EmptyGrid { width, height });
        }
        if bits.len() != width * height {
            return Err(DomainError::DimensionMismatch {
                width,
                height,
                len: bits.len(),
            });
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }
}

/// The two saliency features of a single frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameFeatures {
    pub frame_index: usize,
    /// Seconds from trial start.
    pub timestamp: f64,
    /// Fraction of the frame covered by surviving salient regions.
    pub saliency_area: f64,
    /// Number of surviving salient regions.
    pub region_count: usize,
}

/// Per-trial aggregate of frame features.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialFeatures {
    pub trial_id: String,
    pub frames: Vec<FrameFeatures>,
    pub mean_saliency_area: f64,
    pub mean_region_count: f64,
}

impl TrialFeatures {
    /// Aggregates per-frame features into trial-level arithmetic means.
    ///
    /// Frames must be non-empty and strictly increasing in frame index.
    pub fn aggregate(trial_id: &str, frames: Vec<FrameFeatures>) -> Result<Self, DomainError> {
        if frames.is_empty() {
            return Err(DomainError::EmptyTrial(trial_id.to_string()));
        }
        for i in 1..frames.len() {
            if frames[i].frame_index <= frames[i - 1].frame_index {
                return Err(DomainError::NonMonotonicFrames(i));
            }
        }
        let n = frames.len() as f64;
        let mean_saliency_area = frames.iter().map(|f| f.saliency_area).sum::<f64>() / n;
        let mean_region_count = frames.iter().map(|f| f.region_count as f64).sum::<f64>() / n;
        Ok(Self {
            trial_id: trial_id.to_string(),
            frames,
            mean_saliency_area,
            mean_region_count,
        })
    }
}

/// Presence flags of the 18 action units for one facial-video frame,
/// in the fixed [`AuCatalog`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct AuFrame {
    pub frame_index: usize,
    pub timestamp: f64,
    presence: [u8; AU_COUNT],
}

impl AuFrame {
    pub fn new(frame_index: usize, timestamp: f64, presence: Vec<u8>) -> Result<Self, DomainError> {
        if presence.len() != AU_COUNT {
            return Err(DomainError::PresenceLength {
                expected: AU_COUNT,
                actual: presence.len(),
            });
        }
        let mut flags = [0u8; AU_COUNT];
        for (i, &p) in presence.iter().enumerate() {
            if p > 1 {
                return Err(DomainError::NonBinaryPresence(p));
            }
            flags[i] = p;
        }
        Ok(Self {
            frame_index,
            timestamp,
            presence: flags,
        })
    }

    pub fn presence(&self) -> &[u8; AU_COUNT] {
        &self.presence
    }
}

/// One action-unit descriptor: FACS code and human name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuDescriptor {
    pub code: &'static str,
    pub name: &'static str,
}

/// The fixed, ascending-code catalog of the 18 tracked action units.
/// Matrix columns, CSV columns, and presence vectors all follow this order.
pub const AU_CATALOG: [AuDescriptor; AU_COUNT] = [
    AuDescriptor { code: "AU01", name: "Inner Brow Raiser" },
    AuDescriptor { code: "AU02", name: "Outer Brow Raiser" },
    AuDescriptor { code: "AU04", name: "Brow Lowerer" },
    AuDescriptor { code: "AU05", name: "Upper Lid Raiser" },
    AuDescriptor { code: "AU06", name: "Cheek Raiser" },
    AuDescriptor { code: "AU07", name: "Lid Tightener" },
    AuDescriptor { code: "AU09", name: "Nose Wrinkler" },
    AuDescriptor { code: "AU10", name: "Upper Lip Raiser" },
    AuDescriptor { code: "AU12", name: "Lip Corner Puller" },
    AuDescriptor { code: "AU14", name: "Dimpler" },
    AuDescriptor { code: "AU15", name: "Lip Corner Depressor" },
    AuDescriptor { code: "AU17", name: "Chin Raiser" },
    AuDescriptor { code: "AU20", name: "Lip Stretcher" },
    AuDescriptor { code: "AU23", name: "Lip Tightener" },
    AuDescriptor { code: "AU25", name: "Lips Part" },
    AuDescriptor { code: "AU26", name: "Jaw Drop" },
    AuDescriptor { code: "AU28", name: "Lip Suck" },
    AuDescriptor { code: "AU45", name: "Blink" },
];

/// Position of an AU code in the fixed catalog order.
pub fn au_index(code: &str) -> Option<usize> {
    AU_CATALOG.iter().position(|d| d.code == code)
}

/// One self-reported (valence, arousal) pair for a trial, each in `[1, 9]`.
/// Scores are accepted as reals so aggregated labels stay representable.
#[derive(Debug, Clone, PartialEq)]
pub struct EmotionLabel {
    pub trial_id: String,
    pub valence: f64,
    pub arousal: f64,
}

impl EmotionLabel {
    pub fn new(trial_id: &str, valence: f64, arousal: f64) -> Result<Self, DomainError> {
        if !(1.0..=9.0).contains(&valence) {
            return Err(DomainError::ScoreOutOfRange {
                trial_id: trial_id.to_string(),
                field: "valence",
                value: valence,
            });
        }
        if !(1.0..=9.0).contains(&arousal) {
            return Err(DomainError::ScoreOutOfRange {
                trial_id: trial_id.to_string(),
                field: "arousal",
                value: arousal,
            });
        }
        Ok(Self {
            trial_id: trial_id.to_string(),
            valence,
            arousal,
        })
    }
}

/// Circumplex region formed by splitting valence and arousal at 5.
/// Scores exactly at 5 do not belong to any strict quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    HighValenceLowArousal,
    HighValenceHighArousal,
    LowValenceLowArousal,
    LowValenceHighArousal,
    Boundary,
}

impl Quadrant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quadrant::HighValenceLowArousal => "high_valence_low_arousal",
            Quadrant::HighValenceHighArousal => "high_valence_high_arousal",
            Quadrant::LowValenceLowArousal => "low_valence_low_arousal",
            Quadrant::LowValenceHighArousal => "low_valence_high_arousal",
            Quadrant::Boundary => "boundary",
        }
    }
}

/// Places a label on the circumplex using strict comparisons against 5.
pub fn classify_quadrant(label: &EmotionLabel) -> Quadrant {
    const MID: f64 = 5.0;
    match (
        label.valence > MID,
        label.valence < MID,
        label.arousal > MID,
        label.arousal < MID,
    ) {
        (true, _, _, true) => Quadrant::HighValenceLowArousal,
        (true, _, true, _) => Quadrant::HighValenceHighArousal,
        (_, true, _, true) => Quadrant::LowValenceLowArousal,
        (_, true, true, _) => Quadrant::LowValenceHighArousal,
        _ => Quadrant::Boundary,
    }
}
