//! Built-in spectral-residual saliency backend. Isolates the non-smooth
//! part of the image's log-amplitude spectrum, reconstructs with the
//! original phase, and smooths the squared magnitude into a saliency map.
//! Runs end-to-end without any learned model.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::domain::{DomainError, SaliencyMap};

#[derive(Debug, Error, PartialEq)]
pub enum SaliencyError {
    #[error("image {width}x{height} is smaller than the {min}x{min} minimum")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min: usize,
    },
}

/// Minimum spectral-residual input edge length.
pub const MIN_EDGE: usize = 8;

/// Row-major grayscale image with luminance in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    luminance: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, luminance: Vec<f64>) -> Result<Self, DomainError> {
        if width == 0 || height == 0 {
            return Err(DomainError::EmptyGrid { width, height });
        }
        if luminance.len() != width * height {
            return Err(DomainError::DimensionMismatch {
                width,
                height,
                len: luminance.len(),
            });
        }
        for &v in &luminance {
            if !(0.0..=1.0).contains(&v) {
                return Err(DomainError::OutOfRangeIntensity(v));
            }
        }
        Ok(Self {
            width,
            height,
            luminance,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn luminance(&self) -> &[f64] {
        &self.luminance
    }
}

/// Spectral-residual saliency of a grayscale image.
///
/// The raw map is `gaussian_blur(|ifft(exp(R + i*phase))|^2, sigma)` where
/// `R` is the log-amplitude spectrum minus its 3x3 box-filtered version.
/// The result is min-max normalized into `[0, 1]`; a raw map with range
/// below 1e-12 (a constant image in particular) comes back all zero.
pub fn spectral_residual_saliency(
    image: &GrayImage,
    smoothing_sigma: f64,
) -> Result<SaliencyMap, SaliencyError> {
    assert!(smoothing_sigma > 0.0, "smoothing sigma must be positive");
    let (w, h) = (image.width, image.height);
    if w < MIN_EDGE || h < MIN_EDGE {
        return Err(SaliencyError::ImageTooSmall {
            width: w,
            height: h,
            min: MIN_EDGE,
        });
    }

    // A constant image has no salient region; short-circuit before the
    // log-whitening can amplify rounding noise into a fake map.
    let lo = image.luminance.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = image
        .luminance
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    if hi - lo < 1e-12 {
        return Ok(zero_map(w, h));
    }

    let mut spectrum: Vec<Complex<f64>> = image
        .luminance
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .collect();
    fft_2d(w, h, &mut spectrum, false);

    // Log-amplitude, floored so exact spectral zeros stay finite.
    let log_amp: Vec<f64> = spectrum.iter().map(|c| (c.norm() + 1e-30).ln()).collect();
    let smoothed = box_filter_3x3(&log_amp, w, h);

    // Keep the phase, replace the amplitude with exp(residual).
    for (i, c) in spectrum.iter_mut().enumerate() {
        let residual = log_amp[i] - smoothed[i];
        let amp = residual.exp();
        let phase = c.arg();
        *c = Complex::from_polar(amp, phase);
    }
    fft_2d(w, h, &mut spectrum, true);

    let scale = 1.0 / (w * h) as f64;
    let power: Vec<f64> = spectrum.iter().map(|c| (c * scale).norm_sqr()).collect();
    let raw = gaussian_blur(&power, w, h, smoothing_sigma);

    let lo = raw.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = raw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo < 1e-12 {
        return Ok(zero_map(w, h));
    }
    let range = hi - lo;
    let intensities: Vec<f64> = raw.iter().map(|&v| (v - lo) / range).collect();
    Ok(SaliencyMap::new(w, h, intensities).expect("normalized map is valid"))
}

fn zero_map(w: usize, h: usize) -> SaliencyMap {
    SaliencyMap::new(w, h, vec![0.0; w * h]).expect("zero map is valid")
}

/// Separable Gaussian blur with a kernel truncated at radius `ceil(3*sigma)`
/// and replicate-clamped borders.
pub fn gaussian_blur(grid: &[f64], width: usize, height: usize, sigma: f64) -> Vec<f64> {
    assert!(sigma > 0.0, "sigma must be positive");
    assert_eq!(grid.len(), width * height);
    let radius = (3.0 * sigma).ceil() as i64;
    let mut kernel = Vec::with_capacity((2 * radius + 1) as usize);
    for i in -radius..=radius {
        kernel.push((-(i as f64).powi(2) / (2.0 * sigma * sigma)).exp());
    }
    let total: f64 = kernel.iter().sum();
    for k in &mut kernel {
        *k /= total;
    }

    // Horizontal pass, then vertical.
    let mut mid = vec![0.0; grid.len()];
    for y in 0..height {
        for x in 0..width {
            let mut acc = 0.0;
            for (ki, k) in kernel.iter().enumerate() {
                let sx = (x as i64 + ki as i64 - radius).clamp(0, width as i64 - 1) as usize;
                acc += k * grid[y * width + sx];
            }
            mid[y * width + x] = acc;
        }
    }
    let mut out = vec![0.0; grid.len()];
    for y in 0..height {
        for x in 0..width {
            let mut acc = 0.0;
            for (ki, k) in kernel.iter().enumerate() {
                let sy = (y as i64 + ki as i64 - radius).clamp(0, height as i64 - 1) as usize;
                acc += k * mid[sy * width + x];
            }
            out[y * width + x] = acc;
        }
    }
    out
}

/// 3x3 box filter with replicate-clamped borders.
fn box_filter_3x3(grid: &[f64], width: usize, height: usize) -> Vec<f64> {
    let mut out = vec![0.0; grid.len()];
    for y in 0..height {
        for x in 0..width {
            let mut acc = 0.0;
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    let sx = (x as i64 + dx).clamp(0, width as i64 - 1) as usize;
                    let sy = (y as i64 + dy).clamp(0, height as i64 - 1) as usize;
                    acc += grid[sy * width + sx];
                }
            }
            out[y * width + x] = acc / 9.0;
        }
    }
    out
}

/// In-place 2-D FFT over a row-major buffer: rows first, then columns.
/// The inverse direction is unnormalized, like the forward one.
fn fft_2d(width: usize, height: usize, buffer: &mut [Complex<f64>], inverse: bool) {
    let mut planner = FftPlanner::new();
    let row_fft = if inverse {
        planner.plan_fft_inverse(width)
    } else {
        planner.plan_fft_forward(width)
    };
    for row in buffer.chunks_exact_mut(width) {
        row_fft.process(row);
    }
    let col_fft = if inverse {
        planner.plan_fft_inverse(height)
    } else {
        planner.plan_fft_forward(height)
    };
    let mut column = vec![Complex::default(); height];
    for x in 0..width {
        for y in 0..height {
            column[y] = buffer[y * width + x];
        }
        col_fft.process(&mut column);
        for y in 0..height {
            buffer[y * width + x] = column[y];
        }
    }
}
