//! Turns a saliency map into the two frame features: the fraction of the
//! frame covered by salient regions, and the number of those regions.
//! Regions are connected components of the thresholded map, with small
//! speckle components filtered out.

use crate::domain::{BinaryMask, DomainError, FrameFeatures, SaliencyMap, TrialFeatures};

/// Pixel adjacency used when grouping foreground pixels into regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    Eight,
}

impl Connectivity {
    pub fn as_u8(&self) -> u8 {
        match self {
            Connectivity::Four => 4,
            Connectivity::Eight => 8,
        }
    }
}

/// Binarization and region-counting parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureConfig {
    /// Intensity threshold; pixels at or above it are salient.
    pub threshold: f64,
    pub connectivity: Connectivity,
    /// Regions smaller than this fraction of the frame are dropped.
    pub min_region_fraction: f64,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        Self {
            threshold: 0.5,
            connectivity: Connectivity::Eight,
            min_region_fraction: 0.001,
        }
    }
}

/// Region labels for a mask: 0 is background, 1..=R are regions in
/// raster-scan first-encounter order.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionLabeling {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    region_sizes: Vec<usize>,
}

impl RegionLabeling {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Pixel count per region id (index 0 holds region 1).
    pub fn region_sizes(&self) -> &[usize] {
        &self.region_sizes
    }

    pub fn region_count(&self) -> usize {
        self.region_sizes.len()
    }
}

/// Thresholds a map: a bit is set iff its intensity is at least `threshold`.
pub fn binarize(map: &SaliencyMap, threshold: f64) -> BinaryMask {
    let bits = map.intensities().iter().map(|&v| v >= threshold).collect();
    BinaryMask::new(map.width(), map.height(), bits).expect("mask dims match map dims")
}

/// Labels connected foreground components with a two-pass union-find scan.
/// Final labels are dense and follow raster-scan first-encounter order.
pub fn label_regions(mask: &BinaryMask, connectivity: Connectivity) -> RegionLabeling {
    let width = mask.width();
    let height = mask.height();
    let mut provisional = vec![0u32; width * height];
    let mut parent: Vec<u32> = vec![0]; // parent[0] unused; labels start at 1

    fn find(parent: &mut [u32], mut l: u32) -> u32 {
        while parent[l as usize] != l {
            let grand = parent[parent[l as usize] as usize];
            parent[l as usize] = grand;
            l = grand;
        }
        l
    }

    fn union(parent: &mut [u32], a: u32, b: u32) {
        let ra = find(parent, a);
        let rb = find(parent, b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi as usize] = lo;
        }
    }

    let mut neighbors = [0u32; 4];
    for y in 0..height {
        for x in 0..width {
            if !mask.get(x, y) {
                continue;
            }
            let mut count = 0;
            if x > 0 && mask.get(x - 1, y) {
                neighbors[count] = provisional[y * width + x - 1];
                count += 1;
            }
            if y > 0 {
                if mask.get(x, y - 1) {
                    neighbors[count] = provisional[(y - 1) * width + x];
                    count += 1;
                }
                if connectivity == Connectivity::Eight {
                    if x > 0 && mask.get(x - 1, y - 1) {
                        neighbors[count] = provisional[(y - 1) * width + x - 1];
                        count += 1;
                    }
                    if x + 1 < width && mask.get(x + 1, y - 1) {
                        neighbors[count] = provisional[(y - 1) * width + x + 1];
                        count += 1;
                    }
                }
            }
            let label = if count == 0 {
                let fresh = parent.len() as u32;
                parent.push(fresh);
                fresh
            } else {
                let min = *neighbors[..count].iter().min().unwrap();
                for &n in &neighbors[..count] {
                    union(&mut parent, min, n);
                }
                min
            };
            provisional[y * width + x] = label;
        }
    }

    // Second pass: map roots to dense labels in raster first-encounter order.
    let mut dense_of_root: Vec<u32> = vec![0; parent.len()];
    let mut region_sizes = Vec::new();
    let mut labels = vec![0u32; width * height];
    for i in 0..labels.len() {
        let prov = provisional[i];
        if prov == 0 {
            continue;
        }
        let root = find(&mut parent, prov);
        let dense = if dense_of_root[root as usize] == 0 {
            region_sizes.push(0usize);
            let next = region_sizes.len() as u32;
            dense_of_root[root as usize] = next;
            next
        } else {
            dense_of_root[root as usize]
        };
        labels[i] = dense;
        region_sizes[(dense - 1) as usize] += 1;
    }

    RegionLabeling {
        width,
        height,
        labels,
        region_sizes,
    }
}

/// Relabels regions smaller than `min_region_fraction` of the frame to
/// background; survivors are renumbered densely in their original order.
pub fn filter_small_regions(labeling: &RegionLabeling, min_region_fraction: f64) -> RegionLabeling {
    let cutoff = min_region_fraction * (labeling.width * labeling.height) as f64;
    let mut remap = vec![0u32; labeling.region_sizes.len() + 1];
    let mut kept_sizes = Vec::new();
    for (i, &size) in labeling.region_sizes.iter().enumerate() {
        if (size as f64) >= cutoff {
            kept_sizes.push(size);
            remap[i + 1] = kept_sizes.len() as u32;
        }
    }
    let labels = labeling.labels.iter().map(|&l| remap[l as usize]).collect();
    RegionLabeling {
        width: labeling.width,
        height: labeling.height,
        labels,
        region_sizes: kept_sizes,
    }
}

/// Fraction of the frame covered by surviving regions.
pub fn saliency_area(labeling: &RegionLabeling) -> f64 {
    let covered: usize = labeling.region_sizes.iter().sum();
    covered as f64 / (labeling.width * labeling.height) as f64
}

/// Full per-frame pipeline: threshold, label, filter, measure.
pub fn extract_frame_features(
    map: &SaliencyMap,
    config: &FeatureConfig,
    frame_index: usize,
    timestamp: f64,
) -> FrameFeatures {
    let mask = binarize(map, config.threshold);
    let labeling = label_regions(&mask, config.connectivity);
    let filtered = filter_small_regions(&labeling, config.min_region_fraction);
    FrameFeatures {
        frame_index,
        timestamp,
        saliency_area: saliency_area(&filtered),
        region_count: filtered.region_count(),
    }
}

/// Reduces a trial's frame features to their arithmetic means.
pub fn aggregate_trial(
    trial_id: &str,
    frames: Vec<FrameFeatures>,
) -> Result<TrialFeatures, DomainError> {
    TrialFeatures::aggregate(trial_id, frames)
}
