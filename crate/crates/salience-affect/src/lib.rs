//! Interpretable video-saliency features and the affect analyses built on
//! them: Pearson correlation with significance, Canonical Correlation
//! Analysis with L1-normalized coefficient shares, top-contributor ranking,
//! and circumplex quadrant classification. Ships a classical spectral
//! residual backend so the whole pipeline runs without a learned model.

pub mod domain;
pub mod features;
pub mod ingest;
pub mod report;
pub mod saliency;
pub mod stats;
