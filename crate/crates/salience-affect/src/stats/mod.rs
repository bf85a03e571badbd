//! The two analysis instruments: Pearson correlation with a two-tailed
//! Student-t significance test, and Canonical Correlation Analysis computed
//! by whitening the covariance blocks and taking the SVD of the whitened
//! cross-covariance. Coefficient shares are L1-normalized with signs kept.

mod special;

pub use special::{inc_beta, ln_gamma, student_t_two_tailed};

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("sequence lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("covariance block is rank deficient; supply a positive ridge")]
    RankDeficient,
    #[error("need more than {needed} observations for {got} variables")]
    TooFewObservations { needed: usize, got: usize },
    #[error("weight vector is all zero")]
    AllZeroWeights,
    #[error("k = {k} exceeds {len} variables")]
    KTooLarge { k: usize, len: usize },
    #[error("every column is constant")]
    AllColumnsConstant,
}

/// Pearson correlation with its two-tailed significance.
#[derive(Debug, Clone, PartialEq)]
pub struct PccResult {
    pub r: f64,
    pub p: f64,
    pub n: usize,
}

/// Canonical correlations with the weight vectors of every component and
/// the L1-normalized signed shares of the first component.
#[derive(Debug, Clone, PartialEq)]
pub struct CcaResult {
    /// Canonical correlations, non-increasing, each in [0, 1].
    pub correlations: Vec<f64>,
    /// One weight vector over the X variables per component.
    pub x_weights: Vec<Vec<f64>>,
    /// One weight vector over the Y variables per component.
    pub y_weights: Vec<Vec<f64>>,
    /// Signed shares of the first component's X weights; |shares| sum to 1.
    pub x_shares: Vec<f64>,
    /// Signed shares of the first component's Y weights; |shares| sum to 1.
    pub y_shares: Vec<f64>,
}

/// Rectangular observations-by-variables matrix with unique column names.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    names: Vec<String>,
    data: DMatrix<f64>,
}

impl DataMatrix {
    /// Builds a matrix from equally long named columns.
    pub fn from_columns(columns: Vec<(String, Vec<f64>)>) -> Result<Self, StatsError> {
        if columns.is_empty() {
            return Err(StatsError::DegenerateInput("no columns"));
        }
        let rows = columns[0].1.len();
        for (_, col) in &columns {
            if col.len() != rows {
                return Err(StatsError::LengthMismatch(rows, col.len()));
            }
        }
        let names: Vec<String> = columns.iter().map(|(n, _)| n.clone()).collect();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                if names[i] == names[j] {
                    return Err(StatsError::DegenerateInput("duplicate column name"));
                }
            }
        }
        let mut data = DMatrix::zeros(rows, columns.len());
        for (j, (_, col)) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                data[(i, j)] = v;
            }
        }
        Ok(Self { names, data })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn cols(&self) -> usize {
        self.data.ncols()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.data.column(j).iter().copied().collect()
    }

    fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }
}

/// Pearson correlation coefficient of two equally long sequences with its
/// two-tailed p-value.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<PccResult, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    if n < 3 {
        return Err(StatsError::TooFewSamples { needed: 3, got: n });
    }
    let mean_x = x.iter().sum::<f64>() / n as f64;
    let mean_y = y.iter().sum::<f64>() / n as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for i in 0..n {
        let dx = x[i] - mean_x;
        let dy = y[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::DegenerateInput("constant series"));
    }
    let r = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    let p = p_value_two_tailed(r, n)?;
    Ok(PccResult { r, p, n })
}

/// Two-tailed p-value of a Pearson correlation r over n samples, from the
/// Student-t statistic t = r sqrt((n-2)/(1-r^2)) with n-2 degrees of freedom.
pub fn p_value_two_tailed(r: f64, n: usize) -> Result<f64, StatsError> {
    if n < 3 {
        return Err(StatsError::TooFewSamples { needed: 3, got: n });
    }
    debug_assert!(r.abs() <= 1.0);
    if r.abs() >= 1.0 {
        return Ok(0.0);
    }
    let df = (n - 2) as f64;
    let t = r * (df / (1.0 - r * r)).sqrt();
    Ok(student_t_two_tailed(t.abs(), df))
}

/// L1-normalizes a weight vector into signed shares whose magnitudes sum
/// to one.
pub fn normalize_l1(weights: &[f64]) -> Result<Vec<f64>, StatsError> {
    let total: f64 = weights.iter().map(|w| w.abs()).sum();
    if total == 0.0 {
        return Err(StatsError::AllZeroWeights);
    }
    Ok(weights.iter().map(|w| w / total).collect())
}

/// Ranks named shares by absolute value, largest first; ties keep the
/// incoming (fixed catalog) order.
pub fn top_k_contributors(
    shares: &[(String, f64)],
    k: usize,
) -> Result<Vec<(String, f64)>, StatsError> {
    if k > shares.len() {
        return Err(StatsError::KTooLarge {
            k,
            len: shares.len(),
        });
    }
    let mut ranked: Vec<(String, f64)> = shares.to_vec();
    ranked.sort_by(|a, b| b.1.abs().partial_cmp(&a.1.abs()).unwrap());
    ranked.truncate(k);
    Ok(ranked)
}

/// Removes zero-variance columns, reporting their names.
pub fn drop_constant_columns(m: &DataMatrix) -> Result<(DataMatrix, Vec<String>), StatsError> {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for j in 0..m.cols() {
        let col = m.column(j);
        let first = col[0];
        if col.iter().all(|&v| v == first) {
            dropped.push(m.names[j].clone());
        } else {
            kept.push((m.names[j].clone(), col));
        }
    }
    if kept.is_empty() {
        return Err(StatsError::AllColumnsConstant);
    }
    Ok((DataMatrix::from_columns(kept)?, dropped))
}

/// Canonical Correlation Analysis between two variable sets over the same
/// observations.
///
/// Columns are centered and scaled to unit variance, the covariance blocks
/// get `ridge` added to their diagonals, and the canonical structure comes
/// from the SVD of `Sxx^(-1/2) Sxy Syy^(-1/2)`. Each component's weight
/// pair is flipped jointly so the largest-magnitude X weight is positive.
pub fn cca(x: &DataMatrix, y: &DataMatrix, ridge: f64) -> Result<CcaResult, StatsError> {
    let n = x.rows();
    if n != y.rows() {
        return Err(StatsError::LengthMismatch(n, y.rows()));
    }
    let p = x.cols();
    let q = y.cols();
    let needed = p.max(q) + 1;
    if n <= needed {
        return Err(StatsError::TooFewObservations { needed, got: n });
    }

    let xs = standardize(x.matrix());
    let ys = standardize(y.matrix());
    let denom = (n - 1) as f64;
    let mut sxx = xs.transpose() * &xs / denom;
    let mut syy = ys.transpose() * &ys / denom;
    let sxy = xs.transpose() * &ys / denom;
    for i in 0..p {
        sxx[(i, i)] += ridge;
    }
    for i in 0..q {
        syy[(i, i)] += ridge;
    }

    let isx = inverse_sqrt(&sxx, ridge)?;
    let isy = inverse_sqrt(&syy, ridge)?;
    let m = &isx * sxy * &isy;

    let svd = m.svd(true, true);
    let u = svd.u.expect("svd with u requested");
    let v_t = svd.v_t.expect("svd with v_t requested");
    let r = p.min(q);

    // Order components by singular value, largest first.
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap()
    });
    order.truncate(r);

    let mut correlations = Vec::with_capacity(r);
    let mut x_weights = Vec::with_capacity(r);
    let mut y_weights = Vec::with_capacity(r);
    for &idx in &order {
        correlations.push(svd.singular_values[idx].clamp(0.0, 1.0));
        let mut a: DVector<f64> = &isx * u.column(idx);
        let mut b: DVector<f64> = &isy * v_t.row(idx).transpose();
        // Deterministic sign: largest-|weight| X entry made positive.
        let lead = (0..a.len())
            .max_by(|&i, &j| a[i].abs().partial_cmp(&a[j].abs()).unwrap())
            .unwrap();
        if a[lead] < 0.0 {
            a.neg_mut();
            b.neg_mut();
        }
        x_weights.push(a.iter().copied().collect::<Vec<f64>>());
        y_weights.push(b.iter().copied().collect::<Vec<f64>>());
    }

    let x_shares = normalize_l1(&x_weights[0])?;
    let y_shares = normalize_l1(&y_weights[0])?;
    Ok(CcaResult {
        correlations,
        x_weights,
        y_weights,
        x_shares,
        y_shares,
    })
}

/// Centers each column and scales it to unit sample variance. Constant
/// columns become all-zero rather than dividing by zero; with a positive
/// ridge they contribute nothing, and with ridge zero the rank check in
/// the whitening step rejects them.
fn standardize(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let mut out = m.clone();
    for j in 0..m.ncols() {
        let mean = m.column(j).sum() / n as f64;
        let mut var = 0.0;
        for i in 0..n {
            let d = m[(i, j)] - mean;
            var += d * d;
        }
        var /= (n - 1) as f64;
        let scale = if var > 0.0 { var.sqrt() } else { 1.0 };
        for i in 0..n {
            out[(i, j)] = (m[(i, j)] - mean) / scale;
        }
    }
    out
}

/// Inverse square root of a symmetric positive-definite matrix via its
/// eigendecomposition. Fails with `RankDeficient` when an eigenvalue is
/// numerically zero and no ridge was applied.
fn inverse_sqrt(m: &DMatrix<f64>, ridge: f64) -> Result<DMatrix<f64>, StatsError> {
    let eig = m.clone().symmetric_eigen();
    let max_eig = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    let tol = max_eig * 1e-12;
    let dim = m.nrows();
    let mut out = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let lambda = eig.eigenvalues[k];
        if lambda <= tol {
            if ridge == 0.0 {
                return Err(StatsError::RankDeficient);
            }
            continue;
        }
        let w = 1.0 / lambda.sqrt();
        let v = eig.eigenvectors.column(k);
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] += w * v[i] * v[j];
            }
        }
    }
    Ok(out)
}
