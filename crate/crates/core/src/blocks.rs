//! Componentwise disjoint and sliding block-maxima extraction.
//!
//! The sliding-window maximum runs in O(n) per dimension via a monotone
//! deque; the disjoint sample is the sliding sample subsampled at block
//! starts, with a trailing partial block discarded.

use crate::error::{Error, Result};
use crate::evd::NormingSequence;

/// Whether block windows advance by `r` (disjoint) or by one (sliding).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockMode {
    Disjoint,
    Sliding,
}

impl std::fmt::Display for BlockMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BlockMode::Disjoint => write!(f, "disjoint"),
            BlockMode::Sliding => write!(f, "sliding"),
        }
    }
}

/// An n×d series stored as d columns of length n.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMatrix {
    columns: Vec<Vec<f64>>,
    n: usize,
}

impl SeriesMatrix {
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Input("series needs at least one column".into()));
        }
        let n = columns[0].len();
        if n == 0 {
            return Err(Error::Input("series needs at least one row".into()));
        }
        for c in &columns {
            if c.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.len(),
                });
            }
            if c.iter().any(|x| !x.is_finite()) {
                return Err(Error::Input("series values must be finite".into()));
            }
        }
        Ok(Self { columns, n })
    }

    pub fn univariate(values: Vec<f64>) -> Result<Self> {
        Self::from_columns(vec![values])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }
}

/// Componentwise block maxima with their (0-based) window start indices.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMaxSample {
    pub mode: BlockMode,
    pub r: usize,
    /// One column of maxima per dimension, each of length `n_blocks`.
    pub maxima: Vec<Vec<f64>>,
    /// 0-based start index of each window in the underlying series.
    pub start_indices: Vec<usize>,
}

impl BlockMaxSample {
    pub fn n_blocks(&self) -> usize {
        self.start_indices.len()
    }

    pub fn dim(&self) -> usize {
        self.maxima.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.maxima[j]
    }
}

/// Affinely standardized block maxima z = (m − b)/a.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedSample {
    pub mode: BlockMode,
    pub r: usize,
    pub values: Vec<Vec<f64>>,
    pub start_indices: Vec<usize>,
    pub norming: NormingSequence,
}

/// Sliding-window maxima: `out[i] = max(column[i..i+r])` for
/// `i = 0..n-r`, computed with a monotone deque in O(n) total.
pub fn sliding_max(column: &[f64], r: usize) -> Result<Vec<f64>> {
    Ok(sliding_max_counted(column, r)?.0)
}

/// As [`sliding_max`], also returning the number of deque push/pop
/// operations performed (at most 2n).
pub fn sliding_max_counted(column: &[f64], r: usize) -> Result<(Vec<f64>, usize)> {
    let n = column.len();
    if r == 0 || r > n {
        return Err(Error::InvalidParameter(format!(
            "block size {r} out of range 1..={n}"
        )));
    }
    let mut out = Vec::with_capacity(n - r + 1);
    // Deque of candidate indices with strictly decreasing values.
    let mut deque: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
    let mut ops = 0usize;
    for i in 0..n {
        if let Some(&front) = deque.front() {
            if front + r <= i {
                deque.pop_front();
                ops += 1;
            }
        }
        while let Some(&back) = deque.back() {
            if column[back] <= column[i] {
                deque.pop_back();
                ops += 1;
            } else {
                break;
            }
        }
        deque.push_back(i);
        ops += 1;
        if i + 1 >= r {
            out.push(column[*deque.front().expect("deque non-empty")]);
        }
    }
    Ok((out, ops))
}

/// Extract componentwise block maxima of size `r` in the given mode.
///
/// Disjoint mode keeps the ⌊n/r⌋ windows starting at 0, r, 2r, …; a
/// trailing partial block is discarded. Sliding mode keeps all n−r+1
/// windows.
pub fn block_maxima(series: &SeriesMatrix, r: usize, mode: BlockMode) -> Result<BlockMaxSample> {
    let n = series.len();
    if r == 0 || r > n {
        return Err(Error::InvalidParameter(format!(
            "block size {r} out of range 1..={n}"
        )));
    }
    let mut maxima = Vec::with_capacity(series.dim());
    for j in 0..series.dim() {
        let slide = sliding_max(series.column(j), r)?;
        match mode {
            BlockMode::Sliding => maxima.push(slide),
            BlockMode::Disjoint => {
                let m = n / r;
                maxima.push((0..m).map(|i| slide[i * r]).collect());
            }
        }
    }
    let start_indices: Vec<usize> = match mode {
        BlockMode::Sliding => (0..n - r + 1).collect(),
        BlockMode::Disjoint => (0..n / r).map(|i| i * r).collect(),
    };
    Ok(BlockMaxSample {
        mode,
        r,
        maxima,
        start_indices,
    })
}

/// Componentwise affine standardization z = (m − b)/a.
pub fn standardize(sample: &BlockMaxSample, norming: &NormingSequence) -> Result<StandardizedSample> {
    if norming.r != sample.r {
        return Err(Error::InvalidParameter(format!(
            "norming block size {} does not match sample block size {}",
            norming.r, sample.r
        )));
    }
    if norming.dim() != sample.dim() {
        return Err(Error::DimensionMismatch {
            expected: sample.dim(),
            got: norming.dim(),
        });
    }
    let values = sample
        .maxima
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let (a, b) = (norming.a[j], norming.b[j]);
            col.iter().map(|m| (m - b) / a).collect()
        })
        .collect();
    Ok(StandardizedSample {
        mode: sample.mode,
        r: sample.r,
        values,
        start_indices: sample.start_indices.clone(),
        norming: norming.clone(),
    })
}
