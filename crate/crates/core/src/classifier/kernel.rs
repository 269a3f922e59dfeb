//! Kernel evaluation and a least-recently-used cache of kernel rows
//! for the SMO solver.

use std::collections::HashMap;
use std::rc::Rc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hybrid::{dot, squared_distance, FeatureVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    Linear,
    Rbf { gamma: f64 },
}

impl KernelKind {
    pub fn name(&self) -> &'static str {
        match self {
            KernelKind::Linear => "linear",
            KernelKind::Rbf { .. } => "rbf",
        }
    }
}

/// Kernel selection plus the row-cache budget used while training.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub cache_mb: usize,
}

impl KernelSpec {
    pub fn linear(cache_mb: usize) -> Self {
        KernelSpec {
            kind: KernelKind::Linear,
            cache_mb,
        }
    }

    pub fn rbf(gamma: f64, cache_mb: usize) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Validation(format!(
                "rbf gamma must be a positive finite number, got {gamma}"
            )));
        }
        Ok(KernelSpec {
            kind: KernelKind::Rbf { gamma },
            cache_mb,
        })
    }
}

/// How the RBF bandwidth is chosen: a fixed value, or 1/(dim * var)
/// with the variance taken over every matrix entry including implicit
/// zeros.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaChoice {
    Scale,
    Fixed(f64),
}

impl GammaChoice {
    pub fn resolve(&self, features: &[FeatureVector]) -> Result<f64> {
        match *self {
            GammaChoice::Fixed(gamma) => {
                if gamma.is_finite() && gamma > 0.0 {
                    Ok(gamma)
                } else {
                    Err(Error::Validation(format!(
                        "rbf gamma must be a positive finite number, got {gamma}"
                    )))
                }
            }
            GammaChoice::Scale => {
                let first = features.first().ok_or_else(|| {
                    Error::Validation("cannot resolve gamma=scale without training data".into())
                })?;
                let dim = first.dim();
                if dim == 0 {
                    return Err(Error::Validation(
                        "cannot resolve gamma=scale on zero-dimensional features".into(),
                    ));
                }
                let total = (features.len() * dim) as f64;
                let mut sum = 0.0;
                let mut sum_sq = 0.0;
                for f in features {
                    f.for_each_entry(|_, v| {
                        sum += v;
                        sum_sq += v * v;
                    });
                }
                let mean = sum / total;
                let variance = (sum_sq / total - mean * mean).max(0.0);
                if variance > 1e-12 {
                    Ok(1.0 / (dim as f64 * variance))
                } else {
                    Ok(1.0 / dim as f64)
                }
            }
        }
    }
}

impl std::fmt::Display for GammaChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GammaChoice::Scale => write!(f, "scale"),
            GammaChoice::Fixed(v) => write!(f, "{v}"),
        }
    }
}

impl std::str::FromStr for GammaChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "scale" {
            return Ok(GammaChoice::Scale);
        }
        s.parse::<f64>()
            .map_err(|_| {
                Error::Validation(format!("gamma must be 'scale' or a number, got '{s}'"))
            })
            .map(GammaChoice::Fixed)
    }
}

pub fn kernel_eval(spec: &KernelSpec, x: &FeatureVector, z: &FeatureVector) -> f64 {
    match spec.kind {
        KernelKind::Linear => dot(x, z),
        KernelKind::Rbf { gamma } => (-gamma * squared_distance(x, z)).exp(),
    }
}

struct CachedRow {
    values: Rc<[f64]>,
    stamp: u64,
}

/// LRU cache of full kernel rows over one training set. Confined to a
/// single training run.
pub struct KernelCache<'a> {
    kind: KernelKind,
    data: &'a [FeatureVector],
    norms: Vec<f64>,
    capacity: usize,
    rows: HashMap<usize, CachedRow>,
    clock: u64,
}

impl<'a> KernelCache<'a> {
    pub fn new(spec: &KernelSpec, data: &'a [FeatureVector]) -> Self {
        let row_bytes = (data.len().max(1)) * std::mem::size_of::<f64>();
        let capacity = (spec.cache_mb.saturating_mul(1024 * 1024) / row_bytes).max(2);
        Self::with_capacity(spec.kind, data, capacity)
    }

    pub fn with_capacity(kind: KernelKind, data: &'a [FeatureVector], capacity: usize) -> Self {
        let norms = data.iter().map(|f| f.norm_sq()).collect();
        KernelCache {
            kind,
            data,
            norms,
            capacity: capacity.max(2),
            rows: HashMap::new(),
            clock: 0,
        }
    }

    pub fn row(&mut self, i: usize) -> Rc<[f64]> {
        self.clock += 1;
        if let Some(entry) = self.rows.get_mut(&i) {
            entry.stamp = self.clock;
            return Rc::clone(&entry.values);
        }
        let values: Rc<[f64]> = Rc::from(self.compute_row(i));
        if self.rows.len() >= self.capacity {
            if let Some((&oldest, _)) = self.rows.iter().min_by_key(|(_, e)| e.stamp) {
                self.rows.remove(&oldest);
            }
        }
        self.rows.insert(
            i,
            CachedRow {
                values: Rc::clone(&values),
                stamp: self.clock,
            },
        );
        values
    }

    fn compute_row(&self, i: usize) -> Vec<f64> {
        let data = self.data;
        let xi = &data[i];
        let parallel = data.len() * xi.dim() > (1 << 20);
        match self.kind {
            KernelKind::Linear => {
                if parallel {
                    data.par_iter().map(|xj| dot(xi, xj)).collect()
                } else {
                    data.iter().map(|xj| dot(xi, xj)).collect()
                }
            }
            KernelKind::Rbf { gamma } => {
                let norms = self.norms.as_slice();
                let ni = norms[i];
                let eval = move |(j, xj): (usize, &FeatureVector)| {
                    let dist = (ni + norms[j] - 2.0 * dot(xi, xj)).max(0.0);
                    (-gamma * dist).exp()
                };
                if parallel {
                    data.par_iter().enumerate().map(eval).collect()
                } else {
                    data.iter().enumerate().map(eval).collect()
                }
            }
        }
    }

    #[cfg(test)]
    fn cached(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }
}
