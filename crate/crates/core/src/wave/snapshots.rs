//! Time-sampled wavefields.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::wave::grid::{Grid, GridFunction};

/// Wavefield samples at `t = 0, tau, ..., (count-1) tau`.
#[derive(Debug, Clone)]
pub struct SnapshotSet {
    grid: Arc<Grid>,
    tau: f64,
    snapshots: Vec<GridFunction>,
}

impl SnapshotSet {
    pub fn new(grid: Arc<Grid>, tau: f64, snapshots: Vec<GridFunction>) -> Result<Self> {
        for s in &snapshots {
            if s.grid().as_ref() != grid.as_ref() {
                return Err(Error::GridMismatch(
                    "snapshot stored on a different grid".into(),
                ));
            }
        }
        Ok(SnapshotSet {
            grid,
            tau,
            snapshots,
        })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn get(&self, k: usize) -> &GridFunction {
        &self.snapshots[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &GridFunction> {
        self.snapshots.iter()
    }

    /// Cell-average every snapshot onto a coarser grid.
    pub fn restrict(&self, coarse: &Arc<Grid>) -> Result<SnapshotSet> {
        let snapshots = self
            .snapshots
            .iter()
            .map(|s| s.restrict(coarse))
            .collect::<Result<Vec<_>>>()?;
        Ok(SnapshotSet {
            grid: coarse.clone(),
            tau: self.tau,
            snapshots,
        })
    }

    /// Keep only the first `n` samples.
    pub fn truncate(mut self, n: usize) -> Self {
        self.snapshots.truncate(n);
        self
    }
}
