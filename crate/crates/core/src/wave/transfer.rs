//! Transfer data: the receiver reading of a propagating wavefield, sampled
//! at the snapshot times. This is the only input the inversion consumes.

use crate::error::{Error, Result};
use crate::wave::grid::GridFunction;
use crate::wave::snapshots::SnapshotSet;

/// Samples `F(k tau) = <g_receiver, u_k>` for `k = 0..len-1`.
///
/// An `n x n` mass matrix downstream needs exactly `2n - 1` samples, so the
/// sample count of a series feeding the reduced-order model must be odd.
#[derive(Debug, Clone)]
pub struct TransferSeries {
    source: usize,
    receiver: usize,
    tau: f64,
    samples: Vec<f64>,
}

impl TransferSeries {
    pub fn new(source: usize, receiver: usize, tau: f64, samples: Vec<f64>) -> Self {
        TransferSeries {
            source,
            receiver,
            tau,
            samples,
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn receiver(&self) -> usize {
        self.receiver
    }

    pub fn is_diagonal(&self) -> bool {
        self.source == self.receiver
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    pub fn sample(&self, k: usize) -> f64 {
        self.samples[k]
    }

    /// Mass-matrix order this series supports: `n` with `len = 2n - 1`.
    /// Errors on even-length series.
    pub fn mass_order(&self) -> Result<usize> {
        if self.samples.len() % 2 == 0 {
            return Err(Error::Contract(format!(
                "a mass matrix needs an odd number of transfer samples (2n - 1), got {}",
                self.samples.len()
            )));
        }
        Ok((self.samples.len() + 1) / 2)
    }

    /// Number of samples required for an `n x n` mass matrix.
    pub fn samples_for_order(n: usize) -> usize {
        2 * n - 1
    }
}

/// Integrate every snapshot against the receiver pulse with the cell-volume
/// inner product.
pub fn record_transfer(
    snapshots: &SnapshotSet,
    receiver_pulse: &GridFunction,
    source: usize,
    receiver: usize,
) -> Result<TransferSeries> {
    if receiver_pulse.grid().as_ref() != snapshots.grid().as_ref() {
        return Err(Error::GridMismatch(
            "receiver pulse lives on a different grid than the snapshots".into(),
        ));
    }
    let samples = snapshots
        .iter()
        .map(|u| receiver_pulse.inner(u))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransferSeries::new(
        source,
        receiver,
        snapshots.tau(),
        samples,
    ))
}
