//! Second-order leapfrog time stepping: the scalable alternative to the
//! spectral propagator for grids too large to eigendecompose densely.
//!
//! Sampled states satisfy the same three-term cosine recurrence as the exact
//! propagator (with `cos(tau sqrt(A))` replaced by its second-order
//! approximation), so the transfer data it records is exactly consistent
//! with the mass-matrix identity used downstream.

use crate::error::{Error, Result};
use crate::wave::grid::GridFunction;
use crate::wave::operator::SymmetricOperator;
use crate::wave::snapshots::SnapshotSet;

const POWER_ITERATIONS: usize = 120;

/// Initial data for the second-order formulation.
pub enum InitialData<'a> {
    /// `u(0) = g`, `u_t(0) = 0`: the field whose samples are the snapshots.
    Displacement(&'a GridFunction),
    /// `u(0) = 0`, `u_t(0) = g`: the kernel field of the linearized data
    /// equation.
    Velocity(&'a GridFunction),
}

/// Substep count that keeps the per-substep CFL number `dt sqrt(lambda)/2`
/// at or below `target` (stability requires it below 1).
pub fn substeps_for_cfl(op: &SymmetricOperator, tau: f64, target: f64) -> usize {
    let lambda = op.lambda_max_estimate(POWER_ITERATIONS).max(0.0) * 1.05;
    let dt_max = 2.0 * target / lambda.sqrt().max(1e-300);
    ((tau.abs() / dt_max).ceil() as usize).max(1)
}

/// March the wave equation and hand every recorded sample (`k`, field at
/// `t = k tau`) to the callback. Refuses to run outside the stability bound
/// `(tau/substeps)^2 lambda_max < 4`.
pub fn leapfrog_run(
    op: &SymmetricOperator,
    init: InitialData<'_>,
    n_samples: usize,
    tau: f64,
    substeps: usize,
    mut on_sample: impl FnMut(usize, &[f64]) -> Result<()>,
) -> Result<()> {
    if substeps == 0 {
        return Err(Error::config("substeps must be at least 1"));
    }
    let g = match &init {
        InitialData::Displacement(g) | InitialData::Velocity(g) => *g,
    };
    if g.grid().as_ref() != op.grid().as_ref() {
        return Err(Error::GridMismatch(
            "initial data lives on a different grid than the operator".into(),
        ));
    }
    let dt = tau / substeps as f64;
    if n_samples > 1 {
        let lambda = op.lambda_max_estimate(POWER_ITERATIONS).max(0.0);
        let limit = 2.0 / lambda.sqrt().max(1e-300);
        if dt.abs() >= limit {
            return Err(Error::Cfl {
                step: dt.abs(),
                limit,
            });
        }
    }

    let n = op.grid().total_cells();
    let mut prev: Vec<f64>;
    let mut curr: Vec<f64>;
    let mut scratch = vec![0.0; n];

    match init {
        InitialData::Displacement(g) => {
            // u^1 = u^0 - dt^2/2 A u^0 (uses u_tt(0) = -A g, u_t(0) = 0)
            prev = g.values().to_vec();
            op.apply(&prev, &mut scratch);
            curr = prev
                .iter()
                .zip(&scratch)
                .map(|(u, au)| u - 0.5 * dt * dt * au)
                .collect();
        }
        InitialData::Velocity(g) => {
            // u^1 = dt g - dt^3/6 A g (uses u_ttt(0) = -A u_t(0))
            prev = vec![0.0; n];
            op.apply(g.values(), &mut scratch);
            curr = g
                .values()
                .iter()
                .zip(&scratch)
                .map(|(v, av)| dt * v - dt * dt * dt / 6.0 * av)
                .collect();
        }
    }

    on_sample(0, &prev)?;
    if n_samples == 1 {
        return Ok(());
    }

    let mut step = 1usize;
    let mut recorded = 1usize;
    loop {
        if step % substeps == 0 {
            on_sample(recorded, &curr)?;
            recorded += 1;
            if recorded == n_samples {
                return Ok(());
            }
        }
        op.apply(&curr, &mut scratch);
        for i in 0..n {
            let next = 2.0 * curr[i] - prev[i] - dt * dt * scratch[i];
            prev[i] = curr[i];
            curr[i] = next;
        }
        step += 1;
    }
}

/// Leapfrog snapshots of the displacement problem; the spectral propagator
/// is the accuracy oracle for this routine.
pub fn propagate_leapfrog(
    op: &SymmetricOperator,
    g: &GridFunction,
    n_samples: usize,
    tau: f64,
    substeps: usize,
) -> Result<SnapshotSet> {
    let mut snaps = Vec::with_capacity(n_samples);
    let grid = op.grid().clone();
    leapfrog_run(
        op,
        InitialData::Displacement(g),
        n_samples,
        tau,
        substeps,
        |_, field| {
            snaps.push(GridFunction::new(grid.clone(), field.to_vec())?);
            Ok(())
        },
    )?;
    SnapshotSet::new(op.grid().clone(), tau, snaps)
}
