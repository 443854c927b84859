//! Discrete wave problem: grids, the Neumann operator, source pulses,
//! propagation (spectral oracle and leapfrog), and transfer recordings.

pub mod grid;
pub mod leapfrog;
pub mod operator;
pub mod pulse;
pub mod snapshots;
pub mod spectral;
pub mod transfer;

pub use grid::{relative_l2, Grid, GridFunction};
pub use leapfrog::{leapfrog_run, propagate_leapfrog, substeps_for_cfl, InitialData};
pub use operator::SymmetricOperator;
pub use pulse::{source_pulse, source_pulse_with_basis, PulseSpec};
pub use snapshots::SnapshotSet;
pub use spectral::{propagate_spectral, AxisBasis, SpectralPropagator};
pub use transfer::{record_transfer, TransferSeries};

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    /// Closed-form eigenpairs of the 1D discrete Neumann Laplacian:
    /// v_m(i) = cos(m pi (i + 1/2) / N), lambda_m = (4/h^2) sin^2(m pi / (2N)).
    /// Independent of the numeric eigensolver used by the propagators.
    fn closed_form_modes(n: usize, h: f64) -> Vec<(f64, Vec<f64>)> {
        use std::f64::consts::PI;
        (0..n)
            .map(|m| {
                let lambda = 4.0 / (h * h) * (m as f64 * PI / (2.0 * n as f64)).sin().powi(2);
                let raw: Vec<f64> = (0..n)
                    .map(|i| (m as f64 * PI * (i as f64 + 0.5) / n as f64).cos())
                    .collect();
                let norm = (h * raw.iter().map(|v| v * v).sum::<f64>()).sqrt();
                (lambda, raw.iter().map(|v| v / norm).collect())
            })
            .collect()
    }

    /// Exact background evolution after expanding g in the closed-form basis.
    fn closed_form_solution(
        grid: &Arc<Grid>,
        g: &GridFunction,
        t: f64,
    ) -> GridFunction {
        let n = grid.cells()[0];
        let h = grid.spacing(0);
        let modes = closed_form_modes(n, h);
        let mut out = vec![0.0; n];
        for (lambda, v) in &modes {
            let coeff: f64 = h * v.iter().zip(g.values()).map(|(a, b)| a * b).sum::<f64>();
            let w = (lambda.sqrt() * t).cos();
            for (o, vi) in out.iter_mut().zip(v) {
                *o += coeff * w * vi;
            }
        }
        GridFunction::new(grid.clone(), out).unwrap()
    }

    #[test]
    fn spectral_propagation_matches_neumann_cosine_series() {
        let grid = Grid::shared(&[1.0], &[101]).unwrap();
        let op = SymmetricOperator::background(grid.clone());
        let g = source_pulse(
            &op,
            &PulseSpec {
                sigma: 14.0,
                omega0: 0.0,
                source_cell: 0,
            },
        )
        .unwrap();
        let tau = 0.07;
        let snaps = propagate_spectral(&op, &g, 8, tau).unwrap();
        for k in [1usize, 4, 7] {
            let oracle = closed_form_solution(&grid, &g, k as f64 * tau);
            let err = relative_l2(snaps.get(k), &oracle).unwrap();
            assert!(err < 1e-8, "k={k}: rel err {err:.3e}");
        }
    }

    #[test]
    fn recorded_transfer_matches_cosine_series_and_pulse_energy() {
        let grid = Grid::shared(&[1.0], &[101]).unwrap();
        let op = SymmetricOperator::background(grid.clone());
        let g = source_pulse(
            &op,
            &PulseSpec {
                sigma: 14.0,
                omega0: 0.0,
                source_cell: 0,
            },
        )
        .unwrap();
        let tau = 0.07;
        let n_samples = 9;
        let snaps = propagate_spectral(&op, &g, n_samples, tau).unwrap();
        let series = record_transfer(&snaps, &g, 0, 0).unwrap();

        // F(0) is the pulse energy
        let energy = g.inner(&g).unwrap();
        assert!(energy > 0.0);
        assert!((series.sample(0) - energy).abs() < 1e-10 * energy);

        // full series against the closed-form solution
        for k in 0..n_samples {
            let oracle_field = closed_form_solution(&grid, &g, k as f64 * tau);
            let oracle = g.inner(&oracle_field).unwrap();
            assert!(
                (series.sample(k) - oracle).abs() < 1e-8 * energy,
                "k={k}"
            );
        }
    }
}
