//! Spectral propagation: exact matrix functions of the discrete operator.
//!
//! Two decompositions are provided. [`SpectralPropagator`] eigendecomposes
//! the full (potentially perturbed) operator densely and is the oracle for
//! everything else; it is meant for desk-scale problems. [`AxisBasis`] holds
//! the per-axis eigenpairs of the background operator, whose tensor-product
//! structure makes functions of `A_0` cheap on large 2D grids; it backs the
//! source-pulse construction.
//!
//! Eigenvalues of the Neumann operator include an exact zero that round-off
//! perturbs; values in `[-tol, 0)` with `tol = 1e-10 * lambda_max` are
//! clipped to zero so square roots stay real, and anything below `-tol` is
//! reported as a discretization error.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::wave::grid::{Grid, GridFunction};
use crate::wave::operator::SymmetricOperator;
use crate::wave::snapshots::SnapshotSet;
use crate::wave::transfer::TransferSeries;

const NEGATIVE_EIGENVALUE_REL_TOL: f64 = 1e-10;

fn clip_spectrum(values: &mut [f64]) -> Result<()> {
    let lambda_max = values.iter().cloned().fold(0.0_f64, f64::max);
    let tol = NEGATIVE_EIGENVALUE_REL_TOL * lambda_max.max(1.0);
    for v in values.iter_mut() {
        if *v < -tol {
            return Err(Error::Eigen(format!(
                "eigenvalue {v:.6e} below -{tol:.1e}; operator is not positive semidefinite"
            )));
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    Ok(())
}

/// `cos(sqrt(lambda) t)`.
fn cosine_weight(lambda: f64, t: f64) -> f64 {
    (lambda.sqrt() * t).cos()
}

/// `sin(sqrt(lambda) t) / sqrt(lambda)`, continued by `t` at `lambda = 0`.
fn sine_weight(lambda: f64, t: f64) -> f64 {
    if lambda == 0.0 {
        t
    } else {
        let w = lambda.sqrt();
        (w * t).sin() / w
    }
}

// --- Full-operator decomposition ------------------------------------------

/// Dense eigendecomposition `A = Q L Q^T` of a [`SymmetricOperator`].
pub struct SpectralPropagator {
    grid: Arc<Grid>,
    vectors: DMatrix<f64>,
    values: Vec<f64>,
}

impl SpectralPropagator {
    pub fn new(op: &SymmetricOperator) -> Result<Self> {
        let dense = op.dense();
        let eig = SymmetricEigen::try_new(dense, 1e-13, 0)
            .ok_or_else(|| Error::Eigen("symmetric eigensolver did not converge".into()))?;
        let mut values: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
        clip_spectrum(&mut values)?;
        Ok(SpectralPropagator {
            grid: op.grid().clone(),
            vectors: eig.eigenvectors,
            values,
        })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    fn coefficients(&self, g: &GridFunction) -> Result<DVector<f64>> {
        if g.grid().as_ref() != self.grid.as_ref() {
            return Err(Error::GridMismatch(
                "field lives on a different grid than the propagator".into(),
            ));
        }
        let v = DVector::from_column_slice(g.values());
        Ok(self.vectors.transpose() * v)
    }

    fn synth(&self, coeffs: &DVector<f64>) -> GridFunction {
        let v = &self.vectors * coeffs;
        GridFunction::new(self.grid.clone(), v.data.into())
            .expect("spectral synthesis produced a malformed field")
    }

    /// Apply `f(A)` to a field through the eigenbasis.
    pub fn apply_function(
        &self,
        f: impl Fn(f64) -> f64,
        g: &GridFunction,
    ) -> Result<GridFunction> {
        let mut coeffs = self.coefficients(g)?;
        for (c, &lambda) in coeffs.iter_mut().zip(&self.values) {
            *c *= f(lambda);
        }
        Ok(self.synth(&coeffs))
    }

    fn weighted_snapshots(
        &self,
        g: &GridFunction,
        n_samples: usize,
        tau: f64,
        weight: impl Fn(f64, f64) -> f64,
    ) -> Result<SnapshotSet> {
        let base = self.coefficients(g)?;
        let mut snaps = Vec::with_capacity(n_samples);
        for k in 0..n_samples {
            let t = k as f64 * tau;
            let mut c = base.clone();
            for (ci, &lambda) in c.iter_mut().zip(&self.values) {
                *ci *= weight(lambda, t);
            }
            snaps.push(self.synth(&c));
        }
        SnapshotSet::new(self.grid.clone(), tau, snaps)
    }

    /// Snapshots of `u(t) = cos(sqrt(A) t) g`: the wave solution with initial
    /// displacement `g` and zero initial velocity.
    pub fn cosine_snapshots(
        &self,
        g: &GridFunction,
        n_samples: usize,
        tau: f64,
    ) -> Result<SnapshotSet> {
        self.weighted_snapshots(g, n_samples, tau, cosine_weight)
    }

    /// Snapshots of `s(t) = sin(sqrt(A) t) / sqrt(A) g`: the wave solution
    /// with zero initial displacement and initial velocity `g`. This is the
    /// convolution kernel of the linearized data equation.
    pub fn sine_snapshots(
        &self,
        g: &GridFunction,
        n_samples: usize,
        tau: f64,
    ) -> Result<SnapshotSet> {
        self.weighted_snapshots(g, n_samples, tau, sine_weight)
    }

    /// Transfer samples `F(k tau) = <receiver, cos(sqrt(A) k tau) source>`
    /// computed in the eigenbasis without materializing snapshots.
    pub fn transfer_series(
        &self,
        source_pulse: &GridFunction,
        receiver_pulse: &GridFunction,
        n_samples: usize,
        tau: f64,
        source: usize,
        receiver: usize,
    ) -> Result<TransferSeries> {
        let a = self.coefficients(source_pulse)?;
        let b = self.coefficients(receiver_pulse)?;
        let vol = self.grid.cell_volume();
        let samples = (0..n_samples)
            .map(|k| {
                let t = k as f64 * tau;
                let mut acc = 0.0;
                for ((&ai, &bi), &lambda) in a.iter().zip(b.iter()).zip(&self.values) {
                    acc += ai * bi * cosine_weight(lambda, t);
                }
                vol * acc
            })
            .collect();
        Ok(TransferSeries::new(source, receiver, tau, samples))
    }
}

/// Exact snapshots `u_k = cos(sqrt(A) k tau) g` via dense eigendecomposition.
pub fn propagate_spectral(
    op: &SymmetricOperator,
    g: &GridFunction,
    n_samples: usize,
    tau: f64,
) -> Result<SnapshotSet> {
    SpectralPropagator::new(op)?.cosine_snapshots(g, n_samples, tau)
}

// --- Separable background decomposition -----------------------------------

struct Axis {
    vectors: DMatrix<f64>,
    values: Vec<f64>,
}

fn axis_eigenpairs(extent: f64, cells: usize) -> Result<Axis> {
    let grid = Grid::shared(&[extent], &[cells])?;
    let op = SymmetricOperator::background(grid);
    let eig = SymmetricEigen::try_new(op.dense(), 1e-13, 0)
        .ok_or_else(|| Error::Eigen("axis eigensolver did not converge".into()))?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    clip_spectrum(&mut values)?;
    Ok(Axis {
        vectors: eig.eigenvectors,
        values,
    })
}

/// Per-axis eigendecomposition of the background operator. Because the
/// Neumann Laplacian on a tensor grid is the Kronecker sum of its axis
/// parts, `f(A_0)` acts by transforming along each axis and scaling mode
/// `(mx, my)` by `f(lambda_x[mx] + lambda_y[my])`.
pub struct AxisBasis {
    grid: Arc<Grid>,
    axes: Vec<Axis>,
}

impl AxisBasis {
    pub fn new(grid: &Arc<Grid>) -> Result<Self> {
        let axes = (0..grid.dimension())
            .map(|a| axis_eigenpairs(grid.extents()[a], grid.cells()[a]))
            .collect::<Result<Vec<_>>>()?;
        Ok(AxisBasis {
            grid: grid.clone(),
            axes,
        })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    /// Apply `f(A_0)` to a field.
    pub fn apply_function(
        &self,
        f: impl Fn(f64) -> f64,
        g: &GridFunction,
    ) -> Result<GridFunction> {
        if g.grid().as_ref() != self.grid.as_ref() {
            return Err(Error::GridMismatch(
                "field lives on a different grid than the basis".into(),
            ));
        }
        let values = match self.axes.len() {
            1 => {
                let ax = &self.axes[0];
                let v = DVector::from_column_slice(g.values());
                let mut c = ax.vectors.transpose() * v;
                for (ci, &lambda) in c.iter_mut().zip(&ax.values) {
                    *ci *= f(lambda);
                }
                let out = &ax.vectors * c;
                out.data.into()
            }
            2 => {
                let ax = &self.axes[0];
                let ay = &self.axes[1];
                let nx = self.grid.cells()[0];
                let ny = self.grid.cells()[1];
                // row index = iy, column index = ix matches the row-major layout
                let field = DMatrix::from_row_slice(ny, nx, g.values());
                let mut coeff = ay.vectors.transpose() * field * &ax.vectors;
                for my in 0..ny {
                    for mx in 0..nx {
                        coeff[(my, mx)] *= f(ay.values[my] + ax.values[mx]);
                    }
                }
                let out = &ay.vectors * coeff * ax.vectors.transpose();
                let mut flat = vec![0.0; nx * ny];
                for iy in 0..ny {
                    for ix in 0..nx {
                        flat[iy * nx + ix] = out[(iy, ix)];
                    }
                }
                flat
            }
            _ => unreachable!(),
        };
        GridFunction::new(self.grid.clone(), values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta(grid: &Arc<Grid>, cell: usize) -> GridFunction {
        let mut v = vec![0.0; grid.total_cells()];
        v[cell] = 1.0 / grid.cell_volume();
        GridFunction::new(grid.clone(), v).unwrap()
    }

    #[test]
    fn snapshot_zero_is_the_initial_state() {
        let grid = Grid::shared(&[1.0], &[31]).unwrap();
        let op = SymmetricOperator::background(grid.clone());
        let g = delta(&grid, 15);
        let snaps = propagate_spectral(&op, &g, 3, 0.05).unwrap();
        for (a, b) in snaps.get(0).values().iter().zip(g.values()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn time_reversal_symmetry() {
        let grid = Grid::shared(&[1.0], &[25]).unwrap();
        let q = GridFunction::from_fn(grid.clone(), |p| 40.0 * (1.0 + (4.0 * p[0]).sin()));
        let op = SymmetricOperator::assemble(grid.clone(), q).unwrap();
        let g = delta(&grid, 3);
        let fwd = propagate_spectral(&op, &g, 6, 0.03).unwrap();
        let bwd = propagate_spectral(&op, &g, 6, -0.03).unwrap();
        for k in 0..6 {
            for (a, b) in fwd.get(k).values().iter().zip(bwd.get(k).values()) {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn axis_basis_matches_dense_functions_of_background() {
        let grid = Grid::shared(&[1.0, 0.7], &[6, 5]).unwrap();
        let op = SymmetricOperator::background(grid.clone());
        let dense = SpectralPropagator::new(&op).unwrap();
        let basis = AxisBasis::new(&grid).unwrap();
        let g = GridFunction::from_fn(grid.clone(), |p| (3.0 * p[0]).sin() + p[1] * p[1]);
        let f = |lambda: f64| (-lambda * 0.01).exp();
        let a = dense.apply_function(f, &g).unwrap();
        let b = basis.apply_function(f, &g).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
    }

    #[test]
    fn sine_weight_continuous_at_zero() {
        assert_eq!(sine_weight(0.0, 2.5), 2.5);
        let t = 2.5;
        let lam = 1e-18;
        assert!((sine_weight(lam, t) - t).abs() < 1e-9);
    }

    #[test]
    fn reciprocity_of_transfer_matrix() {
        let grid = Grid::shared(&[1.0], &[41]).unwrap();
        let q = GridFunction::from_fn(grid.clone(), |p| 30.0 * (-((p[0] - 0.6) / 0.1).powi(2)).exp());
        let op = SymmetricOperator::assemble(grid.clone(), q).unwrap();
        let prop = SpectralPropagator::new(&op).unwrap();
        let gi = delta(&grid, 2);
        let gj = delta(&grid, 38);
        let fij = prop.transfer_series(&gi, &gj, 9, 0.04, 0, 1).unwrap();
        let fji = prop.transfer_series(&gj, &gi, 9, 0.04, 1, 0).unwrap();
        let scale = fij.samples()[0].abs().max(fji.samples()[0].abs()).max(1.0);
        for k in 0..9 {
            assert!((fij.sample(k) - fji.sample(k)).abs() <= 1e-12 * scale);
        }
    }
}
