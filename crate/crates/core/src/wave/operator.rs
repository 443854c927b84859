//! The discrete wave operator: negative Laplacian with homogeneous Neumann
//! boundary conditions plus a pointwise potential.
//!
//! Second-order centered differences with a ghost-cell closure: the mirror
//! condition drops the boundary-crossing flux, so each interior edge
//! contributes `(u_i - u_j)/h^2` to both endpoints and the matrix stays
//! symmetric. Constants are in the null space of the background operator.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::wave::grid::{Grid, GridFunction};

#[derive(Debug, Clone)]
pub struct SymmetricOperator {
    grid: Arc<Grid>,
    potential: GridFunction,
}

impl SymmetricOperator {
    /// Assemble `A = -Laplacian + q` on the grid.
    pub fn assemble(grid: Arc<Grid>, potential: GridFunction) -> Result<Self> {
        if potential.grid().as_ref() != grid.as_ref() {
            return Err(Error::GridMismatch(
                "potential is defined on a different grid".into(),
            ));
        }
        Ok(SymmetricOperator { grid, potential })
    }

    /// The background operator `A_0` (zero potential).
    pub fn background(grid: Arc<Grid>) -> Self {
        let potential = GridFunction::zeros(grid.clone());
        SymmetricOperator { grid, potential }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn potential(&self) -> &GridFunction {
        &self.potential
    }

    pub fn is_background(&self) -> bool {
        self.potential.values().iter().all(|&v| v == 0.0)
    }

    /// `out = A u`.
    pub fn apply(&self, u: &[f64], out: &mut [f64]) {
        let q = self.potential.values();
        match self.grid.dimension() {
            1 => {
                let n = self.grid.cells()[0];
                let inv_h2 = 1.0 / (self.grid.spacing(0) * self.grid.spacing(0));
                for i in 0..n {
                    let mut acc = q[i] * u[i];
                    if i > 0 {
                        acc += (u[i] - u[i - 1]) * inv_h2;
                    }
                    if i + 1 < n {
                        acc += (u[i] - u[i + 1]) * inv_h2;
                    }
                    out[i] = acc;
                }
            }
            2 => {
                let nx = self.grid.cells()[0];
                let ny = self.grid.cells()[1];
                let inv_hx2 = 1.0 / (self.grid.spacing(0) * self.grid.spacing(0));
                let inv_hy2 = 1.0 / (self.grid.spacing(1) * self.grid.spacing(1));
                for iy in 0..ny {
                    let row = iy * nx;
                    for ix in 0..nx {
                        let idx = row + ix;
                        let c = u[idx];
                        let mut acc = q[idx] * c;
                        if ix > 0 {
                            acc += (c - u[idx - 1]) * inv_hx2;
                        }
                        if ix + 1 < nx {
                            acc += (c - u[idx + 1]) * inv_hx2;
                        }
                        if iy > 0 {
                            acc += (c - u[idx - nx]) * inv_hy2;
                        }
                        if iy + 1 < ny {
                            acc += (c - u[idx + nx]) * inv_hy2;
                        }
                        out[idx] = acc;
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn apply_field(&self, u: &GridFunction) -> Result<GridFunction> {
        if u.grid().as_ref() != self.grid.as_ref() {
            return Err(Error::GridMismatch(
                "operator applied to a field on a different grid".into(),
            ));
        }
        let mut out = vec![0.0; u.values().len()];
        self.apply(u.values(), &mut out);
        GridFunction::new(self.grid.clone(), out)
    }

    /// Dense matrix form, for spectral decompositions at desk scale.
    pub fn dense(&self) -> DMatrix<f64> {
        let n = self.grid.total_cells();
        let mut unit = vec![0.0; n];
        let mut col = vec![0.0; n];
        let mut mat = DMatrix::zeros(n, n);
        for j in 0..n {
            unit[j] = 1.0;
            self.apply(&unit, &mut col);
            unit[j] = 0.0;
            for i in 0..n {
                mat[(i, j)] = col[i];
            }
        }
        mat
    }

    /// Largest-eigenvalue estimate by power iteration with a deterministic
    /// start vector. Used for CFL checks and substep selection.
    pub fn lambda_max_estimate(&self, iterations: usize) -> f64 {
        let n = self.grid.total_cells();
        let mut v: Vec<f64> = (0..n).map(|i| ((i as f64 + 1.0) * 0.7071).sin()).collect();
        normalize(&mut v);
        let mut av = vec![0.0; n];
        let mut lambda = 0.0;
        for _ in 0..iterations {
            self.apply(&v, &mut av);
            lambda = v.iter().zip(&av).map(|(x, y)| x * y).sum::<f64>();
            let norm = av.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-300 {
                return 0.0;
            }
            for (x, y) in v.iter_mut().zip(&av) {
                *x = y / norm;
            }
        }
        lambda
    }
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}
