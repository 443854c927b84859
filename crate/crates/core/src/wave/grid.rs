//! Uniform cell-centered grids and scalar fields on them.
//!
//! Fields are stored row-major with the x index fastest: in 2D the linear
//! index of cell `(ix, iy)` is `iy * nx + ix`. Cell centers are the
//! quadrature nodes and every cell carries the same volume, so the discrete
//! inner product is `cell_volume * dot(a, b)`.

use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    extents: Vec<f64>,
    cells: Vec<usize>,
}

impl Grid {
    /// Build a uniform grid over `[0, extent)` per axis. One or two axes.
    pub fn new(extents: &[f64], cells: &[usize]) -> Result<Self> {
        let mut issues = Vec::new();
        if extents.len() != cells.len() {
            issues.push(format!(
                "extents has {} axes but cells has {}",
                extents.len(),
                cells.len()
            ));
        }
        if extents.is_empty() || extents.len() > 2 {
            issues.push(format!(
                "grids must have 1 or 2 axes, got {}",
                extents.len()
            ));
        }
        for (axis, &e) in extents.iter().enumerate() {
            if !(e > 0.0) || !e.is_finite() {
                issues.push(format!("extent on axis {axis} must be positive, got {e}"));
            }
        }
        for (axis, &c) in cells.iter().enumerate() {
            if c < 2 {
                issues.push(format!("axis {axis} needs at least 2 cells, got {c}"));
            }
        }
        if issues.is_empty() {
            Ok(Grid {
                extents: extents.to_vec(),
                cells: cells.to_vec(),
            })
        } else {
            Err(Error::Config(issues))
        }
    }

    pub fn shared(extents: &[f64], cells: &[usize]) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::new(extents, cells)?))
    }

    pub fn dimension(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[f64] {
        &self.extents
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().product()
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.extents[axis] / self.cells[axis] as f64
    }

    /// Quadrature weight of one cell: the product of the axis spacings.
    pub fn cell_volume(&self) -> f64 {
        (0..self.dimension()).map(|a| self.spacing(a)).product()
    }

    pub fn linear_index(&self, multi: &[usize]) -> Result<usize> {
        if multi.len() != self.dimension() {
            return Err(Error::config(format!(
                "cell index has {} axes, grid has {}",
                multi.len(),
                self.dimension()
            )));
        }
        for (axis, &i) in multi.iter().enumerate() {
            if i >= self.cells[axis] {
                return Err(Error::config(format!(
                    "cell index {i} out of range on axis {axis} (cells {})",
                    self.cells[axis]
                )));
            }
        }
        Ok(match multi {
            [ix] => *ix,
            [ix, iy] => iy * self.cells[0] + ix,
            _ => unreachable!(),
        })
    }

    /// Center coordinate of cell `i` along `axis`.
    pub fn center(&self, axis: usize, i: usize) -> f64 {
        (i as f64 + 0.5) * self.spacing(axis)
    }

    /// Write the center coordinates of the cell with linear index `idx`.
    pub fn position_into(&self, idx: usize, out: &mut [f64]) {
        match self.dimension() {
            1 => out[0] = self.center(0, idx),
            2 => {
                let nx = self.cells[0];
                out[0] = self.center(0, idx % nx);
                out[1] = self.center(1, idx / nx);
            }
            _ => unreachable!(),
        }
    }

    pub fn position(&self, idx: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension()];
        self.position_into(idx, &mut out);
        out
    }

    pub fn contains_point(&self, point: &[f64]) -> bool {
        point.len() == self.dimension()
            && point
                .iter()
                .zip(&self.extents)
                .all(|(&p, &e)| p >= 0.0 && p <= e)
    }

    /// True when `self` refines `coarse` with an integer ratio per axis, so
    /// fields can be restricted by cell averaging.
    pub fn refines(&self, coarse: &Grid) -> bool {
        self.dimension() == coarse.dimension()
            && self.extents == coarse.extents
            && self
                .cells
                .iter()
                .zip(&coarse.cells)
                .all(|(&f, &c)| f >= c && f % c == 0)
    }
}

#[derive(Debug, Clone)]
pub struct GridFunction {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.total_cells() {
            return Err(Error::GridMismatch(format!(
                "field has {} values, grid has {} cells",
                values.len(),
                grid.total_cells()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Numerical(format!(
                "non-finite field value at cell {bad}"
            )));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn zeros(grid: Arc<Grid>) -> Self {
        let n = grid.total_cells();
        GridFunction {
            grid,
            values: vec![0.0; n],
        }
    }

    /// Evaluate `f` at every cell center.
    pub fn from_fn(grid: Arc<Grid>, f: impl Fn(&[f64]) -> f64) -> Self {
        let mut pos = vec![0.0; grid.dimension()];
        let values = (0..grid.total_cells())
            .map(|i| {
                grid.position_into(i, &mut pos);
                f(&pos)
            })
            .collect();
        GridFunction { grid, values }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Quadrature inner product `cell_volume * sum_i a_i b_i`.
    pub fn inner(&self, other: &GridFunction) -> Result<f64> {
        if self.grid.as_ref() != other.grid.as_ref() {
            return Err(Error::GridMismatch(
                "inner product of fields on different grids".into(),
            ));
        }
        Ok(weighted_dot(
            &self.values,
            &other.values,
            self.grid.cell_volume(),
        ))
    }

    pub fn norm(&self) -> f64 {
        weighted_dot(&self.values, &self.values, self.grid.cell_volume()).sqrt()
    }

    /// Restrict to a coarser grid by averaging the fine cells inside each
    /// coarse cell. The receiver's grid must refine `coarse`.
    pub fn restrict(&self, coarse: &Arc<Grid>) -> Result<GridFunction> {
        if !self.grid.refines(coarse) {
            return Err(Error::GridMismatch(
                "restriction target does not coarsen the field's grid".into(),
            ));
        }
        if self.grid.as_ref() == coarse.as_ref() {
            return Ok(GridFunction {
                grid: coarse.clone(),
                values: self.values.clone(),
            });
        }
        let mut out = vec![0.0; coarse.total_cells()];
        match self.grid.dimension() {
            1 => {
                let r = self.grid.cells()[0] / coarse.cells()[0];
                for (ic, o) in out.iter_mut().enumerate() {
                    let mut acc = 0.0;
                    for k in 0..r {
                        acc += self.values[ic * r + k];
                    }
                    *o = acc / r as f64;
                }
            }
            2 => {
                let rx = self.grid.cells()[0] / coarse.cells()[0];
                let ry = self.grid.cells()[1] / coarse.cells()[1];
                let nx_fine = self.grid.cells()[0];
                let nx = coarse.cells()[0];
                let inv = 1.0 / (rx * ry) as f64;
                for iy in 0..coarse.cells()[1] {
                    for ix in 0..nx {
                        let mut acc = 0.0;
                        for ky in 0..ry {
                            let row = (iy * ry + ky) * nx_fine + ix * rx;
                            for kx in 0..rx {
                                acc += self.values[row + kx];
                            }
                        }
                        out[iy * nx + ix] = acc * inv;
                    }
                }
            }
            _ => unreachable!(),
        }
        Ok(GridFunction {
            grid: coarse.clone(),
            values: out,
        })
    }
}

pub(crate) fn weighted_dot(a: &[f64], b: &[f64], volume: f64) -> f64 {
    volume * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>()
}

/// `||a - b|| / ||b||` in the quadrature norm; `||a||/0` reported as infinity.
pub fn relative_l2(a: &GridFunction, b: &GridFunction) -> Result<f64> {
    if a.grid().as_ref() != b.grid().as_ref() {
        return Err(Error::GridMismatch(
            "relative error of fields on different grids".into(),
        ));
    }
    let vol = a.grid().cell_volume();
    let diff: f64 = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    let denom: f64 = b.values().iter().map(|y| y * y).sum();
    if denom == 0.0 {
        return Ok(if diff == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok((vol * diff).sqrt() / (vol * denom).sqrt())
}
