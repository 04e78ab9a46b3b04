//! Scalar fields over a grid: level-set storage, set algebra, one-sided
//! derivatives, and multilinear interpolation.
//!
//! Values are stored row-major with the last dimension varying fastest;
//! the layout is fixed so file formats and oracle comparisons are
//! bit-reproducible. Sets are the zero sublevel sets of a field.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::Grid;

/// One scalar value per grid node.
#[derive(Debug, Clone)]
pub struct ValueField {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl ValueField {
    /// Sample `f` at every node, in parallel.
    pub fn from_fn<F>(grid: &Arc<Grid>, f: F) -> ValueField
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let dim = grid.dim();
        let last = dim - 1;
        let line = grid.counts()[last];
        let mut values = vec![0.0; grid.num_nodes()];
        values
            .par_chunks_mut(line)
            .enumerate()
            .for_each(|(line_idx, chunk)| {
                let mut x = vec![0.0; dim];
                grid.node_state(line_idx * line, &mut x);
                for (k, v) in chunk.iter_mut().enumerate() {
                    x[last] = grid.node_pos(last, k);
                    *v = f(&x);
                }
            });
        ValueField {
            grid: Arc::clone(grid),
            values,
        }
    }

    /// Wrap an existing value array; the length must match the grid and
    /// every entry must be finite.
    pub fn from_values(grid: &Arc<Grid>, values: Vec<f64>) -> Result<ValueField> {
        if values.len() != grid.num_nodes() {
            return Err(Error::DimensionMismatch {
                expected: grid.num_nodes(),
                got: values.len(),
            });
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteData);
        }
        Ok(ValueField {
            grid: Arc::clone(grid),
            values,
        })
    }

    pub fn constant(grid: &Arc<Grid>, value: f64) -> ValueField {
        ValueField {
            grid: Arc::clone(grid),
            values: vec![value; grid.num_nodes()],
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub(crate) fn from_parts(grid: Arc<Grid>, values: Vec<f64>) -> ValueField {
        debug_assert_eq!(values.len(), grid.num_nodes());
        ValueField { grid, values }
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    fn same_grid(&self, other: &ValueField) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Pointwise minimum: the union of the two zero sublevel sets.
    pub fn union(&self, other: &ValueField) -> Result<ValueField> {
        self.same_grid(other)?;
        Ok(self.zip_with(other, f64::min))
    }

    /// Pointwise maximum: the intersection of the two zero sublevel sets.
    pub fn intersection(&self, other: &ValueField) -> Result<ValueField> {
        self.same_grid(other)?;
        Ok(self.zip_with(other, f64::max))
    }

    /// Pointwise negation: the set complement (boundary shared).
    pub fn complement(&self) -> ValueField {
        ValueField {
            grid: Arc::clone(&self.grid),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    fn zip_with(&self, other: &ValueField, f: impl Fn(f64, f64) -> f64) -> ValueField {
        ValueField {
            grid: Arc::clone(&self.grid),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// First-order one-sided differences along `dim`:
    /// `left[k] = (V[k] − V[k−1])/h` and `right[k] = (V[k+1] − V[k])/h`.
    ///
    /// Periodic dims wrap their neighbors. At non-periodic boundaries the
    /// missing neighbor is supplied by linear extrapolation from the two
    /// nearest interior nodes (ghost `V[−1] = 2V[0] − V[1]`, symmetric at
    /// the top), so both derivatives exist everywhere and are exact on
    /// affine data.
    pub fn upwind_first_derivatives(&self, dim: usize) -> Result<(ValueField, ValueField)> {
        let dims = self.grid.dim();
        if dim >= dims {
            return Err(Error::InvalidDim { dim, dims });
        }
        let count = self.grid.counts()[dim];
        let stride = self.grid.stride(dim);
        let periodic = self.grid.is_periodic(dim);
        let inv_h = 1.0 / self.grid.spacings()[dim];
        let v = &self.values;

        let deriv = |left_side: bool| -> Vec<f64> {
            (0..v.len())
                .into_par_iter()
                .map(|i| {
                    let k = (i / stride) % count;
                    if left_side {
                        let prev = if k > 0 {
                            v[i - stride]
                        } else if periodic {
                            v[i + (count - 1) * stride]
                        } else {
                            // ghost: 2V[0] − V[1] ⇒ left = (V[1] − V[0])/h
                            2.0 * v[i] - v[i + stride]
                        };
                        (v[i] - prev) * inv_h
                    } else {
                        let next = if k + 1 < count {
                            v[i + stride]
                        } else if periodic {
                            v[i - (count - 1) * stride]
                        } else {
                            2.0 * v[i] - v[i - stride]
                        };
                        (next - v[i]) * inv_h
                    }
                })
                .collect()
        };

        let left = deriv(true);
        let right = deriv(false);
        Ok((
            ValueField::from_parts(Arc::clone(&self.grid), left),
            ValueField::from_parts(Arc::clone(&self.grid), right),
        ))
    }

    /// Central differences along `dim` (periodic wrap, one-sided at
    /// non-periodic boundaries). Used for costate evaluation.
    pub fn central_derivative(&self, dim: usize) -> Result<ValueField> {
        let dims = self.grid.dim();
        if dim >= dims {
            return Err(Error::InvalidDim { dim, dims });
        }
        let count = self.grid.counts()[dim];
        let stride = self.grid.stride(dim);
        let periodic = self.grid.is_periodic(dim);
        let inv_h = 1.0 / self.grid.spacings()[dim];
        let v = &self.values;
        let out: Vec<f64> = (0..v.len())
            .into_par_iter()
            .map(|i| {
                let k = (i / stride) % count;
                if periodic {
                    let prev = if k > 0 { v[i - stride] } else { v[i + (count - 1) * stride] };
                    let next = if k + 1 < count { v[i + stride] } else { v[i - (count - 1) * stride] };
                    0.5 * (next - prev) * inv_h
                } else if k == 0 {
                    (v[i + stride] - v[i]) * inv_h
                } else if k + 1 == count {
                    (v[i] - v[i - stride]) * inv_h
                } else {
                    0.5 * (v[i + stride] - v[i - stride]) * inv_h
                }
            })
            .collect();
        Ok(ValueField::from_parts(Arc::clone(&self.grid), out))
    }

    /// Multilinear interpolation at `x` over the 2^d enclosing nodes.
    ///
    /// Non-periodic dims require `mins[d] ≤ x[d] ≤ maxs[d]`; periodic dims
    /// accept any real and wrap, with the cell between the last node and
    /// the wrapped first node valid.
    pub fn interpolate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.grid.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.grid.dim(),
                got: x.len(),
            });
        }
        let mut cell = [0usize; MAX_INLINE_DIM];
        let mut frac = [0.0f64; MAX_INLINE_DIM];
        let dim = self.grid.dim();
        if dim <= MAX_INLINE_DIM {
            self.locate(x, &mut cell[..dim], &mut frac[..dim])?;
            Ok(self.gather(&cell[..dim], &frac[..dim]))
        } else {
            let mut cell = vec![0usize; dim];
            let mut frac = vec![0.0f64; dim];
            self.locate(x, &mut cell, &mut frac)?;
            Ok(self.gather(&cell, &frac))
        }
    }

    /// Interpolation without the domain check, for callers that have
    /// already verified `grid.contains(x)`.
    pub(crate) fn interpolate_unchecked(&self, x: &[f64], cell: &mut [usize], frac: &mut [f64]) -> f64 {
        self.locate(x, cell, frac)
            .expect("caller must pre-check domain");
        self.gather(cell, frac)
    }

    /// Resolve the enclosing cell and in-cell fraction per dim.
    fn locate(&self, x: &[f64], cell: &mut [usize], frac: &mut [f64]) -> Result<()> {
        let g = &self.grid;
        for d in 0..g.dim() {
            let count = g.counts()[d];
            let h = g.spacings()[d];
            if g.is_periodic(d) {
                let period = g.maxs()[d] - g.mins()[d];
                let mut w = (x[d] - g.mins()[d]).rem_euclid(period);
                if w >= period {
                    w = 0.0;
                }
                let mut u = w / h;
                // snap to nodes so stored values are reproduced exactly
                let r = u.round();
                if (u - r).abs() < 1e-9 {
                    u = r;
                }
                let mut c = u.floor() as usize;
                if c >= count {
                    c = 0;
                }
                cell[d] = c;
                frac[d] = (u - c as f64).clamp(0.0, 1.0);
            } else {
                let lo = g.mins()[d];
                let hi = g.maxs()[d];
                let slack = 1e-12 * (hi - lo).abs();
                if x[d] < lo - slack || x[d] > hi + slack {
                    return Err(Error::OutOfDomain {
                        dim: d,
                        value: x[d],
                        min: lo,
                        max: hi,
                    });
                }
                let mut u = (x[d].clamp(lo, hi) - lo) / h;
                let r = u.round();
                if (u - r).abs() < 1e-9 {
                    u = r;
                }
                let c = (u.floor() as usize).min(count - 2);
                cell[d] = c;
                frac[d] = (u - c as f64).clamp(0.0, 1.0);
            }
        }
        Ok(())
    }

    /// Weighted sum over the 2^d corners of the located cell.
    fn gather(&self, cell: &[usize], frac: &[f64]) -> f64 {
        let g = &self.grid;
        let dim = g.dim();
        let mut acc = 0.0;
        for corner in 0u32..(1u32 << dim) {
            let mut w = 1.0;
            let mut offset = 0usize;
            for d in 0..dim {
                let hi = (corner >> d) & 1 == 1;
                if hi {
                    w *= frac[d];
                    let next = if cell[d] + 1 >= g.counts()[d] {
                        0 // periodic wrap cell; non-periodic cells never exceed count−2
                    } else {
                        cell[d] + 1
                    };
                    offset += next * g.stride(d);
                } else {
                    w *= 1.0 - frac[d];
                    offset += cell[d] * g.stride(d);
                }
            }
            if w != 0.0 {
                acc += w * self.values[offset];
            }
        }
        acc
    }
}

const MAX_INLINE_DIM: usize = 8;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    fn grid_1d(min: f64, max: f64, n: usize, periodic: bool) -> Arc<Grid> {
        Arc::new(Grid::new(vec![min], vec![max], vec![n], vec![periodic]).unwrap())
    }

    #[test]
    fn set_algebra_examples() {
        let g = Arc::new(
            Grid::new(
                vec![-4.0, -4.0],
                vec![4.0, 4.0],
                vec![9, 9],
                vec![false, false],
            )
            .unwrap(),
        );
        let a = crate::shapes::shape_sphere(&g, &[-2.0, 0.0], 1.0).unwrap();
        let b = crate::shapes::shape_sphere(&g, &[2.0, 0.0], 1.0).unwrap();
        let uni = a.union(&b).unwrap();
        let int = a.intersection(&b).unwrap();
        let at = |f: &ValueField, x: &[f64]| f.interpolate(x).unwrap();
        assert!((at(&uni, &[2.0, 0.0]) - (-1.0)).abs() < 1e-12);
        assert!((at(&int, &[0.0, 0.0]) - 1.0).abs() < 1e-12);
        let c = crate::shapes::shape_sphere(&g, &[0.0, 0.0], 1.0).unwrap();
        assert!((at(&c.complement(), &[0.0, 0.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn union_membership_matches_or() {
        let g = Arc::new(
            Grid::new(
                vec![-4.0, -4.0],
                vec![4.0, 4.0],
                vec![17, 17],
                vec![false, false],
            )
            .unwrap(),
        );
        let a = crate::shapes::shape_sphere(&g, &[-1.5, 0.5], 1.2).unwrap();
        let b = crate::shapes::shape_rectangle(&g, &[0.0, -2.0], &[3.0, 1.0]).unwrap();
        let u = a.union(&b).unwrap();
        for i in 0..g.num_nodes() {
            let in_u = u.values()[i] <= 0.0;
            let in_either = a.values()[i] <= 0.0 || b.values()[i] <= 0.0;
            assert_eq!(in_u, in_either);
        }
    }

    #[test]
    fn upwind_on_linear_field() {
        let g = grid_1d(0.0, 2.0, 3, false);
        let f = ValueField::from_values(&g, vec![0.0, 1.0, 2.0]).unwrap();
        let (l, r) = f.upwind_first_derivatives(0).unwrap();
        for i in 0..3 {
            assert!((l.values()[i] - 1.0).abs() < 1e-12, "left at {i}");
            assert!((r.values()[i] - 1.0).abs() < 1e-12, "right at {i}");
        }
    }

    #[test]
    fn upwind_periodic_wraps() {
        let g = grid_1d(0.0, 4.0, 4, true);
        let f = ValueField::from_values(&g, vec![0.0, 1.0, 0.0, 1.0]).unwrap();
        let (l, r) = f.upwind_first_derivatives(0).unwrap();
        assert!((l.values()[0] - (-1.0)).abs() < 1e-12);
        assert!((r.values()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interpolate_reproduces_linears_and_nodes() {
        let g = grid_1d(0.0, 1.0, 5, false);
        let f = ValueField::from_fn(&g, |x| x[0]);
        assert!((f.interpolate(&[0.3]).unwrap() - 0.3).abs() < 1e-12);
        for k in 0..5 {
            let x = g.node_pos(0, k);
            assert_eq!(f.interpolate(&[x]).unwrap(), f.values()[k]);
        }
        assert!(matches!(
            f.interpolate(&[1.5]),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn interpolate_periodic_wrap_cell() {
        use std::f64::consts::PI;
        let g = grid_1d(-PI, PI, 4, true);
        let f = ValueField::from_values(&g, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        // midpoint of the wrap cell between node 3 (π/2) and node 0 (−π ≡ π)
        let x = PI - PI / 4.0;
        assert!((f.interpolate(&[x]).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn central_derivative_exact_on_affine() {
        let g = Arc::new(
            Grid::new(
                vec![0.0, -1.0],
                vec![1.0, 1.0],
                vec![6, 7],
                vec![false, false],
            )
            .unwrap(),
        );
        let f = ValueField::from_fn(&g, |x| 2.0 * x[0] - 3.0 * x[1] + 0.5);
        let dx = f.central_derivative(0).unwrap();
        let dy = f.central_derivative(1).unwrap();
        for i in 0..g.num_nodes() {
            assert!((dx.values()[i] - 2.0).abs() < 1e-10);
            assert!((dy.values()[i] + 3.0).abs() < 1e-10);
        }
    }

    #[test]
    fn from_values_validates() {
        let g = grid_1d(0.0, 1.0, 5, false);
        assert!(ValueField::from_values(&g, vec![0.0; 4]).is_err());
        assert!(ValueField::from_values(&g, vec![0.0, 1.0, f64::NAN, 0.0, 1.0]).is_err());
    }
}
