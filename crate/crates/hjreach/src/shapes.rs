//! Implicit-surface constructors: fields whose zero sublevel set is the
//! requested shape, negative inside and positive outside.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::ValueField;
use crate::grid::Grid;

/// Signed distance to the closed ball: `‖x − center‖₂ − radius`.
pub fn shape_sphere(grid: &Arc<Grid>, center: &[f64], radius: f64) -> Result<ValueField> {
    if center.len() != grid.dim() {
        return Err(Error::DimensionMismatch {
            expected: grid.dim(),
            got: center.len(),
        });
    }
    if !(radius > 0.0) {
        return Err(Error::NonPositiveRadius(radius));
    }
    Ok(ValueField::from_fn(grid, |x| {
        let d2: f64 = x
            .iter()
            .zip(center)
            .map(|(&xi, &ci)| (xi - ci) * (xi - ci))
            .sum();
        d2.sqrt() - radius
    }))
}

/// Infinite cylinder: distance in the kept dims only, independent of the
/// ignored coordinates. `center` covers the kept dims in ascending order.
pub fn shape_cylinder(
    grid: &Arc<Grid>,
    ignore_dims: &[usize],
    center: &[f64],
    radius: f64,
) -> Result<ValueField> {
    let dim = grid.dim();
    for &d in ignore_dims {
        if d >= dim {
            return Err(Error::InvalidIgnoreDims(format!(
                "dim {d} out of range for a {dim}-dimensional grid"
            )));
        }
    }
    let mut seen = vec![false; dim];
    for &d in ignore_dims {
        if seen[d] {
            return Err(Error::InvalidIgnoreDims(format!("dim {d} listed twice")));
        }
        seen[d] = true;
    }
    let kept: Vec<usize> = (0..dim).filter(|d| !seen[*d]).collect();
    if kept.is_empty() {
        return Err(Error::InvalidIgnoreDims(
            "all dims ignored".to_string(),
        ));
    }
    if center.len() != kept.len() {
        return Err(Error::DimensionMismatch {
            expected: kept.len(),
            got: center.len(),
        });
    }
    if !(radius > 0.0) {
        return Err(Error::NonPositiveRadius(radius));
    }
    Ok(ValueField::from_fn(grid, |x| {
        let d2: f64 = kept
            .iter()
            .zip(center)
            .map(|(&d, &ci)| (x[d] - ci) * (x[d] - ci))
            .sum();
        d2.sqrt() - radius
    }))
}

/// Axis-aligned box via the max-of-faces formula
/// `max_i max(lower[i] − x[i], x[i] − upper[i])`: negative strictly
/// inside, zero on the boundary. Not a Euclidean distance, but shares
/// the zero level set and stays Lipschitz.
pub fn shape_rectangle(grid: &Arc<Grid>, lower: &[f64], upper: &[f64]) -> Result<ValueField> {
    let dim = grid.dim();
    if lower.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: lower.len(),
        });
    }
    if upper.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: upper.len(),
        });
    }
    for d in 0..dim {
        if !(lower[d] < upper[d]) {
            return Err(Error::EmptyBox {
                dim: d,
                lower: lower[d],
                upper: upper[d],
            });
        }
    }
    Ok(ValueField::from_fn(grid, |x| {
        x.iter()
            .enumerate()
            .map(|(d, &xi)| (lower[d] - xi).max(xi - upper[d]))
            .fold(f64::NEG_INFINITY, f64::max)
    }))
}
