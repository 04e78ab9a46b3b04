//! Rectangular state-space grids with periodic-dimension support.
//!
//! Non-periodic dims place nodes on both endpoints: spacing is
//! `(max − min) / (count − 1)`. Periodic dims exclude the top endpoint
//! (the node after the last one is identified with the first):
//! spacing is `(max − min) / count`, so `count × spacing` spans the
//! whole period and wrap arithmetic stays exact.

use crate::error::{Error, Result};

/// Signed per-dimension node index. Periodic dims wrap modulo the node
/// count on normalization; non-periodic dims must be in range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex(pub Vec<i64>);

/// Rectangular discretization of the state space.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    mins: Vec<f64>,
    maxs: Vec<f64>,
    counts: Vec<usize>,
    periodic: Vec<bool>,
    spacings: Vec<f64>,
    strides: Vec<usize>,
    num_nodes: usize,
}

impl Grid {
    /// Build a grid from per-dimension extents, node counts, and
    /// periodicity flags. Each dim needs at least 3 nodes and a
    /// positive extent.
    pub fn new(
        mins: Vec<f64>,
        maxs: Vec<f64>,
        counts: Vec<usize>,
        periodic: Vec<bool>,
    ) -> Result<Grid> {
        let dim = mins.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        for got in [maxs.len(), counts.len(), periodic.len()] {
            if got != dim {
                return Err(Error::DimensionMismatch { expected: dim, got });
            }
        }
        let mut spacings = Vec::with_capacity(dim);
        for d in 0..dim {
            if !(maxs[d] > mins[d]) || !mins[d].is_finite() || !maxs[d].is_finite() {
                return Err(Error::DegenerateExtent {
                    dim: d,
                    min: mins[d],
                    max: maxs[d],
                });
            }
            if counts[d] < 3 {
                return Err(Error::TooFewNodes {
                    dim: d,
                    count: counts[d],
                });
            }
            let denom = if periodic[d] { counts[d] } else { counts[d] - 1 };
            spacings.push((maxs[d] - mins[d]) / denom as f64);
        }
        // Row-major, last dim fastest.
        let mut strides = vec![1usize; dim];
        let mut num_nodes = 1usize;
        for d in (0..dim).rev() {
            strides[d] = num_nodes;
            num_nodes = num_nodes
                .checked_mul(counts[d])
                .ok_or(Error::GridTooLarge)?;
        }
        // The flat index must also survive f64-free byte arithmetic (8 bytes/node).
        num_nodes.checked_mul(8).ok_or(Error::GridTooLarge)?;
        Ok(Grid {
            mins,
            maxs,
            counts,
            periodic,
            spacings,
            strides,
            num_nodes,
        })
    }

    pub fn dim(&self) -> usize {
        self.mins.len()
    }

    /// Total number of nodes (product of per-dim counts).
    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn mins(&self) -> &[f64] {
        &self.mins
    }

    pub fn maxs(&self) -> &[f64] {
        &self.maxs
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn periodic(&self) -> &[bool] {
        &self.periodic
    }

    pub fn spacings(&self) -> &[f64] {
        &self.spacings
    }

    pub fn is_periodic(&self, dim: usize) -> bool {
        self.periodic[dim]
    }

    /// Per-dim coordinate intervals covered by the grid.
    pub fn bounds(&self) -> Vec<(f64, f64)> {
        self.mins
            .iter()
            .zip(&self.maxs)
            .map(|(&lo, &hi)| (lo, hi))
            .collect()
    }

    /// Coordinate of node `k` along `dim`.
    #[inline]
    pub fn node_pos(&self, dim: usize, k: usize) -> f64 {
        self.mins[dim] + k as f64 * self.spacings[dim]
    }

    #[inline]
    pub(crate) fn stride(&self, dim: usize) -> usize {
        self.strides[dim]
    }

    /// Wrap a signed index into `0..counts` (periodic) or check range
    /// (non-periodic).
    pub fn normalize_index(&self, idx: &MultiIndex) -> Result<Vec<usize>> {
        if idx.0.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: idx.0.len(),
            });
        }
        let mut out = Vec::with_capacity(self.dim());
        for (d, &i) in idx.0.iter().enumerate() {
            let n = self.counts[d] as i64;
            if self.periodic[d] {
                out.push(i.rem_euclid(n) as usize);
            } else if (0..n).contains(&i) {
                out.push(i as usize);
            } else {
                return Err(Error::IndexOutOfRange {
                    dim: d,
                    index: i,
                    count: self.counts[d],
                });
            }
        }
        Ok(out)
    }

    /// State coordinates of the node addressed by `idx`.
    pub fn state_at(&self, idx: &MultiIndex) -> Result<Vec<f64>> {
        let norm = self.normalize_index(idx)?;
        Ok(norm
            .iter()
            .enumerate()
            .map(|(d, &k)| self.node_pos(d, k))
            .collect())
    }

    /// Flat (row-major, last dim fastest) index of an in-range multi-index.
    #[inline]
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dim());
        idx.iter()
            .zip(&self.strides)
            .map(|(&i, &s)| i * s)
            .sum()
    }

    /// Decompose a flat index into per-dim indices.
    #[inline]
    pub fn multi_index(&self, flat: usize, out: &mut [usize]) {
        debug_assert!(flat < self.num_nodes);
        let mut rem = flat;
        for d in 0..self.dim() {
            out[d] = rem / self.strides[d];
            rem %= self.strides[d];
        }
    }

    /// State coordinates of the node with the given flat index.
    #[inline]
    pub fn node_state(&self, flat: usize, out: &mut [f64]) {
        let mut rem = flat;
        for d in 0..self.dim() {
            let k = rem / self.strides[d];
            rem %= self.strides[d];
            out[d] = self.node_pos(d, k);
        }
    }

    /// Wrap periodic coordinates into `[min, min + period)`; non-periodic
    /// coordinates are left untouched.
    pub fn wrap_state(&self, x: &mut [f64]) {
        for d in 0..self.dim() {
            if self.periodic[d] {
                let period = self.maxs[d] - self.mins[d];
                let mut w = (x[d] - self.mins[d]).rem_euclid(period);
                if w >= period {
                    w = 0.0; // rem_euclid can round up to the period itself
                }
                x[d] = self.mins[d] + w;
            }
        }
    }

    /// True when every non-periodic coordinate lies within the grid extent.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter().enumerate().all(|(d, &v)| {
                self.periodic[d] || (v >= self.mins[d] && v <= self.maxs[d])
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_periodic_nodes_hit_both_endpoints() {
        let g = Grid::new(vec![0.0], vec![1.0], vec![5], vec![false]).unwrap();
        assert_eq!(g.spacings(), &[0.25]);
        let nodes: Vec<f64> = (0..5).map(|k| g.node_pos(0, k)).collect();
        assert_eq!(nodes, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn periodic_excludes_top_endpoint() {
        let g = Grid::new(
            vec![-std::f64::consts::PI],
            vec![std::f64::consts::PI],
            vec![4],
            vec![true],
        )
        .unwrap();
        assert!((g.spacings()[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let last = g.node_pos(0, 3);
        assert!((last - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn two_dim_counts_and_spacings() {
        let g = Grid::new(
            vec![0.0, 0.0],
            vec![1.0, 2.0],
            vec![3, 5],
            vec![false, false],
        )
        .unwrap();
        assert_eq!(g.spacings(), &[0.5, 0.5]);
        assert_eq!(g.num_nodes(), 15);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Grid::new(vec![0.0], vec![1.0], vec![2], vec![false]),
            Err(Error::TooFewNodes { .. })
        ));
        assert!(matches!(
            Grid::new(vec![1.0], vec![1.0], vec![5], vec![false]),
            Err(Error::DegenerateExtent { .. })
        ));
        assert!(matches!(
            Grid::new(vec![0.0, 0.0], vec![1.0], vec![5], vec![false]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn state_at_examples() {
        let g = Grid::new(vec![0.0], vec![1.0], vec![5], vec![false]).unwrap();
        assert_eq!(g.state_at(&MultiIndex(vec![2])).unwrap(), vec![0.5]);

        let gp = Grid::new(
            vec![-std::f64::consts::PI],
            vec![std::f64::consts::PI],
            vec![4],
            vec![true],
        )
        .unwrap();
        let x = gp.state_at(&MultiIndex(vec![3])).unwrap();
        assert!((x[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        // periodic wrap: index 7 ≡ 3, index −1 ≡ 3
        assert_eq!(
            gp.state_at(&MultiIndex(vec![7])).unwrap(),
            gp.state_at(&MultiIndex(vec![3])).unwrap()
        );
        assert_eq!(
            gp.state_at(&MultiIndex(vec![-1])).unwrap(),
            gp.state_at(&MultiIndex(vec![3])).unwrap()
        );

        let g2 = Grid::new(
            vec![0.0, 0.0],
            vec![1.0, 2.0],
            vec![3, 5],
            vec![false, false],
        )
        .unwrap();
        assert_eq!(
            g2.state_at(&MultiIndex(vec![1, 4])).unwrap(),
            vec![0.5, 2.0]
        );
        assert!(matches!(
            g2.state_at(&MultiIndex(vec![3, 0])),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn flat_index_round_trip() {
        let g = Grid::new(
            vec![0.0, 0.0, 0.0],
            vec![1.0, 1.0, 1.0],
            vec![3, 4, 5],
            vec![false, false, false],
        )
        .unwrap();
        let mut idx = [0usize; 3];
        for flat in 0..g.num_nodes() {
            g.multi_index(flat, &mut idx);
            assert_eq!(g.flat_index(&idx), flat);
        }
        // last dim fastest: advancing the last index moves by 1
        assert_eq!(g.flat_index(&[0, 0, 1]), 1);
        assert_eq!(g.flat_index(&[0, 1, 0]), 5);
        assert_eq!(g.flat_index(&[1, 0, 0]), 20);
    }

    #[test]
    fn wrap_state_stays_in_range() {
        let g = Grid::new(vec![-1.0], vec![1.0], vec![4], vec![true]).unwrap();
        let mut x = [3.5];
        g.wrap_state(&mut x);
        assert!(x[0] >= -1.0 && x[0] < 1.0);
        assert!((x[0] - (-0.5)).abs() < 1e-12);
    }
}
