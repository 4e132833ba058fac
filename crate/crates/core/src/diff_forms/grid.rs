//! Rectangular grids of rational sample points.

use crate::scalar::{q, qi, Q};

/// Evenly spaced rational values `lo, …, hi` (`count` of them; `lo` alone when `count = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub lo: Q,
    pub hi: Q,
    pub count: usize,
}

impl Axis {
    pub fn new(lo: Q, hi: Q, count: usize) -> Self {
        Axis { lo, hi, count }
    }

    pub fn values(&self) -> Vec<Q> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.lo.clone()],
            c => {
                let step = (&self.hi - &self.lo) / qi(c as i64 - 1);
                (0..c)
                    .map(|i| &self.lo + &step * qi(i as i64))
                    .collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub axes: Vec<Axis>,
}

impl Grid {
    /// 3 points per coordinate in `[-1, 1]`, or in `[1/2, 3/2]` for the coordinates in `poles`.
    pub fn default_for(dim: usize, poles: &[usize]) -> Self {
        let axes = (0..dim)
            .map(|j| {
                if poles.contains(&j) {
                    Axis::new(q(1, 2), q(3, 2), 3)
                } else {
                    Axis::new(qi(-1), qi(1), 3)
                }
            })
            .collect();
        Grid { axes }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cartesian product with the last coordinate varying fastest.
    pub fn points(&self) -> Vec<Vec<Q>> {
        let mut pts: Vec<Vec<Q>> = vec![Vec::new()];
        for axis in &self.axes {
            let vals = axis.values();
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |v| {
                        let mut p = p.clone();
                        p.push(v.clone());
                        p
                    })
                })
                .collect();
        }
        pts
    }
}
