//! Affinely independent reachable points spanning the affine hull of an orbit.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intlat::{check_dim, IntMat, IntVec};

/// Integer linear dynamical system `(x0, {M_1, …, M_k})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lds {
    x0: IntVec,
    matrices: Vec<IntMat>,
}

impl Lds {
    pub fn new(x0: IntVec, matrices: Vec<IntMat>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::EmptyFunctions);
        }
        for m in &matrices {
            check_dim(x0.dim(), m.dim())?;
        }
        Ok(Lds { x0, matrices })
    }

    pub fn x0(&self) -> &IntVec {
        &self.x0
    }

    pub fn matrices(&self) -> &[IntMat] {
        &self.matrices
    }

    pub fn dim(&self) -> usize {
        self.x0.dim()
    }

    pub fn is_deterministic(&self) -> bool {
        self.matrices.len() == 1
    }
}

/// Reachable points `x0, r_1, …` that are affinely independent and span the
/// affine hull of the orbit. The first point is always `x0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineBasis {
    pub points: Vec<IntVec>,
}

impl AffineBasis {
    /// Direction vectors `r_i − x0`.
    pub fn directions(&self) -> Vec<IntVec> {
        let x0 = &self.points[0];
        self.points[1..].iter().map(|r| r.sub(x0)).collect()
    }
}

/// Pruned breadth-first search: a child is kept (and later expanded) only
/// when it is affinely independent of the points found so far. Matrices are
/// tried in input order.
pub fn reachable_affine_basis(sys: &Lds) -> AffineBasis {
    let d = sys.dim();
    let mut points = vec![sys.x0.clone()];
    let mut queue = VecDeque::from([sys.x0.clone()]);
    while let Some(p) = queue.pop_front() {
        if points.len() == d + 1 {
            break;
        }
        for m in &sys.matrices {
            let child = m.apply_unchecked(&p);
            points.push(child.clone());
            if affinely_independent(&points) {
                queue.push_back(child);
                if points.len() == d + 1 {
                    break;
                }
            } else {
                points.pop();
            }
        }
    }
    AffineBasis { points }
}

/// Affine independence via the rank of the homogenized vectors `(1, p)`.
pub fn affinely_independent(points: &[IntVec]) -> bool {
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| std::iter::once(BigInt::one()).chain(p.0.iter().cloned()).collect())
        .collect();
    rank(rows) == points.len()
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let nrows = rows.len();
    let mut r = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let v = (&rows[r][col] * &rows[i][j] - &rows[i][col] * &rows[r][j]) / &prev;
                rows[i][j] = v;
            }
            rows[i][col] = BigInt::zero();
        }
        prev = rows[r][col].clone();
        r += 1;
    }
    r
}
