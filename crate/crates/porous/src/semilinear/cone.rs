//! Integral points of a rational cone `{x + Σ p_i R₊}` as an N-linear set.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlat::IntVec;

/// Largest number of generators accepted by [`integral_points`].
pub const MAX_GENERATORS: usize = 6;
/// Default cap on the number of integer points in the zonotope bounding box.
pub const DEFAULT_ZONOTOPE_CAP: u64 = 4_000_000;

/// `{base + Σ g_i R₊}` with rational generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCone {
    pub base: IntVec,
    pub generators: Vec<Vec<BigRational>>,
}

/// `{base + Σ p_i N}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NLinearSet {
    pub base: IntVec,
    pub periods: Vec<IntVec>,
}

impl RationalCone {
    pub fn new(base: IntVec, generators: Vec<Vec<BigRational>>) -> Result<Self> {
        for g in &generators {
            crate::intlat::check_dim(base.dim(), g.len())?;
        }
        Ok(RationalCone { base, generators })
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

/// Build the N-linear set of all integer points of `cone`.
///
/// With `k` the lcm of all denominators, the periods are the nonzero integer
/// points of the zonotope `{Σ λ_i·k·p_i : λ_i ∈ [0,1]}`.
pub fn integral_points(cone: &RationalCone, cap: u64) -> Result<NLinearSet> {
    if cone.generators.len() > MAX_GENERATORS {
        return Err(Error::ResourceCap {
            what: "cone generators",
            needed: cone.generators.len().to_string(),
            limit: MAX_GENERATORS as u64,
        });
    }
    let dim = cone.dim();
    let k = cone
        .generators
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: Vec<Vec<BigInt>> = cone
        .generators
        .iter()
        .map(|g| g.iter().map(|q| (q * &k).to_integer()).collect())
        .filter(|g: &Vec<BigInt>| g.iter().any(|x| !x.is_zero()))
        .collect();

    // Bounding box of the zonotope.
    let mut lo = vec![BigInt::zero(); dim];
    let mut hi = vec![BigInt::zero(); dim];
    for g in &scaled {
        for c in 0..dim {
            if g[c].is_negative() {
                lo[c] += &g[c];
            } else {
                hi[c] += &g[c];
            }
        }
    }
    let volume: BigInt = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| h - l + 1)
        .product();
    if volume > BigInt::from(cap) {
        return Err(Error::ResourceCap {
            what: "zonotope bounding box",
            needed: volume.to_string(),
            limit: cap,
        });
    }

    let zono = Zonotope::new(&scaled, dim);
    let mut periods = Vec::new();
    let mut point = lo.clone();
    let total = volume.to_u64().unwrap_or(0);
    for _ in 0..total {
        if point.iter().any(|x| !x.is_zero()) && zono.contains(&point) {
            periods.push(IntVec(point.clone()));
        }
        // odometer step
        for c in 0..dim {
            if point[c] < hi[c] {
                point[c] += 1;
                break;
            }
            point[c] = lo[c].clone();
        }
    }
    Ok(NLinearSet {
        base: cone.base.clone(),
        periods,
    })
}

/// Membership in `{Σ λ_i g_i : 0 <= λ_i <= 1}`.
///
/// The equality system `G λ = t` is brought to reduced row echelon form once;
/// each query then only runs Fourier–Motzkin on the free variables.
struct Zonotope {
    /// `transform · G = rref`
    transform: Vec<Vec<BigRational>>,
    rref: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    rank: usize,
}

impl Zonotope {
    fn new(gens: &[Vec<BigInt>], dim: usize) -> Self {
        let n = gens.len();
        let mut rows: Vec<Vec<BigRational>> = (0..dim)
            .map(|r| gens.iter().map(|g| BigRational::from(g[r].clone())).collect())
            .collect();
        let mut transform: Vec<Vec<BigRational>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..dim).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            transform.swap(r, p);
            let inv = rows[r][col].recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            for x in transform[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..dim {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for j in 0..n {
                        let d = &f * &rows[r][j];
                        rows[i][j] -= d;
                    }
                    for j in 0..dim {
                        let d = &f * &transform[r][j];
                        transform[i][j] -= d;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let free = (0..n).filter(|c| !pivots.contains(c)).collect();
        Zonotope {
            transform,
            rref: rows,
            pivots,
            free,
            rank: r,
        }
    }

    fn contains(&self, t: &[BigInt]) -> bool {
        let c: Vec<BigRational> = self
            .transform
            .iter()
            .map(|row| {
                row.iter()
                    .zip(t)
                    .map(|(a, b)| a * BigRational::from(b.clone()))
                    .sum()
            })
            .collect();
        if c[self.rank..].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let nf = self.free.len();
        // Inequalities over the free variables: coeffs · μ <= rhs.
        let mut cons: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        for (i, _) in self.pivots.iter().enumerate() {
            // λ_p = c_i − Σ rref[i][f] μ_f, and 0 <= λ_p <= 1.
            let coeffs: Vec<BigRational> = self.free.iter().map(|&f| self.rref[i][f].clone()).collect();
            cons.push((coeffs.clone(), c[i].clone()));
            cons.push((
                coeffs.iter().map(|x| -x).collect(),
                BigRational::one() - &c[i],
            ));
        }
        for j in 0..nf {
            let mut e = vec![BigRational::zero(); nf];
            e[j] = BigRational::one();
            cons.push((e.clone(), BigRational::one()));
            e[j] = -BigRational::one();
            cons.push((e, BigRational::zero()));
        }
        fourier_motzkin_feasible(cons, nf)
    }
}

/// Feasibility of `{μ ∈ Q^n : a_j · μ <= b_j}` by Fourier–Motzkin elimination.
pub(crate) fn fourier_motzkin_feasible(
    mut cons: Vec<(Vec<BigRational>, BigRational)>,
    n: usize,
) -> bool {
    for var in (0..n).rev() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (a, b) in cons {
            if a[var].is_positive() {
                pos.push((a, b));
            } else if a[var].is_negative() {
                neg.push((a, b));
            } else {
                rest.push((a, b));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let sp = ap[var].recip();
                let sn = -an[var].recip();
                let a: Vec<BigRational> = ap
                    .iter()
                    .zip(an)
                    .map(|(x, y)| x * &sp + y * &sn)
                    .collect();
                rest.push((a, bp * &sp + bn * &sn));
            }
        }
        rest.sort();
        rest.dedup();
        cons = rest;
    }
    cons.iter().all(|(_, b)| !b.is_negative())
}
