//! Brute-force oracles shared by the integration tests. None of them call the
//! synthesis code paths they are compared against.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use porous::affbasis::Lds;
use porous::affine1d::AffineSystem;
use porous::intlat::{hnf, IntMat, IntVec, LatticeCoset};
use porous::semilinear::{NLinearSet, RationalCone};

pub fn v(xs: &[i64]) -> IntVec {
    IntVec::from_i64(xs)
}

pub fn random_matrix(rng: &mut impl Rng, dim: usize, lo: i64, hi: i64) -> IntMat {
    let rows: Vec<Vec<i64>> = (0..dim)
        .map(|_| (0..dim).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMat::from_i64(&refs).unwrap()
}

pub fn random_lds(rng: &mut impl Rng, dim: usize, k: usize, lo: i64, hi: i64) -> Lds {
    let x0 = v(&(0..dim).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>());
    let ms = (0..k).map(|_| random_matrix(rng, dim, lo, hi)).collect();
    Lds::new(x0, ms).unwrap()
}

/// `x0 + Z-span{y − x0 : y in the orbit}`, grown level by level until one
/// BFS level adds nothing new to the lattice. One quiet level suffices: the
/// affine hull of level ≤ k is then mapped into itself by every matrix.
pub fn zhull_oracle(sys: &Lds, max_levels: usize) -> Option<LatticeCoset> {
    let x0 = sys.x0().clone();
    let mut seen: HashSet<IntVec> = HashSet::from([x0.clone()]);
    let mut frontier = vec![x0.clone()];
    let mut diffs: Vec<IntVec> = Vec::new();
    let mut lattice = hnf(sys.dim(), &diffs).unwrap();
    for _ in 0..max_levels {
        let mut next = Vec::new();
        for x in &frontier {
            for m in sys.matrices() {
                let y = m.apply(x).unwrap();
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        let new_diffs: Vec<IntVec> = next.iter().map(|y| y.sub(&x0)).collect();
        let grew = new_diffs.iter().any(|d| !lattice.contains(d).unwrap());
        if !grew {
            return Some(LatticeCoset::new(x0, lattice).unwrap());
        }
        diffs.extend(new_diffs);
        lattice = hnf(sys.dim(), &diffs).unwrap();
        diffs = lattice.basis().to_vec();
        frontier = next;
    }
    None
}

/// Residue-graph reachability of `y` using modulus `det(y)` and direct coset
/// membership of each residue.
pub fn ztarget_oracle(sys: &Lds, y: &LatticeCoset) -> bool {
    let m = y.lattice().volume();
    let start = sys.x0().mod_floor(&m);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        if y.contains(&r).unwrap() {
            return true;
        }
        for mat in sys.matrices() {
            let s = mat.apply(&r).unwrap().mod_floor(&m);
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    false
}

/// Distinct values of the orbit of `sys.start`, breadth first, at most `limit`.
pub fn orbit_prefix(sys: &AffineSystem, limit: usize) -> Vec<BigInt> {
    let mut seen = HashSet::from([sys.start.clone()]);
    let mut order = vec![sys.start.clone()];
    let mut i = 0;
    while i < order.len() && order.len() < limit {
        let x = order[i].clone();
        i += 1;
        for f in &sys.fns {
            let y = f.apply(&x);
            if order.len() < limit && seen.insert(y.clone()) {
                order.push(y);
            }
        }
    }
    order
}

fn solve_exact(mut a: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in 0..n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
                let sub = &f * &rhs[col];
                rhs[r] -= sub;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &a[i][i]).collect())
}

/// `x ∈ base + cone(generators)` by Carathéodory: try every subset of at
/// most `d` generators whose square system on some coordinates is regular.
pub fn cone_contains(cone: &RationalCone, x: &IntVec) -> bool {
    let d = x.dim();
    let target: Vec<BigRational> = x
        .sub(&cone.base)
        .0
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    if target.iter().all(Zero::is_zero) {
        return true;
    }
    let g = &cone.generators;
    let k = g.len();
    for mask in 1u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        if idx.len() > d {
            continue;
        }
        for rows in row_subsets(d, idx.len()) {
            let a: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|&r| idx.iter().map(|&j| g[j][r].clone()).collect())
                .collect();
            let rhs: Vec<BigRational> = rows.iter().map(|&r| target[r].clone()).collect();
            let Some(lambda) = solve_exact(a, rhs) else {
                continue;
            };
            if lambda.iter().any(Signed::is_negative) {
                continue;
            }
            let fits = (0..d).all(|r| {
                let s: BigRational = idx.iter().zip(&lambda).map(|(&j, l)| &g[j][r] * l).sum();
                s == target[r]
            });
            if fits {
                return true;
            }
        }
    }
    false
}

fn row_subsets(d: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << d))
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..d).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Members of `base + Σ p_i N` inside `[-w, w]^d`, by search from `base`
/// over the box widened by `2·d·B` (B the largest period entry). Steinitz
/// reordering keeps every partial sum of a representation within that margin.
pub fn nlinear_members(set: &NLinearSet, w: i64) -> BTreeSet<IntVec> {
    let d = set.base.dim();
    let b = set
        .periods
        .iter()
        .map(|p| p.max_abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let outer = BigInt::from(w) + BigInt::from(2 * d as i64) * b;
    let inside = |x: &IntVec, r: &BigInt| x.0.iter().all(|c| c.abs() <= *r);
    let mut seen = HashSet::new();
    let mut out = BTreeSet::new();
    let mut queue = VecDeque::new();
    if inside(&set.base, &outer) {
        seen.insert(set.base.clone());
        queue.push_back(set.base.clone());
    }
    let inner = BigInt::from(w);
    while let Some(x) = queue.pop_front() {
        if inside(&x, &inner) {
            out.insert(x.clone());
        }
        for p in &set.periods {
            let y = x.add(p);
            if inside(&y, &outer) && seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    out
}

pub fn box_points(d: usize, w: i64) -> Vec<IntVec> {
    let mut pts = vec![vec![]];
    for _ in 0..d {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-w..=w).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts.iter().map(|p| v(p)).collect()
}

pub fn random_cone(rng: &mut impl Rng) -> RationalCone {
    let d = rng.gen_range(1..=2);
    let k = rng.gen_range(1..=3);
    let base = v(&(0..d).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
    let gens = (0..k)
        .map(|_| {
            (0..d)
                .map(|_| {
                    BigRational::new(
                        BigInt::from(rng.gen_range(-4..=4)),
                        BigInt::from(rng.gen_range(1..=4)),
                    )
                })
                .collect()
        })
        .collect();
    RationalCone::new(base, gens).unwrap()
}

/// Full-dimensional coset whose residue modulus is at most `m_max`.
pub fn random_full_target(rng: &mut impl Rng, dim: usize, m_max: u64) -> LatticeCoset {
    loop {
        let gens: Vec<IntVec> = (0..dim)
            .map(|i| {
                let mut row = vec![0i64; dim];
                row[i] = rng.gen_range(1..=m_max as i64);
                for c in row.iter_mut().take(i) {
                    *c = rng.gen_range(0..=m_max as i64);
                }
                v(&row)
            })
            .collect();
        let base = v(&(0..dim).map(|_| rng.gen_range(-8..=8)).collect::<Vec<_>>());
        let y = LatticeCoset::from_generators(base, &gens).unwrap();
        let h = porous::ztarget::hybridize_target(&y, 1_000_000).unwrap();
        if h.m <= BigInt::from(m_max) {
            return y;
        }
    }
}

pub fn gcd_all(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
