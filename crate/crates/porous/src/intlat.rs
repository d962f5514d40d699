//! Exact integer vectors, matrices and lattices.
//!
//! A [`Lattice`] is always stored in column-style Hermite normal form: the basis
//! vectors are the columns of a lower-triangular matrix whose pivots (first
//! nonzero entry of each column) are positive and strictly dominate the
//! entries to their left in the same row. This makes the representation
//! unique, so two lattices are equal iff their bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec(pub Vec<BigInt>);

impl IntVec {
    pub fn zeros(dim: usize) -> Self {
        IntVec(vec![BigInt::zero(); dim])
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        IntVec(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// The `i`-th standard basis vector scaled by `m`.
    pub fn unit(dim: usize, i: usize, m: &BigInt) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = m.clone();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub_scaled_assign(&mut self, q: &BigInt, other: &IntVec) {
        if q.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a -= q * b;
        }
    }

    fn negate(&mut self) {
        for a in &mut self.0 {
            *a = -&*a;
        }
    }

    /// Componentwise reduction into `[0, m)`.
    pub fn mod_floor(&self, m: &BigInt) -> IntVec {
        IntVec(self.0.iter().map(|a| a.mod_floor(m)).collect())
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|a| a.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Square integer matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: Vec<Vec<BigInt>>,
}

impl IntMat {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        Ok(IntMat { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        IntMat { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn apply(&self, v: &IntVec) -> Result<IntVec> {
        check_dim(self.dim(), v.dim())?;
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &IntVec) -> IntVec {
        IntVec(
            self.rows
                .iter()
                .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", IntVec(r.clone()))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Integer lattice in canonical Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<IntVec>,
    pivots: Vec<usize>,
}

impl Lattice {
    /// The trivial lattice `{0}`.
    pub fn trivial(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// `Z^dim`.
    pub fn full(dim: usize) -> Self {
        let basis = (0..dim).map(|i| IntVec::unit(dim, i, &BigInt::one())).collect();
        Lattice {
            dim,
            basis,
            pivots: (0..dim).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// Row index of the leading entry of each basis vector.
    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    /// Product of the pivot entries: the volume of the fundamental
    /// parallelepiped measured inside the pivot coordinates.
    pub fn volume(&self) -> BigInt {
        self.basis
            .iter()
            .zip(&self.pivots)
            .map(|(b, &p)| b.0[p].clone())
            .product()
    }

    pub fn contains(&self, v: &IntVec) -> Result<bool> {
        check_dim(self.dim, v.dim())?;
        Ok(self.contains_unchecked(v))
    }

    /// Triangular back-substitution against the HNF basis.
    pub(crate) fn contains_unchecked(&self, v: &IntVec) -> bool {
        let mut r = v.clone();
        let mut row = 0;
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r.0[row..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, rem) = r.0[p].div_rem(&b.0[p]);
            if !rem.is_zero() {
                return false;
            }
            r.sub_scaled_assign(&q, b);
            row = p + 1;
        }
        r.0[row..].iter().all(Zero::is_zero)
    }

    /// Lattice generated by `self` together with `extra`.
    pub fn join(&self, extra: &[IntVec]) -> Result<Lattice> {
        let mut gens = self.basis.clone();
        gens.extend_from_slice(extra);
        hnf(self.dim, &gens)
    }

    /// Reduce `v` modulo the lattice to its canonical representative.
    pub(crate) fn reduce(&self, v: &IntVec) -> IntVec {
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let q = r.0[p].div_floor(&b.0[p]);
            r.sub_scaled_assign(&q, b);
        }
        r
    }
}

/// Hermite normal form of the lattice generated by `vectors`.
///
/// Uses only unimodular column operations (swap, negate, add an integer
/// multiple of another column).
pub fn hnf(dim: usize, vectors: &[IntVec]) -> Result<Lattice> {
    for v in vectors {
        check_dim(dim, v.dim())?;
    }
    let mut pool: Vec<IntVec> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    let mut basis = Vec::new();
    let mut pivots = Vec::new();

    for row in 0..dim {
        loop {
            let active: Vec<usize> = (0..pool.len())
                .filter(|&i| !pool[i].0[row].is_zero())
                .collect();
            match active.len() {
                0 => break,
                1 => {
                    let mut v = pool.swap_remove(active[0]);
                    if v.0[row].is_negative() {
                        v.negate();
                    }
                    basis.push(v);
                    pivots.push(row);
                    break;
                }
                _ => {
                    let &min = active
                        .iter()
                        .min_by(|&&a, &&b| pool[a].0[row].abs().cmp(&pool[b].0[row].abs()))
                        .expect("nonempty");
                    let pivot = pool[min].clone();
                    for &i in &active {
                        if i != min {
                            let q = &pool[i].0[row] / &pivot.0[row];
                            pool[i].sub_scaled_assign(&q, &pivot);
                        }
                    }
                    pool.retain(|v| !v.is_zero());
                }
            }
        }
    }

    for j in 0..basis.len() {
        let p = pivots[j];
        let (left, right) = basis.split_at_mut(j);
        let col = &right[0];
        for b in left.iter_mut() {
            let q = b.0[p].div_floor(&col.0[p]);
            b.sub_scaled_assign(&q, col);
        }
    }

    Ok(Lattice { dim, basis, pivots })
}

/// A Z-linear set `{base + lattice}` with the base reduced modulo the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeCoset {
    base: IntVec,
    lattice: Lattice,
}

impl LatticeCoset {
    pub fn new(base: IntVec, lattice: Lattice) -> Result<Self> {
        check_dim(lattice.dim(), base.dim())?;
        let base = lattice.reduce(&base);
        Ok(LatticeCoset { base, lattice })
    }

    /// `{base + p_1 Z + ... + p_n Z}` for arbitrary generators.
    pub fn from_generators(base: IntVec, periods: &[IntVec]) -> Result<Self> {
        let lattice = hnf(base.dim(), periods)?;
        Self::new(base, lattice)
    }

    pub fn point(base: IntVec) -> Self {
        let dim = base.dim();
        LatticeCoset {
            base,
            lattice: Lattice::trivial(dim),
        }
    }

    pub fn base(&self) -> &IntVec {
        &self.base
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn contains(&self, v: &IntVec) -> Result<bool> {
        check_dim(self.dim(), v.dim())?;
        Ok(self.lattice.contains_unchecked(&v.sub(&self.base)))
    }

    /// Smallest Z-linear set containing both `self` and `other`.
    pub fn covering(&self, other: &LatticeCoset) -> Result<LatticeCoset> {
        check_dim(self.dim(), other.dim())?;
        let mut gens = self.lattice.basis.clone();
        gens.extend_from_slice(&other.lattice.basis);
        gens.push(other.base.sub(&self.base));
        LatticeCoset::new(self.base.clone(), hnf(self.dim(), &gens)?)
    }

    /// Exact image under `m`.
    pub fn image(&self, m: &IntMat) -> Result<LatticeCoset> {
        check_dim(m.dim(), self.dim())?;
        let periods: Vec<IntVec> = self
            .lattice
            .basis
            .iter()
            .map(|p| m.apply_unchecked(p))
            .collect();
        LatticeCoset::new(m.apply_unchecked(&self.base), hnf(self.dim(), &periods)?)
    }

    pub fn is_subset_of(&self, other: &LatticeCoset) -> Result<bool> {
        check_dim(other.dim(), self.dim())?;
        let l2 = &other.lattice;
        Ok(l2.contains_unchecked(&self.base.sub(&other.base))
            && self.lattice.basis.iter().all(|p| l2.contains_unchecked(p)))
    }

    /// Whether the two cosets share no point.
    pub fn is_disjoint_from(&self, other: &LatticeCoset) -> Result<bool> {
        check_dim(self.dim(), other.dim())?;
        let sum = self.lattice.join(&other.lattice.basis)?;
        Ok(!sum.contains_unchecked(&self.base.sub(&other.base)))
    }
}

impl fmt::Display for LatticeCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}", self.base)?;
        for p in self.lattice.basis() {
            write!(f, " +{p}Z")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVec {
        IntVec::from_i64(xs)
    }

    fn coset(base: &[i64], periods: &[&[i64]]) -> LatticeCoset {
        let ps: Vec<IntVec> = periods.iter().map(|p| v(p)).collect();
        LatticeCoset::from_generators(v(base), &ps).unwrap()
    }

    /// Brute-force membership: is `target` an integer combination of `gens`
    /// with coefficients in [-bound, bound]?
    fn brute_member(gens: &[IntVec], target: &IntVec, bound: i64) -> bool {
        fn go(gens: &[IntVec], acc: IntVec, target: &IntVec, bound: i64) -> bool {
            match gens.split_first() {
                None => &acc == target,
                Some((g, rest)) => (-bound..=bound).any(|c| {
                    let step = IntVec(g.0.iter().map(|x| x * c).collect());
                    go(rest, acc.add(&step), target, bound)
                }),
            }
        }
        go(gens, IntVec::zeros(target.dim()), target, bound)
    }

    #[test]
    fn hnf_of_redundant_generators() {
        let l = hnf(2, &[v(&[2, 2]), v(&[0, 6]), v(&[2, 6])]).unwrap();
        assert_eq!(l.basis(), &[v(&[2, 0]), v(&[0, 2])]);
    }

    #[test]
    fn hnf_identity_is_fixed() {
        let l = hnf(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(l.basis(), &[v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn hnf_one_dimensional_gcd() {
        let l = hnf(1, &[v(&[4]), v(&[6])]).unwrap();
        assert_eq!(l.basis(), &[v(&[2])]);
        assert!(brute_member(&[v(&[4]), v(&[6])], &v(&[2]), 3));
    }

    #[test]
    fn hnf_rejects_mixed_dimensions() {
        assert!(matches!(
            hnf(2, &[v(&[1, 0]), v(&[1])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hnf_rank_deficient_and_empty() {
        let l = hnf(3, &[v(&[0, 2, 4]), v(&[0, -3, -6])]).unwrap();
        assert_eq!(l.basis(), &[v(&[0, 1, 2])]);
        assert_eq!(l.pivot_rows(), &[1]);
        assert_eq!(hnf(2, &[]).unwrap(), Lattice::trivial(2));
        assert_eq!(hnf(2, &[v(&[0, 0])]).unwrap(), Lattice::trivial(2));
    }

    #[test]
    fn membership_examples() {
        let l = hnf(2, &[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert!(l.contains(&v(&[2, 4])).unwrap());
        assert!(!l.contains(&v(&[1, 2])).unwrap());
        let l = hnf(2, &[v(&[2, 2]), v(&[0, 6]), v(&[2, 6])]).unwrap();
        assert!(l.contains(&v(&[2, 2])).unwrap());
        assert!(l.contains(&v(&[1])).is_err());
    }

    #[test]
    fn covering_examples() {
        let c = coset(&[1], &[&[2]]).covering(&coset(&[3], &[&[6]])).unwrap();
        assert_eq!(c, coset(&[1], &[&[2]]));
        for y in -20..=20 {
            assert_eq!(c.contains(&v(&[y])).unwrap(), y.rem_euclid(2) == 1);
        }

        let a = coset(&[1, 2], &[&[3, 1]]);
        assert_eq!(a.covering(&a).unwrap(), a);

        let c = coset(&[0, 0], &[&[1, 0]])
            .covering(&coset(&[0, 1], &[&[1, 0]]))
            .unwrap();
        assert_eq!(c.lattice(), &Lattice::full(2));
    }

    #[test]
    fn image_examples() {
        let m = IntMat::from_i64(&[&[2]]).unwrap();
        assert_eq!(coset(&[1], &[&[3]]).image(&m).unwrap(), coset(&[2], &[&[6]]));

        let l = coset(&[3, -1], &[&[2, 1]]);
        assert_eq!(l.image(&IntMat::identity(2)).unwrap(), l);

        let swap = IntMat::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        let img = coset(&[1, 2], &[&[1, 0]]).image(&swap).unwrap();
        assert_eq!(img, coset(&[2, 1], &[&[0, 1]]));
        for x in -5..=5 {
            for y in -5..=5 {
                assert_eq!(img.contains(&v(&[x, y])).unwrap(), x == 2);
            }
        }
    }

    #[test]
    fn subset_examples() {
        assert!(coset(&[2], &[&[6]]).is_subset_of(&coset(&[2], &[&[3]])).unwrap());
        assert!(!coset(&[1], &[&[3]]).is_subset_of(&coset(&[1], &[&[6]])).unwrap());
        assert!(coset(&[1, 1], &[&[2, 0]])
            .is_subset_of(&coset(&[1, 1], &[&[1, 0], &[0, 1]]))
            .unwrap());
    }

    #[test]
    fn base_is_canonical() {
        let a = coset(&[7, -3], &[&[2, 1], &[0, 3]]);
        let b = coset(&[1, 0], &[&[2, 1], &[0, 3]]);
        assert_eq!(a, b);
        assert_eq!(a.base(), &v(&[1, 0]));
    }

    #[test]
    fn disjointness() {
        assert!(coset(&[1], &[&[3]]).is_disjoint_from(&coset(&[0], &[&[3]])).unwrap());
        assert!(!coset(&[1], &[&[2]]).is_disjoint_from(&coset(&[0], &[&[3]])).unwrap());
    }
}
