//! Reachability of full-dimensional Z-linear targets via residues modulo `m`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::affbasis::Lds;
use crate::error::{Error, Result};
use crate::intlat::{check_dim, hnf, IntVec, Lattice, LatticeCoset};
use crate::semilinear::CosetUnion;

/// Default bound on `m^d`, the size of the residue space.
pub const DEFAULT_STATE_CAP: u64 = 1_000_000;

/// The target rewritten as `∪_{b ∈ residues} {b + m·e_1 Z + … + m·e_d Z}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridTarget {
    pub m: BigInt,
    pub residues: BTreeSet<IntVec>,
}

impl HybridTarget {
    pub fn contains_residue(&self, r: &IntVec) -> bool {
        self.residues.contains(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZVerdict {
    /// `word` indexes the system's matrices in application order; `endpoint`
    /// is the concrete vector it reaches, a member of the target.
    Reachable { word: Vec<usize>, endpoint: IntVec },
    Unreachable { invariant: CosetUnion },
}

/// Smallest `t > 0` with `t·e_i` in `lattice`, for each coordinate `i`.
fn axis_periods(lattice: &Lattice) -> Result<Vec<BigInt>> {
    let vol = lattice.volume();
    let vol_u = vol.to_u64().ok_or_else(|| Error::ResourceCap {
        what: "lattice determinant",
        needed: vol.to_string(),
        limit: u64::MAX,
    })?;
    let mut divisors = Vec::new();
    let mut t = 1u64;
    while t * t <= vol_u {
        if vol_u % t == 0 {
            divisors.push(t);
            if t * t != vol_u {
                divisors.push(vol_u / t);
            }
        }
        t += 1;
    }
    divisors.sort_unstable();
    let dim = lattice.dim();
    (0..dim)
        .map(|i| {
            divisors
                .iter()
                .map(|&t| BigInt::from(t))
                .find(|t| lattice.contains_unchecked(&IntVec::unit(dim, i, t)))
                .ok_or_else(|| Error::Precondition("determinant multiple not in lattice".into()))
        })
        .collect()
}

fn state_count(m: &BigInt, dim: usize, cap: u64) -> Result<u64> {
    let count = num_traits::pow(m.clone(), dim);
    match count.to_u64() {
        Some(c) if c <= cap => Ok(c),
        _ => Err(Error::ResourceCap {
            what: "residue state space m^d",
            needed: count.to_string(),
            limit: cap,
        }),
    }
}

/// Rewrite a full-dimensional Z-linear target as a union of residue classes
/// modulo `m = lcm(m_1, …, m_d)`.
pub fn hybridize_target(y: &LatticeCoset, cap: u64) -> Result<HybridTarget> {
    let lattice = y.lattice();
    if !lattice.is_full_rank() {
        return Err(Error::NotFullDimensional {
            rank: lattice.rank(),
            dim: lattice.dim(),
        });
    }
    let m = axis_periods(lattice)?
        .into_iter()
        .fold(BigInt::one(), |acc, t| acc.lcm(&t));
    let dim = y.dim();
    let total = state_count(&m, dim, cap)?;
    let m_u = m.to_u64().expect("bounded by cap");
    let mut residues = BTreeSet::new();
    let mut point = vec![0u64; dim];
    for _ in 0..total {
        let v = IntVec(point.iter().map(|&x| BigInt::from(x)).collect());
        if lattice.contains_unchecked(&v.sub(y.base())) {
            residues.insert(v);
        }
        for c in point.iter_mut() {
            *c += 1;
            if *c < m_u {
                break;
            }
            *c = 0;
        }
    }
    Ok(HybridTarget { m, residues })
}

/// Breadth-first closure of a finite residue graph with parent pointers.
#[derive(Debug, Clone)]
pub struct ResidueGraph<T> {
    order: Vec<T>,
    parent: HashMap<T, Option<(T, usize)>>,
    hit: Option<T>,
}

impl<T: Clone + Eq + Hash> ResidueGraph<T> {
    /// Explore from `start` with `steps` successor functions (edge label =
    /// index). Stops at the first state satisfying `goal`, if any.
    pub fn explore(
        start: T,
        steps: usize,
        successor: impl Fn(usize, &T) -> T,
        goal: impl Fn(&T) -> bool,
    ) -> Self {
        let mut parent = HashMap::from([(start.clone(), None)]);
        let mut order = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        let mut hit = None;
        while let Some(s) = queue.pop_front() {
            if goal(&s) {
                hit = Some(s);
                break;
            }
            for i in 0..steps {
                let t = successor(i, &s);
                if !parent.contains_key(&t) {
                    parent.insert(t.clone(), Some((s.clone(), i)));
                    order.push(t.clone());
                    queue.push_back(t);
                }
            }
        }
        ResidueGraph { order, parent, hit }
    }

    /// Visited states in discovery order.
    pub fn states(&self) -> &[T] {
        &self.order
    }

    pub fn hit(&self) -> Option<&T> {
        self.hit.as_ref()
    }

    /// Edge labels from the start to `state`.
    pub fn word_to(&self, state: &T) -> Option<Vec<usize>> {
        let mut word = Vec::new();
        let mut cur = state.clone();
        loop {
            match self.parent.get(&cur)? {
                None => break,
                Some((p, i)) => {
                    word.push(*i);
                    cur = p.clone();
                }
            }
        }
        word.reverse();
        Some(word)
    }
}

/// Decide whether `sys` reaches the full-dimensional target `y`.
pub fn decide_zlinear_target(sys: &Lds, y: &LatticeCoset, cap: u64) -> Result<ZVerdict> {
    check_dim(sys.dim(), y.dim())?;
    let target = hybridize_target(y, cap)?;
    let m = &target.m;
    let graph = ResidueGraph::explore(
        sys.x0().mod_floor(m),
        sys.matrices().len(),
        |i, r| sys.matrices()[i].apply_unchecked(r).mod_floor(m),
        |r| target.contains_residue(r),
    );
    if let Some(hit) = graph.hit() {
        let word = graph.word_to(hit).expect("hit was visited");
        let mut endpoint = sys.x0().clone();
        for &i in &word {
            endpoint = sys.matrices()[i].apply_unchecked(&endpoint);
        }
        debug_assert!(y.contains(&endpoint).unwrap_or(false));
        return Ok(ZVerdict::Reachable { word, endpoint });
    }
    Ok(ZVerdict::Unreachable {
        invariant: residue_union(graph.states(), m, sys.dim()),
    })
}

/// `∪_{r} {r + m·e_1 Z + … + m·e_d Z}`.
pub fn residue_union(residues: &[IntVec], m: &BigInt, dim: usize) -> CosetUnion {
    let lattice = hnf(
        dim,
        &(0..dim).map(|i| IntVec::unit(dim, i, m)).collect::<Vec<_>>(),
    )
    .expect("unit vectors share the dimension");
    CosetUnion::new(
        residues
            .iter()
            .map(|r| LatticeCoset::new(r.clone(), lattice.clone()).expect("same dimension")),
    )
}
