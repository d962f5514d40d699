//! Invariant synthesis and reachability for one-dimensional nondeterministic
//! affine systems `x ↦ a_i·x + b_i`.
//!
//! [`normalize`] strips redundant functions (possibly splitting the system
//! into several cores with different starting points), mirrors negative
//! starts, and turns pairs of pure inverters into opposing counters.
//! [`synthesize`] then dispatches on the remaining function classes.

mod func;
mod normalize;
mod synth;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

pub use func::{AffineFn, FnClass};
pub use normalize::{normalize, Transform};
pub use synth::{growth_bound, synthesis_case, synthesize, SynthesisCase};

use crate::semilinear::{LinearSet1D, SemiLinear1D};
use crate::ztarget::ResidueGraph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Target {
    Point(BigInt),
    /// `{c + pZ}`, always stored as an IntSpan.
    ZClass(LinearSet1D),
}

impl Target {
    pub fn zclass(c: impl Into<BigInt>, p: impl Into<BigInt>) -> Self {
        Target::ZClass(LinearSet1D::int(c, p))
    }

    pub fn contains(&self, y: &BigInt) -> bool {
        match self {
            Target::Point(t) => t == y,
            Target::ZClass(s) => s.contains(y),
        }
    }

    pub fn as_set(&self) -> LinearSet1D {
        match self {
            Target::Point(t) => LinearSet1D::singleton(t.clone()),
            Target::ZClass(s) => s.clone(),
        }
    }

    pub(crate) fn negated(&self) -> Target {
        match self {
            Target::Point(t) => Target::Point(-t),
            Target::ZClass(s) => Target::ZClass(s.negated()),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_set())
    }
}

/// A one-dimensional instance: start, update functions and target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineSystem {
    pub start: BigInt,
    pub fns: Vec<AffineFn>,
    pub target: Target,
}

impl AffineSystem {
    pub fn new(start: impl Into<BigInt>, fns: Vec<AffineFn>, target: Target) -> Self {
        AffineSystem {
            start: start.into(),
            fns,
            target,
        }
    }

    /// `start: 1 target: {0} functions: [f(x) = x - 3, f(x) = 2x]`
    pub fn interpretation(&self) -> String {
        let fns: Vec<String> = self.fns.iter().map(ToString::to_string).collect();
        format!(
            "start: {} target: {} functions: [{}]",
            self.start,
            self.target,
            fns.join(", ")
        )
    }
}

/// Outcome of [`decide`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    /// Inductive invariant containing the start. When `reachable` is false
    /// it is disjoint from the target.
    pub invariant: SemiLinear1D,
    pub reachable: bool,
    /// For residue-class targets: the function word reaching the target class.
    pub residue_word: Option<Vec<usize>>,
}

/// Synthesize an invariant for every core of `sys` and return the union, in
/// the original coordinates.
pub fn synthesize_system(sys: &AffineSystem) -> SemiLinear1D {
    let (cores, transform) = normalize(sys);
    let parts = cores.iter().zip(&transform.mirrored).map(|(core, &mirrored)| {
        let inv = synthesize(core);
        if mirrored {
            inv.negated()
        } else {
            inv
        }
    });
    parts.fold(SemiLinear1D::default(), |acc, p| acc.union(&p))
}

/// Decide reachability of the target and return the invariant used.
///
/// Point targets go through [`synthesize_system`]: the invariant is exact
/// except in the no-counter cases, where its window is sized to contain the
/// target. Residue-class targets use the residue closure modulo the period.
pub fn decide(sys: &AffineSystem) -> Decision {
    match &sys.target {
        Target::Point(y) => {
            let invariant = synthesize_system(sys);
            let reachable = invariant.contains(y);
            Decision {
                invariant,
                reachable,
                residue_word: None,
            }
        }
        Target::ZClass(class) => {
            let p = class.period().clone();
            let graph = ResidueGraph::explore(
                sys.start.mod_floor(&p),
                sys.fns.len(),
                |i, r| sys.fns[i].apply(r).mod_floor(&p),
                |_| false,
            );
            let residue_word = graph.word_to(class.base());
            let invariant =
                SemiLinear1D::new(graph.states().iter().map(|r| LinearSet1D::int(r.clone(), p.clone())));
            Decision {
                invariant,
                reachable: residue_word.is_some(),
                residue_word,
            }
        }
    }
}
