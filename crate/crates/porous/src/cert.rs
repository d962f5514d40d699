//! Certificate checking for candidate invariants and concrete witness search.
//!
//! The checker only uses the image and subset operations of `semilinear` and
//! `intlat`; it never calls back into synthesis.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::affbasis::Lds;
use crate::affine1d::{AffineFn, AffineSystem};
use crate::intlat::{IntMat, IntVec, LatticeCoset};
use crate::semilinear::{CosetUnion, Glyphs, LinearSet1D, SemiLinear1D};

/// Default node budget for [`find_witness`].
pub const DEFAULT_WITNESS_BUDGET: usize = 1_000_000;

/// `f(source) = image ⊆ within`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofRow<S, F> {
    pub source: S,
    pub function: F,
    pub image: S,
    pub within: S,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate<S, F> {
    /// One row per (component, function) pair, components outermost.
    pub rows: Vec<ProofRow<S, F>>,
    /// A component containing the start.
    pub start_member: S,
    /// True when a target was supplied and found disjoint from every component.
    pub target_disjoint: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckFailure<S, F> {
    /// No single component contains `function(component)`.
    Uncovered { component: S, function: F, image: S },
    StartNotMember,
    TargetIntersects { component: S },
    DimensionMismatch,
}

impl<S: fmt::Display, F: fmt::Display> fmt::Display for CheckFailure<S, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckFailure::Uncovered {
                component,
                function,
                image,
            } => write!(f, "{component} under {function} gives {image}, not inside any component"),
            CheckFailure::StartNotMember => write!(f, "start is not in the invariant"),
            CheckFailure::TargetIntersects { component } => {
                write!(f, "target meets component {component}")
            }
            CheckFailure::DimensionMismatch => write!(f, "dimension mismatch"),
        }
    }
}

/// Check that `inv` contains `start`, is closed under every function with
/// single-component coverage, and (if given) avoids `target`.
pub fn check_inductive_1d(
    inv: &SemiLinear1D,
    start: &BigInt,
    fns: &[AffineFn],
    target: Option<&LinearSet1D>,
) -> Result<Certificate<LinearSet1D, AffineFn>, CheckFailure<LinearSet1D, AffineFn>> {
    let comps = inv.components();
    let start_member = comps
        .iter()
        .find(|c| c.contains(start))
        .ok_or(CheckFailure::StartNotMember)?
        .clone();
    let mut rows = Vec::with_capacity(comps.len() * fns.len());
    for c in comps {
        for f in fns {
            let image = c.image(f);
            let Some(within) = comps.iter().find(|w| image.is_subset_of(w)) else {
                return Err(CheckFailure::Uncovered {
                    component: c.clone(),
                    function: f.clone(),
                    image,
                });
            };
            rows.push(ProofRow {
                source: c.clone(),
                function: f.clone(),
                image,
                within: within.clone(),
            });
        }
    }
    if let Some(t) = target {
        if let Some(c) = comps.iter().find(|c| !c.is_disjoint_from(t)) {
            return Err(CheckFailure::TargetIntersects { component: c.clone() });
        }
    }
    Ok(Certificate {
        rows,
        start_member,
        target_disjoint: target.is_some(),
    })
}

/// [`check_inductive_1d`] against the start and functions of `sys`, with its
/// target when `with_target` is set.
pub fn check_system(
    inv: &SemiLinear1D,
    sys: &AffineSystem,
    with_target: bool,
) -> Result<Certificate<LinearSet1D, AffineFn>, CheckFailure<LinearSet1D, AffineFn>> {
    let target = sys.target.as_set();
    check_inductive_1d(inv, &sys.start, &sys.fns, with_target.then_some(&target))
}

/// The d-dimensional counterpart of [`check_inductive_1d`].
pub fn check_inductive_lds(
    inv: &CosetUnion,
    sys: &Lds,
    target: Option<&LatticeCoset>,
) -> Result<Certificate<LatticeCoset, IntMat>, CheckFailure<LatticeCoset, IntMat>> {
    let comps = inv.components();
    if comps.iter().any(|c| c.dim() != sys.dim()) || target.is_some_and(|t| t.dim() != sys.dim()) {
        return Err(CheckFailure::DimensionMismatch);
    }
    let start_member = comps
        .iter()
        .find(|c| c.contains(sys.x0()).unwrap_or(false))
        .ok_or(CheckFailure::StartNotMember)?
        .clone();
    let mut rows = Vec::new();
    for c in comps {
        for m in sys.matrices() {
            let image = c.image(m).map_err(|_| CheckFailure::DimensionMismatch)?;
            let Some(within) = comps
                .iter()
                .find(|w| image.is_subset_of(w).unwrap_or(false))
            else {
                return Err(CheckFailure::Uncovered {
                    component: c.clone(),
                    function: m.clone(),
                    image,
                });
            };
            rows.push(ProofRow {
                source: c.clone(),
                function: m.clone(),
                image,
                within: within.clone(),
            });
        }
    }
    if let Some(t) = target {
        if let Some(c) = comps.iter().find(|c| !c.is_disjoint_from(t).unwrap_or(false)) {
            return Err(CheckFailure::TargetIntersects { component: c.clone() });
        }
    }
    Ok(Certificate {
        rows,
        start_member,
        target_disjoint: target.is_some(),
    })
}

/// Proof table with columns `Set / under / gives / (subset glyph) / within`,
/// left-aligned, two-space gutters, dashed rule under the header.
pub fn render_proof_table<S: fmt::Display, F: fmt::Display>(
    rows: &[ProofRow<S, F>],
    glyphs: Glyphs,
) -> String {
    let header = ["Set", "under", "gives", "", "within"];
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.source.to_string(),
                r.function.to_string(),
                r.image.to_string(),
                glyphs.subset().to_string(),
                r.within.to_string(),
            ]
        })
        .collect();
    let width = |s: &str| s.chars().count();
    let widths: Vec<usize> = (0..5)
        .map(|i| {
            cells
                .iter()
                .map(|c| width(&c[i]))
                .chain([width(header[i]) + 2])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: Vec<&str>| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s}{}", " ".repeat(w - width(s))))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![
        line(header.to_vec()),
        widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "),
    ];
    for c in &cells {
        out.push(line(c.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}

/// A concrete run: `trace[i + 1] = fns[word[i]](trace[i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub word: Vec<usize>,
    pub trace: Vec<BigInt>,
}

impl Witness {
    /// `1 -> 2 -> 3`
    pub fn render_trace(&self) -> String {
        self.trace
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" -> ")
    }

    pub fn replays(&self, sys: &AffineSystem) -> bool {
        self.trace.first() == Some(&sys.start)
            && self.trace.len() == self.word.len() + 1
            && self.word.iter().enumerate().all(|(i, &k)| {
                sys.fns.get(k).is_some_and(|f| f.apply(&self.trace[i]) == self.trace[i + 1])
            })
            && self.trace.last().is_some_and(|y| sys.target.contains(y))
    }
}

/// Breadth-first search for a word from the start to the target.
///
/// Half the budget goes to plain search over values, which returns a
/// shortest word. The rest goes to searches confined to `[-w, w]` for
/// doubling `w`, which return a shortest word among those whose trace stays
/// in the window. Long witnesses (a counter repeated many times after a
/// large jump) are found there.
pub fn find_witness(sys: &AffineSystem, budget: usize) -> Option<Witness> {
    let plain = budget / 2;
    if let Search::Found(w) = bfs(sys, plain, None) {
        return Some(w);
    }
    let mut left = budget - plain;
    let scale = sys
        .fns
        .iter()
        .flat_map(|f| [f.a.abs(), f.b.abs()])
        .chain([sys.start.abs(), sys.target.as_set().base().abs()])
        .max()
        .unwrap_or_default();
    let mut w: BigInt = 2 * scale + 1;
    while left > 0 {
        match bfs(sys, left, Some(&w)) {
            Search::Found(wit) => return Some(wit),
            Search::Exhausted => return None,
            Search::Closed(used) => left -= used,
        }
        w *= 2;
    }
    None
}

enum Search {
    Found(Witness),
    /// Budget ran out.
    Exhausted,
    /// Every reachable value was visited; carries the node count.
    Closed(usize),
}

fn bfs(sys: &AffineSystem, budget: usize, window: Option<&BigInt>) -> Search {
    let inside = |x: &BigInt| window.map_or(true, |w| x.abs() <= *w);
    if !inside(&sys.start) {
        return Search::Closed(0);
    }
    let mut parent: HashMap<BigInt, Option<(BigInt, usize)>> =
        HashMap::from([(sys.start.clone(), None)]);
    let mut queue = VecDeque::from([sys.start.clone()]);
    while let Some(x) = queue.pop_front() {
        if sys.target.contains(&x) {
            return Search::Found(unwind(&parent, x));
        }
        for (i, f) in sys.fns.iter().enumerate() {
            let y = f.apply(&x);
            if !inside(&y) || parent.contains_key(&y) {
                continue;
            }
            if parent.len() >= budget {
                return Search::Exhausted;
            }
            parent.insert(y.clone(), Some((x.clone(), i)));
            queue.push_back(y);
        }
    }
    Search::Closed(parent.len())
}

fn unwind(parent: &HashMap<BigInt, Option<(BigInt, usize)>>, end: BigInt) -> Witness {
    let mut word = Vec::new();
    let mut trace = vec![end.clone()];
    let mut cur = end;
    while let Some(Some((p, i))) = parent.get(&cur) {
        word.push(*i);
        trace.push(p.clone());
        cur = p.clone();
    }
    word.reverse();
    trace.reverse();
    Witness { word, trace }
}

/// Replay `word` on `x0` under the matrices of `sys`.
pub fn replay_lds(sys: &Lds, word: &[usize]) -> Option<Vec<IntVec>> {
    let mut trace = vec![sys.x0().clone()];
    for &i in word {
        let next = sys.matrices().get(i)?.apply(trace.last().expect("nonempty")).ok()?;
        trace.push(next);
    }
    Some(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine1d::Target;

    fn f(a: i64, b: i64) -> AffineFn {
        AffineFn::new(a, b)
    }

    fn mu(target: Target) -> AffineSystem {
        AffineSystem::new(1, vec![f(1, -3), f(2, 0)], target)
    }

    #[test]
    fn mu_proof_rows() {
        let inv = SemiLinear1D::new([LinearSet1D::int(1, 3), LinearSet1D::int(2, 3)]);
        let cert = check_system(&inv, &mu(Target::Point(0.into())), true).unwrap();
        let rows: Vec<(String, String, String, String)> = cert
            .rows
            .iter()
            .map(|r| {
                (
                    r.source.to_string(),
                    r.function.to_string(),
                    r.image.to_string(),
                    r.within.to_string(),
                )
            })
            .collect();
        let expect = [
            ("{1 +3Z}", "f(x) = x - 3", "{1 +3Z}", "{1 +3Z}"),
            ("{1 +3Z}", "f(x) = 2x", "{2 +6Z}", "{2 +3Z}"),
            ("{2 +3Z}", "f(x) = x - 3", "{2 +3Z}", "{2 +3Z}"),
            ("{2 +3Z}", "f(x) = 2x", "{4 +6Z}", "{1 +3Z}"),
        ];
        let expect: Vec<_> = expect
            .iter()
            .map(|(a, b, c, d)| (a.to_string(), b.to_string(), c.to_string(), d.to_string()))
            .collect();
        assert_eq!(rows, expect);
        assert!(cert.target_disjoint);
        assert_eq!(cert.start_member, LinearSet1D::int(1, 3));
    }

    #[test]
    fn mu_proof_table_layout() {
        let inv = SemiLinear1D::new([LinearSet1D::int(1, 3), LinearSet1D::int(2, 3)]);
        let cert = check_system(&inv, &mu(Target::Point(0.into())), true).unwrap();
        let table = render_proof_table(&cert.rows, Glyphs::Ascii);
        let expect = "\
Set      under         gives        within
-------  ------------  -------  --  --------
{1 +3Z}  f(x) = x - 3  {1 +3Z}  <=  {1 +3Z}
{1 +3Z}  f(x) = 2x     {2 +6Z}  <=  {2 +3Z}
{2 +3Z}  f(x) = x - 3  {2 +3Z}  <=  {2 +3Z}
{2 +3Z}  f(x) = 2x     {4 +6Z}  <=  {1 +3Z}";
        assert_eq!(table, expect);
    }

    #[test]
    fn half_invariant_fails_at_doubling() {
        let inv = SemiLinear1D::new([LinearSet1D::int(1, 3)]);
        let err = check_system(&inv, &mu(Target::Point(0.into())), true).unwrap_err();
        assert_eq!(
            err,
            CheckFailure::Uncovered {
                component: LinearSet1D::int(1, 3),
                function: f(2, 0),
                image: LinearSet1D::int(2, 6),
            }
        );
    }

    #[test]
    fn identity_single_row() {
        let inv = SemiLinear1D::new([LinearSet1D::singleton(4)]);
        let cert = check_inductive_1d(&inv, &BigInt::from(4), &[f(1, 0)], None).unwrap();
        assert_eq!(cert.rows.len(), 1);
        assert!(!cert.target_disjoint);
    }

    #[test]
    fn start_and_target_failures() {
        let inv = SemiLinear1D::new([LinearSet1D::nat(5, 1)]);
        assert_eq!(
            check_inductive_1d(&inv, &BigInt::from(1), &[f(1, 1)], None),
            Err(CheckFailure::StartNotMember)
        );
        let t = LinearSet1D::singleton(9);
        assert_eq!(
            check_inductive_1d(&inv, &BigInt::from(5), &[f(1, 1)], Some(&t)),
            Err(CheckFailure::TargetIntersects {
                component: LinearSet1D::nat(5, 1)
            })
        );
    }

    #[test]
    fn witness_counter() {
        let sys = AffineSystem::new(1, vec![f(1, 1)], Target::Point(5.into()));
        let w = find_witness(&sys, 100).unwrap();
        assert_eq!(w.word, vec![0, 0, 0, 0]);
        assert_eq!(w.render_trace(), "1 -> 2 -> 3 -> 4 -> 5");
        assert!(w.replays(&sys));
    }

    #[test]
    fn witness_mu_seven() {
        let sys = mu(Target::Point(7.into()));
        let w = find_witness(&sys, 10_000).unwrap();
        let trace: Vec<i64> = w.trace.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(trace, vec![1, 2, 4, 8, 5, 10, 7]);
        assert_eq!(w.word, vec![1, 1, 1, 0, 1, 0]);
    }

    #[test]
    fn witness_long_counter_run() {
        // 8 -> -33 by -5x + 7, then 31 steps of x + 2
        let sys = AffineSystem::new(
            8,
            vec![f(1, 2), f(5, -8), f(-5, 7), f(-4, -6), f(-6, -4), f(-6, 5)],
            Target::Point(29.into()),
        );
        let w = find_witness(&sys, 1_000_000).unwrap();
        assert!(w.replays(&sys));
    }

    #[test]
    fn witness_mu_zero_not_found() {
        assert_eq!(find_witness(&mu(Target::Point(0.into())), 10_000), None);
    }

    #[test]
    fn lds_check_mu_residues() {
        use crate::intlat::IntMat;
        let m1 = IntMat::from_i64(&[&[1, -3], &[0, 1]]).unwrap();
        let m2 = IntMat::from_i64(&[&[2, 0], &[0, 1]]).unwrap();
        let sys = Lds::new(IntVec::from_i64(&[1, 1]), vec![m1, m2]).unwrap();
        let comp = |b: i64| {
            LatticeCoset::from_generators(
                IntVec::from_i64(&[b, 0]),
                &[IntVec::from_i64(&[3, 0]), IntVec::from_i64(&[0, 1])],
            )
            .unwrap()
        };
        let inv = CosetUnion::new([comp(1), comp(2)]);
        let target = comp(0);
        let cert = check_inductive_lds(&inv, &sys, Some(&target)).unwrap();
        assert_eq!(cert.rows.len(), 4);
        let half = CosetUnion::new([comp(1)]);
        assert!(matches!(
            check_inductive_lds(&half, &sys, None),
            Err(CheckFailure::Uncovered { .. })
        ));
    }
}
