use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{AffineFn, AffineSystem, FnClass, Target};
use crate::error::{Error, Result};
use crate::semilinear::{LinearSet1D, SemiLinear1D};
use crate::ztarget::ResidueGraph;

/// Which construction [`synthesize`] uses for a normalized core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SynthesisCase {
    /// No functions left: the orbit is `{start}`.
    Trivial,
    /// Two opposing counters: residue classes modulo their gcd.
    OpposingCounters,
    /// A single pure inverter and nothing else.
    SingleInverter,
    /// Growing functions only, windowed by a growth bound.
    NoCounters,
    /// Growing functions plus one pure inverter, with a shifted window.
    NoCountersWithInverter,
    /// Counters of one sign, possibly with growing functions and one inverter.
    OneDirection,
}

/// Smallest `C ≥ 0` with `|x| ≥ C ⇒ |f(x)| ≥ |x| + margin`, namely
/// `⌈(|b| + margin) / (|a| − 1)⌉`.
pub fn growth_bound(f: &AffineFn, margin: &BigInt) -> Result<BigInt> {
    if f.a.abs() < BigInt::from(2) || margin.is_negative() {
        return Err(Error::Precondition(format!(
            "growth bound needs |a| >= 2 and margin >= 0 (got {f}, margin {margin})"
        )));
    }
    let num = f.b.abs() + margin;
    Ok(num.div_ceil(&(f.a.abs() - 1)))
}

pub fn synthesis_case(core: &AffineSystem) -> SynthesisCase {
    let classes: Vec<FnClass> = core.fns.iter().map(AffineFn::classify).collect();
    let has = |c: FnClass| classes.contains(&c);
    let inverters = classes.iter().filter(|&&c| c == FnClass::PureInverter).count();
    let growing = has(FnClass::Growing) || has(FnClass::GrowingInverting);
    if core.fns.is_empty() {
        SynthesisCase::Trivial
    } else if has(FnClass::CounterPos) && has(FnClass::CounterNeg) {
        SynthesisCase::OpposingCounters
    } else if has(FnClass::CounterPos) || has(FnClass::CounterNeg) {
        SynthesisCase::OneDirection
    } else if !growing {
        debug_assert_eq!(inverters, 1, "normalized core without counters or growth");
        SynthesisCase::SingleInverter
    } else if inverters == 0 {
        SynthesisCase::NoCounters
    } else {
        SynthesisCase::NoCountersWithInverter
    }
}

/// Inductive invariant containing `core.start`, for a normalized core.
///
/// Exact (equal to the reachability set) except in the two no-counter cases,
/// where an interval around the origin that contains a point target is
/// computed exactly and everything outside it is over-approximated.
pub fn synthesize(core: &AffineSystem) -> SemiLinear1D {
    let fns: Vec<AffineFn> = core
        .fns
        .iter()
        .filter(|f| f.classify() != FnClass::Redundant)
        .cloned()
        .collect();
    debug_assert_eq!(fns.len(), core.fns.len(), "core must be normalized");
    let core = AffineSystem {
        fns,
        ..core.clone()
    };
    match synthesis_case(&core) {
        SynthesisCase::Trivial => SemiLinear1D::new([LinearSet1D::singleton(core.start.clone())]),
        SynthesisCase::OpposingCounters => opposing_counters(&core),
        SynthesisCase::SingleInverter => {
            let b = &core.fns[0].b;
            SemiLinear1D::new([
                LinearSet1D::singleton(core.start.clone()),
                LinearSet1D::singleton(b - &core.start),
            ])
        }
        SynthesisCase::NoCounters => no_counters(&core),
        SynthesisCase::NoCountersWithInverter => no_counters_with_inverter(&core),
        SynthesisCase::OneDirection => one_direction(&core),
    }
}

fn opposing_counters(core: &AffineSystem) -> SemiLinear1D {
    let pos = core.fns.iter().find(|f| f.classify() == FnClass::CounterPos);
    let neg = core.fns.iter().find(|f| f.classify() == FnClass::CounterNeg);
    let d = pos.expect("case A").b.gcd(&neg.expect("case A").b);
    residue_classes(&core.start, &core.fns, &d)
}

/// Union of `{r + dZ}` over the residues reachable from `start` modulo `d`.
fn residue_classes(start: &BigInt, fns: &[AffineFn], d: &BigInt) -> SemiLinear1D {
    let graph = ResidueGraph::explore(
        start.mod_floor(d),
        fns.len(),
        |i, r| fns[i].apply(r).mod_floor(d),
        |_| false,
    );
    SemiLinear1D::new(
        graph
            .states()
            .iter()
            .map(|r| LinearSet1D::int(r.clone(), d.clone())),
    )
}

fn target_margin(target: &Target) -> BigInt {
    match target {
        Target::Point(y) => y.abs() + 1,
        Target::ZClass(_) => BigInt::zero(),
    }
}

fn no_counters(core: &AffineSystem) -> SemiLinear1D {
    let c = core
        .fns
        .iter()
        .map(|f| growth_bound(f, &BigInt::zero()).expect("growing"))
        .chain([target_margin(&core.target)])
        .max()
        .expect("nonempty");
    let lo = -&c;
    let interior = window_orbit(&core.start, &core.fns, &lo, &c);
    SemiLinear1D::new(
        [LinearSet1D::nat(lo, -1), LinearSet1D::nat(c, 1)]
            .into_iter()
            .chain(interior.into_iter().map(LinearSet1D::singleton)),
    )
}

fn no_counters_with_inverter(core: &AffineSystem) -> SemiLinear1D {
    let inverter = core
        .fns
        .iter()
        .find(|f| f.classify() == FnClass::PureInverter)
        .expect("case D");
    let shift = &inverter.b;
    let margin = shift.abs();
    let c = core
        .fns
        .iter()
        .filter(|f| f.is_growing())
        .map(|f| growth_bound(f, &margin).expect("growing"))
        .chain([target_margin(&core.target)])
        .max()
        .expect("nonempty")
        + &margin;
    let lo = -&c;
    let hi = &c + shift;
    let interior = window_orbit(&core.start, &core.fns, &lo, &hi);
    SemiLinear1D::new(
        [LinearSet1D::nat(lo, -1), LinearSet1D::nat(hi, 1)]
            .into_iter()
            .chain(interior.into_iter().map(LinearSet1D::singleton)),
    )
}

/// Orbit points strictly inside `(lo, hi)`. Points outside are not expanded:
/// the tails `(-∞, lo]` and `[hi, ∞)` are closed under every function.
fn window_orbit(start: &BigInt, fns: &[AffineFn], lo: &BigInt, hi: &BigInt) -> BTreeSet<BigInt> {
    let inside = |x: &BigInt| lo < x && x < hi;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    if inside(start) {
        seen.insert(start.clone());
        queue.push_back(start.clone());
    }
    while let Some(x) = queue.pop_front() {
        for f in fns {
            let y = f.apply(&x);
            if inside(&y) && seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn one_direction(core: &AffineSystem) -> SemiLinear1D {
    let reference = core
        .fns
        .iter()
        .filter(|f| f.is_counter())
        .min_by_key(|f| f.b.abs())
        .expect("case E has a counter");
    if reference.b.is_positive() {
        ascending_counters(&core.start, &core.fns, &reference.b)
    } else {
        let fns: Vec<AffineFn> = core.fns.iter().map(AffineFn::mirrored).collect();
        ascending_counters(&-&core.start, &fns, &-&reference.b).negated()
    }
}

#[derive(Debug, Clone)]
enum ResidueState {
    /// `{min + dN}`, `event` being the update that set `min`.
    Nat { min: BigInt, event: usize },
    Int,
}

struct Event {
    residue: BigInt,
    parent: Option<usize>,
}

/// Saturation over residues modulo the reference counter `x + d`, `d > 0`.
struct Saturation<'a> {
    fns: &'a [AffineFn],
    d: &'a BigInt,
    states: HashMap<BigInt, ResidueState>,
    events: Vec<Event>,
    pending: BinaryHeap<Reverse<(BigInt, usize)>>,
    to_saturate: VecDeque<BigInt>,
}

impl<'a> Saturation<'a> {
    fn add_nat(&mut self, value: BigInt, parent: Option<usize>) {
        let residue = value.mod_floor(self.d);
        match self.states.get(&residue) {
            Some(ResidueState::Int) => return,
            Some(ResidueState::Nat { min, .. }) if *min <= value => return,
            _ => {}
        }
        // A non-inverting chain that returns to this residue strictly lower
        // can be repeated to descend forever; the counter then fills the class.
        let mut ancestor = parent;
        while let Some(a) = ancestor {
            if self.events[a].residue == residue {
                self.promote(residue);
                return;
            }
            ancestor = self.events[a].parent;
        }
        let event = self.events.len();
        self.events.push(Event {
            residue: residue.clone(),
            parent,
        });
        self.pending.push(Reverse((value.clone(), event)));
        self.states.insert(residue, ResidueState::Nat { min: value, event });
    }

    fn promote(&mut self, residue: BigInt) {
        if !matches!(self.states.get(&residue), Some(ResidueState::Int)) {
            self.states.insert(residue.clone(), ResidueState::Int);
            self.to_saturate.push_back(residue);
        }
    }

    fn run(&mut self) {
        loop {
            while let Some(r) = self.to_saturate.pop_front() {
                for f in self.fns {
                    self.promote(f.apply(&r).mod_floor(self.d));
                }
            }
            let Some(Reverse((value, event))) = self.pending.pop() else {
                break;
            };
            let residue = self.events[event].residue.clone();
            let current = matches!(
                self.states.get(&residue),
                Some(ResidueState::Nat { event: e, .. }) if *e == event
            );
            if !current {
                continue;
            }
            for f in self.fns {
                let image = f.apply(&value);
                if f.a.is_negative() {
                    self.promote(image.mod_floor(self.d));
                } else {
                    self.add_nat(image, Some(event));
                }
            }
        }
    }
}

fn ascending_counters(start: &BigInt, fns: &[AffineFn], d: &BigInt) -> SemiLinear1D {
    let mut sat = Saturation {
        fns,
        d,
        states: HashMap::new(),
        events: Vec::new(),
        pending: BinaryHeap::new(),
        to_saturate: VecDeque::new(),
    };
    sat.add_nat(start.clone(), None);
    sat.run();
    SemiLinear1D::new(sat.states.into_iter().map(|(r, s)| match s {
        ResidueState::Int => LinearSet1D::int(r, d.clone()),
        ResidueState::Nat { min, .. } => LinearSet1D::nat(min, d.clone()),
    }))
}
