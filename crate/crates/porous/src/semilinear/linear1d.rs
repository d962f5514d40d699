use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::affine1d::AffineFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpanKind {
    /// `{b + pN}`; `p > 0` ascending, `p < 0` descending, `p = 0` the singleton `{b}`.
    NatSpan,
    /// `{b + pZ}` with `p > 0` and `0 <= b < p`.
    IntSpan,
}

/// One-dimensional linear set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearSet1D {
    base: BigInt,
    period: BigInt,
    kind: SpanKind,
}

impl LinearSet1D {
    pub fn singleton(b: impl Into<BigInt>) -> Self {
        LinearSet1D {
            base: b.into(),
            period: BigInt::zero(),
            kind: SpanKind::NatSpan,
        }
    }

    pub fn nat(b: impl Into<BigInt>, p: impl Into<BigInt>) -> Self {
        LinearSet1D {
            base: b.into(),
            period: p.into(),
            kind: SpanKind::NatSpan,
        }
    }

    /// `{b + pZ}`, normalized; a zero period degenerates to `{b}`.
    pub fn int(b: impl Into<BigInt>, p: impl Into<BigInt>) -> Self {
        let (b, p) = (b.into(), p.into());
        if p.is_zero() {
            return Self::singleton(b);
        }
        let p = p.abs();
        LinearSet1D {
            base: b.mod_floor(&p),
            period: p,
            kind: SpanKind::IntSpan,
        }
    }

    pub fn base(&self) -> &BigInt {
        &self.base
    }

    pub fn period(&self) -> &BigInt {
        &self.period
    }

    pub fn kind(&self) -> SpanKind {
        self.kind
    }

    pub fn is_singleton(&self) -> bool {
        self.period.is_zero()
    }

    pub fn is_int_span(&self) -> bool {
        self.kind == SpanKind::IntSpan
    }

    pub fn contains(&self, y: &BigInt) -> bool {
        let diff = y - &self.base;
        if self.period.is_zero() {
            return diff.is_zero();
        }
        if !diff.is_multiple_of(&self.period) {
            return false;
        }
        match self.kind {
            SpanKind::IntSpan => true,
            SpanKind::NatSpan => diff.is_zero() || diff.sign() == self.period.sign(),
        }
    }

    /// Exact image `{a·b + c + (a·p)K}` under `x ↦ a·x + c`.
    pub fn image(&self, f: &AffineFn) -> LinearSet1D {
        let base = f.apply(&self.base);
        let period = &f.a * &self.period;
        match self.kind {
            SpanKind::IntSpan => LinearSet1D::int(base, period),
            SpanKind::NatSpan => LinearSet1D::nat(base, period),
        }
    }

    pub fn is_subset_of(&self, other: &LinearSet1D) -> bool {
        if self.is_singleton() {
            return other.contains(&self.base);
        }
        if other.is_singleton() {
            return false;
        }
        let congruent = (&self.base - &other.base).is_multiple_of(&other.period);
        let divides = self.period.is_multiple_of(&other.period);
        match (self.kind, other.kind) {
            (_, SpanKind::IntSpan) => congruent && divides,
            (SpanKind::IntSpan, SpanKind::NatSpan) => false,
            (SpanKind::NatSpan, SpanKind::NatSpan) => {
                self.period.sign() == other.period.sign() && divides && other.contains(&self.base)
            }
        }
    }

    pub fn is_disjoint_from(&self, other: &LinearSet1D) -> bool {
        if self.is_singleton() {
            return !other.contains(&self.base);
        }
        if other.is_singleton() {
            return !self.contains(&other.base);
        }
        let g = self.period.gcd(&other.period);
        if !(&self.base - &other.base).is_multiple_of(&g) {
            return true;
        }
        // Congruence is solvable; only two opposite rays can still miss each other.
        let (up, down) = match (self.direction(), other.direction()) {
            (Direction::Up, Direction::Down) => (self, other),
            (Direction::Down, Direction::Up) => (other, self),
            _ => return false,
        };
        if up.base > down.base {
            return true;
        }
        let (x0, l) = crt(&up.base, &up.period, &down.base, &down.period.abs())
            .expect("congruence checked solvable");
        let first = &up.base + (&x0 - &up.base).mod_floor(&l);
        first > down.base
    }

    fn direction(&self) -> Direction {
        match self.kind {
            SpanKind::IntSpan => Direction::Both,
            SpanKind::NatSpan if self.period.is_positive() => Direction::Up,
            SpanKind::NatSpan => Direction::Down,
        }
    }

    /// The set `{-x : x ∈ self}`.
    pub fn negated(&self) -> LinearSet1D {
        match self.kind {
            SpanKind::IntSpan => LinearSet1D::int(-&self.base, self.period.clone()),
            SpanKind::NatSpan => LinearSet1D::nat(-&self.base, -&self.period),
        }
    }

    fn order_rank(&self) -> u8 {
        match (self.kind, self.period.sign()) {
            (SpanKind::IntSpan, _) => 0,
            (SpanKind::NatSpan, num_bigint::Sign::Plus) => 1,
            (SpanKind::NatSpan, num_bigint::Sign::Minus) => 2,
            (SpanKind::NatSpan, num_bigint::Sign::NoSign) => 3,
        }
    }
}

/// Canonical order used for printing unions: Z-spans by base, ascending
/// N-spans by base, descending N-spans by base, then singletons.
impl Ord for LinearSet1D {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_rank()
            .cmp(&other.order_rank())
            .then_with(|| self.base.cmp(&other.base))
            .then_with(|| self.period.abs().cmp(&other.period.abs()))
    }
}

impl PartialOrd for LinearSet1D {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Up,
    Down,
    Both,
}

/// Output alphabet for set and proof rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Glyphs {
    #[default]
    Ascii,
    Unicode,
}

impl Glyphs {
    pub fn union(self) -> &'static str {
        match self {
            Glyphs::Ascii => " U ",
            Glyphs::Unicode => " ∪ ",
        }
    }

    pub fn subset(self) -> &'static str {
        match self {
            Glyphs::Ascii => "<=",
            Glyphs::Unicode => "⊆",
        }
    }
}

impl fmt::Display for LinearSet1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            return write!(f, "{{{}}}", self.base);
        }
        let suffix = match self.kind {
            SpanKind::IntSpan => 'Z',
            SpanKind::NatSpan => 'N',
        };
        let sign = if self.period.is_negative() { '-' } else { '+' };
        write!(f, "{{{} {}{}{}}}", self.base, sign, self.period.abs(), suffix)
    }
}

/// Solve `x ≡ r1 (mod m1)`, `x ≡ r2 (mod m2)` for positive moduli.
/// Returns `(x, lcm)` or `None` when the system is inconsistent.
pub(crate) fn crt(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    let eg = m1.extended_gcd(m2);
    let g = eg.gcd;
    let diff = r2 - r1;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    let l = m1 / &g * m2;
    let x = (r1 + m1 * (&eg.x * (diff / &g))).mod_floor(&l);
    Some((x, l))
}
