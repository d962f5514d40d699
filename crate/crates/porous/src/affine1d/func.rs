use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `x ↦ a·x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineFn {
    pub a: BigInt,
    pub b: BigInt,
}

/// Function classes driving the synthesis case split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FnClass {
    /// Constant or identity.
    Redundant,
    CounterPos,
    CounterNeg,
    /// `a ≥ 2`.
    Growing,
    /// `a ≤ -2`.
    GrowingInverting,
    /// `a = -1`.
    PureInverter,
}

impl AffineFn {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        AffineFn {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn apply(&self, x: &BigInt) -> BigInt {
        &self.a * x + &self.b
    }

    pub fn classify(&self) -> FnClass {
        let a = &self.a;
        if a.is_zero() || (a.is_one() && self.b.is_zero()) {
            FnClass::Redundant
        } else if a.is_one() {
            if self.b.is_positive() {
                FnClass::CounterPos
            } else {
                FnClass::CounterNeg
            }
        } else if *a == BigInt::from(-1) {
            FnClass::PureInverter
        } else if a.is_positive() {
            FnClass::Growing
        } else {
            FnClass::GrowingInverting
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_zero()
    }

    pub fn is_counter(&self) -> bool {
        matches!(self.classify(), FnClass::CounterPos | FnClass::CounterNeg)
    }

    pub fn is_growing(&self) -> bool {
        matches!(self.classify(), FnClass::Growing | FnClass::GrowingInverting)
    }

    /// Conjugate by negation: `x ↦ a·x − b`, so that `f̄(−x) = −f(x)`.
    pub fn mirrored(&self) -> AffineFn {
        AffineFn {
            a: self.a.clone(),
            b: -&self.b,
        }
    }
}

/// Renders as `f(x) = 2x - 3`.
impl fmt::Display for AffineFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f(x) = ")?;
        let (a, b) = (&self.a, &self.b);
        if a.is_zero() {
            return write!(f, "{b}");
        }
        if a.is_one() {
            write!(f, "x")?;
        } else if *a == BigInt::from(-1) {
            write!(f, "-x")?;
        } else {
            write!(f, "{a}x")?;
        }
        if b.is_positive() {
            write!(f, " + {b}")?;
        } else if b.is_negative() {
            write!(f, " - {}", b.abs())?;
        }
        Ok(())
    }
}
