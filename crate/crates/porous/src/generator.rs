//! Seeded random instances over combinations of seven function types.

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine1d::{AffineFn, AffineSystem, Target};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FnType {
    /// `x + b`
    PosCounter,
    /// `x - b`
    NegCounter,
    /// `a·x ± b`
    Growing,
    /// `-a·x ± b`
    GrowingInverting,
    /// `-x + b`
    InverterPos,
    /// `-x - b`
    InverterNeg,
    /// `-x`
    PureInverter,
}

pub const ALL_TYPES: [FnType; 7] = [
    FnType::PosCounter,
    FnType::NegCounter,
    FnType::Growing,
    FnType::GrowingInverting,
    FnType::InverterPos,
    FnType::InverterNeg,
    FnType::PureInverter,
];

/// Nonempty subset of [`ALL_TYPES`]; bit `i` selects `ALL_TYPES[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combo(u8);

impl Combo {
    pub const COUNT: u8 = 127;

    pub fn from_mask(mask: u8) -> Result<Self> {
        match mask {
            0 => Err(Error::EmptyCombo),
            1..=127 => Ok(Combo(mask)),
            _ => Err(Error::Precondition(format!("combo mask {mask} exceeds 7 bits"))),
        }
    }

    pub fn from_types(types: &[FnType]) -> Result<Self> {
        let mask = types.iter().fold(0u8, |m, t| {
            m | 1 << ALL_TYPES.iter().position(|x| x == t).expect("listed")
        });
        Combo::from_mask(mask)
    }

    /// Every nonempty combination, by mask.
    pub fn all() -> impl Iterator<Item = Combo> {
        (1..=Self::COUNT).map(Combo)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn types(self) -> Vec<FnType> {
        ALL_TYPES
            .iter()
            .enumerate()
            .filter(|(i, _)| self.0 >> i & 1 == 1)
            .map(|(_, &t)| t)
            .collect()
    }
}

impl fmt::Display for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:07b}", self.0)
    }
}

fn rng_for(seed: u64, size: u64, combo: Combo) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&size.to_le_bytes());
    key[16] = combo.mask();
    ChaCha8Rng::from_seed(key)
}

/// Geometric(1/2) on `1, 2, …`, clamped to 9.
fn type_count(rng: &mut impl Rng) -> usize {
    let mut n = 1;
    while n < 9 && rng.gen_bool(0.5) {
        n += 1;
    }
    n
}

fn sample(t: FnType, size: i64, rng: &mut impl Rng) -> AffineFn {
    let a = rng.gen_range(2..=size);
    let b = rng.gen_range(1..=size);
    let pm = if rng.gen_bool(0.5) { b } else { -b };
    match t {
        FnType::PosCounter => AffineFn::new(1, b),
        FnType::NegCounter => AffineFn::new(1, -b),
        FnType::Growing => AffineFn::new(a, pm),
        FnType::GrowingInverting => AffineFn::new(-a, pm),
        FnType::InverterPos => AffineFn::new(-1, b),
        FnType::InverterNeg => AffineFn::new(-1, -b),
        FnType::PureInverter => AffineFn::new(-1, 0),
    }
}

/// Deterministic in `(seed, size, combo)`: for each selected type, 1 to 9
/// functions (biased toward one); `|a| ∈ [2, size]`, `b ∈ [1, size]`,
/// start in `[1, size]`, point target in `[1, 4·size]`.
pub fn gen_random(seed: u64, size: u64, combo: Combo) -> Result<AffineSystem> {
    if size < 2 || size > i64::MAX as u64 / 4 {
        return Err(Error::Precondition(format!("size {size} out of range")));
    }
    let mut rng = rng_for(seed, size, combo);
    let s = size as i64;
    let mut fns = Vec::new();
    for t in combo.types() {
        for _ in 0..type_count(&mut rng) {
            fns.push(sample(t, s, &mut rng));
        }
    }
    let start = rng.gen_range(1..=s);
    let target = rng.gen_range(1..=4 * s);
    Ok(AffineSystem::new(start, fns, Target::Point(BigInt::from(target))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine1d::FnClass;

    #[test]
    fn positive_counters_only() {
        let combo = Combo::from_types(&[FnType::PosCounter]).unwrap();
        let sys = gen_random(1, 8, combo).unwrap();
        assert!(!sys.fns.is_empty() && sys.fns.len() <= 9);
        for f in &sys.fns {
            assert_eq!(f.a, BigInt::from(1));
            assert!(f.b >= BigInt::from(1) && f.b <= BigInt::from(8));
        }
    }

    #[test]
    fn deterministic() {
        let combo = Combo::from_mask(0b1010101).unwrap();
        assert_eq!(gen_random(9, 64, combo).unwrap(), gen_random(9, 64, combo).unwrap());
        assert_ne!(gen_random(9, 64, combo).unwrap(), gen_random(10, 64, combo).unwrap());
    }

    #[test]
    fn all_types_present() {
        let sys = gen_random(2, 8, Combo::from_mask(127).unwrap()).unwrap();
        assert!(sys.fns.len() >= 7);
        for class in [
            FnClass::CounterPos,
            FnClass::CounterNeg,
            FnClass::Growing,
            FnClass::GrowingInverting,
            FnClass::PureInverter,
        ] {
            assert!(sys.fns.iter().any(|f| f.classify() == class), "{class:?}");
        }
        assert!(sys.fns.iter().any(|f| f == &AffineFn::new(-1, 0)));
    }

    #[test]
    fn empty_combo() {
        assert_eq!(Combo::from_mask(0), Err(Error::EmptyCombo));
        assert_eq!(Combo::from_types(&[]), Err(Error::EmptyCombo));
        assert_eq!(Combo::all().count(), 127);
    }
}
