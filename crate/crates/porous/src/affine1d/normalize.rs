use num_bigint::BigInt;
use num_traits::Signed;

use super::{AffineFn, AffineSystem, FnClass};

/// How each normalized core relates to the original coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Transform {
    /// `mirrored[i]`: core `i` lives in negated coordinates.
    pub mirrored: Vec<bool>,
}

/// Split `sys` into cores free of redundant functions.
///
/// 1. duplicate and identity functions are dropped;
/// 2. every constant `x ↦ c` is removed and contributes a core starting at `c`;
/// 3. a core with a negative start is mirrored (`b ↦ −b`, start and target negated);
/// 4. two distinct pure inverters `−x+b`, `−x+c` add the counters `x+(b−c)` and `x+(c−b)`.
pub fn normalize(sys: &AffineSystem) -> (Vec<AffineSystem>, Transform) {
    let mut fns: Vec<AffineFn> = Vec::new();
    let mut starts: Vec<BigInt> = vec![sys.start.clone()];
    for f in &sys.fns {
        if f.is_identity() || fns.contains(f) {
            continue;
        }
        if f.is_constant() {
            if !starts.contains(&f.b) {
                starts.push(f.b.clone());
            }
            continue;
        }
        fns.push(f.clone());
    }

    let mut cores = Vec::with_capacity(starts.len());
    let mut transform = Transform::default();
    for start in starts {
        let mirrored = start.is_negative();
        let mut core = if mirrored {
            AffineSystem {
                start: -start,
                fns: fns.iter().map(AffineFn::mirrored).collect(),
                target: sys.target.negated(),
            }
        } else {
            AffineSystem {
                start,
                fns: fns.clone(),
                target: sys.target.clone(),
            }
        };
        add_inverter_counters(&mut core.fns);
        cores.push(core);
        transform.mirrored.push(mirrored);
    }
    (cores, transform)
}

fn add_inverter_counters(fns: &mut Vec<AffineFn>) {
    let mut inverters = fns
        .iter()
        .filter(|f| f.classify() == FnClass::PureInverter)
        .map(|f| f.b.clone());
    let (Some(b), Some(c)) = (inverters.next(), inverters.next()) else {
        return;
    };
    for counter in [AffineFn::new(1, &b - &c), AffineFn::new(1, &c - &b)] {
        if !fns.contains(&counter) {
            fns.push(counter);
        }
    }
}
