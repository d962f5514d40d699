//! Strongest Z-linear inductive invariant of an integer LDS.

use crate::affbasis::{reachable_affine_basis, Lds};
use crate::intlat::{hnf, LatticeCoset};

/// Returns the smallest Z-linear set that contains `x0` and is closed under
/// every matrix of `sys`.
///
/// Starts from `x0 + Σ (r_i − x0)Z` over the reachable affine basis, then
/// repeatedly covers `L ∪ M_1(L) ∪ … ∪ M_k(L)` until the canonical coset no
/// longer changes.
pub fn strongest_zlinear_invariant(sys: &Lds) -> LatticeCoset {
    strongest_zlinear_trace(sys)
        .pop()
        .expect("trace holds at least the initial coset")
}

/// Every iterate `L_0, L_1, …, L_m` of the saturation loop, the last one
/// being the fixpoint.
pub fn strongest_zlinear_trace(sys: &Lds) -> Vec<LatticeCoset> {
    let basis = reachable_affine_basis(sys);
    let lattice = hnf(sys.dim(), &basis.directions()).expect("directions share the system dimension");
    let mut current =
        LatticeCoset::new(sys.x0().clone(), lattice).expect("base and lattice share the dimension");
    let mut trace = vec![current.clone()];
    loop {
        let mut next = current.clone();
        for m in sys.matrices() {
            let image = current.image(m).expect("matrix matches system dimension");
            next = next.covering(&image).expect("same dimension");
        }
        if next == current {
            return trace;
        }
        trace.push(next.clone());
        current = next;
    }
}
