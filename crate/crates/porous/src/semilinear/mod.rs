//! Linear and semi-linear sets.
//!
//! One-dimensional N/Z-linear sets are the atoms of every invariant the 1-D
//! synthesis produces; d-dimensional unions of lattice cosets are produced by
//! the Z-linear target procedure.

mod cone;
mod linear1d;

use std::fmt;

use num_bigint::BigInt;

pub use cone::{integral_points, NLinearSet, RationalCone, DEFAULT_ZONOTOPE_CAP};
pub use linear1d::{Glyphs, LinearSet1D, SpanKind};

use crate::intlat::LatticeCoset;

/// Finite union of 1-D linear sets kept as a sorted antichain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SemiLinear1D {
    components: Vec<LinearSet1D>,
}

impl SemiLinear1D {
    /// Canonicalize: drop every component contained in another one, then sort.
    pub fn new(components: impl IntoIterator<Item = LinearSet1D>) -> Self {
        let (mut singles, mut spans): (Vec<_>, Vec<_>) =
            components.into_iter().partition(LinearSet1D::is_singleton);
        spans.sort();
        spans.dedup();
        let spans: Vec<LinearSet1D> = spans
            .iter()
            .enumerate()
            .filter(|(i, s)| {
                !spans
                    .iter()
                    .enumerate()
                    .any(|(j, t)| j != *i && s.is_subset_of(t))
            })
            .map(|(_, s)| s.clone())
            .collect();
        singles.sort();
        singles.dedup();
        singles.retain(|s| !spans.iter().any(|t| t.contains(s.base())));
        let mut components = spans;
        components.extend(singles);
        SemiLinear1D { components }
    }

    pub fn components(&self) -> &[LinearSet1D] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, y: &BigInt) -> bool {
        self.components.iter().any(|c| c.contains(y))
    }

    pub fn union(&self, other: &SemiLinear1D) -> SemiLinear1D {
        SemiLinear1D::new(self.components.iter().chain(&other.components).cloned())
    }

    pub fn negated(&self) -> SemiLinear1D {
        SemiLinear1D::new(self.components.iter().map(LinearSet1D::negated))
    }

    pub fn is_disjoint_from(&self, s: &LinearSet1D) -> bool {
        self.components.iter().all(|c| c.is_disjoint_from(s))
    }

    pub fn render(&self, glyphs: Glyphs) -> String {
        render_union(&self.components, glyphs)
    }
}

impl fmt::Display for SemiLinear1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Glyphs::Ascii))
    }
}

/// Finite union of d-dimensional lattice cosets, sorted antichain.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CosetUnion {
    components: Vec<LatticeCoset>,
}

impl CosetUnion {
    pub fn new(components: impl IntoIterator<Item = LatticeCoset>) -> Self {
        let mut all: Vec<LatticeCoset> = components.into_iter().collect();
        all.sort_by(|a, b| {
            (a.lattice().basis(), a.base()).cmp(&(b.lattice().basis(), b.base()))
        });
        all.dedup();
        let keep: Vec<LatticeCoset> = all
            .iter()
            .enumerate()
            .filter(|(i, c)| {
                !all.iter()
                    .enumerate()
                    .any(|(j, d)| j != *i && c.is_subset_of(d).unwrap_or(false))
            })
            .map(|(_, c)| c.clone())
            .collect();
        CosetUnion { components: keep }
    }

    pub fn components(&self) -> &[LatticeCoset] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, v: &crate::intlat::IntVec) -> bool {
        self.components
            .iter()
            .any(|c| c.contains(v).unwrap_or(false))
    }

    pub fn render(&self, glyphs: Glyphs) -> String {
        render_union(&self.components, glyphs)
    }
}

impl fmt::Display for CosetUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Glyphs::Ascii))
    }
}

fn render_union<T: fmt::Display>(parts: &[T], glyphs: Glyphs) -> String {
    if parts.is_empty() {
        return "{}".to_string();
    }
    parts
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(glyphs.union())
}
