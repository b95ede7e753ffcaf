//! Valid cuts of `S`: bipartitions of the Steiner set induced by some S-mincut.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SteinerContext;
use crate::maxflow::max_flow;

/// Default upper bound on `|S|` for enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 14;

/// Subset of the Steiner set, as a bitmask over positions in
/// [`SteinerContext::steiner`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SteinerSet(pub u64);

impl SteinerSet {
    pub const EMPTY: SteinerSet = SteinerSet(0);

    pub fn full(k: usize) -> SteinerSet {
        SteinerSet(if k >= 64 { u64::MAX } else { (1u64 << k) - 1 })
    }

    pub fn singleton(i: usize) -> SteinerSet {
        SteinerSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: SteinerSet) -> SteinerSet {
        SteinerSet(self.0 | o.0)
    }

    pub fn intersect(self, o: SteinerSet) -> SteinerSet {
        SteinerSet(self.0 & o.0)
    }

    pub fn minus(self, o: SteinerSet) -> SteinerSet {
        SteinerSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: SteinerSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn complement(self, full: SteinerSet) -> SteinerSet {
        full.minus(self)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// Orientation of the bipartition `{self, full \ self}` whose side holds index 0.
    pub fn anchored(self, full: SteinerSet) -> SteinerSet {
        if self.contains(0) {
            self
        } else {
            self.complement(full)
        }
    }

    /// Graph vertices of this subset.
    pub fn vertices(self, steiner: &[usize]) -> Vec<usize> {
        self.iter().map(|i| steiner[i]).collect()
    }

    /// 1-based vertex list like `{1,3}`.
    pub fn display(self, steiner: &[usize]) -> String {
        format!("{{{}}}", crate::graph::format_vertex_list(&self.vertices(steiner)))
    }
}

impl fmt::Display for SteinerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

/// Two sides cross when all four corners are nonempty.
pub fn crosses(a: SteinerSet, b: SteinerSet, full: SteinerSet) -> bool {
    let (ac, bc) = (a.complement(full), b.complement(full));
    !a.intersect(b).is_empty() && !a.intersect(bc).is_empty() && !ac.intersect(b).is_empty() && !ac.intersect(bc).is_empty()
}

/// All valid cuts, one anchored representative per bipartition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidCutSet {
    pub lambda: u64,
    pub steiner_count: usize,
    /// Sides containing the lowest-id Steiner vertex, sorted by bitmask.
    pub cuts: Vec<SteinerSet>,
    pub laminar: Vec<bool>,
    index: HashSet<SteinerSet>,
}

impl ValidCutSet {
    /// Assembles a set from explicit sides. Sides are anchored and sorted.
    pub fn from_sides(lambda: u64, steiner_count: usize, sides: impl IntoIterator<Item = SteinerSet>) -> Self {
        let full = SteinerSet::full(steiner_count);
        let mut cuts: Vec<SteinerSet> = sides.into_iter().map(|s| s.anchored(full)).collect();
        cuts.sort_unstable();
        cuts.dedup();
        let laminar = classify_laminar(&cuts, full);
        let index = cuts.iter().copied().collect();
        ValidCutSet { lambda, steiner_count, cuts, laminar, index }
    }

    pub fn full(&self) -> SteinerSet {
        SteinerSet::full(self.steiner_count)
    }

    /// Whether either side of the bipartition `{side, S \ side}` is valid.
    pub fn is_valid(&self, side: SteinerSet) -> bool {
        let full = self.full();
        !side.is_empty() && side != full && self.index.contains(&side.anchored(full))
    }

    /// True iff no valid cut splits `s1`.
    pub fn is_indivisible(&self, s1: SteinerSet) -> bool {
        let full = self.full();
        self.cuts.iter().all(|&c| {
            let inner = s1.intersect(c);
            inner.is_empty() || inner == s1
        }) && !s1.is_empty()
            && s1 != full
    }

    pub fn laminar_cuts(&self) -> impl Iterator<Item = SteinerSet> + '_ {
        self.cuts.iter().zip(&self.laminar).filter(|(_, &l)| l).map(|(&c, _)| c)
    }

    pub fn crossing_cuts(&self) -> impl Iterator<Item = SteinerSet> + '_ {
        self.cuts.iter().zip(&self.laminar).filter(|(_, &l)| !l).map(|(&c, _)| c)
    }
}

/// Laminar flag per cut: true iff it crosses no other cut of the list.
pub fn classify_laminar(cuts: &[SteinerSet], full: SteinerSet) -> Vec<bool> {
    cuts.iter().map(|&a| cuts.iter().all(|&b| !crosses(a, b, full))).collect()
}

/// Tests every subset containing the first Steiner vertex with one max flow.
/// Requires `λ` to be set on the context.
pub fn enumerate_valid_cuts(ctx: &SteinerContext, bound: usize) -> Result<ValidCutSet> {
    let k = ctx.steiner().len();
    if k > bound || k > 63 {
        return Err(Error::SteinerTooLarge { size: k, bound });
    }
    let lambda = ctx.lambda.ok_or_else(|| Error::InvalidArgument("λ has not been computed".into()))?;
    let full = SteinerSet::full(k);
    let s = ctx.steiner();
    let mut sides = Vec::new();
    for rest in 0..(1u64 << (k - 1)) - 1 {
        let side = SteinerSet(rest << 1 | 1);
        let flow = max_flow(&ctx.graph, &side.vertices(s), &side.complement(full).vertices(s))?;
        if flow.value == lambda {
            sides.push(side);
        }
    }
    Ok(ValidCutSet::from_sides(lambda, k, sides))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::load_graph;
    use crate::maxflow::steiner_mincut_capacity;

    fn valid(text: &str) -> ValidCutSet {
        let mut ctx = load_graph(text).unwrap();
        steiner_mincut_capacity(&mut ctx).unwrap();
        enumerate_valid_cuts(&ctx, DEFAULT_ENUM_BOUND).unwrap()
    }

    #[test]
    fn p3_and_star() {
        let p3 = valid(fixtures::P3);
        assert_eq!(p3.cuts, vec![SteinerSet(0b01)]);
        assert_eq!(p3.laminar, vec![true]);
        assert!(p3.is_indivisible(SteinerSet(0b01)));

        let star = valid(fixtures::STAR);
        assert_eq!(star.cuts, vec![SteinerSet(0b001), SteinerSet(0b011), SteinerSet(0b101)]);
        assert!(star.laminar.iter().all(|&l| l));
    }

    #[test]
    fn c4_has_two_crossing_cuts() {
        let c4 = valid(fixtures::C4);
        assert_eq!(c4.cuts.len(), 6);
        let crossing: Vec<_> = c4.crossing_cuts().collect();
        assert_eq!(crossing, vec![SteinerSet(0b0011), SteinerSet(0b1001)]);
        assert!(c4.is_indivisible(SteinerSet(0b0001)));
        assert!(!c4.is_indivisible(SteinerSet(0b0011)));
        assert!(c4.is_valid(SteinerSet(0b1100)));
        assert!(!c4.is_valid(SteinerSet(0b0101)));
    }

    #[test]
    fn bound_is_enforced() {
        let mut ctx = load_graph(fixtures::C4).unwrap();
        steiner_mincut_capacity(&mut ctx).unwrap();
        assert_eq!(enumerate_valid_cuts(&ctx, 3), Err(Error::SteinerTooLarge { size: 4, bound: 3 }));
    }
}
