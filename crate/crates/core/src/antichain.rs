//! Antichain enumeration, width, domination and the main theorem check.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinDiagram, Family};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::root_poset::RootPoset;

/// A set of pairwise incomparable elements, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Antichain {
    members: Vec<usize>,
}

impl Antichain {
    /// Returns `None` unless `members` are pairwise incomparable in `p`.
    pub fn new(p: &Poset, mut members: Vec<usize>) -> Option<Antichain> {
        members.sort_unstable();
        members.dedup();
        p.is_antichain(&members).then_some(Antichain { members })
    }

    pub(crate) fn from_sorted(members: Vec<usize>) -> Antichain {
        Antichain { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

pub fn is_antichain(p: &Poset, members: &[usize]) -> bool {
    p.is_antichain(members)
}

/// Depth-first enumeration of the antichains inside a domain, in
/// lexicographic order of their sorted member lists.
pub struct Antichains<'a> {
    poset: &'a Poset,
    size: Option<usize>,
    stack: Vec<(Vec<usize>, FixedBitSet)>,
}

impl<'a> Antichains<'a> {
    fn new(poset: &'a Poset, domain: FixedBitSet, size: Option<usize>) -> Self {
        let viable = size.is_none_or(|t| domain.count_ones(..) >= t);
        let stack = if viable { vec![(Vec::new(), domain)] } else { Vec::new() };
        Antichains { poset, size, stack }
    }
}

impl Iterator for Antichains<'_> {
    type Item = Antichain;

    fn next(&mut self) -> Option<Antichain> {
        while let Some((members, candidates)) = self.stack.pop() {
            let done = self.size == Some(members.len());
            if !done {
                // push in reverse so the smallest extension is popped first
                let ext: Vec<usize> = candidates.ones().collect();
                for &x in ext.iter().rev() {
                    let mut next = candidates.clone();
                    next.set_range(..x + 1, false);
                    next.difference_with(self.poset.below(x));
                    next.difference_with(self.poset.above(x));
                    if let Some(t) = self.size {
                        // members + x + whatever can still follow
                        if members.len() + 1 + next.count_ones(..) < t {
                            continue;
                        }
                    }
                    let mut grown = members.clone();
                    grown.push(x);
                    self.stack.push((grown, next));
                }
            }
            if self.size.is_none_or(|t| t == members.len()) {
                return Some(Antichain::from_sorted(members));
            }
        }
        None
    }
}

/// All antichains of `p` (or only those of size `size`).
pub fn enumerate_antichains(p: &Poset, size: Option<usize>) -> Antichains<'_> {
    Antichains::new(p, p.full_set(), size)
}

/// Antichains of `p` using only elements of `domain`.
pub fn enumerate_antichains_in<'a>(
    p: &'a Poset,
    domain: &FixedBitSet,
    size: Option<usize>,
) -> Antichains<'a> {
    Antichains::new(p, domain.clone(), size)
}

/// Maximum antichain of the whole poset.
pub fn width(p: &Poset) -> (usize, Antichain) {
    width_in(p, &p.full_set())
}

/// Maximum antichain inside `domain`, by branch and bound seeded with the
/// largest rank level.
pub fn width_in(p: &Poset, domain: &FixedBitSet) -> (usize, Antichain) {
    let ranks = p.ranks();
    let mut levels: Vec<Vec<usize>> = Vec::new();
    for x in domain.ones() {
        if levels.len() <= ranks[x] {
            levels.resize(ranks[x] + 1, Vec::new());
        }
        levels[ranks[x]].push(x);
    }
    let mut best = levels.into_iter().max_by_key(Vec::len).unwrap_or_default();
    let mut current = Vec::new();
    grow_best(p, &mut current, domain.clone(), &mut best);
    best.sort_unstable();
    (best.len(), Antichain::from_sorted(best))
}

fn grow_best(p: &Poset, current: &mut Vec<usize>, candidates: FixedBitSet, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    let mut remaining = candidates;
    while let Some(x) = remaining.ones().next() {
        if current.len() + remaining.count_ones(..) <= best.len() {
            return;
        }
        remaining.set(x, false);
        let mut next = remaining.clone();
        next.difference_with(p.below(x));
        next.difference_with(p.above(x));
        current.push(x);
        grow_best(p, current, next, best);
        current.pop();
    }
}

/// Every member of `a` lies below some member of `b`.
pub fn dominated_by(p: &Poset, a: &Antichain, b: &Antichain) -> bool {
    a.members().iter().all(|&x| b.members().iter().any(|&y| p.leq(x, y)))
}

/// The `t`-antichains not dominated by any other `t`-antichain.
pub fn maximal_antichains_of_size(p: &Poset, t: usize) -> Vec<Antichain> {
    let all: Vec<Antichain> = enumerate_antichains(p, Some(t)).collect();
    maximal_among(p, &all)
}

/// The maximal `t`-antichains among those inside `domain`.
pub fn maximal_antichains_in(p: &Poset, domain: &FixedBitSet, t: usize) -> Vec<Antichain> {
    let all: Vec<Antichain> = enumerate_antichains_in(p, domain, Some(t)).collect();
    maximal_among(p, &all)
}

pub(crate) fn maximal_among(p: &Poset, all: &[Antichain]) -> Vec<Antichain> {
    let ideals: Vec<FixedBitSet> = all.iter().map(|b| ideal_set(p, b)).collect();
    all.iter()
        .enumerate()
        .filter(|&(i, a)| {
            !ideals
                .iter()
                .enumerate()
                .any(|(j, ideal)| i != j && a.members().iter().all(|&x| ideal.contains(x)))
        })
        .map(|(_, a)| a.clone())
        .collect()
}

fn ideal_set(p: &Poset, a: &Antichain) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(p.len());
    for &x in a.members() {
        s.union_with(p.below(x));
    }
    s
}

/// `counts[t]` is the number of antichains with `t` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeDistribution {
    pub counts: Vec<u64>,
}

impl SizeDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn width(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, t: usize) -> u64 {
        self.counts.get(t).copied().unwrap_or(0)
    }

    /// `counts[t] == counts[n - t]` for `0 <= t <= n`.
    pub fn is_symmetric(&self, n: usize) -> bool {
        (0..=n).all(|t| self.count(t) == self.count(n - t))
    }
}

pub fn size_distribution(p: &Poset) -> SizeDistribution {
    let mut counts = vec![0u64];
    for a in enumerate_antichains(p, None) {
        if counts.len() <= a.len() {
            counts.resize(a.len() + 1, 0);
        }
        counts[a.len()] += 1;
    }
    SizeDistribution { counts }
}

/// The value of `h` listed for each type in the main theorem.
pub fn theorem_h(diagram: &DynkinDiagram) -> Option<usize> {
    match (diagram.family(), diagram.rank()) {
        (Family::A, n) if n >= 2 => Some(2),
        (Family::B | Family::C | Family::D, _) => Some(3),
        (Family::E, 6) => Some(4),
        (Family::E, 7) => Some(5),
        (Family::E, 8) => Some(7),
        (Family::F, _) | (Family::G, _) => Some(5),
        _ => None,
    }
}

/// What the exceptional type E6 looks like instead of a unique `Phi_h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E6Exception {
    /// Heights of the members of the unique maximal antichain.
    pub heights: Vec<usize>,
    /// Those heights are exactly `{h, h + 1}`.
    pub within_h_and_next: bool,
    /// Every other `(n-1)`-antichain lies in the ideal of `Phi_h`.
    pub others_dominated_by_phi_h: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub diagram: String,
    pub h: usize,
    pub expected_h: Option<usize>,
    pub phi_h: Antichain,
    pub phi_h_is_antichain: bool,
    pub maximal_list: Vec<Antichain>,
    pub unique: bool,
    pub equals_phi_h: bool,
    /// Every `(n-1)`-antichain is dominated by `Phi_h` (outside E6) or by the
    /// unique maximal one (E6).
    pub all_dominated: bool,
    pub e6_exception: Option<E6Exception>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        let base = self.expected_h == Some(self.h) && self.phi_h_is_antichain && self.unique;
        match &self.e6_exception {
            None => base && self.equals_phi_h && self.all_dominated,
            Some(e) => {
                base && !self.equals_phi_h
                    && e.within_h_and_next
                    && e.others_dominated_by_phi_h
                    && self.all_dominated
            }
        }
    }
}

pub fn verify_main_theorem(diagram: &DynkinDiagram) -> Result<TheoremReport> {
    let p = RootPoset::build(diagram);
    theorem_report(&p)
}

pub fn theorem_report(p: &RootPoset) -> Result<TheoremReport> {
    let diagram = p.diagram();
    let n = diagram.rank();
    let fail = |reason: String, counterexample: Option<Vec<usize>>| Error::VerificationFailure {
        diagram: diagram.name(),
        reason,
        counterexample,
    };
    if n < 2 {
        return Err(fail("the theorem needs rank at least 2".into(), None));
    }
    let profile = p.level_profile()?;
    let h = profile.h.ok_or_else(|| fail("no height carries n-1 roots".into(), None))?;
    let phi_h_members = p.level_set(h);
    let phi_h_is_antichain = p.is_antichain(&phi_h_members) && phi_h_members.len() == n - 1;
    let phi_h = Antichain::from_sorted(phi_h_members);

    let all: Vec<Antichain> = enumerate_antichains(p, Some(n - 1)).collect();
    let maximal_list = maximal_among(p, &all);
    let unique = maximal_list.len() == 1;
    let equals_phi_h = unique && maximal_list[0] == phi_h;
    let is_e6 = diagram.is(Family::E, 6);

    let all_dominated = match maximal_list.first() {
        Some(top) if unique => all.iter().all(|a| dominated_by(p, a, top)),
        _ => false,
    };
    let e6_exception = (is_e6 && unique).then(|| {
        let top = &maximal_list[0];
        let mut heights: Vec<usize> = top.members().iter().map(|&x| p.height_of(x)).collect();
        heights.sort_unstable();
        heights.dedup();
        E6Exception {
            within_h_and_next: heights == [h, h + 1],
            heights,
            others_dominated_by_phi_h: all
                .iter()
                .filter(|a| *a != top)
                .all(|a| dominated_by(p, a, &phi_h)),
        }
    });

    let report = TheoremReport {
        diagram: diagram.name(),
        h,
        expected_h: theorem_h(diagram),
        phi_h,
        phi_h_is_antichain,
        maximal_list,
        unique,
        equals_phi_h,
        all_dominated,
        e6_exception,
    };
    if report.passed() {
        return Ok(report);
    }
    let witness = report
        .maximal_list
        .iter()
        .find(|a| **a != report.phi_h)
        .map(|a| a.members().to_vec());
    Err(fail(
        format!(
            "h = {} (table {:?}), {} maximal {}-antichains, equals Phi_h: {}",
            report.h,
            report.expected_h,
            report.maximal_list.len(),
            n - 1,
            report.equals_phi_h
        ),
        witness,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::default_diagrams;

    fn three_points() -> Poset {
        Poset::from_leq(3, |i, j| i == j)
    }

    fn claw() -> Poset {
        // three minimal points under a common top
        Poset::from_covers(4, &[(0, 3), (1, 3), (2, 3)])
    }

    fn brute_force(p: &Poset) -> Vec<Vec<usize>> {
        let n = p.len();
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| p.is_antichain(s))
            .collect();
        out.sort();
        out
    }

    fn rp(s: &str) -> RootPoset {
        RootPoset::build(&s.parse().unwrap())
    }

    #[test]
    fn a2_antichains() {
        let a2 = rp("A2");
        let got: Vec<Vec<usize>> =
            enumerate_antichains(&a2, None).map(|a| a.members().to_vec()).collect();
        assert_eq!(got, vec![vec![], vec![0], vec![0, 1], vec![1], vec![2]]);
        assert_eq!(size_distribution(&a2).counts, vec![1, 3, 1]);
    }

    #[test]
    fn enumeration_matches_power_set() {
        for p in [three_points(), claw(), rp("A3").order().clone(), rp("B2").order().clone()] {
            let got: Vec<Vec<usize>> =
                enumerate_antichains(&p, None).map(|a| a.members().to_vec()).collect();
            assert_eq!(got, brute_force(&p));
            for t in 0..=p.len() {
                let sized = enumerate_antichains(&p, Some(t)).count();
                assert_eq!(sized, brute_force(&p).iter().filter(|s| s.len() == t).count());
            }
        }
    }

    #[test]
    fn remark_one_posets_have_several_maximal_antichains() {
        for p in [three_points(), claw()] {
            assert_eq!(width(&p).0, 3);
            assert_eq!(enumerate_antichains(&p, Some(2)).count(), 3);
            assert_eq!(maximal_antichains_of_size(&p, 2).len(), 3);
        }
    }

    #[test]
    fn width_of_root_posets_is_the_rank() {
        for d in default_diagrams() {
            let p = RootPoset::build(&d);
            let (w, witness) = width(&p);
            assert_eq!(w, d.rank(), "{d}");
            assert!(p.is_antichain(witness.members()));
        }
        let empty = Poset::from_leq(0, |_, _| true);
        assert_eq!(width(&empty).0, 0);
        assert_eq!(size_distribution(&empty).counts, vec![1]);
    }

    #[test]
    fn domination() {
        let b4 = rp("B4");
        let phi2 = Antichain::new(&b4, b4.level_set(2)).unwrap();
        let phi3 = Antichain::new(&b4, b4.level_set(3)).unwrap();
        assert!(dominated_by(&b4, &phi2, &phi2));
        assert!(dominated_by(&b4, &phi2, &phi3));
        assert!(!dominated_by(&b4, &phi3, &phi2));
    }

    #[test]
    fn simple_roots_are_the_only_top_size_antichain() {
        for d in default_diagrams() {
            let p = RootPoset::build(&d);
            let all: Vec<Antichain> = enumerate_antichains(&p, Some(d.rank())).collect();
            assert_eq!(all.len(), 1, "{d}");
            assert_eq!(all[0].members(), p.simple_roots());
        }
    }

    #[test]
    fn main_theorem_samples() {
        let b5 = verify_main_theorem(&"B5".parse().unwrap()).unwrap();
        assert_eq!(b5.h, 3);
        assert!(b5.equals_phi_h);
        let e7 = verify_main_theorem(&"E7".parse().unwrap()).unwrap();
        assert_eq!(e7.h, 5);
        let e6 = verify_main_theorem(&"E6".parse().unwrap()).unwrap();
        let exc = e6.e6_exception.unwrap();
        assert_eq!(exc.heights, vec![4, 5]);
        assert!(exc.others_dominated_by_phi_h);
        assert!(!e6.equals_phi_h);
    }

    #[test]
    fn distribution_identities() {
        for s in ["A4", "B3", "D4", "F4", "G2", "E6"] {
            let p = rp(s);
            let n = p.rank();
            let dist = size_distribution(&p);
            assert_eq!(dist.width(), n);
            assert_eq!(dist.count(n - 1), p.len() as u64);
            assert!(dist.is_symmetric(n));
        }
    }
}
