//! The root poset of a Dynkin diagram.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::dynkin::{generate_positive_roots, DynkinDiagram, Root};
use crate::error::{Error, Result};
use crate::poset::Poset;

/// A cover `lo < hi` with `hi - lo` equal to the simple root `simple`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoverEdge {
    pub lo: usize,
    pub hi: usize,
    pub simple: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPoset {
    diagram: DynkinDiagram,
    elements: Vec<Root>,
    order: Poset,
    hasse: Vec<CoverEdge>,
}

impl Deref for RootPoset {
    type Target = Poset;

    fn deref(&self) -> &Poset {
        &self.order
    }
}

impl RootPoset {
    pub fn build(diagram: &DynkinDiagram) -> RootPoset {
        let elements = generate_positive_roots(diagram);
        RootPoset::from_elements(diagram.clone(), elements)
    }

    /// Order from componentwise comparison, covers from simple-root differences.
    pub(crate) fn from_elements(diagram: DynkinDiagram, elements: Vec<Root>) -> RootPoset {
        let order = Poset::from_leq(elements.len(), |i, j| elements[i].le(&elements[j]));
        let mut hasse = Vec::new();
        for (lo, x) in elements.iter().enumerate() {
            for (hi, y) in elements.iter().enumerate() {
                if let Some(simple) = x.simple_difference(y) {
                    hasse.push(CoverEdge { lo, hi, simple });
                }
            }
        }
        hasse.sort();
        RootPoset { diagram, elements, order, hasse }
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn elements(&self) -> &[Root] {
        &self.elements
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.elements[i]
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn hasse(&self) -> &[CoverEdge] {
        &self.hasse
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn height_of(&self, i: usize) -> usize {
        self.elements[i].height()
    }

    pub fn index_of(&self, coeffs: &[u32]) -> Option<usize> {
        self.elements.iter().position(|r| r.coeffs() == coeffs)
    }

    pub fn highest_root(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn simple_roots(&self) -> Vec<usize> {
        self.level_set(1)
    }

    /// `Phi_t`: the roots of height `t`.
    pub fn level_set(&self, t: usize) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.elements[i].height() == t).collect()
    }

    /// Checks the invariants tying the coefficient order to the Hasse diagram:
    /// a partial order, every cover raises height by one simple root, and the
    /// reachability closure of the covers is exactly the order.
    pub fn check_integrity(&self) -> bool {
        if !self.order.check_partial_order() {
            return false;
        }
        for e in &self.hasse {
            let (lo, hi) = (&self.elements[e.lo], &self.elements[e.hi]);
            if hi.height() != lo.height() + 1 || lo.simple_difference(hi) != Some(e.simple) {
                return false;
            }
        }
        let pairs: Vec<(usize, usize)> = self.hasse.iter().map(|e| (e.lo, e.hi)).collect();
        let closure = Poset::from_covers(self.elements.len(), &pairs);
        closure == self.order && self.order.cover_pairs() == pairs
    }

    pub fn level_profile(&self) -> Result<LevelProfile> {
        LevelProfile::of(self)
    }
}

pub fn build_poset(diagram: &DynkinDiagram) -> RootPoset {
    RootPoset::build(diagram)
}

/// Root counts per height together with the Coxeter number and `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelProfile {
    /// `r[i - 1]` is the number of roots of height `i`, for `1 <= i <= g`.
    pub r: Vec<usize>,
    pub g: usize,
    /// Largest height with exactly `n - 1` roots.
    pub h: Option<usize>,
}

impl LevelProfile {
    pub fn of(p: &RootPoset) -> Result<LevelProfile> {
        let n = p.rank();
        // summing the identity over i gives 2|roots| = g n, so g is pinned by
        // the top height once the identity holds
        let g = p.elements().iter().map(Root::height).max().unwrap_or(0) + 1;
        let mut r = vec![0usize; g];
        for x in p.elements() {
            r[x.height() - 1] += 1;
        }
        for i in 1..=g {
            let lhs = r[i - 1] + r[g - i];
            if lhs != n {
                return Err(Error::IdentityViolation { i, lhs, rank: n });
            }
        }
        let h = (1..=g).rev().find(|&i| r[i - 1] == n - 1);
        Ok(LevelProfile { r, g, h })
    }

    pub fn count(&self, i: usize) -> usize {
        if i == 0 || i > self.g {
            0
        } else {
            self.r[i - 1]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{default_diagrams, generate_positive_roots, DynkinDiagram};

    fn p(s: &str) -> RootPoset {
        RootPoset::build(&s.parse().unwrap())
    }

    #[test]
    fn a2_is_a_vee() {
        let a2 = p("A2");
        assert_eq!(a2.len(), 3);
        assert_eq!(a2.hasse().len(), 2);
        assert!(!a2.comparable(0, 1));
        assert_eq!(a2.incomparable_set(0).ones().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn g2_is_a_chain_over_a_fork() {
        let g2 = p("G2");
        assert_eq!(g2.len(), 6);
        let sizes: Vec<usize> = (1..=5).map(|t| g2.level_set(t).len()).collect();
        assert_eq!(sizes, vec![2, 1, 1, 1, 1]);
        let names = g2.diagram().node_names();
        let labels: Vec<&str> = g2.hasse().iter().map(|e| names[e.simple].as_str()).collect();
        assert_eq!(labels.iter().filter(|&&l| l == "a").count(), 3);
        assert_eq!(labels.iter().filter(|&&l| l == "b").count(), 2);
    }

    #[test]
    fn integrity_of_every_default_poset() {
        for d in default_diagrams() {
            let rp = RootPoset::build(&d);
            assert!(rp.check_integrity(), "{d}");
        }
    }

    #[test]
    fn graded_with_upper_covers() {
        for d in default_diagrams() {
            let rp = RootPoset::build(&d);
            let top = rp.highest_root();
            for x in 0..rp.len() {
                if x != top {
                    assert!(!rp.upper_covers(x).is_empty(), "{d}");
                }
                for &y in rp.upper_covers(x) {
                    assert_eq!(rp.height_of(y), rp.height_of(x) + 1);
                }
            }
        }
    }

    #[test]
    fn leq_examples() {
        let e6 = p("E6");
        let top = e6.highest_root();
        for s in e6.simple_roots() {
            assert!(e6.leq(s, top));
            assert!(e6.leq(s, s));
        }
        assert!(!e6.comparable(0, 1));
    }

    #[test]
    fn level_sets() {
        for n in 3..=8 {
            assert_eq!(p(&format!("A{n}")).level_set(2).len(), n - 1);
            assert_eq!(p(&format!("B{n}")).level_set(3).len(), n - 1);
        }
        assert_eq!(p("E6").level_set(4).len(), 5);
        for d in default_diagrams() {
            let rp = RootPoset::build(&d);
            for t in 1..=rp.height_of(rp.highest_root()) {
                assert!(rp.is_antichain(&rp.level_set(t)));
            }
        }
    }

    #[test]
    fn ideals_and_coideals() {
        let f4 = p("F4");
        assert_eq!(f4.ideal(&[f4.highest_root()]).len(), 24);
        assert_eq!(f4.coideal(&f4.simple_roots()).len(), 24);
        // everything up to height 5: the profile gives 4 + 3 + 3 + 3 + 3
        let prof = f4.level_profile().unwrap();
        let low: usize = (1..=5).map(|i| prof.count(i)).sum();
        assert_eq!(low, 16);
        assert_eq!(f4.ideal(&f4.level_set(5)).len(), low);
    }

    #[test]
    fn profiles() {
        let a5 = p("A5").level_profile().unwrap();
        assert_eq!(a5.r, vec![5, 4, 3, 2, 1, 0]);
        assert_eq!((a5.g, a5.h), (6, Some(2)));
        assert_eq!(p("E6").level_profile().unwrap().h, Some(4));
        assert_eq!(p("E8").level_profile().unwrap().h, Some(7));
        for d in default_diagrams() {
            let prof = RootPoset::build(&d).level_profile().unwrap();
            assert_eq!(prof.count(1), d.rank());
            assert_eq!(prof.r.iter().sum::<usize>(), RootPoset::build(&d).len());
        }
    }

    #[test]
    fn broken_generation_trips_the_identity() {
        let d: DynkinDiagram = "A3".parse().unwrap();
        let mut roots = generate_positive_roots(&d);
        roots.remove(3);
        let broken = RootPoset::from_elements(d.clone(), roots);
        assert!(broken.level_profile().is_err());
    }
}
