//! Poset isomorphisms, automorphism groups and their action on antichains.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::antichain::{enumerate_antichains, enumerate_antichains_in, Antichain};
use crate::poset::Poset;
use crate::root_poset::RootPoset;

/// How much structure candidate images must share before the order check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pruning {
    /// Same rank, down-set and up-set sizes and cover degrees.
    Graded,
    /// Only the order relation itself.
    None,
}

fn signatures(p: &Poset, pruning: Pruning) -> Vec<[usize; 5]> {
    let ranks = p.ranks();
    (0..p.len())
        .map(|x| match pruning {
            Pruning::Graded => [
                ranks[x],
                p.below(x).count_ones(..),
                p.above(x).count_ones(..),
                p.lower_covers(x).len(),
                p.upper_covers(x).len(),
            ],
            Pruning::None => [0; 5],
        })
        .collect()
}

struct Matcher<'a> {
    p: &'a Poset,
    q: &'a Poset,
    p_sig: Vec<[usize; 5]>,
    q_sig: Vec<[usize; 5]>,
    order: Vec<usize>,
}

impl Matcher<'_> {
    /// Calls `visit` on each order isomorphism until it returns `false`.
    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let mut image = vec![usize::MAX; self.p.len()];
        let mut used = FixedBitSet::with_capacity(self.q.len());
        self.extend(0, &mut image, &mut used, visit);
    }

    fn extend(
        &self,
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut FixedBitSet,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return visit(image);
        }
        let x = self.order[depth];
        for y in 0..self.q.len() {
            if used.contains(y) || self.p_sig[x] != self.q_sig[y] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let v = image[u];
                self.p.leq(u, x) == self.q.leq(v, y) && self.p.leq(x, u) == self.q.leq(y, v)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used.insert(y);
            let keep_going = self.extend(depth + 1, image, used, visit);
            used.set(y, false);
            image[x] = usize::MAX;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn matcher<'a>(p: &'a Poset, q: &'a Poset, pruning: Pruning) -> Option<Matcher<'a>> {
    let p_sig = signatures(p, pruning);
    let q_sig = signatures(q, pruning);
    let mut a = p_sig.clone();
    let mut b = q_sig.clone();
    a.sort_unstable();
    b.sort_unstable();
    (a == b).then(|| Matcher { p, q, p_sig, q_sig, order: p.linear_extension() })
}

/// An order isomorphism `p -> q`, if one exists.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    let m = matcher(p, q, Pruning::Graded)?;
    let mut found = None;
    m.run(&mut |image| {
        found = Some(image.to_vec());
        false
    });
    found
}

/// Every automorphism of `p`, in the order the search meets them.
pub fn automorphisms(p: &Poset, pruning: Pruning) -> Vec<Vec<usize>> {
    let m = matcher(p, p, pruning).expect("a poset matches itself");
    let mut all = Vec::new();
    m.run(&mut |image| {
        all.push(image.to_vec());
        true
    });
    all
}

pub fn is_automorphism(p: &Poset, perm: &[usize]) -> bool {
    let n = p.len();
    let mut seen = FixedBitSet::with_capacity(n);
    if perm.len() != n || perm.iter().any(|&y| y >= n || seen.put(y)) {
        return false;
    }
    (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == p.leq(perm[x], perm[y])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismGroup {
    pub generators: Vec<Vec<usize>>,
    pub order: usize,
}

impl AutomorphismGroup {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// All elements of the group generated by `generators`.
pub fn closure(len: usize, generators: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    let identity: Vec<usize> = (0..len).collect();
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = compose(s, &g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

/// The full automorphism group, with a greedy generating set.
pub fn automorphism_group(p: &Poset) -> AutomorphismGroup {
    let all = automorphisms(p, Pruning::Graded);
    let mut generators: Vec<Vec<usize>> = Vec::new();
    let mut generated = closure(p.len(), &generators);
    for g in &all {
        if !generated.contains(g) {
            generators.push(g.clone());
            generated = closure(p.len(), &generators);
        }
    }
    debug_assert_eq!(generated.len(), all.len());
    AutomorphismGroup { generators, order: all.len() }
}

/// Automorphism group of the subposet induced on `members`, with permutations
/// written back in terms of the host indices (fixing everything else).
pub fn automorphism_group_of_subset(p: &Poset, members: &[usize]) -> AutomorphismGroup {
    let sub = p.induced(members);
    let group = automorphism_group(&sub);
    let lift = |perm: &Vec<usize>| {
        let mut full: Vec<usize> = (0..p.len()).collect();
        for (k, &m) in members.iter().enumerate() {
            full[m] = members[perm[k]];
        }
        full
    };
    AutomorphismGroup { generators: group.generators.iter().map(lift).collect(), order: group.order }
}

/// The permutation `A -> perm(A)` of the `t`-antichains lying inside `domain`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntichainAction {
    pub antichains: Vec<Antichain>,
    /// `images[k]` is the index of the image of `antichains[k]`.
    pub images: Vec<usize>,
}

impl AntichainAction {
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k == i)
    }

    pub fn moved(&self) -> usize {
        self.images.iter().enumerate().filter(|&(k, &i)| k != i).count()
    }
}

/// Returns `None` when `perm` does not map the antichains of `domain` onto
/// themselves.
pub fn induced_antichain_action(
    p: &Poset,
    domain: &FixedBitSet,
    perm: &[usize],
    t: usize,
) -> Option<AntichainAction> {
    let antichains: Vec<Antichain> = enumerate_antichains_in(p, domain, Some(t)).collect();
    let index: HashMap<&[usize], usize> =
        antichains.iter().enumerate().map(|(k, a)| (a.members(), k)).collect();
    let images = antichains
        .iter()
        .map(|a| {
            let mut image: Vec<usize> = a.members().iter().map(|&x| perm[x]).collect();
            image.sort_unstable();
            index.get(image.as_slice()).copied()
        })
        .collect::<Option<Vec<usize>>>()?;
    Some(AntichainAction { antichains, images })
}

/// The F4 facts showing the antichain sets do not determine the poset: the
/// ideal of the height-5 roots has a non-trivial automorphism acting
/// non-trivially on 3-antichains, those 3-antichains are all the 3-antichains
/// of the whole poset, and the whole poset has no non-trivial automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct F4Symmetry {
    pub full_order: usize,
    pub ideal_size: usize,
    pub ideal_order: usize,
    pub action_moves: usize,
    pub same_three_antichains: bool,
}

impl F4Symmetry {
    pub fn holds(&self) -> bool {
        self.full_order == 1 && self.ideal_order == 2 && self.action_moves > 0 && self.same_three_antichains
    }
}

pub fn f4_symmetry(p: &RootPoset) -> F4Symmetry {
    let ideal = p.ideal(&p.level_set(5));
    let domain = p.set_of(&ideal);
    let group = automorphism_group_of_subset(p, &ideal);
    let action_moves = group
        .generators
        .iter()
        .filter_map(|g| induced_antichain_action(p, &domain, g, 3))
        .map(|a| a.moved())
        .max()
        .unwrap_or(0);
    let whole: Vec<Antichain> = enumerate_antichains(p, Some(3)).collect();
    let inside: Vec<Antichain> = enumerate_antichains_in(p, &domain, Some(3)).collect();
    F4Symmetry {
        full_order: automorphism_group(p).order,
        ideal_size: ideal.len(),
        ideal_order: group.order,
        action_moves,
        same_three_antichains: whole == inside,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antichain::size_distribution;

    fn rp(s: &str) -> RootPoset {
        RootPoset::build(&s.parse().unwrap())
    }

    #[test]
    fn type_a_has_the_flip() {
        for n in 2..=6 {
            let p = rp(&format!("A{n}"));
            let g = automorphism_group(&p);
            assert_eq!(g.order, 2, "A{n}");
            // reversing the coefficient vector
            let flip: Vec<usize> = (0..p.len())
                .map(|x| {
                    let mut c = p.root(x).coeffs().to_vec();
                    c.reverse();
                    p.index_of(&c).unwrap()
                })
                .collect();
            assert!(is_automorphism(&p, &flip));
            assert_eq!(g.generators, vec![flip]);
        }
    }

    #[test]
    fn graded_and_unrestricted_searches_agree() {
        for s in ["A3", "A5", "B3", "C4", "D4", "G2", "F4"] {
            let p = rp(s);
            let mut a = automorphisms(&p, Pruning::Graded);
            let mut b = automorphisms(&p, Pruning::None);
            a.sort();
            b.sort();
            assert_eq!(a, b, "{s}");
        }
    }

    #[test]
    fn f4_facts() {
        let facts = f4_symmetry(&rp("F4"));
        assert_eq!(facts.full_order, 1);
        assert_eq!(facts.ideal_size, 16);
        assert_eq!(facts.ideal_order, 2);
        assert!(facts.action_moves > 0);
        assert!(facts.same_three_antichains);
        assert!(facts.holds());
    }

    #[test]
    fn identity_acts_trivially() {
        let p = rp("B3");
        let id: Vec<usize> = (0..p.len()).collect();
        let act = induced_antichain_action(&p, &p.full_set(), &id, 2).unwrap();
        assert!(act.is_identity());
    }

    #[test]
    fn automorphisms_preserve_height_and_counts() {
        let p = rp("D5");
        let dist = size_distribution(&p);
        for g in automorphisms(&p, Pruning::Graded) {
            assert!(is_automorphism(&p, &g));
            assert!((0..p.len()).all(|x| p.height_of(x) == p.height_of(g[x])));
            let moved: Vec<usize> = (0..p.len()).map(|x| g[x]).collect();
            let image = Poset::from_leq(p.len(), |x, y| p.leq(moved[x], moved[y]));
            assert_eq!(size_distribution(&image), dist);
        }
    }

    #[test]
    fn isomorphism_between_b_and_c() {
        for n in 2..=6 {
            let b = rp(&format!("B{n}"));
            let c = rp(&format!("C{n}"));
            let iso = find_isomorphism(&b, &c).unwrap();
            assert!((0..b.len()).all(|x| (0..b.len()).all(|y| b.leq(x, y) == c.leq(iso[x], iso[y]))));
        }
        assert!(find_isomorphism(&rp("A4"), &rp("B2")).is_none());
    }
}
