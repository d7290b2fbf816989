//! Finite posets stored as down-set/up-set bitsets.

use fixedbitset::FixedBitSet;

/// A finite partial order on `0..len`.
///
/// `below[i]` holds every `j <= i` (including `i`), `above[i]` every `j >= i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Builds a poset from a relation. The relation is trusted to be a partial
    /// order; [`Poset::check_partial_order`] verifies it.
    pub fn from_leq(len: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut below = vec![FixedBitSet::with_capacity(len); len];
        let mut above = vec![FixedBitSet::with_capacity(len); len];
        for (i, up) in above.iter_mut().enumerate() {
            for (j, down) in below.iter_mut().enumerate() {
                if i == j || leq(i, j) {
                    down.insert(i);
                    up.insert(j);
                }
            }
        }
        let mut upper_covers = vec![Vec::new(); len];
        let mut lower_covers = vec![Vec::new(); len];
        for i in 0..len {
            for j in above[i].ones().filter(|&j| j != i) {
                // i < j is a cover iff no k with i < k < j
                let mut between = above[i].clone();
                between.intersect_with(&below[j]);
                if between.count_ones(..) == 2 {
                    upper_covers[i].push(j);
                    lower_covers[j].push(i);
                }
            }
        }
        Poset { below, above, upper_covers, lower_covers }
    }

    /// Builds a poset as the reflexive-transitive closure of cover edges.
    pub fn from_covers(len: usize, covers: &[(usize, usize)]) -> Self {
        let mut up = vec![Vec::new(); len];
        for &(lo, hi) in covers {
            up[lo].push(hi);
        }
        let mut reach = vec![FixedBitSet::with_capacity(len); len];
        for (start, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if row.contains(v) {
                    continue;
                }
                row.insert(v);
                stack.extend(up[v].iter().copied());
            }
        }
        Poset::from_leq(len, |i, j| reach[i].contains(j))
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn below(&self, x: usize) -> &FixedBitSet {
        &self.below[x]
    }

    pub fn above(&self, x: usize) -> &FixedBitSet {
        &self.above[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|i| self.upper_covers[i].iter().map(move |&j| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn set_of(&self, members: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for &m in members {
            s.insert(m);
        }
        s
    }

    /// Downward closure.
    pub fn ideal(&self, members: &[usize]) -> Vec<usize> {
        let mut s = FixedBitSet::with_capacity(self.len());
        for &m in members {
            s.union_with(&self.below[m]);
        }
        s.ones().collect()
    }

    /// Upward closure.
    pub fn coideal(&self, members: &[usize]) -> Vec<usize> {
        let mut s = FixedBitSet::with_capacity(self.len());
        for &m in members {
            s.union_with(&self.above[m]);
        }
        s.ones().collect()
    }

    /// Elements comparable with neither `z <= w` nor `w <= z`.
    pub fn incomparable_set(&self, z: usize) -> FixedBitSet {
        let mut s = self.full_set();
        s.difference_with(&self.below[z]);
        s.difference_with(&self.above[z]);
        s
    }

    pub fn minimal_elements(&self, subset: &[usize]) -> Vec<usize> {
        let s = self.set_of(subset);
        subset
            .iter()
            .copied()
            .filter(|&x| self.below[x].intersection(&s).all(|y| y == x))
            .collect()
    }

    pub fn maximal_elements(&self, subset: &[usize]) -> Vec<usize> {
        let s = self.set_of(subset);
        subset
            .iter()
            .copied()
            .filter(|&x| self.above[x].intersection(&s).all(|y| y == x))
            .collect()
    }

    pub fn is_chain(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(k, &x)| members[k + 1..].iter().all(|&y| self.comparable(x, y)))
    }

    pub fn is_antichain(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(k, &x)| members[k + 1..].iter().all(|&y| x != y && !self.comparable(x, y)))
    }

    /// Number of unordered incomparable pairs inside `members`.
    pub fn incomparable_pairs(&self, members: &[usize]) -> usize {
        let mut count = 0;
        for (k, &x) in members.iter().enumerate() {
            count += members[k + 1..].iter().filter(|&&y| !self.comparable(x, y)).count();
        }
        count
    }

    /// Length of the longest chain ending at each element, counted from 0.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.len()];
        for x in self.linear_extension() {
            for &y in &self.upper_covers[x] {
                rank[y] = rank[y].max(rank[x] + 1);
            }
        }
        rank
    }

    /// Elements sorted so that every element appears after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| self.below[x].count_ones(..));
        order
    }

    /// The subposet induced on `members` (kept in the given order).
    pub fn induced(&self, members: &[usize]) -> Poset {
        Poset::from_leq(members.len(), |i, j| self.leq(members[i], members[j]))
    }

    /// Exhaustive check of reflexivity, antisymmetry and transitivity.
    pub fn check_partial_order(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            if !self.leq(x, x) {
                return false;
            }
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return false;
                }
                if self.leq(x, y) && !self.above[y].is_subset(&self.above[x]) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        // 0 < 1, 0 < 2, 1 < 3, 2 < 3
        Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn closure_and_covers() {
        let p = diamond();
        assert!(p.leq(0, 3));
        assert!(!p.comparable(1, 2));
        assert_eq!(p.cover_pairs(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(p.check_partial_order());
        assert_eq!(p.ranks(), vec![0, 1, 1, 2]);
    }

    #[test]
    fn ideals_and_extremes() {
        let p = diamond();
        assert_eq!(p.ideal(&[1]), vec![0, 1]);
        assert_eq!(p.coideal(&[1, 2]), vec![1, 2, 3]);
        assert_eq!(p.minimal_elements(&[1, 2, 3]), vec![1, 2]);
        assert_eq!(p.maximal_elements(&[0, 1, 2]), vec![1, 2]);
        assert_eq!(p.incomparable_set(1).ones().collect::<Vec<_>>(), vec![2]);
        assert!(p.is_chain(&[0, 1, 3]));
        assert!(p.is_antichain(&[1, 2]));
        assert_eq!(p.incomparable_pairs(&[0, 1, 2, 3]), 1);
    }

    #[test]
    fn non_orders_are_rejected() {
        let cyclic = Poset::from_leq(2, |_, _| true);
        assert!(!cyclic.check_partial_order());
        let intransitive = Poset::from_leq(3, |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2));
        assert!(!intransitive.check_partial_order());
    }

    #[test]
    fn induced_subposet() {
        let p = diamond();
        let q = p.induced(&[1, 2, 3]);
        assert_eq!(q.cover_pairs(), vec![(0, 2), (1, 2)]);
    }
}
