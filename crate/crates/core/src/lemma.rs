//! Dilworth chain covers and the width lemma used for the exceptional types.
//!
//! The lemma: let `X` be an `n`-antichain and `Y` an `m`-antichain (`m < n`)
//! whose ideal `I` and coideal `J` partition the poset, with `width(I) = n`
//! and `width(J) = m`. If every `y` sits above two elements `f(y) != g(y)`
//! of `X` and the edges `y - f(y)`, `y - g(y)` form a forest, then the poset
//! has width `n` and `X` is its unique maximal `n`-antichain.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::antichain::{maximal_antichains_in, width_in};
use crate::dynkin::{Family, Root};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::root_poset::RootPoset;

/// Disjoint chains, each listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCover {
    pub chains: Vec<Vec<usize>>,
}

impl ChainCover {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Index of the chain holding `x`.
    pub fn chain_of(&self, x: usize) -> Option<usize> {
        self.chains.iter().position(|c| c.contains(&x))
    }

    /// Disjoint chains whose union is exactly `target`.
    pub fn is_valid(&self, p: &Poset, target: &[usize]) -> bool {
        let mut seen = FixedBitSet::with_capacity(p.len());
        for chain in &self.chains {
            if chain.is_empty() || !p.is_chain(chain) {
                return false;
            }
            for &x in chain {
                if x >= p.len() || seen.contains(x) {
                    return false;
                }
                seen.insert(x);
            }
        }
        seen == p.set_of(target)
    }
}

/// Minimum chain cover of `subset` through a maximum matching on the strict
/// order (Dilworth): the cover has `|subset| - matching` chains.
pub fn min_chain_cover(p: &Poset, subset: &[usize]) -> ChainCover {
    let len = subset.len();
    let successors: Vec<Vec<usize>> = (0..len)
        .map(|a| (0..len).filter(|&b| p.lt(subset[a], subset[b])).collect())
        .collect();
    let matched = max_matching(len, len, |a| successors[a].as_slice());
    let mut next = vec![None; len];
    let mut has_prev = vec![false; len];
    for (b, a) in matched.iter().enumerate() {
        if let Some(a) = *a {
            next[a] = Some(b);
            has_prev[b] = true;
        }
    }
    let mut chains: Vec<Vec<usize>> = (0..len)
        .filter(|&a| !has_prev[a])
        .map(|start| {
            let mut chain = vec![subset[start]];
            let mut cur = start;
            while let Some(b) = next[cur] {
                chain.push(subset[b]);
                cur = b;
            }
            chain
        })
        .collect();
    chains.sort();
    ChainCover { chains }
}

/// Kuhn's augmenting paths. Returns, for every right vertex, its partner.
fn max_matching<'a>(
    left: usize,
    right: usize,
    adj: impl Fn(usize) -> &'a [usize],
) -> Vec<Option<usize>> {
    fn augment<'a>(
        a: usize,
        adj: &impl Fn(usize) -> &'a [usize],
        visited: &mut [bool],
        partner: &mut [Option<usize>],
    ) -> bool {
        for &b in adj(a) {
            if visited[b] {
                continue;
            }
            visited[b] = true;
            if partner[b].is_none_or(|other| augment(other, adj, visited, partner)) {
                partner[b] = Some(a);
                return true;
            }
        }
        false
    }
    let mut partner = vec![None; right];
    for a in 0..left {
        let mut visited = vec![false; right];
        augment(a, &adj, &mut visited, &mut partner);
    }
    partner
}

/// The data certifying the lemma for a root poset with some roots deleted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaWitness {
    pub diagram: String,
    /// Roots removed before applying the lemma.
    pub deleted: Vec<usize>,
    /// Simple roots lying below every element of `y`, in index order.
    pub deletion_candidates: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// Chain `k` is the one through `x[k]`.
    pub i_cover: ChainCover,
    /// Chain `k` is the one through `y[k]`.
    pub j_cover: ChainCover,
    /// `f[k]` and `g[k]` are the two elements of `x` below `y[k]`.
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

impl LemmaWitness {
    fn domain(&self, p: &Poset) -> FixedBitSet {
        let mut d = p.full_set();
        for &s in &self.deleted {
            d.set(s, false);
        }
        d
    }

    /// Edges `(y, f(y))` and `(y, g(y))` of the bipartite graph on `X + Y`.
    pub fn forest_edges(&self) -> Vec<(usize, usize)> {
        self.y
            .iter()
            .enumerate()
            .flat_map(|(k, &y)| [(y, self.f[k]), (y, self.g[k])])
            .collect()
    }
}

fn forest(edges: &[(usize, usize)], vertices: usize) -> bool {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Checks every hypothesis of the lemma on the post-deletion poset.
pub fn check_witness(p: &RootPoset, w: &LemmaWitness) -> Result<()> {
    let fail = |reason: &str| Error::VerificationFailure {
        diagram: w.diagram.clone(),
        reason: format!("lemma hypothesis: {reason}"),
        counterexample: None,
    };
    let len = p.len();
    let in_range = |v: &[usize]| v.iter().all(|&e| e < len);
    if ![&w.deleted, &w.x, &w.y, &w.f, &w.g].iter().all(|v| in_range(v))
        || !w.i_cover.chains.iter().chain(&w.j_cover.chains).all(|c| in_range(c))
    {
        return Err(fail("index out of range"));
    }
    if w.f.len() != w.y.len() || w.g.len() != w.y.len() {
        return Err(fail("f and g must be defined on all of Y"));
    }
    let domain = w.domain(p);
    let (n, m) = (w.x.len(), w.y.len());
    if !p.is_antichain(&w.x) || !p.is_antichain(&w.y) {
        return Err(fail("X and Y must be antichains"));
    }
    if m >= n {
        return Err(fail("Y must be smaller than X"));
    }
    if w.x.iter().chain(&w.y).any(|&e| !domain.contains(e)) {
        return Err(fail("X and Y must avoid the deleted roots"));
    }
    let mut ideal = p.set_of(&p.ideal(&w.x));
    ideal.intersect_with(&domain);
    let mut coideal = p.set_of(&p.coideal(&w.y));
    coideal.intersect_with(&domain);
    let mut union = ideal.clone();
    union.union_with(&coideal);
    if !ideal.is_disjoint(&coideal) || union != domain {
        return Err(fail("ideal(X) and coideal(Y) must be complementary"));
    }
    if width_in(p, &ideal).0 != n {
        return Err(fail("ideal(X) must have width |X|"));
    }
    if width_in(p, &coideal).0 != m {
        return Err(fail("coideal(Y) must have width |Y|"));
    }
    let ideal_members: Vec<usize> = ideal.ones().collect();
    let coideal_members: Vec<usize> = coideal.ones().collect();
    let designated = |cover: &ChainCover, heads: &[usize]| {
        cover.len() == heads.len() && heads.iter().enumerate().all(|(k, h)| cover.chains[k].contains(h))
    };
    if !w.i_cover.is_valid(p, &ideal_members) || !designated(&w.i_cover, &w.x) {
        return Err(fail("I cover must be |X| chains, chain k through x[k]"));
    }
    if !w.j_cover.is_valid(p, &coideal_members) || !designated(&w.j_cover, &w.y) {
        return Err(fail("J cover must be |Y| chains, chain k through y[k]"));
    }
    for (k, &y) in w.y.iter().enumerate() {
        let (f, g) = (w.f[k], w.g[k]);
        if f == g {
            return Err(fail("f(y) and g(y) must differ"));
        }
        if !w.x.contains(&f) || !w.x.contains(&g) || !p.lt(f, y) || !p.lt(g, y) {
            return Err(fail("f(y) and g(y) must be elements of X below y"));
        }
    }
    if !forest(&w.forest_edges(), len) {
        return Err(fail("the f/g graph must be a forest"));
    }
    Ok(())
}

/// Per-element record of the width bound on `P(z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncomparableBound {
    pub z: usize,
    /// The `y` whose chain contains `z`.
    pub y: usize,
    /// Chains left after dropping `J_y`, `I_f(y)`, `I_g(y)` and merging.
    pub merged_chains: usize,
    /// Exact width of `P(z)`.
    pub width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaConclusion {
    pub diagram: String,
    pub bound: usize,
    pub per_element: Vec<IncomparableBound>,
    pub width: usize,
    pub unique_maximal: bool,
}

/// Re-derives the lemma's conclusion: the chain construction bounding each
/// `P(z)`, a brute-force width for each, and uniqueness of `X`.
pub fn lemma_conclusion(p: &RootPoset, w: &LemmaWitness) -> Result<LemmaConclusion> {
    check_witness(p, w)?;
    let n = w.x.len();
    let bound = n - 2;
    let domain = w.domain(p);
    let per_element: Vec<IncomparableBound> = w
        .j_cover
        .chains
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, chain)| chain.iter().map(move |&z| (k, z)))
        .map(|(k, z)| bound_incomparables(p, w, &domain, k, z))
        .collect::<Result<_>>()?;

    let (width, _) = width_in(p, &domain);
    let top = maximal_antichains_in(p, &domain, n);
    let unique_maximal = top.len() == 1 && top[0].members() == sorted(&w.x).as_slice();
    if width != n {
        return Err(Error::ConclusionFailure {
            element: w.x[0],
            reason: format!("poset width {width}, expected {n}"),
        });
    }
    if !unique_maximal {
        return Err(Error::ConclusionFailure {
            element: w.x[0],
            reason: format!("{} maximal {n}-antichains", top.len()),
        });
    }
    let mut per_element = per_element;
    per_element.sort_by_key(|b| b.z);
    Ok(LemmaConclusion { diagram: w.diagram.clone(), bound, per_element, width, unique_maximal })
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn bound_incomparables(
    p: &RootPoset,
    w: &LemmaWitness,
    domain: &FixedBitSet,
    k: usize,
    z: usize,
) -> Result<IncomparableBound> {
    let failure = |reason: String| Error::ConclusionFailure { element: z, reason };
    let (n, y) = (w.x.len(), w.y[k]);
    let mut incomparable = p.incomparable_set(z);
    incomparable.intersect_with(domain);

    let chain_of_x = |x: usize| w.x.iter().position(|&e| e == x).expect("f/g lie in X");
    let dropped = [chain_of_x(w.f[k]), chain_of_x(w.g[k])];
    let mut removed: Vec<&[usize]> = vec![&w.j_cover.chains[k]];
    removed.extend(dropped.iter().map(|&c| w.i_cover.chains[c].as_slice()));
    if let Some(&hit) = removed.iter().flat_map(|c| c.iter()).find(|&&e| incomparable.contains(e)) {
        return Err(failure(format!("removed chains meet P(z) at {hit}")));
    }

    // hang every other J chain on top of a distinct surviving I chain
    let others: Vec<usize> = (0..w.y.len()).filter(|&o| o != k).collect();
    let options: Vec<Vec<usize>> = others
        .iter()
        .map(|&o| {
            [w.f[o], w.g[o]]
                .into_iter()
                .map(chain_of_x)
                .filter(|c| !dropped.contains(c))
                .collect()
        })
        .collect();
    let partner = max_matching(others.len(), n, |a| options[a].as_slice());
    if partner.iter().flatten().count() != others.len() {
        return Err(failure("cannot merge the remaining J chains".into()));
    }
    let mut merged: Vec<Vec<usize>> = Vec::new();
    for c in (0..n).filter(|c| !dropped.contains(c)) {
        let mut chain = w.i_cover.chains[c].clone();
        if let Some(a) = partner[c] {
            chain.extend_from_slice(&w.j_cover.chains[others[a]]);
        }
        merged.push(chain);
    }
    if let Some(bad) = merged.iter().find(|c| !p.is_chain(c)) {
        return Err(failure(format!("merged set {bad:?} is not a chain")));
    }
    let mut covered = FixedBitSet::with_capacity(p.len());
    merged.iter().flatten().for_each(|&e| covered.insert(e));
    if !incomparable.is_subset(&covered) {
        return Err(failure("merged chains miss part of P(z)".into()));
    }

    let (width, _) = width_in(p, &incomparable);
    if width > n - 2 || merged.len() != n - 2 {
        return Err(failure(format!("P(z) has width {width}, bound {}", n - 2)));
    }
    Ok(IncomparableBound { z, y, merged_chains: merged.len(), width })
}

/// Finds a witness for `E6`, `E7`, `E8` or `F4`: `X` is the unique maximal
/// `(n-1)`-antichain, `Y` the minimal elements outside its ideal, and a single
/// simple root below all of `Y` is deleted.
pub fn find_witness(p: &RootPoset) -> Result<LemmaWitness> {
    let diagram = p.diagram();
    let name = diagram.name();
    let missing = |reason: String| Error::WitnessNotFound { diagram: name.clone(), reason };
    if !matches!((diagram.family(), diagram.rank()), (Family::E, 6..=8) | (Family::F, 4)) {
        return Err(Error::UnsupportedDiagram { name: name.clone() });
    }
    let n = diagram.rank();
    let tops = crate::antichain::maximal_antichains_of_size(p, n - 1);
    let [top] = tops.as_slice() else {
        return Err(missing(format!("{} maximal (n-1)-antichains", tops.len())));
    };
    let x = top.members().to_vec();
    let ideal = p.set_of(&p.ideal(&x));
    let complement: Vec<usize> = (0..p.len()).filter(|&e| !ideal.contains(e)).collect();
    let mut y = p.minimal_elements(&complement);
    // larger elements first, as in the forest search
    y.sort_by_key(|&e| (std::cmp::Reverse(p.height_of(e)), e));

    let deletion_candidates: Vec<usize> = p
        .simple_roots()
        .into_iter()
        .filter(|&s| y.iter().all(|&e| p.leq(s, e)))
        .collect();
    // try the root labelled c first, then the rest in index order
    let preferred = diagram
        .node_index("c")
        .and_then(|c| p.index_of(Root::simple(n, c).coeffs()));
    let mut order = deletion_candidates.clone();
    order.sort_by_key(|&s| (Some(s) != preferred, s));
    for &s in &order {
        if let Some(w) = witness_with_deletion(p, &x, &y, &complement, s, &deletion_candidates) {
            return Ok(w);
        }
    }
    Err(missing(format!("no deletion among {deletion_candidates:?} works")))
}

fn witness_with_deletion(
    p: &RootPoset,
    x: &[usize],
    y: &[usize],
    complement: &[usize],
    deleted: usize,
    candidates: &[usize],
) -> Option<LemmaWitness> {
    let ideal: Vec<usize> = p.ideal(x).into_iter().filter(|&e| e != deleted).collect();
    let i_cover = designate(min_chain_cover(p, &ideal), x)?;
    let j_cover = designate(min_chain_cover(p, complement), y)?;
    let (f, g) = forest_maps(p, x, y)?;
    let w = LemmaWitness {
        diagram: p.diagram().name(),
        deleted: vec![deleted],
        deletion_candidates: candidates.to_vec(),
        x: x.to_vec(),
        y: y.to_vec(),
        i_cover,
        j_cover,
        f,
        g,
    };
    check_witness(p, &w).is_ok().then_some(w)
}

/// Reorders a cover so chain `k` passes through `heads[k]`.
fn designate(cover: ChainCover, heads: &[usize]) -> Option<ChainCover> {
    if cover.len() != heads.len() {
        return None;
    }
    let mut chains = Vec::with_capacity(heads.len());
    for &h in heads {
        chains.push(cover.chains[cover.chain_of(h)?].clone());
    }
    Some(ChainCover { chains })
}

/// Backtracking over `(f(y), g(y))` pairs in increasing index order, keeping
/// the bipartite graph a forest.
fn forest_maps(p: &Poset, x: &[usize], y: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    fn search(
        p: &Poset,
        x: &[usize],
        y: &[usize],
        edges: &mut Vec<(usize, usize)>,
        chosen: &mut Vec<(usize, usize)>,
    ) -> bool {
        let k = chosen.len();
        if k == y.len() {
            return true;
        }
        let below: Vec<usize> = x.iter().copied().filter(|&e| p.lt(e, y[k])).collect();
        let mut sorted_below = below;
        sorted_below.sort_unstable();
        for (a, &f) in sorted_below.iter().enumerate() {
            for &g in &sorted_below[a + 1..] {
                edges.push((y[k], f));
                edges.push((y[k], g));
                if forest(edges, p.len()) {
                    chosen.push((f, g));
                    if search(p, x, y, edges, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
                edges.truncate(edges.len() - 2);
            }
        }
        false
    }
    let mut chosen = Vec::new();
    search(p, x, y, &mut Vec::new(), &mut chosen).then(|| chosen.into_iter().unzip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antichain::width;
    use crate::dynkin::default_diagrams;

    fn rp(s: &str) -> RootPoset {
        RootPoset::build(&s.parse().unwrap())
    }

    #[test]
    fn covers_match_width() {
        for d in default_diagrams() {
            let p = RootPoset::build(&d);
            let all: Vec<usize> = (0..p.len()).collect();
            let cover = min_chain_cover(&p, &all);
            assert!(cover.is_valid(&p, &all), "{d}");
            assert_eq!(cover.len(), width(&p).0, "{d}");
        }
    }

    #[test]
    fn small_covers() {
        let a3 = rp("A3");
        assert_eq!(min_chain_cover(&a3, &[0, 3, 5]).len(), 1);
        assert_eq!(min_chain_cover(&a3, &(0..6).collect::<Vec<_>>()).len(), 3);
        assert!(min_chain_cover(&a3, &[]).is_empty());
    }

    #[test]
    fn witnesses_have_the_expected_shape() {
        for (name, xs, ys) in [("E6", 5, 3), ("E7", 6, 5), ("E8", 7, 6), ("F4", 3, 2)] {
            let p = rp(name);
            let w = find_witness(&p).unwrap();
            assert_eq!((w.x.len(), w.y.len()), (xs, ys), "{name}");
            assert!(check_witness(&p, &w).is_ok());
        }
    }

    #[test]
    fn broken_witnesses_are_rejected() {
        let p = rp("F4");
        let w = find_witness(&p).unwrap();
        let mut same = w.clone();
        same.g[0] = same.f[0];
        assert!(check_witness(&p, &same).is_err());
        let mut cyclic = w.clone();
        // two y's on the same pair close a cycle
        cyclic.f[1] = w.f[0];
        cyclic.g[1] = w.g[0];
        if cyclic.y.len() > 1 && [cyclic.f[1], cyclic.g[1]].iter().all(|&e| p.lt(e, cyclic.y[1])) {
            assert!(check_witness(&p, &cyclic).is_err());
        }
        let mut nothing_deleted = w;
        nothing_deleted.deleted.clear();
        assert!(check_witness(&p, &nothing_deleted).is_err());
    }

    #[test]
    fn e_types_delete_the_branch_node() {
        for name in ["E6", "E7", "E8"] {
            let p = rp(name);
            let c = p.diagram().node_index("c").unwrap();
            let c = p.index_of(Root::simple(p.rank(), c).coeffs()).unwrap();
            let w = find_witness(&p).unwrap();
            assert!(w.deletion_candidates.contains(&c), "{name}");
            assert_eq!(w.deleted, vec![c], "{name}");
        }
    }

    #[test]
    fn conclusion_for_f4() {
        let p = rp("F4");
        let w = find_witness(&p).unwrap();
        let c = lemma_conclusion(&p, &w).unwrap();
        assert!(c.per_element.iter().all(|b| b.width <= 1));
        assert_eq!(c.width, 3);
    }
}
