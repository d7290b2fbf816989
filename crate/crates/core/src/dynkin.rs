//! Cartan data for the Dynkin families and positive-root generation.
//!
//! Nodes are ordered by the standard letter labels: `a, b, c, ...`
//! along the main chain, followed by the branch node `u` for the D and E
//! families. For B and C the double bond joins `a` and `b`; `a` is the short
//! node in B and the long node in C. In F4 the nodes `a, b` are short and
//! `c, d` long; in G2 `a` is short.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn rank_supported(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    /// Whether the diagram has a branch node labelled `u`.
    fn has_branch(self) -> bool {
        matches!(self, Family::D | Family::E)
    }
}

/// A bond between two nodes. For multiple bonds `short` names the node
/// carrying the shorter root.
struct Bond {
    i: usize,
    j: usize,
    multiplicity: i32,
    short: usize,
}

fn simple(i: usize, j: usize) -> Bond {
    Bond { i, j, multiplicity: 1, short: i }
}

fn bonds(family: Family, rank: usize) -> Vec<Bond> {
    let chain = |len: usize| (1..len).map(|k| simple(k - 1, k)).collect::<Vec<_>>();
    match family {
        Family::A => chain(rank),
        Family::B | Family::C => {
            let mut b = chain(rank);
            b[0] = Bond {
                i: 0,
                j: 1,
                multiplicity: 2,
                short: if family == Family::B { 0 } else { 1 },
            };
            b
        }
        Family::D => {
            let mut b = chain(rank - 1);
            b.push(simple(1, rank - 1));
            b
        }
        Family::E => {
            let mut b = chain(rank - 1);
            b.push(simple(2, rank - 1));
            b
        }
        Family::F => vec![
            simple(0, 1),
            Bond { i: 1, j: 2, multiplicity: 2, short: 1 },
            simple(2, 3),
        ],
        Family::G => vec![Bond { i: 0, j: 1, multiplicity: 3, short: 0 }],
    }
}

/// Cartan matrix with `cartan[i][j] = <alpha_i^vee, alpha_j>`, so a short
/// node `i` bonded to a long node `j` has `cartan[i][j] = -multiplicity`.
pub fn cartan_matrix(family: Family, rank: usize) -> Result<Vec<Vec<i32>>> {
    if !family.rank_supported(rank) {
        return Err(Error::UnsupportedDiagram { name: format!("{}{}", family.letter(), rank) });
    }
    let mut m = vec![vec![0; rank]; rank];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for b in bonds(family, rank) {
        let long = if b.short == b.i { b.j } else { b.i };
        m[b.short][long] = -b.multiplicity;
        m[long][b.short] = -1;
    }
    Ok(m)
}

fn node_names(family: Family, rank: usize) -> Vec<String> {
    let chain_len = if family.has_branch() { rank - 1 } else { rank };
    let mut names: Vec<String> = (0..chain_len)
        .map(|k| {
            // `u` is reserved for the branch node
            let c = (b'a' + k as u8) as char;
            if k < 20 {
                c.to_string()
            } else {
                format!("a{k}")
            }
        })
        .collect();
    if family.has_branch() {
        names.push("u".to_string());
    }
    names
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    node_names: Vec<String>,
}

impl DynkinDiagram {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(family, rank)?;
        Ok(DynkinDiagram { family, rank, cartan, node_names: node_names(family, rank) })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn node_names(&self) -> &[String] {
        &self.node_names
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.node_names.iter().position(|n| n == name)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    /// True for the diagrams the tool covers without a warning.
    pub fn within_default_range(&self) -> bool {
        self.rank <= 8
    }

    pub fn is(&self, family: Family, rank: usize) -> bool {
        self.family == family && self.rank == rank
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for DynkinDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::UnsupportedDiagram { name: s.to_string() };
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(err)?;
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        DynkinDiagram::new(family, rank).map_err(|_| err())
    }
}

/// The diagrams covered by the default verification run.
pub fn default_diagrams() -> Vec<DynkinDiagram> {
    let mut out = Vec::new();
    let mut push = |f, r| out.push(DynkinDiagram::new(f, r).expect("valid default diagram"));
    for r in 2..=8 {
        push(Family::A, r);
    }
    for r in 2..=8 {
        push(Family::B, r);
    }
    for r in 2..=8 {
        push(Family::C, r);
    }
    for r in 4..=8 {
        push(Family::D, r);
    }
    for r in 6..=8 {
        push(Family::E, r);
    }
    push(Family::F, 4);
    push(Family::G, 2);
    out
}

/// A positive root written over the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    coeffs: Vec<u32>,
}

impl Root {
    pub fn new(coeffs: Vec<u32>) -> Self {
        Root { coeffs }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Root { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn height(&self) -> usize {
        self.coeffs.iter().map(|&c| c as usize).sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Root) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }

    /// The index of the simple root `other - self`, if the difference is one.
    pub fn simple_difference(&self, other: &Root) -> Option<usize> {
        let mut found = None;
        for (k, (&a, &b)) in self.coeffs.iter().zip(&other.coeffs).enumerate() {
            match b as i64 - a as i64 {
                0 => {}
                1 if found.is_none() => found = Some(k),
                _ => return None,
            }
        }
        found
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub fn height(root: &Root) -> usize {
    root.height()
}

/// All positive roots, sorted by (height, coefficients).
///
/// Closure by root strings: for a root `b` and a simple root `a_i`, `b + a_i`
/// is a root iff `p - <b, a_i^vee> > 0`, where `p` is the largest `k` with
/// `b - k a_i` a root. Processing heights in increasing order guarantees every
/// `b - k a_i` has been found before it is queried.
pub fn generate_positive_roots(diagram: &DynkinDiagram) -> Vec<Root> {
    let n = diagram.rank();
    let cartan = diagram.cartan();
    let mut known: HashSet<Vec<u32>> = HashSet::new();
    let mut layer: Vec<Vec<u32>> = (0..n).map(|i| Root::simple(n, i).coeffs).collect();
    let mut all = Vec::new();
    while !layer.is_empty() {
        layer.sort();
        layer.dedup();
        known.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut probe = beta.clone();
                while probe[i] > 0 {
                    probe[i] -= 1;
                    if !known.contains(&probe) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i64 = (0..n).map(|j| beta[j] as i64 * cartan[i][j] as i64).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.push(up);
                }
            }
        }
        all.append(&mut layer);
        layer = next;
    }
    let mut roots: Vec<Root> = all.into_iter().map(Root::new).collect();
    roots.sort_by(|x, y| x.height().cmp(&y.height()).then_with(|| x.coeffs.cmp(&y.coeffs)));
    roots
}

pub fn coxeter_number(diagram: &DynkinDiagram) -> usize {
    let count = generate_positive_roots(diagram).len();
    let twice = 2 * count;
    assert_eq!(twice % diagram.rank(), 0, "2|roots| must be divisible by the rank");
    twice / diagram.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DynkinDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn cartan_small_cases() {
        assert_eq!(cartan_matrix(Family::A, 2).unwrap(), vec![vec![2, -1], vec![-1, 2]]);
        let g2 = cartan_matrix(Family::G, 2).unwrap();
        let mut off = vec![g2[0][1], g2[1][0]];
        off.sort();
        assert_eq!(off, vec![-3, -1]);
    }

    #[test]
    fn cartan_d5_has_a_fork() {
        let m = cartan_matrix(Family::D, 5).unwrap();
        // a (0) and u (4) both attach to b (1) and to nothing else
        assert_eq!(m[0][1], -1);
        assert_eq!(m[4][1], -1);
        assert_eq!(m[0][4], 0);
        assert_eq!((0..5).filter(|&j| j != 1 && m[1][j] != 0).count(), 3);
        assert_eq!(generate_positive_roots(&d("D5")).len(), 20);
    }

    #[test]
    fn cartan_invariants_hold() {
        for diagram in default_diagrams() {
            let m = diagram.cartan();
            for i in 0..diagram.rank() {
                assert_eq!(m[i][i], 2);
                for j in 0..diagram.rank() {
                    if i != j {
                        assert!([0, -1, -2, -3].contains(&m[i][j]));
                        assert_eq!(m[i][j] == 0, m[j][i] == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn b_and_c_differ_as_labeled_data() {
        assert_ne!(cartan_matrix(Family::B, 4).unwrap(), cartan_matrix(Family::C, 4).unwrap());
        let b = generate_positive_roots(&d("B3"));
        let c = generate_positive_roots(&d("C3"));
        assert_ne!(b, c);
        // short end `a` carries coefficient 2 in the highest root of B only
        assert_eq!(b.last().unwrap().coeffs(), &[2, 2, 1]);
        assert_eq!(c.last().unwrap().coeffs(), &[1, 2, 2]);
    }

    #[test]
    fn rank_bounds_are_enforced() {
        for bad in ["A0", "B1", "C1", "D3", "E5", "E9", "F3", "G3", "H3", "X", "E", "Ex"] {
            assert!(bad.parse::<DynkinDiagram>().is_err(), "{bad}");
        }
        assert!("a1".parse::<DynkinDiagram>().is_ok());
        assert!("D4".parse::<DynkinDiagram>().is_ok());
    }

    #[test]
    fn root_counts_of_exceptional_types() {
        assert_eq!(generate_positive_roots(&d("E6")).len(), 36);
        assert_eq!(generate_positive_roots(&d("E7")).len(), 63);
        assert_eq!(generate_positive_roots(&d("E8")).len(), 120);
        assert_eq!(generate_positive_roots(&d("F4")).len(), 24);
        assert_eq!(generate_positive_roots(&d("G2")).len(), 6);
    }

    #[test]
    fn root_counts_of_classical_types() {
        for n in 1..=8 {
            assert_eq!(generate_positive_roots(&d(&format!("A{n}"))).len(), n * (n + 1) / 2);
        }
        for n in 2..=8 {
            assert_eq!(generate_positive_roots(&d(&format!("B{n}"))).len(), n * n);
            assert_eq!(generate_positive_roots(&d(&format!("C{n}"))).len(), n * n);
        }
        for n in 4..=8 {
            assert_eq!(generate_positive_roots(&d(&format!("D{n}"))).len(), n * (n - 1));
        }
    }

    #[test]
    fn heights() {
        let e8 = generate_positive_roots(&d("E8"));
        assert!(e8[..8].iter().all(|r| r.height() == 1));
        assert_eq!(e8.last().unwrap().height(), 29);
        assert_eq!(e8.last().unwrap().coeffs(), &[2, 4, 6, 5, 4, 3, 2, 3]);
        let a6 = generate_positive_roots(&d("A6"));
        assert_eq!(a6.last().unwrap().height(), 6);
        assert_eq!(height(&Root::simple(3, 1)), 1);
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(coxeter_number(&d("E6")), 12);
        assert_eq!(coxeter_number(&d("G2")), 6);
        assert_eq!(coxeter_number(&d("A5")), 6);
        assert_eq!(coxeter_number(&d("E8")), 30);
        assert_eq!(coxeter_number(&d("F4")), 12);
    }

    #[test]
    fn unique_highest_root_at_coxeter_height() {
        for diagram in default_diagrams() {
            let roots = generate_positive_roots(&diagram);
            let top = roots.iter().map(Root::height).max().unwrap();
            assert_eq!(roots.iter().filter(|r| r.height() == top).count(), 1, "{diagram}");
            assert_eq!(top, coxeter_number(&diagram) - 1, "{diagram}");
        }
    }

    #[test]
    fn every_root_extends_a_lower_one() {
        for diagram in default_diagrams() {
            let roots = generate_positive_roots(&diagram);
            let set: HashSet<&Root> = roots.iter().collect();
            for r in roots.iter().filter(|r| r.height() > 1) {
                let has_parent = (0..diagram.rank()).any(|i| {
                    r.coeffs()[i] > 0 && {
                        let mut c = r.coeffs().to_vec();
                        c[i] -= 1;
                        set.contains(&Root::new(c))
                    }
                });
                assert!(has_parent, "{diagram}: {r}");
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        for name in ["E8", "F4", "D7"] {
            assert_eq!(generate_positive_roots(&d(name)), generate_positive_roots(&d(name)));
        }
    }

    #[test]
    fn node_names_follow_figure_labels() {
        assert_eq!(d("E8").node_names().join(""), "abcdefgu");
        assert_eq!(d("D4").node_names().join(""), "abcu");
        assert_eq!(d("F4").node_names().join(""), "abcd");
    }
}
